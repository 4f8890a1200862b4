//! Plain-text report panels: the three-statistic test panel with
//! significance stars and episode list, and the logit fit table.

use std::fmt::Write as _;

use crate::datestamp::EpisodeSet;
use crate::logit::LogitFit;
use crate::montecarlo::CriticalValueTable;
use crate::recursive::RecursiveResult;

fn stars(
    stat: f64,
    table: &CriticalValueTable,
    pick: fn(&CriticalValueTable, f64) -> Option<f64>,
) -> &'static str {
    for (level, mark) in [(0.99, "***"), (0.95, "**"), (0.90, "*")] {
        if let Some(cv) = pick(table, level) {
            if stat > cv {
                return mark;
            }
        }
    }
    ""
}

/// One-series panel: statistics with stars, the simulated critical
/// values, and the stamped episode list.
pub fn test_panel(
    label: &str,
    result: &RecursiveResult,
    table: &CriticalValueTable,
    episodes: &EpisodeSet,
    level: f64,
) -> String {
    let mut out = String::new();
    let t = result
        .bsadf_seq
        .last()
        .map(|&(r2, _)| r2)
        .unwrap_or(result.policy_echo.min_window);
    let _ = writeln!(
        out,
        "series: {label}   T={t}  min_window={}  reps={}  seed={}",
        result.policy_echo.min_window, table.config.reps, table.config.seed
    );
    let _ = writeln!(out, "{:<10}{:>14}{:>14}{:>14}", "", "ADF", "SADF", "GSADF");
    let _ = writeln!(
        out,
        "{:<10}{:>14}{:>14}{:>14}",
        "stat",
        format!(
            "{:.4}{}",
            result.adf_full,
            stars(result.adf_full, table, CriticalValueTable::adf_cv_at)
        ),
        format!(
            "{:.4}{}",
            result.sadf,
            stars(result.sadf, table, CriticalValueTable::sadf_cv_at)
        ),
        format!(
            "{:.4}{}",
            result.gsadf,
            stars(result.gsadf, table, CriticalValueTable::gsadf_cv_at)
        ),
    );
    for &q in table.config.quantiles.iter().rev() {
        let row = |v: Option<f64>| v.map(|x| format!("{x:.4}")).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{:<10}{:>14}{:>14}{:>14}",
            format!("CV {:.0}%", q * 100.0),
            row(table.adf_cv_at(q)),
            row(table.sadf_cv_at(q)),
            row(table.gsadf_cv_at(q)),
        );
    }
    let _ = writeln!(
        out,
        "episodes (level {:.0}%, min duration {}): {}",
        level * 100.0,
        episodes.min_duration,
        episodes.summary()
    );
    out
}

/// Coefficient table in the conventional layout: estimate with stderr in
/// parentheses, both marginal effects, then the fit statistics.
pub fn logit_report(fit: &LogitFit) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<14}{:>14}{:>14}{:>16}{:>16}",
        "variable", "coef", "(stderr)", "marg.eff(avg)", "marg.eff(mean)"
    );
    let k = fit.names.len();
    // slopes first, then the intercept row, matching the usual layout
    for i in 1..k {
        let _ = writeln!(
            out,
            "{:<14}{:>14.4}{:>14}{:>16.4}{:>16.4}",
            fit.names[i],
            fit.beta[i],
            format!("({:.4})", fit.stderr[i]),
            fit.ame[i - 1],
            fit.mem[i - 1],
        );
    }
    let _ = writeln!(
        out,
        "{:<14}{:>14.4}{:>14}",
        "constant",
        fit.beta[0],
        format!("({:.4})", fit.stderr[0]),
    );
    let _ = writeln!(out, "{:<22}{:>12.4}", "Log likelihood", fit.ln_l);
    let _ = writeln!(out, "{:<22}{:>12.4}", "LR statistic", fit.lr_stat);
    let _ = writeln!(out, "{:<22}{:>12.4}", "Prob > chi2", fit.lr_pvalue);
    let _ = writeln!(out, "{:<22}{:>12}", "Observations", fit.n);
    let _ = writeln!(out, "{:<22}{:>12.4}", "McFadden R2", fit.mcfadden_r2);
    out
}
