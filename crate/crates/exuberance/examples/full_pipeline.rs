//! The whole workflow in one program: fundamentals from price indices,
//! regime split, recursive tests with simulated critical values,
//! date-stamping, and logit attribution of the detected episodes.
//!
//! Run with: cargo run --example full_pipeline

use exuberance::logit::Transform;
use exuberance::*;
use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

fn main() {
    let start: MonthIndex = "1985M01".parse().unwrap();
    let t = 465;
    let seed = 42;

    // --- synthetic inputs: a spot rate carrying two bubbles, four drifting
    //     price indices, three uncertainty covariates
    let dgp = BubbleDgpConfig {
        t,
        alpha: 1.0 / 1.06,
        bubble_windows: vec![(90, 30), (330, 25)],
        innovation_sd: 1.0,
        ignition_sds: dgp::DEFAULT_IGNITION_SDS,
        collapse: Collapse::ResetToZero,
        seed,
    };
    let (path, truth) = generate(&dgp).unwrap();
    let spot = Series::new(
        "spot",
        start,
        path.values()
            .iter()
            .map(|v| 10_000.0 * (0.02 * v).exp())
            .collect(),
    )
    .unwrap();
    println!(
        "true bubble windows at observations {:?}",
        truth
            .episodes
            .iter()
            .map(|e| (e.start_index, e.end_index))
            .collect::<Vec<_>>()
    );

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed + 100);
    let mut walk = |label: &str, scale: f64, base: f64| -> Series {
        let mut level = 0.0;
        let values = (0..t)
            .map(|_| {
                let e: f64 = StandardNormal.sample(&mut rng);
                level += e;
                base * (scale * level).exp()
            })
            .collect();
        Series::new(label, start, values).unwrap()
    };
    let cpi = walk("cpi", 0.004, 100.0);
    let cpi_star = walk("cpi_star", 0.003, 100.0);
    let ppi = walk("ppi", 0.004, 100.0);
    let ppi_star = walk("ppi_star", 0.003, 100.0);
    let covariates: Vec<(String, Series)> = ["GPR", "GEPU", "GPRI"]
        .iter()
        .map(|name| (name.to_string(), walk(name, 0.1, 100.0)))
        .collect();

    // --- stage 1: fundamentals and regime split
    let (fs, _) = build_fundamentals(&spot, &cpi, &cpi_star, &ppi, &ppi_star).unwrap();
    let split = split_regimes(&fs, "1997M07".parse().unwrap()).unwrap();

    // --- stages 2-4 per regime: critical values, tests, stamping, logit
    let policy = WindowPolicy::Phillips;
    let spec = AdfSpec::fixed(0);
    for (regime, set) in split.panels() {
        let table = simulate_null(&McConfig::new(set.len(), seed).with_reps(500)).unwrap();
        let g95 = table.gsadf_cv_at(0.95).unwrap();
        let cv95 = table.bsadf_cv_at(0.95).unwrap().to_vec();
        println!(
            "\n=== {regime} regime ({}..{}, T={})",
            set.start(),
            set.end(),
            set.len()
        );

        for (variant, series) in set.variants() {
            let result = scan(series.values(), &policy, &spec).unwrap();
            let episodes =
                stamp_episodes(&result.bsadf_seq, &cv95, 1, series.start(), Some(0.95)).unwrap();
            let flag = if result.gsadf > g95 {
                "explosive"
            } else {
                "no rejection"
            };
            println!(
                "{variant:<12} gsadf {:>8.4} (cv95 {:>7.4}, {flag}) episodes: {}",
                result.gsadf,
                g95,
                episodes.summary()
            );

            // attribute episodes to the covariates where possible
            let w0 = result.policy_echo.min_window;
            let covered_start = series.start().plus(w0 as i64 - 1);
            let indicator = to_indicator(&episodes, covered_start, series.len() - w0 + 1).unwrap();
            if indicator.ones() == 0 || indicator.ones() == indicator.len() {
                continue;
            }
            let mut panel = CovariatePanel::new(indicator.len());
            for (name, series) in &covariates {
                let sliced = series
                    .slice(
                        covered_start,
                        covered_start.plus(indicator.len() as i64 - 1),
                    )
                    .unwrap();
                panel
                    .push(name.clone(), sliced.values(), Transform::Log)
                    .unwrap();
            }
            match fit_logit(&indicator.values, &panel) {
                Ok(fit) => {
                    let (stat, p) = lr_test(&fit).unwrap();
                    println!(
                        "{:<12}   logit: n={} lnL={:.2} LR={:.2} (p={:.3}) McFadden R2={:.3}",
                        "", fit.n, fit.ln_l, stat, p, fit.mcfadden_r2
                    );
                }
                Err(err) => println!("{:<12}   logit skipped: {err}", ""),
            }
        }
    }
}
