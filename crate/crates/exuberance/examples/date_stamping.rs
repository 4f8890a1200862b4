//! Date-stamp bubble episodes: compare the BSADF sequence against its
//! simulated critical sequence and turn the exceedances into episodes
//! and a binary indicator.
//!
//! Run with: cargo run --example date_stamping

use exuberance::{
    generate, scan, stamp_episodes, to_indicator, AdfSpec, BubbleDgpConfig, McConfig, WindowPolicy,
};

fn main() {
    let (series, truth) = generate(&BubbleDgpConfig::single_bubble(300, 1.05, 150, 30, 3)).unwrap();
    println!("true bubble window: {}", truth.summary());

    let policy = WindowPolicy::Phillips;
    let spec = AdfSpec::fixed(0);
    let result = scan(series.values(), &policy, &spec).unwrap();
    let table = simulate_table(series.len());
    let cv95 = table.bsadf_cv_at(0.95).unwrap();

    let episodes = stamp_episodes(&result.bsadf_seq, cv95, 1, series.start(), Some(0.95)).unwrap();
    println!(
        "stamped episodes at the 95% sequence: {}",
        episodes.summary()
    );
    for ep in &episodes.episodes {
        println!(
            "  {}  ({} months, peak BSADF {:.3}{})",
            ep.interval_label(),
            ep.len(),
            ep.peak_bsadf.unwrap_or(f64::NAN),
            if ep.ongoing { ", ongoing" } else { "" },
        );
    }

    // the indicator covers the BSADF-observable sub-range
    let w0 = result.policy_echo.min_window;
    let covered_start = series.start().plus(w0 as i64 - 1);
    let indicator = to_indicator(&episodes, covered_start, series.len() - w0 + 1).unwrap();
    println!(
        "\nbinary indicator: {} months flagged out of {}",
        indicator.ones(),
        indicator.len()
    );

    // an SVG of the statistic, the critical sequence, and the episodes
    let svg = exuberance::plot::render_bsadf_svg(
        "date-stamping demo",
        &result.bsadf_seq,
        cv95,
        &episodes,
        series.start(),
    );
    let path = std::env::temp_dir().join("exuberance_date_stamping.svg");
    std::fs::write(&path, svg).unwrap();
    println!("plot written to {}", path.display());
}

fn simulate_table(t: usize) -> exuberance::CriticalValueTable {
    println!("simulating critical values for T={t} ...");
    exuberance::simulate_null(&McConfig::new(t, 42)).unwrap()
}
