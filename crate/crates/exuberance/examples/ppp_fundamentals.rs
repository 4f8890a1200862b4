//! Build purchasing-power-parity fundamentals from price indices and
//! split the result at a regime break.
//!
//! Run with: cargo run --example ppp_fundamentals

use exuberance::{build_fundamentals, split_regimes, MonthIndex, Series};

fn main() {
    let start: MonthIndex = "1985M01".parse().unwrap();
    let t = 465; // 1985M01 .. 2023M09

    // synthetic spot rate and four price indices with gentle drifts
    let spot = Series::new(
        "spot",
        start,
        (0..t).map(|i| 2500.0 * (0.004 * i as f64).exp()).collect(),
    )
    .unwrap();
    let index = |label: &str, base: f64, drift: f64| {
        Series::new(
            label,
            start,
            (0..t).map(|i| base * (drift * i as f64).exp()).collect(),
        )
        .unwrap()
    };
    let cpi = index("cpi", 100.0, 0.0031);
    let cpi_star = index("cpi_star", 100.0, 0.0012);
    let ppi = index("ppi", 95.0, 0.0028);
    let ppi_star = index("ppi_star", 98.0, 0.0010);

    let (fs, trim) = build_fundamentals(&spot, &cpi, &cpi_star, &ppi, &ppi_star).unwrap();
    println!(
        "fundamentals on {}..{} ({} observations, {} rows trimmed)",
        fs.start(),
        fs.end(),
        fs.len(),
        trim.total_trimmed()
    );
    for (name, series) in fs.variants() {
        let values = series.values();
        println!(
            "  {name:<12} first {:>9.4}  last {:>9.4}",
            values[0],
            values[values.len() - 1]
        );
    }

    // split at the managed/free floating break
    let split = split_regimes(&fs, "1997M07".parse().unwrap()).unwrap();
    println!("\nregime split at 1997M07:");
    for (regime, set) in split.panels() {
        println!(
            "  {regime:<8} {}..{}  ({} observations)",
            set.start(),
            set.end(),
            set.len()
        );
    }
    assert_eq!(split.managed.len() + split.free.len(), split.full.len());
}
