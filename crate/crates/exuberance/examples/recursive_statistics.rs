//! Compute the three recursive test statistics (ADF, SADF, GSADF) and the
//! BSADF sequence for a series with an injected bubble.
//!
//! Run with: cargo run --example recursive_statistics

use exuberance::{generate, scan, AdfSpec, BubbleDgpConfig, WindowPolicy};

fn main() {
    let (series, truth) =
        generate(&BubbleDgpConfig::single_bubble(300, 1.05, 150, 30, 11)).unwrap();
    println!(
        "series of {} observations, true bubble {}",
        series.len(),
        truth.summary()
    );

    // the phillips rule picks the minimum window from the sample length
    let policy = WindowPolicy::Phillips;
    let spec = AdfSpec::fixed(0);
    let result = scan(series.values(), &policy, &spec).unwrap();

    println!("minimum window: {}", result.policy_echo.min_window);
    println!();
    println!("ADF (full sample)  {:>9.4}", result.adf_full);
    println!(
        "SADF               {:>9.4}   sup attained on [1, {}]",
        result.sadf, result.argmax.sadf.r2
    );
    println!(
        "GSADF              {:>9.4}   sup attained on [{}, {}]",
        result.gsadf, result.argmax.gsadf.r1, result.argmax.gsadf.r2
    );
    println!();

    // the nesting holds exactly: GSADF sups over a superset of SADF's
    // windows, which in turn include the full sample
    assert!(result.gsadf >= result.sadf && result.sadf >= result.adf_full);

    // a few entries of the backward sup sequence around the bubble
    println!("BSADF around the true origination (observation 150):");
    for &(r2, value) in result
        .bsadf_seq
        .iter()
        .filter(|(r2, _)| (145..=175).contains(r2) && r2 % 5 == 0)
    {
        let month = series.month_of(r2);
        println!("  r2 {r2:>3} ({month})  {value:>8.4}");
    }
}
