//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL verdict line with the measured values.
//!
//! Criterion 5's origination-accuracy check is expected to fail; the
//! failure message carries the measurement and the structural reason.
//! Everything else must pass.

mod common;

use std::process::Command;
use std::time::Instant;

use exuberance::montecarlo::null_path;
use exuberance::*;

fn verdict(name: &str, pass: bool, detail: &str) {
    println!(
        "ACCEPTANCE {name}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

// ---------------------------------------------------------- criterion 1

fn check_table(t: usize, seed: u64) -> CriticalValueTable {
    let started = Instant::now();
    let table = simulate_null(&McConfig::new(t, seed)).unwrap();
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 300,
        "T={t} table took {elapsed:?}, budget 5 minutes"
    );
    table
}

#[test]
fn criterion_1_critical_value_reproduction() {
    let full = check_table(465, 42);
    assert_eq!(full.min_window, 43);
    let sadf95 = full.sadf_cv_at(0.95).unwrap();
    let gsadf95 = full.gsadf_cv_at(0.95).unwrap();
    let gsadf99 = full.gsadf_cv_at(0.99).unwrap();
    let ok_full = (1.36..=1.60).contains(&sadf95)
        && (2.05..=2.35).contains(&gsadf95)
        && (2.41..=2.81).contains(&gsadf99);

    let managed = check_table(151, 42);
    assert_eq!(managed.min_window, 23);
    let managed95 = managed.gsadf_cv_at(0.95).unwrap();
    let ok_managed = (managed95 - 2.1128).abs() <= 0.15;

    let free = check_table(314, 42);
    assert_eq!(free.min_window, 35);
    let free95 = free.gsadf_cv_at(0.95).unwrap();
    let ok_free = (free95 - 2.1141).abs() <= 0.15;

    let detail = format!(
        "T=465: sadf95 {sadf95:.4} (ref 1.4818), gsadf95 {gsadf95:.4} (ref 2.1957), \
         gsadf99 {gsadf99:.4} (ref 2.6111); T=151 gsadf95 {managed95:.4} (ref 2.1128); \
         T=314 gsadf95 {free95:.4} (ref 2.1141); 2000 reps each"
    );
    let pass = ok_full && ok_managed && ok_free;
    verdict("1 critical-value reproduction", pass, &detail);
    assert!(pass, "{detail}");
}

// ---------------------------------------------------------- criterion 2

#[test]
fn criterion_2_window_rule() {
    let sizes = [(465usize, 43usize), (314, 35), (151, 23)];
    let pass = sizes.iter().all(|&(t, w)| phillips_window(t) == w);
    let detail = format!(
        "phillips_window: 465→{}, 314→{}, 151→{} (want 43/35/23)",
        phillips_window(465),
        phillips_window(314),
        phillips_window(151)
    );
    verdict("2 window rule", pass, &detail);
    assert!(pass, "{detail}");
}

// ---------------------------------------------------------- criterion 3

#[test]
fn criterion_3_statistic_ordering() {
    let spec = AdfSpec::fixed(0);
    let mut violations = 0;
    let mut checked = 0;
    for seed in 0..1000u64 {
        let t = 50 + (seed as usize * 7) % 70;
        let values = if seed % 5 < 3 {
            null_path(300_000 + seed, 0, t)
        } else {
            let start = t / 3;
            let length = (t / 4).max(10);
            let config = BubbleDgpConfig::single_bubble(
                t,
                1.05,
                start,
                length.min(t - start),
                400_000 + seed,
            );
            generate(&config).unwrap().0.values().to_vec()
        };
        let policy = WindowPolicy::explicit(8 + (seed as usize % 10));
        let r = scan(&values, &policy, &spec).unwrap();
        checked += 1;
        if !(r.gsadf >= r.sadf && r.sadf >= r.adf_full) {
            violations += 1;
        }
        let seq_max = r
            .bsadf_seq
            .iter()
            .map(|&(_, v)| v)
            .fold(f64::NEG_INFINITY, f64::max);
        if r.gsadf != seq_max {
            violations += 1;
        }
    }
    let detail = format!("{violations} ordering violations over {checked} random inputs");
    verdict("3 statistic ordering", violations == 0, &detail);
    assert_eq!(violations, 0, "{detail}");
}

// ---------------------------------------------------------- criterion 4

#[test]
fn criterion_4_oracle_equivalence() {
    let spec = AdfSpec::fixed(0);
    let mut max_gap = 0.0_f64;
    for i in 0..50u64 {
        let t = 60 + (i as usize * 17) % 141; // spread over 60..=200
        let y = common::random_walk(t, 500_000 + i);
        let w0 = phillips_window(t).max(8);
        let seq = bsadf_sequence(&y, &WindowPolicy::explicit(w0), &spec).unwrap();
        let brute = common::brute_force_bsadf(&y, w0, 0);
        assert_eq!(seq.len(), brute.len());
        for ((i1, v1), (_, v2)) in seq.iter().zip(&brute) {
            let gap = (v1 - v2).abs();
            assert!(gap < 1e-8, "series {i} r2 {i1}: {v1} vs {v2}");
            max_gap = max_gap.max(gap);
        }
    }
    let detail = format!("max |incremental − brute force| = {max_gap:.2e} over 50 series, T ≤ 200");
    verdict("4 oracle equivalence", true, &detail);
}

// ---------------------------------------------------------- criterion 5

fn criterion5_table() -> CriticalValueTable {
    simulate_null(&McConfig::new(300, 42)).unwrap()
}

#[test]
fn criterion_5_size_and_power() {
    let table = criterion5_table();
    let g95 = table.gsadf_cv_at(0.95).unwrap();
    let spec = AdfSpec::fixed(0);
    let policy = WindowPolicy::Phillips;

    let mut rejections = 0;
    for seed in 0..500u64 {
        // generator path with no bubble windows: η ≡ 0
        let (series, truth) = generate(&BubbleDgpConfig::random_walk(300, 700_000 + seed)).unwrap();
        assert!(truth.is_empty());
        if scan(series.values(), &policy, &spec).unwrap().gsadf > g95 {
            rejections += 1;
        }
    }
    let size = rejections as f64 / 500.0;
    let size_ok = (0.03..=0.07).contains(&size);

    let mut detections = 0;
    for seed in 0..200u64 {
        let dgp = BubbleDgpConfig::single_bubble(300, 1.05, 150, 30, 800_000 + seed);
        let (series, _) = generate(&dgp).unwrap();
        if scan(series.values(), &policy, &spec).unwrap().gsadf > g95 {
            detections += 1;
        }
    }
    let power = detections as f64 / 200.0;
    let power_ok = power >= 0.80;

    let detail =
        format!("size {size:.3} (want 0.05±0.02 over 500 seeds); power {power:.3} (want ≥0.80 over 200 seeds)");
    verdict("5 size and power", size_ok && power_ok, &detail);
    assert!(size_ok && power_ok, "{detail}");
}

#[test]
fn criterion_5_origination_accuracy() {
    let table = criterion5_table();
    let g95 = table.gsadf_cv_at(0.95).unwrap();
    let cv = table.bsadf_cv_at(0.95).unwrap().to_vec();
    let spec = AdfSpec::fixed(0);
    let policy = WindowPolicy::Phillips;

    let mut detections = 0;
    let mut within3 = 0;
    for seed in 0..200u64 {
        let dgp = BubbleDgpConfig::single_bubble(300, 1.05, 150, 30, 800_000 + seed);
        let (series, _) = generate(&dgp).unwrap();
        let result = scan(series.values(), &policy, &spec).unwrap();
        if result.gsadf <= g95 {
            continue;
        }
        detections += 1;
        let episodes =
            stamp_episodes(&result.bsadf_seq, &cv, 1, series.start(), Some(0.95)).unwrap();
        // the dominant detection: the episode with the largest peak
        if let Some(best) = episodes.episodes.iter().max_by(|a, b| {
            a.peak_bsadf
                .unwrap_or(f64::NEG_INFINITY)
                .partial_cmp(&b.peak_bsadf.unwrap_or(f64::NEG_INFINITY))
                .unwrap()
        }) {
            if (best.start_index as i64 - 150).abs() <= 3 {
                within3 += 1;
            }
        }
    }
    let share = within3 as f64 / detections.max(1) as f64;
    let pass = share >= 0.80;
    let detail = format!(
        "origination within ±3 obs in {within3}/{detections} detections ({share:.3}, want ≥0.80). \
         This bound is structurally out of reach at growth 1.05 with the phillips window (34): \
         every window ending within 3 observations of ignition contains ≥31 pre-bubble \
         observations, so the backward sup crosses the 95% sequence with a median delay of \
         5–15 observations at any ignition level (measured 0.17–0.36 across ignitions of \
         0.1–20 innovation sd). See the project decisions ledger."
    );
    verdict("5 origination accuracy", pass, &detail);
    assert!(pass, "{detail}");
}

// ---------------------------------------------------------- criterion 6

#[test]
fn criterion_6_logit_correctness() {
    // (a) 2x2 closed form
    let mut y = Vec::new();
    let mut x = Vec::new();
    for i in 0..100 {
        x.push(1.0);
        y.push(u8::from(i < 30));
    }
    for i in 0..100 {
        x.push(0.0);
        y.push(u8::from(i < 10));
    }
    let mut panel = CovariatePanel::new(200);
    panel.push("x", &x, logit::Transform::Level).unwrap();
    let fit = fit_logit(&y, &panel).unwrap();
    let slope_err = (fit.beta[1] - (27.0_f64 / 7.0).ln()).abs();
    let a_ok = slope_err < 1e-6;

    // (b) synthetic recovery at n = 5000, (c) gradient at the optimum
    use rand::Rng;
    use rand_distr::{Distribution, StandardNormal};
    let n = 5000;
    let mut rng = common::rng(31_415);
    let xs: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
    let ys: Vec<u8> = xs
        .iter()
        .map(|&xi| {
            let p = 1.0 / (1.0 + (0.5 - xi).exp()); // Λ(−0.5 + x)
            u8::from(rng.random::<f64>() < p)
        })
        .collect();
    let mut big_panel = CovariatePanel::new(n);
    big_panel.push("x", &xs, logit::Transform::Level).unwrap();
    let big = fit_logit(&ys, &big_panel).unwrap();
    let b_ok = (big.beta[0] - -0.5).abs() < 2.0 * big.stderr[0]
        && (big.beta[1] - 1.0).abs() < 2.0 * big.stderr[1];

    // independent gradient at the reported optimum
    let mut grad = [0.0_f64; 2];
    for (xi, &yi) in xs.iter().zip(&ys) {
        let z = big.beta[0] + big.beta[1] * xi;
        let mu = if z >= 0.0 {
            1.0 / (1.0 + (-z).exp())
        } else {
            z.exp() / (1.0 + z.exp())
        };
        grad[0] += yi as f64 - mu;
        grad[1] += (yi as f64 - mu) * xi;
    }
    let grad_norm = grad[0].abs().max(grad[1].abs());
    let c_ok = grad_norm < 1e-6;

    // (d) averaged marginal effect vs central finite difference
    let ame = marginal_effects(&big, &big_panel, MarginalMode::Averaged).unwrap()[0];
    let h = 1e-5;
    let mean_prob = |shift: f64| -> f64 {
        xs.iter()
            .map(|&xi| {
                let z = big.beta[0] + big.beta[1] * (xi + shift);
                1.0 / (1.0 + (-z).exp())
            })
            .sum::<f64>()
            / n as f64
    };
    let fd = (mean_prob(h) - mean_prob(-h)) / (2.0 * h);
    let d_ok = (ame - fd).abs() < 1e-6;

    // (e) published chi-square pairs to 4 decimals
    let p1 = special::chi_square_sf(19.36, 3);
    let p2 = special::chi_square_sf(7.27, 3);
    let round4 = |p: f64| (p * 1e4).round() / 1e4;
    let e_ok = round4(p1) == 0.0002 && round4(p2) == 0.0638;

    let pass = a_ok && b_ok && c_ok && d_ok && e_ok;
    let detail = format!(
        "2x2 slope err {slope_err:.1e}; recovery β=({:.3},{:.3}) se=({:.3},{:.3}); \
         gradient {grad_norm:.1e}; |ame−fd| {:.1e}; p-values {:.4}/{:.4}",
        big.beta[0],
        big.beta[1],
        big.stderr[0],
        big.stderr[1],
        (ame - fd).abs(),
        p1,
        p2
    );
    verdict("6 logit correctness", pass, &detail);
    assert!(a_ok, "2x2 closed form: {detail}");
    assert!(b_ok, "synthetic recovery: {detail}");
    assert!(c_ok, "gradient at optimum: {detail}");
    assert!(d_ok, "marginal effect vs finite difference: {detail}");
    assert!(e_ok, "chi-square pairs: {detail}");
}

// ---------------------------------------------------------- criterion 7

#[test]
fn criterion_7_determinism() {
    let tmp = tempfile::tempdir().unwrap();
    let series_path = tmp.path().join("series.csv");
    let start: MonthIndex = "1990M01".parse().unwrap();
    let mut text = String::from("date,value\n");
    for (i, v) in common::random_walk(150, 4242).iter().enumerate() {
        text.push_str(&format!("{},{v}\n", start.plus(i as i64)));
    }
    std::fs::write(&series_path, text).unwrap();

    let run = |out: &std::path::Path| {
        let status = Command::new(env!("CARGO_BIN_EXE_exuberance"))
            .args([
                "test",
                "--input",
                series_path.to_str().unwrap(),
                "--reps",
                "200",
                "--seed",
                "99",
                "--no-plot",
                "--out",
                out.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(status.success());
    };
    let out_a = tmp.path().join("a");
    let out_b = tmp.path().join("b");
    run(&out_a);
    run(&out_b);
    let mut identical = true;
    for file in ["result.json", "cv_table.json"] {
        let a = std::fs::read(out_a.join(file)).unwrap();
        let b = std::fs::read(out_b.join(file)).unwrap();
        identical &= a == b;
    }
    verdict(
        "7 determinism",
        identical,
        "result.json and cv_table.json byte-identical across reruns with the same seed",
    );
    assert!(identical);
}

// ---------------------------------------------------------- criterion 8

#[test]
fn criterion_8_performance() {
    let y = common::random_walk(500, 77);
    let spec = AdfSpec::fixed(0);
    let started = Instant::now();
    let result = scan(&y, &WindowPolicy::Phillips, &spec).unwrap();
    let single = started.elapsed();
    assert!(result.bsadf_seq.len() == 500 - result.policy_echo.min_window + 1);
    let single_ok = single.as_secs_f64() < 1.0;

    let started = Instant::now();
    let table = simulate_null(&McConfig::new(500, 11)).unwrap();
    let sim = started.elapsed();
    assert!(table.gsadf_cv_at(0.95).is_some());
    let sim_ok = sim.as_secs() < 300;

    let detail = format!(
        "T=500 full BSADF scan {:.3}s (budget 1s); 2000-rep CV simulation {:.1}s (budget 300s)",
        single.as_secs_f64(),
        sim.as_secs_f64()
    );
    verdict("8 performance", single_ok && sim_ok, &detail);
    assert!(single_ok && sim_ok, "{detail}");
}

// ---------------------------------------------------------- criterion 9

#[test]
fn criterion_9_declared_scope_and_demo_pipeline() {
    // The published empirical magnitudes this toolkit targets depend on
    // subscription data feeds and unstated transforms; the pipeline is
    // demonstrated end-to-end on bundled synthetic data instead, and the
    // data-independent numbers are covered by criteria 1, 2, and 6.
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("demo");
    let status = Command::new(env!("CARGO_BIN_EXE_exuberance"))
        .args([
            "pipeline",
            "--demo",
            "--reps",
            "300",
            "--no-plot",
            "--out",
            out.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());

    let mut panels = 0;
    for regime in ["full", "managed", "free"] {
        for variant in ["s", "s_minus_fn", "s_minus_ft"] {
            if out
                .join(format!("tests/{regime}/{variant}/result.json"))
                .exists()
            {
                panels += 1;
            }
        }
    }

    // ground-truth recovery on the bundled data: the stamped episodes of
    // the full-sample spot series overlap an injected window
    let truth: EpisodeSet =
        serde_json::from_str(&std::fs::read_to_string(out.join("demo_data/truth.json")).unwrap())
            .unwrap();
    let episodes = std::fs::read_to_string(out.join("tests/full/s/episodes.csv")).unwrap();
    let overlap = episodes.lines().skip(1).any(|line| {
        let mut cols = line.split(',');
        let start: MonthIndex = cols.next().unwrap().parse().unwrap();
        let end: MonthIndex = cols.next().unwrap().parse().unwrap();
        truth
            .episodes
            .iter()
            .any(|t| start <= t.end && end >= t.start)
    });

    let logit_fits = walk_count(&out.join("logit"), "fit.json");
    let pass = panels == 9 && overlap && logit_fits >= 1;
    let detail = format!(
        "demo pipeline: {panels}/9 test panels, ground-truth overlap {overlap}, \
         {logit_fits} logit fits; exact published-table statistics declared out of \
         reach (subscription data), data-independent numbers covered by criteria 1/2/6"
    );
    verdict("9 declared scope / demo pipeline", pass, &detail);
    assert!(pass, "{detail}");
}

fn walk_count(root: &std::path::Path, name: &str) -> usize {
    let mut count = 0;
    if let Ok(entries) = std::fs::read_dir(root) {
        for entry in entries.flatten() {
            let path = entry.path();
            if path.is_dir() {
                count += walk_count(&path, name);
            } else if path.file_name().is_some_and(|f| f == name) {
                count += 1;
            }
        }
    }
    count
}
