//! Recursive right-tailed test statistics: SADF, GSADF, and the backward
//! sup sequence (BSADF) that powers date-stamping.
//!
//! All three statistics are projections of one window family: for every
//! admissible end point `r2` the start point `r1` runs over
//! `1 ..= r2 − w0 + 1`. Computing them from a single family evaluation
//! makes the nesting `gsadf ≥ sadf ≥ adf_full` hold exactly, not merely
//! up to rounding.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adf::{AdfSpec, LagRule, Prepared};
use crate::error::{Error, Result};

/// Minimum-window policy for the recursive family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum WindowPolicy {
    /// A fixed observation count.
    Explicit { min_window: usize },
    /// `floor(T·(0.01 + 1.8/√T))`, floored at the regression's shortest
    /// admissible window.
    Phillips,
}

impl WindowPolicy {
    pub fn explicit(min_window: usize) -> Self {
        WindowPolicy::Explicit { min_window }
    }

    /// Resolves the policy into a concrete window size for sample length `t`.
    pub fn resolve(&self, t: usize, spec: &AdfSpec) -> Result<usize> {
        let floor = spec.min_window();
        let w0 = match self {
            WindowPolicy::Explicit { min_window } => {
                if *min_window < floor {
                    return Err(Error::MinWindowBelowFloor {
                        w0: *min_window,
                        min: floor,
                        lags: spec.max_order(),
                    });
                }
                *min_window
            }
            WindowPolicy::Phillips => phillips_window(t).max(floor),
        };
        if w0 > t {
            return Err(Error::MinWindowTooLarge { w0, t });
        }
        Ok(w0)
    }
}

/// The rule-of-thumb minimum window `floor(T·(0.01 + 1.8/√T))`.
pub fn phillips_window(t: usize) -> usize {
    let tf = t as f64;
    (tf * (0.01 + 1.8 / tf.sqrt())).floor() as usize
}

/// A window `[r1, r2]` in 1-based observation indices, both inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowRef {
    pub r1: usize,
    pub r2: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArgmaxWindows {
    pub sadf: WindowRef,
    pub gsadf: WindowRef,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolicyEcho {
    pub min_window: usize,
    pub policy: WindowPolicy,
    pub lag_rule: LagRule,
}

/// Full output of one recursive scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecursiveResult {
    /// ADF on the full sample `[1, T]`.
    #[serde(rename = "adf")]
    pub adf_full: f64,
    pub sadf: f64,
    pub gsadf: f64,
    /// `(r2, BSADF(r2))` for every `r2` in `w0 ..= T`.
    #[serde(rename = "bsadf")]
    pub bsadf_seq: Vec<(usize, f64)>,
    pub argmax: ArgmaxWindows,
    #[serde(rename = "policy")]
    pub policy_echo: PolicyEcho,
    /// Windows skipped as singular inside the sups.
    pub skipped_singular: usize,
}

impl RecursiveResult {
    pub fn bsadf_values(&self) -> Vec<f64> {
        self.bsadf_seq.iter().map(|&(_, v)| v).collect()
    }
}

struct R2Outcome {
    r2: usize,
    /// Best (value, r1) over the family ending at r2; smallest r1 on ties.
    best: Option<(f64, usize)>,
    /// Statistic of the anchored window [1, r2], when non-singular.
    anchored: Option<f64>,
    skipped: usize,
    family_size: usize,
}

/// Evaluates the complete window family and returns every recursive
/// statistic at once. O(T²) windows; the `r2` loop runs in parallel and
/// the result is independent of the partitioning.
pub fn scan(values: &[f64], policy: &WindowPolicy, spec: &AdfSpec) -> Result<RecursiveResult> {
    let t = values.len();
    let w0 = policy.resolve(t, spec)?;
    let prepared = Prepared::new(values);

    let outcomes: Vec<R2Outcome> = (w0..=t)
        .into_par_iter()
        .map(|r2| evaluate_family(&prepared, r2, w0, spec))
        .collect();

    let mut bsadf_seq = Vec::with_capacity(outcomes.len());
    let mut skipped_singular = 0;
    let mut gsadf: Option<(f64, WindowRef)> = None;
    let mut sadf: Option<(f64, usize)> = None;
    let mut adf_full: Option<f64> = None;

    for outcome in &outcomes {
        skipped_singular += outcome.skipped;
        let (value, r1) = outcome.best.ok_or(Error::AllWindowsSingular {
            r2: outcome.r2,
            count: outcome.family_size,
        })?;
        bsadf_seq.push((outcome.r2, value));
        // Strict '>' keeps the first attaining (r2, r1) in lexicographic order.
        if gsadf.is_none_or(|(g, _)| value > g) {
            gsadf = Some((value, WindowRef { r1, r2: outcome.r2 }));
        }
        if let Some(anchored) = outcome.anchored {
            if sadf.is_none_or(|(s, _)| anchored > s) {
                sadf = Some((anchored, outcome.r2));
            }
        }
        if outcome.r2 == t {
            adf_full = outcome.anchored;
        }
    }

    let (gsadf, gsadf_at) = gsadf.expect("non-empty r2 range");
    let (sadf, sadf_r2) = sadf.ok_or(Error::SingularDesign {
        r1: 1,
        r2: t,
        reason: "every sample-anchored window is singular",
    })?;
    let adf_full = adf_full.ok_or(Error::SingularDesign {
        r1: 1,
        r2: t,
        reason: "full-sample regression is singular",
    })?;

    Ok(RecursiveResult {
        adf_full,
        sadf,
        gsadf,
        bsadf_seq,
        argmax: ArgmaxWindows {
            sadf: WindowRef { r1: 1, r2: sadf_r2 },
            gsadf: gsadf_at,
        },
        policy_echo: PolicyEcho {
            min_window: w0,
            policy: *policy,
            lag_rule: spec.lag_rule,
        },
        skipped_singular,
    })
}

fn evaluate_family(prepared: &Prepared<'_>, r2: usize, w0: usize, spec: &AdfSpec) -> R2Outcome {
    let b = r2 - 1;
    let a_hi = r2 - w0;
    let mut best: Option<(f64, usize)> = None;
    let mut anchored = None;
    let mut skipped = 0;

    let mut take = |a: usize, stat: std::result::Result<f64, ()>| match stat {
        Ok(value) => {
            // '>=' so that later emits (smaller r1) win exact ties.
            if best.is_none_or(|(v, _)| value >= v) {
                best = Some((value, a + 1));
            }
            if a == 0 {
                anchored = Some(value);
            }
        }
        Err(()) => skipped += 1,
    };

    match spec.lag_rule {
        LagRule::Fixed { lags } => {
            prepared.scan_backward(b, 0, a_hi, lags, |a, stat| {
                take(a, stat.map(|r| r.stat).map_err(|_| ()));
            });
        }
        // Per-window order selection cannot share cross products; this
        // path re-reads each window.
        LagRule::Bic { .. } => {
            for a in (0..=a_hi).rev() {
                let stat = match prepared.adf_window(a, b, spec, a + 1) {
                    Ok(r) => Ok(r.stat),
                    Err(Error::SingularDesign { .. }) => Err(()),
                    Err(_) => Err(()),
                };
                take(a, stat);
            }
        }
    }

    R2Outcome {
        r2,
        best,
        anchored,
        skipped,
        family_size: a_hi + 1,
    }
}

/// Sup of sample-anchored ADF statistics over end points `r2 ∈ [w0, T]`.
pub fn sadf(values: &[f64], policy: &WindowPolicy, spec: &AdfSpec) -> Result<(f64, WindowRef)> {
    let result = scan(values, policy, spec)?;
    Ok((result.sadf, result.argmax.sadf))
}

/// Sup of ADF statistics over all windows with both end points flexible.
pub fn gsadf(values: &[f64], policy: &WindowPolicy, spec: &AdfSpec) -> Result<(f64, WindowRef)> {
    let result = scan(values, policy, spec)?;
    Ok((result.gsadf, result.argmax.gsadf))
}

/// Backward sup sequence `(r2, BSADF(r2))` for `r2 ∈ [w0, T]`.
pub fn bsadf_sequence(
    values: &[f64],
    policy: &WindowPolicy,
    spec: &AdfSpec,
) -> Result<Vec<(usize, f64)>> {
    Ok(scan(values, policy, spec)?.bsadf_seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adf::adf_stat;
    use rand::SeedableRng;
    use rand_distr::{Distribution, StandardNormal};

    fn random_walk(n: usize, seed: u64) -> Vec<f64> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut level = 0.0;
        (0..n)
            .map(|_| {
                let e: f64 = StandardNormal.sample(&mut rng);
                level += e;
                level
            })
            .collect()
    }

    #[test]
    fn phillips_window_matches_published_sizes() {
        assert_eq!(phillips_window(465), 43);
        assert_eq!(phillips_window(314), 35);
        assert_eq!(phillips_window(151), 23);
    }

    #[test]
    fn degenerate_sample_equals_full_adf() {
        let y = random_walk(30, 1);
        let spec = AdfSpec::fixed(0);
        let result = scan(&y, &WindowPolicy::explicit(30), &spec).unwrap();
        assert_eq!(result.sadf, result.adf_full);
        assert_eq!(result.bsadf_seq.len(), 1);
        assert_eq!(result.gsadf, result.bsadf_seq[0].1);
        assert_eq!(result.argmax.sadf, WindowRef { r1: 1, r2: 30 });
    }

    #[test]
    fn nesting_holds_exactly() {
        for seed in 0..30 {
            let y = random_walk(90, seed);
            let r = scan(&y, &WindowPolicy::explicit(20), &AdfSpec::fixed(0)).unwrap();
            assert!(r.gsadf >= r.sadf, "seed {seed}");
            assert!(r.sadf >= r.adf_full, "seed {seed}");
            let max_seq = r
                .bsadf_seq
                .iter()
                .map(|&(_, v)| v)
                .fold(f64::NEG_INFINITY, f64::max);
            assert_eq!(r.gsadf, max_seq, "seed {seed}");
        }
    }

    #[test]
    fn sequence_has_full_coverage_and_first_entry_matches_adf() {
        let y = random_walk(60, 5);
        let spec = AdfSpec::fixed(0);
        let w0 = 15;
        let r = scan(&y, &WindowPolicy::explicit(w0), &spec).unwrap();
        assert_eq!(r.bsadf_seq.len(), 60 - w0 + 1);
        assert_eq!(r.bsadf_seq[0].0, w0);
        // at r2 == w0 the family is the single window [1, w0]
        let first = adf_stat(&y[..w0], &spec).unwrap().stat;
        assert!((r.bsadf_seq[0].1 - first).abs() < 1e-10);
    }

    #[test]
    fn appending_observations_never_decreases_sadf() {
        let y = random_walk(120, 9);
        let spec = AdfSpec::fixed(0);
        let policy = WindowPolicy::explicit(20);
        let (short, _) = sadf(&y[..90], &policy, &spec).unwrap();
        let (long, _) = sadf(&y, &policy, &spec).unwrap();
        // sup over a superset; small slack because the conditioning shift
        // differs between the two sample lengths
        assert!(long >= short - 1e-9, "short {short} long {long}");
    }

    #[test]
    fn shift_invariance_of_sequence() {
        let y = random_walk(80, 12);
        let shifted: Vec<f64> = y.iter().map(|v| v + 250.0).collect();
        let spec = AdfSpec::fixed(0);
        let policy = WindowPolicy::explicit(20);
        let a = bsadf_sequence(&y, &policy, &spec).unwrap();
        let b = bsadf_sequence(&shifted, &policy, &spec).unwrap();
        for ((i1, v1), (i2, v2)) in a.iter().zip(&b) {
            assert_eq!(i1, i2);
            assert!((v1 - v2).abs() < 1e-8);
        }
    }

    #[test]
    fn deterministic_across_runs_and_thread_counts() {
        let y = random_walk(150, 33);
        let spec = AdfSpec::fixed(1);
        let policy = WindowPolicy::Phillips;
        let a = scan(&y, &policy, &spec).unwrap();
        let b = scan(&y, &policy, &spec).unwrap();
        assert_eq!(a, b);
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let c = single.install(|| scan(&y, &policy, &spec).unwrap());
        assert_eq!(a, c);
    }

    #[test]
    fn explicit_window_below_floor_is_rejected() {
        let y = random_walk(50, 2);
        let err = scan(&y, &WindowPolicy::explicit(5), &AdfSpec::fixed(0)).unwrap_err();
        assert!(
            matches!(err, Error::MinWindowBelowFloor { w0: 5, min: 8, .. }),
            "{err}"
        );
    }

    #[test]
    fn sample_shorter_than_window_is_rejected() {
        let y = random_walk(30, 2);
        let err = scan(&y, &WindowPolicy::explicit(31), &AdfSpec::fixed(0)).unwrap_err();
        assert!(
            matches!(err, Error::MinWindowTooLarge { w0: 31, t: 30 }),
            "{err}"
        );
    }

    #[test]
    fn singular_windows_are_skipped_and_counted() {
        // a constant stretch in the middle: windows wholly inside it are
        // singular, while every anchored window still spans real data
        let mut y = random_walk(40, 8);
        let level = y[39];
        y.extend(std::iter::repeat_n(level, 25));
        y.extend(random_walk(30, 9).iter().map(|v| v + level));
        let r = scan(&y, &WindowPolicy::explicit(10), &AdfSpec::fixed(0)).unwrap();
        assert!(r.skipped_singular > 0, "skipped {}", r.skipped_singular);
        assert!(r.gsadf.is_finite());
        assert_eq!(r.bsadf_seq.len(), y.len() - 10 + 1);
    }

    #[test]
    fn fully_singular_end_point_is_an_error() {
        // constant head: every window ending inside it is singular
        let mut y = vec![4.0; 30];
        y.extend(random_walk(60, 8).iter().map(|v| v + 4.0));
        let err = scan(&y, &WindowPolicy::explicit(10), &AdfSpec::fixed(0)).unwrap_err();
        assert!(
            matches!(err, Error::AllWindowsSingular { r2: 10, .. }),
            "{err}"
        );
    }

    #[test]
    fn bic_scan_agrees_with_per_window_selection() {
        let y = random_walk(70, 44);
        let spec = AdfSpec::bic(2);
        let policy = WindowPolicy::explicit(16);
        let r = scan(&y, &policy, &spec).unwrap();
        // spot-check one sequence entry against a direct window evaluation
        let (r2, value) = r.bsadf_seq[10];
        let mut best = f64::NEG_INFINITY;
        for r1 in 1..=(r2 - 16 + 1) {
            if let Ok(res) = adf_stat(&y[r1 - 1..r2], &spec) {
                best = best.max(res.stat);
            }
        }
        assert!((value - best).abs() < 1e-10);
    }
}
