//! OLS core for the right-tailed unit-root regression, with incremental
//! window updates.
//!
//! The regression is `Δy_t = μ + δ·y_{t−1} + Σ φ_i Δy_{t−i} + ε_t`
//! (intercept, no trend). The reported statistic is the t-ratio of δ,
//! large positive values signalling explosive dynamics. Window families
//! sharing an end point are evaluated by growing cumulative cross-product
//! sums one observation at a time, so a family over n windows costs
//! O(n) accumulator updates instead of one full regression per window.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Condition-estimate ceiling for the equilibrated cross-product matrix.
/// The estimate is the squared ratio of extreme Cholesky pivots.
const COND_LIMIT: f64 = 1e12;

/// Lag order selection for the test regression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum LagRule {
    /// Use exactly `lags` lagged differences.
    Fixed { lags: usize },
    /// Minimize BIC over `0..=max_lags` on a common estimation sample,
    /// then refit the chosen order on its full window sample.
    Bic { max_lags: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdfSpec {
    pub lag_rule: LagRule,
}

impl Default for AdfSpec {
    fn default() -> Self {
        Self::fixed(0)
    }
}

impl AdfSpec {
    pub fn fixed(lags: usize) -> Self {
        Self {
            lag_rule: LagRule::Fixed { lags },
        }
    }

    pub fn bic(max_lags: usize) -> Self {
        Self {
            lag_rule: LagRule::Bic { max_lags },
        }
    }

    /// Largest lag order the rule can select.
    pub fn max_order(&self) -> usize {
        match self.lag_rule {
            LagRule::Fixed { lags } => lags,
            LagRule::Bic { max_lags } => max_lags,
        }
    }

    /// Shortest admissible window: `lags + 8` observations, raised when
    /// needed so the error dof `len − 2·lags − 3` stays positive.
    pub fn min_window(&self) -> usize {
        min_window_for(self.max_order())
    }
}

pub(crate) fn min_window_for(lags: usize) -> usize {
    (lags + 8).max(2 * lags + 4)
}

/// Schwert's rule of thumb bounding automatic lag selection:
/// `floor(12·(T/100)^0.25)`.
pub fn schwert_max_lags(len: usize) -> usize {
    (12.0 * (len as f64 / 100.0).powf(0.25)).floor() as usize
}

/// Unit-root regression output for one window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdfResult {
    /// t-ratio of the coefficient on `y_{t−1}`.
    pub stat: f64,
    pub delta_hat: f64,
    pub stderr_delta: f64,
    /// Estimation rows: window length − 1 − lags_used.
    pub n_obs: usize,
    pub lags_used: usize,
}

/// ADF statistic over a full segment, treated as the window `[1, len]`.
pub fn adf_stat(y: &[f64], spec: &AdfSpec) -> Result<AdfResult> {
    let prepared = Prepared::new(y);
    prepared.adf_window(0, y.len().saturating_sub(1), spec, 1)
}

/// Statistics for the family of windows `[r1, r2]` over the given start
/// grid (1-based, inclusive), all sharing the end point `r2`.
///
/// Values match independent [`adf_stat`] calls on the same windows; errors
/// are reported per window rather than aborting the family.
pub fn window_family_stats(
    y: &[f64],
    r1_grid: &[usize],
    r2: usize,
    spec: &AdfSpec,
) -> Vec<Result<AdfResult>> {
    let prepared = Prepared::new(y);
    if r2 < 1 || r2 > y.len() {
        return r1_grid
            .iter()
            .map(|&r1| {
                Err(Error::WindowTooShort {
                    r1,
                    r2,
                    len: 0,
                    min: spec.min_window(),
                    lags: spec.max_order(),
                })
            })
            .collect();
    }
    match spec.lag_rule {
        LagRule::Fixed { lags } => family_fixed(&prepared, r1_grid, r2, lags, spec),
        // BIC selection re-reads each window, so no incremental sharing.
        LagRule::Bic { .. } => r1_grid
            .iter()
            .map(|&r1| {
                if r1 < 1 || r1 > r2 {
                    return Err(short_window_error(r1, r2, spec));
                }
                prepared.adf_window(r1 - 1, r2 - 1, spec, r1)
            })
            .collect(),
    }
}

fn short_window_error(r1: usize, r2: usize, spec: &AdfSpec) -> Error {
    Error::WindowTooShort {
        r1,
        r2,
        len: if r2 >= r1 { r2 - r1 + 1 } else { 0 },
        min: spec.min_window(),
        lags: spec.max_order(),
    }
}

fn family_fixed(
    prepared: &Prepared<'_>,
    r1_grid: &[usize],
    r2: usize,
    lags: usize,
    spec: &AdfSpec,
) -> Vec<Result<AdfResult>> {
    let min_len = min_window_for(lags);
    let b = r2 - 1;
    // 1-based r1 values that admit a regression; anything larger is too short.
    let r1_max_valid = (r2 + 1).saturating_sub(min_len);

    let mut wanted: Vec<usize> = r1_grid
        .iter()
        .copied()
        .filter(|&r1| (1..=r1_max_valid).contains(&r1))
        .collect();
    wanted.sort_unstable();
    wanted.dedup();

    let mut by_r1: std::collections::HashMap<usize, WindowStat> =
        std::collections::HashMap::with_capacity(wanted.len());
    if let Some(&r1_hi) = wanted.last() {
        let r1_lo = wanted[0];
        let mut iter = wanted.iter().rev().peekable();
        prepared.scan_backward(b, r1_lo - 1, r1_hi - 1, lags, |a, stat| {
            let r1 = a + 1;
            if iter.peek() == Some(&&r1) {
                iter.next();
                by_r1.insert(r1, stat);
            }
        });
    }

    r1_grid
        .iter()
        .map(|&r1| match by_r1.get(&r1) {
            Some(stat) => stat.map_err(|reason| reason.into_error(r1, r2)),
            None => Err(short_window_error(r1, r2, spec)),
        })
        .collect()
}

/// Why a window's regression could not produce a t-ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SingularReason {
    ZeroVarianceRegressor,
    Collinear,
    IllConditioned,
    ZeroResidualVariance,
}

impl SingularReason {
    fn as_str(self) -> &'static str {
        match self {
            SingularReason::ZeroVarianceRegressor => "a regressor has zero variance",
            SingularReason::Collinear => "collinear regressors",
            SingularReason::IllConditioned => "condition estimate exceeds 1e12",
            SingularReason::ZeroResidualVariance => "zero residual variance",
        }
    }

    pub(crate) fn into_error(self, r1: usize, r2: usize) -> Error {
        Error::SingularDesign {
            r1,
            r2,
            reason: self.as_str(),
        }
    }
}

pub(crate) type WindowStat = std::result::Result<AdfResult, SingularReason>;

/// Series data prepared for window evaluation: globally centered levels
/// (the intercept absorbs any shift, so centering only conditions the
/// cross products) and first differences.
pub(crate) struct Prepared<'a> {
    raw: &'a [f64],
    centered: Vec<f64>,
    diff: Vec<f64>,
}

impl<'a> Prepared<'a> {
    pub(crate) fn new(y: &'a [f64]) -> Self {
        let mean = if y.is_empty() {
            0.0
        } else {
            y.iter().sum::<f64>() / y.len() as f64
        };
        let centered: Vec<f64> = y.iter().map(|v| v - mean).collect();
        let mut diff = vec![0.0; y.len()];
        for i in 1..y.len() {
            diff[i] = centered[i] - centered[i - 1];
        }
        Self {
            raw: y,
            centered,
            diff,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.raw.len()
    }

    /// Single-window evaluation, 0-based inclusive `[a, b]`. `r1_label`
    /// is the 1-based window start used in error attribution.
    pub(crate) fn adf_window(
        &self,
        a: usize,
        b: usize,
        spec: &AdfSpec,
        r1_label: usize,
    ) -> Result<AdfResult> {
        let r2_label = b + 1;
        let len = if b >= a { b - a + 1 } else { 0 };
        match spec.lag_rule {
            LagRule::Fixed { lags } => {
                let min = min_window_for(lags);
                if b >= self.len() || len < min {
                    return Err(Error::WindowTooShort {
                        r1: r1_label,
                        r2: r2_label,
                        len,
                        min,
                        lags,
                    });
                }
                self.window_fixed(a, b, lags)
                    .map_err(|reason| reason.into_error(r1_label, r2_label))
            }
            LagRule::Bic { max_lags } => {
                if b >= self.len() || len < min_window_for(0) {
                    return Err(Error::WindowTooShort {
                        r1: r1_label,
                        r2: r2_label,
                        len,
                        min: min_window_for(0),
                        lags: 0,
                    });
                }
                // Cap the candidate order by Schwert's bound and the window room.
                let mut k_max = max_lags.min(schwert_max_lags(len));
                while k_max > 0 && len < min_window_for(k_max) {
                    k_max -= 1;
                }
                let chosen = self
                    .select_lags_bic(a, b, k_max)
                    .map_err(|reason| reason.into_error(r1_label, r2_label))?;
                self.window_fixed(a, b, chosen)
                    .map_err(|reason| reason.into_error(r1_label, r2_label))
            }
        }
    }

    fn window_fixed(&self, a: usize, b: usize, lags: usize) -> WindowStat {
        if lags == 0 {
            let mut acc = AccK0::default();
            for i in (a + 1)..=b {
                acc.add_row(self.centered[i - 1], self.diff[i]);
            }
            acc.stat()
        } else {
            let mut acc = AccGen::new(lags);
            for i in (a + lags + 1)..=b {
                acc.add_row(&self.centered, &self.diff, i);
            }
            acc.stat()
        }
    }

    /// BIC over `0..=k_max` on the common estimation rows
    /// `a + k_max + 1 ..= b`; nested models are read off one full-order
    /// cross-product matrix. Ties pick the smaller order.
    fn select_lags_bic(
        &self,
        a: usize,
        b: usize,
        k_max: usize,
    ) -> std::result::Result<usize, SingularReason> {
        if k_max == 0 {
            return Ok(0);
        }
        let mut acc = AccGen::new(k_max);
        for i in (a + k_max + 1)..=b {
            acc.add_row(&self.centered, &self.diff, i);
        }
        let n = acc.n as f64;
        let mut best: Option<(f64, usize)> = None;
        for k in 0..=k_max {
            let p = k + 2;
            let Ok(sol) = acc.solve_submodel(p) else {
                continue;
            };
            if sol.rss <= 0.0 {
                continue; // perfect fit: BIC undefined, never the realistic pick
            }
            let bic = n * (sol.rss / n).ln() + p as f64 * n.ln();
            if best.is_none_or(|(bb, _)| bic < bb) {
                best = Some((bic, k));
            }
        }
        best.map(|(_, k)| k).ok_or(SingularReason::Collinear)
    }

    /// Walks windows `[a, b]` with `a` descending from `a_hi` to `a_lo`,
    /// feeding each window's statistic to `emit(a, stat)`.
    pub(crate) fn scan_backward<F: FnMut(usize, WindowStat)>(
        &self,
        b: usize,
        a_lo: usize,
        a_hi: usize,
        lags: usize,
        mut emit: F,
    ) {
        debug_assert!(a_lo <= a_hi && b < self.len());
        if lags == 0 {
            let mut acc = AccK0::default();
            for i in (a_hi + 1)..=b {
                acc.add_row(self.centered[i - 1], self.diff[i]);
            }
            emit(a_hi, acc.stat());
            for a in (a_lo..a_hi).rev() {
                let i = a + 1;
                acc.add_row(self.centered[i - 1], self.diff[i]);
                emit(a, acc.stat());
            }
        } else {
            let mut acc = AccGen::new(lags);
            for i in (a_hi + lags + 1)..=b {
                acc.add_row(&self.centered, &self.diff, i);
            }
            emit(a_hi, acc.stat());
            for a in (a_lo..a_hi).rev() {
                acc.add_row(&self.centered, &self.diff, a + lags + 1);
                emit(a, acc.stat());
            }
        }
    }
}

/// Neumaier-compensated running sum; the cross products accumulate in
/// better-than-f64 working precision.
#[derive(Debug, Clone, Copy, Default)]
struct CompSum {
    sum: f64,
    c: f64,
}

impl CompSum {
    #[inline]
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    fn value(&self) -> f64 {
        self.sum + self.c
    }
}

/// Lag-free accumulator: sufficient statistics for `Δy on [1, y_{t−1}]`.
#[derive(Debug, Default, Clone)]
struct AccK0 {
    n: usize,
    sx: CompSum,
    sxx: CompSum,
    sd: CompSum,
    sdd: CompSum,
    sxd: CompSum,
}

impl AccK0 {
    #[inline]
    fn add_row(&mut self, x: f64, d: f64) {
        self.n += 1;
        self.sx.add(x);
        self.sxx.add(x * x);
        self.sd.add(d);
        self.sdd.add(d * d);
        self.sxd.add(x * d);
    }

    fn stat(&self) -> WindowStat {
        let n = self.n as f64;
        let sx = self.sx.value();
        let sxx = self.sxx.value();
        let sd = self.sd.value();
        let sdd = self.sdd.value();
        let sxd = self.sxd.value();

        if sxx <= 0.0 {
            return Err(SingularReason::ZeroVarianceRegressor);
        }
        let denom = n * sxx - sx * sx;
        // Equilibrated condition estimate 1/(1−ρ²) with ρ = corr(1, x).
        if denom <= 0.0 {
            return Err(SingularReason::Collinear);
        }
        if n * sxx / denom > COND_LIMIT {
            return Err(SingularReason::IllConditioned);
        }

        let delta = (n * sxd - sx * sd) / denom;
        let mu = (sd - delta * sx) / n;
        let rss = sdd - mu * sd - delta * sxd;
        let dof = self.n - 2;
        assemble(delta, rss, sdd, sxx, n / denom, self.n, dof, 0)
    }
}

/// General accumulator over `[1, y_{t−1}, Δy_{t−1}..Δy_{t−k}, Δy_t]`:
/// upper triangle of the cross-product matrix, regressand last.
#[derive(Debug, Clone)]
struct AccGen {
    k: usize,
    m: usize,
    n: usize,
    s: Vec<CompSum>,
    row: Vec<f64>,
}

struct Solution {
    delta: f64,
    rss: f64,
    ztz: f64,
    sxx: f64,
    inv_delta: f64,
    n: usize,
}

impl AccGen {
    fn new(k: usize) -> Self {
        let m = k + 3;
        Self {
            k,
            m,
            n: 0,
            s: vec![CompSum::default(); m * (m + 1) / 2],
            row: vec![0.0; m],
        }
    }

    #[inline]
    fn add_row(&mut self, y: &[f64], d: &[f64], i: usize) {
        debug_assert!(i > self.k && i < y.len() + 1);
        self.row[0] = 1.0;
        self.row[1] = y[i - 1];
        for j in 1..=self.k {
            self.row[1 + j] = d[i - j];
        }
        self.row[self.m - 1] = d[i];
        let mut idx = 0;
        for a in 0..self.m {
            let ra = self.row[a];
            for b in a..self.m {
                self.s[idx].add(ra * self.row[b]);
                idx += 1;
            }
        }
        self.n += 1;
    }

    fn at(&self, a: usize, b: usize) -> f64 {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        // upper-triangle row offset: sum of (m - i) for i < a
        self.s[a * (2 * self.m - a + 1) / 2 + (b - a)].value()
    }

    /// Solves the nested model using the first `p` regressor columns.
    fn solve_submodel(&self, p: usize) -> std::result::Result<Solution, SingularReason> {
        debug_assert!(p >= 2 && p < self.m);
        let z = self.m - 1;
        let ztz = self.at(z, z);
        let sxx = self.at(1, 1);

        // Equilibrate: scale by sqrt of the diagonal.
        let mut scale = Vec::with_capacity(p);
        for i in 0..p {
            let d = self.at(i, i);
            if d <= 0.0 {
                return Err(SingularReason::ZeroVarianceRegressor);
            }
            scale.push(d.sqrt());
        }
        let mut a = vec![0.0; p * p];
        for i in 0..p {
            for j in 0..=i {
                a[i * p + j] = self.at(i, j) / (scale[i] * scale[j]);
            }
        }
        crate::linalg::cholesky_in_place(&mut a, p).map_err(|_| SingularReason::Collinear)?;
        let mut lo = f64::INFINITY;
        let mut hi = 0.0_f64;
        for i in 0..p {
            let piv = a[i * p + i];
            lo = lo.min(piv);
            hi = hi.max(piv);
        }
        if (hi / lo).powi(2) > COND_LIMIT {
            return Err(SingularReason::IllConditioned);
        }

        // beta on the equilibrated system, then undo the scaling.
        let mut rhs: Vec<f64> = (0..p).map(|i| self.at(i, z) / scale[i]).collect();
        crate::linalg::cholesky_solve_in_place(&a, p, &mut rhs);
        let beta: Vec<f64> = (0..p).map(|i| rhs[i] / scale[i]).collect();

        let mut fitted = 0.0;
        for (i, b) in beta.iter().enumerate() {
            fitted += b * self.at(i, z);
        }
        let rss = ztz - fitted;

        // (X'X)^{-1}[1,1] via the equilibrated inverse.
        let mut e1 = vec![0.0; p];
        e1[1] = 1.0;
        crate::linalg::cholesky_solve_in_place(&a, p, &mut e1);
        let inv_delta = e1[1] / (scale[1] * scale[1]);

        Ok(Solution {
            delta: beta[1],
            rss,
            ztz,
            sxx,
            inv_delta,
            n: self.n,
        })
    }

    fn stat(&self) -> WindowStat {
        let sol = self.solve_submodel(self.m - 1)?;
        let dof = sol.n - (self.m - 1);
        assemble(
            sol.delta,
            sol.rss,
            sol.ztz,
            sol.sxx,
            sol.inv_delta,
            sol.n,
            dof,
            self.k,
        )
    }
}

/// Turns solved normal equations into the t-ratio, applying the shared
/// degeneracy convention: a perfect fit yields stat 0 when δ̂ itself is
/// numerically zero (e.g. an exact linear trend) and is singular
/// otherwise, so the statistic is never ±∞.
#[allow(clippy::too_many_arguments)]
fn assemble(
    delta: f64,
    rss: f64,
    ztz: f64,
    sxx: f64,
    inv_delta: f64,
    n: usize,
    dof: usize,
    lags: usize,
) -> WindowStat {
    debug_assert!(dof >= 1);
    let rss_floor = ztz.abs() * n as f64 * f64::EPSILON;
    if rss <= rss_floor {
        if delta.abs() * sxx.sqrt() <= rss_floor.sqrt() {
            return Ok(AdfResult {
                stat: 0.0,
                delta_hat: delta,
                stderr_delta: 0.0,
                n_obs: n,
                lags_used: lags,
            });
        }
        return Err(SingularReason::ZeroResidualVariance);
    }
    let sigma2 = rss / dof as f64;
    let stderr = (sigma2 * inv_delta).sqrt();
    Ok(AdfResult {
        stat: delta / stderr,
        delta_hat: delta,
        stderr_delta: stderr,
        n_obs: n,
        lags_used: lags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_distr::{Distribution, StandardNormal};

    fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
        rand_chacha::ChaCha8Rng::seed_from_u64(seed)
    }

    fn random_walk(n: usize, seed: u64) -> Vec<f64> {
        let mut r = rng(seed);
        let mut y = Vec::with_capacity(n);
        let mut level = 0.0;
        for _ in 0..n {
            let e: f64 = StandardNormal.sample(&mut r);
            level += e;
            y.push(level);
        }
        y
    }

    /// Textbook OLS of the test regression: explicit design matrix and
    /// Gauss-Jordan solve, no shared code with the accumulator path.
    #[allow(clippy::needless_range_loop)]
    fn naive_adf(y: &[f64], lags: usize) -> (f64, f64, f64) {
        let t = y.len();
        let p = lags + 2;
        let rows = t - 1 - lags;
        let mut x = vec![vec![0.0; p]; rows];
        let mut z = vec![0.0; rows];
        for (r, i) in (lags + 1..t).enumerate() {
            x[r][0] = 1.0;
            x[r][1] = y[i - 1];
            for j in 1..=lags {
                x[r][1 + j] = y[i - j] - y[i - j - 1];
            }
            z[r] = y[i] - y[i - 1];
        }
        // normal equations solved by Gauss-Jordan with partial pivoting
        let mut a = vec![vec![0.0; p + 1]; p];
        for i in 0..p {
            for j in 0..p {
                a[i][j] = x.iter().map(|row| row[i] * row[j]).sum();
            }
            a[i][p] = x.iter().zip(&z).map(|(row, &zz)| row[i] * zz).sum();
        }
        let mut inv = vec![vec![0.0; p]; p];
        for (i, row) in inv.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        for col in 0..p {
            let piv = (col..p)
                .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
                .unwrap();
            a.swap(col, piv);
            inv.swap(col, piv);
            let d = a[col][col];
            for j in 0..=p {
                a[col][j] /= d;
            }
            for j in 0..p {
                inv[col][j] /= d;
            }
            for i in 0..p {
                if i != col {
                    let f = a[i][col];
                    for j in 0..=p {
                        a[i][j] -= f * a[col][j];
                    }
                    for j in 0..p {
                        inv[i][j] -= f * inv[col][j];
                    }
                }
            }
        }
        let beta: Vec<f64> = (0..p).map(|i| a[i][p]).collect();
        let rss: f64 = x
            .iter()
            .zip(&z)
            .map(|(row, &zz)| {
                let fit: f64 = row.iter().zip(&beta).map(|(xi, bi)| xi * bi).sum();
                (zz - fit) * (zz - fit)
            })
            .sum();
        let sigma2 = rss / (rows - p) as f64;
        let se = (sigma2 * inv[1][1]).sqrt();
        (beta[1], se, rss)
    }

    #[test]
    fn matches_naive_ols_on_random_walks() {
        for seed in 0..20 {
            let y = random_walk(80, seed);
            let got = adf_stat(&y, &AdfSpec::fixed(0)).unwrap();
            let (delta, se, _) = naive_adf(&y, 0);
            assert!((got.delta_hat - delta).abs() < 1e-10, "seed {seed}");
            assert!((got.stat - delta / se).abs() < 1e-10, "seed {seed}");
            assert_eq!(got.n_obs, 79);
        }
    }

    #[test]
    fn matches_naive_ols_with_lags() {
        for seed in 0..10 {
            let y = random_walk(120, seed);
            for lags in [1, 3] {
                let got = adf_stat(&y, &AdfSpec::fixed(lags)).unwrap();
                let (delta, se, _) = naive_adf(&y, lags);
                assert!(
                    (got.stat - delta / se).abs() < 1e-8,
                    "seed {seed} lags {lags}"
                );
                assert_eq!(got.n_obs, 120 - 1 - lags);
                assert_eq!(got.lags_used, lags);
            }
        }
    }

    #[test]
    fn exact_trend_has_zero_delta_and_no_singular_error() {
        let y: Vec<f64> = (1..=60).map(|t| t as f64).collect();
        let got = adf_stat(&y, &AdfSpec::fixed(0)).unwrap();
        let (delta, _, rss) = naive_adf(&y, 0);
        assert!(rss.abs() < 1e-9, "oracle detects the perfect fit");
        assert!((got.delta_hat - delta).abs() < 1e-10);
        assert!((got.delta_hat).abs() < 1e-12);
        assert_eq!(got.stat, 0.0);
        assert_eq!(got.stderr_delta, 0.0);
    }

    #[test]
    fn constant_segment_is_singular() {
        let y = vec![5.0; 40];
        let err = adf_stat(&y, &AdfSpec::fixed(0)).unwrap_err();
        assert!(matches!(err, Error::SingularDesign { .. }), "{err}");
    }

    #[test]
    fn window_too_short_is_reported() {
        let y = random_walk(30, 3);
        let err = adf_stat(&y[..6], &AdfSpec::fixed(0)).unwrap_err();
        assert!(
            matches!(err, Error::WindowTooShort { len: 6, min: 8, .. }),
            "{err}"
        );
    }

    #[test]
    fn random_walk_stats_center_near_dickey_fuller_mean() {
        let reps = 1000;
        let mut sum = 0.0;
        let mut rejections = 0;
        for seed in 0..reps {
            let y = random_walk(400, 1000 + seed);
            let stat = adf_stat(&y, &AdfSpec::fixed(0)).unwrap().stat;
            sum += stat;
            if stat > 1.49 {
                rejections += 1;
            }
        }
        let mean = sum / reps as f64;
        assert!((mean - -1.5).abs() < 0.1, "mean ADF stat {mean}");
        // Roughly the 5% right tail; allow slack for Monte Carlo error.
        assert!(rejections < reps / 12, "rejections {rejections}");
    }

    #[test]
    fn explosive_ar1_yields_large_positive_stats() {
        let reps = 500;
        let mut hits = 0;
        for seed in 0..reps {
            let mut r = rng(5000 + seed);
            let mut y = Vec::with_capacity(200);
            let mut level = 1.0;
            for _ in 0..200 {
                let e: f64 = StandardNormal.sample(&mut r);
                level = 1.05 * level + e;
                y.push(level);
            }
            if adf_stat(&y, &AdfSpec::fixed(0)).unwrap().stat > 2.0 {
                hits += 1;
            }
        }
        assert!(hits as f64 >= 0.95 * reps as f64, "hits {hits}/{reps}");
    }

    #[test]
    fn family_matches_independent_calls() {
        let y = random_walk(60, 7);
        let spec = AdfSpec::fixed(0);
        let grid = [1, 11, 26];
        let family = window_family_stats(&y, &grid, 60, &spec);
        for (&r1, res) in grid.iter().zip(&family) {
            let solo = adf_stat(&y[r1 - 1..60], &spec).unwrap();
            let fam = res.as_ref().unwrap();
            assert!((fam.stat - solo.stat).abs() < 1e-10, "r1 {r1}");
        }
    }

    #[test]
    fn family_with_lags_matches_independent_calls() {
        let y = random_walk(90, 11);
        let spec = AdfSpec::fixed(2);
        let grid = [1, 5, 40];
        let family = window_family_stats(&y, &grid, 90, &spec);
        for (&r1, res) in grid.iter().zip(&family) {
            let solo = adf_stat(&y[r1 - 1..90], &spec).unwrap();
            let fam = res.as_ref().unwrap();
            assert!((fam.stat - solo.stat).abs() < 1e-8, "r1 {r1}");
        }
    }

    #[test]
    fn singleton_family_equals_adf_stat() {
        let y = random_walk(50, 9);
        let spec = AdfSpec::fixed(0);
        let family = window_family_stats(&y, &[1], 50, &spec);
        let solo = adf_stat(&y, &spec).unwrap();
        assert_eq!(family[0].as_ref().unwrap().stat, solo.stat);
    }

    #[test]
    fn constant_subwindow_fails_alone() {
        let mut y = random_walk(80, 13);
        for v in y.iter_mut().skip(50) {
            *v = 1.25;
        }
        let spec = AdfSpec::fixed(0);
        let family = window_family_stats(&y, &[1, 60], 80, &spec);
        assert!(family[0].is_ok());
        assert!(
            matches!(family[1], Err(Error::SingularDesign { r1: 60, r2: 80, .. })),
            "{:?}",
            family[1]
        );
    }

    #[test]
    fn shift_and_scale_invariance() {
        let y = random_walk(150, 21);
        let spec = AdfSpec::fixed(1);
        let base = adf_stat(&y, &spec).unwrap().stat;
        let shifted: Vec<f64> = y.iter().map(|v| v + 1.0e4).collect();
        let scaled: Vec<f64> = y.iter().map(|v| v * 3.7e-3).collect();
        assert!((adf_stat(&shifted, &spec).unwrap().stat - base).abs() < 1e-9);
        assert!((adf_stat(&scaled, &spec).unwrap().stat - base).abs() < 1e-9);
    }

    #[test]
    fn bic_selects_a_plausible_order_and_refits() {
        // AR(2) in differences: Δy has clear serial structure, so BIC
        // should not pick order 0.
        let mut r = rng(77);
        let n = 400;
        let mut d = vec![0.0_f64; n];
        for i in 2..n {
            let e: f64 = StandardNormal.sample(&mut r);
            d[i] = 0.55 * d[i - 1] - 0.3 * d[i - 2] + e;
        }
        let mut y = vec![0.0; n];
        for i in 1..n {
            y[i] = y[i - 1] + d[i];
        }
        let got = adf_stat(&y, &AdfSpec::bic(6)).unwrap();
        assert!(got.lags_used >= 1, "chose {}", got.lags_used);
        let refit = adf_stat(&y, &AdfSpec::fixed(got.lags_used)).unwrap();
        assert!((got.stat - refit.stat).abs() < 1e-12);
    }

    #[test]
    fn schwert_bound() {
        assert_eq!(schwert_max_lags(100), 12);
        assert_eq!(schwert_max_lags(465), 17);
    }
}
