//! Independent oracles shared by the integration suites. Everything here
//! recomputes results from first principles (explicit design matrices,
//! quadrature, series expansions) with no code shared with the library's
//! computation paths.

#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_walk(n: usize, seed: u64) -> Vec<f64> {
    let mut r = rng(seed);
    let mut level = 0.0;
    (0..n)
        .map(|_| {
            let e: f64 = StandardNormal.sample(&mut r);
            level += e;
            level
        })
        .collect()
}

/// Textbook ADF regression on `y[a..=b]` (0-based inclusive): build the
/// design matrix for Δy on [1, y_{t−1}, lagged Δy], solve the normal
/// equations by Gauss-Jordan with partial pivoting, return
/// `(delta_hat, stderr_delta, rss)`.
pub fn naive_adf(y: &[f64], a: usize, b: usize, lags: usize) -> (f64, f64, f64) {
    let p = lags + 2;
    let rows: Vec<usize> = (a + lags + 1..=b).collect();
    let n = rows.len();
    assert!(n > p, "oracle needs positive dof");
    let mut x = vec![vec![0.0; p]; n];
    let mut z = vec![0.0; n];
    for (r, &i) in rows.iter().enumerate() {
        x[r][0] = 1.0;
        x[r][1] = y[i - 1];
        for j in 1..=lags {
            x[r][1 + j] = y[i - j] - y[i - j - 1];
        }
        z[r] = y[i] - y[i - 1];
    }
    let mut aug = vec![vec![0.0; p + 1]; p];
    for i in 0..p {
        for j in 0..p {
            aug[i][j] = x.iter().map(|row| row[i] * row[j]).sum();
        }
        aug[i][p] = x.iter().zip(&z).map(|(row, &v)| row[i] * v).sum();
    }
    let mut inv = vec![vec![0.0; p]; p];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for col in 0..p {
        let piv = (col..p)
            .max_by(|&i, &j| aug[i][col].abs().partial_cmp(&aug[j][col].abs()).unwrap())
            .unwrap();
        aug.swap(col, piv);
        inv.swap(col, piv);
        let d = aug[col][col];
        for v in aug[col].iter_mut() {
            *v /= d;
        }
        for v in inv[col].iter_mut() {
            *v /= d;
        }
        for i in 0..p {
            if i != col {
                let f = aug[i][col];
                for j in 0..=p {
                    aug[i][j] -= f * aug[col][j];
                }
                for j in 0..p {
                    inv[i][j] -= f * inv[col][j];
                }
            }
        }
    }
    let beta: Vec<f64> = (0..p).map(|i| aug[i][p]).collect();
    let rss: f64 = x
        .iter()
        .zip(&z)
        .map(|(row, &v)| {
            let fit: f64 = row.iter().zip(&beta).map(|(xi, bi)| xi * bi).sum();
            (v - fit) * (v - fit)
        })
        .sum();
    let sigma2 = rss / (n - p) as f64;
    (beta[1], (sigma2 * inv[1][1]).sqrt(), rss)
}

/// The t-ratio from [`naive_adf`], applying the same degeneracy
/// convention the library documents (perfect fit with zero slope ⇒ 0).
pub fn naive_adf_stat(y: &[f64], a: usize, b: usize, lags: usize) -> f64 {
    let (delta, se, rss) = naive_adf(y, a, b, lags);
    if rss.abs() < 1e-12 && delta.abs() < 1e-9 {
        return 0.0;
    }
    delta / se
}

/// Brute-force BSADF sequence: for each end point, the sup of naive
/// per-window regressions over all admissible starts.
pub fn brute_force_bsadf(y: &[f64], w0: usize, lags: usize) -> Vec<(usize, f64)> {
    let t = y.len();
    let mut out = Vec::new();
    for r2 in w0..=t {
        let mut best = f64::NEG_INFINITY;
        for r1 in 1..=(r2 - w0 + 1) {
            best = best.max(naive_adf_stat(y, r1 - 1, r2 - 1, lags));
        }
        out.push((r2, best));
    }
    out
}

// ---- normal distribution ----

/// erf by its Maclaurin series; plenty for |x| ≤ 4.
fn erf(x: f64) -> f64 {
    let mut term = x;
    let mut sum = x;
    for n in 1..200 {
        let nf = n as f64;
        term *= -x * x / nf;
        let add = term / (2.0 * nf + 1.0);
        sum += add;
        if add.abs() < 1e-17 {
            break;
        }
    }
    sum * 2.0 / std::f64::consts::PI.sqrt()
}

pub fn normal_cdf(z: f64) -> f64 {
    0.5 * (1.0 + erf(z / std::f64::consts::SQRT_2))
}

/// Inverse normal CDF by bisection on [−10, 10].
pub fn normal_quantile(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0);
    let (mut lo, mut hi) = (-10.0, 10.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if normal_cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

// ---- chi-square tail by quadrature ----

fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut acc = f(a) + f(b);
    for i in 1..panels {
        let x = a + i as f64 * h;
        acc += f(x) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

/// Upper chi-square tail for df in {1,2,3} by integrating the density.
/// df 1 and 3 use the substitution t = u², which removes the fractional
/// power at the origin and leaves a smooth integrand.
pub fn chi_square_sf_quadrature(x: f64, df: usize) -> f64 {
    assert!(x >= 0.0);
    if x == 0.0 {
        return 1.0;
    }
    let sqrt_2pi = (2.0 * std::f64::consts::PI).sqrt();
    let lower = match df {
        1 => simpson(
            |u| 2.0 * (-u * u / 2.0).exp() / sqrt_2pi,
            0.0,
            x.sqrt(),
            40_000,
        ),
        2 => simpson(|t| 0.5 * (-t / 2.0).exp(), 0.0, x, 40_000),
        3 => simpson(
            |u| 2.0 * u * u * (-u * u / 2.0).exp() / sqrt_2pi,
            0.0,
            x.sqrt(),
            40_000,
        ),
        _ => panic!("oracle covers df 1..3"),
    };
    1.0 - lower
}
