//! Logit regression of the bubble indicator on covariates: maximum
//! likelihood by damped Newton steps on the analytic gradient and
//! observed information, with marginal effects and the LR test.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::special::chi_square_sf;

const MAX_ITER: usize = 100;
const MAX_HALVINGS: usize = 20;
const GRAD_TOL: f64 = 1e-8;
const GRAD_ACCEPT: f64 = 1e-6;
const REL_LL_TOL: f64 = 1e-12;
const BETA_DIVERGENCE: f64 = 30.0;
const COND_LIMIT: f64 = 1e12;

/// Per-column transform applied when a covariate enters the panel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    Level,
    Log,
}

/// Named covariate columns aligned to the indicator range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CovariatePanel {
    n: usize,
    names: Vec<String>,
    columns: Vec<Vec<f64>>,
}

impl CovariatePanel {
    /// An empty panel for `n` observations (an intercept-only model).
    pub fn new(n: usize) -> Self {
        Self {
            n,
            names: Vec::new(),
            columns: Vec::new(),
        }
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        values: &[f64],
        transform: Transform,
    ) -> Result<()> {
        let name = name.into();
        if values.len() != self.n {
            return Err(Error::PanelMisaligned {
                name,
                len: values.len(),
                want: self.n,
            });
        }
        let column = match transform {
            Transform::Level => values.to_vec(),
            Transform::Log => {
                if let Some(i) = values.iter().position(|&v| v <= 0.0) {
                    return Err(Error::BadArgument(format!(
                        "covariate '{name}' has a non-positive value at row {i}; \
                         the log transform requires strictly positive inputs"
                    )));
                }
                values.iter().map(|v| v.ln()).collect()
            }
        };
        if column.iter().any(|v| !v.is_finite()) {
            return Err(Error::PanelMisaligned {
                name,
                len: values.len(),
                want: self.n,
            });
        }
        self.names.push(name);
        self.columns.push(column);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn k(&self) -> usize {
        self.columns.len()
    }

    /// Row `t` of the design matrix, intercept first.
    fn design_row(&self, t: usize, out: &mut [f64]) {
        out[0] = 1.0;
        for (j, col) in self.columns.iter().enumerate() {
            out[j + 1] = col[t];
        }
    }
}

/// Maximum-likelihood fit of the binary model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogitFit {
    /// Coefficient names, `constant` first.
    pub names: Vec<String>,
    pub beta: Vec<f64>,
    pub stderr: Vec<f64>,
    /// Inverse observed information at the optimum, row-major `p × p`.
    pub covariance: Vec<f64>,
    pub ln_l: f64,
    pub ln_l_null: f64,
    pub lr_stat: f64,
    pub lr_pvalue: f64,
    pub mcfadden_r2: f64,
    pub n: usize,
    /// Average marginal effect per non-intercept regressor.
    pub ame: Vec<f64>,
    /// Marginal effect at the covariate means.
    pub mem: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
}

/// Evaluation point for marginal effects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MarginalMode {
    AtMeans,
    Averaged,
}

#[inline]
fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// ln Λ(z) = −softplus(−z), safe for large |z|.
#[inline]
fn log_sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        -(-z).exp().ln_1p()
    } else {
        z - z.exp().ln_1p()
    }
}

fn log_likelihood(indicator: &[u8], panel: &CovariatePanel, beta: &[f64]) -> f64 {
    let p = beta.len();
    let mut row = vec![0.0; p];
    let mut ll = 0.0;
    for (t, &r) in indicator.iter().enumerate() {
        panel.design_row(t, &mut row);
        let z: f64 = row.iter().zip(beta).map(|(x, b)| x * b).sum();
        ll += if r == 1 {
            log_sigmoid(z)
        } else {
            log_sigmoid(-z)
        };
    }
    ll
}

/// Gradient `X'(r − Λ)` and observed information `X'WX`.
fn grad_and_information(
    indicator: &[u8],
    panel: &CovariatePanel,
    beta: &[f64],
) -> (Vec<f64>, Vec<f64>) {
    let p = beta.len();
    let mut row = vec![0.0; p];
    let mut grad = vec![0.0; p];
    let mut info = vec![0.0; p * p];
    for (t, &r) in indicator.iter().enumerate() {
        panel.design_row(t, &mut row);
        let z: f64 = row.iter().zip(beta).map(|(x, b)| x * b).sum();
        let mu = sigmoid(z);
        let resid = r as f64 - mu;
        let w = mu * (1.0 - mu);
        for i in 0..p {
            grad[i] += row[i] * resid;
            for j in 0..=i {
                info[i * p + j] += w * row[i] * row[j];
            }
        }
    }
    for i in 0..p {
        for j in i + 1..p {
            info[i * p + j] = info[j * p + i];
        }
    }
    (grad, info)
}

/// Equilibrated Cholesky of the information matrix; errors on exact or
/// near collinearity.
fn factor_information(info: &[f64], p: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut scale = vec![0.0; p];
    for i in 0..p {
        let d = info[i * p + i];
        if d <= 0.0 || !d.is_finite() {
            return Err(Error::CollinearCovariates(
                "a column carries no information",
            ));
        }
        scale[i] = d.sqrt();
    }
    let mut a = vec![0.0; p * p];
    for i in 0..p {
        for j in 0..p {
            a[i * p + j] = info[i * p + j] / (scale[i] * scale[j]);
        }
    }
    linalg::cholesky_in_place(&mut a, p)
        .map_err(|_| Error::CollinearCovariates("information matrix is not positive definite"))?;
    let mut lo = f64::INFINITY;
    let mut hi = 0.0_f64;
    for i in 0..p {
        lo = lo.min(a[i * p + i]);
        hi = hi.max(a[i * p + i]);
    }
    if (hi / lo).powi(2) > COND_LIMIT {
        return Err(Error::CollinearCovariates(
            "condition estimate exceeds 1e12",
        ));
    }
    Ok((a, scale))
}

fn solve_information(l: &[f64], scale: &[f64], p: usize, rhs: &[f64]) -> Vec<f64> {
    let mut b: Vec<f64> = (0..p).map(|i| rhs[i] / scale[i]).collect();
    linalg::cholesky_solve_in_place(l, p, &mut b);
    (0..p).map(|i| b[i] / scale[i]).collect()
}

pub fn fit_logit(indicator: &[u8], panel: &CovariatePanel) -> Result<LogitFit> {
    fit_logit_traced(indicator, panel, None)
}

/// The fit loop; `trace` collects the accepted log-likelihood path so
/// tests can assert strict ascent.
pub(crate) fn fit_logit_traced(
    indicator: &[u8],
    panel: &CovariatePanel,
    mut trace: Option<&mut Vec<f64>>,
) -> Result<LogitFit> {
    let n = indicator.len();
    if panel.n() != n {
        return Err(Error::PanelMisaligned {
            name: "panel".to_string(),
            len: panel.n(),
            want: n,
        });
    }
    let ones = indicator.iter().filter(|&&r| r == 1).count();
    if ones == 0 {
        return Err(Error::AllSameOutcome(0));
    }
    if ones == n {
        return Err(Error::AllSameOutcome(1));
    }
    let p = panel.k() + 1;
    if n < 10 * p {
        return Err(Error::TooFewObservations {
            n,
            params: p,
            required: 10 * p,
        });
    }

    let mut beta = vec![0.0; p];
    let mut ln_l = log_likelihood(indicator, panel, &beta);
    if let Some(tr) = trace.as_deref_mut() {
        tr.push(ln_l);
    }
    let mut iterations = 0;
    let mut converged = false;
    let mut last_improvement = f64::INFINITY;

    for iter in 1..=MAX_ITER {
        iterations = iter;
        let (grad, info) = grad_and_information(indicator, panel, &beta);
        let grad_norm = grad.iter().fold(0.0_f64, |m, g| m.max(g.abs()));
        if grad_norm < GRAD_TOL
            || (last_improvement < REL_LL_TOL * (1.0 + ln_l.abs()) && grad_norm < GRAD_ACCEPT)
        {
            iterations = iter - 1;
            converged = true;
            break;
        }
        let (l, scale) = factor_information(&info, p)?;
        let direction = solve_information(&l, &scale, p, &grad);

        let mut accepted = false;
        let mut step = 1.0;
        for _ in 0..=MAX_HALVINGS {
            let candidate: Vec<f64> = beta
                .iter()
                .zip(&direction)
                .map(|(b, d)| b + step * d)
                .collect();
            let cand_ll = log_likelihood(indicator, panel, &candidate);
            if cand_ll > ln_l {
                last_improvement = cand_ll - ln_l;
                beta = candidate;
                ln_l = cand_ll;
                if let Some(tr) = trace.as_deref_mut() {
                    tr.push(ln_l);
                }
                accepted = true;
                if beta.iter().any(|b| b.abs() > BETA_DIVERGENCE) {
                    return Err(Error::PerfectSeparation { iterations: iter });
                }
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            // concavity means a tiny step must improve unless we are at
            // the optimum within rounding
            converged = grad_norm < GRAD_ACCEPT;
            break;
        }
    }

    // Near the optimum the remaining likelihood gain sits below f64
    // resolution, so the ascent gate cannot certify it; a few undamped
    // Newton steps on the gradient finish the root find within the
    // quadratic basin.
    let (mut grad, mut info) = grad_and_information(indicator, panel, &beta);
    let mut grad_norm = grad.iter().fold(0.0_f64, |m, g| m.max(g.abs()));
    let mut polish_left = 4;
    while (GRAD_TOL..1e-3).contains(&grad_norm) && polish_left > 0 {
        let (l, scale) = factor_information(&info, p)?;
        let direction = solve_information(&l, &scale, p, &grad);
        for (b, d) in beta.iter_mut().zip(&direction) {
            *b += d;
        }
        (grad, info) = grad_and_information(indicator, panel, &beta);
        grad_norm = grad.iter().fold(0.0_f64, |m, g| m.max(g.abs()));
        polish_left -= 1;
    }
    if grad_norm < GRAD_ACCEPT {
        converged = true;
        ln_l = log_likelihood(indicator, panel, &beta);
    }
    if !converged {
        return Err(Error::NoConvergence { max_iter: MAX_ITER });
    }

    let (l, scale) = factor_information(&info, p)?;
    let inv_scaled = linalg::cholesky_inverse(&l, p);
    let mut covariance = vec![0.0; p * p];
    for i in 0..p {
        for j in 0..p {
            covariance[i * p + j] = inv_scaled[i * p + j] / (scale[i] * scale[j]);
        }
    }
    let stderr: Vec<f64> = (0..p).map(|i| covariance[i * p + i].sqrt()).collect();

    let n1 = ones as f64;
    let n0 = (n - ones) as f64;
    let nf = n as f64;
    let ln_l_null = n1 * (n1 / nf).ln() + n0 * (n0 / nf).ln();
    let lr_stat = (2.0 * (ln_l - ln_l_null)).max(0.0);
    let df = p - 1;
    let lr_pvalue = chi_square_sf(lr_stat, df);
    let mcfadden_r2 = 1.0 - ln_l / ln_l_null;

    let mut names = Vec::with_capacity(p);
    names.push("constant".to_string());
    names.extend(panel.names().iter().cloned());

    let mut fit = LogitFit {
        names,
        beta,
        stderr,
        covariance,
        ln_l,
        ln_l_null,
        lr_stat,
        lr_pvalue,
        mcfadden_r2,
        n,
        ame: Vec::new(),
        mem: Vec::new(),
        converged: true,
        iterations,
    };
    fit.ame = marginal_effects(&fit, panel, MarginalMode::Averaged)?;
    fit.mem = marginal_effects(&fit, panel, MarginalMode::AtMeans)?;
    Ok(fit)
}

/// Marginal effect `λ(x'β)·β_j` per non-intercept regressor, where
/// `λ = Λ(1−Λ)` is the logistic density: evaluated at the covariate
/// means, or averaged over observations.
pub fn marginal_effects(
    fit: &LogitFit,
    panel: &CovariatePanel,
    mode: MarginalMode,
) -> Result<Vec<f64>> {
    if !fit.converged {
        return Err(Error::NotConverged);
    }
    let p = fit.beta.len();
    let mut row = vec![0.0; p];
    let density_scale = match mode {
        MarginalMode::AtMeans => {
            let mut means = vec![0.0; p];
            for t in 0..panel.n() {
                panel.design_row(t, &mut row);
                for (m, x) in means.iter_mut().zip(&row) {
                    *m += x;
                }
            }
            for m in means.iter_mut() {
                *m /= panel.n() as f64;
            }
            let z: f64 = means.iter().zip(&fit.beta).map(|(x, b)| x * b).sum();
            let mu = sigmoid(z);
            mu * (1.0 - mu)
        }
        MarginalMode::Averaged => {
            let mut acc = 0.0;
            for t in 0..panel.n() {
                panel.design_row(t, &mut row);
                let z: f64 = row.iter().zip(&fit.beta).map(|(x, b)| x * b).sum();
                let mu = sigmoid(z);
                acc += mu * (1.0 - mu);
            }
            acc / panel.n() as f64
        }
    };
    Ok(fit.beta[1..].iter().map(|b| b * density_scale).collect())
}

/// The likelihood-ratio statistic against the intercept-only model and
/// its chi-square p-value with one degree of freedom per slope.
pub fn lr_test(fit: &LogitFit) -> Result<(f64, f64)> {
    if !fit.converged {
        return Err(Error::NotConverged);
    }
    Ok((fit.lr_stat, fit.lr_pvalue))
}
