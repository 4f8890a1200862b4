//! Fit the logit attribution model: which covariates move the
//! probability of being inside a bubble episode?
//!
//! Run with: cargo run --example logit_attribution

use exuberance::logit::Transform;
use exuberance::{fit_logit, lr_test, marginal_effects, CovariatePanel, MarginalMode};
use rand::Rng;
use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

fn main() {
    // synthetic monthly panel: two covariates actually drive the episode
    // probability, a third is noise
    let n = 465;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let draw = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<f64> {
        (0..n).map(|_| StandardNormal.sample(rng)).collect()
    };
    let gpr = draw(&mut rng);
    let gepu = draw(&mut rng);
    let gpri = draw(&mut rng);
    let indicator: Vec<u8> = (0..n)
        .map(|i| {
            let z = -1.8 - 0.9 * gpr[i] + 0.6 * gepu[i];
            let p = 1.0 / (1.0 + (-z).exp());
            u8::from(rng.random::<f64>() < p)
        })
        .collect();

    let mut panel = CovariatePanel::new(n);
    panel.push("GPR", &gpr, Transform::Level).unwrap();
    panel.push("GEPU", &gepu, Transform::Level).unwrap();
    panel.push("GPRI", &gpri, Transform::Level).unwrap();

    let fit = fit_logit(&indicator, &panel).unwrap();
    println!(
        "converged in {} iterations, n = {}, lnL = {:.4}",
        fit.iterations, fit.n, fit.ln_l
    );
    println!("{:<10}{:>10}{:>10}", "variable", "coef", "stderr");
    for (i, name) in fit.names.iter().enumerate() {
        println!("{:<10}{:>10.4}{:>10.4}", name, fit.beta[i], fit.stderr[i]);
    }

    let (stat, p) = lr_test(&fit).unwrap();
    println!(
        "\nLR statistic {stat:.4} on {} df, p = {p:.4}",
        fit.beta.len() - 1
    );
    println!("McFadden R2 {:.4}", fit.mcfadden_r2);

    // both marginal-effect conventions; the derivative is evaluated either
    // at the covariate means or averaged over observations
    let mem = marginal_effects(&fit, &panel, MarginalMode::AtMeans).unwrap();
    let ame = marginal_effects(&fit, &panel, MarginalMode::Averaged).unwrap();
    println!("\n{:<10}{:>16}{:>16}", "variable", "at means", "averaged");
    for (i, name) in panel.names().iter().enumerate() {
        println!("{:<10}{:>16.4}{:>16.4}", name, mem[i], ame[i]);
    }
}
