//! Closed-form expressions in `(μ, ν)`. The `closed_form_*` functions
//! evaluate the published formulas as written, including their slips; the
//! `exact_*` ones follow from the reduced W pair itself.
//!
//! All assume `μ² + ν² = 1` unless noted; inputs are not checked.

/// Published teleportation fidelity of the W pair:
/// `1/2 + (μ⁴ + ν²)/18 + 2(μ³ + μν²)/9`.
pub fn closed_form_fidelity_w(mu: f64, nu: f64) -> f64 {
    0.5 + (mu.powi(4) + nu * nu) / 18.0 + 2.0 * (mu.powi(3) + mu * nu * nu) / 9.0
}

/// Published W-pair concurrence `√f₁ − √f₂ − √f₃ − √f₄`, clamped at zero.
pub fn closed_form_concurrence_w(mu: f64, nu: f64) -> f64 {
    let s = mu * mu + nu * nu;
    let nu4 = nu.powi(4);
    let root = (s * (nu4 + s)).sqrt();
    let f1 = (nu4 + 2.0 * s + 2.0 * root) * s * mu * mu / 9.0;
    let f2 = ((nu4 + 2.0 * s - 2.0 * root) * s * mu * mu / 9.0).max(0.0);
    let f34 = mu * mu * nu * nu * s / 9.0;
    (f1.sqrt() - f2.sqrt() - 2.0 * f34.sqrt()).max(0.0)
}

/// Published GHZ tangle `μ² + ν²`. Meaningful without normalization.
pub fn closed_form_tangle_ghz(mu: f64, nu: f64) -> f64 {
    mu * mu + nu * nu
}

/// Fidelity of the W pair with Bob and Cliff dressed and one of them traced
/// out: `T = diag(2μ/3, 2μ/3, −1/3)`, so `f = 1/2 + 1/18 + 2μ/9`.
pub fn exact_fidelity_w(mu: f64, _nu: f64) -> f64 {
    0.5 + 1.0 / 18.0 + 2.0 * mu / 9.0
}

/// Concurrence of the same pair, an X state: `2μ(1 − ν)/3`.
pub fn exact_concurrence_w(mu: f64, nu: f64) -> f64 {
    (2.0 * mu * (1.0 - nu) / 3.0).max(0.0)
}
