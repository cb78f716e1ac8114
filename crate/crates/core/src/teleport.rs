//! Optimal teleportation fidelity from the Pauli correlation matrix, plus a
//! sampling estimate of the fully entangled fraction used to check it.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{pauli_x, pauli_y, pauli_z, DenseMatrix};
use crate::qstate::DensityOp;

/// Largest imaginary residue tolerated in `Tr(ρ σn⊗σm)`.
pub const IMAG_RESIDUE_TOL: f64 = 1e-10;
/// Classical limit of teleportation fidelity.
pub const CLASSICAL_FIDELITY: f64 = 2.0 / 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    /// `t[n][m] = Tr(ρ σn⊗σm)`, indices over `x, y, z`.
    pub t: [[f64; 3]; 3],
}

impl CorrelationMatrix {
    pub fn zero() -> Self {
        Self { t: [[0.0; 3]; 3] }
    }

    pub fn diag(x: f64, y: f64, z: f64) -> Self {
        Self {
            t: [[x, 0.0, 0.0], [0.0, y, 0.0], [0.0, 0.0, z]],
        }
    }

    fn as_matrix(&self) -> DenseMatrix {
        let flat: Vec<f64> = self.t.iter().flatten().copied().collect();
        DenseMatrix::from_real(3, 3, &flat).expect("3x3")
    }

    /// Eigenvalues of `TᵀT`, descending and clamped at zero.
    pub fn gram_eigenvalues(&self) -> [f64; 3] {
        let t = self.as_matrix();
        let gram = t.transpose().matmul(&t).expect("3x3");
        let eig = gram
            .hermitian_eig()
            .expect("real symmetric 3x3 always converges");
        let u = &eig.eigenvalues;
        [u[0].max(0.0), u[1].max(0.0), u[2].max(0.0)]
    }
}

pub fn correlation_matrix(rho: &DensityOp) -> Result<CorrelationMatrix> {
    if rho.num_qubits() != 2 {
        return Err(Error::Shape(format!(
            "correlation matrix needs 2 qubits, got {}",
            rho.num_qubits()
        )));
    }
    let paulis = [pauli_x(), pauli_y(), pauli_z()];
    let mut t = [[0.0; 3]; 3];
    for (n, sn) in paulis.iter().enumerate() {
        for (m, sm) in paulis.iter().enumerate() {
            let v = rho.matrix().matmul(&sn.kron(sm))?.trace()?;
            if v.im.abs() > IMAG_RESIDUE_TOL {
                return Err(Error::Contract(format!(
                    "Tr(ρ σ{n}σ{m}) has imaginary part {:e}",
                    v.im
                )));
            }
            t[n][m] = v.re;
        }
    }
    Ok(CorrelationMatrix { t })
}

/// Sum of the singular values of `T`.
pub fn n_value(t: &CorrelationMatrix) -> f64 {
    t.gram_eigenvalues().iter().map(|u| u.sqrt()).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FidelityRecord {
    pub n_value: f64,
    pub fidelity: f64,
    /// `N > 1`, equivalently fidelity above 2/3.
    pub useful: bool,
    pub u: [f64; 3],
}

impl FidelityRecord {
    pub fn from_correlations(t: &CorrelationMatrix) -> Self {
        let u = t.gram_eigenvalues();
        let n: f64 = u.iter().map(|x| x.sqrt()).sum();
        Self {
            n_value: n,
            fidelity: (1.0 + n / 3.0) / 2.0,
            useful: n > 1.0,
            u,
        }
    }
}

pub fn teleportation_fidelity(rho: &DensityOp) -> Result<FidelityRecord> {
    Ok(FidelityRecord::from_correlations(&correlation_matrix(rho)?))
}

pub const MIN_FEF_BUDGET: usize = 1000;
const REFINE_ITERATIONS: usize = 200;

/// `U = Rz(α) Ry(β) Rz(γ)`.
fn zyz(angles: [f64; 3]) -> [[Complex64; 2]; 2] {
    let [a, b, g] = angles;
    let (sb, cb) = (b / 2.0).sin_cos();
    let e = |phi: f64| Complex64::from_polar(1.0, phi);
    [
        [e(-(a + g) / 2.0) * cb, -e((g - a) / 2.0) * sb],
        [e((a - g) / 2.0) * sb, e((a + g) / 2.0) * cb],
    ]
}

/// `⟨φ|ρ|φ⟩` for `|φ⟩ = (I⊗U)|Φ+⟩`.
fn overlap(rho: &DenseMatrix, angles: [f64; 3]) -> f64 {
    let u = zyz(angles);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut phi = [Complex64::new(0.0, 0.0); 4];
    for i in 0..2 {
        for j in 0..2 {
            phi[2 * i + j] = u[j][i] * h;
        }
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 0..4 {
        for c in 0..4 {
            acc += phi[r].conj() * rho.get(r, c) * phi[c];
        }
    }
    acc.re
}

/// Estimates `F = max ⟨φ|ρ|φ⟩` over maximally entangled `|φ⟩`. Draws
/// `budget` Haar-random `U` (Euler angles with `sin β` density), then
/// polishes the best by coordinate ascent with step halving.
pub fn fully_entangled_fraction(rho: &DensityOp, budget: usize, seed: u64) -> Result<f64> {
    if rho.num_qubits() != 2 {
        return Err(Error::Shape(format!(
            "fully entangled fraction needs 2 qubits, got {}",
            rho.num_qubits()
        )));
    }
    if budget < MIN_FEF_BUDGET {
        return Err(Error::Contract(format!(
            "sample budget {budget} is below the minimum of {MIN_FEF_BUDGET}"
        )));
    }
    let m = rho.matrix();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = [0.0; 3];
    let mut best_val = f64::NEG_INFINITY;
    for _ in 0..budget {
        let angles = [
            rng.random_range(0.0..2.0 * PI),
            (1.0 - 2.0 * rng.random::<f64>()).acos(),
            rng.random_range(0.0..2.0 * PI),
        ];
        let v = overlap(m, angles);
        if v > best_val {
            best_val = v;
            best = angles;
        }
    }

    let mut step = PI / 8.0;
    for _ in 0..REFINE_ITERATIONS {
        let mut improved = false;
        for k in 0..3 {
            for dir in [1.0, -1.0] {
                let mut trial = best;
                trial[k] += dir * step;
                let v = overlap(m, trial);
                if v > best_val {
                    best_val = v;
                    best = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    Ok(best_val)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{make_w, PureState, QubitLabel};

    fn bell() -> DensityOp {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = Complex64::new(0.0, 0.0);
        PureState::new(
            vec!["A".into(), "B".into()],
            vec![Complex64::new(h, 0.0), z, z, Complex64::new(h, 0.0)],
        )
        .unwrap()
        .to_density()
    }

    fn mixed() -> DensityOp {
        DensityOp::new(vec!["A".into(), "B".into()], DenseMatrix::diag(&[0.25; 4])).unwrap()
    }

    fn w_pair() -> DensityOp {
        make_w()
            .reduced_density(&[QubitLabel::a(), QubitLabel::b()])
            .unwrap()
    }

    fn assert_t(t: &CorrelationMatrix, want: [[f64; 3]; 3]) {
        for (got, exp) in t.t.iter().flatten().zip(want.iter().flatten()) {
            assert!((got - exp).abs() < 1e-14, "{t:?}");
        }
    }

    #[test]
    fn correlation_examples() {
        assert_t(
            &correlation_matrix(&bell()).unwrap(),
            CorrelationMatrix::diag(1.0, -1.0, 1.0).t,
        );
        assert_t(&correlation_matrix(&mixed()).unwrap(), [[0.0; 3]; 3]);
        let third = 1.0 / 3.0;
        assert_t(
            &correlation_matrix(&w_pair()).unwrap(),
            CorrelationMatrix::diag(2.0 * third, 2.0 * third, -third).t,
        );
    }

    #[test]
    fn n_value_examples() {
        assert!((n_value(&CorrelationMatrix::diag(1.0, -1.0, 1.0)) - 3.0).abs() < 1e-15);
        assert_eq!(n_value(&CorrelationMatrix::zero()), 0.0);
        let t = CorrelationMatrix::diag(2.0 / 3.0, 2.0 / 3.0, -1.0 / 3.0);
        assert!((n_value(&t) - 5.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn fidelity_examples() {
        let f = teleportation_fidelity(&bell()).unwrap();
        assert!((f.fidelity - 1.0).abs() < 1e-15 && f.useful);
        let f = teleportation_fidelity(&mixed()).unwrap();
        assert_eq!(f.fidelity, 0.5);
        assert!(!f.useful);
        let f = teleportation_fidelity(&w_pair()).unwrap();
        assert!((f.fidelity - 7.0 / 9.0).abs() < 1e-12 && f.useful);

        // Werner p = 1/2: N = 3p
        let werner = bell()
            .matrix()
            .scale(Complex64::new(0.5, 0.0))
            .add(&DenseMatrix::diag(&[0.125; 4]))
            .unwrap();
        let werner = DensityOp::new(vec!["A".into(), "B".into()], werner).unwrap();
        let f = teleportation_fidelity(&werner).unwrap();
        assert!((f.n_value - 1.5).abs() < 1e-14);
        assert!((f.fidelity - 0.75).abs() < 1e-14 && f.useful);
    }

    #[test]
    fn fidelity_needs_two_qubits() {
        assert!(matches!(
            teleportation_fidelity(&make_w().to_density()),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn fef_examples() {
        assert!((fully_entangled_fraction(&bell(), 1000, 1).unwrap() - 1.0).abs() < 1e-6);
        assert!((fully_entangled_fraction(&mixed(), 1000, 1).unwrap() - 0.25).abs() < 1e-12);
        let f = fully_entangled_fraction(&w_pair(), 2000, 42).unwrap();
        assert!((f - 2.0 / 3.0).abs() < 1e-3, "{f}");
    }

    #[test]
    fn fef_is_deterministic_and_checks_budget() {
        let a = fully_entangled_fraction(&w_pair(), 1000, 9).unwrap();
        let b = fully_entangled_fraction(&w_pair(), 1000, 9).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
        assert!(matches!(
            fully_entangled_fraction(&w_pair(), 10, 9),
            Err(Error::Contract(_))
        ));
    }
}
