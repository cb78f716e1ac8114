//! Wootters concurrence and the CKW tangle.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{pauli_y, DenseMatrix, Tolerances};
use crate::qstate::{DensityOp, QubitLabel};

/// Off-X entries at or below this magnitude count as zero.
pub const X_PATTERN_TOL: f64 = 1e-14;

fn require_qubits(rho: &DensityOp, n: usize) -> Result<()> {
    if rho.num_qubits() != n {
        return Err(Error::Shape(format!(
            "expected a {n}-qubit operator, got {} qubits",
            rho.num_qubits()
        )));
    }
    Ok(())
}

fn sigma_yy() -> DenseMatrix {
    pauli_y().kron(&pauli_y())
}

fn flip(m: &DenseMatrix) -> DenseMatrix {
    let yy = sigma_yy();
    yy.matmul(&m.conj())
        .and_then(|t| t.matmul(&yy))
        .expect("4x4 operands")
}

/// `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`, same basis as `ρ`.
pub fn spin_flip(rho: &DensityOp) -> Result<DenseMatrix> {
    require_qubits(rho, 2)?;
    Ok(flip(rho.matrix()))
}

/// Square roots of the eigenvalues of `ρρ̃`, descending.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WoottersSpectrum {
    pub sqrt_eigs: [f64; 4],
}

impl WoottersSpectrum {
    pub fn concurrence(&self) -> f64 {
        let [a, b, c, d] = self.sqrt_eigs;
        (a - b - c - d).clamp(0.0, 1.0)
    }
}

pub fn wootters_spectrum(rho: &DensityOp) -> Result<WoottersSpectrum> {
    wootters_spectrum_with(rho, &Tolerances::default())
}

/// The eigenvalues of `ρρ̃` are those of the Hermitian `√ρ ρ̃ √ρ = X X†` with
/// `X = √ρ √ρ̃`, so their square roots are the singular values of `X`.
/// Taking singular values directly avoids squaring and keeps near-zero
/// roots accurate to machine precision.
pub fn wootters_spectrum_with(rho: &DensityOp, tol: &Tolerances) -> Result<WoottersSpectrum> {
    require_qubits(rho, 2)?;
    let sqrt_rho = rho.matrix().psd_sqrt_with(tol)?;
    let sqrt_flipped = flip(&sqrt_rho);
    let x = sqrt_rho.matmul(&sqrt_flipped)?;
    let s = x.singular_values_with(tol)?;
    Ok(WoottersSpectrum {
        sqrt_eigs: [s[0], s[1], s[2], s[3]],
    })
}

pub fn concurrence(rho: &DensityOp) -> Result<f64> {
    Ok(wootters_spectrum(rho)?.concurrence())
}

pub fn concurrence_with(rho: &DensityOp, tol: &Tolerances) -> Result<f64> {
    Ok(wootters_spectrum_with(rho, tol)?.concurrence())
}

/// Closed form for operators whose only off-diagonal entries are `ρ₀₃` and
/// `ρ₁₂`. Returns `None` when the sparsity pattern does not hold.
pub fn x_state_concurrence(rho: &DensityOp) -> Option<f64> {
    if rho.num_qubits() != 2 {
        return None;
    }
    let m = rho.matrix();
    let on_x = |i: usize, j: usize| i == j || i + j == 3;
    for i in 0..4 {
        for j in 0..4 {
            if !on_x(i, j) && m.get(i, j).norm() > X_PATTERN_TOL {
                return None;
            }
        }
    }
    let d = |i: usize| m.get(i, i).re.max(0.0);
    let outer = m.get(0, 3).norm() - (d(1) * d(2)).sqrt();
    let inner = m.get(1, 2).norm() - (d(0) * d(3)).sqrt();
    Some(2.0 * outer.max(inner).max(0.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TangleBreakdown {
    /// `4 det ρ_pivot`; equals `C²_{pivot|rest}` for pure states.
    pub one_tangle: f64,
    /// Squared concurrence of the pivot with the first remaining party.
    pub c2_ab: f64,
    /// Squared concurrence of the pivot with the second remaining party.
    pub c2_ac: f64,
    /// `one_tangle − c2_ab − c2_ac`, not clamped.
    pub residual: f64,
}

/// Surrogate one-tangle `4 det Tr_rest(ρ)`. For mixed tripartite inputs this
/// is the pure-state formula applied verbatim.
pub fn one_tangle(rho3: &DensityOp, pivot: &QubitLabel) -> Result<f64> {
    require_qubits(rho3, 3)?;
    let single = rho3.partial_trace(std::slice::from_ref(pivot))?;
    let m = single.matrix();
    let det: Complex64 = m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0);
    Ok(4.0 * det.re)
}

pub fn residual_tangle(rho3: &DensityOp, pivot: &QubitLabel) -> Result<TangleBreakdown> {
    require_qubits(rho3, 3)?;
    rho3.index_of(pivot)?;
    let others: Vec<&QubitLabel> = rho3.labels().iter().filter(|l| *l != pivot).collect();
    let pair_c2 = |other: &QubitLabel| -> Result<f64> {
        let pair = rho3.partial_trace(&[pivot.clone(), other.clone()])?;
        Ok(concurrence(&pair)?.powi(2))
    };
    let one = one_tangle(rho3, pivot)?;
    let c2_ab = pair_c2(others[0])?;
    let c2_ac = pair_c2(others[1])?;
    Ok(TangleBreakdown {
        one_tangle: one,
        c2_ab,
        c2_ac,
        residual: one - c2_ab - c2_ac,
    })
}
