//! Dense complex matrices and the small eigen-solvers the entanglement
//! measures rely on.
//!
//! Everything here works on matrices of at most a few dozen rows, so the
//! storage is a flat row-major `Vec<Complex64>` and the eigen-solvers are
//! cyclic Jacobi sweeps: two-sided for Hermitian eigenproblems, one-sided
//! (Hestenes) for singular values.

use std::fmt;
use std::ops::Index;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Numerical thresholds used by the kernel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Max `|a - a†|` entry accepted by [`DenseMatrix::hermitian_eig`].
    pub hermitian: f64,
    /// Jacobi stops once every off-diagonal entry is below this times `‖a‖∞`.
    pub eig_offdiag_rel: f64,
    pub max_sweeps: usize,
    /// Eigenvalues in `[-psd_floor, 0)` are clamped to zero, anything lower is an error.
    pub psd_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-10,
            eig_offdiag_rel: 1e-14,
            max_sweeps: 100,
            psd_floor: 1e-10,
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues in descending order.
#[derive(Clone, Debug)]
pub struct EigenResult {
    pub eigenvalues: Vec<f64>,
    /// Column `i` is the eigenvector belonging to `eigenvalues[i]`.
    pub eigenvectors: DenseMatrix,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Contract(format!(
                "non-finite entry at ({}, {})",
                pos / cols.max(1),
                pos % cols.max(1)
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            data.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m.data[i * n + i] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Column vector from amplitudes.
    pub fn column(values: &[Complex64]) -> Self {
        Self {
            rows: values.len(),
            cols: 1,
            data: values.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    pub(crate) fn set(&mut self, r: usize, c: usize, value: Complex64) {
        self.data[r * self.cols + c] = value;
    }

    pub(crate) fn add_at(&mut self, r: usize, c: usize, value: Complex64) {
        self.data[r * self.cols + c] += value;
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product with block `(i, j)` equal to `self[i][j] * other`.
    pub fn kron(&self, other: &DenseMatrix) -> DenseMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = vec![ZERO; rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.data[i * self.cols + j];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        data[(i * other.rows + k) * cols + j * other.cols + l] =
                            a * other.data[k * other.cols + l];
                    }
                }
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn dagger(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn conj(&self) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn transpose(&self) -> DenseMatrix {
        self.dagger().conj()
    }

    pub fn trace(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "trace of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    pub fn scale(&self, factor: Complex64) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &DenseMatrix,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<DenseMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry magnitude of `self - other`; `inf` when shapes differ.
    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        self.sub(other)
            .map(|d| d.max_abs())
            .unwrap_or(f64::INFINITY)
    }

    /// `max |a_ij - conj(a_ji)|`, or `inf` for non-square input.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// `(a + a†) / 2`.
    pub fn hermitian_part(&self) -> DenseMatrix {
        let n = self.rows;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = (self.get(i, j) + self.get(j, i).conj()) * 0.5;
            }
        }
        out
    }

    pub fn hermitian_eig(&self) -> Result<EigenResult> {
        self.hermitian_eig_with(&Tolerances::default())
    }

    /// Cyclic complex Jacobi. Each rotation first removes the phase of the
    /// pivot with a diagonal unitary, then applies a real plane rotation.
    pub fn hermitian_eig_with(&self, tol: &Tolerances) -> Result<EigenResult> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "eigenproblem needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let defect = self.hermitian_defect();
        if defect > tol.hermitian {
            return Err(Error::Contract(format!(
                "matrix is not Hermitian (|a - a†| = {defect:e})"
            )));
        }
        let n = self.rows;
        let mut a = self.hermitian_part();
        for i in 0..n {
            a.data[i * n + i].im = 0.0;
        }
        let mut v = DenseMatrix::identity(n);
        let threshold = tol.eig_offdiag_rel * a.max_abs();

        let mut converged = false;
        for _ in 0..=tol.max_sweeps {
            if max_offdiag(&a) <= threshold {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a.get(p, q);
                    if apq == ZERO {
                        continue;
                    }
                    let u = jacobi_rotation(a.get(p, p).re, a.get(q, q).re, apq);
                    rotate_columns(&mut a, p, q, &u);
                    rotate_rows(&mut a, p, q, &u);
                    a.set(p, q, ZERO);
                    a.set(q, p, ZERO);
                    a.data[p * n + p].im = 0.0;
                    a.data[q * n + q].im = 0.0;
                    rotate_columns(&mut v, p, q, &u);
                }
            }
        }
        if !converged {
            return Err(Error::Numeric(format!(
                "Jacobi did not converge in {} sweeps (n = {n})",
                tol.max_sweeps
            )));
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a.get(j, j).re.total_cmp(&a.get(i, i).re));
        let eigenvalues = order.iter().map(|&i| a.get(i, i).re).collect();
        let mut eigenvectors = DenseMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            for k in 0..n {
                eigenvectors.set(k, dst, v.get(k, src));
            }
        }
        Ok(EigenResult {
            eigenvalues,
            eigenvectors,
        })
    }

    pub fn psd_sqrt(&self) -> Result<DenseMatrix> {
        self.psd_sqrt_with(&Tolerances::default())
    }

    pub fn psd_sqrt_with(&self, tol: &Tolerances) -> Result<DenseMatrix> {
        let eig = self.hermitian_eig_with(tol)?;
        let roots = clamped_roots(&eig.eigenvalues, tol.psd_floor)?;
        Ok(eig.reconstruct(&roots))
    }

    /// Singular values in descending order, via one-sided Jacobi on the
    /// columns. Small singular values keep absolute accuracy near machine
    /// epsilon because `a†a` is never formed.
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        self.singular_values_with(&Tolerances::default())
    }

    pub fn singular_values_with(&self, tol: &Tolerances) -> Result<Vec<f64>> {
        let mut x = self.clone();
        let n = x.cols;
        let m = x.rows;
        let mut converged = false;
        for _ in 0..=tol.max_sweeps {
            let mut rotated = false;
            for p in 0..n {
                for q in (p + 1)..n {
                    let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, ZERO);
                    for k in 0..m {
                        let xp = x.get(k, p);
                        let xq = x.get(k, q);
                        alpha += xp.norm_sqr();
                        beta += xq.norm_sqr();
                        gamma += xp.conj() * xq;
                    }
                    if gamma == ZERO
                        || gamma.norm() <= m as f64 * f64::EPSILON * (alpha * beta).sqrt()
                    {
                        continue;
                    }
                    let u = jacobi_rotation(alpha, beta, gamma);
                    rotate_columns(&mut x, p, q, &u);
                    rotated = true;
                }
            }
            if !rotated {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Numeric(format!(
                "one-sided Jacobi did not converge in {} sweeps",
                tol.max_sweeps
            )));
        }
        let mut values: Vec<f64> = (0..n)
            .map(|j| (0..m).map(|k| x.get(k, j).norm_sqr()).sum::<f64>().sqrt())
            .collect();
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(values)
    }

    /// Similarity transform `P a Pᵀ` where row `i` of the result is row
    /// `perm[i]` of `a`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Result<DenseMatrix> {
        if !self.is_square() || perm.len() != self.rows {
            return Err(Error::Shape(format!(
                "permutation of length {} on {}x{} matrix",
                perm.len(),
                self.rows,
                self.cols
            )));
        }
        let n = self.rows;
        let mut out = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(perm[i], perm[j]));
            }
        }
        Ok(out)
    }
}

impl EigenResult {
    /// `V diag(values) V†`.
    pub fn reconstruct(&self, values: &[f64]) -> DenseMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        let mut out = DenseMatrix::zeros(n, n);
        for (k, &lambda) in values.iter().enumerate() {
            if lambda == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v.get(i, k) * lambda;
                for j in 0..n {
                    out.add_at(i, j, vik * v.get(j, k).conj());
                }
            }
        }
        out
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

fn clamped_roots(eigenvalues: &[f64], floor: f64) -> Result<Vec<f64>> {
    eigenvalues
        .iter()
        .map(|&l| {
            if l < -floor {
                Err(Error::NotPsd { min_eigenvalue: l })
            } else {
                Ok(l.max(0.0).sqrt())
            }
        })
        .collect()
}

fn max_offdiag(a: &DenseMatrix) -> f64 {
    let n = a.rows;
    let mut worst = 0.0_f64;
    for p in 0..n {
        for q in (p + 1)..n {
            worst = worst.max(a.get(p, q).norm());
        }
    }
    worst
}

/// 2x2 unitary block `[[u_pp, u_pq], [u_qp, u_qq]]` that diagonalises
/// `[[app, apq], [conj(apq), aqq]]` by congruence `U† A U`.
fn jacobi_rotation(app: f64, aqq: f64, apq: Complex64) -> [Complex64; 4] {
    let r = apq.norm();
    let phase = (apq / r).conj();
    let theta = 0.5 * (2.0 * r).atan2(aqq - app);
    let (s, c) = theta.sin_cos();
    [
        Complex64::new(c, 0.0),
        Complex64::new(s, 0.0),
        -phase * s,
        phase * c,
    ]
}

fn rotate_columns(a: &mut DenseMatrix, p: usize, q: usize, u: &[Complex64; 4]) {
    let [upp, upq, uqp, uqq] = *u;
    for k in 0..a.rows {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * upp + akq * uqp);
        a.set(k, q, akp * upq + akq * uqq);
    }
}

fn rotate_rows(a: &mut DenseMatrix, p: usize, q: usize, u: &[Complex64; 4]) {
    let [upp, upq, uqp, uqq] = *u;
    for k in 0..a.cols {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, upp.conj() * apk + uqp.conj() * aqk);
        a.set(q, k, upq.conj() * apk + uqq.conj() * aqk);
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self.get(r, c);
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

pub fn pauli_x() -> DenseMatrix {
    DenseMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).expect("static shape")
}

pub fn pauli_y() -> DenseMatrix {
    let i = Complex64::new(0.0, 1.0);
    DenseMatrix::new(2, 2, vec![ZERO, -i, i, ZERO]).expect("static shape")
}

pub fn pauli_z() -> DenseMatrix {
    DenseMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).expect("static shape")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn matmul_examples() {
        let x = pauli_x();
        let i2 = DenseMatrix::identity(2);
        assert_eq!(i2.matmul(&x).unwrap(), x);
        assert_eq!(x.matmul(&x).unwrap(), i2);
        let a = DenseMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = DenseMatrix::from_real(2, 2, &[5.0, 6.0, 7.0, 8.0]).unwrap();
        let want = DenseMatrix::from_real(2, 2, &[19.0, 22.0, 43.0, 50.0]).unwrap();
        assert_eq!(a.matmul(&b).unwrap(), want);
    }

    #[test]
    fn matmul_shape_error() {
        let a = DenseMatrix::zeros(2, 3);
        assert!(matches!(a.matmul(&a), Err(Error::Shape(_))));
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(matches!(
            DenseMatrix::new(2, 2, vec![ZERO; 3]),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            DenseMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn kron_examples() {
        assert_eq!(
            DenseMatrix::identity(2).kron(&DenseMatrix::identity(2)),
            DenseMatrix::identity(4)
        );
        let two = DenseMatrix::from_real(1, 1, &[2.0]).unwrap();
        let m = DenseMatrix::from_real(2, 2, &[1.0, -3.0, 0.5, 7.0]).unwrap();
        assert_eq!(two.kron(&m), m.scale(c(2.0, 0.0)));

        // (σy⊗σy)|00⟩ = −|11⟩
        let yy = pauli_y().kron(&pauli_y());
        let ket00 = DenseMatrix::column(&[ONE, ZERO, ZERO, ZERO]);
        let out = yy.matmul(&ket00).unwrap();
        assert_eq!(out.entries(), &[ZERO, ZERO, ZERO, c(-1.0, 0.0)]);
    }

    #[test]
    fn dagger_examples() {
        assert_eq!(DenseMatrix::identity(3).dagger(), DenseMatrix::identity(3));
        let m = DenseMatrix::new(2, 2, vec![ZERO, c(0.0, 1.0), ZERO, ZERO]).unwrap();
        let want = DenseMatrix::new(2, 2, vec![ZERO, ZERO, c(0.0, -1.0), ZERO]).unwrap();
        assert_eq!(m.dagger(), want);
    }

    #[test]
    fn trace_examples() {
        assert_eq!(DenseMatrix::identity(4).trace().unwrap(), c(4.0, 0.0));
        assert_eq!(pauli_x().trace().unwrap(), ZERO);
        assert!(matches!(
            DenseMatrix::zeros(2, 3).trace(),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn eig_examples() {
        let d = DenseMatrix::diag(&[3.0, 1.0, 2.0]);
        assert_eq!(d.hermitian_eig().unwrap().eigenvalues, vec![3.0, 2.0, 1.0]);

        let e = pauli_x().hermitian_eig().unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] + 1.0).abs() < 1e-14);

        let h = 0.5_f64.sqrt();
        let phi = DenseMatrix::column(&[c(h, 0.0), ZERO, ZERO, c(h, 0.0)]);
        let rho = phi.matmul(&phi.dagger()).unwrap();
        let e = rho.hermitian_eig().unwrap();
        let want = [1.0, 0.0, 0.0, 0.0];
        for (got, want) in e.eigenvalues.iter().zip(want) {
            assert!((got - want).abs() < 1e-14, "{:?}", e.eigenvalues);
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = DenseMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(m.hermitian_eig(), Err(Error::Contract(_))));
        assert!(matches!(
            DenseMatrix::zeros(2, 3).hermitian_eig(),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn eig_of_complex_hermitian() {
        // σy has eigenvalues ±1 and complex eigenvectors
        let e = pauli_y().hermitian_eig().unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-14);
        let back = e.reconstruct(&e.eigenvalues);
        assert!(back.max_abs_diff(&pauli_y()) < 1e-14);
    }

    #[test]
    fn psd_sqrt_examples() {
        assert!(
            DenseMatrix::identity(3)
                .psd_sqrt()
                .unwrap()
                .max_abs_diff(&DenseMatrix::identity(3))
                < 1e-15
        );
        let r = DenseMatrix::diag(&[4.0, 9.0]).psd_sqrt().unwrap();
        assert!(r.max_abs_diff(&DenseMatrix::diag(&[2.0, 3.0])) < 1e-15);
    }

    #[test]
    fn psd_sqrt_clamps_and_rejects() {
        let tiny = DenseMatrix::diag(&[1.0, -1e-12]);
        let r = tiny.psd_sqrt().unwrap();
        assert_eq!(r.get(1, 1), ZERO);
        let neg = DenseMatrix::diag(&[1.0, -1e-6]);
        assert!(matches!(neg.psd_sqrt(), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn tolerances_are_overridable() {
        let m = DenseMatrix::diag(&[1.0, -1e-6]);
        let loose = Tolerances {
            psd_floor: 1e-5,
            ..Tolerances::default()
        };
        assert!(m.psd_sqrt_with(&loose).is_ok());
    }

    #[test]
    fn singular_values_small() {
        let m = DenseMatrix::from_real(2, 2, &[3.0, 0.0, 4.0, 5.0]).unwrap();
        // AᵀA = [[25, 20], [20, 25]] -> singular values √45, √5
        let s = m.singular_values().unwrap();
        assert!((s[0] - 45f64.sqrt()).abs() < 1e-14);
        assert!((s[1] - 5f64.sqrt()).abs() < 1e-14);
        let rank_one = DenseMatrix::from_real(2, 2, &[1.0, 2.0, 2.0, 4.0]).unwrap();
        let s = rank_one.singular_values().unwrap();
        assert!((s[0] - 5.0).abs() < 1e-14 && s[1] < 1e-15);
    }

    #[test]
    fn permute_symmetric_moves_rows_and_columns() {
        let m = DenseMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let p = m.permute_symmetric(&[1, 0]).unwrap();
        assert_eq!(
            p,
            DenseMatrix::from_real(2, 2, &[4.0, 3.0, 2.0, 1.0]).unwrap()
        );
    }
}
