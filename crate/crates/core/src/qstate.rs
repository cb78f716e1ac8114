//! Labeled multi-qubit pure states and density operators.
//!
//! The basis is lexicographic big-endian: the first label is the most
//! significant bit of the basis index. Printed 3-qubit matrices in the
//! literature often use Hamming-weight ordering instead; see
//! [`DensityOp::permute_to_weight_order`].

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{DenseMatrix, Tolerances};

/// Tolerance on norm, trace and Hermiticity of states.
pub const STATE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QubitLabel(String);

impl QubitLabel {
    pub fn new(name: impl Into<String>) -> Self {
        Self(name.into())
    }

    pub fn a() -> Self {
        Self::new("A")
    }

    pub fn b() -> Self {
        Self::new("B")
    }

    pub fn c() -> Self {
        Self::new("C")
    }

    /// Label of the inaccessible partner mode, `B` -> `Bbar`.
    pub fn barred(&self) -> Self {
        Self(format!("{}bar", self.0))
    }

    pub fn is_barred(&self) -> bool {
        self.0.ends_with("bar")
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for QubitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for QubitLabel {
    fn from(s: &str) -> Self {
        Self::new(s)
    }
}

fn check_labels(labels: &[QubitLabel]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::Shape("a register needs at least one qubit".into()));
    }
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(Error::Label(l.to_string()));
        }
    }
    Ok(())
}

fn position(labels: &[QubitLabel], label: &QubitLabel) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::Label(label.to_string()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    labels: Vec<QubitLabel>,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(labels: Vec<QubitLabel>, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_labels(&labels)?;
        let dim = 1usize << labels.len();
        if amplitudes.len() != dim {
            return Err(Error::Shape(format!(
                "{} qubits need {dim} amplitudes, got {}",
                labels.len(),
                amplitudes.len()
            )));
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Contract("non-finite amplitude".into()));
        }
        let state = Self { labels, amplitudes };
        let norm = state.norm();
        if (norm - 1.0).abs() > STATE_TOL {
            return Err(Error::Contract(format!("state norm is {norm}, expected 1")));
        }
        Ok(state)
    }

    /// Normalizes before validating; fails only on a zero vector.
    pub fn normalized(labels: Vec<QubitLabel>, amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Contract("cannot normalize a zero vector".into()));
        }
        Self::new(labels, amplitudes.into_iter().map(|z| z / norm).collect())
    }

    pub fn labels(&self) -> &[QubitLabel] {
        &self.labels
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Amplitude of a basis state given as a bit string, e.g. `"010"`.
    pub fn amplitude(&self, bits: &str) -> Result<Complex64> {
        if bits.len() != self.num_qubits() {
            return Err(Error::Shape(format!(
                "basis string `{bits}` for {} qubits",
                self.num_qubits()
            )));
        }
        let index = usize::from_str_radix(bits, 2)
            .map_err(|_| Error::Shape(format!("`{bits}` is not a bit string")))?;
        Ok(self.amplitudes[index])
    }

    pub fn to_density(&self) -> DensityOp {
        let psi = DenseMatrix::column(&self.amplitudes);
        let matrix = psi.matmul(&psi.dagger()).expect("column times row");
        DensityOp::trusted(self.labels.clone(), matrix.hermitian_part())
    }

    /// `Tr_rest |ψ⟩⟨ψ|` without building the full outer product.
    pub fn reduced_density(&self, keep: &[QubitLabel]) -> Result<DensityOp> {
        let split = BitSplit::new(&self.labels, keep)?;
        let dk = split.kept.len();
        let mut m = DenseMatrix::zeros(dk, dk);
        for &t in &split.traced {
            for (r, &kr) in split.kept.iter().enumerate() {
                let ar = self.amplitudes[kr | t];
                if ar == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (c, &kc) in split.kept.iter().enumerate() {
                    m.add_at(r, c, ar * self.amplitudes[kc | t].conj());
                }
            }
        }
        Ok(DensityOp::trusted(split.labels, m.hermitian_part()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityOp {
    labels: Vec<QubitLabel>,
    matrix: DenseMatrix,
}

impl DensityOp {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(labels: Vec<QubitLabel>, matrix: DenseMatrix) -> Result<Self> {
        check_labels(&labels)?;
        let dim = 1usize << labels.len();
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::Shape(format!(
                "{} qubits need a {dim}x{dim} matrix, got {}x{}",
                labels.len(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        let defect = matrix.hermitian_defect();
        if defect > STATE_TOL {
            return Err(Error::Contract(format!(
                "density matrix not Hermitian (defect {defect:e})"
            )));
        }
        let tr = matrix.trace()?;
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::Contract(format!("density matrix trace is {tr}")));
        }
        let tol = Tolerances::default();
        let min = matrix.hermitian_eig_with(&tol)?.min_eigenvalue();
        if min < -tol.psd_floor {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
            });
        }
        Ok(Self { labels, matrix })
    }

    /// For operators produced by the pipeline itself, which are valid by construction.
    pub(crate) fn trusted(labels: Vec<QubitLabel>, matrix: DenseMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), 1 << labels.len());
        Self { labels, matrix }
    }

    pub fn labels(&self) -> &[QubitLabel] {
        &self.labels
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn purity(&self) -> f64 {
        self.matrix
            .matmul(&self.matrix)
            .and_then(|m| m.trace())
            .map(|t| t.re)
            .unwrap_or(f64::NAN)
    }

    pub fn index_of(&self, label: &QubitLabel) -> Result<usize> {
        position(&self.labels, label)
    }

    /// Reduced operator on `keep`. The result lists the kept labels in the
    /// order they appear in `self`, not the order given in `keep`.
    pub fn partial_trace(&self, keep: &[QubitLabel]) -> Result<DensityOp> {
        let split = BitSplit::new(&self.labels, keep)?;
        let dk = split.kept.len();
        let mut m = DenseMatrix::zeros(dk, dk);
        for (r, &kr) in split.kept.iter().enumerate() {
            for (c, &kc) in split.kept.iter().enumerate() {
                let sum = split
                    .traced
                    .iter()
                    .map(|&t| self.matrix.get(kr | t, kc | t))
                    .sum();
                m.set(r, c, sum);
            }
        }
        Ok(DensityOp::trusted(split.labels, m))
    }

    /// Three-qubit operator re-indexed into Hamming-weight order
    /// `000, 001, 010, 100, 011, 101, 110, 111`.
    pub fn permute_to_weight_order(&self) -> Result<DenseMatrix> {
        if self.num_qubits() != 3 {
            return Err(Error::Shape(format!(
                "weight ordering is defined for 3 qubits, got {}",
                self.num_qubits()
            )));
        }
        self.matrix.permute_symmetric(&weight_order(3))
    }
}

/// Lexicographic indices sorted by Hamming weight, ties kept lexicographic.
pub fn weight_order(num_qubits: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..1usize << num_qubits).collect();
    idx.sort_by_key(|&i| (i.count_ones(), i));
    idx
}

/// Basis-index bookkeeping for tracing out a subset of qubits.
struct BitSplit {
    labels: Vec<QubitLabel>,
    /// Full-register index contributed by each kept-register index.
    kept: Vec<usize>,
    /// Full-register index contributed by each traced configuration.
    traced: Vec<usize>,
}

impl BitSplit {
    fn new(labels: &[QubitLabel], keep: &[QubitLabel]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::Label("empty keep set".into()));
        }
        for k in keep {
            position(labels, k)?;
        }
        let n = labels.len();
        let (mut kept_bits, mut traced_bits) = (Vec::new(), Vec::new());
        let mut kept_labels = Vec::new();
        for (i, l) in labels.iter().enumerate() {
            let bit = n - 1 - i;
            if keep.contains(l) {
                kept_bits.push(bit);
                kept_labels.push(l.clone());
            } else {
                traced_bits.push(bit);
            }
        }
        Ok(Self {
            labels: kept_labels,
            kept: spread(&kept_bits),
            traced: spread(&traced_bits),
        })
    }
}

/// For bit positions listed most-significant first, map every sub-index to
/// the full index with those bits set.
fn spread(bits: &[usize]) -> Vec<usize> {
    let m = bits.len();
    (0..1usize << m)
        .map(|sub| {
            bits.iter()
                .enumerate()
                .filter(|(j, _)| sub >> (m - 1 - j) & 1 == 1)
                .fold(0, |acc, (_, &b)| acc | 1 << b)
        })
        .collect()
}

fn abc() -> Vec<QubitLabel> {
    vec![QubitLabel::a(), QubitLabel::b(), QubitLabel::c()]
}

fn three_qubit(entries: &[(usize, f64)]) -> PureState {
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    for &(i, a) in entries {
        amps[i] = Complex64::new(a, 0.0);
    }
    PureState::new(abc(), amps).expect("normalized constant state")
}

/// (|000⟩ + |111⟩)/√2
pub fn make_ghz() -> PureState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    three_qubit(&[(0b000, h), (0b111, h)])
}

/// (|100⟩ + |010⟩ + |001⟩)/√3
pub fn make_w() -> PureState {
    let t = 1.0 / 3f64.sqrt();
    three_qubit(&[(0b100, t), (0b010, t), (0b001, t)])
}

/// (|100⟩ + |010⟩ + √2|001⟩)/2
pub fn make_w1() -> PureState {
    three_qubit(&[
        (0b100, 0.5),
        (0b010, 0.5),
        (0b001, std::f64::consts::FRAC_1_SQRT_2),
    ])
}

#[derive(Clone, Debug, PartialEq)]
pub enum State {
    Pure(PureState),
    Density(DensityOp),
}

impl State {
    pub fn labels(&self) -> &[QubitLabel] {
        match self {
            State::Pure(p) => p.labels(),
            State::Density(d) => d.labels(),
        }
    }

    pub fn into_density(self) -> DensityOp {
        match self {
            State::Pure(p) => p.to_density(),
            State::Density(d) => d,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Pure,
    Density,
}

/// On-disk JSON layout shared with the CLI. Complex numbers are `[re, im]`
/// pairs; matrices are flattened row-major.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateDoc {
    pub labels: Vec<String>,
    pub kind: StateKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<[f64; 2]>>,
}

fn pairs(values: &[Complex64]) -> Vec<[f64; 2]> {
    values.iter().map(|z| [z.re, z.im]).collect()
}

fn complexes(values: &[[f64; 2]]) -> Vec<Complex64> {
    values
        .iter()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect()
}

impl From<&State> for StateDoc {
    fn from(state: &State) -> Self {
        let labels = state.labels().iter().map(|l| l.to_string()).collect();
        match state {
            State::Pure(p) => StateDoc {
                labels,
                kind: StateKind::Pure,
                amplitudes: Some(pairs(p.amplitudes())),
                matrix: None,
            },
            State::Density(d) => StateDoc {
                labels,
                kind: StateKind::Density,
                amplitudes: None,
                matrix: Some(pairs(d.matrix().entries())),
            },
        }
    }
}

impl StateDoc {
    pub fn into_state(self) -> Result<State> {
        let labels: Vec<QubitLabel> = self.labels.into_iter().map(QubitLabel::new).collect();
        match self.kind {
            StateKind::Pure => {
                let amps = self
                    .amplitudes
                    .ok_or_else(|| Error::Contract("pure state without `amplitudes`".into()))?;
                Ok(State::Pure(PureState::new(labels, complexes(&amps))?))
            }
            StateKind::Density => {
                let entries = self
                    .matrix
                    .ok_or_else(|| Error::Contract("density state without `matrix`".into()))?;
                let dim = 1usize << labels.len();
                let m = DenseMatrix::new(dim, dim, complexes(&entries))?;
                Ok(State::Density(DensityOp::new(labels, m)?))
            }
        }
    }
}

/// serde_json prints the shortest decimal that round-trips, so reading the
/// file back reproduces every `f64` bit for bit.
pub fn state_to_json(state: &State) -> String {
    serde_json::to_string_pretty(&StateDoc::from(state)).expect("plain data serializes")
}

pub fn state_from_json(text: &str) -> Result<State> {
    let doc: StateDoc = serde_json::from_str(text).map_err(|e| Error::Format {
        path: "<json>".into(),
        message: e.to_string(),
    })?;
    doc.into_state()
}

pub fn write_state(path: &Path, state: &State) -> Result<()> {
    fs::write(path, state_to_json(state) + "\n").map_err(|e| Error::io(path, e))
}

pub fn read_state(path: &Path) -> Result<State> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let doc: StateDoc = serde_json::from_str(&text).map_err(|e| Error::Format {
        path: path.into(),
        message: e.to_string(),
    })?;
    doc.into_state()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn bell() -> PureState {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = Complex64::new(0.0, 0.0);
        PureState::new(
            vec!["P".into(), "Q".into()],
            vec![Complex64::new(h, 0.0), z, z, Complex64::new(h, 0.0)],
        )
        .unwrap()
    }

    #[test]
    fn ghz_amplitudes() {
        let g = make_ghz();
        assert!(approx(g.amplitude("000").unwrap().re, std::f64::consts::FRAC_1_SQRT_2, 1e-12));
        assert_eq!(g.amplitude("010").unwrap().norm(), 0.0);
        assert!(approx(g.norm(), 1.0, 1e-15));
        assert_eq!(g.labels(), &abc()[..]);
    }

    #[test]
    fn w_amplitudes() {
        let w = make_w();
        assert!(approx(w.amplitude("001").unwrap().re, 0.57735027, 1e-8));
        assert_eq!(w.amplitude("111").unwrap().norm(), 0.0);
        assert!(approx(w.norm(), 1.0, 1e-15));
    }

    #[test]
    fn w1_amplitudes() {
        let w = make_w1();
        assert!(approx(w.amplitude("001").unwrap().re, std::f64::consts::FRAC_1_SQRT_2, 1e-12));
        assert_eq!(w.amplitude("100").unwrap().re, 0.5);
        assert!(approx(w.norm(), 1.0, 1e-15));
    }

    #[test]
    fn sparsity_patterns() {
        let nonzero = |s: &PureState| -> Vec<usize> {
            (0..8).filter(|&i| s.amplitudes()[i].norm() > 0.0).collect()
        };
        assert_eq!(nonzero(&make_ghz()), vec![0, 7]);
        assert_eq!(nonzero(&make_w()), vec![1, 2, 4]);
        assert_eq!(nonzero(&make_w1()), vec![1, 2, 4]);
    }

    #[test]
    fn to_density_examples() {
        let rho = make_ghz().to_density();
        assert!(approx(rho.matrix().get(0, 7).re, 0.5, 1e-15));
        assert!(approx(rho.matrix().trace().unwrap().re, 1.0, 1e-15));
        assert!(approx(rho.purity(), 1.0, 1e-15));
    }

    #[test]
    fn partial_trace_of_bell_is_maximally_mixed() {
        let rho = bell().to_density();
        let red = rho.partial_trace(&["P".into()]).unwrap();
        assert!(red.matrix().max_abs_diff(&DenseMatrix::diag(&[0.5, 0.5])) < 1e-15);
        assert_eq!(red.labels(), &[QubitLabel::new("P")]);
    }

    #[test]
    fn partial_trace_of_product() {
        let ra = DenseMatrix::from_real(2, 2, &[0.7, 0.2, 0.2, 0.3]).unwrap();
        let rb = DenseMatrix::diag(&[0.4, 0.6]);
        let rho = DensityOp::new(vec!["A".into(), "B".into()], ra.kron(&rb)).unwrap();
        let red = rho.partial_trace(&["A".into()]).unwrap();
        assert!(red.matrix().max_abs_diff(&ra) < 1e-15);
        let red = rho.partial_trace(&["B".into()]).unwrap();
        assert!(red.matrix().max_abs_diff(&rb) < 1e-15);
    }

    #[test]
    fn partial_trace_errors() {
        let rho = make_w().to_density();
        assert!(matches!(
            rho.partial_trace(&["Z".into()]),
            Err(Error::Label(_))
        ));
        assert!(matches!(rho.partial_trace(&[]), Err(Error::Label(_))));
    }

    #[test]
    fn partial_trace_keeps_register_order() {
        let rho = make_w1().to_density();
        let red = rho
            .partial_trace(&[QubitLabel::c(), QubitLabel::a()])
            .unwrap();
        assert_eq!(red.labels(), &[QubitLabel::a(), QubitLabel::c()]);
    }

    #[test]
    fn reduced_density_matches_partial_trace() {
        for s in [make_ghz(), make_w(), make_w1()] {
            for keep in [
                vec![QubitLabel::a(), QubitLabel::c()],
                vec![QubitLabel::b()],
            ] {
                let fast = s.reduced_density(&keep).unwrap();
                let slow = s.to_density().partial_trace(&keep).unwrap();
                assert!(fast.matrix().max_abs_diff(slow.matrix()) < 1e-15);
            }
        }
    }

    #[test]
    fn weight_order_permutation() {
        assert_eq!(weight_order(3), vec![0, 1, 2, 4, 3, 5, 6, 7]);
        let mixed = DensityOp::new(
            abc(),
            DenseMatrix::identity(8).scale(Complex64::new(0.125, 0.0)),
        )
        .unwrap();
        let p = mixed.permute_to_weight_order().unwrap();
        assert!(p.max_abs_diff(mixed.matrix()) < 1e-16);
        let two = bell().to_density();
        assert!(matches!(
            two.permute_to_weight_order(),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn density_validation() {
        let labels = vec![QubitLabel::a()];
        assert!(matches!(
            DensityOp::new(labels.clone(), DenseMatrix::diag(&[0.5, 0.4])),
            Err(Error::Contract(_))
        ));
        assert!(matches!(
            DensityOp::new(labels.clone(), DenseMatrix::diag(&[1.5, -0.5])),
            Err(Error::NotPsd { .. })
        ));
        assert!(matches!(
            DensityOp::new(labels, DenseMatrix::identity(4)),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            PureState::new(
                vec!["A".into(), "A".into()],
                vec![Complex64::new(1.0, 0.0); 4]
            ),
            Err(Error::Label(_))
        ));
    }

    #[test]
    fn json_round_trip_is_exact() {
        let states = [
            State::Pure(make_w1()),
            State::Density(
                make_w()
                    .reduced_density(&[QubitLabel::a(), QubitLabel::b()])
                    .unwrap(),
            ),
        ];
        for s in states {
            let text = state_to_json(&s);
            assert_eq!(state_from_json(&text).unwrap(), s);
        }
    }

    #[test]
    fn json_layout() {
        let text = state_to_json(&State::Pure(make_ghz()));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["kind"], "pure");
        assert_eq!(v["labels"], serde_json::json!(["A", "B", "C"]));
        assert_eq!(v["amplitudes"].as_array().unwrap().len(), 8);
        assert_eq!(v["amplitudes"][7][1], 0.0);
        assert!(v.get("matrix").is_none());
    }
}
