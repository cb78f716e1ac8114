use num_complex::Complex64;
use proptest::prelude::*;

use horizonq::entanglement::concurrence;
use horizonq::horizon::{
    build_reduced_with, dress_state, mode_amplitudes, BlackHoleModel, Family, ModeAmplitudes,
};
use horizonq::numkernel::DenseMatrix;
use horizonq::qstate::{state_from_json, state_to_json, DensityOp, PureState, QubitLabel, State};
use horizonq::teleport::teleportation_fidelity;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn labels(n: usize) -> Vec<QubitLabel> {
    ["A", "B", "C", "D"][..n]
        .iter()
        .map(|s| QubitLabel::new(*s))
        .collect()
}

fn matrix(n: usize) -> impl Strategy<Value = DenseMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
        DenseMatrix::new(n, n, v.into_iter().map(|(r, i)| c(r, i)).collect()).unwrap()
    })
}

fn hermitian(n: usize) -> impl Strategy<Value = DenseMatrix> {
    matrix(n).prop_map(|m| m.hermitian_part())
}

/// `G G† / Tr(G G†)`, full rank with probability one.
fn density(qubits: usize) -> impl Strategy<Value = DensityOp> {
    let n = 1 << qubits;
    matrix(n).prop_filter_map("degenerate", move |g| {
        let m = g.matmul(&g.dagger()).unwrap();
        let tr = m.trace().unwrap().re;
        if tr < 1e-3 {
            return None;
        }
        DensityOp::new(labels(qubits), m.scale(c(1.0 / tr, 0.0))).ok()
    })
}

fn pure(qubits: usize) -> impl Strategy<Value = PureState> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << qubits).prop_filter_map(
        "zero vector",
        move |v| {
            let amps: Vec<Complex64> = v.into_iter().map(|(r, i)| c(r, i)).collect();
            PureState::normalized(labels(qubits), amps).ok()
        },
    )
}

/// `Rz(a) Ry(b) Rz(g)`.
fn su2(a: f64, b: f64, g: f64) -> DenseMatrix {
    let e = |p: f64| Complex64::from_polar(1.0, p);
    let (sb, cb) = (b / 2.0).sin_cos();
    DenseMatrix::new(
        2,
        2,
        vec![
            e(-(a + g) / 2.0) * cb,
            -e((g - a) / 2.0) * sb,
            e((a - g) / 2.0) * sb,
            e((a + g) / 2.0) * cb,
        ],
    )
    .unwrap()
}

fn angles() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.0..6.3f64, 0.0..3.2f64, 0.0..6.3f64)
}

/// Laplace expansion along the first row.
fn cofactor_det(m: &DenseMatrix) -> Complex64 {
    let n = m.rows();
    if n == 1 {
        return m.get(0, 0);
    }
    let mut acc = c(0.0, 0.0);
    for col in 0..n {
        let mut minor = Vec::with_capacity((n - 1) * (n - 1));
        for r in 1..n {
            for k in (0..n).filter(|&k| k != col) {
                minor.push(m.get(r, k));
            }
        }
        let sub = DenseMatrix::new(n - 1, n - 1, minor).unwrap();
        let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
        acc += m.get(0, col) * cofactor_det(&sub) * sign;
    }
    acc
}

/// Partial trace by summing over every basis index, no reshaping tricks.
fn brute_partial_trace(rho: &DensityOp, keep: &[usize]) -> DenseMatrix {
    let n = rho.num_qubits();
    let bit = |x: usize, q: usize| (x >> (n - 1 - q)) & 1;
    let sub = |x: usize| keep.iter().fold(0, |acc, &q| (acc << 1) | bit(x, q));
    let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let dim = 1 << keep.len();
    let mut out = vec![c(0.0, 0.0); dim * dim];
    for i in 0..(1 << n) {
        for j in 0..(1 << n) {
            if traced.iter().all(|&q| bit(i, q) == bit(j, q)) {
                out[sub(i) * dim + sub(j)] += rho.matrix().get(i, j);
            }
        }
    }
    DenseMatrix::new(dim, dim, out).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn eig_reconstructs_and_is_orthonormal(m in prop_oneof![hermitian(2), hermitian(4), hermitian(8)]) {
        let eig = m.hermitian_eig().unwrap();
        let back = eig.reconstruct(&eig.eigenvalues);
        prop_assert!(back.max_abs_diff(&m) <= 1e-10 * m.max_abs().max(1.0));
        let v = &eig.eigenvectors;
        let gram = v.dagger().matmul(v).unwrap();
        prop_assert!(gram.max_abs_diff(&DenseMatrix::identity(m.rows())) <= 1e-12);
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn eigenvalue_product_matches_cofactor_determinant(m in prop_oneof![hermitian(2), hermitian(4)]) {
        let prod: f64 = m.hermitian_eig().unwrap().eigenvalues.iter().product();
        let det = cofactor_det(&m);
        prop_assert!((det.re - prod).abs() <= 1e-10);
        prop_assert!(det.im.abs() <= 1e-10);
    }

    #[test]
    fn psd_sqrt_squares_back(rho in prop_oneof![density(1), density(2), density(3)]) {
        let s = rho.matrix().psd_sqrt().unwrap();
        prop_assert!(s.hermitian_defect() <= 1e-12);
        prop_assert!(s.matmul(&s).unwrap().max_abs_diff(rho.matrix()) <= 1e-10);
    }

    #[test]
    fn singular_values_square_to_gram_spectrum(m in matrix(4)) {
        let s = m.singular_values().unwrap();
        let e = m.dagger().matmul(&m).unwrap().hermitian_eig().unwrap().eigenvalues;
        for (sv, ev) in s.iter().zip(&e) {
            prop_assert!((sv * sv - ev.max(0.0)).abs() <= 1e-10);
        }
    }

    #[test]
    fn kron_mixed_product(a in matrix(2), b in matrix(2), x in matrix(2), y in matrix(2)) {
        let lhs = a.kron(&b).matmul(&x.kron(&y)).unwrap();
        let rhs = a.matmul(&x).unwrap().kron(&b.matmul(&y).unwrap());
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }

    #[test]
    fn partial_trace_matches_brute_force(rho in density(3), which in 0usize..7) {
        let keeps: [&[usize]; 7] = [&[0], &[1], &[2], &[0, 1], &[0, 2], &[1, 2], &[0, 1, 2]];
        let keep = keeps[which];
        let names: Vec<QubitLabel> = keep.iter().map(|&q| rho.labels()[q].clone()).collect();
        let fast = rho.partial_trace(&names).unwrap();
        prop_assert!(fast.matrix().max_abs_diff(&brute_partial_trace(&rho, keep)) <= 1e-14);
    }

    #[test]
    fn chained_partial_traces_commute(rho in density(3)) {
        let a = QubitLabel::a();
        let ab = rho.partial_trace(&[a.clone(), QubitLabel::b()]).unwrap();
        let ac = rho.partial_trace(&[a.clone(), QubitLabel::c()]).unwrap();
        let direct = rho.partial_trace(std::slice::from_ref(&a)).unwrap();
        let via_b = ab.partial_trace(std::slice::from_ref(&a)).unwrap();
        let via_c = ac.partial_trace(std::slice::from_ref(&a)).unwrap();
        prop_assert!(via_b.matrix().max_abs_diff(direct.matrix()) <= 1e-14);
        prop_assert!(via_c.matrix().max_abs_diff(direct.matrix()) <= 1e-14);
    }

    #[test]
    fn pure_reduction_matches_density_reduction(psi in pure(3), which in 0usize..3) {
        let keep = [QubitLabel::a(), QubitLabel::b(), QubitLabel::c()];
        let mut keep = keep.to_vec();
        keep.remove(which);
        let fast = psi.reduced_density(&keep).unwrap();
        let slow = psi.to_density().partial_trace(&keep).unwrap();
        prop_assert!(fast.matrix().max_abs_diff(slow.matrix()) <= 1e-14);
    }

    #[test]
    fn concurrence_of_pure_pairs(psi in pure(2)) {
        let v = psi.amplitudes();
        let want = 2.0 * (v[0] * v[3] - v[1] * v[2]).norm();
        prop_assert!((concurrence(&psi.to_density()).unwrap() - want).abs() <= 1e-9);
    }

    #[test]
    fn measures_stay_in_range(rho in density(2)) {
        let cc = concurrence(&rho).unwrap();
        prop_assert!((0.0..=1.0).contains(&cc));
        let f = teleportation_fidelity(&rho).unwrap();
        prop_assert!(f.fidelity >= 0.5 && f.fidelity <= 1.0 + 1e-12);
        prop_assert_eq!(f.useful, f.n_value > 1.0);
        prop_assert_eq!(f.n_value > 1.0, f.fidelity > 2.0 / 3.0);
    }

    #[test]
    fn local_unitaries_preserve_measures(rho in density(2), u in angles(), v in angles()) {
        let uv = su2(u.0, u.1, u.2).kron(&su2(v.0, v.1, v.2));
        let rotated = uv.matmul(rho.matrix()).unwrap().matmul(&uv.dagger()).unwrap();
        let rotated = DensityOp::new(rho.labels().to_vec(), rotated.hermitian_part()).unwrap();
        prop_assert!((concurrence(&rho).unwrap() - concurrence(&rotated).unwrap()).abs() <= 1e-9);
        let f0 = teleportation_fidelity(&rho).unwrap().n_value;
        let f1 = teleportation_fidelity(&rotated).unwrap().n_value;
        prop_assert!((f0 - f1).abs() <= 1e-9);
    }

    #[test]
    fn dressing_is_linear_and_isometric(
        psi in pure(3),
        phi in pure(3),
        x in -5.0f64..5.0,
        alpha in (-1.0f64..1.0, -1.0f64..1.0),
        beta in (-1.0f64..1.0, -1.0f64..1.0),
    ) {
        let amps = ModeAmplitudes::from_exponent(x);
        let parties = [QubitLabel::b(), QubitLabel::c()];
        let (al, be) = (c(alpha.0, alpha.1), c(beta.0, beta.1));
        let mix: Vec<Complex64> = psi
            .amplitudes()
            .iter()
            .zip(phi.amplitudes())
            .map(|(p, q)| al * p + be * q)
            .collect();
        let norm = mix.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-3);
        let combined = PureState::normalized(psi.labels().to_vec(), mix).unwrap();
        let lhs = dress_state(&combined, &parties, amps).unwrap();
        let dp = dress_state(&psi, &parties, amps).unwrap();
        let dq = dress_state(&phi, &parties, amps).unwrap();
        for ((l, p), q) in lhs.amplitudes().iter().zip(dp.amplitudes()).zip(dq.amplitudes()) {
            prop_assert!((l * norm - (al * p + be * q)).norm() <= 1e-12);
        }
        let inner_before: Complex64 = psi.amplitudes().iter().zip(phi.amplitudes()).map(|(p, q)| p.conj() * q).sum();
        let inner_after: Complex64 = dp.amplitudes().iter().zip(dq.amplitudes()).map(|(p, q)| p.conj() * q).sum();
        prop_assert!((inner_before - inner_after).norm() <= 1e-12);
    }

    #[test]
    fn w_pair_degrades_with_temperature(omega in 0.05f64..1.0, t in 1.0f64..9.0, dt in 0.01f64..1.0) {
        let at = |temp: f64| {
            let amps = mode_amplitudes(&BlackHoleModel::schwarzschild_temperature(temp).unwrap(), omega).unwrap();
            build_reduced_with(Family::W, &[QubitLabel::b(), QubitLabel::c()], Some(&QubitLabel::b()), amps).unwrap()
        };
        let (cold, hot) = (at(t), at(t + dt));
        prop_assert!(teleportation_fidelity(&hot).unwrap().fidelity < teleportation_fidelity(&cold).unwrap().fidelity);
        prop_assert!(concurrence(&hot).unwrap() < concurrence(&cold).unwrap());
    }

    #[test]
    fn state_json_round_trip_is_exact(rho in density(2), psi in pure(3)) {
        for s in [State::Density(rho), State::Pure(psi)] {
            let back = state_from_json(&state_to_json(&s)).unwrap();
            prop_assert_eq!(state_to_json(&back), state_to_json(&s));
        }
    }
}
