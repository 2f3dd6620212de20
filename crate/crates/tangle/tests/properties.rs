//! Property-based invariants for the numerical kernels and measures.

use num_complex::Complex64;
use proptest::prelude::*;

use tangle::mat::{kron, partial_trace, psd_sqrt, sym_eig, Field, Matrix};
use tangle::qubit;
use tangle::rebit;
use tangle::state::StateVector;
use tangle::ubit;

fn matrix2(field: Field) -> impl Strategy<Value = Matrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 4).prop_map(move |entries| {
        let data: Vec<Complex64> = entries
            .into_iter()
            .map(|(re, im)| match field {
                Field::Real => Complex64::new(re, 0.0),
                Field::Complex => Complex64::new(re, im),
            })
            .collect();
        Matrix::try_new(field, 2, 2, data).unwrap()
    })
}

fn symmetric4() -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-1.0f64..1.0, 16).prop_map(|entries| {
        let m = Matrix::from_real(4, 4, &entries);
        m.add(&m.adjoint()).scale(0.5)
    })
}

fn hermitian4() -> impl Strategy<Value = Matrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 16).prop_map(|entries| {
        let data: Vec<Complex64> = entries
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        let m = Matrix::try_new(Field::Complex, 4, 4, data).unwrap();
        m.add(&m.adjoint()).scale(0.5)
    })
}

fn unit_amps(len: usize, complex: bool) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len).prop_filter_map(
        "norm too small",
        move |entries| {
            let amps: Vec<Complex64> = entries
                .into_iter()
                .map(|(re, im)| Complex64::new(re, if complex { im } else { 0.0 }))
                .collect();
            let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-3 {
                None
            } else {
                Some(amps.into_iter().map(|z| z / norm).collect())
            }
        },
    )
}

fn pure_state(n_factors: usize, field: Field) -> impl Strategy<Value = StateVector> {
    unit_amps(1 << n_factors, field == Field::Complex)
        .prop_map(move |amps| StateVector::new(field, n_factors, amps).unwrap())
}

proptest! {
    #[test]
    fn kron_is_associative(a in matrix2(Field::Complex), b in matrix2(Field::Complex)) {
        // (a (x) b) (x) c against a (x) (b (x) c) on 2x2 factors; the third
        // factor is fixed so the product stays within the 8x8 limit.
        let c = Matrix::from_real(2, 2, &[0.3, -0.7, 0.1, 0.9]);
        let left = kron(&kron(&a, &b).unwrap(), &c).unwrap();
        let right = kron(&a, &kron(&b, &c).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) <= 1e-14);
    }

    #[test]
    fn partial_trace_preserves_trace_and_hermiticity(h in hermitian4()) {
        for keep in [[0usize], [1usize]] {
            let red = partial_trace(&h, &[2, 2], &keep).unwrap();
            prop_assert!((red.trace() - h.trace()).norm() <= 1e-12);
            prop_assert!(red.self_adjoint_residual() <= 1e-12);
        }
    }

    #[test]
    fn sym_eig_reconstructs(a in symmetric4()) {
        let eig = sym_eig(&a).unwrap();
        let v = &eig.eigenvectors;
        let rebuilt = Matrix::from_fn(Field::Real, 4, 4, |i, j| {
            (0..4).map(|k| v.get(i, k) * eig.eigenvalues[k] * v.get(j, k).conj()).sum()
        });
        prop_assert!(rebuilt.max_abs_diff(&a) <= 1e-12);
        let gram = v.adjoint().mul(v);
        prop_assert!(gram.max_abs_diff(&Matrix::identity(Field::Real, 4)) <= 1e-12);
        for w in eig.eigenvalues.windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn psd_sqrt_squares_back(h in hermitian4()) {
        // h^H h is PSD by construction.
        let psd = h.adjoint().mul(&h).scale(0.25);
        let root = psd_sqrt(&psd).unwrap();
        prop_assert!(root.mul(&root).max_abs_diff(&psd) <= 1e-10);
        prop_assert!(root.self_adjoint_residual() <= 1e-12);
    }

    #[test]
    fn split_recombines(psi in pure_state(2, Field::Complex)) {
        let split = psi.split();
        prop_assert!((split.norm_sq_a() + split.norm_sq_b() - 1.0).abs() <= 1e-12);
        let back = split.recombine(Field::Complex, 2).unwrap();
        prop_assert_eq!(psi, back);
    }

    #[test]
    fn real_states_roundtrip_through_complex(phi in pure_state(3, Field::Real)) {
        let back = phi.to_complex().try_real().unwrap();
        prop_assert_eq!(phi, back);
    }

    #[test]
    fn d_terms_are_permutation_invariant(psi in pure_state(3, Field::Complex)) {
        let d = qubit::d_terms(&psi).unwrap();
        for perm in [[0usize, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let permuted = psi.permute_factors(&perm).unwrap();
            let dp = qubit::d_terms(&permuted).unwrap();
            prop_assert!((d.d1 - dp.d1).norm() <= 1e-12);
            prop_assert!((d.d2 - dp.d2).norm() <= 1e-12);
            prop_assert!((d.d3 - dp.d3).norm() <= 1e-12);
        }
    }

    #[test]
    fn operator_identity_holds(av in unit_amps(4, false), bv in unit_amps(4, false)) {
        let a: Vec<f64> = av.iter().map(|z| z.re).collect();
        let b: Vec<f64> = bv.iter().map(|z| z.re).collect();
        prop_assert!(ubit::identity_check(&a, &b) <= 1e-12);
    }

    #[test]
    fn three_tangle_local_rotation_invariant(phi in pure_state(3, Field::Real), angles in prop::array::uniform3(0.0f64..std::f64::consts::TAU)) {
        // Random per-factor rotations leave the signed three-tangle fixed.
        let sigma = rebit::rebit_three_tangle_pure(&phi).unwrap();
        let mut rotated = phi.amps().to_vec();
        for (factor, theta) in angles.iter().enumerate() {
            let (c, s) = (theta.cos(), theta.sin());
            let shift = 2 - factor;
            let mut out = rotated.clone();
            for idx in 0..8 {
                if (idx >> shift) & 1 == 0 {
                    let hi = idx | (1 << shift);
                    out[idx] = c * rotated[idx] - s * rotated[hi];
                    out[hi] = s * rotated[idx] + c * rotated[hi];
                }
            }
            rotated = out;
        }
        let rotated = StateVector::new(Field::Real, 3, rotated).unwrap();
        let sigma_rot = rebit::rebit_three_tangle_pure(&rotated).unwrap();
        prop_assert!((sigma - sigma_rot).abs() <= 1e-10);
    }

    #[test]
    fn measurement_probabilities_sum_to_one(phi in pure_state(3, Field::Real)) {
        let ens = rebit::project_measure(&phi, &[0, 2]).unwrap();
        prop_assert!((ens.total_probability() - 1.0).abs() <= 1e-12);
        for o in &ens.outcomes {
            let norm: f64 = o.state.amps().iter().map(|z| z.norm_sqr()).sum();
            prop_assert!((norm - 1.0).abs() <= 1e-12);
        }
    }
}

#[test]
fn local_unitary_invariance_of_three_tangle() {
    // Complex case, seeded rather than proptest: random single-factor
    // unitaries U = R(alpha) P(phase) on each qubit.
    use tangle::sample::random_pure;
    for seed in 0..50u64 {
        let psi = random_pure(Field::Complex, 3, seed);
        let tau = qubit::three_tangle(&psi).unwrap();
        let mut amps = psi.amps().to_vec();
        for factor in 0..3usize {
            let theta = 0.37 + seed as f64 * 0.11 + factor as f64;
            let phase = 1.13 + factor as f64 * 0.71;
            let (c, s) = (theta.cos(), theta.sin());
            let ph = Complex64::from_polar(1.0, phase);
            let shift = 2 - factor;
            let mut out = amps.clone();
            for idx in 0..8 {
                if (idx >> shift) & 1 == 0 {
                    let hi = idx | (1 << shift);
                    out[idx] = c * amps[idx] - s * ph * amps[hi];
                    out[hi] = s * ph.conj() * amps[idx] + c * amps[hi];
                }
            }
            amps = out;
        }
        let rotated = StateVector::new(Field::Complex, 3, amps).unwrap();
        let tau_rot = qubit::three_tangle(&rotated).unwrap();
        assert!(
            (tau - tau_rot).abs() <= 1e-10,
            "seed {seed}: {tau} vs {tau_rot}"
        );
    }
}
