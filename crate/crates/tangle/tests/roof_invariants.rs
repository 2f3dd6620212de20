//! Roof-level invariants that need whole minimizations, kept at small
//! restart counts.

use num_complex::Complex64;

use tangle::exec::Exec;
use tangle::mat::Field;
use tangle::qubit::pure_tangle_2q_fast;
use tangle::rebit::pure_tangle_2r;
use tangle::roof::{
    decomposition_from_isometry, oracle_sample, roof_minimize, Isometry, RoofConfig,
};
use tangle::sample::{random_density, random_pure};
use tangle::state::{DensityMatrix, StateVector};
use tangle::ubit;

fn small_cfg(seed: u64) -> RoofConfig {
    RoofConfig {
        restarts: 8,
        seed,
        ..Default::default()
    }
}

#[test]
fn upper_bound_chain() {
    // roof <= eigendecomposition average, and the sampling oracle never
    // beats the optimizer by more than the tolerance.
    for seed in 0..4u64 {
        let rho = random_density(Field::Complex, 2, 3, 200 + seed).unwrap();
        let objective = |s: &StateVector| pure_tangle_2q_fast(s).unwrap();
        let roof = roof_minimize(&rho, objective, &small_cfg(seed)).unwrap();

        let eig_avg = {
            let v = Isometry::identity_embedding(Field::Complex, 3, 3);
            decomposition_from_isometry(&rho, &v)
                .unwrap()
                .average(objective)
        };
        assert!(
            roof.value <= eig_avg + 1e-9,
            "roof {} > eig avg {eig_avg}",
            roof.value
        );

        let oracle = oracle_sample(&rho, objective, 128, 6, seed, Exec::default()).unwrap();
        assert!(
            oracle >= roof.value - 1e-9,
            "oracle {oracle} beats roof {}",
            roof.value
        );
    }
}

#[test]
fn roof_is_convex_in_the_state() {
    // roof(l r1 + (1-l) r2) <= l roof(r1) + (1-l) roof(r2) + tol.
    for seed in 0..3u64 {
        let r1 = random_density(Field::Real, 2, 2, 300 + seed).unwrap();
        let r2 = random_density(Field::Real, 2, 2, 400 + seed).unwrap();
        let lambda = 0.3;
        let mixed = DensityMatrix::new(
            Field::Real,
            2,
            r1.matrix()
                .scale(lambda)
                .add(&r2.matrix().scale(1.0 - lambda)),
        )
        .unwrap();
        let objective = |s: &StateVector| pure_tangle_2r(s).unwrap();
        let roof_mix = roof_minimize(&mixed, objective, &small_cfg(seed))
            .unwrap()
            .value;
        let roof_1 = roof_minimize(&r1, objective, &small_cfg(seed + 10))
            .unwrap()
            .value;
        let roof_2 = roof_minimize(&r2, objective, &small_cfg(seed + 20))
            .unwrap()
            .value;
        assert!(
            roof_mix <= lambda * roof_1 + (1.0 - lambda) * roof_2 + 1e-6,
            "seed {seed}: {roof_mix} vs {}",
            lambda * roof_1 + (1.0 - lambda) * roof_2
        );
    }
}

#[test]
fn real_roofs_stay_real() {
    let rho = random_density(Field::Real, 2, 3, 77).unwrap();
    let objective = |s: &StateVector| pure_tangle_2r(s).unwrap();
    let roof = roof_minimize(&rho, objective, &small_cfg(1)).unwrap();
    for state in &roof.best.states {
        assert_eq!(state.field(), Field::Real);
        assert!(state.amps().iter().all(|z| z.im == 0.0));
    }
}

#[test]
fn embedded_support_states_are_ubit_rotations() {
    // For the rank-2 embedding of a pure two-qubit state, every
    // decomposition state lies on the ubit-rotation orbit of xi1: its
    // squared overlaps with xi1 and xi2 = J_U xi1 sum to one.
    let psi = random_pure(Field::Complex, 2, 5);
    let embedding = ubit::embed(&psi.to_density()).unwrap();
    let (xi1, xi2) = ubit::xi_pair(&psi).unwrap();

    let theta: f64 = 0.6;
    let data = vec![
        Complex64::new(theta.cos(), 0.0),
        Complex64::new(-theta.sin(), 0.0),
        Complex64::new(theta.sin(), 0.0),
        Complex64::new(theta.cos(), 0.0),
    ];
    let v = Isometry::try_new(Field::Real, 2, 2, data).unwrap();
    let dec = decomposition_from_isometry(&embedding.rho_uab, &v).unwrap();
    assert_eq!(dec.states.len(), 2);
    for state in &dec.states {
        let o1 = state.inner(&xi1).norm_sqr();
        let o2 = state.inner(&xi2).norm_sqr();
        assert!((o1 + o2 - 1.0).abs() < 1e-12, "overlaps {o1} + {o2}");
    }
    assert!(dec.reconstruction_residual(&embedding.rho_uab) < 1e-10);
}

#[test]
fn flat_roof_of_rho_yy_under_sampling() {
    // Every real decomposition of (1/4)[I + YY] averages to tangle 1; the
    // sampling oracle sees a constant landscape.
    let rho = tangle::catalog::rho_yy();
    let objective = |s: &StateVector| pure_tangle_2r(s).unwrap();
    let min = oracle_sample(&rho, objective, 10_000, 4, 3, Exec::default()).unwrap();
    assert!((min - 1.0).abs() < 1e-12, "sampled minimum {min}");
}

#[test]
fn joint_roof_on_embedded_pure_states_is_flat() {
    // rank-2 embedded pure states: every decomposition achieves tau(psi).
    for seed in 0..3u64 {
        let psi = random_pure(Field::Complex, 2, 600 + seed);
        let tau = pure_tangle_2q_fast(&psi).unwrap();
        let roof = ubit::joint_roof_tangle(&psi.to_density(), &small_cfg(seed)).unwrap();
        assert!(
            (roof.value - tau).abs() < 1e-8,
            "seed {seed}: {} vs {tau}",
            roof.value
        );

        let embedding = ubit::embed(&psi.to_density()).unwrap();
        let sampled = oracle_sample(
            &embedding.rho_uab,
            ubit::joint_objective,
            200,
            4,
            seed,
            Exec::default(),
        )
        .unwrap();
        assert!(
            (sampled - tau).abs() < 1e-10,
            "flat landscape violated: {sampled} vs {tau}"
        );
    }
}

#[test]
fn separate_roofs_lower_bound_the_tangle() {
    // mixed_tangle_2q(rho) >= roof(sigma_A|B) + roof(sigma_UAB): minimizing
    // the two terms with independent decompositions can only undershoot the
    // joint minimization that equals the tangle.
    for seed in 0..2u64 {
        let rho = random_density(Field::Complex, 2, 2, 800 + seed).unwrap();
        let tau = tangle::qubit::mixed_tangle_2q(&rho).unwrap();
        let embedded = ubit::embed(&rho).unwrap();
        let cfg = small_cfg(seed);
        let sigma_ab = roof_minimize(
            &embedded.rho_uab,
            |s: &StateVector| tangle::rebit::pair_sigma(s, ubit::A, ubit::B).unwrap(),
            &cfg,
        )
        .unwrap();
        let sigma_uab = roof_minimize(
            &embedded.rho_uab,
            |s: &StateVector| tangle::rebit::rebit_three_tangle_pure(s).unwrap(),
            &cfg,
        )
        .unwrap();
        assert!(
            tau >= sigma_ab.value + sigma_uab.value - 1e-6,
            "seed {seed}: tau {tau} < {} + {}",
            sigma_ab.value,
            sigma_uab.value
        );
    }
}

#[test]
fn decomposition_cardinality_is_clamped() {
    let rho = random_density(Field::Real, 2, 2, 11).unwrap();
    let objective = |s: &StateVector| pure_tangle_2r(s).unwrap();
    let cfg = RoofConfig {
        m: Some(100),
        restarts: 2,
        ..Default::default()
    };
    let roof = roof_minimize(&rho, objective, &cfg).unwrap();
    // m clamps to 4 * rank = 8.
    assert!(roof.best.states.len() <= 8);

    let too_small = Isometry::identity_embedding(Field::Real, 1, 1);
    assert!(decomposition_from_isometry(&rho, &too_small).is_err());
}

#[test]
fn nonconvergence_is_flagged_not_fatal() {
    let rho = random_density(Field::Complex, 2, 4, 21).unwrap();
    let cfg = RoofConfig {
        restarts: 2,
        max_iters: 1,
        tol: 0.0,
        ..Default::default()
    };
    let objective = |s: &StateVector| pure_tangle_2q_fast(s).unwrap();
    let roof = roof_minimize(&rho, objective, &cfg).unwrap();
    assert!(!roof.converged);
    assert!(roof.residual < 1e-10);
}
