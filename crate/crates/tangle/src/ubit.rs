//! The ubit embedding of complex two-qubit states into three-rebit states,
//! and the relations it induces between two-qubit and rebit entanglement.
//!
//! A complex density `rho` on qubits `AB` becomes the real density
//! `rho_UAB = (1/2)[I_U (x) Re(rho) + J_U (x) Im(rho)]` on rebits `(U, A, B)`
//! with the ubit most significant. For a pure `psi = a + i b` the embedding
//! is the equal mixture of `xi1 = |0>(x)a + |1>(x)b` and `xi2 = J_U xi1`,
//! and the two-qubit tangle decomposes as
//! `tau_{A|B} = sigma_{A|B} + sigma_{UAB}`, with hinge-permuted variants.
//! For mixed states the equality survives only as a joint convex roof that
//! forces one decomposition to feed both terms.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mat::{Field, Matrix};
use crate::qubit::pure_tangle_routes;
use crate::rebit::pair_sigma_amps;
use crate::roof::{roof_minimize, RoofConfig, RoofResult};
use crate::sample::{random_pure_with, rng_for};
use crate::state::{DensityMatrix, StateVector};

/// Factor indices in the embedded (U, A, B) order.
pub const U: usize = 0;
pub const A: usize = 1;
pub const B: usize = 2;

// <a| J(x)J |b>, <a| I(x)J |b>, <a| J(x)I |b> on real 4-vectors, with
// J = [[0,-1],[1,0]] and the leftmost factor most significant.
fn jj_form(a: &[f64], b: &[f64]) -> f64 {
    a[0] * b[3] - a[1] * b[2] - a[2] * b[1] + a[3] * b[0]
}

fn ij_form(a: &[f64], b: &[f64]) -> f64 {
    -a[0] * b[1] + a[1] * b[0] - a[2] * b[3] + a[3] * b[2]
}

fn ji_form(a: &[f64], b: &[f64]) -> f64 {
    -a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1]
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn want_complex_two_factor(field: Field, n: usize) -> Result<()> {
    if field != Field::Complex {
        return Err(Error::FieldMismatch {
            expected: Field::Complex,
            got: field,
        });
    }
    if n != 2 {
        return Err(Error::FactorCount {
            expected: "2",
            got: n,
        });
    }
    Ok(())
}

/// A complex two-qubit density together with its three-rebit image.
#[derive(Debug, Clone, Serialize)]
pub struct UbitEmbedding {
    pub source: DensityMatrix,
    pub rho_uab: DensityMatrix,
}

/// Conjugation by `J_U (x) I (x) I`; embedded states are fixed points.
pub fn rotate_ubit_density(rho_uab: &Matrix) -> Matrix {
    // J_U acts on the most significant factor: row blocks (0,1) of size 4.
    let d = rho_uab.rows();
    let h = d / 2;
    Matrix::from_fn(rho_uab.field(), d, d, |i, j| {
        // (J rho J^T)_{ij} with J e0 = e1, J e1 = -e0 on the block index.
        let (bi, ri) = (i / h, i % h);
        let (bj, rj) = (j / h, j % h);
        let sign_i = if bi == 0 { -1.0 } else { 1.0 };
        let sign_j = if bj == 0 { -1.0 } else { 1.0 };
        rho_uab.get((1 - bi) * h + ri, (1 - bj) * h + rj) * sign_i * sign_j
    })
}

/// `J_U` applied to a state vector on (U, A, B).
pub fn rotate_ubit_state(phi: &StateVector) -> StateVector {
    let h = phi.dim() / 2;
    let mut amps = vec![Complex64::new(0.0, 0.0); phi.dim()];
    for k in 0..h {
        amps[k] = -phi.amp(h + k);
        amps[h + k] = phi.amp(k);
    }
    StateVector {
        field: phi.field(),
        n_factors: phi.n_factors(),
        amps,
    }
}

const EMBED_SPOT_CHECKS: usize = 4;
const EMBED_SPOT_TOL: f64 = 1e-12;

/// Embeds a complex two-qubit density as a real three-rebit density.
///
/// The measurement-operator map `Pi -> I_U (x) Re(Pi) + J_U (x) Im(Pi)` is
/// exercised here as a built-in spot check: a few random projectors must
/// give `tr(Pi rho) = tr(P rho_UAB)` to 1e-12.
pub fn embed(rho_ab: &DensityMatrix) -> Result<UbitEmbedding> {
    want_complex_two_factor(rho_ab.field(), rho_ab.n_factors())?;
    let src = rho_ab.matrix();
    let re = Matrix::from_fn(Field::Real, 4, 4, |i, j| {
        Complex64::new(src.get(i, j).re, 0.0)
    });
    let im = Matrix::from_fn(Field::Real, 4, 4, |i, j| {
        Complex64::new(src.get(i, j).im, 0.0)
    });
    let i_u = crate::mat::eye2(Field::Real);
    let j_u = crate::mat::j2();
    let rho_uab_mat = crate::mat::kron(&i_u, &re)?
        .add(&crate::mat::kron(&j_u, &im)?)
        .scale(0.5);
    let rho_uab = DensityMatrix::new(Field::Real, 3, rho_uab_mat)?;

    let mut rng = rng_for(0x0b17);
    for _ in 0..EMBED_SPOT_CHECKS {
        let probe = random_pure_with(&mut rng, Field::Complex, 2);
        let pi = probe.to_density();
        let lhs = pi.matrix().trace_product_re(src);
        let pi_re = Matrix::from_fn(Field::Real, 4, 4, |i, j| {
            Complex64::new(pi.matrix().get(i, j).re, 0.0)
        });
        let pi_im = Matrix::from_fn(Field::Real, 4, 4, |i, j| {
            Complex64::new(pi.matrix().get(i, j).im, 0.0)
        });
        let p = crate::mat::kron(&i_u, &pi_re)?.add(&crate::mat::kron(&j_u, &pi_im)?);
        let rhs = p.trace_product_re(rho_uab.matrix());
        if (lhs - rhs).abs() > EMBED_SPOT_TOL {
            return Err(Error::Numerical {
                context: "embedding probability preservation",
                residual: (lhs - rhs).abs(),
            });
        }
    }
    Ok(UbitEmbedding {
        source: rho_ab.clone(),
        rho_uab,
    })
}

/// The orthogonal pure pair whose equal mixture is the embedding of
/// `|psi><psi|`: `xi1 = |0>(x)a + |1>(x)b` and `xi2 = J_U xi1`.
pub fn xi_pair(psi: &StateVector) -> Result<(StateVector, StateVector)> {
    want_complex_two_factor(psi.field(), psi.n_factors())?;
    let split = psi.split();
    let mut amps1 = vec![Complex64::new(0.0, 0.0); 8];
    for k in 0..4 {
        amps1[k] = Complex64::new(split.a[k], 0.0);
        amps1[4 + k] = Complex64::new(split.b[k], 0.0);
    }
    let xi1 = StateVector {
        field: Field::Real,
        n_factors: 3,
        amps: amps1,
    };
    let xi2 = rotate_ubit_state(&xi1);
    Ok((xi1, xi2))
}

/// Closed form of the rebit three-tangle of `xi1` for `psi = a + i b`:
/// `4[(<a|a><b|b> - <a|b>^2) - <a|J(x)I|b>^2 - <a|I(x)J|b>^2]`.
pub fn sigma_uab_rank2(psi: &StateVector) -> Result<f64> {
    want_complex_two_factor(psi.field(), psi.n_factors())?;
    let split = psi.split();
    let (a, b) = (&split.a[..], &split.b[..]);
    Ok(4.0
        * ((dot(a, a) * dot(b, b) - dot(a, b).powi(2))
            - ji_form(a, b).powi(2)
            - ij_form(a, b).powi(2)))
}

/// Residual of the four-term operator identity behind the pure-state
/// theorem:
/// `<a|a><b|b> + <a|JJ|a><b|JJ|b>
///  = <a|b>^2 + <a|IJ|b>^2 + <a|JI|b>^2 + <a|JJ|b>^2`
/// for arbitrary real 4-vectors (no normalization required).
pub fn identity_check(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), 4);
    assert_eq!(b.len(), 4);
    let lhs = dot(a, a) * dot(b, b) + jj_form(a, a) * jj_form(b, b);
    let rhs =
        dot(a, b).powi(2) + ij_form(a, b).powi(2) + ji_form(a, b).powi(2) + jj_form(a, b).powi(2);
    (lhs - rhs).abs()
}

/// Every quantity in the pure-state relation between the two-qubit tangle
/// and the rebit measures of the embedded state, with the residuals of the
/// identities they satisfy.
#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    /// `tau_{A|B}` from the amplitude formula (routes cross-checked).
    pub tau_ab: f64,
    /// `tau_{A|B}` from the split form `[<a|JJ|a> - <b|JJ|b>]^2 + 4<a|JJ|b>^2`.
    pub tau_ab_split: f64,
    /// `sigma_{A|B} = [<a|JJ|a> + <b|JJ|b>]^2`.
    pub sigma_ab: f64,
    /// Rebit three-tangle of the embedded rank-2 state.
    pub sigma_uab: f64,
    pub sigma_a_ub: f64,
    pub sigma_a_u: f64,
    pub sigma_b_ua: f64,
    pub sigma_b_u: f64,
    /// Disagreement between the two `tau` routes.
    pub residual_tau_routes: f64,
    /// `|tau - (sigma_ab + sigma_uab)|`.
    pub residual_sum_form: f64,
    /// `|tau - (sigma_{A|UB} - sigma_{A|U})|`.
    pub residual_hinge_a: f64,
    /// `|tau - (sigma_{B|UA} - sigma_{B|U})|`.
    pub residual_hinge_b: f64,
}

impl RelationReport {
    pub fn max_residual(&self) -> f64 {
        self.residual_tau_routes
            .max(self.residual_sum_form)
            .max(self.residual_hinge_a)
            .max(self.residual_hinge_b)
    }
}

/// Computes the full relation report for a pure two-qubit state.
pub fn relation_report(psi: &StateVector) -> Result<RelationReport> {
    want_complex_two_factor(psi.field(), psi.n_factors())?;
    let routes = pure_tangle_routes(psi)?;
    let tau_ab = routes.component_formula;

    let split = psi.split();
    let (a, b) = (&split.a[..], &split.b[..]);
    let tau_ab_split = (jj_form(a, a) - jj_form(b, b)).powi(2) + 4.0 * jj_form(a, b).powi(2);
    let sigma_ab = (jj_form(a, a) + jj_form(b, b)).powi(2);
    let sigma_uab = sigma_uab_rank2(psi)?;

    let (xi1, _) = xi_pair(psi)?;
    let sigma_a_ub = crate::rebit::rebit_bipartite(&xi1, A)?;
    let sigma_a_u = crate::rebit::pair_sigma(&xi1, U, A)?;
    let sigma_b_ua = crate::rebit::rebit_bipartite(&xi1, B)?;
    let sigma_b_u = crate::rebit::pair_sigma(&xi1, U, B)?;

    Ok(RelationReport {
        tau_ab,
        tau_ab_split,
        sigma_ab,
        sigma_uab,
        sigma_a_ub,
        sigma_a_u,
        sigma_b_ua,
        sigma_b_u,
        residual_tau_routes: (tau_ab - tau_ab_split).abs().max(routes.spread()),
        residual_sum_form: (tau_ab - (sigma_ab + sigma_uab)).abs(),
        residual_hinge_a: (tau_ab - (sigma_a_ub - sigma_a_u)).abs(),
        residual_hinge_b: (tau_ab - (sigma_b_ua - sigma_b_u)).abs(),
    })
}

/// The joint-roof objective on pure (U, A, B) states:
/// `sigma_{A|B}(phi) + sigma_{UAB}(phi)`.
pub fn joint_objective(phi: &StateVector) -> f64 {
    let sigma_ab = pair_sigma_amps(phi.amps(), 3, A, B);
    let sigma_uab = 4.0
        * crate::qubit::d_terms(phi)
            .expect("three-factor state")
            .hyperdeterminant()
            .re;
    sigma_ab + sigma_uab
}

/// The hinge form of the same objective:
/// `sigma_{A|UB}(phi) - sigma_{A|U}(phi)`. Agrees with
/// [`joint_objective`] pointwise on pure states.
pub fn hinge_objective(phi: &StateVector) -> f64 {
    let sigma_a_ub = crate::rebit::rebit_bipartite(phi, A).expect("real (U,A,B) state");
    let sigma_a_u = pair_sigma_amps(phi.amps(), 3, U, A);
    sigma_a_ub - sigma_a_u
}

/// Two-qubit tangle of `rho_AB` recovered as a joint convex roof over
/// decompositions of the embedded `rho_UAB`, with
/// `sigma_{A|B} + sigma_{UAB}` evaluated on the same ensemble.
///
/// Unless overridden, the cardinality is 4 for embeddings of pure states
/// (rank 2) and twice the rank otherwise.
pub fn joint_roof_tangle(rho_ab: &DensityMatrix, cfg: &RoofConfig) -> Result<RoofResult> {
    let embedding = embed(rho_ab)?;
    let rank = embedding.rho_uab.rank()?;
    let mut cfg = cfg.clone();
    cfg.m = Some(cfg.m.unwrap_or(if rank == 2 { 4 } else { 2 * rank }));
    roof_minimize(&embedding.rho_uab, joint_objective, &cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{bell, mixed_i4, prod_i};
    use crate::sample::random_pure;

    #[test]
    fn embed_real_pure_state() {
        // A real pure state embeds as (1/2) I_U (x) |a><a|.
        let psi = bell().to_complex();
        let e = embed(&psi.to_density()).unwrap();
        let expected =
            crate::mat::kron(&crate::mat::eye2(Field::Real), bell().to_density().matrix())
                .unwrap()
                .scale(0.5);
        assert!(e.rho_uab.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn embed_completely_mixed() {
        let e = embed(&mixed_i4()).unwrap();
        let i8m = Matrix::identity(Field::Real, 8).scale(0.125);
        assert!(e.rho_uab.matrix().max_abs_diff(&i8m) < 1e-15);
    }

    #[test]
    fn embed_rejects_real_tag() {
        assert!(matches!(
            embed(&crate::catalog::rho_yy()),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn embedding_invariant_under_ubit_rotation() {
        for seed in 0..20 {
            let rho =
                crate::sample::random_density(Field::Complex, 2, 1 + (seed as usize % 4), seed)
                    .unwrap();
            let e = embed(&rho).unwrap();
            let rotated = rotate_ubit_density(e.rho_uab.matrix());
            assert!(e.rho_uab.matrix().max_abs_diff(&rotated) < 1e-12);
        }
    }

    #[test]
    fn prod_i_embedding_reduction() {
        // The AB reduction of the embedded product state is the equal
        // mixture of (|00> - |11>)/sqrt(2) and (|01> + |10>)/sqrt(2).
        let e = embed(&prod_i().to_density()).unwrap();
        let red = e.rho_uab.reduced(&[A, B]).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let m1 = StateVector::real(2, &[s, 0.0, 0.0, -s])
            .unwrap()
            .to_density();
        let m2 = StateVector::real(2, &[0.0, s, s, 0.0])
            .unwrap()
            .to_density();
        let expected = m1.matrix().scale(0.5).add(&m2.matrix().scale(0.5));
        assert!(red.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn xi_pair_structure() {
        // Real psi: xi1 = |0>(x)psi, xi2 = |1>(x)psi.
        let psi = bell().to_complex();
        let (xi1, xi2) = xi_pair(&psi).unwrap();
        for k in 0..4 {
            assert_eq!(xi1.amp(k), psi.amp(k));
            assert_eq!(xi1.amp(4 + k), Complex64::new(0.0, 0.0));
            assert_eq!(xi2.amp(4 + k), psi.amp(k));
        }

        // Purely imaginary psi: xi1 = |1>(x)b.
        let imag = StateVector::new(
            Field::Complex,
            2,
            vec![
                Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2),
            ],
        )
        .unwrap();
        let (xi1, _) = xi_pair(&imag).unwrap();
        for k in 0..4 {
            assert_eq!(xi1.amp(k), Complex64::new(0.0, 0.0));
        }

        // Orthogonality holds exactly when the sum is paired as
        // `a_k (-b_k) + b_k a_k`; the plain inner product only cancels to
        // rounding.
        for seed in 0..20 {
            let psi = random_pure(Field::Complex, 2, seed);
            let (xi1, xi2) = xi_pair(&psi).unwrap();
            let paired: Complex64 = (0..4)
                .map(|k| xi1.amp(k).conj() * xi2.amp(k) + xi1.amp(4 + k).conj() * xi2.amp(4 + k))
                .sum();
            assert_eq!(paired, Complex64::new(0.0, 0.0));
            assert!(xi1.inner(&xi2).norm() < 1e-15);
            let mix = xi1
                .to_density()
                .matrix()
                .scale(0.5)
                .add(&xi2.to_density().matrix().scale(0.5));
            let e = embed(&psi.to_density()).unwrap();
            assert!(mix.max_abs_diff(e.rho_uab.matrix()) < 1e-14);
        }
    }

    #[test]
    fn sigma_uab_examples() {
        let real_psi = bell().to_complex();
        assert_eq!(sigma_uab_rank2(&real_psi).unwrap(), 0.0);

        assert!((sigma_uab_rank2(&prod_i()).unwrap() + 1.0).abs() < 1e-15);

        // Closed form equals the three-tangle of xi1.
        for seed in 0..50 {
            let psi = random_pure(Field::Complex, 2, seed);
            let (xi1, _) = xi_pair(&psi).unwrap();
            let direct = crate::rebit::rebit_three_tangle_pure(&xi1).unwrap();
            assert!((sigma_uab_rank2(&psi).unwrap() - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_check_cases() {
        assert_eq!(
            identity_check(&[1.0, 0.0, 0.0, 0.0], &[1.0, 0.0, 0.0, 0.0]),
            0.0
        );
        assert_eq!(
            identity_check(&[0.3, 0.1, -0.2, 0.5], &[0.0, 0.0, 0.0, 0.0]),
            0.0
        );
    }

    #[test]
    fn relation_report_prod_i() {
        let r = relation_report(&prod_i()).unwrap();
        assert!(r.tau_ab.abs() < 1e-12);
        assert!((r.sigma_ab - 1.0).abs() < 1e-12);
        assert!((r.sigma_uab + 1.0).abs() < 1e-12);
        assert!((r.sigma_a_ub - 1.0).abs() < 1e-12);
        assert!((r.sigma_a_u - 1.0).abs() < 1e-12);
        assert!(r.max_residual() < 1e-10);
    }

    #[test]
    fn relation_report_real_bell() {
        let r = relation_report(&bell().to_complex()).unwrap();
        assert!((r.tau_ab - 1.0).abs() < 1e-12);
        assert!((r.sigma_ab - 1.0).abs() < 1e-12);
        assert!(r.sigma_uab.abs() < 1e-12);
        assert!(r.max_residual() < 1e-10);
    }

    #[test]
    fn objectives_agree_pointwise() {
        for seed in 0..100 {
            let phi = random_pure(Field::Real, 3, 1000 + seed);
            let diff = (joint_objective(&phi) - hinge_objective(&phi)).abs();
            assert!(diff < 1e-10, "seed {seed}: {diff}");
        }
    }

    #[test]
    fn hinge_choice_does_not_matter() {
        // The three hinge expressions of the three-tangle coincide on pure
        // (U, A, B) states.
        use crate::rebit::{pair_sigma, rebit_bipartite};
        for seed in 0..100 {
            let phi = random_pure(Field::Real, 3, 2000 + seed);
            let via_u = rebit_bipartite(&phi, U).unwrap()
                - pair_sigma(&phi, U, A).unwrap()
                - pair_sigma(&phi, U, B).unwrap();
            let via_a = rebit_bipartite(&phi, A).unwrap()
                - pair_sigma(&phi, A, U).unwrap()
                - pair_sigma(&phi, A, B).unwrap();
            let via_b = rebit_bipartite(&phi, B).unwrap()
                - pair_sigma(&phi, B, U).unwrap()
                - pair_sigma(&phi, B, A).unwrap();
            assert!((via_u - via_a).abs() < 1e-10, "seed {seed}");
            assert!((via_u - via_b).abs() < 1e-10, "seed {seed}");
        }
    }

    #[test]
    fn xi1_ubit_reduction_is_the_gram_matrix() {
        // Tracing |xi1><xi1| over A and B leaves [[<a|a>, <a|b>], [<a|b>, <b|b>]].
        for seed in 0..20 {
            let psi = random_pure(Field::Complex, 2, 500 + seed);
            let split = psi.split();
            let (xi1, _) = xi_pair(&psi).unwrap();
            let rho_u = xi1.to_density().reduced(&[U]).unwrap();
            let aa = split.norm_sq_a();
            let bb = split.norm_sq_b();
            let ab: f64 = split.a.iter().zip(&split.b).map(|(x, y)| x * y).sum();
            assert!((rho_u.matrix().get(0, 0).re - aa).abs() < 1e-14);
            assert!((rho_u.matrix().get(1, 1).re - bb).abs() < 1e-14);
            assert!((rho_u.matrix().get(0, 1).re - ab).abs() < 1e-14);
            assert!((rho_u.matrix().get(1, 0).re - ab).abs() < 1e-14);
        }
    }

    #[test]
    fn objectives_invariant_under_ubit_rotation() {
        for seed in 0..50 {
            let psi = random_pure(Field::Complex, 2, seed);
            let (xi1, _) = xi_pair(&psi).unwrap();
            let rotated = rotate_ubit_state(&xi1);
            assert!((joint_objective(&xi1) - joint_objective(&rotated)).abs() < 1e-12);
        }
    }
}
