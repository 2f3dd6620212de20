//! Seeded sampling of pure states and density matrices.
//!
//! Pure states are uniform on the unit sphere of the tagged field (Gaussian
//! components, normalized). Mixed states are explicit mixtures of random
//! pure states with flat-Dirichlet weights; that gives valid, reproducible
//! densities of controlled rank without any claim to a canonical measure.
//! All draws are `ChaCha8`-seeded, so parallel callers use independent
//! seeds instead of a shared generator.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::mat::{Field, Matrix};
use crate::state::{DensityMatrix, StateVector};

pub(crate) fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn random_pure_with(
    rng: &mut ChaCha8Rng,
    field: Field,
    n_factors: usize,
) -> StateVector {
    let dim = 1usize << n_factors;
    loop {
        let amps: Vec<Complex64> = (0..dim)
            .map(|_| match field {
                Field::Real => Complex64::new(rng.sample(StandardNormal), 0.0),
                Field::Complex => {
                    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
                }
            })
            .collect();
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-12 {
            let amps = amps.into_iter().map(|z| z / norm).collect();
            return StateVector {
                field,
                n_factors,
                amps,
            };
        }
    }
}

/// Uniform pure state on the unit sphere; deterministic per seed.
pub fn random_pure(field: Field, n_factors: usize, seed: u64) -> StateVector {
    random_pure_with(&mut rng_for(seed), field, n_factors)
}

/// Mixture of `rank` random pure states with flat-Dirichlet weights.
pub fn random_density(
    field: Field,
    n_factors: usize,
    rank: usize,
    seed: u64,
) -> Result<DensityMatrix> {
    let dim = 1usize << n_factors;
    if rank == 0 || rank > dim {
        return Err(Error::RankRange { rank, max: dim });
    }
    let mut rng = rng_for(seed);
    let states: Vec<StateVector> = (0..rank)
        .map(|_| random_pure_with(&mut rng, field, n_factors))
        .collect();
    // Normalized exponentials give a flat Dirichlet over the weights.
    let draws: Vec<f64> = (0..rank)
        .map(|_| -rng.gen_range(1e-12..1.0f64).ln())
        .collect();
    let total: f64 = draws.iter().sum();
    let mut mat = Matrix::zeros(field, dim, dim);
    for (state, w) in states.iter().zip(&draws) {
        mat = mat.add(&state.to_density().matrix().scale(w / total));
    }
    Ok(DensityMatrix::trusted(field, n_factors, mat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::validate_density;

    #[test]
    fn deterministic_per_seed() {
        let a = random_pure(Field::Real, 3, 42);
        let b = random_pure(Field::Real, 3, 42);
        assert_eq!(a, b);
        let c = random_pure(Field::Real, 3, 43);
        assert_ne!(a, c);
    }

    #[test]
    fn normalized_complex() {
        let s = random_pure(Field::Complex, 2, 7);
        let norm: f64 = s.amps().iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        assert_eq!(s.field(), Field::Complex);
    }

    #[test]
    fn real_tag_means_real() {
        let s = random_pure(Field::Real, 2, 11);
        assert!(s.amps().iter().all(|z| z.im == 0.0));
    }

    #[test]
    fn amplitude_mean_matches_sphere_statistics() {
        // For a uniform point on the real unit sphere in dimension d,
        // E|a_0|^2 = 1/d and Var(|a_0|^2) = 3/(d(d+2)) - 1/d^2. The
        // empirical mean over n samples must sit within 3 sigma of 1/d.
        let n = 100_000u64;
        let d = 8.0;
        let mut sum = 0.0;
        for i in 0..n {
            sum += random_pure(Field::Real, 3, i).amp(0).norm_sqr();
        }
        let mean = sum / n as f64;
        let var = 3.0 / (d * (d + 2.0)) - 1.0 / (d * d);
        let bound = 3.0 * (var / n as f64).sqrt();
        assert!(
            (mean - 1.0 / d).abs() < bound,
            "mean {mean} outside {bound}"
        );
    }

    #[test]
    fn rank_one_density_is_pure() {
        let rho = random_density(Field::Complex, 2, 1, 3).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rank_bound_respected() {
        let rho = random_density(Field::Real, 2, 4, 5).unwrap();
        let eig = rho.eig().unwrap();
        let numerical_rank = eig.eigenvalues.iter().filter(|&&q| q > 1e-10).count();
        assert!(numerical_rank <= 4);

        let rho2 = random_density(Field::Real, 2, 2, 6).unwrap();
        let rank2 = rho2
            .eig()
            .unwrap()
            .eigenvalues
            .iter()
            .filter(|&&q| q > 1e-10)
            .count();
        assert!(rank2 <= 2);
    }

    #[test]
    fn rank_out_of_range() {
        assert!(matches!(
            random_density(Field::Real, 2, 5, 0),
            Err(Error::RankRange { .. })
        ));
        assert!(matches!(
            random_density(Field::Real, 2, 0, 0),
            Err(Error::RankRange { .. })
        ));
    }

    #[test]
    fn bulk_densities_validate() {
        for seed in 0..1000 {
            let rank = 1 + (seed as usize % 4);
            let rho = random_density(Field::Complex, 2, rank, seed).unwrap();
            assert!(validate_density(rho.field(), rho.n_factors(), rho.matrix()).pass());
        }
    }
}
