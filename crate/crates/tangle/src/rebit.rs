//! Real-field entanglement measures for two and three rebits.
//!
//! The mixed two-rebit tangle has a closed form: the square of the trace of
//! `(Y(x)Y) rho`, with `Y(x)Y = -J(x)J` real. No `max{., 0}` clamp is
//! applied anywhere here — the square is already non-negative, and porting
//! the qubit clamp over would be wrong. The three-rebit tangle is the signed
//! quantity `4(d1 - 2 d2 + 4 d3)` and can reach -1.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mat::{yy_real, Field};
use crate::qubit::d_terms;
use crate::state::{DensityMatrix, StateVector};

fn want_real(field: Field) -> Result<()> {
    if field != Field::Real {
        return Err(Error::FieldMismatch {
            expected: Field::Real,
            got: field,
        });
    }
    Ok(())
}

fn want_factors(got: usize, expected: usize) -> Result<()> {
    if got != expected {
        return Err(Error::FactorCount {
            expected: if expected == 2 { "2" } else { "3" },
            got,
        });
    }
    Ok(())
}

/// Pure two-rebit tangle `4(ad - bc)^2`, cross-checked against
/// `4 det(rho_A)` on every call.
pub fn pure_tangle_2r(phi: &StateVector) -> Result<f64> {
    want_real(phi.field())?;
    want_factors(phi.n_factors(), 2)?;
    let a = phi.amp(0).re;
    let b = phi.amp(1).re;
    let c = phi.amp(2).re;
    let d = phi.amp(3).re;
    let value = 4.0 * (a * d - b * c).powi(2);

    // rho_A = [[a^2 + b^2, ac + bd], [ac + bd, c^2 + d^2]].
    let det_route = 4.0 * ((a * a + b * b) * (c * c + d * d) - (a * c + b * d).powi(2));
    if (value - det_route).abs() > 1e-12 {
        return Err(Error::Numerical {
            context: "rebit pure tangle route agreement",
            residual: (value - det_route).abs(),
        });
    }
    Ok(value)
}

/// Mixed two-rebit tangle `(tr[(Y(x)Y) rho])^2`.
pub fn mixed_tangle_2r(rho: &DensityMatrix) -> Result<f64> {
    want_real(rho.field())?;
    want_factors(rho.n_factors(), 2)?;
    let t = yy_real().trace_product_re(rho.matrix());
    Ok(t * t)
}

/// Signed three-rebit tangle `4(d1 - 2 d2 + 4 d3)`, in `[-1, 1]`.
pub fn rebit_three_tangle_pure(phi: &StateVector) -> Result<f64> {
    want_real(phi.field())?;
    let d = d_terms(phi)?;
    Ok(4.0 * d.hyperdeterminant().re)
}

/// Tangle between one rebit and the remaining pair, `4 det(rho_hinge)`.
pub fn rebit_bipartite(phi: &StateVector, hinge: usize) -> Result<f64> {
    want_real(phi.field())?;
    want_factors(phi.n_factors(), 3)?;
    if hinge >= 3 {
        return Err(Error::FactorRange {
            index: hinge,
            n_factors: 3,
        });
    }
    Ok(hinge_det_amps(phi.amps(), 3, hinge))
}

/// Mixed tangle of the `(i, j)` pair of a pure three-rebit state: the trace
/// formula evaluated on the reduction, expanded in the amplitudes.
pub fn pair_sigma(phi: &StateVector, i: usize, j: usize) -> Result<f64> {
    want_real(phi.field())?;
    want_factors(phi.n_factors(), 3)?;
    if i == j {
        return Err(Error::FactorSubset(vec![i, j]));
    }
    if i >= 3 || j >= 3 {
        return Err(Error::FactorRange {
            index: i.max(j),
            n_factors: 3,
        });
    }
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    Ok(pair_sigma_amps(phi.amps(), 3, lo, hi))
}

/// `4 det(rho_hinge)` straight from the amplitudes, for optimizer inner
/// loops on real states.
pub(crate) fn hinge_det_amps(amps: &[Complex64], n: usize, hinge: usize) -> f64 {
    debug_assert!(hinge < n);
    let shift = n - 1 - hinge;
    let rest = 1usize << (n - 1);
    let mut r00 = 0.0;
    let mut r11 = 0.0;
    let mut r01 = 0.0;
    for t in 0..rest {
        // Insert the hinge bit into position `shift` of the flat index.
        let high = (t >> shift) << (shift + 1);
        let low = t & ((1 << shift) - 1);
        let base = high | low;
        let x0 = amps[base].re;
        let x1 = amps[base | (1 << shift)].re;
        r00 += x0 * x0;
        r11 += x1 * x1;
        r01 += x0 * x1;
    }
    4.0 * (r00 * r11 - r01 * r01)
}

/// `pair_sigma` straight from the amplitudes, for optimizer inner loops.
///
/// `sigma = 4 [sum_k (a_{i=0,j=1,k} a_{i=1,j=0,k} - a_{i=0,j=0,k} a_{i=1,j=1,k})]^2`,
/// the expansion of the trace formula on the `(i, j)` reduction.
pub(crate) fn pair_sigma_amps(amps: &[Complex64], n: usize, i: usize, j: usize) -> f64 {
    debug_assert!(i < n && j < n && i != j);
    let shift_i = n - 1 - i;
    let shift_j = n - 1 - j;
    let rest: Vec<usize> = (0..n).filter(|&f| f != i && f != j).collect();
    let mut t = 0.0;
    for k in 0..(1usize << rest.len()) {
        let mut base = 0usize;
        for (pos, &f) in rest.iter().enumerate() {
            let bit = (k >> (rest.len() - 1 - pos)) & 1;
            base |= bit << (n - 1 - f);
        }
        let a01 = amps[base | (1 << shift_j)].re;
        let a10 = amps[base | (1 << shift_i)].re;
        let a00 = amps[base].re;
        let a11 = amps[base | (1 << shift_i) | (1 << shift_j)].re;
        t += a01 * a10 - a00 * a11;
    }
    4.0 * t * t
}

/// One outcome of a projective measurement: its probability, the collapsed
/// (renormalized) state of the full system, and a label like `q0=1,q2=0`.
#[derive(Debug, Clone)]
pub struct MeasurementOutcome {
    pub probability: f64,
    pub state: StateVector,
    pub label: String,
}

/// Born-rule ensemble from measuring a factor subset in the computational
/// basis. Outcomes below probability 1e-14 are dropped rather than
/// renormalized from numerical noise.
#[derive(Debug, Clone)]
pub struct MeasurementEnsemble {
    pub outcomes: Vec<MeasurementOutcome>,
}

impl MeasurementEnsemble {
    pub fn total_probability(&self) -> f64 {
        self.outcomes.iter().map(|o| o.probability).sum()
    }

    /// Ensemble average of a pure-state functional over the outcomes.
    pub fn average(&self, f: impl Fn(&StateVector) -> f64) -> f64 {
        self.outcomes
            .iter()
            .map(|o| o.probability * f(&o.state))
            .sum()
    }
}

const OUTCOME_CUTOFF: f64 = 1e-14;

/// Projective measurement of `factors` in the `{|0>, |1>}` basis.
pub fn project_measure(phi: &StateVector, factors: &[usize]) -> Result<MeasurementEnsemble> {
    let n = phi.n_factors();
    let sorted_unique = factors.windows(2).all(|w| w[0] < w[1]);
    if factors.is_empty() || !sorted_unique || factors.iter().any(|&f| f >= n) {
        return Err(Error::FactorSubset(factors.to_vec()));
    }
    let mut outcomes = Vec::new();
    for bits in 0..(1usize << factors.len()) {
        let matches = |idx: usize| {
            factors.iter().enumerate().all(|(pos, &f)| {
                let want = (bits >> (factors.len() - 1 - pos)) & 1;
                (idx >> (n - 1 - f)) & 1 == want
            })
        };
        let probability: f64 = (0..phi.dim())
            .filter(|&idx| matches(idx))
            .map(|idx| phi.amp(idx).norm_sqr())
            .sum();
        if probability < OUTCOME_CUTOFF {
            continue;
        }
        let scale = 1.0 / probability.sqrt();
        let amps: Vec<Complex64> = (0..phi.dim())
            .map(|idx| {
                if matches(idx) {
                    phi.amp(idx) * scale
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        let label = factors
            .iter()
            .enumerate()
            .map(|(pos, &f)| format!("q{f}={}", (bits >> (factors.len() - 1 - pos)) & 1))
            .collect::<Vec<_>>()
            .join(",");
        outcomes.push(MeasurementOutcome {
            probability,
            state: StateVector {
                field: phi.field(),
                n_factors: n,
                amps,
            },
            label,
        });
    }
    Ok(MeasurementEnsemble { outcomes })
}
