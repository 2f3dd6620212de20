//! Complex-field entanglement measures for two and three qubits.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mat::{kron, pauli_y, psd_sqrt, sym_eig, Field};
use crate::state::{DensityMatrix, StateVector};

pub const ROUTE_TOL: f64 = 1e-10;

fn want_factors(got: usize, expected: usize) -> Result<()> {
    if got != expected {
        return Err(Error::FactorCount {
            expected: if expected == 2 { "2" } else { "3" },
            got,
        });
    }
    Ok(())
}

fn want_complex(field: Field) -> Result<()> {
    if field != Field::Complex {
        return Err(Error::FieldMismatch {
            expected: Field::Complex,
            got: field,
        });
    }
    Ok(())
}

/// The pure two-party tangle along three algebraically equal routes.
#[derive(Debug, Clone, Copy)]
pub struct TangleRoutes {
    /// `4|ad - bc|^2` from the amplitudes.
    pub component_formula: f64,
    /// `4 det(rho_A)` from the reduced density matrix.
    pub det_route: f64,
    /// `2[1 - tr(rho_A^2)]` from the reduced purity.
    pub purity_route: f64,
}

impl TangleRoutes {
    /// Largest pairwise disagreement between the routes.
    pub fn spread(&self) -> f64 {
        let vals = [self.component_formula, self.det_route, self.purity_route];
        let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        hi - lo
    }
}

fn routes_for(psi: &StateVector) -> Result<TangleRoutes> {
    want_factors(psi.n_factors(), 2)?;
    let a = psi.amp(0);
    let b = psi.amp(1);
    let c = psi.amp(2);
    let d = psi.amp(3);
    let component_formula = 4.0 * (a * d - b * c).norm_sqr();

    let rho_a = psi.reduced(&[0])?;
    let m = rho_a.matrix();
    let det = m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0);
    let det_route = 4.0 * det.re;
    let purity_route = 2.0 * (1.0 - rho_a.purity());
    Ok(TangleRoutes {
        component_formula,
        det_route,
        purity_route,
    })
}

/// Routes report for the pure two-qubit tangle.
pub fn pure_tangle_routes(psi: &StateVector) -> Result<TangleRoutes> {
    want_complex(psi.field())?;
    routes_for(psi)
}

/// Pure two-qubit tangle `4|ad - bc|^2`, cross-checked on every call
/// against `4 det(rho_A)` and `2[1 - tr(rho_A^2)]`.
pub fn pure_tangle_2q(psi: &StateVector) -> Result<f64> {
    let routes = pure_tangle_routes(psi)?;
    let spread = routes.spread();
    if spread > ROUTE_TOL {
        return Err(Error::Numerical {
            context: "pure tangle route agreement",
            residual: spread,
        });
    }
    Ok(routes.component_formula)
}

/// Pure two-qubit tangle without the per-call cross-check.
pub fn pure_tangle_2q_fast(psi: &StateVector) -> Result<f64> {
    want_complex(psi.field())?;
    want_factors(psi.n_factors(), 2)?;
    let a = psi.amp(0);
    let b = psi.amp(1);
    let c = psi.amp(2);
    let d = psi.amp(3);
    Ok(4.0 * (a * d - b * c).norm_sqr())
}

/// The spin flip `rho -> (Y(x)Y) rho* (Y(x)Y)` on both parties.
pub fn spin_flip(rho: &DensityMatrix) -> Result<DensityMatrix> {
    want_factors(rho.n_factors(), 2)?;
    let yy = kron(&pauli_y(), &pauli_y())?;
    let flipped = yy.mul(&rho.matrix().conj()).mul(&yy);
    let flipped = if rho.field() == Field::Real {
        flipped.try_real()?
    } else {
        flipped
    };
    Ok(DensityMatrix::trusted(rho.field(), 2, flipped))
}

/// Mixed two-qubit tangle `[max{l1 - l2 - l3 - l4, 0}]^2`.
///
/// The `l_j` are the square roots, in decreasing order, of the eigenvalues
/// of `rho rho~`. The spectrum is extracted from the self-adjoint product
/// `sqrt(rho) rho~ sqrt(rho)`, which keeps all spectral work inside the
/// symmetric eigensolver.
pub fn mixed_tangle_2q(rho: &DensityMatrix) -> Result<f64> {
    want_complex(rho.field())?;
    want_factors(rho.n_factors(), 2)?;
    let root = psd_sqrt(rho.matrix())?;
    let flipped = spin_flip(rho)?;
    let inner = root.mul(flipped.matrix()).mul(&root);
    let eig = sym_eig(&inner)?;
    let mut lambdas = Vec::with_capacity(4);
    for &q in &eig.eigenvalues {
        if q < -1e-10 {
            return Err(Error::Numerical {
                context: "spin-flip spectrum positivity",
                residual: -q,
            });
        }
        // Below the eigensolver resolution the root would amplify noise.
        lambdas.push(if q < crate::mat::EIG_TRUNCATION {
            0.0
        } else {
            q.sqrt()
        });
    }
    let gap = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok(gap.max(0.0).powi(2))
}

/// The three hyperdeterminant contributions of a three-factor pure state.
///
/// With the amplitudes on the corners of a cube, `d1` collects the four
/// body-diagonal products, `d2` the six diagonal-plane products and `d3`
/// the two tetrahedra. Each term is symmetric under relabeling of the
/// factors. For real states every part is exactly real.
#[derive(Debug, Clone, Copy)]
pub struct DTerms {
    pub d1: Complex64,
    pub d2: Complex64,
    pub d3: Complex64,
}

impl DTerms {
    /// The Cayley hyperdeterminant `d1 - 2 d2 + 4 d3`.
    pub fn hyperdeterminant(&self) -> Complex64 {
        self.d1 - 2.0 * self.d2 + 4.0 * self.d3
    }
}

/// Hyperdeterminant terms of a three-factor state of either field.
pub fn d_terms(psi: &StateVector) -> Result<DTerms> {
    want_factors(psi.n_factors(), 3)?;
    let a = |i: usize, j: usize, k: usize| psi.amp(4 * i + 2 * j + k);

    let sq = |z: Complex64| z * z;
    let d1 = sq(a(0, 0, 0)) * sq(a(1, 1, 1))
        + sq(a(0, 0, 1)) * sq(a(1, 1, 0))
        + sq(a(0, 1, 0)) * sq(a(1, 0, 1))
        + sq(a(1, 0, 0)) * sq(a(0, 1, 1));
    let d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1)
        + a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
    let d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1)
        + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
    Ok(DTerms { d1, d2, d3 })
}

/// Three-tangle `4|d1 - 2 d2 + 4 d3|` of a complex three-qubit pure state.
pub fn three_tangle(psi: &StateVector) -> Result<f64> {
    want_complex(psi.field())?;
    Ok(4.0 * d_terms(psi)?.hyperdeterminant().norm())
}

/// Tangle between one factor and the remaining pair of a pure three-factor
/// state: `2[1 - tr(rho_hinge^2)]`, which equals `4 det(rho_hinge)`.
/// Field-independent for pure states.
pub fn bipartite_tangle_pure(psi: &StateVector, hinge: usize) -> Result<f64> {
    want_factors(psi.n_factors(), 3)?;
    if hinge >= 3 {
        return Err(Error::FactorRange {
            index: hinge,
            n_factors: 3,
        });
    }
    let rho = psi.reduced(&[hinge])?;
    let m = rho.matrix();
    let det = (m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0)).re;
    let purity_route = 2.0 * (1.0 - rho.purity());
    let det_route = 4.0 * det;
    let spread = (purity_route - det_route).abs();
    if spread > 1e-12 {
        return Err(Error::Numerical {
            context: "bipartite tangle route agreement",
            residual: spread,
        });
    }
    Ok(purity_route)
}
