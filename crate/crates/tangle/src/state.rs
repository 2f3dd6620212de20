//! State vectors, density matrices, validation and the JSON wire schema.

use num_complex::Complex64;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::mat::{partial_trace, sym_eig, Field, Matrix};

pub const NORM_TOL: f64 = 1e-12;

/// Normalized pure state over one to three two-dimensional factors.
///
/// Amplitudes are indexed with the leftmost factor most significant:
/// `|ijk>` sits at flat index `4i + 2j + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub(crate) field: Field,
    pub(crate) n_factors: usize,
    pub(crate) amps: Vec<Complex64>,
}

impl StateVector {
    pub fn new(field: Field, n_factors: usize, amps: Vec<Complex64>) -> Result<StateVector> {
        if !(1..=3).contains(&n_factors) {
            return Err(Error::FactorCount {
                expected: "1..=3",
                got: n_factors,
            });
        }
        if amps.len() != 1 << n_factors {
            return Err(Error::Shape(format!(
                "expected {} amplitudes for {} factors, got {}",
                1 << n_factors,
                n_factors,
                amps.len()
            )));
        }
        if field == Field::Real {
            if let Some(idx) = amps.iter().position(|z| z.im != 0.0) {
                return Err(Error::RealTagViolation {
                    index: idx,
                    im: amps[idx].im,
                });
            }
        }
        let norm_sq: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        let residual = (norm_sq - 1.0).abs();
        if residual > NORM_TOL {
            return Err(Error::NotNormalized { residual });
        }
        Ok(StateVector {
            field,
            n_factors,
            amps,
        })
    }

    /// Real state from raw amplitudes.
    pub fn real(n_factors: usize, amps: &[f64]) -> Result<StateVector> {
        StateVector::new(
            Field::Real,
            n_factors,
            amps.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n_factors(&self) -> usize {
        self.n_factors
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, i: usize) -> Complex64 {
        self.amps[i]
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Views the state as complex-tagged; amplitudes are unchanged.
    pub fn to_complex(&self) -> StateVector {
        StateVector {
            field: Field::Complex,
            ..self.clone()
        }
    }

    /// Retags as real; fails unless every imaginary part is exactly zero.
    pub fn try_real(&self) -> Result<StateVector> {
        if let Some(idx) = self.amps.iter().position(|z| z.im != 0.0) {
            return Err(Error::RealTagViolation {
                index: idx,
                im: self.amps[idx].im,
            });
        }
        Ok(StateVector {
            field: Field::Real,
            ..self.clone()
        })
    }

    /// The projector `|psi><psi|` as a density matrix.
    pub fn to_density(&self) -> DensityMatrix {
        let d = self.dim();
        let mat = Matrix::from_fn(self.field, d, d, |i, j| self.amps[i] * self.amps[j].conj());
        DensityMatrix::trusted(self.field, self.n_factors, mat)
    }

    /// Reduced density matrix on the kept factors (sorted, non-empty).
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.n_factors;
        let sorted_unique = keep.windows(2).all(|w| w[0] < w[1]);
        if keep.is_empty() || !sorted_unique || keep.iter().any(|&k| k >= n) {
            return Err(Error::FactorSubset(keep.to_vec()));
        }
        let traced: Vec<usize> = (0..n).filter(|f| !keep.contains(f)).collect();
        let dim_keep = 1usize << keep.len();
        let dim_traced = 1usize << traced.len();
        let place = |bits: usize, positions: &[usize]| -> usize {
            let mut flat = 0;
            for (pos, &f) in positions.iter().enumerate() {
                let bit = (bits >> (positions.len() - 1 - pos)) & 1;
                flat |= bit << (n - 1 - f);
            }
            flat
        };
        let mat = Matrix::from_fn(self.field, dim_keep, dim_keep, |i, j| {
            let mut sum = Complex64::new(0.0, 0.0);
            for t in 0..dim_traced {
                let row = place(i, keep) | place(t, &traced);
                let col = place(j, keep) | place(t, &traced);
                sum += self.amps[row] * self.amps[col].conj();
            }
            sum
        });
        Ok(DensityMatrix::trusted(self.field, keep.len(), mat))
    }

    /// Reorders the tensor factors: factor `perm[f]` of the result is
    /// factor `f` of the input.
    pub fn permute_factors(&self, perm: &[usize]) -> Result<StateVector> {
        let n = self.n_factors;
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::FactorSubset(perm.to_vec()));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (idx, &a) in self.amps.iter().enumerate() {
            let mut target = 0;
            for (f, &p) in perm.iter().enumerate() {
                let bit = (idx >> (n - 1 - f)) & 1;
                target |= bit << (n - 1 - p);
            }
            amps[target] = a;
        }
        Ok(StateVector {
            field: self.field,
            n_factors: n,
            amps,
        })
    }

    /// Splits into exact real and imaginary parts, `psi = a + i b`.
    pub fn split(&self) -> RealImagSplit {
        RealImagSplit {
            a: self.amps.iter().map(|z| z.re).collect(),
            b: self.amps.iter().map(|z| z.im).collect(),
        }
    }
}

/// Unnormalized real and imaginary parts of a complex state,
/// `|psi> = |a> + i|b>` with `<a|a> + <b|b> = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealImagSplit {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl RealImagSplit {
    /// Reassembles `a + i b`; exact inverse of [`StateVector::split`].
    pub fn recombine(&self, field: Field, n_factors: usize) -> Result<StateVector> {
        let amps = self
            .a
            .iter()
            .zip(&self.b)
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect();
        StateVector::new(field, n_factors, amps)
    }

    pub fn norm_sq_a(&self) -> f64 {
        self.a.iter().map(|x| x * x).sum()
    }

    pub fn norm_sq_b(&self) -> f64 {
        self.b.iter().map(|x| x * x).sum()
    }
}

/// Self-adjoint, PSD, unit-trace operator over one to three factors.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub(crate) field: Field,
    pub(crate) n_factors: usize,
    pub(crate) mat: Matrix,
}

impl DensityMatrix {
    /// Validating constructor: rejects anything [`validate_density`] flags.
    pub fn new(field: Field, n_factors: usize, mat: Matrix) -> Result<DensityMatrix> {
        let report = validate_density(field, n_factors, &mat);
        if let Some(item) = report.items.iter().find(|item| !item.pass) {
            return Err(Error::InvalidDensity {
                check: item.name,
                residual: item.residual,
            });
        }
        Ok(DensityMatrix {
            field,
            n_factors,
            mat,
        })
    }

    /// Constructor for values that are valid by construction (projectors of
    /// normalized states, partial traces of valid densities, ...).
    pub(crate) fn trusted(field: Field, n_factors: usize, mat: Matrix) -> DensityMatrix {
        debug_assert!(
            validate_density(field, n_factors, &mat).pass(),
            "trusted density failed validation"
        );
        DensityMatrix {
            field,
            n_factors,
            mat,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n_factors(&self) -> usize {
        self.n_factors
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn purity(&self) -> f64 {
        self.mat.trace_product_re(&self.mat)
    }

    pub fn eig(&self) -> Result<crate::mat::EigenResult> {
        sym_eig(&self.mat)
    }

    /// Number of eigenvalues above 1e-10.
    pub fn rank(&self) -> Result<usize> {
        Ok(self
            .eig()?
            .eigenvalues
            .iter()
            .filter(|&&q| q > 1e-10)
            .count())
    }

    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let dims = vec![2usize; self.n_factors];
        let mat = partial_trace(&self.mat, &dims, keep)?;
        Ok(DensityMatrix::trusted(self.field, keep.len(), mat))
    }

    pub fn to_complex(&self) -> DensityMatrix {
        DensityMatrix {
            field: Field::Complex,
            n_factors: self.n_factors,
            mat: self.mat.to_complex(),
        }
    }

    pub fn try_real(&self) -> Result<DensityMatrix> {
        Ok(DensityMatrix {
            field: Field::Real,
            n_factors: self.n_factors,
            mat: self.mat.try_real()?,
        })
    }
}

/// One named invariant check with its measured residual.
#[derive(Debug, Clone, Serialize)]
pub struct CheckItem {
    pub name: &'static str,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Report-style result of validating a density matrix.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn pass(&self) -> bool {
        self.items.iter().all(|item| item.pass)
    }
}

/// Checks every density-matrix invariant and reports measured residuals.
///
/// Never fails; use the report to decide. [`DensityMatrix::new`] rejects
/// inputs whose report contains any failing item.
pub fn validate_density(field: Field, n_factors: usize, mat: &Matrix) -> CheckReport {
    let mut items = Vec::new();

    let expected_dim = 1usize << n_factors;
    let shape_ok =
        (1..=3).contains(&n_factors) && mat.rows() == expected_dim && mat.cols() == expected_dim;
    items.push(CheckItem {
        name: "shape",
        residual: if shape_ok {
            0.0
        } else {
            (mat.rows() as f64 - expected_dim as f64).abs()
        },
        tol: 0.0,
        pass: shape_ok,
    });

    let sa = mat.self_adjoint_residual();
    items.push(CheckItem {
        name: "self_adjoint",
        residual: sa,
        tol: 1e-12,
        pass: sa <= 1e-12,
    });

    let tr = mat.trace();
    let tr_res = ((tr.re - 1.0).powi(2) + tr.im.powi(2)).sqrt();
    items.push(CheckItem {
        name: "unit_trace",
        residual: tr_res,
        tol: 1e-12,
        pass: tr_res <= 1e-12,
    });

    // Eigenvalues of the hermitized matrix, so the PSD check still reports
    // something sensible when self-adjointness itself failed.
    let herm = mat.add(&mat.adjoint()).scale(0.5);
    let psd_res = match sym_eig(&herm) {
        Ok(eig) => (-eig.eigenvalues.last().copied().unwrap_or(0.0)).max(0.0),
        Err(_) => f64::INFINITY,
    };
    items.push(CheckItem {
        name: "psd",
        residual: psd_res,
        tol: 1e-10,
        pass: psd_res <= 1e-10,
    });

    let im_res = if field == Field::Real {
        mat.data().iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    } else {
        0.0
    };
    items.push(CheckItem {
        name: "real_tag",
        residual: im_res,
        tol: 0.0,
        pass: im_res == 0.0,
    });

    CheckReport { items }
}

/// A pure state or a density matrix, as loaded from the catalog or a file.
#[derive(Debug, Clone, PartialEq)]
pub enum StateData {
    Pure(StateVector),
    Mixed(DensityMatrix),
}

impl StateData {
    pub fn field(&self) -> Field {
        match self {
            StateData::Pure(s) => s.field(),
            StateData::Mixed(d) => d.field(),
        }
    }

    pub fn n_factors(&self) -> usize {
        match self {
            StateData::Pure(s) => s.n_factors(),
            StateData::Mixed(d) => d.n_factors(),
        }
    }

    pub fn to_complex(&self) -> StateData {
        match self {
            StateData::Pure(s) => StateData::Pure(s.to_complex()),
            StateData::Mixed(d) => StateData::Mixed(d.to_complex()),
        }
    }

    pub fn try_real(&self) -> Result<StateData> {
        Ok(match self {
            StateData::Pure(s) => StateData::Pure(s.try_real()?),
            StateData::Mixed(d) => StateData::Mixed(d.try_real()?),
        })
    }
}

// ---------------------------------------------------------------------------
// JSON wire schema.
//
// Vectors:   {"field":"real"|"complex","n_factors":N,"amplitudes":[[re,im],...]}
// Densities: {"field":...,"n_factors":N,"matrix":[[[re,im],...],...]}
//
// Real-tagged files must carry im = 0 in every entry.
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct VectorWire {
    field: Field,
    n_factors: usize,
    amplitudes: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
struct DensityWire {
    field: Field,
    n_factors: usize,
    matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum StateWire {
    Vector(VectorWire),
    Density(DensityWire),
}

/// Why a state file failed to load: malformed JSON versus a well-formed
/// object that violates a state invariant.
#[derive(Debug)]
pub enum LoadError {
    Parse(serde_json::Error),
    Invalid(Error),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Parse(e) => write!(f, "cannot parse state JSON: {e}"),
            LoadError::Invalid(e) => write!(f, "state violates an invariant: {e}"),
        }
    }
}

impl std::error::Error for LoadError {}

fn pairs_to_amps(pairs: &[[f64; 2]]) -> Vec<Complex64> {
    pairs
        .iter()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect()
}

/// Parses the JSON state schema into a validated state or density.
pub fn state_from_json(text: &str) -> std::result::Result<StateData, LoadError> {
    let wire: StateWire = serde_json::from_str(text).map_err(LoadError::Parse)?;
    match wire {
        StateWire::Vector(v) => {
            let sv = StateVector::new(v.field, v.n_factors, pairs_to_amps(&v.amplitudes))
                .map_err(LoadError::Invalid)?;
            Ok(StateData::Pure(sv))
        }
        StateWire::Density(d) => {
            let rows = d.matrix.len();
            if d.matrix.iter().any(|r| r.len() != rows) {
                return Err(LoadError::Invalid(Error::Shape(
                    "density matrix rows have unequal lengths".into(),
                )));
            }
            let data: Vec<Complex64> = d.matrix.iter().flat_map(|r| pairs_to_amps(r)).collect();
            let mat = Matrix::try_new(d.field, rows, rows, data).map_err(LoadError::Invalid)?;
            let dm = DensityMatrix::new(d.field, d.n_factors, mat).map_err(LoadError::Invalid)?;
            Ok(StateData::Mixed(dm))
        }
    }
}

impl Serialize for StateVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("field", &self.field)?;
        map.serialize_entry("n_factors", &self.n_factors)?;
        let pairs: Vec<[f64; 2]> = self.amps.iter().map(|z| [z.re, z.im]).collect();
        map.serialize_entry("amplitudes", &pairs)?;
        map.end()
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("field", &self.field)?;
        map.serialize_entry("n_factors", &self.n_factors)?;
        let d = self.dim();
        let rows: Vec<Vec<[f64; 2]>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let z = self.mat.get(i, j);
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        map.serialize_entry("matrix", &rows)?;
        map.end()
    }
}

impl Serialize for StateData {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            StateData::Pure(s) => s.serialize(serializer),
            StateData::Mixed(d) => d.serialize(serializer),
        }
    }
}
