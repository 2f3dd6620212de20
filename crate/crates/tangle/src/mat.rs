//! Dense numerical kernels for matrices of dimension at most 8, over real
//! and complex scalars.
//!
//! Everything is stored as `Complex64` in row-major order with the leftmost
//! tensor factor most significant (basis label `|ijk>` lives at flat index
//! `4i + 2j + k`). A [`Field`] tag records which theory the object belongs
//! to; a real-tagged matrix carries exactly zero imaginary parts, not merely
//! small ones. The tag matters: the same numerical matrix is assigned
//! different entanglement values by the real and complex theories, so it is
//! never coerced silently.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scalar field tag for states, densities and operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    /// Field of a product of two tagged objects: real only if both are real.
    pub fn combine(self, other: Field) -> Field {
        if self == Field::Real && other == Field::Real {
            Field::Real
        } else {
            Field::Complex
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Real => write!(f, "real"),
            Field::Complex => write!(f, "complex"),
        }
    }
}

fn valid_dim(n: usize) -> bool {
    matches!(n, 1 | 2 | 4 | 8)
}

/// Dense row-major matrix of dimension 1, 2, 4 or 8 per side.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        assert!(
            valid_dim(rows) && valid_dim(cols),
            "unsupported matrix size {rows}x{cols}"
        );
        Matrix {
            rows,
            cols,
            field,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Fallible constructor for externally supplied data.
    pub fn try_new(field: Field, rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Matrix> {
        if !valid_dim(rows) || !valid_dim(cols) {
            return Err(Error::SizeLimit { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if field == Field::Real {
            if let Some(idx) = data.iter().position(|z| z.im != 0.0) {
                return Err(Error::RealTagViolation {
                    index: idx,
                    im: data[idx].im,
                });
            }
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            data,
        })
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> Complex64,
    ) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        debug_assert!(field == Field::Complex || m.data.iter().all(|z| z.im == 0.0));
        m
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        Matrix::from_fn(field, n, n, |i, j| {
            Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)
        })
    }

    /// Real matrix from row-major real entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            rows,
            cols,
            field: Field::Real,
            data: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        debug_assert!(self.field == Field::Complex || v.im == 0.0);
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Reinterprets the matrix as complex-tagged; entries are unchanged.
    pub fn to_complex(&self) -> Matrix {
        Matrix {
            field: Field::Complex,
            ..self.clone()
        }
    }

    /// Retags as real; every imaginary part must be exactly zero.
    pub fn try_real(&self) -> Result<Matrix> {
        if let Some(idx) = self.data.iter().position(|z| z.im != 0.0) {
            return Err(Error::RealTagViolation {
                index: idx,
                im: self.data[idx].im,
            });
        }
        Ok(Matrix {
            field: Field::Real,
            ..self.clone()
        })
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        let mut out = Matrix::zeros(self.field.combine(other.field), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        out.field = self.field.combine(other.field);
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x += y;
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        out.field = self.field.combine(other.field);
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x -= y;
        }
        out
    }

    pub fn scale(&self, s: f64) -> Matrix {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x *= s;
        }
        out
    }

    pub fn conj(&self) -> Matrix {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = x.conj();
        }
        out
    }

    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).conj()
        })
    }

    pub fn trace(&self) -> Complex64 {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Largest entrywise absolute value.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_diff(&self, other: &Matrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Deviation from self-adjointness, `max |A - A^H|`.
    pub fn self_adjoint_residual(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        let mut r: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                r = r.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        r
    }

    /// Real part of the Hilbert-Schmidt pairing `tr(A B)`.
    pub fn trace_product_re(&self, other: &Matrix) -> f64 {
        assert_eq!((self.cols, self.rows), (other.rows, other.cols));
        let mut t = 0.0;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let z = self.data[i * self.cols + k] * other.data[k * other.cols + i];
                t += z.re;
            }
        }
        t
    }
}

/// The 2x2 identity.
pub fn eye2(field: Field) -> Matrix {
    Matrix::identity(field, 2)
}

/// The real rotation generator `J = [[0, -1], [1, 0]]`.
pub fn j2() -> Matrix {
    Matrix::from_real(2, 2, &[0.0, -1.0, 1.0, 0.0])
}

/// Pauli `X`, real.
pub fn pauli_x() -> Matrix {
    Matrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])
}

/// Pauli `Y`, complex: `[[0, -i], [i, 0]]`.
pub fn pauli_y() -> Matrix {
    Matrix::try_new(
        Field::Complex,
        2,
        2,
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ],
    )
    .unwrap()
}

/// Pauli `Z`, real.
pub fn pauli_z() -> Matrix {
    Matrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0])
}

/// `Y (x) Y` as a real matrix, equal to `-J (x) J`.
pub fn yy_real() -> Matrix {
    kron(&j2(), &j2()).unwrap().scale(-1.0)
}

/// Kronecker product with the leftmost factor most significant.
pub fn kron(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    if !valid_dim(rows) || !valid_dim(cols) {
        return Err(Error::SizeLimit { rows, cols });
    }
    let mut out = Matrix::zeros(a.field.combine(b.field), rows, cols);
    for i1 in 0..a.rows {
        for j1 in 0..a.cols {
            let x = a.get(i1, j1);
            for i2 in 0..b.rows {
                for j2 in 0..b.cols {
                    out.set(i1 * b.rows + i2, j1 * b.cols + j2, x * b.get(i2, j2));
                }
            }
        }
    }
    Ok(out)
}

/// Multi-index strides for a factor list, most significant first.
fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

/// Traces out every factor not listed in `keep`.
///
/// `dims` lists the dimension of each tensor factor, most significant first;
/// their product must equal the matrix dimension. `keep` must be a sorted,
/// non-empty set of distinct factor indices. Trace and self-adjointness are
/// preserved.
pub fn partial_trace(rho: &Matrix, dims: &[usize], keep: &[usize]) -> Result<Matrix> {
    if rho.rows != rho.cols {
        return Err(Error::Shape(format!(
            "partial trace needs a square matrix, got {}x{}",
            rho.rows, rho.cols
        )));
    }
    let total: usize = dims.iter().product();
    if total != rho.rows || dims.is_empty() {
        return Err(Error::Shape(format!(
            "factor dimensions {dims:?} do not multiply to the matrix dimension {}",
            rho.rows
        )));
    }
    let sorted_unique = keep.windows(2).all(|w| w[0] < w[1]);
    if keep.is_empty() || !sorted_unique || keep.iter().any(|&k| k >= dims.len()) {
        return Err(Error::FactorSubset(keep.to_vec()));
    }

    let traced: Vec<usize> = (0..dims.len()).filter(|f| !keep.contains(f)).collect();
    let keep_dims: Vec<usize> = keep.iter().map(|&f| dims[f]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&f| dims[f]).collect();
    let dim_keep: usize = keep_dims.iter().product();
    let dim_traced: usize = traced_dims.iter().product();
    let full_strides = strides(dims);
    let keep_strides = strides(&keep_dims);
    let traced_strides = strides(&traced_dims);

    // Flat index of the full system with kept digits from `ik` and traced
    // digits from `it`.
    let compose = |ik: usize, it: usize| -> usize {
        let mut flat = 0;
        for (pos, &f) in keep.iter().enumerate() {
            let digit = (ik / keep_strides[pos]) % keep_dims[pos];
            flat += digit * full_strides[f];
        }
        for (pos, &f) in traced.iter().enumerate() {
            let digit = (it / traced_strides[pos]) % traced_dims[pos];
            flat += digit * full_strides[f];
        }
        flat
    };

    let mut out = Matrix::try_new(
        rho.field,
        dim_keep,
        dim_keep,
        vec![Complex64::new(0.0, 0.0); dim_keep * dim_keep],
    )?;
    for ik in 0..dim_keep {
        for jk in 0..dim_keep {
            let mut sum = Complex64::new(0.0, 0.0);
            for it in 0..dim_traced {
                sum += rho.get(compose(ik, it), compose(jk, it));
            }
            out.data[ik * dim_keep + jk] = sum;
        }
    }
    Ok(out)
}

/// Eigendecomposition of a self-adjoint matrix.
#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Eigenvalues in decreasing order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors, one per column, ordered to match.
    pub eigenvectors: Matrix,
}

const JACOBI_OFF_THRESHOLD: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;
const SELF_ADJOINT_TOL: f64 = 1e-12;
const PSD_EIG_FLOOR: f64 = -1e-10;
/// Eigenvalues below the solver resolution are numerically zero. Functions
/// of the spectrum (square roots in particular) must treat them as exact
/// zeros, or rounding noise gets amplified by the root.
pub const EIG_TRUNCATION: f64 = 1e-13;

fn off_diagonal_norm(n: usize, a: &[f64]) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            s += a[p * n + q] * a[p * n + q];
        }
    }
    (2.0 * s).sqrt()
}

/// Cyclic Jacobi rotations on a real symmetric matrix, row-major.
///
/// Stops when the off-diagonal norm falls below 1e-13; at most 100 sweeps.
/// `v` accumulates the eigenvectors as columns; the caller initializes it to
/// the identity. Fixed sweep order makes the output reproducible bit for bit.
fn jacobi_real(n: usize, a: &mut [f64], v: &mut [f64]) -> Result<()> {
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(n, a) <= JACOBI_OFF_THRESHOLD {
            return Ok(());
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e10 {
                    1.0 / (2.0 * theta)
                } else {
                    theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                let app = a[p * n + p];
                let aqq = a[q * n + q];
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[p * n + k] = a[k * n + p];
                    a[k * n + q] = s * akp + c * akq;
                    a[q * n + k] = a[k * n + q];
                }
                a[p * n + p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
                a[q * n + q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let residual = off_diagonal_norm(n, a);
    if residual <= JACOBI_OFF_THRESHOLD {
        Ok(())
    } else {
        Err(Error::Numerical {
            context: "jacobi eigensolver did not converge",
            residual,
        })
    }
}

fn sorted_descending(n: usize, diag: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap().then(i.cmp(&j)));
    order
}

/// Eigendecomposition of a self-adjoint matrix, eigenvalues descending.
///
/// Real symmetric input goes straight to the Jacobi kernel. A complex
/// Hermitian matrix `H = R + iM` is first embedded as the real symmetric
/// `[[R, -M], [M, R]]` of twice the dimension; each complex eigenvector
/// `x + iy` appears there as the pair `(x; y)`, `(-y; x)`, and one member
/// of each pair is recovered by Gram-Schmidt selection.
pub fn sym_eig(a: &Matrix) -> Result<EigenResult> {
    let residual = a.self_adjoint_residual();
    if residual > SELF_ADJOINT_TOL {
        return Err(Error::NotSelfAdjoint { residual });
    }
    let n = a.rows;
    match a.field {
        Field::Real => {
            let mut work: Vec<f64> = a.data.iter().map(|z| z.re).collect();
            // Symmetrize exactly so rounding in the input cannot bias sweeps.
            for i in 0..n {
                for j in (i + 1)..n {
                    let m = 0.5 * (work[i * n + j] + work[j * n + i]);
                    work[i * n + j] = m;
                    work[j * n + i] = m;
                }
            }
            let mut vecs = vec![0.0; n * n];
            for i in 0..n {
                vecs[i * n + i] = 1.0;
            }
            jacobi_real(n, &mut work, &mut vecs)?;
            let diag: Vec<f64> = (0..n).map(|i| work[i * n + i]).collect();
            let order = sorted_descending(n, &diag);
            let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
            let eigenvectors = Matrix::from_fn(Field::Real, n, n, |i, j| {
                Complex64::new(vecs[i * n + order[j]], 0.0)
            });
            Ok(EigenResult {
                eigenvalues,
                eigenvectors,
            })
        }
        Field::Complex => {
            let m = 2 * n;
            let mut work = vec![0.0; m * m];
            for i in 0..n {
                for j in 0..n {
                    let z = 0.5 * (a.get(i, j) + a.get(j, i).conj());
                    work[i * m + j] = z.re;
                    work[(i + n) * m + (j + n)] = z.re;
                    work[i * m + (j + n)] = -z.im;
                    work[(i + n) * m + j] = z.im;
                }
            }
            let mut vecs = vec![0.0; m * m];
            for i in 0..m {
                vecs[i * m + i] = 1.0;
            }
            jacobi_real(m, &mut work, &mut vecs)?;
            let diag: Vec<f64> = (0..m).map(|i| work[i * m + i]).collect();
            let order = sorted_descending(m, &diag);

            let mut eigenvalues = Vec::with_capacity(n);
            let mut selected: Vec<Vec<Complex64>> = Vec::with_capacity(n);
            for &col in &order {
                if selected.len() == n {
                    break;
                }
                let mut z: Vec<Complex64> = (0..n)
                    .map(|i| Complex64::new(vecs[i * m + col], vecs[(i + n) * m + col]))
                    .collect();
                // Remove components along already accepted eigenvectors;
                // the embedding produces each complex vector twice.
                for _ in 0..2 {
                    for u in &selected {
                        let overlap: Complex64 =
                            u.iter().zip(&z).map(|(ui, zi)| ui.conj() * zi).sum();
                        for (zi, ui) in z.iter_mut().zip(u) {
                            *zi -= overlap * ui;
                        }
                    }
                }
                let norm = z.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
                if norm > 1e-6 {
                    for w in z.iter_mut() {
                        *w /= norm;
                    }
                    selected.push(z);
                    eigenvalues.push(diag[col]);
                }
            }
            if selected.len() != n {
                return Err(Error::Numerical {
                    context: "complex eigenvector recovery",
                    residual: (n - selected.len()) as f64,
                });
            }
            let eigenvectors = Matrix::from_fn(Field::Complex, n, n, |i, j| selected[j][i]);
            Ok(EigenResult {
                eigenvalues,
                eigenvectors,
            })
        }
    }
}

/// Self-adjoint PSD square root via the eigendecomposition.
///
/// Eigenvalues in `[-1e-10, 0)` are clamped to zero and anything more
/// negative is rejected as not PSD; eigenvalues below [`EIG_TRUNCATION`]
/// are rooted as exact zeros.
pub fn psd_sqrt(a: &Matrix) -> Result<Matrix> {
    let eig = sym_eig(a)?;
    rebuild_with(a.field, &eig, |lambda| lambda.sqrt())
}

/// Clamps eigenvalues slightly below zero and rebuilds `V f(L) V^H`.
fn rebuild_with(field: Field, eig: &EigenResult, f: impl Fn(f64) -> f64) -> Result<Matrix> {
    let n = eig.eigenvalues.len();
    let mut clamped = Vec::with_capacity(n);
    for &lambda in &eig.eigenvalues {
        if lambda < PSD_EIG_FLOOR {
            return Err(Error::NotPsd { eigenvalue: lambda });
        }
        clamped.push(if lambda < EIG_TRUNCATION {
            0.0
        } else {
            f(lambda)
        });
    }
    let v = &eig.eigenvectors;
    let out = Matrix::from_fn(field, n, n, |i, j| {
        (0..n)
            .map(|k| v.get(i, k) * clamped[k] * v.get(j, k).conj())
            .sum()
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kron_identities() {
        let i2 = eye2(Field::Real);
        let i4 = Matrix::identity(Field::Real, 4);
        assert_eq!(kron(&i2, &i2).unwrap(), i4);
    }

    #[test]
    fn kron_j_j() {
        let jj = kron(&j2(), &j2()).unwrap();
        let mut expected = Matrix::zeros(Field::Real, 4, 4);
        expected.set(0, 3, c(1.0, 0.0));
        expected.set(1, 2, c(-1.0, 0.0));
        expected.set(2, 1, c(-1.0, 0.0));
        expected.set(3, 0, c(1.0, 0.0));
        assert_eq!(jj, expected);
    }

    #[test]
    fn yy_is_minus_jj() {
        let yy = kron(&pauli_y(), &pauli_y()).unwrap();
        let minus_jj = kron(&j2(), &j2()).unwrap().scale(-1.0);
        assert!(yy.max_abs_diff(&minus_jj) == 0.0);
        assert!(yy_real().max_abs_diff(&minus_jj.try_real().unwrap()) == 0.0);
    }

    #[test]
    fn kron_overflow_rejected() {
        let i8m = Matrix::identity(Field::Real, 8);
        let i2 = eye2(Field::Real);
        assert!(matches!(kron(&i8m, &i2), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn kron_field_combination() {
        let m = kron(&j2(), &pauli_y()).unwrap();
        assert_eq!(m.field(), Field::Complex);
        let r = kron(&j2(), &j2()).unwrap();
        assert_eq!(r.field(), Field::Real);
    }

    #[test]
    fn partial_trace_bell() {
        // |(00+11)/sqrt(2)><.| traced over the second factor is I/2.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut proj = Matrix::zeros(Field::Real, 4, 4);
        for &i in &[0usize, 3] {
            for &j in &[0usize, 3] {
                proj.set(i, j, c(s * s, 0.0));
            }
        }
        let red = partial_trace(&proj, &[2, 2], &[0]).unwrap();
        let expected = eye2(Field::Real).scale(0.5);
        assert!(red.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn partial_trace_preserves_trace() {
        let m = Matrix::from_fn(Field::Real, 4, 4, |i, j| c(((i * 4 + j) as f64).sin(), 0.0));
        let sym = m.add(&m.adjoint()).scale(0.5);
        let red = partial_trace(&sym, &[2, 2], &[1]).unwrap();
        assert!((red.trace().re - sym.trace().re).abs() < 1e-12);
        assert!(red.trace().im.abs() < 1e-15);
    }

    #[test]
    fn partial_trace_shape_errors() {
        let m = Matrix::identity(Field::Real, 4);
        assert!(partial_trace(&m, &[2, 4], &[0]).is_err());
        assert!(partial_trace(&m, &[2, 2], &[]).is_err());
        assert!(partial_trace(&m, &[2, 2], &[1, 0]).is_err());
        assert!(partial_trace(&m, &[2, 2], &[2]).is_err());
    }

    #[test]
    fn sym_eig_identity_and_diagonal() {
        let eig = sym_eig(&Matrix::identity(Field::Real, 4)).unwrap();
        for &l in &eig.eigenvalues {
            assert!((l - 1.0).abs() < 1e-14);
        }

        let d = Matrix::from_real(2, 2, &[3.0, 0.0, 0.0, 1.0]);
        let eig = sym_eig(&d).unwrap();
        assert!((eig.eigenvalues[0] - 3.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sym_eig_quarter_i_plus_yy() {
        // (1/4)[I(x)I + Y(x)Y] as a real matrix has spectrum (1/2, 1/2, 0, 0);
        // its characteristic polynomial factors as l^2 (l - 1/2)^2.
        let rho = Matrix::identity(Field::Real, 4).add(&yy_real()).scale(0.25);
        let eig = sym_eig(&rho).unwrap();
        let expected = [0.5, 0.5, 0.0, 0.0];
        for (got, want) in eig.eigenvalues.iter().zip(expected) {
            assert!(
                (got - want).abs() < 1e-13,
                "eigenvalues {:?}",
                eig.eigenvalues
            );
        }
    }

    #[test]
    fn sym_eig_rejects_asymmetric() {
        let m = Matrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(sym_eig(&m), Err(Error::NotSelfAdjoint { .. })));
    }

    #[test]
    fn sym_eig_reconstructs_complex() {
        let h = Matrix::try_new(
            Field::Complex,
            2,
            2,
            vec![c(2.0, 0.0), c(0.5, -0.25), c(0.5, 0.25), c(1.0, 0.0)],
        )
        .unwrap();
        let eig = sym_eig(&h).unwrap();
        let n = 2;
        let rebuilt = Matrix::from_fn(Field::Complex, n, n, |i, j| {
            (0..n)
                .map(|k| {
                    eig.eigenvectors.get(i, k)
                        * eig.eigenvalues[k]
                        * eig.eigenvectors.get(j, k).conj()
                })
                .sum()
        });
        assert!(rebuilt.max_abs_diff(&h) < 1e-13);
        // Orthonormal columns.
        let gram = eig.eigenvectors.adjoint().mul(&eig.eigenvectors);
        assert!(gram.max_abs_diff(&Matrix::identity(Field::Complex, n)) < 1e-13);
    }

    #[test]
    fn sym_eig_degenerate_complex() {
        let eig = sym_eig(&Matrix::identity(Field::Complex, 4)).unwrap();
        assert_eq!(eig.eigenvalues.len(), 4);
        let gram = eig.eigenvectors.adjoint().mul(&eig.eigenvectors);
        assert!(gram.max_abs_diff(&Matrix::identity(Field::Complex, 4)) < 1e-13);
    }

    #[test]
    fn psd_sqrt_cases() {
        let d = Matrix::from_real(2, 2, &[4.0, 0.0, 0.0, 1.0]);
        let s = psd_sqrt(&d).unwrap();
        assert!(s.max_abs_diff(&Matrix::from_real(2, 2, &[2.0, 0.0, 0.0, 1.0])) < 1e-14);

        let i4 = Matrix::identity(Field::Real, 4);
        assert!(psd_sqrt(&i4).unwrap().max_abs_diff(&i4) < 1e-13);

        // A rank-1 projector is its own square root.
        let v = [0.5f64, 0.5, 0.5, 0.5];
        let p = Matrix::from_fn(Field::Real, 4, 4, |i, j| c(v[i] * v[j], 0.0));
        assert!(psd_sqrt(&p).unwrap().max_abs_diff(&p) < 1e-12);
    }

    #[test]
    fn psd_sqrt_rejects_negative() {
        let d = Matrix::from_real(2, 2, &[1.0, 0.0, 0.0, -0.5]);
        assert!(matches!(psd_sqrt(&d), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn real_tag_rejects_imaginary_entries() {
        let bad = Matrix::try_new(
            Field::Real,
            2,
            2,
            vec![c(1.0, 0.0), c(0.0, 1e-18), c(0.0, 0.0), c(1.0, 0.0)],
        );
        assert!(matches!(bad, Err(Error::RealTagViolation { .. })));
    }
}
