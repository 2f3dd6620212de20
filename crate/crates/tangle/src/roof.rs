//! Numerical convex-roof minimization.
//!
//! Every decomposition of a rank-`r` density matrix into `m >= r` pure
//! states comes from a column-orthonormal `m x r` map applied to the
//! weighted eigenvectors. The minimizer parameterizes that Stiefel manifold
//! by a chain of Givens rotations (with a phase per rotation in the complex
//! case): eliminating the below-diagonal entries of any isometry by plane
//! rotations reduces it to the first-`r`-columns embedding, so the chain
//! reaches every decomposition up to the irrelevant per-state phases.
//! Minimization is derivative-free: coordinate-wise line searches over the
//! angles (a coarse periodic grid, then golden-section refinement), with
//! independently seeded random restarts. Restart `i` always uses
//! `seed + i`, so serial and parallel executions return identical results.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{map_indexed, Exec};
use crate::mat::{EigenResult, Field, Matrix};
use crate::sample::rng_for;
use crate::state::{DensityMatrix, StateVector};

pub const RANK_CUTOFF: f64 = 1e-10;
pub const WEIGHT_CUTOFF: f64 = 1e-14;
const ISOMETRY_TOL: f64 = 1e-10;

/// Optimizer configuration shared with the CLI.
///
/// `m` is the decomposition cardinality; it defaults to twice the rank and
/// is clamped to `[rank, 4 * rank]`. `exec` selects serial or parallel
/// restart execution and never changes the result, so it stays out of the
/// serialized form.
#[derive(Debug, Clone, Serialize)]
pub struct RoofConfig {
    pub m: Option<usize>,
    pub restarts: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_iters: usize,
    #[serde(skip)]
    pub exec: Exec,
}

impl Default for RoofConfig {
    fn default() -> Self {
        RoofConfig {
            m: None,
            restarts: 32,
            seed: 0,
            tol: 1e-9,
            max_iters: 500,
            exec: Exec::default(),
        }
    }
}

/// Weighted pure-state ensemble reconstructing a density matrix.
#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub weights: Vec<f64>,
    pub states: Vec<StateVector>,
}

impl Decomposition {
    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Ensemble average of a pure-state functional.
    pub fn average(&self, objective: impl Fn(&StateVector) -> f64) -> f64 {
        self.weights
            .iter()
            .zip(&self.states)
            .map(|(w, s)| w * objective(s))
            .sum()
    }

    /// `sum_j p_j |phi_j><phi_j|`.
    pub fn reconstruct(&self) -> Matrix {
        let dim = self.states[0].dim();
        let field = self.states[0].field();
        let mut out = Matrix::zeros(field, dim, dim);
        for (w, s) in self.weights.iter().zip(&self.states) {
            out = out.add(&s.to_density().matrix().scale(*w));
        }
        out
    }

    /// Frobenius distance between the reconstruction and `rho`.
    pub fn reconstruction_residual(&self, rho: &DensityMatrix) -> f64 {
        self.reconstruct().frobenius_diff(rho.matrix())
    }
}

/// Convex-roof value with the achieving decomposition and diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct RoofResult {
    pub value: f64,
    pub best: Decomposition,
    pub restarts_used: usize,
    pub converged: bool,
    pub residual: f64,
}

/// Column-orthonormal `rows x cols` map, the free parameter of a
/// decomposition. Unlike [`Matrix`] it is not bound to tensor dimensions.
#[derive(Debug, Clone)]
pub struct Isometry {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl Isometry {
    pub fn try_new(
        field: Field,
        rows: usize,
        cols: usize,
        data: Vec<Complex64>,
    ) -> Result<Isometry> {
        if data.len() != rows * cols || cols > rows {
            return Err(Error::Shape(format!(
                "isometry needs rows >= cols and {} entries, got {}x{} with {}",
                rows * cols,
                rows,
                cols,
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
        let v = Isometry {
            field,
            rows,
            cols,
            data,
        };
        let residual = v.isometry_residual();
        if residual > ISOMETRY_TOL {
            return Err(Error::NotIsometry { residual });
        }
        Ok(v)
    }

    /// The first-`cols`-columns embedding (identity on the top block).
    pub fn identity_embedding(field: Field, rows: usize, cols: usize) -> Isometry {
        let mut data = vec![Complex64::new(0.0, 0.0); rows * cols];
        for k in 0..cols {
            data[k * cols + k] = Complex64::new(1.0, 0.0);
        }
        Isometry {
            field,
            rows,
            cols,
            data,
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

    /// `max |V^H V - I|`.
    pub fn isometry_residual(&self) -> f64 {
        let mut res: f64 = 0.0;
        for a in 0..self.cols {
            for b in 0..self.cols {
                let mut dot = Complex64::new(0.0, 0.0);
                for i in 0..self.rows {
                    dot += self.data[i * self.cols + a].conj() * self.data[i * self.cols + b];
                }
                let expect = if a == b { 1.0 } else { 0.0 };
                res = res.max((dot - expect).norm());
            }
        }
        res
    }
}

/// Square-root-weighted eigenvectors of the support, one column per kept
/// eigenvalue.
struct Support {
    field: Field,
    n_factors: usize,
    dim: usize,
    rank: usize,
    /// `weighted[k][d] = sqrt(q_k) e_k[d]`.
    weighted: Vec<Vec<Complex64>>,
}

fn support_of(rho: &DensityMatrix, eig: &EigenResult) -> Support {
    let dim = rho.dim();
    let rank = eig.eigenvalues.iter().filter(|&&q| q > RANK_CUTOFF).count();
    let weighted = (0..rank)
        .map(|k| {
            let w = eig.eigenvalues[k].max(0.0).sqrt();
            (0..dim).map(|d| eig.eigenvectors.get(d, k) * w).collect()
        })
        .collect();
    Support {
        field: rho.field(),
        n_factors: rho.n_factors(),
        dim,
        rank,
        weighted,
    }
}

impl Support {
    /// States and weights induced by the isometry entries (row-major m x r).
    fn decomposition(&self, v: &[Complex64], m: usize) -> Decomposition {
        let r = self.rank;
        let mut weights = Vec::with_capacity(m);
        let mut states = Vec::with_capacity(m);
        let mut amps = vec![Complex64::new(0.0, 0.0); self.dim];
        for j in 0..m {
            for a in amps.iter_mut() {
                *a = Complex64::new(0.0, 0.0);
            }
            for k in 0..r {
                let coeff = v[j * r + k];
                if coeff == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (a, w) in amps.iter_mut().zip(&self.weighted[k]) {
                    *a += coeff * w;
                }
            }
            let p: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
            if p < WEIGHT_CUTOFF {
                continue;
            }
            let scale = 1.0 / p.sqrt();
            let normalized: Vec<Complex64> = amps.iter().map(|&z| z * scale).collect();
            weights.push(p);
            states.push(StateVector {
                field: self.field,
                n_factors: self.n_factors,
                amps: normalized,
            });
        }
        Decomposition { weights, states }
    }
}

/// Ensemble defined by a column-orthonormal map from the support of `rho`.
///
/// The unnormalized states are `sum_k V_jk sqrt(q_k) |e_k>` over the
/// eigendecomposition `{q_k, e_k}`; weights are their squared norms.
/// States whose weight falls below 1e-14 are dropped.
pub fn decomposition_from_isometry(rho: &DensityMatrix, v: &Isometry) -> Result<Decomposition> {
    if rho.field() == Field::Real && v.field() == Field::Complex {
        return Err(Error::FieldMismatch {
            expected: Field::Real,
            got: Field::Complex,
        });
    }
    let eig = rho.eig()?;
    let support = support_of(rho, &eig);
    if v.cols() != support.rank {
        return Err(Error::Shape(format!(
            "isometry has {} columns but the density has rank {}",
            v.cols(),
            support.rank
        )));
    }
    if v.rows() < support.rank {
        return Err(Error::CardinalityTooSmall {
            m: v.rows(),
            rank: support.rank,
        });
    }
    Ok(support.decomposition(&v.data, v.rows()))
}

// --------------------------------------------------------------------------
// Stiefel parameterization and the coordinate-descent core.
// --------------------------------------------------------------------------

struct GivensChain {
    m: usize,
    r: usize,
    complex: bool,
    coords: Vec<(usize, usize)>,
}

impl GivensChain {
    fn new(field: Field, m: usize, r: usize) -> GivensChain {
        let mut coords = Vec::new();
        for k in 0..r {
            for i in (k + 1)..m {
                coords.push((k, i));
            }
        }
        GivensChain {
            m,
            r,
            complex: field == Field::Complex,
            coords,
        }
    }

    fn n_params(&self) -> usize {
        self.coords.len() * if self.complex { 2 } else { 1 }
    }

    /// Writes the isometry entries (row-major m x r) for the given angles.
    fn build(&self, params: &[f64], v: &mut [Complex64]) {
        let r = self.r;
        v.fill(Complex64::new(0.0, 0.0));
        for k in 0..r {
            v[k * r + k] = Complex64::new(1.0, 0.0);
        }
        for idx in (0..self.coords.len()).rev() {
            let (k, i) = self.coords[idx];
            let (theta, phase) = if self.complex {
                (params[2 * idx], params[2 * idx + 1])
            } else {
                (params[idx], 0.0)
            };
            let c = theta.cos();
            let s = if self.complex {
                Complex64::from_polar(theta.sin(), phase)
            } else {
                Complex64::new(theta.sin(), 0.0)
            };
            let s_conj = s.conj();
            for col in 0..r {
                let a = v[k * r + col];
                let b = v[i * r + col];
                v[k * r + col] = c * a - s_conj * b;
                v[i * r + col] = s * a + c * b;
            }
        }
    }
}

/// Incremental objective evaluator for one plane at a time.
///
/// With the chain split around the active plane `t` as
/// `V = P . G_t(theta) . suffix`, the states are the rows of
/// `P (T + (G_t - I) T)` where `T = suffix . E . W'` collects everything to
/// the right. `(G_t - I) T` touches two rows of `T`, so each candidate angle
/// costs two outer-product updates of the cached `P T` instead of a full
/// chain rebuild. `P` and `T` are advanced by one rotation when the sweep
/// moves to the next plane and rebuilt from the parameters at the start of
/// each sweep, which caps the rounding drift of the incremental updates.
struct Evaluator<'a, F> {
    chain: &'a GivensChain,
    objective: &'a F,
    m: usize,
    dim: usize,
    /// Prefix `G_0 ... G_{t-1}`, row-major m x m.
    p: Vec<Complex64>,
    /// Suffix-applied state basis, row-major m x dim.
    t: Vec<Complex64>,
    /// Cached `P . T` for the active plane.
    pt: Vec<Complex64>,
    dt_k: Vec<Complex64>,
    dt_i: Vec<Complex64>,
    scratch: StateVector,
}

impl<'a, F: Fn(&StateVector) -> f64> Evaluator<'a, F> {
    fn new(chain: &'a GivensChain, support: &'a Support, objective: &'a F) -> Self {
        let m = chain.m;
        let dim = support.dim;
        Evaluator {
            chain,
            objective,
            m,
            dim,
            p: vec![Complex64::new(0.0, 0.0); m * m],
            t: vec![Complex64::new(0.0, 0.0); m * dim],
            pt: vec![Complex64::new(0.0, 0.0); m * dim],
            dt_k: vec![Complex64::new(0.0, 0.0); dim],
            dt_i: vec![Complex64::new(0.0, 0.0); dim],
            scratch: StateVector {
                field: support.field,
                n_factors: support.n_factors,
                amps: vec![Complex64::new(0.0, 0.0); dim],
            },
        }
    }

    fn rotation(&self, params: &[f64], idx: usize) -> (f64, Complex64) {
        let (theta, phase) = if self.chain.complex {
            (params[2 * idx], params[2 * idx + 1])
        } else {
            (params[idx], 0.0)
        };
        let c = theta.cos();
        let s = if self.chain.complex {
            Complex64::from_polar(theta.sin(), phase)
        } else {
            Complex64::new(theta.sin(), 0.0)
        };
        (c, s)
    }

    /// Rebuilds `P = I` and `T = G_1 ... G_{N-1} E W'` for plane 0.
    fn start_sweep(&mut self, params: &[f64], support: &Support) {
        let (m, dim, r) = (self.m, self.dim, self.chain.r);
        self.p.fill(Complex64::new(0.0, 0.0));
        for j in 0..m {
            self.p[j * m + j] = Complex64::new(1.0, 0.0);
        }
        self.t.fill(Complex64::new(0.0, 0.0));
        for k in 0..r {
            self.t[k * dim..(k + 1) * dim].copy_from_slice(&support.weighted[k]);
        }
        for idx in (1..self.chain.coords.len()).rev() {
            let (k, i) = self.chain.coords[idx];
            let (c, s) = self.rotation(params, idx);
            rotate_rows(&mut self.t, dim, k, i, c, s);
        }
    }

    /// Caches `P T` before the line searches of one plane.
    fn begin_plane(&mut self) {
        let (m, dim) = (self.m, self.dim);
        for j in 0..m {
            for d in 0..dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for l in 0..m {
                    let pjl = self.p[j * m + l];
                    if pjl != Complex64::new(0.0, 0.0) {
                        acc += pjl * self.t[l * dim + d];
                    }
                }
                self.pt[j * dim + d] = acc;
            }
        }
    }

    /// Ensemble average with the active plane `(k, i)` rotated by `(c, s)`.
    fn eval_plane(&mut self, k: usize, i: usize, c: f64, s: Complex64) -> f64 {
        let (m, dim) = (self.m, self.dim);
        let cm1 = c - 1.0;
        let s_conj = s.conj();
        for d in 0..dim {
            let tk = self.t[k * dim + d];
            let ti = self.t[i * dim + d];
            self.dt_k[d] = cm1 * tk - s_conj * ti;
            self.dt_i[d] = s * tk + cm1 * ti;
        }
        let mut acc = 0.0;
        for j in 0..m {
            let pjk = self.p[j * m + k];
            let pji = self.p[j * m + i];
            let mut norm_sq = 0.0;
            for d in 0..dim {
                let amp = self.pt[j * dim + d] + pjk * self.dt_k[d] + pji * self.dt_i[d];
                self.scratch.amps[d] = amp;
                norm_sq += amp.norm_sqr();
            }
            if norm_sq < WEIGHT_CUTOFF {
                continue;
            }
            let scale = 1.0 / norm_sq.sqrt();
            for a in self.scratch.amps.iter_mut() {
                *a *= scale;
            }
            acc += norm_sq * (self.objective)(&self.scratch);
        }
        acc
    }

    /// Moves the split point past plane `idx` with its settled rotation,
    /// then peels the next plane's rotation out of `T`.
    fn advance(&mut self, params: &[f64], idx: usize) {
        let (m, dim) = (self.m, self.dim);
        let (k, i) = self.chain.coords[idx];
        let (c, s) = self.rotation(params, idx);
        // P <- P G_idx (column update).
        let s_conj = s.conj();
        for j in 0..m {
            let pk = self.p[j * m + k];
            let pi = self.p[j * m + i];
            self.p[j * m + k] = c * pk + s * pi;
            self.p[j * m + i] = -s_conj * pk + c * pi;
        }
        if idx + 1 < self.chain.coords.len() {
            // T <- G_{idx+1}^{-1} T, so T excludes the next active plane.
            let (k2, i2) = self.chain.coords[idx + 1];
            let (c2, s2) = self.rotation(params, idx + 1);
            let s2_conj = s2.conj();
            for d in 0..dim {
                let tk = self.t[k2 * dim + d];
                let ti = self.t[i2 * dim + d];
                self.t[k2 * dim + d] = c2 * tk + s2_conj * ti;
                self.t[i2 * dim + d] = -s2 * tk + c2 * ti;
            }
        }
    }
}

fn rotate_rows(data: &mut [Complex64], width: usize, k: usize, i: usize, c: f64, s: Complex64) {
    let s_conj = s.conj();
    for d in 0..width {
        let a = data[k * width + d];
        let b = data[i * width + d];
        data[k * width + d] = c * a - s_conj * b;
        data[i * width + d] = s * a + c * b;
    }
}

const TAU: f64 = std::f64::consts::TAU;
const GRID_POINTS: usize = 12;
const GOLDEN_ITERS: usize = 26;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Periodic line search: coarse grid over one full period, then
/// golden-section refinement around the best bracket.
fn line_search(mut f: impl FnMut(f64) -> f64, start_x: f64, start_val: f64) -> (f64, f64) {
    let mut best_x = start_x;
    let mut best_val = start_val;
    for g in 0..GRID_POINTS {
        let x = TAU * g as f64 / GRID_POINTS as f64;
        let val = f(x);
        if val < best_val {
            best_val = val;
            best_x = x;
        }
    }
    let h = TAU / GRID_POINTS as f64;
    let mut lo = best_x - h;
    let mut hi = best_x + h;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..GOLDEN_ITERS {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let (gx, gv) = if f1 < f2 { (x1, f1) } else { (x2, f2) };
    if gv < best_val {
        (gx, gv)
    } else {
        (best_x, best_val)
    }
}

struct RestartOutcome {
    value: f64,
    params: Vec<f64>,
    converged: bool,
}

fn optimize_restart<F: Fn(&StateVector) -> f64>(
    chain: &GivensChain,
    support: &Support,
    objective: &F,
    seed: u64,
    tol: f64,
    max_iters: usize,
) -> RestartOutcome {
    let mut rng = rng_for(seed);
    let mut params: Vec<f64> = (0..chain.n_params())
        .map(|_| rng.gen_range(0.0..TAU))
        .collect();
    let mut ev = Evaluator::new(chain, support, objective);
    let n_planes = chain.coords.len();
    let mut current = f64::INFINITY;
    let mut converged = false;
    for _ in 0..max_iters {
        ev.start_sweep(&params, support);
        let mut before = f64::INFINITY;
        for idx in 0..n_planes {
            let (k, i) = chain.coords[idx];
            ev.begin_plane();
            let theta_slot = if chain.complex { 2 * idx } else { idx };

            let phase = if chain.complex {
                params[2 * idx + 1]
            } else {
                0.0
            };
            let theta0 = params[theta_slot];
            let eval_theta = |ev: &mut Evaluator<F>, x: f64| {
                let s = if chain.complex {
                    Complex64::from_polar(x.sin(), phase)
                } else {
                    Complex64::new(x.sin(), 0.0)
                };
                ev.eval_plane(k, i, x.cos(), s)
            };
            let start_val = eval_theta(&mut ev, theta0);
            if idx == 0 {
                before = start_val;
            }
            let (theta, val) = line_search(|x| eval_theta(&mut ev, x), theta0, start_val);
            params[theta_slot] = theta;
            current = val;

            if chain.complex {
                let (c, sin_t) = (theta.cos(), theta.sin());
                let (phi, val) = line_search(
                    |ph| ev.eval_plane(k, i, c, Complex64::from_polar(sin_t, ph)),
                    params[2 * idx + 1],
                    current,
                );
                params[2 * idx + 1] = phi;
                current = val;
            }
            ev.advance(&params, idx);
        }
        if before - current < tol {
            converged = true;
            break;
        }
    }
    RestartOutcome {
        value: current,
        params,
        converged,
    }
}

/// Minimizes the ensemble average of `objective` over all decompositions.
///
/// Each restart runs an independent coordinate descent from random angles;
/// the best restart wins (ties break toward the lower restart index). A
/// rank-one density needs no optimization and returns its single pure state.
/// Non-convergence within `max_iters` sweeps is reported through the
/// `converged` flag, with the best ensemble found so far.
pub fn roof_minimize<F>(rho: &DensityMatrix, objective: F, cfg: &RoofConfig) -> Result<RoofResult>
where
    F: Fn(&StateVector) -> f64 + Sync,
{
    let eig = rho.eig()?;
    let support = support_of(rho, &eig);
    if support.rank <= 1 {
        let state = StateVector {
            field: rho.field(),
            n_factors: rho.n_factors(),
            amps: {
                let w = support.weighted[0].clone();
                let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                w.into_iter().map(|z| z / norm).collect()
            },
        };
        let value = objective(&state);
        let best = Decomposition {
            weights: vec![1.0],
            states: vec![state],
        };
        let residual = best.reconstruction_residual(rho);
        return Ok(RoofResult {
            value,
            best,
            restarts_used: 0,
            converged: true,
            residual,
        });
    }

    let r = support.rank;
    let m = cfg.m.unwrap_or(2 * r).clamp(r, 4 * r);
    let chain = GivensChain::new(rho.field(), m, r);

    let outcomes = map_indexed(cfg.exec, cfg.restarts.max(1), |i| {
        optimize_restart(
            &chain,
            &support,
            &objective,
            cfg.seed.wrapping_add(i as u64),
            cfg.tol,
            cfg.max_iters,
        )
    });
    let best_outcome = outcomes
        .into_iter()
        .reduce(|best, next| if next.value < best.value { next } else { best })
        .expect("at least one restart");

    let mut v = vec![Complex64::new(0.0, 0.0); m * r];
    chain.build(&best_outcome.params, &mut v);
    let best = support.decomposition(&v, m);
    let value = best.average(&objective);
    let residual = best.reconstruction_residual(rho);
    Ok(RoofResult {
        value,
        best,
        restarts_used: cfg.restarts.max(1),
        converged: best_outcome.converged,
        residual,
    })
}

/// Minimum ensemble average over `n_samples` uniformly random isometries.
///
/// An independent, optimization-free upper bound on the convex roof, used
/// as an oracle against [`roof_minimize`].
pub fn oracle_sample<F>(
    rho: &DensityMatrix,
    objective: F,
    n_samples: usize,
    m: usize,
    seed: u64,
    exec: Exec,
) -> Result<f64>
where
    F: Fn(&StateVector) -> f64 + Sync,
{
    let eig = rho.eig()?;
    let support = support_of(rho, &eig);
    let r = support.rank;
    if r <= 1 {
        let state = StateVector {
            field: rho.field(),
            n_factors: rho.n_factors(),
            amps: {
                let w = support.weighted[0].clone();
                let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                w.into_iter().map(|z| z / norm).collect()
            },
        };
        return Ok(objective(&state));
    }
    let m = m.max(r);
    let values = map_indexed(exec, n_samples.max(1), |s| {
        let mut rng = rng_for(seed.wrapping_add(s as u64));
        let v = random_isometry(&mut rng, support.field, m, r);
        support.decomposition(&v, m).average(&objective)
    });
    Ok(values.into_iter().fold(f64::INFINITY, f64::min))
}

/// Gaussian matrix orthonormalized column by column.
fn random_isometry(
    rng: &mut rand_chacha::ChaCha8Rng,
    field: Field,
    m: usize,
    r: usize,
) -> Vec<Complex64> {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(r);
    while cols.len() < r {
        let mut col: Vec<Complex64> = (0..m)
            .map(|_| match field {
                Field::Real => Complex64::new(rng.sample(StandardNormal), 0.0),
                Field::Complex => {
                    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
                }
            })
            .collect();
        for _ in 0..2 {
            for prev in &cols {
                let overlap: Complex64 = prev.iter().zip(&col).map(|(p, c)| p.conj() * c).sum();
                for (c, p) in col.iter_mut().zip(prev) {
                    *c -= overlap * p;
                }
            }
        }
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        for z in col.iter_mut() {
            *z /= norm;
        }
        cols.push(col);
    }
    let mut data = vec![Complex64::new(0.0, 0.0); m * r];
    for (k, col) in cols.iter().enumerate() {
        for i in 0..m {
            data[i * r + k] = col[i];
        }
    }
    data
}
