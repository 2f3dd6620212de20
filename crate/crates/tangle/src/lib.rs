//! Entanglement measures for small systems of qubits and rebits.
//!
//! A rebit is a two-level system in the real-amplitude variant of quantum
//! theory. The tangle of two rebits and the signed three-tangle of three
//! rebits follow the same algebra as their qubit counterparts, except that
//! the rebit three-tangle is four times the Cayley hyperdeterminant with no
//! absolute value, so it can be negative. This crate computes all of these
//! quantities analytically, embeds complex two-qubit states into three-rebit
//! states via the ubit construction, and cross-checks every closed formula
//! against a numerical convex-roof minimizer over decomposition isometries.
//!
//! Modules:
//!
//! * [`mat`] — dense kernels for matrices of dimension ≤ 8: Kronecker
//!   products, partial traces, a Jacobi eigensolver, PSD square roots.
//! * [`state`] — validated state vectors and density matrices over both
//!   fields, plus the JSON wire schema.
//! * [`catalog`] — named fixture states.
//! * [`sample`] — seeded random pure and mixed states.
//! * [`qubit`] — complex-field measures: pure/mixed two-qubit tangle,
//!   hyperdeterminant terms, three-tangle.
//! * [`rebit`] — real-field measures: two-rebit tangle via the trace
//!   formula, signed three-tangle, projective measurements.
//! * [`roof`] — generic convex-roof minimization over Stiefel isometries.
//! * [`ubit`] — the complex-to-real embedding and the relations between
//!   two-qubit and three-rebit entanglement.
//! * [`verify`] — bulk property suites shared by the CLI and the tests.
//!
//! With the default `parallel` feature, convex-roof restarts and the bulk
//! verification suites run on rayon; results are bit-identical to the
//! sequential fallback.

pub mod catalog;
pub mod error;
pub mod exec;
pub mod mat;
pub mod qubit;
pub mod rebit;
pub mod roof;
pub mod sample;
pub mod state;
pub mod ubit;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use mat::{kron, partial_trace, psd_sqrt, sym_eig, EigenResult, Field, Matrix};
pub use state::{DensityMatrix, RealImagSplit, StateData, StateVector};
