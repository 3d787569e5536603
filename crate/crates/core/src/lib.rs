//! Exact min-plus laboratory for the ultra-discrete periodic Toda lattice.
//!
//! The crate provides, over exact rational arithmetic throughout:
//!
//! - the periodic ultra-discrete Toda flow, its conserved quantities and
//!   isolevel sets ([`toda`]);
//! - the periodic box-ball system and its run-length dictionary with the
//!   Toda lattice ([`bbs`]);
//! - the tropical spectral curve of a conserved vector, as a planar metric
//!   graph ([`curve`]);
//! - the tropical Jacobian, Abel-Jacobi map and period lattices
//!   ([`jacobian`]);
//! - the eigenvector map from states to divisors and its composition with
//!   the Abel-Jacobi map, which linearizes the flow ([`eigmap`]);
//! - a registry of machine checks for the structural claims tying all of
//!   the above together ([`verify`]).

pub mod bbs;
pub mod curve;
pub mod eigmap;
pub mod error;
pub mod jacobian;
pub mod matrix;
pub mod numeric;
pub mod toda;
pub mod verify;
pub mod workers;

pub use bbs::{bbs_evolve, beta, rho, BbsState};
pub use curve::{CurveModel, GraphPoint};
pub use eigmap::{pi, psi, psi_inverse};
pub use error::{Error, Result};
pub use jacobian::{in_dg, Basis, Divisor, JacPoint, Jacobian};
pub use numeric::{trop_min, MinResult, Rational};
pub use toda::{conserved, evolve, shift, ConservedVector, TodaState};
pub use verify::{run_all, run_check, CheckReport, VerifyConfig};
