//! Exact arithmetic for vector-valued modular functions of the modular group.
//!
//! Everything here works over exact coefficient fields (big rationals or
//! cyclotomic fields) with explicit truncation orders; no floating point is
//! used on any correctness path. The crate is `no_std` and only needs `alloc`.
//!
//! The layers, bottom up:
//!
//! * [`exactnum`]: rationals, cyclotomic fields with Galois action, dense
//!   matrices with fraction-free elimination.
//! * [`qseries`]: truncated q-series with a rational leading exponent, the
//!   classical series (η, Δ, Eisenstein series, the Hauptmodul `J`,
//!   `E = E10/Δ`, the uniformizer `z`) and the operator `∇`.
//! * [`repdata`]: exponent and characteristic matrices `(Λ, X)`, the derived
//!   matrices `A`, `B`, and the algebraic validators.
//! * [`fundamental`]: the fundamental matrix as an exact series, with
//!   determinant, hypergeometric, duality and exponent-shift checks.
//! * [`basis`]: canonical basis vectors, principal parts, the inversion map
//!   and the bivariate generating function.
//! * [`forms`]: half-integer weight forms through the η-twist.
//! * [`reptools`]: diagnostics on the representation matrices `S`, `T`.
//! * [`fixtures`]: the reference data sets (one-dimensional characters, the
//!   level one `E7` and `A1` models, the Ising family).

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod basis;
pub mod error;
pub mod exactnum;
pub mod fixtures;
pub mod forms;
pub mod fundamental;
pub mod qseries;
pub mod repdata;
pub mod reptools;

pub use error::{Error, Result};
pub use exactnum::{BigRational, Cyclotomic, Matrix, Scalar};
pub use qseries::{BivariateSeries, QSeries};
