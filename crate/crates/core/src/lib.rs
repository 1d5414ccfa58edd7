//! Exact algebra for checking that `det A` is a unit of `S` whenever a
//! square matrix `A` over a commutative subring `R ⊆ S` is invertible over
//! `S`.
//!
//! * [`ring`], [`rings`]: the ring trait and concrete rings (`ℤ`, `ℤ/m`,
//!   matrix rings, dual numbers, localizations) plus a runtime-selected
//!   [`rings::AnyRing`].
//! * [`freealg`]: polynomials in partially commuting generators.
//! * [`matrix`], [`permutation`], [`expansion`]: matrices, Leibniz and
//!   ordered column expansions, adjugates, inversion over localizations.
//! * [`proof`]: symbolic replay of the argument and the 2×2 trace.
//! * [`consequences`]: concrete checks over dual numbers mod `m`.
//! * [`closure`]: `RT⁻¹`, division and bounded rational closures in finite rings.
//! * [`format`]: matrix and generator files.

pub mod closure;
pub mod consequences;
pub mod error;
pub mod expansion;
pub mod format;
pub mod freealg;
pub mod matrix;
pub mod permutation;
pub mod proof;
pub mod ring;
pub mod rings;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use ring::Ring;
