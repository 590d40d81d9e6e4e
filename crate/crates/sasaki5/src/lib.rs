//! Invariants of Seifert circle bundles over log Del Pezzo surfaces.
//!
//! The crate is organized around a small exact-arithmetic kernel:
//!
//! * [`abelian`] — integer matrices, Smith normal form, cokernels and
//!   finite abelian groups in invariant-factor form, plus the classifier
//!   for the torsion shapes that can occur as `tors H_2` of a positive
//!   Sasakian 5-manifold.
//! * [`surface`] — rational surfaces with cyclic quotient singularities
//!   (projective plane, quadrics, Hirzebruch surfaces, weighted projective
//!   planes and weighted blow-ups) with exact rational intersection theory.
//! * [`seifert`] — Seifert bundle data over a surface model: Chern class,
//!   smoothness, pre-SE test, `H_1` vanishing, torsion of `H_2`, the `H^3`
//!   exact sequence and the Kahler-Einstein inequality.
//! * [`klt`] — log-terminality tests for plane curve germs: the closed-form
//!   bound and the iterative Newton-polygon algorithm with the degree-n
//!   cover substitution.
//! * [`links`] — an independent oracle computing `H_2` of Brieskorn-Pham
//!   links from the Milnor-fiber monodromy.
//! * [`catalog`] — machine-readable tables of base surfaces, the surfaces
//!   with nontrivial `pi_1(S^0)`, the hypersurface realizations, and the
//!   verification drivers over them.
//!
//! Everything is computed in exact integer / rational arithmetic; nothing
//! is ever rounded.

pub mod abelian;
pub mod catalog;
pub mod cli;
pub mod klt;
pub mod links;
pub mod seifert;
pub mod surface;

use num::BigInt;

/// Exact rational scalar used throughout the crate.
pub type Rat = num::BigRational;

/// Serialize exact scalars as decimal strings for stable, readable JSON.
pub(crate) mod serde_str {
    use serde::Serializer;

    pub fn ser<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn ser_vec<T: std::fmt::Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(ToString::to_string))
    }

    pub fn ser_opt<T: std::fmt::Display, S: Serializer>(
        v: &Option<T>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.collect_str(x),
            None => s.serialize_none(),
        }
    }
}

/// Shorthand for an exact rational from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an exact rational from an integer.
pub fn rint(num: i64) -> Rat {
    Rat::from(BigInt::from(num))
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("basis mismatch: expected {expected} coordinates, got {got}")]
    BasisMismatch { expected: usize, got: usize },
    #[error("data not encoded: {0}")]
    DataNotEncoded(String),
    #[error("surface is outside the weighted blow-up family: {0}")]
    OutsideFamily(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("class {0} has non-integral genus; not a valid curve class")]
    NonIntegralGenus(String),
    #[error("germ support lies entirely on one coordinate axis and no polygon test applies: {0}")]
    AxisSupport(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
