//! Exact-arithmetic engine for normal bundles of Veronese embeddings.
//!
//! The crate builds polynomial presentation matrices of the normal bundle of
//! `v_{n,d}: P^n -> P(Sym^d V)`, restricts them along rational curves, and
//! computes splitting types on the projective line. All arithmetic is over
//! exact rationals.

pub mod chow;
pub mod curves;
pub mod error;
pub mod exactalg;
pub mod gradedmap;
pub mod p1split;
pub mod polyring;
pub mod rng;
pub mod symlin;
pub mod verify;
pub mod veronese;

pub use error::{Error, Result};
pub use exactalg::{QMatrix, Rat};
pub use gradedmap::{CurveParam, GradedMap};
pub use p1split::SplittingType;
pub use polyring::{HomPoly, Monomial};
pub use veronese::VeroneseContext;
