//! Exact and numeric checks of weighted partition identities: signed sums
//! over distinct-part partitions against generalized divisor sums.
//!
//! The crate is split along the objects the identities are built from:
//!
//! - [`partition`]: partition and distinct-part partition streams plus the
//!   statistics (smallest part, largest part, number of parts, number of
//!   distinct part sizes) every identity consumes.
//! - [`arith`]: divisor sums, polynomials in the weight variable `c`,
//!   complex powers, the fractional weight operator and Bell polynomials.
//! - [`series`]: truncated power series in `q` over an exact coefficient
//!   ring, q-Pochhammer products and the generating functions built from
//!   them.
//! - [`involution`]: the sign-reversing pairing on distinct-part partitions
//!   and the class-sum lemma it proves.
//! - [`identities`]: a closed registry of identity checkers producing
//!   machine-readable reports.

pub mod arith;
pub mod error;
pub mod identities;
pub mod involution;
pub mod partition;
pub mod series;

pub use error::{Error, Result};
