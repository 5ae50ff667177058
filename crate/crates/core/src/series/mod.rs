//! Truncated power series in `q` with exact coefficients, and the
//! generating functions the identities are stated in.
//!
//! The coefficient ring is a type parameter: [`num_rational::BigRational`]
//! for a fixed rational weight `c`, or [`crate::arith::CPolynomial`] to keep
//! `c` symbolic. Passing `CPolynomial::c()` as the weight selects the
//! symbolic mode.

mod exp_series;
mod generating;
mod truncated;

pub use exp_series::ExpSeries;
pub use generating::{
    pochhammer_finite, pochhammer_infinite, pochhammer_shifted_infinite, series_a, series_a_euler,
    series_a_quotient, series_dilcher_binomial, series_entry4, series_k, series_k_divisor,
    series_k_lambert, series_m, DilcherForms, Entry4Sides, DEFAULT_ORDER, DILCHER_MAX_K,
};
pub use truncated::TruncatedSeries;
pub(crate) use truncated::ring_pow;
