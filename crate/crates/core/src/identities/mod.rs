//! Registry of identity checkers.
//!
//! Each [`IdentityId`] maps to exactly one checker. Exact mode compares
//! both sides as polynomials in `c` (or as integers / q-series) with no
//! tolerance. Numeric mode evaluates both sides for complex exponent and
//! weight over a fixed grid and compares them at a relative tolerance.

mod check;
mod profile;
mod report;
mod sides;

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

pub use check::{check_all, check_identity, check_thm22, default_numeric_grid, CheckConfig};
pub use profile::{distinct_profile, partition_profile, DistinctProfile, PartitionProfile};
pub use report::{
    reports_to_csv, reports_to_json, reports_to_text, CheckRange, FailureDetail, IdentityReport, Mode,
    Status,
};
pub use sides::{
    check_agl, check_cor25, check_cor27, dilcher_convolutions, lhs_rhs_thm21, lhs_rhs_thm23,
    lhs_rhs_thm26, Sides,
};

/// The identities the engine can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    /// Alternating sum of smallest parts over `D(n)` equals `d(n)`.
    BsBasic,
    /// Integer-power weighted form, equal to `sigma_z(n)`.
    BsInt,
    /// One-variable weighted form, equal to `sigma_{z,c}(n)`.
    BsOnevar,
    /// `M_1 = Kluyver sum = sum q^n / (1 - q^n)`.
    UchimuraTriple,
    /// `sum (-1)^{n-1} c^n q^{n(n+1)/2} / ((1-q^n)(cq)_n) = sum c^n q^n / (1-q^n)`.
    Entry4,
    /// Convolution formulas for the q-coefficients of `M_1 .. M_4`.
    DilcherCm,
    /// `[q^n] M_{m,c} = sum_{D(n)} (-1)^{#-1} s^m c^s`.
    Eq113,
    /// Binomial k-fold identity (three expressions).
    Thm12,
    /// Exponential generating function relation between `M_{m,c}` and `K_{m,c}`.
    Thm22Exp,
    /// `M_{m,c} = A(c,q) Y_m(K_{1,c}, ..., K_{m,c})`.
    Thm22Bell,
    /// Smallest-part power weights over `D(n)` against a binomial sum over `P(n)`.
    Thm23,
    /// `c = 1` case of `Thm23`, plus its `k = 1` reduction to `d(n)`.
    Cor24,
    /// `p^(2)(n)` from divisor convolutions.
    Cor25,
    /// `sum_{j <= s} j^k c^j` weights against `P(n)` with at least two part sizes.
    Thm26,
    /// `p^(2)(n) = sum_{D(n)} (-1)^# s (l - s)`.
    Cor27,
    /// Partition identity of Andrews, Garvan and Liang.
    AglPti,
    /// The same identity multiplied by `c - 1`.
    AglScaled,
    /// Signed count of `D(n) ∩ C(N)` equals `[N | n]`.
    ClassSum,
}

impl IdentityId {
    pub const ALL: [IdentityId; 18] = [
        IdentityId::BsBasic,
        IdentityId::BsInt,
        IdentityId::BsOnevar,
        IdentityId::UchimuraTriple,
        IdentityId::Entry4,
        IdentityId::DilcherCm,
        IdentityId::Eq113,
        IdentityId::Thm12,
        IdentityId::Thm22Exp,
        IdentityId::Thm22Bell,
        IdentityId::Thm23,
        IdentityId::Cor24,
        IdentityId::Cor25,
        IdentityId::Thm26,
        IdentityId::Cor27,
        IdentityId::AglPti,
        IdentityId::AglScaled,
        IdentityId::ClassSum,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            IdentityId::BsBasic => "BS_BASIC",
            IdentityId::BsInt => "BS_INT",
            IdentityId::BsOnevar => "BS_ONEVAR",
            IdentityId::UchimuraTriple => "UCHIMURA_TRIPLE",
            IdentityId::Entry4 => "ENTRY4",
            IdentityId::DilcherCm => "DILCHER_CM",
            IdentityId::Eq113 => "EQ_1_13",
            IdentityId::Thm12 => "THM_1_2",
            IdentityId::Thm22Exp => "THM_2_2_EXP",
            IdentityId::Thm22Bell => "THM_2_2_BELL",
            IdentityId::Thm23 => "THM_2_3",
            IdentityId::Cor24 => "COR_2_4",
            IdentityId::Cor25 => "COR_2_5",
            IdentityId::Thm26 => "THM_2_6",
            IdentityId::Cor27 => "COR_2_7",
            IdentityId::AglPti => "AGL_PTI",
            IdentityId::AglScaled => "AGL_SCALED",
            IdentityId::ClassSum => "CLASS_SUM",
        }
    }

    /// Identities that have a complex-parameter form.
    pub fn supports_numeric(self) -> bool {
        matches!(self, IdentityId::BsOnevar | IdentityId::Thm23 | IdentityId::Cor24 | IdentityId::Thm26)
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    /// Case-insensitive; `-` and `_` are interchangeable.
    fn from_str(s: &str) -> Result<Self, Error> {
        let wanted = s.trim().to_ascii_uppercase().replace('-', "_");
        IdentityId::ALL
            .into_iter()
            .find(|id| id.tag() == wanted)
            .ok_or_else(|| Error::Usage(format!("unknown identity tag {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.tag().parse::<IdentityId>().unwrap(), id);
        }
        assert_eq!("class_sum".parse::<IdentityId>().unwrap(), IdentityId::ClassSum);
        assert_eq!("thm-2-2-bell".parse::<IdentityId>().unwrap(), IdentityId::Thm22Bell);
        assert!(matches!("nope".parse::<IdentityId>(), Err(Error::Usage(_))));
    }
}
