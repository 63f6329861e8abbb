//! Exact scalar types usable as energy levels.
//!
//! Everything in this crate is generic over [`Scalar`]. Only exact ordered
//! fields qualify: equality of canonical forms is syntactic, so a rounding
//! scalar such as `f64` would make canonical equality meaningless.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed};

/// An exact, totally ordered field element.
pub trait Scalar:
    Clone + Ord + Num + Signed + Hash + Debug + Display + FromStr + Send + Sync + 'static
{
    /// `numer / denom`; `denom` must be nonzero.
    fn ratio(numer: i64, denom: i64) -> Self;

    fn int(n: i64) -> Self {
        Self::ratio(n, 1)
    }

    /// Parse the `p/q` (or `p`) syntax used in every serialized form.
    fn parse_exact(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.is_empty() {
            return None;
        }
        s.parse().ok()
    }
}

impl Scalar for Ratio<i64> {
    fn ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(numer, denom)
    }
}

impl Scalar for BigRational {
    fn ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(BigInt::from(numer), BigInt::from(denom))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_are_canonical() {
        let q = BigRational::parse_exact("4/2").unwrap();
        assert_eq!(q, BigRational::int(2));
        assert_eq!(q.to_string(), "2");
        assert_eq!(BigRational::ratio(6, 4).to_string(), "3/2");
        assert!(BigRational::parse_exact("").is_none());
        assert!(BigRational::parse_exact("x/2").is_none());
        assert_eq!(Ratio::<i64>::parse_exact("-3/9"), Some(Ratio::new(-1, 3)));
    }
}
