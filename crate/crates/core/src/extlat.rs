//! The extended energy lattice: nonnegative exact values with a bottom
//! element below zero and a top element above every finite value.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalar::Scalar;

/// An element of the lattice `[0, ⊤]` extended with `⊥`.
///
/// The derived order is the lattice order: `Bottom < Finite(p) < Top`, and
/// finite values compare as rationals. A `Finite` value is never negative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext<T> {
    Bottom,
    Finite(T),
    Top,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtParseError {
    #[error("`{0}` is not `bot`, `top` or a rational `p/q`")]
    Syntax(String),
    #[error("energy level `{0}` is negative")]
    Negative(String),
}

impl<T: Scalar> Ext<T> {
    /// A finite level, or `None` if `v` is negative.
    pub fn finite(v: T) -> Option<Self> {
        if v.is_negative() {
            None
        } else {
            Some(Ext::Finite(v))
        }
    }

    pub fn zero() -> Self {
        Ext::Finite(T::zero())
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Ext::Bottom)
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Ext::Top)
    }

    pub fn as_finite(&self) -> Option<&T> {
        match self {
            Ext::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Add a signed offset. `⊥` and `⊤` absorb; a finite result below zero is `⊥`.
    pub fn shift(&self, d: &T) -> Self {
        match self {
            Ext::Bottom => Ext::Bottom,
            Ext::Top => Ext::Top,
            Ext::Finite(p) => {
                let r = p.clone() + d.clone();
                if r.is_negative() {
                    Ext::Bottom
                } else {
                    Ext::Finite(r)
                }
            }
        }
    }

    pub fn join(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn meet(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }
}

/// Lattice comparison; identical to the derived `Ord`.
pub fn ext_cmp<T: Scalar>(x: &Ext<T>, y: &Ext<T>) -> Ordering {
    x.cmp(y)
}

impl<T: Scalar> fmt::Display for Ext<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::Bottom => f.write_str("bot"),
            Ext::Top => f.write_str("top"),
            Ext::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl<T: Scalar> FromStr for Ext<T> {
    type Err = ExtParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "bot" => Ok(Ext::Bottom),
            "top" => Ok(Ext::Top),
            other => {
                let v = T::parse_exact(other).ok_or_else(|| ExtParseError::Syntax(s.to_string()))?;
                Ext::finite(v).ok_or_else(|| ExtParseError::Negative(s.to_string()))
            }
        }
    }
}

impl<T: Scalar> Serialize for Ext<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Ext<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    type E = Ext<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn fin(n: i64, d: i64) -> E {
        Ext::Finite(q(n, d))
    }

    #[test]
    fn shift_saturates() {
        assert_eq!(E::Bottom.shift(&q(-3, 1)), E::Bottom);
        assert_eq!(E::Top.shift(&q(5, 1)), E::Top);
        assert_eq!(fin(3, 2).shift(&q(-2, 1)), E::Bottom);
        assert_eq!(fin(3, 2).shift(&q(-3, 2)), fin(0, 1));
        assert_eq!(fin(3, 2).shift(&q(1, 2)), fin(2, 1));
    }

    #[test]
    fn join_examples() {
        assert_eq!(E::Bottom.join(&fin(0, 1)), fin(0, 1));
        assert_eq!(fin(1, 3).join(&fin(1, 2)), fin(1, 2));
        assert_eq!(E::Top.join(&fin(7, 1)), E::Top);
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(ext_cmp(&E::Bottom, &E::Bottom), Ordering::Equal);
        assert_eq!(ext_cmp(&fin(2, 1), &E::Top), Ordering::Less);
        assert_eq!(ext_cmp(&fin(4, 2), &fin(2, 1)), Ordering::Equal);
    }

    #[test]
    fn string_forms() {
        for s in ["bot", "top", "3/2", "7", "0"] {
            let v: E = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!("6/4".parse::<E>().unwrap().to_string(), "3/2");
        assert!(matches!("-1".parse::<E>(), Err(ExtParseError::Negative(_))));
        assert!(matches!("inf".parse::<E>(), Err(ExtParseError::Syntax(_))));
        let json = serde_json::to_string(&fin(3, 2)).unwrap();
        assert_eq!(json, "\"3/2\"");
        assert_eq!(serde_json::from_str::<E>(&json).unwrap(), fin(3, 2));
    }

    fn arb_ext() -> impl Strategy<Value = E> {
        prop_oneof![
            Just(E::Bottom),
            Just(E::Top),
            (0i64..40, 1i64..6).prop_map(|(n, d)| fin(n, d)),
        ]
    }

    proptest! {
        #[test]
        fn join_is_a_semilattice(x in arb_ext(), y in arb_ext(), z in arb_ext()) {
            prop_assert_eq!(x.join(&y), y.join(&x));
            prop_assert_eq!(x.join(&y).join(&z), x.join(&y.join(&z)));
            prop_assert_eq!(x.join(&x), x.clone());
        }

        #[test]
        fn order_is_total(x in arb_ext(), y in arb_ext(), z in arb_ext()) {
            if x <= y && y <= x { prop_assert_eq!(&x, &y); }
            if x <= y && y <= z { prop_assert!(x <= z); }
            prop_assert!(x <= y || y <= x);
        }

        #[test]
        fn shifts_compose(x in arb_ext(), a in -20i64..20, b in -20i64..20) {
            let (a, b) = (q(a, 2), q(b, 3));
            let once = x.shift(&(a.clone() + b.clone()));
            let mid = x.shift(&a);
            match (&x, &mid) {
                (Ext::Finite(_), Ext::Finite(_)) => {
                    let twice = mid.shift(&b);
                    prop_assert_eq!(twice, once);
                }
                (Ext::Bottom, _) | (Ext::Top, _) => prop_assert_eq!(mid, x),
                _ => {}
            }
        }
    }
}
