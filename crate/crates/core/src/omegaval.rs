//! The semimodule of `⊤`-continuous maps `[0, ⊤]_⊥ → 2`, acted on by energy
//! functions through precomposition, and infinite products of lasso-shaped
//! sequences of energy functions.
//!
//! Such a map is monotone, so it is an indicator of an upward-closed set of
//! levels. `⊤`-continuity rules out the set `{⊤}`, which leaves two shapes:
//! the constant `⊥` map ([`Threshold::Never`]) and "from `t` on" with the
//! boundary point included or not.
//!
//! The infinite product `f₀f₁f₂…` is `⊤` at `x` iff the run
//! `x, xf₀, xf₀f₁, …` never reaches `⊥`. For a constant sequence the set of
//! surviving finite levels is exactly `{x : f(x) >= x}`: such an `x` has
//! `fⁿ(x) >= x` forever, and at any other alive level the gain `f(z) - z` is
//! negative and (being nondecreasing in `z`) stays at most its initial value
//! along the strictly decreasing orbit, which therefore drops below zero.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::energyfn::EnergyFn;
use crate::extlat::Ext;
use crate::scalar::Scalar;

/// An element of the semimodule: `⊤` on an upward-closed set of levels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Threshold<T> {
    /// The constant `⊥` map.
    Never,
    /// `⊤` at every finite `x >= threshold` (`x > threshold` when not
    /// inclusive) and at `⊤`.
    From { threshold: T, inclusive: bool },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("a lasso needs a nonempty cycle")]
pub struct EmptyCycle;

impl<T: Scalar> Threshold<T> {
    pub fn from(threshold: T, inclusive: bool) -> Self {
        Threshold::From { threshold, inclusive }
    }

    pub fn is_never(&self) -> bool {
        matches!(self, Threshold::Never)
    }

    /// Evaluate at a level; `true` stands for `⊤` in `2`.
    pub fn apply(&self, x: &Ext<T>) -> bool {
        match (self, x) {
            (Threshold::Never, _) | (_, Ext::Bottom) => false,
            (Threshold::From { .. }, Ext::Top) => true,
            (Threshold::From { threshold, inclusive }, Ext::Finite(v)) => {
                v > threshold || (*inclusive && v == threshold)
            }
        }
    }

    /// Pointwise supremum.
    pub fn join(&self, other: &Self) -> Self {
        match (self, other) {
            (Threshold::Never, v) | (v, Threshold::Never) => v.clone(),
            (
                Threshold::From { threshold: a, inclusive: ia },
                Threshold::From { threshold: b, inclusive: ib },
            ) => {
                if a < b {
                    self.clone()
                } else if b < a {
                    other.clone()
                } else {
                    Threshold::from(a.clone(), *ia || *ib)
                }
            }
        }
    }

    /// Pointwise order `self <= other`.
    pub fn leq(&self, other: &Self) -> bool {
        self.join(other) == *other
    }

    /// `f·v`: first `f`, then `v`.
    pub fn act(f: &EnergyFn<T>, v: &Self) -> Self {
        let Threshold::From { threshold, inclusive } = v else {
            return Threshold::Never;
        };
        if f.is_bottom() {
            return Threshold::Never;
        }
        let hit = f.profile().least_satisfying(
            |_, fx| v.apply(fx),
            |p, at, slope| {
                let c = p.clone() + (threshold.clone() - at.clone()) / slope.clone();
                Some((c, *inclusive))
            },
        );
        Self::from_hit(hit)
    }

    /// `f^ω`: `⊤` exactly at the finite levels `x` with `f(x) >= x`.
    pub fn omega(f: &EnergyFn<T>) -> Self {
        if f.is_bottom() {
            return Threshold::Never;
        }
        let hit = f.profile().least_satisfying(
            |p, fx| *fx >= Ext::Finite(p.clone()),
            |p, at, slope| {
                let one = T::one();
                if *slope == one {
                    (at >= p).then(|| (p.clone(), true))
                } else {
                    let c = p.clone() + (p.clone() - at.clone()) / (slope.clone() - one);
                    Some((c, true))
                }
            },
        );
        Self::from_hit(hit)
    }

    fn from_hit(hit: Option<(T, bool)>) -> Self {
        match hit {
            None => Threshold::Never,
            Some((threshold, inclusive)) => Threshold::From { threshold, inclusive },
        }
    }

    /// The infinite product `prefix · cycle · cycle · …`.
    pub fn lasso(prefix: &[EnergyFn<T>], cycle: &[EnergyFn<T>]) -> Result<Self, EmptyCycle> {
        if cycle.is_empty() {
            return Err(EmptyCycle);
        }
        let head = EnergyFn::compose_all(prefix);
        let period = EnergyFn::compose_all(cycle);
        Ok(Self::act(&head, &Self::omega(&period)))
    }
}

impl<T: Scalar> fmt::Display for Threshold<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Never => f.write_str("never"),
            Threshold::From { threshold, inclusive: true } => write!(f, "from {threshold} inclusive"),
            Threshold::From { threshold, inclusive: false } => write!(f, "from {threshold} exclusive"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "lowercase", deny_unknown_fields)]
enum Wire {
    Never,
    From { threshold: String, inclusive: bool },
}

impl<T: Scalar> Serialize for Threshold<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Threshold::Never => Wire::Never,
            Threshold::From { threshold, inclusive } => {
                Wire::From { threshold: threshold.to_string(), inclusive: *inclusive }
            }
        }
        .serialize(serializer)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Threshold<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match Wire::deserialize(deserializer)? {
            Wire::Never => Ok(Threshold::Never),
            Wire::From { threshold, inclusive } => {
                let t = T::parse_exact(&threshold)
                    .ok_or_else(|| D::Error::custom(format!("threshold `{threshold}` is not a rational")))?;
                if t.is_negative() {
                    return Err(D::Error::custom(format!("threshold `{threshold}` is negative")));
                }
                Ok(Threshold::from(t, inclusive))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energyfn::{Cut, Piece};
    use crate::{EnergyFunction, Rational, ThresholdPredicate};

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn fin(n: i64, d: i64) -> Ext<Rational> {
        Ext::Finite(q(n, d))
    }

    fn from(n: i64, inclusive: bool) -> ThresholdPredicate {
        Threshold::from(q(n, 1), inclusive)
    }

    /// ⊥ below 2, then 2x - 2.
    fn doubling() -> EnergyFunction {
        EnergyFn::new(
            Some(Cut::new(q(2, 1), false)),
            vec![Piece::new(q(2, 1), q(2, 1), q(2, 1))],
            None,
        )
        .unwrap()
    }

    #[test]
    fn apply_examples() {
        assert!(!ThresholdPredicate::Never.apply(&Ext::Top));
        assert!(from(5, true).apply(&fin(5, 1)));
        assert!(!from(5, false).apply(&fin(5, 1)));
        assert!(from(5, false).apply(&Ext::Top));
        assert!(!from(0, true).apply(&Ext::Bottom));
    }

    #[test]
    fn act_examples() {
        let plus2 = EnergyFunction::shift(q(2, 1));
        assert_eq!(Threshold::act(&plus2, &from(5, true)), from(3, true));
        assert_eq!(Threshold::act(&plus2, &ThresholdPredicate::Never), ThresholdPredicate::Never);
        assert_eq!(Threshold::act(&EnergyFunction::bottom(), &from(0, true)), ThresholdPredicate::Never);
        // f(x) = x + 2 already exceeds 1 everywhere.
        assert_eq!(Threshold::act(&plus2, &from(1, true)), from(0, true));
        assert_eq!(Threshold::act(&EnergyFunction::top(), &from(9, false)), from(0, true));
    }

    #[test]
    fn join_examples() {
        assert_eq!(from(2, true).join(&from(5, true)), from(2, true));
        assert_eq!(from(2, false).join(&from(2, true)), from(2, true));
        assert_eq!(ThresholdPredicate::Never.join(&from(4, false)), from(4, false));
        assert!(from(5, true).leq(&from(2, false)));
        assert!(from(2, false).leq(&from(2, true)));
        assert!(!from(2, true).leq(&from(2, false)));
    }

    #[test]
    fn omega_examples() {
        assert_eq!(Threshold::omega(&EnergyFunction::identity()), from(0, true));
        assert_eq!(Threshold::omega(&EnergyFunction::shift(q(-1, 1))), ThresholdPredicate::Never);
        assert_eq!(Threshold::omega(&doubling()), from(2, true));
        assert_eq!(Threshold::omega(&EnergyFunction::bottom()), ThresholdPredicate::Never);
        assert_eq!(Threshold::omega(&EnergyFunction::top()), from(0, true));
    }

    #[test]
    fn lasso_examples() {
        let plus2 = EnergyFunction::shift(q(2, 1));
        let minus1 = EnergyFunction::shift(q(-1, 1));
        let id = EnergyFunction::identity();
        assert_eq!(Threshold::lasso(&[plus2], std::slice::from_ref(&minus1)).unwrap(), ThresholdPredicate::Never);
        assert_eq!(Threshold::lasso(&[], std::slice::from_ref(&id)).unwrap(), from(0, true));
        assert_eq!(
            Threshold::lasso(&[EnergyFunction::bottom()], std::slice::from_ref(&id)).unwrap(),
            ThresholdPredicate::Never
        );
        assert_eq!(ThresholdPredicate::lasso(&[id], &[]), Err(EmptyCycle));
    }

    #[test]
    fn json_forms() {
        let v = from(3, true);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"tag":"from","threshold":"3","inclusive":true}"#);
        assert_eq!(serde_json::from_str::<ThresholdPredicate>(&s).unwrap(), v);
        let never = serde_json::to_string(&ThresholdPredicate::Never).unwrap();
        assert_eq!(never, r#"{"tag":"never"}"#);
        assert!(serde_json::from_str::<ThresholdPredicate>(r#"{"tag":"from","threshold":"-1","inclusive":true}"#).is_err());
    }
}
