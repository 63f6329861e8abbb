//! Energy functions: monotone maps on `[0, ⊤]_⊥` with `f(y) >= f(x) + y - x`
//! for finite alive `x < y`, represented exactly as piecewise-affine laws
//! with slope at least one.
//!
//! The representation is canonical, so extensional equality is `==`:
//!
//! * a `⊥` region `[0, b)` or `[0, b]` (`floor`; `None` means constant `⊥`),
//! * left-closed affine pieces covering the alive region, adjacent pieces
//!   with the same affine law always merged; two pieces may share a start,
//!   and then the first one only gives the value at that point (needed where
//!   a join meets the edge of an inclusive `⊥` region),
//! * an optional `⊤` region `(t, ∞)` or `[t, ∞)` (`ceiling`).
//!
//! The values at `⊥` and `⊤` are derived: `f(⊥) = ⊥`, and `f(⊤) = ⊤` unless
//! `f` is constant `⊥`.

mod json;
pub(crate) mod profile;

use std::fmt;

use thiserror::Error;

use crate::extlat::Ext;
use crate::scalar::Scalar;
use profile::{Law, Profile};

/// A boundary position with explicit membership of the boundary point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cut<T> {
    pub at: T,
    pub inclusive: bool,
}

impl<T> Cut<T> {
    pub fn new(at: T, inclusive: bool) -> Self {
        Cut { at, inclusive }
    }
}

/// `f(x) = intercept + slope * (x - start)` from `start` up to the next piece.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Piece<T> {
    pub start: T,
    pub intercept: T,
    pub slope: T,
}

impl<T: Scalar> Piece<T> {
    pub fn new(start: T, intercept: T, slope: T) -> Self {
        Piece { start, intercept, slope }
    }

    fn at(&self, x: &T) -> T {
        self.intercept.clone() + self.slope.clone() * (x.clone() - self.start.clone())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnergyFnError {
    #[error("piece starting at {start} has slope {slope} < 1")]
    SlopeTooSmall { start: String, slope: String },
    #[error("function decreases at {at}")]
    NonMonotone { at: String },
    #[error("piece starting at {start} takes the negative value {value}")]
    NegativeValue { start: String, value: String },
    #[error("malformed pieces: {0}")]
    MalformedPieces(String),
}

fn malformed<T>(msg: impl Into<String>) -> Result<T, EnergyFnError> {
    Err(EnergyFnError::MalformedPieces(msg.into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EnergyFn<T> {
    floor: Option<Cut<T>>,
    pieces: Vec<Piece<T>>,
    ceiling: Option<Cut<T>>,
}

impl<T: Scalar> EnergyFn<T> {
    /// The constant `⊥` function, the zero of the semiring.
    pub fn bottom() -> Self {
        EnergyFn { floor: None, pieces: Vec::new(), ceiling: None }
    }

    /// The identity, the unit of composition.
    pub fn identity() -> Self {
        Self::shift(T::zero())
    }

    /// `⊤` on every finite input.
    pub fn top() -> Self {
        EnergyFn {
            floor: Some(Cut::new(T::zero(), false)),
            pieces: Vec::new(),
            ceiling: Some(Cut::new(T::zero(), true)),
        }
    }

    /// `x ↦ x + d`, dead where `x + d < 0`.
    pub fn shift(d: T) -> Self {
        if d.is_negative() {
            let b = -d;
            EnergyFn {
                floor: Some(Cut::new(b.clone(), false)),
                pieces: vec![Piece::new(b, T::zero(), T::one())],
                ceiling: None,
            }
        } else {
            EnergyFn {
                floor: Some(Cut::new(T::zero(), false)),
                pieces: vec![Piece::new(T::zero(), d, T::one())],
                ceiling: None,
            }
        }
    }

    /// Validate a raw description and return its canonical form.
    ///
    /// `floor = None` is the constant `⊥` function and then `pieces` must be
    /// empty and `ceiling` absent. Otherwise the pieces must start at the
    /// floor boundary, be strictly ordered, lie below the ceiling, have slope
    /// at least one, stay nonnegative and never jump down. `pieces` may be
    /// empty only when the ceiling directly follows the floor.
    pub fn new(
        floor: Option<Cut<T>>,
        pieces: Vec<Piece<T>>,
        ceiling: Option<Cut<T>>,
    ) -> Result<Self, EnergyFnError> {
        let Some(floor) = floor else {
            if !pieces.is_empty() || ceiling.is_some() {
                return malformed("constant-bottom function cannot carry pieces or a top region");
            }
            return Ok(Self::bottom());
        };
        if floor.at.is_negative() {
            return malformed(format!("bottom boundary {} is negative", floor.at));
        }
        if let Some(c) = &ceiling {
            if c.at < floor.at {
                return malformed(format!("top boundary {} lies below bottom boundary {}", c.at, floor.at));
            }
            if c.at == floor.at && floor.inclusive && c.inclusive {
                return malformed(format!("{} is both bottom and top", c.at));
            }
        }
        if pieces.is_empty() {
            let ok = matches!(&ceiling, Some(c) if c.at == floor.at && (floor.inclusive || c.inclusive));
            if !ok {
                return malformed("empty piece list only allowed for constant-bottom or an immediate top region");
            }
            let raw = EnergyFn { floor: Some(floor), pieces, ceiling };
            return Self::from_profile(&raw.profile());
        }
        if let Some(c) = &ceiling {
            if c.at == floor.at && (floor.inclusive || c.inclusive) {
                return malformed("pieces given but the alive region is empty");
            }
        }
        if pieces[0].start != floor.at {
            return malformed(format!(
                "first piece starts at {} but the bottom boundary is {}",
                pieces[0].start, floor.at
            ));
        }
        for w in pieces.windows(2) {
            if w[1].start < w[0].start {
                return malformed(format!("piece starts {} and {} are not increasing", w[0].start, w[1].start));
            }
        }
        for w in pieces.windows(3) {
            if w[0].start == w[2].start {
                return malformed(format!("more than two pieces start at {}", w[0].start));
            }
        }
        let last = pieces.len() - 1;
        for (i, p) in pieces.iter().enumerate() {
            // A piece is a single point if the next one starts at the same
            // place, or if it is last and the top region starts right after it.
            let at_ceiling = match &ceiling {
                Some(c) if p.start > c.at || (p.start == c.at && c.inclusive) => {
                    return malformed(format!("piece at {} lies in the top region", p.start));
                }
                Some(c) => p.start == c.at,
                None => false,
            };
            if at_ceiling && i != last {
                return malformed(format!("piece at {} follows the top boundary", p.start));
            }
            if at_ceiling && i > 0 && pieces[i - 1].start == p.start {
                return malformed(format!("two single-point pieces at {}", p.start));
            }
            let point_only = at_ceiling || pieces.get(i + 1).is_some_and(|n| n.start == p.start);
            if !point_only && p.slope < T::one() {
                return Err(EnergyFnError::SlopeTooSmall {
                    start: p.start.to_string(),
                    slope: p.slope.to_string(),
                });
            }
            if p.intercept.is_negative() {
                return Err(EnergyFnError::NegativeValue {
                    start: p.start.to_string(),
                    value: p.intercept.to_string(),
                });
            }
            if i > 0 {
                let prev = &pieces[i - 1];
                if prev.at(&p.start) > p.intercept {
                    return Err(EnergyFnError::NonMonotone { at: p.start.to_string() });
                }
            }
        }
        let raw = EnergyFn { floor: Some(floor), pieces, ceiling };
        Self::from_profile(&raw.profile())
    }

    pub fn is_bottom(&self) -> bool {
        self.floor.is_none()
    }

    pub fn floor(&self) -> Option<&Cut<T>> {
        self.floor.as_ref()
    }

    pub fn pieces(&self) -> &[Piece<T>] {
        &self.pieces
    }

    pub fn ceiling(&self) -> Option<&Cut<T>> {
        self.ceiling.as_ref()
    }

    fn is_dead_at(&self, x: &T) -> bool {
        match &self.floor {
            None => true,
            Some(c) => *x < c.at || (*x == c.at && c.inclusive),
        }
    }

    fn is_top_at(&self, x: &T) -> bool {
        match &self.ceiling {
            None => false,
            Some(c) => *x > c.at || (*x == c.at && c.inclusive),
        }
    }

    pub fn eval_finite(&self, x: &T) -> Ext<T> {
        if self.is_dead_at(x) {
            return Ext::Bottom;
        }
        if self.is_top_at(x) {
            return Ext::Top;
        }
        let i = self.pieces.partition_point(|p| p.start < *x);
        let piece = match self.pieces.get(i) {
            Some(p) if p.start == *x => p,
            _ => &self.pieces[i - 1],
        };
        Ext::Finite(piece.at(x))
    }

    pub fn eval(&self, x: &Ext<T>) -> Ext<T> {
        match x {
            Ext::Bottom => Ext::Bottom,
            Ext::Top if self.is_bottom() => Ext::Bottom,
            Ext::Top => Ext::Top,
            Ext::Finite(v) => self.eval_finite(v),
        }
    }

    /// Every finite position where the description changes: the floor and
    /// ceiling boundaries and every piece start.
    pub fn breakpoints(&self) -> Vec<T> {
        let mut pts = Vec::new();
        if let Some(c) = &self.floor {
            pts.push(c.at.clone());
        }
        pts.extend(self.pieces.iter().map(|p| p.start.clone()));
        if let Some(c) = &self.ceiling {
            pts.push(c.at.clone());
        }
        pts.sort();
        pts.dedup();
        pts
    }

    /// Finite inputs with `f(x) = x`, one per piece (the left end of a
    /// piece that is the identity throughout).
    pub fn fixed_points(&self) -> Vec<T> {
        let mut out = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            let end = self.pieces.get(i + 1).map(|n| n.start.clone());
            if end.as_ref() == Some(&p.start) {
                if p.intercept == p.start {
                    out.push(p.start.clone());
                }
                continue;
            }
            let x = if p.slope == T::one() {
                if p.intercept == p.start {
                    p.start.clone()
                } else {
                    continue;
                }
            } else {
                p.start.clone() + (p.start.clone() - p.intercept.clone()) / (p.slope.clone() - T::one())
            };
            let in_piece = x >= p.start && end.as_ref().is_none_or(|e| x < *e);
            if in_piece && self.eval_finite(&x) == Ext::Finite(x.clone()) {
                out.push(x);
            }
        }
        out
    }

    pub(crate) fn profile(&self) -> Profile<T> {
        let Some(floor) = &self.floor else {
            return Profile::constant_bottom();
        };
        let mut points = vec![T::zero()];
        points.extend(self.breakpoints());
        points.sort();
        points.dedup();
        let values = points.iter().map(|p| self.eval_finite(p)).collect();
        let laws = points
            .iter()
            .map(|p| {
                if *p < floor.at {
                    Law::Bot
                } else if self.ceiling.as_ref().is_some_and(|c| *p >= c.at) {
                    Law::Top
                } else {
                    let i = self.pieces.partition_point(|q| q.start <= *p);
                    let piece = &self.pieces[i - 1];
                    Law::Affine { at: piece.at(p), slope: piece.slope.clone() }
                }
            })
            .collect();
        Profile { points, values, laws }
    }

    /// Canonical function from a profile, checking the energy-function laws
    /// on the way.
    pub(crate) fn from_profile(pr: &Profile<T>) -> Result<Self, EnergyFnError> {
        #[derive(PartialEq)]
        enum Kind {
            Dead,
            Alive,
            Full,
        }
        // Element 2i is point i, element 2i+1 is the interval after it.
        let n = pr.len();
        let kind = |e: usize| -> Kind {
            if e % 2 == 0 {
                match &pr.values[e / 2] {
                    Ext::Bottom => Kind::Dead,
                    Ext::Top => Kind::Full,
                    Ext::Finite(_) => Kind::Alive,
                }
            } else {
                match &pr.laws[e / 2] {
                    Law::Bot => Kind::Dead,
                    Law::Top => Kind::Full,
                    Law::Affine { .. } => Kind::Alive,
                }
            }
        };
        let total = 2 * n;
        let dead = (0..total).take_while(|&e| kind(e) == Kind::Dead).count();
        if dead == total {
            return Ok(Self::bottom());
        }
        let full = (dead..total).rev().take_while(|&e| kind(e) == Kind::Full).count();
        let alive_end = total - full;
        if let Some(e) = (dead..alive_end).find(|&e| kind(e) != Kind::Alive) {
            return Err(EnergyFnError::NonMonotone { at: pr.points[e / 2].to_string() });
        }
        let floor = if dead == 0 {
            Cut::new(T::zero(), false)
        } else {
            let e = dead - 1;
            if e % 2 == 0 {
                Cut::new(pr.points[e / 2].clone(), true)
            } else {
                Cut::new(pr.points[e / 2 + 1].clone(), false)
            }
        };
        let ceiling = if full == 0 {
            None
        } else if alive_end % 2 == 0 {
            Some(Cut::new(pr.points[alive_end / 2].clone(), true))
        } else {
            Some(Cut::new(pr.points[alive_end / 2].clone(), false))
        };

        let mut pieces: Vec<Piece<T>> = Vec::new();
        let mut e = dead;
        while e < alive_end {
            let i = e / 2;
            let p = &pr.points[i];
            if e % 2 == 0 {
                let Ext::Finite(v) = &pr.values[i] else { unreachable!() };
                if e + 1 < alive_end {
                    let Law::Affine { at, slope } = &pr.laws[i] else { unreachable!() };
                    if at != v {
                        pieces.push(Piece::new(p.clone(), v.clone(), T::one()));
                    }
                    pieces.push(Piece::new(p.clone(), at.clone(), slope.clone()));
                    e += 2;
                } else {
                    pieces.push(Piece::new(p.clone(), v.clone(), T::one()));
                    e += 1;
                }
            } else {
                // Interval right after the (inclusive) floor point.
                let Law::Affine { at, slope } = &pr.laws[i] else { unreachable!() };
                pieces.push(Piece::new(p.clone(), at.clone(), slope.clone()));
                e += 1;
            }
        }

        let last = pieces.len().saturating_sub(1);
        let mut merged: Vec<Piece<T>> = Vec::with_capacity(pieces.len());
        for i in 0..pieces.len() {
            let piece = pieces[i].clone();
            let at_ceiling = i == last && ceiling.as_ref().is_some_and(|c| c.at == piece.start);
            let before_twin = pieces.get(i + 1).is_some_and(|n| n.start == piece.start);
            let point_only = at_ceiling || before_twin;
            if piece.intercept.is_negative() {
                return Err(EnergyFnError::NegativeValue {
                    start: piece.start.to_string(),
                    value: piece.intercept.to_string(),
                });
            }
            if !point_only && piece.slope < T::one() {
                return Err(EnergyFnError::SlopeTooSmall {
                    start: piece.start.to_string(),
                    slope: piece.slope.to_string(),
                });
            }
            if let Some(prev) = merged.last() {
                let limit = prev.at(&piece.start);
                if limit > piece.intercept {
                    return Err(EnergyFnError::NonMonotone { at: piece.start.to_string() });
                }
                let twin = prev.start == piece.start;
                if !before_twin && !twin && limit == piece.intercept && (at_ceiling || prev.slope == piece.slope) {
                    continue;
                }
            }
            merged.push(piece);
        }
        Ok(EnergyFn { floor: Some(floor), pieces: merged, ceiling })
    }

    fn lift(pr: Profile<T>) -> Self {
        match Self::from_profile(&pr) {
            Ok(f) => f,
            Err(e) => panic!("energy functions are closed under this operation, got {e}"),
        }
    }

    /// Pointwise supremum.
    pub fn join(&self, other: &Self) -> Self {
        if self.is_bottom() {
            return other.clone();
        }
        if other.is_bottom() {
            return self.clone();
        }
        Self::lift(self.profile().join(&other.profile()))
    }

    /// Diagrammatic composition: `self` first, then `then`.
    pub fn compose(&self, then: &Self) -> Self {
        if self.is_bottom() || then.is_bottom() {
            return Self::bottom();
        }
        Self::lift(self.profile().compose(&then.profile()))
    }

    /// Identity where `f(x) <= x`, `⊤` where `f(x) > x`.
    pub fn star(&self) -> Self {
        Self::lift(self.profile().star())
    }

    /// Star with the fixed-point boundary deliberately misplaced (`f(x) = x`
    /// goes to `⊤`). Only for demonstrating that the law suite is sensitive.
    #[doc(hidden)]
    pub fn star_strict_boundary(&self) -> Self {
        Self::lift(self.profile().star_with(true))
    }

    /// `n`-fold composition; `pow(0)` is the identity.
    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Self::identity();
        for _ in 0..n {
            acc = acc.compose(self);
        }
        acc
    }

    /// Compose a sequence left to right; the empty sequence is the identity.
    pub fn compose_all<'a, I>(fs: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        fs.into_iter().fold(Self::identity(), |acc, f| acc.compose(f))
    }

    /// Check the orbit of `x` for a finite-supremum or divergence certificate.
    ///
    /// Iterates `x, f(x), f²(x), …` keeping the running join `s`. Stops with
    /// [`Witness::Stabilized`] as soon as an iterate adds nothing to `s`,
    /// which by monotonicity fixes all later joins, or with
    /// [`Witness::Diverges`] at an alive finite iterate `z` with `f(z) > z`,
    /// from which the orbit gains at least `f(z) - z` per step.
    pub fn local_finiteness_witness(&self, x: &Ext<T>, max_n: usize) -> Result<Witness<T>, BudgetExceeded> {
        let mut sup = x.clone();
        let mut z = x.clone();
        for n in 0..max_n.max(1) {
            let next = self.eval(&z);
            if next <= sup {
                return Ok(Witness::Stabilized { n, value: sup });
            }
            if matches!(z, Ext::Finite(_)) && next > z {
                return Ok(Witness::Diverges { n });
            }
            sup = sup.join(&next);
            z = next;
        }
        Err(BudgetExceeded { steps: max_n })
    }
}

/// Result of [`EnergyFn::local_finiteness_witness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness<T> {
    /// `x ∨ xf ∨ … ∨ xfⁿ = x ∨ … ∨ xfⁿ⁺¹ = value`.
    Stabilized { n: usize, value: Ext<T> },
    /// The orbit is unbounded; the supremum is `⊤`.
    Diverges { n: usize },
}

impl<T: Scalar> Witness<T> {
    /// The supremum of the orbit the witness certifies.
    pub fn supremum(&self) -> Ext<T> {
        match self {
            Witness::Stabilized { value, .. } => value.clone(),
            Witness::Diverges { .. } => Ext::Top,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("no certificate within {steps} steps")]
pub struct BudgetExceeded {
    pub steps: usize,
}

impl<T: Scalar> fmt::Display for EnergyFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(floor) = &self.floor else {
            return f.write_str("⊥");
        };
        let mut parts = Vec::new();
        if floor.inclusive || !floor.at.is_zero() {
            let close = if floor.inclusive { "]" } else { ")" };
            parts.push(format!("⊥ on [0,{}{close}", floor.at));
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if self.pieces.get(i + 1).is_some_and(|n| n.start == p.start) {
                parts.push(format!("{} at {}", p.intercept, p.start));
                continue;
            }
            let off = p.intercept.clone() - p.start.clone() * p.slope.clone();
            let lin = if p.slope == T::one() { "x".to_string() } else { format!("{}x", p.slope) };
            let law = if off.is_zero() {
                lin
            } else if off.is_negative() {
                format!("{lin}-{}", -off)
            } else {
                format!("{lin}+{off}")
            };
            parts.push(format!("{law} from {}", p.start));
        }
        if let Some(c) = &self.ceiling {
            let open = if c.inclusive { "[" } else { "(" };
            parts.push(format!("⊤ on {open}{},∞)", c.at));
        }
        f.write_str(&parts.join("; "))
    }
}

#[cfg(test)]
mod tests;
