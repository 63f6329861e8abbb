//! Point/interval profile of an energy function over the finite domain.
//!
//! A profile cuts `[0, ∞)` at increasing points `p_0 = 0 < p_1 < … < p_m`.
//! It stores the exact value at every point and one law for every open
//! interval `(p_i, p_{i+1})` (the last one unbounded). Boundary membership is
//! then explicit, which is what makes join, composition and star simple
//! case analyses; the canonical [`EnergyFn`](super::EnergyFn) is rebuilt from
//! the profile afterwards.

use crate::extlat::Ext;
use crate::scalar::Scalar;

/// Behavior on one open interval. `Affine` is anchored at the interval's
/// left endpoint: the value at `x` is `at + slope * (x - left)`, so `at`
/// is the right limit at the left endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Law<T> {
    Bot,
    Top,
    Affine { at: T, slope: T },
}

impl<T: Scalar> Law<T> {
    pub(crate) fn identity_at(left: &T) -> Self {
        Law::Affine { at: left.clone(), slope: T::one() }
    }

    /// Value at `x`, for the interval whose left endpoint is `left`.
    pub(crate) fn value(&self, left: &T, x: &T) -> Ext<T> {
        match self {
            Law::Bot => Ext::Bottom,
            Law::Top => Ext::Top,
            Law::Affine { at, slope } => {
                Ext::Finite(at.clone() + slope.clone() * (x.clone() - left.clone()))
            }
        }
    }

    /// The same law re-anchored at a later left endpoint.
    pub(crate) fn reanchor(&self, left: &T, new_left: &T) -> Self {
        match self {
            Law::Affine { at, slope } => Law::Affine {
                at: at.clone() + slope.clone() * (new_left.clone() - left.clone()),
                slope: slope.clone(),
            },
            other => other.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Profile<T> {
    pub(crate) points: Vec<T>,
    pub(crate) values: Vec<Ext<T>>,
    pub(crate) laws: Vec<Law<T>>,
}

/// Incremental builder that appends points and intervals left to right.
struct Builder<T> {
    points: Vec<T>,
    values: Vec<Ext<T>>,
    laws: Vec<Law<T>>,
}

impl<T: Scalar> Builder<T> {
    fn new() -> Self {
        Builder { points: Vec::new(), values: Vec::new(), laws: Vec::new() }
    }

    fn point(&mut self, p: T, v: Ext<T>) {
        debug_assert!(self.points.last().is_none_or(|last| *last < p));
        debug_assert_eq!(self.points.len(), self.laws.len());
        self.points.push(p);
        self.values.push(v);
    }

    fn interval(&mut self, law: Law<T>) {
        debug_assert_eq!(self.points.len(), self.laws.len() + 1);
        self.laws.push(law);
    }

    fn finish(self) -> Profile<T> {
        debug_assert_eq!(self.points.len(), self.laws.len());
        Profile { points: self.points, values: self.values, laws: self.laws }
    }
}

impl<T: Scalar> Profile<T> {
    pub(crate) fn constant_bottom() -> Self {
        Profile { points: vec![T::zero()], values: vec![Ext::Bottom], laws: vec![Law::Bot] }
    }

    pub(crate) fn len(&self) -> usize {
        self.points.len()
    }

    /// Right end of interval `i`, `None` for the unbounded last interval.
    pub(crate) fn right(&self, i: usize) -> Option<&T> {
        self.points.get(i + 1)
    }

    /// Index of the interval or point containing `x`: `Ok(i)` if `x` is the
    /// point `p_i`, `Err(i)` if `x` lies in the open interval after `p_i`.
    pub(crate) fn locate(&self, x: &T) -> Result<usize, usize> {
        match self.points.binary_search(x) {
            Ok(i) => Ok(i),
            Err(i) => Err(i - 1),
        }
    }

    pub(crate) fn eval_finite(&self, x: &T) -> Ext<T> {
        match self.locate(x) {
            Ok(i) => self.values[i].clone(),
            Err(i) => self.laws[i].value(&self.points[i], x),
        }
    }

    /// True iff every point and interval is `⊥`.
    pub(crate) fn is_bottom(&self) -> bool {
        self.values.iter().all(Ext::is_bottom) && self.laws.iter().all(|l| *l == Law::Bot)
    }

    pub(crate) fn eval(&self, x: &Ext<T>) -> Ext<T> {
        match x {
            Ext::Bottom => Ext::Bottom,
            Ext::Top => {
                if self.is_bottom() {
                    Ext::Bottom
                } else {
                    Ext::Top
                }
            }
            Ext::Finite(v) => self.eval_finite(v),
        }
    }

    /// The same function on a finer grid. `grid` must contain every point of
    /// `self` and start at zero.
    fn refine(&self, grid: &[T]) -> Self {
        let mut b = Builder::new();
        for p in grid {
            b.point(p.clone(), self.eval_finite(p));
            let i = match self.locate(p) {
                Ok(i) | Err(i) => i,
            };
            b.interval(self.laws[i].reanchor(&self.points[i], p));
        }
        b.finish()
    }

    fn union_grid(&self, other: &Self) -> Vec<T> {
        let mut grid: Vec<T> = self.points.iter().chain(other.points.iter()).cloned().collect();
        grid.sort();
        grid.dedup();
        grid
    }

    /// Pointwise maximum.
    pub(crate) fn join(&self, other: &Self) -> Self {
        let grid = self.union_grid(other);
        let f = self.refine(&grid);
        let g = other.refine(&grid);
        let mut b = Builder::new();
        for i in 0..grid.len() {
            let p = &grid[i];
            b.point(p.clone(), f.values[i].join(&g.values[i]));
            let q = grid.get(i + 1);
            match (&f.laws[i], &g.laws[i]) {
                (Law::Top, _) | (_, Law::Top) => b.interval(Law::Top),
                (Law::Bot, l) | (l, Law::Bot) => b.interval(l.clone()),
                (Law::Affine { at: a1, slope: s1 }, Law::Affine { at: a2, slope: s2 }) => {
                    let l1 = f.laws[i].clone();
                    let l2 = g.laws[i].clone();
                    // The law that is larger just right of p.
                    let (first, second) = if a1 > a2 || (a1 == a2 && s1 >= s2) {
                        (l1, l2)
                    } else {
                        (l2, l1)
                    };
                    if s1 == s2 {
                        b.interval(first);
                        continue;
                    }
                    let cross = p.clone() + (a2.clone() - a1.clone()) / (s1.clone() - s2.clone());
                    let inside = cross > *p && q.is_none_or(|q| cross < *q);
                    if !inside {
                        b.interval(first);
                    } else {
                        b.interval(first.clone());
                        let v = first.value(p, &cross);
                        b.point(cross.clone(), v);
                        b.interval(second.reanchor(p, &cross));
                    }
                }
            }
        }
        b.finish()
    }

    /// Diagrammatic composition: `self` first, then `then`.
    pub(crate) fn compose(&self, then: &Self) -> Self {
        let then_bottom = then.is_bottom();
        let mut b = Builder::new();
        for i in 0..self.len() {
            let p = &self.points[i];
            b.point(p.clone(), then.eval(&self.values[i]));
            match &self.laws[i] {
                Law::Bot => b.interval(Law::Bot),
                Law::Top => b.interval(if then_bottom { Law::Bot } else { Law::Top }),
                Law::Affine { at, slope } => {
                    let q = self.right(i);
                    let hi = q.map(|q| at.clone() + slope.clone() * (q.clone() - p.clone()));
                    // Image is the open interval (at, hi). Cut it at every
                    // breakpoint of `then` strictly inside.
                    let mut left_y = at.clone();
                    let start = match then.locate(at) {
                        Ok(j) | Err(j) => j + 1,
                    };
                    for y in &then.points[start..] {
                        if hi.as_ref().is_some_and(|hi| y >= hi) {
                            break;
                        }
                        b.interval(Self::compose_law(then, &left_y, slope));
                        let x = p.clone() + (y.clone() - at.clone()) / slope.clone();
                        b.point(x, then.eval_finite(y));
                        left_y = y.clone();
                    }
                    b.interval(Self::compose_law(then, &left_y, slope));
                }
            }
        }
        b.finish()
    }

    /// Law of `then` just right of `y`, pulled back through an affine piece
    /// of slope `slope` whose left end maps to `y`.
    fn compose_law(then: &Self, y: &T, slope: &T) -> Law<T> {
        let j = match then.locate(y) {
            Ok(j) | Err(j) => j,
        };
        match then.laws[j].reanchor(&then.points[j], y) {
            Law::Affine { at, slope: r } => Law::Affine { at, slope: r * slope.clone() },
            other => other,
        }
    }

    /// Closed-form star: identity where `f(x) <= x`, `⊤` where `f(x) > x`.
    pub(crate) fn star(&self) -> Self {
        self.star_with(false)
    }

    /// `strict = true` sends fixed points `f(x) = x` to `⊤`; that variant is
    /// wrong and exists only so the law suite can be shown to catch it.
    pub(crate) fn star_with(&self, strict: bool) -> Self {
        let keeps = |fx: &Ext<T>, x: &Ext<T>| if strict { fx < x } else { fx <= x };
        let mut b = Builder::new();
        for i in 0..self.len() {
            let p = &self.points[i];
            let xp = Ext::Finite(p.clone());
            b.point(p.clone(), if keeps(&self.values[i], &xp) { xp } else { Ext::Top });
            match &self.laws[i] {
                Law::Bot => b.interval(Law::identity_at(p)),
                Law::Top => b.interval(Law::Top),
                Law::Affine { at, slope } => {
                    let one = T::one();
                    if *slope == one {
                        // f(x) - x is the constant at - p.
                        let keep = if strict { at < p } else { at <= p };
                        b.interval(if keep { Law::identity_at(p) } else { Law::Top });
                        continue;
                    }
                    // f(x) - x is increasing and vanishes at c.
                    let c = p.clone() + (p.clone() - at.clone()) / (slope.clone() - one);
                    let q = self.right(i);
                    if c <= *p {
                        b.interval(Law::Top);
                    } else if q.is_some_and(|q| c >= *q) {
                        b.interval(Law::identity_at(p));
                    } else {
                        b.interval(Law::identity_at(p));
                        let xc = Ext::Finite(c.clone());
                        b.point(c.clone(), if strict { Ext::Top } else { xc });
                        b.interval(Law::Top);
                    }
                }
            }
        }
        b.finish()
    }

    /// Least finite input satisfying an upward-closed condition on the
    /// output, as `(threshold, inclusive)`. `at_point` decides a point from
    /// its input and output. `on_affine` returns, for an affine interval,
    /// the cut `c` such that exactly the inputs `x > c` (or `x >= c`, per
    /// the returned flag) of the interval qualify.
    pub(crate) fn least_satisfying<P, A>(&self, at_point: P, on_affine: A) -> Option<(T, bool)>
    where
        P: Fn(&T, &Ext<T>) -> bool,
        A: Fn(&T, &T, &T) -> Option<(T, bool)>,
    {
        for i in 0..self.len() {
            let p = &self.points[i];
            if at_point(p, &self.values[i]) {
                return Some((p.clone(), true));
            }
            match &self.laws[i] {
                Law::Bot => {}
                Law::Top => return Some((p.clone(), false)),
                Law::Affine { at, slope } => {
                    if let Some((c, inclusive)) = on_affine(p, at, slope) {
                        if c <= *p {
                            return Some((p.clone(), false));
                        }
                        let below_right = self.right(i).is_none_or(|q| c < *q);
                        if below_right {
                            return Some((c, inclusive));
                        }
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::int(n)
    }

    fn shift_profile(d: i64) -> Profile<Rational> {
        // x + d, bottom below -d when d < 0
        if d >= 0 {
            Profile {
                points: vec![q(0)],
                values: vec![Ext::Finite(q(d))],
                laws: vec![Law::Affine { at: q(d), slope: q(1) }],
            }
        } else {
            Profile {
                points: vec![q(0), q(-d)],
                values: vec![Ext::Bottom, Ext::Finite(q(0))],
                laws: vec![Law::Bot, Law::Affine { at: q(0), slope: q(1) }],
            }
        }
    }

    #[test]
    fn compose_pulls_back_breakpoints() {
        let f = shift_profile(2);
        let g = shift_profile(-3);
        let h = f.compose(&g);
        // x + 2 - 3, dead below 1
        assert_eq!(h.eval_finite(&q(0)), Ext::Bottom);
        assert_eq!(h.eval_finite(&q(1)), Ext::Finite(q(0)));
        assert_eq!(h.eval_finite(&q(5)), Ext::Finite(q(4)));
        assert!(h.points.contains(&q(1)));
    }

    #[test]
    fn join_splits_at_crossings() {
        let f = shift_profile(3);
        let g = Profile {
            points: vec![q(0)],
            values: vec![Ext::Finite(q(0))],
            laws: vec![Law::Affine { at: q(0), slope: q(2) }],
        };
        let h = f.join(&g);
        assert_eq!(h.eval_finite(&q(1)), Ext::Finite(q(4)));
        assert_eq!(h.eval_finite(&q(3)), Ext::Finite(q(6)));
        assert_eq!(h.eval_finite(&q(5)), Ext::Finite(q(10)));
        assert!(h.points.contains(&q(3)));
    }
}
