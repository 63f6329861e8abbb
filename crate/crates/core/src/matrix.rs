//! Matrices over an idempotent star semiring and column vectors over its
//! semimodule.
//!
//! Star and omega are computed by the block formulas: for
//! `M = [[a, b], [c, d]]` with `a` square of size `k`,
//!
//! ```text
//! M*  = [[(a ∨ bd*c)*,          (a ∨ bd*c)* b d*],
//!        [(d ∨ ca*b)* c a*,      (d ∨ ca*b)*     ]]
//! M^ω = [(a ∨ bd*c)^ω ∨ (a ∨ bd*c)* b d^ω ;
//!        (d ∨ ca*b)^ω ∨ (d ∨ ca*b)* c a^ω]
//! ```
//!
//! The split point defaults to `k = ⌊n/2⌋`; the result does not depend on
//! it, which the tests check rather than assume.

use std::fmt::Debug;
use std::marker::PhantomData;

use thiserror::Error;

use crate::energyfn::EnergyFn;
use crate::omegaval::Threshold;
use crate::scalar::Scalar;

/// An idempotent semiring with star: `join`/`zero` form a semilattice,
/// `mul`/`one` a monoid, `mul` distributes over `join` and `zero`
/// annihilates.
pub trait StarSemiring {
    type Elem: Clone + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn star(&self, a: &Self::Elem) -> Self::Elem;
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
}

/// A star semiring together with a semimodule it acts on and an omega
/// power into that semimodule.
pub trait OmegaAlgebra: StarSemiring {
    type Vector: Clone + Debug;

    fn vzero(&self) -> Self::Vector;
    fn vjoin(&self, a: &Self::Vector, b: &Self::Vector) -> Self::Vector;
    fn act(&self, s: &Self::Elem, v: &Self::Vector) -> Self::Vector;
    fn omega(&self, s: &Self::Elem) -> Self::Vector;
    fn vequal(&self, a: &Self::Vector, b: &Self::Vector) -> bool;
}

/// Energy functions under join and diagrammatic composition, acting on
/// threshold predicates.
pub struct EnergyAlgebra<T> {
    star: fn(&EnergyFn<T>) -> EnergyFn<T>,
    _scalar: PhantomData<T>,
}

impl<T: Scalar> Default for EnergyAlgebra<T> {
    fn default() -> Self {
        EnergyAlgebra { star: EnergyFn::star, _scalar: PhantomData }
    }
}

impl<T: Scalar> Clone for EnergyAlgebra<T> {
    fn clone(&self) -> Self {
        EnergyAlgebra { star: self.star, _scalar: PhantomData }
    }
}

impl<T: Scalar> EnergyAlgebra<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// The same algebra with a substitute star, used to run the law suite
    /// against deliberately broken implementations.
    pub fn with_star(star: fn(&EnergyFn<T>) -> EnergyFn<T>) -> Self {
        EnergyAlgebra { star, _scalar: PhantomData }
    }
}

impl<T: Scalar> StarSemiring for EnergyAlgebra<T> {
    type Elem = EnergyFn<T>;

    fn zero(&self) -> EnergyFn<T> {
        EnergyFn::bottom()
    }

    fn one(&self) -> EnergyFn<T> {
        EnergyFn::identity()
    }

    fn join(&self, a: &EnergyFn<T>, b: &EnergyFn<T>) -> EnergyFn<T> {
        a.join(b)
    }

    fn mul(&self, a: &EnergyFn<T>, b: &EnergyFn<T>) -> EnergyFn<T> {
        a.compose(b)
    }

    fn star(&self, a: &EnergyFn<T>) -> EnergyFn<T> {
        (self.star)(a)
    }

    fn equal(&self, a: &EnergyFn<T>, b: &EnergyFn<T>) -> bool {
        a == b
    }
}

impl<T: Scalar> OmegaAlgebra for EnergyAlgebra<T> {
    type Vector = Threshold<T>;

    fn vzero(&self) -> Threshold<T> {
        Threshold::Never
    }

    fn vjoin(&self, a: &Threshold<T>, b: &Threshold<T>) -> Threshold<T> {
        a.join(b)
    }

    fn act(&self, s: &EnergyFn<T>, v: &Threshold<T>) -> Threshold<T> {
        Threshold::act(s, v)
    }

    fn omega(&self, s: &EnergyFn<T>) -> Threshold<T> {
        Threshold::omega(s)
    }

    fn vequal(&self, a: &Threshold<T>, b: &Threshold<T>) -> bool {
        a == b
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("accepting count {k} out of range for dimension {n}")]
    BadAcceptingCount { k: usize, n: usize },
}

fn mismatch<T>(msg: String) -> Result<T, MatrixError> {
    Err(MatrixError::DimensionMismatch(msg))
}

/// A dense `rows × cols` matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

/// A column vector over the semimodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnVector<V>(pub Vec<V>);

impl<V> ColumnVector<V> {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[V] {
        &self.0
    }
}

impl<V: Clone> ColumnVector<V> {
    fn stack(top: Self, bottom: Self) -> Self {
        let mut v = top.0;
        v.extend(bottom.0);
        ColumnVector(v)
    }

    fn slice(&self, from: usize, to: usize) -> Self {
        ColumnVector(self.0[from..to].to_vec())
    }

    pub fn join<A: OmegaAlgebra<Vector = V>>(&self, alg: &A, other: &Self) -> Result<Self, MatrixError> {
        if self.len() != other.len() {
            return mismatch(format!("vector join {} vs {}", self.len(), other.len()));
        }
        Ok(ColumnVector(self.0.iter().zip(&other.0).map(|(a, b)| alg.vjoin(a, b)).collect()))
    }

    pub fn equal<A: OmegaAlgebra<Vector = V>>(&self, alg: &A, other: &Self) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| alg.vequal(a, b))
    }
}

impl<E: Clone> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return mismatch(format!("row {bad} has {} entries, expected {c}", rows[bad].len()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: E) {
        self.data[i * self.cols + j] = e;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let k = a.rows;
        let n = k + d.rows;
        Self::from_fn(n, n, |i, j| match (i < k, j < k) {
            (true, true) => a.get(i, j).clone(),
            (true, false) => b.get(i, j - k).clone(),
            (false, true) => c.get(i - k, j).clone(),
            (false, false) => d.get(i - k, j - k).clone(),
        })
    }

    /// Rows and columns reordered: entry `(i, j)` of the result is entry
    /// `(perm[i], perm[j])` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(perm[i], perm[j]).clone())
    }
}

impl<E: Clone + Debug> Matrix<E> {
    pub fn identity<A: StarSemiring<Elem = E>>(alg: &A, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { alg.one() } else { alg.zero() })
    }

    pub fn zeros<A: StarSemiring<Elem = E>>(alg: &A, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| alg.zero())
    }

    pub fn mul<A: StarSemiring<Elem = E>>(&self, alg: &A, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return mismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(alg.zero(), |acc, k| alg.join(&acc, &alg.mul(self.get(i, k), other.get(k, j))))
        }))
    }

    pub fn join<A: StarSemiring<Elem = E>>(&self, alg: &A, other: &Self) -> Result<Self, MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return mismatch(format!(
                "join of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| alg.join(self.get(i, j), other.get(i, j))))
    }

    pub fn equal<A: StarSemiring<Elem = E>>(&self, alg: &A, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| alg.equal(a, b))
    }

    fn check_square(&self, what: &str) -> Result<usize, MatrixError> {
        if !self.is_square() || self.rows == 0 {
            return mismatch(format!("{what} needs a nonempty square matrix, got {}x{}", self.rows, self.cols));
        }
        Ok(self.rows)
    }

    fn split(&self, k: usize) -> (Self, Self, Self, Self) {
        let n = self.rows;
        (self.block(0, k, 0, k), self.block(0, k, k, n), self.block(k, n, 0, k), self.block(k, n, k, n))
    }

    /// `M*` with the default split.
    pub fn star<A: StarSemiring<Elem = E>>(&self, alg: &A) -> Result<Self, MatrixError> {
        let n = self.check_square("star")?;
        Ok(self.star_at(alg, n / 2))
    }

    /// `M*` splitting the outermost level at `k` (`0 < k < n`); inner levels
    /// use the default split.
    pub fn star_split<A: StarSemiring<Elem = E>>(&self, alg: &A, k: usize) -> Result<Self, MatrixError> {
        let n = self.check_square("star")?;
        if n > 1 && (k == 0 || k >= n) {
            return mismatch(format!("split {k} out of range for dimension {n}"));
        }
        Ok(self.star_at(alg, k))
    }

    fn star_at<A: StarSemiring<Elem = E>>(&self, alg: &A, k: usize) -> Self {
        let n = self.rows;
        if n == 1 {
            return Self::from_fn(1, 1, |_, _| alg.star(self.get(0, 0)));
        }
        let (a, b, c, d) = self.split(k);
        let a_star = a.star_at(alg, k / 2);
        let d_star = d.star_at(alg, (n - k) / 2);
        // The shapes below are consistent by construction.
        let mm = |x: &Self, y: &Self| x.mul(alg, y).expect("block shapes agree");
        let jj = |x: &Self, y: &Self| x.join(alg, y).expect("block shapes agree");
        let top = jj(&a, &mm(&mm(&b, &d_star), &c));
        let top_star = top.star_at(alg, k / 2);
        let bottom = jj(&d, &mm(&mm(&c, &a_star), &b));
        let bottom_star = bottom.star_at(alg, (n - k) / 2);
        let tr = mm(&mm(&top_star, &b), &d_star);
        let bl = mm(&mm(&bottom_star, &c), &a_star);
        Self::from_blocks(&top_star, &tr, &bl, &bottom_star)
    }
}

impl<E: Clone + Debug> Matrix<E> {
    /// Matrix–vector action: `result_i = ⋁_k M_ik · v_k`.
    pub fn act<A: OmegaAlgebra<Elem = E>>(
        &self,
        alg: &A,
        v: &ColumnVector<A::Vector>,
    ) -> Result<ColumnVector<A::Vector>, MatrixError> {
        if self.cols != v.len() {
            return mismatch(format!("{}x{} matrix acting on a vector of length {}", self.rows, self.cols, v.len()));
        }
        Ok(ColumnVector(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols).fold(alg.vzero(), |acc, k| alg.vjoin(&acc, &alg.act(self.get(i, k), &v.0[k])))
                })
                .collect(),
        ))
    }

    /// `M^ω` with the default split.
    pub fn omega<A: OmegaAlgebra<Elem = E>>(&self, alg: &A) -> Result<ColumnVector<A::Vector>, MatrixError> {
        let n = self.check_square("omega")?;
        Ok(self.omega_at(alg, n / 2))
    }

    pub fn omega_split<A: OmegaAlgebra<Elem = E>>(
        &self,
        alg: &A,
        k: usize,
    ) -> Result<ColumnVector<A::Vector>, MatrixError> {
        let n = self.check_square("omega")?;
        if n > 1 && (k == 0 || k >= n) {
            return mismatch(format!("split {k} out of range for dimension {n}"));
        }
        Ok(self.omega_at(alg, k))
    }

    fn omega_at<A: OmegaAlgebra<Elem = E>>(&self, alg: &A, k: usize) -> ColumnVector<A::Vector> {
        let n = self.rows;
        if n == 1 {
            return ColumnVector(vec![alg.omega(self.get(0, 0))]);
        }
        let (a, b, c, d) = self.split(k);
        let mm = |x: &Self, y: &Self| x.mul(alg, y).expect("block shapes agree");
        let jj = |x: &Self, y: &Self| x.join(alg, y).expect("block shapes agree");
        let act = |x: &Self, v: &ColumnVector<A::Vector>| x.act(alg, v).expect("block shapes agree");
        let vj = |x: &ColumnVector<A::Vector>, y: &ColumnVector<A::Vector>| x.join(alg, y).expect("same length");

        let a_star = a.star(alg).expect("square");
        let d_star = d.star(alg).expect("square");
        let a_omega = a.omega_at(alg, k / 2);
        let d_omega = d.omega_at(alg, (n - k) / 2);

        let top = jj(&a, &mm(&mm(&b, &d_star), &c));
        let top_v = vj(&top.omega_at(alg, k / 2), &act(&top.star(alg).expect("square"), &act(&b, &d_omega)));
        let bottom = jj(&d, &mm(&mm(&c, &a_star), &b));
        let bottom_v =
            vj(&bottom.omega_at(alg, (n - k) / 2), &act(&bottom.star(alg).expect("square"), &act(&c, &a_omega)));
        ColumnVector::stack(top_v, bottom_v)
    }

    /// The Büchi vector for "the first `k` states are accepting":
    /// `[(a ∨ bd*c)^ω ; d* c (a ∨ bd*c)^ω]` with `a` the top-left `k × k`
    /// block. `k = 0` gives the zero vector, `k = n` gives `M^ω`.
    pub fn omega_k<A: OmegaAlgebra<Elem = E>>(
        &self,
        alg: &A,
        k: usize,
    ) -> Result<ColumnVector<A::Vector>, MatrixError> {
        let n = self.check_square("omega_k")?;
        if k > n {
            return Err(MatrixError::BadAcceptingCount { k, n });
        }
        if k == 0 {
            return Ok(ColumnVector(vec![alg.vzero(); n]));
        }
        if k == n {
            return self.omega(alg);
        }
        let (a, b, c, d) = self.split(k);
        let d_star = d.star(alg)?;
        let top = a.join(alg, &b.mul(alg, &d_star)?.mul(alg, &c)?)?;
        let top_omega = top.omega(alg)?;
        let bottom = d_star.mul(alg, &c)?.act(alg, &top_omega)?;
        Ok(ColumnVector::stack(top_omega, bottom))
    }
}

impl<V: Clone> ColumnVector<V> {
    /// Entries `from..to`.
    pub fn range(&self, from: usize, to: usize) -> Self {
        self.slice(from, to)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energyfn::{Cut, Piece};
    use crate::{EnergyFunction, Rational, ThresholdPredicate};

    fn q(n: i64) -> Rational {
        Rational::int(n)
    }

    fn alg() -> EnergyAlgebra<Rational> {
        EnergyAlgebra::new()
    }

    fn plus2() -> EnergyFunction {
        EnergyFunction::shift(q(2))
    }

    fn minus1() -> EnergyFunction {
        EnergyFunction::shift(q(-1))
    }

    fn bot() -> EnergyFunction {
        EnergyFunction::bottom()
    }

    fn swap() -> Matrix<EnergyFunction> {
        Matrix::from_rows(vec![vec![bot(), plus2()], vec![minus1(), bot()]]).unwrap()
    }

    #[test]
    fn product_examples() {
        let m = swap();
        let id = Matrix::identity(&alg(), 2);
        let z = Matrix::zeros(&alg(), 2, 2);
        assert_eq!(id.mul(&alg(), &m).unwrap(), m);
        assert_eq!(z.mul(&alg(), &m).unwrap(), z);
        let sq = m.mul(&alg(), &m).unwrap();
        assert_eq!(*sq.get(0, 0), plus2().compose(&minus1()));
        assert_eq!(*sq.get(1, 1), minus1().compose(&plus2()));
        assert!(sq.get(0, 1).is_bottom() && sq.get(1, 0).is_bottom());
        let three = Matrix::identity(&alg(), 3);
        assert!(matches!(m.mul(&alg(), &three), Err(MatrixError::DimensionMismatch(_))));
        assert!(Matrix::from_rows(vec![vec![bot()], vec![bot(), bot()]]).is_err());
    }

    #[test]
    fn star_examples() {
        let one = Matrix::from_rows(vec![vec![plus2()]]).unwrap();
        assert_eq!(*one.star(&alg()).unwrap().get(0, 0), EnergyFunction::top());

        let s = swap().star(&alg()).unwrap();
        // (gf)* where gf = x + 1 alive from 1: identity on [0,1), ⊤ from 1.
        let expected = EnergyFunction::new(
            Some(Cut::new(q(0), false)),
            vec![Piece::new(q(0), q(0), q(1))],
            Some(Cut::new(q(1), true)),
        )
        .unwrap();
        assert_eq!(*s.get(1, 1), expected);

        let m = swap();
        let unfolded = Matrix::identity(&alg(), 2).join(&alg(), &m.mul(&alg(), &s).unwrap()).unwrap();
        assert_eq!(unfolded, s);
    }

    #[test]
    fn omega_examples() {
        let id = Matrix::from_rows(vec![vec![EnergyFunction::identity()]]).unwrap();
        assert_eq!(id.omega(&alg()).unwrap().0, vec![Threshold::from(q(0), true)]);
        let dec = Matrix::from_rows(vec![vec![minus1()]]).unwrap();
        assert_eq!(dec.omega(&alg()).unwrap().0, vec![ThresholdPredicate::Never]);

        let m = swap();
        let w = m.omega(&alg()).unwrap();
        assert_eq!(m.act(&alg(), &w).unwrap(), w);
    }

    #[test]
    fn omega_k_examples() {
        let m = swap();
        assert_eq!(m.omega_k(&alg(), 0).unwrap().0, vec![ThresholdPredicate::Never; 2]);
        assert_eq!(
            m.omega_k(&alg(), 1).unwrap().0,
            vec![Threshold::from(q(0), true), Threshold::from(q(1), true)]
        );
        assert_eq!(m.omega_k(&alg(), 2).unwrap(), m.omega(&alg()).unwrap());
        assert_eq!(m.omega_k(&alg(), 3), Err(MatrixError::BadAcceptingCount { k: 3, n: 2 }));
    }

    #[test]
    fn act_examples() {
        let v = ColumnVector(vec![Threshold::from(q(4), false), ThresholdPredicate::Never]);
        assert_eq!(Matrix::identity(&alg(), 2).act(&alg(), &v).unwrap(), v);
        assert_eq!(
            Matrix::zeros(&alg(), 2, 2).act(&alg(), &v).unwrap().0,
            vec![ThresholdPredicate::Never; 2]
        );
        let m = Matrix::from_rows(vec![vec![plus2()]]).unwrap();
        let v = ColumnVector(vec![Threshold::from(q(5), true)]);
        assert_eq!(m.act(&alg(), &v).unwrap().0, vec![Threshold::from(q(3), true)]);
        assert!(m.act(&alg(), &ColumnVector(vec![])).is_err());
    }
}
