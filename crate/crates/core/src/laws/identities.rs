//! Conway and group identities, generic over the algebra.

use std::fmt;
use std::str::FromStr;

use super::{Failure, LawReport, LawsError, Render};
use crate::matrix::Matrix;

/// A finite group given by its multiplication table: `table[i][j]` is the
/// index of `gᵢ·gⱼ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl GroupTable {
    pub fn new(name: &str, table: Vec<Vec<usize>>) -> Result<Self, LawsError> {
        let bad = |msg: &str| Err(LawsError::InvalidGroupTable(format!("{name}: {msg}")));
        let n = table.len();
        if n == 0 || n > 4 {
            return bad("order must be between 1 and 4");
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&k| k >= n)) {
            return bad("not an n×n table over 0..n");
        }
        let Some(e) = (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g)) else {
            return bad("no identity element");
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad("not associative");
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == e && table[h][g] == e) {
                Some(h) => inverse.push(h),
                None => return bad("an element has no inverse"),
            }
        }
        Ok(GroupTable { name: name.to_string(), table, inverse })
    }

    pub fn cyclic(n: usize) -> Result<Self, LawsError> {
        Self::new(&format!("C{n}"), (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect())
    }

    pub fn klein() -> Self {
        Self::new("Klein", (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect()).expect("Z2 x Z2")
    }

    /// `C2`, `C3`, `C4` or `Klein`, case-insensitively.
    pub fn named(name: &str) -> Result<Self, LawsError> {
        match name.to_ascii_lowercase().as_str() {
            "c2" => Self::cyclic(2),
            "c3" => Self::cyclic(3),
            "c4" => Self::cyclic(4),
            "klein" | "v4" => Ok(Self::klein()),
            _ => Err(LawsError::InvalidGroupTable(format!("unknown group {name}"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    /// Index of `gᵢ⁻¹·gⱼ`.
    pub fn quotient(&self, i: usize, j: usize) -> usize {
        self.table[self.inverse[i]][j]
    }
}

/// The matrix whose `(i, j)` entry is the element indexed by `gᵢ⁻¹·gⱼ`.
pub fn group_matrix<E: Clone>(group: &GroupTable, elems: &[E]) -> Result<Matrix<E>, LawsError> {
    let n = group.order();
    if elems.len() != n {
        return Err(LawsError::Arity { expected: n, got: elems.len() });
    }
    Ok(Matrix::from_fn(n, n, |i, j| elems[group.quotient(i, j)].clone()))
}

/// Row sums of the star and first entry of the omega vector of the group
/// matrix against the star and omega of the joined elements.
pub fn check_group_identity<A: Render>(alg: &A, group: &GroupTable, elems: &[A::Elem]) -> Result<LawReport, LawsError> {
    let m = group_matrix(group, elems)?;
    let mut report = LawReport::new(&format!("group-{}", group.name().to_ascii_lowercase()), alg.name());
    let inputs = || elems.iter().map(|e| alg.show(e)).collect::<Vec<_>>();
    let sum = elems.iter().fold(alg.zero(), |acc, e| alg.join(&acc, e));

    let star = m.star(alg).expect("square");
    let rhs = alg.star(&sum);
    for i in 0..m.rows() {
        let lhs = star.row(i).iter().fold(alg.zero(), |acc, e| alg.join(&acc, e));
        report.expect(alg.equal(&lhs, &rhs), || {
            Failure::new(inputs(), Some(format!("star row {i}")), alg.show(&lhs), alg.show(&rhs))
        });
    }

    let omega = m.omega(alg).expect("square");
    let lhs = &omega.entries()[0];
    let rhs = alg.omega(&sum);
    report.expect(alg.vequal(lhs, &rhs), || {
        Failure::new(inputs(), Some("omega entry 0".into()), alg.show_vector(lhs), alg.show_vector(&rhs))
    });
    Ok(report)
}

/// The two-variable Conway identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conway {
    /// `(x ∨ y)* = (x*y)*x*`
    SumStar,
    /// `(xy)* = 1 ∨ x(yx)*y`
    ProductStar,
    /// `(x ∨ y)^ω = (x*y)*x^ω ∨ (x*y)^ω`
    SumOmega,
    /// `(xy)^ω = x(yx)^ω`
    ProductOmega,
}

impl Conway {
    pub const ALL: [Conway; 4] = [Conway::SumStar, Conway::ProductStar, Conway::SumOmega, Conway::ProductOmega];

    pub fn name(self) -> &'static str {
        match self {
            Conway::SumStar => "conway-star",
            Conway::ProductStar => "product-star",
            Conway::SumOmega => "omega-sum",
            Conway::ProductOmega => "omega-product",
        }
    }
}

impl fmt::Display for Conway {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Conway {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Conway::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown identity {s}"))
    }
}

/// Both sides of `identity` at `(x, y)`.
pub fn check_conway<A: Render>(alg: &A, identity: Conway, x: &A::Elem, y: &A::Elem) -> LawReport {
    let mut report = LawReport::new(identity.name(), alg.name());
    let inputs = || vec![alg.show(x), alg.show(y)];
    let xs = alg.star(x);
    let xsy = alg.mul(&xs, y);
    match identity {
        Conway::SumStar | Conway::ProductStar => {
            let (lhs, rhs) = if identity == Conway::SumStar {
                (alg.star(&alg.join(x, y)), alg.mul(&alg.star(&xsy), &xs))
            } else {
                let inner = alg.mul(&alg.mul(x, &alg.star(&alg.mul(y, x))), y);
                (alg.star(&alg.mul(x, y)), alg.join(&alg.one(), &inner))
            };
            report.expect(alg.equal(&lhs, &rhs), || Failure::new(inputs(), None, alg.show(&lhs), alg.show(&rhs)));
        }
        Conway::SumOmega | Conway::ProductOmega => {
            let (lhs, rhs) = if identity == Conway::SumOmega {
                let head = alg.act(&alg.star(&xsy), &alg.omega(x));
                (alg.omega(&alg.join(x, y)), alg.vjoin(&head, &alg.omega(&xsy)))
            } else {
                (alg.omega(&alg.mul(x, y)), alg.act(x, &alg.omega(&alg.mul(y, x))))
            };
            report.expect(alg.vequal(&lhs, &rhs), || {
                Failure::new(inputs(), None, alg.show_vector(&lhs), alg.show_vector(&rhs))
            });
        }
    }
    report
}
