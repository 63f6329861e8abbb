//! Seeded random generators for energy functions, matrices, automata and
//! sample points.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automaton::Automaton;
use crate::energyfn::{Cut, EnergyFn, Piece};
use crate::extlat::Ext;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// A rational `k/d` with `d ∈ {1, 2, 4}` and `k` in `lo..=hi` (in units of `1/d`).
fn small_rational<T: Scalar, R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64) -> T {
    let d = *[1, 2, 4].choose(rng).expect("nonempty");
    T::ratio(rng.gen_range(lo * d..=hi * d), d)
}

fn positive_step<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> T {
    let d = *[1, 2, 4].choose(rng).expect("nonempty");
    T::ratio(rng.gen_range(1..=2 * d), d)
}

/// A random energy function: up to four pieces with slopes in
/// `{1, 3/2, 2}`, breakpoints with denominators at most four, optional
/// `⊥` and `⊤` regions, occasional upward jumps and isolated point values.
/// Values stay near the diagonal so that both regimes of star and omega
/// come up.
pub fn energy_fn<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> EnergyFn<T> {
    if rng.gen_ratio(1, 12) {
        return EnergyFn::bottom();
    }
    let (floor_at, floor_inclusive) = if rng.gen_bool(0.5) {
        (T::zero(), rng.gen_ratio(1, 6))
    } else {
        (small_rational(rng, 0, 3), rng.gen_bool(0.5))
    };
    let floor = Some(Cut::new(floor_at.clone(), floor_inclusive));
    if rng.gen_ratio(1, 20) {
        let at = floor_at.clone();
        let inclusive = !floor_inclusive;
        return EnergyFn::new(floor, Vec::new(), Some(Cut::new(at, inclusive))).expect("top right after the floor");
    }
    let slopes = [T::one(), T::ratio(3, 2), T::int(2)];
    let count = rng.gen_range(1..=4);
    let mut pieces: Vec<Piece<T>> = Vec::with_capacity(count);
    let mut start = floor_at;
    for i in 0..count {
        let slope = slopes.choose(rng).expect("nonempty").clone();
        let intercept = if i == 0 {
            let v = start.clone() + small_rational::<T, _>(rng, -2, 2);
            if v.is_negative() {
                T::zero()
            } else {
                v
            }
        } else {
            let prev = pieces.last().expect("an earlier piece");
            let limit = prev.intercept.clone() + prev.slope.clone() * (start.clone() - prev.start.clone());
            let jump: T = if rng.gen_bool(0.5) { T::zero() } else { positive_step(rng) };
            if jump.is_positive() && rng.gen_ratio(1, 3) {
                let between = limit.clone() + jump.clone() / T::int(2);
                pieces.push(Piece::new(start.clone(), between, T::one()));
            }
            limit + jump
        };
        pieces.push(Piece::new(start.clone(), intercept, slope));
        start = start + positive_step::<T, _>(rng);
    }
    let ceiling = rng.gen_ratio(1, 4).then(|| Cut::new(start, rng.gen_bool(0.5)));
    EnergyFn::new(floor, pieces, ceiling).expect("generated functions satisfy the invariants")
}

/// An energy function that is never constant `⊥`.
pub fn alive_fn<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> EnergyFn<T> {
    loop {
        let f = energy_fn(rng);
        if !f.is_bottom() {
            return f;
        }
    }
}

/// A square matrix with roughly `sparsity` of its entries constant `⊥`.
pub fn matrix<T: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize, sparsity: f64) -> Matrix<EnergyFn<T>> {
    Matrix::from_fn(n, n, |_, _| if rng.gen_bool(sparsity) { EnergyFn::bottom() } else { energy_fn(rng) })
}

/// An automaton on states `s0..s{n-1}` with a nonempty initial set and an
/// arbitrary accepting set.
pub fn automaton<T: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Automaton<T> {
    let states: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let mut initial: Vec<bool> = (0..n).map(|_| rng.gen_ratio(1, 3)).collect();
    if !initial.contains(&true) {
        initial[rng.gen_range(0..n)] = true;
    }
    let accepting = (0..n).map(|_| rng.gen_ratio(2, 5)).collect();
    Automaton::from_parts(states, initial, accepting, matrix(rng, n, 0.5)).expect("generated automaton is well formed")
}

/// Evaluation points for a set of functions: `⊥`, `⊤`, zero, every
/// breakpoint and fixed point with quarter offsets on either side, and
/// `extra` random rationals, deduplicated and sorted.
pub fn sample_points<T: Scalar, R: Rng + ?Sized>(rng: &mut R, fs: &[&EnergyFn<T>], extra: usize) -> Vec<Ext<T>> {
    let quarter = T::ratio(1, 4);
    let mut finite = vec![T::zero()];
    for f in fs {
        for p in f.breakpoints().into_iter().chain(f.fixed_points()) {
            finite.push(p.clone() + quarter.clone());
            if p >= quarter {
                finite.push(p.clone() - quarter.clone());
            }
            finite.push(p);
        }
    }
    for _ in 0..extra {
        finite.push(small_rational(rng, 0, 8));
    }
    let mut out: Vec<Ext<T>> = finite.into_iter().map(Ext::Finite).collect();
    out.push(Ext::Bottom);
    out.push(Ext::Top);
    out.sort();
    out.dedup();
    out
}

/// `count` distinct points drawn from [`sample_points`] and topped up with
/// random rationals, always including `⊥` and `⊤` when `count >= 2`.
pub fn pick_points<T: Scalar, R: Rng + ?Sized>(rng: &mut R, fs: &[&EnergyFn<T>], count: usize) -> Vec<Ext<T>> {
    let all = sample_points(rng, fs, count);
    let (ends, inner): (Vec<_>, Vec<_>) = all.into_iter().partition(|x| !matches!(x, Ext::Finite(_)));
    let mut out: Vec<Ext<T>> = ends.into_iter().take(count).collect();
    let rest = count.saturating_sub(out.len());
    out.extend(inner.choose_multiple(rng, rest).cloned());
    while out.len() < count {
        let x = Ext::Finite(small_rational(rng, 0, 16));
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// A random regex over `letters` of nesting depth at most `depth`, in the
/// syntax of [`crate::wordmodel::RegularLang::parse`].
pub fn regex<R: Rng + ?Sized>(rng: &mut R, letters: &str, depth: usize) -> String {
    let leaf = |rng: &mut R| match rng.gen_range(0..12) {
        0 => "1".to_string(),
        1 => "0".to_string(),
        _ => letters.chars().nth(rng.gen_range(0..letters.chars().count())).expect("in range").to_string(),
    };
    if depth == 0 || rng.gen_ratio(1, 4) {
        return leaf(rng);
    }
    match rng.gen_range(0..3) {
        0 => format!("({}|{})", regex(rng, letters, depth - 1), regex(rng, letters, depth - 1)),
        1 => format!("{}{}", regex(rng, letters, depth - 1), regex(rng, letters, depth - 1)),
        _ => format!("({})*", regex(rng, letters, depth - 1)),
    }
}

/// A random initial energy for automaton queries.
pub fn energy<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> Ext<T> {
    match rng.gen_range(0..10) {
        0 => Ext::Bottom,
        1 => Ext::Top,
        _ => Ext::Finite(small_rational(rng, 0, 6)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_are_deterministic_and_varied() {
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..200).map(|_| energy_fn::<Rational, _>(&mut rng)).collect::<Vec<_>>()
        };
        let a = run(7);
        assert_eq!(a, run(7));
        assert!(a.iter().any(EnergyFn::is_bottom));
        assert!(a.iter().any(|f| f.ceiling().is_some()));
        assert!(a.iter().any(|f| f.pieces().len() >= 3));
        assert!(a.iter().any(|f| f.pieces().windows(2).any(|w| w[0].start == w[1].start)));
        assert!(a.iter().any(|f| f.star().ceiling().is_some() && f.star().pieces().len() > 0));
    }

    #[test]
    fn regexes_parse() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let r = regex(&mut rng, "ab", 4);
            assert!(crate::wordmodel::RegularLang::parse(&r, "ab").is_ok(), "{r}");
        }
    }

    #[test]
    fn sample_points_cover_the_ends() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = EnergyFn::<Rational>::shift(Rational::int(-1));
        let pts = pick_points(&mut rng, &[&f], 6);
        assert_eq!(pts.len(), 6);
        assert!(pts.contains(&Ext::Bottom) && pts.contains(&Ext::Top));
    }
}
