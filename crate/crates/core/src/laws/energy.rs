//! Checkers for the infinite-product axioms and the greatest post-fixed
//! point characterization, on the energy instance.

use super::{Failure, LawReport, LawsError};
use crate::energyfn::{EnergyFn, Witness};
use crate::extlat::Ext;
use crate::matrix::{EnergyAlgebra, StarSemiring};
use crate::omegaval::Threshold;
use crate::scalar::Scalar;

const INSTANCE: &str = "energy";

fn show_all<T: Scalar>(fs: &[&EnergyFn<T>]) -> Vec<String> {
    fs.iter().map(|f| f.to_string()).collect()
}

/// `f·g*·h` against the partial joins `⋁ₙ f·gⁿ·h` at every sample.
pub fn check_ax0<T: Scalar>(
    alg: &EnergyAlgebra<T>,
    f: &EnergyFn<T>,
    g: &EnergyFn<T>,
    h: &EnergyFn<T>,
    samples: &[Ext<T>],
    budget: usize,
) -> LawReport {
    let mut report = LawReport::new("ax0", INSTANCE);
    let closed = f.compose(&alg.star(g)).compose(h);
    let inputs = || show_all(&[f, g, h]);
    for x in samples {
        let lhs = closed.eval(x);
        let y = f.eval(x);
        let rhs = match g.local_finiteness_witness(&y, budget) {
            Ok(Witness::Stabilized { n, .. }) => {
                let mut z = y.clone();
                let mut acc = h.eval(&z);
                for _ in 0..=n {
                    z = g.eval(&z);
                    acc = acc.join(&h.eval(&z));
                }
                acc
            }
            Ok(Witness::Diverges { .. }) if h.is_bottom() => Ext::Bottom,
            Ok(Witness::Diverges { .. }) => Ext::Top,
            Err(_) => {
                report.case();
                report.undecided(Failure::new(inputs(), Some(x.to_string()), &lhs, "no certificate"));
                continue;
            }
        };
        report.expect(lhs == rhs, || Failure::new(inputs(), Some(x.to_string()), &lhs, &rhs));
    }
    report
}

/// Block sizes for regrouping a lasso: `head` once, then `period` forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regrouping {
    pub head: Vec<usize>,
    pub period: Vec<usize>,
}

impl Regrouping {
    /// Blocks of `k` from the start.
    pub fn uniform(k: usize) -> Self {
        Regrouping { head: Vec::new(), period: vec![k] }
    }
}

/// Element `p` of `prefix · cycle · cycle · …` and a canonical position for it.
fn canonical(prefix: usize, cycle: usize, p: usize) -> usize {
    if p < prefix {
        p
    } else {
        prefix + (p - prefix) % cycle
    }
}

/// The lasso obtained by multiplying out consecutive blocks.
pub fn regroup<T: Scalar>(
    prefix: &[EnergyFn<T>],
    cycle: &[EnergyFn<T>],
    blocks: &Regrouping,
) -> Result<(Vec<EnergyFn<T>>, Vec<EnergyFn<T>>), LawsError> {
    if cycle.is_empty() {
        return Err(LawsError::EmptyCycle);
    }
    if blocks.period.is_empty() {
        return Err(LawsError::InvalidRegrouping("the block period is empty".into()));
    }
    if blocks.head.iter().chain(&blocks.period).any(|&k| k == 0) {
        return Err(LawsError::InvalidRegrouping("blocks must be nonempty".into()));
    }
    let at = |p: usize| {
        let c = canonical(prefix.len(), cycle.len(), p);
        if c < prefix.len() {
            &prefix[c]
        } else {
            &cycle[c - prefix.len()]
        }
    };
    let block = |p: usize, k: usize| EnergyFn::compose_all((p..p + k).map(at));
    let mut ys = Vec::new();
    let mut p = 0;
    for &k in &blocks.head {
        ys.push(block(p, k));
        p += k;
    }
    // Each round of the period starts at a canonical position; the first
    // repeated one closes the cycle.
    let mut rounds: Vec<(usize, usize)> = Vec::new();
    loop {
        let c = canonical(prefix.len(), cycle.len(), p);
        if p >= prefix.len() {
            if let Some(&(_, from)) = rounds.iter().find(|(seen, _)| *seen == c) {
                let tail = ys.split_off(from);
                return Ok((ys, tail));
            }
            rounds.push((c, ys.len()));
        }
        for &k in &blocks.period {
            ys.push(block(p, k));
            p += k;
        }
    }
}

/// The lasso against its head-peeled form and against its regrouping.
pub fn check_ax1_ax2<T: Scalar>(
    prefix: &[EnergyFn<T>],
    cycle: &[EnergyFn<T>],
    blocks: &Regrouping,
) -> Result<LawReport, LawsError> {
    let original = Threshold::lasso(prefix, cycle).map_err(|_| LawsError::EmptyCycle)?;
    let mut report = LawReport::new("ax1-ax2", INSTANCE);
    let inputs = || {
        let mut v: Vec<String> = prefix.iter().map(|f| format!("prefix {f}")).collect();
        v.extend(cycle.iter().map(|f| format!("cycle {f}")));
        v.push(format!("blocks {:?} then {:?} repeated", blocks.head, blocks.period));
        v
    };

    let peeled = if let Some((head, rest)) = prefix.split_first() {
        Threshold::act(head, &Threshold::lasso(rest, cycle).expect("nonempty cycle"))
    } else {
        let rotated: Vec<EnergyFn<T>> = cycle[1..].iter().chain(&cycle[..1]).cloned().collect();
        Threshold::act(&cycle[0], &Threshold::lasso(&[], &rotated).expect("nonempty cycle"))
    };
    report.expect(peeled == original, || Failure::new(inputs(), Some("peel".into()), &original, &peeled));

    let (head, period) = regroup(prefix, cycle, blocks)?;
    let grouped = Threshold::lasso(&head, &period).expect("nonempty cycle");
    report.expect(grouped == original, || Failure::new(inputs(), Some("regroup".into()), &original, &grouped));
    Ok(report)
}

/// A lasso of steps, each offering several functions, together with the
/// exact infinite product of the pointwise joins of the offers.
struct Search<'a, T> {
    prefix: &'a [Vec<EnergyFn<T>>],
    cycle: &'a [Vec<EnergyFn<T>>],
    joined_prefix: Vec<EnergyFn<T>>,
    joined_cycle: Vec<EnergyFn<T>>,
    /// Per cycle position, a region of levels from which the rest of the
    /// sequence is known to be survivable.
    escape: Vec<Option<Threshold<T>>>,
}

impl<'a, T: Scalar> Search<'a, T> {
    fn new(prefix: &'a [Vec<EnergyFn<T>>], cycle: &'a [Vec<EnergyFn<T>>]) -> Self {
        let join = |opts: &[Vec<EnergyFn<T>>]| {
            opts.iter().map(|o| o.iter().fold(EnergyFn::bottom(), |acc, f| acc.join(f))).collect::<Vec<_>>()
        };
        Search { joined_prefix: join(prefix), joined_cycle: join(cycle), prefix, cycle, escape: Vec::new() }
    }

    fn options(&self, p: usize) -> &[EnergyFn<T>] {
        match p.checked_sub(self.prefix.len()) {
            None => &self.prefix[p],
            Some(q) => &self.cycle[q % self.cycle.len()],
        }
    }

    /// Exact product of the joined offers from position `p` on.
    fn upper(&self, p: usize) -> Threshold<T> {
        if p < self.prefix.len() {
            return Threshold::lasso(&self.joined_prefix[p..], &self.joined_cycle).expect("nonempty cycle");
        }
        let i = (p - self.prefix.len()) % self.cycle.len();
        Threshold::lasso(&self.joined_cycle[i..], &self.joined_cycle).expect("nonempty cycle")
    }

    /// Follows, from `x`, the offer with the highest energy at every step.
    /// This is the run of the joined offers, whose lap has a nondecreasing
    /// gain, so the second lap boundary decides: if the last lap did not
    /// lose energy its choices repeat into a lasso accepting `x`, otherwise
    /// every later lap loses at least as much and the run dies. A lap never
    /// starts at `⊤`; the run resumes from a finite level the rest of the
    /// sequence accepts, all of which are within reach from `⊤`.
    fn greedy(&self, x: &Ext<T>) -> Option<Threshold<T>> {
        let mut e = x.clone();
        let mut path: Vec<EnergyFn<T>> = Vec::new();
        let mut lap: Option<(usize, Ext<T>)> = None;
        loop {
            let p = path.len();
            if e.is_bottom() {
                return None;
            }
            if let Some(i) = p.checked_sub(self.prefix.len()).map(|q| q % self.cycle.len()) {
                if let Some(Some(region)) = self.escape.get(i) {
                    if region.apply(&e) {
                        return Some(Threshold::act(&EnergyFn::compose_all(&path), region));
                    }
                }
                if i == 0 {
                    if let Some((start, level)) = lap {
                        return (e >= level)
                            .then(|| Threshold::lasso(&path[..start], &path[start..]).expect("a full lap"));
                    }
                    if e.is_top() {
                        let Threshold::From { threshold, .. } = self.upper(p) else {
                            return None;
                        };
                        e = Ext::Finite(threshold + T::one());
                    }
                    lap = Some((p, e.clone()));
                }
            }
            let (v, o) = self
                .options(p)
                .iter()
                .map(|o| (o.eval(&e), o))
                .max_by(|a, b| a.0.cmp(&b.0))
                .expect("at least one option");
            e = v;
            path.push(o.clone());
        }
    }
}

/// Points at which to start greedy runs: the finite samples accepted by
/// `lhs`, and its threshold or points just above it.
fn probe_points<T: Scalar>(lhs: &Threshold<T>, samples: &[Ext<T>]) -> Vec<Ext<T>> {
    let mut out: Vec<Ext<T>> = samples.iter().filter(|x| matches!(x, Ext::Finite(_)) && lhs.apply(x)).cloned().collect();
    if let Threshold::From { threshold, inclusive } = lhs {
        if *inclusive {
            out.push(Ext::Finite(threshold.clone()));
        } else {
            let mut d = T::one();
            for _ in 0..8 {
                out.push(Ext::Finite(threshold.clone() + d.clone()));
                d = d / T::int(2);
            }
        }
    }
    out
}

/// Compares an exact left side with the join of candidate lassos, each of
/// which is a term of the right-hand supremum.
fn settle_supremum<T: Scalar>(
    report: &mut LawReport,
    inputs: Vec<String>,
    lhs: &Threshold<T>,
    candidates: Vec<Threshold<T>>,
    samples: &[Ext<T>],
) {
    let rhs = candidates.into_iter().fold(Threshold::Never, |acc, c| acc.join(&c));
    report.case();
    if !rhs.leq(lhs) {
        report.fail(Failure::new(inputs, None, lhs, &rhs));
    } else if rhs != *lhs {
        let point = samples.iter().find(|x| lhs.apply(x) && !rhs.apply(x)).map(|x| x.to_string());
        report.undecided(Failure::new(inputs, point, lhs, format!("{rhs} (no candidate reaches the left side)")));
    }
}

/// `∏ xₙ(y ∨ z)` against the join over choice sequences `∏ xₙx′ₙ`.
pub fn check_ax3<T: Scalar>(
    prefix: &[EnergyFn<T>],
    cycle: &[EnergyFn<T>],
    y: &EnergyFn<T>,
    z: &EnergyFn<T>,
    samples: &[Ext<T>],
) -> Result<LawReport, LawsError> {
    if cycle.is_empty() {
        return Err(LawsError::EmptyCycle);
    }
    let mut report = LawReport::new("ax3", INSTANCE);
    let yz = y.join(z);
    let then = |xs: &[EnergyFn<T>], w: &EnergyFn<T>| xs.iter().map(|x| x.compose(w)).collect::<Vec<_>>();
    let lhs = Threshold::lasso(&then(prefix, &yz), &then(cycle, &yz)).expect("nonempty cycle");
    let mut candidates = vec![
        Threshold::lasso(&then(prefix, y), &then(cycle, y)).expect("nonempty cycle"),
        Threshold::lasso(&then(prefix, z), &then(cycle, z)).expect("nonempty cycle"),
    ];
    let options = |xs: &[EnergyFn<T>]| xs.iter().map(|x| vec![x.compose(y), x.compose(z)]).collect::<Vec<_>>();
    let (po, co) = (options(prefix), options(cycle));
    let search = Search::new(&po, &co);
    candidates.extend(probe_points(&lhs, samples).iter().filter_map(|x| search.greedy(x)));
    let mut inputs: Vec<String> = prefix.iter().map(|f| format!("prefix {f}")).collect();
    inputs.extend(cycle.iter().map(|f| format!("cycle {f}")));
    inputs.push(format!("y {y}"));
    inputs.push(format!("z {z}"));
    settle_supremum(&mut report, inputs, &lhs, candidates, samples);
    Ok(report)
}

/// `{x finite : f(x) > x}`, which is upward closed because the gain
/// `f(x) - x` never decreases. Between consecutive breakpoints and fixed
/// points the gain keeps its sign, so one probe per gap decides it.
fn gaining_region<T: Scalar>(f: &EnergyFn<T>) -> Threshold<T> {
    let mut critical = f.breakpoints();
    critical.extend(f.fixed_points());
    critical.push(T::zero());
    critical.sort();
    critical.dedup();
    let gains = |x: &T| f.eval_finite(x) > Ext::Finite(x.clone());
    for (i, c) in critical.iter().enumerate() {
        if gains(c) {
            return Threshold::from(c.clone(), true);
        }
        let next = critical.get(i + 1).cloned().unwrap_or_else(|| c.clone() + T::int(2));
        if gains(&((c.clone() + next) / T::int(2))) {
            return Threshold::from(c.clone(), false);
        }
    }
    Threshold::Never
}

/// `∏ f*·yₙ` against the join over exponent sequences `∏ f^kₙ·yₙ`, searching
/// exponents up to `max_exponent`.
pub fn check_ax4<T: Scalar>(
    alg: &EnergyAlgebra<T>,
    f: &EnergyFn<T>,
    cycle: &[EnergyFn<T>],
    samples: &[Ext<T>],
    max_exponent: usize,
) -> Result<LawReport, LawsError> {
    if cycle.is_empty() {
        return Err(LawsError::EmptyCycle);
    }
    let mut report = LawReport::new("ax4", INSTANCE);
    let fs = alg.star(f);
    let starred: Vec<EnergyFn<T>> = cycle.iter().map(|y| fs.compose(y)).collect();
    let lhs = Threshold::lasso(&[], &starred).expect("nonempty cycle");
    let mut powers = vec![EnergyFn::identity()];
    for k in 1..=max_exponent {
        let next = powers[k - 1].compose(f);
        powers.push(next);
    }
    let options: Vec<Vec<EnergyFn<T>>> =
        cycle.iter().map(|y| powers.iter().map(|p| p.compose(y)).collect()).collect();
    let mut candidates: Vec<Threshold<T>> = (0..=max_exponent)
        .map(|k| Threshold::lasso(&[], &options.iter().map(|o| o[k].clone()).collect::<Vec<_>>()).expect("nonempty"))
        .collect();
    // From a level where f gains, the orbit under f passes every finite
    // level, so a large enough exponent before position i reaches any live
    // tail starting with the plain yᵢ.
    let gaining = gaining_region(f);
    let escape: Vec<Option<Threshold<T>>> = (0..cycle.len())
        .map(|i| {
            let live = (0..=max_exponent).any(|k| {
                let head: Vec<EnergyFn<T>> =
                    std::iter::once(cycle[i].clone()).chain(options[i + 1..].iter().map(|o| o[k].clone())).collect();
                let period: Vec<EnergyFn<T>> = options.iter().map(|o| o[k].clone()).collect();
                !Threshold::lasso(&head, &period).expect("nonempty cycle").is_never()
            });
            live.then(|| gaining.clone())
        })
        .collect();
    if let Some(region) = &escape[0] {
        candidates.push(region.clone());
    }
    let mut search = Search::new(&[], &options);
    search.escape = escape;
    candidates.extend(probe_points(&lhs, samples).iter().filter_map(|x| search.greedy(x)));
    let mut inputs = vec![format!("f {f}")];
    inputs.extend(cycle.iter().map(|y| format!("cycle {y}")));
    settle_supremum(&mut report, inputs, &lhs, candidates, samples);
    Ok(report)
}

/// `w = f^ω ∨ f*·v` is a fixed point of `u ↦ f·u ∨ v`, and every sample it
/// rejects has an orbit that dies without meeting `v`, so no post-fixed
/// point accepts it either.
pub fn check_bi_inductive<T: Scalar>(
    alg: &EnergyAlgebra<T>,
    f: &EnergyFn<T>,
    v: &Threshold<T>,
    samples: &[Ext<T>],
    budget: usize,
) -> LawReport {
    let mut report = LawReport::new("bi-inductive", INSTANCE);
    let w = Threshold::omega(f).join(&Threshold::act(&alg.star(f), v));
    let inputs = || vec![f.to_string(), v.to_string()];
    let image = Threshold::act(f, &w).join(v);
    report.expect(image == w, || Failure::new(inputs(), Some("fixed point".into()), &w, &image));
    for x in samples.iter().filter(|x| matches!(x, Ext::Finite(_)) && !w.apply(x)) {
        report.case();
        let mut z = x.clone();
        let mut verdict = None;
        for _ in 0..budget {
            if z.is_bottom() {
                verdict = Some(true);
                break;
            }
            let next = f.eval(&z);
            if v.apply(&z) || next >= z {
                verdict = Some(false);
                break;
            }
            z = next;
        }
        let point = Some(x.to_string());
        match verdict {
            Some(true) => {}
            Some(false) => report.fail(Failure::new(inputs(), point, &w, format!("orbit survives from {z}"))),
            None => report.undecided(Failure::new(inputs(), point, &w, "orbit still alive")),
        }
    }
    report
}
