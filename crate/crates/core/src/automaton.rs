//! Energy automata: an initial set, an accepting set and a matrix of energy
//! functions, with reachability and Büchi acceptance decided algebraically
//! (matrix star and stacked omega) and, independently, by search over runs.

use std::collections::{HashMap, VecDeque};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::energyfn::EnergyFn;
use crate::extlat::Ext;
use crate::matrix::{EnergyAlgebra, Matrix};
use crate::omegaval::Threshold;
use crate::scalar::Scalar;

/// Doublings of the pumping count tried when building a reach witness.
const PUMP_LIMIT: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("an automaton needs at least one state")]
    NoStates,
    #[error("state `{0}` is declared twice")]
    DuplicateState(String),
    #[error("unknown state `{name}` in {field}")]
    UnknownState { name: String, field: &'static str },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("search exceeded its budget of {steps} improvements")]
    BudgetExceeded { steps: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton<T> {
    states: Vec<String>,
    initial: Vec<bool>,
    accepting: Vec<bool>,
    transitions: Matrix<EnergyFn<T>>,
}

/// A finite run reaching an accepting state, or a prefix followed by a
/// repeated cycle. States are listed by name; a lasso's prefix ends at the
/// state where the cycle starts and the cycle ends back at that state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RunWitness {
    Path { states: Vec<String> },
    Lasso { prefix: Vec<String>, cycle: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub enum QueryValue<T> {
    Energy(Ext<T>),
    Predicate(Threshold<T>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct QueryResult<T> {
    pub answer: bool,
    pub value: QueryValue<T>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<RunWitness>,
}

/// Improvement budget for the search oracles.
pub const DEFAULT_BUDGET: usize = 200_000;

impl<T: Scalar> Automaton<T> {
    /// Build from state names, initial and accepting names and edges.
    /// Parallel edges are joined.
    pub fn new<S: AsRef<str>>(
        states: &[S],
        initial: &[S],
        accepting: &[S],
        edges: Vec<(S, S, EnergyFn<T>)>,
    ) -> Result<Self, AutomatonError> {
        if states.is_empty() {
            return Err(AutomatonError::NoStates);
        }
        let mut index = HashMap::new();
        for (i, s) in states.iter().enumerate() {
            if index.insert(s.as_ref().to_string(), i).is_some() {
                return Err(AutomatonError::DuplicateState(s.as_ref().to_string()));
            }
        }
        let lookup = |name: &str, field: &'static str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| AutomatonError::UnknownState { name: name.to_string(), field })
        };
        let n = states.len();
        let mut initial_set = vec![false; n];
        for s in initial {
            initial_set[lookup(s.as_ref(), "initial")?] = true;
        }
        let mut accepting_set = vec![false; n];
        for s in accepting {
            accepting_set[lookup(s.as_ref(), "accepting")?] = true;
        }
        let mut transitions = Matrix::from_fn(n, n, |_, _| EnergyFn::bottom());
        for (from, to, f) in edges {
            let i = lookup(from.as_ref(), "edge source")?;
            let j = lookup(to.as_ref(), "edge target")?;
            let joined = transitions.get(i, j).join(&f);
            transitions.set(i, j, joined);
        }
        Ok(Automaton {
            states: states.iter().map(|s| s.as_ref().to_string()).collect(),
            initial: initial_set,
            accepting: accepting_set,
            transitions,
        })
    }

    /// Build directly from index sets and a transition matrix.
    pub fn from_parts(
        states: Vec<String>,
        initial: Vec<bool>,
        accepting: Vec<bool>,
        transitions: Matrix<EnergyFn<T>>,
    ) -> Result<Self, AutomatonError> {
        let names: Vec<&str> = states.iter().map(String::as_str).collect();
        let n = names.len();
        assert!(
            initial.len() == n && accepting.len() == n && transitions.rows() == n && transitions.cols() == n,
            "automaton parts disagree on the number of states"
        );
        let pick = |mask: &[bool]| -> Vec<&str> {
            names.iter().zip(mask).filter(|(_, &b)| b).map(|(s, _)| *s).collect()
        };
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !transitions.get(i, j).is_bottom() {
                    edges.push((names[i], names[j], transitions.get(i, j).clone()));
                }
            }
        }
        Self::new(&names, &pick(&initial), &pick(&accepting), edges)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn is_initial(&self, i: usize) -> bool {
        self.initial[i]
    }

    pub fn is_accepting(&self, i: usize) -> bool {
        self.accepting[i]
    }

    pub fn transitions(&self) -> &Matrix<EnergyFn<T>> {
        &self.transitions
    }

    pub fn edge(&self, i: usize, j: usize) -> &EnergyFn<T> {
        self.transitions.get(i, j)
    }

    fn index_of(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    /// Relabel states: state `i` of the result is state `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Automaton {
            states: perm.iter().map(|&p| self.states[p].clone()).collect(),
            initial: perm.iter().map(|&p| self.initial[p]).collect(),
            accepting: perm.iter().map(|&p| self.accepting[p]).collect(),
            transitions: self.transitions.permuted(perm),
        }
    }

    /// Reorder so that the accepting states come first, keeping the relative
    /// order inside both groups. Returns the automaton and the permutation
    /// (`perm[i]` is the original index of new state `i`).
    pub fn canonical_permute(&self) -> (Self, Vec<usize>) {
        let n = self.len();
        let perm: Vec<usize> =
            (0..n).filter(|&i| self.accepting[i]).chain((0..n).filter(|&i| !self.accepting[i])).collect();
        (self.permuted(&perm), perm)
    }

    fn accepting_count(&self) -> usize {
        self.accepting.iter().filter(|&&b| b).count()
    }

    /// `α · M* · ζ` as one energy function.
    pub fn reach_value(&self) -> EnergyFn<T> {
        let (a, _) = self.canonical_permute();
        let alg = EnergyAlgebra::new();
        let star = a.transitions.star(&alg).expect("transition matrix is square and nonempty");
        let k = a.accepting_count();
        let mut acc = EnergyFn::bottom();
        for i in (0..a.len()).filter(|&i| a.initial[i]) {
            for j in 0..k {
                acc = acc.join(star.get(i, j));
            }
        }
        acc
    }

    pub fn reachable(&self, x0: &Ext<T>) -> QueryResult<T> {
        let value = self.reach_value().eval(x0);
        QueryResult { answer: !value.is_bottom(), value: QueryValue::Energy(value), witness: None }
    }

    /// `α` applied to the stacked Büchi vector of the accepting-first layout.
    pub fn buchi_value(&self) -> Threshold<T> {
        let (a, _) = self.canonical_permute();
        let alg = EnergyAlgebra::new();
        let stacked = a
            .transitions
            .omega_k(&alg, a.accepting_count())
            .expect("accepting count is within range");
        (0..a.len())
            .filter(|&i| a.initial[i])
            .fold(Threshold::Never, |acc, i| acc.join(&stacked.entries()[i]))
    }

    pub fn buchi(&self, x0: &Ext<T>) -> QueryResult<T> {
        let value = self.buchi_value();
        QueryResult { answer: value.apply(x0), value: QueryValue::Predicate(value), witness: None }
    }

    /// Reachability by search over runs, independent of the matrix algebra.
    ///
    /// Keeps the best energy per state. An improvement that re-enters a state
    /// of its own run with strictly more energy than before proves that the
    /// loop pumps without bound, and the state is raised to `⊤`. Every other
    /// improvement extends a simple run, so the search terminates; the final
    /// labels are the suprema over all runs.
    pub fn oracle_reach(&self, x0: &Ext<T>, budget: usize) -> Result<QueryResult<T>, OracleError> {
        let labels = self.best_from_initial(x0, budget)?;
        let best = (0..self.len())
            .filter(|&j| self.accepting[j])
            .filter_map(|j| labels[j].as_ref().map(|l| (j, l)))
            .max_by(|a, b| a.1.energy.cmp(&b.1.energy));
        Ok(match best {
            None => QueryResult { answer: false, value: QueryValue::Energy(Ext::Bottom), witness: None },
            Some((_, label)) => QueryResult {
                answer: true,
                value: QueryValue::Energy(label.energy.clone()),
                witness: self.pumped_path(label, x0),
            },
        })
    }

    /// Büchi acceptance by search over runs, independent of the matrix
    /// algebra: some accepting state must be reachable with an energy from
    /// which a cycle through it returns with at least as much energy.
    ///
    /// Where the reachable energy is unbounded the question is whether some
    /// cycle through the state gains in the limit; that is decided on the
    /// asymptotic gains of the edges with a longest-walk computation.
    pub fn oracle_buchi(&self, x0: &Ext<T>, budget: usize) -> Result<QueryResult<T>, OracleError> {
        let labels = self.best_from_initial(x0, budget)?;
        let no = QueryResult { answer: false, value: QueryValue::Energy(Ext::Bottom), witness: None };
        let yes = |witness| QueryResult { answer: true, value: QueryValue::Energy(Ext::Top), witness };
        let mut unbounded = Vec::new();
        for q in (0..self.len()).filter(|&q| self.accepting[q]) {
            let Some(label) = &labels[q] else { continue };
            if label.energy.is_top() {
                unbounded.push(q);
                continue;
            }
            let mut search = Search::new(&self.transitions, budget);
            search.expand(label.clone())?;
            search.run()?;
            if let Some(back) = &search.labels[q] {
                if back.energy >= label.energy {
                    let cycle = self.names(&back.trail[label.trail.len()..]);
                    let witness = RunWitness::Lasso { prefix: self.names(&label.trail), cycle };
                    let witness = self.replay(&witness, x0).then_some(witness);
                    return Ok(yes(witness));
                }
            }
        }
        if unbounded.iter().any(|&q| self.gaining_cycle_through(q)) {
            return Ok(yes(None));
        }
        Ok(no)
    }

    fn best_from_initial(&self, x0: &Ext<T>, budget: usize) -> Result<Vec<Option<Label<T>>>, OracleError> {
        let mut search = Search::new(&self.transitions, budget);
        if !x0.is_bottom() {
            for i in (0..self.len()).filter(|&i| self.initial[i]) {
                search.set(Label { energy: x0.clone(), trail: vec![(i, x0.clone())] });
            }
        }
        search.run()?;
        Ok(search.labels)
    }

    /// Does some closed walk through `q` have nonnegative asymptotic gain?
    fn gaining_cycle_through(&self, q: usize) -> bool {
        let n = self.len();
        let gain = |i: usize, j: usize| asymptotic_gain(self.transitions.get(i, j));
        let mut reach = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                reach[i][j] = !self.transitions.get(i, j).is_bottom();
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    reach[i][j] = reach[i][j] || (reach[i][k] && reach[k][j]);
                }
            }
        }
        if !reach[q][q] {
            return false;
        }
        let comp: Vec<usize> = (0..n).filter(|&i| reach[q][i] && reach[i][q]).collect();
        // Every edge inside the component lies on a closed walk through `q`.
        let mut best: Vec<Vec<Option<T>>> = vec![vec![None; comp.len()]; comp.len()];
        for (a, &i) in comp.iter().enumerate() {
            for (b, &j) in comp.iter().enumerate() {
                match gain(i, j) {
                    Gain::Absent => {}
                    Gain::Unbounded => return true,
                    Gain::Finite(w) => best[a][b] = Some(w),
                }
            }
        }
        let m = comp.len();
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    if let (Some(x), Some(y)) = (&best[i][k], &best[k][j]) {
                        let via = x.clone() + y.clone();
                        if best[i][j].as_ref().is_none_or(|cur| via > *cur) {
                            best[i][j] = Some(via);
                        }
                    }
                }
            }
        }
        // A positive cycle anywhere in the component can be pumped on a
        // walk through `q`; otherwise the entry for `q` is exact.
        let zero = T::zero();
        (0..m).any(|i| best[i][i].as_ref().is_some_and(|w| *w > zero))
            || comp.iter().position(|&i| i == q).is_some_and(|a| best[a][a].as_ref().is_some_and(|w| *w >= zero))
    }

    /// A replayable run for `label`, pumping its loop until the rest of the
    /// run goes through.
    fn pumped_path(&self, label: &Label<T>, x0: &Ext<T>) -> Option<RunWitness> {
        (0..=PUMP_LIMIT)
            .map(|k| if k == 0 { 0 } else { 1 << (k - 1) })
            .map(|extra| RunWitness::Path {
                states: label.unfold(extra).into_iter().map(|s| self.states[s].clone()).collect(),
            })
            .find(|w| self.replay(w, x0))
    }

    fn names(&self, trail: &[(usize, Ext<T>)]) -> Vec<String> {
        trail.iter().map(|(s, _)| self.states[*s].clone()).collect()
    }

    fn run_function(&self, states: &[String]) -> Option<EnergyFn<T>> {
        let idx: Option<Vec<usize>> = states.iter().map(|s| self.index_of(s)).collect();
        let idx = idx?;
        Some(EnergyFn::compose_all(&idx.windows(2).map(|w| self.edge(w[0], w[1]).clone()).collect::<Vec<_>>()))
    }

    /// Check a witness against the automaton at energy `x0`.
    pub fn replay(&self, witness: &RunWitness, x0: &Ext<T>) -> bool {
        match witness {
            RunWitness::Path { states } => {
                let (Some(first), Some(last)) = (states.first(), states.last()) else { return false };
                let (Some(i), Some(j)) = (self.index_of(first), self.index_of(last)) else { return false };
                self.initial[i]
                    && self.accepting[j]
                    && self.run_function(states).is_some_and(|f| !f.eval(x0).is_bottom())
            }
            RunWitness::Lasso { prefix, cycle } => {
                let (Some(first), Some(anchor)) = (prefix.first(), prefix.last()) else { return false };
                if cycle.last() != Some(anchor) {
                    return false;
                }
                let (Some(i), Some(q)) = (self.index_of(first), self.index_of(anchor)) else { return false };
                let mut loop_states = vec![anchor.clone()];
                loop_states.extend(cycle.iter().cloned());
                let accepting_on_cycle = loop_states.iter().any(|s| self.index_of(s).is_some_and(|k| self.accepting[k]));
                let (Some(head), Some(period)) = (self.run_function(prefix), self.run_function(&loop_states)) else {
                    return false;
                };
                self.initial[i]
                    && accepting_on_cycle
                    && self.accepting[q]
                    && Threshold::lasso(&[head], &[period]).is_ok_and(|v| v.apply(x0))
            }
        }
    }
}

enum Gain<T> {
    Absent,
    Unbounded,
    Finite(T),
}

/// `lim f(x) - x` as `x` grows.
fn asymptotic_gain<T: Scalar>(f: &EnergyFn<T>) -> Gain<T> {
    if f.is_bottom() {
        return Gain::Absent;
    }
    if f.ceiling().is_some() {
        return Gain::Unbounded;
    }
    let last = f.pieces().last().expect("an alive function without a top region has pieces");
    if last.slope > T::one() {
        Gain::Unbounded
    } else {
        Gain::Finite(last.intercept.clone() - last.start.clone())
    }
}

#[derive(Clone, Debug)]
struct Label<T> {
    energy: Ext<T>,
    /// The run that produced `energy`, with the energy on entering each state.
    /// Past the first pumping loop the entries are `⊤`; the entry closing
    /// that loop keeps the value of a single pass.
    trail: Vec<(usize, Ext<T>)>,
}

impl<T: Scalar> Label<T> {
    fn state(&self) -> usize {
        self.trail.last().expect("a label has a nonempty trail").0
    }

    /// The trail as a concrete run, with its pumping loop taken `extra`
    /// more times.
    fn unfold(&self, extra: usize) -> Vec<usize> {
        let states: Vec<usize> = self.trail.iter().map(|(s, _)| *s).collect();
        if !self.energy.is_top() {
            return states;
        }
        let Some(p) = self.trail.iter().position(|(_, e)| e.is_top()).unwrap_or(self.trail.len()).checked_sub(1) else {
            return states;
        };
        let (q, e) = &self.trail[p];
        let Some(u) = self.trail[..p].iter().rposition(|(s, f)| s == q && f < e) else {
            return states;
        };
        let mut run = states[..=p].to_vec();
        for _ in 0..extra {
            run.extend_from_slice(&states[u + 1..=p]);
        }
        run.extend_from_slice(&states[p + 1..]);
        run
    }
}

struct Search<'a, T> {
    transitions: &'a Matrix<EnergyFn<T>>,
    labels: Vec<Option<Label<T>>>,
    queue: VecDeque<usize>,
    queued: Vec<bool>,
    steps: usize,
    budget: usize,
}

impl<'a, T: Scalar> Search<'a, T> {
    fn new(transitions: &'a Matrix<EnergyFn<T>>, budget: usize) -> Self {
        let n = transitions.rows();
        Search { transitions, labels: vec![None; n], queue: VecDeque::new(), queued: vec![false; n], steps: 0, budget }
    }

    fn set(&mut self, label: Label<T>) {
        let s = label.state();
        self.labels[s] = Some(label);
        if !self.queued[s] {
            self.queued[s] = true;
            self.queue.push_back(s);
        }
    }

    fn expand(&mut self, from: Label<T>) -> Result<(), OracleError> {
        for t in 0..self.transitions.cols() {
            let f = self.transitions.get(from.state(), t);
            if f.is_bottom() {
                continue;
            }
            let next = f.eval(&from.energy);
            if next.is_bottom() || self.labels[t].as_ref().is_some_and(|l| next <= l.energy) {
                continue;
            }
            self.steps += 1;
            if self.steps > self.budget {
                return Err(OracleError::BudgetExceeded { steps: self.budget });
            }
            let pumps = from.trail.iter().any(|(u, e)| *u == t && next > *e);
            let mut trail = from.trail.clone();
            trail.push((t, next.clone()));
            let energy = if pumps { Ext::Top } else { next };
            self.set(Label { energy, trail });
        }
        Ok(())
    }

    fn run(&mut self) -> Result<(), OracleError> {
        while let Some(s) = self.queue.pop_front() {
            self.queued[s] = false;
            let label = self.labels[s].clone().expect("queued states are labelled");
            self.expand(label)?;
        }
        Ok(())
    }
}

/// Supremum over all paths from `from` of the composed edge functions at
/// `x`, one entry per target (the empty path counts for `from` itself).
pub fn path_supremum<T: Scalar>(
    transitions: &Matrix<EnergyFn<T>>,
    from: usize,
    x: &Ext<T>,
    budget: usize,
) -> Result<Vec<Ext<T>>, OracleError> {
    let mut search = Search::new(transitions, budget);
    if !x.is_bottom() {
        search.set(Label { energy: x.clone(), trail: vec![(from, x.clone())] });
    }
    search.run()?;
    Ok(search.labels.into_iter().map(|l| l.map_or(Ext::Bottom, |l| l.energy)).collect())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
struct WireEdge<T> {
    from: String,
    to: String,
    #[serde(rename = "fn")]
    function: EnergyFn<T>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
struct WireAutomaton<T> {
    states: Vec<String>,
    initial: Vec<String>,
    accepting: Vec<String>,
    edges: Vec<WireEdge<T>>,
}

impl<T: Scalar> Serialize for Automaton<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let n = self.len();
        let pick = |mask: &[bool]| (0..n).filter(|&i| mask[i]).map(|i| self.states[i].clone()).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let f = self.edge(i, j);
                if !f.is_bottom() {
                    edges.push(WireEdge { from: self.states[i].clone(), to: self.states[j].clone(), function: f.clone() });
                }
            }
        }
        WireAutomaton { states: self.states.clone(), initial: pick(&self.initial), accepting: pick(&self.accepting), edges }
            .serialize(serializer)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Automaton<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = WireAutomaton::<T>::deserialize(deserializer)?;
        let edges = wire.edges.into_iter().map(|e| (e.from, e.to, e.function)).collect();
        Automaton::new(&wire.states, &wire.initial, &wire.accepting, edges).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energyfn::{Cut, Piece};
    use crate::{EnergyAutomaton, EnergyFunction, Rational};

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn fin(n: i64, d: i64) -> Ext<Rational> {
        Ext::Finite(q(n, d))
    }

    fn shift(d: i64) -> EnergyFunction {
        EnergyFunction::shift(q(d, 1))
    }

    /// `s0 --x+2--> s1 --x-1--> s0`.
    fn pump(accepting: &str) -> EnergyAutomaton {
        Automaton::new(
            &["s0", "s1"],
            &["s0"],
            &[accepting],
            vec![("s0", "s1", shift(2)), ("s1", "s0", shift(-1))],
        )
        .unwrap()
    }

    fn self_loop(f: EnergyFunction) -> EnergyAutomaton {
        Automaton::new(&["s"], &["s"], &["s"], vec![("s", "s", f)]).unwrap()
    }

    /// A single edge that needs energy 1, leading to the only accepting state.
    fn gate() -> EnergyAutomaton {
        let needs_one = EnergyFunction::new(
            Some(Cut::new(q(1, 1), false)),
            vec![Piece::new(q(1, 1), q(1, 1), q(1, 1))],
            None,
        )
        .unwrap();
        Automaton::new(&["a", "b"], &["a"], &["b"], vec![("a", "b", needs_one)]).unwrap()
    }

    fn check_oracles(a: &EnergyAutomaton, x: &Ext<Rational>) {
        let r = a.reachable(x);
        let ro = a.oracle_reach(x, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.answer, ro.answer, "reach at {x}");
        assert_eq!(r.value, ro.value, "reach value at {x}");
        if let Some(w) = &ro.witness {
            assert!(a.replay(w, x));
        }
        let b = a.buchi(x);
        let bo = a.oracle_buchi(x, DEFAULT_BUDGET).unwrap();
        assert_eq!(b.answer, bo.answer, "buchi at {x}");
        if let Some(w) = &bo.witness {
            assert!(a.replay(w, x));
        }
    }

    #[test]
    fn canonical_permute_examples() {
        let (p, perm) = pump("s1").canonical_permute();
        assert_eq!(perm, vec![1, 0]);
        assert_eq!(p.states(), ["s1", "s0"]);
        assert_eq!(*p.edge(1, 0), shift(2));
        assert_eq!(*p.edge(0, 1), shift(-1));
        assert_eq!(pump("s0").canonical_permute().1, vec![0, 1]);
        let all = Automaton::new(&["a", "b"], &["a"], &["a", "b"], vec![]).unwrap();
        let all: EnergyAutomaton = all;
        assert_eq!(all.canonical_permute().1, vec![0, 1]);
    }

    #[test]
    fn reach_examples() {
        let lonely: EnergyAutomaton = Automaton::new(&["s"], &["s"], &[], vec![]).unwrap();
        assert!(lonely.reach_value().is_bottom());
        let home: EnergyAutomaton = Automaton::new(&["s"], &["s"], &["s"], vec![]).unwrap();
        assert_eq!(home.reach_value(), EnergyFunction::identity());
        assert!(home.reachable(&fin(0, 1)).answer);
        assert_eq!(pump("s1").reach_value(), EnergyFunction::top());
        assert!(pump("s1").reachable(&fin(0, 1)).answer);
        assert!(!gate().reachable(&fin(1, 2)).answer);
        assert!(gate().reachable(&fin(1, 1)).answer);
        assert!(!home.oracle_reach(&Ext::Bottom, DEFAULT_BUDGET).unwrap().answer);
    }

    #[test]
    fn buchi_examples() {
        let home: EnergyAutomaton = Automaton::new(&["s"], &["s"], &[], vec![("s", "s", shift(0))]).unwrap();
        assert_eq!(home.buchi_value(), Threshold::Never);
        assert!(!home.buchi(&Ext::Top).answer);
        let id = self_loop(shift(0));
        assert_eq!(id.buchi_value(), Threshold::from(q(0, 1), true));
        assert!(id.buchi(&fin(0, 1)).answer);
        assert_eq!(pump("s0").buchi_value(), Threshold::from(q(0, 1), true));
        let dec = self_loop(shift(-1));
        assert!(!dec.buchi(&fin(100, 1)).answer);
        assert!(!dec.buchi(&Ext::Top).answer);
        assert!(!dec.oracle_buchi(&Ext::Top, DEFAULT_BUDGET).unwrap().answer);
    }

    #[test]
    fn oracles_agree_on_examples() {
        let samples = [Ext::Bottom, fin(0, 1), fin(1, 2), fin(1, 1), fin(100, 1), Ext::Top];
        for a in [pump("s0"), pump("s1"), gate(), self_loop(shift(0)), self_loop(shift(-1)), self_loop(shift(1))] {
            for x in &samples {
                check_oracles(&a, x);
            }
        }
    }

    #[test]
    fn lasso_witness_replays() {
        let r = self_loop(shift(0)).oracle_buchi(&fin(3, 1), DEFAULT_BUDGET).unwrap();
        assert_eq!(
            r.witness,
            Some(RunWitness::Lasso { prefix: vec!["s".into()], cycle: vec!["s".into()] })
        );
        let all_dead: EnergyAutomaton =
            Automaton::new(&["s"], &["s"], &["s"], vec![("s", "s", EnergyFunction::bottom())]).unwrap();
        assert!(!all_dead.oracle_buchi(&Ext::Top, DEFAULT_BUDGET).unwrap().answer);
    }

    #[test]
    fn path_supremum_matches_star() {
        let a = pump("s1");
        let star = a.transitions().star(&EnergyAlgebra::new()).unwrap();
        for x in [fin(0, 1), fin(5, 2)] {
            let sup = path_supremum(a.transitions(), 1, &x, DEFAULT_BUDGET).unwrap();
            assert_eq!(sup, vec![star.get(1, 0).eval(&x), star.get(1, 1).eval(&x)]);
        }
    }

    #[test]
    fn json_round_trip_and_errors() {
        let text = r#"{"states":["s0","s1"],"initial":["s0"],"accepting":["s1"],
            "edges":[{"from":"s0","to":"s1","fn":{"bottom":{"boundary":"0"},"pieces":[{"start":"0","intercept":"2","slope":"1"}],"top":null}},
                     {"from":"s0","to":"s1","fn":{"bottom":{"boundary":"0"},"pieces":[{"start":"0","intercept":"1","slope":"2"}],"top":null}}]}"#;
        let a: EnergyAutomaton = serde_json::from_str(text).unwrap();
        assert_eq!(*a.edge(0, 1), shift(2).join(&EnergyFunction::new(
            Some(Cut::new(q(0, 1), false)),
            vec![Piece::new(q(0, 1), q(1, 1), q(2, 1))],
            None
        ).unwrap()));
        let back: EnergyAutomaton = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        assert_eq!(back, a);
        let unknown = r#"{"states":["s0"],"initial":["x"],"accepting":[],"edges":[]}"#;
        let err = serde_json::from_str::<EnergyAutomaton>(unknown).unwrap_err();
        assert!(err.to_string().contains("unknown state `x`"));
        let weighted = r#"{"states":["s0"],"initial":[{"state":"s0"}],"accepting":[],"edges":[]}"#;
        assert!(serde_json::from_str::<EnergyAutomaton>(weighted).is_err());
    }
}
