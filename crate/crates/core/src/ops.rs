//! Constructions for complement, intersection, union, concatenation, star
//! and reversal, in the incomplete-deterministic and the nondeterministic
//! model.
//!
//! Every construction reports how many states it built next to the
//! worst-case bound for its input sizes. The constructions keep the input
//! alphabet verbatim, including symbols that never occur on a transition.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::automaton::{Automaton, Cdfa, Idfa, Nfa, StateId};
use crate::determinize::{complete, determinize};
use crate::error::{Error, Result};
use crate::stateset::StateSet;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Operation {
    Complement,
    Intersection,
    Union,
    Concatenation,
    Star,
    Reversal,
}

impl Operation {
    pub const ALL: [Operation; 6] = [
        Operation::Complement,
        Operation::Intersection,
        Operation::Union,
        Operation::Concatenation,
        Operation::Star,
        Operation::Reversal,
    ];

    pub fn is_binary(self) -> bool {
        matches!(
            self,
            Operation::Intersection | Operation::Union | Operation::Concatenation
        )
    }

    /// Worst-case incomplete state complexity on prefix-closed operands with
    /// incomplete complexities `m` and `n` (unary operations ignore `m`).
    pub fn isc_bound(self, m: usize, n: usize) -> usize {
        let half = 1usize << n.saturating_sub(1);
        match self {
            Operation::Complement => n + 1,
            Operation::Intersection => m * n,
            Operation::Union => m * n + m + n,
            Operation::Concatenation => m * half + (1 << n) - 1,
            Operation::Star => half,
            Operation::Reversal => (1 << n) - 1,
        }
    }

    /// Worst-case nondeterministic state complexity (single initial state).
    pub fn nsc_bound(self, m: usize, n: usize) -> usize {
        match self {
            Operation::Complement => 1 << n,
            Operation::Intersection => m * n,
            Operation::Union => m + n + 1,
            Operation::Concatenation => m + n,
            Operation::Star => n,
            Operation::Reversal => n + 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Operation::Complement => "complement",
            Operation::Intersection => "intersection",
            Operation::Union => "union",
            Operation::Concatenation => "concatenation",
            Operation::Star => "star",
            Operation::Reversal => "reversal",
        }
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Operation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "complement" => Operation::Complement,
            "intersection" | "intersect" => Operation::Intersection,
            "union" => Operation::Union,
            "concatenation" | "concat" => Operation::Concatenation,
            "star" => Operation::Star,
            "reversal" | "reverse" => Operation::Reversal,
            other => {
                return Err(Error::InvalidParameters(format!("unknown operation {other:?}")))
            }
        })
    }
}

/// The output of a construction together with its size accounting.
#[derive(Clone, Debug)]
pub struct OpResult<A> {
    pub automaton: A,
    /// States the construction produced (before any minimization).
    pub construction_states: usize,
    /// The matching worst-case bound evaluated at the input sizes.
    pub upper_bound: usize,
}

impl<A: Automaton> OpResult<A> {
    fn new(automaton: A, upper_bound: usize) -> Self {
        OpResult {
            construction_states: automaton.num_states(),
            automaton,
            upper_bound,
        }
    }

    pub fn within_bound(&self) -> bool {
        self.construction_states <= self.upper_bound
    }
}

/// Completes `d` and exchanges final and non-final states.
pub fn complement_idfa(d: &Idfa) -> OpResult<Cdfa> {
    let bound = Operation::Complement.isc_bound(0, d.num_states());
    OpResult::new(complete(d).flip_finals(), bound)
}

/// Subset construction, completion, then exchange of final states.
pub fn complement_nfa(nfa: &Nfa) -> OpResult<Cdfa> {
    let bound = Operation::Complement.nsc_bound(0, nfa.num_states());
    OpResult::new(complete(&determinize(nfa)).flip_finals(), bound)
}

/// Reachable part of a product automaton, explored breadth-first.
struct Product {
    pairs: Vec<(StateId, StateId)>,
    // (from, symbol, to) over pair indices
    edges: Vec<(usize, usize, usize)>,
    initial: Vec<usize>,
}

fn explore_product(
    starts: impl IntoIterator<Item = (StateId, StateId)>,
    k: usize,
    mut successors: impl FnMut((StateId, StateId), usize) -> Vec<(StateId, StateId)>,
) -> Product {
    let mut index: HashMap<(StateId, StateId), usize> = HashMap::new();
    let mut pairs = Vec::new();
    let mut queue = VecDeque::new();
    let mut initial = Vec::new();
    for s in starts {
        let id = *index.entry(s).or_insert_with(|| {
            pairs.push(s);
            queue.push_back(pairs.len() - 1);
            pairs.len() - 1
        });
        initial.push(id);
    }
    let mut edges = Vec::new();
    while let Some(id) = queue.pop_front() {
        let pair = pairs[id];
        for a in 0..k {
            for next in successors(pair, a) {
                let t = *index.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    queue.push_back(pairs.len() - 1);
                    pairs.len() - 1
                });
                edges.push((id, a, t));
            }
        }
    }
    Product {
        pairs,
        edges,
        initial,
    }
}

/// Incomplete product: a pair moves only when both components move.
pub fn intersect_idfa(a: &Idfa, b: &Idfa) -> Result<OpResult<Idfa>> {
    a.alphabet().ensure_same(b.alphabet())?;
    let bound = Operation::Intersection.isc_bound(a.num_states(), b.num_states());
    let alphabet = a.alphabet().clone();
    let (Some(sa), Some(sb)) = (a.initial(), b.initial()) else {
        return Ok(OpResult::new(Idfa::empty(alphabet), bound));
    };
    let product = explore_product([(sa, sb)], alphabet.len(), |(p, q), sym| {
        match (a.next(p, sym), b.next(q, sym)) {
            (Some(p2), Some(q2)) => vec![(p2, q2)],
            _ => vec![],
        }
    });
    let mut d = Idfa::new(alphabet, product.pairs.len());
    for (id, &(p, q)) in product.pairs.iter().enumerate() {
        d.set_final(id, a.is_final(p) && b.is_final(q));
    }
    for (from, sym, to) in product.edges {
        d.set_transition(from, sym, Some(to));
    }
    Ok(OpResult::new(d, bound))
}

/// Product over the completed operands with the pair of dead states
/// removed; transitions into that pair stay undefined.
pub fn union_idfa(a: &Idfa, b: &Idfa) -> Result<OpResult<Idfa>> {
    a.alphabet().ensure_same(b.alphabet())?;
    let bound = Operation::Union.isc_bound(a.num_states(), b.num_states());
    let ca = complete(a);
    let cb = complete(b);
    let dead_pair = |(p, q): (StateId, StateId)| ca.is_dead(p) && cb.is_dead(q);
    let alphabet = a.alphabet().clone();
    let start = (ca.initial(), cb.initial());
    if dead_pair(start) {
        return Ok(OpResult::new(Idfa::empty(alphabet), bound));
    }
    let product = explore_product([start], alphabet.len(), |(p, q), sym| {
        let next = (ca.next(p, sym), cb.next(q, sym));
        if dead_pair(next) {
            vec![]
        } else {
            vec![next]
        }
    });
    let mut d = Idfa::new(alphabet, product.pairs.len());
    for (id, &(p, q)) in product.pairs.iter().enumerate() {
        d.set_final(id, ca.is_final(p) || cb.is_final(q));
    }
    for (from, sym, to) in product.edges {
        d.set_transition(from, sym, Some(to));
    }
    Ok(OpResult::new(d, bound))
}

/// Reachable product NFA for the intersection.
pub fn intersect_nfa(a: &Nfa, b: &Nfa) -> Result<OpResult<Nfa>> {
    a.alphabet().ensure_same(b.alphabet())?;
    let bound = Operation::Intersection.nsc_bound(a.num_states(), b.num_states());
    let starts: Vec<_> = a
        .initial()
        .iter()
        .flat_map(|p| b.initial().iter().map(move |q| (p, q)))
        .collect();
    let product = explore_product(starts, a.alphabet().len(), |(p, q), sym| {
        let bs = b.successors(q, sym);
        a.successors(p, sym)
            .iter()
            .flat_map(|p2| bs.iter().map(move |q2| (p2, q2)))
            .collect()
    });
    let mut n = Nfa::new(a.alphabet().clone(), product.pairs.len());
    for &i in &product.initial {
        n.add_initial(i);
    }
    for (id, &(p, q)) in product.pairs.iter().enumerate() {
        n.set_final(id, a.is_final(p) && b.is_final(q));
    }
    for (from, sym, to) in product.edges {
        n.add_transition(from, sym, to);
    }
    Ok(OpResult::new(n, bound))
}

/// Adds a fresh initial state 0 that copies the outgoing transitions of all
/// current initial states; the old states shift up by one. The fresh state is
/// final iff some old initial state was.
pub fn with_single_initial(nfa: &Nfa) -> Nfa {
    let n = nfa.num_states();
    let mut out = Nfa::new(nfa.alphabet().clone(), n + 1);
    nfa.embed_into(&mut out, 1);
    out.add_initial(0);
    out.set_final(0, nfa.initial().intersects(nfa.finals()));
    for s in nfa.initial().iter() {
        for a in 0..nfa.alphabet().len() {
            for t in nfa.successors(s, a).iter() {
                out.add_transition(0, a, t + 1);
            }
        }
    }
    out
}

/// Disjoint union plus a fresh initial state duplicating the outgoing
/// transitions of both old initial states: `m + n + 1` states, state 0 is
/// initial, `a` occupies `1..=m` and `b` occupies `m+1..=m+n`.
pub fn union_nfa(a: &Nfa, b: &Nfa) -> Result<OpResult<Nfa>> {
    a.alphabet().ensure_same(b.alphabet())?;
    if !a.is_single_initial() || !b.is_single_initial() {
        return Err(Error::Precondition(
            "union_nfa needs operands with a single initial state".into(),
        ));
    }
    let bound = Operation::Union.nsc_bound(a.num_states(), b.num_states());
    let m = a.num_states();
    let mut both = Nfa::new(a.alphabet().clone(), m + b.num_states());
    a.embed_into(&mut both, 0);
    b.embed_into(&mut both, m);
    both.add_initial(a.initial().first().expect("single initial"));
    both.add_initial(m + b.initial().first().expect("single initial"));
    Ok(OpResult::new(with_single_initial(&both), bound))
}

fn require_all_final(nfa: &Nfa, what: &str) -> Result<()> {
    if nfa.all_final() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} must have all states final")))
    }
}

/// Concatenation of an all-final `a` with a single-initial `b`.
///
/// States of `a` keep their numbers, states of `b` follow at offset
/// `a.num_states()`. Every defined transition of `a` on a symbol also leads
/// to the initial state of `b`. Initial states are those of `a` plus the
/// initial state of `b`, final states are those of `b`: the result has two
/// initial states in general.
pub fn concat_nfa(a: &Nfa, b: &Nfa) -> Result<OpResult<Nfa>> {
    a.alphabet().ensure_same(b.alphabet())?;
    require_all_final(a, "the left operand of concatenation")?;
    if !b.is_single_initial() {
        return Err(Error::Precondition(
            "the right operand of concatenation needs a single initial state".into(),
        ));
    }
    let bound = Operation::Concatenation.nsc_bound(a.num_states(), b.num_states());
    let m = a.num_states();
    let sb = m + b.initial().first().expect("single initial");
    let mut out = Nfa::new(a.alphabet().clone(), m + b.num_states());
    a.embed_into(&mut out, 0);
    b.embed_into(&mut out, m);
    for q in 0..m {
        out.set_final(q, false);
        for sym in 0..a.alphabet().len() {
            if a.successors(q, sym).intersects(a.finals()) {
                out.add_transition(q, sym, sb);
            }
        }
    }
    for s in a.initial().iter() {
        out.add_initial(s);
    }
    if a.initial().intersects(a.finals()) {
        out.add_initial(sb);
    }
    Ok(OpResult::new(out, bound))
}

/// Single-initial variant of [`concat_nfa`] with the same `m + n` states:
/// the initial state of `b` is merged into the initial state of `a`, which
/// inherits its outgoing transitions and its finality.
pub fn concat_nfa_single_initial(a: &Nfa, b: &Nfa) -> Result<OpResult<Nfa>> {
    if !a.is_single_initial() {
        return Err(Error::Precondition(
            "the left operand of concatenation needs a single initial state".into(),
        ));
    }
    let multi = concat_nfa(a, b)?;
    let m = a.num_states();
    let sa = a.initial().first().expect("single initial");
    let sb = m + b.initial().first().expect("single initial");
    let src = &multi.automaton;
    let mut out = Nfa::new(src.alphabet().clone(), src.num_states());
    src.embed_into(&mut out, 0);
    out.add_initial(sa);
    if src.is_final(sb) {
        out.set_final(sa, true);
    }
    for sym in 0..src.alphabet().len() {
        for t in src.successors(sb, sym).iter() {
            out.add_transition(sa, sym, t);
        }
    }
    Ok(OpResult::new(out, multi.upper_bound))
}

/// Star of an all-final single-initial NFA without a new initial state:
/// every transition that can reach a final state also leads back to the
/// initial state.
pub fn star_nfa(a: &Nfa) -> Result<OpResult<Nfa>> {
    require_all_final(a, "the star operand")?;
    if !a.is_single_initial() {
        return Err(Error::Precondition(
            "the star operand needs a single initial state".into(),
        ));
    }
    let bound = Operation::Star.nsc_bound(0, a.num_states());
    let s = a.initial().first().expect("single initial");
    let mut out = a.clone();
    for q in 0..a.num_states() {
        for sym in 0..a.alphabet().len() {
            if a.successors(q, sym).intersects(a.finals()) {
                out.add_transition(q, sym, s);
            }
        }
    }
    Ok(OpResult::new(out, bound))
}

/// Reverses every transition and swaps the initial and final sets.
pub fn reverse_nfa(a: &Nfa) -> OpResult<Nfa> {
    let bound = Operation::Reversal.nsc_bound(0, a.num_states());
    let mut out = Nfa::new(a.alphabet().clone(), a.num_states());
    for (q, sym, t) in a.transitions() {
        out.add_transition(t, sym, q);
    }
    for q in a.finals().iter() {
        out.add_initial(q);
    }
    for q in a.initial().iter() {
        out.set_final(q, true);
    }
    OpResult::new(out, bound)
}

/// Checks the shape of the reachable subsets of a [`concat_nfa`] result:
/// at most one state of the left operand (`0..left_states`), and the initial
/// state of the right operand whenever a left state is present. Returns the
/// first offending subset.
pub fn check_concat_subsets(
    subsets: &[StateSet],
    left_states: usize,
    right_initial: StateId,
) -> std::result::Result<(), StateSet> {
    for s in subsets {
        let left = s.iter().take_while(|&q| q < left_states).count();
        if left > 1 || (left == 1 && !s.contains(right_initial)) {
            return Err(s.clone());
        }
    }
    Ok(())
}

/// Checks that every reachable subset of a [`star_nfa`] result contains the
/// initial state.
pub fn check_star_subsets(
    subsets: &[StateSet],
    initial: StateId,
) -> std::result::Result<(), StateSet> {
    match subsets.iter().find(|s| !s.contains(initial)) {
        Some(s) => Err(s.clone()),
        None => Ok(()),
    }
}
