//! Nondeterministic, incomplete deterministic and complete deterministic
//! automata over a finite [`Alphabet`].
//!
//! All three models share the [`Automaton`] trait. [`Nfa`] is the universal
//! exchange format: every construction can consume it, and the deterministic
//! models convert to it losslessly.

use std::collections::VecDeque;

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::stateset::StateSet;

/// Index of a state within one automaton.
pub type StateId = usize;

pub trait Automaton {
    fn alphabet(&self) -> &Alphabet;

    fn num_states(&self) -> usize;

    fn to_nfa(&self) -> Nfa;

    /// Membership without validating symbol indices.
    fn accepts_unchecked(&self, word: &[Symbol]) -> bool;

    fn accepts(&self, word: &[Symbol]) -> Result<bool> {
        self.alphabet().check_word(word)?;
        Ok(self.accepts_unchecked(word))
    }

    /// Membership of a spelled word (`-` is the empty word).
    fn accepts_str(&self, text: &str) -> Result<bool> {
        let word = self.alphabet().word(text)?;
        Ok(self.accepts_unchecked(&word))
    }
}

/// A nondeterministic finite automaton with a set of initial states and no
/// ε-moves.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Nfa {
    alphabet: Alphabet,
    num_states: usize,
    // indexed by `state * k + symbol`
    delta: Vec<StateSet>,
    initial: StateSet,
    finals: StateSet,
}

impl Nfa {
    /// An automaton with `num_states` states and no transitions, initial or
    /// final states.
    pub fn new(alphabet: Alphabet, num_states: usize) -> Self {
        let k = alphabet.len();
        Nfa {
            delta: vec![StateSet::empty(num_states); num_states * k],
            initial: StateSet::empty(num_states),
            finals: StateSet::empty(num_states),
            alphabet,
            num_states,
        }
    }

    pub fn add_transition(&mut self, from: StateId, sym: Symbol, to: StateId) {
        assert!(from < self.num_states && to < self.num_states && sym < self.alphabet.len());
        let k = self.alphabet.len();
        self.delta[from * k + sym].insert(to);
    }

    pub fn add_initial(&mut self, q: StateId) {
        self.initial.insert(q);
    }

    pub fn set_final(&mut self, q: StateId, is_final: bool) {
        if is_final {
            self.finals.insert(q);
        } else {
            self.finals.remove(q);
        }
    }

    pub fn set_all_final(&mut self) {
        self.finals = StateSet::full(self.num_states);
    }

    pub fn successors(&self, q: StateId, sym: Symbol) -> &StateSet {
        &self.delta[q * self.alphabet.len() + sym]
    }

    pub fn initial(&self) -> &StateSet {
        &self.initial
    }

    pub fn finals(&self) -> &StateSet {
        &self.finals
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals.contains(q)
    }

    pub fn is_single_initial(&self) -> bool {
        self.initial.len() == 1
    }

    /// True when every state is final, the syntactic form of a prefix-closed
    /// NFA.
    pub fn all_final(&self) -> bool {
        self.finals.len() == self.num_states
    }

    /// `δ(set, sym)`.
    pub fn step(&self, set: &StateSet, sym: Symbol) -> StateSet {
        let mut next = StateSet::empty(self.num_states);
        for q in set.iter() {
            next.union_with(self.successors(q, sym));
        }
        next
    }

    /// `δ(set, word)`.
    pub fn run_from(&self, set: &StateSet, word: &[Symbol]) -> StateSet {
        let mut cur = set.clone();
        for &a in word {
            if cur.is_empty() {
                break;
            }
            cur = self.step(&cur, a);
        }
        cur
    }

    /// All transitions as `(from, symbol, to)` in lexicographic order.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Symbol, StateId)> + '_ {
        let k = self.alphabet.len();
        (0..self.num_states).flat_map(move |q| {
            (0..k).flat_map(move |a| self.successors(q, a).iter().map(move |t| (q, a, t)))
        })
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().map(StateSet::len).sum()
    }

    /// True when there is one initial state and at most one successor per
    /// `(state, symbol)`.
    pub fn is_deterministic(&self) -> bool {
        self.is_single_initial() && self.delta.iter().all(|s| s.len() <= 1)
    }

    /// States reachable from the initial set.
    pub fn reachable(&self) -> StateSet {
        let mut seen = self.initial.clone();
        let mut queue: VecDeque<StateId> = self.initial.iter().collect();
        while let Some(q) = queue.pop_front() {
            for a in 0..self.alphabet.len() {
                for t in self.successors(q, a).iter() {
                    if !seen.contains(t) {
                        seen.insert(t);
                        queue.push_back(t);
                    }
                }
            }
        }
        seen
    }

    /// Copies transitions and final states into `target`, shifting state ids
    /// by `offset`. Initial states are not copied.
    pub(crate) fn embed_into(&self, target: &mut Nfa, offset: StateId) {
        for (q, a, t) in self.transitions() {
            target.add_transition(q + offset, a, t + offset);
        }
        for q in self.finals.iter() {
            target.set_final(q + offset, true);
        }
    }

    /// Same automaton over a larger alphabet whose prefix is this alphabet;
    /// the new symbols have no transitions.
    pub fn extend_alphabet(&self, alphabet: &Alphabet) -> Result<Nfa> {
        let old = self.alphabet.symbols();
        if alphabet.symbols().get(..old.len()) != Some(old) {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: alphabet.to_string(),
            });
        }
        let mut out = Nfa::new(alphabet.clone(), self.num_states);
        self.embed_into(&mut out, 0);
        out.initial = self.initial.clone();
        Ok(out)
    }
}

impl Automaton for Nfa {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn num_states(&self) -> usize {
        self.num_states
    }

    fn to_nfa(&self) -> Nfa {
        self.clone()
    }

    fn accepts_unchecked(&self, word: &[Symbol]) -> bool {
        self.run_from(&self.initial, word).intersects(&self.finals)
    }
}

/// An incomplete deterministic automaton: one initial state and a partial
/// transition function. An undefined transition rejects.
///
/// The automaton with zero states accepts the empty language and has no
/// initial state.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Idfa {
    alphabet: Alphabet,
    delta: Vec<Option<StateId>>,
    initial: Option<StateId>,
    finals: Vec<bool>,
}

impl Idfa {
    /// `num_states` non-final states with no transitions; state 0 is initial
    /// when there is at least one state.
    pub fn new(alphabet: Alphabet, num_states: usize) -> Self {
        Idfa {
            delta: vec![None; num_states * alphabet.len()],
            initial: (num_states > 0).then_some(0),
            finals: vec![false; num_states],
            alphabet,
        }
    }

    /// The zero-state automaton of the empty language.
    pub fn empty(alphabet: Alphabet) -> Self {
        Self::new(alphabet, 0)
    }

    pub fn set_transition(&mut self, from: StateId, sym: Symbol, to: Option<StateId>) {
        let n = self.num_states();
        assert!(from < n && sym < self.alphabet.len() && to.is_none_or(|t| t < n));
        let k = self.alphabet.len();
        self.delta[from * k + sym] = to;
    }

    pub fn set_initial(&mut self, q: StateId) {
        assert!(q < self.num_states());
        self.initial = Some(q);
    }

    pub fn set_final(&mut self, q: StateId, is_final: bool) {
        self.finals[q] = is_final;
    }

    pub fn set_all_final(&mut self) {
        self.finals.iter_mut().for_each(|f| *f = true);
    }

    pub fn next(&self, q: StateId, sym: Symbol) -> Option<StateId> {
        self.delta[q * self.alphabet.len() + sym]
    }

    pub fn initial(&self) -> Option<StateId> {
        self.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn all_final(&self) -> bool {
        self.finals.iter().all(|&f| f)
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(Option::is_some)
    }

    /// The state reached from `q` by `word`, if every step is defined.
    pub fn run_from(&self, q: StateId, word: &[Symbol]) -> Option<StateId> {
        word.iter().try_fold(q, |cur, &a| self.next(cur, a))
    }

    /// States reachable from the initial state.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let Some(s) = self.initial else { return seen };
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(q) = queue.pop_front() {
            for a in 0..self.alphabet.len() {
                if let Some(t) = self.next(q, a) {
                    if !seen[t] {
                        seen[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        seen
    }

    /// States from which some final state is reachable.
    pub fn productive(&self) -> Vec<bool> {
        let n = self.num_states();
        let k = self.alphabet.len();
        let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for q in 0..n {
            for a in 0..k {
                if let Some(t) = self.next(q, a) {
                    preds[t].push(q);
                }
            }
        }
        let mut good = self.finals.clone();
        let mut queue: VecDeque<StateId> = (0..n).filter(|&q| good[q]).collect();
        while let Some(q) = queue.pop_front() {
            for &p in &preds[q] {
                if !good[p] {
                    good[p] = true;
                    queue.push_back(p);
                }
            }
        }
        good
    }

    /// Converts a deterministic NFA.
    pub fn from_nfa(nfa: &Nfa) -> Result<Idfa> {
        if nfa.initial().len() > 1 {
            return Err(Error::Precondition("NFA has several initial states".into()));
        }
        let n = nfa.num_states();
        let mut d = Idfa::new(nfa.alphabet().clone(), n);
        d.initial = nfa.initial().first();
        if d.initial.is_none() {
            // no initial state: the empty language
            return Ok(Idfa::empty(nfa.alphabet().clone()));
        }
        for q in 0..n {
            d.finals[q] = nfa.is_final(q);
            for a in 0..nfa.alphabet().len() {
                let succ = nfa.successors(q, a);
                if succ.len() > 1 {
                    return Err(Error::Precondition(format!(
                        "state {q} has {} successors on {}",
                        succ.len(),
                        nfa.alphabet().char_of(a)
                    )));
                }
                d.set_transition(q, a, succ.first());
            }
        }
        Ok(d)
    }

    /// Keeps only the states selected by `keep`, renumbering them in
    /// increasing order; transitions into dropped states become undefined.
    pub fn restrict(&self, keep: &[bool]) -> Idfa {
        let mut map = vec![None; self.num_states()];
        let mut next_id = 0;
        for (q, &k) in keep.iter().enumerate() {
            if k {
                map[q] = Some(next_id);
                next_id += 1;
            }
        }
        let initial = self.initial.and_then(|s| map[s]);
        let Some(initial) = initial else {
            return Idfa::empty(self.alphabet.clone());
        };
        let mut out = Idfa::new(self.alphabet.clone(), next_id);
        out.initial = Some(initial);
        for q in 0..self.num_states() {
            let Some(nq) = map[q] else { continue };
            out.finals[nq] = self.finals[q];
            for a in 0..self.alphabet.len() {
                out.set_transition(nq, a, self.next(q, a).and_then(|t| map[t]));
            }
        }
        out
    }

    /// Removes unreachable and unproductive states.
    pub fn trim(&self) -> Idfa {
        let reach = self.reachable();
        let prod = self.productive();
        let keep: Vec<bool> = reach.iter().zip(&prod).map(|(&r, &p)| r && p).collect();
        self.restrict(&keep)
    }
}

impl Automaton for Idfa {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn num_states(&self) -> usize {
        self.finals.len()
    }

    fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.alphabet.clone(), self.num_states());
        if let Some(s) = self.initial {
            nfa.add_initial(s);
        }
        for q in 0..self.num_states() {
            nfa.set_final(q, self.finals[q]);
            for a in 0..self.alphabet.len() {
                if let Some(t) = self.next(q, a) {
                    nfa.add_transition(q, a, t);
                }
            }
        }
        nfa
    }

    fn accepts_unchecked(&self, word: &[Symbol]) -> bool {
        self.initial
            .and_then(|s| self.run_from(s, word))
            .is_some_and(|q| self.finals[q])
    }
}

/// A complete deterministic automaton.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cdfa {
    alphabet: Alphabet,
    delta: Vec<StateId>,
    initial: StateId,
    finals: Vec<bool>,
}

impl Cdfa {
    /// Builds from a row-major table (`delta[q * k + a]`).
    pub fn from_table(
        alphabet: Alphabet,
        initial: StateId,
        delta: Vec<StateId>,
        finals: Vec<bool>,
    ) -> Result<Cdfa> {
        let n = finals.len();
        if n == 0 {
            return Err(Error::InvalidAutomaton("a complete DFA needs a state".into()));
        }
        if delta.len() != n * alphabet.len() {
            return Err(Error::InvalidAutomaton(format!(
                "expected {} transitions, got {}",
                n * alphabet.len(),
                delta.len()
            )));
        }
        if initial >= n || delta.iter().any(|&t| t >= n) {
            return Err(Error::InvalidAutomaton("state index out of range".into()));
        }
        Ok(Cdfa {
            alphabet,
            delta,
            initial,
            finals,
        })
    }

    pub fn next(&self, q: StateId, sym: Symbol) -> StateId {
        self.delta[q * self.alphabet.len() + sym]
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> &[bool] {
        &self.finals
    }

    pub fn table(&self) -> &[StateId] {
        &self.delta
    }

    pub fn run_from(&self, q: StateId, word: &[Symbol]) -> StateId {
        word.iter().fold(q, |cur, &a| self.next(cur, a))
    }

    /// A non-final state that maps to itself on every symbol.
    pub fn is_dead(&self, q: StateId) -> bool {
        !self.finals[q] && (0..self.alphabet.len()).all(|a| self.next(q, a) == q)
    }

    pub fn dead_states(&self) -> Vec<StateId> {
        (0..self.num_states()).filter(|&q| self.is_dead(q)).collect()
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for a in 0..self.alphabet.len() {
                let t = self.next(q, a);
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// The same automaton viewed as an incomplete DFA (all transitions
    /// defined).
    pub fn to_idfa(&self) -> Idfa {
        let mut d = Idfa::new(self.alphabet.clone(), self.num_states());
        d.initial = Some(self.initial);
        for q in 0..self.num_states() {
            d.finals[q] = self.finals[q];
            for a in 0..self.alphabet.len() {
                d.set_transition(q, a, Some(self.next(q, a)));
            }
        }
        d
    }

    /// Drops dead states, leaving their incoming transitions undefined.
    pub fn without_dead_states(&self) -> Idfa {
        let keep: Vec<bool> = (0..self.num_states()).map(|q| !self.is_dead(q)).collect();
        self.to_idfa().restrict(&keep)
    }

    /// Copy with final and non-final states exchanged.
    pub fn flip_finals(&self) -> Cdfa {
        Cdfa {
            finals: self.finals.iter().map(|f| !f).collect(),
            ..self.clone()
        }
    }

    /// Renames symbols: symbol `a` of the result behaves like symbol
    /// `perm[a]` of `self`.
    pub fn permute_symbols(&self, perm: &[Symbol]) -> Cdfa {
        let k = self.alphabet.len();
        assert_eq!(perm.len(), k);
        let delta = (0..self.num_states())
            .flat_map(|q| perm.iter().map(move |&p| (q, p)))
            .map(|(q, p)| self.next(q, p))
            .collect();
        debug_assert_eq!(k * self.num_states(), self.delta.len());
        Cdfa {
            delta,
            ..self.clone()
        }
    }
}

impl Automaton for Cdfa {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn num_states(&self) -> usize {
        self.finals.len()
    }

    fn to_nfa(&self) -> Nfa {
        self.to_idfa().to_nfa()
    }

    fn accepts_unchecked(&self, word: &[Symbol]) -> bool {
        self.finals[self.run_from(self.initial, word)]
    }
}
