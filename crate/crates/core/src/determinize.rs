use std::collections::{HashMap, VecDeque};

use crate::automaton::{Automaton, Cdfa, Idfa, Nfa, StateId};
use crate::stateset::StateSet;

/// The reachable part of the subset automaton, with the originating subset
/// of every state.
#[derive(Clone, Debug)]
pub struct SubsetAutomaton {
    pub dfa: Idfa,
    /// `subsets[q]` is the set of NFA states that DFA state `q` stands for.
    pub subsets: Vec<StateSet>,
}

impl SubsetAutomaton {
    pub fn state_of(&self, subset: &StateSet) -> Option<StateId> {
        self.subsets.iter().position(|s| s == subset)
    }
}

/// Subset construction restricted to reachable non-empty subsets.
///
/// Transitions into the empty set are left undefined, so the result is an
/// incomplete DFA. States are numbered in BFS order (symbols in alphabet
/// order) from the initial subset.
pub fn determinize_with_subsets(nfa: &Nfa) -> SubsetAutomaton {
    let alphabet = nfa.alphabet().clone();
    let k = alphabet.len();
    if nfa.initial().is_empty() {
        return SubsetAutomaton {
            dfa: Idfa::empty(alphabet),
            subsets: Vec::new(),
        };
    }
    let mut index: HashMap<StateSet, StateId> = HashMap::new();
    let mut subsets = vec![nfa.initial().clone()];
    index.insert(nfa.initial().clone(), 0);
    let mut edges: Vec<Option<StateId>> = Vec::new();
    let mut queue = VecDeque::from([0]);
    while let Some(id) = queue.pop_front() {
        debug_assert_eq!(edges.len(), id * k);
        for a in 0..k {
            let next = nfa.step(&subsets[id], a);
            if next.is_empty() {
                edges.push(None);
                continue;
            }
            let target = match index.get(&next) {
                Some(&t) => t,
                None => {
                    let t = subsets.len();
                    index.insert(next.clone(), t);
                    subsets.push(next);
                    queue.push_back(t);
                    t
                }
            };
            edges.push(Some(target));
        }
    }
    let mut dfa = Idfa::new(alphabet, subsets.len());
    for (q, subset) in subsets.iter().enumerate() {
        dfa.set_final(q, subset.intersects(nfa.finals()));
        for a in 0..k {
            dfa.set_transition(q, a, edges[q * k + a]);
        }
    }
    SubsetAutomaton { dfa, subsets }
}

pub fn determinize(nfa: &Nfa) -> Idfa {
    determinize_with_subsets(nfa).dfa
}

/// Adds a non-final dead state receiving every undefined transition. A
/// total input is returned unchanged; the zero-state automaton becomes the
/// one-state automaton of the empty language.
pub fn complete(d: &Idfa) -> Cdfa {
    let n = d.num_states();
    let k = d.alphabet().len();
    let needs_dead = n == 0 || !d.is_complete();
    let dead = n;
    let total = if needs_dead { n + 1 } else { n };
    let mut delta = Vec::with_capacity(total * k);
    let mut finals = Vec::with_capacity(total);
    for q in 0..n {
        finals.push(d.is_final(q));
        for a in 0..k {
            delta.push(d.next(q, a).unwrap_or(dead));
        }
    }
    if needs_dead {
        finals.push(false);
        delta.extend(std::iter::repeat_n(dead, k));
    }
    let initial = d.initial().unwrap_or(dead);
    Cdfa::from_table(d.alphabet().clone(), initial, delta, finals)
        .expect("completion yields a well-formed table")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    /// The ternary NFA whose complement needs 2^n states, with n = 2.
    fn fig1_n2() -> Nfa {
        let mut n = Nfa::new(Alphabet::letters(3), 2);
        n.add_initial(0);
        n.set_all_final();
        n.add_transition(0, 0, 1);
        n.add_transition(0, 1, 0);
        n.add_transition(0, 1, 1);
        n.add_transition(0, 2, 1);
        n.add_transition(1, 2, 0);
        n
    }

    #[test]
    fn subset_construction_fig1_n2() {
        let sa = determinize_with_subsets(&fig1_n2());
        assert_eq!(sa.dfa.num_states(), 3);
        let mut seen: Vec<String> = sa.subsets.iter().map(|s| s.to_string()).collect();
        seen.sort();
        assert_eq!(seen, vec!["{0,1}", "{0}", "{1}"]);
        // {2} (0-based {1}) reads a into the empty set: undefined
        let one = sa.state_of(&StateSet::singleton(2, 1)).unwrap();
        assert_eq!(sa.dfa.next(one, 0), None);
    }

    #[test]
    fn deterministic_input_is_fixed() {
        let mut d = Idfa::new(Alphabet::letters(2), 3);
        d.set_all_final();
        d.set_transition(0, 0, Some(1));
        d.set_transition(1, 1, Some(2));
        d.set_transition(2, 0, Some(0));
        let back = determinize(&d.to_nfa());
        assert_eq!(back, d);
    }

    #[test]
    fn completion_adds_one_dead_state() {
        let mut d = Idfa::new(Alphabet::letters(1), 3);
        d.set_all_final();
        d.set_transition(0, 0, Some(1));
        d.set_transition(1, 0, Some(2));
        let c = complete(&d);
        assert_eq!(c.num_states(), 4);
        assert_eq!(c.dead_states(), vec![3]);
        for w in ["-", "a", "aa"] {
            assert!(c.accepts_str(w).unwrap());
        }
        assert!(!c.accepts_str("aaa").unwrap());
    }

    #[test]
    fn completion_of_total_is_identity() {
        let mut d = Idfa::new(Alphabet::letters(1), 1);
        d.set_all_final();
        d.set_transition(0, 0, Some(0));
        let c = complete(&d);
        assert_eq!(c.num_states(), 1);
        assert_eq!(c.to_idfa(), d);
    }

    #[test]
    fn empty_language_completes_to_single_dead_state() {
        let c = complete(&Idfa::empty(Alphabet::letters(2)));
        assert_eq!(c.num_states(), 1);
        assert!(c.is_dead(0));
    }
}
