//! Language-level queries: state complexities, equivalence and
//! prefix-closedness.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::Word;
use crate::automaton::{Automaton, Cdfa, Idfa, StateId};
use crate::determinize::{complete, determinize};
use crate::error::Result;
use crate::minimize::{minimize_cdfa, minimize_idfa};

/// Minimal incomplete DFA of the language of `a`.
pub fn minimal_idfa(a: &(impl Automaton + ?Sized)) -> Idfa {
    minimize_idfa(&determinize(&a.to_nfa()))
}

/// Minimal complete DFA of the language of `a`.
pub fn minimal_cdfa(a: &(impl Automaton + ?Sized)) -> Cdfa {
    minimize_cdfa(&complete(&determinize(&a.to_nfa())))
}

/// Incomplete state complexity; 0 for the empty language.
pub fn isc(a: &(impl Automaton + ?Sized)) -> usize {
    minimal_idfa(a).num_states()
}

/// State complexity (complete DFAs); 1 for the empty language.
pub fn sc(a: &(impl Automaton + ?Sized)) -> usize {
    minimal_cdfa(a).num_states()
}

/// A shortest word in exactly one of the two languages, or `None` when they
/// are equal. Errors if the alphabets differ.
pub fn distinguishing_word(a: &(impl Automaton + ?Sized), b: &(impl Automaton + ?Sized)) -> Result<Option<Word>> {
    a.alphabet().ensure_same(b.alphabet())?;
    let da = minimal_cdfa(a);
    let db = minimal_cdfa(b);
    let k = da.alphabet().len();
    let start = (da.initial(), db.initial());
    // BFS over the product, remembering the parent edge of every pair
    let mut parent: HashMap<(StateId, StateId), Option<((StateId, StateId), usize)>> =
        HashMap::from([(start, None)]);
    let mut queue = VecDeque::from([start]);
    while let Some(pair @ (p, q)) = queue.pop_front() {
        if da.is_final(p) != db.is_final(q) {
            let mut word = Vec::new();
            let mut cur = pair;
            while let Some(&Some((prev, sym))) = parent.get(&cur) {
                word.push(sym);
                cur = prev;
            }
            word.reverse();
            return Ok(Some(word));
        }
        for sym in 0..k {
            let next = (da.next(p, sym), db.next(q, sym));
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                e.insert(Some((pair, sym)));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

/// `L(a) = L(b)`, decided by emptiness of the symmetric difference of the
/// completed minimal DFAs.
pub fn equivalent(a: &(impl Automaton + ?Sized), b: &(impl Automaton + ?Sized)) -> Result<bool> {
    Ok(distinguishing_word(a, b)?.is_none())
}

/// A language is prefix-closed iff every state of its minimal incomplete DFA
/// is final.
pub fn is_prefix_closed(a: &(impl Automaton + ?Sized)) -> bool {
    minimal_idfa(a).all_final()
}
