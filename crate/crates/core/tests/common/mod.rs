//! Generators and a brute-force string-enumeration oracle shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use pclang::{Alphabet, Automaton, Idfa, Nfa, Word};
use proptest::collection::vec;
use proptest::prelude::*;
use rand::Rng;

/// Every word of length at most `max_len` accepted by `a`.
pub fn language(a: &(impl Automaton + ?Sized), max_len: usize) -> BTreeSet<Word> {
    a.alphabet()
        .words_up_to(max_len)
        .filter(|w| a.accepts_unchecked(w))
        .collect()
}

pub fn all_words(alphabet: &Alphabet, max_len: usize) -> BTreeSet<Word> {
    alphabet.words_up_to(max_len).collect()
}

pub fn concat_words(k: &BTreeSet<Word>, l: &BTreeSet<Word>, max_len: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for x in k {
        for y in l {
            if x.len() + y.len() <= max_len {
                out.insert(x.iter().chain(y).copied().collect());
            }
        }
    }
    out
}

pub fn star_words(l: &BTreeSet<Word>, max_len: usize) -> BTreeSet<Word> {
    let mut out: BTreeSet<Word> = BTreeSet::from([Vec::new()]);
    loop {
        let next = concat_words(&out, l, max_len);
        let before = out.len();
        out.extend(next);
        if out.len() == before {
            return out;
        }
    }
}

pub fn reverse_words(l: &BTreeSet<Word>) -> BTreeSet<Word> {
    l.iter().map(|w| w.iter().rev().copied().collect()).collect()
}

pub fn build_nfa(
    n: usize,
    k: usize,
    edges: &[bool],
    initial: &[bool],
    finals: &[bool],
) -> Nfa {
    let mut a = Nfa::new(Alphabet::letters(k), n);
    for q in 0..n {
        if initial[q] {
            a.add_initial(q);
        }
        a.set_final(q, finals[q]);
        for sym in 0..k {
            for t in 0..n {
                if edges[(q * k + sym) * n + t] {
                    a.add_transition(q, sym, t);
                }
            }
        }
    }
    a
}

/// `targets[q * k + a] == n` means undefined.
pub fn build_idfa(n: usize, k: usize, targets: &[usize], finals: &[bool]) -> Idfa {
    let mut d = Idfa::new(Alphabet::letters(k), n);
    d.set_initial(0);
    for q in 0..n {
        d.set_final(q, finals[q]);
        for sym in 0..k {
            let t = targets[q * k + sym];
            d.set_transition(q, sym, (t < n).then_some(t));
        }
    }
    d
}

pub fn arb_nfa(max_states: usize, max_symbols: usize) -> impl Strategy<Value = Nfa> {
    (1..=max_states, 1..=max_symbols).prop_flat_map(|(n, k)| {
        (
            vec(prop::bool::weighted(0.3), n * k * n),
            vec(any::<bool>(), n),
            vec(any::<bool>(), n),
        )
            .prop_map(move |(edges, init, fin)| build_nfa(n, k, &edges, &init, &fin))
    })
}

pub fn arb_idfa(max_states: usize, max_symbols: usize) -> impl Strategy<Value = Idfa> {
    (1..=max_states, 1..=max_symbols).prop_flat_map(|(n, k)| {
        (vec(0..=n, n * k), vec(any::<bool>(), n))
            .prop_map(move |(t, fin)| build_idfa(n, k, &t, &fin))
    })
}

/// An all-final Idfa restricted to its reachable part.
pub fn arb_prefix_closed(max_states: usize, max_symbols: usize) -> impl Strategy<Value = Idfa> {
    arb_idfa(max_states, max_symbols).prop_map(|mut d| {
        d.set_all_final();
        d.trim()
    })
}

/// Two all-final Idfas over the same alphabet.
pub fn arb_prefix_closed_pair(
    max_states: usize,
    max_symbols: usize,
) -> impl Strategy<Value = (Idfa, Idfa)> {
    (1..=max_symbols, 1..=max_states, 1..=max_states).prop_flat_map(|(k, m, n)| {
        (vec(0..=m, m * k), vec(0..=n, n * k)).prop_map(move |(tk, tl)| {
            let left = build_idfa(m, k, &tk, &vec![true; m]).trim();
            let right = build_idfa(n, k, &tl, &vec![true; n]).trim();
            (left, right)
        })
    })
}

pub fn random_nfa(rng: &mut impl Rng, max_states: usize, max_symbols: usize) -> Nfa {
    let n = rng.gen_range(1..=max_states);
    let k = rng.gen_range(1..=max_symbols);
    let edges: Vec<bool> = (0..n * k * n).map(|_| rng.gen_bool(0.3)).collect();
    let initial: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.4)).collect();
    let finals: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    build_nfa(n, k, &edges, &initial, &finals)
}

pub fn random_idfa(rng: &mut impl Rng, n: usize, k: usize, all_final: bool) -> Idfa {
    let targets: Vec<usize> = (0..n * k).map(|_| rng.gen_range(0..=n)).collect();
    let finals: Vec<bool> = (0..n).map(|_| all_final || rng.gen_bool(0.5)).collect();
    build_idfa(n, k, &targets, &finals)
}
