use super::{Family, Witness, WitnessSpec};
use crate::alphabet::{pow, Alphabet, Word};
use crate::automaton::{Cdfa, Idfa, Nfa};
use crate::fooling::FoolingCertificate;
use crate::format::AnyAutomaton;

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;

pub(super) fn build(spec: WitnessSpec) -> Witness {
    let WitnessSpec { family, m, n } = spec;
    let automata: Vec<AnyAutomaton> = match family {
        Family::ComplementUnary => vec![chain(Alphabet::letters(1), A, n).into()],
        Family::ComplementNsc => vec![complement_nfa(n).into()],
        Family::Intersection | Family::UnionIscProduct => {
            vec![counter(A, m).into(), counter(B, n).into()]
        }
        Family::ConcatIsc => vec![concat_left(m).into(), concat_right(n).into()],
        Family::StarIsc => vec![star_ladder(n).into()],
        Family::StarProp3 => vec![prop3(n).into()],
        Family::UnionNsc | Family::ConcatNsc | Family::ReversalIsc | Family::StarReversalNsc => {
            return seed(spec);
        }
    };
    Witness { spec, automata }
}

/// The analytically derived starting candidates of the reconstructed
/// families.
pub(super) fn seed(spec: WitnessSpec) -> Witness {
    let WitnessSpec { family, m, n } = spec;
    let automata: Vec<AnyAutomaton> = match family {
        Family::UnionNsc => vec![cycle(4, A, B, m).into(), cycle(4, C, D, n).into()],
        Family::ConcatNsc => vec![ladder_with_loops(m).into(), ladder_with_loops(n).into()],
        Family::ReversalIsc => vec![rotation(n).into()],
        Family::StarReversalNsc => vec![cycle(2, A, B, n).into()],
        _ => return build(spec),
    };
    Witness { spec, automata }
}

/// `0 -s-> 1 -s-> ... -s-> len-1`, all final.
fn chain(alphabet: Alphabet, sym: usize, len: usize) -> Idfa {
    let mut d = Idfa::new(alphabet, len);
    d.set_all_final();
    for i in 1..len {
        d.set_transition(i - 1, sym, Some(i));
    }
    d
}

/// Words over `{a, b}` with at most `size - 1` occurrences of `sym`.
fn counter(sym: usize, size: usize) -> Idfa {
    let mut d = chain(Alphabet::letters(2), sym, size);
    for q in 0..size {
        d.set_transition(q, 1 - sym, Some(q));
    }
    d
}

/// The ternary NFA whose complement needs `2^n` states: on `a` and `c`
/// state `i` moves to `i+1`, on `b` to `{0, i+1}`; the last state moves to
/// `0` on `c` only.
fn complement_nfa(n: usize) -> Nfa {
    let mut nfa = Nfa::new(Alphabet::letters(3), n);
    nfa.add_initial(0);
    nfa.set_all_final();
    for i in 0..n - 1 {
        nfa.add_transition(i, A, i + 1);
        nfa.add_transition(i, C, i + 1);
        nfa.add_transition(i, B, 0);
        nfa.add_transition(i, B, i + 1);
    }
    nfa.add_transition(n - 1, C, 0);
    nfa
}

/// States `q_0..q_{m-1}`: `a` loops on `q_0`, `b` resets to `q_0`, `c`
/// advances.
fn concat_left(m: usize) -> Idfa {
    let mut d = chain(Alphabet::letters(3), C, m);
    d.set_transition(0, A, Some(0));
    for q in 0..m {
        d.set_transition(q, B, Some(0));
    }
    d
}

/// States `0..n-1`: `a` rotates, `b` loops on 0 and advances `1..n-2`,
/// `c` loops everywhere.
fn concat_right(n: usize) -> Idfa {
    let mut d = Idfa::new(Alphabet::letters(3), n);
    d.set_all_final();
    for j in 0..n {
        d.set_transition(j, A, Some((j + 1) % n));
        d.set_transition(j, C, Some(j));
    }
    d.set_transition(0, B, Some(0));
    for j in 1..n - 1 {
        d.set_transition(j, B, Some(j + 1));
    }
    d
}

/// The binary star witness on states `1..=n` (stored as `0..n`): `a` swaps
/// `(3,4), (5,6), ...`, `b` cycles `(1,2,3)` and swaps `(4,5), (6,7), ...`;
/// the unpaired top state loops on the symbol that leaves it unpaired.
fn star_ladder(n: usize) -> Idfa {
    let mut d = Idfa::new(Alphabet::letters(2), n);
    d.set_all_final();
    let mut set = |from: usize, sym: usize, to: usize| d.set_transition(from - 1, sym, Some(to - 1));
    set(1, B, 2);
    set(2, B, 3);
    set(3, B, 1);
    for (sym, first) in [(A, 3), (B, 4)] {
        let mut i = first;
        while i < n {
            set(i, sym, i + 1);
            set(i + 1, sym, i);
            i += 2;
        }
        if i == n {
            set(n, sym, n);
        }
    }
    d
}

/// The complete DFA with a `b`-path through `n-1` final states and a dead
/// state `n-1`.
fn prop3(n: usize) -> Cdfa {
    let dead = n - 1;
    let mut table = vec![dead; 2 * n];
    for q in 0..n - 2 {
        table[2 * q + B] = q + 1;
    }
    let finals = (0..n).map(|q| q != dead).collect();
    Cdfa::from_table(Alphabet::letters(2), 0, table, finals).expect("valid table")
}

/// Prefixes of `(x^{len-1} y)^*` over `k` symbols.
fn cycle(k: usize, x: usize, y: usize, len: usize) -> Idfa {
    let mut d = chain(Alphabet::letters(k), x, len);
    d.set_transition(len - 1, y, Some(0));
    d
}

/// `b` loops on the initial state, `a` advances, `c` loops on the last state.
fn ladder_with_loops(len: usize) -> Idfa {
    let mut d = chain(Alphabet::letters(3), A, len);
    d.set_transition(0, B, Some(0));
    d.set_transition(len - 1, C, Some(len - 1));
    d
}

/// `a` rotates all states, `b` fixes every state but the last.
fn rotation(n: usize) -> Idfa {
    let mut d = Idfa::new(Alphabet::letters(2), n);
    d.set_all_final();
    for j in 0..n {
        d.set_transition(j, A, Some((j + 1) % n));
        if j + 1 < n {
            d.set_transition(j, B, Some(j));
        }
    }
    d
}

fn cat(parts: &[&[usize]]) -> Word {
    parts.concat()
}

/// A fooling set showing that automaton `index` of the witness is
/// nondeterministically minimal, for families whose inputs are measured by
/// `nsc`.
pub fn input_certificate(witness: &Witness, index: usize) -> Option<FoolingCertificate> {
    let spec = witness.spec;
    let size = if spec.family.is_binary() && index == 0 { spec.m } else { spec.n };
    let pairs = |x: usize, tail: &[usize]| {
        FoolingCertificate::plain(
            (0..size)
                .map(|i| (pow(x, i), cat(&[&pow(x, size - 1 - i), tail])))
                .collect(),
        )
    };
    Some(match (spec.family, index) {
        (Family::ComplementNsc | Family::ConcatNsc, _) => pairs(A, &[]),
        (Family::Intersection, 0) => pairs(A, &[]),
        (Family::Intersection, _) => pairs(B, &[]),
        (Family::UnionNsc, 0) => pairs(A, &[B]),
        (Family::UnionNsc, _) => pairs(C, &[D]),
        (Family::StarReversalNsc, _) => pairs(A, &[B]),
        _ => return None,
    })
}

#[cfg(test)]
pub(super) fn star_ladder_upper_ranges_open(n: usize) -> Idfa {
    // Ladder ranges with both endpoints capped at n-1.
    let mut d = Idfa::new(Alphabet::letters(2), n);
    d.set_all_final();
    let mut set = |from: usize, sym: usize, to: usize| d.set_transition(from - 1, sym, Some(to - 1));
    set(1, B, 2);
    set(2, B, 3);
    set(3, B, 1);
    for i in 3..n {
        set(i, A, if i % 2 == 1 { i + 1 } else { i - 1 });
    }
    for i in 4..n {
        set(i, B, if i % 2 == 1 { i - 1 } else { i + 1 });
    }
    if n % 2 == 1 {
        set(n, A, n);
    } else {
        set(n, B, n);
    }
    d
}
