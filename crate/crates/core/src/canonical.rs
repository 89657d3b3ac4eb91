use itertools::Itertools;

use crate::alphabet::{Alphabet, Symbol};
use crate::automaton::{Automaton, Cdfa};
use crate::minimize::bfs_relabel;

/// An isomorphism-invariant encoding of a reachable complete DFA.
///
/// Layout: `[states, symbols, final flags..., row-major transition table...]`
/// after BFS relabeling from the initial state.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm(Vec<u32>);

impl CanonicalForm {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn num_states(&self) -> usize {
        self.0[0] as usize
    }

    /// Rebuilds the BFS-labelled automaton this form encodes.
    pub fn to_cdfa(&self, alphabet: Alphabet) -> Cdfa {
        let n = self.0[0] as usize;
        let k = self.0[1] as usize;
        assert_eq!(k, alphabet.len(), "alphabet size does not match encoding");
        let finals = self.0[2..2 + n].iter().map(|&f| f == 1).collect();
        let delta = self.0[2 + n..].iter().map(|&t| t as usize).collect();
        Cdfa::from_table(alphabet, 0, delta, finals).expect("encoding is well-formed")
    }
}

fn encode(d: &Cdfa) -> CanonicalForm {
    let r = bfs_relabel(d);
    let n = r.num_states();
    let mut code = Vec::with_capacity(2 + n + r.table().len());
    code.push(n as u32);
    code.push(r.alphabet().len() as u32);
    code.extend(r.finals().iter().map(|&f| f as u32));
    code.extend(r.table().iter().map(|&t| t as u32));
    CanonicalForm(code)
}

/// Canonical encoding of the reachable part of `d`. With `permute_alphabet`
/// the encoding is minimized over all renamings of the symbols, so DFAs that
/// differ only by a symbol permutation share a form.
pub fn canonical_form(d: &Cdfa, permute_alphabet: bool) -> CanonicalForm {
    canonical_form_with_permutation(d, permute_alphabet).0
}

/// Like [`canonical_form`], also returning the symbol permutation that
/// attains it (see [`Cdfa::permute_symbols`]).
pub fn canonical_form_with_permutation(
    d: &Cdfa,
    permute_alphabet: bool,
) -> (CanonicalForm, Vec<Symbol>) {
    let k = d.alphabet().len();
    let identity: Vec<Symbol> = (0..k).collect();
    if !permute_alphabet || k == 1 {
        return (encode(d), identity);
    }
    identity
        .iter()
        .copied()
        .permutations(k)
        .map(|perm| (encode(&d.permute_symbols(&perm)), perm))
        .min()
        .expect("at least one permutation")
}
