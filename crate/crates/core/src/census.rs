//! Exhaustive census of minimal prefix-closed complete DFAs and the
//! distribution of the state complexity of their star.
//!
//! Candidates fix the dead state at index `n-1` and the initial state at 0
//! and range over all `n^{k(n-1)}` transition tables of the other states.
//! A table is kept only if breadth-first search from 0, skipping the dead
//! state, discovers the live states in index order; every isomorphism class
//! has exactly one such table. Survivors that are minimal are then
//! deduplicated by canonical form, optionally up to renaming of symbols.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::alphabet::Alphabet;
use crate::analysis::sc;
use crate::automaton::Cdfa;
use crate::canonical::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::ops::star_nfa;

const CHUNK: u64 = 1 << 14;

#[derive(Clone, Copy, Debug)]
pub struct CensusOptions {
    /// Alphabet size.
    pub k: usize,
    /// Identify automata that differ by a renaming of symbols.
    pub permute_alphabet: bool,
    /// Spread candidate iteration over the rayon thread pool.
    pub parallel: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            k: 2,
            permute_alphabet: true,
            parallel: true,
        }
    }
}

fn check_params(n: usize, k: usize) -> Result<u64> {
    if n < 2 || k < 1 {
        return Err(Error::InvalidParameters(format!(
            "census needs n >= 2 and k >= 1, got n={n}, k={k}"
        )));
    }
    (n as u64)
        .checked_pow((k * (n - 1)) as u32)
        .filter(|&total| total <= 1 << 40)
        .ok_or_else(|| Error::InvalidParameters(format!("census n={n}, k={k} is too large")))
}

/// Decodes candidate `index` into the live rows of a transition table.
fn decode(index: u64, n: usize, digits: &mut [u8]) {
    let mut rest = index;
    for d in digits.iter_mut() {
        *d = (rest % n as u64) as u8;
        rest /= n as u64;
    }
}

/// Advances the mixed-radix counter; the first digit varies fastest.
fn increment(n: usize, digits: &mut [u8]) {
    for d in digits.iter_mut() {
        *d += 1;
        if (*d as usize) < n {
            return;
        }
        *d = 0;
    }
}

/// True when breadth-first search from 0 over live states visits them in
/// index order, reaches all of them, and some transition enters the dead
/// state.
fn is_orderly(live: &[u8], n: usize, k: usize) -> bool {
    let dead = (n - 1) as u8;
    let mut next_label = 1u8;
    let mut head = 0u8;
    while head < next_label {
        for a in 0..k {
            let t = live[head as usize * k + a];
            if t == dead {
                continue;
            }
            if t == next_label {
                next_label += 1;
            } else if t > next_label {
                return false;
            }
        }
        head += 1;
    }
    next_label == dead && live.contains(&dead)
}

/// Moore refinement on the full table; minimal iff all `n` states end up in
/// distinct classes.
fn is_minimal(live: &[u8], n: usize, k: usize) -> bool {
    let dead = n - 1;
    let target = |q: usize, a: usize| if q == dead { dead } else { live[q * k + a] as usize };
    let mut class: Vec<usize> = (0..n).map(|q| usize::from(q == dead)).collect();
    let mut count = 2;
    loop {
        let mut sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|q| (class[q], (0..k).map(|a| class[target(q, a)]).collect()))
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() == n {
            return true;
        }
        if sorted.len() == count {
            return false;
        }
        count = sorted.len();
        for (q, sig) in sigs.drain(..).enumerate() {
            class[q] = sorted.binary_search(&sig).expect("present");
        }
    }
}

fn to_cdfa(live: &[u8], n: usize, alphabet: &Alphabet) -> Cdfa {
    let k = alphabet.len();
    let mut table: Vec<usize> = live.iter().map(|&t| t as usize).collect();
    table.extend(std::iter::repeat_n(n - 1, k));
    let finals = (0..n).map(|q| q != n - 1).collect();
    Cdfa::from_table(alphabet.clone(), 0, table, finals).expect("well-formed table")
}

fn scan_chunk(
    chunk: u64,
    total: u64,
    n: usize,
    opts: &CensusOptions,
    alphabet: &Alphabet,
) -> BTreeSet<CanonicalForm> {
    let k = opts.k;
    let start = chunk * CHUNK;
    let end = (start + CHUNK).min(total);
    let mut digits = vec![0u8; k * (n - 1)];
    decode(start, n, &mut digits);
    let mut found = BTreeSet::new();
    for _ in start..end {
        if is_orderly(&digits, n, k) && is_minimal(&digits, n, k) {
            found.insert(canonical_form(&to_cdfa(&digits, n, alphabet), opts.permute_alphabet));
        }
        increment(n, &mut digits);
    }
    found
}

/// One representative per class of minimal `n`-state complete DFAs over `k`
/// symbols with a single dead state and all other states final, sorted by
/// canonical form. Each representative is in canonical labeling.
pub fn enumerate_class(n: usize, opts: &CensusOptions) -> Result<Vec<Cdfa>> {
    let total = check_params(n, opts.k)?;
    let alphabet = Alphabet::letters(opts.k);
    let chunks = total.div_ceil(CHUNK);
    let forms: BTreeSet<CanonicalForm> = if opts.parallel {
        (0..chunks)
            .into_par_iter()
            .map(|c| scan_chunk(c, total, n, opts, &alphabet))
            .reduce(BTreeSet::new, |mut a, mut b| {
                a.append(&mut b);
                a
            })
    } else {
        (0..chunks)
            .flat_map(|c| scan_chunk(c, total, n, opts, &alphabet))
            .collect()
    };
    Ok(forms.into_iter().map(|f| f.to_cdfa(alphabet.clone())).collect())
}

/// `sc(L*)` computed from the all-final trim of `d`.
pub fn star_sc(d: &Cdfa) -> usize {
    let nfa = crate::automaton::Automaton::to_nfa(&d.without_dead_states());
    sc(&star_nfa(&nfa).expect("trim of a prefix-closed DFA is all-final").automaton)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CensusTable {
    pub n: usize,
    pub k: usize,
    pub frequencies: BTreeMap<usize, usize>,
    pub total: usize,
    pub average: Ratio<u64>,
}

impl CensusTable {
    fn from_values(n: usize, k: usize, values: impl IntoIterator<Item = usize>) -> CensusTable {
        let mut frequencies = BTreeMap::new();
        for v in values {
            *frequencies.entry(v).or_insert(0) += 1;
        }
        let total: usize = frequencies.values().sum();
        let weighted: usize = frequencies.iter().map(|(v, c)| v * c).sum();
        CensusTable {
            n,
            k,
            frequencies,
            total,
            average: Ratio::new(weighted as u64, total.max(1) as u64),
        }
    }

    pub fn count(&self, value: usize) -> usize {
        self.frequencies.get(&value).copied().unwrap_or(0)
    }

    pub fn max_value(&self) -> usize {
        self.frequencies.keys().next_back().copied().unwrap_or(0)
    }

    /// Counts for `1..=max_value()`, with zeros for absent values.
    pub fn dense(&self) -> Vec<(usize, usize)> {
        (1..=self.max_value()).map(|v| (v, self.count(v))).collect()
    }

    /// The average cut off after three decimals.
    pub fn average_truncated(&self) -> String {
        let thousandths = *self.average.numer() * 1000 / *self.average.denom();
        format!("{}.{:03}", thousandths / 1000, thousandths % 1000)
    }

    /// The average rounded half up to three decimals.
    pub fn average_rounded(&self) -> String {
        let (p, q) = (*self.average.numer(), *self.average.denom());
        let thousandths = (p * 2000 + q) / (2 * q);
        format!("{}.{:03}", thousandths / 1000, thousandths % 1000)
    }
}

impl fmt::Display for CensusTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={} k={} total={}", self.n, self.k, self.total)?;
        for (v, c) in self.dense() {
            writeln!(f, "  sc(L*)={v}: {c}")?;
        }
        write!(
            f,
            "average {} = {}",
            self.average,
            self.average_truncated()
        )
    }
}

/// Tabulates `sc(L*)` over [`enumerate_class`].
pub fn star_census(n: usize, opts: &CensusOptions) -> Result<CensusTable> {
    let class = enumerate_class(n, opts)?;
    let values: Vec<usize> = if opts.parallel {
        class.par_iter().map(star_sc).collect()
    } else {
        class.iter().map(star_sc).collect()
    };
    Ok(CensusTable::from_values(n, opts.k, values))
}

/// The binary languages with `sc(L) = n` whose star has state complexity 2.
pub fn prop3_check(n: usize) -> Result<Vec<Cdfa>> {
    if n < 3 {
        return Err(Error::InvalidParameters(format!("prop3_check needs n >= 3, got {n}")));
    }
    let class = enumerate_class(n, &CensusOptions::default())?;
    Ok(class.into_par_iter().filter(|d| star_sc(d) == 2).collect())
}
