//! Best-effort search for large fooling sets.
//!
//! Two pairs `(x, y)` and `(x', y')` can only coexist in a fooling set when
//! `x` and `x'` lead to different states of the minimal DFA, so a candidate
//! pair is a DFA state `p` (reached by its shortest access word) together
//! with the *profile* of `y`: the set of states from which `y` is accepted.
//! Smaller profiles conflict with fewer pairs, so only inclusion-minimal
//! profiles are kept, and the search becomes a clique search with at most
//! one vertex per state.

use std::collections::{HashMap, VecDeque};

use super::certificate::{FoolingCertificate, Pair};
use super::check::{check_extended_with, check_with, MembershipOracle};
use crate::alphabet::Word;
use crate::automaton::{Automaton, StateId};
use crate::error::{Error, Result};
use crate::stateset::StateSet;

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub certificate: FoolingCertificate,
    /// False when the node budget ran out before the search space was
    /// exhausted; the certificate is still valid, only possibly not the best.
    pub complete: bool,
    pub nodes: u64,
}

struct Space {
    oracle: MembershipOracle,
    access: Vec<Option<Word>>,
    profiles: Vec<(StateSet, Word)>,
    /// Per state, indices of inclusion-minimal profiles containing it.
    minimal: Vec<Vec<usize>>,
}

impl Space {
    fn new(lang: &(impl Automaton + ?Sized), max_len: usize) -> Space {
        let oracle = MembershipOracle::new(lang);
        let dfa = oracle.dfa();
        let n = dfa.num_states();
        let k = dfa.alphabet().len();

        let mut access: Vec<Option<Word>> = vec![None; n];
        access[dfa.initial()] = Some(Vec::new());
        let mut queue = VecDeque::from([dfa.initial()]);
        while let Some(q) = queue.pop_front() {
            for a in 0..k {
                let r = dfa.next(q, a);
                if access[r].is_none() {
                    let mut w = access[q].clone().unwrap_or_default();
                    w.push(a);
                    access[r] = Some(w);
                    queue.push_back(r);
                }
            }
        }

        let mut seen: HashMap<StateSet, usize> = HashMap::new();
        let mut profiles = Vec::new();
        for w in dfa.alphabet().words_up_to(max_len) {
            let profile = StateSet::from_iter_in(n, (0..n).filter(|&q| oracle.accepts_from(q, &w)));
            if profile.is_empty() || seen.contains_key(&profile) {
                continue;
            }
            seen.insert(profile.clone(), profiles.len());
            profiles.push((profile, w));
        }

        let minimal = (0..n)
            .map(|p| {
                let holding: Vec<usize> = (0..profiles.len())
                    .filter(|&i| access[p].is_some() && profiles[i].0.contains(p))
                    .collect();
                holding
                    .iter()
                    .copied()
                    .filter(|&i| {
                        !holding.iter().any(|&j| {
                            j != i
                                && profiles[j].0.is_subset(&profiles[i].0)
                                && profiles[j].0 != profiles[i].0
                        })
                    })
                    .collect()
            })
            .collect();

        Space {
            oracle,
            access,
            profiles,
            minimal,
        }
    }

    fn compatible(&self, (p, i): (StateId, usize), (q, j): (StateId, usize)) -> bool {
        p != q && !(self.profiles[j].0.contains(p) && self.profiles[i].0.contains(q))
    }

    fn pair(&self, (p, i): (StateId, usize)) -> Pair {
        (
            self.access[p].clone().unwrap_or_default(),
            self.profiles[i].1.clone(),
        )
    }
}

struct Clique<'a> {
    space: &'a Space,
    /// Candidate vertices grouped by state.
    groups: Vec<Vec<(StateId, usize)>>,
    limit: usize,
    budget: u64,
    nodes: u64,
    best: Vec<(StateId, usize)>,
    current: Vec<(StateId, usize)>,
    exhausted: bool,
}

impl Clique<'_> {
    fn run(&mut self, depth: usize) {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if self.best.len() >= self.limit || depth == self.groups.len() {
            return;
        }
        if self.current.len() + (self.groups.len() - depth) <= self.best.len() {
            return;
        }
        for idx in 0..self.groups[depth].len() {
            let v = self.groups[depth][idx];
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return;
            }
            if self.current.iter().all(|&w| self.space.compatible(v, w)) {
                self.current.push(v);
                self.run(depth + 1);
                self.current.pop();
                if self.exhausted || self.best.len() >= self.limit {
                    return;
                }
            }
        }
        self.run(depth + 1);
    }
}

fn clique(
    space: &Space,
    groups: Vec<Vec<(StateId, usize)>>,
    limit: usize,
    budget: u64,
) -> (Vec<(StateId, usize)>, bool, u64) {
    let mut groups: Vec<_> = groups.into_iter().filter(|g| !g.is_empty()).collect();
    groups.sort_by_key(Vec::len);
    let mut search = Clique {
        space,
        groups,
        limit,
        budget,
        nodes: 0,
        best: Vec::new(),
        current: Vec::new(),
        exhausted: false,
    };
    search.run(0);
    search.best.sort_unstable();
    (search.best, !search.exhausted, search.nodes)
}

/// Searches for a plain fooling set of at most `max_pairs` pairs whose
/// right-hand words have length at most `max_len`, visiting at most
/// `budget` search nodes.
pub fn search_fooling(
    lang: &(impl Automaton + ?Sized),
    max_pairs: usize,
    max_len: usize,
    budget: u64,
) -> Result<SearchOutcome> {
    let space = Space::new(lang, max_len);
    let groups = space
        .minimal
        .iter()
        .enumerate()
        .map(|(p, ids)| ids.iter().map(|&i| (p, i)).collect())
        .collect();
    let (best, complete, nodes) = clique(&space, groups, max_pairs, budget);
    let certificate = FoolingCertificate::plain(best.iter().map(|&v| space.pair(v)).collect());
    debug_assert!(check_with(&space.oracle, &certificate)?.is_valid());
    Ok(SearchOutcome {
        certificate,
        complete,
        nodes,
    })
}

/// Searches for an `(A, B, u, v)` certificate, trying every pair of
/// candidate words `u`, `v` up to `max_len`.
pub fn search_fooling_extended(
    lang: &(impl Automaton + ?Sized),
    max_pairs: usize,
    max_len: usize,
    budget: u64,
) -> Result<SearchOutcome> {
    let space = Space::new(lang, max_len);
    let s0 = space.oracle.dfa().initial();
    let anchors = &space.minimal[s0];
    if anchors.is_empty() {
        return Err(Error::Precondition(
            "extended search needs a word of the language within the length cap".into(),
        ));
    }

    let mut best: Option<(Vec<(StateId, usize)>, usize, usize)> = None;
    let mut complete = true;
    let mut nodes = 0u64;
    'outer: for (x, &u) in anchors.iter().enumerate() {
        for &v in &anchors[x..] {
            let groups = space
                .minimal
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != s0)
                .map(|(p, ids)| {
                    ids.iter()
                        .map(|&i| (p, i))
                        .filter(|&w| {
                            space.compatible(w, (s0, u)) || space.compatible(w, (s0, v))
                        })
                        .collect()
                })
                .collect();
            let limit = max_pairs.saturating_sub(1);
            let (found, done, used) = clique(&space, groups, limit, budget.saturating_sub(nodes));
            nodes += used;
            complete &= done;
            if best.as_ref().is_none_or(|(b, _, _)| found.len() > b.len()) {
                best = Some((found, u, v));
            }
            let reached = best.as_ref().map_or(0, |(b, _, _)| b.len());
            if !done || reached >= limit {
                break 'outer;
            }
        }
    }

    let (chosen, u, v) = best.unwrap_or_default();
    let (a, b): (Vec<_>, Vec<_>) = chosen
        .into_iter()
        .partition(|&w| space.compatible(w, (s0, u)));
    let certificate = FoolingCertificate::extended(
        a.into_iter().map(|w| space.pair(w)).collect(),
        b.into_iter().map(|w| space.pair(w)).collect(),
        space.profiles[u].1.clone(),
        space.profiles[v].1.clone(),
    );
    debug_assert!(check_extended_with(&space.oracle, &certificate)?.is_valid());
    Ok(SearchOutcome {
        certificate,
        complete: complete && nodes <= budget,
        nodes,
    })
}
