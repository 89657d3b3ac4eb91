//! Hopcroft partition refinement and the minimal complete / incomplete DFAs
//! built on top of it.

use std::collections::VecDeque;

use crate::automaton::{Automaton, Cdfa, Idfa, StateId};
use crate::determinize::complete;

/// Coarsest partition of the states of `d` compatible with finality and the
/// transition function. Returns the block id of every state.
fn hopcroft(d: &Cdfa) -> Vec<usize> {
    let n = d.num_states();
    let k = d.alphabet().len();

    let mut inverse: Vec<Vec<Vec<StateId>>> = vec![vec![Vec::new(); n]; k];
    for q in 0..n {
        for (a, inv) in inverse.iter_mut().enumerate() {
            inv[d.next(q, a)].push(q);
        }
    }

    let (finals, others): (Vec<StateId>, Vec<StateId>) = (0..n).partition(|&q| d.is_final(q));
    let mut blocks: Vec<Vec<StateId>> = Vec::new();
    let mut block_of = vec![0; n];
    for part in [finals, others] {
        if !part.is_empty() {
            for &q in &part {
                block_of[q] = blocks.len();
            }
            blocks.push(part);
        }
    }

    let mut pending = vec![false; blocks.len()];
    let mut work: Vec<usize> = Vec::new();
    if blocks.len() == 2 {
        let smaller = if blocks[0].len() <= blocks[1].len() { 0 } else { 1 };
        pending[smaller] = true;
        work.push(smaller);
    }

    let mut marks: Vec<Vec<StateId>> = vec![Vec::new(); n];
    let mut in_preimage = vec![false; n];
    while let Some(b) = work.pop() {
        pending[b] = false;
        let splitter = blocks[b].clone();
        for inv in &inverse {
            let mut touched: Vec<usize> = Vec::new();
            for &t in &splitter {
                for &q in &inv[t] {
                    let bq = block_of[q];
                    if marks[bq].is_empty() {
                        touched.push(bq);
                    }
                    marks[bq].push(q);
                }
            }
            for bq in touched {
                let hit = std::mem::take(&mut marks[bq]);
                if hit.len() == blocks[bq].len() {
                    continue;
                }
                for &q in &hit {
                    in_preimage[q] = true;
                }
                let rest: Vec<StateId> = blocks[bq]
                    .iter()
                    .copied()
                    .filter(|&q| !in_preimage[q])
                    .collect();
                for &q in &hit {
                    in_preimage[q] = false;
                }
                let new_id = blocks.len();
                for &q in &hit {
                    block_of[q] = new_id;
                }
                blocks[bq] = rest;
                blocks.push(hit);
                pending.push(false);
                marks.push(Vec::new());
                let pick = if pending[bq] || blocks[new_id].len() <= blocks[bq].len() {
                    new_id
                } else {
                    bq
                };
                if !pending[pick] {
                    pending[pick] = true;
                    work.push(pick);
                }
            }
        }
    }
    block_of
}

/// Renumbers the states reachable from the initial state in BFS order
/// (symbols in alphabet order). Unreachable states are dropped.
pub(crate) fn bfs_relabel(d: &Cdfa) -> Cdfa {
    let n = d.num_states();
    let k = d.alphabet().len();
    let mut new_id: Vec<Option<StateId>> = vec![None; n];
    let mut order = vec![d.initial()];
    new_id[d.initial()] = Some(0);
    let mut queue = VecDeque::from([d.initial()]);
    while let Some(q) = queue.pop_front() {
        for a in 0..k {
            let t = d.next(q, a);
            if new_id[t].is_none() {
                new_id[t] = Some(order.len());
                order.push(t);
                queue.push_back(t);
            }
        }
    }
    let delta = order
        .iter()
        .flat_map(|&q| (0..k).map(move |a| (q, a)))
        .map(|(q, a)| new_id[d.next(q, a)].expect("successor of reachable state is reachable"))
        .collect();
    let finals = order.iter().map(|&q| d.is_final(q)).collect();
    Cdfa::from_table(d.alphabet().clone(), 0, delta, finals).expect("relabeling preserves shape")
}

/// The minimal complete DFA, states numbered in BFS order.
pub fn minimize_cdfa(d: &Cdfa) -> Cdfa {
    let reachable = bfs_relabel(d);
    let blocks = hopcroft(&reachable);
    let k = reachable.alphabet().len();
    let num_blocks = blocks.iter().max().map_or(0, |m| m + 1);
    let mut delta = vec![0; num_blocks * k];
    let mut finals = vec![false; num_blocks];
    for q in 0..reachable.num_states() {
        let b = blocks[q];
        finals[b] = reachable.is_final(q);
        for a in 0..k {
            delta[b * k + a] = blocks[reachable.next(q, a)];
        }
    }
    let quotient = Cdfa::from_table(
        reachable.alphabet().clone(),
        blocks[reachable.initial()],
        delta,
        finals,
    )
    .expect("quotient is well-formed");
    bfs_relabel(&quotient)
}

/// The minimal incomplete DFA: no unreachable state, no dead state and no two
/// equivalent states. The empty language yields the zero-state automaton.
pub fn minimize_idfa(d: &Idfa) -> Idfa {
    if d.num_states() == 0 {
        return d.clone();
    }
    minimize_cdfa(&complete(d)).without_dead_states()
}

/// Pairwise distinguishability check by brute force over the reachable
/// state pairs of the completed automaton; used to audit minimality.
pub fn all_states_distinguishable(d: &Idfa) -> bool {
    let c = complete(d);
    let n = c.num_states();
    let k = c.alphabet().len();
    // equivalence by fixpoint on the pair table
    let mut distinct = vec![false; n * n];
    for p in 0..n {
        for q in 0..n {
            distinct[p * n + q] = c.is_final(p) != c.is_final(q);
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for p in 0..n {
            for q in 0..n {
                if distinct[p * n + q] {
                    continue;
                }
                if (0..k).any(|a| distinct[c.next(p, a) * n + c.next(q, a)]) {
                    distinct[p * n + q] = true;
                    changed = true;
                }
            }
        }
    }
    (0..d.num_states()).all(|p| (0..p).all(|q| distinct[p * n + q]))
}
