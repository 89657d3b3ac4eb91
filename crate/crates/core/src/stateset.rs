use std::fmt;

use smallvec::SmallVec;

use crate::automaton::StateId;

const BITS: usize = 64;

/// A fixed-width bitset over the states `0..universe` of one automaton.
///
/// Sets are compared by value; two sets over different universes are never
/// equal, so sets from unrelated automata must not be mixed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    universe: usize,
    blocks: SmallVec<[u64; 2]>,
}

impl StateSet {
    pub fn empty(universe: usize) -> Self {
        StateSet {
            universe,
            blocks: SmallVec::from_elem(0, universe.div_ceil(BITS)),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for q in 0..universe {
            s.insert(q);
        }
        s
    }

    pub fn singleton(universe: usize, q: StateId) -> Self {
        let mut s = Self::empty(universe);
        s.insert(q);
        s
    }

    pub fn from_iter_in(universe: usize, states: impl IntoIterator<Item = StateId>) -> Self {
        let mut s = Self::empty(universe);
        for q in states {
            s.insert(q);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, q: StateId) {
        assert!(q < self.universe, "state {q} outside universe {}", self.universe);
        self.blocks[q / BITS] |= 1 << (q % BITS);
    }

    pub fn remove(&mut self, q: StateId) {
        if q < self.universe {
            self.blocks[q / BITS] &= !(1 << (q % BITS));
        }
    }

    pub fn contains(&self, q: StateId) -> bool {
        q < self.universe && self.blocks[q / BITS] & (1 << (q % BITS)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &StateSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.blocks.iter().zip(&other.blocks).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = StateId> + '_ {
        self.blocks.iter().enumerate().flat_map(|(bi, &block)| {
            let mut rest = block;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(bi * BITS + bit)
            })
        })
    }

    /// The smallest member, if any.
    pub fn first(&self) -> Option<StateId> {
        self.iter().next()
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, q) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        f.write_str("}")
    }
}
