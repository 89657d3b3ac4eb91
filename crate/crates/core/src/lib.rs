//! Automata constructions and state-complexity experiments for prefix-closed
//! regular languages.
//!
//! The crate models languages by nondeterministic ([`Nfa`]), incomplete
//! deterministic ([`Idfa`]) and complete deterministic ([`Cdfa`]) automata,
//! implements the standard constructions for complement, intersection,
//! union, concatenation, star and reversal in both the deterministic and the
//! nondeterministic model ([`ops`]), checks fooling-set lower-bound
//! certificates ([`fooling`]), generates worst-case witness families
//! ([`witnesses`]) and enumerates small DFAs for census experiments
//! ([`census`]).

pub mod alphabet;
pub mod analysis;
pub mod automaton;
pub mod bounds;
pub mod canonical;
pub mod census;
pub mod determinize;
pub mod error;
pub mod fooling;
pub mod format;
pub mod minimize;
pub mod ops;
pub mod stateset;
pub mod witnesses;

pub use alphabet::{Alphabet, Symbol, Word};
pub use analysis::{
    distinguishing_word, equivalent, is_prefix_closed, isc, minimal_cdfa, minimal_idfa, sc,
};
pub use automaton::{Automaton, Cdfa, Idfa, Nfa, StateId};
pub use canonical::{canonical_form, CanonicalForm};
pub use determinize::{complete, determinize, determinize_with_subsets, SubsetAutomaton};
pub use error::{Error, Result};
pub use minimize::{minimize_cdfa, minimize_idfa};
pub use stateset::StateSet;
