//! Fooling-set lower bounds for nondeterministic automata.
//!
//! A fooling set `{(x_1, y_1), ..., (x_n, y_n)}` for `L` satisfies
//!
//! * **F1** `x_i y_i ∈ L` for every `i`, and
//! * **F2** `x_i y_j ∉ L` or `x_j y_i ∉ L` for every `i ≠ j`,
//!
//! and forces every NFA for `L`, even one with several initial states, to
//! have at least `n` states. An *extended* certificate `(A, B, u, v)` where
//! `A ∪ B`, `A ∪ {(ε, u)}` and `B ∪ {(ε, v)}` are all fooling sets forces
//! every NFA with a single initial state to have at least `|A| + |B| + 1`
//! states.

mod certificate;
mod check;
mod generators;
mod search;

pub use certificate::{parse_certificate, write_certificate, FoolingCertificate, Pair, Split};
pub use check::{
    check_fooling, check_fooling_extended, MembershipOracle, PairSet, Verdict, Violation,
    ViolationKind,
};
pub use generators::{example_union_certificate, standard_fooling_set, FoolingFamily};
pub use search::{search_fooling, search_fooling_extended, SearchOutcome};
