//! Witness families attaining the state-complexity bounds.
//!
//! Families given by explicit transition descriptions are built directly.
//! The remaining four families (`union-nsc`, `concat-nsc`, `reversal-isc`,
//! `star-reversal-nsc`) are recovered from the membership facts their
//! lower-bound arguments rely on: [`make_witness`] returns them only after
//! [`validate_witness`] accepts them.

mod families;
mod reconstruct;
mod validate;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::format::AnyAutomaton;
use crate::ops::Operation;

pub use families::input_certificate;
pub use reconstruct::{reconstruct_witness, Reconstruction, ReconstructOptions, DEFAULT_BUDGET};
pub use validate::{evaluate, validate_witness, Check, Outcome, Status, WitnessReport};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Family {
    ComplementUnary,
    ComplementNsc,
    Intersection,
    UnionIscProduct,
    UnionNsc,
    ConcatIsc,
    ConcatNsc,
    StarIsc,
    StarProp3,
    ReversalIsc,
    StarReversalNsc,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Provenance {
    /// Transitions are given explicitly.
    Prose,
    /// Transitions are recovered and certified by validation.
    Reconstructed,
}

/// The complexity measure a tightness claim is about.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Model {
    Isc,
    Nsc,
    Sc,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Isc => "isc",
            Model::Nsc => "nsc",
            Model::Sc => "sc",
        })
    }
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::ComplementUnary,
        Family::ComplementNsc,
        Family::Intersection,
        Family::UnionIscProduct,
        Family::UnionNsc,
        Family::ConcatIsc,
        Family::ConcatNsc,
        Family::StarIsc,
        Family::StarProp3,
        Family::ReversalIsc,
        Family::StarReversalNsc,
    ];

    pub const RECONSTRUCTED: [Family; 4] = [
        Family::UnionNsc,
        Family::ConcatNsc,
        Family::ReversalIsc,
        Family::StarReversalNsc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::ComplementUnary => "complement-unary",
            Family::ComplementNsc => "complement-nsc",
            Family::Intersection => "intersection",
            Family::UnionIscProduct => "union-isc-product",
            Family::UnionNsc => "union-nsc",
            Family::ConcatIsc => "concat-isc",
            Family::ConcatNsc => "concat-nsc",
            Family::StarIsc => "star-isc",
            Family::StarProp3 => "star-prop3",
            Family::ReversalIsc => "reversal-isc",
            Family::StarReversalNsc => "star-reversal-nsc",
        }
    }

    pub fn provenance(self) -> Provenance {
        if Family::RECONSTRUCTED.contains(&self) {
            Provenance::Reconstructed
        } else {
            Provenance::Prose
        }
    }

    /// Whether the family consists of two automata `K` and `L`.
    pub fn is_binary(self) -> bool {
        matches!(
            self,
            Family::Intersection
                | Family::UnionIscProduct
                | Family::UnionNsc
                | Family::ConcatIsc
                | Family::ConcatNsc
        )
    }

    /// Smallest legal `(m, n)`; `m` is ignored by unary families.
    pub fn min_params(self) -> (usize, usize) {
        match self {
            Family::ComplementUnary | Family::StarReversalNsc => (0, 1),
            Family::ComplementNsc | Family::ReversalIsc => (0, 2),
            Family::Intersection | Family::UnionIscProduct => (1, 1),
            Family::UnionNsc => (2, 2),
            Family::ConcatIsc | Family::ConcatNsc => (3, 3),
            Family::StarIsc => (0, 4),
            Family::StarProp3 => (0, 3),
        }
    }

    pub fn alphabet_size(self) -> usize {
        match self {
            Family::ComplementUnary => 1,
            Family::ComplementNsc | Family::ConcatIsc | Family::ConcatNsc => 3,
            Family::UnionNsc => 4,
            _ => 2,
        }
    }

    /// The operations and measures whose bounds the family attains. The
    /// reversal target of `star-reversal-nsc` needs `n >= 2`.
    pub fn targets(self, n: usize) -> Vec<(Operation, Model)> {
        use Operation::*;
        match self {
            Family::ComplementUnary => vec![(Complement, Model::Isc)],
            Family::ComplementNsc => vec![(Complement, Model::Nsc)],
            Family::Intersection => vec![(Intersection, Model::Isc), (Intersection, Model::Nsc)],
            Family::UnionIscProduct => vec![(Union, Model::Isc)],
            Family::UnionNsc => vec![(Union, Model::Nsc)],
            Family::ConcatIsc => vec![(Concatenation, Model::Isc)],
            Family::ConcatNsc => vec![(Concatenation, Model::Nsc)],
            Family::StarIsc => vec![(Star, Model::Isc)],
            Family::StarProp3 => vec![(Star, Model::Sc)],
            Family::ReversalIsc => vec![(Reversal, Model::Isc)],
            Family::StarReversalNsc if n >= 2 => vec![(Star, Model::Nsc), (Reversal, Model::Nsc)],
            Family::StarReversalNsc => vec![(Star, Model::Nsc)],
        }
    }

    /// The model in which the inputs have size `m` (and `n`).
    pub fn input_model(self) -> Model {
        match self {
            Family::ComplementUnary
            | Family::Intersection
            | Family::UnionIscProduct
            | Family::ConcatIsc
            | Family::StarIsc
            | Family::ReversalIsc => Model::Isc,
            Family::StarProp3 => Model::Sc,
            _ => Model::Nsc,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown witness family {s:?}")))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct WitnessSpec {
    pub family: Family,
    /// Size of `K`; ignored by unary families.
    pub m: usize,
    /// Size of `L`.
    pub n: usize,
}

impl WitnessSpec {
    pub fn new(family: Family, m: usize, n: usize) -> Result<Self> {
        let spec = WitnessSpec { family, m, n };
        spec.check()?;
        Ok(spec)
    }

    pub fn unary(family: Family, n: usize) -> Result<Self> {
        WitnessSpec::new(family, 0, n)
    }

    fn check(&self) -> Result<()> {
        let (min_m, min_n) = self.family.min_params();
        if (self.family.is_binary() && self.m < min_m) || self.n < min_n {
            return Err(Error::InvalidParameters(if self.family.is_binary() {
                format!("{} needs m >= {min_m} and n >= {min_n}", self.family)
            } else {
                format!("{} needs n >= {min_n}", self.family)
            }));
        }
        let cap = if self.family == Family::ComplementNsc { 16 } else { 24 };
        if self.n > cap || self.m > cap {
            return Err(Error::InvalidParameters(format!(
                "{} is capped at size {cap}",
                self.family
            )));
        }
        Ok(())
    }
}

impl fmt::Display for WitnessSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.is_binary() {
            write!(f, "{} m={} n={}", self.family, self.m, self.n)
        } else {
            write!(f, "{} n={}", self.family, self.n)
        }
    }
}

/// The automata of one witness instance: `[K, L]` for binary families,
/// `[L]` otherwise.
#[derive(Clone, Debug)]
pub struct Witness {
    pub spec: WitnessSpec,
    pub automata: Vec<AnyAutomaton>,
}

impl Witness {
    pub fn left(&self) -> &AnyAutomaton {
        &self.automata[0]
    }

    pub fn right(&self) -> &AnyAutomaton {
        self.automata.last().expect("witness has an automaton")
    }
}

/// Builds the witness for `spec`. Reconstructed families go through
/// [`reconstruct_witness`] with the default budget.
pub fn make_witness(spec: WitnessSpec) -> Result<Witness> {
    spec.check()?;
    match spec.family.provenance() {
        Provenance::Prose => Ok(families::build(spec)),
        Provenance::Reconstructed => {
            reconstruct_witness(spec.family, spec.m, spec.n, &ReconstructOptions::default())
                .map(|r| r.witness)
        }
    }
}
