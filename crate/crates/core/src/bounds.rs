//! Tightness claims as runnable experiments.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ops::Operation;
use crate::witnesses::{evaluate, make_witness, Family, Model, Status, WitnessSpec};

/// One tightness claim: an operation, a complexity measure, and the witness
/// family attaining it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TheoremId {
    pub operation: Operation,
    pub model: Model,
}

impl TheoremId {
    pub fn all() -> Vec<TheoremId> {
        Operation::ALL
            .into_iter()
            .flat_map(|operation| {
                [Model::Isc, Model::Nsc].map(|model| TheoremId { operation, model })
            })
            .collect()
    }

    pub fn family(self) -> Family {
        use Operation::*;
        match (self.operation, self.model) {
            (Complement, Model::Isc) => Family::ComplementUnary,
            (Complement, _) => Family::ComplementNsc,
            (Intersection, _) => Family::Intersection,
            (Union, Model::Isc) => Family::UnionIscProduct,
            (Union, _) => Family::UnionNsc,
            (Concatenation, Model::Isc) => Family::ConcatIsc,
            (Concatenation, _) => Family::ConcatNsc,
            (Star, Model::Isc) => Family::StarIsc,
            (Star, _) => Family::StarReversalNsc,
            (Reversal, Model::Isc) => Family::ReversalIsc,
            (Reversal, _) => Family::StarReversalNsc,
        }
    }

    pub fn is_binary(self) -> bool {
        self.operation.is_binary()
    }

    /// Smallest legal `(m, n)`; `m` is ignored for unary operations.
    pub fn min_params(self) -> (usize, usize) {
        let (m, n) = self.family().min_params();
        if self.operation == Operation::Reversal && self.model == Model::Nsc {
            (m, n.max(2))
        } else {
            (m, n)
        }
    }

    pub fn upper(self, m: usize, n: usize) -> usize {
        match self.model {
            Model::Nsc => self.operation.nsc_bound(m, n),
            _ => self.operation.isc_bound(m, n),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.operation {
            Operation::Concatenation => "concat",
            other => other.name(),
        };
        write!(f, "{op}-{}", self.model)
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::InvalidParameters(format!("unknown theorem {s:?}"));
        let (op, model) = s.rsplit_once('-').ok_or_else(unknown)?;
        let model = match model {
            "isc" => Model::Isc,
            "nsc" => Model::Nsc,
            _ => return Err(unknown()),
        };
        let operation = op.parse().map_err(|_| unknown())?;
        Ok(TheoremId { operation, model })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundReport {
    pub theorem: TheoremId,
    pub m: usize,
    pub n: usize,
    pub upper: usize,
    /// Measured minimal size (`isc`) or certified lower bound (`nsc`).
    pub achieved: usize,
    pub construction_states: usize,
    pub status: Status,
    pub diagnostics: Vec<String>,
}

impl BoundReport {
    /// `key=value` pairs on one line.
    pub fn summary(&self) -> String {
        let mut s = format!("theorem={}", self.theorem);
        if self.theorem.is_binary() {
            s += &format!(" m={}", self.m);
        }
        s += &format!(
            " n={} model={} upper={} achieved={} construction={} status={}",
            self.n,
            self.theorem.model,
            self.upper,
            self.achieved,
            self.construction_states,
            self.status
        );
        s
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let how = match self.theorem.model {
            Model::Nsc => "certified by fooling set",
            _ => "measured",
        };
        if self.theorem.is_binary() {
            writeln!(f, "{} with m={} n={}", self.theorem, self.m, self.n)?;
        } else {
            writeln!(f, "{} with n={}", self.theorem, self.n)?;
        }
        writeln!(f, "  upper bound: {}", self.upper)?;
        writeln!(f, "  achieved:    {} ({how})", self.achieved)?;
        writeln!(f, "  construction states: {}", self.construction_states)?;
        for d in &self.diagnostics {
            writeln!(f, "  {d}")?;
        }
        write!(f, "  status: {}", self.status)
    }
}

/// Builds the witness for `theorem`, runs the construction and measures or
/// certifies the result. A witness that cannot be built or fails a check
/// yields a report with status `fail`.
pub fn bound(theorem: TheoremId, m: usize, n: usize) -> Result<BoundReport> {
    let (min_m, min_n) = theorem.min_params();
    if (theorem.is_binary() && m < min_m) || n < min_n {
        return Err(Error::InvalidParameters(format!(
            "{theorem} needs {}n >= {min_n}",
            if theorem.is_binary() { format!("m >= {min_m} and ") } else { String::new() }
        )));
    }
    let m = if theorem.is_binary() { m } else { 0 };
    let spec = WitnessSpec::new(theorem.family(), m, n)?;
    let upper = theorem.upper(m, n);
    let failed = |diagnostics| BoundReport {
        theorem,
        m,
        n,
        upper,
        achieved: 0,
        construction_states: 0,
        status: Status::Fail,
        diagnostics,
    };
    let witness = match make_witness(spec) {
        Ok(w) => w,
        Err(Error::Reconstruction(msg)) => return Ok(failed(vec![msg])),
        Err(e) => return Err(e),
    };
    let outcome = evaluate(&witness, theorem.operation, theorem.model)?;
    Ok(BoundReport {
        theorem,
        m,
        n,
        upper: outcome.upper,
        achieved: outcome.achieved,
        construction_states: outcome.construction_states,
        status: outcome.status(),
        diagnostics: outcome.checks.iter().map(ToString::to_string).collect(),
    })
}
