use super::families::seed;
use super::validate::{validate_witness, WitnessReport};
use super::{Family, Provenance, Witness, WitnessSpec};
use crate::alphabet::Alphabet;
use crate::analysis::isc;
use crate::automaton::Idfa;
use crate::error::{Error, Result};
use crate::fooling::{standard_fooling_set, FoolingCertificate, FoolingFamily};
use crate::witnesses::Model;

/// Candidate evaluations allowed by default.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug)]
pub struct ReconstructOptions {
    /// Maximum number of candidate automata examined, seeds included.
    pub budget: u64,
    /// Try the analytically derived candidates before exhaustive search.
    pub use_seeds: bool,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        ReconstructOptions {
            budget: DEFAULT_BUDGET,
            use_seeds: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub witness: Witness,
    pub report: WitnessReport,
    /// Certificates behind the family's `nsc` claims.
    pub certificates: Vec<FoolingCertificate>,
    pub from_seed: bool,
    pub candidates_examined: u64,
}

/// Finds automata for a family whose transitions are not given explicitly:
/// the seed candidate first, then all-final deterministic candidates of the
/// required sizes in a fixed order. The first candidate passing
/// [`validate_witness`] is returned; running out of budget is an error.
pub fn reconstruct_witness(
    family: Family,
    m: usize,
    n: usize,
    options: &ReconstructOptions,
) -> Result<Reconstruction> {
    if family.provenance() != Provenance::Reconstructed {
        return Err(Error::InvalidParameters(format!(
            "{family} is built directly and needs no reconstruction"
        )));
    }
    let spec = WitnessSpec::new(family, m, n)?;
    let mut examined = 0u64;
    let mut last_failure = String::from("no candidate examined");

    let mut attempt = |witness: Witness, examined: &mut u64| -> Result<Option<WitnessReport>> {
        *examined += 1;
        let report = validate_witness(&witness)?;
        if report.passed() {
            return Ok(Some(report));
        }
        if let Some(c) = report.failures().next() {
            last_failure = format!("{}: {}", c.name, c.detail);
        }
        Ok(None)
    };

    if options.use_seeds && examined < options.budget {
        if let Some(report) = attempt(seed(spec), &mut examined)? {
            return Ok(finish(report, true, examined));
        }
    }

    let k = family.alphabet_size();
    let sizes: Vec<usize> = if family.is_binary() { vec![m, n] } else { vec![n] };
    let pools: Vec<Vec<Idfa>> = sizes
        .iter()
        .map(|&size| candidates(k, size, options.budget.saturating_sub(examined), &mut examined))
        .collect();
    let mut indices = vec![0usize; pools.len()];
    if pools.iter().all(|p| !p.is_empty()) {
        'search: loop {
            if examined >= options.budget {
                break;
            }
            let automata = indices
                .iter()
                .zip(&pools)
                .map(|(&i, pool)| pool[i].clone().into())
                .collect();
            if let Some(report) = attempt(Witness { spec, automata }, &mut examined)? {
                return Ok(finish(report, false, examined));
            }
            for slot in (0..indices.len()).rev() {
                indices[slot] += 1;
                if indices[slot] < pools[slot].len() {
                    continue 'search;
                }
                indices[slot] = 0;
            }
            break;
        }
    }
    Err(Error::Reconstruction(format!(
        "{spec}: no valid candidate within {} examined (budget {}); last failure: {last_failure}",
        examined, options.budget
    )))
}

fn finish(report: WitnessReport, from_seed: bool, examined: u64) -> Reconstruction {
    let spec = report.witness.spec;
    let certificates = spec
        .family
        .targets(spec.n)
        .into_iter()
        .filter(|(_, model)| *model == Model::Nsc)
        .filter_map(|(op, _)| {
            let family: FoolingFamily = op.name().parse().ok()?;
            standard_fooling_set(family, spec.m, spec.n).ok()
        })
        .collect();
    Reconstruction {
        witness: report.witness.clone(),
        report,
        certificates,
        from_seed,
        candidates_examined: examined,
    }
}

/// Minimal all-final incomplete DFAs with `size` states over `k` symbols,
/// initial state 0, in mixed-radix order of their transition tables. Every
/// table looked at counts against the budget.
fn candidates(k: usize, size: usize, budget: u64, examined: &mut u64) -> Vec<Idfa> {
    let alphabet = Alphabet::letters(k);
    let slots = k * size;
    // digit 0 = undefined, digit t+1 = target t
    let mut digits = vec![0usize; slots];
    let mut out = Vec::new();
    let mut spent = 0u64;
    loop {
        if spent >= budget {
            break;
        }
        spent += 1;
        let mut d = Idfa::new(alphabet.clone(), size);
        d.set_all_final();
        for (slot, &digit) in digits.iter().enumerate() {
            d.set_transition(slot / k, slot % k, digit.checked_sub(1));
        }
        if d.reachable().iter().all(|&r| r) && isc(&d) == size {
            out.push(d);
        }
        let mut pos = 0;
        loop {
            if pos == slots {
                *examined += spent;
                return out;
            }
            digits[pos] += 1;
            if digits[pos] <= size {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
    *examined += spent;
    out
}
