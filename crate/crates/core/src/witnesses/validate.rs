use std::collections::{HashSet, VecDeque};
use std::fmt;

use super::families::input_certificate;
use super::{Family, Model, Provenance, Witness};
use crate::alphabet::{pow, Symbol, Word};
use crate::analysis::{is_prefix_closed, isc, minimal_cdfa, sc};
use crate::automaton::{Automaton, Idfa, Nfa};
use crate::determinize::determinize_with_subsets;
use crate::error::{Error, Result};
use crate::fooling::{check_fooling, check_fooling_extended, standard_fooling_set, FoolingFamily};
use crate::format::AnyAutomaton;
use crate::ops::{
    check_concat_subsets, check_star_subsets, complement_idfa, complement_nfa, concat_nfa,
    concat_nfa_single_initial, intersect_idfa, intersect_nfa, reverse_nfa, star_nfa, union_idfa,
    union_nfa, with_single_initial, Operation,
};
use crate::stateset::StateSet;

const A: Symbol = 0;
const B: Symbol = 1;
const C: Symbol = 2;
const D: Symbol = 3;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn equal(name: impl Into<String>, got: usize, want: usize) -> Check {
        Check::new(name, got == want, format!("got {got}, want {want}"))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "ok" } else { "FAIL" };
        write!(f, "[{mark}] {}: {}", self.name, self.detail)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Tight,
    Gap,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Tight => "tight",
            Status::Gap => "gap",
            Status::Fail => "fail",
        })
    }
}

/// The measured (or certified) result of one operation on a witness.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub operation: Operation,
    pub model: Model,
    pub upper: usize,
    /// Minimal size for `isc`/`sc`, certified lower bound for `nsc`.
    pub achieved: usize,
    /// Size of the automaton the construction produced.
    pub construction_states: usize,
    pub checks: Vec<Check>,
}

impl Outcome {
    pub fn status(&self) -> Status {
        if self.achieved > self.upper || self.checks.iter().any(|c| !c.passed) {
            Status::Fail
        } else if self.achieved < self.upper {
            Status::Gap
        } else {
            Status::Tight
        }
    }
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub witness: Witness,
    pub checks: Vec<Check>,
    pub outcomes: Vec<Outcome>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
            && self.outcomes.iter().all(|o| o.status() == Status::Tight)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks
            .iter()
            .chain(self.outcomes.iter().flat_map(|o| o.checks.iter()))
            .filter(|c| !c.passed)
    }
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "witness {}", self.witness.spec)?;
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        for o in &self.outcomes {
            writeln!(
                f,
                "  {} {}: upper {} achieved {} construction {} -> {}",
                o.operation,
                o.model,
                o.upper,
                o.achieved,
                o.construction_states,
                o.status()
            )?;
            for c in &o.checks {
                writeln!(f, "    {c}")?;
            }
        }
        write!(f, "{}", if self.passed() { "valid" } else { "invalid" })
    }
}

/// Runs every check the family's tightness claims depend on.
pub fn validate_witness(witness: &Witness) -> Result<WitnessReport> {
    let spec = witness.spec;
    let family = spec.family;
    let expected = if family.is_binary() { 2 } else { 1 };
    if witness.automata.len() != expected {
        return Err(Error::InvalidParameters(format!(
            "{family} needs {expected} automata, got {}",
            witness.automata.len()
        )));
    }

    let mut checks = Vec::new();
    for (idx, aut) in witness.automata.iter().enumerate() {
        let label = if family.is_binary() { ["K", "L"][idx] } else { "L" };
        let size = if family.is_binary() && idx == 0 { spec.m } else { spec.n };
        checks.push(Check::equal(
            format!("{label} alphabet size"),
            aut.alphabet().len(),
            family.alphabet_size(),
        ));
        checks.push(Check::new(
            format!("{label} prefix-closed"),
            is_prefix_closed(aut),
            "minimal incomplete DFA has all states final",
        ));
        checks.push(Check::equal(format!("{label} states"), aut.num_states(), size));
        match family.input_model() {
            Model::Isc => checks.push(Check::equal(format!("isc({label})"), isc(aut), size)),
            Model::Sc => checks.push(Check::equal(format!("sc({label})"), sc(aut), size)),
            Model::Nsc => {
                let cert = input_certificate(witness, idx).expect("nsc family has certificates");
                let verdict = check_fooling(aut, &cert)?;
                checks.push(Check::new(
                    format!("nsc({label}) >= {size}"),
                    verdict.is_valid() && verdict.bound == size,
                    match verdict.violation {
                        Some(v) => v.to_string(),
                        None => format!("fooling set of size {} validates", verdict.bound),
                    },
                ));
            }
        }
    }
    if family.provenance() == Provenance::Reconstructed {
        checks.extend(textual_constraints(witness)?);
    }

    let outcomes = family
        .targets(spec.n)
        .into_iter()
        .map(|(op, model)| evaluate(witness, op, model))
        .collect::<Result<Vec<_>>>()?;
    Ok(WitnessReport {
        witness: witness.clone(),
        checks,
        outcomes,
    })
}

fn idfa_of(a: &AnyAutomaton) -> Result<Idfa> {
    a.as_idfa()
        .ok_or_else(|| Error::Precondition(format!("expected a deterministic automaton, got {}", a.kind())))
}

fn certify(
    lang: &Nfa,
    family: FoolingFamily,
    m: usize,
    n: usize,
    checks: &mut Vec<Check>,
) -> Result<usize> {
    let cert = standard_fooling_set(family, m, n)?;
    let verdict = if family.is_extended() {
        check_fooling_extended(lang, &cert)?
    } else {
        check_fooling(lang, &cert)?
    };
    checks.push(Check::new(
        "fooling certificate",
        verdict.is_valid(),
        match verdict.violation {
            Some(v) => v.to_string(),
            None => format!("{} pairs certify {}", cert.pairs.len(), verdict.bound),
        },
    ));
    Ok(if verdict.is_valid() { verdict.bound } else { 0 })
}

/// Measures (`isc`, `sc`) or certifies (`nsc`) the result of `op` on the
/// witness.
pub fn evaluate(witness: &Witness, op: Operation, model: Model) -> Result<Outcome> {
    let spec = witness.spec;
    let (m, n) = (spec.m, spec.n);
    let k = witness.left();
    let l = witness.right();
    let mut checks = Vec::new();
    let upper = match model {
        Model::Isc => op.isc_bound(m, n),
        Model::Nsc => op.nsc_bound(m, n),
        Model::Sc => 2,
    };

    let (achieved, construction_states) = match (op, model) {
        (Operation::Complement, Model::Isc) => {
            let r = complement_idfa(&idfa_of(l)?);
            (isc(&r.automaton), r.construction_states)
        }
        (Operation::Complement, Model::Nsc) => {
            let nfa = l.to_nfa();
            let subsets = determinize_with_subsets(&nfa).subsets.len();
            checks.push(Check::equal("reachable nonempty subsets", subsets, (1 << n) - 1));
            let r = complement_nfa(&nfa);
            let bound = certify(&r.automaton.to_nfa(), FoolingFamily::Complement, m, n, &mut checks)?;
            (bound, r.construction_states)
        }
        (Operation::Intersection, Model::Isc) => {
            let r = intersect_idfa(&idfa_of(k)?, &idfa_of(l)?)?;
            (isc(&r.automaton), r.construction_states)
        }
        (Operation::Intersection, Model::Nsc) => {
            let r = intersect_nfa(&k.to_nfa(), &l.to_nfa())?;
            let bound = certify(&r.automaton, FoolingFamily::Intersection, m, n, &mut checks)?;
            (bound, r.construction_states)
        }
        (Operation::Union, Model::Isc) => {
            let r = union_idfa(&idfa_of(k)?, &idfa_of(l)?)?;
            (isc(&r.automaton), r.construction_states)
        }
        (Operation::Union, Model::Nsc) => {
            let r = union_nfa(&k.to_nfa(), &l.to_nfa())?;
            let bound = certify(&r.automaton, FoolingFamily::Union, m, n, &mut checks)?;
            (bound, r.construction_states)
        }
        (Operation::Concatenation, Model::Isc) => {
            let r = concat_nfa(&k.to_nfa(), &l.to_nfa())?;
            let sub = determinize_with_subsets(&r.automaton);
            let right_initial = m + l.to_nfa().initial().first().unwrap_or(0);
            checks.push(Check::new(
                "subset shape",
                check_concat_subsets(&sub.subsets, m, right_initial).is_ok(),
                "at most one left state, always with the right initial state",
            ));
            (isc(&r.automaton), sub.subsets.len())
        }
        (Operation::Concatenation, Model::Nsc) => {
            let r = concat_nfa_single_initial(&k.to_nfa(), &l.to_nfa())?;
            let bound = certify(&r.automaton, FoolingFamily::Concatenation, m, n, &mut checks)?;
            (bound, r.construction_states)
        }
        (Operation::Star, Model::Isc) => {
            let r = star_nfa(&l.to_nfa())?;
            let sub = determinize_with_subsets(&r.automaton);
            let initial = r.automaton.initial().first().unwrap_or(0);
            checks.push(Check::new(
                "subset shape",
                check_star_subsets(&sub.subsets, initial).is_ok(),
                "every nonempty subset holds the initial state",
            ));
            (isc(&r.automaton), sub.subsets.len())
        }
        (Operation::Star, Model::Sc) => {
            let trimmed = minimal_cdfa(l).without_dead_states();
            let r = star_nfa(&trimmed.to_nfa())?;
            (sc(&r.automaton), r.construction_states)
        }
        (Operation::Star, Model::Nsc) => {
            let r = star_nfa(&l.to_nfa())?;
            let bound = certify(&r.automaton, FoolingFamily::Star, m, n, &mut checks)?;
            (bound, r.construction_states)
        }
        (Operation::Reversal, Model::Isc) => {
            let r = reverse_nfa(&l.to_nfa());
            let sub = determinize_with_subsets(&r.automaton);
            (isc(&r.automaton), sub.subsets.len())
        }
        (Operation::Reversal, Model::Nsc) => {
            let single = with_single_initial(&reverse_nfa(&l.to_nfa()).automaton);
            let bound = certify(&single, FoolingFamily::Reversal, m, n, &mut checks)?;
            (bound, single.num_states())
        }
        (op, model) => {
            return Err(Error::InvalidParameters(format!("no {model} claim for {op}")));
        }
    };
    if model == Model::Nsc {
        checks.push(Check::equal("construction states", construction_states, upper));
    }
    Ok(Outcome {
        operation: op,
        model,
        upper,
        achieved,
        construction_states,
        checks,
    })
}

fn cat(parts: &[&[Symbol]]) -> Word {
    parts.concat()
}

fn membership(label: &str, aut: &AnyAutomaton, word: &[Symbol], expected: bool) -> Check {
    let got = aut.accepts_unchecked(word);
    let spelled = aut.alphabet().spell(word);
    let relation = if expected { "in" } else { "not in" };
    Check::new(
        format!("{spelled} {relation} {label}"),
        got == expected,
        if got == expected { "holds" } else { "violated" },
    )
}

/// The membership facts the lower-bound arguments state about the
/// reconstructed families, checked string by string.
fn textual_constraints(witness: &Witness) -> Result<Vec<Check>> {
    let spec = witness.spec;
    let (m, n) = (spec.m, spec.n);
    let mut checks = Vec::new();
    match spec.family {
        Family::UnionNsc => {
            for (label, aut, x, y, size, foreign) in [
                ("K", witness.left(), A, B, m, [C, D]),
                ("L", witness.right(), C, D, n, [A, B]),
            ] {
                let full = cat(&[&pow(x, size - 1), &[y]]);
                checks.push(membership(label, aut, &full, true));
                checks.push(membership(label, aut, &cat(&[&full, &[x]]), true));
                for i in 1..size {
                    checks.push(membership(label, aut, &cat(&[&pow(x, size - 1 - i), &[y]]), false));
                    checks.push(membership(
                        label,
                        aut,
                        &cat(&[&full, &pow(x, size - 1 - i), &[y]]),
                        false,
                    ));
                }
                for s in foreign {
                    checks.push(membership(label, aut, &[s], false));
                }
            }
        }
        Family::ConcatNsc => {
            checks.push(membership("K", witness.left(), &cat(&[&pow(A, m - 1), &[C]]), true));
            checks.push(membership("L", witness.right(), &cat(&[&[B], &pow(A, n - 1)]), true));
            let product = concat_nfa(&witness.left().to_nfa(), &witness.right().to_nfa())?;
            checks.push(shape_check(&product.automaton, m + n - 2));
        }
        Family::ReversalIsc => checks.push(removal_identity(witness.right(), n)),
        Family::StarReversalNsc => {
            let l = witness.right();
            checks.push(membership("L", l, &cat(&[&pow(A, n - 1), &[B]]), true));
            for len in 0..n - 1 {
                checks.push(membership("L", l, &cat(&[&pow(A, len), &[B]]), false));
            }
        }
        _ => {}
    }
    Ok(checks)
}

/// Every word of the concatenation lies in `b*a*c*b*a*c*` and has at most
/// `max_a` occurrences of `a`; decided exactly by a search over the minimal
/// DFA paired with the shape position and a capped `a`-count.
fn shape_check(concat: &Nfa, max_a: usize) -> Check {
    const SHAPE: [Symbol; 6] = [B, A, C, B, A, C];
    let dfa = minimal_cdfa(concat);
    let step_shape = |phase: usize, sym: Symbol| (phase..SHAPE.len()).find(|&p| SHAPE[p] == sym);
    let start = (dfa.initial(), 0usize, 0usize);
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([(start, Vec::new())]);
    while let Some(((q, phase, count), word)) = queue.pop_front() {
        for sym in 0..dfa.alphabet().len() {
            let r = dfa.next(q, sym);
            if dfa.is_dead(r) {
                continue;
            }
            let mut w: Word = word.clone();
            w.push(sym);
            let count = count + usize::from(sym == A);
            let violation = match step_shape(phase, sym) {
                None => Some("leaves b*a*c*b*a*c*"),
                Some(_) if count > max_a => Some("has too many a's"),
                Some(_) => None,
            };
            if let Some(why) = violation {
                return Check::new(
                    "concatenation shape",
                    false,
                    format!("{} {why}", dfa.alphabet().spell(&w)),
                );
            }
            let next = (r, step_shape(phase, sym).expect("checked"), count);
            if seen.insert(next) {
                queue.push_back((next, w));
            }
        }
    }
    Check::new(
        "concatenation shape",
        true,
        format!("all words in b*a*c*b*a*c* with at most {max_a} a's"),
    )
}

/// In the subset automaton of the reversal, `a^i b a^{n-i}` removes exactly
/// state `i` (counting from 1) from every reachable subset containing it.
fn removal_identity(l: &AnyAutomaton, n: usize) -> Check {
    let rev = reverse_nfa(&l.to_nfa()).automaton;
    let sub = determinize_with_subsets(&rev);
    for s in &sub.subsets {
        for i in 1..=n {
            if !s.contains(i - 1) {
                continue;
            }
            let word = cat(&[&pow(A, i), &[B], &pow(A, n - i)]);
            let mut want: StateSet = s.clone();
            want.remove(i - 1);
            let got = rev.run_from(s, &word);
            if got != want {
                return Check::new(
                    "removal identity",
                    false,
                    format!("{s} on a^{i} b a^{} gives {got}, want {want}", n - i),
                );
            }
        }
    }
    Check::new(
        "removal identity",
        true,
        format!("checked on {} reachable subsets", sub.subsets.len()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witnesses::{make_witness, WitnessSpec};

    fn report(family: Family, m: usize, n: usize) -> WitnessReport {
        let w = make_witness(WitnessSpec::new(family, m, n).unwrap()).unwrap();
        validate_witness(&w).unwrap()
    }

    #[test]
    fn complement_nsc_four() {
        let r = report(Family::ComplementNsc, 0, 4);
        assert!(r.passed(), "{r}");
        assert_eq!(r.outcomes[0].achieved, 16);
    }

    #[test]
    fn prop3_five() {
        let r = report(Family::StarProp3, 0, 5);
        assert!(r.passed(), "{r}");
        assert_eq!(r.outcomes[0].achieved, 2);
    }

    #[test]
    fn reversal_isc_five() {
        let r = report(Family::ReversalIsc, 0, 5);
        assert!(r.passed(), "{r}");
        assert_eq!(r.outcomes[0].achieved, 31);
    }

    #[test]
    fn concat_isc_three_three() {
        let r = report(Family::ConcatIsc, 3, 3);
        assert!(r.passed(), "{r}");
        assert_eq!(r.outcomes[0].achieved, 19);
    }

    #[test]
    fn broken_witness_is_reported() {
        let mut w = make_witness(WitnessSpec::new(Family::StarReversalNsc, 0, 4).unwrap()).unwrap();
        let mut d = w.automata[0].as_idfa().unwrap();
        d.set_transition(3, B, None);
        w.automata[0] = d.into();
        let r = validate_witness(&w).unwrap();
        assert!(!r.passed());
        assert!(r.failures().any(|c| c.name.contains("aaab in L")));
    }
}
