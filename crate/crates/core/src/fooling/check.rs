use std::fmt;

use super::certificate::{FoolingCertificate, Pair};
use crate::alphabet::Symbol;
use crate::analysis::minimal_cdfa;
use crate::automaton::{Automaton, Cdfa, StateId};
use crate::error::{Error, Result};

/// Answers `xy ∈ L` queries through the minimal complete DFA of `L`.
#[derive(Clone, Debug)]
pub struct MembershipOracle {
    dfa: Cdfa,
}

impl MembershipOracle {
    pub fn new(lang: &(impl Automaton + ?Sized)) -> Self {
        MembershipOracle {
            dfa: minimal_cdfa(lang),
        }
    }

    pub fn dfa(&self) -> &Cdfa {
        &self.dfa
    }

    pub fn state_after(&self, x: &[Symbol]) -> StateId {
        self.dfa.run_from(self.dfa.initial(), x)
    }

    pub fn accepts_from(&self, q: StateId, y: &[Symbol]) -> bool {
        self.dfa.is_final(self.dfa.run_from(q, y))
    }

    pub fn accepts(&self, x: &[Symbol], y: &[Symbol]) -> bool {
        self.accepts_from(self.state_after(x), y)
    }
}

/// Which family of pairs a violation was found in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PairSet {
    /// All pairs (`A ∪ B` for extended certificates).
    All,
    /// `A ∪ {(ε, u)}`; index `|A|` is the pair `(ε, u)`.
    AWithU,
    /// `B ∪ {(ε, v)}`; index `|B|` is the pair `(ε, v)`.
    BWithV,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ViolationKind {
    F1 { index: usize },
    F2 { i: usize, j: usize },
    ClaimMismatch { claimed: usize, supported: usize },
    MissingSplit,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Violation {
    pub set: PairSet,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = match self.set {
            PairSet::All => "pairs",
            PairSet::AWithU => "A+(eps,u)",
            PairSet::BWithV => "B+(eps,v)",
        };
        match self.kind {
            ViolationKind::F1 { index } => write!(f, "F1 fails in {set} at pair {index}"),
            ViolationKind::F2 { i, j } => write!(f, "F2 fails in {set} at pairs {i},{j}"),
            ViolationKind::ClaimMismatch { claimed, supported } => {
                write!(f, "claimed bound {claimed} but the certificate supports {supported}")
            }
            ViolationKind::MissingSplit => write!(f, "certificate has no (A, B, u, v) split"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    /// The lower bound certified when the verdict is valid.
    pub bound: usize,
    pub violation: Option<Violation>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// Returns the first F1 violation by index, otherwise the first F2 violation
/// in lexicographic `(i, j)` order.
fn first_violation(oracle: &MembershipOracle, pairs: &[(&[Symbol], &[Symbol])]) -> Option<ViolationKind> {
    let states: Vec<StateId> = pairs.iter().map(|(x, _)| oracle.state_after(x)).collect();
    if let Some(index) = (0..pairs.len()).find(|&i| !oracle.accepts_from(states[i], pairs[i].1)) {
        return Some(ViolationKind::F1 { index });
    }
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if states[i] == states[j]
                || (oracle.accepts_from(states[i], pairs[j].1)
                    && oracle.accepts_from(states[j], pairs[i].1))
            {
                return Some(ViolationKind::F2 { i, j });
            }
        }
    }
    None
}

fn as_refs(pairs: &[Pair]) -> Vec<(&[Symbol], &[Symbol])> {
    pairs.iter().map(|(x, y)| (x.as_slice(), y.as_slice())).collect()
}

/// Checks the pairs of `cert` as a plain fooling set for `lang`. A valid
/// verdict certifies `nsc(lang) >= |pairs|`. The claimed bound must equal
/// `|pairs|` unless the certificate is extended, in which case the claim is
/// left to [`check_fooling_extended`].
pub fn check_fooling(lang: &(impl Automaton + ?Sized), cert: &FoolingCertificate) -> Result<Verdict> {
    let oracle = MembershipOracle::new(lang);
    check_with(&oracle, cert)
}

pub(crate) fn check_with(oracle: &MembershipOracle, cert: &FoolingCertificate) -> Result<Verdict> {
    check_words(oracle, cert)?;
    let bound = cert.pairs.len();
    let mut violation = first_violation(oracle, &as_refs(&cert.pairs)).map(|kind| Violation {
        set: PairSet::All,
        kind,
    });
    if violation.is_none() && cert.split.is_none() && cert.claimed != bound {
        violation = Some(Violation {
            set: PairSet::All,
            kind: ViolationKind::ClaimMismatch {
                claimed: cert.claimed,
                supported: bound,
            },
        });
    }
    Ok(Verdict { bound, violation })
}

/// Checks an `(A, B, u, v)` certificate. A valid verdict certifies that every
/// NFA with one initial state accepting `lang` has at least `|A| + |B| + 1`
/// states.
pub fn check_fooling_extended(
    lang: &(impl Automaton + ?Sized),
    cert: &FoolingCertificate,
) -> Result<Verdict> {
    let oracle = MembershipOracle::new(lang);
    check_extended_with(&oracle, cert)
}

pub(crate) fn check_extended_with(oracle: &MembershipOracle, cert: &FoolingCertificate) -> Result<Verdict> {
    check_words(oracle, cert)?;
    let Some(split) = &cert.split else {
        return Ok(Verdict {
            bound: cert.pairs.len(),
            violation: Some(Violation {
                set: PairSet::All,
                kind: ViolationKind::MissingSplit,
            }),
        });
    };
    let bound = cert.pairs.len() + 1;
    let eps: &[Symbol] = &[];
    let mut with_u = as_refs(cert.a_pairs());
    with_u.push((eps, &split.u));
    let mut with_v = as_refs(cert.b_pairs());
    with_v.push((eps, &split.v));
    let checks = [
        (PairSet::All, as_refs(&cert.pairs)),
        (PairSet::AWithU, with_u),
        (PairSet::BWithV, with_v),
    ];
    for (set, pairs) in &checks {
        if let Some(kind) = first_violation(oracle, pairs) {
            return Ok(Verdict {
                bound,
                violation: Some(Violation { set: *set, kind }),
            });
        }
    }
    let violation = (cert.claimed != bound).then_some(Violation {
        set: PairSet::All,
        kind: ViolationKind::ClaimMismatch {
            claimed: cert.claimed,
            supported: bound,
        },
    });
    Ok(Verdict { bound, violation })
}

fn check_words(oracle: &MembershipOracle, cert: &FoolingCertificate) -> Result<()> {
    let ab = oracle.dfa().alphabet();
    for (x, y) in &cert.pairs {
        ab.check_word(x)?;
        ab.check_word(y)?;
    }
    if let Some(split) = &cert.split {
        if split.a_len > cert.pairs.len() {
            return Err(Error::InvalidParameters("split point past the last pair".into()));
        }
        ab.check_word(&split.u)?;
        ab.check_word(&split.v)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::tests::unary_prefix;

    #[test]
    fn unary_prefix_set() {
        let lang = unary_prefix(3);
        let a = |i| vec![0; i];
        let good = FoolingCertificate::plain((0..3).map(|i| (a(i), a(2 - i))).collect());
        assert!(check_fooling(&lang, &good).unwrap().is_valid());

        let bad = FoolingCertificate::plain(vec![(a(0), a(2)), (a(1), a(3))]);
        let v = check_fooling(&lang, &bad).unwrap().violation.unwrap();
        assert_eq!(v.kind, ViolationKind::F1 { index: 1 });

        let clash = FoolingCertificate::plain(vec![(a(0), a(1)), (a(1), a(0))]);
        let v = check_fooling(&lang, &clash).unwrap().violation.unwrap();
        assert_eq!(v.kind, ViolationKind::F2 { i: 0, j: 1 });

        let mut overclaim = good.clone();
        overclaim.claimed = 4;
        let v = check_fooling(&lang, &overclaim).unwrap().violation.unwrap();
        assert!(matches!(v.kind, ViolationKind::ClaimMismatch { claimed: 4, supported: 3 }));
    }

    #[test]
    fn empty_certificate_is_valid() {
        let lang = unary_prefix(2);
        let v = check_fooling(&lang, &FoolingCertificate::plain(vec![])).unwrap();
        assert!(v.is_valid());
        assert_eq!(v.bound, 0);
    }

    #[test]
    fn extended_requires_split() {
        let lang = unary_prefix(2);
        let cert = FoolingCertificate::plain(vec![(vec![], vec![])]);
        let v = check_fooling_extended(&lang, &cert).unwrap();
        assert_eq!(v.violation.unwrap().kind, ViolationKind::MissingSplit);
    }

    #[test]
    fn foreign_symbols_are_rejected() {
        let lang = unary_prefix(2);
        let cert = FoolingCertificate::plain(vec![(vec![3], vec![])]);
        assert!(check_fooling(&lang, &cert).is_err());
    }
}
