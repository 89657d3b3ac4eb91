mod common;

use common::{arb_nfa, arb_prefix_closed_pair};
use pclang::fooling::{
    check_fooling, check_fooling_extended, standard_fooling_set, search_fooling,
    search_fooling_extended, FoolingCertificate, FoolingFamily, PairSet, ViolationKind,
};
use pclang::ops;
use pclang::{determinize, isc, Automaton, Nfa, Word};
use proptest::collection::vec;
use proptest::prelude::*;

fn concat(x: &Word, y: &Word) -> Word {
    x.iter().chain(y).copied().collect()
}

fn arb_pairs(k: usize) -> impl Strategy<Value = Vec<(Word, Word)>> {
    let word = vec(0..k, 0..4);
    vec((word.clone(), word), 0..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn found_sets_never_exceed_construction_sizes((k, l) in arb_prefix_closed_pair(4, 2)) {
        let (kn, ln) = (k.to_nfa(), l.to_nfa());
        let built: Vec<(Nfa, bool)> = vec![
            (ops::intersect_nfa(&kn, &ln).unwrap().automaton, true),
            (ops::union_nfa(&kn, &ln).unwrap().automaton, true),
            (ops::concat_nfa(&kn, &ln).unwrap().automaton, false),
            (ops::concat_nfa_single_initial(&kn, &ln).unwrap().automaton, true),
            (ops::star_nfa(&kn).unwrap().automaton, true),
            (ops::reverse_nfa(&kn).automaton, false),
        ];
        for (nfa, single) in &built {
            let found = search_fooling(nfa, 32, 4, 20_000).unwrap();
            let verdict = check_fooling(nfa, &found.certificate).unwrap();
            prop_assert!(verdict.is_valid());
            prop_assert!(verdict.bound <= nfa.num_states());
            prop_assert!(verdict.bound <= isc(nfa).max(1));
            prop_assert!(verdict.bound <= determinize(nfa).num_states().max(1));
            if *single {
                if let Ok(ext) = search_fooling_extended(nfa, 32, 4, 20_000) {
                    let v = check_fooling_extended(nfa, &ext.certificate).unwrap();
                    prop_assert!(v.is_valid());
                    prop_assert!(v.bound <= nfa.num_states());
                }
            }
        }
    }

    #[test]
    fn violations_recheck_by_simulation(
        (a, pairs) in arb_nfa(4, 2).prop_flat_map(|a| {
            let k = a.alphabet().len();
            (Just(a), arb_pairs(k))
        })
    ) {
        let cert = FoolingCertificate::plain(pairs.clone());
        let verdict = check_fooling(&a, &cert).unwrap();
        match verdict.violation {
            None => {
                for (i, (x, y)) in pairs.iter().enumerate() {
                    prop_assert!(a.accepts(&concat(x, y)).unwrap());
                    for (xj, yj) in &pairs[i + 1..] {
                        prop_assert!(
                            !a.accepts(&concat(x, yj)).unwrap() || !a.accepts(&concat(xj, y)).unwrap()
                        );
                    }
                }
            }
            Some(v) => {
                prop_assert_eq!(v.set, PairSet::All);
                match v.kind {
                    ViolationKind::F1 { index } => {
                        let (x, y) = &pairs[index];
                        prop_assert!(!a.accepts(&concat(x, y)).unwrap());
                    }
                    ViolationKind::F2 { i, j } => {
                        prop_assert!(i != j);
                        let (xi, yi) = &pairs[i];
                        let (xj, yj) = &pairs[j];
                        prop_assert!(a.accepts(&concat(xi, yj)).unwrap());
                        prop_assert!(a.accepts(&concat(xj, yi)).unwrap());
                    }
                    other => prop_assert!(false, "unexpected {other:?}"),
                }
            }
        }
    }
}

#[test]
fn standard_sets_validate_on_their_grids() {
    use pclang::bounds::{bound, TheoremId};
    use pclang::witnesses::{Model, Status};
    let mut cells = 0;
    for family in FoolingFamily::ALL {
        let (min_m, min_n) = family.min_params();
        let max_n = if family == FoolingFamily::Complement { 8 } else { 6 };
        let ms: Vec<usize> = if family.is_binary() { (min_m.max(2)..=6).collect() } else { vec![0] };
        for m in ms {
            for n in min_n.max(2)..=max_n {
                let cert = standard_fooling_set(family, m, n).unwrap();
                assert_eq!(cert.structural_bound(), cert.claimed);
                cells += 1;
                let op: pclang::ops::Operation = family.name().trim_end_matches("-nsc").parse().unwrap();
                let report = bound(TheoremId { operation: op, model: Model::Nsc }, m, n).unwrap();
                assert_eq!(report.status, Status::Tight, "{family} m={m} n={n}: {report}");
            }
        }
    }
    assert_eq!(cells, 7 + 25 + 25 + 16 + 5 + 5);
}
