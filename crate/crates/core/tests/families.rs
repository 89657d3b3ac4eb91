use pclang::census::{enumerate_class, star_sc, CensusOptions};
use pclang::ops::star_nfa;
use pclang::witnesses::{make_witness, validate_witness, Family, Provenance, WitnessSpec};
use pclang::{canonical_form, equivalent, is_prefix_closed, sc, Automaton, Idfa};

fn grid(family: Family, max: usize) -> Vec<(usize, usize)> {
    let (min_m, min_n) = family.min_params();
    let ns = min_n.max(2)..=max;
    if family.is_binary() {
        ns.flat_map(|n| (min_m.max(2)..=max).map(move |m| (m, n))).collect()
    } else {
        ns.map(|n| (0, n)).collect()
    }
}

#[test]
fn prose_families_validate() {
    for family in Family::ALL.into_iter().filter(|f| f.provenance() == Provenance::Prose) {
        let max = if family == Family::StarProp3 { 5 } else { 6 };
        for (m, n) in grid(family, max) {
            let spec = WitnessSpec::new(family, m, n).unwrap();
            let witness = make_witness(spec).unwrap();
            for a in &witness.automata {
                assert!(is_prefix_closed(a), "{spec}");
                assert_eq!(a.alphabet().len(), family.alphabet_size(), "{spec}");
            }
            let report = validate_witness(&witness).unwrap();
            assert!(report.passed(), "{report}");
        }
    }
}

#[test]
fn reconstructed_families_validate_on_small_grid() {
    for family in Family::RECONSTRUCTED {
        for (m, n) in grid(family, 4) {
            let witness = make_witness(WitnessSpec::new(family, m, n).unwrap()).unwrap();
            let report = validate_witness(&witness).unwrap();
            assert!(report.passed(), "{report}");
        }
    }
}

#[test]
fn enumerated_class_members_are_well_formed() {
    let opts = CensusOptions::default();
    for n in 2..=4 {
        let class = enumerate_class(n, &opts).unwrap();
        let mut forms: Vec<_> = class.iter().map(|d| canonical_form(d, true)).collect();
        forms.dedup();
        assert_eq!(forms.len(), class.len());
        for d in &class {
            assert_eq!(d.num_states(), n);
            assert_eq!(sc(d), n);
            assert_eq!(d.dead_states().len(), 1);
            assert!(!d.is_dead(d.initial()));
            assert!(is_prefix_closed(d));
        }
    }
}

#[test]
fn star_complexity_one_means_everything() {
    let opts = CensusOptions::default();
    for n in 2..=4 {
        for d in enumerate_class(n, &opts).unwrap() {
            let star = star_nfa(&d.without_dead_states().to_nfa()).unwrap().automaton;
            let mut universal = Idfa::new(d.alphabet().clone(), 1);
            universal.set_initial(0);
            universal.set_final(0, true);
            for a in 0..d.alphabet().len() {
                universal.set_transition(0, a, Some(0));
            }
            assert_eq!(star_sc(&d) == 1, equivalent(&star, &universal).unwrap());
        }
    }
}
