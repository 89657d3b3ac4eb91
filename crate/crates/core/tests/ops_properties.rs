mod common;

use std::collections::BTreeSet;

use common::{
    all_words, arb_nfa, arb_prefix_closed, arb_prefix_closed_pair, concat_words, language,
    reverse_words, star_words,
};
use pclang::ops::{self, check_concat_subsets, check_star_subsets, Operation};
use pclang::{determinize_with_subsets, equivalent, is_prefix_closed, Automaton, Idfa, Word};
use proptest::prelude::*;

fn oracle_len(m: usize, n: usize) -> usize {
    (m + n + 2).min(7)
}

fn complement_words(l: &BTreeSet<Word>, a: &Idfa, len: usize) -> BTreeSet<Word> {
    all_words(a.alphabet(), len).difference(l).cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(192))]

    #[test]
    fn constructions_preserve_prefix_closedness((k, l) in arb_prefix_closed_pair(5, 3)) {
        let (kn, ln) = (k.to_nfa(), l.to_nfa());
        prop_assert!(is_prefix_closed(&ops::intersect_idfa(&k, &l).unwrap().automaton));
        prop_assert!(is_prefix_closed(&ops::union_idfa(&k, &l).unwrap().automaton));
        prop_assert!(is_prefix_closed(&ops::intersect_nfa(&kn, &ln).unwrap().automaton));
        prop_assert!(is_prefix_closed(&ops::union_nfa(&kn, &ln).unwrap().automaton));
        prop_assert!(is_prefix_closed(&ops::concat_nfa(&kn, &ln).unwrap().automaton));
        prop_assert!(is_prefix_closed(&ops::concat_nfa_single_initial(&kn, &ln).unwrap().automaton));
        prop_assert!(is_prefix_closed(&ops::star_nfa(&kn).unwrap().automaton));
    }

    #[test]
    fn binary_constructions_match_enumeration((k, l) in arb_prefix_closed_pair(4, 2)) {
        let len = oracle_len(k.num_states(), l.num_states());
        let (lk, ll) = (language(&k, len), language(&l, len));
        let (kn, ln) = (k.to_nfa(), l.to_nfa());
        let meet: BTreeSet<Word> = lk.intersection(&ll).cloned().collect();
        let join: BTreeSet<Word> = lk.union(&ll).cloned().collect();
        let cat = concat_words(&lk, &ll, len);

        prop_assert_eq!(&language(&ops::intersect_idfa(&k, &l).unwrap().automaton, len), &meet);
        prop_assert_eq!(&language(&ops::intersect_nfa(&kn, &ln).unwrap().automaton, len), &meet);
        prop_assert_eq!(&language(&ops::union_idfa(&k, &l).unwrap().automaton, len), &join);
        prop_assert_eq!(&language(&ops::union_nfa(&kn, &ln).unwrap().automaton, len), &join);
        prop_assert_eq!(&language(&ops::concat_nfa(&kn, &ln).unwrap().automaton, len), &cat);
        prop_assert_eq!(
            &language(&ops::concat_nfa_single_initial(&kn, &ln).unwrap().automaton, len),
            &cat
        );
    }

    #[test]
    fn unary_constructions_match_enumeration(k in arb_prefix_closed(5, 2)) {
        let len = oracle_len(k.num_states(), 0);
        let lk = language(&k, len);
        let kn = k.to_nfa();
        let co = complement_words(&lk, &k, len);
        prop_assert_eq!(&language(&ops::complement_idfa(&k).automaton, len), &co);
        prop_assert_eq!(&language(&ops::complement_nfa(&kn).automaton, len), &co);
        prop_assert_eq!(language(&ops::star_nfa(&kn).unwrap().automaton, len), star_words(&lk, len));
        prop_assert_eq!(language(&ops::reverse_nfa(&kn).automaton, len), reverse_words(&lk));
    }

    #[test]
    fn nfa_complement_and_reversal_on_arbitrary_languages(a in arb_nfa(4, 2)) {
        let len = 6;
        let la = language(&a, len);
        let co: BTreeSet<Word> = all_words(a.alphabet(), len).difference(&la).cloned().collect();
        prop_assert_eq!(language(&ops::complement_nfa(&a).automaton, len), co);
        prop_assert_eq!(language(&ops::reverse_nfa(&a).automaton, len), reverse_words(&la));
        let twice = ops::reverse_nfa(&ops::reverse_nfa(&a).automaton).automaton;
        prop_assert!(equivalent(&a, &twice).unwrap());
    }

    #[test]
    fn constructions_respect_their_bounds((k, l) in arb_prefix_closed_pair(6, 2)) {
        let (kn, ln) = (k.to_nfa(), l.to_nfa());
        let (m, n) = (k.num_states(), l.num_states());
        let r = ops::complement_idfa(&l);
        prop_assert!(r.construction_states <= r.upper_bound);
        prop_assert_eq!(r.upper_bound, Operation::Complement.isc_bound(0, n));
        let r = ops::intersect_idfa(&k, &l).unwrap();
        prop_assert!(r.construction_states <= r.upper_bound);
        let r = ops::union_idfa(&k, &l).unwrap();
        prop_assert!(r.construction_states <= r.upper_bound);
        let r = ops::complement_nfa(&ln);
        prop_assert!(r.construction_states <= r.upper_bound);
        for r in [
            ops::intersect_nfa(&kn, &ln).unwrap(),
            ops::union_nfa(&kn, &ln).unwrap(),
            ops::concat_nfa(&kn, &ln).unwrap(),
            ops::star_nfa(&ln).unwrap(),
            ops::reverse_nfa(&ln),
        ] {
            prop_assert!(r.construction_states <= r.upper_bound);
        }

        let sub = determinize_with_subsets(&ops::concat_nfa(&kn, &ln).unwrap().automaton);
        prop_assert!(sub.dfa.num_states() <= Operation::Concatenation.isc_bound(m, n));
        let sub = determinize_with_subsets(&ops::star_nfa(&ln).unwrap().automaton);
        prop_assert!(sub.dfa.num_states() <= Operation::Star.isc_bound(0, n).max(1));
        let sub = determinize_with_subsets(&ops::reverse_nfa(&ln).automaton);
        prop_assert!(sub.dfa.num_states() <= Operation::Reversal.isc_bound(0, n));
    }

    #[test]
    fn concat_subsets_have_the_expected_shape((k, l) in arb_prefix_closed_pair(5, 3)) {
        let (kn, ln) = (k.to_nfa(), l.to_nfa());
        let cat = ops::concat_nfa(&kn, &ln).unwrap().automaton;
        let sub = determinize_with_subsets(&cat);
        let right_initial = k.num_states() + ln.initial().first().unwrap();
        prop_assert!(check_concat_subsets(&sub.subsets, k.num_states(), right_initial).is_ok());

        let star = ops::star_nfa(&kn).unwrap().automaton;
        let sub = determinize_with_subsets(&star);
        prop_assert!(check_star_subsets(&sub.subsets, kn.initial().first().unwrap()).is_ok());
    }
}

#[test]
fn palindrome_reverses_to_itself() {
    let ab = pclang::Alphabet::letters(2);
    let mut d = Idfa::new(ab, 4);
    d.set_initial(0);
    d.set_transition(0, 0, Some(1));
    d.set_transition(1, 1, Some(2));
    d.set_transition(2, 0, Some(3));
    d.set_final(3, true);
    let r = ops::reverse_nfa(&d.to_nfa()).automaton;
    assert!(equivalent(&d, &r).unwrap());
}
