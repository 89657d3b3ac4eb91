//! Randomized consistency checks behind `pclang random`.

use anyhow::Result;
use pclang::fooling::{check_fooling, search_fooling};
use pclang::ops;
use pclang::{is_prefix_closed, isc, minimal_idfa, sc, Alphabet, Automaton, Idfa, Nfa};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::output::{record, Format, Outcome};

const ROUNDTRIP_LEN: usize = 6;

fn random_idfa(rng: &mut ChaCha8Rng, max_states: usize, k: usize, all_final: bool) -> Idfa {
    let n = rng.gen_range(1..=max_states);
    let mut d = Idfa::new(Alphabet::letters(k), n);
    d.set_initial(0);
    for q in 0..n {
        for sym in 0..k {
            let to = rng.gen_range(0..=n);
            d.set_transition(q, sym, (to < n).then_some(to));
        }
        d.set_final(q, all_final || rng.gen_bool(0.5));
    }
    d
}

fn random_nfa(rng: &mut ChaCha8Rng, max_states: usize, k: usize) -> Nfa {
    let n = rng.gen_range(1..=max_states);
    let mut a = Nfa::new(Alphabet::letters(k), n);
    for q in 0..n {
        if rng.gen_bool(0.4) {
            a.add_initial(q);
        }
        a.set_final(q, rng.gen_bool(0.5));
        for sym in 0..k {
            for to in 0..n {
                if rng.gen_bool(0.3) {
                    a.add_transition(q, sym, to);
                }
            }
        }
    }
    a
}

#[derive(Default)]
struct Tally {
    name: &'static str,
    cases: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Tally {
        Tally {
            name,
            ..Tally::default()
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            self.first_failure.get_or_insert_with(detail);
        }
    }
}

pub fn run(cases: usize, seed: u64, max_states: usize, max_symbols: usize, format: Format) -> Result<Outcome> {
    if max_states == 0 || max_symbols == 0 {
        return Err(pclang::Error::InvalidParameters("--max-states and --max-symbols must be positive".into()).into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut closure = Tally::new("prefix-closed-ops");
    let mut roundtrip = Tally::new("minimize-roundtrip");
    let mut gap = Tally::new("sc-isc-gap");
    let mut fooling = Tally::new("fooling-soundness");

    for case in 0..cases {
        let k = rng.gen_range(1..=max_symbols);
        let left = random_idfa(&mut rng, max_states, k, true).to_nfa();
        let right = random_idfa(&mut rng, max_states, k, true).to_nfa();
        let results = [
            ops::intersect_nfa(&left, &right)?.automaton,
            ops::union_nfa(&left, &right)?.automaton,
            ops::concat_nfa(&left, &right)?.automaton,
            ops::star_nfa(&left)?.automaton,
        ];
        closure.record(results.iter().all(is_prefix_closed), || format!("case {case}"));

        let nfa = random_nfa(&mut rng, max_states, k);
        let min = minimal_idfa(&nfa);
        let ab = nfa.alphabet().clone();
        let agree = ab
            .words_up_to(ROUNDTRIP_LEN)
            .all(|w| nfa.accepts_unchecked(&w) == min.accepts_unchecked(&w));
        roundtrip.record(agree, || format!("case {case}"));

        let d = random_idfa(&mut rng, max_states, k, false);
        let i = isc(&d);
        if i > 0 {
            let s = sc(&d);
            gap.record(s == i || s == i + 1, || format!("case {case}: isc={i} sc={s}"));
        }

        let found = search_fooling(&left, 16, 4, 20_000)?;
        let verdict = check_fooling(&left, &found.certificate)?;
        fooling.record(
            verdict.is_valid() && verdict.bound <= left.num_states(),
            || format!("case {case}: bound {} over {} states", verdict.bound, left.num_states()),
        );
    }

    let mut passed = true;
    for t in [closure, roundtrip, gap, fooling] {
        passed &= t.failures == 0;
        let mut pairs = vec![
            ("check", t.name.to_string()),
            ("cases", t.cases.to_string()),
            ("failures", t.failures.to_string()),
        ];
        if let Some(first) = t.first_failure {
            pairs.push(("first_failure", first));
        }
        println!("{}", record(format, &pairs)?);
    }
    Ok(Outcome::from_passed(passed))
}
