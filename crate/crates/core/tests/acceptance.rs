//! End-to-end acceptance checks. Runs as a plain binary and prints one
//! PASS/FAIL line per criterion; exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use pclang::bounds::{bound, TheoremId};
use pclang::census::{prop3_check, star_census, CensusOptions};
use pclang::fooling::{check_fooling, search_fooling};
use pclang::ops::{self, Operation};
use pclang::witnesses::{reconstruct_witness, Family, Model, ReconstructOptions, Status};
use pclang::{
    determinize, equivalent, is_prefix_closed, isc, minimize_idfa, sc, Automaton, Idfa, Nfa,
    StateSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_2024;
const CASES: usize = 10_000;

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn new(failures: &[String], summary: String) -> Verdict {
        if failures.is_empty() {
            Verdict { passed: true, detail: summary }
        } else {
            let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
            Verdict {
                passed: false,
                detail: format!("{summary}; {} failure(s): {}", failures.len(), shown.join("; ")),
            }
        }
    }
}

fn census_exactness() -> Verdict {
    let expected: [(usize, &[(usize, usize)], &str); 4] = [
        (2, &[(2, 2)], "2.000"),
        (3, &[(1, 8), (2, 1), (3, 6)], "1.866"),
        (4, &[(1, 161), (2, 1), (3, 48), (4, 30), (5, 6)], "1.857"),
        (
            5,
            &[(1, 4177), (2, 1), (3, 771), (4, 275), (5, 350), (6, 84), (7, 84), (8, 0), (9, 26)],
            "1.849",
        ),
    ];
    let mut failures = Vec::new();
    let mut small = Duration::ZERO;
    let mut large = Duration::ZERO;
    let mut rounded_matches = true;
    for (n, row, avg) in expected {
        let opts = CensusOptions { parallel: n < 5, ..CensusOptions::default() };
        let start = Instant::now();
        let table = match star_census(n, &opts) {
            Ok(t) => t,
            Err(e) => {
                failures.push(format!("n={n}: {e}"));
                continue;
            }
        };
        if n <= 4 {
            small += start.elapsed();
        } else {
            large = start.elapsed();
        }
        let want: BTreeMap<usize, usize> = row.iter().copied().filter(|&(_, c)| c > 0).collect();
        if table.frequencies != want {
            failures.push(format!("n={n}: got {:?}", table.frequencies));
        }
        let dense = table.dense();
        if !row.iter().all(|cell| dense.contains(cell)) {
            failures.push(format!("n={n}: dense row {dense:?}"));
        }
        if table.average_truncated() != avg {
            failures.push(format!("n={n}: truncated average {}", table.average_truncated()));
        }
        rounded_matches &= table.average_rounded() == avg;
    }
    if small >= Duration::from_secs(10) {
        failures.push(format!("n<=4 took {small:?}"));
    }
    if large >= Duration::from_secs(600) {
        failures.push(format!("n=5 single-threaded took {large:?}"));
    }
    Verdict::new(
        &failures,
        format!(
            "rows n=2..5 exact, averages by truncation (rounding also matches: {rounded_matches}), n<=4 {:.2}s, n=5 serial {:.2}s",
            small.as_secs_f64(),
            large.as_secs_f64()
        ),
    )
}

fn theorem_cells(operation: Operation, model: Model) -> Vec<(usize, usize)> {
    let binary = |lo: usize| -> Vec<(usize, usize)> {
        (lo..=5).flat_map(|m| (lo..=5).map(move |n| (m, n))).collect()
    };
    let unary = |lo: usize, hi: usize| -> Vec<(usize, usize)> { (lo..=hi).map(|n| (0, n)).collect() };
    match (operation, model) {
        (Operation::Intersection, _) => binary(2),
        (Operation::Union, _) => binary(2),
        (Operation::Concatenation, _) => binary(3),
        (Operation::Star, Model::Isc) => unary(4, 8),
        (Operation::Star, _) => unary(1, 8),
        (Operation::Reversal, _) => unary(2, 8),
        (Operation::Complement, Model::Isc) => unary(1, 8),
        (Operation::Complement, _) => unary(2, 8),
    }
}

fn expected_size(operation: Operation, model: Model, m: usize, n: usize) -> usize {
    match (operation, model) {
        (Operation::Complement, Model::Isc) => n + 1,
        (Operation::Complement, _) => 1 << n,
        (Operation::Intersection, _) => m * n,
        (Operation::Union, Model::Isc) => m * n + m + n,
        (Operation::Union, _) => m + n + 1,
        (Operation::Concatenation, Model::Isc) => m * (1 << (n - 1)) + (1 << n) - 1,
        (Operation::Concatenation, _) => m + n,
        (Operation::Star, Model::Isc) => 1 << (n - 1),
        (Operation::Star, _) => n,
        (Operation::Reversal, Model::Isc) => (1 << n) - 1,
        (Operation::Reversal, _) => n + 1,
    }
}

fn tightness_grid(model: Model, cell_limit: Option<Duration>, total_limit: Option<Duration>) -> Verdict {
    let mut failures = Vec::new();
    let mut cells = 0;
    let start = Instant::now();
    for operation in Operation::ALL {
        let theorem = TheoremId { operation, model };
        for (m, n) in theorem_cells(operation, model) {
            cells += 1;
            let want = expected_size(operation, model, m, n);
            let t = Instant::now();
            match bound(theorem, m, n) {
                Ok(r) => {
                    if r.status != Status::Tight || r.achieved != want || r.upper != want {
                        failures.push(format!(
                            "{theorem} m={m} n={n}: achieved {} want {want} ({})",
                            r.achieved, r.status
                        ));
                    }
                    if model == Model::Nsc && r.construction_states != want {
                        failures.push(format!(
                            "{theorem} m={m} n={n}: construction has {} states",
                            r.construction_states
                        ));
                    }
                }
                Err(e) => failures.push(format!("{theorem} m={m} n={n}: {e}")),
            }
            if let Some(limit) = cell_limit {
                if t.elapsed() >= limit {
                    failures.push(format!("{theorem} m={m} n={n} took {:?}", t.elapsed()));
                }
            }
        }
    }
    let total = start.elapsed();
    if let Some(limit) = total_limit {
        if total >= limit {
            failures.push(format!("grid took {total:?}"));
        }
    }
    Verdict::new(&failures, format!("{cells} cells exact in {:.2}s", total.as_secs_f64()))
}

fn proposition_three() -> Verdict {
    let mut failures = Vec::new();
    for n in 3..=6 {
        match prop3_check(n) {
            Ok(found) if found.len() == 1 => {
                let d = &found[0];
                let star = ops::star_nfa(&d.without_dead_states().to_nfa())
                    .expect("all-final trim")
                    .automaton;
                let is_loop = (0..d.alphabet().len()).any(|sym| {
                    let mut l = Idfa::new(d.alphabet().clone(), 1);
                    l.set_initial(0);
                    l.set_final(0, true);
                    l.set_transition(0, sym, Some(0));
                    equivalent(&star, &l).unwrap_or(false)
                });
                if !is_loop {
                    failures.push(format!("n={n}: star is not a one-letter loop"));
                }
            }
            Ok(found) => failures.push(format!("n={n}: {} languages", found.len())),
            Err(e) => failures.push(format!("n={n}: {e}")),
        }
    }
    Verdict::new(&failures, "n=3..6 each give one language with star b* up to renaming".into())
}

/// Walks every word up to `max_len`, simulating the NFA by subsets and the
/// DFA by states side by side.
fn agrees_up_to(nfa: &Nfa, dfa: &Idfa, max_len: usize) -> bool {
    fn walk(nfa: &Nfa, dfa: &Idfa, set: &StateSet, q: Option<usize>, depth: usize) -> bool {
        let nfa_accepts = set.intersects(nfa.finals());
        let dfa_accepts = q.is_some_and(|q| dfa.is_final(q));
        if nfa_accepts != dfa_accepts {
            return false;
        }
        if depth == 0 {
            return true;
        }
        (0..nfa.alphabet().len()).all(|sym| {
            let next = nfa.step(set, sym);
            let dq = q.and_then(|q| dfa.next(q, sym));
            walk(nfa, dfa, &next, dq, depth - 1)
        })
    }
    walk(nfa, dfa, nfa.initial(), dfa.initial(), max_len)
}

fn property_suites() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    let mut fooling_checks = 0usize;

    for case in 0..CASES {
        let k = rng.gen_range(1..=3);
        let (m, n) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let left = common::random_idfa(&mut rng, m, k, true).trim();
        let right = common::random_idfa(&mut rng, n, k, true).trim();
        let (ln, rn) = (left.to_nfa(), right.to_nfa());
        let built: Vec<(&str, Vec<(Box<dyn Automaton>, usize)>)> = vec![
            (
                "intersection",
                vec![
                    boxed(ops::intersect_idfa(&left, &right).unwrap().automaton),
                    boxed(ops::intersect_nfa(&ln, &rn).unwrap().automaton),
                ],
            ),
            (
                "union",
                vec![
                    boxed(ops::union_idfa(&left, &right).unwrap().automaton),
                    boxed(ops::union_nfa(&ln, &rn).unwrap().automaton),
                ],
            ),
            (
                "concatenation",
                vec![
                    boxed(ops::concat_nfa(&ln, &rn).unwrap().automaton),
                    boxed(ops::concat_nfa_single_initial(&ln, &rn).unwrap().automaton),
                ],
            ),
            ("star", vec![boxed(ops::star_nfa(&ln).unwrap().automaton)]),
        ];
        for (name, results) in &built {
            for (a, _) in results {
                if !is_prefix_closed(a.as_ref()) {
                    failures.push(format!("case {case}: {name} not prefix-closed"));
                }
            }
            let (first, _) = &results[0];
            let found = search_fooling(first.as_ref(), 16, 3, 2_000).expect("search");
            for (a, states) in results {
                fooling_checks += 1;
                match check_fooling(a.as_ref(), &found.certificate) {
                    Ok(v) if v.is_valid() && v.bound <= *states => {}
                    Ok(v) => failures.push(format!(
                        "case {case}: {name} fooling bound {} vs {states} states (valid: {})",
                        v.bound,
                        v.is_valid()
                    )),
                    Err(e) => failures.push(format!("case {case}: {name}: {e}")),
                }
            }
        }

        let nfa = common::random_nfa(&mut rng, 5, 3);
        let min = minimize_idfa(&determinize(&nfa));
        if !agrees_up_to(&nfa, &min, 8) {
            failures.push(format!("case {case}: minimized DFA disagrees with the NFA"));
        }

        let (n, k) = (rng.gen_range(1..=5), rng.gen_range(1..=3));
        let d = common::random_idfa(&mut rng, n, k, false);
        let (i, s) = (isc(&d), sc(&d));
        if i > 0 && !(s == i || s == i + 1) {
            failures.push(format!("case {case}: isc {i} sc {s}"));
        }
    }
    Verdict::new(
        &failures,
        format!("{CASES} cases per suite, seed {SEED:#x}, {fooling_checks} fooling checks"),
    )
}

fn boxed<A: Automaton + 'static>(a: A) -> (Box<dyn Automaton>, usize) {
    let states = a.num_states();
    (Box::new(a), states)
}

fn reconstruction_gate() -> Verdict {
    let mut failures = Vec::new();
    let mut cells = 0;
    let opts = ReconstructOptions::default();
    for family in Family::RECONSTRUCTED {
        let (min_m, min_n) = family.min_params();
        let ns: Vec<usize> = match family {
            Family::ReversalIsc | Family::StarReversalNsc => (min_n.max(1)..=8).collect(),
            _ => (min_n.max(2)..=5).collect(),
        };
        let ms: Vec<usize> = if family.is_binary() { (min_m.max(2)..=5).collect() } else { vec![0] };
        for &m in &ms {
            for &n in &ns {
                cells += 1;
                match reconstruct_witness(family, m, n, &opts) {
                    Ok(r) if r.report.passed() => {}
                    Ok(r) => failures.push(format!("{family} m={m} n={n}: {}", r.report)),
                    Err(e) => failures.push(format!("{family} m={m} n={n}: {e}")),
                }
            }
        }
    }
    Verdict::new(&failures, format!("{cells} reconstructed instances validate"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 6] = [
        ("census exactness", census_exactness),
        ("isc tightness grid", || tightness_grid(Model::Isc, Some(Duration::from_secs(5)), None)),
        ("nsc certification", || tightness_grid(Model::Nsc, None, Some(Duration::from_secs(120)))),
        ("star complexity two", proposition_three),
        ("randomized property suites", property_suites),
        ("reconstruction gate", reconstruction_gate),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        all &= verdict.passed;
        println!(
            "{} criterion {} ({name}): {} [{:.1}s]",
            if verdict.passed { "PASS" } else { "FAIL" },
            i + 1,
            verdict.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
