use std::collections::VecDeque;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use pclang::bounds::{bound, TheoremId};
use pclang::census::{star_census, CensusOptions, CensusTable};
use pclang::fooling::{
    check_fooling, check_fooling_extended, standard_fooling_set, parse_certificate, search_fooling,
    search_fooling_extended, write_certificate, FoolingCertificate, FoolingFamily, Verdict,
};
use pclang::format::{parse_automaton, to_dot, write_automaton, AnyAutomaton, Kind};
use pclang::ops::{self, Operation};
use pclang::witnesses::{
    make_witness, reconstruct_witness, validate_witness, Family, Provenance, ReconstructOptions,
    Status, WitnessSpec, DEFAULT_BUDGET,
};
use pclang::{determinize, is_prefix_closed, isc, minimal_cdfa, sc, Alphabet, Automaton, Error};

use crate::output::{self, record, Format, Outcome};
use crate::{harness, Command, FoolingAction};

pub fn run(command: Command, format: Format) -> Result<Outcome> {
    match command {
        Command::Ops {
            operation,
            inputs,
            nfa,
            out,
            emit_dot,
        } => cmd_ops(&operation, &inputs, nfa, out.as_deref(), emit_dot.as_deref(), format),
        Command::Bound { theorem, params } => cmd_bound(&theorem, &params, format),
        Command::Fooling { action } => match action {
            FoolingAction::Check {
                language,
                certificate,
            } => cmd_fooling_check(&language, &certificate, format),
            FoolingAction::Search {
                language,
                max_pairs,
                max_len,
                extended,
                budget,
                out,
            } => cmd_fooling_search(&language, max_pairs, max_len, extended, budget, out.as_deref(), format),
            FoolingAction::Emit { family, m, n, out } => {
                cmd_fooling_emit(&family, m, n, out.as_deref(), format)
            }
        },
        Command::Witness {
            family,
            m,
            n,
            emit,
            validate,
            budget,
            no_seeds,
            emit_dot,
        } => cmd_witness(&family, m, n, emit.as_deref(), validate, budget, no_seeds, emit_dot.as_deref(), format),
        Command::Census {
            n,
            k,
            no_alphabet_perm,
            serial,
            out,
        } => cmd_census(n, k, !no_alphabet_perm, !serial, out.as_deref(), format),
        Command::Complexity { input } => cmd_complexity(&input, format),
        Command::CheckPrefixClosed { input } => cmd_check_prefix_closed(&input, format),
        Command::Random {
            cases,
            seed,
            max_states,
            max_symbols,
        } => harness::run(cases, seed, max_states, max_symbols, format),
    }
}

fn load(path: &Path) -> Result<AnyAutomaton> {
    let text = output::read(path)?;
    parse_automaton(&text).with_context(|| format!("in {}", path.display()))
}

fn emit(text: &str, summary: &str, format: Format) {
    match format {
        Format::Text => {
            if !text.is_empty() {
                println!("{}", text.trim_end());
            }
            println!("{summary}");
        }
        _ => println!("{summary}"),
    }
}

fn cmd_ops(
    name: &str,
    inputs: &[PathBuf],
    force_nfa: bool,
    out: Option<&Path>,
    emit_dot: Option<&Path>,
    format: Format,
) -> Result<Outcome> {
    let op: Operation = name.parse()?;
    let arity = if op.is_binary() { 2 } else { 1 };
    if inputs.len() != arity {
        return Err(Error::InvalidParameters(format!(
            "{op} takes {arity} input file(s), got {}",
            inputs.len()
        ))
        .into());
    }
    let autos = inputs.iter().map(|p| load(p)).collect::<Result<Vec<_>>>()?;
    let deterministic = !force_nfa && autos.iter().all(|a| a.kind() != Kind::Nfa);
    let nfas: Vec<_> = autos.iter().map(|a| a.to_nfa()).collect();
    let idfa = |i: usize| autos[i].as_idfa().expect("deterministic input");

    let (result, construction_states, upper): (AnyAutomaton, usize, usize) = match (op, deterministic) {
        (Operation::Complement, true) => {
            let r = ops::complement_idfa(&idfa(0));
            (r.automaton.into(), r.construction_states, r.upper_bound)
        }
        (Operation::Complement, false) => {
            let r = ops::complement_nfa(&nfas[0]);
            (r.automaton.into(), r.construction_states, r.upper_bound)
        }
        (Operation::Intersection, true) => {
            let r = ops::intersect_idfa(&idfa(0), &idfa(1))?;
            (r.automaton.into(), r.construction_states, r.upper_bound)
        }
        (Operation::Intersection, false) => {
            let r = ops::intersect_nfa(&nfas[0], &nfas[1])?;
            (r.automaton.into(), r.construction_states, r.upper_bound)
        }
        (Operation::Union, true) => {
            let r = ops::union_idfa(&idfa(0), &idfa(1))?;
            (r.automaton.into(), r.construction_states, r.upper_bound)
        }
        (Operation::Union, false) => {
            let r = ops::union_nfa(&nfas[0], &nfas[1])?;
            (r.automaton.into(), r.construction_states, r.upper_bound)
        }
        (op, det) => {
            let r = match op {
                Operation::Concatenation => ops::concat_nfa(&nfas[0], &nfas[1])?,
                Operation::Star => ops::star_nfa(&nfas[0])?,
                _ => ops::reverse_nfa(&nfas[0]),
            };
            if det {
                let d = determinize(&r.automaton);
                let sizes: Vec<usize> = autos.iter().map(|a| a.num_states()).collect();
                let upper = op.isc_bound(sizes[0], *sizes.last().expect("one input"));
                let states = d.num_states();
                (d.into(), states, upper)
            } else {
                (r.automaton.into(), r.construction_states, r.upper_bound)
            }
        }
    };

    let text = write_automaton(&result);
    if let Some(path) = out {
        output::write(path, &text)?;
    }
    if let Some(path) = emit_dot {
        output::write(path, &to_dot(&result))?;
    }
    let pairs = [
        ("operation", op.name().to_string()),
        ("kind", result.kind().to_string()),
        ("construction_states", construction_states.to_string()),
        ("upper_bound", upper.to_string()),
        ("isc", isc(&result).to_string()),
        ("sc", sc(&result).to_string()),
    ];
    let body = if out.is_none() { text } else { String::new() };
    emit(&body, &record(format, &pairs)?, format);
    Ok(Outcome::Success)
}

fn cmd_bound(theorem: &str, params: &[usize], format: Format) -> Result<Outcome> {
    let theorem: TheoremId = theorem.parse()?;
    let (m, n) = match (theorem.is_binary(), params) {
        (true, [m, n]) => (*m, *n),
        (false, [n]) => (0, *n),
        (true, _) => bail!(Error::InvalidParameters(format!("{theorem} takes two parameters m n"))),
        (false, _) => bail!(Error::InvalidParameters(format!("{theorem} takes one parameter n"))),
    };
    let report = bound(theorem, m, n)?;
    let mut pairs = vec![("theorem", theorem.to_string())];
    if theorem.is_binary() {
        pairs.push(("m", m.to_string()));
    }
    pairs.extend([
        ("n", n.to_string()),
        ("model", theorem.model.to_string()),
        ("upper", report.upper.to_string()),
        ("achieved", report.achieved.to_string()),
        ("construction", report.construction_states.to_string()),
        ("status", report.status.to_string()),
    ]);
    emit(&report.to_string(), &record(format, &pairs)?, format);
    Ok(Outcome::from_passed(report.status == Status::Tight))
}

fn describe_verdict(verdict: &Verdict, cert: &FoolingCertificate, alphabet: &Alphabet) -> String {
    match &verdict.violation {
        None if verdict.bound == 0 => "valid, bound 0".to_string(),
        None if cert.split.is_some() => format!(
            "valid, nsc >= {} for automata with a single initial state",
            verdict.bound
        ),
        None => format!("valid, nsc >= {}", verdict.bound),
        Some(v) => {
            let mut s = format!("invalid: {v}");
            let show = |s: &mut String, label: &str, i: usize| {
                if let Some((x, y)) = cert.pairs.get(i) {
                    let _ = write!(s, "\n  {label} {i}: ({}, {})", alphabet.spell(x), alphabet.spell(y));
                }
            };
            if let pclang::fooling::ViolationKind::F1 { index } = v.kind {
                if v.set == pclang::fooling::PairSet::All {
                    show(&mut s, "pair", index);
                }
            }
            if let pclang::fooling::ViolationKind::F2 { i, j } = v.kind {
                if v.set == pclang::fooling::PairSet::All {
                    show(&mut s, "pair", i);
                    show(&mut s, "pair", j);
                }
            }
            s
        }
    }
}

fn cmd_fooling_check(language: &Path, certificate: &Path, format: Format) -> Result<Outcome> {
    let lang = load(language)?;
    let cert = parse_certificate(&output::read(certificate)?, lang.alphabet())
        .with_context(|| format!("in {}", certificate.display()))?;
    let verdict = if cert.split.is_some() {
        check_fooling_extended(&lang, &cert)?
    } else {
        check_fooling(&lang, &cert)?
    };
    let kind = if cert.split.is_some() { "extended" } else { "plain" };
    let pairs = [
        ("verdict", if verdict.is_valid() { "valid" } else { "invalid" }.to_string()),
        ("kind", kind.to_string()),
        ("pairs", cert.pairs.len().to_string()),
        ("bound", verdict.bound.to_string()),
        (
            "violation",
            verdict.violation.map_or("none".to_string(), |v| format!("{:?}", v.kind)),
        ),
    ];
    emit(
        &describe_verdict(&verdict, &cert, lang.alphabet()),
        &record(format, &pairs)?,
        format,
    );
    Ok(Outcome::from_passed(verdict.is_valid()))
}

fn cmd_fooling_search(
    language: &Path,
    max_pairs: usize,
    max_len: usize,
    extended: bool,
    budget: u64,
    out: Option<&Path>,
    format: Format,
) -> Result<Outcome> {
    let lang = load(language)?;
    let found = if extended {
        search_fooling_extended(&lang, max_pairs, max_len, budget)?
    } else {
        search_fooling(&lang, max_pairs, max_len, budget)?
    };
    let text = write_certificate(&found.certificate, lang.alphabet());
    if let Some(path) = out {
        output::write(path, &text)?;
    }
    let pairs = [
        ("pairs", found.certificate.pairs.len().to_string()),
        ("bound", found.certificate.structural_bound().to_string()),
        ("complete", found.complete.to_string()),
        ("nodes", found.nodes.to_string()),
    ];
    let body = if out.is_none() { text } else { String::new() };
    emit(&body, &record(format, &pairs)?, format);
    Ok(Outcome::Success)
}

fn cmd_fooling_emit(family: &str, m: usize, n: usize, out: Option<&Path>, format: Format) -> Result<Outcome> {
    let family: FoolingFamily = family.parse()?;
    let cert = standard_fooling_set(family, m, n)?;
    let text = write_certificate(&cert, &family.alphabet());
    if let Some(path) = out {
        output::write(path, &text)?;
    }
    let pairs = [
        ("family", family.to_string()),
        ("pairs", cert.pairs.len().to_string()),
        ("claimed", cert.claimed.to_string()),
    ];
    let body = if out.is_none() { text } else { String::new() };
    emit(&body, &record(format, &pairs)?, format);
    Ok(Outcome::Success)
}

fn suffixed(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{tag}.aut"))
}

#[allow(clippy::too_many_arguments)]
fn cmd_witness(
    family: &str,
    m: usize,
    n: usize,
    emit_path: Option<&Path>,
    validate: bool,
    budget: Option<u64>,
    no_seeds: bool,
    emit_dot: Option<&Path>,
    format: Format,
) -> Result<Outcome> {
    let family: Family = family.parse()?;
    let spec = WitnessSpec::new(family, m, n)?;
    let witness = if family.provenance() == Provenance::Reconstructed {
        let opts = ReconstructOptions {
            budget: budget.unwrap_or(DEFAULT_BUDGET),
            use_seeds: !no_seeds,
        };
        reconstruct_witness(family, spec.m, spec.n, &opts)?.witness
    } else {
        make_witness(spec)?
    };

    let mut text = String::new();
    let labels: &[&str] = if family.is_binary() { &["k", "l"] } else { &["l"] };
    for (aut, label) in witness.automata.iter().zip(labels) {
        let body = write_automaton(aut);
        match emit_path {
            Some(path) if family.is_binary() => output::write(&suffixed(path, label), &body)?,
            Some(path) => output::write(path, &body)?,
            None => {
                let _ = writeln!(text, "# {}", label.to_uppercase());
                text.push_str(&body);
            }
        }
        if let Some(path) = emit_dot {
            let target = if family.is_binary() {
                suffixed(path, label).with_extension("dot")
            } else {
                path.to_path_buf()
            };
            output::write(&target, &to_dot(aut))?;
        }
    }

    let mut pairs = vec![("family", family.to_string())];
    if family.is_binary() {
        pairs.push(("m", spec.m.to_string()));
    }
    pairs.push(("n", spec.n.to_string()));
    let mut passed = true;
    if validate {
        let report = validate_witness(&witness)?;
        passed = report.passed();
        text.push_str(&report.to_string());
        pairs.push(("valid", passed.to_string()));
    }
    emit(&text, &record(format, &pairs)?, format);
    Ok(Outcome::from_passed(passed))
}

pub fn census_csv(table: &CensusTable) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["sc_star", "count"])?;
    for (v, c) in table.dense() {
        w.write_record([v.to_string(), c.to_string()])?;
    }
    w.write_record(["total".to_string(), table.total.to_string()])?;
    w.write_record(["average_exact".to_string(), table.average.to_string()])?;
    w.write_record(["average_3dp".to_string(), table.average_truncated()])?;
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn cmd_census(
    n: usize,
    k: usize,
    permute_alphabet: bool,
    parallel: bool,
    out: Option<&Path>,
    format: Format,
) -> Result<Outcome> {
    let opts = CensusOptions {
        k,
        permute_alphabet,
        parallel,
    };
    let table = star_census(n, &opts)?;
    let csv_text = census_csv(&table)?;
    if let Some(path) = out {
        output::write(path, &csv_text)?;
    }
    let pairs = [
        ("n", n.to_string()),
        ("k", k.to_string()),
        ("total", table.total.to_string()),
        ("average_exact", table.average.to_string()),
        ("average_3dp", table.average_truncated()),
    ];
    match format {
        Format::Text => emit(&table.to_string(), &record(format, &pairs)?, format),
        Format::Csv => print!("{csv_text}"),
        Format::JsonLines => {
            for (v, c) in table.dense() {
                let row = [("sc_star", v.to_string()), ("count", c.to_string())];
                println!("{}", record(format, &row)?);
            }
            println!("{}", record(format, &pairs)?);
        }
    }
    Ok(Outcome::Success)
}

fn cmd_complexity(input: &Path, format: Format) -> Result<Outcome> {
    let a = load(input)?;
    let pairs = [
        ("kind", a.kind().to_string()),
        ("states", a.num_states().to_string()),
        ("isc", isc(&a).to_string()),
        ("sc", sc(&a).to_string()),
        ("prefix_closed", is_prefix_closed(&a).to_string()),
    ];
    emit("", &record(format, &pairs)?, format);
    Ok(Outcome::Success)
}

/// A word outside the language that is a prefix of a word inside it.
fn prefix_counterexample(a: &AnyAutomaton) -> Option<(Vec<usize>, Vec<usize>)> {
    let d = minimal_cdfa(a);
    let k = d.alphabet().len();
    let bfs = |from: usize, goal: &dyn Fn(usize) -> bool| -> Option<Vec<usize>> {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; d.num_states()];
        let mut seen = vec![false; d.num_states()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(q) = queue.pop_front() {
            if goal(q) {
                let mut word = Vec::new();
                let mut cur = q;
                while let Some((p, sym)) = prev[cur] {
                    word.push(sym);
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            for sym in 0..k {
                let r = d.next(q, sym);
                if !seen[r] {
                    seen[r] = true;
                    prev[r] = Some((q, sym));
                    queue.push_back(r);
                }
            }
        }
        None
    };
    let u = bfs(d.initial(), &|q| !d.is_final(q) && !d.is_dead(q))?;
    let v = bfs(d.run_from(d.initial(), &u), &|q| d.is_final(q))?;
    Some((u, v))
}

fn cmd_check_prefix_closed(input: &Path, format: Format) -> Result<Outcome> {
    let a = load(input)?;
    let closed = is_prefix_closed(&a);
    let mut text = String::new();
    if let Some((u, v)) = prefix_counterexample(&a) {
        let ab = a.alphabet();
        let full: Vec<usize> = u.iter().chain(&v).copied().collect();
        text = format!(
            "{} is in the language but its prefix {} is not",
            ab.spell(&full),
            ab.spell(&u)
        );
    }
    let pairs = [("prefix_closed", closed.to_string())];
    emit(&text, &record(format, &pairs)?, format);
    Ok(Outcome::from_passed(closed))
}
