//! Line-oriented text format for automata.
//!
//! ```text
//! type: nfa | idfa | cdfa
//! alphabet: a b c
//! states: 4
//! initial: 0          # several states allowed for nfa
//! final: 0 1 2 3
//! trans: 0 a 1        # one line per (state, symbol, target)
//! ```
//!
//! `#` starts a comment. Unknown keys are errors. Missing transitions are
//! legal for `nfa` and `idfa` and illegal for `cdfa`.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::alphabet::{Alphabet, Symbol};
use crate::automaton::{Automaton, Cdfa, Idfa, Nfa, StateId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    Nfa,
    Idfa,
    Cdfa,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Nfa => "nfa",
            Kind::Idfa => "idfa",
            Kind::Cdfa => "cdfa",
        })
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "nfa" => Ok(Kind::Nfa),
            "idfa" => Ok(Kind::Idfa),
            "cdfa" => Ok(Kind::Cdfa),
            other => Err(format!("unknown automaton type {other:?}")),
        }
    }
}

/// An automaton of any of the three models, as read from a file.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AnyAutomaton {
    Nfa(Nfa),
    Idfa(Idfa),
    Cdfa(Cdfa),
}

impl AnyAutomaton {
    pub fn kind(&self) -> Kind {
        match self {
            AnyAutomaton::Nfa(_) => Kind::Nfa,
            AnyAutomaton::Idfa(_) => Kind::Idfa,
            AnyAutomaton::Cdfa(_) => Kind::Cdfa,
        }
    }

    fn inner(&self) -> &dyn Automaton {
        match self {
            AnyAutomaton::Nfa(a) => a,
            AnyAutomaton::Idfa(a) => a,
            AnyAutomaton::Cdfa(a) => a,
        }
    }

    /// The deterministic view, if the automaton is an Idfa or Cdfa.
    pub fn as_idfa(&self) -> Option<Idfa> {
        match self {
            AnyAutomaton::Nfa(_) => None,
            AnyAutomaton::Idfa(d) => Some(d.clone()),
            AnyAutomaton::Cdfa(c) => Some(c.to_idfa()),
        }
    }
}

impl Automaton for AnyAutomaton {
    fn alphabet(&self) -> &Alphabet {
        self.inner().alphabet()
    }

    fn num_states(&self) -> usize {
        self.inner().num_states()
    }

    fn to_nfa(&self) -> Nfa {
        self.inner().to_nfa()
    }

    fn accepts_unchecked(&self, word: &[Symbol]) -> bool {
        self.inner().accepts_unchecked(word)
    }
}

impl From<Nfa> for AnyAutomaton {
    fn from(a: Nfa) -> Self {
        AnyAutomaton::Nfa(a)
    }
}

impl From<Idfa> for AnyAutomaton {
    fn from(a: Idfa) -> Self {
        AnyAutomaton::Idfa(a)
    }
}

impl From<Cdfa> for AnyAutomaton {
    fn from(a: Cdfa) -> Self {
        AnyAutomaton::Cdfa(a)
    }
}

#[derive(Default)]
struct Header {
    kind: Option<Kind>,
    alphabet: Option<Alphabet>,
    states: Option<usize>,
    initial: Option<(usize, Vec<StateId>)>,
    finals: Option<(usize, Vec<StateId>)>,
    trans: Vec<(usize, StateId, Symbol, StateId)>,
}

fn parse_states(line: usize, value: &str) -> Result<Vec<StateId>> {
    value
        .split_whitespace()
        .map(|tok| {
            tok.parse::<StateId>()
                .map_err(|_| Error::parse(line, format!("expected a state number, got {tok:?}")))
        })
        .collect()
}

fn set_once<T>(slot: &mut Option<T>, value: T, line: usize, key: &str) -> Result<()> {
    if slot.is_some() {
        return Err(Error::parse(line, format!("duplicate key {key:?}")));
    }
    *slot = Some(value);
    Ok(())
}

/// Parses one automaton.
pub fn parse_automaton(text: &str) -> Result<AnyAutomaton> {
    let mut h = Header::default();
    let mut pending_trans: Vec<(usize, String)> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once(':')
            .ok_or_else(|| Error::parse(line, "expected `key: value`"))?;
        let value = value.trim();
        match key.trim() {
            "type" => {
                let kind = value.parse::<Kind>().map_err(|e| Error::parse(line, e))?;
                set_once(&mut h.kind, kind, line, "type")?;
            }
            "alphabet" => {
                let mut symbols = Vec::new();
                for tok in value.split_whitespace() {
                    let mut chars = tok.chars();
                    match (chars.next(), chars.next()) {
                        (Some(c), None) => symbols.push(c),
                        _ => {
                            return Err(Error::parse(
                                line,
                                format!("symbols are single characters, got {tok:?}"),
                            ))
                        }
                    }
                }
                let alphabet =
                    Alphabet::new(symbols).map_err(|e| Error::parse(line, e.to_string()))?;
                set_once(&mut h.alphabet, alphabet, line, "alphabet")?;
            }
            "states" => {
                let n = value
                    .parse::<usize>()
                    .map_err(|_| Error::parse(line, format!("bad state count {value:?}")))?;
                set_once(&mut h.states, n, line, "states")?;
            }
            "initial" => {
                let states = parse_states(line, value)?;
                set_once(&mut h.initial, (line, states), line, "initial")?;
            }
            "final" => {
                let states = parse_states(line, value)?;
                set_once(&mut h.finals, (line, states), line, "final")?;
            }
            "trans" => pending_trans.push((line, value.to_string())),
            other => return Err(Error::parse(line, format!("unknown key {other:?}"))),
        }
    }

    let kind = h
        .kind
        .ok_or_else(|| Error::parse(last_line, "missing `type`"))?;
    let alphabet = h
        .alphabet
        .clone()
        .ok_or_else(|| Error::parse(last_line, "missing `alphabet`"))?;
    let n = h
        .states
        .ok_or_else(|| Error::parse(last_line, "missing `states`"))?;

    for (line, value) in pending_trans {
        let toks: Vec<&str> = value.split_whitespace().collect();
        let [from, sym, to] = toks[..] else {
            return Err(Error::parse(line, "expected `trans: <state> <symbol> <state>`"));
        };
        let from = parse_states(line, from)?[0];
        let to = parse_states(line, to)?[0];
        let mut chars = sym.chars();
        let sym = match (chars.next(), chars.next()) {
            (Some(c), None) => alphabet
                .index_of(c)
                .map_err(|e| Error::parse(line, e.to_string()))?,
            _ => return Err(Error::parse(line, format!("bad symbol {sym:?}"))),
        };
        h.trans.push((line, from, sym, to));
    }

    let check_range = |line: usize, q: StateId| -> Result<()> {
        if q >= n {
            Err(Error::parse(line, format!("state {q} out of range (states: {n})")))
        } else {
            Ok(())
        }
    };
    for &(line, from, _, to) in &h.trans {
        check_range(line, from)?;
        check_range(line, to)?;
    }
    let (init_line, initial) = h.initial.clone().unwrap_or((last_line, Vec::new()));
    for &q in &initial {
        check_range(init_line, q)?;
    }
    let (fin_line, finals) = h.finals.clone().unwrap_or((last_line, Vec::new()));
    for &q in &finals {
        check_range(fin_line, q)?;
    }

    match kind {
        Kind::Nfa => {
            let mut a = Nfa::new(alphabet, n);
            for &q in &initial {
                a.add_initial(q);
            }
            for &q in &finals {
                a.set_final(q, true);
            }
            for &(_, from, sym, to) in &h.trans {
                a.add_transition(from, sym, to);
            }
            Ok(AnyAutomaton::Nfa(a))
        }
        Kind::Idfa | Kind::Cdfa => {
            let k = alphabet.len();
            let expected_initial = if n == 0 && kind == Kind::Idfa { 0 } else { 1 };
            if initial.len() != expected_initial {
                return Err(Error::parse(
                    init_line,
                    format!("{kind} needs exactly {expected_initial} initial state(s)"),
                ));
            }
            let mut table: Vec<Option<StateId>> = vec![None; n * k];
            for &(line, from, sym, to) in &h.trans {
                let slot = &mut table[from * k + sym];
                match *slot {
                    Some(prev) if prev != to => {
                        return Err(Error::parse(
                            line,
                            format!(
                                "nondeterministic transition from {from} on {}",
                                alphabet.char_of(sym)
                            ),
                        ))
                    }
                    _ => *slot = Some(to),
                }
            }
            let mut is_final = vec![false; n];
            for &q in &finals {
                is_final[q] = true;
            }
            if kind == Kind::Cdfa {
                if let Some(pos) = table.iter().position(Option::is_none) {
                    return Err(Error::parse(
                        last_line,
                        format!(
                            "cdfa is missing the transition from {} on {}",
                            pos / k,
                            alphabet.char_of(pos % k)
                        ),
                    ));
                }
                let delta = table.into_iter().map(Option::unwrap).collect();
                let c = Cdfa::from_table(alphabet, initial[0], delta, is_final)
                    .map_err(|e| Error::parse(last_line, e.to_string()))?;
                return Ok(AnyAutomaton::Cdfa(c));
            }
            let mut d = Idfa::new(alphabet, n);
            if let Some(&s) = initial.first() {
                d.set_initial(s);
            }
            for q in 0..n {
                d.set_final(q, is_final[q]);
                for a in 0..k {
                    d.set_transition(q, a, table[q * k + a]);
                }
            }
            Ok(AnyAutomaton::Idfa(d))
        }
    }
}

fn join(states: impl Iterator<Item = StateId>) -> String {
    states.map(|q| q.to_string()).collect::<Vec<_>>().join(" ")
}

/// Serializes an automaton; transitions are listed in (state, symbol,
/// target) order so output is byte-stable.
pub fn write_automaton(a: &AnyAutomaton) -> String {
    let nfa = a.to_nfa();
    let alphabet = nfa.alphabet();
    let mut out = String::new();
    let _ = writeln!(out, "type: {}", a.kind());
    let _ = writeln!(out, "alphabet: {alphabet}");
    let _ = writeln!(out, "states: {}", nfa.num_states());
    let _ = writeln!(out, "initial: {}", join(nfa.initial().iter()));
    let _ = writeln!(out, "final: {}", join(nfa.finals().iter()));
    for (q, sym, t) in nfa.transitions() {
        let _ = writeln!(out, "trans: {q} {} {t}", alphabet.char_of(sym));
    }
    out
}

/// Graphviz rendering.
pub fn to_dot(a: &(impl Automaton + ?Sized)) -> String {
    let nfa = a.to_nfa();
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n");
    for q in 0..nfa.num_states() {
        let shape = if nfa.is_final(q) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  q{q} [shape={shape}, label=\"{q}\"];");
    }
    for q in nfa.initial().iter() {
        let _ = writeln!(out, "  start{q} [shape=point];\n  start{q} -> q{q};");
    }
    for (q, sym, t) in nfa.transitions() {
        let _ = writeln!(
            out,
            "  q{q} -> q{t} [label=\"{}\"];",
            nfa.alphabet().char_of(sym)
        );
    }
    out.push_str("}\n");
    out
}
