use std::fmt::Write as _;

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};

pub type Pair = (Word, Word);

/// The `(A, B, u, v)` split of an extended certificate. The first `a_len`
/// pairs of the certificate form `A`, the rest form `B`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Split {
    pub a_len: usize,
    pub u: Word,
    pub v: Word,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FoolingCertificate {
    pub pairs: Vec<Pair>,
    pub split: Option<Split>,
    /// The lower bound the certificate claims to establish.
    pub claimed: usize,
}

impl FoolingCertificate {
    pub fn plain(pairs: Vec<Pair>) -> Self {
        FoolingCertificate {
            claimed: pairs.len(),
            pairs,
            split: None,
        }
    }

    pub fn extended(a: Vec<Pair>, b: Vec<Pair>, u: Word, v: Word) -> Self {
        let a_len = a.len();
        let mut pairs = a;
        pairs.extend(b);
        FoolingCertificate {
            claimed: pairs.len() + 1,
            pairs,
            split: Some(Split { a_len, u, v }),
        }
    }

    /// The bound the structure supports: `|pairs|`, plus one when split.
    pub fn structural_bound(&self) -> usize {
        self.pairs.len() + usize::from(self.split.is_some())
    }

    pub fn a_pairs(&self) -> &[Pair] {
        match &self.split {
            Some(s) => &self.pairs[..s.a_len],
            None => &self.pairs,
        }
    }

    pub fn b_pairs(&self) -> &[Pair] {
        match &self.split {
            Some(s) => &self.pairs[s.a_len..],
            None => &[],
        }
    }
}

/// Parses the certificate file format:
///
/// ```text
/// fooling: plain | extended
/// claimed: 7
/// u: bbb            # extended only
/// v: aaa            # extended only
/// A:                # extended only; pairs that follow belong to A
/// pair: a aa
/// B:                # extended only; pairs that follow belong to B
/// pair: b bb
/// ```
///
/// The empty word is spelled `-`. A missing `fooling` key means `plain`; a
/// missing `claimed` key means the structural bound.
pub fn parse_certificate(text: &str, alphabet: &Alphabet) -> Result<FoolingCertificate> {
    #[derive(PartialEq)]
    enum Section {
        None,
        A,
        B,
    }
    let mut extended: Option<bool> = None;
    let mut claimed: Option<usize> = None;
    let mut u: Option<Word> = None;
    let mut v: Option<Word> = None;
    let mut section = Section::None;
    let mut a_pairs = Vec::new();
    let mut b_pairs = Vec::new();
    let mut last_line = 0;

    let word = |line: usize, tok: &str| {
        alphabet
            .word(tok)
            .map_err(|e| Error::parse(line, e.to_string()))
    };

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
            "fooling" => {
                if extended.is_some() {
                    return Err(Error::parse(line, "duplicate key \"fooling\""));
                }
                extended = Some(match value {
                    "plain" => false,
                    "extended" => true,
                    other => {
                        return Err(Error::parse(line, format!("unknown certificate kind {other:?}")))
                    }
                });
            }
            "claimed" => {
                let n = value
                    .parse()
                    .map_err(|_| Error::parse(line, format!("bad claimed bound {value:?}")))?;
                if claimed.replace(n).is_some() {
                    return Err(Error::parse(line, "duplicate key \"claimed\""));
                }
            }
            "u" => {
                if u.replace(word(line, value)?).is_some() {
                    return Err(Error::parse(line, "duplicate key \"u\""));
                }
            }
            "v" => {
                if v.replace(word(line, value)?).is_some() {
                    return Err(Error::parse(line, "duplicate key \"v\""));
                }
            }
            "A" if value.is_empty() => section = Section::A,
            "B" if value.is_empty() => section = Section::B,
            "pair" => {
                let toks: Vec<&str> = value.split_whitespace().collect();
                let [x, y] = toks[..] else {
                    return Err(Error::parse(line, "expected `pair: <x> <y>`"));
                };
                let pair = (word(line, x)?, word(line, y)?);
                match section {
                    Section::B => b_pairs.push(pair),
                    _ => a_pairs.push(pair),
                }
            }
            other => return Err(Error::parse(line, format!("unknown key {other:?}"))),
        }
    }

    let extended = extended.unwrap_or(false);
    let mut cert = if extended {
        let u = u.ok_or_else(|| Error::parse(last_line, "extended certificate needs `u`"))?;
        let v = v.ok_or_else(|| Error::parse(last_line, "extended certificate needs `v`"))?;
        FoolingCertificate::extended(a_pairs, b_pairs, u, v)
    } else {
        if u.is_some() || v.is_some() || !b_pairs.is_empty() || section != Section::None {
            return Err(Error::parse(
                last_line,
                "plain certificates have no u, v or A/B sections",
            ));
        }
        FoolingCertificate::plain(a_pairs)
    };
    if let Some(claimed) = claimed {
        cert.claimed = claimed;
    }
    Ok(cert)
}

pub fn write_certificate(cert: &FoolingCertificate, alphabet: &Alphabet) -> String {
    let mut out = String::new();
    let pair_line = |out: &mut String, (x, y): &Pair| {
        let _ = writeln!(out, "pair: {} {}", alphabet.spell(x), alphabet.spell(y));
    };
    match &cert.split {
        None => {
            let _ = writeln!(out, "fooling: plain\nclaimed: {}", cert.claimed);
            for p in &cert.pairs {
                pair_line(&mut out, p);
            }
        }
        Some(split) => {
            let _ = writeln!(out, "fooling: extended\nclaimed: {}", cert.claimed);
            let _ = writeln!(out, "u: {}", alphabet.spell(&split.u));
            let _ = writeln!(out, "v: {}", alphabet.spell(&split.v));
            out.push_str("A:\n");
            for p in cert.a_pairs() {
                pair_line(&mut out, p);
            }
            out.push_str("B:\n");
            for p in cert.b_pairs() {
                pair_line(&mut out, p);
            }
        }
    }
    out
}
