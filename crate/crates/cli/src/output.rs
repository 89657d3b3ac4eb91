use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    JsonLines,
}

/// How a command that ran to completion ended.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

impl Outcome {
    pub fn from_passed(passed: bool) -> Outcome {
        if passed {
            Outcome::Success
        } else {
            Outcome::VerificationFailed
        }
    }

    pub fn code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::VerificationFailed => 4,
        }
    }
}

/// 2 for malformed input, 3 for violated preconditions, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    use pclang::Error;
    match err.downcast_ref::<Error>() {
        Some(Error::Parse { .. } | Error::UnknownSymbol(_) | Error::SymbolOutOfRange(_)) => 2,
        Some(
            Error::Precondition(_)
            | Error::InvalidParameters(_)
            | Error::AlphabetMismatch { .. }
            | Error::InvalidAlphabet(_)
            | Error::InvalidAutomaton(_),
        ) => 3,
        Some(Error::Reconstruction(_)) => 4,
        None => 1,
    }
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

/// Renders `key=value` pairs as CSV (header plus one row) or as one JSON
/// object.
pub fn record(format: Format, pairs: &[(&str, String)]) -> Result<String> {
    Ok(match format {
        Format::Text => pairs
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" "),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(pairs.iter().map(|(k, _)| *k))?;
            w.write_record(pairs.iter().map(|(_, v)| v.as_str()))?;
            String::from_utf8(w.into_inner()?)?.trim_end().to_string()
        }
        Format::JsonLines => json_object(pairs).to_string(),
    })
}

pub fn json_object(pairs: &[(&str, String)]) -> serde_json::Value {
    let map = pairs
        .iter()
        .map(|(k, v)| {
            let value = v
                .parse::<i64>()
                .map(serde_json::Value::from)
                .or_else(|_| v.parse::<bool>().map(serde_json::Value::from))
                .unwrap_or_else(|_| serde_json::Value::from(v.as_str()));
            (k.to_string(), value)
        })
        .collect();
    serde_json::Value::Object(map)
}
