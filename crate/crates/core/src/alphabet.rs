use std::fmt;

use crate::error::{Error, Result};

/// Index of a symbol within an [`Alphabet`].
pub type Symbol = usize;

/// A string over an alphabet, stored as symbol indices.
pub type Word = Vec<Symbol>;

/// Spelling of the empty word in files and on the command line.
pub const EPSILON: &str = "-";

/// A finite, ordered alphabet of single-character symbols.
///
/// The order is significant: it fixes BFS order for canonical relabeling
/// and the base ordering for alphabet permutations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must not be empty".into()));
        }
        for (i, &c) in symbols.iter().enumerate() {
            if c.is_whitespace() || c == '-' || c == '#' || c == ':' {
                return Err(Error::InvalidAlphabet(format!("reserved symbol {c:?}")));
            }
            if symbols[..i].contains(&c) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {c:?}")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// The first `k` lowercase letters `a, b, c, ...`.
    pub fn letters(k: usize) -> Self {
        assert!((1..=26).contains(&k), "letter alphabets hold 1..=26 symbols");
        Alphabet {
            symbols: (b'a'..b'a' + k as u8).map(char::from).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn char_of(&self, sym: Symbol) -> char {
        self.symbols[sym]
    }

    pub fn index_of(&self, c: char) -> Result<Symbol> {
        self.symbols
            .iter()
            .position(|&s| s == c)
            .ok_or(Error::UnknownSymbol(c))
    }

    /// Parses a word; `-` denotes the empty word.
    pub fn word(&self, text: &str) -> Result<Word> {
        if text == EPSILON {
            return Ok(Word::new());
        }
        text.chars().map(|c| self.index_of(c)).collect()
    }

    pub fn check_word(&self, word: &[Symbol]) -> Result<()> {
        match word.iter().find(|&&s| s >= self.len()) {
            Some(&s) => Err(Error::SymbolOutOfRange(s)),
            None => Ok(()),
        }
    }

    /// Renders a word; the empty word renders as `-`.
    pub fn spell(&self, word: &[Symbol]) -> String {
        if word.is_empty() {
            EPSILON.to_string()
        } else {
            word.iter().map(|&s| self.symbols[s]).collect()
        }
    }

    pub fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    /// All words of length exactly `len`, in length-lexicographic order.
    pub fn words_of_len(&self, len: usize) -> impl Iterator<Item = Word> + '_ {
        let k = self.len();
        let total = k.checked_pow(len as u32).expect("word enumeration overflow");
        (0..total).map(move |mut idx| {
            let mut w = vec![0; len];
            for slot in w.iter_mut().rev() {
                *slot = idx % k;
                idx /= k;
            }
            w
        })
    }

    /// All words of length at most `max_len`, shortest first.
    pub fn words_up_to(&self, max_len: usize) -> impl Iterator<Item = Word> + '_ {
        (0..=max_len).flat_map(move |len| self.words_of_len(len))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({self})")
    }
}

/// `sym` repeated `times` times.
pub fn pow(sym: Symbol, times: usize) -> Word {
    vec![sym; times]
}
