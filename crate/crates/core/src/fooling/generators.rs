//! The explicit fooling sets exhibited in the tightness proofs.

use std::fmt;
use std::str::FromStr;

use super::certificate::{FoolingCertificate, Pair};
use crate::alphabet::{pow, Alphabet, Word};
use crate::automaton::Nfa;
use crate::error::{Error, Result};

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;

/// The nondeterministic tightness results that come with a fooling set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FoolingFamily {
    /// `2^n` pairs `(x_S, y_S)` for the complement of the ternary witness.
    Complement,
    /// `mn` pairs `(a^i b^j, a^{m-1-i} b^{n-1-j})` for the counter intersection.
    Intersection,
    /// Extended certificate of size `m + n + 1` for the four-letter union.
    Union,
    /// `m + n` pairs for the ternary concatenation.
    Concatenation,
    /// `n` pairs `(a^i, a^{n-1-i} b)` for the star.
    Star,
    /// Extended certificate of size `n + 1` for the reversal.
    Reversal,
}

impl FoolingFamily {
    pub const ALL: [FoolingFamily; 6] = [
        FoolingFamily::Complement,
        FoolingFamily::Intersection,
        FoolingFamily::Union,
        FoolingFamily::Concatenation,
        FoolingFamily::Star,
        FoolingFamily::Reversal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FoolingFamily::Complement => "complement-nsc",
            FoolingFamily::Intersection => "intersection-nsc",
            FoolingFamily::Union => "union-nsc",
            FoolingFamily::Concatenation => "concat-nsc",
            FoolingFamily::Star => "star-nsc",
            FoolingFamily::Reversal => "reversal-nsc",
        }
    }

    pub fn is_extended(self) -> bool {
        matches!(self, FoolingFamily::Union | FoolingFamily::Reversal)
    }

    pub fn is_binary(self) -> bool {
        matches!(
            self,
            FoolingFamily::Intersection | FoolingFamily::Union | FoolingFamily::Concatenation
        )
    }

    /// Smallest legal `(m, n)`; `m` is ignored by unary families.
    pub fn min_params(self) -> (usize, usize) {
        match self {
            FoolingFamily::Complement => (0, 2),
            FoolingFamily::Star => (0, 1),
            FoolingFamily::Intersection => (1, 1),
            FoolingFamily::Union => (2, 2),
            FoolingFamily::Concatenation => (3, 3),
            FoolingFamily::Reversal => (0, 2),
        }
    }

    pub fn alphabet(self) -> Alphabet {
        match self {
            FoolingFamily::Complement | FoolingFamily::Concatenation => Alphabet::letters(3),
            FoolingFamily::Union => Alphabet::letters(4),
            _ => Alphabet::letters(2),
        }
    }

    pub fn check_params(self, m: usize, n: usize) -> Result<()> {
        let (min_m, min_n) = self.min_params();
        if (self.is_binary() && m < min_m) || n < min_n {
            return Err(Error::InvalidParameters(format!(
                "{} needs m >= {min_m} and n >= {min_n}, got m={m}, n={n}",
                self.name()
            )));
        }
        if self == FoolingFamily::Complement && n > 20 {
            return Err(Error::InvalidParameters("complement certificates are capped at n=20".into()));
        }
        Ok(())
    }
}

impl fmt::Display for FoolingFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FoolingFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.strip_suffix("-nsc").unwrap_or(s);
        Ok(match key {
            "complement" => FoolingFamily::Complement,
            "intersection" => FoolingFamily::Intersection,
            "union" => FoolingFamily::Union,
            "concat" | "concatenation" => FoolingFamily::Concatenation,
            "star" => FoolingFamily::Star,
            "reversal" | "reverse" => FoolingFamily::Reversal,
            _ => return Err(Error::InvalidParameters(format!("unknown fooling family {s:?}"))),
        })
    }
}

fn concat(parts: &[&[usize]]) -> Word {
    parts.concat()
}

/// The fooling set from the proof of the corresponding tightness result,
/// for the language produced by the operation on the family's witnesses.
pub fn standard_fooling_set(family: FoolingFamily, m: usize, n: usize) -> Result<FoolingCertificate> {
    family.check_params(m, n)?;
    Ok(match family {
        FoolingFamily::Complement => complement_certificate(n),
        FoolingFamily::Intersection => FoolingCertificate::plain(
            (0..m)
                .flat_map(|i| {
                    (0..n).map(move |j| {
                        (
                            concat(&[&pow(A, i), &pow(B, j)]),
                            concat(&[&pow(A, m - 1 - i), &pow(B, n - 1 - j)]),
                        )
                    })
                })
                .collect(),
        ),
        FoolingFamily::Union => {
            let side = |x: usize, y: usize, k: usize| -> Vec<Pair> {
                let mut pairs: Vec<Pair> = (1..k)
                    .map(|i| (pow(x, i), concat(&[&pow(x, k - 1 - i), &[y]])))
                    .collect();
                pairs.push((concat(&[&pow(x, k - 1), &[y]]), vec![x]));
                pairs
            };
            FoolingCertificate::extended(side(A, B, m), side(C, D, n), vec![C], vec![A])
        }
        FoolingFamily::Concatenation => {
            let middle = concat(&[&pow(A, m - 1), &[C, B]]);
            let mut pairs: Vec<Pair> = (0..m)
                .map(|i| (pow(A, i), concat(&[&pow(A, m - 1 - i), &[C, B], &pow(A, n - 1)])))
                .collect();
            pairs.extend((0..n).map(|j| (concat(&[&middle, &pow(A, j)]), pow(A, n - 1 - j))));
            FoolingCertificate::plain(pairs)
        }
        FoolingFamily::Star => FoolingCertificate::plain(
            (0..n)
                .map(|i| (pow(A, i), concat(&[&pow(A, n - 1 - i), &[B]])))
                .collect(),
        ),
        FoolingFamily::Reversal => {
            let ba = |i: usize| concat(&[&[B], &pow(A, i)]);
            let a_pairs = (0..n - 1).map(|i| (ba(i), pow(A, n - 1 - i))).collect();
            let b_pairs = vec![(ba(n - 1), ba(n - 1))];
            FoolingCertificate::extended(a_pairs, b_pairs, ba(n - 1), vec![A])
        }
    })
}

/// `x_S`: the word taking the initial state 1 of the ternary complement
/// witness to `S`, following the reachability induction. `S` holds states
/// `1..=n` in increasing order.
pub(crate) fn complement_x(n: usize, set: &[usize]) -> Word {
    match set {
        [] => pow(A, n),
        [i] => pow(A, i - 1),
        [i1, rest @ ..] => {
            let shifted: Vec<usize> = rest.iter().map(|i| i - i1).collect();
            let mut w = complement_x(n, &shifted);
            w.push(B);
            w.extend(pow(A, i1 - 1));
            w
        }
    }
}

/// `y_S = y_0 ... y_{n-1}` with `y_i = a` iff `n - i ∈ S`, otherwise `c`.
pub(crate) fn complement_y(n: usize, set: &[usize]) -> Word {
    (0..n)
        .map(|i| if set.contains(&(n - i)) { A } else { C })
        .collect()
}

fn complement_certificate(n: usize) -> FoolingCertificate {
    let pairs = (0u64..1 << n)
        .map(|mask| {
            let set: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            (complement_x(n, &set), complement_y(n, &set))
        })
        .collect();
    FoolingCertificate::plain(pairs)
}

/// The union `(a^3)* ∪ (b^3)*` as a six-state NFA with two initial states,
/// together with its extended certificate of size 7.
pub fn example_union_certificate() -> (Nfa, FoolingCertificate) {
    let mut nfa = Nfa::new(Alphabet::letters(2), 6);
    for (sym, base) in [(A, 0), (B, 3)] {
        for i in 0..3 {
            nfa.add_transition(base + i, sym, base + (i + 1) % 3);
        }
        nfa.add_initial(base);
        nfa.set_final(base, true);
    }
    let side = |s: usize| -> Vec<Pair> {
        vec![(pow(s, 1), pow(s, 2)), (pow(s, 2), pow(s, 1)), (pow(s, 3), pow(s, 3))]
    };
    let cert = FoolingCertificate::extended(side(A), side(B), pow(B, 3), pow(A, 3));
    (nfa, cert)
}
