//! Representation files: one exact rational matrix per generator.
//!
//! ```text
//! dim 2
//! generator a
//! 0 0
//! 1 0
//! generator b
//! 0 1/2
//! 0 0
//! ```
//!
//! Entries are integers or fractions `p/q`. Every generator of the
//! presentation must get exactly one matrix; the relation check is
//! performed by `Representation::new` once parsing succeeds.

use num_bigint::BigInt;
use num_rational::Ratio;
use rlcm_core::matrix::{Rational, RationalMatrix};
use rlcm_core::presentation::HomogeneousPresentation;
use rlcm_core::replab::Representation;
use rlcm_core::Word;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepFileError {
    /// Zero when the problem concerns the file as a whole.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for RepFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "line {}: {}", self.line, self.message)
        } else {
            write!(f, "{}", self.message)
        }
    }
}

impl std::error::Error for RepFileError {}

fn err(line: usize, message: impl Into<String>) -> RepFileError {
    RepFileError { line, message: message.into() }
}

fn parse_rational(token: &str, line: usize) -> Result<Rational, RepFileError> {
    let bad = || err(line, format!("expected an integer or `p/q`, found `{token}`"));
    match token.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.parse().map_err(|_| bad())?;
            let den: BigInt = den.parse().map_err(|_| bad())?;
            if den == BigInt::from(0) {
                return Err(err(line, "zero denominator"));
            }
            Ok(Ratio::new(num, den))
        }
        None => {
            let n: BigInt = token.parse().map_err(|_| bad())?;
            Ok(Ratio::from_integer(n))
        }
    }
}

pub fn parse_representation(
    text: &str,
    presentation: &HomogeneousPresentation,
) -> Result<Representation, RepFileError> {
    let n = presentation.alphabet_size();
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, raw)| {
            let uncommented = raw.split('#').next().unwrap_or("");
            (i + 1, uncommented.split_whitespace().collect::<Vec<_>>())
        })
        .filter(|(_, tokens)| !tokens.is_empty())
        .collect();
    let mut iter = lines.iter().peekable();

    let Some((dim_line, dim_tokens)) = iter.next() else {
        return Err(err(0, "empty representation file"));
    };
    let [keyword, d] = dim_tokens.as_slice() else {
        return Err(err(*dim_line, "expected `dim <d>` on the first line"));
    };
    if *keyword != "dim" {
        return Err(err(*dim_line, "expected `dim <d>` on the first line"));
    }
    let dim: usize = d
        .parse()
        .map_err(|_| err(*dim_line, format!("expected a dimension, found `{d}`")))?;
    if dim == 0 {
        return Err(err(*dim_line, "dimension must be positive"));
    }

    let mut matrices: Vec<Option<RationalMatrix>> = vec![None; n];
    while let Some((line, tokens)) = iter.next() {
        let [keyword, name] = tokens.as_slice() else {
            return Err(err(*line, "expected `generator <name>`"));
        };
        if *keyword != "generator" {
            return Err(err(*line, "expected `generator <name>`"));
        }
        let word = Word::parse(name, n).map_err(|e| err(*line, e.to_string()))?;
        let [letter] = word.letters() else {
            return Err(err(*line, format!("`{name}` is not a single generator")));
        };
        let slot = &mut matrices[*letter as usize];
        if slot.is_some() {
            return Err(err(*line, format!("duplicate matrix for generator `{name}`")));
        }
        let mut rows = Vec::with_capacity(dim);
        for _ in 0..dim {
            let Some((row_line, row_tokens)) = iter.next() else {
                return Err(err(*line, format!("matrix for `{name}` ends early")));
            };
            if row_tokens.len() != dim {
                return Err(err(
                    *row_line,
                    format!("expected {dim} entries, found {}", row_tokens.len()),
                ));
            }
            let mut row = Vec::with_capacity(dim);
            for token in row_tokens {
                row.push(parse_rational(token, *row_line)?);
            }
            rows.push(row);
        }
        *slot = Some(RationalMatrix::from_rows(rows).expect("rows were sized above"));
    }

    let mut ordered = Vec::with_capacity(n);
    for (s, slot) in matrices.into_iter().enumerate() {
        match slot {
            Some(m) => ordered.push(m),
            None => {
                let name = Word::generator(s as u16).symbols(n);
                return Err(err(0, format!("no matrix given for generator `{name}`")));
            }
        }
    }
    Representation::new(presentation, ordered).map_err(|e| err(0, e.to_string()))
}
