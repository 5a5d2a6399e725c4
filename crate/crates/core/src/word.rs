//! Words over a finite alphabet of monoid generators.
//!
//! A [`Word`] is a finite sequence of generator indices. Words are the raw
//! syntax everything else is built from: presentations identify words,
//! balls enumerate their equivalence classes, and representations evaluate
//! them as operator products. Generators are numbered from zero; a word
//! renders as `aba` for small alphabets and as `s1.s2.s1` beyond 26
//! letters (both forms are accepted when parsing).

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Index of a generator in a presentation's alphabet.
pub type Letter = u16;

/// A word in the free monoid over the generator alphabet.
///
/// Ordering is plain lexicographic on the letter sequence, which agrees
/// with shortlex inside a set of words of equal length. Saturation classes
/// of a homogeneous presentation are length-preserving, so the canonical
/// form of an element (the least member of its class) is well defined
/// under this ordering.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    /// The empty word, representing the monoid identity.
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// Word consisting of a single generator.
    pub fn generator(s: Letter) -> Self {
        Word { letters: alloc::vec![s] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// The prefix of the first `k` letters.
    pub fn prefix(&self, k: usize) -> Word {
        Word { letters: self.letters[..k].to_vec() }
    }

    /// The suffix after removing the first `k` letters.
    pub fn suffix_from(&self, k: usize) -> Word {
        Word { letters: self.letters[k..].to_vec() }
    }

    /// Largest generator index occurring in the word, if any.
    pub fn max_letter(&self) -> Option<Letter> {
        self.letters.iter().copied().max()
    }

    /// True when every letter lies in `subset`.
    pub fn supported_on(&self, subset: &[bool]) -> bool {
        self.letters.iter().all(|&s| subset.get(s as usize).copied().unwrap_or(false))
    }

    /// Renders the word using `a`..`z` when the alphabet allows it, and
    /// the explicit `s1.s2` form otherwise. The empty word renders as `e`.
    pub fn symbols(&self, alphabet_size: usize) -> String {
        use fmt::Write;
        if self.letters.is_empty() {
            return String::from("e");
        }
        let mut out = String::new();
        if alphabet_size <= 26 {
            for &s in &self.letters {
                out.push((b'a' + s as u8) as char);
            }
        } else {
            for (k, &s) in self.letters.iter().enumerate() {
                if k > 0 {
                    out.push('.');
                }
                let _ = write!(out, "s{}", s + 1);
            }
        }
        out
    }

    /// Parses a word literal. Accepted forms:
    ///
    /// * `e` for the empty word;
    /// * letters `a`..`z`, as in `aba`;
    /// * one-based `s` indices, as in `s1s2s1` or `s1.s2.s1`.
    ///
    /// Letters must name generators below `alphabet_size`.
    pub fn parse(text: &str, alphabet_size: usize) -> Result<Word, WordParseError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(WordParseError::Empty);
        }
        if text == "e" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        if text.contains(|c: char| c.is_ascii_digit()) {
            for token in text.split(['.', '*']).filter(|t| !t.is_empty()) {
                if !token.starts_with('s') {
                    return Err(WordParseError::BadToken { token: String::from(text) });
                }
                for part in token.split('s').skip(1) {
                    if part.is_empty() {
                        return Err(WordParseError::BadToken { token: String::from(text) });
                    }
                    let n: usize = part
                        .parse()
                        .map_err(|_| WordParseError::BadToken { token: String::from(text) })?;
                    if n == 0 || n > alphabet_size {
                        return Err(WordParseError::LetterOutOfRange {
                            letter: String::from(part),
                            alphabet_size,
                        });
                    }
                    letters.push((n - 1) as Letter);
                }
            }
            if letters.is_empty() {
                return Err(WordParseError::BadToken { token: String::from(text) });
            }
        } else {
            for c in text.chars() {
                if !c.is_ascii_lowercase() {
                    return Err(WordParseError::BadToken { token: String::from(text) });
                }
                let s = (c as u8 - b'a') as usize;
                if s >= alphabet_size {
                    return Err(WordParseError::LetterOutOfRange {
                        letter: String::from(c),
                        alphabet_size,
                    });
                }
                letters.push(s as Letter);
            }
        }
        Ok(Word { letters })
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.symbols(26))
    }
}

/// The alternating product `⟨st⟩^m = stst…` with `m` letters, starting
/// with `s`. For `m = 0` this is the empty word. Callers use it to spell
/// out Artin relations and dihedral least common multiples.
pub fn alternating_product(s: Letter, t: Letter, m: usize) -> Word {
    let mut letters = Vec::with_capacity(m);
    for k in 0..m {
        letters.push(if k % 2 == 0 { s } else { t });
    }
    Word::from_letters(letters)
}

/// Failure to read a word literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordParseError {
    Empty,
    BadToken { token: String },
    LetterOutOfRange { letter: String, alphabet_size: usize },
}

impl fmt::Display for WordParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordParseError::Empty => write!(f, "empty word literal (use `e` for the identity)"),
            WordParseError::BadToken { token } => write!(f, "malformed word literal `{token}`"),
            WordParseError::LetterOutOfRange { letter, alphabet_size } => write!(
                f,
                "letter `{letter}` does not name a generator (alphabet has {alphabet_size})"
            ),
        }
    }
}
