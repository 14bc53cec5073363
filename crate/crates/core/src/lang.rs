//! Alphabets, words, the pangram predicates and the subsequence relation.
//!
//! Symbols are text tokens (not single characters), so machine-generated
//! alphabets like `V ∪ {1..|V|}` need no escaping. Internally a word is a
//! sequence of indices into its alphabet; parsing from and rendering to
//! token form happens at the boundary.

use crate::{Error, Result};

/// Index of a symbol in its [`Alphabet`].
pub type Symbol = usize;

/// A word is a sequence of symbol indices over an associated alphabet.
pub type Word = Vec<Symbol>;

/// An ordered, duplicate-free, nonempty set of symbol tokens.
///
/// The declaration order is canonical: every tie-break in the toolkit
/// (shortest-witness selection, permutation enumeration, state naming)
/// uses this order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::input("alphabet must not be empty"));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::input("alphabet symbols must be nonempty tokens"));
            }
            if symbols[..i].contains(s) {
                return Err(Error::input(format!("duplicate alphabet symbol `{s}`")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Convenience constructor for single-character test alphabets.
    pub fn of_chars(chars: &str) -> Self {
        Alphabet::new(chars.chars().map(|c| c.to_string())).expect("valid test alphabet")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: at least one symbol
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, i: Symbol) -> &str {
        &self.symbols[i]
    }

    pub fn index_of(&self, token: &str) -> Option<Symbol> {
        self.symbols.iter().position(|s| s == token)
    }

    /// The word listing every symbol once, in alphabet order.
    pub fn full_word(&self) -> Word {
        (0..self.len()).collect()
    }

    /// Parses a word given as symbol tokens.
    pub fn word_from_tokens<S: AsRef<str>>(&self, tokens: &[S]) -> Result<Word> {
        tokens
            .iter()
            .map(|t| {
                self.index_of(t.as_ref())
                    .ok_or_else(|| Error::input(format!("symbol `{}` is not in the alphabet", t.as_ref())))
            })
            .collect()
    }

    /// Parses a word given as a string of single-character symbols.
    /// Only meaningful when every alphabet symbol has length 1.
    pub fn word_from_str(&self, s: &str) -> Result<Word> {
        s.chars()
            .map(|c| {
                let t = c.to_string();
                self.index_of(&t)
                    .ok_or_else(|| Error::input(format!("symbol `{t}` is not in the alphabet")))
            })
            .collect()
    }

    pub fn render(&self, w: &[Symbol]) -> Vec<String> {
        w.iter().map(|&s| self.symbols[s].clone()).collect()
    }

    /// Joined-string form: symbols concatenated when all are single
    /// characters, space-separated otherwise. Empty word renders as "ε".
    pub fn render_compact(&self, w: &[Symbol]) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.symbols.iter().all(|s| s.chars().count() == 1) { "" } else { " " };
        self.render(w).join(sep)
    }

    fn check_word(&self, w: &[Symbol]) -> Result<()> {
        for &s in w {
            if s >= self.len() {
                return Err(Error::input(format!(
                    "letter index {s} outside alphabet of size {}",
                    self.len()
                )));
            }
        }
        Ok(())
    }
}

/// Boolean answer plus an optional witness word.
///
/// For existential questions the witness certifies a `true` answer; for
/// universal questions it is a counterexample certifying `false`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub answer: bool,
    pub witness: Option<Word>,
}

impl Verdict {
    pub fn yes(witness: Option<Word>) -> Self {
        Verdict { answer: true, witness }
    }

    pub fn no(witness: Option<Word>) -> Self {
        Verdict { answer: false, witness }
    }
}

/// Does every symbol of `sigma` occur at least once in `w`?
pub fn is_pangram(w: &[Symbol], sigma: &Alphabet) -> Result<bool> {
    sigma.check_word(w)?;
    let mut seen = vec![false; sigma.len()];
    for &s in w {
        seen[s] = true;
    }
    Ok(seen.iter().all(|&b| b))
}

/// Does every symbol of `sigma` occur exactly once in `w`?
pub fn is_perfect_pangram(w: &[Symbol], sigma: &Alphabet) -> Result<bool> {
    sigma.check_word(w)?;
    Ok(w.len() == sigma.len() && is_pangram(w, sigma)?)
}

/// Order-preserving embedding test, by the greedy left-to-right scan.
pub fn is_subsequence(u: &[Symbol], w: &[Symbol]) -> bool {
    let mut i = 0;
    for &c in w {
        if i < u.len() && u[i] == c {
            i += 1;
        }
    }
    i == u.len()
}
