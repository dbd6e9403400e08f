//! Alphabets and words.

use crate::error::{Error, Result};

/// An ordered alphabet of distinct single-character letters.
///
/// The order of the letters is significant: it fixes the coordinate order of
/// every Parikh vector, index/period vector and product-automaton state tuple
/// derived from languages over this alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    /// Builds an alphabet from the characters of `letters`, kept in order.
    pub fn new(letters: &str) -> Result<Self> {
        let letters: Vec<char> = letters.chars().collect();
        if letters.is_empty() {
            return Err(Error::InvalidAutomaton("alphabet is empty".into()));
        }
        for (i, &c) in letters.iter().enumerate() {
            if letters[..i].contains(&c) {
                return Err(Error::InvalidAutomaton(format!(
                    "duplicate letter '{c}' in alphabet"
                )));
            }
        }
        Ok(Alphabet { letters })
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// True when the alphabet has exactly one letter.
    pub fn is_unary(&self) -> bool {
        self.letters.len() == 1
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty alphabets
    }

    /// The letters in order.
    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    /// Letter at coordinate `idx`.
    pub fn letter(&self, idx: usize) -> char {
        self.letters[idx]
    }

    /// Coordinate of `c`, if present.
    pub fn index_of(&self, c: char) -> Option<usize> {
        self.letters.iter().position(|&l| l == c)
    }

    /// Coordinate of `c` or an error.
    pub fn require(&self, c: char) -> Result<usize> {
        self.index_of(c).ok_or(Error::LetterNotInAlphabet(c))
    }

    /// The alphabet as a `String`, e.g. `"ab"`.
    pub fn as_str(&self) -> String {
        self.letters.iter().collect()
    }

    /// Sub-alphabet keeping only the listed letters, in this alphabet's order.
    pub fn restrict(&self, keep: &[char]) -> Result<Alphabet> {
        for &c in keep {
            self.require(c)?;
        }
        let letters: Vec<char> = self
            .letters
            .iter()
            .copied()
            .filter(|c| keep.contains(c))
            .collect();
        if letters.is_empty() {
            return Err(Error::EmptyProjectionAlphabet);
        }
        Ok(Alphabet { letters })
    }
}

/// A word over some alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<char>,
}

impl Word {
    /// The empty word.
    pub fn epsilon() -> Self {
        Word { letters: vec![] }
    }

    /// Parses `src`, checking every letter against `alphabet`.
    pub fn parse(src: &str, alphabet: &Alphabet) -> Result<Self> {
        for c in src.chars() {
            alphabet.require(c)?;
        }
        Ok(Word {
            letters: src.chars().collect(),
        })
    }

    /// Builds a word from raw letters without validation.
    pub fn from_letters(letters: Vec<char>) -> Self {
        Word { letters }
    }

    /// The canonical word `a_1^{m_1} … a_k^{m_k}` for a Parikh vector.
    pub fn from_parikh(counts: &[usize], alphabet: &Alphabet) -> Self {
        let mut letters = Vec::new();
        for (j, &m) in counts.iter().enumerate() {
            letters.extend(std::iter::repeat_n(alphabet.letter(j), m));
        }
        Word { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    /// Occurrences of each alphabet letter, in alphabet order.
    pub fn parikh(&self, alphabet: &Alphabet) -> Vec<usize> {
        let mut counts = vec![0; alphabet.len()];
        for &c in &self.letters {
            if let Some(j) = alphabet.index_of(c) {
                counts[j] += 1;
            }
        }
        counts
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.letters {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
