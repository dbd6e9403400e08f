//! Ultimately periodic unary languages.

use std::collections::BTreeSet;

use crate::alphabet::Alphabet;
use crate::dfa::Dfa;
use crate::minimize::minimize;

/// A regular language over a single letter, stored in canonical
/// index/period form.
///
/// Positions `m < index` are accepted exactly when `m ∈ residues`; positions
/// `m ≥ index` are accepted exactly when their representative
/// `index + (m - index) mod period` is. Canonicity: `(index, period)` is the
/// minimal pair describing the set, so equal languages are structurally
/// equal values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnaryLang {
    pub letter: char,
    pub index: usize,
    pub period: usize,
    pub residues: BTreeSet<usize>,
}

impl UnaryLang {
    /// Builds the canonical form of the language whose accepted positions
    /// below `index + period` are `marks` (positions `≥ index` repeating with
    /// `period`). The description need not be minimal.
    pub fn new(
        letter: char,
        index: usize,
        period: usize,
        marks: impl IntoIterator<Item = usize>,
    ) -> Self {
        assert!(period >= 1, "period must be positive");
        let marks: BTreeSet<usize> = marks.into_iter().collect();
        assert!(
            marks.iter().all(|&m| m < index + period),
            "marks must lie below index + period"
        );
        // canonicalize through the minimal automaton of the described chain
        let size = index + period;
        let alphabet = Alphabet::new(&letter.to_string()).expect("single letter");
        let delta: Vec<Vec<usize>> = (0..size)
            .map(|m| vec![if m + 1 < size { m + 1 } else { index }])
            .collect();
        let chain = Dfa::new(alphabet, 0, marks, delta).expect("valid chain automaton");
        let minimal = minimize(&chain);
        Self::read_off(letter, &minimal)
    }

    /// The language `{letter^m : m ∈ positions}` for a finite position set.
    pub fn finite(letter: char, positions: impl IntoIterator<Item = usize>) -> Self {
        let positions: BTreeSet<usize> = positions.into_iter().collect();
        let index = positions.iter().max().map_or(0, |&m| m + 1);
        UnaryLang::new(letter, index, 1, positions)
    }

    /// Extracts the canonical description from a minimal unary automaton.
    ///
    /// The rho shape of a minimal unary automaton (a tail followed by a
    /// cycle) gives index, period and residues directly.
    pub fn read_off(letter: char, minimal: &Dfa) -> Self {
        debug_assert!(minimal.alphabet().is_unary());
        let mut seen = vec![usize::MAX; minimal.state_count()];
        let mut q = minimal.start();
        let mut walk = Vec::new();
        while seen[q] == usize::MAX {
            seen[q] = walk.len();
            walk.push(q);
            q = minimal.step_idx(q, 0);
        }
        let index = seen[q];
        let period = walk.len() - index;
        let residues = walk
            .iter()
            .enumerate()
            .filter(|(_, &s)| minimal.is_final(s))
            .map(|(m, _)| m)
            .collect();
        UnaryLang {
            letter,
            index,
            period,
            residues,
        }
    }

    /// Number of states of the minimal automaton, `index + period`.
    pub fn state_complexity(&self) -> usize {
        self.index + self.period
    }

    /// Membership of `letter^m`.
    pub fn contains(&self, m: usize) -> bool {
        let pos = if m < self.index + self.period {
            m
        } else {
            self.index + (m - self.index) % self.period
        };
        self.residues.contains(&pos)
    }

    /// True when the language is infinite, i.e. some accepted position lies
    /// on the cyclic part.
    pub fn is_infinite(&self) -> bool {
        self.residues.iter().any(|&m| m >= self.index)
    }

    /// The minimal chain automaton over the single-letter alphabet.
    pub fn to_dfa(&self) -> Dfa {
        let size = self.index + self.period;
        let alphabet = Alphabet::new(&self.letter.to_string()).expect("single letter");
        let delta = (0..size)
            .map(|m| vec![if m + 1 < size { m + 1 } else { self.index }])
            .collect();
        Dfa::new(alphabet, 0, self.residues.iter().copied(), delta)
            .expect("valid chain automaton")
    }
}
