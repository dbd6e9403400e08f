//! Complete deterministic finite automata.

use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};

/// Final-state combination mode for [`Dfa::boolean_product`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BooleanOp {
    Union,
    Intersection,
    Difference,
}

/// A complete deterministic finite automaton.
///
/// States are the indices `0..state_count`. The transition table is total:
/// `delta[q]` has one successor per alphabet letter, in alphabet order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    start: usize,
    finals: BTreeSet<usize>,
    delta: Vec<Vec<usize>>,
}

impl Dfa {
    /// Builds a DFA, validating completeness and index ranges.
    pub fn new(
        alphabet: Alphabet,
        start: usize,
        finals: impl IntoIterator<Item = usize>,
        delta: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = delta.len();
        if n == 0 {
            return Err(Error::InvalidAutomaton("automaton has no states".into()));
        }
        if start >= n {
            return Err(Error::InvalidAutomaton(format!(
                "start state {start} out of range (states: {n})"
            )));
        }
        let finals: BTreeSet<usize> = finals.into_iter().collect();
        if let Some(&f) = finals.iter().find(|&&f| f >= n) {
            return Err(Error::InvalidAutomaton(format!(
                "final state {f} out of range (states: {n})"
            )));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::InvalidAutomaton(format!(
                    "state {q} has {} transitions, expected {}",
                    row.len(),
                    alphabet.len()
                )));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(Error::InvalidAutomaton(format!(
                    "transition from state {q} to {t} out of range (states: {n})"
                )));
            }
        }
        Ok(Dfa {
            alphabet,
            start,
            finals,
            delta,
        })
    }

    /// The single-state automaton for `Σ*` (all-accepting) or `∅` (all-rejecting).
    pub fn trivial(alphabet: Alphabet, accept_all: bool) -> Self {
        let k = alphabet.len();
        Dfa {
            alphabet,
            start: 0,
            finals: if accept_all {
                std::iter::once(0).collect()
            } else {
                BTreeSet::new()
            },
            delta: vec![vec![0; k]],
        }
    }

    /// Prefix-tree automaton of a finite word list, completed with a sink.
    pub fn of_finite_language(alphabet: Alphabet, words: &[&str]) -> Result<Self> {
        let k = alphabet.len();
        // state 0 = root; transitions default to a sink added at the end
        let mut delta: Vec<Vec<Option<usize>>> = vec![vec![None; k]];
        let mut finals = BTreeSet::new();
        for w in words {
            let word = Word::parse(w, &alphabet)?;
            let mut q = 0;
            for &c in word.letters() {
                let j = alphabet.index_of(c).expect("validated letter");
                q = match delta[q][j] {
                    Some(t) => t,
                    None => {
                        let t = delta.len();
                        delta.push(vec![None; k]);
                        delta[q][j] = Some(t);
                        t
                    }
                };
            }
            finals.insert(q);
        }
        let sink = delta.len();
        let mut table: Vec<Vec<usize>> = delta
            .into_iter()
            .map(|row| row.into_iter().map(|t| t.unwrap_or(sink)).collect())
            .collect();
        table.push(vec![sink; k]);
        Dfa::new(alphabet, 0, finals, table)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals.contains(&q)
    }

    /// Successor of `q` on the letter with coordinate `j`.
    pub fn step_idx(&self, q: usize, j: usize) -> usize {
        self.delta[q][j]
    }

    /// Successor of `q` on letter `c`.
    pub fn step(&self, q: usize, c: char) -> Result<usize> {
        let j = self.alphabet.require(c)?;
        Ok(self.delta[q][j])
    }

    /// State reached from `q` by reading `w`.
    pub fn run_from(&self, q: usize, w: &Word) -> Result<usize> {
        let mut q = q;
        for &c in w.letters() {
            q = self.step(q, c)?;
        }
        Ok(q)
    }

    /// State reached from the start state by reading `w`.
    pub fn run(&self, w: &Word) -> Result<usize> {
        self.run_from(self.start, w)
    }

    /// State reached from `q` by reading `m` copies of letter coordinate `j`.
    pub fn run_letter_power(&self, q: usize, j: usize, m: usize) -> usize {
        let mut q = q;
        for _ in 0..m {
            q = self.delta[q][j];
        }
        q
    }

    /// Membership test.
    pub fn accepts(&self, w: &Word) -> Result<bool> {
        Ok(self.is_final(self.run(w)?))
    }

    /// Membership of the canonical word for a Parikh vector.
    pub fn accepts_parikh(&self, counts: &[usize]) -> bool {
        let mut q = self.start;
        for (j, &m) in counts.iter().enumerate() {
            q = self.run_letter_power(q, j, m);
        }
        self.is_final(q)
    }

    /// Complement automaton: same structure, finals flipped.
    ///
    /// Valid because the automaton is complete.
    pub fn complement(&self) -> Dfa {
        let finals = (0..self.state_count())
            .filter(|q| !self.finals.contains(q))
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            start: self.start,
            finals,
            delta: self.delta.clone(),
        }
    }

    /// The left quotient `u^{-1}L`: start moved to `δ(q0, u)`, then trimmed
    /// to the reachable part and canonically renumbered.
    pub fn left_quotient(&self, u: &Word) -> Result<Dfa> {
        let start = self.run(u)?;
        let moved = Dfa {
            alphabet: self.alphabet.clone(),
            start,
            finals: self.finals.clone(),
            delta: self.delta.clone(),
        };
        Ok(moved.canonicalize())
    }

    /// Product automaton on reachable state pairs; finals chosen per `op`.
    /// The result is not minimized.
    pub fn boolean_product(&self, other: &Dfa, op: BooleanOp) -> Result<Dfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let k = self.alphabet.len();
        let mut index = std::collections::HashMap::new();
        let mut pairs = vec![(self.start, other.start)];
        index.insert((self.start, other.start), 0usize);
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mut row = Vec::with_capacity(k);
            for j in 0..k {
                let succ = (self.delta[p][j], other.delta[q][j]);
                let t = *index.entry(succ).or_insert_with(|| {
                    pairs.push(succ);
                    pairs.len() - 1
                });
                row.push(t);
            }
            delta.push(row);
            i += 1;
        }
        let finals = pairs
            .iter()
            .enumerate()
            .filter(|(_, &(p, q))| {
                let a = self.is_final(p);
                let b = other.is_final(q);
                match op {
                    BooleanOp::Union => a || b,
                    BooleanOp::Intersection => a && b,
                    BooleanOp::Difference => a && !b,
                }
            })
            .map(|(i, _)| i)
            .collect::<Vec<_>>();
        Dfa::new(self.alphabet.clone(), 0, finals, delta)
    }

    /// Exact language equivalence, decided by searching the product automaton
    /// for a state pair with differing acceptance.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.distinguishing_word(other)?.is_none())
    }

    /// A shortest word accepted by exactly one of the two automata, if any.
    pub fn distinguishing_word(&self, other: &Dfa) -> Result<Option<Word>> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let k = self.alphabet.len();
        let mut seen = std::collections::HashSet::new();
        // BFS over pairs, remembering the discovery edge to rebuild the word
        let mut queue = std::collections::VecDeque::new();
        let root = (self.start, other.start);
        seen.insert(root);
        queue.push_back(root);
        let mut parent: std::collections::HashMap<(usize, usize), ((usize, usize), usize)> =
            std::collections::HashMap::new();
        while let Some((p, q)) = queue.pop_front() {
            if self.is_final(p) != other.is_final(q) {
                let mut letters = Vec::new();
                let mut cur = (p, q);
                while cur != root {
                    let (prev, j) = parent[&cur];
                    letters.push(self.alphabet.letter(j));
                    cur = prev;
                }
                letters.reverse();
                return Ok(Some(Word::from_letters(letters)));
            }
            for j in 0..k {
                let succ = (self.delta[p][j], other.delta[q][j]);
                if seen.insert(succ) {
                    parent.insert(succ, ((p, q), j));
                    queue.push_back(succ);
                }
            }
        }
        Ok(None)
    }

    /// A shortest word telling two states of this automaton apart, if any.
    pub fn distinguishing_suffix(&self, p: usize, q: usize) -> Option<Word> {
        let moved = |start: usize| Dfa {
            alphabet: self.alphabet.clone(),
            start,
            finals: self.finals.clone(),
            delta: self.delta.clone(),
        };
        moved(p)
            .distinguishing_word(&moved(q))
            .expect("same alphabet")
    }

    /// Set of states reachable from the start state.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut stack = vec![self.start];
        seen[self.start] = true;
        while let Some(q) = stack.pop() {
            for &t in &self.delta[q] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// Trims to the reachable part and renumbers states canonically:
    /// breadth-first from the start state, exploring letters in alphabet
    /// order. Two automata have identical canonical forms exactly when their
    /// reachable parts are isomorphic.
    pub fn canonicalize(&self) -> Dfa {
        let k = self.alphabet.len();
        let mut number = vec![usize::MAX; self.state_count()];
        let mut order = Vec::new();
        number[self.start] = 0;
        order.push(self.start);
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for j in 0..k {
                let t = self.delta[q][j];
                if number[t] == usize::MAX {
                    number[t] = order.len();
                    order.push(t);
                }
            }
            i += 1;
        }
        let delta = order
            .iter()
            .map(|&q| self.delta[q].iter().map(|&t| number[t]).collect())
            .collect();
        let finals = order
            .iter()
            .enumerate()
            .filter(|(_, q)| self.finals.contains(q))
            .map(|(i, _)| i)
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            start: 0,
            finals,
            delta,
        }
    }

    /// Structural isomorphism of the reachable parts: a bijection of states
    /// preserving start, finals and all transitions. Decided by comparing
    /// canonical renumberings.
    pub fn isomorphic(&self, other: &Dfa) -> bool {
        if self.alphabet != other.alphabet {
            return false;
        }
        self.canonicalize() == other.canonicalize()
    }
}
