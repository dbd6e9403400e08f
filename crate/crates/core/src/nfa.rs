//! Nondeterministic automata with epsilon edges.
//!
//! NFAs appear only as intermediates: closures, projections and the general
//! shuffle construction build an NFA, determinize it and minimize the result.

use std::collections::{BTreeSet, HashMap};

use crate::alphabet::Alphabet;
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::DEFAULT_STATE_GUARD;

/// A nondeterministic finite automaton with optional epsilon transitions.
#[derive(Debug, Clone)]
pub struct Nfa {
    alphabet: Alphabet,
    starts: BTreeSet<usize>,
    finals: BTreeSet<usize>,
    /// trans[q][j] = successors of q on letter j
    trans: Vec<Vec<BTreeSet<usize>>>,
    /// eps[q] = epsilon successors of q
    eps: Vec<BTreeSet<usize>>,
}

impl Nfa {
    /// An NFA with `states` states and no transitions.
    pub fn empty(alphabet: Alphabet, states: usize) -> Self {
        let k = alphabet.len();
        Nfa {
            alphabet,
            starts: BTreeSet::new(),
            finals: BTreeSet::new(),
            trans: vec![vec![BTreeSet::new(); k]; states],
            eps: vec![BTreeSet::new(); states],
        }
    }

    /// Views a DFA as an NFA.
    pub fn from_dfa(d: &Dfa) -> Self {
        let k = d.alphabet().len();
        let mut n = Nfa::empty(d.alphabet().clone(), d.state_count());
        n.starts.insert(d.start());
        for q in 0..d.state_count() {
            if d.is_final(q) {
                n.finals.insert(q);
            }
            for j in 0..k {
                n.trans[q][j].insert(d.step_idx(q, j));
            }
        }
        n
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.trans.len()
    }

    pub fn starts(&self) -> &BTreeSet<usize> {
        &self.starts
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn transitions(&self, q: usize, letter: usize) -> &BTreeSet<usize> {
        &self.trans[q][letter]
    }

    pub fn epsilon_transitions(&self, q: usize) -> &BTreeSet<usize> {
        &self.eps[q]
    }

    /// Appends a fresh state and returns its index.
    pub fn add_state(&mut self) -> usize {
        self.trans.push(vec![BTreeSet::new(); self.alphabet.len()]);
        self.eps.push(BTreeSet::new());
        self.trans.len() - 1
    }

    pub fn add_start(&mut self, q: usize) {
        self.starts.insert(q);
    }

    pub fn add_final(&mut self, q: usize) {
        self.finals.insert(q);
    }

    pub fn clear_finals(&mut self) {
        self.finals.clear();
    }

    pub fn add_edge(&mut self, from: usize, letter: usize, to: usize) {
        self.trans[from][letter].insert(to);
    }

    pub fn add_epsilon(&mut self, from: usize, to: usize) {
        self.eps[from].insert(to);
    }

    fn epsilon_close(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &t in &self.eps[q] {
                if set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }

    /// Subset construction with the default state guard.
    pub fn determinize(&self) -> Result<Dfa> {
        self.determinize_with_guard(DEFAULT_STATE_GUARD)
    }

    /// Subset construction: materializes only the subset-states reachable
    /// from the epsilon closure of the start set. Aborts with
    /// [`Error::StateBlowup`] once more than `guard` subsets exist.
    pub fn determinize_with_guard(&self, guard: usize) -> Result<Dfa> {
        let k = self.alphabet.len();
        let mut start = self.starts.clone();
        self.epsilon_close(&mut start);

        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        let start_key: Vec<usize> = start.iter().copied().collect();
        index.insert(start_key.clone(), 0);
        subsets.push(start_key);

        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            let mut row = Vec::with_capacity(k);
            for j in 0..k {
                let mut succ = BTreeSet::new();
                for &q in &subsets[i] {
                    succ.extend(self.trans[q][j].iter().copied());
                }
                self.epsilon_close(&mut succ);
                let key: Vec<usize> = succ.into_iter().collect();
                let t = match index.get(&key) {
                    Some(&t) => t,
                    None => {
                        if subsets.len() >= guard {
                            return Err(Error::StateBlowup(guard));
                        }
                        let t = subsets.len();
                        index.insert(key.clone(), t);
                        subsets.push(key);
                        t
                    }
                };
                row.push(t);
            }
            delta.push(row);
            i += 1;
        }

        let finals: Vec<usize> = subsets
            .iter()
            .enumerate()
            .filter(|(_, set)| set.iter().any(|q| self.finals.contains(q)))
            .map(|(i, _)| i)
            .collect();
        Dfa::new(self.alphabet.clone(), 0, finals, delta)
    }

    /// Concatenation: accepts `L(self)·L(other)`. The operand state sets are
    /// laid out side by side with epsilon edges from `self`'s finals to
    /// `other`'s starts.
    pub fn concat(&self, other: &Nfa) -> Result<Nfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let offset = self.state_count();
        let mut out = self.clone();
        for q in 0..other.state_count() {
            out.add_state();
            for j in 0..out.alphabet.len() {
                let targets: Vec<usize> =
                    other.trans[q][j].iter().map(|&t| t + offset).collect();
                out.trans[offset + q][j].extend(targets);
            }
            let eps: Vec<usize> = other.eps[q].iter().map(|&t| t + offset).collect();
            out.eps[offset + q].extend(eps);
        }
        for &f in &self.finals {
            for &s in &other.starts {
                out.add_epsilon(f, s + offset);
            }
        }
        out.clear_finals();
        for &f in &other.finals {
            out.add_final(f + offset);
        }
        Ok(out)
    }

    /// Kleene star.
    pub fn star(&self) -> Nfa {
        let mut out = self.clone();
        let hub = out.add_state();
        for &s in &self.starts {
            out.add_epsilon(hub, s);
        }
        for &f in &self.finals {
            out.add_epsilon(f, hub);
        }
        out.starts = std::iter::once(hub).collect();
        out.finals.insert(hub);
        out
    }
}
