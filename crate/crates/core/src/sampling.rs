//! Seeded random instance generators.
//!
//! The generator is a fixed splitmix64, so identical seeds reproduce
//! identical instances on every platform and build.

use crate::alphabet::Alphabet;
use crate::commutative::from_parikh_oracle;
use crate::dfa::Dfa;
use crate::error::Result;
use crate::unary::UnaryLang;

/// Splitmix64 pseudo-random generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` (bound ≥ 1).
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    pub fn flip(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }
}

/// A uniformly random complete DFA: random transition table, each state
/// final with probability 1/2, start state 0.
pub fn random_dfa(rng: &mut SplitMix64, alphabet: &Alphabet, states: usize) -> Dfa {
    let k = alphabet.len();
    let delta: Vec<Vec<usize>> = (0..states)
        .map(|_| (0..k).map(|_| rng.below(states)).collect())
        .collect();
    let finals: Vec<usize> = (0..states).filter(|_| rng.flip()).collect();
    Dfa::new(alphabet.clone(), 0, finals, delta).expect("random table is valid")
}

/// A random commutative language, commutative by construction: per-letter
/// index in `0..=max_index` and period in `1..=max_period` are sampled, then
/// every class tuple is accepted with probability 1/2 and the language is
/// realized through the Parikh oracle.
pub fn random_commutative_dfa(
    rng: &mut SplitMix64,
    alphabet: &Alphabet,
    max_index: usize,
    max_period: usize,
) -> Result<Dfa> {
    let k = alphabet.len();
    let bounds: Vec<(usize, usize)> = (0..k)
        .map(|_| (rng.below(max_index + 1), 1 + rng.below(max_period)))
        .collect();
    let dims: Vec<usize> = bounds.iter().map(|&(i, p)| i + p).collect();
    let total: usize = dims.iter().product();
    let marks: Vec<bool> = (0..total).map(|_| rng.flip()).collect();
    from_parikh_oracle(alphabet, &bounds, move |tuple| {
        let id = tuple
            .iter()
            .zip(&dims)
            .fold(0usize, |acc, (&m, &d)| acc * d + m);
        marks[id]
    })
}

/// A random group language: a shuffle of unary cyclic languages, one per
/// letter, which is a permutation-automaton language by construction.
pub fn random_group_dfa(
    rng: &mut SplitMix64,
    alphabet: &Alphabet,
    max_period: usize,
) -> Result<Dfa> {
    let k = alphabet.len();
    let langs: Vec<UnaryLang> = (0..k)
        .map(|j| {
            let period = 1 + rng.below(max_period);
            let mut residues: Vec<usize> = (0..period).filter(|_| rng.flip()).collect();
            if residues.is_empty() {
                residues.push(rng.below(period));
            }
            UnaryLang::new(alphabet.letter(j), 0, period, residues)
        })
        .collect();
    crate::commutative::shuffle_unary_family(alphabet, &langs)
}

/// A random eventually periodic unary language over `letter`.
pub fn random_unary_lang(
    rng: &mut SplitMix64,
    letter: char,
    max_index: usize,
    max_period: usize,
) -> UnaryLang {
    let index = rng.below(max_index + 1);
    let period = 1 + rng.below(max_period);
    let marks: Vec<usize> = (0..index + period).filter(|_| rng.flip()).collect();
    UnaryLang::new(letter, index, period, marks)
}
