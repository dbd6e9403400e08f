//! Commutative group languages: permutation-automaton detection, the
//! gcd/lcm shuffle bound with its sharp families, and the threshold-language
//! lower-bound generator.

use serde::Serialize;

use crate::alphabet::Alphabet;
use crate::commutative::from_parikh_oracle;
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::minimize::minimize;
use crate::num::{gcd, is_prime, lcm};

/// A per-letter period vector of a group language (whose index vector is
/// all zeros by definition).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodVector(Vec<u64>);

impl PeriodVector {
    pub fn new(periods: Vec<u64>) -> Result<Self> {
        if periods.is_empty() || periods.contains(&0) {
            return Err(Error::PreconditionViolation(
                "period entries must be positive".into(),
            ));
        }
        Ok(PeriodVector(periods))
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// True iff every letter acts as a permutation on the states of the minimal
/// automaton of `d`'s language.
pub fn is_permutation_automaton(d: &Dfa) -> bool {
    let m = minimize(d);
    let n = m.state_count();
    for j in 0..m.alphabet().len() {
        let mut hit = vec![false; n];
        for q in 0..n {
            let t = m.step_idx(q, j);
            if hit[t] {
                return false;
            }
            hit[t] = true;
        }
    }
    true
}

/// The gcd/lcm shuffle bound for two group languages, with the predicted
/// index and period vectors of the result.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GroupShuffleBound {
    /// `∏ (gcd(p_j, q_j) + lcm(p_j, q_j) - 1)`.
    pub states: u128,
    /// Predicted index vector: `lcm(p_j, q_j) - 1` per letter.
    pub index: Vec<u64>,
    /// Predicted period vector: `gcd(p_j, q_j)` per letter.
    pub period: Vec<u64>,
}

/// Evaluates the shuffle bound for group languages with the given period
/// vectors.
pub fn group_shuffle_bound(p: &PeriodVector, q: &PeriodVector) -> Result<GroupShuffleBound> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch);
    }
    let mut states: u128 = 1;
    let mut index = Vec::with_capacity(p.len());
    let mut period = Vec::with_capacity(p.len());
    for (&pj, &qj) in p.entries().iter().zip(q.entries()) {
        let l = lcm(pj, qj);
        let g = gcd(pj, qj);
        states *= (g + l - 1) as u128;
        index.push(l - 1);
        period.push(g);
    }
    Ok(GroupShuffleBound {
        states,
        index,
        period,
    })
}

/// The sharp pair for the group shuffle bound: `⧢_j a_j^{p-1}(a_j^p)*` and
/// `⧢_j a_j^{q-1}(a_j^q)*` for distinct primes, both permutation-automaton
/// languages with state complexities `p^k` and `q^k`; the measured state
/// complexity of their shuffle equals the bound exactly.
pub fn gen_sharp_group_pair(p: u64, q: u64, alphabet: &Alphabet) -> Result<(Dfa, Dfa)> {
    if p == q || !is_prime(p) || !is_prime(q) {
        return Err(Error::NotDistinctPrimes(p, q));
    }
    let u = crate::bounds::cyclic_residue_language(alphabet, p as usize, (p - 1) as usize)?;
    let v = crate::bounds::cyclic_residue_language(alphabet, q as usize, (q - 1) as usize)?;
    Ok((u, v))
}

/// The threshold language `{ w : |w|_{a_j} ≥ n_j for all j }`: state
/// complexity `∏ (n_j + 1)`, index vector `n`, period vector `(1,…,1)`.
pub fn gen_threshold_language(thresholds: &[usize], alphabet: &Alphabet) -> Result<Dfa> {
    if thresholds.len() != alphabet.len() {
        return Err(Error::LengthMismatch);
    }
    let bounds: Vec<(usize, usize)> = thresholds.iter().map(|&n| (n, 1)).collect();
    from_parikh_oracle(alphabet, &bounds, |t| {
        t.iter().zip(thresholds).all(|(&m, &n)| m >= n)
    })
}

/// The coarse bound `(n·m)^k` on the shuffle of group languages recognized
/// by automata with `n` and `m` states over a `k`-letter alphabet.
pub fn general_group_bound(n: u64, m: u64, k: u32) -> u128 {
    (n as u128 * m as u128).pow(k)
}
