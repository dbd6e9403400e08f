//! Commutative languages: index/period structure, the per-letter product
//! automaton, the product-form test, projections and the unary shuffle
//! decomposition.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::alphabet::{Alphabet, Word};
use crate::dfa::{BooleanOp, Dfa};
use crate::error::{Error, Result};
use crate::minimize::minimize;
use crate::nfa::Nfa;
use crate::unary::UnaryLang;
use crate::DEFAULT_STATE_GUARD;

/// True iff the language of `d` is closed under permutation of letters.
///
/// Decided on the minimal automaton by checking `δ(q, xy) = δ(q, yx)` for
/// every state and letter pair, which is sound and complete there because
/// the Nerode congruence of a commutative language is a two-sided congruence.
pub fn is_commutative(d: &Dfa) -> bool {
    letters_commute(&minimize(d), |_, _| true)
}

/// Statewise swap check for letter pairs selected by `independent`.
pub(crate) fn letters_commute(m: &Dfa, independent: impl Fn(usize, usize) -> bool) -> bool {
    let k = m.alphabet().len();
    for q in 0..m.state_count() {
        for x in 0..k {
            for y in x + 1..k {
                if !independent(x, y) {
                    continue;
                }
                let xy = m.step_idx(m.step_idx(q, x), y);
                let yx = m.step_idx(m.step_idx(q, y), x);
                if xy != yx {
                    return false;
                }
            }
        }
    }
    true
}

/// The per-letter structure of a commutative regular language.
///
/// For each letter `a_j`, the walk `δ(q0, a_j^m)` through the minimal
/// automaton is eventually cyclic: `index[j]` steps of tail followed by a
/// cycle of length `period[j]`. Positions `m < index[j] + period[j]`
/// represent the Nerode classes of the powers of `a_j`, and `finals` holds
/// the class tuples of accepted Parikh vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutativeProfile {
    alphabet: Alphabet,
    rho_walks: Vec<Vec<usize>>,
    index: Vec<usize>,
    period: Vec<usize>,
    finals: BTreeSet<Vec<usize>>,
}

#[derive(Serialize)]
struct ProfileDoc<'a> {
    index: &'a [usize],
    period: &'a [usize],
    finals: Vec<&'a Vec<usize>>,
}

impl CommutativeProfile {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn index(&self) -> &[usize] {
        &self.index
    }

    pub fn period(&self) -> &[usize] {
        &self.period
    }

    /// Accepted class tuples of the product automaton.
    pub fn finals(&self) -> &BTreeSet<Vec<usize>> {
        &self.finals
    }

    /// States of the minimal automaton visited by powers of letter `j`.
    pub fn rho_walk(&self, j: usize) -> &[usize] {
        &self.rho_walks[j]
    }

    /// Number of Nerode classes of powers of letter `j`.
    pub fn class_count(&self, j: usize) -> usize {
        self.index[j] + self.period[j]
    }

    /// Class of `a_j^m`.
    pub fn class_of(&self, j: usize, m: usize) -> usize {
        let bound = self.class_count(j);
        if m < bound {
            m
        } else {
            self.index[j] + (m - self.index[j]) % self.period[j]
        }
    }

    /// Successor class under one more `a_j`.
    pub fn step_class(&self, j: usize, class: usize) -> usize {
        if class + 1 < self.class_count(j) {
            class + 1
        } else {
            self.index[j]
        }
    }

    /// Product of the per-letter class counts, the state count of the
    /// product automaton.
    pub fn classes_product(&self) -> u128 {
        (0..self.alphabet.len())
            .map(|j| self.class_count(j) as u128)
            .product()
    }

    /// Parikh membership through the class structure.
    pub fn contains_parikh(&self, counts: &[usize]) -> bool {
        let tuple: Vec<usize> = counts
            .iter()
            .enumerate()
            .map(|(j, &m)| self.class_of(j, m))
            .collect();
        self.finals.contains(&tuple)
    }

    /// The canonical JSON form `{"index":…,"period":…,"finals":…}`.
    pub fn to_json(&self) -> String {
        let doc = ProfileDoc {
            index: &self.index,
            period: &self.period,
            finals: self.finals.iter().collect(),
        };
        serde_json::to_string(&doc).expect("serialization cannot fail")
    }
}

/// Computes the [`CommutativeProfile`] of a commutative language.
///
/// Errors with [`Error::NotCommutative`] otherwise. Accepted class tuples
/// are found by simulating the canonical words `a_1^{m_1}…a_k^{m_k}`, which
/// is exhaustive because membership of a commutative language depends only
/// on the Parikh vector.
pub fn profile(d: &Dfa) -> Result<CommutativeProfile> {
    profile_of_minimal(&minimize(d))
}

pub(crate) fn profile_of_minimal(m: &Dfa) -> Result<CommutativeProfile> {
    if !letters_commute(m, |_, _| true) {
        return Err(Error::NotCommutative);
    }
    let k = m.alphabet().len();
    let mut rho_walks = Vec::with_capacity(k);
    let mut index = Vec::with_capacity(k);
    let mut period = Vec::with_capacity(k);
    for j in 0..k {
        let mut seen = vec![usize::MAX; m.state_count()];
        let mut walk = Vec::new();
        let mut q = m.start();
        while seen[q] == usize::MAX {
            seen[q] = walk.len();
            walk.push(q);
            q = m.step_idx(q, j);
        }
        index.push(seen[q]);
        period.push(walk.len() - seen[q]);
        rho_walks.push(walk);
    }
    let dims: Vec<usize> = (0..k).map(|j| index[j] + period[j]).collect();
    let mut finals = BTreeSet::new();
    let mut tuple = vec![0usize; k];
    loop {
        if m.accepts_parikh(&tuple) {
            finals.insert(tuple.clone());
        }
        if !next_tuple(&mut tuple, &dims) {
            break;
        }
    }
    Ok(CommutativeProfile {
        alphabet: m.alphabet().clone(),
        rho_walks,
        index,
        period,
        finals,
    })
}

/// Advances a mixed-radix counter; false once it wraps to all zeros.
pub(crate) fn next_tuple(tuple: &mut [usize], dims: &[usize]) -> bool {
    for j in (0..tuple.len()).rev() {
        tuple[j] += 1;
        if tuple[j] < dims[j] {
            return true;
        }
        tuple[j] = 0;
    }
    false
}

/// Builds the DFA whose states are all per-letter class tuples of a Parikh
/// structure: coordinate `j` advances by one on letter `j` and wraps from
/// the last class back to `index[j]`. Tuples are numbered row-major with the
/// last letter fastest.
pub(crate) fn rho_box_dfa(
    alphabet: &Alphabet,
    index: &[usize],
    period: &[usize],
    mut accept: impl FnMut(&[usize]) -> bool,
    guard: usize,
) -> Result<Dfa> {
    let k = alphabet.len();
    let dims: Vec<usize> = (0..k).map(|j| index[j] + period[j]).collect();
    let mut total: usize = 1;
    for &d in &dims {
        total = total
            .checked_mul(d)
            .filter(|&t| t <= guard)
            .ok_or(Error::StateBlowup(guard))?;
    }
    let mut strides = vec![0usize; k];
    let mut acc = 1;
    for j in (0..k).rev() {
        strides[j] = acc;
        acc *= dims[j];
    }
    let mut delta = Vec::with_capacity(total);
    let mut finals = Vec::new();
    let mut tuple = vec![0usize; k];
    for id in 0..total {
        let row: Vec<usize> = (0..k)
            .map(|j| {
                if tuple[j] + 1 < dims[j] {
                    id + strides[j]
                } else {
                    id - (tuple[j] - index[j]) * strides[j]
                }
            })
            .collect();
        delta.push(row);
        if accept(&tuple) {
            finals.push(id);
        }
        next_tuple(&mut tuple, &dims);
    }
    Dfa::new(alphabet.clone(), 0, finals, delta)
}

/// Materializes the per-letter product automaton of a commutative language:
/// state set `∏_j [0, i_j + p_j)`, coordinate-wise rho transitions, start
/// `(0,…,0)`, finals the accepted class tuples. Language-equivalent to `d`.
pub fn build_product_automaton(d: &Dfa) -> Result<Dfa> {
    let p = profile(d)?;
    build_product_automaton_of(&p)
}

/// Same as [`build_product_automaton`], from an existing profile.
pub fn build_product_automaton_of(p: &CommutativeProfile) -> Result<Dfa> {
    rho_box_dfa(
        &p.alphabet,
        &p.index,
        &p.period,
        |tuple| p.finals.contains(tuple),
        DEFAULT_STATE_GUARD,
    )
}

/// Result of the product-form decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProductFormReport {
    /// True iff the minimal automaton is isomorphic to the product automaton,
    /// equivalently `sc(L) = ∏ (i_j + p_j)`.
    pub product_form: bool,
    /// State complexity of the language.
    pub sc: usize,
    /// States of the product automaton, `∏ (i_j + p_j)`.
    pub c_states: u128,
}

/// Decides whether a commutative language has a product-form minimal
/// automaton, by comparing the state complexity with the product of the
/// per-letter class counts.
pub fn has_product_form(d: &Dfa) -> Result<ProductFormReport> {
    let m = minimize(d);
    let p = profile_of_minimal(&m)?;
    let c_states = p.classes_product();
    Ok(ProductFormReport {
        product_form: m.state_count() as u128 == c_states,
        sc: m.state_count(),
        c_states,
    })
}

/// Evaluates both sides of the Nerode characterization on a word pair:
/// left, whether `u ≡_L v`; right, whether `a^{|u|_a} ≡_L a^{|v|_a}` for
/// every letter `a`. The right side always implies the left for commutative
/// languages; both agree on all pairs exactly for product-form languages.
pub fn nerode_char_check(d: &Dfa, u: &Word, v: &Word) -> Result<(bool, bool)> {
    let m = minimize(d);
    if !letters_commute(&m, |_, _| true) {
        return Err(Error::NotCommutative);
    }
    let lhs = m.run(u)? == m.run(v)?;
    let cu = u.parikh(m.alphabet());
    let cv = v.parikh(m.alphabet());
    let rhs = (0..m.alphabet().len()).all(|j| {
        m.run_letter_power(m.start(), j, cu[j]) == m.run_letter_power(m.start(), j, cv[j])
    });
    Ok((lhs, rhs))
}

/// The projection `π_Γ(L)` onto the sub-alphabet `keep`: transitions on
/// dropped letters become epsilon edges, then determinize and minimize.
pub fn projection(d: &Dfa, keep: &[char]) -> Result<Dfa> {
    projection_with_guard(d, keep, DEFAULT_STATE_GUARD)
}

pub fn projection_with_guard(d: &Dfa, keep: &[char], guard: usize) -> Result<Dfa> {
    if keep.is_empty() {
        return Err(Error::EmptyProjectionAlphabet);
    }
    let sub = d.alphabet().restrict(keep)?;
    let mut nfa = Nfa::empty(sub.clone(), d.state_count());
    nfa.add_start(d.start());
    for &f in d.finals() {
        nfa.add_final(f);
    }
    for q in 0..d.state_count() {
        for (j, &c) in d.alphabet().letters().iter().enumerate() {
            let t = d.step_idx(q, j);
            match sub.index_of(c) {
                Some(sj) => nfa.add_edge(q, sj, t),
                None => nfa.add_epsilon(q, t),
            }
        }
    }
    Ok(minimize(&nfa.determinize_with_guard(guard)?))
}

/// One term of a [`ShuffleDecomposition`]: the words driving the product
/// automaton into one accepted class tuple, as a shuffle of one unary
/// language per letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTerm {
    /// The accepted class tuple this term came from.
    pub final_tuple: Vec<usize>,
    /// One unary language per letter, in alphabet order.
    pub factors: Vec<UnaryLang>,
}

/// A commutative language written as a finite union of shuffles of unary
/// languages, one term per final state of the product automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleDecomposition {
    pub alphabet: Alphabet,
    pub terms: Vec<DecompositionTerm>,
}

/// Decomposes a commutative language into one term per accepted class tuple
/// of the product automaton. Terms with distinct tuples denote disjoint
/// languages and are kept distinct even if equal as sets.
pub fn decompose(d: &Dfa) -> Result<ShuffleDecomposition> {
    let p = profile(d)?;
    let terms = p
        .finals
        .iter()
        .map(|tuple| {
            let factors = tuple
                .iter()
                .enumerate()
                .map(|(j, &class)| {
                    UnaryLang::new(p.alphabet.letter(j), p.index[j], p.period[j], [class])
                })
                .collect();
            DecompositionTerm {
                final_tuple: tuple.clone(),
                factors,
            }
        })
        .collect();
    Ok(ShuffleDecomposition {
        alphabet: p.alphabet,
        terms,
    })
}

impl ShuffleDecomposition {
    /// Rebuilds the language: the union over terms of the shuffle of each
    /// term's unary factors.
    pub fn recompose(&self) -> Result<Dfa> {
        let mut acc = Dfa::trivial(self.alphabet.clone(), false);
        for term in &self.terms {
            let part = shuffle_unary_family(&self.alphabet, &term.factors)?;
            acc = minimize(&acc.boolean_product(&part, BooleanOp::Union)?);
        }
        Ok(acc)
    }
}

/// Builds the minimal DFA of a language given by a Parikh predicate.
///
/// `bounds[j] = (index cap, period cap)` declares the eventually periodic
/// shape of the predicate in coordinate `j`: the oracle is consulted for
/// every class tuple below the caps and must repeat beyond them (that is the
/// caller's responsibility; a violating oracle simply yields the language of
/// the capped predicate).
pub fn from_parikh_oracle(
    alphabet: &Alphabet,
    bounds: &[(usize, usize)],
    oracle: impl FnMut(&[usize]) -> bool,
) -> Result<Dfa> {
    from_parikh_oracle_with_guard(alphabet, bounds, oracle, DEFAULT_STATE_GUARD)
}

pub fn from_parikh_oracle_with_guard(
    alphabet: &Alphabet,
    bounds: &[(usize, usize)],
    oracle: impl FnMut(&[usize]) -> bool,
    guard: usize,
) -> Result<Dfa> {
    if bounds.len() != alphabet.len() {
        return Err(Error::LengthMismatch);
    }
    if bounds.iter().any(|&(_, p)| p == 0) {
        return Err(Error::PreconditionViolation(
            "period caps must be positive".into(),
        ));
    }
    let index: Vec<usize> = bounds.iter().map(|&(i, _)| i).collect();
    let period: Vec<usize> = bounds.iter().map(|&(_, p)| p).collect();
    let boxed = rho_box_dfa(alphabet, &index, &period, oracle, guard)?;
    Ok(minimize(&boxed))
}

/// The shuffle `⧢_j L_j` of one unary language per letter, as a minimal DFA.
///
/// When every factor is infinite, the result has state complexity
/// `∏ sc(L_j)` and a product-form minimal automaton.
pub fn shuffle_unary_family(alphabet: &Alphabet, langs: &[UnaryLang]) -> Result<Dfa> {
    if langs.len() != alphabet.len() {
        return Err(Error::LengthMismatch);
    }
    for (j, l) in langs.iter().enumerate() {
        if l.letter != alphabet.letter(j) {
            return Err(Error::LetterNotInAlphabet(l.letter));
        }
    }
    let bounds: Vec<(usize, usize)> = langs.iter().map(|l| (l.index, l.period)).collect();
    from_parikh_oracle(alphabet, &bounds, |tuple| {
        tuple.iter().enumerate().all(|(j, &m)| langs[j].contains(m))
    })
}

/// Number of letters whose single-letter projection is a finite language.
///
/// At most one for every language with a product-form minimal automaton.
pub fn finite_projection_count(d: &Dfa) -> Result<usize> {
    let mut count = 0;
    for &c in d.alphabet().letters() {
        let proj = projection(d, &[c])?;
        if !UnaryLang::read_off(c, &proj).is_infinite() {
            count += 1;
        }
    }
    Ok(count)
}
