//! Independent oracles shared by the integration suites.
#![allow(dead_code)] // each test binary uses its own subset of the oracles
//!
//! Everything here recomputes results along routes that do not share logic
//! with the implementation under test: Moore refinement instead of Hopcroft,
//! dynamic programming over raw transition tables instead of NFA closures,
//! and naive split enumeration instead of the factored split tables.

use comlang::alphabet::{Alphabet, Word};
use comlang::commutative::{from_parikh_oracle, profile};
use comlang::dfa::Dfa;
use comlang::sampling::SplitMix64;

/// Moore-style minimization by iterated signature refinement, built directly
/// on the transition table. Returns the quotient automaton without any
/// canonical renumbering.
pub fn moore_minimize(d: &Dfa) -> Dfa {
    let k = d.alphabet().len();
    // reachable part, own traversal
    let mut keep = vec![false; d.state_count()];
    let mut stack = vec![d.start()];
    keep[d.start()] = true;
    while let Some(q) = stack.pop() {
        for j in 0..k {
            let t = d.step_idx(q, j);
            if !keep[t] {
                keep[t] = true;
                stack.push(t);
            }
        }
    }
    let states: Vec<usize> = (0..d.state_count()).filter(|&q| keep[q]).collect();
    let mut class: std::collections::HashMap<usize, usize> = states
        .iter()
        .map(|&q| (q, usize::from(d.is_final(q))))
        .collect();
    loop {
        let mut sig_index: std::collections::HashMap<(usize, Vec<usize>), usize> =
            std::collections::HashMap::new();
        let mut next: std::collections::HashMap<usize, usize> =
            std::collections::HashMap::new();
        for &q in &states {
            let sig = (
                class[&q],
                (0..k).map(|j| class[&d.step_idx(q, j)]).collect::<Vec<_>>(),
            );
            let fresh = sig_index.len();
            let id = *sig_index.entry(sig).or_insert(fresh);
            next.insert(q, id);
        }
        if (0..states.len()).all(|i| {
            (0..states.len())
                .all(|j| (class[&states[i]] == class[&states[j]]) == (next[&states[i]] == next[&states[j]]))
        }) {
            class = next;
            break;
        }
        class = next;
    }
    let block_count = class.values().copied().max().unwrap_or(0) + 1;
    let mut rep = vec![usize::MAX; block_count];
    for &q in &states {
        let b = class[&q];
        if rep[b] == usize::MAX {
            rep[b] = q;
        }
    }
    let delta: Vec<Vec<usize>> = rep
        .iter()
        .map(|&q| (0..k).map(|j| class[&d.step_idx(q, j)]).collect())
        .collect();
    let finals: Vec<usize> = (0..block_count).filter(|&b| d.is_final(rep[b])).collect();
    Dfa::new(d.alphabet().clone(), class[&d.start()], finals, delta)
        .expect("quotient table is valid")
}

/// All words over `alphabet` of length at most `n`, shortest first.
pub fn words_upto(alphabet: &Alphabet, n: usize) -> Vec<Word> {
    let mut words = vec![Word::epsilon()];
    let mut frontier = vec![Vec::<char>::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &frontier {
            for &c in alphabet.letters() {
                let mut s = w.clone();
                s.push(c);
                words.push(Word::from_letters(s.clone()));
                next.push(s);
            }
        }
        frontier = next;
    }
    words
}

/// Membership of `w` in the upward closure of `L(d)`: some accepted word is
/// a subsequence of `w`. Dynamic programming over (state, position) pairs.
pub fn upward_member_oracle(d: &Dfa, w: &Word) -> bool {
    let letters = w.letters();
    let mut reach = vec![vec![false; d.state_count()]; letters.len() + 1];
    reach[0][d.start()] = true;
    for (i, &c) in letters.iter().enumerate() {
        for q in 0..d.state_count() {
            if reach[i][q] {
                reach[i + 1][q] = true; // skip the letter: it is an insertion
                let t = d.step(q, c).expect("letter of the alphabet");
                reach[i + 1][t] = true; // feed it to the automaton
            }
        }
    }
    (0..d.state_count()).any(|q| reach[letters.len()][q] && d.is_final(q))
}

/// Membership of `w` in the downward closure of `L(d)`: some accepted
/// superword embeds `w`. Fixed-point reachability over (state, matched)
/// pairs, where unmatched automaton moves model inserted letters.
pub fn downward_member_oracle(d: &Dfa, w: &Word) -> bool {
    let letters = w.letters();
    let cols = letters.len() + 1;
    let mut reach = vec![false; d.state_count() * cols];
    reach[d.start() * cols] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for q in 0..d.state_count() {
            for i in 0..cols {
                if !reach[q * cols + i] {
                    continue;
                }
                for j in 0..d.alphabet().len() {
                    let t = d.step_idx(q, j);
                    // the superword may use any letter here
                    if !reach[t * cols + i] {
                        reach[t * cols + i] = true;
                        changed = true;
                    }
                    // or match the next letter of w
                    if i < letters.len()
                        && d.alphabet().letter(j) == letters[i]
                        && !reach[t * cols + i + 1]
                    {
                        reach[t * cols + i + 1] = true;
                        changed = true;
                    }
                }
            }
        }
    }
    (0..d.state_count()).any(|q| d.is_final(q) && reach[q * cols + letters.len()])
}

/// The shuffle of two commutative languages by naive split enumeration:
/// every Parikh tuple below the lcm bounds is tested by enumerating all of
/// its coordinatewise splits. Deliberately the simplest possible route.
pub fn naive_commutative_shuffle(a: &Dfa, b: &Dfa) -> Dfa {
    let pa = profile(a).expect("commutative operand");
    let pb = profile(b).expect("commutative operand");
    let k = a.alphabet().len();
    let mut bounds = Vec::with_capacity(k);
    for j in 0..k {
        let l = lcm(pa.period()[j], pb.period()[j]);
        bounds.push((pa.index()[j] + pb.index()[j] + l - 1, l));
    }
    from_parikh_oracle(a.alphabet(), &bounds, |tuple| {
        let mut split = vec![0usize; tuple.len()];
        loop {
            let left: Vec<usize> = split.clone();
            let right: Vec<usize> = tuple.iter().zip(&split).map(|(&n, &x)| n - x).collect();
            if pa.contains_parikh(&left) && pb.contains_parikh(&right) {
                return true;
            }
            // odometer over 0..=tuple[j] per coordinate
            let mut j = tuple.len();
            loop {
                if j == 0 {
                    return false;
                }
                j -= 1;
                if split[j] < tuple[j] {
                    split[j] += 1;
                    break;
                }
                split[j] = 0;
            }
        }
    })
    .expect("bounded construction")
}

fn lcm(a: usize, b: usize) -> usize {
    let mut x = a;
    let mut y = b;
    while y != 0 {
        let t = x % y;
        x = y;
        y = t;
    }
    a / x * b
}

/// Naive NFA membership by set simulation with an iterated epsilon fixpoint.
pub fn nfa_member_oracle(n: &comlang::Nfa, w: &Word) -> bool {
    let close = |mut set: std::collections::BTreeSet<usize>| {
        loop {
            let mut grew = false;
            for q in set.clone() {
                for &t in n.epsilon_transitions(q) {
                    grew |= set.insert(t);
                }
            }
            if !grew {
                return set;
            }
        }
    };
    let mut cur = close(n.starts().clone());
    for &c in w.letters() {
        let j = n.alphabet().index_of(c).expect("letter of the alphabet");
        let mut next = std::collections::BTreeSet::new();
        for &q in &cur {
            next.extend(n.transitions(q, j).iter().copied());
        }
        cur = close(next);
    }
    cur.iter().any(|q| n.finals().contains(q))
}

/// A deterministic random word of length at most `max_len`.
pub fn random_word(rng: &mut SplitMix64, alphabet: &Alphabet, max_len: usize) -> Word {
    let len = rng.below(max_len + 1);
    Word::from_letters(
        (0..len)
            .map(|_| alphabet.letter(rng.below(alphabet.len())))
            .collect(),
    )
}
