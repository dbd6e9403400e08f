//! Shuffle via two independent constructions, and the subsequence closure
//! and interior operations.

use crate::commutative::{profile, rho_box_dfa, CommutativeProfile};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::minimize::minimize;
use crate::nfa::Nfa;
use crate::num::lcm;
use crate::DEFAULT_STATE_GUARD;

/// Shuffle of two regular languages through the pair NFA: each letter
/// advances either coordinate. Works for arbitrary regular inputs;
/// determinized and minimized.
pub fn shuffle_nfa(a: &Dfa, b: &Dfa) -> Result<Dfa> {
    shuffle_nfa_with_guard(a, b, DEFAULT_STATE_GUARD)
}

pub fn shuffle_nfa_with_guard(a: &Dfa, b: &Dfa, guard: usize) -> Result<Dfa> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let a = minimize(a);
    let b = minimize(b);
    let k = a.alphabet().len();
    let bn = b.state_count();
    let id = |p: usize, q: usize| p * bn + q;
    let mut nfa = Nfa::empty(a.alphabet().clone(), a.state_count() * bn);
    nfa.add_start(id(a.start(), b.start()));
    for p in 0..a.state_count() {
        for q in 0..bn {
            if a.is_final(p) && b.is_final(q) {
                nfa.add_final(id(p, q));
            }
            for j in 0..k {
                nfa.add_edge(id(p, q), j, id(a.step_idx(p, j), q));
                nfa.add_edge(id(p, q), j, id(p, b.step_idx(q, j)));
            }
        }
    }
    Ok(minimize(&nfa.determinize_with_guard(guard)?))
}

/// Shuffle of two commutative languages through a Parikh membership oracle.
///
/// A count tuple is accepted when some coordinatewise split lands in both
/// operands' Parikh sets. The split test is organized per final-state pair:
/// for each letter the set of class pairs reachable by splitting `n` copies
/// is computed incrementally for every `n` below the per-letter bound
/// `i + j + 2·lcm(p, q) - 1`, and a tuple is accepted when some final pair
/// is split-reachable in every coordinate. The materialized automaton over
/// those bounds is then minimized.
pub fn shuffle_commutative(a: &Dfa, b: &Dfa) -> Result<Dfa> {
    shuffle_commutative_with_guard(a, b, DEFAULT_STATE_GUARD)
}

pub fn shuffle_commutative_with_guard(a: &Dfa, b: &Dfa, guard: usize) -> Result<Dfa> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let pa = profile(a)?;
    let pb = profile(b)?;
    shuffle_of_profiles(&pa, &pb, guard)
}

pub(crate) fn shuffle_of_profiles(
    pa: &CommutativeProfile,
    pb: &CommutativeProfile,
    guard: usize,
) -> Result<Dfa> {
    let alphabet = pa.alphabet().clone();
    let k = alphabet.len();

    // per-letter bounds from the index/period arithmetic of the two operands
    let mut idx_bound = Vec::with_capacity(k);
    let mut per_bound = Vec::with_capacity(k);
    for j in 0..k {
        let l = lcm(pa.period()[j] as u64, pb.period()[j] as u64) as usize;
        idx_bound.push(pa.index()[j] + pb.index()[j] + l - 1);
        per_bound.push(l);
    }

    let fa: Vec<&Vec<usize>> = pa.finals().iter().collect();
    let fb: Vec<&Vec<usize>> = pb.finals().iter().collect();
    if fa.is_empty() || fb.is_empty() {
        return Ok(Dfa::trivial(alphabet, false));
    }
    let pair_count = fa.len() * fb.len();
    let words = pair_count.div_ceil(64);

    // split_table[j][n] = bitset over final pairs (fa_i, fb_i) whose letter-j
    // classes are reachable as (class_a(x), class_b(n - x)) for some split x
    let mut split_table: Vec<Vec<u64>> = Vec::with_capacity(k);
    for j in 0..k {
        let ca = pa.class_count(j);
        let cb = pb.class_count(j);
        let total_n = idx_bound[j] + per_bound[j];
        let mut table = vec![0u64; total_n * words];
        // class-pair membership for the current n, updated incrementally
        let mut cur = vec![false; ca * cb];
        let mut next = vec![false; ca * cb];
        cur[0] = true; // n = 0: only the split (0, 0)
        for n in 0..total_n {
            for (t, bits) in table[n * words..(n + 1) * words].iter_mut().enumerate() {
                let mut w = 0u64;
                for bit in 0..64 {
                    let pair = t * 64 + bit;
                    if pair >= pair_count {
                        break;
                    }
                    let (ia, ib) = (pair / fb.len(), pair % fb.len());
                    if cur[fa[ia][j] * cb + fb[ib][j]] {
                        w |= 1 << bit;
                    }
                }
                *bits = w;
            }
            // advance every split of n by one more letter on either side
            next.iter_mut().for_each(|x| *x = false);
            for sa in 0..ca {
                for sb in 0..cb {
                    if cur[sa * cb + sb] {
                        next[pa.step_class(j, sa) * cb + sb] = true;
                        next[sa * cb + pb.step_class(j, sb)] = true;
                    }
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        split_table.push(table);
    }

    let boxed = rho_box_dfa(
        &alphabet,
        &idx_bound,
        &per_bound,
        |tuple| {
            for w in 0..words {
                let mut acc = !0u64;
                for (j, &n) in tuple.iter().enumerate() {
                    acc &= split_table[j][n * words + w];
                    if acc == 0 {
                        break;
                    }
                }
                if acc != 0 {
                    return true;
                }
            }
            false
        },
        guard,
    )?;
    Ok(minimize(&boxed))
}

/// Upward closure `↑L = L ⧢ Σ*`: nondeterministic self-loops on every letter
/// at every state, then determinize and minimize.
pub fn upward_closure(d: &Dfa) -> Result<Dfa> {
    upward_closure_with_guard(d, DEFAULT_STATE_GUARD)
}

pub fn upward_closure_with_guard(d: &Dfa, guard: usize) -> Result<Dfa> {
    let k = d.alphabet().len();
    let mut nfa = Nfa::from_dfa(d);
    for q in 0..d.state_count() {
        for j in 0..k {
            nfa.add_edge(q, j, q);
        }
    }
    Ok(minimize(&nfa.determinize_with_guard(guard)?))
}

/// Downward closure `↓L`: an epsilon edge parallel to every letter edge,
/// then determinize and minimize.
pub fn downward_closure(d: &Dfa) -> Result<Dfa> {
    downward_closure_with_guard(d, DEFAULT_STATE_GUARD)
}

pub fn downward_closure_with_guard(d: &Dfa, guard: usize) -> Result<Dfa> {
    let k = d.alphabet().len();
    let mut nfa = Nfa::from_dfa(d);
    for q in 0..d.state_count() {
        for j in 0..k {
            nfa.add_epsilon(q, d.step_idx(q, j));
        }
    }
    Ok(minimize(&nfa.determinize_with_guard(guard)?))
}

/// Upward interior, the largest upward-closed subset, via the duality
/// `Σ* ∖ ↓(Σ* ∖ L)`.
pub fn upward_interior(d: &Dfa) -> Result<Dfa> {
    upward_interior_with_guard(d, DEFAULT_STATE_GUARD)
}

pub fn upward_interior_with_guard(d: &Dfa, guard: usize) -> Result<Dfa> {
    Ok(minimize(
        &downward_closure_with_guard(&d.complement(), guard)?.complement(),
    ))
}

/// Downward interior, the largest downward-closed subset, via the duality
/// `Σ* ∖ ↑(Σ* ∖ L)`.
pub fn downward_interior(d: &Dfa) -> Result<Dfa> {
    downward_interior_with_guard(d, DEFAULT_STATE_GUARD)
}

pub fn downward_interior_with_guard(d: &Dfa, guard: usize) -> Result<Dfa> {
    Ok(minimize(
        &upward_closure_with_guard(&d.complement(), guard)?.complement(),
    ))
}
