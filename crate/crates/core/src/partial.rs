//! Partial commutation along an alphabet partition: closure test, canonical
//! automata, canonical projection automata and the subclass classifier.
//!
//! A partition `Σ = Σ_1 ∪ … ∪ Σ_k` declares letters of distinct blocks
//! independent; the induced independence relation has a transitive
//! complement by construction. A language is closed under the partition when
//! swapping adjacent independent letters never changes membership.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::alphabet::{Alphabet, Word};
use crate::commutative::{letters_commute, next_tuple, projection_with_guard};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::minimize::minimize;
use crate::shuffle::shuffle_nfa_with_guard;
use crate::DEFAULT_STATE_GUARD;

/// An ordered list of disjoint nonempty letter blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<char>>,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<char>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::PartitionAlphabetMismatch("no blocks".into()));
        }
        let mut seen = BTreeSet::new();
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::PartitionAlphabetMismatch("empty block".into()));
            }
            for &c in block {
                if !seen.insert(c) {
                    return Err(Error::PartitionAlphabetMismatch(format!(
                        "letter '{c}' appears twice"
                    )));
                }
            }
        }
        Ok(Partition { blocks })
    }

    /// Parses the CLI syntax: blocks of concatenated letters joined by `|`,
    /// e.g. `"ac|b"`.
    pub fn parse(src: &str) -> Result<Self> {
        Partition::new(src.split('|').map(|b| b.chars().collect()).collect())
    }

    /// One singleton block per letter: full commutativity.
    pub fn singletons(alphabet: &Alphabet) -> Self {
        Partition {
            blocks: alphabet.letters().iter().map(|&c| vec![c]).collect(),
        }
    }

    /// A single block containing the whole alphabet: no independent pairs.
    pub fn single_block(alphabet: &Alphabet) -> Self {
        Partition {
            blocks: vec![alphabet.letters().to_vec()],
        }
    }

    pub fn blocks(&self) -> &[Vec<char>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty partitions
    }

    pub fn block_of(&self, c: char) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&c))
    }

    /// Checks that the blocks exactly cover `alphabet` and returns the block
    /// index of every letter coordinate.
    pub fn block_map(&self, alphabet: &Alphabet) -> Result<Vec<usize>> {
        let covered: usize = self.blocks.iter().map(|b| b.len()).sum();
        if covered != alphabet.len() {
            return Err(Error::PartitionAlphabetMismatch(format!(
                "partition covers {covered} letters, alphabet has {}",
                alphabet.len()
            )));
        }
        alphabet
            .letters()
            .iter()
            .map(|&c| {
                self.block_of(c).ok_or_else(|| {
                    Error::PartitionAlphabetMismatch(format!("letter '{c}' not in any block"))
                })
            })
            .collect()
    }

    pub fn to_string_syntax(&self) -> String {
        self.blocks
            .iter()
            .map(|b| b.iter().collect::<String>())
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// True iff `uxyv ∈ L ⇔ uyxv ∈ L` for all words and all letter pairs from
/// distinct blocks. Decided statewise on the minimal automaton.
pub fn is_closed_under(d: &Dfa, part: &Partition) -> Result<bool> {
    let block = part.block_map(d.alphabet())?;
    let m = minimize(d);
    Ok(letters_commute(&m, |x, y| block[x] != block[y]))
}

/// One block of a [`CanonicalAutomaton`].
#[derive(Debug, Clone)]
pub struct CanonicalBlock {
    /// The block's letters.
    pub letters: Vec<char>,
    /// The block state set `S_i`, as minimal-automaton state ids in
    /// breadth-first discovery order; tuple coordinates index this list.
    pub state_ids: Vec<usize>,
    /// The factor automaton over the block's sub-alphabet: states are
    /// positions in `state_ids`, finals are the block projections of the
    /// canonical final tuples.
    pub automaton: Dfa,
}

/// The canonical automaton of a language with respect to a partition: the
/// product of the per-block factor automata, with finals computed exactly
/// for arbitrary regular input.
#[derive(Debug, Clone)]
pub struct CanonicalAutomaton {
    partition: Partition,
    blocks: Vec<CanonicalBlock>,
    finals: BTreeSet<Vec<usize>>,
    product: Dfa,
}

impl CanonicalAutomaton {
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn blocks(&self) -> &[CanonicalBlock] {
        &self.blocks
    }

    /// Final state tuples, coordinates indexing each block's `state_ids`.
    pub fn finals(&self) -> &BTreeSet<Vec<usize>> {
        &self.finals
    }

    /// The materialized product automaton; every tuple is a reachable state.
    pub fn product(&self) -> &Dfa {
        &self.product
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.state_ids.len()).collect()
    }

    fn tuple_id(&self, tuple: &[usize]) -> Result<usize> {
        if tuple.len() != self.blocks.len() {
            return Err(Error::UnreachableState(tuple.to_vec()));
        }
        let mut id = 0;
        for (i, &pos) in tuple.iter().enumerate() {
            let size = self.blocks[i].state_ids.len();
            if pos >= size {
                return Err(Error::UnreachableState(tuple.to_vec()));
            }
            id = id * size + pos;
        }
        Ok(id)
    }

    /// The set of words driving the canonical automaton into the state
    /// `tuple`, as a minimal DFA. Always a language with a single-final
    /// canonical automaton.
    pub fn state_language(&self, tuple: &[usize]) -> Result<Dfa> {
        let id = self.tuple_id(tuple)?;
        let single = Dfa::new(
            self.product.alphabet().clone(),
            self.product.start(),
            [id],
            (0..self.product.state_count())
                .map(|q| {
                    (0..self.product.alphabet().len())
                        .map(|j| self.product.step_idx(q, j))
                        .collect()
                })
                .collect(),
        )?;
        Ok(minimize(&single))
    }
}

/// Builds the canonical automaton of `d`'s language for `part`.
///
/// The final tuples are computed exactly by exploring the tracking product
/// `(q, s_1, …, s_k)` where `q` follows every letter and coordinate `i`
/// follows only block-`i` letters; the tuple part of every configuration
/// with accepting `q` is collected. This is valid for arbitrary regular
/// input, closed under the partition or not.
pub fn canonical_automaton(d: &Dfa, part: &Partition) -> Result<CanonicalAutomaton> {
    canonical_automaton_with_guard(d, part, DEFAULT_STATE_GUARD)
}

pub fn canonical_automaton_with_guard(
    d: &Dfa,
    part: &Partition,
    guard: usize,
) -> Result<CanonicalAutomaton> {
    let block_map = part.block_map(d.alphabet())?;
    let m = minimize(d);
    let k = part.len();

    // S_i: states reachable from the start by block-i letters only
    let mut state_ids: Vec<Vec<usize>> = Vec::with_capacity(k);
    let mut positions: Vec<HashMap<usize, usize>> = Vec::with_capacity(k);
    for i in 0..k {
        let mut ids = vec![m.start()];
        let mut pos = HashMap::from([(m.start(), 0usize)]);
        let mut head = 0;
        while head < ids.len() {
            let q = ids[head];
            for (j, &b) in block_map.iter().enumerate() {
                if b != i {
                    continue;
                }
                let t = m.step_idx(q, j);
                if let std::collections::hash_map::Entry::Vacant(e) = pos.entry(t) {
                    e.insert(ids.len());
                    ids.push(t);
                }
            }
            head += 1;
        }
        state_ids.push(ids);
        positions.push(pos);
    }
    let sizes: Vec<usize> = state_ids.iter().map(|s| s.len()).collect();
    let mut product_size: usize = 1;
    for &s in &sizes {
        product_size = product_size
            .checked_mul(s)
            .filter(|&t| t <= guard)
            .ok_or(Error::StateBlowup(guard))?;
    }

    // exact finals via the tracking product
    let tracking_size = m
        .state_count()
        .checked_mul(product_size)
        .filter(|&t| t <= guard)
        .ok_or(Error::StateBlowup(guard))?;
    let mut finals: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut seen = vec![false; tracking_size];
    let encode = |q: usize, tuple: &[usize]| {
        let mut id = q;
        for (i, &pos) in tuple.iter().enumerate() {
            id = id * sizes[i] + pos;
        }
        id
    };
    let root = (m.start(), vec![0usize; k]);
    seen[encode(root.0, &root.1)] = true;
    let mut queue = VecDeque::from([root]);
    while let Some((q, tuple)) = queue.pop_front() {
        if m.is_final(q) {
            finals.insert(tuple.clone());
        }
        for (j, &b) in block_map.iter().enumerate() {
            let nq = m.step_idx(q, j);
            let mut ntuple = tuple.clone();
            ntuple[b] = positions[b][&m.step_idx(state_ids[b][tuple[b]], j)];
            let code = encode(nq, &ntuple);
            if !seen[code] {
                seen[code] = true;
                queue.push_back((nq, ntuple));
            }
        }
    }

    // factor automata with finals projected per block
    let mut blocks = Vec::with_capacity(k);
    for i in 0..k {
        let letters = part.blocks()[i].clone();
        let sub = d.alphabet().restrict(&letters)?;
        let delta: Vec<Vec<usize>> = state_ids[i]
            .iter()
            .map(|&q| {
                sub.letters()
                    .iter()
                    .map(|&c| {
                        let j = d.alphabet().index_of(c).expect("validated letter");
                        positions[i][&m.step_idx(q, j)]
                    })
                    .collect()
            })
            .collect();
        let block_finals: BTreeSet<usize> = finals.iter().map(|t| t[i]).collect();
        let automaton = Dfa::new(sub, 0, block_finals, delta)?;
        blocks.push(CanonicalBlock {
            letters,
            state_ids: state_ids[i].clone(),
            automaton,
        });
    }

    // the product automaton over all tuples, row-major with block k fastest
    let mut strides = vec![1usize; k];
    for i in (0..k.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * sizes[i + 1];
    }
    let mut delta = Vec::with_capacity(product_size);
    let mut tuple = vec![0usize; k];
    let mut final_ids = Vec::new();
    for id in 0..product_size {
        let row: Vec<usize> = block_map
            .iter()
            .enumerate()
            .map(|(j, &b)| {
                let c = d.alphabet().letter(j);
                let sj = blocks[b]
                    .automaton
                    .alphabet()
                    .index_of(c)
                    .expect("letter of its own block");
                let npos = blocks[b].automaton.step_idx(tuple[b], sj);
                id - tuple[b] * strides[b] + npos * strides[b]
            })
            .collect();
        delta.push(row);
        if finals.contains(&tuple) {
            final_ids.push(id);
        }
        next_tuple(&mut tuple, &sizes);
    }
    let product = Dfa::new(d.alphabet().clone(), 0, final_ids, delta)?;

    Ok(CanonicalAutomaton {
        partition: part.clone(),
        blocks,
        finals,
        product,
    })
}

/// The canonical projection automaton for block `i`: the factor automaton
/// `(Σ_i, S_i, δ_i, start, F_i)`. Requires closure under the partition, in
/// which case it recognizes exactly `π_{Σ_i}(L)`.
pub fn canonical_projection(d: &Dfa, part: &Partition, i: usize) -> Result<Dfa> {
    if !is_closed_under(d, part)? {
        return Err(Error::NotClosedUnderPartition);
    }
    let canon = canonical_automaton(d, part)?;
    canon
        .blocks
        .get(i)
        .map(|b| b.automaton.clone())
        .ok_or_else(|| Error::PartitionAlphabetMismatch(format!("no block {i}")))
}

/// Per-block data in a [`ClassificationReport`].
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BlockReport {
    /// `|S_i|`, the size of the block's canonical state set.
    pub size_si: usize,
    /// State complexity of the projection onto the block.
    pub sc_projection: usize,
}

/// Classification of a language with respect to a partition.
///
/// The four classes: `l1` — the canonical automaton has a single final
/// state and recognizes the language; `l2` — the language is the shuffle of
/// its block projections (the canonical finals factorize); `l3` — every
/// canonical projection automaton is minimal; `l4` — the canonical
/// automaton is isomorphic to the minimal automaton.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationReport {
    pub commutative_under_partition: bool,
    pub recognizes_l: bool,
    pub l1: bool,
    pub l2: bool,
    pub l3: bool,
    pub l4: bool,
    pub sc: usize,
    pub canonical_states: usize,
    pub blocks: Vec<BlockReport>,
    pub witnesses: Vec<String>,
}

/// Classifies `d`'s language against the partition's subclasses. When the
/// language is not closed under the partition, every class flag is false
/// and a witness explains why.
pub fn classify(d: &Dfa, part: &Partition) -> Result<ClassificationReport> {
    classify_with_guard(d, part, DEFAULT_STATE_GUARD)
}

pub fn classify_with_guard(
    d: &Dfa,
    part: &Partition,
    guard: usize,
) -> Result<ClassificationReport> {
    let block_map = part.block_map(d.alphabet())?;
    let m = minimize(d);
    let sc = m.state_count();
    let closed = letters_commute(&m, |x, y| block_map[x] != block_map[y]);
    let canon = canonical_automaton_with_guard(&m, part, guard)?;
    let recognizes = canon.product.equivalent(&m)?;
    let mut witnesses = Vec::new();

    let mut projections = Vec::with_capacity(part.len());
    let mut blocks = Vec::with_capacity(part.len());
    for (i, block) in canon.blocks.iter().enumerate() {
        let proj = projection_with_guard(&m, &part.blocks()[i], guard)?;
        blocks.push(BlockReport {
            size_si: block.state_ids.len(),
            sc_projection: proj.state_count(),
        });
        projections.push(proj);
    }

    if !closed {
        if let Some(w) = non_closure_witness(&m, &block_map) {
            witnesses.push(w);
        }
        return Ok(ClassificationReport {
            commutative_under_partition: false,
            recognizes_l: recognizes,
            l1: false,
            l2: false,
            l3: false,
            l4: false,
            sc,
            canonical_states: canon.product.state_count(),
            blocks,
            witnesses,
        });
    }

    let l1 = canon.finals.len() == 1 && recognizes;

    // finals factorize iff |F| = ∏ |F_i| (F ⊆ F_1 × … × F_k always holds)
    let finals_product: usize = canon
        .blocks
        .iter()
        .map(|b| b.automaton.finals().len())
        .product();
    let l2 = canon.finals.len() == finals_product;
    // independent route: L = ⧢_i π_{Σ_i}(L)
    let mut shuffled: Option<Dfa> = None;
    for proj in &projections {
        let lifted = lift_alphabet(proj, m.alphabet())?;
        shuffled = Some(match shuffled {
            None => lifted,
            Some(acc) => shuffle_nfa_with_guard(&acc, &lifted, guard)?,
        });
    }
    let shuffled = shuffled.expect("at least one block");
    let l2_cross = shuffled.equivalent(&m)?;
    if l2 != l2_cross {
        witnesses.push(format!(
            "finals factorization ({l2}) disagrees with the shuffle of projections ({l2_cross})"
        ));
    }
    if !l2 {
        if let Some(w) = shuffled.distinguishing_word(&m)? {
            witnesses.push(format!(
                "'{w}' separates the shuffle of the block projections from the language"
            ));
        }
    }

    let l3 = blocks.iter().all(|b| b.size_si == b.sc_projection);
    if !l3 {
        for (i, b) in blocks.iter().enumerate() {
            if b.size_si != b.sc_projection {
                witnesses.push(format!(
                    "block {i}: |S_i| = {} exceeds the projection's state complexity {}",
                    b.size_si, b.sc_projection
                ));
            }
        }
    }

    let canonical_states = canon.product.state_count();
    let l4 = sc == canonical_states;
    if !l4 {
        witnesses.push(format!(
            "canonical automaton has {canonical_states} states, minimal automaton {sc}"
        ));
    }

    Ok(ClassificationReport {
        commutative_under_partition: true,
        recognizes_l: recognizes,
        l1,
        l2,
        l3,
        l4,
        sc,
        canonical_states,
        blocks,
        witnesses,
    })
}

/// Extends an automaton over a sub-alphabet to a larger alphabet; the new
/// letters lead every state into a fresh sink, leaving the language
/// unchanged as a set of words.
pub fn lift_alphabet(d: &Dfa, alphabet: &Alphabet) -> Result<Dfa> {
    for &c in d.alphabet().letters() {
        alphabet.require(c)?;
    }
    let n = d.state_count();
    let sink = n;
    let delta: Vec<Vec<usize>> = (0..=n)
        .map(|q| {
            alphabet
                .letters()
                .iter()
                .map(|&c| match (q < n, d.alphabet().index_of(c)) {
                    (true, Some(j)) => d.step_idx(q, j),
                    _ => sink,
                })
                .collect()
        })
        .collect();
    Dfa::new(
        alphabet.clone(),
        d.start(),
        d.finals().iter().copied(),
        delta,
    )
}

fn non_closure_witness(m: &Dfa, block_map: &[usize]) -> Option<String> {
    // access words by breadth-first search
    let mut access: Vec<Option<Word>> = vec![None; m.state_count()];
    access[m.start()] = Some(Word::epsilon());
    let mut queue = VecDeque::from([m.start()]);
    while let Some(q) = queue.pop_front() {
        for j in 0..m.alphabet().len() {
            let t = m.step_idx(q, j);
            if access[t].is_none() {
                let mut letters = access[q].as_ref().unwrap().letters().to_vec();
                letters.push(m.alphabet().letter(j));
                access[t] = Some(Word::from_letters(letters));
                queue.push_back(t);
            }
        }
    }
    #[allow(clippy::needless_range_loop)] // q drives both access and step_idx
    for q in 0..m.state_count() {
        for x in 0..m.alphabet().len() {
            for y in 0..m.alphabet().len() {
                if block_map[x] == block_map[y] {
                    continue;
                }
                let xy = m.step_idx(m.step_idx(q, x), y);
                let yx = m.step_idx(m.step_idx(q, y), x);
                if xy != yx {
                    let u = access[q].as_ref()?.to_string();
                    let suffix = m.distinguishing_suffix(xy, yx)?;
                    let (cx, cy) = (m.alphabet().letter(x), m.alphabet().letter(y));
                    return Some(format!(
                        "exactly one of '{u}{cx}{cy}{suffix}' and '{u}{cy}{cx}{suffix}' is in the language"
                    ));
                }
            }
        }
    }
    None
}
