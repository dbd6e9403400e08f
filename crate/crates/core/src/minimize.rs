//! DFA minimization by Hopcroft partition refinement.

use crate::dfa::Dfa;

/// Returns the canonical minimal automaton of `d`'s language: no unreachable
/// states, no two distinct equivalent states, states numbered breadth-first
/// from the start with letters in alphabet order.
///
/// Equal languages over equal alphabets yield bit-identical results.
pub fn minimize(d: &Dfa) -> Dfa {
    let trimmed = d.canonicalize();
    let n = trimmed.state_count();
    let k = trimmed.alphabet().len();

    // block id per state; blocks stored as index lists
    let mut block_of = vec![0usize; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    {
        let finals: Vec<usize> = (0..n).filter(|&q| trimmed.is_final(q)).collect();
        let nonfinals: Vec<usize> = (0..n).filter(|&q| !trimmed.is_final(q)).collect();
        for group in [finals, nonfinals] {
            if !group.is_empty() {
                let id = blocks.len();
                for &q in &group {
                    block_of[q] = id;
                }
                blocks.push(group);
            }
        }
    }

    // inverse transitions per letter, CSR layout
    let mut pred: Vec<Vec<usize>> = Vec::with_capacity(k);
    let mut pred_start: Vec<Vec<usize>> = Vec::with_capacity(k);
    for j in 0..k {
        let mut count = vec![0usize; n + 1];
        for q in 0..n {
            count[trimmed.step_idx(q, j) + 1] += 1;
        }
        for i in 0..n {
            count[i + 1] += count[i];
        }
        let mut flat = vec![0usize; n];
        let mut cursor = count.clone();
        for q in 0..n {
            let t = trimmed.step_idx(q, j);
            flat[cursor[t]] = q;
            cursor[t] += 1;
        }
        pred.push(flat);
        pred_start.push(count);
    }

    let mut worklist: Vec<usize> = (0..blocks.len()).collect();
    let mut on_worklist = vec![true; blocks.len()];
    let mut touched_marks: Vec<usize> = vec![0; n]; // per-state scratch
    let mut mark_epoch = 0usize;
    let mut marks_in_block: Vec<Vec<usize>> = Vec::new();

    while let Some(splitter_id) = worklist.pop() {
        on_worklist[splitter_id] = false;
        let splitter: Vec<usize> = blocks[splitter_id].clone();
        for j in 0..k {
            // states with a j-transition into the splitter
            mark_epoch += 1;
            let mut touched_blocks: Vec<usize> = Vec::new();
            for &t in &splitter {
                for &q in &pred[j][pred_start[j][t]..pred_start[j][t + 1]] {
                    if touched_marks[q] != mark_epoch {
                        touched_marks[q] = mark_epoch;
                        let b = block_of[q];
                        if marks_in_block.len() <= b {
                            marks_in_block.resize_with(b + 1, Vec::new);
                        }
                        if marks_in_block[b].is_empty() {
                            touched_blocks.push(b);
                        }
                        marks_in_block[b].push(q);
                    }
                }
            }
            // every touched entry of marks_in_block is drained here, so the
            // scratch vectors start empty on the next pass
            for &b in &touched_blocks {
                let marked = std::mem::take(&mut marks_in_block[b]);
                if marked.len() == blocks[b].len() {
                    continue; // nothing split off
                }
                // split block b into marked / unmarked
                let unmarked: Vec<usize> = blocks[b]
                    .iter()
                    .copied()
                    .filter(|&q| touched_marks[q] != mark_epoch)
                    .collect();
                let new_id = blocks.len();
                for &q in &marked {
                    block_of[q] = new_id;
                }
                blocks[b] = unmarked;
                blocks.push(marked);
                on_worklist.push(false);
                if on_worklist[b] {
                    worklist.push(new_id);
                    on_worklist[new_id] = true;
                } else {
                    // enqueue the smaller half
                    let smaller = if blocks[b].len() <= blocks[new_id].len() {
                        b
                    } else {
                        new_id
                    };
                    worklist.push(smaller);
                    on_worklist[smaller] = true;
                }
            }
        }
    }

    // quotient automaton over blocks
    let delta: Vec<Vec<usize>> = blocks
        .iter()
        .map(|members| {
            let rep = members[0];
            (0..k)
                .map(|j| block_of[trimmed.step_idx(rep, j)])
                .collect()
        })
        .collect();
    let finals: Vec<usize> = blocks
        .iter()
        .enumerate()
        .filter(|(_, members)| trimmed.is_final(members[0]))
        .map(|(b, _)| b)
        .collect();
    let quotient = Dfa::new(
        trimmed.alphabet().clone(),
        block_of[trimmed.start()],
        finals,
        delta,
    )
    .expect("quotient of a valid automaton is valid");
    quotient.canonicalize()
}

/// State complexity of the language of `d`: states of its minimal automaton.
pub fn state_complexity(d: &Dfa) -> usize {
    minimize(d).state_count()
}
