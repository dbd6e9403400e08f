//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test --test acceptance -- --include-ignored` to cover the
//! slow worst-case family as well.

mod common;

use comlang::alphabet::{Alphabet, Word};
use comlang::bounds::{gen_above_nm_pair, gen_coprime_pair, verify_bound, BoundOp};
use comlang::commutative::{
    build_product_automaton, decompose, from_parikh_oracle, has_product_form, profile,
    projection,
};
use comlang::dfa::Dfa;
use comlang::expr::eval_str;
use comlang::group::{
    gen_sharp_group_pair, gen_threshold_language, general_group_bound, group_shuffle_bound,
    PeriodVector,
};
use comlang::minimize::minimize;
use comlang::partial::{canonical_automaton, classify, is_closed_under, Partition};
use comlang::sampling::{random_commutative_dfa, random_dfa, random_group_dfa, SplitMix64};
use comlang::shuffle::{
    downward_closure, downward_interior, shuffle_commutative, shuffle_nfa, upward_closure,
    upward_interior,
};

use common::{moore_minimize, naive_commutative_shuffle};

fn criterion(number: u32, summary: &str, outcome: Result<String, String>) {
    match outcome {
        Ok(detail) => println!("criterion {number:02} {summary}: PASS — {detail}"),
        Err(detail) => {
            println!("criterion {number:02} {summary}: FAIL — {detail}");
            panic!("criterion {number:02} failed: {detail}");
        }
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

#[test]
fn criterion_01_three_state_witness() {
    let run = || -> Result<String, String> {
        let d = eval_str("bb*&a* | b*", "ab").map_err(|e| e.to_string())?;
        let m = minimize(&d);
        ensure(m.state_count() == 3, format!("sc = {}", m.state_count()))?;
        let c = build_product_automaton(&d).map_err(|e| e.to_string())?;
        ensure(c.state_count() == 4, format!("product has {}", c.state_count()))?;
        let pf = has_product_form(&d).map_err(|e| e.to_string())?;
        ensure(!pf.product_form, "expected no product form".to_string())?;
        Ok("sc 3, product automaton 4, product form false".into())
    };
    criterion(1, "minimal vs product automaton of the two-letter witness", run());
}

#[test]
fn criterion_02_weighted_mod_language() {
    let run = || -> Result<String, String> {
        let ab = Alphabet::new("ab").map_err(|e| e.to_string())?;
        let d = from_parikh_oracle(&ab, &[(0, 5), (0, 5)], |t| (t[0] + 2 * t[1]) % 5 == 0)
            .map_err(|e| e.to_string())?;
        ensure(d.state_count() == 5, format!("sc = {}", d.state_count()))?;
        let c = build_product_automaton(&d).map_err(|e| e.to_string())?;
        ensure(c.state_count() == 25, format!("product has {}", c.state_count()))?;
        Ok("sc 5, product automaton 25".into())
    };
    criterion(2, "weighted mod-5 language via the Parikh oracle", run());
}

#[test]
fn criterion_03_twelve_state_product_form() {
    let run = || -> Result<String, String> {
        let d = eval_str("(aa)*&(bb)*|(aaa)*&b(bb)*", "ab").map_err(|e| e.to_string())?;
        let m = minimize(&d);
        ensure(m.state_count() == 12, format!("sc = {}", m.state_count()))?;
        let c = build_product_automaton(&d).map_err(|e| e.to_string())?;
        ensure(m.isomorphic(&c), "minimal and product automata not isomorphic".to_string())?;
        ensure(
            m.finals().len() == 5,
            format!("{} final states", m.finals().len()),
        )?;
        let r = classify(&d, &Partition::parse("a|b").map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure(r.l4 && !r.l3, format!("l4={} l3={}", r.l4, r.l3))?;
        Ok("sc 12, isomorphic, 5 finals, l4 without l3".into())
    };
    criterion(3, "twelve-state product-form witness", run());
}

#[test]
fn criterion_04_mixed_period_profile() {
    let run = || -> Result<String, String> {
        let d = eval_str("(aa)*&(bb)*|(aaaa)*&b*", "ab").map_err(|e| e.to_string())?;
        let p = profile(&d).map_err(|e| e.to_string())?;
        ensure(p.index() == [0, 0], format!("index {:?}", p.index()))?;
        ensure(p.period() == [4, 2], format!("period {:?}", p.period()))?;
        let pa = projection(&d, &['a']).map_err(|e| e.to_string())?;
        let want_a = eval_str("(aa)*", "a").map_err(|e| e.to_string())?;
        ensure(
            pa.equivalent(&want_a).map_err(|e| e.to_string())?,
            "a-projection differs from (aa)*".to_string(),
        )?;
        let pb = projection(&d, &['b']).map_err(|e| e.to_string())?;
        let want_b = eval_str("b*", "b").map_err(|e| e.to_string())?;
        ensure(
            pb.equivalent(&want_b).map_err(|e| e.to_string())?,
            "b-projection differs from b*".to_string(),
        )?;
        Ok("index (0,0), period (4,2), projections (aa)* and b*".into())
    };
    criterion(4, "profile and projections of the mixed-period union", run());
}

#[test]
fn criterion_05_coprime_sharp_shuffle() {
    let run = || -> Result<String, String> {
        // two-letter case: 2nm bound with positive slack
        let ab = Alphabet::new("ab").map_err(|e| e.to_string())?;
        let (u, v) = gen_coprime_pair(2, 3, &ab).map_err(|e| e.to_string())?;
        ensure(u.state_count() == 4, format!("sc(U) = {}", u.state_count()))?;
        ensure(v.state_count() == 9, format!("sc(V) = {}", v.state_count()))?;
        let s = shuffle_commutative(&u, &v).map_err(|e| e.to_string())?;
        ensure(s.state_count() == 36, format!("sc(U⧢V) = {}", s.state_count()))?;
        ensure(
            has_product_form(&s).map_err(|e| e.to_string())?.product_form,
            "shuffle lost product form".to_string(),
        )?;
        let r = verify_bound(BoundOp::Shuffle, &u, Some(&v)).map_err(|e| e.to_string())?;
        ensure(
            r.bound == 72 && r.slack > 0,
            format!("bound {} slack {}", r.bound, r.slack),
        )?;

        // unary case: the bound is nm and it is attained
        let a = Alphabet::new("a").map_err(|e| e.to_string())?;
        let (u1, v1) = gen_coprime_pair(2, 3, &a).map_err(|e| e.to_string())?;
        ensure(
            u1.state_count() == 2 && v1.state_count() == 3,
            "unary operand sizes".to_string(),
        )?;
        let s1 = shuffle_commutative(&u1, &v1).map_err(|e| e.to_string())?;
        ensure(s1.state_count() == 6, format!("unary shuffle sc = {}", s1.state_count()))?;
        ensure(
            has_product_form(&s1).map_err(|e| e.to_string())?.product_form,
            "unary shuffle lost product form".to_string(),
        )?;
        let r1 = verify_bound(BoundOp::Shuffle, &u1, Some(&v1)).map_err(|e| e.to_string())?;
        ensure(r1.bound == 6 && r1.slack >= 0, format!("unary bound {}", r1.bound))?;
        Ok("k=2: 4·9 → 36 ≤ 72; k=1: 2·3 → 6 = nm".into())
    };
    criterion(5, "coprime generators attain (pq)^k within the shuffle bound", run());
}

/// Slow worst-case family. This family is commonly credited with shuffle
/// state complexity 2pq(pq+3) = 99,008 for p=13, q=17; the machine-checked
/// value is 2(pq)² + 4pq − 2 = 98,564, confirmed independently by naive
/// split enumeration, signature refinement and direct membership
/// arithmetic. The credited value is asserted as required and fails
/// honestly; the qualitative separation above n·m holds either way.
#[test]
#[ignore = "slow worst-case family (about a minute)"]
fn criterion_06_above_nm_family() {
    let run = || -> Result<String, String> {
        let (p, q) = (13u64, 17u64);
        let (u, v) = gen_above_nm_pair(p, q).map_err(|e| e.to_string())?;
        ensure(u.state_count() == 210, format!("sc(U) = {}", u.state_count()))?;
        ensure(v.state_count() == 342, format!("sc(V) = {}", v.state_count()))?;
        let s = shuffle_commutative(&u, &v).map_err(|e| e.to_string())?;
        let nm = 210 * 342;
        ensure(
            s.state_count() > nm,
            format!("sc {} did not exceed nm = {nm}", s.state_count()),
        )?;
        let stated = 2 * 13 * 17 * (13 * 17 + 3);
        ensure(
            s.state_count() == stated,
            format!(
                "sc(U⧢V) measured {} (exceeds nm = {nm}), stated value {stated}",
                s.state_count()
            ),
        )?;
        Ok(format!("sc(U⧢V) = {} > nm = {nm}", s.state_count()))
    };
    criterion(6, "binary family whose shuffle exceeds nm", run());
}

#[test]
fn criterion_07_closure_bounds() {
    let run = || -> Result<String, String> {
        let d = eval_str("aaaa&b*", "ab").map_err(|e| e.to_string())?;
        ensure(minimize(&d).state_count() == 6, "sc of the base language".to_string())?;
        let up = upward_closure(&d).map_err(|e| e.to_string())?;
        ensure(up.state_count() == 5, format!("sc(↑L) = {}", up.state_count()))?;
        let down = downward_closure(&d).map_err(|e| e.to_string())?;
        ensure(down.state_count() == 6, format!("sc(↓L) = {}", down.state_count()))?;
        for (name, result) in [
            ("up", up.state_count()),
            ("down", down.state_count()),
            (
                "up-int",
                upward_interior(&d).map_err(|e| e.to_string())?.state_count(),
            ),
            (
                "down-int",
                downward_interior(&d).map_err(|e| e.to_string())?.state_count(),
            ),
        ] {
            ensure(result <= 6, format!("{name} exceeded sc(L) = 6"))?;
        }
        let e = eval_str("(aa)*&(bb)*|(aaaa)*&b*", "ab").map_err(|e| e.to_string())?;
        for op in [
            BoundOp::UpwardClosure,
            BoundOp::DownwardClosure,
            BoundOp::UpwardInterior,
            BoundOp::DownwardInterior,
        ] {
            let r = verify_bound(op, &e, None).map_err(|e| e.to_string())?;
            ensure(
                r.bound == 8 && r.slack >= 0,
                format!("{}: bound {} measured {}", r.operation, r.bound, r.measured_sc),
            )?;
        }
        Ok("↑ 5, ↓ 6, all four within 6; mixed-period family within 8".into())
    };
    criterion(7, "closure and interior state counts", run());
}

#[test]
fn criterion_08_canonical_automaton_and_recognition() {
    let run = || -> Result<String, String> {
        // the four-state fixture over {a,b,c}, closed under ac|b
        let abc = Alphabet::new("abc").map_err(|e| e.to_string())?;
        let fixture = Dfa::new(
            abc.clone(),
            0,
            [0],
            vec![
                vec![1, 2, 2],
                vec![2, 3, 1],
                vec![3, 0, 0],
                vec![0, 1, 3],
            ],
        )
        .map_err(|e| e.to_string())?;
        let part = Partition::parse("ac|b").map_err(|e| e.to_string())?;
        let canon = canonical_automaton(&fixture, &part).map_err(|e| e.to_string())?;
        ensure(
            canon.product().state_count() == 8,
            format!("canonical product has {}", canon.product().state_count()),
        )?;
        ensure(
            canon.product().equivalent(&fixture).map_err(|e| e.to_string())?,
            "canonical automaton does not recognize the fixture".to_string(),
        )?;

        let part = Partition::parse("ab|c").map_err(|e| e.to_string())?;
        let mut rng = SplitMix64::new(0xacce55);
        let mut closed_count = 0usize;
        for case in 0..200 {
            let d = random_dfa(&mut rng, &abc, 4);
            let closed = is_closed_under(&d, &part).map_err(|e| e.to_string())?;
            let canon = canonical_automaton(&d, &part).map_err(|e| e.to_string())?;
            let recognizes = canon
                .product()
                .equivalent(&d)
                .map_err(|e| e.to_string())?;
            ensure(
                closed == recognizes,
                format!("case {case}: closed={closed}, recognizes={recognizes}"),
            )?;
            closed_count += usize::from(closed);
        }
        Ok(format!(
            "fixture canonical has 8 states; 200 random automata agree ({closed_count} closed)"
        ))
    };
    criterion(8, "canonical automaton recognizes exactly the closed languages", run());
}

#[test]
fn criterion_09_classifier_fixtures_and_chain() {
    let run = || -> Result<String, String> {
        let part = Partition::parse("a|b").map_err(|e| e.to_string())?;
        let fixtures: [(&str, [bool; 4]); 4] = [
            ("aa(aaa)*&bb(bbb)*|a(aaa)*&b(bbb)*", [false, false, true, true]),
            ("a(aaa)*&b|aa(aaa)*", [false, false, true, false]),
            ("a&b", [true, true, true, false]),
            ("(aa)*&(bb)*|(aaa)*&b(bb)*", [false, false, false, true]),
        ];
        for (src, want) in fixtures {
            let d = eval_str(src, "ab").map_err(|e| e.to_string())?;
            let r = classify(&d, &part).map_err(|e| e.to_string())?;
            let got = [r.l1, r.l2, r.l3, r.l4];
            ensure(got == want, format!("{src}: got {got:?}, want {want:?}"))?;
        }
        // the appendix witness separating the second class from the first
        let d = eval_str("(a(aaa)*|aa(aaa)*)&b", "ab").map_err(|e| e.to_string())?;
        let r = classify(&d, &part).map_err(|e| e.to_string())?;
        ensure(r.l2 && !r.l1, format!("appendix witness: l1={} l2={}", r.l1, r.l2))?;

        let mut rng = SplitMix64::new(0x99);
        for case in 0..500 {
            let d = random_commutative_dfa(&mut rng, &Alphabet::new("ab").unwrap(), 3, 4)
                .map_err(|e| e.to_string())?;
            let r = classify(&d, &part).map_err(|e| e.to_string())?;
            ensure(!r.l1 || r.l2, format!("case {case}: l1 without l2"))?;
            ensure(!r.l2 || r.l3, format!("case {case}: l2 without l3"))?;
        }
        Ok("four fixture memberships exact; chain holds on 500 random instances".into())
    };
    criterion(9, "classifier fixtures and the class inclusion chain", run());
}

#[test]
fn criterion_10_group_bounds() {
    let run = || -> Result<String, String> {
        let ab = Alphabet::new("ab").map_err(|e| e.to_string())?;
        let (u, v) = gen_sharp_group_pair(2, 3, &ab).map_err(|e| e.to_string())?;
        let s = shuffle_commutative(&u, &v).map_err(|e| e.to_string())?;
        let bound = group_shuffle_bound(
            &PeriodVector::new(vec![2, 2]).map_err(|e| e.to_string())?,
            &PeriodVector::new(vec![3, 3]).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        ensure(
            s.state_count() == 36 && bound.states == 36,
            format!("measured {} bound {}", s.state_count(), bound.states),
        )?;

        let t = gen_threshold_language(&[2, 3], &ab).map_err(|e| e.to_string())?;
        ensure(t.state_count() == 12, format!("threshold sc = {}", t.state_count()))?;
        let p = profile(&t).map_err(|e| e.to_string())?;
        ensure(
            p.period() == [1, 1] && p.index() == [2, 3],
            format!("threshold profile {:?}/{:?}", p.index(), p.period()),
        )?;

        let mut rng = SplitMix64::new(0x6701);
        for case in 0..30 {
            let u = random_group_dfa(&mut rng, &ab, 6).map_err(|e| e.to_string())?;
            let v = random_group_dfa(&mut rng, &ab, 6).map_err(|e| e.to_string())?;
            let (pu, pv) = (
                profile(&u).map_err(|e| e.to_string())?,
                profile(&v).map_err(|e| e.to_string())?,
            );
            let s = shuffle_commutative(&u, &v).map_err(|e| e.to_string())?;
            let b = group_shuffle_bound(
                &PeriodVector::new(pu.period().iter().map(|&p| p as u64).collect())
                    .map_err(|e| e.to_string())?,
                &PeriodVector::new(pv.period().iter().map(|&p| p as u64).collect())
                    .map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            let coarse = general_group_bound(
                minimize(&u).state_count() as u64,
                minimize(&v).state_count() as u64,
                2,
            );
            ensure(
                (s.state_count() as u128) <= b.states && b.states <= coarse,
                format!(
                    "case {case}: measured {} bound {} coarse {coarse}",
                    s.state_count(),
                    b.states
                ),
            )?;
        }
        Ok("sharp pair attains 36; threshold profile exact; 30 random pairs bounded".into())
    };
    criterion(10, "group-language shuffle bounds", run());
}

#[test]
fn criterion_11_oracle_equivalences() {
    let run = || -> Result<String, String> {
        let ab = Alphabet::new("ab").map_err(|e| e.to_string())?;
        let mut rng = SplitMix64::new(0x0bac1e);
        for case in 0..300 {
            let u = random_commutative_dfa(&mut rng, &ab, 3, 4).map_err(|e| e.to_string())?;
            let v = random_commutative_dfa(&mut rng, &ab, 3, 4).map_err(|e| e.to_string())?;
            let fast = shuffle_commutative(&u, &v).map_err(|e| e.to_string())?;
            let by_nfa = shuffle_nfa(&u, &v).map_err(|e| e.to_string())?;
            ensure(fast == by_nfa, format!("case {case}: shuffle routes disagree"))?;
        }
        for case in 0..300 {
            let n = 2 + rng.below(9);
            let d = random_dfa(&mut rng, &ab, n);
            let h = minimize(&d);
            let m = moore_minimize(&d);
            ensure(
                h.isomorphic(&m),
                format!("case {case}: partition refinement vs signature refinement"),
            )?;
        }
        for case in 0..300 {
            let d = random_commutative_dfa(&mut rng, &ab, 3, 4).map_err(|e| e.to_string())?;
            let dec = decompose(&d).map_err(|e| e.to_string())?;
            let back = dec.recompose().map_err(|e| e.to_string())?;
            ensure(
                back.equivalent(&d).map_err(|e| e.to_string())?,
                format!("case {case}: recomposition differs"),
            )?;
        }
        Ok("300 shuffle pairs, 300 minimizations, 300 round trips".into())
    };
    criterion(11, "independent oracles agree on randomized instances", run());
}

#[test]
fn criterion_12_product_form_route_agreement() {
    let run = || -> Result<String, String> {
        let ab = Alphabet::new("ab").map_err(|e| e.to_string())?;
        let mut rng = SplitMix64::new(0x7477);
        for case in 0..300 {
            let d = random_commutative_dfa(&mut rng, &ab, 3, 4).map_err(|e| e.to_string())?;
            let m = minimize(&d);
            let p = profile(&m).map_err(|e| e.to_string())?;
            let counting = m.state_count() as u128 == p.classes_product();
            let iso = m.isomorphic(&build_product_automaton(&m).map_err(|e| e.to_string())?);
            // Nerode route over all pairs of canonical representative words
            // from the class box (exhaustive for the language's classes)
            let dims = [p.class_count(0), p.class_count(1)];
            let mut nerode = true;
            'words: for x in 0..dims[0] {
                for y in 0..dims[1] {
                    for x2 in 0..dims[0] {
                        for y2 in 0..dims[1] {
                            let u = Word::from_parikh(&[x, y], m.alphabet());
                            let v = Word::from_parikh(&[x2, y2], m.alphabet());
                            let same_state = m.run(&u).map_err(|e| e.to_string())?
                                == m.run(&v).map_err(|e| e.to_string())?;
                            let same_classes = m.run_letter_power(m.start(), 0, x)
                                == m.run_letter_power(m.start(), 0, x2)
                                && m.run_letter_power(m.start(), 1, y)
                                    == m.run_letter_power(m.start(), 1, y2);
                            if same_state && !same_classes {
                                nerode = false;
                                break 'words;
                            }
                        }
                    }
                }
            }
            ensure(
                counting == iso && iso == nerode,
                format!("case {case}: counting={counting} isomorphism={iso} nerode={nerode}"),
            )?;
        }
        Ok("three routes agree on 300 random instances".into())
    };
    criterion(12, "product-form decision routes agree", run());
}

#[test]
fn shuffle_split_table_matches_naive_enumeration() {
    // supporting oracle for the factored split construction
    let ab = Alphabet::new("ab").unwrap();
    let mut rng = SplitMix64::new(0x517);
    for case in 0..60 {
        let u = random_commutative_dfa(&mut rng, &ab, 3, 4).unwrap();
        let v = random_commutative_dfa(&mut rng, &ab, 3, 4).unwrap();
        let fast = shuffle_commutative(&u, &v).unwrap();
        let naive = naive_commutative_shuffle(&u, &v);
        assert_eq!(fast, naive, "case {case}");
    }
}
