//! State-complexity bound verification and worst-case family generators.

use serde::Serialize;

use crate::alphabet::Alphabet;
use crate::commutative::{from_parikh_oracle, profile_of_minimal, CommutativeProfile};
use crate::dfa::{BooleanOp, Dfa};
use crate::error::{Error, Result};
use crate::minimize::minimize;
use crate::num::{gcd, lcm};
use crate::shuffle::{
    downward_closure, downward_interior, shuffle_of_profiles, upward_closure, upward_interior,
};
use crate::DEFAULT_STATE_GUARD;

/// Operations with a verified state-complexity bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundOp {
    /// Shuffle of two product-form languages: `2nm` (or `nm` on unary alphabets).
    Shuffle,
    /// Shuffle of two commutative languages: `∏ (i_l + j_l + 2·lcm(p_l,q_l) - 1)`.
    ShuffleCommutative,
    /// Union of two product-form languages: `nm`.
    Union,
    /// Intersection of two product-form languages: `nm`.
    Intersection,
    /// Closures and interiors of a commutative language: `∏ (i_j + p_j)`,
    /// which equals `n` for product-form inputs.
    UpwardClosure,
    DownwardClosure,
    UpwardInterior,
    DownwardInterior,
    /// Projections of a product-form language onto any sub-alphabet: `n`.
    Projection,
}

impl BoundOp {
    pub fn name(self) -> &'static str {
        match self {
            BoundOp::Shuffle => "shuffle",
            BoundOp::ShuffleCommutative => "shuffle-commutative",
            BoundOp::Union => "union",
            BoundOp::Intersection => "intersection",
            BoundOp::UpwardClosure => "upward-closure",
            BoundOp::DownwardClosure => "downward-closure",
            BoundOp::UpwardInterior => "upward-interior",
            BoundOp::DownwardInterior => "downward-interior",
            BoundOp::Projection => "projection",
        }
    }

    fn binary(self) -> bool {
        matches!(
            self,
            BoundOp::Shuffle | BoundOp::ShuffleCommutative | BoundOp::Union | BoundOp::Intersection
        )
    }

    fn needs_product_form(self) -> bool {
        matches!(
            self,
            BoundOp::Shuffle | BoundOp::Union | BoundOp::Intersection | BoundOp::Projection
        )
    }
}

/// Outcome of one bound verification run.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundReport {
    pub operation: String,
    /// State complexity of the left input.
    pub left_states: usize,
    /// State complexity of the right input, for binary operations.
    pub right_states: Option<usize>,
    pub left_index: Vec<usize>,
    pub left_period: Vec<usize>,
    pub right_index: Option<Vec<usize>>,
    pub right_period: Option<Vec<usize>>,
    /// Measured state complexity of the result.
    pub measured_sc: usize,
    /// Value of the bound formula.
    pub bound: u128,
    /// `bound - measured`; negative slack falsifies the bound.
    pub slack: i128,
    /// Identifier of the applied formula.
    pub formula: String,
}

fn require_product_form(side: &str, m: &Dfa, p: &CommutativeProfile) -> Result<()> {
    if (m.state_count() as u128) != p.classes_product() {
        return Err(Error::HypothesisViolation(format!(
            "{side} operand does not have a product-form minimal automaton"
        )));
    }
    Ok(())
}

/// Runs `op`, measures the result's state complexity and evaluates the
/// applicable bound formula. Inputs must satisfy the hypotheses of the bound
/// (commutative, and product-form where required).
pub fn verify_bound(op: BoundOp, a: &Dfa, b: Option<&Dfa>) -> Result<BoundReport> {
    verify_bound_with_guard(op, a, b, DEFAULT_STATE_GUARD)
}

pub fn verify_bound_with_guard(
    op: BoundOp,
    a: &Dfa,
    b: Option<&Dfa>,
    guard: usize,
) -> Result<BoundReport> {
    let ma = minimize(a);
    let pa = profile_of_minimal(&ma).map_err(|_| {
        Error::HypothesisViolation("left operand is not commutative".into())
    })?;
    let n = ma.state_count();
    let k = ma.alphabet().len();

    let mb = match (op.binary(), b) {
        (true, Some(b)) => Some(minimize(b)),
        (true, None) => {
            return Err(Error::HypothesisViolation(format!(
                "{} needs two operands",
                op.name()
            )))
        }
        (false, _) => None,
    };
    let pb = match &mb {
        Some(mb) => {
            if mb.alphabet() != ma.alphabet() {
                return Err(Error::AlphabetMismatch);
            }
            Some(profile_of_minimal(mb).map_err(|_| {
                Error::HypothesisViolation("right operand is not commutative".into())
            })?)
        }
        None => None,
    };

    if op.needs_product_form() {
        require_product_form("left", &ma, &pa)?;
        if let (Some(mb), Some(pb)) = (&mb, &pb) {
            require_product_form("right", mb, pb)?;
        }
    }

    let (measured_sc, bound, formula): (usize, u128, String) = match op {
        BoundOp::Shuffle | BoundOp::ShuffleCommutative => {
            let pb = pb.as_ref().expect("binary");
            let result = shuffle_of_profiles(&pa, pb, guard)?;
            let m = mb.as_ref().expect("binary").state_count();
            match op {
                BoundOp::Shuffle if k > 1 => (
                    result.state_count(),
                    2 * n as u128 * m as u128,
                    "2nm".into(),
                ),
                BoundOp::Shuffle => {
                    (result.state_count(), n as u128 * m as u128, "nm".into())
                }
                _ => {
                    let bound = (0..k)
                        .map(|j| {
                            let l =
                                lcm(pa.period()[j] as u64, pb.period()[j] as u64) as u128;
                            (pa.index()[j] + pb.index()[j]) as u128 + 2 * l - 1
                        })
                        .product();
                    (
                        result.state_count(),
                        bound,
                        "prod(i+j+2*lcm(p,q)-1)".into(),
                    )
                }
            }
        }
        BoundOp::Union | BoundOp::Intersection => {
            let mb = mb.as_ref().expect("binary");
            let mode = if op == BoundOp::Union {
                BooleanOp::Union
            } else {
                BooleanOp::Intersection
            };
            let result = minimize(&ma.boolean_product(mb, mode)?);
            (
                result.state_count(),
                n as u128 * mb.state_count() as u128,
                "nm".into(),
            )
        }
        BoundOp::UpwardClosure
        | BoundOp::DownwardClosure
        | BoundOp::UpwardInterior
        | BoundOp::DownwardInterior => {
            let result = match op {
                BoundOp::UpwardClosure => upward_closure(&ma)?,
                BoundOp::DownwardClosure => downward_closure(&ma)?,
                BoundOp::UpwardInterior => upward_interior(&ma)?,
                _ => downward_interior(&ma)?,
            };
            (result.state_count(), pa.classes_product(), "prod(i+p)".into())
        }
        BoundOp::Projection => {
            // all nonempty sub-alphabets, the full alphabet included
            let letters = ma.alphabet().letters().to_vec();
            let mut worst = 0;
            for mask in 1u32..(1 << letters.len()) {
                let keep: Vec<char> = letters
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| mask & (1 << j) != 0)
                    .map(|(_, &c)| c)
                    .collect();
                let proj = crate::commutative::projection_with_guard(&ma, &keep, guard)?;
                worst = worst.max(proj.state_count());
            }
            (worst, n as u128, "n".into())
        }
    };

    Ok(BoundReport {
        operation: op.name().into(),
        left_states: n,
        right_states: mb.as_ref().map(|m| m.state_count()),
        left_index: pa.index().to_vec(),
        left_period: pa.period().to_vec(),
        right_index: pb.as_ref().map(|p| p.index().to_vec()),
        right_period: pb.as_ref().map(|p| p.period().to_vec()),
        measured_sc,
        bound,
        slack: bound as i128 - measured_sc as i128,
        formula,
    })
}

/// The coprime worst-case pair `U = ⧢_j a_j^{p-1}(a_j^p)*` and
/// `V = ⧢_j a_j^{q-1}(a_j^q)*`: both product-form with state complexities
/// `p^k` and `q^k`; their shuffle has state complexity `(pq)^k`.
pub fn gen_coprime_pair(p: u64, q: u64, alphabet: &Alphabet) -> Result<(Dfa, Dfa)> {
    if p < 2 || q < 2 {
        return Err(Error::PreconditionViolation(
            "coprime generators need p, q >= 2".into(),
        ));
    }
    if gcd(p, q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    let u = cyclic_residue_language(alphabet, p as usize, (p - 1) as usize)?;
    let v = cyclic_residue_language(alphabet, q as usize, (q - 1) as usize)?;
    Ok((u, v))
}

/// `⧢_j { a_j^m : m ≡ residue mod period }` as a minimal DFA.
pub(crate) fn cyclic_residue_language(
    alphabet: &Alphabet,
    period: usize,
    residue: usize,
) -> Result<Dfa> {
    let bounds = vec![(0usize, period); alphabet.len()];
    from_parikh_oracle(alphabet, &bounds, |t| {
        t.iter().all(|&m| m % period == residue)
    })
}

/// A binary-alphabet pair of product-form languages whose shuffle needs
/// strictly more than `nm` states: for coprime `p, q > 11`,
/// `sc(U) = (2+p)(1+p)`, `sc(V) = (1+q)(q+2)` and
/// `sc(U ⧢ V) = 2pq(pq+3) > sc(U)·sc(V)`.
pub fn gen_above_nm_pair(p: u64, q: u64) -> Result<(Dfa, Dfa)> {
    if p <= 11 || q <= 11 {
        return Err(Error::PreconditionViolation(
            "the above-nm family needs p, q > 11".into(),
        ));
    }
    if gcd(p, q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    let ab = Alphabet::new("ab")?;
    let (p, q) = (p as usize, q as usize);
    // U = a ⧢ b^{p-1}(b^p)*  ∪  a^{p-1}(a^p)* ⧢ b^p(b^p)*
    let u = from_parikh_oracle(&ab, &[(p + 2, p), (p + 2, p)], |t| {
        let (ca, cb) = (t[0], t[1]);
        (ca == 1 && cb % p == p - 1) || (ca % p == p - 1 && cb >= p && cb % p == 0)
    })?;
    // V = b^{q-1}(b^q)*  ∪  a^{q-1}(a^q)* ⧢ b^{q+1}(b^q)*
    let v = from_parikh_oracle(&ab, &[(q + 2, q), (q + 2, q)], |t| {
        let (ca, cb) = (t[0], t[1]);
        (ca == 0 && cb % q == q - 1) || (ca % q == q - 1 && cb > q && cb % q == 1)
    })?;
    Ok((u, v))
}

/// Outcome of the randomized search for shuffles whose state complexity
/// approaches `2nm`; reports the largest observed `sc(U ⧢ V) / (n·m)`.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RatioReport {
    pub seed: u64,
    pub cases: usize,
    pub max_ratio: f64,
    /// `sc(U)`, `sc(V)` and `sc(U ⧢ V)` of the maximizing pair.
    pub witness: (usize, usize, usize),
}

/// Samples random product-form pairs and measures `sc(U ⧢ V) / nm`. The
/// sharpness of the `2nm` bound is open; this reports observations only.
pub fn shuffle_ratio_search(alphabet: &Alphabet, cases: usize, seed: u64) -> Result<RatioReport> {
    let mut rng = crate::sampling::SplitMix64::new(seed);
    let mut max_ratio = 0.0f64;
    let mut witness = (0, 0, 0);
    let mut done = 0;
    while done < cases {
        let u = crate::sampling::random_commutative_dfa(&mut rng, alphabet, 3, 4)?;
        let v = crate::sampling::random_commutative_dfa(&mut rng, alphabet, 3, 4)?;
        let (mu, mv) = (minimize(&u), minimize(&v));
        let (pu, pv) = (profile_of_minimal(&mu)?, profile_of_minimal(&mv)?);
        if mu.state_count() as u128 != pu.classes_product()
            || mv.state_count() as u128 != pv.classes_product()
        {
            continue; // not product-form, resample
        }
        let s = shuffle_of_profiles(&pu, &pv, DEFAULT_STATE_GUARD)?;
        let nm = (mu.state_count() * mv.state_count()) as f64;
        let ratio = s.state_count() as f64 / nm;
        if ratio > max_ratio {
            max_ratio = ratio;
            witness = (mu.state_count(), mv.state_count(), s.state_count());
        }
        done += 1;
    }
    Ok(RatioReport {
        seed,
        cases,
        max_ratio,
        witness,
    })
}
