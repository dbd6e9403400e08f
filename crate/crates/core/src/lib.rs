//! Toolkit for commutative and partially-commutative regular languages.
//!
//! The crate is built around complete deterministic finite automata
//! ([`Dfa`]) over small explicit alphabets. On top of the usual automaton
//! operations (determinization, minimization, Boolean products, quotients)
//! it provides:
//!
//! * the per-letter index/period structure of a commutative language and
//!   the product automaton built from it ([`commutative`]),
//! * shuffle via two independent constructions, subsequence closures and
//!   interiors, and state-complexity bound verification ([`shuffle`],
//!   [`bounds`]),
//! * canonical automata for languages closed under a partial commutation
//!   given by an alphabet partition, together with a classifier for the
//!   subclasses this induces ([`partial`]),
//! * permutation-automaton (group language) bounds and worst-case family
//!   generators ([`group`]),
//! * a small expression language for writing test languages as one-liners
//!   ([`expr`]),
//! * seeded random instance generators and a named invariant suite used by
//!   the `comlang check` command ([`sampling`], [`check`]).
//!
//! All values are immutable after construction and every operation is a
//! pure function, so everything can be shared freely between threads.

pub mod alphabet;
pub mod bounds;
pub mod check;
pub mod commutative;
pub mod dfa;
pub mod dot;
pub mod error;
pub mod expr;
pub mod group;
pub mod json;
pub mod minimize;
pub mod nfa;
mod num;
pub mod partial;
pub mod sampling;
pub mod shuffle;
pub mod unary;

pub use alphabet::{Alphabet, Word};
pub use dfa::{BooleanOp, Dfa};
pub use error::{Error, Result};
pub use nfa::Nfa;

/// Default cap on the number of states any subset or product construction
/// may materialize before aborting with [`Error::StateBlowup`].
pub const DEFAULT_STATE_GUARD: usize = 1_000_000;
