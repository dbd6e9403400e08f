//! Error type shared by all operations in the crate.

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by automaton constructions and analyses.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A subset or product construction exceeded the configured state guard.
    #[error("state blowup: construction exceeded the guard of {0} states")]
    StateBlowup(usize),

    /// A binary operation was applied to automata over different alphabets.
    #[error("alphabet mismatch between operands")]
    AlphabetMismatch,

    /// A word or projection set mentions a letter outside the alphabet.
    #[error("letter '{0}' is not in the alphabet")]
    LetterNotInAlphabet(char),

    /// An operation requiring a commutative language got a non-commutative one.
    #[error("language is not commutative")]
    NotCommutative,

    /// Projection onto the empty letter set.
    #[error("projection alphabet is empty")]
    EmptyProjectionAlphabet,

    /// Generator parameters that must be coprime are not.
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),

    /// Generator parameters that must be distinct primes are not.
    #[error("{0} and {1} are not distinct primes")]
    NotDistinctPrimes(u64, u64),

    /// A stated precondition of a generator does not hold.
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    /// An input does not satisfy the hypotheses of the bound being verified.
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    /// Period vectors of different lengths.
    #[error("period vectors have different lengths")]
    LengthMismatch,

    /// The partition does not consist of disjoint nonempty blocks covering
    /// the automaton's alphabet.
    #[error("partition does not match the alphabet: {0}")]
    PartitionAlphabetMismatch(String),

    /// An operation requiring closure under the partition got a language
    /// that is not closed.
    #[error("language is not closed under the partition")]
    NotClosedUnderPartition,

    /// A canonical-automaton state tuple outside the state set.
    #[error("state tuple {0:?} is not a state of the canonical automaton")]
    UnreachableState(Vec<usize>),

    /// Expression parse failure with a byte offset into the source.
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    /// Expression uses a letter missing from the declared alphabet.
    #[error("undeclared letter '{letter}' at offset {pos}")]
    UndeclaredLetter { letter: char, pos: usize },

    /// Malformed automaton description (construction or JSON input).
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
}
