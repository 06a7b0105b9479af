use alloc::string::String;
use core::fmt;

use crate::formula::Fragment;

/// Errors raised by parsing and by the automata constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed formula text; `position` is a byte offset.
    Parse { position: usize, message: String },
    /// An atom outside the declared (closed) atom set.
    UnknownAtom(String),
    /// More atoms than a [`Letter`](crate::Letter) can hold.
    TooManyAtoms,
    /// A construction reached more states than allowed.
    StateLimit { limit: usize },
    /// `|μ(φ)| + |ν(φ)|` exceeds the advice cap.
    AdviceLimit { count: usize, limit: usize },
    /// The formula is outside the fragment a construction requires.
    FragmentViolation { required: Fragment, found: Fragment },
    /// The acceptance condition does not have the shape an operation needs.
    ConditionShape(&'static str),
    /// Operands of a product are over different alphabets.
    AlphabetMismatch,
    /// An operation requires a deterministic automaton.
    NotDeterministic,
    /// `dca_to_dba` requires the rejecting set to be closed under successors.
    RejectingSetNotAbsorbing,
    /// A lasso needs a non-empty period.
    EmptyPeriod,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { position, message } => {
                write!(f, "parse error at position {position}: {message}")
            }
            Error::UnknownAtom(a) => write!(f, "unknown atom `{a}`"),
            Error::TooManyAtoms => write!(f, "too many atoms (at most {})", crate::word::MAX_ATOMS),
            Error::StateLimit { limit } => write!(f, "state limit of {limit} exceeded"),
            Error::AdviceLimit { count, limit } => write!(
                f,
                "formula has {count} fixed-point subformulas, advice cap is {limit}"
            ),
            Error::FragmentViolation { required, found } => {
                write!(f, "formula is in fragment {found:?}, construction requires {required:?}")
            }
            Error::ConditionShape(what) => write!(f, "unsupported acceptance condition: {what}"),
            Error::AlphabetMismatch => f.write_str("automata are over different alphabets"),
            Error::NotDeterministic => f.write_str("automaton is not deterministic"),
            Error::RejectingSetNotAbsorbing => {
                f.write_str("rejecting set is not closed under successors")
            }
            Error::EmptyPeriod => f.write_str("lasso period must be non-empty"),
        }
    }
}

impl core::error::Error for Error {}
