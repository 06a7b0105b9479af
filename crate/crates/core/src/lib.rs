//! Translation of LTL into deterministic Rabin, nondeterministic Büchi and
//! limit-deterministic Büchi automata.
//!
//! All three translations share one decomposition: a word satisfies a
//! formula iff, for some guess `X` of the least-fixed-point subformulas that
//! hold infinitely often and some guess `Y` of the greatest-fixed-point
//! subformulas that hold almost always, three simple conditions hold. Each
//! condition is recognised by a small automaton built from the `af`
//! derivative of [`after`], and the automata are combined with standard
//! products and unions.
//!
//! The crate is `no_std` and only needs `alloc`. Everything lives in a
//! [`Session`], which owns the hash-consed formula table, the atom set and
//! the decision diagrams used for propositional equivalence.
//!
//! ```
//! use ltl2aut_core::{Session, Lasso, Letter, Limits};
//!
//! let mut s = Session::new();
//! let phi = s.parse("G F a").unwrap();
//! let dra = ltl2aut_core::dra::dra(&mut s, phi, &Limits::default()).unwrap();
//! let a = Letter::from_bits(1);
//! let w = Lasso::new(vec![], vec![a, Letter::EMPTY]).unwrap();
//! assert!(dra.accepts_lasso_det(&w));
//! assert!(ltl2aut_core::oracle::lasso_sat(&mut s, &w, phi));
//! ```
#![cfg_attr(not(test), no_std)]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod advice;
pub mod after;
pub mod automaton;
pub mod dra;
mod error;
pub mod family;
pub mod formula;
pub mod fragments;
pub mod ldba;
pub mod nba;
pub mod oracle;
mod parse;
pub mod prop;
mod session;
pub mod word;

pub use advice::Advice;
pub use automaton::{Acceptance, Automaton, StateId, StateLabel, StateSet};
pub use error::Error;
pub use formula::{Atom, Formula, FormulaSet, Fragment, Node};
pub use prop::{CanonClass, Clause};
pub use session::Session;
pub use word::{Lasso, Letter};

/// Resource caps shared by every construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of states (or reachable classes) of any single
    /// intermediate or final automaton.
    pub max_states: usize,
    /// Maximum `|μ(φ)| + |ν(φ)|`; the advice enumeration has `2^n` pairs.
    pub max_advice: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: 1_000_000,
            max_advice: 12,
        }
    }
}
