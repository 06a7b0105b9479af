//! Standard-library companion to `ltl2aut-core`: HOA output, seeded random
//! inputs, differential sweeps against the lasso oracle, and the pieces of
//! the `ltl2aut` command-line tool.

pub mod hoa;
pub mod random;
pub mod sweep;

pub use hoa::write_hoa;
pub use sweep::{Check, Report};
