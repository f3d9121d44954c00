//! Semi-m-Pell compositions and one-place m-power compositions.
//!
//! * [`composition`]: domain types, max m-powers, the `τ` operators and the
//!   structural membership test.
//! * [`recurrence`]: exact `sp(n, m)` with memoization and a cache file.
//! * [`enumerate`]: explicit generation of both families plus brute-force
//!   oracles.
//! * [`bijection`]: the part-to-run map and its inverse.
//! * [`series`]: truncated power series and the generating function.
//! * [`congruence`]: sweeps of the parity and modular properties.
//! * [`cli`]: the `semipell` command line.

pub mod bijection;
pub mod cli;
pub mod composition;
pub mod congruence;
pub mod enumerate;
pub mod error;
pub mod recurrence;
mod report;
pub mod series;

pub use composition::{Composition, Modulus, Run, RunForm};
pub use error::{Error, Result};
pub use report::{CongruenceReport, Violation};
