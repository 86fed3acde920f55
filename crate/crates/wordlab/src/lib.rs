//! An exact word-map laboratory for finite groups.
//!
//! The crate parses free-group words, counts solution fibers `N_w(g)` by
//! several independent algorithms (brute force, central-quotient
//! acceleration, convolution, character sums), computes complex character
//! tables for small groups, and turns a family of fiber-size bounds and
//! rationality properties into machine-checkable verdicts.
//!
//! Everything is exact: fiber counts are arbitrary-precision integers, and
//! every accelerated algorithm is cross-validated against an independent
//! oracle in the test suite.

pub mod arith;
pub mod chars;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod fiber;
pub mod group;
pub mod signature;
pub mod verify;
pub mod word;

#[doc(hidden)]
pub mod testsupport;

pub use error::{Error, Result};
pub use fiber::FiberDistribution;
pub use group::{Element, FiniteGroup};
pub use signature::{Class2Signature, NormalForm};
pub use word::Word;

/// Default evaluation budget: number of word evaluations a single counting
/// call may spend before refusing to run.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;
