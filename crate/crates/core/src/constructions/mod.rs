//! Ring constructions: Pfaffian ideals, trivial extensions, exact zero
//! divisor searches and the built-in examples.

mod builtin;
mod ezd;
mod pfaffian;
mod random;
mod trivext;

pub use builtin::{builtin, example_family_e2, BUILTIN_NAMES, DEFAULT_CHAR};
pub use ezd::{ezd_search, EzdMode, EzdOutcome, EzdReport, EzdWitness, FULL_AUTO_LIMIT};
pub use pfaffian::{parse_skew_file, pfaffian, pfaffian_ideal, SkewMatrix};
pub use random::{random_presented_ring, RandomShape};
pub use trivext::trivial_extension;
