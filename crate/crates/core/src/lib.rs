//! Exact computations with artinian local algebras over prime fields:
//! Koszul homology, minimal resolutions of the residue field, Poincaré
//! series and the Golod property.
//!
//! A ring enters as a [`PresentedRing`] `k[x_1..x_e]/I` and is compiled into
//! a [`FiniteLocalAlgebra`] given by structure constants; every other module
//! works on that representation.

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod field;
pub mod koszul;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod resolution;
pub mod series;
pub mod verdict;

pub use algebra::{compile, parse_ring_file, FiniteLocalAlgebra, PresentedRing};
pub use error::{Error, Result};
pub use field::PrimeField;
pub use koszul::{ClassVerdict, KoszulData};
pub use parse::parse_poly;
pub use poly::{binomial, monomials_of_degree, Monomial, Poly};
pub use resolution::{betti_of_residue_field, BettiTable, ResolutionOptions};
pub use series::{IntPoly, IntSeries, RationalFn};
pub use verdict::{golod_verdict, GolodVerdict};
