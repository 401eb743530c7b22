use std::sync::Arc;

use rand::Rng;

use crate::algebra::PresentedRing;
use crate::error::Result;
use crate::field::PrimeField;
use crate::poly::{monomials_of_degree, Poly};

/// Shape of a random presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomShape {
    pub nvars: usize,
    pub ngens: usize,
    /// All monomials of this degree are added, so the ring is artinian.
    pub cap: u32,
    pub homogeneous: bool,
}

const VARS: [&str; 6] = ["x", "y", "z", "w", "u", "v"];

/// A random artinian presentation: `ngens` random elements of `n^2` plus `n^cap`.
pub fn random_presented_ring(field: PrimeField, shape: RandomShape, rng: &mut impl Rng) -> Result<PresentedRing> {
    let vars: Arc<Vec<String>> = Arc::new(VARS[..shape.nvars].iter().map(|s| s.to_string()).collect());
    let p = field.modulus();
    let mut gens = Vec::new();
    for _ in 0..shape.ngens {
        let degrees: Vec<u32> = if shape.homogeneous {
            vec![rng.gen_range(2..shape.cap)]
        } else {
            (2..shape.cap).collect()
        };
        let mut terms = Vec::new();
        for d in degrees {
            for m in monomials_of_degree(shape.nvars, d) {
                if rng.gen_bool(0.5) {
                    terms.push((m, rng.gen_range(1..p)));
                }
            }
        }
        gens.push(Poly::from_terms(field, vars.clone(), shape.cap, terms)?);
    }
    for m in monomials_of_degree(shape.nvars, shape.cap) {
        gens.push(Poly::from_terms(field, vars.clone(), shape.cap + 1, [(m, 1)])?);
    }
    let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
    PresentedRing::new(field, vars.to_vec(), gens, Some(shape.cap))
}
