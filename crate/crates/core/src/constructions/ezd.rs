use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::FiniteLocalAlgebra;
use crate::error::{Error, Result};
use crate::linalg;

/// Full-exhaustive search is chosen automatically when `p^dim(m)` is at most this.
pub const FULL_AUTO_LIMIT: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EzdMode {
    /// One representative per line through a nonzero linear form in the chosen generators of `m`.
    LinearExhaustive,
    /// One representative per line through a nonzero element of `m`.
    FullExhaustive,
    /// Uniform samples from `m \ 0`.
    Random { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EzdOutcome {
    Found,
    AbsentExhaustive,
    AbsentAmongLinearForms,
    NotFoundWithinBudget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EzdWitness {
    pub a: String,
    pub b: String,
    /// `(0 : b) = (a)`.
    pub complementary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EzdReport {
    pub mode: EzdMode,
    pub outcome: EzdOutcome,
    pub candidates: u64,
    pub witness: Option<EzdWitness>,
    #[serde(skip)]
    pub elements: Option<(Vec<u32>, Vec<u32>)>,
}

impl EzdReport {
    pub fn found(&self) -> bool {
        self.outcome == EzdOutcome::Found
    }
}

/// Decodes the `idx`-th projective point of `F_p^k` (first nonzero coordinate 1).
fn projective_point(p: u64, k: usize, mut idx: u64) -> Vec<u32> {
    let mut v = vec![0u32; k];
    for lead in 0..k {
        let block = p.pow((k - 1 - lead) as u32);
        if idx < block {
            v[lead] = 1;
            for slot in v.iter_mut().skip(lead + 1).rev() {
                *slot = (idx % p) as u32;
                idx /= p;
            }
            return v;
        }
        idx -= block;
    }
    unreachable!("index beyond the projective space")
}

fn projective_count(p: u64, k: usize) -> Option<u64> {
    (0..k as u32).try_fold(0u64, |acc, i| acc.checked_add(p.checked_pow(i)?))
}

/// `Some(b)` with `(0 : a) = (b)` if `a` is an exact zero divisor.
fn complementary(alg: &FiniteLocalAlgebra, a: &[u32]) -> Option<Vec<u32>> {
    if linalg::is_zero(a) {
        return None;
    }
    let ann = alg.annihilator(a);
    if ann.is_zero() || alg.mu(&ann) != Ok(1) {
        return None;
    }
    let mann = alg.m_times(&ann);
    ann.basis().iter().find(|v| !mann.contains(v)).cloned()
}

/// Searches `m` for an exact zero divisor.
///
/// Exhaustive modes fail with a resource-guard error when the candidate
/// count exceeds `budget`; random mode draws `budget` samples.
pub fn ezd_search(alg: &FiniteLocalAlgebra, mode: EzdMode, budget: u64) -> Result<EzdReport> {
    let p = alg.field().order();
    let n = alg.dim();
    let embed = |coords: &[u32], slots: &[usize]| {
        let mut v = vec![0; n];
        for (&c, &s) in coords.iter().zip(slots) {
            v[s] = c;
        }
        v
    };
    let (slots, exhaustive_outcome): (Vec<usize>, _) = match mode {
        EzdMode::LinearExhaustive => (alg.m_generators().to_vec(), EzdOutcome::AbsentAmongLinearForms),
        EzdMode::FullExhaustive => ((1..n).collect(), EzdOutcome::AbsentExhaustive),
        EzdMode::Random { .. } => ((1..n).collect(), EzdOutcome::NotFoundWithinBudget),
    };
    let check = |a: Vec<u32>| complementary(alg, &a).map(|b| (a, b));
    let (hit, candidates, outcome_none) = match mode {
        EzdMode::Random { seed } => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let samples: Vec<Vec<u32>> = (0..budget)
                .map(|_| {
                    let mut v: Vec<u32> = (0..slots.len()).map(|_| rng.gen_range(0..p as u32)).collect();
                    if linalg::is_zero(&v) && !v.is_empty() {
                        v[0] = 1;
                    }
                    embed(&v, &slots)
                })
                .collect();
            let hit = samples.into_par_iter().find_map_first(check);
            (hit, budget, exhaustive_outcome)
        }
        _ => {
            let count = projective_count(p, slots.len())
                .filter(|&c| c <= budget)
                .ok_or_else(|| Error::ResourceGuard(format!("{p}^{} candidates exceed the budget {budget}", slots.len())))?;
            let hit = (0..count)
                .into_par_iter()
                .find_map_first(|i| check(embed(&projective_point(p, slots.len(), i), &slots)));
            (hit, count, exhaustive_outcome)
        }
    };
    Ok(match hit {
        Some((a, b)) => {
            let complementary = alg.annihilator(&b) == alg.ideal_span(std::slice::from_ref(&a));
            EzdReport {
                mode,
                outcome: EzdOutcome::Found,
                candidates,
                witness: Some(EzdWitness { a: alg.render(&a), b: alg.render(&b), complementary }),
                elements: Some((a, b)),
            }
        }
        None => EzdReport { mode, outcome: outcome_none, candidates, witness: None, elements: None },
    })
}
