//! The Golod verdict, combining Koszul products with the Serre bound.

use serde::Serialize;

use crate::algebra::FiniteLocalAlgebra;
use crate::error::{Error, Result};
use crate::koszul::{KoszulData, ProductWitness};
use crate::resolution::{betti_of_residue_field, ResolutionOptions};
use crate::series::{golod_series, IntSeries};

/// Default cutoff for the series comparison.
pub const DEFAULT_CUTOFF: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NotGolodCertificate {
    Product(ProductWitness),
    BettiMismatch { degree: usize, betti: String, golod: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum GolodVerdict {
    NotGolod { certificate: NotGolodCertificate },
    GolodCertified,
    ConsistentWithGolodUpTo { cutoff: usize },
}

impl GolodVerdict {
    pub fn is_golod_certified(&self) -> bool {
        matches!(self, GolodVerdict::GolodCertified)
    }

    pub fn is_not_golod(&self) -> bool {
        matches!(self, GolodVerdict::NotGolod { .. })
    }
}

/// `h_1, ..., h_e` as the Golod denominator expects.
pub fn positive_homology(kd: &KoszulData) -> Vec<u64> {
    kd.dims().iter().skip(1).map(|&h| h as u64).collect()
}

/// The Golod series of `A` up to `z^d`.
pub fn golod_bound(kd: &KoszulData, d: usize) -> IntSeries {
    golod_series(kd.e() as u32, &positive_homology(kd), d)
}

/// Decides Golodness as far as the certificates allow.
///
/// A nonzero Koszul product rules Golodness out. Otherwise embedding
/// dimension at most 3 certifies it; above that the Betti numbers are
/// compared with the Golod series up to `cutoff`.
pub fn golod_verdict(alg: &FiniteLocalAlgebra, cutoff: usize, opts: ResolutionOptions) -> Result<GolodVerdict> {
    golod_verdict_with(alg, &KoszulData::new(alg), cutoff, opts)
}

pub fn golod_verdict_with(
    alg: &FiniteLocalAlgebra,
    kd: &KoszulData,
    cutoff: usize,
    opts: ResolutionOptions,
) -> Result<GolodVerdict> {
    if cutoff < 4 {
        return Err(Error::InvalidArgument(format!("series cutoff must be at least 4, got {cutoff}")));
    }
    if let Some(w) = kd.witness() {
        return Ok(GolodVerdict::NotGolod { certificate: NotGolodCertificate::Product(w) });
    }
    if kd.e() <= 3 {
        return Ok(GolodVerdict::GolodCertified);
    }
    let betti = IntSeries::from_usizes(&betti_of_residue_field(alg, cutoff, opts)?.betti);
    let golod = golod_bound(kd, cutoff);
    Ok(match betti.first_difference(&golod) {
        Some(degree) => GolodVerdict::NotGolod {
            certificate: NotGolodCertificate::BettiMismatch {
                degree,
                betti: betti.coeff(degree).to_string(),
                golod: golod.coeff(degree).to_string(),
            },
        },
        None => GolodVerdict::ConsistentWithGolodUpTo { cutoff },
    })
}
