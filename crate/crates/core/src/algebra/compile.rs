//! Compilation of a presented ring into structure constants by linear
//! algebra in the truncation `k[x]/n^N`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{FiniteLocalAlgebra, Origin, PresentedRing, CAP_SEARCH};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{self, Subspace};
use crate::poly::{monomials_below, Monomial, Poly};

struct Truncation {
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Truncation {
    fn new(nvars: usize, cap: u32) -> Self {
        let monos = monomials_below(nvars, cap);
        let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Self { monos, index }
    }

    fn len(&self) -> usize {
        self.monos.len()
    }

    /// Columns follow the monomial order, so pivots land on the smallest
    /// monomials and the standard monomials are the largest ones.
    fn col(&self, m: &Monomial) -> usize {
        self.index[m]
    }

    fn vector(&self, p: &Poly) -> Vec<u32> {
        let mut v = vec![0; self.len()];
        for (m, &c) in p.terms() {
            v[self.col(m)] = c;
        }
        v
    }

    /// Span of all monomial multiples of `gens`, truncated.
    fn ideal(&self, field: PrimeField, gens: &[Poly], cap: u32) -> Result<Subspace> {
        let mut rows = Vec::new();
        for g in gens {
            let g = g.with_cap(cap)?;
            let Some(v) = g.valuation() else { continue };
            for m in self.monos.iter().take_while(|m| m.degree() + v < cap) {
                rows.push(self.vector(&g.mul_monomial(m)));
            }
        }
        Ok(Subspace::span(field, self.len(), rows))
    }
}

struct Raw {
    labels: Vec<Monomial>,
    images: BTreeMap<Monomial, Vec<u32>>,
}

fn raw_compile(pr: &PresentedRing, cap: u32) -> Result<Raw> {
    let f = pr.field();
    let t = Truncation::new(pr.vars().len(), cap);
    let v = t.ideal(f, pr.gens(), cap)?;
    let mut is_pivot = vec![false; t.len()];
    for &p in v.pivots() {
        is_pivot[p] = true;
    }
    let labels: Vec<Monomial> = t.monos.iter().filter(|m| !is_pivot[t.col(m)]).cloned().collect();
    let pos: HashMap<usize, usize> = labels.iter().enumerate().map(|(i, m)| (t.col(m), i)).collect();
    let n = labels.len();
    let mut images = BTreeMap::new();
    for m in &t.monos {
        let mut e = vec![0; t.len()];
        e[t.col(m)] = 1;
        let r = v.reduce(&e);
        let mut img = vec![0; n];
        for (c, &x) in r.iter().enumerate() {
            if x != 0 {
                img[pos[&c]] = x;
            }
        }
        images.insert(m.clone(), img);
    }
    Ok(Raw { labels, images })
}

fn stable(pr: &PresentedRing, cap: u32) -> Result<Option<Raw>> {
    let here = raw_compile(pr, cap)?;
    let next = raw_compile(pr, cap + 1)?;
    let top_vanishes = next.images.iter().filter(|(m, _)| m.degree() == cap).all(|(_, v)| linalg::is_zero(v));
    Ok((here.labels.len() == next.labels.len() && top_vanishes).then_some(here))
}

/// Compiles with the presentation's cap, or the smallest stable cap in [`CAP_SEARCH`].
pub fn compile(pr: &PresentedRing) -> Result<FiniteLocalAlgebra> {
    if let Some(cap) = pr.cap() {
        return compile_with_cap(pr, cap);
    }
    let (lo, hi) = CAP_SEARCH;
    for cap in lo..=hi {
        if let Some(raw) = stable(pr, cap)? {
            return finish(pr, cap, raw);
        }
    }
    Err(Error::NotArtinian(hi as usize))
}

pub fn compile_with_cap(pr: &PresentedRing, cap: u32) -> Result<FiniteLocalAlgebra> {
    if cap == 0 {
        return Err(Error::InvalidCap);
    }
    match stable(pr, cap)? {
        Some(raw) => finish(pr, cap, raw),
        None => Err(Error::NotArtinian(cap as usize)),
    }
}

fn finish(pr: &PresentedRing, cap: u32, raw: Raw) -> Result<FiniteLocalAlgebra> {
    let Raw { labels, images } = raw;
    let n = labels.len();
    let mut mult = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in a..n {
            let prod = labels[a].mul(&labels[b]);
            let entry = images.get(&prod).map(|v| linalg::to_sparse(v)).unwrap_or_default();
            mult[a][b] = entry.clone();
            mult[b][a] = entry;
        }
    }
    let names: Vec<String> = labels.iter().map(|m| m.render(pr.vars())).collect();
    let grading = Some(labels.iter().map(|m| m.degree()).collect());
    let alg = FiniteLocalAlgebra::from_structure(pr.field(), names, mult, grading)?;
    Ok(alg.with_origin(Origin { ring: pr.with_cap(Some(cap)), images }))
}

/// `μ` of the ideal of `k[x]` generated by `gens`, computed in `k[x]/n^cap`.
///
/// Exact whenever `n^(cap-1)` lies in the ideal.
pub fn presented_ideal_mu(field: PrimeField, vars: &Arc<Vec<String>>, gens: &[Poly], cap: u32) -> Result<usize> {
    let t = Truncation::new(vars.len(), cap);
    let j = t.ideal(field, gens, cap)?;
    let nj = Subspace::span(
        field,
        t.len(),
        j.basis().iter().flat_map(|row| {
            let t = &t;
            (0..vars.len()).map(move |u| {
                let mut out = vec![0; t.len()];
                for (c, &x) in row.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    let m = &t.monos[c];
                    let mu = m.mul(&Monomial::var(vars.len(), u));
                    if mu.degree() < cap {
                        out[t.col(&mu)] = x;
                    }
                }
                out
            })
        }),
    );
    Ok(j.dim() - nj.dim())
}

/// Whether `(a) + n^cap = (b) + n^cap` in `k[x]`.
pub fn ideals_equal_in_truncation(field: PrimeField, vars: &Arc<Vec<String>>, a: &[Poly], b: &[Poly], cap: u32) -> Result<bool> {
    let t = Truncation::new(vars.len(), cap);
    Ok(t.ideal(field, a, cap)? == t.ideal(field, b, cap)?)
}
