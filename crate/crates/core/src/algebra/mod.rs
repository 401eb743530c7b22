//! Finite-dimensional commutative local algebras given by structure constants.

mod compile;
mod presented;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{self, Echelon, SparseVec, Subspace};
use crate::poly::{binomial, Monomial};

pub use compile::{compile, compile_with_cap, ideals_equal_in_truncation, presented_ideal_mu};
pub use presented::{parse_ring_file, PresentedRing, CAP_SEARCH};
pub(crate) use presented::{logical_entries, parse_list, unquote, GEN_CAP};

/// Link back to the presentation an algebra was compiled from.
#[derive(Debug, Clone)]
pub struct Origin {
    pub ring: PresentedRing,
    /// Image of every monomial below the compile cap.
    pub images: BTreeMap<Monomial, Vec<u32>>,
}

/// A commutative local algebra `A` with basis `e_0 = 1, e_1, ..., e_{n-1}`
/// where `e_1, ..., e_{n-1}` span the maximal ideal.
#[derive(Debug, Clone)]
pub struct FiniteLocalAlgebra {
    field: PrimeField,
    labels: Vec<String>,
    mult: Vec<Vec<SparseVec>>,
    filtration: Vec<Subspace>,
    gens_m: Vec<usize>,
    grading: Option<Vec<u32>>,
    origin: Option<Arc<Origin>>,
}

/// Outcome of [`FiniteLocalAlgebra::is_compressed`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Compressed {
    pub value: bool,
    pub warning: Option<String>,
}

impl FiniteLocalAlgebra {
    /// Builds an algebra from structure constants `mult[a][b] = e_a * e_b`.
    ///
    /// `grading` is a candidate degree for each basis element; it is kept only
    /// if the structure constants are homogeneous for it.
    pub fn from_structure(
        field: PrimeField,
        labels: Vec<String>,
        mult: Vec<Vec<SparseVec>>,
        grading: Option<Vec<u32>>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 || mult.len() != n || mult.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("structure table must be n x n with n >= 1".into()));
        }
        for b in 0..n {
            if mult[0][b] != vec![(b as u32, 1)] || mult[b][0] != vec![(b as u32, 1)] {
                return Err(Error::InvalidArgument("basis element 0 must be the identity".into()));
            }
        }
        for a in 1..n {
            for b in 1..n {
                if mult[a][b].iter().any(|&(c, _)| c == 0) {
                    return Err(Error::InvalidArgument("span of e_1.. is not closed under products".into()));
                }
            }
        }
        let mut alg = Self {
            field,
            labels,
            mult,
            filtration: Vec::new(),
            gens_m: Vec::new(),
            grading: None,
            origin: None,
        };
        alg.build_filtration()?;
        alg.gens_m = alg.choose_generators();
        alg.grading = grading.filter(|g| alg.is_homogeneous(g));
        Ok(alg)
    }

    pub(crate) fn with_origin(mut self, origin: Origin) -> Self {
        self.origin = Some(Arc::new(origin));
        self
    }

    fn build_filtration(&mut self) -> Result<()> {
        let n = self.dim();
        let f = self.field;
        let mut filt = vec![Subspace::full(f, n)];
        let m = Subspace::span(f, n, (1..n).map(|i| unit(n, i)));
        filt.push(m);
        while !filt.last().unwrap().is_zero() {
            if filt.len() > n + 1 {
                return Err(Error::InvalidArgument("maximal ideal is not nilpotent".into()));
            }
            let prev = filt.last().unwrap();
            let next = Subspace::span(
                f,
                n,
                (1..n).flat_map(|u| prev.basis().iter().map(move |v| (u, v))).map(|(u, v)| self.mul_basis(u, v)),
            );
            if next.dim() == prev.dim() {
                return Err(Error::InvalidArgument("maximal ideal is not nilpotent".into()));
            }
            filt.push(next);
        }
        self.filtration = filt;
        Ok(())
    }

    fn choose_generators(&self) -> Vec<usize> {
        let n = self.dim();
        let mut ech = Echelon::new(self.field, n);
        if self.filtration.len() > 2 {
            for v in self.filtration[2].basis() {
                ech.insert(v.clone());
            }
        }
        (1..n).filter(|&i| ech.insert(unit(n, i))).collect()
    }

    fn is_homogeneous(&self, deg: &[u32]) -> bool {
        let n = self.dim();
        if deg.len() != n || deg[0] != 0 || deg[1..].contains(&0) {
            return false;
        }
        (0..n).all(|a| (0..n).all(|b| self.mult[a][b].iter().all(|&(c, _)| deg[c as usize] == deg[a] + deg[b])))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Length of `A` as a k-vector space.
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure(&self) -> &[Vec<SparseVec>] {
        &self.mult
    }

    pub fn origin(&self) -> Option<&Origin> {
        self.origin.as_deref()
    }

    /// Degrees of the basis for a positive grading with homogeneous structure constants, if one was detected.
    pub fn grading(&self) -> Option<&[u32]> {
        self.grading.as_deref()
    }

    /// `m^0 ⊇ m^1 ⊇ ... ⊇ m^(s+1) = 0`.
    pub fn filtration(&self) -> &[Subspace] {
        &self.filtration
    }

    pub fn max_ideal(&self) -> &Subspace {
        &self.filtration[1]
    }

    /// Filtration level `i`, or zero beyond the socle degree.
    pub fn power(&self, i: usize) -> Subspace {
        self.filtration.get(i).cloned().unwrap_or_else(|| Subspace::zero(self.field, self.dim()))
    }

    pub fn socle_degree(&self) -> usize {
        self.filtration.len() - 2
    }

    pub fn embedding_dim(&self) -> usize {
        self.gens_m.len()
    }

    /// Basis indices whose classes form a basis of `m/m^2`.
    pub fn m_generators(&self) -> &[usize] {
        &self.gens_m
    }

    pub fn unit(&self, i: usize) -> Vec<u32> {
        unit(self.dim(), i)
    }

    pub fn one(&self) -> Vec<u32> {
        self.unit(0)
    }

    /// `e_u * v`.
    pub fn mul_basis(&self, u: usize, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; self.dim()];
        for (b, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(k, x) in &self.mult[u][b] {
                let k = k as usize;
                out[k] = f.add(out[k], f.mul(c, x));
            }
        }
        out
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0; self.dim()];
        for (i, &ca) in a.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            let t = self.mul_basis(i, b);
            linalg::axpy(f, &mut out, ca, &t);
        }
        out
    }

    /// Matrix of multiplication by `a` (rows index the target basis).
    pub fn mul_matrix(&self, a: &[u32]) -> Vec<Vec<u32>> {
        let n = self.dim();
        let cols: Vec<Vec<u32>> = (0..n).map(|b| self.mul(a, &self.unit(b))).collect();
        (0..n).map(|r| cols.iter().map(|c| c[r]).collect()).collect()
    }

    pub fn hilbert(&self) -> Vec<usize> {
        self.filtration.windows(2).map(|w| w[0].dim() - w[1].dim()).collect()
    }

    /// `(0 : m)`.
    pub fn socle(&self) -> Subspace {
        let n = self.dim();
        let mut rows = Vec::new();
        for &u in &self.gens_m {
            rows.extend(self.mul_matrix(&self.unit(u)));
        }
        let ker = linalg::kernel(self.field, rows, n);
        Subspace::span(self.field, n, ker)
    }

    pub fn socle_type(&self) -> usize {
        self.socle().dim()
    }

    pub fn is_gorenstein(&self) -> bool {
        self.socle_type() == 1
    }

    /// Compares `h(i)` with `min(h_Q(i), h_Q(s-i))`; warns on non-Gorenstein input.
    pub fn is_compressed(&self) -> Compressed {
        let e = self.embedding_dim() as u64;
        let s = self.socle_degree();
        let hq = |i: usize| if e == 0 { (i == 0) as u64 } else { binomial(e - 1 + i as u64, e - 1) };
        let h = self.hilbert();
        let value = (0..=s).all(|i| h[i] as u64 == hq(i).min(hq(s - i)));
        let warning = (!self.is_gorenstein()).then(|| "ring is not Gorenstein; numerical comparison only".to_string());
        Compressed { value, warning }
    }

    /// Largest `i` with `v ∈ m^i`; `s+1` for `v = 0`.
    pub fn valuation(&self, v: &[u32]) -> usize {
        (0..self.filtration.len()).rev().find(|&i| self.filtration[i].contains(v)).unwrap_or(0)
    }

    pub fn valuation_ideal(&self, j: &Subspace) -> usize {
        (0..self.filtration.len()).rev().find(|&i| self.filtration[i].contains_subspace(j)).unwrap_or(0)
    }

    /// The ideal generated by `gens`.
    pub fn ideal_span(&self, gens: &[Vec<u32>]) -> Subspace {
        let n = self.dim();
        Subspace::span(self.field, n, gens.iter().flat_map(|g| (0..n).map(move |b| self.mul_basis(b, g))))
    }

    pub fn is_ideal(&self, j: &Subspace) -> bool {
        self.gens_m.iter().all(|&u| j.basis().iter().all(|v| j.contains(&self.mul_basis(u, v))))
    }

    /// `m * J`.
    pub fn m_times(&self, j: &Subspace) -> Subspace {
        let n = self.dim();
        Subspace::span(
            self.field,
            n,
            self.gens_m.iter().flat_map(|&u| j.basis().iter().map(move |v| self.mul_basis(u, v))),
        )
    }

    /// Minimal number of generators `dim J/mJ`.
    pub fn mu(&self, j: &Subspace) -> Result<usize> {
        if !self.is_ideal(j) {
            return Err(Error::NotAnIdeal);
        }
        Ok(j.dim() - self.m_times(j).dim())
    }

    /// `(0 : a)`.
    pub fn annihilator(&self, a: &[u32]) -> Subspace {
        let ker = linalg::kernel(self.field, self.mul_matrix(a), self.dim());
        Subspace::span(self.field, self.dim(), ker)
    }

    /// `a ≠ 0` with principal nonzero annihilator.
    pub fn is_exact_zero_divisor(&self, a: &[u32]) -> bool {
        if linalg::is_zero(a) {
            return false;
        }
        let ann = self.annihilator(a);
        !ann.is_zero() && self.mu(&ann) == Ok(1)
    }

    /// `A/m^i`; `A` itself when `i > s`.
    pub fn quotient_power(&self, i: usize) -> Result<Self> {
        if i == 0 {
            return Err(Error::InvalidArgument("quotient by m^0 is the zero ring".into()));
        }
        if i >= self.filtration.len() - 1 {
            return Ok(self.clone());
        }
        let n = self.dim();
        let f = self.field;
        let mi = &self.filtration[i];
        let mut probe = Echelon::new(f, n);
        for v in mi.basis() {
            probe.insert(v.clone());
        }
        let kept: Vec<usize> = (0..n).filter(|&j| probe.insert(unit(n, j))).collect();
        let k = kept.len();
        let mut proj = Echelon::with_tags(f, n, k);
        for v in mi.basis() {
            proj.insert_tagged(v.clone(), vec![0; k]);
        }
        for (t, &j) in kept.iter().enumerate() {
            proj.insert_tagged(unit(n, j), unit(k, t));
        }
        let project = |v: &[u32]| proj.coordinates(v).expect("projection covers the whole space");
        let mult = kept
            .iter()
            .map(|&a| kept.iter().map(|&b| linalg::to_sparse(&project(&self.mul_basis(a, &unit(n, b))))).collect())
            .collect();
        let labels = kept.iter().map(|&j| self.labels[j].clone()).collect();
        let grading = self.grading.as_ref().map(|g| kept.iter().map(|&j| g[j]).collect());
        let mut q = Self::from_structure(f, labels, mult, grading)?;
        if let Some(o) = self.origin.as_ref().filter(|_| i >= 2) {
            let images = o.images.iter().map(|(m, v)| (m.clone(), project(v))).collect();
            q = q.with_origin(Origin { ring: o.ring.quotient_power(i as u32)?, images });
        }
        Ok(q)
    }

    /// Parses `text` in the presentation variables and maps it into `A`.
    pub fn element(&self, text: &str) -> Result<Vec<u32>> {
        let o = self
            .origin
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("algebra has no presentation to parse against".into()))?;
        let p = crate::parse::parse_poly(text, o.ring.vars(), self.field, GEN_CAP)?;
        let mut out = vec![0; self.dim()];
        for (m, &c) in p.terms() {
            if let Some(img) = o.images.get(m) {
                linalg::axpy(self.field, &mut out, c, img);
            }
        }
        Ok(out)
    }

    /// Human-readable rendering of an element in the basis labels.
    pub fn render(&self, v: &[u32]) -> String {
        let f = self.field;
        let mut parts = Vec::new();
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let s = f.signed(c);
            let lab = &self.labels[i];
            let body = match (s.abs(), lab.as_str()) {
                (a, "1") => a.to_string(),
                (1, _) => lab.clone(),
                (a, _) => format!("{a}*{lab}"),
            };
            parts.push((s < 0, body));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (neg, body)) in parts.into_iter().enumerate() {
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }

    /// Checks unit, commutativity and associativity; `sample` bounds the triple loop.
    pub fn check_axioms(&self, sample: Option<usize>) -> Result<()> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                if self.mult[a][b] != self.mult[b][a] {
                    return Err(Error::Consistency(format!("e{a}*e{b} is not commutative")));
                }
            }
        }
        let triples: Box<dyn Iterator<Item = (usize, usize, usize)>> = match sample {
            Some(k) if n * n * n > k => {
                use rand::{Rng, SeedableRng};
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(n as u64);
                Box::new((0..k).map(move |_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))))
            }
            _ => Box::new((0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))),
        };
        for (a, b, c) in triples {
            let left = self.mul(&self.mul_basis(a, &unit(n, b)), &unit(n, c));
            let right = self.mul_basis(a, &self.mul_basis(b, &unit(n, c)));
            if left != right {
                return Err(Error::Consistency(format!("(e{a}e{b})e{c} != e{a}(e{b}e{c})")));
            }
        }
        Ok(())
    }
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Lower bound on `μ(I)` for a compressed Gorenstein ring of embedding
/// dimension `e` and socle degree `s`.
pub fn mu_lower_bound_compressed(e: u64, s: u64) -> Result<u64> {
    if e < 2 || s < 2 {
        return Err(Error::InvalidArgument("need e >= 2 and s >= 2".into()));
    }
    let t = (s + 2) / 2;
    let odd = binomial(e - 2 + t, e - 2);
    Ok(if s % 2 == 1 { odd } else { odd + binomial(e + t - 3, e - 2) })
}
