//! Monomials and truncated multivariate polynomials over a prime field.
//!
//! Every [`Poly`] carries a degree cap `N`: only terms of total degree `< N`
//! are stored, and products are truncated back below the cap. For the
//! m-primary ideals handled here this is lossless once `N` exceeds the socle
//! degree.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Exponent vector of a monomial.
///
/// Ordering: total degree first, then reverse lexicographic, where the
/// monomial with the smaller exponent in the last differing variable comes
/// first. In three variables the degree-2 monomials are ordered
/// `x^2, xy, y^2, xz, yz, z^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Self { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Self::new(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::new(exps)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    /// Renders with the given variable names, e.g. `x^2*z`; `1` for the unit.
    pub fn render(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { vars[i].clone() } else { format!("{}^{}", vars[i], e) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                if a != b {
                    return a.cmp(b);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All degree-`d` monomials in `nvars` variables, in the fixed order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left as u16;
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
    }
    if nvars == 0 {
        return if d == 0 { vec![Monomial::one(0)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; nvars], &mut out);
    out.sort();
    out
}

/// All monomials of degree `< cap`, in the fixed order.
pub fn monomials_below(nvars: usize, cap: u32) -> Vec<Monomial> {
    (0..cap).flat_map(|d| monomials_of_degree(nvars, d)).collect()
}

/// A polynomial truncated below its degree cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field: PrimeField,
    vars: Arc<Vec<String>>,
    cap: u32,
    terms: BTreeMap<Monomial, u32>,
}

impl Poly {
    pub fn zero(field: PrimeField, vars: Arc<Vec<String>>, cap: u32) -> Result<Self> {
        if cap == 0 {
            return Err(Error::InvalidCap);
        }
        Ok(Self { field, vars, cap, terms: BTreeMap::new() })
    }

    /// Builds from raw terms, dropping zero coefficients and terms at or above the cap.
    pub fn from_terms(
        field: PrimeField,
        vars: Arc<Vec<String>>,
        cap: u32,
        terms: impl IntoIterator<Item = (Monomial, u32)>,
    ) -> Result<Self> {
        let mut p = Self::zero(field, vars, cap)?;
        for (m, c) in terms {
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn constant(field: PrimeField, vars: Arc<Vec<String>>, cap: u32, c: u32) -> Result<Self> {
        let n = vars.len();
        Self::from_terms(field, vars, cap, [(Monomial::one(n), field.reduce(c as u64))])
    }

    pub fn var(field: PrimeField, vars: Arc<Vec<String>>, cap: u32, i: usize) -> Result<Self> {
        let n = vars.len();
        Self::from_terms(field, vars, cap, [(Monomial::var(n, i), 1)])
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        if m.degree() >= self.cap || c == 0 {
            return;
        }
        let f = self.field;
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, u32> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest degree of a term (the valuation in the polynomial ring); `None` for zero.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field != other.field || self.vars != other.vars || self.cap != other.cap {
            return Err(Error::Mismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Poly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(*c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> Poly {
        let mut out = self.clone();
        out.terms.clear();
        for (m, &a) in &self.terms {
            out.add_term(m.clone(), self.field.mul(a, c));
        }
        out
    }

    /// Product truncated below the shared cap.
    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = Poly { terms: BTreeMap::new(), ..self.clone() };
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                if ma.degree() + mb.degree() < self.cap {
                    out.add_term(ma.mul(mb), self.field.mul(ca, cb));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        let mut out = Poly { terms: BTreeMap::new(), ..self.clone() };
        for (t, &c) in &self.terms {
            out.add_term(t.mul(m), c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(self.field, self.vars.clone(), self.cap, 1).expect("cap > 0");
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Same polynomial viewed with a different cap (re-truncating if smaller).
    pub fn with_cap(&self, cap: u32) -> Result<Poly> {
        Poly::from_terms(self.field, self.vars.clone(), cap, self.terms.iter().map(|(m, &c)| (m.clone(), c)))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first; within a degree, the fixed monomial order
        let mut terms: Vec<(&Monomial, &u32)> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| a.0.cmp(b.0)));
        for (i, (m, &c)) in terms.into_iter().enumerate() {
            let s = self.field.signed(c);
            let mag = s.unsigned_abs();
            match (i, s < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", m.render(&self.vars))?;
            } else {
                write!(f, "{mag}*{}", m.render(&self.vars))?;
            }
        }
        Ok(())
    }
}
