//! Integer polynomials, truncated power series and rational functions in `z`,
//! with the closed forms for Poincaré series used by the verdicts.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

fn write_terms(f: &mut fmt::Formatter<'_>, coeffs: &[BigInt]) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() && !(first && i + 1 == coeffs.len()) {
            continue;
        }
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        match i {
            0 => write!(f, "{mag}")?,
            _ => {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if i == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{i}")?;
                }
            }
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// A polynomial in `z` with integer coefficients, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    /// `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut cs = vec![BigInt::zero(); k + 1];
        cs[k] = BigInt::one();
        Self { coeffs: cs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `p(-z)`.
    pub fn reflect(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect())
    }

    /// `(1 + z)^e`.
    pub fn one_plus_z_pow(e: u32) -> Self {
        Self::from_i64s(&[1, 1]).pow(e)
    }

    fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| num_integer_gcd(&g, c))
    }

    fn primitive(&self) -> Self {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    fn pseudo_rem(&self, d: &Self) -> Self {
        let mut r = self.clone();
        let dd = d.degree().expect("nonzero divisor");
        let lead = d.coeffs[dd].clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let lr = r.coeffs[rd].clone();
            let shifted = Self::monomial(rd - dd).mul(d).scale(&lr);
            r = r.scale(&lead).sub(&shifted);
        }
        r
    }

    /// Exact division; `None` if `d` does not divide `self` over the integers.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let lead = &d.coeffs[dd];
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                return None;
            }
            let c = &r.coeffs[rd];
            if (c % lead) != BigInt::zero() {
                return None;
            }
            let t = c / lead;
            q[rd - dd] = t.clone();
            r = r.sub(&Self::monomial(rd - dd).mul(d).scale(&t));
        }
        Some(Self::new(q))
    }

    /// Greatest common divisor in `Z[z]`, with positive leading coefficient.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.primitive(), o.primitive());
        let c = num_integer_gcd(&self.content(), &o.content());
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        let g = a.scale(&if c.is_zero() { BigInt::one() } else { c });
        match g.coeffs.last() {
            Some(l) if l.is_negative() => g.neg(),
            _ => g,
        }
    }
}

fn num_integer_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A power series known exactly up to `z^D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    /// Coefficients `c_0..c_D`; the cutoff is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c_0");
        Self { coeffs }
    }

    pub fn from_counts<T: Copy + Into<u64>>(cs: &[T]) -> Self {
        Self::new(cs.iter().map(|&c| BigInt::from(c.into())).collect())
    }

    pub fn from_usizes(cs: &[usize]) -> Self {
        Self::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_poly(p: &IntPoly, d: usize) -> Self {
        Self::new((0..=d).map(|i| p.coeff(i)).collect())
    }

    pub fn cutoff(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    /// Coefficients as `i64`, if they fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn truncate(&self, d: usize) -> Self {
        assert!(d <= self.cutoff(), "cannot extend a truncated series");
        Self::new(self.coeffs[..=d].to_vec())
    }

    fn common(&self, o: &Self) -> usize {
        self.cutoff().min(o.cutoff())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new((0..=self.common(o)).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new((0..=self.common(o)).map(|i| &self.coeffs[i] - &o.coeffs[i]).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.common(o);
        Self::new((0..=d).map(|n| (0..=n).map(|i| &self.coeffs[i] * &o.coeffs[n - i]).sum()).collect())
    }

    /// `z^k · self`, keeping the cutoff.
    pub fn shift(&self, k: usize) -> Self {
        let d = self.cutoff();
        Self::new((0..=d).map(|i| if i >= k { self.coeffs[i - k].clone() } else { BigInt::zero() }).collect())
    }

    /// `1/self`; requires `c_0 = ±1`.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !c0.abs().is_one() {
            return Err(Error::InvalidArgument(format!("constant term {c0} is not a unit")));
        }
        let mut out: Vec<BigInt> = vec![c0.clone()];
        for n in 1..=self.cutoff() {
            let s: BigInt = (1..=n).map(|i| &self.coeffs[i] * &out[n - i]).sum();
            out.push(-s * c0);
        }
        Ok(Self::new(out))
    }

    /// First index where the series differ.
    pub fn first_difference(&self, o: &Self) -> Option<usize> {
        (0..=self.common(o)).find(|&i| self.coeffs[i] != o.coeffs[i])
    }

    /// `self_i <= o_i` for every common index.
    pub fn dominated_by(&self, o: &Self) -> bool {
        (0..=self.common(o)).all(|i| self.coeffs[i] <= o.coeffs[i])
    }

    /// Comma-separated coefficients.
    pub fn to_list(&self) -> String {
        self.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for IntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.cutoff();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{i}")?,
            }
        }
        write!(f, " + O(z^{})", d + 1)
    }
}

impl Serialize for IntSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

/// `num / den` with `den(0) = ±1`, kept unreduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFn {
    pub num: IntPoly,
    pub den: IntPoly,
}

impl RationalFn {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if !den.coeff(0).abs().is_one() {
            return Err(Error::InvalidArgument(format!("denominator {den} has constant term other than +-1")));
        }
        Ok(Self { num, den })
    }

    pub fn den_degree(&self) -> usize {
        self.den.degree().unwrap_or(0)
    }

    pub fn expand(&self, d: usize) -> IntSeries {
        expand_rational(&self.num, &self.den, d).expect("denominator checked at construction")
    }

    /// Cancels the common factor of numerator and denominator.
    pub fn normalize(&self) -> Self {
        let g = self.num.gcd(&self.den);
        let mut num = self.num.div_exact(&g).expect("gcd divides");
        let mut den = self.den.div_exact(&g).expect("gcd divides");
        if den.coeff(0).is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Self { num, den }
    }

    /// Equality as rational functions.
    pub fn same_function(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl Serialize for RationalFn {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Expands `num/den` up to `z^d`.
pub fn expand_rational(num: &IntPoly, den: &IntPoly, d: usize) -> Result<IntSeries> {
    let inv = IntSeries::from_poly(den, d).reciprocal()?;
    Ok(IntSeries::from_poly(num, d).mul(&inv))
}

/// `(1+z)^e / (1 - Σ_{j=1}^{e-d} h_j z^{j+1})`; `h` lists `h_1, ..., h_{e-d}`.
pub fn golod_rational(e: u32, h: &[u64]) -> RationalFn {
    let mut den = vec![BigInt::one(), BigInt::zero()];
    den.extend(h.iter().map(|&x| -BigInt::from(x)));
    RationalFn::new(IntPoly::one_plus_z_pow(e), IntPoly::new(den)).expect("constant term 1")
}

pub fn golod_series(e: u32, h: &[u64], d: usize) -> IntSeries {
    golod_rational(e, h).expand(d)
}

/// `P / (1 - z^2 P)` to the cutoff of `P`.
pub fn la_quotient_series(p: &IntSeries) -> Result<IntSeries> {
    if !p.coeff(0).is_one() {
        return Err(Error::InvalidArgument("series must start with 1".into()));
    }
    let one = IntSeries::from_poly(&IntPoly::one(), p.cutoff());
    Ok(p.mul(&one.sub(&p.shift(2)).reciprocal()?))
}

/// `1 / ((1-z)^e - z^2)`.
pub fn gulliksen_ci_rational(e: u32) -> RationalFn {
    let den = IntPoly::from_i64s(&[1, -1]).pow(e).sub(&IntPoly::monomial(2));
    RationalFn::new(IntPoly::one(), den).expect("constant term 1")
}

pub fn gulliksen_ci_series(e: u32, d: usize) -> IntSeries {
    gulliksen_ci_rational(e).expand(d)
}

/// `P_R / (1 - z P_E)`.
pub fn gulliksen_trivext_series(p_r: &IntSeries, p_e: &IntSeries) -> Result<IntSeries> {
    let d = p_r.cutoff().min(p_e.cutoff());
    let one = IntSeries::from_poly(&IntPoly::one(), d);
    Ok(p_r.truncate(d).mul(&one.sub(&p_e.truncate(d).shift(1)).reciprocal()?))
}

/// Closed forms for a trivial extension of a ring with Hilbert series `1 + ez + (e-1)z^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrivextForms {
    pub p_r: RationalFn,
    pub p_e: RationalFn,
    pub p_t: RationalFn,
}

pub fn trivext_closed_forms(e: u32) -> TrivextForms {
    let e1 = e as i64 - 1;
    let line = IntPoly::from_i64s(&[1, -e1]);
    let p_r = RationalFn::new(IntPoly::one(), IntPoly::from_i64s(&[1, -1]).mul(&line)).expect("unit");
    let p_e = RationalFn::new(IntPoly::from_i64s(&[e1, -1]), line).expect("unit");
    let lift = IntPoly::one_plus_z_pow(2 * e - 1);
    let den = IntPoly::from_i64s(&[1, -1]).mul(&IntPoly::from_i64s(&[1, -2 * e1, 1])).mul(&lift);
    let p_t = RationalFn::new(lift, den).expect("unit");
    TrivextForms { p_r, p_e, p_t }
}

/// `(1+z)^2 / g` with `g = 1 - z - (μ-1)z^2 - z^3 + z^4`, and the quotient
/// form `(1+z)^2 / (1 - z - μz^2 - 3z^3)`.
pub fn codepth3_gorenstein_rational(mu: u64) -> Result<(RationalFn, RationalFn)> {
    if mu < 4 {
        return Err(Error::InvalidArgument(format!("needs mu(I) >= 4, got {mu}")));
    }
    let mu = mu as i64;
    let num = IntPoly::one_plus_z_pow(2);
    let g = IntPoly::from_i64s(&[1, -1, -(mu - 1), -1, 1]);
    let q = IntPoly::from_i64s(&[1, -1, -mu, -3]);
    Ok((RationalFn::new(num.clone(), g)?, RationalFn::new(num, q)?))
}

pub fn codepth3_gorenstein_series(mu: u64, d: usize) -> Result<IntSeries> {
    Ok(codepth3_gorenstein_rational(mu)?.0.expand(d))
}

/// `1 / (1 - ez + ez^2 - z^3)`.
pub fn ezd_rational(e: u32) -> RationalFn {
    let e = e as i64;
    RationalFn::new(IntPoly::one(), IntPoly::from_i64s(&[1, -e, e, -1])).expect("unit")
}

pub fn ezd_series(e: u32, d: usize) -> IntSeries {
    ezd_rational(e).expand(d)
}

/// `(1+z)^e / (1 - z(P^Q_R - 1) + z^(e+1)(z+1))`.
pub fn rossi_sega_rational(e: u32, pqr: &IntPoly) -> Result<RationalFn> {
    let den = IntPoly::one()
        .sub(&IntPoly::monomial(1).mul(&pqr.sub(&IntPoly::one())))
        .add(&IntPoly::monomial(e as usize + 1).mul(&IntPoly::from_i64s(&[1, 1])));
    RationalFn::new(IntPoly::one_plus_z_pow(e), den)
}

pub fn rossi_sega_criterion_series(e: u32, pqr: &IntPoly, d: usize) -> Result<IntSeries> {
    Ok(rossi_sega_rational(e, pqr)?.expand(d))
}

/// `1 - (h+1)z^2 - 2(h+1)z^3 - (h+6)z^4 - 4z^5`.
pub fn ggo_denominator(h: i64) -> IntPoly {
    IntPoly::from_i64s(&[1, 0, -(h + 1), -2 * (h + 1), -(h + 6), -4])
}

/// `(1+z)^2 (1 - 2z - (h-2)z^2 - 4z^3)`.
pub fn ggo_factored(h: i64) -> IntPoly {
    IntPoly::one_plus_z_pow(2).mul(&IntPoly::from_i64s(&[1, -2, -(h - 2), -4]))
}

/// `d(z) - z^2(1+z)^4` with `d(z) = (1+z)^2 (1 - 2z - (h-3)z^2 - 2z^3 + z^4)`.
pub fn ggo_from_d(h: i64) -> IntPoly {
    let d = IntPoly::one_plus_z_pow(2).mul(&IntPoly::from_i64s(&[1, -2, -(h - 3), -2, 1]));
    d.sub(&IntPoly::monomial(2).mul(&IntPoly::one_plus_z_pow(4)))
}

/// `P(z) · H(-z) = 1` up to the cutoff of `P`.
pub fn koszul_numerical_test(p: &IntSeries, h: &IntPoly) -> bool {
    let prod = p.mul(&IntSeries::from_poly(&h.reflect(), p.cutoff()));
    prod.coeffs().iter().enumerate().all(|(i, c)| if i == 0 { c.is_one() } else { c.is_zero() })
}

/// `Σ h_j z^j` from Koszul homology dimensions.
pub fn tor_polynomial(dims: &[usize]) -> IntPoly {
    IntPoly::new(dims.iter().map(|&h| BigInt::from(h)).collect())
}
