//! Presented rings `Q/I` and the ring-file format.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::parse::parse_poly;
use crate::poly::{monomials_of_degree, Poly};

/// Working cap for generators before a compile cap is chosen.
pub(crate) const GEN_CAP: u32 = 64;

/// Smallest and largest caps tried when a ring file gives none.
pub const CAP_SEARCH: (u32, u32) = (3, 12);

/// `k[x_1..x_e]/I` with `I` generated by polynomials of valuation at least 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedRing {
    field: PrimeField,
    vars: Arc<Vec<String>>,
    gens: Vec<Poly>,
    cap: Option<u32>,
}

impl PresentedRing {
    pub fn new(field: PrimeField, vars: Vec<String>, gens: Vec<Poly>, cap: Option<u32>) -> Result<Self> {
        let vars = Arc::new(vars);
        if cap == Some(0) {
            return Err(Error::InvalidCap);
        }
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            if g.field() != field || g.vars() != &vars {
                return Err(Error::Mismatch);
            }
            if g.valuation().is_some_and(|v| v < 2) {
                return Err(Error::NonMinimalPresentation(g.to_string()));
            }
            out.push(g.with_cap(GEN_CAP)?);
        }
        Ok(Self { field, vars, gens: out, cap })
    }

    /// Parses generator strings over `field` in `vars`.
    pub fn from_strings(field: PrimeField, vars: &[&str], gens: &[&str], cap: Option<u32>) -> Result<Self> {
        let names: Arc<Vec<String>> = Arc::new(vars.iter().map(|s| s.to_string()).collect());
        let gens = gens
            .iter()
            .map(|g| parse_poly(g, &names, field, GEN_CAP))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, names.to_vec(), gens, cap)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    pub fn with_cap(&self, cap: Option<u32>) -> Self {
        Self { cap, ..self.clone() }
    }

    /// The presentation of `R/m^i`: adds every monomial of degree `i`.
    pub fn quotient_power(&self, i: u32) -> Result<Self> {
        if i < 2 {
            return Err(Error::InvalidArgument("presented quotient by m^i needs i >= 2".into()));
        }
        let mut gens = self.gens.clone();
        for m in monomials_of_degree(self.vars.len(), i) {
            gens.push(Poly::from_terms(self.field, self.vars.clone(), GEN_CAP, [(m, 1)])?);
        }
        let cap = Some(self.cap.map_or(i, |c| c.min(i).max(2)));
        Ok(Self { gens, cap, ..self.clone() })
    }

    /// Serializes in the ring-file format.
    pub fn to_ring_file(&self) -> String {
        let mut s = String::new();
        writeln!(s, "char = {}", self.field.modulus()).unwrap();
        writeln!(s, "vars = [{}]", self.vars.join(", ")).unwrap();
        let gens: Vec<String> = self.gens.iter().map(|g| format!("\"{g}\"")).collect();
        writeln!(s, "ideal = [{}]", gens.join(", ")).unwrap();
        if let Some(c) = self.cap {
            writeln!(s, "cap = {c}").unwrap();
        }
        s
    }
}

fn input_err(file: &str, line: usize, msg: impl Into<String>) -> Error {
    Error::Input { file: file.to_string(), line, msg: msg.into() }
}

fn strip_comment(line: &str) -> &str {
    let mut in_str = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_str = !in_str,
            '#' if !in_str => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Splits the inside of `[ ... ]` on top-level commas, honouring quotes.
fn split_list(body: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut in_str = false;
    for c in body.chars() {
        match c {
            '"' => {
                in_str = !in_str;
                cur.push(c);
            }
            ',' if !in_str => {
                out.push(cur.trim().to_string());
                cur.clear();
            }
            _ => cur.push(c),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// Logical `key = value` entries with their starting line numbers.
/// A value opening `[` continues over lines until the matching `]`.
pub(crate) fn logical_entries(text: &str, file: &str) -> Result<Vec<(usize, String, String)>> {
    let mut out: Vec<(usize, String, String)> = Vec::new();
    let mut pending: Option<(usize, String, String)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw).trim();
        if let Some((l, k, mut v)) = pending.take() {
            v.push(' ');
            v.push_str(line);
            if v.contains(']') {
                out.push((l, k, v));
            } else {
                pending = Some((l, k, v));
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(input_err(file, lineno, format!("expected `key = value`, got `{line}`")));
        };
        let (k, v) = (k.trim().to_string(), v.trim().to_string());
        if v.starts_with('[') && !v.contains(']') {
            pending = Some((lineno, k, v));
        } else {
            out.push((lineno, k, v));
        }
    }
    if let Some((l, k, _)) = pending {
        return Err(input_err(file, l, format!("unterminated list for `{k}`")));
    }
    Ok(out)
}

pub(crate) fn parse_list(v: &str, file: &str, line: usize) -> Result<Vec<String>> {
    let v = v.trim();
    if !(v.starts_with('[') && v.ends_with(']')) {
        return Err(input_err(file, line, "expected a `[...]` list"));
    }
    Ok(split_list(&v[1..v.len() - 1]))
}

pub(crate) fn unquote(s: &str, file: &str, line: usize) -> Result<String> {
    let s = s.trim();
    if s.len() >= 2 && s.starts_with('"') && s.ends_with('"') {
        Ok(s[1..s.len() - 1].to_string())
    } else {
        Err(input_err(file, line, format!("expected a quoted polynomial, got `{s}`")))
    }
}

/// Parses a ring file. `char_override` replaces the file's `char` line.
pub fn parse_ring_file(text: &str, file: &str, char_override: Option<u64>) -> Result<PresentedRing> {
    let mut ch: Option<(usize, u64)> = None;
    let mut vars: Option<(usize, Vec<String>)> = None;
    let mut ideal: Option<(usize, Vec<String>)> = None;
    let mut cap: Option<u32> = None;
    let mut seen = std::collections::BTreeSet::new();
    for (line, key, value) in logical_entries(text, file)? {
        if !seen.insert(key.clone()) {
            return Err(input_err(file, line, format!("duplicate key `{key}`")));
        }
        match key.as_str() {
            "char" => {
                let p = value.parse::<u64>().map_err(|_| input_err(file, line, "char must be an integer"))?;
                ch = Some((line, p));
            }
            "vars" => {
                let names = parse_list(&value, file, line)?;
                for n in &names {
                    let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                        && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                    if !ok {
                        return Err(input_err(file, line, format!("invalid variable name `{n}`")));
                    }
                }
                if names.is_empty() {
                    return Err(input_err(file, line, "at least one variable is required"));
                }
                vars = Some((line, names));
            }
            "ideal" => {
                let items = parse_list(&value, file, line)?;
                let gens = items.iter().map(|s| unquote(s, file, line)).collect::<Result<Vec<_>>>()?;
                ideal = Some((line, gens));
            }
            "cap" => {
                let c = value.parse::<u32>().map_err(|_| input_err(file, line, "cap must be a positive integer"))?;
                if c == 0 {
                    return Err(input_err(file, line, "cap must be a positive integer"));
                }
                cap = Some(c);
            }
            other => return Err(input_err(file, line, format!("unknown key `{other}`"))),
        }
    }
    let (cline, p) = match (char_override, ch) {
        (Some(p), _) => (0, p),
        (None, Some(c)) => c,
        (None, None) => return Err(input_err(file, 0, "missing `char`")),
    };
    let field = PrimeField::new(p).map_err(|e| input_err(file, cline, e.to_string()))?;
    let (vline, vars) = vars.ok_or_else(|| input_err(file, 0, "missing `vars`"))?;
    let (iline, gens) = ideal.ok_or_else(|| input_err(file, 0, "missing `ideal`"))?;
    let names: Arc<Vec<String>> = Arc::new(vars);
    let mut polys = Vec::new();
    for g in &gens {
        let p = parse_poly(g, &names, field, GEN_CAP).map_err(|e| input_err(file, iline, format!("in \"{g}\": {e}")))?;
        polys.push(p);
    }
    PresentedRing::new(field, names.to_vec(), polys, cap).map_err(|e| input_err(file, vline.max(iline), e.to_string()))
}
