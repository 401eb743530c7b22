use std::sync::Arc;

use crate::algebra::{logical_entries, parse_list, unquote, GEN_CAP};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::parse::parse_poly;
use crate::poly::Poly;

/// A skew-symmetric matrix of polynomials with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewMatrix {
    entries: Vec<Vec<Poly>>,
}

impl SkewMatrix {
    pub fn new(entries: Vec<Vec<Poly>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("matrix is not square".into()));
        }
        let first = entries.first().and_then(|r| r.first());
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (&entries[i][j], &entries[j][i]);
                if let Some(p) = first {
                    if a.field() != p.field() || a.vars() != p.vars() || a.cap() != p.cap() {
                        return Err(Error::Mismatch);
                    }
                }
                if *a != b.neg() || (i == j && !a.is_zero()) {
                    return Err(Error::InvalidArgument(format!("entry ({}, {}) breaks skew-symmetry", i + 1, j + 1)));
                }
            }
        }
        Ok(Self { entries })
    }

    /// Builds from the strictly upper triangular entries, row by row.
    pub fn from_upper(n: usize, upper: &[Poly]) -> Result<Self> {
        if upper.len() != n * n.saturating_sub(1) / 2 || upper.is_empty() {
            return Err(Error::InvalidArgument("wrong number of upper entries".into()));
        }
        let zero = upper[0].sub(&upper[0])?;
        let mut entries = vec![vec![zero; n]; n];
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let p = it.next().unwrap();
                entries[i][j] = p.clone();
                entries[j][i] = p.neg();
            }
        }
        Self::new(entries)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    fn minor(&self, skip: usize) -> Vec<usize> {
        (0..self.size()).filter(|&i| i != skip).collect()
    }
}

fn pf_rec(m: &[Vec<Poly>], idx: &[usize], one: &Poly) -> Result<Poly> {
    if idx.is_empty() {
        return Ok(one.clone());
    }
    let mut acc = one.sub(one)?;
    let first = idx[0];
    for k in 1..idx.len() {
        let a = &m[first][idx[k]];
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&i| i != idx[k]).collect();
        let term = a.mul(&pf_rec(m, &rest, one)?)?;
        acc = if k % 2 == 1 { acc.add(&term)? } else { acc.sub(&term)? };
    }
    Ok(acc)
}

fn one_like(p: &Poly) -> Result<Poly> {
    Poly::constant(p.field(), p.vars().clone(), p.cap(), 1)
}

/// Pfaffian by expansion along the first row; the empty matrix has Pfaffian 1.
pub fn pfaffian(m: &SkewMatrix) -> Result<Poly> {
    let n = m.size();
    if n % 2 == 1 {
        return Err(Error::InvalidArgument(format!("Pfaffian needs even size, got {n}")));
    }
    let Some(p) = m.entries.first().and_then(|r| r.first()) else {
        return Err(Error::InvalidArgument("empty matrix carries no field".into()));
    };
    pf_rec(&m.entries, &(0..n).collect::<Vec<_>>(), &one_like(p)?)
}

/// The `n` sub-maximal Pfaffians of an odd matrix; Pfaffian `i` (1-based) carries sign `(-1)^(i+1)`.
pub fn pfaffian_ideal(m: &SkewMatrix) -> Result<Vec<Poly>> {
    let n = m.size();
    if n.is_multiple_of(2) || n < 3 {
        return Err(Error::InvalidArgument(format!("sub-maximal Pfaffians need odd size >= 3, got {n}")));
    }
    let one = one_like(&m.entries[0][0])?;
    (0..n)
        .map(|i| {
            let pf = pf_rec(&m.entries, &m.minor(i), &one)?;
            Ok(if i % 2 == 0 { pf } else { pf.neg() })
        })
        .collect()
}

fn input_err(file: &str, line: usize, msg: impl Into<String>) -> Error {
    Error::Input { file: file.to_string(), line, msg: msg.into() }
}

/// Parses a skew-matrix file: `char`, `vars`, optional `cap`, `size`, then `size` lines `row = [...]`.
pub fn parse_skew_file(text: &str, file: &str, char_override: Option<u64>) -> Result<SkewMatrix> {
    let mut ch = None;
    let mut vars = None;
    let mut cap = GEN_CAP;
    let mut size = None;
    let mut rows: Vec<(usize, Vec<String>)> = Vec::new();
    for (line, key, value) in logical_entries(text, file)? {
        match key.as_str() {
            "char" => ch = Some(value.parse::<u64>().map_err(|_| input_err(file, line, "char must be an integer"))?),
            "vars" => vars = Some(parse_list(&value, file, line)?),
            "cap" => {
                cap = value.parse::<u32>().ok().filter(|&c| c > 0).ok_or_else(|| input_err(file, line, "cap must be a positive integer"))?
            }
            "size" => size = Some(value.parse::<usize>().map_err(|_| input_err(file, line, "size must be an integer"))?),
            "row" => {
                let items = parse_list(&value, file, line)?;
                rows.push((line, items.iter().map(|s| unquote(s, file, line)).collect::<Result<_>>()?));
            }
            other => return Err(input_err(file, line, format!("unknown key `{other}`"))),
        }
    }
    let p = char_override.or(ch).ok_or_else(|| input_err(file, 0, "missing `char`"))?;
    let field = PrimeField::new(p).map_err(|e| input_err(file, 0, e.to_string()))?;
    let names: Arc<Vec<String>> = Arc::new(vars.ok_or_else(|| input_err(file, 0, "missing `vars`"))?);
    let n = size.ok_or_else(|| input_err(file, 0, "missing `size`"))?;
    if rows.len() != n {
        return Err(input_err(file, 0, format!("expected {n} rows, found {}", rows.len())));
    }
    let mut entries = Vec::with_capacity(n);
    for (line, row) in &rows {
        if row.len() != n {
            return Err(input_err(file, *line, format!("expected {n} entries, found {}", row.len())));
        }
        let parsed = row
            .iter()
            .map(|s| parse_poly(s, &names, field, cap).map_err(|e| input_err(file, *line, format!("in \"{s}\": {e}"))))
            .collect::<Result<Vec<_>>>()?;
        entries.push(parsed);
    }
    SkewMatrix::new(entries).map_err(|e| input_err(file, 0, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::determinant;
    use rand::{Rng, SeedableRng};

    fn scalar_matrix(f: PrimeField, rng: &mut impl Rng, n: usize) -> (SkewMatrix, Vec<Vec<u32>>) {
        let vars = Arc::new(Vec::new());
        let mut dense = vec![vec![0u32; n]; n];
        let mut upper = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = rng.gen_range(0..f.modulus());
                dense[i][j] = c;
                dense[j][i] = f.neg(c);
                upper.push(Poly::constant(f, vars.clone(), 1, c).unwrap());
            }
        }
        (SkewMatrix::from_upper(n, &upper).unwrap(), dense)
    }

    #[test]
    fn pfaffian_squares_to_determinant() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for t in 0..100 {
            let n = 2 * (1 + t % 4);
            let (m, dense) = scalar_matrix(f, &mut rng, n);
            let pf = pfaffian(&m).unwrap();
            let c = pf.terms().values().next().copied().unwrap_or(0);
            assert_eq!(f.mul(c, c), determinant(f, dense));
        }
        for t in 0..50 {
            let (_, dense) = scalar_matrix(f, &mut rng, 3 + 2 * (t % 3));
            assert_eq!(determinant(f, dense), 0);
        }
    }

    #[test]
    fn three_by_three() {
        let f = PrimeField::new(7).unwrap();
        let vars: Arc<Vec<String>> = Arc::new(vec!["a".into(), "b".into(), "c".into()]);
        let v = |i| Poly::var(f, vars.clone(), 4, i).unwrap();
        let m = SkewMatrix::from_upper(3, &[v(0), v(1), v(2)]).unwrap();
        let ideal = pfaffian_ideal(&m).unwrap();
        assert_eq!(ideal, vec![v(2), v(1).neg(), v(0)]);
        assert!(pfaffian(&m).is_err());
    }

    #[test]
    fn rejects_non_skew() {
        let text = "char = 5\nvars = [x]\nsize = 3\nrow = [\"0\", \"x\", \"0\"]\nrow = [\"x\", \"0\", \"0\"]\nrow = [\"0\", \"0\", \"0\"]\n";
        assert!(matches!(parse_skew_file(text, "m", None), Err(Error::Input { .. })));
    }
}
