//! Dense exact linear algebra over `F_p`.
//!
//! Vectors are `Vec<u32>` of canonical residues. [`Subspace`] keeps a reduced
//! row echelon basis, so two subspaces are equal iff their matrices are.
//! [`Echelon`] is the incremental (non-canonical) variant used in hot loops;
//! it can carry a tag vector per row to express vectors in a chosen basis
//! modulo another subspace.

use crate::field::PrimeField;

/// Sparse vector as `(index, nonzero coefficient)` pairs, indices increasing.
pub type SparseVec = Vec<(u32, u32)>;

pub fn to_sparse(v: &[u32]) -> SparseVec {
    v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i as u32, c)).collect()
}

pub fn to_dense(v: &SparseVec, n: usize) -> Vec<u32> {
    let mut out = vec![0; n];
    for &(i, c) in v {
        out[i as usize] = c;
    }
    out
}

pub fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&c| c == 0)
}

/// `y += c*x` entrywise.
pub fn axpy(f: PrimeField, y: &mut [u32], c: u32, x: &[u32]) {
    if c == 0 {
        return;
    }
    for (a, &b) in y.iter_mut().zip(x) {
        if b != 0 {
            *a = f.add(*a, f.mul(c, b));
        }
    }
}

/// Reduces `rows` (each of length `ncols`) to reduced row echelon form in
/// place, dropping zero rows. Returns the pivot column of each surviving row.
pub fn rref(f: PrimeField, rows: &mut Vec<Vec<u32>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut nz: Vec<usize> = Vec::new();
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, k);
        let inv = f.inv(rows[r][c]);
        nz.clear();
        {
            let row = &mut rows[r];
            for (j, x) in row.iter_mut().enumerate().skip(c) {
                if *x != 0 {
                    *x = f.mul(*x, inv);
                    nz.push(j);
                }
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (prow, rest) = tail.split_first_mut().expect("row r exists");
        for other in head.iter_mut().chain(rest.iter_mut()) {
            let coef = other[c];
            if coef != 0 {
                for &j in &nz {
                    other[j] = f.sub_mul(other[j], coef, prow[j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(f: PrimeField, rows: &[Vec<u32>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m, ncols).len()
}

/// Basis of `{x : M x = 0}` for `M` given by rows of length `ncols`, one
/// vector per free column (with a 1 there), in increasing free-column order.
pub fn kernel_sparse(f: PrimeField, mut rows: Vec<Vec<u32>>, ncols: usize) -> Vec<SparseVec> {
    let pivots = rref(f, &mut rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::with_capacity(ncols - pivots.len());
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v: SparseVec = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            let a = rows[r][free];
            if a != 0 {
                v.push((pc as u32, f.neg(a)));
            }
        }
        v.push((free as u32, 1));
        v.sort_unstable_by_key(|e| e.0);
        out.push(v);
    }
    out
}

pub fn kernel(f: PrimeField, rows: Vec<Vec<u32>>, ncols: usize) -> Vec<Vec<u32>> {
    kernel_sparse(f, rows, ncols).iter().map(|v| to_dense(v, ncols)).collect()
}

/// Determinant by Gaussian elimination.
pub fn determinant(f: PrimeField, mut m: Vec<Vec<u32>>) -> u32 {
    let n = m.len();
    let mut det = 1u32;
    for c in 0..n {
        let Some(k) = (c..n).find(|&k| m[k][c] != 0) else { return 0 };
        if k != c {
            m.swap(k, c);
            det = f.neg(det);
        }
        det = f.mul(det, m[c][c]);
        let inv = f.inv(m[c][c]);
        for r in c + 1..n {
            let coef = f.mul(m[r][c], inv);
            if coef != 0 {
                for j in c..n {
                    m[r][j] = f.sub_mul(m[r][j], coef, m[c][j]);
                }
            }
        }
    }
    det
}

/// A subspace of `F_p^n` in canonical reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Self { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Self { field, ambient, rows, pivots: (0..ambient).collect() }
    }

    pub fn span(field: PrimeField, ambient: usize, vectors: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut rows: Vec<Vec<u32>> = vectors.into_iter().filter(|v| !is_zero(v)).collect();
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        let pivots = rref(field, &mut rows, ambient);
        Self { field, ambient, rows, pivots }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after subtracting its projection along the pivots.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = out[p];
            if c != 0 {
                for (j, &x) in row.iter().enumerate().skip(p) {
                    if x != 0 {
                        out[j] = self.field.sub_mul(out[j], c, x);
                    }
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        is_zero(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.field, self.ambient, self.rows.iter().chain(&other.rows).cloned())
    }
}

const NONE: u32 = u32::MAX;

/// Incrementally built echelon basis with optional row tags.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: PrimeField,
    ncols: usize,
    tag_len: usize,
    rows: Vec<Vec<u32>>,
    nz: Vec<Vec<u32>>,
    tags: Vec<Vec<u32>>,
    row_of_col: Vec<u32>,
}

impl Echelon {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        Self::with_tags(field, ncols, 0)
    }

    pub fn with_tags(field: PrimeField, ncols: usize, tag_len: usize) -> Self {
        Self { field, ncols, tag_len, rows: Vec::new(), nz: Vec::new(), tags: Vec::new(), row_of_col: vec![NONE; ncols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduces `v` in place; returns the accumulated tag `sum coef * tag(row)`.
    pub fn reduce(&self, v: &mut [u32]) -> Vec<u32> {
        let f = self.field;
        let mut acc = vec![0; self.tag_len];
        for c in 0..self.ncols {
            let coef = v[c];
            if coef == 0 {
                continue;
            }
            let r = self.row_of_col[c];
            if r == NONE {
                continue;
            }
            let r = r as usize;
            let row = &self.rows[r];
            for &j in &self.nz[r] {
                let j = j as usize;
                v[j] = f.sub_mul(v[j], coef, row[j]);
            }
            if self.tag_len > 0 {
                axpy(f, &mut acc, coef, &self.tags[r]);
            }
        }
        acc
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        is_zero(&w)
    }

    /// Inserts `v`; returns `true` if the rank grew.
    pub fn insert(&mut self, v: Vec<u32>) -> bool {
        let tag = vec![0; self.tag_len];
        self.insert_tagged(v, tag)
    }

    pub fn insert_tagged(&mut self, mut v: Vec<u32>, mut tag: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        let f = self.field;
        let acc = self.reduce(&mut v);
        let Some(p) = v.iter().position(|&c| c != 0) else { return false };
        for (t, a) in tag.iter_mut().zip(&acc) {
            *t = f.sub(*t, *a);
        }
        let inv = f.inv(v[p]);
        let mut nz = Vec::new();
        for (j, x) in v.iter_mut().enumerate().skip(p) {
            if *x != 0 {
                *x = f.mul(*x, inv);
                nz.push(j as u32);
            }
        }
        for t in tag.iter_mut() {
            *t = f.mul(*t, inv);
        }
        self.row_of_col[p] = self.rows.len() as u32;
        self.rows.push(v);
        self.nz.push(nz);
        self.tags.push(tag);
        true
    }

    /// Coordinates of `v` relative to the tags, if `v` lies in the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let mut w = v.to_vec();
        let acc = self.reduce(&mut w);
        is_zero(&w).then_some(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    fn mat_vec(f: PrimeField, m: &[Vec<u32>], x: &[u32]) -> Vec<u32> {
        m.iter()
            .map(|row| row.iter().zip(x).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    #[test]
    fn rref_is_canonical() {
        let f = f7();
        let a = Subspace::span(f, 3, vec![vec![1, 2, 3], vec![2, 4, 0]]);
        let b = Subspace::span(f, 3, vec![vec![0, 0, 5], vec![3, 6, 2], vec![1, 2, 3]]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.pivots(), &[0, 2]);
        assert!(a.contains(&[4, 1, 6]));
        assert!(!a.contains(&[0, 1, 0]));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = f7();
        let m = vec![vec![1, 2, 3, 4], vec![2, 4, 6, 1], vec![3, 6, 2, 5]];
        let ker = kernel(f, m.clone(), 4);
        assert_eq!(ker.len(), 4 - rank(f, &m, 4));
        for v in &ker {
            assert!(is_zero(&mat_vec(f, &m, v)));
        }
    }

    #[test]
    fn determinant_small() {
        let f = f7();
        assert_eq!(determinant(f, vec![vec![0, 1], vec![1, 0]]), 6);
        assert_eq!(determinant(f, vec![vec![2, 3], vec![4, 6]]), 0);
        assert_eq!(determinant(f, vec![vec![1, 2, 0], vec![0, 1, 3], vec![4, 0, 1]]), (1 + 24) % 7);
    }

    #[test]
    fn echelon_coordinates_modulo_subspace() {
        let f = f7();
        // quotient of F^3 by span(e0): representatives e1, e1+e2
        let mut e = Echelon::with_tags(f, 3, 2);
        assert!(e.insert_tagged(vec![1, 0, 0], vec![0, 0]));
        assert!(e.insert_tagged(vec![0, 1, 0], vec![1, 0]));
        assert!(e.insert_tagged(vec![0, 1, 1], vec![0, 1]));
        // v = 3 e0 + 2 e1 + 5 e2 = 3 e0 + (2-5) e1 + 5 (e1+e2)
        let c = e.coordinates(&[3, 2, 5]).unwrap();
        assert_eq!(c, vec![f.sub(2, 5), 5]);
        assert!(!e.insert(vec![1, 1, 1]));
    }
}
