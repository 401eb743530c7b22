//! The Koszul complex on a minimal generating set of `m`, its homology and
//! the induced products.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::algebra::FiniteLocalAlgebra;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{self, Echelon, Subspace};

/// `K_j = R ⊗ Λ^j k^e`; a vector in `K_j` has coordinate `subset * n + basis`.
#[derive(Debug, Clone)]
pub struct KoszulComplex {
    alg: FiniteLocalAlgebra,
    gens: Vec<usize>,
    subsets: Vec<Vec<u32>>,
    position: Vec<usize>,
    diffs: Vec<Vec<Vec<u32>>>,
}

fn popcount_below(mask: u32, t: u32) -> u32 {
    (mask & ((1u32 << t) - 1)).count_ones()
}

/// Sign of `e_S ∧ e_T` for disjoint `S`, `T`.
fn wedge_sign(s: u32, t: u32) -> bool {
    let mut inv = 0;
    let mut rest = t;
    while rest != 0 {
        let b = rest.trailing_zeros();
        inv += (s >> (b + 1)).count_ones();
        rest &= rest - 1;
    }
    inv % 2 == 1
}

impl KoszulComplex {
    pub fn new(alg: &FiniteLocalAlgebra) -> Self {
        let gens = alg.m_generators().to_vec();
        let e = gens.len();
        assert!(e < 31, "embedding dimension too large for subset masks");
        let mut subsets = vec![Vec::new(); e + 1];
        let mut position = vec![0; 1 << e];
        let mut masks: Vec<u32> = (0..1u32 << e).collect();
        masks.sort_by_key(|&m| {
            let mut bits: Vec<u32> = (0..e as u32).filter(|b| m >> b & 1 == 1).collect();
            bits.insert(0, m.count_ones());
            bits
        });
        for m in masks {
            let j = m.count_ones() as usize;
            position[m as usize] = subsets[j].len();
            subsets[j].push(m);
        }
        let mut k = Self { alg: alg.clone(), gens, subsets, position, diffs: vec![Vec::new()] };
        for j in 1..=e {
            let d = k.build_differential(j);
            k.diffs.push(d);
        }
        k
    }

    fn build_differential(&self, j: usize) -> Vec<Vec<u32>> {
        let n = self.alg.dim();
        let f = self.alg.field();
        let mut rows = vec![vec![0; self.rank(j)]; self.rank(j - 1)];
        for (si, &s) in self.subsets[j].iter().enumerate() {
            for b in 0..n {
                let col = si * n + b;
                for t in 0..self.e() as u32 {
                    if s >> t & 1 == 0 {
                        continue;
                    }
                    let neg = popcount_below(s, t) % 2 == 1;
                    let target = self.position[(s & !(1 << t)) as usize] * n;
                    let prod = &self.alg.structure()[self.gens[t as usize]][b];
                    for &(c, x) in prod {
                        let x = if neg { f.neg(x) } else { x };
                        let r = &mut rows[target + c as usize][col];
                        *r = f.add(*r, x);
                    }
                }
            }
        }
        rows
    }

    pub fn algebra(&self) -> &FiniteLocalAlgebra {
        &self.alg
    }

    pub fn field(&self) -> PrimeField {
        self.alg.field()
    }

    pub fn e(&self) -> usize {
        self.gens.len()
    }

    /// Basis indices of the generators `x_1..x_e`.
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    /// `dim K_j`.
    pub fn rank(&self, j: usize) -> usize {
        self.subsets.get(j).map_or(0, |s| s.len() * self.alg.dim())
    }

    /// Matrix of `∂_j : K_j -> K_{j-1}`, rows indexing `K_{j-1}`.
    pub fn differential(&self, j: usize) -> &[Vec<u32>] {
        &self.diffs[j]
    }

    pub fn apply(&self, j: usize, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        if j == 0 {
            return Vec::new();
        }
        self.diffs[j]
            .iter()
            .map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| if b == 0 { acc } else { f.add(acc, f.mul(a, b)) }))
            .collect()
    }

    /// Checks `∂_{j-1} ∂_j = 0` for every `j`.
    pub fn check_square_zero(&self) -> Result<()> {
        for j in 2..=self.e() {
            for c in 0..self.rank(j) {
                let col: Vec<u32> = self.diffs[j].iter().map(|r| r[c]).collect();
                if !linalg::is_zero(&self.apply(j - 1, &col)) {
                    return Err(Error::Consistency(format!("d{} d{} != 0", j - 1, j)));
                }
            }
        }
        Ok(())
    }

    /// The element `r e_S` of `K_{|S|}` for a subset of generator positions.
    pub fn basis_element(&self, subset: &[usize], r: &[u32]) -> Vec<u32> {
        let mask = subset.iter().fold(0u32, |m, &t| m | 1 << t);
        let j = mask.count_ones() as usize;
        let n = self.alg.dim();
        let mut v = vec![0; self.rank(j)];
        let off = self.position[mask as usize] * n;
        v[off..off + n].copy_from_slice(r);
        v
    }

    /// Product in the exterior algebra `K_i × K_j -> K_{i+j}`.
    pub fn wedge(&self, i: usize, a: &[u32], j: usize, b: &[u32]) -> Vec<u32> {
        let f = self.field();
        let n = self.alg.dim();
        let mut out = vec![0; self.rank(i + j)];
        if i + j > self.e() {
            return out;
        }
        let mult = self.alg.structure();
        for (si, &s) in self.subsets[i].iter().enumerate() {
            let ablock = &a[si * n..(si + 1) * n];
            if linalg::is_zero(ablock) {
                continue;
            }
            for (ti, &t) in self.subsets[j].iter().enumerate() {
                if s & t != 0 {
                    continue;
                }
                let bblock = &b[ti * n..(ti + 1) * n];
                if linalg::is_zero(bblock) {
                    continue;
                }
                let neg = wedge_sign(s, t);
                let off = self.position[(s | t) as usize] * n;
                for (p, &ca) in ablock.iter().enumerate() {
                    if ca == 0 {
                        continue;
                    }
                    for (q, &cb) in bblock.iter().enumerate() {
                        if cb == 0 {
                            continue;
                        }
                        let c = f.mul(ca, cb);
                        let c = if neg { f.neg(c) } else { c };
                        for &(k, x) in &mult[p][q] {
                            let slot = &mut out[off + k as usize];
                            *slot = f.add(*slot, f.mul(c, x));
                        }
                    }
                }
            }
        }
        out
    }

    /// Renders an element of `K_j` as `r*e[x,y] + ...`.
    pub fn render(&self, j: usize, v: &[u32]) -> String {
        let n = self.alg.dim();
        let labels = self.alg.labels();
        let mut parts = Vec::new();
        for (si, &s) in self.subsets[j].iter().enumerate() {
            let block = &v[si * n..(si + 1) * n];
            if linalg::is_zero(block) {
                continue;
            }
            let names: Vec<&str> =
                (0..self.e()).filter(|&t| s >> t & 1 == 1).map(|t| labels[self.gens[t]].as_str()).collect();
            let coeff = self.alg.render(block);
            let coeff = if coeff.contains(' ') { format!("({coeff})") } else { coeff };
            parts.push(format!("{coeff}*e[{}]", names.join(",")));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `H(K^R)` with representatives and all products `H_i × H_j -> H_{i+j}` for `i, j ≥ 1`.
#[derive(Debug, Clone)]
pub struct KoszulHomology {
    dims: Vec<usize>,
    reps: Vec<Vec<Vec<u32>>>,
    boundaries: Vec<Subspace>,
    proj: Vec<Echelon>,
    products: BTreeMap<(usize, usize), Vec<Vec<Vec<u32>>>>,
}

impl KoszulHomology {
    pub fn new(k: &KoszulComplex) -> Self {
        let f = k.field();
        let e = k.e();
        let mut boundaries = Vec::with_capacity(e + 1);
        for j in 0..=e {
            let b = if j < e {
                let d = k.differential(j + 1);
                let cols = (0..k.rank(j + 1)).map(|c| d.iter().map(|r| r[c]).collect::<Vec<u32>>());
                Subspace::span(f, k.rank(j), cols)
            } else {
                Subspace::zero(f, k.rank(j))
            };
            boundaries.push(b);
        }
        let mut reps = Vec::with_capacity(e + 1);
        for (j, bnd) in boundaries.iter().enumerate() {
            let cycles: Vec<Vec<u32>> = if j == 0 {
                (0..k.rank(0)).map(|i| k.algebra().unit(i)).collect()
            } else {
                linalg::kernel(f, k.differential(j).to_vec(), k.rank(j))
            };
            let mut ech = Echelon::new(f, k.rank(j));
            for b in bnd.basis() {
                ech.insert(b.clone());
            }
            reps.push(cycles.into_iter().filter(|z| ech.insert(z.clone())).collect());
        }
        Self::assemble(k, reps, boundaries)
    }

    fn assemble(k: &KoszulComplex, reps: Vec<Vec<Vec<u32>>>, boundaries: Vec<Subspace>) -> Self {
        let f = k.field();
        let dims: Vec<usize> = reps.iter().map(Vec::len).collect();
        let proj: Vec<Echelon> = reps
            .iter()
            .zip(&boundaries)
            .enumerate()
            .map(|(j, (rs, bnd))| {
                let h = rs.len();
                let mut ech = Echelon::with_tags(f, k.rank(j), h);
                for b in bnd.basis() {
                    ech.insert_tagged(b.clone(), vec![0; h]);
                }
                for (t, z) in rs.iter().enumerate() {
                    let mut tag = vec![0; h];
                    tag[t] = 1;
                    ech.insert_tagged(z.clone(), tag);
                }
                ech
            })
            .collect();
        let mut hom = Self { dims, reps, boundaries, proj, products: BTreeMap::new() };
        let e = k.e();
        for i in 1..=e {
            for j in 1..=e - i {
                let table = hom.reps[i]
                    .iter()
                    .map(|a| hom.reps[j].iter().map(|b| hom.class_of(i + j, &k.wedge(i, a, j, b))).collect())
                    .collect();
                hom.products.insert((i, j), table);
            }
        }
        hom
    }

    /// The same homology with each representative shifted by a random boundary.
    pub fn perturbed(&self, k: &KoszulComplex, seed: u64) -> Self {
        let f = k.field();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let reps = self
            .reps
            .iter()
            .zip(&self.boundaries)
            .map(|(rs, bnd)| {
                rs.iter()
                    .map(|z| {
                        let mut z = z.clone();
                        for b in bnd.basis() {
                            let c = rng.gen_range(0..f.modulus());
                            linalg::axpy(f, &mut z, c, b);
                        }
                        z
                    })
                    .collect()
            })
            .collect();
        Self::assemble(k, reps, self.boundaries.clone())
    }

    /// `h_0, ..., h_e`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn representatives(&self, j: usize) -> &[Vec<u32>] {
        &self.reps[j]
    }

    pub fn boundaries(&self, j: usize) -> &Subspace {
        &self.boundaries[j]
    }

    /// Coordinates of the class of a cycle `z ∈ K_j`.
    ///
    /// Panics if `z` is not a cycle.
    pub fn class_of(&self, j: usize, z: &[u32]) -> Vec<u32> {
        self.proj[j].coordinates(z).expect("vector is not a cycle")
    }

    /// `table[a][b]` = coordinates of `[z_a][z_b]` in `H_{i+j}`.
    pub fn product_table(&self, i: usize, j: usize) -> Option<&Vec<Vec<Vec<u32>>>> {
        self.products.get(&(i, j))
    }

    /// Dimension of `A_i · A_j` inside `H_{i+j}`.
    pub fn product_rank(&self, f: PrimeField, i: usize, j: usize) -> usize {
        match self.products.get(&(i, j)) {
            Some(t) => linalg::rank(f, &t.iter().flatten().cloned().collect::<Vec<_>>(), self.dims[i + j]),
            None => 0,
        }
    }

    /// First nonzero product of positive-degree classes in the fixed order.
    pub fn nonzero_product(&self) -> Option<(usize, usize, usize, usize)> {
        self.products.iter().find_map(|(&(i, j), t)| {
            t.iter().enumerate().find_map(|(a, row)| {
                row.iter().position(|c| !linalg::is_zero(c)).map(|b| (i, j, a, b))
            })
        })
    }

    pub fn products_trivial(&self) -> bool {
        self.nonzero_product().is_none()
    }

    /// Checks `[a][b] = (-1)^(ij) [b][a]`.
    pub fn check_graded_commutative(&self, f: PrimeField) -> Result<()> {
        for (&(i, j), t) in &self.products {
            let other = &self.products[&(j, i)];
            for (a, row) in t.iter().enumerate() {
                for (b, c) in row.iter().enumerate() {
                    let mut d = other[b][a].clone();
                    if i * j % 2 == 1 {
                        d.iter_mut().for_each(|x| *x = f.neg(*x));
                    }
                    if *c != d {
                        return Err(Error::Consistency(format!("H{i} x H{j} not graded-commutative")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A pair of homology classes with nonzero product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductWitness {
    pub degrees: (usize, usize),
    pub left: String,
    pub right: String,
    pub product: String,
}

impl ProductWitness {
    pub fn new(k: &KoszulComplex, h: &KoszulHomology, (i, j, a, b): (usize, usize, usize, usize)) -> Self {
        let (za, zb) = (&h.reps[i][a], &h.reps[j][b]);
        let prod = k.wedge(i, za, j, zb);
        Self { degrees: (i, j), left: k.render(i, za), right: k.render(j, zb), product: k.render(i + j, &prod) }
    }
}

/// Koszul complex together with its homology.
#[derive(Debug, Clone)]
pub struct KoszulData {
    pub complex: KoszulComplex,
    pub homology: KoszulHomology,
}

impl KoszulData {
    pub fn new(alg: &FiniteLocalAlgebra) -> Self {
        let complex = KoszulComplex::new(alg);
        let homology = KoszulHomology::new(&complex);
        Self { complex, homology }
    }

    pub fn dims(&self) -> &[usize] {
        self.homology.dims()
    }

    pub fn e(&self) -> usize {
        self.complex.e()
    }

    pub fn witness(&self) -> Option<ProductWitness> {
        self.homology.nonzero_product().map(|w| ProductWitness::new(&self.complex, &self.homology, w))
    }

    /// `A_1·A_1 ≠ 0 = A_1·A_2`, with a witnessing pair from `H_1`.
    pub fn class_t_witness(&self) -> Option<ProductWitness> {
        let h = &self.homology;
        let f = self.complex.field();
        if self.e() < 2 || h.product_rank(f, 1, 2) != 0 {
            return None;
        }
        let t = h.product_table(1, 1)?;
        t.iter().enumerate().find_map(|(a, row)| {
            row.iter()
                .position(|c| !linalg::is_zero(c))
                .map(|b| ProductWitness::new(&self.complex, h, (1, 1, a, b)))
        })
    }

    /// Whether `Λ^2 H_1 -> H_2` and `Λ^3 H_1 -> H_3` are both bijective.
    pub fn exterior_on_h1(&self) -> bool {
        let h = &self.homology;
        let f = self.complex.field();
        let d = h.dims();
        let h1 = d.get(1).copied().unwrap_or(0);
        let at = |j: usize| d.get(j).copied().unwrap_or(0);
        let c2 = h1 * h1.saturating_sub(1) / 2;
        let c3 = c2 * h1.saturating_sub(2) / 3;
        if at(2) != c2 || at(3) != c3 {
            return false;
        }
        let Some(t11) = h.product_table(1, 1) else { return c2 == 0 && c3 == 0 };
        let pairs: Vec<Vec<u32>> = (0..h1).flat_map(|a| (a + 1..h1).map(move |b| (a, b))).map(|(a, b)| t11[a][b].clone()).collect();
        if linalg::rank(f, &pairs, at(2)) != c2 {
            return false;
        }
        if c3 == 0 {
            return true;
        }
        let Some(t12) = h.product_table(1, 2) else { return false };
        let mut triples = Vec::new();
        for a in 0..h1 {
            for b in a + 1..h1 {
                for c in b + 1..h1 {
                    let mut v = vec![0; at(3)];
                    for (k, &x) in t11[b][c].iter().enumerate() {
                        linalg::axpy(f, &mut v, x, &t12[a][k]);
                    }
                    triples.push(v);
                }
            }
        }
        linalg::rank(f, &triples, at(3)) == c3
    }

    /// `μ(I) = h_1 = e`, cross-checked against the exterior-algebra test when `e = 3`.
    pub fn is_complete_intersection(&self) -> Result<bool> {
        let ci = self.dims().get(1).copied().unwrap_or(0) == self.e();
        if self.e() == 3 && ci != self.exterior_on_h1() {
            return Err(Error::Consistency(format!(
                "complete-intersection tests disagree: mu(I) = e is {ci}, exterior algebra test is {}",
                !ci
            )));
        }
        Ok(ci)
    }

    pub fn classify(&self, alg: &FiniteLocalAlgebra) -> Result<ClassVerdict> {
        if self.is_complete_intersection()? {
            return Ok(ClassVerdict::CompleteIntersection);
        }
        if self.homology.products_trivial() {
            return Ok(if self.e() <= 3 { ClassVerdict::GolodCertified } else { ClassVerdict::Other });
        }
        if let Some(witness) = self.class_t_witness() {
            let qualifier = (self.e() != 3 || !alg.is_gorenstein()).then(|| "codepth-3 signature".to_string());
            return Ok(ClassVerdict::ClassT { witness, qualifier });
        }
        Ok(ClassVerdict::Other)
    }
}

/// Classification read off from Koszul homology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum ClassVerdict {
    CompleteIntersection,
    GolodCertified,
    ClassT { witness: ProductWitness, qualifier: Option<String> },
    Other,
}

/// `μ(I)` of a minimal presentation, as `dim H_1(K^R)`.
pub fn mu_presentation(alg: &FiniteLocalAlgebra) -> usize {
    KoszulData::new(alg).dims().get(1).copied().unwrap_or(0)
}

/// Koszul homology dimensions of `R/m^s` for a Gorenstein `R` with `e = 4`,
/// computed directly and from `(1, h_1+1, h_2+4, h_3+6, 4)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientDimsReport {
    pub computed: Vec<usize>,
    pub formula: Vec<usize>,
    pub agree: bool,
}

pub fn quotient_homology_dims_check(alg: &FiniteLocalAlgebra) -> Result<QuotientDimsReport> {
    if alg.embedding_dim() != 4 || !alg.is_gorenstein() {
        return Err(Error::InvalidArgument("needs a Gorenstein ring of embedding dimension 4".into()));
    }
    let h = KoszulData::new(alg).dims().to_vec();
    let q = alg.quotient_power(alg.socle_degree())?;
    let computed = KoszulData::new(&q).dims().to_vec();
    let formula = vec![1, h[1] + 1, h[2] + 4, h[3] + 6, 4];
    let agree = computed == formula;
    Ok(QuotientDimsReport { computed, formula, agree })
}
