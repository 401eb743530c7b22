//! Minimal free resolutions over a finite local algebra.
//!
//! A free module `F = ⊕ R ε_j` is stored through the degrees of its
//! generators; an element is a sparse vector with coordinate `j * n + b` for
//! the basis element `e_b` in component `j`. When the algebra carries a
//! grading, kernels are computed one internal degree at a time.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::FiniteLocalAlgebra;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::SparseVec;
use crate::series::IntSeries;

/// Largest cutoff accepted without [`ResolutionOptions::allow_deep`].
pub const MAX_DEPTH: usize = 8;

/// Default bound on the nonzero entries of one block matrix.
pub const DEFAULT_MAX_ENTRIES: usize = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResolutionOptions {
    pub max_entries: usize,
    pub allow_deep: bool,
}

impl Default for ResolutionOptions {
    fn default() -> Self {
        Self { max_entries: DEFAULT_MAX_ENTRIES, allow_deep: false }
    }
}

/// Total Betti numbers `b_0..b_D` of a module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub module: String,
    pub cutoff: usize,
    pub betti: Vec<usize>,
}

/// An `a × b` matrix over the algebra, `entries[r][c]` a dense element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulePresentation {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Vec<u32>>>,
}

impl ModulePresentation {
    fn column(&self, n: usize, c: usize) -> SparseVec {
        let mut v = Vec::new();
        for r in 0..self.rows {
            for (b, &x) in self.entries[r][c].iter().enumerate() {
                if x != 0 {
                    v.push(((r * n + b) as u32, x));
                }
            }
        }
        v
    }

    fn from_columns(n: usize, rows: usize, cols: &[SparseVec]) -> Self {
        let mut entries = vec![vec![vec![0; n]; cols.len()]; rows];
        for (c, v) in cols.iter().enumerate() {
            for &(idx, x) in v {
                entries[idx as usize / n][c][idx as usize % n] = x;
            }
        }
        Self { rows, cols: cols.len(), entries }
    }
}

/// `a - c * b` on sorted sparse vectors.
fn sub_scaled(f: PrimeField, a: &[(u32, u32)], c: u32, b: &[(u32, u32)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ka = a.get(i).map_or(u32::MAX, |x| x.0);
        let kb = b.get(j).map_or(u32::MAX, |x| x.0);
        if ka < kb {
            out.push(a[i]);
            i += 1;
        } else if kb < ka {
            out.push((kb, f.neg(f.mul(c, b[j].1))));
            j += 1;
        } else {
            let v = f.sub_mul(a[i].1, c, b[j].1);
            if v != 0 {
                out.push((ka, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn normalize(f: PrimeField, v: &mut [(u32, u32)], inv: u32) {
    for e in v.iter_mut() {
        e.1 = f.mul(e.1, inv);
    }
}

/// Semi-reduced sparse echelon keyed by leading index.
struct SparseEchelon {
    field: PrimeField,
    pivots: HashMap<u32, usize>,
    rows: Vec<SparseVec>,
    combos: Vec<SparseVec>,
}

impl SparseEchelon {
    fn new(field: PrimeField) -> Self {
        Self { field, pivots: HashMap::new(), rows: Vec::new(), combos: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` (with its combination) and inserts it; returns the
    /// combination when `v` reduces to zero.
    fn insert(&mut self, mut v: SparseVec, mut combo: Option<SparseVec>) -> Option<SparseVec> {
        let f = self.field;
        loop {
            let Some(&(lead, c)) = v.first() else { return combo.or(Some(Vec::new())) };
            match self.pivots.get(&lead) {
                Some(&r) => {
                    v = sub_scaled(f, &v, c, &self.rows[r]);
                    if let Some(cb) = combo.as_mut() {
                        *cb = sub_scaled(f, cb, c, &self.combos[r]);
                    }
                }
                None => {
                    let inv = f.inv(c);
                    normalize(f, &mut v, inv);
                    let mut cb = combo.unwrap_or_default();
                    normalize(f, &mut cb, inv);
                    self.pivots.insert(lead, self.rows.len());
                    self.rows.push(v);
                    self.combos.push(cb);
                    return None;
                }
            }
        }
    }
}

/// Resolution engine over one algebra.
struct Engine<'a> {
    alg: &'a FiniteLocalAlgebra,
    deg: Vec<u32>,
    opts: ResolutionOptions,
}

/// Generators of one free module with their images in the previous one.
#[derive(Debug, Clone)]
struct Stage {
    gdeg: Vec<u32>,
    images: Vec<SparseVec>,
}

impl<'a> Engine<'a> {
    fn new(alg: &'a FiniteLocalAlgebra, graded: bool, opts: ResolutionOptions) -> Self {
        let deg = match (graded, alg.grading()) {
            (true, Some(g)) => g.to_vec(),
            _ => vec![0; alg.dim()],
        };
        Self { alg, deg, opts }
    }

    fn n(&self) -> usize {
        self.alg.dim()
    }

    /// `e_a * v` for `v` in a free module.
    fn mul(&self, a: usize, v: &[(u32, u32)]) -> SparseVec {
        let f = self.alg.field();
        let n = self.n() as u32;
        let mult = self.alg.structure();
        let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
        for &(idx, c) in v {
            let (j, b) = (idx / n, idx % n);
            for &(k, x) in &mult[a][b as usize] {
                let slot = acc.entry(j * n + k).or_insert(0);
                *slot = f.add(*slot, f.mul(c, x));
            }
        }
        acc.into_iter().filter(|&(_, c)| c != 0).collect()
    }

    /// Coordinates `j * n + b` of degree `t` in a module with generator degrees `gdeg`.
    fn block(&self, gdeg: &[u32], t: u32) -> Vec<u32> {
        let n = self.n();
        let mut out = Vec::new();
        for (j, &g) in gdeg.iter().enumerate() {
            for b in 0..n {
                if g + self.deg[b] == t {
                    out.push((j * n + b) as u32);
                }
            }
        }
        out
    }

    fn degrees(&self, gdeg: &[u32]) -> Vec<u32> {
        let top = *self.deg.iter().max().unwrap_or(&0);
        let mut ts: Vec<u32> = gdeg.iter().flat_map(|&g| g..=g + top).collect();
        ts.sort_unstable();
        ts.dedup();
        ts
    }

    /// Kernel of `cur` in degree `t`, as sparse vectors in `cur`'s module.
    fn kernel_block(&self, cur: &Stage, t: u32) -> Result<Vec<SparseVec>> {
        let n = self.n() as u32;
        let coords = self.block(&cur.gdeg, t);
        let cols: Vec<SparseVec> = coords.iter().map(|&idx| self.mul((idx % n) as usize, &cur.images[(idx / n) as usize])).collect();
        let nnz: usize = cols.iter().map(Vec::len).sum();
        if nnz > self.opts.max_entries {
            return Err(Error::ResourceGuard(format!(
                "degree-{t} block has {nnz} nonzero entries, above the bound {}",
                self.opts.max_entries
            )));
        }
        let mut ech = SparseEchelon::new(self.alg.field());
        let mut ker = Vec::new();
        for (col, idx) in cols.into_iter().zip(coords) {
            if let Some(k) = ech.insert(col, Some(vec![(idx, 1)])) {
                ker.push(k);
            }
        }
        Ok(ker)
    }

    /// Minimal generators of `ker(cur)`.
    fn next(&self, cur: &Stage) -> Result<Stage> {
        let gens = self.alg.m_generators();
        let ts = self.degrees(&cur.gdeg);
        let kernels: Vec<Vec<SparseVec>> =
            ts.par_iter().map(|&t| self.kernel_block(cur, t)).collect::<Result<Vec<_>>>()?;
        let by_t: HashMap<u32, &Vec<SparseVec>> = ts.iter().copied().zip(kernels.iter()).collect();
        let fresh: Vec<Vec<SparseVec>> = ts
            .par_iter()
            .zip(&kernels)
            .map(|(&t, ker)| {
                let mut ech = SparseEchelon::new(self.alg.field());
                'outer: for &u in gens {
                    let du = self.deg[u];
                    let Some(lower) = t.checked_sub(du).and_then(|s| by_t.get(&s)) else { continue };
                    for k in lower.iter() {
                        if ech.rank() == ker.len() {
                            break 'outer;
                        }
                        ech.insert(self.mul(u, k), None);
                    }
                }
                ker.iter().filter(|k| ech.rank() < ker.len() && ech.insert((*k).clone(), None).is_none()).cloned().collect()
            })
            .collect();
        let mut out = Stage { gdeg: Vec::new(), images: Vec::new() };
        for (t, vs) in ts.iter().zip(fresh) {
            for v in vs {
                out.gdeg.push(*t);
                out.images.push(v);
            }
        }
        self.check(cur, &out)?;
        Ok(out)
    }

    /// Minimality and a composition spot-check.
    fn check(&self, prev: &Stage, new: &Stage) -> Result<()> {
        let n = self.n() as u32;
        if new.images.iter().flatten().any(|&(idx, _)| idx % n == 0) {
            return Err(Error::Consistency("syzygy has an entry outside m".into()));
        }
        for v in new.images.iter().take(4) {
            let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
            let f = self.alg.field();
            for &(idx, c) in v {
                for (k, x) in self.mul((idx % n) as usize, &prev.images[(idx / n) as usize]) {
                    let slot = acc.entry(k).or_insert(0);
                    *slot = f.add(*slot, f.mul(c, x));
                }
            }
            if acc.values().any(|&c| c != 0) {
                return Err(Error::Consistency("consecutive differentials do not compose to 0".into()));
            }
        }
        Ok(())
    }
}

fn check_depth(d: usize, opts: &ResolutionOptions) -> Result<()> {
    if d > MAX_DEPTH && !opts.allow_deep {
        return Err(Error::ResourceGuard(format!("cutoff {d} exceeds {MAX_DEPTH}; pass the override to go deeper")));
    }
    Ok(())
}

/// Betti numbers `b_0..b_D` of the residue field.
pub fn betti_of_residue_field(alg: &FiniteLocalAlgebra, d: usize, opts: ResolutionOptions) -> Result<BettiTable> {
    check_depth(d, &opts)?;
    let engine = Engine::new(alg, true, opts);
    let mut betti = vec![1];
    let gens = alg.m_generators();
    let mut stage = Stage {
        gdeg: gens.iter().map(|&u| engine.deg[u]).collect(),
        images: gens.iter().map(|&u| vec![(u as u32, 1)]).collect(),
    };
    for i in 1..=d {
        betti.push(stage.gdeg.len());
        if i == d || stage.gdeg.is_empty() {
            break;
        }
        stage = engine.next(&stage)?;
    }
    betti.resize(d + 1, 0);
    Ok(BettiTable { module: "k".into(), cutoff: d, betti })
}

/// `Σ b_i z^i` up to `z^D` for the residue field.
pub fn poincare_truncation(alg: &FiniteLocalAlgebra, d: usize, opts: ResolutionOptions) -> Result<IntSeries> {
    Ok(IntSeries::from_usizes(&betti_of_residue_field(alg, d, opts)?.betti))
}

/// Minimal generators of the kernel of `m : R^cols -> R^rows`, entries in `m`.
pub fn syzygy(alg: &FiniteLocalAlgebra, m: &ModulePresentation, opts: ResolutionOptions) -> Result<ModulePresentation> {
    let n = alg.dim();
    if m.entries.iter().flatten().any(|e| e[0] != 0) {
        return Err(Error::InvalidArgument("presentation matrix has an entry outside m".into()));
    }
    let engine = Engine::new(alg, false, opts);
    let stage = Stage { gdeg: vec![0; m.cols], images: (0..m.cols).map(|c| m.column(n, c)).collect() };
    let next = engine.next(&stage)?;
    Ok(ModulePresentation::from_columns(n, m.cols, &next.images))
}
