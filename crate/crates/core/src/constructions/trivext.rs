use crate::algebra::FiniteLocalAlgebra;
use crate::error::Result;
use crate::linalg::SparseVec;

/// `A ⋉ Hom_k(A, k)`: basis `e_0..e_{n-1}` of `A` followed by the dual basis
/// `f_0..f_{n-1}`, with `e_b · f_a = Σ_c (e_b e_c)[a] f_c` and `f · f = 0`.
///
/// When `A` is graded with socle degree `s`, `f_a` gets degree `s + 1 - deg e_a`.
pub fn trivial_extension(a: &FiniteLocalAlgebra) -> Result<FiniteLocalAlgebra> {
    let n = a.dim();
    let mult = a.structure();
    let mut table: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); 2 * n]; 2 * n];
    for b in 0..n {
        for c in 0..n {
            table[b][c] = mult[b][c].clone();
        }
    }
    // coefficient of e_a in e_b e_c, arranged by (b, a) -> [(c, x)]
    let mut dual: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); n]; n];
    for b in 0..n {
        for c in 0..n {
            for &(k, x) in &mult[b][c] {
                dual[b][k as usize].push(((n + c) as u32, x));
            }
        }
    }
    for b in 0..n {
        for fa in 0..n {
            let mut v = std::mem::take(&mut dual[b][fa]);
            v.sort_unstable();
            table[b][n + fa] = v.clone();
            table[n + fa][b] = v;
        }
    }
    let mut labels: Vec<String> = a.labels().to_vec();
    labels.extend(a.labels().iter().map(|l| format!("dual({l})")));
    let s = a.socle_degree() as u32;
    let grading = a.grading().map(|g| {
        let mut d = g.to_vec();
        d.extend(g.iter().map(|&x| s + 1 - x));
        d
    });
    FiniteLocalAlgebra::from_structure(a.field(), labels, table, grading)
}
