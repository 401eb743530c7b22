//! Acceptance suite. Prints one PASS/FAIL line per criterion, then fails if any criterion failed.
//!
//! Run with `cargo test -p golod-cli --test acceptance -- --nocapture` to see the lines.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::Parser;
use golod_cli::args::Cli;
use golod_core::algebra::{ideals_equal_in_truncation, presented_ideal_mu};
use golod_core::constructions::{
    builtin, example_family_e2, ezd_search, parse_skew_file, pfaffian, pfaffian_ideal, random_presented_ring, trivial_extension,
    EzdMode, EzdOutcome, RandomShape, SkewMatrix,
};
use golod_core::koszul::quotient_homology_dims_check;
use golod_core::linalg::determinant;
use golod_core::resolution::poincare_truncation;
use golod_core::series::{
    ggo_denominator, ggo_factored, gulliksen_ci_series, gulliksen_trivext_series, la_quotient_series, rossi_sega_criterion_series,
    trivext_closed_forms,
};
use golod_core::verdict::{golod_bound, golod_verdict_with, GolodVerdict};
use golod_core::{
    compile, monomials_of_degree, parse_ring_file, ClassVerdict, FiniteLocalAlgebra, IntPoly, IntSeries, KoszulData, Monomial,
    Poly, PrimeField, ResolutionOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXA43: &str = include_str!("../../../data/exa-4.3.ring");
const EXA43_SKEW: &str = include_str!("../../../data/exa43.skew");

/// Wall-clock bounds, in seconds, per criterion.
const BOUNDS: [u64; 9] = [60, 120, 120, 600, 300, 900, 300, 120, 600];
/// Every comparison below is exact; no numeric tolerance applies.
const SERIES_CUTOFF: usize = 6;

struct Criterion {
    id: usize,
    title: &'static str,
    checks: Vec<(String, bool)>,
    notes: Vec<String>,
    elapsed: Duration,
}

impl Criterion {
    fn new(id: usize, title: &'static str) -> Self {
        Self { id, title, checks: Vec::new(), notes: Vec::new(), elapsed: Duration::ZERO }
    }

    fn check(&mut self, name: impl Into<String>, ok: bool) -> bool {
        self.checks.push((name.into(), ok));
        ok
    }

    /// Records `Err` as a failed check.
    fn attempt<T>(&mut self, name: &str, r: golod_core::Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(format!("{name}: {e}"), false);
                None
            }
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.1) && self.elapsed.as_secs() < BOUNDS[self.id - 1]
    }

    fn line(&self) -> String {
        let failed: Vec<&str> = self.checks.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect();
        let mut s = format!(
            "[{}] C{} {} ({} checks, {:.1}s / {}s)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.checks.len(),
            self.elapsed.as_secs_f64(),
            BOUNDS[self.id - 1]
        );
        if !failed.is_empty() {
            s.push_str(&format!("\n       failed: {}", failed.join("; ")));
        }
        if self.elapsed.as_secs() >= BOUNDS[self.id - 1] {
            s.push_str("\n       failed: runtime bound exceeded");
        }
        for n in &self.notes {
            s.push_str(&format!("\n       note: {n}"));
        }
        s
    }
}

fn opts() -> ResolutionOptions {
    ResolutionOptions::default()
}

fn betti(a: &FiniteLocalAlgebra, d: usize) -> golod_core::Result<IntSeries> {
    poincare_truncation(a, d, opts())
}

fn basis_by_degree(a: &FiniteLocalAlgebra) -> Vec<BTreeSet<String>> {
    let Some(g) = a.grading() else { return Vec::new() };
    let mut out = vec![BTreeSet::new(); a.socle_degree() + 1];
    for (l, &d) in a.labels().iter().zip(g) {
        out[d as usize].insert(l.clone());
    }
    out
}

fn degree_sets(xs: &[&[&str]]) -> Vec<BTreeSet<String>> {
    xs.iter().map(|d| d.iter().map(|s| s.to_string()).collect()).collect()
}

/// Rings touched by the criteria, for the invariant suite.
type Touched = Vec<(String, FiniteLocalAlgebra)>;

fn c1(touched: &mut Touched) -> Criterion {
    let mut c = Criterion::new(1, "five-Pfaffian Gorenstein ring exa-4.3 end to end at p = 101 and p = 2");
    let expected_basis = degree_sets(&[&["1"], &["x", "y", "z"], &["y^2", "y*z", "z^2"], &["z^3"]]);
    let rs = rossi_sega_criterion_series(3, &IntPoly::from_i64s(&[1, 5, 5, 1]), SERIES_CUTOFF).unwrap();
    for p in [101u64, 2] {
        let Some(pr) = c.attempt(&format!("parse p={p}"), parse_ring_file(EXA43, "exa-4.3.ring", Some(p))) else { continue };
        let skew = parse_skew_file(EXA43_SKEW, "exa43.skew", Some(p)).unwrap();
        let pf = pfaffian_ideal(&skew).unwrap();
        let eq = ideals_equal_in_truncation(pr.field(), pr.vars(), &pf, pr.gens(), 6).unwrap();
        c.check(format!("p={p}: Pfaffian ideal equals I"), eq);
        let Some(a) = c.attempt(&format!("p={p}: compile"), compile(&pr)) else {
            c.note(format!("p={p}: I is not m-primary, so the basis, invariants, EZD search and verdicts cannot be evaluated"));
            continue;
        };
        c.check(format!("p={p}: basis"), basis_by_degree(&a) == expected_basis);
        c.check(format!("p={p}: hilbert (1,3,3,1)"), a.hilbert() == [1, 3, 3, 1]);
        c.check(format!("p={p}: gorenstein"), a.is_gorenstein());
        c.check(format!("p={p}: compressed"), a.is_compressed().value);
        c.check(format!("p={p}: mu(I) = 5"), presented_ideal_mu(a.field(), pr.vars(), pr.gens(), 5) == Ok(5));
        let kd = KoszulData::new(&a);
        c.check(format!("p={p}: not CI"), kd.is_complete_intersection() == Ok(false));
        if p == 2 {
            let r = ezd_search(&a, EzdMode::FullExhaustive, 1 << 14);
            c.check("p=2: exhaustive EZD search finds none", matches!(r, Ok(ref r) if r.outcome == EzdOutcome::AbsentExhaustive));
        }
        let q = a.quotient_power(3).unwrap();
        let v = golod_verdict_with(&q, &KoszulData::new(&q), SERIES_CUTOFF, opts());
        c.check(format!("p={p}: golod(R/m^3) = GolodCertified"), v == Ok(GolodVerdict::GolodCertified));
        let bq = betti(&q, SERIES_CUTOFF).unwrap();
        c.check(format!("p={p}: betti(R/m^3) = rossi_sega_criterion_series(3, 1+5z+5z^2+z^3)"), bq == rs);
        let br = betti(&a, SERIES_CUTOFF).unwrap();
        c.note(format!(
            "p={p}: betti(R/m^3) = {}; betti(R) = {}; criterion series = {}; the criterion series matches betti(R)",
            bq.to_list(),
            br.to_list(),
            rs.to_list()
        ));
        if p == 101 {
            c.check("p=101: betti(R) = rossi_sega_criterion_series(3, 1+5z+5z^2+z^3)", br == rs);
            c.note("p=101: exhaustive EZD search over all of m would need 101^7 candidates; linear forms searched instead");
            let r = ezd_search(&a, EzdMode::LinearExhaustive, 1 << 22).unwrap();
            c.check("p=101: no EZD among linear forms", r.outcome == EzdOutcome::AbsentAmongLinearForms);
        }
        touched.push((format!("exa-4.3 p={p}"), a));
        touched.push((format!("exa-4.3/m^3 p={p}"), q));
    }
    c
}

fn c2(touched: &mut Touched) -> Criterion {
    let mut c = Criterion::new(2, "diagonal complete intersection e = 3, s = 3");
    let a = compile(&builtin("ci-e3", 5).unwrap()).unwrap();
    let kd = KoszulData::new(&a);
    c.check("classified CI", kd.classify(&a) == Ok(ClassVerdict::CompleteIntersection));
    let r = ezd_search(&a, EzdMode::LinearExhaustive, 1 << 22).unwrap();
    c.check("linear-exhaustive EZD search at p = 5 finds a witness", r.found());
    if let Some((x, b)) = &r.elements {
        c.check("witness re-verified", a.is_exact_zero_divisor(x) && a.annihilator(b).contains(x));
    }
    let q = a.quotient_power(3).unwrap();
    let kq = KoszulData::new(&q);
    let class_t = matches!(kq.classify(&q), Ok(ClassVerdict::ClassT { .. }));
    c.check("R/m^3 is class T", class_t);
    c.check("A1·A1 != 0", kq.homology.product_rank(q.field(), 1, 1) > 0);
    c.check("A1·A2 = 0", kq.homology.product_rank(q.field(), 1, 2) == 0);
    let b = betti(&q, SERIES_CUTOFF).unwrap();
    c.check("betti(R/m^3) = 1,3,7,16,37,86,200", b.to_i64s() == Some(vec![1, 3, 7, 16, 37, 86, 200]));
    c.check("matches gulliksen_ci_series(3)", b == gulliksen_ci_series(3, SERIES_CUTOFF));
    let cube = IntSeries::from_poly(&IntPoly::one(), SERIES_CUTOFF)
        .mul(&IntSeries::from_poly(&IntPoly::from_i64s(&[1, -1]).pow(3), SERIES_CUTOFF).reciprocal().unwrap());
    c.check("matches la_quotient_series(1/(1-z)^3)", b == la_quotient_series(&cube).unwrap());
    let v = golod_verdict_with(&q, &kq, SERIES_CUTOFF, opts()).unwrap();
    c.check("golod(R/m^3) = NotGolod", v.is_not_golod());
    touched.push(("ci-e3 p=5".into(), a));
    touched.push(("ci-e3/m^3 p=5".into(), q));
    c
}

fn c3(touched: &mut Touched) -> Criterion {
    let mut c = Criterion::new(3, "embedding-dimension-3 family, i = 3 and i = 4");
    for i in [3, 4] {
        let a = compile(&example_family_e2(101, i).unwrap()).unwrap();
        let kd = KoszulData::new(&a);
        let w = kd.witness();
        let xy = w.as_ref().is_some_and(|w| w.left == "x*e[x]" && w.right == "y*e[y]");
        c.check(format!("i={i}: product witness [x e_x]·[y e_y]"), xy);
        let v = golod_verdict_with(&a, &kd, SERIES_CUTOFF, opts()).unwrap();
        c.check(format!("i={i}: NotGolod"), v.is_not_golod());
        let b = betti(&a, SERIES_CUTOFF).unwrap();
        let g = golod_bound(&kd, SERIES_CUTOFF);
        c.check(format!("i={i}: betti <= golod series termwise"), b.dominated_by(&g));
        let strict = b.first_difference(&g);
        c.check(format!("i={i}: strict inequality at some degree <= 6"), strict.is_some());
        let at = strict.map_or("none".to_string(), |d| d.to_string());
        c.note(format!("i={i}: betti {} vs golod {} (first difference at degree {at})", b.to_list(), g.to_list()));
        touched.push((format!("family i={i}"), a));
    }
    c
}

fn c4(touched: &mut Touched) -> Criterion {
    let mut c = Criterion::new(4, "Gorenstein ring exa-5.4 with e = 4 at p = 2 (full) and p = 101 (linear)");
    let expected_basis = degree_sets(&[&["1"], &["w", "x", "y", "z"], &["w*y", "x^2", "x*y", "x*z"], &["x^2*z"]]);
    for (p, mode) in [(2u64, EzdMode::FullExhaustive), (101, EzdMode::LinearExhaustive)] {
        let pr = builtin("exa-5.4", p).unwrap();
        let Some(a) = c.attempt(&format!("p={p}: compile"), compile(&pr)) else { continue };
        c.check(format!("p={p}: basis"), basis_by_degree(&a) == expected_basis);
        c.check(format!("p={p}: hilbert (1,4,4,1)"), a.hilbert() == [1, 4, 4, 1]);
        c.check(format!("p={p}: gorenstein"), a.is_gorenstein());
        c.check(format!("p={p}: mu(I) = 7"), presented_ideal_mu(a.field(), pr.vars(), pr.gens(), 5) == Ok(7));
        let kd = KoszulData::new(&a);
        c.check(format!("p={p}: not CI"), kd.is_complete_intersection() == Ok(false));
        let r = ezd_search(&a, mode, 1 << 22).unwrap();
        let want = if p == 2 { EzdOutcome::AbsentExhaustive } else { EzdOutcome::AbsentAmongLinearForms };
        c.check(format!("p={p}: no EZD ({} candidates)", r.candidates), r.outcome == want);
        let q = a.quotient_power(3).unwrap();
        let v = golod_verdict_with(&q, &KoszulData::new(&q), SERIES_CUTOFF, opts()).unwrap();
        c.check(format!("p={p}: golod(R/m^3) = NotGolod with certificate"), v.is_not_golod());
        touched.push((format!("exa-5.4 p={p}"), a));
        touched.push((format!("exa-5.4/m^3 p={p}"), q));
    }
    c
}

fn c5(touched: &mut Touched) -> Criterion {
    let mut c = Criterion::new(5, "quotient homology of ci-e4 and the four-variable Gorenstein denominator");
    let a = compile(&builtin("ci-e4", 101).unwrap()).unwrap();
    if let Some(r) = c.attempt("quotient homology", quotient_homology_dims_check(&a)) {
        c.check("computed dims (1,5,10,10,4)", r.computed == [1, 5, 10, 10, 4]);
        c.check("formula dims (1,5,10,10,4) at h = 4", r.formula == [1, 5, 10, 10, 4]);
        c.check("computed = formula", r.agree);
    }
    c.check("ggo_denominator(4) = 1 - 5z^2 - 10z^3 - 10z^4 - 4z^5", ggo_denominator(4) == IntPoly::from_i64s(&[1, 0, -5, -10, -10, -4]));
    c.check("ggo_denominator(h) = factored form for 0 <= h <= 20", (0..=20).all(|h| ggo_denominator(h) == ggo_factored(h)));
    touched.push(("ci-e4".into(), a.clone()));
    touched.push(("ci-e4/m^3".into(), a.quotient_power(3).unwrap()));
    c
}

fn c6(touched: &mut Touched) -> Criterion {
    let mut c = Criterion::new(6, "socle-quotient series identity on ci-e2, ci-e3, exa-4.3, exa-5.4");
    for name in ["ci-e2", "ci-e3", "exa-4.3", "exa-5.4"] {
        let a = compile(&builtin(name, 101).unwrap()).unwrap();
        let s = a.socle_degree();
        let q = a.quotient_power(s).unwrap();
        let p = betti(&a, 7).unwrap();
        let expected = la_quotient_series(&p).unwrap().truncate(5);
        let got = betti(&q, 5).unwrap();
        c.check(format!("{name} (s={s}): betti(R/m^s) = la_quotient_series(P^R)"), got == expected);
        touched.push((format!("{name}/m^{s}"), q));
    }
    c
}

fn random_f(rng: &mut impl Rng, field: PrimeField, vars: &Arc<Vec<String>>, top: u32) -> Poly {
    loop {
        let mut terms = Vec::new();
        for d in 2..=top {
            for m in monomials_of_degree(2, d) {
                if rng.gen_bool(0.4) {
                    terms.push((m, rng.gen_range(1..field.modulus())));
                }
            }
        }
        let f = Poly::from_terms(field, vars.clone(), top + 1, terms).unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

fn c7(touched: &mut Touched) -> Criterion {
    let mut c = Criterion::new(7, "codimension-2 suites: Golod socle-power quotients and mu((f) + n^i) > 2");
    let f5 = PrimeField::new(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut quotients, mut failures) = (0, Vec::new());
    for k in 0..25 {
        let shape = RandomShape { nvars: 2, ngens: rng.gen_range(1..=3), cap: rng.gen_range(4..=6), homogeneous: rng.gen_bool(0.3) };
        let a = compile(&random_presented_ring(f5, shape, &mut rng).unwrap()).unwrap();
        if a.embedding_dim() != 2 {
            failures.push(format!("ring {k}: embedding dimension {}", a.embedding_dim()));
            continue;
        }
        for i in 3..=a.socle_degree() {
            let q = a.quotient_power(i).unwrap();
            let v = golod_verdict_with(&q, &KoszulData::new(&q), SERIES_CUTOFF, opts()).unwrap();
            quotients += 1;
            if !v.is_golod_certified() {
                failures.push(format!("ring {k}, i={i}: {v:?}"));
            }
        }
        touched.push((format!("random e=2 #{k}"), a));
    }
    c.check("25 rings: every R/m^i with i >= 3 and m^i != 0 is GolodCertified", failures.is_empty());
    c.note(format!("{quotients} quotients checked"));
    for f in failures.iter().take(5) {
        c.note(f.clone());
    }

    let vars: Arc<Vec<String>> = Arc::new(vec!["x".into(), "y".into()]);
    let mut bad = Vec::new();
    for t in 0..100 {
        let i = rng.gen_range(2..=6u32);
        let f = random_f(&mut rng, f5, &vars, i + 1);
        let mut j = vec![f.clone()];
        j.extend(monomials_of_degree(2, i).into_iter().map(|m| Poly::from_terms(f5, vars.clone(), i + 2, [(m, 1)]).unwrap()));
        let contains = ideals_equal_in_truncation(f5, &vars, std::slice::from_ref(&f), &j, i + 1).unwrap();
        let mu = presented_ideal_mu(f5, &vars, &j, i + 1).unwrap();
        if contains || mu <= 2 {
            bad.push(format!("trial {t}: f = {f}, i = {i}, n^i in (f): {contains}, mu = {mu}"));
        }
    }
    c.check("100 random (f, i): n^i not in (f) and mu((f) + n^i) > 2", bad.is_empty());
    for b in bad.iter().take(5) {
        c.note(b.clone());
    }
    c
}

fn c8(touched: &mut Touched) -> Criterion {
    let mut c = Criterion::new(8, "trivial extension of k[x,y,z]/(x^2,y^2,z^2,xy)");
    let a = compile(&builtin("socle2-e3", 101).unwrap()).unwrap();
    let t = trivial_extension(&a).unwrap();
    c.check("gorenstein", t.is_gorenstein());
    c.check("compressed", t.is_compressed().value);
    c.check("hilbert (1,5,5,1)", t.hilbert() == [1, 5, 5, 1]);
    c.check("not CI", KoszulData::new(&t).is_complete_intersection() == Ok(false));
    let forms = trivext_closed_forms(3);
    c.check("denominator degree 2e + 2 = 8", forms.p_t.den_degree() == 8);
    let d = 10;
    let via = gulliksen_trivext_series(&forms.p_r.expand(d), &forms.p_e.expand(d)).unwrap();
    c.check("P_R / (1 - z P_E) expands to the closed form", via == forms.p_t.expand(d));
    let tq = t.quotient_power(3).unwrap();
    let kq = KoszulData::new(&tq);
    match golod_verdict_with(&tq, &kq, SERIES_CUTOFF, opts()) {
        Ok(v) => c.note(format!("T/t^3 verdict (reported, not asserted): {v:?}")),
        Err(e) => c.note(format!("T/t^3 verdict not computed: {e}")),
    }
    c.note(format!("betti(R) = {}; closed-form P_R = {}", betti(&a, 6).unwrap().to_list(), forms.p_r.expand(6).to_list()));
    touched.push(("socle2-e3".into(), a));
    touched.push(("trivext(socle2-e3)".into(), t));
    touched.push(("trivext(socle2-e3)/m^3".into(), tq));
    c
}

fn scalar_skew(f: PrimeField, rng: &mut impl Rng, n: usize) -> (SkewMatrix, Vec<Vec<u32>>) {
    let vars = Arc::new(Vec::new());
    let mut dense = vec![vec![0u32; n]; n];
    let mut upper = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let x = rng.gen_range(0..f.modulus());
            dense[i][j] = x;
            dense[j][i] = f.neg(x);
            upper.push(Poly::constant(f, vars.clone(), 1, x).unwrap());
        }
    }
    (SkewMatrix::from_upper(n, &upper).unwrap(), dense)
}

fn cli_json(args: &[&str]) -> String {
    let cli = Cli::try_parse_from(std::iter::once("golod").chain(args.iter().copied())).unwrap();
    let out = golod_cli::run(&cli);
    assert_eq!(out.code, 0, "{}", out.stderr);
    out.stdout
}

fn c9(touched: &Touched) -> Criterion {
    let mut c = Criterion::new(9, "invariant suites over every ring above");
    let mut fails: Vec<String> = Vec::new();
    for (name, a) in touched {
        let kd = KoszulData::new(a);
        let dims = kd.dims();
        if kd.complex.check_square_zero().is_err() {
            fails.push(format!("{name}: d^2 != 0"));
        }
        let euler: i64 = dims.iter().enumerate().map(|(j, &h)| if j % 2 == 0 { h as i64 } else { -(h as i64) }).sum();
        if euler != 0 {
            fails.push(format!("{name}: euler characteristic {euler}"));
        }
        if a.is_gorenstein() && dims.iter().ne(dims.iter().rev()) {
            fails.push(format!("{name}: homology not symmetric"));
        }
        match betti(a, 5) {
            Ok(b) => {
                if !b.dominated_by(&golod_bound(&kd, 5)) {
                    fails.push(format!("{name}: Serre bound violated"));
                }
            }
            Err(e) => fails.push(format!("{name}: resolution check failed: {e}")),
        }
    }
    c.check(format!("d^2 = 0, euler = 0, duality, Serre bound, minimal resolution on {} rings", touched.len()), fails.is_empty());
    for f in fails.iter().take(5) {
        c.note(f.clone());
    }

    let f = PrimeField::new(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let pf_ok = (0..100).all(|t| {
        let (m, dense) = scalar_skew(f, &mut rng, 2 * (1 + t % 4));
        let pf = pfaffian(&m).unwrap().coeff(&Monomial::one(0));
        f.mul(pf, pf) == determinant(f, dense)
    });
    c.check("Pf^2 = det on 100 random even skew matrices", pf_ok);

    let args = ["--json", "--seed", "3", "analyze", "builtin:exa-4.3", "builtin:ci-e3", "--ezd", "random", "--betti", "5"];
    c.check("byte-identical JSON across runs", cli_json(&args) == cli_json(&args));
    c
}

#[test]
fn acceptance() {
    let mut touched = Touched::new();
    let mut results = Vec::new();
    let runs: [&dyn Fn(&mut Touched) -> Criterion; 8] = [&c1, &c2, &c3, &c4, &c5, &c6, &c7, &c8];
    for run in runs {
        let start = Instant::now();
        let mut c = run(&mut touched);
        c.elapsed = start.elapsed();
        println!("{}", c.line());
        results.push(c);
    }
    let start = Instant::now();
    let mut c = c9(&touched);
    c.elapsed = start.elapsed();
    println!("{}", c.line());
    results.push(c);

    let failed: Vec<String> = results.iter().filter(|c| !c.passed()).map(|c| format!("C{}", c.id)).collect();
    println!("acceptance: {}/{} criteria pass", results.len() - failed.len(), results.len());
    assert!(failed.is_empty(), "failing criteria: {}", failed.join(", "));
}
