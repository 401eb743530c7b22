use std::fmt::Write;
use std::path::Path;

use golod_core::algebra::ideals_equal_in_truncation;
use golod_core::constructions::{
    builtin, ezd_search, parse_skew_file, pfaffian_ideal, trivial_extension, EzdMode, BUILTIN_NAMES, DEFAULT_CHAR, FULL_AUTO_LIMIT,
};
use golod_core::series::{
    codepth3_gorenstein_rational, expand_rational, ezd_series, ggo_denominator, ggo_factored, ggo_from_d, golod_series,
    gulliksen_ci_series, koszul_numerical_test, la_quotient_series, rossi_sega_criterion_series, tor_polynomial,
    trivext_closed_forms,
};
use golod_core::verdict::{golod_bound, golod_verdict_with};
use golod_core::{
    betti_of_residue_field, compile, Error, FiniteLocalAlgebra, IntPoly, IntSeries, KoszulData, ResolutionOptions, Result,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{AnalyzeArgs, EzdChoice, Global, SeriesArgs, SeriesName, DEFAULT_RANDOM_SAMPLES};
use crate::report::{render_analysis, AnalysisReport, EzdSection, Flags, InputEcho, QuotientSummary, SeriesComparison};
use crate::{emit, load_ring};

fn resolution_options(g: &Global) -> ResolutionOptions {
    ResolutionOptions { allow_deep: g.allow_deep, ..ResolutionOptions::default() }
}

pub fn ezd_section(alg: &FiniteLocalAlgebra, choice: EzdChoice, budget: u64, seed: u64) -> Result<Option<EzdSection>> {
    let small = alg.field().order().checked_pow((alg.dim() - 1) as u32).is_some_and(|c| c <= FULL_AUTO_LIMIT);
    let mode = match choice {
        EzdChoice::None => return Ok(None),
        EzdChoice::Auto if small => EzdMode::FullExhaustive,
        EzdChoice::Auto | EzdChoice::Linear => EzdMode::LinearExhaustive,
        EzdChoice::Full => EzdMode::FullExhaustive,
        EzdChoice::Random => EzdMode::Random { seed },
    };
    let search = ezd_search(alg, mode, budget)?;
    let random = if choice == EzdChoice::Auto && !search.found() && mode == EzdMode::LinearExhaustive {
        Some(ezd_search(alg, EzdMode::Random { seed }, DEFAULT_RANDOM_SAMPLES)?)
    } else {
        None
    };
    Ok(Some(EzdSection { search, random }))
}

fn hilbert_poly(alg: &FiniteLocalAlgebra) -> IntPoly {
    IntPoly::from_i64s(&alg.hilbert().iter().map(|&h| h as i64).collect::<Vec<_>>())
}

pub fn analyze_algebra(
    alg: &FiniteLocalAlgebra,
    input: InputEcho,
    g: &Global,
    ezd: EzdChoice,
    budget: u64,
    betti_cutoff: Option<usize>,
) -> Result<AnalysisReport> {
    let opts = resolution_options(g);
    let kd = KoszulData::new(alg);
    let dims = kd.dims().to_vec();
    let e = kd.e() as u32;
    let ci = kd.is_complete_intersection()?;
    let class = kd.classify(alg)?;
    let golod = golod_verdict_with(alg, &kd, g.depth, opts)?;
    let compressed = alg.is_compressed();
    let gorenstein = alg.is_gorenstein();
    let ezd = ezd_section(alg, ezd, budget, g.seed)?;
    let betti = betti_cutoff.map(|d| betti_of_residue_field(alg, d, opts)).transpose()?;
    let p_r = betti.as_ref().map(|b| IntSeries::from_usizes(&b.betti));

    let s = alg.socle_degree();
    let socle_quotient = if s >= 2 {
        let q = alg.quotient_power(s)?;
        let kq = KoszulData::new(&q);
        Some(QuotientSummary {
            power: s,
            dim: q.dim(),
            hilbert: q.hilbert(),
            koszul_homology: kq.dims().to_vec(),
            class: kq.classify(&q)?,
            golod: golod_verdict_with(&q, &kq, g.depth, opts)?,
            betti: betti_cutoff.map(|d| betti_of_residue_field(&q, d, opts)).transpose()?,
        })
    } else {
        None
    };

    let mut series = Vec::new();
    if let Some(p) = &p_r {
        let d = p.cutoff();
        series.push(SeriesComparison::new("golod", "R", golod_bound(&kd, d), p.clone()));
        if ci {
            let den = IntPoly::from_i64s(&[1, -1]).pow(e);
            series.push(SeriesComparison::new("ci", "R", expand_rational(&IntPoly::one(), &den, d)?, p.clone()));
        }
        if gorenstein && s == 3 {
            let rs = rossi_sega_criterion_series(e, &tor_polynomial(&dims), d)?;
            series.push(SeriesComparison::new("rs", "R", rs, p.clone()));
        }
        let quotient_betti = socle_quotient.as_ref().and_then(|q| q.betti.as_ref()).map(|b| IntSeries::from_usizes(&b.betti));
        let ring_q = format!("R/m^{s}");
        if gorenstein && e == 3 && !ci && dims[1] >= 4 {
            let (full, quot) = codepth3_gorenstein_rational(dims[1] as u64)?;
            series.push(SeriesComparison::new("codepth3", "R", full.expand(d), p.clone()));
            if let Some(qb) = &quotient_betti {
                series.push(SeriesComparison::new("codepth3", &ring_q, quot.expand(d), qb.clone()));
            }
        }
        if let Some(qb) = &quotient_betti {
            if gorenstein {
                series.push(SeriesComparison::new("la", &ring_q, la_quotient_series(p)?, qb.clone()));
            }
            if ci {
                series.push(SeriesComparison::new("thg", &ring_q, gulliksen_ci_series(e, d), qb.clone()));
            }
        }
    }

    Ok(AnalysisReport {
        input,
        dim: alg.dim(),
        hilbert: alg.hilbert(),
        socle_degree: s,
        socle_type: alg.socle_type(),
        embedding_dim: alg.embedding_dim(),
        flags: Flags {
            gorenstein,
            compressed: compressed.value,
            compressed_warning: compressed.warning,
            complete_intersection: ci,
            koszul_consistent_up_to_d: p_r.as_ref().map(|p| koszul_numerical_test(p, &hilbert_poly(alg))),
        },
        koszul_homology: dims,
        class,
        golod,
        ezd,
        betti,
        socle_quotient,
        series,
    })
}

fn analyze_input(g: &Global, a: &AnalyzeArgs, input: &str, trivext: bool) -> Result<AnalysisReport> {
    let pr = load_ring(input, g.char)?;
    let presented = match a.quotient {
        Some(i) => pr.quotient_power(i)?,
        None => pr.clone(),
    };
    let mut alg = compile(&presented)?;
    if trivext {
        alg = trivial_extension(&alg)?;
    }
    let echo = InputEcho {
        source: input.to_string(),
        characteristic: pr.field().order(),
        vars: pr.vars().to_vec(),
        ideal: pr.gens().iter().map(ToString::to_string).collect(),
        cap: pr.cap(),
        quotient: a.quotient,
        trivial_extension: trivext,
    };
    let betti = a.betti.map(|d| d.unwrap_or(g.depth));
    analyze_algebra(&alg, echo, g, a.ezd, a.budget, betti)
}

pub fn analyze(g: &Global, a: &AnalyzeArgs, trivext: bool) -> Result<String> {
    let reports = a.inputs.par_iter().map(|i| analyze_input(g, a, i, trivext)).collect::<Result<Vec<_>>>()?;
    let command = if trivext { "trivext" } else { "analyze" };
    Ok(emit(g.json, command, &reports, |rs| rs.iter().map(render_analysis).collect::<Vec<_>>().join("\n")))
}

#[derive(Debug, Serialize)]
struct QuotientOut {
    ring_file: String,
    dim: usize,
    hilbert: Vec<usize>,
}

pub fn quotient(g: &Global, input: &str, power: u32) -> Result<String> {
    let q = load_ring(input, g.char)?.quotient_power(power)?;
    let alg = compile(&q)?;
    let out = QuotientOut { ring_file: q.to_ring_file(), dim: alg.dim(), hilbert: alg.hilbert() };
    Ok(emit(g.json, "quotient", &out, |o| {
        let h: Vec<String> = o.hilbert.iter().map(ToString::to_string).collect();
        format!("{}# dimension {}, hilbert {}\n", o.ring_file, o.dim, h.join(", "))
    }))
}

#[derive(Debug, Serialize)]
struct BettiOut {
    source: String,
    quotient: Option<u32>,
    betti: Vec<usize>,
}

pub fn betti(g: &Global, inputs: &[String], quotient: Option<u32>) -> Result<String> {
    let opts = resolution_options(g);
    let out = inputs
        .par_iter()
        .map(|input| {
            let mut pr = load_ring(input, g.char)?;
            if let Some(i) = quotient {
                pr = pr.quotient_power(i)?;
            }
            let t = betti_of_residue_field(&compile(&pr)?, g.depth, opts)?;
            Ok(BettiOut { source: input.clone(), quotient, betti: t.betti })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(emit(g.json, "betti", &out, |rows| {
        let list = |b: &[usize]| b.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        match rows.as_slice() {
            [one] => format!("{}\n", list(&one.betti)),
            _ => rows.iter().map(|r| format!("{}: {}\n", r.source, list(&r.betti))).collect(),
        }
    }))
}

#[derive(Debug, Serialize)]
struct SeriesOut {
    name: &'static str,
    cutoff: usize,
    coefficients: IntSeries,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    extra: Vec<(String, String)>,
}

fn need<T: Copy>(v: Option<T>, flag: &str, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidArgument(format!("series {name} needs --{flag}")))
}

fn nonneg(xs: &[i64], flag: &str) -> Result<Vec<u64>> {
    xs.iter()
        .map(|&x| u64::try_from(x).map_err(|_| Error::InvalidArgument(format!("--{flag} entries must be nonnegative"))))
        .collect()
}

pub fn series(g: &Global, s: &SeriesArgs) -> Result<String> {
    let d = g.depth;
    let mut extra = Vec::new();
    let (name, coefficients) = match s.name {
        SeriesName::Golod => {
            let e = need(s.e, "e", "golod")?;
            let h = nonneg(&s.h, "h")?;
            if h.len() != e as usize {
                return Err(Error::InvalidArgument(format!("--h needs {e} entries h_1..h_e, got {}", h.len())));
            }
            ("golod", golod_series(e, &h, d))
        }
        SeriesName::Thg => ("thg", gulliksen_ci_series(need(s.e, "e", "thg")?, d)),
        SeriesName::La => {
            if s.p.is_empty() {
                return Err(Error::InvalidArgument("series la needs --p".into()));
            }
            let p = IntSeries::from_i64s(&s.p);
            ("la", la_quotient_series(&p)?.truncate(d.min(p.cutoff())))
        }
        SeriesName::Ezd => ("ezd", ezd_series(need(s.e, "e", "ezd")?, d)),
        SeriesName::Rs => {
            if s.p.is_empty() {
                return Err(Error::InvalidArgument("series rs needs --p (coefficients of P^Q_R)".into()));
            }
            ("rs", rossi_sega_criterion_series(need(s.e, "e", "rs")?, &IntPoly::from_i64s(&s.p), d)?)
        }
        SeriesName::Ggo => {
            let h = match s.h.as_slice() {
                [h] => *h,
                _ => return Err(Error::InvalidArgument("series ggo needs a single --h".into())),
            };
            let den = ggo_denominator(h);
            extra.push(("denominator".into(), den.to_string()));
            extra.push(("factored_agrees".into(), (ggo_factored(h) == den).to_string()));
            extra.push(("from_d_agrees".into(), (ggo_from_d(h) == den).to_string()));
            let coeffs = IntSeries::new((0..=d).map(|i| den.coeff(i)).collect());
            ("ggo", coeffs)
        }
        SeriesName::Codepth3 => {
            let (full, quot) = codepth3_gorenstein_rational(need(s.mu, "mu", "codepth3")?)?;
            extra.push(("quotient".into(), quot.expand(d).to_list()));
            ("codepth3", full.expand(d))
        }
        SeriesName::Trivext => {
            let f = trivext_closed_forms(need(s.e, "e", "trivext")?);
            extra.push(("p_r".into(), f.p_r.expand(d).to_list()));
            extra.push(("p_e".into(), f.p_e.expand(d).to_list()));
            extra.push(("p_t_denominator_degree".into(), f.p_t.den_degree().to_string()));
            ("trivext", f.p_t.expand(d))
        }
    };
    let out = SeriesOut { name, cutoff: coefficients.cutoff(), coefficients, extra };
    Ok(emit(g.json, "series", &out, |o| {
        let mut t = format!("{}\n", o.coefficients.to_list());
        for (k, v) in &o.extra {
            writeln!(t, "{k}: {v}").unwrap();
        }
        t
    }))
}

#[derive(Debug, Serialize)]
struct Comparison {
    ring: String,
    equal: bool,
    /// Equality was checked modulo this power of the maximal ideal.
    modulo_power: u32,
    /// The ring is artinian and the power lies in `n·I`, so equality is exact.
    exact: bool,
}

#[derive(Debug, Serialize)]
struct PfaffianOut {
    size: usize,
    generators: Vec<String>,
    compare: Option<Comparison>,
}

pub fn pfaffian(g: &Global, matrix: &Path, compare: Option<&str>) -> Result<String> {
    let file = matrix.display().to_string();
    let text = std::fs::read_to_string(matrix).map_err(|e| Error::Input { file: file.clone(), line: 0, msg: e.to_string() })?;
    let m = parse_skew_file(&text, &file, g.char)?;
    let gens = pfaffian_ideal(&m)?;
    let compare = match compare {
        None => None,
        Some(src) => {
            let field = gens.first().map(|p| p.field());
            let pr = load_ring(src, g.char.or(field.map(|f| f.order())))?;
            let vars = gens.first().map(|p| p.vars().clone()).unwrap_or_else(|| pr.vars().clone());
            if vars.as_slice() != pr.vars().as_slice() || field != Some(pr.field()) {
                return Err(Error::Mismatch);
            }
            let (modulo_power, exact) = match compile(&pr) {
                Ok(a) => (a.socle_degree() as u32 + 2, true),
                Err(Error::NotArtinian(_)) => (pr.cap().unwrap_or(6), false),
                Err(e) => return Err(e),
            };
            let equal = ideals_equal_in_truncation(pr.field(), pr.vars(), &gens, pr.gens(), modulo_power)?;
            Some(Comparison { ring: src.to_string(), equal, modulo_power, exact })
        }
    };
    let out = PfaffianOut { size: m.size(), generators: gens.iter().map(ToString::to_string).collect(), compare };
    Ok(emit(g.json, "pfaffian", &out, |o| {
        let mut t = String::new();
        for (i, p) in o.generators.iter().enumerate() {
            writeln!(t, "pf{} = {p}", i + 1).unwrap();
        }
        if let Some(c) = &o.compare {
            if c.exact {
                writeln!(t, "ideals equal: {}", c.equal).unwrap();
            } else {
                writeln!(t, "ideals equal modulo n^{}: {} (ring is not artinian)", c.modulo_power, c.equal).unwrap();
            }
        }
        t
    }))
}

pub fn ezd(g: &Global, input: &str, mode: EzdChoice, budget: u64) -> Result<String> {
    let alg = compile(&load_ring(input, g.char)?)?;
    let section = ezd_section(&alg, mode, budget, g.seed)?;
    Ok(emit(g.json, "ezd", &section, |s| match s {
        None => "ezd search skipped\n".into(),
        Some(s) => {
            let mut t = format!("{}\n", crate::report::ezd_text(&s.search));
            if let Some(r) = &s.random {
                writeln!(t, "random: {}", crate::report::ezd_text(r)).unwrap();
            }
            t
        }
    }))
}

#[derive(Debug, Serialize)]
struct BuiltinOut {
    name: String,
    ring_file: String,
}

pub fn builtin_cmd(g: &Global, name: Option<&str>, list: bool) -> Result<String> {
    match name {
        Some(n) if !list => {
            let pr = builtin(n, g.char.unwrap_or(DEFAULT_CHAR))?;
            let out = BuiltinOut { name: n.to_string(), ring_file: pr.to_ring_file() };
            Ok(emit(g.json, "builtin", &out, |o| o.ring_file.clone()))
        }
        _ => Ok(emit(g.json, "builtin", &BUILTIN_NAMES, |ns| ns.iter().map(|n| format!("{n}\n")).collect())),
    }
}
