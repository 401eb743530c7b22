//! Report structures and their text rendering.

use std::fmt::Write;

use golod_core::constructions::{EzdOutcome, EzdReport};
use golod_core::verdict::NotGolodCertificate;
use golod_core::{BettiTable, ClassVerdict, GolodVerdict, IntSeries};
use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1.0";

/// Top-level JSON document.
#[derive(Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub result: T,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputEcho {
    pub source: String,
    pub characteristic: u64,
    pub vars: Vec<String>,
    pub ideal: Vec<String>,
    pub cap: Option<u32>,
    pub quotient: Option<u32>,
    pub trivial_extension: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Flags {
    pub gorenstein: bool,
    pub compressed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compressed_warning: Option<String>,
    pub complete_intersection: bool,
    /// `P(z) H(-z) = 1` through the Betti cutoff; absent without Betti numbers.
    pub koszul_consistent_up_to_d: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EzdSection {
    pub search: EzdReport,
    /// Random samples of all of `m` after an unsuccessful linear search.
    pub random: Option<EzdReport>,
}

impl EzdSection {
    pub fn found(&self) -> bool {
        self.search.found() || self.random.as_ref().is_some_and(EzdReport::found)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesComparison {
    pub name: String,
    pub ring: String,
    pub expected: IntSeries,
    pub computed: IntSeries,
    pub agree: bool,
    /// Last degree through which the two series agree.
    pub agree_up_to: Option<usize>,
}

impl SeriesComparison {
    pub fn new(name: &str, ring: &str, expected: IntSeries, computed: IntSeries) -> Self {
        let d = expected.cutoff().min(computed.cutoff());
        let (expected, computed) = (expected.truncate(d), computed.truncate(d));
        let agree_up_to = match computed.first_difference(&expected) {
            None => Some(d),
            Some(0) => None,
            Some(k) => Some(k - 1),
        };
        Self { name: name.into(), ring: ring.into(), agree: agree_up_to == Some(d), expected, computed, agree_up_to }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientSummary {
    pub power: usize,
    pub dim: usize,
    pub hilbert: Vec<usize>,
    pub koszul_homology: Vec<usize>,
    pub class: ClassVerdict,
    pub golod: GolodVerdict,
    pub betti: Option<BettiTable>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub input: InputEcho,
    pub dim: usize,
    pub hilbert: Vec<usize>,
    pub socle_degree: usize,
    pub socle_type: usize,
    pub embedding_dim: usize,
    pub flags: Flags,
    pub koszul_homology: Vec<usize>,
    pub class: ClassVerdict,
    pub golod: GolodVerdict,
    pub ezd: Option<EzdSection>,
    pub betti: Option<BettiTable>,
    /// `R/m^s` for socle degree `s >= 2`.
    pub socle_quotient: Option<QuotientSummary>,
    pub series: Vec<SeriesComparison>,
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub fn class_text(c: &ClassVerdict) -> String {
    match c {
        ClassVerdict::CompleteIntersection => "complete intersection".into(),
        ClassVerdict::GolodCertified => "Golod (all Koszul homology products vanish)".into(),
        ClassVerdict::ClassT { witness, qualifier } => {
            let mut s = format!("class T (A1·A1 != 0 = A1·A2; [{}] · [{}] = {})", witness.left, witness.right, witness.product);
            if let Some(q) = qualifier {
                write!(s, " [{q}]").unwrap();
            }
            s
        }
        ClassVerdict::Other => "other".into(),
    }
}

pub fn golod_text(g: &GolodVerdict) -> String {
    match g {
        GolodVerdict::GolodCertified => "GolodCertified (codepth ≤ 3 product criterion)".into(),
        GolodVerdict::ConsistentWithGolodUpTo { cutoff } => {
            format!("ConsistentWithGolodUpTo({cutoff}) (trivial products, Betti numbers meet the Golod bound)")
        }
        GolodVerdict::NotGolod { certificate: NotGolodCertificate::Product(w) } => format!(
            "NotGolod (Koszul product in degrees {}+{}: [{}] · [{}] = {})",
            w.degrees.0, w.degrees.1, w.left, w.right, w.product
        ),
        GolodVerdict::NotGolod { certificate: NotGolodCertificate::BettiMismatch { degree, betti, golod } } => {
            format!("NotGolod (b_{degree} = {betti} < {golod} from the Golod series)")
        }
    }
}

pub fn ezd_text(r: &EzdReport) -> String {
    let mode = serde_json::to_value(r.mode).ok().map(|v| match v {
        serde_json::Value::String(s) => s,
        serde_json::Value::Object(o) => o.keys().next().cloned().unwrap_or_default(),
        other => other.to_string(),
    });
    let mode = mode.unwrap_or_default();
    match (&r.outcome, &r.witness) {
        (EzdOutcome::Found, Some(w)) => format!("found a = {}, (0 : a) = ({}) [{mode}, {} candidates]", w.a, w.b, r.candidates),
        (EzdOutcome::AbsentExhaustive, _) => format!("none (exhaustive, {} candidates)", r.candidates),
        (EzdOutcome::AbsentAmongLinearForms, _) => format!("none among linear forms ({} candidates)", r.candidates),
        _ => format!("none found within budget ({mode}, {} samples)", r.candidates),
    }
}

pub fn render_analysis(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let i = &r.input;
    write!(s, "input: {} (p = {})", i.source, i.characteristic).unwrap();
    if let Some(q) = i.quotient {
        write!(s, ", quotient by m^{q}").unwrap();
    }
    if i.trivial_extension {
        write!(s, ", trivial extension").unwrap();
    }
    s.push('\n');
    if !i.ideal.is_empty() {
        writeln!(s, "ideal: ({}) in k[[{}]]", list(&i.ideal), list(&i.vars)).unwrap();
    }
    writeln!(s, "dimension: {}", r.dim).unwrap();
    writeln!(s, "hilbert: {}", list(&r.hilbert)).unwrap();
    writeln!(s, "socle degree: {}, type: {}", r.socle_degree, r.socle_type).unwrap();
    writeln!(s, "embedding dimension: {}", r.embedding_dim).unwrap();
    writeln!(s, "gorenstein: {}", r.flags.gorenstein).unwrap();
    write!(s, "compressed: {}", r.flags.compressed).unwrap();
    if let Some(w) = &r.flags.compressed_warning {
        write!(s, " ({w})").unwrap();
    }
    s.push('\n');
    writeln!(s, "complete intersection: {}", r.flags.complete_intersection).unwrap();
    if let Some(k) = r.flags.koszul_consistent_up_to_d {
        writeln!(s, "koszul-consistent through the cutoff: {k}").unwrap();
    }
    writeln!(s, "koszul homology: {}", list(&r.koszul_homology)).unwrap();
    writeln!(s, "class: {}", class_text(&r.class)).unwrap();
    writeln!(s, "golod: {}", golod_text(&r.golod)).unwrap();
    if let Some(e) = &r.ezd {
        writeln!(s, "ezd: {}", ezd_text(&e.search)).unwrap();
        if let Some(x) = &e.random {
            writeln!(s, "ezd (random): {}", ezd_text(x)).unwrap();
        }
    }
    if let Some(b) = &r.betti {
        writeln!(s, "betti: {}", list(&b.betti)).unwrap();
    }
    if let Some(q) = &r.socle_quotient {
        writeln!(s, "R/m^{}:", q.power).unwrap();
        writeln!(s, "  hilbert: {}", list(&q.hilbert)).unwrap();
        writeln!(s, "  koszul homology: {}", list(&q.koszul_homology)).unwrap();
        writeln!(s, "  class: {}", class_text(&q.class)).unwrap();
        writeln!(s, "  golod: {}", golod_text(&q.golod)).unwrap();
        if let Some(b) = &q.betti {
            writeln!(s, "  betti: {}", list(&b.betti)).unwrap();
        }
    }
    if !r.series.is_empty() {
        writeln!(s, "series:").unwrap();
        for c in &r.series {
            let agree = match (c.agree, c.agree_up_to) {
                (true, _) => "agree".to_string(),
                (false, Some(d)) => format!("agree through z^{d}"),
                (false, None) => "differ at z^0".to_string(),
            };
            writeln!(s, "  {} on {}: expected {}; computed {}; {agree}", c.name, c.ring, c.expected.to_list(), c.computed.to_list())
                .unwrap();
        }
    }
    s
}
