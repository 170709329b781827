//! Serializable report records. Rationals are always rendered `"num/den"`.

use descent_core::arith::{fmt_rat, Int, Rat};
use descent_core::eisenstein::EisInt;
use descent_core::rank::RankBounds;
use descent_core::status::{Certificate, ClassStatus, Source, Status, Witness};
use descent_core::weierstrass::{CurveW, Point};
use serde::{Deserialize, Serialize};
use std::fmt::Display;

pub const SCHEMA: &str = include_str!("../schema/descent-report.schema.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    TwoDescent,
    ThreeDescent,
    CubeCase,
    Torsion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InputEcho {
    Cuboid { b: String, c: String, family: String },
    Two { a: String, c: String },
    Three { e: String },
    Torsion { a: String, b: String },
}

/// `y^2 = x^3 + a x + b`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveReport {
    pub a: String,
    pub b: String,
}

impl CurveReport {
    pub fn of(c: &CurveW) -> Self {
        CurveReport {
            a: fmt_rat(c.a()),
            b: fmt_rat(c.b()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PointReport {
    Infinity,
    Affine { x: String, y: String },
}

impl PointReport {
    pub fn of(p: &Point) -> Self {
        match p.affine() {
            None => PointReport::Infinity,
            Some(q) => PointReport::Affine {
                x: fmt_rat(q.x()),
                y: fmt_rat(q.y()),
            },
        }
    }

    /// Rebuild on `curve`; `None` if the coordinates do not parse or lie off it.
    pub fn to_point(&self, curve: &CurveW) -> Option<Point> {
        match self {
            PointReport::Infinity => Some(Point::Infinity),
            PointReport::Affine { x, y } => {
                let x = descent_core::arith::parse_rat(x).ok()?;
                let y = descent_core::arith::parse_rat(y).ok()?;
                curve.point(x, y).ok()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SourceReport {
    Torsion,
    Quartic { m: String, n: String, q: String },
    Cubic { x: String, y: String, z: String },
    EisCubic { x: String, y: String, z: String },
    Product,
}

fn s(v: &impl Display) -> String {
    v.to_string()
}

impl SourceReport {
    fn of(src: &Source) -> Self {
        match src {
            Source::Torsion => SourceReport::Torsion,
            Source::Quartic { m, n, q } => SourceReport::Quartic {
                m: s(m),
                n: s(n),
                q: s(q),
            },
            Source::Cubic { x, y, z } => SourceReport::Cubic {
                x: s(x),
                y: s(y),
                z: s(z),
            },
            Source::EisCubic { x, y, z } => SourceReport::EisCubic {
                x: eis(x),
                y: eis(y),
                z: eis(z),
            },
            Source::Product => SourceReport::Product,
        }
    }
}

fn eis(z: &EisInt) -> String {
    z.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub point: PointReport,
    pub source: SourceReport,
}

impl WitnessReport {
    fn of(w: &Witness) -> Self {
        WitnessReport {
            point: PointReport::of(&w.point),
            source: SourceReport::of(&w.source),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertificateReport {
    Local { modulus: u64 },
    Sign,
    Norm,
    Coset { member: String, excluded: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatusKind {
    In,
    Out,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub class: String,
    pub status: StatusKind,
    pub witness: Option<WitnessReport>,
    pub certificate: Option<CertificateReport>,
}

impl ClassReport {
    pub fn of<C: Display>(cs: &ClassStatus<C>) -> Self {
        let (status, witness, certificate) = match &cs.status {
            Status::ProvedIn(w) => (StatusKind::In, Some(WitnessReport::of(w)), None),
            Status::ProvedOut(c) => {
                let cert = match c {
                    Certificate::Local { modulus } => CertificateReport::Local { modulus: *modulus },
                    Certificate::Sign => CertificateReport::Sign,
                    Certificate::Norm => CertificateReport::Norm,
                    Certificate::Coset { member, excluded } => CertificateReport::Coset {
                        member: s(member),
                        excluded: s(excluded),
                    },
                };
                (StatusKind::Out, None, Some(cert))
            }
            Status::Unknown => (StatusKind::Unknown, None, None),
        };
        ClassReport {
            class: s(&cs.class),
            status,
            witness,
            certificate,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideReport {
    /// `"E"` or `"E~"`.
    pub side: String,
    pub classes: Vec<ClassReport>,
    pub proved_in: usize,
    pub proved_out: usize,
    pub unknown: usize,
    /// The sweep was skipped because the candidate list was too large.
    pub skipped: bool,
}

impl SideReport {
    pub fn of<C: Display>(side: &str, list: &[ClassStatus<C>], skipped: bool) -> Self {
        let classes: Vec<ClassReport> = list.iter().map(ClassReport::of).collect();
        let count = |k: StatusKind| classes.iter().filter(|c| c.status == k).count();
        SideReport {
            side: side.to_string(),
            proved_in: count(StatusKind::In),
            proved_out: count(StatusKind::Out),
            unknown: count(StatusKind::Unknown),
            classes,
            skipped,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub lower: u32,
    pub upper: u32,
    pub undecided: usize,
}

impl From<RankBounds> for RankReport {
    fn from(r: RankBounds) -> Self {
        RankReport {
            lower: r.lower,
            upper: r.upper,
            undecided: r.undecided,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClassificationReport {
    CubeCase { n: String, r: String, m: String },
    GeneralCase { n: String, r: String, e: String, u: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffReport {
    pub f: String,
    pub p1: String,
    pub p2: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsReport {
    pub search_bound: u64,
    pub local_bound: u64,
    pub max_classes: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    InvalidInput,
    Degenerate,
    Incomplete,
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentReport {
    pub input: InputEcho,
    pub method: Option<Method>,
    pub coefficients: Option<CoeffReport>,
    pub classification: Option<ClassificationReport>,
    pub curve: Option<CurveReport>,
    /// `y^2 = x^3 + e^2` when the general case is reduced.
    pub reduced_curve: Option<CurveReport>,
    pub torsion: Vec<PointReport>,
    pub sides: Vec<SideReport>,
    pub ker_index: Option<u32>,
    pub two_torsion: Option<u32>,
    pub rank: Option<RankReport>,
    pub params: ParamsReport,
    /// Wall time in microseconds, present only on request.
    pub timing_us: Option<u64>,
    pub error: Option<ErrorReport>,
}

impl DescentReport {
    pub fn new(input: InputEcho, params: ParamsReport) -> Self {
        DescentReport {
            input,
            method: None,
            coefficients: None,
            classification: None,
            curve: None,
            reduced_curve: None,
            torsion: Vec::new(),
            sides: Vec::new(),
            ker_index: None,
            two_torsion: None,
            rank: None,
            params,
            timing_us: None,
            error: None,
        }
    }

    pub fn failed(mut self, kind: ErrorKind, message: impl Into<String>) -> Self {
        self.error = Some(ErrorReport {
            kind,
            message: message.into(),
        });
        self
    }

    pub fn has_unknown(&self) -> bool {
        self.sides.iter().any(|s| s.unknown > 0 || s.skipped)
            || self.rank.is_some_and(|r| r.undecided > 0)
    }

    /// 0 success, 2 invalid input, 3 degenerate, 4 incomplete, 1 internal.
    pub fn exit_code(&self) -> i32 {
        match &self.error {
            Some(e) => match e.kind {
                ErrorKind::InvalidInput => 2,
                ErrorKind::Degenerate => 3,
                ErrorKind::Incomplete => 4,
                ErrorKind::Internal => 1,
            },
            None if self.has_unknown() => 4,
            None => 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// One CSV row per curve; class tables are elided.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub input: String,
    pub method: String,
    pub classification: String,
    pub curve_a: String,
    pub curve_b: String,
    pub e: String,
    pub torsion_order: usize,
    pub e_in: String,
    pub tilde_in: String,
    pub rank_lower: String,
    pub rank_upper: String,
    pub undecided: String,
    pub error: String,
}

fn opt<T: Display>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl CsvRow {
    pub fn of(r: &DescentReport) -> Self {
        let input = match &r.input {
            InputEcho::Cuboid { b, c, family } => format!("cuboid {family} b={b} c={c}"),
            InputEcho::Two { a, c } => format!("two a={a} c={c}"),
            InputEcho::Three { e } => format!("three e={e}"),
            InputEcho::Torsion { a, b } => format!("torsion a={a} b={b}"),
        };
        let method = r
            .method
            .as_ref()
            .map(|m| serde_json::to_value(m).expect("method serializes"))
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default();
        let (classification, e) = match &r.classification {
            Some(ClassificationReport::CubeCase { m, .. }) => ("cube-case".to_string(), format!("M={m}")),
            Some(ClassificationReport::GeneralCase { e, .. }) => ("general-case".to_string(), e.clone()),
            None => (String::new(), String::new()),
        };
        let side_in = |i: usize| opt(r.sides.get(i).map(|s| s.proved_in));
        CsvRow {
            input,
            method,
            classification,
            curve_a: opt(r.curve.as_ref().map(|c| c.a.clone())),
            curve_b: opt(r.curve.as_ref().map(|c| c.b.clone())),
            e,
            torsion_order: r.torsion.len(),
            e_in: side_in(0),
            tilde_in: side_in(1),
            rank_lower: opt(r.rank.map(|x| x.lower)),
            rank_upper: opt(r.rank.map(|x| x.upper)),
            undecided: opt(r.rank.map(|x| x.undecided)),
            error: opt(r.error.as_ref().map(|e| e.message.clone())),
        }
    }
}

pub fn int_str(n: &Int) -> String {
    n.to_string()
}

pub fn rat_str(r: &Rat) -> String {
    fmt_rat(r)
}
