//! Command implementations that turn engine results into reports.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::time::Instant;

use descent_core::arith::{self, ArithError, Int, Rat};
use descent_core::cuboid::{self, Classification, CuboidError, Family};
use descent_core::eisenstein::EisError;
use descent_core::three_descent::{self, ThreeBounds, ThreeDescentError};
use descent_core::two_descent::{self, SearchBounds, TwoDescentError};
use descent_core::weierstrass::{CurveError, CurveW, Point};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::report::{
    int_str, rat_str, ClassificationReport, CoeffReport, CsvRow, CurveReport, DescentReport,
    ErrorKind, InputEcho, Method, ParamsReport, PointReport, RankReport, SideReport,
};

/// User overrides; `None` falls back to the engine default.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Bounds {
    pub search_bound: Option<u64>,
    pub local_bound: Option<u64>,
    pub max_classes: Option<usize>,
}

impl Bounds {
    pub fn two(&self) -> SearchBounds {
        let d = SearchBounds::default();
        SearchBounds {
            search_bound: self.search_bound.unwrap_or(d.search_bound),
            local_bound: self.local_bound.unwrap_or(d.local_bound),
        }
    }

    pub fn three(&self) -> ThreeBounds {
        let d = ThreeBounds::default();
        ThreeBounds {
            search_bound: self.search_bound.unwrap_or(d.search_bound),
            local_bound: self.local_bound.unwrap_or(d.local_bound),
            max_classes: self.max_classes.unwrap_or(d.max_classes),
        }
    }

    fn params_two(&self) -> ParamsReport {
        let b = self.two();
        ParamsReport {
            search_bound: b.search_bound,
            local_bound: b.local_bound,
            max_classes: None,
        }
    }

    fn params_three(&self) -> ParamsReport {
        let b = self.three();
        ParamsReport {
            search_bound: b.search_bound,
            local_bound: b.local_bound,
            max_classes: Some(b.max_classes),
        }
    }
}

pub fn family_name(f: Family) -> &'static str {
    match f {
        Family::P1 => "p1",
        Family::P2 => "p2",
    }
}

fn arith_kind(e: &ArithError) -> ErrorKind {
    match e {
        ArithError::Incomplete(_) => ErrorKind::Incomplete,
        _ => ErrorKind::InvalidInput,
    }
}

fn curve_kind(e: &CurveError) -> ErrorKind {
    match e {
        CurveError::Singular => ErrorKind::Degenerate,
        CurveError::NonIntegral | CurveError::NotSixthPowerFree(_) => ErrorKind::InvalidInput,
        CurveError::NotOnCurve(_) | CurveError::ForeignPoint => ErrorKind::Internal,
        CurveError::Arith(a) => arith_kind(a),
    }
}

fn cuboid_kind(e: &CuboidError) -> ErrorKind {
    match e {
        CuboidError::DegenerateF
        | CuboidError::ZeroCoefficient
        | CuboidError::ZeroNR
        | CuboidError::ZeroM => ErrorKind::Degenerate,
        CuboidError::TermFile { .. } => ErrorKind::Internal,
        CuboidError::Curve(c) => curve_kind(c),
        CuboidError::Arith(a) => arith_kind(a),
    }
}

fn two_kind(e: &TwoDescentError) -> ErrorKind {
    match e {
        TwoDescentError::SingularE | TwoDescentError::SingularTilde => ErrorKind::Degenerate,
        TwoDescentError::Curve(c) => curve_kind(c),
        TwoDescentError::Arith(a) => arith_kind(a),
        TwoDescentError::Inconsistent(_) => ErrorKind::Internal,
    }
}

fn three_kind(e: &ThreeDescentError) -> ErrorKind {
    match e {
        ThreeDescentError::TooSmall(_) | ThreeDescentError::NotCubeFree(_) => ErrorKind::InvalidInput,
        ThreeDescentError::Curve(c) => curve_kind(c),
        ThreeDescentError::Arith(a) => arith_kind(a),
        ThreeDescentError::Eis(EisError::Arith(a)) => arith_kind(a),
        ThreeDescentError::Eis(_) | ThreeDescentError::Inconsistent(_) => ErrorKind::Internal,
    }
}

/// Run `f` and record its wall time when `timing` is set.
pub fn timed(timing: bool, f: impl FnOnce() -> DescentReport) -> DescentReport {
    let start = Instant::now();
    let mut r = f();
    if timing {
        r.timing_us = Some(start.elapsed().as_micros() as u64);
    }
    r
}

pub fn cmd_two(a: &Int, c: &Int, bounds: &Bounds) -> DescentReport {
    let input = InputEcho::Two {
        a: int_str(a),
        c: int_str(c),
    };
    let mut rep = DescentReport::new(input, bounds.params_two());
    rep.method = Some(Method::TwoDescent);
    let pair = match two_descent::make_td_pair(a, c) {
        Ok(p) => p,
        Err(e) => return rep.failed(two_kind(&e), e.to_string()),
    };
    rep.curve = Some(CurveReport::of(&pair.e));
    let d = match two_descent::rank_bounds_2(&pair, bounds.two()) {
        Ok(d) => d,
        Err(e) => return rep.failed(two_kind(&e), e.to_string()),
    };
    rep.torsion = d.torsion.iter().map(PointReport::of).collect();
    rep.sides = vec![
        SideReport::of("E", &d.e_side, false),
        SideReport::of("E~", &d.tilde_side, false),
    ];
    rep.ker_index = Some(d.ker_index);
    rep.two_torsion = Some(d.two_torsion);
    rep.rank = Some(d.rank.into());
    rep
}

pub fn cmd_three(e: &Int, bounds: &Bounds) -> DescentReport {
    let rep = DescentReport::new(InputEcho::Three { e: int_str(e) }, bounds.params_three());
    three_report(rep, e, &Int::from(1), bounds)
}

/// Three-descent on `y^2 = x^3 + e^2`; torsion is reported on the scaled
/// curve `y^2 = x^3 + u^6 e^2`.
fn three_report(mut rep: DescentReport, e: &Int, u: &Int, bounds: &Bounds) -> DescentReport {
    rep.method = Some(Method::ThreeDescent);
    let pair = match three_descent::make_e_pair(e) {
        Ok(p) => p,
        Err(err) => return rep.failed(three_kind(&err), err.to_string()),
    };
    if rep.curve.is_none() {
        rep.curve = Some(CurveReport::of(&pair.curve));
    } else {
        rep.reduced_curve = Some(CurveReport::of(&pair.curve));
    }
    let d = match three_descent::rank_bounds_3(&pair, bounds.three()) {
        Ok(d) => d,
        Err(err) => return rep.failed(three_kind(&err), err.to_string()),
    };
    let u2 = Rat::from_integer(u * u);
    let u3 = Rat::from_integer(u * u * u);
    rep.torsion = pair
        .torsion
        .iter()
        .map(|p| match p.affine() {
            None => PointReport::Infinity,
            Some(q) => PointReport::Affine {
                x: rat_str(&(q.x() * &u2)),
                y: rat_str(&(q.y() * &u3)),
            },
        })
        .collect();
    rep.sides = vec![
        SideReport::of("E", &d.e_side, false),
        SideReport::of("E~", &d.tilde_side, d.tilde_skipped),
    ];
    rep.rank = Some(d.rank.into());
    rep
}

pub fn cmd_torsion(a: &Int, b: &Int) -> DescentReport {
    let input = InputEcho::Torsion {
        a: int_str(a),
        b: int_str(b),
    };
    let params = ParamsReport {
        search_bound: 0,
        local_bound: 0,
        max_classes: None,
    };
    let mut rep = DescentReport::new(input, params);
    rep.method = Some(Method::Torsion);
    let curve = match CurveW::from_ints(a.clone(), b.clone()) {
        Ok(c) => c,
        Err(e) => return rep.failed(curve_kind(&e), e.to_string()),
    };
    rep.curve = Some(CurveReport::of(&curve));
    match curve.torsion_subgroup() {
        Ok(t) => rep.torsion = t.iter().map(PointReport::of).collect(),
        Err(e) => return rep.failed(curve_kind(&e), e.to_string()),
    }
    rep
}

pub fn cmd_cuboid(b: &Rat, c: &Rat, family: Family, bounds: &Bounds) -> DescentReport {
    let input = InputEcho::Cuboid {
        b: rat_str(b),
        c: rat_str(c),
        family: family_name(family).to_string(),
    };
    let mut rep = DescentReport::new(input, bounds.params_three());
    let co = match cuboid::eval_coeffs(b, c) {
        Ok(co) => co,
        Err(e) => return rep.failed(cuboid_kind(&e), e.to_string()),
    };
    rep.coefficients = Some(CoeffReport {
        f: rat_str(&co.f),
        p1: rat_str(&co.p1),
        p2: rat_str(&co.p2),
    });
    let (n, r) = match cuboid::to_fraction(co.get(family)) {
        Ok(nr) => nr,
        Err(e) => return rep.failed(cuboid_kind(&e), e.to_string()),
    };
    let cc = match cuboid::cuboid_curve(&n, &r) {
        Ok(cc) => cc,
        Err(e) => return rep.failed(cuboid_kind(&e), e.to_string()),
    };
    rep.curve = Some(CurveReport::of(&cc.curve));
    match &cc.classification {
        Classification::CubeCase { m } => {
            rep.classification = Some(ClassificationReport::CubeCase {
                n: int_str(&n),
                r: int_str(&r),
                m: int_str(m),
            });
            rep.method = Some(Method::CubeCase);
            match cuboid::cube_case_group(m) {
                Ok((_, pts)) => rep.torsion = pts.iter().map(PointReport::of).collect(),
                Err(e) => return rep.failed(cuboid_kind(&e), e.to_string()),
            }
            rep.rank = Some(RankReport {
                lower: 0,
                upper: 0,
                undecided: 0,
            });
            rep
        }
        Classification::GeneralCase { e, u } => {
            rep.classification = Some(ClassificationReport::GeneralCase {
                n: int_str(&n),
                r: int_str(&r),
                e: int_str(e),
                u: int_str(u),
            });
            three_report(rep, e, u, bounds)
        }
    }
}

/// Check a report's torsion list against its curve; used by tests and `--verify`.
pub fn torsion_points(rep: &DescentReport) -> Option<Vec<Point>> {
    let c = rep.curve.as_ref()?;
    let curve = CurveW::new(arith::parse_rat(&c.a).ok()?, arith::parse_rat(&c.b).ok()?).ok()?;
    rep.torsion.iter().map(|p| p.to_point(&curve)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanGrid {
    pub b_from: Rat,
    pub b_to: Rat,
    pub c_from: Rat,
    pub c_to: Rat,
    pub step: Rat,
    pub family: Family,
    pub bounds: Bounds,
    pub format: Format,
    pub timing: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum ScanError {
    #[error("invalid scan range: {0}")]
    Range(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl ScanGrid {
    /// `b` outer, `c` inner, both ascending from `from` by `step` while `<= to`.
    pub fn grid(&self) -> Result<Vec<(Rat, Rat)>, ScanError> {
        if self.step <= arith::rat(0, 1) {
            return Err(ScanError::Range("step must be positive".into()));
        }
        if self.b_from > self.b_to || self.c_from > self.c_to {
            return Err(ScanError::Range("each range needs from <= to".into()));
        }
        let axis = |from: &Rat, to: &Rat| {
            let mut v = Vec::new();
            let mut x = from.clone();
            while &x <= to {
                v.push(x.clone());
                x += &self.step;
            }
            v
        };
        let bs = axis(&self.b_from, &self.b_to);
        let cs = axis(&self.c_from, &self.c_to);
        Ok(bs
            .iter()
            .flat_map(|b| cs.iter().map(move |c| (b.clone(), c.clone())))
            .collect())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub records: usize,
    pub by_classification: BTreeMap<String, usize>,
    pub by_rank: BTreeMap<String, usize>,
    pub errors: usize,
    pub incomplete: usize,
}

impl ScanSummary {
    fn add(&mut self, r: &DescentReport) {
        self.records += 1;
        let class = match (&r.error, &r.classification) {
            (Some(_), _) => "error",
            (None, Some(ClassificationReport::CubeCase { .. })) => "cube-case",
            (None, Some(ClassificationReport::GeneralCase { .. })) => "general-case",
            (None, None) => "none",
        };
        *self.by_classification.entry(class.to_string()).or_default() += 1;
        if let Some(rank) = r.rank {
            let key = format!("[{}, {}]", rank.lower, rank.upper);
            *self.by_rank.entry(key).or_default() += 1;
        }
        if r.error.is_some() {
            self.errors += 1;
        } else if r.has_unknown() {
            self.incomplete += 1;
        }
    }
}

/// Points per parallel batch; the writer drains each batch in grid order.
const BATCH: usize = 64;

enum Sink<'a> {
    Csv(Box<csv::Writer<&'a mut dyn Write>>),
    Json(&'a mut dyn Write),
}

impl Sink<'_> {
    fn write(&mut self, reports: &[DescentReport]) -> Result<(), ScanError> {
        match self {
            Sink::Csv(w) => {
                for r in reports {
                    w.serialize(CsvRow::of(r))?;
                }
                w.flush()?;
            }
            Sink::Json(out) => {
                for r in reports {
                    let line = serde_json::to_string(r).expect("report serializes");
                    out.write_all(line.as_bytes())?;
                    out.write_all(b"\n")?;
                }
                out.flush()?;
            }
        }
        Ok(())
    }
}

pub fn cmd_scan(scan: &ScanGrid, out: &mut dyn Write) -> Result<ScanSummary, ScanError> {
    let grid = scan.grid()?;
    let mut summary = ScanSummary::default();
    let mut sink = match scan.format {
        Format::Csv => Sink::Csv(Box::new(csv::Writer::from_writer(out))),
        Format::Json => Sink::Json(out),
    };
    for chunk in grid.chunks(BATCH) {
        let reports: Vec<DescentReport> = chunk
            .par_iter()
            .map(|(b, c)| timed(scan.timing, || cmd_cuboid(b, c, scan.family, &scan.bounds)))
            .collect();
        for r in &reports {
            summary.add(r);
        }
        sink.write(&reports)?;
    }
    Ok(summary)
}
