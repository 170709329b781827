//! The two cuboid coefficient families `P1(b, c)`, `P2(b, c)`, their
//! reduction to `y^2 = x^3 + 16 R^4 N^2`, and the cube/general split.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use thiserror::Error;

use crate::arith::{self, ArithError, Int, Rat};
use crate::weierstrass::{CurveError, CurveW, Point};

pub const TERMS_SOURCE: &str = include_str!("../data/cuboid_terms.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CuboidError {
    #[error("degenerate parameters: F(b, c) = 0")]
    DegenerateF,
    #[error("degenerate parameters: the selected coefficient vanishes")]
    ZeroCoefficient,
    #[error("N and R must be nonzero")]
    ZeroNR,
    #[error("M must be nonzero")]
    ZeroM,
    #[error("malformed term file line {line}: {text}")]
    TermFile { line: usize, text: String },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    P1,
    P2,
}

/// One monomial `coeff * b^i * c^j / F^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub coeff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermList {
    pub name: String,
    pub scale: Rat,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermTables {
    pub f: TermList,
    pub p1: TermList,
    pub p2: TermList,
}

pub fn parse_terms(src: &str) -> Result<TermTables, CuboidError> {
    let mut lists: Vec<TermList> = Vec::new();
    for (n, raw) in src.lines().enumerate() {
        let line = raw.trim();
        let bad = || CuboidError::TermFile {
            line: n + 1,
            text: raw.to_string(),
        };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            lists.push(TermList {
                name: name.to_string(),
                scale: Rat::one(),
                terms: Vec::new(),
            });
            continue;
        }
        let cur = lists.last_mut().ok_or_else(bad)?;
        if let Some(s) = line.strip_prefix("scale") {
            cur.scale = arith::parse_rat(s).map_err(|_| bad())?;
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 4 {
            return Err(bad());
        }
        let num = |s: &str| s.parse::<u32>().map_err(|_| bad());
        cur.terms.push(Term {
            i: num(f[0])?,
            j: num(f[1])?,
            k: num(f[2])?,
            coeff: f[3].parse().map_err(|_| bad())?,
        });
    }
    let mut take = |name: &str| {
        lists
            .iter()
            .position(|l| l.name == name)
            .map(|i| lists.swap_remove(i))
            .ok_or(CuboidError::TermFile {
                line: 0,
                text: format!("missing section [{name}]"),
            })
    };
    Ok(TermTables {
        f: take("F")?,
        p1: take("P1")?,
        p2: take("P2")?,
    })
}

pub static TERMS: Lazy<TermTables> =
    Lazy::new(|| parse_terms(TERMS_SOURCE).expect("bundled term file parses"));

/// Horner in `c` inside each power of `b`, then Horner in `b`.
fn eval_poly(terms: &[Term], b: &Rat, c: &Rat, f_inv: &Rat) -> Rat {
    // (i, k) -> dense coefficients in c
    let mut rows: BTreeMap<(u32, u32), Vec<i64>> = BTreeMap::new();
    for t in terms {
        let row = rows.entry((t.i, t.k)).or_default();
        if row.len() <= t.j as usize {
            row.resize(t.j as usize + 1, 0);
        }
        row[t.j as usize] += t.coeff;
    }
    let max_i = rows.keys().map(|(i, _)| *i).max().unwrap_or(0);
    let mut acc = Rat::zero();
    for i in (0..=max_i).rev() {
        let mut row_val = Rat::zero();
        for ((ri, k), coeffs) in rows.range((i, 0)..=(i, u32::MAX)) {
            debug_assert_eq!(*ri, i);
            let mut h = Rat::zero();
            for &a in coeffs.iter().rev() {
                h = h * c + Rat::from_integer(Int::from(a));
            }
            for _ in 0..*k {
                h *= f_inv;
            }
            row_val += h;
        }
        acc = acc * b + row_val;
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuboidCoeffs {
    pub b: Rat,
    pub c: Rat,
    pub f: Rat,
    pub p1: Rat,
    pub p2: Rat,
}

impl CuboidCoeffs {
    pub fn get(&self, family: Family) -> &Rat {
        match family {
            Family::P1 => &self.p1,
            Family::P2 => &self.p2,
        }
    }
}

pub fn eval_f(b: &Rat, c: &Rat) -> Rat {
    let t = &*TERMS;
    &t.f.scale * eval_poly(&t.f.terms, b, c, &Rat::one())
}

pub fn eval_coeffs(b: &Rat, c: &Rat) -> Result<CuboidCoeffs, CuboidError> {
    let t = &*TERMS;
    let f = eval_f(b, c);
    if f.is_zero() {
        return Err(CuboidError::DegenerateF);
    }
    let f_inv = f.recip();
    let p1 = &t.p1.scale * eval_poly(&t.p1.terms, b, c, &f_inv);
    let p2 = &t.p2.scale * eval_poly(&t.p2.terms, b, c, &f_inv);
    Ok(CuboidCoeffs {
        b: b.clone(),
        c: c.clone(),
        f,
        p1,
        p2,
    })
}

/// `P = N / R` in lowest terms with `R > 0`.
pub fn to_fraction(p: &Rat) -> Result<(Int, Int), CuboidError> {
    if p.is_zero() {
        return Err(CuboidError::ZeroCoefficient);
    }
    Ok((p.numer().clone(), p.denom().clone()))
}

/// `y^2 = x^3 + 16 R^4 N^2`.
pub fn to_weierstrass(n: &Int, r: &Int) -> Result<CurveW, CuboidError> {
    if n.is_zero() || r.is_zero() {
        return Err(CuboidError::ZeroNR);
    }
    let b = Int::from(16) * r.pow(4u32) * n * n;
    Ok(CurveW::from_ints(Int::zero(), b)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Classification {
    /// `4 R^2 N = 8 M^3`
    CubeCase { m: Int },
    /// `|4 R^2 N| = u^3 e`, `e > 1` cube-free
    GeneralCase { e: Int, u: Int },
}

pub fn classify_curve(n: &Int, r: &Int) -> Result<Classification, CuboidError> {
    if n.is_zero() || r.is_zero() {
        return Err(CuboidError::ZeroNR);
    }
    let v = Int::from(4) * r * r * n;
    if let Some(root) = arith::is_perfect_power(&v, 3) {
        if root.is_even() {
            return Ok(Classification::CubeCase { m: root / 2 });
        }
    }
    let f = arith::factorize(&v.abs())?;
    let (mut e, mut u) = (Int::one(), Int::one());
    for (p, k) in &f.factors {
        e *= p.pow(k % 3);
        u *= p.pow(k / 3);
    }
    assert!(e > Int::one(), "a non-cube 4R^2N leaves a cube-free part above 1");
    Ok(Classification::GeneralCase { e, u })
}

/// The six torsion points of `y^2 = x^3 + 64 M^6`, ordered
/// `inf, (8M^2, 24M^3), (0, 8M^3), (-4M^2, 0), (0, -8M^3), (8M^2, -24M^3)`.
pub fn cube_case_group(m: &Int) -> Result<(CurveW, Vec<Point>), CuboidError> {
    if m.is_zero() {
        return Err(CuboidError::ZeroM);
    }
    let curve = CurveW::from_ints(Int::zero(), Int::from(64) * m.pow(6u32))?;
    let m2 = m * m;
    let m3 = &m2 * m;
    let r = |v: Int| Rat::from_integer(v);
    let pts = vec![
        Point::Infinity,
        curve.point(r(Int::from(8) * &m2), r(Int::from(24) * &m3))?,
        curve.point(r(Int::zero()), r(Int::from(8) * &m3))?,
        curve.point(r(Int::from(-4) * &m2), r(Int::zero()))?,
        curve.point(r(Int::zero()), r(Int::from(-8) * &m3))?,
        curve.point(r(Int::from(8) * &m2), r(Int::from(-24) * &m3))?,
    ];
    Ok((curve, pts))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuboidCurve {
    pub n: Int,
    pub r: Int,
    pub curve: CurveW,
    pub classification: Classification,
}

pub fn cuboid_curve(n: &Int, r: &Int) -> Result<CuboidCurve, CuboidError> {
    Ok(CuboidCurve {
        n: n.clone(),
        r: r.clone(),
        curve: to_weierstrass(n, r)?,
        classification: classify_curve(n, r)?,
    })
}

/// Pull a point of `y^2 = x^3 + 16R^4N^2` back to `(w, α) = (y/(4R^2N), x/(2RN))`.
pub fn pull_back(n: &Int, r: &Int, x: &Rat, y: &Rat) -> (Rat, Rat) {
    let w = y / Rat::from_integer(Int::from(4) * r * r * n);
    let alpha = x / Rat::from_integer(Int::from(2) * r * n);
    (w, alpha)
}

/// `2R(w^2 - 1) = N α^3`
pub fn satisfies_cuboid_cubic(n: &Int, r: &Int, w: &Rat, alpha: &Rat) -> bool {
    let lhs = Rat::from_integer(Int::from(2) * r) * (w * w - Rat::one());
    let rhs = Rat::from_integer(n.clone()) * alpha * alpha * alpha;
    lhs == rhs
}
