//! Curves `y^2 = x^3 + a x + b` over `Q` with the affine group law.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{self, ArithError, Int, Rat};

/// Mazur: a rational torsion point has order at most 12.
pub const MAX_TORSION_ORDER: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("singular curve: discriminant -4a^3 - 27b^2 vanishes")]
    Singular,
    #[error("point ({}, {}) is not on y^2 = x^3 + {}x + {}", .0.x, .0.y, .0.a, .0.b)]
    NotOnCurve(Box<OffCurve>),
    #[error("operand is not a point of this curve")]
    ForeignPoint,
    #[error("torsion search needs integer coefficients")]
    NonIntegral,
    #[error("{0} is not sixth-power free; reduce it first with b = u^6 b'")]
    NotSixthPowerFree(Int),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffCurve {
    pub x: Rat,
    pub y: Rat,
    pub a: Rat,
    pub b: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveW {
    a: Rat,
    b: Rat,
    disc: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Infinity,
    Affine(Affine),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    x: Rat,
    y: Rat,
}

impl Affine {
    pub fn x(&self) -> &Rat {
        &self.x
    }

    pub fn y(&self) -> &Rat {
        &self.y
    }
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn affine(&self) -> Option<&Affine> {
        match self {
            Point::Infinity => None,
            Point::Affine(p) => Some(p),
        }
    }

    pub fn x(&self) -> Option<&Rat> {
        self.affine().map(|p| &p.x)
    }

    pub fn y(&self) -> Option<&Rat> {
        self.affine().map(|p| &p.y)
    }

    pub fn is_integral(&self) -> bool {
        match self {
            Point::Infinity => true,
            Point::Affine(p) => p.x.is_integer() && p.y.is_integer(),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "inf"),
            Point::Affine(p) => write!(f, "({}, {})", p.x, p.y),
        }
    }
}

impl CurveW {
    pub fn new(a: Rat, b: Rat) -> Result<Self, CurveError> {
        let four = Rat::from_integer(Int::from(4));
        let tw7 = Rat::from_integer(Int::from(27));
        let disc = -(four * &a * &a * &a) - tw7 * &b * &b;
        if disc.is_zero() {
            return Err(CurveError::Singular);
        }
        Ok(CurveW { a, b, disc })
    }

    pub fn from_ints(a: Int, b: Int) -> Result<Self, CurveError> {
        Self::new(Rat::from_integer(a), Rat::from_integer(b))
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    /// `-4a^3 - 27b^2`
    pub fn disc(&self) -> &Rat {
        &self.disc
    }

    pub fn rhs(&self, x: &Rat) -> Rat {
        x * x * x + &self.a * x + &self.b
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(q) => &q.y * &q.y == self.rhs(&q.x),
        }
    }

    pub fn point(&self, x: Rat, y: Rat) -> Result<Point, CurveError> {
        if &y * &y != self.rhs(&x) {
            return Err(CurveError::NotOnCurve(Box::new(OffCurve {
                x,
                y,
                a: self.a.clone(),
                b: self.b.clone(),
            })));
        }
        Ok(Point::Affine(Affine { x, y }))
    }

    pub fn point_i(&self, x: i64, y: i64) -> Result<Point, CurveError> {
        self.point(arith::rat(x, 1), arith::rat(y, 1))
    }

    fn check(&self, p: &Point) -> Result<(), CurveError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(CurveError::ForeignPoint)
        }
    }

    pub fn negate(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(q) => Point::Affine(Affine {
                x: q.x.clone(),
                y: -q.y.clone(),
            }),
        }
    }

    pub fn add(&self, p: &Point, q: &Point) -> Result<Point, CurveError> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub fn double(&self, p: &Point) -> Result<Point, CurveError> {
        self.add(p, p)
    }

    fn add_unchecked(&self, p: &Point, q: &Point) -> Point {
        let (p1, p2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(p1), Point::Affine(p2)) => (p1, p2),
        };
        let slope = if p1.x != p2.x {
            (&p2.y - &p1.y) / (&p2.x - &p1.x)
        } else if p1.y == -p2.y.clone() {
            return Point::Infinity;
        } else {
            let three = Rat::from_integer(Int::from(3));
            let two = Rat::from_integer(Int::from(2));
            (three * &p1.x * &p1.x + &self.a) / (two * &p1.y)
        };
        let x3 = &slope * &slope - &p1.x - &p2.x;
        let y3 = &slope * (&p1.x - &x3) - &p1.y;
        let out = Point::Affine(Affine { x: x3, y: y3 });
        debug_assert!(self.contains(&out));
        out
    }

    pub fn scalar_mul(&self, n: &Int, p: &Point) -> Result<Point, CurveError> {
        self.check(p)?;
        let base = if n.is_negative() { self.negate(p) } else { p.clone() };
        let mut k = n.abs();
        let mut acc = Point::Infinity;
        let mut run = base;
        while !k.is_zero() {
            if k.is_odd() {
                acc = self.add_unchecked(&acc, &run);
            }
            k >>= 1;
            if !k.is_zero() {
                run = self.add_unchecked(&run, &run);
            }
        }
        Ok(acc)
    }

    pub fn mul(&self, n: i64, p: &Point) -> Result<Point, CurveError> {
        self.scalar_mul(&Int::from(n), p)
    }

    /// Order of `p` if it is at most [`MAX_TORSION_ORDER`].
    pub fn small_order(&self, p: &Point) -> Result<Option<u32>, CurveError> {
        self.check(p)?;
        let mut acc = p.clone();
        for n in 1..=MAX_TORSION_ORDER {
            if acc.is_infinity() {
                return Ok(Some(n));
            }
            acc = self.add_unchecked(&acc, p);
        }
        Ok(None)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    /// Rational torsion via Lutz–Nagell: `y = 0` or `y | D`, `x` integral.
    /// Sorted, infinity first.
    pub fn torsion_subgroup(&self) -> Result<Vec<Point>, CurveError> {
        if !self.has_integer_coeffs() {
            return Err(CurveError::NonIntegral);
        }
        let a = self.a.to_integer();
        let b = self.b.to_integer();
        let d = self.disc.to_integer();
        let mut ys = vec![Int::zero()];
        for q in arith::factorize(&d)?.divisors() {
            ys.push(-q.clone());
            ys.push(q);
        }
        let mut out = vec![Point::Infinity];
        for y in ys {
            let k = &b - &y * &y;
            for x in integer_cubic_roots(&a, &k) {
                let p = Point::Affine(Affine {
                    x: Rat::from_integer(x),
                    y: Rat::from_integer(y.clone()),
                });
                if self.is_lutz_nagell_torsion(&p) {
                    out.push(p);
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    fn is_lutz_nagell_torsion(&self, p: &Point) -> bool {
        let mut acc = p.clone();
        for _ in 1..MAX_TORSION_ORDER {
            acc = self.add_unchecked(&acc, p);
            if acc.is_infinity() {
                return true;
            }
            if !acc.is_integral() {
                return false;
            }
        }
        false
    }
}

impl fmt::Display for CurveW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})x + ({})", self.a, self.b)
    }
}

/// Integer roots of `x^3 + a x + k`, ascending. Exact bisection on the
/// monotone pieces of the cubic.
pub fn integer_cubic_roots(a: &Int, k: &Int) -> Vec<Int> {
    let f = |x: &Int| x * x * x + a * x + k;
    let bound = Int::one() + a.abs().max(k.abs());
    let mut cuts: Vec<Int> = vec![-bound.clone()];
    if a.is_negative() {
        // critical points at +-sqrt(-a/3); integer brackets around them
        let r: Int = (-a / Int::from(3)).sqrt();
        for c in [-&r - 1, -&r, -&r + 1, r.clone() - 1, r.clone(), r + 1] {
            if c > cuts[0] && c < bound {
                cuts.push(c);
            }
        }
    }
    cuts.push(bound);
    cuts.sort();
    cuts.dedup();
    let mut roots = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        for x in [lo, hi] {
            if f(x).is_zero() {
                roots.push(x.clone());
            }
        }
        let (flo, fhi) = (f(lo), f(hi));
        if flo.signum() * fhi.signum() >= Int::zero() {
            continue;
        }
        // strict sign change, monotone between cuts
        let (mut l, mut h) = (lo.clone(), hi.clone());
        let rising = fhi.is_positive();
        while &h - &l > Int::one() {
            let mid: Int = (&l + &h) >> 1;
            let fm = f(&mid);
            if fm.is_zero() {
                roots.push(mid.clone());
                break;
            }
            if fm.is_positive() == rising {
                h = mid;
            } else {
                l = mid;
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TorsionClass {
    Trivial,
    Z2,
    Z3,
    Z6,
}

impl TorsionClass {
    pub fn order(self) -> usize {
        match self {
            TorsionClass::Trivial => 1,
            TorsionClass::Z2 => 2,
            TorsionClass::Z3 => 3,
            TorsionClass::Z6 => 6,
        }
    }
}

/// Torsion structure of `y^2 = x^3 + b` for sixth-power-free `b`.
pub fn classify_torsion_x3b(b: &Int) -> Result<TorsionClass, CurveError> {
    let (reduced, u) = arith::sixth_power_free_reduce(b)?;
    if !u.is_one() || reduced != *b {
        return Err(CurveError::NotSixthPowerFree(b.clone()));
    }
    if b.is_one() {
        return Ok(TorsionClass::Z6);
    }
    if arith::is_perfect_power(b, 3).is_some() {
        return Ok(TorsionClass::Z2);
    }
    if arith::is_square(b) || *b == Int::from(-432) {
        return Ok(TorsionClass::Z3);
    }
    Ok(TorsionClass::Trivial)
}
