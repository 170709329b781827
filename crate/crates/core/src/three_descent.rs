//! Descent via 3-isogeny for `E: y^2 = x^3 + e^2` and
//! `Ẽ: y^2 = x^3 - 27 e^2`, `e > 1` cube-free.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{self, ArithError, Int, Rat};
use crate::eisenstein::{self, EisClass, EisError, EisInt, Eta};
use crate::rank::{self, RankBounds};
use crate::status::{
    self, Certificate, ClassStatus, GroupClass, Inconsistent, Source, Status, Witness,
};
use crate::weierstrass::{CurveError, CurveW, Point};

pub const DEFAULT_SEARCH_BOUND: u64 = 200;
pub const DEFAULT_LOCAL_BOUND: u64 = 121;
pub const DEFAULT_MAX_CLASSES: usize = 729;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThreeDescentError {
    #[error("e = {0} must exceed 1")]
    TooSmall(Int),
    #[error("e = {0} is not cube-free; reduce 4R^2N to its cube-free part first")]
    NotCubeFree(Int),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Eis(#[from] EisError),
    #[error(transparent)]
    Inconsistent(#[from] Inconsistent),
}

/// `A B^2` in `Q*/Q*^3`, `A`, `B` positive, coprime, square-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeClass {
    pub a: Int,
    pub b: Int,
}

impl CubeClass {
    pub fn one() -> Self {
        CubeClass {
            a: Int::one(),
            b: Int::one(),
        }
    }

    pub fn new(a: i64, b: i64) -> Self {
        CubeClass {
            a: Int::from(a),
            b: Int::from(b),
        }
    }

    pub fn of_int(n: &Int) -> Result<Self, ArithError> {
        let t = arith::cubefree_decompose(&n.abs())?;
        Ok(CubeClass { a: t.a, b: t.b })
    }

    /// `n/d ≡ n d^2`
    pub fn of_rat(r: &Rat) -> Result<Self, ArithError> {
        Self::of_int(&(r.numer() * r.denom() * r.denom()))
    }

    pub fn value(&self) -> Int {
        &self.a * &self.b * &self.b
    }

    pub fn inverse(&self) -> Self {
        CubeClass {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }
}

impl GroupClass for CubeClass {
    fn identity() -> Self {
        CubeClass::one()
    }

    fn times(&self, other: &Self) -> Self {
        CubeClass::of_int(&(self.value() * other.value())).expect("class values are nonzero")
    }
}

impl fmt::Display for CubeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{}^2", self.a, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EPair {
    pub e: Int,
    pub curve: CurveW,
    pub curve_tilde: CurveW,
    pub torsion: Vec<Point>,
    pub torsion_tilde: Vec<Point>,
}

pub fn make_e_pair(e: &Int) -> Result<EPair, ThreeDescentError> {
    if *e <= Int::one() {
        return Err(ThreeDescentError::TooSmall(e.clone()));
    }
    if !arith::is_cubefree(e)? {
        return Err(ThreeDescentError::NotCubeFree(e.clone()));
    }
    let e2 = e * e;
    let curve = CurveW::from_ints(Int::zero(), e2.clone())?;
    let curve_tilde = CurveW::from_ints(Int::zero(), Int::from(-27) * &e2)?;
    Ok(EPair {
        e: e.clone(),
        torsion: curve.torsion_subgroup()?,
        torsion_tilde: curve_tilde.torsion_subgroup()?,
        curve,
        curve_tilde,
    })
}

fn ri(n: Int) -> Rat {
    Rat::from_integer(n)
}

impl EPair {
    fn e_rat(&self) -> Rat {
        ri(self.e.clone())
    }

    /// `(0, e)`
    pub fn p0_plus(&self) -> Point {
        self.curve.point(Rat::zero(), self.e_rat()).expect("on curve")
    }

    /// `(0, -e)`
    pub fn p0_minus(&self) -> Point {
        self.curve.point(Rat::zero(), -self.e_rat()).expect("on curve")
    }

    /// `E -> Ẽ`: `x̃ = (x^3 + 4e^2)/x^2`, `ỹ = y (x^3 - 8e^2)/x^3`.
    pub fn psi(&self, p: &Point) -> Result<Point, ThreeDescentError> {
        if !self.curve.contains(p) {
            return Err(CurveError::ForeignPoint.into());
        }
        let (x, y) = match p.affine() {
            None => return Ok(Point::Infinity),
            Some(q) => (q.x(), q.y()),
        };
        if x.is_zero() {
            return Ok(Point::Infinity);
        }
        let e2 = ri(&self.e * &self.e);
        let x3 = x * x * x;
        let xt = (&x3 + ri(Int::from(4)) * &e2) / (x * x);
        let yt = y * (&x3 - ri(Int::from(8)) * &e2) / &x3;
        Ok(self.curve_tilde.point(xt, yt)?)
    }

    /// `Ẽ -> E`: `x = (x̃^3 - 108e^2)/(9x̃^2)`, `y = ỹ (x̃^3 + 216e^2)/(27x̃^3)`.
    pub fn psi_tilde(&self, p: &Point) -> Result<Point, ThreeDescentError> {
        if !self.curve_tilde.contains(p) {
            return Err(CurveError::ForeignPoint.into());
        }
        let (x, y) = match p.affine() {
            None => return Ok(Point::Infinity),
            Some(q) => (q.x(), q.y()),
        };
        // x̃ = 0 would need -27e^2 to be a square
        let e2 = ri(&self.e * &self.e);
        let x3 = x * x * x;
        let xo = (&x3 - ri(Int::from(108)) * &e2) / (ri(Int::from(9)) * x * x);
        let yo = y * (&x3 + ri(Int::from(216)) * &e2) / (ri(Int::from(27)) * &x3);
        Ok(self.curve.point(xo, yo)?)
    }

    /// `α∓(P)`: class of `y ∓ e`, with `α₋(0, e) = 1/(2e)` and `α₊(0, -e) = -1/(2e)`.
    pub fn alpha(&self, p: &Point, sign: Sign) -> Result<CubeClass, ThreeDescentError> {
        if !self.curve.contains(p) {
            return Err(CurveError::ForeignPoint.into());
        }
        let y = match p.y() {
            None => return Ok(CubeClass::one()),
            Some(y) => y,
        };
        let e = self.e_rat();
        let v = match sign {
            Sign::Minus => y - &e,
            Sign::Plus => y + &e,
        };
        if v.is_zero() {
            // the exceptional value is ±1/(2e); the sign is a cube
            return Ok(CubeClass::of_rat(&(ri(Int::one()) / (ri(Int::from(2)) * e)))?);
        }
        Ok(CubeClass::of_rat(&v)?)
    }

    /// `α̃∓(P̃)`: class of `ỹ ∓ 3√-3 e` in `K*/K*^3`.
    pub fn alpha_tilde(&self, p: &Point, sign: Sign) -> Result<EisClass, ThreeDescentError> {
        if !self.curve_tilde.contains(p) {
            return Err(CurveError::ForeignPoint.into());
        }
        let y = match p.y() {
            None => return Ok(EisClass::one()),
            Some(y) => y,
        };
        let (n, d) = (y.numer().clone(), y.denom().clone());
        // (n/d ∓ 3√-3 e) * d^3 = d^2 (n ∓ 3√-3 e d), with 3√-3 = -3 + 6ε
        let ed = &self.e * &d;
        let core = match sign {
            Sign::Minus => EisInt::new(&n + Int::from(3) * &ed, Int::from(-6) * &ed),
            Sign::Plus => EisInt::new(&n - Int::from(3) * &ed, Int::from(6) * &ed),
        };
        let d2 = EisInt::from_int(&d * &d);
        Ok(eisenstein::eis_cubeclass(&(&d2 * &core))?)
    }
}

/// Coprime pairs of positive square-free divisors of `2e`.
pub fn enum_pairs(e: &Int) -> Result<Vec<(Int, Int)>, ArithError> {
    let divs = arith::factorize(&(Int::from(2) * e))?.squarefree_divisors();
    let mut out = Vec::new();
    for a in &divs {
        for b in &divs {
            if a.gcd(b).is_one() {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out.sort_by(|x, y| (&x.0 * &x.1, &x.1).cmp(&(&y.0 * &y.1, &y.1)));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThreeBounds {
    pub search_bound: u64,
    pub local_bound: u64,
    /// Eisenstein-side sweeps with more candidates are skipped.
    pub max_classes: usize,
}

impl Default for ThreeBounds {
    fn default() -> Self {
        ThreeBounds {
            search_bound: DEFAULT_SEARCH_BOUND,
            local_bound: DEFAULT_LOCAL_BOUND,
            max_classes: DEFAULT_MAX_CLASSES,
        }
    }
}

/// `(A B^2) X^3 + (A^2 B) Y^3 + (2e) Z^3 = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSpace3 {
    pub a: Int,
    pub b: Int,
    pub e: Int,
}

impl HomSpace3 {
    pub fn coeffs(&self) -> (Int, Int, Int) {
        (
            &self.a * &self.b * &self.b,
            &self.a * &self.a * &self.b,
            Int::from(2) * &self.e,
        )
    }

    pub fn class(&self) -> CubeClass {
        CubeClass {
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    pub fn local_obstruction(&self, local_bound: u64) -> Result<Option<u64>, ArithError> {
        let mut primes = vec![3u64];
        for p in arith::factorize(&(Int::from(2) * &self.e))?.primes() {
            if let Some(p) = p.to_u64() {
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
        }
        primes.sort();
        let (c1, c2, c3) = self.coeffs();
        for p in primes {
            let mut pk = p;
            while pk <= local_bound {
                if !cubic_solvable_mod(&[&c1, &c2, &c3], p, pk) {
                    return Ok(Some(pk));
                }
                pk *= p;
            }
        }
        Ok(None)
    }

    /// First `(X, Y, Z)` with `1 <= Z <= bound`, `|X| <= bound`.
    pub fn search(&self, bound: u64) -> Option<(Int, Int, Int)> {
        let (c1, c2, c3) = self.coeffs();
        let lim = Int::from(1u64 << 40);
        if c1 < lim && c2 < lim && c3 < lim && bound <= 1 << 12 {
            let (c1, c2, c3) = (c1.to_i128()?, c2.to_i128()?, c3.to_i128()?);
            let b = bound as i128;
            for z in 1..=b {
                let cz = c3 * z * z * z;
                for x in -b..=b {
                    let t = -(c1 * x * x * x + cz);
                    if t % c2 != 0 {
                        continue;
                    }
                    let w = t / c2;
                    let y = w.cbrt();
                    if y * y * y == w {
                        return Some((Int::from(x), Int::from(y), Int::from(z)));
                    }
                }
            }
            return None;
        }
        for z in 1..=bound {
            let z = Int::from(z);
            let cz = &c3 * &z * &z * &z;
            let b = bound as i64;
            for x in -b..=b {
                let x = Int::from(x);
                let t = -(&c1 * &x * &x * &x + &cz);
                if !(&t % &c2).is_zero() {
                    continue;
                }
                if let Some(y) = arith::is_perfect_power(&(t / &c2), 3) {
                    return Some((x, y, z));
                }
            }
        }
        None
    }

    /// Point with `α₋ = A B^2` from a solution with `Z != 0`.
    pub fn reconstruct(&self, pair: &EPair, x: &Int, y: &Int, z: &Int) -> Result<Point, CurveError> {
        let s = -(&self.a * &self.b * &self.b * x * x * x);
        let q = -z.clone();
        let m = -(&self.a * &self.b * x * y);
        let n = &s + &pair.e * &q * &q * &q;
        let q2 = &q * &q;
        pair.curve.point(Rat::new(m, q2.clone()), Rat::new(n, &q2 * &q))
    }
}

/// Primitive solutions of `Σ c_i X_i^3 ≡ 0 (mod p^k)` exist.
fn cubic_solvable_mod(c: &[&Int; 3], p: u64, pk: u64) -> bool {
    let m = pk as i64;
    let red = |v: &Int| v.mod_floor(&Int::from(pk)).to_i64().unwrap();
    let (c1, c2, c3) = (red(c[0]), red(c[1]), red(c[2]));
    let cube: Vec<i64> = (0..m).map(|r| r * r % m * r % m).collect();
    let mut any = vec![false; pk as usize];
    let mut unit = vec![false; pk as usize];
    for z in 0..m {
        let v = (c3 * cube[z as usize] % m) as usize;
        any[v] = true;
        if z % p as i64 != 0 {
            unit[v] = true;
        }
    }
    let pi = p as i64;
    for x in 0..m {
        for y in 0..m {
            let need = (m - (c1 * cube[x as usize] + c2 * cube[y as usize]) % m) % m;
            let ok = if x % pi == 0 && y % pi == 0 {
                unit[need as usize]
            } else {
                any[need as usize]
            };
            if ok {
                return true;
            }
        }
    }
    false
}

pub fn solve_homcubic(
    pair: &EPair,
    space: &HomSpace3,
    bounds: ThreeBounds,
) -> Result<Status<CubeClass>, ThreeDescentError> {
    if space.a.is_one() && space.b.is_one() {
        return Ok(Status::ProvedIn(Witness {
            point: Point::Infinity,
            source: Source::Cubic {
                x: Int::one(),
                y: Int::from(-1),
                z: Int::zero(),
            },
        }));
    }
    if let Some(modulus) = space.local_obstruction(bounds.local_bound)? {
        return Ok(Status::ProvedOut(Certificate::Local { modulus }));
    }
    if let Some((x, y, z)) = space.search(bounds.search_bound) {
        let point = space.reconstruct(pair, &x, &y, &z)?;
        debug_assert_eq!(pair.alpha(&point, Sign::Minus)?, space.class());
        return Ok(Status::ProvedIn(Witness {
            point,
            source: Source::Cubic { x, y, z },
        }));
    }
    Ok(Status::Unknown)
}

// ---- Eisenstein side -------------------------------------------------------

/// `(η A B^2) X^3 + (η^{-1} A^2 B) Y^3 + (6√-3 e) Z^3 = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EisHomSpace3 {
    pub cls: EisClass,
    pub e: Int,
}

impl EisHomSpace3 {
    /// `η^{-1}` is taken as the exact inverse unit `η̄`.
    pub fn coeffs(&self) -> (EisInt, EisInt, EisInt) {
        let eta = self.cls.eta.value();
        let (a, b) = (&self.cls.a, &self.cls.b);
        let c1 = &(&eta * a) * &(b * b);
        let c2 = &(&eta.conj() * &(a * a)) * b;
        let c3 = &EisInt::of(-6, 12) * &EisInt::from_int(self.e.clone());
        (c1, c2, c3)
    }

    /// `(x̃, ỹ)` if both are rational and the point lies on `Ẽ`.
    pub fn reconstruct(
        &self,
        pair: &EPair,
        x: &EisInt,
        y: &EisInt,
        z: &EisInt,
    ) -> Option<Point> {
        if z.is_zero() {
            return None;
        }
        let (c1, _, _) = self.coeffs();
        let ab = &self.cls.a * &self.cls.b;
        let xnum = -(&(&ab * x) * y);
        let z2 = z * z;
        let z3 = &z2 * z;
        let three_root = &EisInt::of(-3, 6) * &EisInt::from_int(pair.e.clone());
        let ynum = &(&c1 * &x.pow(3)) + &(&three_root * &z3);
        let xr = eis_fraction_to_rat(&xnum, &z2)?;
        let yr = eis_fraction_to_rat(&ynum, &z3)?;
        pair.curve_tilde.point(xr, yr).ok()
    }
}

fn eis_fraction_to_rat(n: &EisInt, d: &EisInt) -> Option<Rat> {
    let t = n * &d.conj();
    t.v.is_zero().then(|| Rat::new(t.u, d.norm()))
}

/// Eisenstein integers with small coordinates for the search loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Ez {
    u: i128,
    v: i128,
}

impl Ez {
    fn of(z: &EisInt) -> Option<Ez> {
        Some(Ez {
            u: z.u.to_i128()?,
            v: z.v.to_i128()?,
        })
    }

    fn big(self) -> EisInt {
        EisInt::new(Int::from(self.u), Int::from(self.v))
    }

    fn mul(self, o: Ez) -> Option<Ez> {
        let bd = self.v.checked_mul(o.v)?;
        Some(Ez {
            u: self.u.checked_mul(o.u)?.checked_sub(bd)?,
            v: self
                .u
                .checked_mul(o.v)?
                .checked_add(self.v.checked_mul(o.u)?)?
                .checked_add(bd)?,
        })
    }

    fn add(self, o: Ez) -> Option<Ez> {
        Some(Ez {
            u: self.u.checked_add(o.u)?,
            v: self.v.checked_add(o.v)?,
        })
    }

    fn cube(self) -> Option<Ez> {
        self.mul(self)?.mul(self)
    }

    fn norm(self) -> i128 {
        self.u * self.u + self.u * self.v + self.v * self.v
    }

    fn div_exact(self, d: Ez) -> Option<Ez> {
        let n = d.norm();
        let t = self.mul(Ez {
            u: d.u + d.v,
            v: -d.v,
        })?;
        (t.u % n == 0 && t.v % n == 0).then_some(Ez {
            u: t.u / n,
            v: t.v / n,
        })
    }

    fn cbrt(self) -> Option<Ez> {
        if self.u == 0 && self.v == 0 {
            return Some(self);
        }
        let re = self.u as f64 + self.v as f64 / 2.0;
        let im = self.v as f64 * 3f64.sqrt() / 2.0;
        let r = re.hypot(im).cbrt();
        let th = im.atan2(re) / 3.0;
        for k in 0..3 {
            let a = th + k as f64 * 2.0 * std::f64::consts::PI / 3.0;
            let (cr, ci) = (r * a.cos(), r * a.sin());
            let v0 = (2.0 * ci / 3f64.sqrt()).round() as i128;
            let u0 = (cr - v0 as f64 / 2.0).round() as i128;
            for du in -1..=1 {
                for dv in -1..=1 {
                    let c = Ez {
                        u: u0 + du,
                        v: v0 + dv,
                    };
                    if c.cube() == Some(self) {
                        return Some(c);
                    }
                }
            }
        }
        None
    }
}

/// Elements of norm at most `n`.
fn norm_ball(n: u64) -> Vec<Ez> {
    let n = n as i128;
    let lim = ((4 * n / 3) as f64).sqrt().ceil() as i128 + 1;
    let mut out = Vec::new();
    for v in -lim..=lim {
        for u in -2 * lim..=2 * lim {
            let z = Ez { u, v };
            if z.norm() <= n {
                out.push(z);
            }
        }
    }
    out.sort_by_key(|z| (z.norm(), z.u, z.v));
    out
}

pub fn eis_search(space: &EisHomSpace3, pair: &EPair, bound: u64) -> Option<(EisInt, EisInt, EisInt, Point)> {
    let (c1, c2, c3) = space.coeffs();
    let (c1, c2, c3) = (Ez::of(&c1)?, Ez::of(&c2)?, Ez::of(&c3)?);
    let ball = norm_ball(bound);
    let zs: Vec<Ez> = ball
        .iter()
        .copied()
        .filter(|z| z.u > 0 && z.v >= 0)
        .collect();
    let xc: Vec<(Ez, Ez)> = ball.iter().map(|x| (*x, x.cube().unwrap())).collect();
    for z in &zs {
        let cz = match z.cube().and_then(|v| c3.mul(v)) {
            Some(v) => v,
            None => continue,
        };
        for (x, x3) in &xc {
            let t = match c1.mul(*x3).and_then(|v| v.add(cz)) {
                Some(t) => Ez { u: -t.u, v: -t.v },
                None => continue,
            };
            let w = match t.div_exact(c2) {
                Some(w) => w,
                None => continue,
            };
            if let Some(y) = w.cbrt() {
                let (xb, yb, zb) = (x.big(), y.big(), z.big());
                if let Some(p) = space.reconstruct(pair, &xb, &yb, &zb) {
                    return Some((xb, yb, zb, p));
                }
            }
        }
    }
    None
}

/// Residues mod `m = p^k` as `(u, v)`.
fn eis_solvable_mod(c: &[EisInt; 3], p: u64, pk: u64, pi: &EisInt) -> bool {
    let m = pk as i64;
    let red = |z: &EisInt| {
        (
            z.u.mod_floor(&Int::from(pk)).to_i64().unwrap(),
            z.v.mod_floor(&Int::from(pk)).to_i64().unwrap(),
        )
    };
    let mulm = |a: (i64, i64), b: (i64, i64)| {
        let bd = a.1 * b.1 % m;
        ((a.0 * b.0 - bd).rem_euclid(m), (a.0 * b.1 + a.1 * b.0 + bd).rem_euclid(m))
    };
    let pic = red(&pi.conj());
    let inert = pi.as_int().is_some_and(|v| *v == Int::from(p));
    let pm = p as i64;
    // z divisible by π: for inert π = p coordinates vanish mod p, else p | z π̄
    let div_pi = |z: (i64, i64)| {
        let w = if inert { z } else { mulm(z, pic) };
        w.0 % pm == 0 && w.1 % pm == 0
    };
    let (c1, c2, c3) = (red(&c[0]), red(&c[1]), red(&c[2]));
    let size = (m * m) as usize;
    let idx = |z: (i64, i64)| (z.0 * m + z.1) as usize;
    let residues: Vec<(i64, i64)> = (0..m).flat_map(|u| (0..m).map(move |v| (u, v))).collect();
    let cube: Vec<(i64, i64)> = residues.iter().map(|&r| mulm(mulm(r, r), r)).collect();
    let divisible: Vec<bool> = residues.iter().map(|&r| div_pi(r)).collect();
    let mut any = vec![false; size];
    let mut unit = vec![false; size];
    for (i, z3) in cube.iter().enumerate() {
        let v = idx(mulm(c3, *z3));
        any[v] = true;
        if !divisible[i] {
            unit[v] = true;
        }
    }
    for (i, x3) in cube.iter().enumerate() {
        let a = mulm(c1, *x3);
        for (j, y3) in cube.iter().enumerate() {
            let b = mulm(c2, *y3);
            let need = ((m - (a.0 + b.0) % m) % m, (m - (a.1 + b.1) % m) % m);
            let ok = if divisible[i] && divisible[j] {
                unit[idx(need)]
            } else {
                any[idx(need)]
            };
            if ok {
                return true;
            }
        }
    }
    false
}

impl EisHomSpace3 {
    /// `N(ỹ - 3√-3 e) = ỹ^2 + 27 e^2 = x̃^3`, so image classes have cube norm.
    pub fn norm_is_cube(&self) -> bool {
        arith::is_perfect_power(&self.cls.value().norm(), 3).is_some()
    }

    /// Moduli `p^k` whose residue ring has at most `local_bound` elements.
    pub fn local_obstruction(&self, local_bound: u64) -> Result<Option<u64>, EisError> {
        let (c1, c2, c3) = self.coeffs();
        let c = [c1, c2, c3];
        for p in eis_primes(&self.e)? {
            for pi in eisenstein::primes_above(&Int::from(p)) {
                let mut pk = p;
                while pk * pk <= local_bound {
                    if !eis_solvable_mod(&c, p, pk, &pi) {
                        return Ok(Some(pk));
                    }
                    pk *= p;
                }
            }
        }
        Ok(None)
    }
}

/// Rational primes below the Eisenstein prime divisors of `6√-3 e`.
fn eis_primes(e: &Int) -> Result<Vec<u64>, ArithError> {
    let mut primes = vec![2u64, 3];
    for p in arith::factorize(e)?.primes() {
        if let Some(p) = p.to_u64() {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    primes.sort();
    Ok(primes)
}

/// Classes `η A B^2` with `A`, `B` canonical coprime square-free divisors of `6√-3 e`.
pub fn eis_candidates(e: &Int) -> Result<Vec<EisClass>, ThreeDescentError> {
    let mut primes: Vec<EisInt> = Vec::new();
    for p in eis_primes(e)? {
        primes.extend(eisenstein::primes_above(&Int::from(p)));
    }
    // each prime goes to A, to B, or to neither
    let mut pairs: Vec<(EisInt, EisInt)> = vec![(EisInt::one(), EisInt::one())];
    for pi in &primes {
        let mut next = Vec::with_capacity(pairs.len() * 3);
        for (a, b) in &pairs {
            next.push((a.clone(), b.clone()));
            next.push((a * pi, b.clone()));
            next.push((a.clone(), b * pi));
        }
        pairs = next;
    }
    let mut out = Vec::with_capacity(pairs.len() * 3);
    for eta in Eta::all() {
        for (a, b) in &pairs {
            out.push(EisClass {
                eta,
                a: a.canon(),
                b: b.canon(),
            });
        }
    }
    out.sort();
    Ok(out)
}

pub fn solve_eis_homcubic(
    pair: &EPair,
    space: &EisHomSpace3,
    bounds: ThreeBounds,
) -> Result<Status<EisClass>, ThreeDescentError> {
    if space.cls == EisClass::one() {
        return Ok(Status::ProvedIn(Witness {
            point: Point::Infinity,
            source: Source::EisCubic {
                x: EisInt::one(),
                y: EisInt::of(-1, 0),
                z: EisInt::zero(),
            },
        }));
    }
    if !space.norm_is_cube() {
        return Ok(Status::ProvedOut(Certificate::Norm));
    }
    if let Some(modulus) = space.local_obstruction(bounds.local_bound)? {
        return Ok(Status::ProvedOut(Certificate::Local { modulus }));
    }
    if let Some((x, y, z, point)) = eis_search(space, pair, bounds.search_bound) {
        debug_assert_eq!(pair.alpha_tilde(&point, Sign::Minus)?, space.cls);
        return Ok(Status::ProvedIn(Witness {
            point,
            source: Source::EisCubic { x, y, z },
        }));
    }
    Ok(Status::Unknown)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeDescent {
    pub pair: EPair,
    pub e_side: Vec<ClassStatus<CubeClass>>,
    pub tilde_side: Vec<ClassStatus<EisClass>>,
    /// Cube-norm Eisenstein candidates exceeded `max_classes`; only seeds
    /// and the norm test were used.
    pub tilde_skipped: bool,
    pub rank: RankBounds,
}

impl ThreeDescent {
    pub fn e_image(&self) -> Vec<CubeClass> {
        self.e_side
            .iter()
            .filter(|s| s.status.is_in())
            .map(|s| s.class.clone())
            .collect()
    }
}

pub fn alpha3_image(
    pair: &EPair,
    bounds: ThreeBounds,
) -> Result<Vec<ClassStatus<CubeClass>>, ThreeDescentError> {
    let mut table: BTreeMap<CubeClass, Status<CubeClass>> = enum_pairs(&pair.e)?
        .into_iter()
        .map(|(a, b)| (CubeClass { a, b }, Status::Unknown))
        .collect();
    for p in &pair.torsion {
        let cls = pair.alpha(p, Sign::Minus)?;
        let entry = table.entry(cls).or_insert(Status::Unknown);
        if !entry.is_in() {
            *entry = Status::ProvedIn(Witness {
                point: p.clone(),
                source: Source::Torsion,
            });
        }
    }
    let open: Vec<CubeClass> = table
        .iter()
        .filter(|(_, s)| s.is_unknown())
        .map(|(c, _)| c.clone())
        .collect();
    let decided: Vec<(CubeClass, Status<CubeClass>)> = open
        .par_iter()
        .map(|c| {
            let space = HomSpace3 {
                a: c.a.clone(),
                b: c.b.clone(),
                e: pair.e.clone(),
            };
            solve_homcubic(pair, &space, bounds).map(|s| (c.clone(), s))
        })
        .collect::<Result<_, _>>()?;
    table.extend(decided);
    let curve = pair.curve.clone();
    status::close_table(&mut table, |p, q| curve.add(p, q).expect("witness points lie on the curve"))?;
    Ok(status::into_list(table))
}

pub fn alpha3_tilde_image(
    pair: &EPair,
    bounds: ThreeBounds,
) -> Result<(Vec<ClassStatus<EisClass>>, bool), ThreeDescentError> {
    let cands = eis_candidates(&pair.e)?;
    let admissible = cands
        .iter()
        .filter(|c| arith::is_perfect_power(&c.value().norm(), 3).is_some())
        .count();
    let skipped = admissible > bounds.max_classes;
    let mut table: BTreeMap<EisClass, Status<EisClass>> = cands
        .into_iter()
        .map(|c| {
            let norm_ok = arith::is_perfect_power(&c.value().norm(), 3).is_some();
            let st = if norm_ok {
                Status::Unknown
            } else {
                Status::ProvedOut(Certificate::Norm)
            };
            (c, st)
        })
        .collect();
    table.insert(
        EisClass::one(),
        Status::ProvedIn(Witness {
            point: Point::Infinity,
            source: Source::Torsion,
        }),
    );
    for p in &pair.torsion_tilde {
        let cls = pair.alpha_tilde(p, Sign::Minus)?;
        let entry = table.entry(cls).or_insert(Status::Unknown);
        if !entry.is_in() {
            *entry = Status::ProvedIn(Witness {
                point: p.clone(),
                source: Source::Torsion,
            });
        }
    }
    if !skipped {
        let open: Vec<EisClass> = table
            .iter()
            .filter(|(_, s)| s.is_unknown())
            .map(|(c, _)| c.clone())
            .collect();
        let decided: Vec<(EisClass, Status<EisClass>)> = open
            .par_iter()
            .map(|c| {
                let space = EisHomSpace3 {
                    cls: c.clone(),
                    e: pair.e.clone(),
                };
                solve_eis_homcubic(pair, &space, bounds).map(|s| (c.clone(), s))
            })
            .collect::<Result<_, _>>()?;
        table.extend(decided);
    }
    let curve = pair.curve_tilde.clone();
    status::close_table(&mut table, |p, q| curve.add(p, q).expect("witness points lie on the curve"))?;
    Ok((status::into_list(table), skipped))
}

/// `3^(r+1) = |α₋(E)| |α̃₋(Ẽ)|`, as an interval.
pub fn rank_bounds_3(pair: &EPair, bounds: ThreeBounds) -> Result<ThreeDescent, ThreeDescentError> {
    let e_side = alpha3_image(pair, bounds)?;
    let (tilde_side, tilde_skipped) = alpha3_tilde_image(pair, bounds)?;
    let lo = (status::count_in(&e_side), status::count_in(&tilde_side));
    let hi = (
        e_side.len() - status::count_out(&e_side),
        tilde_side.len() - status::count_out(&tilde_side),
    );
    let undecided = status::count_unknown(&e_side) + status::count_unknown(&tilde_side);
    let rank = rank::bounds_from_counts(3, lo, hi, 1, undecided);
    Ok(ThreeDescent {
        pair: pair.clone(),
        e_side,
        tilde_side,
        tilde_skipped,
        rank,
    })
}
