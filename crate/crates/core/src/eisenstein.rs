//! Eisenstein integers `u + v ε`, `ε = (1 + √-3) / 2`, so `ε^2 = ε - 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{self, ArithError, Int};
use crate::status::GroupClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EisError {
    #[error("division by zero")]
    DivByZero,
    #[error("zero has no factorization or cube class")]
    Zero,
    #[error("gcd(0, 0) is undefined")]
    BothZero,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EisInt {
    pub u: Int,
    pub v: Int,
}

impl EisInt {
    pub fn new(u: Int, v: Int) -> Self {
        EisInt { u, v }
    }

    pub fn of(u: i64, v: i64) -> Self {
        EisInt::new(Int::from(u), Int::from(v))
    }

    pub fn from_int(n: Int) -> Self {
        EisInt::new(n, Int::zero())
    }

    pub fn zero() -> Self {
        EisInt::of(0, 0)
    }

    pub fn one() -> Self {
        EisInt::of(1, 0)
    }

    pub fn epsilon() -> Self {
        EisInt::of(0, 1)
    }

    /// `(-1 + √-3) / 2 = ε - 1`
    pub fn omega() -> Self {
        EisInt::of(-1, 1)
    }

    /// `√-3 = 2ε - 1`
    pub fn sqrt_m3() -> Self {
        EisInt::of(-1, 2)
    }

    /// The six units in the order `ε, ω, -1, ω̄, ε̄, 1`.
    pub fn units() -> [EisInt; 6] {
        [
            EisInt::of(0, 1),
            EisInt::of(-1, 1),
            EisInt::of(-1, 0),
            EisInt::of(0, -1),
            EisInt::of(1, -1),
            EisInt::of(1, 0),
        ]
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn norm(&self) -> Int {
        &self.u * &self.u + &self.u * &self.v + &self.v * &self.v
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn conj(&self) -> EisInt {
        EisInt::new(&self.u + &self.v, -self.v.clone())
    }

    /// Rational iff the `ε` coordinate vanishes.
    pub fn as_int(&self) -> Option<&Int> {
        self.v.is_zero().then_some(&self.u)
    }

    pub fn pow(&self, k: u32) -> EisInt {
        let mut acc = EisInt::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `a = q b + r`, `q` the coordinate-wise rounding of `a / b`.
    pub fn divmod(&self, b: &EisInt) -> Result<(EisInt, EisInt), EisError> {
        if b.is_zero() {
            return Err(EisError::DivByZero);
        }
        let n = b.norm();
        let t = self * &b.conj();
        let round = |x: &Int| -> Int { (Int::from(2) * x + &n).div_floor(&(Int::from(2) * &n)) };
        let q = EisInt::new(round(&t.u), round(&t.v));
        let r = self - &(&q * b);
        Ok((q, r))
    }

    pub fn div_exact(&self, b: &EisInt) -> Option<EisInt> {
        if b.is_zero() {
            return None;
        }
        let n = b.norm();
        let t = self * &b.conj();
        if (&t.u % &n).is_zero() && (&t.v % &n).is_zero() {
            Some(EisInt::new(&t.u / &n, &t.v / &n))
        } else {
            None
        }
    }

    pub fn divides(&self, a: &EisInt) -> bool {
        a.div_exact(self).is_some()
    }

    /// `(unit, c)` with `self = unit * c` and `c` the associate having
    /// `u > 0, v >= 0`. Zero maps to `(1, 0)`.
    pub fn canonical(&self) -> (EisInt, EisInt) {
        if self.is_zero() {
            return (EisInt::one(), EisInt::zero());
        }
        for unit in EisInt::units() {
            let c = self * &unit;
            if c.u.is_positive() && !c.v.is_negative() {
                // self = c * unit^-1 and unit^-1 = conj(unit)
                return (unit.conj(), c);
            }
        }
        unreachable!("every nonzero element has an associate in the sector")
    }

    pub fn canon(&self) -> EisInt {
        self.canonical().1
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let u = self.u.to_f64().unwrap_or(f64::NAN);
        let v = self.v.to_f64().unwrap_or(f64::NAN);
        (u + v / 2.0, v * 3f64.sqrt() / 2.0)
    }
}

impl fmt::Display for EisInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_negative() {
            write!(f, "{}-{}e", self.u, -self.v.clone())
        } else {
            write!(f, "{}+{}e", self.u, self.v)
        }
    }
}

impl<'a> Add<&'a EisInt> for &'a EisInt {
    type Output = EisInt;
    fn add(self, o: &EisInt) -> EisInt {
        EisInt::new(&self.u + &o.u, &self.v + &o.v)
    }
}

impl<'a> Sub<&'a EisInt> for &'a EisInt {
    type Output = EisInt;
    fn sub(self, o: &EisInt) -> EisInt {
        EisInt::new(&self.u - &o.u, &self.v - &o.v)
    }
}

impl<'a> Mul<&'a EisInt> for &'a EisInt {
    type Output = EisInt;
    fn mul(self, o: &EisInt) -> EisInt {
        let bd = &self.v * &o.v;
        EisInt::new(
            &self.u * &o.u - &bd,
            &self.u * &o.v + &self.v * &o.u + bd,
        )
    }
}

impl Add for EisInt {
    type Output = EisInt;
    fn add(self, o: EisInt) -> EisInt {
        &self + &o
    }
}

impl Sub for EisInt {
    type Output = EisInt;
    fn sub(self, o: EisInt) -> EisInt {
        &self - &o
    }
}

impl Mul for EisInt {
    type Output = EisInt;
    fn mul(self, o: EisInt) -> EisInt {
        &self * &o
    }
}

impl Neg for EisInt {
    type Output = EisInt;
    fn neg(self) -> EisInt {
        EisInt::new(-self.u, -self.v)
    }
}

impl Neg for &EisInt {
    type Output = EisInt;
    fn neg(self) -> EisInt {
        EisInt::new(-self.u.clone(), -self.v.clone())
    }
}

/// Canonical greatest common divisor.
pub fn eis_gcd(a: &EisInt, b: &EisInt) -> Result<EisInt, EisError> {
    if a.is_zero() && b.is_zero() {
        return Err(EisError::BothZero);
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = x.divmod(&y)?;
        x = y;
        y = r;
    }
    Ok(x.canon())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EisFactorization {
    pub unit: EisInt,
    /// Canonical primes, ordered by norm then coordinates.
    pub factors: Vec<(EisInt, u32)>,
}

impl EisFactorization {
    pub fn value(&self) -> EisInt {
        let mut acc = self.unit.clone();
        for (p, e) in &self.factors {
            acc = &acc * &p.pow(*e);
        }
        acc
    }
}

/// `1 + ε`, the canonical prime above 3.
pub fn ramified_prime() -> EisInt {
    EisInt::of(1, 1)
}

/// Canonical primes above the rational prime `p`.
pub fn primes_above(p: &Int) -> Vec<EisInt> {
    let three = Int::from(3);
    if *p == three {
        return vec![ramified_prime()];
    }
    if (p % &three) == Int::from(2) {
        return vec![EisInt::from_int(p.clone())];
    }
    // a^2 + ab + b^2 = p, search a
    let four_p = Int::from(4) * p;
    let mut a = Int::zero();
    loop {
        let disc = &four_p - Int::from(3) * &a * &a;
        if disc.is_negative() {
            panic!("{p} = 1 mod 3 must be a norm");
        }
        if let Some(r) = arith::is_perfect_power(&disc, 2) {
            let twice_b = r - &a;
            if twice_b.is_even() && !twice_b.is_zero() {
                let pi = EisInt::new(a.clone(), twice_b / 2).canon();
                let mut out = vec![pi.clone(), pi.conj().canon()];
                out.sort_by(|x, y| (x.norm(), x).cmp(&(y.norm(), y)));
                out.dedup();
                return out;
            }
        }
        a += 1;
    }
}

pub fn eis_factor(z: &EisInt) -> Result<EisFactorization, EisError> {
    if z.is_zero() {
        return Err(EisError::Zero);
    }
    let nf = arith::factorize(&z.norm())?;
    let mut rest = z.clone();
    let mut factors = Vec::new();
    for (p, _) in &nf.factors {
        for pi in primes_above(p) {
            let mut e = 0u32;
            while let Some(q) = rest.div_exact(&pi) {
                rest = q;
                e += 1;
            }
            if e > 0 {
                factors.push((pi, e));
            }
        }
    }
    debug_assert!(rest.is_unit());
    factors.sort_by(|x, y| (x.0.norm(), &x.0).cmp(&(y.0.norm(), &y.0)));
    Ok(EisFactorization {
        unit: rest,
        factors,
    })
}

/// Representatives of the unit group modulo cubes `{1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eta {
    One,
    Eps,
    Omega,
}

impl Eta {
    pub fn value(self) -> EisInt {
        match self {
            Eta::One => EisInt::one(),
            Eta::Eps => EisInt::epsilon(),
            Eta::Omega => EisInt::omega(),
        }
    }

    /// `η^{-1}` modulo unit cubes: `ε^{-1} = ε̄ ≡ ω`, `ω^{-1} = ω̄ ≡ ε`.
    pub fn inverse(self) -> Eta {
        match self {
            Eta::One => Eta::One,
            Eta::Eps => Eta::Omega,
            Eta::Omega => Eta::Eps,
        }
    }

    pub fn all() -> [Eta; 3] {
        [Eta::One, Eta::Eps, Eta::Omega]
    }

    fn of_unit(u: &EisInt) -> Eta {
        let plain = if u.u.is_negative() || (u.u.is_zero() && u.v.is_negative()) {
            -u
        } else {
            u.clone()
        };
        if plain == EisInt::one() {
            Eta::One
        } else if plain == EisInt::epsilon() {
            Eta::Eps
        } else if plain == -EisInt::omega() {
            Eta::Omega
        } else {
            unreachable!("not a unit: {u}")
        }
    }
}

impl fmt::Display for Eta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eta::One => write!(f, "1"),
            Eta::Eps => write!(f, "eps"),
            Eta::Omega => write!(f, "omega"),
        }
    }
}

/// `η A B^2` modulo cubes with `A`, `B` canonical, square-free and coprime.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EisClass {
    pub eta: Eta,
    pub a: EisInt,
    pub b: EisInt,
}

impl EisClass {
    pub fn one() -> Self {
        EisClass {
            eta: Eta::One,
            a: EisInt::one(),
            b: EisInt::one(),
        }
    }

    pub fn value(&self) -> EisInt {
        &(&self.eta.value() * &self.a) * &(&self.b * &self.b)
    }

    pub fn inverse(&self) -> EisClass {
        EisClass {
            eta: self.eta.inverse(),
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }
}

impl fmt::Display for EisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*({})*({})^2", self.eta, self.a, self.b)
    }
}

impl GroupClass for EisClass {
    fn identity() -> Self {
        EisClass::one()
    }

    fn times(&self, other: &Self) -> Self {
        eis_cubeclass(&(&self.value() * &other.value())).expect("class values are nonzero")
    }
}

pub fn eis_cubeclass(z: &EisInt) -> Result<EisClass, EisError> {
    let f = eis_factor(z)?;
    let mut a = EisInt::one();
    let mut b = EisInt::one();
    let mut unit = f.unit.clone();
    for (p, e) in &f.factors {
        match e % 3 {
            1 => a = &a * p,
            2 => b = &b * p,
            _ => {}
        }
    }
    let (ua, a) = a.canonical();
    let (ub, b) = b.canonical();
    // z = unit * A_raw * B_raw^2 * cube, A_raw = ua A, B_raw = ub B
    unit = &unit * &(&ua * &(&ub * &ub));
    Ok(EisClass {
        eta: Eta::of_unit(&unit),
        a,
        b,
    })
}

/// Class of `num / den`, via `num * den^2`.
pub fn eis_cubeclass_ratio(num: &EisInt, den: &EisInt) -> Result<EisClass, EisError> {
    if den.is_zero() {
        return Err(EisError::DivByZero);
    }
    eis_cubeclass(&(num * &(den * den)))
}
