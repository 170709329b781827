//! Integer and rational scalars, factorization and power-free parts.

mod cache;
mod factor;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use cache::{disable_cache, enable_cache, FactorCache};
pub use factor::{factorize, factorize_with, is_probable_prime, FactorBudget};

pub type Int = BigInt;
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero has no factorization")]
    Zero,
    #[error("expected a positive integer, got {0}")]
    NonPositive(Int),
    #[error("factorization incomplete: cofactor {0} resisted splitting within the work budget")]
    Incomplete(Int),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// `sign * prod(p^e)`, primes strictly ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(Int, u32)>,
}

impl Factorization {
    pub fn value(&self) -> Int {
        let mut v = Int::from(self.sign);
        for (p, e) in &self.factors {
            v *= num_traits::pow(p.clone(), *e as usize);
        }
        v
    }

    pub fn primes(&self) -> impl Iterator<Item = &Int> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<Int> {
        let mut out = vec![Int::one()];
        for (p, e) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
            for d in &out {
                let mut pk = d.clone();
                next.push(pk.clone());
                for _ in 0..*e {
                    pk *= p;
                    next.push(pk.clone());
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// Positive square-free divisors, ascending.
    pub fn squarefree_divisors(&self) -> Vec<Int> {
        let mut out = vec![Int::one()];
        for (p, _) in &self.factors {
            let more: Vec<Int> = out.iter().map(|d| d * p).collect();
            out.extend(more);
        }
        out.sort();
        out
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// `n = a * b^2 * c^3` with `a`, `b` coprime and square-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubeFreeTriple {
    pub a: Int,
    pub b: Int,
    pub c: Int,
}

/// `n = s * t^2` with `s` square-free and carrying the sign of `n`, `t > 0`.
pub fn squarefree_part(n: &Int) -> Result<(Int, Int), ArithError> {
    let f = factorize(n)?;
    let mut s = Int::from(f.sign);
    let mut t = Int::one();
    for (p, e) in &f.factors {
        if e % 2 == 1 {
            s *= p;
        }
        t *= num_traits::pow(p.clone(), (*e / 2) as usize);
    }
    Ok((s, t))
}

/// Split by exponent residue mod 3: residue 1 goes to `a`, residue 2 to `b`.
pub fn cubefree_decompose(n: &Int) -> Result<CubeFreeTriple, ArithError> {
    if !n.is_positive() {
        return Err(ArithError::NonPositive(n.clone()));
    }
    let f = factorize(n)?;
    let (mut a, mut b, mut c) = (Int::one(), Int::one(), Int::one());
    for (p, e) in &f.factors {
        match e % 3 {
            1 => a *= p,
            2 => b *= p,
            _ => {}
        }
        c *= num_traits::pow(p.clone(), (*e / 3) as usize);
    }
    Ok(CubeFreeTriple { a, b, c })
}

/// Exact `k`-th root if one exists. Even roots of negatives are absent.
pub fn is_perfect_power(n: &Int, k: u32) -> Option<Int> {
    assert!(k >= 1);
    if k.is_multiple_of(2) && n.is_negative() {
        return None;
    }
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

pub fn is_square(n: &Int) -> bool {
    is_perfect_power(n, 2).is_some()
}

/// `b = u^6 * b'` with `b'` sixth-power free, `u > 0`.
pub fn sixth_power_free_reduce(b: &Int) -> Result<(Int, Int), ArithError> {
    let f = factorize(b)?;
    let mut rest = Int::from(f.sign);
    let mut u = Int::one();
    for (p, e) in &f.factors {
        rest *= num_traits::pow(p.clone(), (*e % 6) as usize);
        u *= num_traits::pow(p.clone(), (*e / 6) as usize);
    }
    Ok((rest, u))
}

pub fn is_squarefree(n: &Int) -> Result<bool, ArithError> {
    Ok(factorize(n)?.factors.iter().all(|(_, e)| *e == 1))
}

pub fn is_cubefree(n: &Int) -> Result<bool, ArithError> {
    Ok(factorize(n)?.factors.iter().all(|(_, e)| *e < 3))
}

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

pub fn rat_int(n: Int) -> Rat {
    Rat::from_integer(n)
}

/// Accepts `p`, `p/q` and plain decimals like `-1.25`.
pub fn parse_rat(s: &str) -> Result<Rat, ArithError> {
    let err = || ArithError::Parse(s.to_string());
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: Int = n.trim().parse().map_err(|_| err())?;
        let d: Int = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((w, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let neg = w.starts_with('-');
        let w: Int = if w.is_empty() || w == "-" || w == "+" {
            Int::zero()
        } else {
            w.parse().map_err(|_| err())?
        };
        let scale = num_traits::pow(Int::from(10), frac.len());
        let f: Int = frac.parse().map_err(|_| err())?;
        let mag = w.abs() * &scale + f;
        let num = if neg { -mag } else { mag };
        return Ok(Rat::new(num, scale));
    }
    let n: Int = t.parse().map_err(|_| err())?;
    Ok(Rat::from_integer(n))
}

/// Canonical `num/den` rendering, denominator always present.
pub fn fmt_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Square-free class of a nonzero rational: `num * den` made square-free.
pub fn rat_squarefree_class(r: &Rat) -> Result<Int, ArithError> {
    Ok(squarefree_part(&(r.numer() * r.denom()))?.0)
}

/// Floor of `log_base(n)` style helper: largest `base^k <= n`, returned as `k`.
pub fn floor_log(n: u128, base: u128) -> u32 {
    assert!(base >= 2);
    let mut k = 0;
    let mut p: u128 = 1;
    while p.saturating_mul(base) <= n {
        p *= base;
        k += 1;
    }
    k
}

pub fn gcd(a: &Int, b: &Int) -> Int {
    a.gcd(b)
}
