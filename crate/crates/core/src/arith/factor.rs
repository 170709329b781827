use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use super::{cache, ArithError, Factorization, Int};

const TRIAL_LIMIT: usize = 1_000_000;

static SMALL_PRIMES: Lazy<Vec<u32>> = Lazy::new(|| {
    let mut sieve = vec![true; TRIAL_LIMIT + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= TRIAL_LIMIT {
        if sieve[i] {
            let mut j = i * i;
            while j <= TRIAL_LIMIT {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &p)| p.then_some(i as u32))
        .collect()
});

// first 13 primes: deterministic Miller-Rabin below 3.3e24
const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const MR_EXTRA: [u64; 7] = [43, 47, 53, 59, 61, 67, 71];
static MR_DETERMINISTIC_LIMIT: Lazy<BigInt> =
    Lazy::new(|| "3317044064679887385961981".parse().unwrap());

/// Work limit for the rho stage, counted in polynomial iterations per cofactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            rho_iterations: 1 << 24,
        }
    }
}

pub fn factorize(n: &Int) -> Result<Factorization, ArithError> {
    factorize_with(n, FactorBudget::default())
}

pub fn factorize_with(n: &Int, budget: FactorBudget) -> Result<Factorization, ArithError> {
    if n.is_zero() {
        return Err(ArithError::Zero);
    }
    let sign: i8 = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut factors: Vec<(Int, u32)> = Vec::new();

    for &p in SMALL_PRIMES.iter() {
        let p = p as u64;
        if let Some(small) = m.to_u64() {
            if p * p > small {
                break;
            }
        }
        let pb = BigInt::from(p);
        let mut e = 0u32;
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            factors.push((pb, e));
        }
    }
    if m.is_one() {
        return Ok(Factorization { sign, factors });
    }
    let bound = (TRIAL_LIMIT as u64) * (TRIAL_LIMIT as u64);
    if m.to_u64().is_some_and(|v| v < bound) {
        // no prime factor below the trial limit, so what is left is prime
        factors.push((m, 1));
        return Ok(Factorization { sign, factors });
    }

    let key = Int::from(sign) * n.abs();
    if let Some(hit) = cache::lookup(&key) {
        return Ok(hit);
    }

    let mut big: Vec<Int> = Vec::new();
    split_fully(&m, budget, &mut big)?;
    big.sort();
    for p in big {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    let out = Factorization { sign, factors };
    cache::store(&key, &out);
    Ok(out)
}

fn split_fully(n: &Int, budget: FactorBudget, out: &mut Vec<Int>) -> Result<(), ArithError> {
    if n.is_one() {
        return Ok(());
    }
    if is_probable_prime(n) {
        out.push(n.clone());
        return Ok(());
    }
    for k in [2u32, 3, 5, 7] {
        let r = n.nth_root(k);
        if num_traits::pow(r.clone(), k as usize) == *n {
            for _ in 0..k {
                split_fully(&r, budget, out)?;
            }
            return Ok(());
        }
    }
    let d = match n.to_u64() {
        Some(small) => rho_u64(small, budget.rho_iterations).map(BigInt::from),
        None => rho_big(n, budget.rho_iterations),
    };
    match d {
        Some(d) => {
            split_fully(&d, budget, out)?;
            split_fully(&(n / &d), budget, out)
        }
        None => Err(ArithError::Incomplete(n.clone())),
    }
}

pub fn is_probable_prime(n: &Int) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in SMALL_PRIMES.iter().take(200) {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let witness = |a: u64| -> bool {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == nm1 {
            return false;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                return false;
            }
        }
        true
    };
    if MR_BASES.iter().any(|&a| witness(a)) {
        return false;
    }
    if *n >= *MR_DETERMINISTIC_LIMIT && MR_EXTRA.iter().any(|&a| witness(a)) {
        return false;
    }
    true
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &MR_BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

// Brent's cycle variant, several polynomial constants
fn rho_u64(n: u64, budget: u64) -> Option<u64> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    let mut spent = 0u64;
    for c in 1..64u64 {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
        let m = 128u64;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += m;
            }
            r *= 2;
            spent += r;
            if spent > budget {
                return None;
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

fn rho_big(n: &Int, budget: u64) -> Option<Int> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    let mut spent = 0u64;
    for c in 1..64u64 {
        let c = BigInt::from(c);
        let f = |x: &Int| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r = 1u64;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let m = 128u64;
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
            spent += r;
            if spent > budget {
                return None;
            }
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
    }
    None
}
