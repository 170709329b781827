#![allow(dead_code)]

pub mod transcribed;
pub mod samples;

use descent_core::arith::{self, Int, Rat};
use descent_core::weierstrass::{CurveW, Point};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = arith::is_perfect_power(r.numer(), 2)?;
    let d = arith::is_perfect_power(r.denom(), 2)?;
    Some(Rat::new(n, d))
}

/// Points with `x = p / q^2`, `|p| <= xbound`, `q <= max_den`, `y >= 0`.
pub fn small_points(curve: &CurveW, xbound: i64, max_den: i64) -> Vec<Point> {
    let mut out = Vec::new();
    for q in 1..=max_den {
        let q2 = q * q;
        for p in -xbound..=xbound {
            if q > 1 && arith::gcd(&Int::from(p), &Int::from(q)) != Int::from(1) {
                continue;
            }
            let x = Rat::new(Int::from(p), Int::from(q2));
            if let Some(y) = rat_sqrt(&curve.rhs(&x)) {
                out.push(curve.point(x, y).expect("found point lies on curve"));
            }
        }
    }
    out
}

/// Small combinations `n1 g1 + n2 g2` of found points.
pub fn spread(curve: &CurveW, seeds: &[Point], span: i64) -> Vec<Point> {
    let mut out = Vec::new();
    for (i, g) in seeds.iter().enumerate() {
        for h in seeds.iter().skip(i) {
            for n1 in -span..=span {
                let a = curve.mul(n1, g).unwrap();
                for n2 in 0..=1 {
                    let b = curve.mul(n2, h).unwrap();
                    out.push(curve.add(&a, &b).unwrap());
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn random_pair<R: Rng>(r: &mut R, seeds: &[Point]) -> (Point, Point) {
    let a = seeds[r.gen_range(0..seeds.len())].clone();
    let b = seeds[r.gen_range(0..seeds.len())].clone();
    (a, b)
}
