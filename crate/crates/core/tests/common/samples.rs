use descent_core::arith::{self, int, Int};
use descent_core::three_descent::{make_e_pair, EPair};
use descent_core::two_descent::{make_td_pair, TdPair};
use descent_core::weierstrass::Point;
use num_traits::Zero;
use rand::Rng;

use super::{rng, small_points, spread};

/// Pairs `(a, c)` with a spread of points on both curves.
pub fn two_pairs() -> Vec<(TdPair, Vec<Point>, Vec<Point>)> {
    let mut r = rng(5);
    let mut out = Vec::new();
    let mut total = 0;
    while total < 600 {
        let a = r.gen_range(-15i64..=15);
        let c = r.gen_range(-4i64..=4);
        let Ok(p) = make_td_pair(&int(a), &int(c)) else {
            continue;
        };
        let seeds: Vec<Point> = small_points(&p.e, 25, 2).into_iter().take(3).collect();
        let seeds_t: Vec<Point> = small_points(&p.e_tilde, 60, 2).into_iter().take(3).collect();
        if seeds.len() < 2 || seeds_t.len() < 2 {
            continue;
        }
        let pts = spread(&p.e, &seeds, 2);
        let pts_t = spread(&p.e_tilde, &seeds_t, 2);
        total += pts.len().min(pts_t.len());
        out.push((p, pts, pts_t));
    }
    out
}

pub fn cubefree_range(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi)
        .filter(|e| arith::is_cubefree(&int(*e)).unwrap())
        .collect()
}

/// Pairs with point spreads on `E` and on `Ẽ` (images under `ψ` plus found points).
pub fn e_pairs() -> Vec<(EPair, Vec<Point>, Vec<Point>)> {
    let mut out = Vec::new();
    let mut total = 0;
    for e in cubefree_range(2, 400) {
        let p = make_e_pair(&int(e)).unwrap();
        let seeds: Vec<Point> = small_points(&p.curve, 60, 2)
            .into_iter()
            .filter(|q| !q.x().unwrap().is_zero())
            .take(2)
            .collect();
        if seeds.is_empty() {
            continue;
        }
        let pts = spread(&p.curve, &seeds, 2);
        let mut pts_t: Vec<Point> = pts.iter().map(|q| p.psi(q).unwrap()).collect();
        pts_t.extend(small_points(&p.curve_tilde, 150, 1));
        pts_t.sort();
        pts_t.dedup();
        total += pts.len();
        out.push((p, pts, pts_t));
        if total >= 700 {
            break;
        }
    }
    out
}

/// Heights small enough that the class computations factor quickly.
pub fn low_height(pts: &[Point]) -> Vec<Point> {
    let cap = Int::from(10u64).pow(10);
    pts.iter()
        .filter(|q| match q.y() {
            None => true,
            Some(y) => y.numer().magnitude() < cap.magnitude() && y.denom() < &cap,
        })
        .cloned()
        .collect()
}
