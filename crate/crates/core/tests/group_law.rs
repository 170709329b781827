mod common;

use common::{random_pair, rng, small_points, spread};
use descent_core::arith::{self, int, rat, Int};
use descent_core::weierstrass::{classify_torsion_x3b, CurveError, CurveW, Point, TorsionClass};
use rand::Rng;

fn curve(a: i64, b: i64) -> CurveW {
    CurveW::from_ints(int(a), int(b)).unwrap()
}

#[test]
fn construction_examples() {
    let c = curve(0, 1);
    assert_eq!(*c.disc(), rat(-27, 1));
    assert!(matches!(CurveW::from_ints(int(0), int(0)), Err(CurveError::Singular)));
    assert!(matches!(CurveW::from_ints(int(-3), int(2)), Err(CurveError::Singular)));
    assert!(c.point_i(1, 1).is_err());
}

#[test]
fn euler_curve_arithmetic() {
    let c = curve(0, 1);
    let p = c.point_i(2, 3).unwrap();
    assert_eq!(c.negate(&p), c.point_i(2, -3).unwrap());
    assert_eq!(c.negate(&Point::Infinity), Point::Infinity);
    let t = c.point_i(-1, 0).unwrap();
    assert_eq!(c.negate(&t), t);
    assert_eq!(c.add(&p, &c.point_i(0, 1).unwrap()).unwrap(), t);
    let q = c.point_i(0, 1).unwrap();
    assert_eq!(c.add(&q, &c.point_i(0, -1).unwrap()).unwrap(), Point::Infinity);
    assert_eq!(c.double(&q).unwrap(), c.point_i(0, -1).unwrap());
}

#[test]
fn cube_case_orders() {
    let c = curve(0, 64);
    assert!(c.mul(3, &c.point_i(0, 8).unwrap()).unwrap().is_infinity());
    assert!(c.mul(2, &c.point_i(-4, 0).unwrap()).unwrap().is_infinity());
    let g = c.point_i(8, 24).unwrap();
    assert!(c.mul(6, &g).unwrap().is_infinity());
    assert!(!c.mul(3, &g).unwrap().is_infinity());
}

#[test]
fn foreign_points_rejected() {
    let c1 = curve(0, 1);
    let c2 = curve(0, 9);
    let p = c2.point_i(0, 3).unwrap();
    assert!(matches!(c1.add(&p, &p), Err(CurveError::ForeignPoint)));
}

#[test]
fn torsion_examples() {
    let six = curve(0, 1).torsion_subgroup().unwrap();
    let c = curve(0, 1);
    let mut want = vec![Point::Infinity];
    for (x, y) in [(2, 3), (0, 1), (-1, 0), (0, -1), (2, -3)] {
        want.push(c.point_i(x, y).unwrap());
    }
    want.sort();
    assert_eq!(six, want);
    let c = curve(0, 4);
    let mut want = vec![Point::Infinity, c.point_i(0, 2).unwrap(), c.point_i(0, -2).unwrap()];
    want.sort();
    assert_eq!(c.torsion_subgroup().unwrap(), want);
    let c = curve(0, -432);
    let mut want = vec![Point::Infinity, c.point_i(12, 36).unwrap(), c.point_i(12, -36).unwrap()];
    want.sort();
    assert_eq!(c.torsion_subgroup().unwrap(), want);
}

#[test]
fn classify_examples() {
    let cl = |b: i64| classify_torsion_x3b(&int(b)).unwrap();
    assert_eq!(cl(1), TorsionClass::Z6);
    assert_eq!(cl(8), TorsionClass::Z2);
    assert_eq!(cl(4), TorsionClass::Z3);
    assert_eq!(cl(-432), TorsionClass::Z3);
    assert_eq!(cl(7), TorsionClass::Trivial);
    assert!(classify_torsion_x3b(&int(64)).is_err());
}

#[test]
fn classification_matches_torsion_subgroup() {
    for b in -500i64..=500 {
        if b == 0 {
            continue;
        }
        let (_, u) = arith::sixth_power_free_reduce(&int(b)).unwrap();
        if u != Int::from(1) {
            continue;
        }
        let class = classify_torsion_x3b(&int(b)).unwrap();
        let c = curve(0, b);
        let tors = c.torsion_subgroup().unwrap();
        assert_eq!(tors.len(), class.order(), "b = {b}");
        for p in &tors {
            assert!(p.is_integral());
            assert!(tors.contains(&c.negate(p)));
            for q in &tors {
                assert!(tors.contains(&c.add(p, q).unwrap()));
            }
        }
    }
}

/// Curves with a few small points, each paired with a spread of multiples.
fn sampled_curves() -> Vec<(CurveW, Vec<Point>)> {
    let mut r = rng(7);
    let mut out = Vec::new();
    while out.len() < 25 {
        let a = r.gen_range(-12i64..=12);
        let b = r.gen_range(-12i64..=12);
        let Ok(c) = CurveW::from_ints(int(a), int(b)) else {
            continue;
        };
        let seeds: Vec<Point> = small_points(&c, 12, 2).into_iter().take(3).collect();
        if seeds.len() < 2 {
            continue;
        }
        let pts = spread(&c, &seeds, 2);
        out.push((c, pts));
    }
    out
}

#[test]
fn group_axioms_on_random_triples() {
    let curves = sampled_curves();
    let mut r = rng(11);
    let mut triples = 0;
    for (c, pts) in &curves {
        for _ in 0..45 {
            let (p, q) = random_pair(&mut r, pts);
            let s = pts[r.gen_range(0..pts.len())].clone();
            let pq = c.add(&p, &q).unwrap();
            assert!(c.contains(&pq));
            assert_eq!(pq, c.add(&q, &p).unwrap());
            let lhs = c.add(&pq, &s).unwrap();
            let rhs = c.add(&p, &c.add(&q, &s).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(c.add(&p, &Point::Infinity).unwrap(), p);
            assert_eq!(c.add(&Point::Infinity, &p).unwrap(), p);
            assert!(c.add(&p, &c.negate(&p)).unwrap().is_infinity());
            assert_eq!(c.double(&p).unwrap(), c.add(&p, &p).unwrap());
            triples += 1;
        }
    }
    assert!(triples >= 1000, "only {triples} triples");
}

#[test]
fn scalar_mul_is_linear() {
    for (c, pts) in sampled_curves().iter().take(8) {
        let p = &pts[pts.len() / 2];
        for m in -4i64..=4 {
            for n in -4i64..=4 {
                let lhs = c.mul(m + n, p).unwrap();
                let rhs = c.add(&c.mul(m, p).unwrap(), &c.mul(n, p).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
