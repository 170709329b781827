mod common;

use common::{random_pair, rng, samples};
use descent_core::arith::{int, Int};
use descent_core::rank::RankBounds;
use descent_core::status::{Certificate, GroupClass, Status};
use descent_core::two_descent::{
    make_td_pair, rank_bounds_2, HomSpace2, SearchBounds, Side, SquareClass,
    TwoDescentError,
};
use descent_core::weierstrass::Point;

fn sq(n: i64) -> SquareClass {
    SquareClass::from_squarefree(int(n))
}

fn sorted(mut v: Vec<SquareClass>) -> Vec<SquareClass> {
    v.sort();
    v
}

#[test]
fn pair_examples() {
    let p = make_td_pair(&int(0), &int(-1)).unwrap();
    assert_eq!(*p.e.b(), descent_core::arith::rat(1, 1));
    assert_eq!(p.e_tilde.a(), &descent_core::arith::rat(-15, 1));
    assert_eq!(p.e_tilde.b(), &descent_core::arith::rat(22, 1));
    assert!(matches!(make_td_pair(&int(-3), &int(1)), Err(TwoDescentError::SingularE)));
    assert!(matches!(make_td_pair(&int(-3), &int(2)), Err(TwoDescentError::SingularTilde)));
}

#[test]
fn euler_isogenies_and_alpha() {
    let p = make_td_pair(&int(0), &int(-1)).unwrap();
    let g = p.e.point_i(2, 3).unwrap();
    let img = p.psi(&g).unwrap();
    assert_eq!(img, p.e_tilde.point_i(3, 2).unwrap());
    assert_eq!(p.psi_tilde(&img).unwrap(), p.e.point_i(0, 1).unwrap());
    assert_eq!(p.psi(&p.p0(Side::E)).unwrap(), Point::Infinity);
    assert_eq!(p.psi(&Point::Infinity).unwrap(), Point::Infinity);
    assert_eq!(p.psi_tilde(&p.p0(Side::Tilde)).unwrap(), Point::Infinity);
    assert_eq!(p.p0(Side::Tilde), p.e_tilde.point_i(2, 0).unwrap());
    assert_eq!(p.alpha(Side::E, &Point::Infinity).unwrap(), sq(1));
    assert_eq!(p.alpha(Side::E, &p.p0(Side::E)).unwrap(), sq(3));
    assert_eq!(p.alpha(Side::E, &g).unwrap(), sq(3));
    assert_eq!(p.alpha(Side::Tilde, &p.p0(Side::Tilde)).unwrap(), sq(-3));
}

#[test]
fn ker_index_examples() {
    assert_eq!(make_td_pair(&int(0), &int(-1)).unwrap().ker_index(), 2);
    assert_eq!(make_td_pair(&int(-1), &int(0)).unwrap().ker_index(), 1);
    assert_eq!(make_td_pair(&int(1), &int(0)).unwrap().ker_index(), 2);
}

#[test]
fn homogeneous_space_sign_and_local() {
    let h = HomSpace2::new(&int(-1), &int(-1), &int(3));
    assert_eq!(h.local_obstruction(&[2, 3], 81), Some(3));
    let h = HomSpace2::new(&int(-1), &int(1), &int(4));
    assert!(h.negative_definite());
    let h = HomSpace2::new(&int(1), &int(-1), &int(3));
    assert!(h.search(5).is_some());
}

#[test]
fn euler_golden() {
    let p = make_td_pair(&int(0), &int(-1)).unwrap();
    let d = rank_bounds_2(&p, SearchBounds::default()).unwrap();
    assert_eq!(d.torsion.len(), 6);
    assert_eq!(sorted(d.image(Side::E)), sorted(vec![sq(1), sq(3)]));
    assert_eq!(sorted(d.image(Side::Tilde)), sorted(vec![sq(1), sq(-3)]));
    for s in &d.e_side {
        if s.class == sq(-1) || s.class == sq(-3) {
            assert_eq!(s.status, Status::ProvedOut(Certificate::Local { modulus: 3 }));
        }
    }
    assert_eq!(d.ker_index, 2);
    assert_eq!(d.two_torsion, 2);
    assert_eq!(d.rank, RankBounds { lower: 0, upper: 0, undecided: 0 });
}

#[test]
fn full_two_torsion_example() {
    let p = make_td_pair(&int(-1), &int(0)).unwrap();
    let d = rank_bounds_2(&p, SearchBounds::default()).unwrap();
    assert_eq!(sorted(d.image(Side::E)), sorted(vec![sq(1), sq(-1)]));
    assert_eq!(d.two_torsion, 4);
    assert_eq!((d.rank.lower, d.rank.upper), (0, 0));
}

#[test]
fn cube_case_pairs_have_rank_zero() {
    for m in 1i64..=3 {
        let p = make_td_pair(&int(0), &int(-4 * m * m)).unwrap();
        let d = rank_bounds_2(&p, SearchBounds::default()).unwrap();
        assert_eq!((d.rank.lower, d.rank.upper), (0, 0), "M = {m}");
    }
}

#[test]
fn witnesses_verify_and_images_are_subgroups() {
    for (a, c) in [(0, -1), (-1, 0), (-2, 0), (2, 1), (-5, 2), (3, -1), (7, 0)] {
        let Ok(p) = make_td_pair(&int(a), &int(c)) else {
            continue;
        };
        let d = rank_bounds_2(&p, SearchBounds { search_bound: 60, local_bound: 81 }).unwrap();
        assert!(d.rank.lower <= d.rank.upper);
        for (side, list) in [(Side::E, &d.e_side), (Side::Tilde, &d.tilde_side)] {
            let curve = p.side(side).curve;
            for s in list {
                if let Status::ProvedIn(w) = &s.status {
                    assert!(curve.contains(&w.point));
                    assert_eq!(p.alpha(side, &w.point).unwrap(), s.class);
                }
            }
            let img = d.image(side);
            assert!(img.len().is_power_of_two());
            for x in &img {
                for y in &img {
                    assert!(img.contains(&x.times(y)));
                }
            }
        }
    }
}

#[test]
fn dual_isogeny_composes_to_doubling() {
    let mut n = 0;
    for (p, pts, pts_t) in samples::two_pairs() {
        for q in &pts {
            let back = p.psi_tilde(&p.psi(q).unwrap()).unwrap();
            assert_eq!(back, p.e.double(q).unwrap());
            n += 1;
        }
        for q in &pts_t {
            let back = p.psi(&p.psi_tilde(q).unwrap()).unwrap();
            assert_eq!(back, p.e_tilde.double(q).unwrap());
        }
    }
    assert!(n >= 500, "only {n} points");
}

#[test]
fn isogenies_are_homomorphisms() {
    let mut r = rng(8);
    for (p, pts, pts_t) in samples::two_pairs() {
        for _ in 0..20 {
            let (x, y) = random_pair(&mut r, &pts);
            let lhs = p.psi(&p.e.add(&x, &y).unwrap()).unwrap();
            let rhs = p.e_tilde.add(&p.psi(&x).unwrap(), &p.psi(&y).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            let (x, y) = random_pair(&mut r, &pts_t);
            let lhs = p.psi_tilde(&p.e_tilde.add(&x, &y).unwrap()).unwrap();
            let rhs = p.e.add(&p.psi_tilde(&x).unwrap(), &p.psi_tilde(&y).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn alpha_is_multiplicative() {
    let mut r = rng(9);
    let mut n = 0;
    for (p, pts, pts_t) in samples::two_pairs() {
        for (side, list) in [(Side::E, &pts), (Side::Tilde, &pts_t)] {
            let curve = p.side(side).curve;
            for _ in 0..25 {
                let (x, y) = random_pair(&mut r, list);
                let sum = curve.add(&x, &y).unwrap();
                let lhs = p.alpha(side, &sum).unwrap();
                let rhs = p.alpha(side, &x).unwrap().times(&p.alpha(side, &y).unwrap());
                assert_eq!(lhs, rhs);
                n += 1;
            }
        }
    }
    assert!(n >= 500);
}

#[test]
fn kernel_equals_image() {
    for (p, pts, pts_t) in samples::two_pairs() {
        for q in &pts_t {
            assert_eq!(p.alpha(Side::E, &p.psi_tilde(q).unwrap()).unwrap(), SquareClass::one());
        }
        for q in &pts {
            assert_eq!(p.alpha(Side::Tilde, &p.psi(q).unwrap()).unwrap(), SquareClass::one());
        }
    }
}

#[test]
fn reduction_is_isomorphic() {
    let p = make_td_pair(&int(0), &int(-16)).unwrap();
    let (lambda, q) = p.reduced().unwrap().unwrap();
    assert_eq!(lambda, Int::from(4));
    assert_eq!((q.a.clone(), q.c.clone()), (int(0), int(-1)));
    let p = make_td_pair(&int(32), &int(-4)).unwrap();
    let (lambda, q) = p.reduced().unwrap().unwrap();
    assert_eq!(lambda, Int::from(2));
    assert_eq!((q.a.clone(), q.c.clone()), (int(2), int(-1)));
}
