//! Descent via 2-isogeny for `E: y^2 = x^3 + a x - c^3 - a c`, which has the
//! rational 2-torsion point `P0 = (c, 0)`, and its partner
//! `Ẽ: y^2 = x^3 + ã x - c̃^3 - ã c̃` with `ã = -4a - 15c^2`, `c̃ = -2c`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{self, ArithError, Int, Rat};
use crate::rank::{self, RankBounds};
use crate::status::{
    self, Certificate, ClassStatus, GroupClass, Inconsistent, Source, Status, Witness,
};
use crate::weierstrass::{CurveError, CurveW, Point};

pub const DEFAULT_SEARCH_BOUND: u64 = 200;
pub const DEFAULT_LOCAL_BOUND: u64 = 81;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoDescentError {
    #[error("singular pair: a = -3c^2 makes E singular")]
    SingularE,
    #[error("singular pair: 4a = -3c^2 makes the associated curve singular")]
    SingularTilde,
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Inconsistent(#[from] Inconsistent),
}

/// Element of `Q*/Q*^2`, represented by a signed square-free integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass(Int);

impl SquareClass {
    pub fn one() -> Self {
        SquareClass(Int::one())
    }

    pub fn of_int(n: &Int) -> Result<Self, ArithError> {
        Ok(SquareClass(arith::squarefree_part(n)?.0))
    }

    pub fn of_rat(r: &Rat) -> Result<Self, ArithError> {
        Ok(SquareClass(arith::rat_squarefree_class(r)?))
    }

    /// Caller guarantees `rep` is square-free and nonzero.
    pub fn from_squarefree(rep: Int) -> Self {
        SquareClass(rep)
    }

    pub fn rep(&self) -> &Int {
        &self.0
    }
}

impl GroupClass for SquareClass {
    fn identity() -> Self {
        SquareClass::one()
    }

    fn times(&self, other: &Self) -> Self {
        let g = self.0.gcd(&other.0);
        SquareClass((&self.0 / &g) * (&other.0 / &g))
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    E,
    Tilde,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TdPair {
    pub a: Int,
    pub c: Int,
    pub assoc_a: Int,
    pub assoc_c: Int,
    /// `3c^2 + a`
    pub b: Int,
    /// `3c̃^2 + ã = -3c^2 - 4a`
    pub b_tilde: Int,
    pub e: CurveW,
    pub e_tilde: CurveW,
}

fn curve_for(a: &Int, c: &Int) -> Result<CurveW, CurveError> {
    CurveW::from_ints(a.clone(), -(c * c * c) - a * c)
}

pub fn make_td_pair(a: &Int, c: &Int) -> Result<TdPair, TwoDescentError> {
    let c2 = c * c;
    if *a == Int::from(-3) * &c2 {
        return Err(TwoDescentError::SingularE);
    }
    if Int::from(4) * a == Int::from(-3) * &c2 {
        return Err(TwoDescentError::SingularTilde);
    }
    let assoc_a = Int::from(-4) * a - Int::from(15) * &c2;
    let assoc_c = Int::from(-2) * c;
    let b = Int::from(3) * &c2 + a;
    let b_tilde = Int::from(3) * &assoc_c * &assoc_c + &assoc_a;
    Ok(TdPair {
        e: curve_for(a, c)?,
        e_tilde: curve_for(&assoc_a, &assoc_c)?,
        a: a.clone(),
        c: c.clone(),
        assoc_a,
        assoc_c,
        b,
        b_tilde,
    })
}

/// Shape data for one side: `(a, c, B, curve)`.
pub struct SideData<'p> {
    pub a: &'p Int,
    pub c: &'p Int,
    pub b: &'p Int,
    pub curve: &'p CurveW,
}

impl TdPair {
    pub fn side(&self, side: Side) -> SideData<'_> {
        match side {
            Side::E => SideData {
                a: &self.a,
                c: &self.c,
                b: &self.b,
                curve: &self.e,
            },
            Side::Tilde => SideData {
                a: &self.assoc_a,
                c: &self.assoc_c,
                b: &self.b_tilde,
                curve: &self.e_tilde,
            },
        }
    }

    pub fn p0(&self, side: Side) -> Point {
        let d = self.side(side);
        d.curve
            .point(Rat::from_integer(d.c.clone()), Rat::zero())
            .expect("(c, 0) lies on the curve by construction")
    }

    /// `E -> Ẽ`
    pub fn psi(&self, p: &Point) -> Result<Point, TwoDescentError> {
        let (x, y) = isogeny_raw(&self.e, &self.a, &self.c, p)?;
        match (x, y) {
            (Some(x), Some(y)) => Ok(self.e_tilde.point(x, y)?),
            _ => Ok(Point::Infinity),
        }
    }

    /// `Ẽ -> E`
    pub fn psi_tilde(&self, p: &Point) -> Result<Point, TwoDescentError> {
        let (x, y) = isogeny_raw(&self.e_tilde, &self.assoc_a, &self.assoc_c, p)?;
        match (x, y) {
            (Some(x), Some(y)) => {
                let x = x / Rat::from_integer(Int::from(4));
                let y = y / Rat::from_integer(Int::from(8));
                Ok(self.e.point(x, y)?)
            }
            _ => Ok(Point::Infinity),
        }
    }

    pub fn alpha(&self, side: Side, p: &Point) -> Result<SquareClass, TwoDescentError> {
        let d = self.side(side);
        if !d.curve.contains(p) {
            return Err(CurveError::ForeignPoint.into());
        }
        let x = match p.x() {
            None => return Ok(SquareClass::one()),
            Some(x) => x,
        };
        let c = Rat::from_integer(d.c.clone());
        if *x == c {
            return Ok(SquareClass::of_int(d.b)?);
        }
        Ok(SquareClass::of_rat(&(x - c))?)
    }

    /// `[Ker ψ̃ : ψ(E_2)]`-style index: 1 iff `-3c^2 - 4a` is a square.
    pub fn ker_index(&self) -> u32 {
        if arith::is_square(&self.b_tilde) {
            1
        } else {
            2
        }
    }

    /// Number of points of order dividing 2 on `E`.
    pub fn two_torsion_count(&self) -> u32 {
        if arith::is_square(&self.b_tilde) {
            4
        } else {
            2
        }
    }

    /// Largest `λ` with `λ^2 | c` and `λ^4 | a`; the pair `(a/λ^4, c/λ^2)`
    /// describes an isomorphic curve.
    pub fn reduced(&self) -> Result<Option<(Int, TdPair)>, TwoDescentError> {
        let g = if self.c.is_zero() {
            if self.a.is_zero() {
                return Ok(None);
            }
            Int::zero()
        } else {
            self.c.abs()
        };
        let fac_src = if g.is_zero() { self.a.abs() } else { g.clone() };
        let f = arith::factorize(&fac_src)?;
        let mut lambda = Int::one();
        for (p, _) in &f.factors {
            loop {
                let l = &lambda * p;
                let l2 = &l * &l;
                let l4 = &l2 * &l2;
                if (&self.c % &l2).is_zero() && (&self.a % &l4).is_zero() {
                    lambda = l;
                } else {
                    break;
                }
            }
        }
        if lambda.is_one() {
            return Ok(None);
        }
        let l2 = &lambda * &lambda;
        let pair = make_td_pair(&(&self.a / (&l2 * &l2)), &(&self.c / &l2))?;
        Ok(Some((lambda, pair)))
    }
}

/// Shared formula for both directions before the `1/4, 1/8` rescaling.
fn isogeny_raw(
    curve: &CurveW,
    a: &Int,
    c: &Int,
    p: &Point,
) -> Result<(Option<Rat>, Option<Rat>), TwoDescentError> {
    if !curve.contains(p) {
        return Err(CurveError::ForeignPoint.into());
    }
    let (x, y) = match p.affine() {
        None => return Ok((None, None)),
        Some(q) => (q.x(), q.y()),
    };
    let c = Rat::from_integer(c.clone());
    let a = Rat::from_integer(a.clone());
    if *x == c {
        return Ok((None, None));
    }
    let d = x - &c;
    let three = Rat::from_integer(Int::from(3));
    let two = Rat::from_integer(Int::from(2));
    let xt = (x * x - x * &c + &a + &three * &c * &c) / &d;
    let yt = y * (x * x - &two * x * &c - &a - &two * &c * &c) / (&d * &d);
    Ok((Some(xt), Some(yt)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub search_bound: u64,
    pub local_bound: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            search_bound: DEFAULT_SEARCH_BOUND,
            local_bound: DEFAULT_LOCAL_BOUND,
        }
    }
}

/// `N^2 = s M^4 + 3c M^2 q^2 + (B/s) q^4` for a square-free `s | B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSpace2 {
    pub s: Int,
    pub c3: Int,
    pub t: Int,
}

impl HomSpace2 {
    pub fn new(s: &Int, c: &Int, b: &Int) -> Self {
        HomSpace2 {
            s: s.clone(),
            c3: Int::from(3) * c,
            t: b / s,
        }
    }

    pub fn rhs(&self, m: &Int, q: &Int) -> Int {
        let m2 = m * m;
        let q2 = q * q;
        &self.s * &m2 * &m2 + &self.c3 * &m2 * &q2 + &self.t * &q2 * &q2
    }

    /// Modulus of the first prime power at which no admissible residue
    /// solution exists.
    pub fn local_obstruction(&self, primes: &[u64], local_bound: u64) -> Option<u64> {
        for &p in primes {
            let mut pk = p;
            while pk <= local_bound {
                if !self.solvable_mod(p, pk) {
                    return Some(pk);
                }
                match pk.checked_mul(p) {
                    Some(v) => pk = v,
                    None => break,
                }
            }
        }
        None
    }

    fn solvable_mod(&self, p: u64, pk: u64) -> bool {
        let m = pk as i128;
        let red = |v: &Int| -> i128 { v.mod_floor(&Int::from(pk)).to_i128().unwrap() };
        let (s, c3, t) = (red(&self.s), red(&self.c3), red(&self.t));
        let p2_divides_t = (&self.t % Int::from(p * p)).is_zero();
        // per residue r: can N^2 = r with p | N, and with p ∤ N
        let mut with_zero = vec![false; pk as usize];
        let mut with_unit = vec![false; pk as usize];
        for n in 0..m {
            let r = (n * n % m) as usize;
            if n % p as i128 == 0 {
                with_zero[r] = true;
            } else {
                with_unit[r] = true;
            }
        }
        let pi = p as i128;
        for mm in 0..m {
            let m2 = mm * mm % m;
            let m4 = m2 * m2 % m;
            for q in 0..m {
                if mm % pi == 0 && q % pi == 0 {
                    continue;
                }
                let q2 = q * q % m;
                let q4 = q2 * q2 % m;
                let r = ((s * m4 + c3 * m2 % m * q2 + t * q4) % m) as usize;
                let need_unit = q % pi == 0 || (mm % pi == 0 && !p2_divides_t);
                if with_unit[r] || (!need_unit && with_zero[r]) {
                    return true;
                }
            }
        }
        false
    }

    /// Right-hand side negative for every `(M, q) != (0, 0)`.
    pub fn negative_definite(&self) -> bool {
        if !(self.s.is_negative() && self.t.is_negative()) {
            return false;
        }
        // the cross term only hurts when c > 0
        !self.c3.is_positive() || Int::from(4) * &self.s * &self.t > &self.c3 * &self.c3
    }

    /// First `(M, N, q)` with `q` ascending, then `M` ascending, `gcd(M, q) = 1`.
    pub fn search(&self, bound: u64) -> Option<(Int, Int, Int)> {
        let small = |v: &Int| v.abs() < Int::from(1u64 << 62);
        if small(&self.s) && small(&self.c3) && small(&self.t) && bound < (1 << 15) {
            let (s, c3, t) = (
                self.s.to_i128().unwrap(),
                self.c3.to_i128().unwrap(),
                self.t.to_i128().unwrap(),
            );
            for q in 1..=bound as i128 {
                let q2 = q * q;
                let q4 = q2 * q2;
                for m in 0..=bound as i128 {
                    if m.gcd(&q) != 1 {
                        continue;
                    }
                    let m2 = m * m;
                    let v = s * m2 * m2 + c3 * m2 * q2 + t * q4;
                    if v < 0 {
                        continue;
                    }
                    let r = (v as u128).sqrt();
                    if r * r == v as u128 {
                        return Some((Int::from(m), Int::from(r), Int::from(q)));
                    }
                }
            }
            return None;
        }
        for q in 1..=bound {
            let qb = Int::from(q);
            for m in 0..=bound {
                if m.gcd(&q) != 1 {
                    continue;
                }
                let mb = Int::from(m);
                let v = self.rhs(&mb, &qb);
                if let Some(n) = arith::is_perfect_power(&v, 2) {
                    return Some((mb, n, qb));
                }
            }
        }
        None
    }
}

/// Candidate classes: square-free divisors of `B`, both signs, ordered by
/// absolute value with the positive one first.
pub fn candidate_classes(b: &Int) -> Result<Vec<SquareClass>, ArithError> {
    let f = arith::factorize(b)?;
    let mut out = Vec::new();
    for d in f.squarefree_divisors() {
        out.push(SquareClass(d.clone()));
        out.push(SquareClass(-d));
    }
    Ok(out)
}

fn decide(
    pair: &TdPair,
    side: Side,
    s: &SquareClass,
    primes: &[u64],
    bounds: SearchBounds,
) -> Result<Status<SquareClass>, TwoDescentError> {
    let d = pair.side(side);
    let hs = HomSpace2::new(s.rep(), d.c, d.b);
    if let Some(modulus) = hs.local_obstruction(primes, bounds.local_bound) {
        return Ok(Status::ProvedOut(Certificate::Local { modulus }));
    }
    if hs.negative_definite() {
        return Ok(Status::ProvedOut(Certificate::Sign));
    }
    if let Some((m, n, q)) = hs.search(bounds.search_bound) {
        let q2 = &q * &q;
        let x = Rat::from_integer(d.c.clone()) + Rat::new(s.rep() * &m * &m, q2.clone());
        let y = Rat::new(s.rep() * &m * &n, &q2 * &q);
        let point = d.curve.point(x, y)?;
        debug_assert_eq!(&pair.alpha(side, &point)?, s);
        return Ok(Status::ProvedIn(Witness {
            point,
            source: Source::Quartic { m, n, q },
        }));
    }
    Ok(Status::Unknown)
}

/// Status of every candidate class for the image of `α` on one side.
pub fn alpha2_image(
    pair: &TdPair,
    side: Side,
    bounds: SearchBounds,
) -> Result<Vec<ClassStatus<SquareClass>>, TwoDescentError> {
    let d = pair.side(side);
    let mut table: BTreeMap<SquareClass, Status<SquareClass>> = candidate_classes(d.b)?
        .into_iter()
        .map(|c| (c, Status::Unknown))
        .collect();

    for p in d.curve.torsion_subgroup()? {
        let cls = pair.alpha(side, &p)?;
        let entry = table.entry(cls).or_insert(Status::Unknown);
        if !entry.is_in() {
            *entry = Status::ProvedIn(Witness {
                point: p,
                source: Source::Torsion,
            });
        }
    }

    let mut primes: Vec<u64> = vec![2, 3];
    for p in arith::factorize(d.b)?.primes() {
        if let Some(p) = p.to_u64() {
            if p <= bounds.local_bound && !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    primes.sort();

    let open: Vec<SquareClass> = table
        .iter()
        .filter(|(_, s)| s.is_unknown())
        .map(|(c, _)| c.clone())
        .collect();
    let decided: Vec<(SquareClass, Status<SquareClass>)> = open
        .par_iter()
        .map(|s| decide(pair, side, s, &primes, bounds).map(|st| (s.clone(), st)))
        .collect::<Result<_, _>>()?;
    for (c, st) in decided {
        table.insert(c, st);
    }

    let curve = d.curve.clone();
    status::close_table(&mut table, |p, q| curve.add(p, q).expect("witness points lie on the curve"))?;
    let mut list = status::into_list(table);
    list.sort_by(|x, y| {
        let (a, b) = (x.class.rep(), y.class.rep());
        a.abs().cmp(&b.abs()).then(b.cmp(a))
    });
    Ok(list)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoDescent {
    pub pair: TdPair,
    pub torsion: Vec<Point>,
    pub e_side: Vec<ClassStatus<SquareClass>>,
    pub tilde_side: Vec<ClassStatus<SquareClass>>,
    pub ker_index: u32,
    pub two_torsion: u32,
    pub rank: RankBounds,
    /// Set when the interval was tightened on an isomorphic reduced pair.
    pub reduced: Option<(Int, Box<TwoDescent>)>,
}

impl TwoDescent {
    pub fn image(&self, side: Side) -> Vec<SquareClass> {
        let list = match side {
            Side::E => &self.e_side,
            Side::Tilde => &self.tilde_side,
        };
        list.iter()
            .filter(|s| s.status.is_in())
            .map(|s| s.class.clone())
            .collect()
    }
}

/// `2^r |E_2| = |α(E)| |α̃(Ẽ)| / index`, as an interval.
pub fn rank_bounds_2(pair: &TdPair, bounds: SearchBounds) -> Result<TwoDescent, TwoDescentError> {
    let e_side = alpha2_image(pair, Side::E, bounds)?;
    let tilde_side = alpha2_image(pair, Side::Tilde, bounds)?;
    let ker_index = pair.ker_index();
    let two_torsion = pair.two_torsion_count();
    let lo = (status::count_in(&e_side), status::count_in(&tilde_side));
    let hi = (
        e_side.len() - status::count_out(&e_side),
        tilde_side.len() - status::count_out(&tilde_side),
    );
    let denom_log = rank::log_floor((ker_index * two_torsion) as usize, 2);
    let undecided = status::count_unknown(&e_side) + status::count_unknown(&tilde_side);
    let mut rank = rank::bounds_from_counts(2, lo, hi, denom_log, undecided);

    let mut reduced = None;
    if !rank.is_exact() {
        if let Some((lambda, small)) = pair.reduced()? {
            let sub = rank_bounds_2(&small, bounds)?;
            rank = rank.tighten(sub.rank);
            reduced = Some((lambda, Box::new(sub)));
        }
    }
    Ok(TwoDescent {
        pair: pair.clone(),
        torsion: pair.e.torsion_subgroup()?,
        e_side,
        tilde_side,
        ker_index,
        two_torsion,
        rank,
        reduced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn euler() -> TdPair {
        make_td_pair(&int(0), &int(-1)).unwrap()
    }

    #[test]
    fn pair_examples() {
        let p = euler();
        assert_eq!(p.e.a(), &rat(0, 1));
        assert_eq!(p.e.b(), &rat(1, 1));
        assert_eq!(p.e_tilde.a(), &rat(-15, 1));
        assert_eq!(p.e_tilde.b(), &rat(22, 1));
        assert_eq!(make_td_pair(&int(-3), &int(1)), Err(TwoDescentError::SingularE));
        assert_eq!(make_td_pair(&int(-3), &int(2)), Err(TwoDescentError::SingularTilde));
    }

    #[test]
    fn isogeny_examples() {
        let p = euler();
        let pt = p.e.point_i(2, 3).unwrap();
        let img = p.psi(&pt).unwrap();
        assert_eq!(img, p.e_tilde.point_i(3, 2).unwrap());
        assert_eq!(p.psi(&p.p0(Side::E)).unwrap(), Point::Infinity);
        assert_eq!(p.psi(&Point::Infinity).unwrap(), Point::Infinity);
        assert_eq!(p.psi_tilde(&img).unwrap(), p.e.point_i(0, 1).unwrap());
        assert_eq!(p.psi_tilde(&p.e_tilde.point_i(2, 0).unwrap()).unwrap(), Point::Infinity);
        assert_eq!(p.psi_tilde(&Point::Infinity).unwrap(), Point::Infinity);
    }

    #[test]
    fn alpha_examples() {
        let p = euler();
        assert_eq!(p.alpha(Side::E, &Point::Infinity).unwrap(), SquareClass::one());
        assert_eq!(p.alpha(Side::E, &p.p0(Side::E)).unwrap().rep(), &int(3));
        let pt = p.e.point_i(2, 3).unwrap();
        assert_eq!(p.alpha(Side::E, &pt).unwrap().rep(), &int(3));
        assert_eq!(p.alpha(Side::Tilde, &p.p0(Side::Tilde)).unwrap().rep(), &int(-3));
    }

    #[test]
    fn ker_index_examples() {
        assert_eq!(euler().ker_index(), 2);
        assert_eq!(make_td_pair(&int(-1), &int(0)).unwrap().ker_index(), 1);
        assert_eq!(make_td_pair(&int(1), &int(0)).unwrap().ker_index(), 2);
    }

    #[test]
    fn square_class_product() {
        let s = SquareClass::from_squarefree(int(-6));
        let t = SquareClass::from_squarefree(int(10));
        assert_eq!(s.times(&t).rep(), &int(-15));
        assert_eq!(s.times(&s), SquareClass::one());
    }

    #[test]
    fn euler_images() {
        let p = euler();
        let e = alpha2_image(&p, Side::E, SearchBounds::default()).unwrap();
        let get = |list: &[ClassStatus<SquareClass>], v: i64| {
            list.iter().find(|s| s.class.rep() == &int(v)).unwrap().status.clone()
        };
        assert!(get(&e, 1).is_in());
        assert!(get(&e, 3).is_in());
        assert_eq!(get(&e, -1), Status::ProvedOut(Certificate::Local { modulus: 3 }));
        assert_eq!(get(&e, -3), Status::ProvedOut(Certificate::Local { modulus: 3 }));
        let t = alpha2_image(&p, Side::Tilde, SearchBounds::default()).unwrap();
        let ins: Vec<Int> = t.iter().filter(|s| s.status.is_in()).map(|s| s.class.rep().clone()).collect();
        assert_eq!(ins, vec![int(1), int(-3)]);
    }

    #[test]
    fn euler_rank() {
        let r = rank_bounds_2(&euler(), SearchBounds::default()).unwrap();
        assert_eq!((r.rank.lower, r.rank.upper), (0, 0));
        assert_eq!(r.ker_index, 2);
        assert_eq!(r.two_torsion, 2);
        assert_eq!(r.torsion.len(), 6);
    }

    #[test]
    fn congruent_one_pair() {
        let p = make_td_pair(&int(-1), &int(0)).unwrap();
        let r = rank_bounds_2(&p, SearchBounds::default()).unwrap();
        let e: Vec<Int> = r.image(Side::E).iter().map(|c| c.rep().clone()).collect();
        assert_eq!(e, vec![int(1), int(-1)]);
        let t: Vec<Int> = r.image(Side::Tilde).iter().map(|c| c.rep().clone()).collect();
        assert_eq!(t, vec![int(1), int(2)]);
        assert_eq!(r.two_torsion, 4);
        assert_eq!((r.rank.lower, r.rank.upper), (0, 0));
    }

    #[test]
    fn witness_reconstruction() {
        // y^2 = x^3 - 2x has rank one, (2, 2) and (-1, 1)
        let p = make_td_pair(&int(-2), &int(0)).unwrap();
        let r = rank_bounds_2(&p, SearchBounds::default()).unwrap();
        for side in [Side::E, Side::Tilde] {
            let list = if side == Side::E { &r.e_side } else { &r.tilde_side };
            for cs in list {
                if let Status::ProvedIn(w) = &cs.status {
                    assert!(p.side(side).curve.contains(&w.point));
                    assert_eq!(p.alpha(side, &w.point).unwrap(), cs.class);
                }
            }
        }
        assert!(r.rank.lower >= 1);
    }

    #[test]
    fn sign_obstruction() {
        let h = HomSpace2::new(&int(-1), &int(-1), &int(3));
        assert!(h.negative_definite());
        let h = HomSpace2::new(&int(1), &int(-1), &int(3));
        assert!(!h.negative_definite());
        // c > 0 needs 4B > 9c^2
        let h = HomSpace2::new(&int(-1), &int(1), &int(2));
        assert!(!h.negative_definite());
        let h = HomSpace2::new(&int(-1), &int(1), &int(4));
        assert!(h.negative_definite());
        let h = HomSpace2::new(&int(-2), &int(1), &int(6));
        assert!(h.negative_definite());
    }

    #[test]
    fn reduction_to_minimal_pair() {
        let p = make_td_pair(&int(0), &int(-4)).unwrap();
        let (l, small) = p.reduced().unwrap().unwrap();
        assert_eq!(l, int(2));
        assert_eq!((small.a, small.c), (int(0), int(-1)));
        assert!(euler().reduced().unwrap().is_none());
    }
}
