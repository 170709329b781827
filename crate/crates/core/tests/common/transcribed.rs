use descent_core::arith::{rat, Int, Rat};
use descent_core::cuboid::{eval_f, TERMS};
use num_traits::Zero;
use rand::Rng;

// Independent hand transcription of the polynomials, in source order: (coeff, b power, c power).
pub const P1_HAND: [(i64, u32, u32); 63] = [
    (7812, 4, 4), (-216, 2, 4), (-52, 2, 3), (1764, 3, 4), (-1200, 4, 3),
    (-1848, 4, 2), (720, 4, 1), (-36, 1, 4), (-1512, 3, 3), (-36, 3, 8), (288, 3, 2),
    (-108, 2, 6), (380, 2, 5), (378, 3, 7), (-231, 4, 8), (-300, 4, 7), (3906, 4, 6),
    (-13, 2, 7), (-8904, 4, 5), (-882, 3, 6), (18, 1, 6), (-1319, 6, 8), (20952, 5, 3),
    (-11952, 5, 2), (2592, 5, 1), (-48372, 6, 4), (31620, 6, 3), (-10552, 6, 2),
    (816, 6, 1), (1494, 5, 8), (-5238, 5, 7), (-4, 0, 5), (7905, 6, 7), (-24186, 6, 6),
    (288, 6, 0), (43740, 6, 5), (7686, 5, 6), (576, 7, 0), (128, 8, 0), (-15372, 5, 4),
    (-1080, 7, 8), (-3546, 7, 6), (51, 6, 9), (400, 8, 8), (-162, 5, 9), (8640, 7, 2),
    (-3456, 7, 1), (2808, 7, 7), (-1560, 8, 7), (3940, 8, 6), (216, 7, 9), (-960, 8, 1),
    (-6240, 8, 3), (9, 6, 10), (7880, 8, 4), (4, 8, 10), (-6732, 8, 5), (45, 4, 9),
    (3200, 8, 2), (-11232, 7, 3), (7092, 7, 4), (-18, 7, 10), (-60, 8, 9),
];

// Inside the leading b/2.
pub const P2_HAND: [(i64, u32, u32); 54] = [
    (832, 2, 2), (-1440, 2, 4), (-840, 2, 3), (4788, 3, 4), (396, 1, 3),
    (720, 3, 1), (808, 4, 4), (3032, 4, 3), (-2576, 4, 2), (-96, 4, 1), (448, 4, 0),
    (-504, 1, 4), (-4176, 3, 3), (-9, 3, 8), (72, 3, 2), (-720, 2, 6), (2288, 2, 5),
    (1044, 3, 7), (-322, 4, 8), (758, 4, 7), (404, 4, 6), (-210, 2, 7), (-2464, 4, 5),
    (-2394, 3, 6), (72, 0, 4), (252, 1, 6), (3168, 6, 8), (441, 5, 9), (-7056, 5, 1),
    (57960, 6, 4), (-47232, 6, 3), (25344, 6, 2), (-8064, 6, 1), (-1809, 5, 8),
    (14472, 5, 2), (3951, 5, 7), (-72, 0, 5), (36, 0, 6), (-11808, 6, 7), (1440, 5, 0),
    (28980, 6, 6), (-49032, 6, 5), (-4410, 5, 6), (8820, 5, 4), (-15804, 5, 3),
    (1152, 6, 0), (-504, 6, 9), (-45, 3, 9), (-6, 4, 9), (104, 2, 8), (36, 6, 10),
    (14, 4, 10), (-45, 5, 10), (-99, 1, 7),
];

pub fn monomial(coeff: i64, i: u32, j: u32, b: &Rat, c: &Rat) -> Rat {
    Rat::from_integer(Int::from(coeff)) * num_traits::pow(b.clone(), i as usize)
        * num_traits::pow(c.clone(), j as usize)
}

/// `F`, `P1`, `P2` evaluated term by term from the hand copy; `None` when `F = 0`.
pub fn oracle(b: &Rat, c: &Rat) -> Option<(Rat, Rat, Rat)> {
    let b2 = b * b;
    let c2 = c * c;
    let c3 = &c2 * c;
    let c4 = &c3 * c;
    let f = &b2 * &c4 - rat(6, 1) * &b2 * &c3 + rat(13, 1) * &b2 * &c2 - rat(12, 1) * &b2 * c
        + rat(4, 1) * &b2
        + &c2;
    if f.is_zero() {
        return None;
    }
    let s1 = P1_HAND
        .iter()
        .fold(Rat::zero(), |acc, &(k, i, j)| acc + monomial(k, i, j, b, c));
    let s2 = P2_HAND
        .iter()
        .fold(Rat::zero(), |acc, &(k, i, j)| acc + monomial(k, i, j, b, c));
    let p1 = s1 / (rat(2, 1) * &f);
    let p2 = b * s2 / (rat(2, 1) * &f);
    Some((f, p1, p2))
}

/// Straight sum over the bundled file, no grouping.
pub fn naive_file_sum(b: &Rat, c: &Rat) -> (Rat, Rat) {
    let t = &*TERMS;
    let f = eval_f(b, c);
    let sum = |list: &descent_core::cuboid::TermList| {
        let mut acc = Rat::zero();
        for term in &list.terms {
            let mut v = monomial(term.coeff, term.i, term.j, b, c);
            for _ in 0..term.k {
                v /= &f;
            }
            acc += v;
        }
        &list.scale * acc
    };
    (sum(&t.p1), sum(&t.p2))
}

pub fn random_rat<R: Rng>(r: &mut R) -> Rat {
    let den = r.gen_range(1i64..=12);
    let num = r.gen_range(-40i64..=40);
    rat(num, den)
}
