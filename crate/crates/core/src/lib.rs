//! Exact descent machinery for curves of the form `y^2 = x^3 + a x + b`
//! arising from the perfect cuboid parametrisation.
//!
//! The crate is layered bottom-up:
//!
//! * [`arith`]: big integers, rationals, factorization and power-free parts.
//! * [`weierstrass`]: curves, the affine group law, Lutz–Nagell torsion.
//! * [`cuboid`]: the two coefficient families and their reduction to curves.
//! * [`two_descent`]: 2-isogeny descent for curves with a rational 2-torsion point.
//! * [`eisenstein`]: the ring `Z[ε]`, `ε = (1 + √-3) / 2`.
//! * [`three_descent`]: 3-isogeny descent for `y^2 = x^3 + e^2`.

pub mod arith;
pub mod cuboid;
pub mod eisenstein;
pub mod rank;
pub mod status;
pub mod three_descent;
pub mod two_descent;
pub mod weierstrass;

pub use arith::{Int, Rat};

