//! Per-class outcomes of a descent sweep and the bookkeeping that turns
//! individual results into subgroup statements.

use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::arith::Int;
use crate::eisenstein::EisInt;
use crate::weierstrass::Point;

/// A descent codomain: an elementary abelian group with canonical elements.
pub trait GroupClass: Clone + Ord + Debug + Send + Sync {
    fn identity() -> Self;
    fn times(&self, other: &Self) -> Self;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    /// Image of a torsion point.
    Torsion,
    /// `N^2 = s M^4 + 3c M^2 q^2 + (B/s) q^4`.
    Quartic { m: Int, n: Int, q: Int },
    /// Rational homogeneous cubic.
    Cubic { x: Int, y: Int, z: Int },
    /// Eisenstein homogeneous cubic.
    EisCubic { x: EisInt, y: EisInt, z: EisInt },
    /// Sum of the witnesses of two member classes.
    Product,
}

/// A rational point whose descent image is the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub point: Point,
    pub source: Source,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate<C> {
    /// No primitive solution modulo this prime power.
    Local { modulus: u64 },
    /// Right-hand side is negative definite.
    Sign,
    /// Norm of the class is not a rational cube, while every image value
    /// has norm `x̃^3`.
    Norm,
    /// `member` is in the image and `member * self` is not.
    Coset { member: C, excluded: C },
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Status<C> {
    ProvedIn(Witness),
    ProvedOut(Certificate<C>),
    Unknown,
}

impl<C> Status<C> {
    pub fn is_in(&self) -> bool {
        matches!(self, Status::ProvedIn(_))
    }

    pub fn is_out(&self) -> bool {
        matches!(self, Status::ProvedOut(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Status::Unknown)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassStatus<C> {
    pub class: C,
    pub status: Status<C>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("class {0} proved both inside and outside the image")]
pub struct Inconsistent(pub String);

/// Closes the member set under products and excludes cosets of
/// excluded classes, until nothing changes.
pub(crate) fn close_table<C: GroupClass>(
    table: &mut BTreeMap<C, Status<C>>,
    add: impl Fn(&Point, &Point) -> Point,
) -> Result<(), Inconsistent> {
    loop {
        let mut changed = false;
        let members: Vec<(C, Point)> = table
            .iter()
            .filter_map(|(c, s)| match s {
                Status::ProvedIn(w) => Some((c.clone(), w.point.clone())),
                _ => None,
            })
            .collect();
        for (i, (c1, p1)) in members.iter().enumerate() {
            for (c2, p2) in &members[i..] {
                let prod = c1.times(c2);
                match table.get(&prod) {
                    Some(Status::ProvedIn(_)) | None => {}
                    Some(Status::ProvedOut(_)) => return Err(Inconsistent(format!("{prod:?}"))),
                    Some(Status::Unknown) => {
                        table.insert(
                            prod,
                            Status::ProvedIn(Witness {
                                point: add(p1, p2),
                                source: Source::Product,
                            }),
                        );
                        changed = true;
                    }
                }
            }
        }
        let members: Vec<C> = table
            .iter()
            .filter(|(_, s)| s.is_in())
            .map(|(c, _)| c.clone())
            .collect();
        let outs: Vec<C> = table
            .iter()
            .filter(|(_, s)| s.is_out())
            .map(|(c, _)| c.clone())
            .collect();
        for m in &members {
            for o in &outs {
                let prod = m.times(o);
                if let Some(s @ Status::Unknown) = table.get_mut(&prod) {
                    *s = Status::ProvedOut(Certificate::Coset {
                        member: m.clone(),
                        excluded: o.clone(),
                    });
                    changed = true;
                } else if table.get(&prod).is_some_and(|s| s.is_in()) {
                    return Err(Inconsistent(format!("{o:?}")));
                }
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

pub(crate) fn into_list<C: Clone>(table: BTreeMap<C, Status<C>>) -> Vec<ClassStatus<C>> {
    table
        .into_iter()
        .map(|(class, status)| ClassStatus { class, status })
        .collect()
}

pub fn count_in<C>(list: &[ClassStatus<C>]) -> usize {
    list.iter().filter(|s| s.status.is_in()).count()
}

pub fn count_out<C>(list: &[ClassStatus<C>]) -> usize {
    list.iter().filter(|s| s.status.is_out()).count()
}

pub fn count_unknown<C>(list: &[ClassStatus<C>]) -> usize {
    list.iter().filter(|s| s.status.is_unknown()).count()
}
