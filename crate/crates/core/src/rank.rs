//! Rank intervals produced by the descent engines.

/// `lower <= rank <= upper`; `undecided` counts classes left `Unknown`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RankBounds {
    pub lower: u32,
    pub upper: u32,
    pub undecided: usize,
}

impl RankBounds {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// Intersection of two valid intervals for the same curve.
    pub fn tighten(self, other: RankBounds) -> RankBounds {
        let lower = self.lower.max(other.lower);
        let upper = self.upper.min(other.upper).max(lower);
        RankBounds {
            lower,
            upper,
            undecided: self.undecided.min(other.undecided),
        }
    }
}

/// Exponent of the largest power of `base` that is at most `n` (`n >= 1`).
pub fn log_floor(n: usize, base: usize) -> u32 {
    crate::arith::floor_log(n.max(1) as u128, base as u128)
}

/// Interval from side counts: `base^(r + shift) = in * in~ / denom`.
pub(crate) fn bounds_from_counts(
    base: usize,
    lo: (usize, usize),
    hi: (usize, usize),
    denom_log: u32,
    undecided: usize,
) -> RankBounds {
    let lo_log = log_floor(lo.0, base) + log_floor(lo.1, base);
    let hi_log = log_floor(hi.0, base) + log_floor(hi.1, base);
    let lower = lo_log.saturating_sub(denom_log);
    let upper = hi_log.saturating_sub(denom_log).max(lower);
    RankBounds {
        lower,
        upper,
        undecided,
    }
}
