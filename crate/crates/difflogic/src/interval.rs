//! Intervals over the rationals with integer (or infinite) endpoints.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// An interval endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    NegInf,
    Finite(i64),
    PosInf,
}

impl Bound {
    pub fn finite(self) -> Option<i64> {
        match self {
            Bound::Finite(v) => Some(v),
            _ => None,
        }
    }

    fn neg(self) -> Bound {
        match self {
            Bound::NegInf => Bound::PosInf,
            Bound::PosInf => Bound::NegInf,
            Bound::Finite(v) => Bound::Finite(-v),
        }
    }
}

/// Why an interval could not be built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalError {
    Empty,
    ClosedInfinity,
    Misplaced,
}

impl fmt::Display for IntervalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntervalError::Empty => f.write_str("empty interval"),
            IntervalError::ClosedInfinity => f.write_str("infinite endpoints must be open"),
            IntervalError::Misplaced => f.write_str("lower bound +inf or upper bound -inf"),
        }
    }
}

impl core::error::Error for IntervalError {}

/// A non-empty interval. Infinite ends are always open.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    lo: Bound,
    hi: Bound,
    lo_open: bool,
    hi_open: bool,
}

impl Interval {
    pub fn new(lo: Bound, lo_open: bool, hi: Bound, hi_open: bool) -> Result<Interval, IntervalError> {
        if lo == Bound::PosInf || hi == Bound::NegInf {
            return Err(IntervalError::Misplaced);
        }
        if (lo == Bound::NegInf && !lo_open) || (hi == Bound::PosInf && !hi_open) {
            return Err(IntervalError::ClosedInfinity);
        }
        if let (Bound::Finite(a), Bound::Finite(b)) = (lo, hi) {
            if a > b || (a == b && (lo_open || hi_open)) {
                return Err(IntervalError::Empty);
            }
        }
        Ok(Interval { lo, hi, lo_open, hi_open })
    }

    /// `[a,a]`.
    pub fn point(a: i64) -> Interval {
        Interval { lo: Bound::Finite(a), hi: Bound::Finite(a), lo_open: false, hi_open: false }
    }

    /// `[a,b]`; panics if `a > b`.
    pub fn closed(a: i64, b: i64) -> Interval {
        Interval::new(Bound::Finite(a), false, Bound::Finite(b), false).expect("a <= b")
    }

    /// `(a,b)`; panics if `a >= b`.
    pub fn open(a: i64, b: i64) -> Interval {
        Interval::new(Bound::Finite(a), true, Bound::Finite(b), true).expect("a < b")
    }

    /// `(a,+inf)`.
    pub fn above(a: i64) -> Interval {
        Interval { lo: Bound::Finite(a), hi: Bound::PosInf, lo_open: true, hi_open: true }
    }

    /// `[a,+inf)`.
    pub fn at_least(a: i64) -> Interval {
        Interval { lo: Bound::Finite(a), hi: Bound::PosInf, lo_open: false, hi_open: true }
    }

    /// `(-inf,b)`.
    pub fn below(b: i64) -> Interval {
        Interval { lo: Bound::NegInf, hi: Bound::Finite(b), lo_open: true, hi_open: true }
    }

    /// `(-inf,b]`.
    pub fn at_most(b: i64) -> Interval {
        Interval { lo: Bound::NegInf, hi: Bound::Finite(b), lo_open: true, hi_open: false }
    }

    /// `(-inf,+inf)`.
    pub fn full() -> Interval {
        Interval { lo: Bound::NegInf, hi: Bound::PosInf, lo_open: true, hi_open: true }
    }

    pub fn lo(&self) -> Bound {
        self.lo
    }

    pub fn hi(&self) -> Bound {
        self.hi
    }

    pub fn lo_open(&self) -> bool {
        self.lo_open
    }

    pub fn hi_open(&self) -> bool {
        self.hi_open
    }

    pub fn is_point(&self) -> bool {
        matches!((self.lo, self.hi), (Bound::Finite(a), Bound::Finite(b)) if a == b)
    }

    /// True if some finite endpoint is excluded.
    pub fn has_strict_bound(&self) -> bool {
        (self.lo_open && self.lo.finite().is_some()) || (self.hi_open && self.hi.finite().is_some())
    }

    /// Largest absolute value of a finite endpoint.
    pub fn max_abs(&self) -> Option<u64> {
        let a = self.lo.finite().map(i64::unsigned_abs);
        let b = self.hi.finite().map(i64::unsigned_abs);
        a.max(b)
    }

    /// The interval `{-v : v in self}`.
    pub fn mirror(&self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg(), lo_open: self.hi_open, hi_open: self.lo_open }
    }

    /// Membership test given a comparator `cmp(c) = value.cmp(c)` for integers `c`.
    pub fn contains_by<F: Fn(i64) -> Ordering>(&self, cmp: F) -> bool {
        let lo_ok = match self.lo {
            Bound::NegInf => true,
            Bound::Finite(a) => match cmp(a) {
                Ordering::Greater => true,
                Ordering::Equal => !self.lo_open,
                Ordering::Less => false,
            },
            Bound::PosInf => false,
        };
        lo_ok
            && match self.hi {
                Bound::PosInf => true,
                Bound::Finite(b) => match cmp(b) {
                    Ordering::Less => true,
                    Ordering::Equal => !self.hi_open,
                    Ordering::Greater => false,
                },
                Bound::NegInf => false,
            }
    }

    pub fn contains_int(&self, v: i64) -> bool {
        self.contains_by(|c| v.cmp(&c))
    }

    /// Membership of `num / den` for `den > 0`.
    pub fn contains_scaled(&self, num: i64, den: i64) -> bool {
        debug_assert!(den > 0);
        self.contains_by(|c| (num as i128).cmp(&(c as i128 * den as i128)))
    }

    /// Set intersection; `None` when empty.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_open) = match self.lo.cmp(&other.lo) {
            Ordering::Greater => (self.lo, self.lo_open),
            Ordering::Less => (other.lo, other.lo_open),
            Ordering::Equal => (self.lo, self.lo_open || other.lo_open),
        };
        let (hi, hi_open) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi, self.hi_open),
            Ordering::Greater => (other.hi, other.hi_open),
            Ordering::Equal => (self.hi, self.hi_open || other.hi_open),
        };
        Interval::new(lo, lo_open, hi, hi_open).ok()
    }

    /// True if every point of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        self.intersect(other) == Some(*self)
    }

    /// The complement as at most two disjoint intervals, in ascending order.
    pub fn complement(&self) -> Vec<Interval> {
        let mut out = Vec::new();
        if let Bound::Finite(a) = self.lo {
            out.push(Interval { lo: Bound::NegInf, hi: Bound::Finite(a), lo_open: true, hi_open: !self.lo_open });
        }
        if let Bound::Finite(b) = self.hi {
            out.push(Interval { lo: Bound::Finite(b), hi: Bound::PosInf, lo_open: !self.hi_open, hi_open: true });
        }
        out
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.lo_open { "(" } else { "[" })?;
        match self.lo {
            Bound::NegInf => f.write_str("-inf")?,
            Bound::Finite(v) => write!(f, "{v}")?,
            Bound::PosInf => f.write_str("+inf")?,
        }
        f.write_str(",")?;
        match self.hi {
            Bound::NegInf => f.write_str("-inf")?,
            Bound::Finite(v) => write!(f, "{v}")?,
            Bound::PosInf => f.write_str("+inf")?,
        }
        f.write_str(if self.hi_open { ")" } else { "]" })
    }
}
