//! Closed intervals with exact rational endpoints.
//!
//! This is the only "approximation" device in the crate: every decision
//! procedure (signs, floors, decimal printing, eigenvalue dominance)
//! evaluates on such intervals and refines until the answer is certain.

use crate::rational::{decimal_string, Rational};
use num_traits::{Signed, Zero};
use std::fmt;

/// Closed interval `[lo, hi]` with `lo <= hi`, exact endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    /// Degenerate point interval.
    pub fn point(v: Rational) -> Self {
        RatInterval { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, v: &Rational) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign of every point in the interval, if it is uniform.
    /// `None` when the interval straddles (or touches) zero.
    pub fn definite_sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    /// Upper bound for |x| over the interval.
    pub fn abs_upper(&self) -> Rational {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    /// Lower bound for |x| over the interval (zero if it straddles).
    pub fn abs_lower(&self) -> Rational {
        if self.contains_zero() {
            Rational::zero()
        } else if self.lo.is_positive() {
            self.lo.clone()
        } else {
            self.hi.abs()
        }
    }

    /// Interval |x|.
    pub fn abs(&self) -> RatInterval {
        RatInterval::new(self.abs_lower(), self.abs_upper())
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, other: &RatInterval) -> RatInterval {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        RatInterval { lo, hi }
    }

    pub fn mul_scalar(&self, s: &Rational) -> RatInterval {
        if s.is_negative() {
            RatInterval::new(&self.hi * s, &self.lo * s)
        } else {
            RatInterval::new(&self.lo * s, &self.hi * s)
        }
    }

    pub fn add_scalar(&self, s: &Rational) -> RatInterval {
        RatInterval::new(&self.lo + s, &self.hi + s)
    }

    /// Interval 1/x; requires the interval not to contain zero.
    pub fn recip(&self) -> RatInterval {
        assert!(!self.contains_zero(), "recip of interval containing zero");
        RatInterval::new(self.hi.recip(), self.lo.recip())
    }

    /// Interval quotient; divisor must not contain zero.
    pub fn div(&self, other: &RatInterval) -> RatInterval {
        self.mul(&other.recip())
    }

    pub fn pow(&self, mut e: u64) -> RatInterval {
        let mut base = self.clone();
        let mut acc = RatInterval::point(Rational::from_integer(1.into()));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_disjoint(&self, other: &RatInterval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    /// Decimal rendering `lo..hi` used in diagnostics.
    pub fn approx_str(&self, places: u32) -> String {
        format!(
            "[{}, {}]",
            decimal_string(&self.lo, places),
            decimal_string(&self.hi, places)
        )
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}
