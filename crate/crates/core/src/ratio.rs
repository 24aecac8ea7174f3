//! Exact non-negative rationals for expansion parameters.
//!
//! Expansion thresholds compare edge counts against `phi^{-1} * |boundary|`;
//! doing that in integers keeps every certificate reproducible, so `phi` is
//! carried as a reduced fraction instead of a float.

use std::fmt;
use std::str::FromStr;

use crate::Error;

/// A non-negative rational `num / den` with `den > 0`, kept reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: u64,
    den: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Result<Self, Error> {
        if den == 0 {
            return Err(Error::BadParameter("ratio denominator is zero".into()));
        }
        let g = gcd(num.max(1), den);
        let g = if num == 0 { den } else { g };
        Ok(Ratio {
            num: num / g,
            den: den / g,
        })
    }

    pub fn int(n: u64) -> Self {
        Ratio { num: n, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn recip(&self) -> Result<Self, Error> {
        if self.num == 0 {
            return Err(Error::BadParameter("cannot invert zero ratio".into()));
        }
        Ok(Ratio {
            num: self.den,
            den: self.num,
        })
    }

    /// `self <= a / b` as an exact integer comparison.
    pub fn le_fraction(&self, a: u128, b: u128) -> bool {
        debug_assert!(b > 0);
        (self.num as u128) * b <= a * (self.den as u128)
    }

    /// `value <= self * scale`, all exact.
    pub fn scaled_at_least(&self, value: u64, scale: u64) -> bool {
        (value as u128) * (self.den as u128) <= (self.num as u128) * (scale as u128)
    }

    /// Smallest integer `>= self * scale`.
    pub fn ceil_mul(&self, scale: u64) -> u64 {
        let prod = (self.num as u128) * (scale as u128);
        prod.div_ceil(self.den as u128) as u64
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Ratio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |_| Error::BadParameter(format!("cannot parse ratio from {s:?}"));
        match s.split_once('/') {
            Some((a, b)) => Ratio::new(a.trim().parse().map_err(bad)?, b.trim().parse().map_err(bad)?),
            None => Ok(Ratio::int(s.trim().parse().map_err(bad)?)),
        }
    }
}
