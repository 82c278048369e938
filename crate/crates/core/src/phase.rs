//! Exact roots of unity.
//!
//! A [`Phase`] is the complex number `exp(2πi k/N)`, stored as the reduced
//! fraction `k/N` of a full turn. Multiplying phases adds fractions, so all
//! phase arithmetic here is written additively.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Phase {
    num: u64,
    den: u64,
}

impl Phase {
    pub const ONE: Phase = Phase { num: 0, den: 1 };

    /// `exp(2πi k/n)`; `k` may be negative or exceed `n`.
    pub fn new(k: i64, n: u64) -> Phase {
        assert!(n > 0, "phase modulus must be positive");
        let k = k.rem_euclid(n as i64) as u64;
        let g = k.gcd(&n);
        Phase { num: k / g, den: n / g }
    }

    /// Builds a phase from a residue already reduced into `[0, n)` space.
    pub fn from_residue(k: u64, n: u64) -> Phase {
        assert!(n > 0, "phase modulus must be positive");
        let k = k % n;
        let g = k.gcd(&n);
        Phase { num: k / g, den: n / g }
    }

    pub fn minus_one() -> Phase {
        Phase { num: 1, den: 2 }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    /// Order of the phase as a root of unity.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    /// Residue of this phase over modulus `n`, if `exp(2πi k/n)` represents it.
    pub fn residue_mod(&self, n: u64) -> Option<u64> {
        if n % self.den != 0 {
            return None;
        }
        Some(self.num * (n / self.den))
    }

    pub fn pow(&self, e: i64) -> Phase {
        let k = (self.num as i128 * e as i128).rem_euclid(self.den as i128) as u64;
        Phase::from_residue(k, self.den)
    }

    /// Floating value `(re, im)`; only for numerical side computations.
    pub fn to_complex(&self) -> (f64, f64) {
        let t = 2.0 * std::f64::consts::PI * self.num as f64 / self.den as f64;
        (t.cos(), t.sin())
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ONE
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        let l = self.den.lcm(&rhs.den);
        let k = self.num * (l / self.den) + rhs.num * (l / rhs.den);
        Phase::from_residue(k, l)
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, rhs: Phase) {
        *self = *self + rhs;
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::from_residue(self.den - self.num, self.den)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

impl SubAssign for Phase {
    fn sub_assign(&mut self, rhs: Phase) {
        *self = *self - rhs;
    }
}

impl std::iter::Sum for Phase {
    fn sum<I: Iterator<Item = Phase>>(iter: I) -> Phase {
        iter.fold(Phase::ONE, |a, b| a + b)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Phase {
    type Err = Error;

    /// Accepts `k/N` with `N > 0`; a bare integer counts whole turns.
    fn from_str(s: &str) -> Result<Phase, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad phase `{s}` (expected k/N)"));
        match s.split_once('/') {
            Some((k, n)) => {
                let k: i64 = k.trim().parse().map_err(|_| bad())?;
                let n: u64 = n.trim().parse().map_err(|_| bad())?;
                if n == 0 {
                    return Err(bad());
                }
                Ok(Phase::new(k, n))
            }
            None => {
                let _: i64 = s.parse().map_err(|_| bad())?;
                Ok(Phase::ONE)
            }
        }
    }
}
