//! Exact elements of cyclotomic fields `Q(ζ_L)`.
//!
//! Values are kept in the power basis `1, ζ, ..., ζ^{φ(L)-1}` after
//! reduction modulo the cyclotomic polynomial `Φ_L`, so two sums of roots
//! of unity are equal exactly when their reduced coefficients agree.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::phase::Phase;

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n > 0);
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        num = divide_exact(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &x) in den.iter().enumerate() {
            rem[i + j] -= c * x;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

#[derive(Debug, Clone)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero() -> Cyclotomic {
        Cyclotomic { conductor: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn rational(q: BigRational) -> Cyclotomic {
        Cyclotomic { conductor: 1, coeffs: vec![q] }
    }

    /// `Σ c · exp(2πi·phase)`.
    pub fn from_terms(terms: impl IntoIterator<Item = (Phase, BigRational)>) -> Cyclotomic {
        let terms: Vec<(Phase, BigRational)> = terms.into_iter().collect();
        let conductor = terms.iter().fold(1u64, |acc, (p, _)| acc.lcm(&p.order()));
        let mut dense = vec![BigRational::zero(); conductor as usize];
        for (p, c) in terms {
            let k = p.residue_mod(conductor).expect("conductor is a multiple of the order");
            dense[k as usize] += c;
        }
        Cyclotomic::reduce(conductor, dense)
    }

    fn reduce(conductor: u64, mut dense: Vec<BigRational>) -> Cyclotomic {
        let phi = cyclotomic_polynomial(conductor);
        let deg = phi.len() - 1;
        for top in (deg..dense.len()).rev() {
            let c = std::mem::take(&mut dense[top]);
            if c.is_zero() {
                continue;
            }
            for (j, &x) in phi.iter().enumerate().take(deg) {
                if x != 0 {
                    dense[top - deg + j] -= &c * BigRational::from_integer(BigInt::from(x));
                }
            }
        }
        dense.truncate(deg.max(1));
        Cyclotomic { conductor, coeffs: dense }
    }

    fn embed(&self, conductor: u64) -> Cyclotomic {
        self.clone().with_conductor(conductor)
    }

    fn with_conductor(self, conductor: u64) -> Cyclotomic {
        if self.conductor == conductor {
            return self;
        }
        let step = conductor / self.conductor;
        let mut dense = vec![BigRational::zero(); conductor as usize];
        for (k, c) in self.coeffs.into_iter().enumerate() {
            dense[k * step as usize] = c;
        }
        Cyclotomic::reduce(conductor, dense)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational number, when it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    pub fn scale(&self, q: &BigRational) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let l = self.conductor.lcm(&other.conductor);
        let a = self.embed(l);
        let b = other.embed(l);
        Cyclotomic { conductor: l, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Floating-point value, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let (x, y) = Phase::from_residue(k as u64, self.conductor).to_complex();
            re += c * x;
            im += c * y;
        }
        (re, im)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Cyclotomic) -> bool {
        self.sub(other).is_zero()
    }
}

impl Eq for Cyclotomic {}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Cyclotomic {
    /// Rational values print as `p/q`; others as `c0 + c1*e(1/L) + ...`,
    /// where `e(x)` is `exp(2πi x)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return f.write_str(&fmt_rational(&q));
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if k == 0 {
                f.write_str(&fmt_rational(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", fmt_rational(&mag))?;
                }
                write!(f, "e({})", Phase::from_residue(k as u64, self.conductor))?;
            }
        }
        Ok(())
    }
}
