//! Finitely generated abelian groups presented as `Z^k / (relations)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::snf::{smith, Integers, SnfOptions};

/// The cokernel of a relation matrix, with explicit coordinates.
///
/// `factors[j]` is the order of the `j`-th cyclic summand (`0` for a free
/// summand). `coords` maps an ambient vector to its coordinates, and
/// `generator(j)` is an ambient vector projecting onto the `j`-th unit.
#[derive(Debug, Clone)]
pub struct AbelianQuotient {
    dim: usize,
    factors: Vec<BigInt>,
    coord_rows: Vec<Vec<BigInt>>,
    generators: Vec<Vec<BigInt>>,
}

impl AbelianQuotient {
    /// `relations` are vectors of length `dim`; the result is `Z^dim` modulo their span.
    pub fn new(dim: usize, relations: &[Vec<BigInt>]) -> AbelianQuotient {
        let ncols = relations.len();
        let m: Vec<Vec<BigInt>> = (0..dim).map(|i| relations.iter().map(|r| r[i].clone()).collect()).collect();
        let opts = SnfOptions { left: true, left_inverse: true, divisibility: true, ..Default::default() };
        let snf = smith(&Integers, m, ncols, opts).expect("bigint arithmetic cannot overflow");
        let u = snf.left.expect("requested");
        let uinv = snf.left_inverse.expect("requested");
        let mut factors = Vec::new();
        let mut coord_rows = Vec::new();
        let mut generators = Vec::new();
        for i in 0..dim {
            let d = if i < snf.rank { snf.diagonal[i].abs() } else { BigInt::zero() };
            if d.is_one() {
                continue;
            }
            factors.push(d);
            coord_rows.push(u[i].clone());
            generators.push(uinv.iter().map(|row| row[i].clone()).collect());
        }
        AbelianQuotient { dim, factors, coord_rows, generators }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    /// Number of elements, or `None` when a summand is free.
    pub fn order(&self) -> Option<BigInt> {
        self.factors.iter().try_fold(BigInt::one(), |acc, d| (!d.is_zero()).then(|| acc * d))
    }

    pub fn factors_u64(&self) -> Vec<u64> {
        self.factors.iter().map(|d| d.to_u64().expect("factor fits u64")).collect()
    }

    /// Coordinates reduced into `[0, d_j)` for finite summands.
    pub fn coords(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim);
        self.coord_rows
            .iter()
            .zip(&self.factors)
            .map(|(row, d)| {
                let c: BigInt = row.iter().zip(v).map(|(a, b)| a * b).sum();
                if d.is_zero() {
                    c
                } else {
                    c.mod_floor(d)
                }
            })
            .collect()
    }

    pub fn generator(&self, j: usize) -> &[BigInt] {
        &self.generators[j]
    }

    pub fn is_zero(&self, v: &[BigInt]) -> bool {
        self.coords(v).iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn z2_times_z3_is_cyclic() {
        let q = AbelianQuotient::new(2, &[b(&[2, 0]), b(&[0, 3])]);
        assert_eq!(q.factors(), &b(&[6])[..]);
        let g = q.generator(0).to_vec();
        assert_eq!(q.coords(&g), b(&[1]));
        assert!(q.is_zero(&b(&[2, 3])));
        assert!(!q.is_zero(&b(&[1, 0])));
    }

    #[test]
    fn free_part() {
        let q = AbelianQuotient::new(2, &[b(&[2, 0])]);
        assert_eq!(q.factors(), &b(&[2, 0])[..]);
        assert_eq!(q.order(), None);
    }
}
