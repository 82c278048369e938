//! Howell form of submodules of `(Z/N)^m`.
//!
//! A Howell basis is an echelon basis with leading entries dividing `N`,
//! entries above each pivot reduced, and closed under the annihilator
//! multiples `(N/a)·row`. Greedy left-to-right reduction against it yields
//! the lexicographically least member of a coset, which gives a canonical
//! representative modulo the submodule.

use num_integer::Integer;

use crate::snf::{mod_inverse, IntegersMod, SnfRing};

#[derive(Debug, Clone)]
struct Row {
    pivot: usize,
    values: Vec<u64>,
    // coefficients expressing the row in terms of the generators
    combo: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct HowellForm {
    ring: IntegersMod,
    width: usize,
    generators: usize,
    rows: Vec<Row>,
}

impl HowellForm {
    pub fn new(modulus: u64, width: usize, generators: &[Vec<u64>]) -> HowellForm {
        let ring = IntegersMod::new(modulus);
        let ngen = generators.len();
        let n = modulus;
        let lead = |r: &Row| r.values.iter().position(|&x| x != 0);
        let mut buckets: Vec<Vec<Row>> = vec![Vec::new(); width];
        for (i, g) in generators.iter().enumerate() {
            assert_eq!(g.len(), width);
            let mut combo = vec![0; ngen];
            combo[i] = 1 % n;
            let row = Row { pivot: 0, values: g.iter().map(|&x| x % n).collect(), combo };
            if let Some(c) = lead(&row) {
                buckets[c].push(row);
            }
        }
        let mut rows = Vec::new();
        for j in 0..width {
            let mut cand = std::mem::take(&mut buckets[j]);
            if cand.is_empty() {
                continue;
            }
            let pi = (0..cand.len()).min_by(|&a, &b| ring.norm_cmp(&cand[a].values[j], &cand[b].values[j])).unwrap();
            let mut piv = cand.swap_remove(pi);
            for mut r in cand {
                match ring.divide(&piv.values[j], &r.values[j]) {
                    Some(q) => axpy(&ring, &mut r, &piv, q),
                    None => {
                        let b = ring.bezout(&piv.values[j], &r.values[j]).unwrap();
                        let ny = ring.neg(&b.y).unwrap();
                        let new_piv = mix(&ring, &piv, &r, b.s, b.t);
                        r = mix(&ring, &piv, &r, ny, b.x);
                        piv = new_piv;
                    }
                }
                debug_assert_eq!(r.values[j], 0);
                if let Some(c) = lead(&r) {
                    buckets[c].push(r);
                }
            }
            // scale the pivot to a divisor of N
            let a = piv.values[j];
            let g = a.gcd(&n);
            let u = unit_to_gcd(a, n);
            piv = mix(&ring, &piv, &piv, u, 0);
            debug_assert_eq!(piv.values[j], g % n);
            let ann = n / g;
            if ann != n {
                let extra = mix(&ring, &piv, &piv, ann % n, 0);
                if let Some(c) = lead(&extra) {
                    buckets[c].push(extra);
                }
            }
            piv.pivot = j;
            rows.push(piv);
        }
        for i in 0..rows.len() {
            let (head, tail) = rows.split_at_mut(i);
            let r = &tail[0];
            let a = r.values[r.pivot];
            for above in head.iter_mut() {
                let q = above.values[r.pivot] / a;
                if q != 0 {
                    axpy(&ring, above, r, q);
                }
            }
        }
        HowellForm { ring, width, generators: ngen, rows }
    }

    pub fn modulus(&self) -> u64 {
        self.ring.modulus()
    }

    /// Number of elements of the submodule.
    pub fn submodule_order(&self) -> u128 {
        self.rows.iter().map(|r| (self.modulus() / r.values[r.pivot]) as u128).product()
    }

    /// Canonical coset representative of `v`, and coefficients `c` with
    /// `v = reduced + Σ c_j · generator_j`.
    pub fn reduce(&self, v: &[u64]) -> (Vec<u64>, Vec<u64>) {
        assert_eq!(v.len(), self.width);
        let n = self.modulus();
        let mut cur = Row { pivot: 0, values: v.iter().map(|&x| x % n).collect(), combo: vec![0; self.generators] };
        let mut used = vec![0u64; self.generators];
        for r in &self.rows {
            let q = cur.values[r.pivot] / r.values[r.pivot];
            if q != 0 {
                axpy(&self.ring, &mut cur, r, q);
                for (u, c) in used.iter_mut().zip(&r.combo) {
                    *u = ((*u as u128 + q as u128 * *c as u128) % n as u128) as u64;
                }
            }
        }
        (cur.values, used)
    }

    /// Coefficients over the generators when `v` lies in the submodule.
    pub fn solve(&self, v: &[u64]) -> Option<Vec<u64>> {
        let (rest, combo) = self.reduce(v);
        rest.iter().all(|&x| x == 0).then_some(combo)
    }
}

// row -= q * src
fn axpy(ring: &IntegersMod, row: &mut Row, src: &Row, q: u64) {
    let nq = ring.neg(&q).unwrap();
    for (x, y) in row.values.iter_mut().zip(&src.values) {
        *x = ring.lin(&1, x, &nq, y).unwrap();
    }
    for (x, y) in row.combo.iter_mut().zip(&src.combo) {
        *x = ring.lin(&1, x, &nq, y).unwrap();
    }
}

fn mix(ring: &IntegersMod, a: &Row, b: &Row, s: u64, t: u64) -> Row {
    let f = |x: &[u64], y: &[u64]| x.iter().zip(y).map(|(p, q)| ring.lin(&s, p, &t, q).unwrap()).collect();
    Row { pivot: a.pivot, values: f(&a.values, &b.values), combo: f(&a.combo, &b.combo) }
}

/// A unit `u` mod `n` with `u·a ≡ gcd(a, n)`.
fn unit_to_gcd(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let g = a.gcd(&n);
    let m = n / g;
    let base = if m == 1 { 1 } else { mod_inverse((a / g) % m, m).expect("coprime after dividing by gcd") };
    let mut u = base;
    while u.gcd(&n) != 1 {
        u += m;
    }
    u % n
}
