//! Smith normal form and row echelon reduction over principal ideal rings.
//!
//! Three coefficient rings are provided: checked machine integers
//! ([`SmallIntegers`]), arbitrary-precision integers ([`Integers`]) and the
//! residue ring `Z/N` ([`IntegersMod`]). The elimination always pivots on an
//! entry of minimal norm (absolute value over `Z`, `gcd(a, N)` over `Z/N`)
//! and falls back to a Bézout step when the pivot does not divide an entry.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Raised by [`SmallIntegers`] when an intermediate value leaves `i64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

type RingResult<T> = Result<T, Overflow>;

/// `s·a + t·b = g` with `x = a/g`, `y = b/g`, so `[[s, t], [-y, x]]` has determinant 1.
#[derive(Debug, Clone)]
pub struct Bezout<E> {
    pub g: E,
    pub s: E,
    pub t: E,
    pub x: E,
    pub y: E,
}

pub trait SnfRing {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    /// Orders nonzero elements by "size"; pivots are chosen minimal.
    fn norm_cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;
    /// `Some(q)` with `b = q·a` when `a` divides `b`.
    fn divide(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    fn bezout(&self, a: &Self::Elem, b: &Self::Elem) -> RingResult<Bezout<Self::Elem>>;
    /// `s·a + t·b`.
    fn lin(&self, s: &Self::Elem, a: &Self::Elem, t: &Self::Elem, b: &Self::Elem) -> RingResult<Self::Elem>;
    fn neg(&self, a: &Self::Elem) -> RingResult<Self::Elem>;
    /// A unit `u` with `u·a` in canonical form, if `a` is not canonical already.
    fn normalizing_unit(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Inverse of a unit.
    fn unit_inverse(&self, u: &Self::Elem) -> Self::Elem;
}

/// `Z` with checked `i64` arithmetic.
#[derive(Debug, Clone, Copy, Default)]
pub struct SmallIntegers;

/// `Z` with arbitrary precision.
#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

/// `Z/N`, elements kept as residues in `[0, N)`.
#[derive(Debug, Clone, Copy)]
pub struct IntegersMod {
    n: u64,
}

impl IntegersMod {
    pub fn new(n: u64) -> IntegersMod {
        assert!(n > 0 && n < (1 << 62), "modulus out of range");
        IntegersMod { n }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn reduce(&self, v: i128) -> u64 {
        v.rem_euclid(self.n as i128) as u64
    }
}

fn ext_gcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `m`, when `gcd(a, m) = 1`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = ext_gcd_i128(a as i128, m as i128);
    (g == 1).then(|| s.rem_euclid(m as i128) as u64)
}

impl SnfRing for SmallIntegers {
    type Elem = i64;

    fn zero(&self) -> i64 {
        0
    }
    fn one(&self) -> i64 {
        1
    }
    fn from_i64(&self, v: i64) -> i64 {
        v
    }
    fn is_zero(&self, a: &i64) -> bool {
        *a == 0
    }
    fn is_unit(&self, a: &i64) -> bool {
        a.unsigned_abs() == 1
    }
    fn norm_cmp(&self, a: &i64, b: &i64) -> Ordering {
        a.unsigned_abs().cmp(&b.unsigned_abs())
    }
    fn divide(&self, a: &i64, b: &i64) -> Option<i64> {
        if *a == 0 {
            return (*b == 0).then_some(0);
        }
        (b.checked_rem(*a)? == 0).then(|| b.checked_div(*a)).flatten()
    }
    fn bezout(&self, a: &i64, b: &i64) -> RingResult<Bezout<i64>> {
        let (g, s, t) = ext_gcd_i128(*a as i128, *b as i128);
        let c = |v: i128| i64::try_from(v).map_err(|_| Overflow);
        Ok(Bezout { g: c(g)?, s: c(s)?, t: c(t)?, x: c(*a as i128 / g)?, y: c(*b as i128 / g)? })
    }
    fn lin(&self, s: &i64, a: &i64, t: &i64, b: &i64) -> RingResult<i64> {
        let v = *s as i128 * *a as i128 + *t as i128 * *b as i128;
        i64::try_from(v).map_err(|_| Overflow)
    }
    fn neg(&self, a: &i64) -> RingResult<i64> {
        a.checked_neg().ok_or(Overflow)
    }
    fn normalizing_unit(&self, a: &i64) -> Option<i64> {
        (*a < 0).then_some(-1)
    }
    fn unit_inverse(&self, u: &i64) -> i64 {
        *u
    }
}

impl SnfRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
    fn norm_cmp(&self, a: &BigInt, b: &BigInt) -> Ordering {
        a.magnitude().cmp(b.magnitude())
    }
    fn divide(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if a.is_zero() {
            return b.is_zero().then(BigInt::zero);
        }
        let (q, r) = b.div_rem(a);
        r.is_zero().then_some(q)
    }
    fn bezout(&self, a: &BigInt, b: &BigInt) -> RingResult<Bezout<BigInt>> {
        let e = a.extended_gcd(b);
        let (g, s, t) = if e.gcd.is_negative() { (-e.gcd, -e.x, -e.y) } else { (e.gcd, e.x, e.y) };
        let x = a / &g;
        let y = b / &g;
        Ok(Bezout { g, s, t, x, y })
    }
    fn lin(&self, s: &BigInt, a: &BigInt, t: &BigInt, b: &BigInt) -> RingResult<BigInt> {
        Ok(s * a + t * b)
    }
    fn neg(&self, a: &BigInt) -> RingResult<BigInt> {
        Ok(-a)
    }
    fn normalizing_unit(&self, a: &BigInt) -> Option<BigInt> {
        a.is_negative().then(|| BigInt::from(-1))
    }
    fn unit_inverse(&self, u: &BigInt) -> BigInt {
        u.clone()
    }
}

impl SnfRing for IntegersMod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.n
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce(v as i128)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_unit(&self, a: &u64) -> bool {
        a.gcd(&self.n) == 1
    }
    fn norm_cmp(&self, a: &u64, b: &u64) -> Ordering {
        a.gcd(&self.n).cmp(&b.gcd(&self.n)).then(a.cmp(b))
    }
    fn divide(&self, a: &u64, b: &u64) -> Option<u64> {
        let n = self.n;
        let g = a.gcd(&n);
        if b % g != 0 {
            return None;
        }
        let m = n / g;
        if m == 1 {
            return Some(0);
        }
        let inv = mod_inverse(a / g % m, m)?;
        Some(((b / g) as u128 * inv as u128 % m as u128) as u64)
    }
    fn bezout(&self, a: &u64, b: &u64) -> RingResult<Bezout<u64>> {
        let (g, s, t) = ext_gcd_i128(*a as i128, *b as i128);
        Ok(Bezout {
            g: self.reduce(g),
            s: self.reduce(s),
            t: self.reduce(t),
            x: self.reduce(*a as i128 / g),
            y: self.reduce(*b as i128 / g),
        })
    }
    fn lin(&self, s: &u64, a: &u64, t: &u64, b: &u64) -> RingResult<u64> {
        let n = self.n as u128;
        Ok(((*s as u128 * *a as u128 % n + *t as u128 * *b as u128 % n) % n) as u64)
    }
    fn neg(&self, a: &u64) -> RingResult<u64> {
        Ok((self.n - a % self.n) % self.n)
    }
    fn normalizing_unit(&self, _a: &u64) -> Option<u64> {
        None
    }
    fn unit_inverse(&self, u: &u64) -> u64 {
        mod_inverse(*u, self.n).expect("not a unit")
    }
}

pub type Dense<E> = Vec<Vec<E>>;

/// Which transforms to accumulate alongside the reduction.
#[derive(Debug, Clone, Copy, Default)]
pub struct SnfOptions {
    pub left: bool,
    pub left_inverse: bool,
    pub right: bool,
    pub right_inverse: bool,
    /// Enforce `d1 | d2 | ...` on the diagonal.
    pub divisibility: bool,
}

impl SnfOptions {
    pub fn all() -> SnfOptions {
        SnfOptions { left: true, left_inverse: true, right: true, right_inverse: true, divisibility: true }
    }
}

/// `left · M · right = diag`, with the requested transforms populated.
#[derive(Debug, Clone)]
pub struct Snf<E> {
    pub rows: usize,
    pub cols: usize,
    pub diagonal: Vec<E>,
    pub rank: usize,
    pub left: Option<Dense<E>>,
    pub left_inverse: Option<Dense<E>>,
    pub right: Option<Dense<E>>,
    pub right_inverse: Option<Dense<E>>,
}

fn identity<R: SnfRing>(ring: &R, n: usize) -> Dense<R::Elem> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect()
}

struct Reducer<'a, R: SnfRing> {
    ring: &'a R,
    m: Dense<R::Elem>,
    rows: usize,
    cols: usize,
    u: Option<Dense<R::Elem>>,
    uinv: Option<Dense<R::Elem>>,
    v: Option<Dense<R::Elem>>,
    vinv: Option<Dense<R::Elem>>,
}

impl<'a, R: SnfRing> Reducer<'a, R> {
    // rows[dst] -= q * rows[src]
    fn row_sub(m: &mut Dense<R::Elem>, ring: &R, dst: usize, src: usize, q: &R::Elem) -> RingResult<()> {
        let nq = ring.neg(q)?;
        let one = ring.one();
        let (d, s) = pair_mut(m, dst, src);
        for (x, y) in d.iter_mut().zip(s.iter()) {
            if !ring.is_zero(y) {
                *x = ring.lin(&one, x, &nq, y)?;
            }
        }
        Ok(())
    }

    fn col_sub(m: &mut Dense<R::Elem>, ring: &R, dst: usize, src: usize, q: &R::Elem) -> RingResult<()> {
        let nq = ring.neg(q)?;
        let one = ring.one();
        for row in m.iter_mut() {
            if !ring.is_zero(&row[src]) {
                row[dst] = ring.lin(&one, &row[dst], &nq, &row[src])?;
            }
        }
        Ok(())
    }

    // (row_a, row_b) <- (p*a + q*b, r*a + s*b)
    fn row_mix(m: &mut Dense<R::Elem>, ring: &R, a: usize, b: usize, c: [&R::Elem; 4]) -> RingResult<()> {
        let (ra, rb) = pair_mut(m, a, b);
        for (x, y) in ra.iter_mut().zip(rb.iter_mut()) {
            if ring.is_zero(x) && ring.is_zero(y) {
                continue;
            }
            let nx = ring.lin(c[0], x, c[1], y)?;
            let ny = ring.lin(c[2], x, c[3], y)?;
            *x = nx;
            *y = ny;
        }
        Ok(())
    }

    fn col_mix(m: &mut Dense<R::Elem>, ring: &R, a: usize, b: usize, c: [&R::Elem; 4]) -> RingResult<()> {
        for row in m.iter_mut() {
            if ring.is_zero(&row[a]) && ring.is_zero(&row[b]) {
                continue;
            }
            let nx = ring.lin(c[0], &row[a], c[1], &row[b])?;
            let ny = ring.lin(c[2], &row[a], c[3], &row[b])?;
            row[a] = nx;
            row[b] = ny;
        }
        Ok(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.m.swap(a, b);
        if let Some(u) = &mut self.u {
            u.swap(a, b);
        }
        if let Some(ui) = &mut self.uinv {
            for row in ui.iter_mut() {
                row.swap(a, b);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in self.m.iter_mut() {
            row.swap(a, b);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(a, b);
            }
        }
        if let Some(vi) = &mut self.vinv {
            vi.swap(a, b);
        }
    }

    /// row_dst -= q row_src
    fn row_op(&mut self, dst: usize, src: usize, q: &R::Elem) -> RingResult<()> {
        let ring = self.ring;
        Self::row_sub(&mut self.m, ring, dst, src, q)?;
        if let Some(u) = &mut self.u {
            Self::row_sub(u, ring, dst, src, q)?;
        }
        if let Some(ui) = &mut self.uinv {
            // col_src += q col_dst
            let nq = ring.neg(q)?;
            Self::col_sub(ui, ring, src, dst, &nq)?;
        }
        Ok(())
    }

    /// col_dst -= q col_src
    fn col_op(&mut self, dst: usize, src: usize, q: &R::Elem) -> RingResult<()> {
        let ring = self.ring;
        Self::col_sub(&mut self.m, ring, dst, src, q)?;
        if let Some(v) = &mut self.v {
            Self::col_sub(v, ring, dst, src, q)?;
        }
        if let Some(vi) = &mut self.vinv {
            // row_src += q row_dst
            let nq = ring.neg(q)?;
            Self::row_sub(vi, ring, src, dst, &nq)?;
        }
        Ok(())
    }

    fn row_bezout(&mut self, t: usize, i: usize, b: &Bezout<R::Elem>) -> RingResult<()> {
        let ring = self.ring;
        let ny = ring.neg(&b.y)?;
        let nt = ring.neg(&b.t)?;
        Self::row_mix(&mut self.m, ring, t, i, [&b.s, &b.t, &ny, &b.x])?;
        if let Some(u) = &mut self.u {
            Self::row_mix(u, ring, t, i, [&b.s, &b.t, &ny, &b.x])?;
        }
        if let Some(ui) = &mut self.uinv {
            Self::col_mix(ui, ring, t, i, [&b.x, &b.y, &nt, &b.s])?;
        }
        Ok(())
    }

    fn col_bezout(&mut self, t: usize, j: usize, b: &Bezout<R::Elem>) -> RingResult<()> {
        let ring = self.ring;
        let ny = ring.neg(&b.y)?;
        let nt = ring.neg(&b.t)?;
        Self::col_mix(&mut self.m, ring, t, j, [&b.s, &b.t, &ny, &b.x])?;
        if let Some(v) = &mut self.v {
            Self::col_mix(v, ring, t, j, [&b.s, &b.t, &ny, &b.x])?;
        }
        if let Some(vi) = &mut self.vinv {
            Self::row_mix(vi, ring, t, j, [&b.x, &b.y, &nt, &b.s])?;
        }
        Ok(())
    }

    fn scale_row(&mut self, t: usize, unit: &R::Elem) -> RingResult<()> {
        let ring = self.ring;
        let zero = ring.zero();
        for x in self.m[t].iter_mut() {
            *x = ring.lin(unit, x, &zero, &zero)?;
        }
        if let Some(u) = &mut self.u {
            for x in u[t].iter_mut() {
                *x = ring.lin(unit, x, &zero, &zero)?;
            }
        }
        if let Some(ui) = &mut self.uinv {
            let inv = ring.unit_inverse(unit);
            for row in ui.iter_mut() {
                row[t] = ring.lin(&inv, &row[t], &zero, &zero)?;
            }
        }
        Ok(())
    }

    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let ring = self.ring;
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.m[i][j];
                if ring.is_zero(x) {
                    continue;
                }
                if ring.is_unit(x) {
                    return Some((i, j));
                }
                match best {
                    Some((bi, bj)) if ring.norm_cmp(x, &self.m[bi][bj]) != Ordering::Less => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(&mut self, divisibility: bool) -> RingResult<usize> {
        let ring = self.ring;
        let steps = self.rows.min(self.cols);
        let mut rank = 0;
        for t in 0..steps {
            let Some((pi, pj)) = self.find_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                for i in t + 1..self.rows {
                    if ring.is_zero(&self.m[i][t]) {
                        continue;
                    }
                    match ring.divide(&self.m[t][t], &self.m[i][t]) {
                        Some(q) => self.row_op(i, t, &q)?,
                        None => {
                            let b = ring.bezout(&self.m[t][t], &self.m[i][t])?;
                            self.row_bezout(t, i, &b)?;
                        }
                    }
                }
                for j in t + 1..self.cols {
                    if ring.is_zero(&self.m[t][j]) {
                        continue;
                    }
                    match ring.divide(&self.m[t][t], &self.m[t][j]) {
                        Some(q) => self.col_op(j, t, &q)?,
                        None => {
                            let b = ring.bezout(&self.m[t][t], &self.m[t][j])?;
                            self.col_bezout(t, j, &b)?;
                        }
                    }
                }
                if (t + 1..self.rows).any(|i| !ring.is_zero(&self.m[i][t])) {
                    continue;
                }
                if divisibility {
                    let offender = (t + 1..self.rows).find(|&i| {
                        (t + 1..self.cols).any(|j| ring.divide(&self.m[t][t], &self.m[i][j]).is_none())
                    });
                    if let Some(i) = offender {
                        // row_t += row_i
                        let minus_one = ring.neg(&ring.one())?;
                        self.row_op(t, i, &minus_one)?;
                        continue;
                    }
                }
                break;
            }
            if let Some(u) = ring.normalizing_unit(&self.m[t][t]) {
                self.scale_row(t, &u)?;
            }
            rank += 1;
        }
        Ok(rank)
    }
}

fn pair_mut<T>(v: &mut [T], a: usize, b: usize) -> (&mut T, &mut T) {
    assert_ne!(a, b);
    if a < b {
        let (l, r) = v.split_at_mut(b);
        (&mut l[a], &mut r[0])
    } else {
        let (l, r) = v.split_at_mut(a);
        (&mut r[0], &mut l[b])
    }
}

/// Smith normal form of a dense `rows × cols` matrix.
pub fn smith<R: SnfRing>(
    ring: &R,
    matrix: Dense<R::Elem>,
    cols: usize,
    opts: SnfOptions,
) -> RingResult<Snf<R::Elem>> {
    let rows = matrix.len();
    debug_assert!(matrix.iter().all(|r| r.len() == cols));
    let mut red = Reducer {
        ring,
        m: matrix,
        rows,
        cols,
        u: opts.left.then(|| identity(ring, rows)),
        uinv: opts.left_inverse.then(|| identity(ring, rows)),
        v: opts.right.then(|| identity(ring, cols)),
        vinv: opts.right_inverse.then(|| identity(ring, cols)),
    };
    let rank = red.run(opts.divisibility)?;
    let diagonal = (0..rows.min(cols)).map(|i| red.m[i][i].clone()).collect();
    Ok(Snf {
        rows,
        cols,
        diagonal,
        rank,
        left: red.u,
        left_inverse: red.uinv,
        right: red.v,
        right_inverse: red.vinv,
    })
}

/// Sparse row: `(column, value)` pairs sorted by column, zeros omitted.
pub type SparseRow<E> = Vec<(usize, E)>;

fn sparse_lin<R: SnfRing>(
    ring: &R,
    s: &R::Elem,
    a: &SparseRow<R::Elem>,
    t: &R::Elem,
    b: &SparseRow<R::Elem>,
) -> RingResult<SparseRow<R::Elem>> {
    let zero = ring.zero();
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (col, v) = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x.0 == y.0 => {
                i += 1;
                j += 1;
                (x.0, ring.lin(s, &x.1, t, &y.1)?)
            }
            (Some(x), Some(y)) if x.0 < y.0 => {
                i += 1;
                (x.0, ring.lin(s, &x.1, &zero, &zero)?)
            }
            (Some(x), None) => {
                i += 1;
                (x.0, ring.lin(s, &x.1, &zero, &zero)?)
            }
            (_, Some(y)) => {
                j += 1;
                (y.0, ring.lin(&zero, &zero, t, &y.1)?)
            }
            (None, None) => unreachable!(),
        };
        if !ring.is_zero(&v) {
            out.push((col, v));
        }
    }
    Ok(out)
}

/// Row-reduces a sparse matrix to echelon form using row operations only.
///
/// The returned dense rows span the same row module; there is at most one
/// row per column, so the result has at most `cols` rows.
pub fn echelon<R: SnfRing>(
    ring: &R,
    rows: Vec<SparseRow<R::Elem>>,
    cols: usize,
) -> RingResult<Dense<R::Elem>> {
    let mut buckets: Vec<Vec<SparseRow<R::Elem>>> = vec![Vec::new(); cols];
    for r in rows {
        if let Some(&(c, _)) = r.first() {
            buckets[c].push(r);
        }
    }
    let one = ring.one();
    let mut out = Vec::new();
    for j in 0..cols {
        let mut cand = std::mem::take(&mut buckets[j]);
        if cand.is_empty() {
            continue;
        }
        let pi = (0..cand.len())
            .min_by(|&a, &b| {
                ring.norm_cmp(&cand[a][0].1, &cand[b][0].1).then(cand[a].len().cmp(&cand[b].len()))
            })
            .unwrap();
        let mut piv = cand.swap_remove(pi);
        for r in cand {
            let rest = match ring.divide(&piv[0].1, &r[0].1) {
                Some(q) => {
                    let nq = ring.neg(&q)?;
                    sparse_lin(ring, &one, &r, &nq, &piv)?
                }
                None => {
                    let b = ring.bezout(&piv[0].1, &r[0].1)?;
                    let ny = ring.neg(&b.y)?;
                    let new_piv = sparse_lin(ring, &b.s, &piv, &b.t, &r)?;
                    let rest = sparse_lin(ring, &ny, &piv, &b.x, &r)?;
                    piv = new_piv;
                    rest
                }
            };
            if let Some(&(c, _)) = rest.first() {
                debug_assert!(c > j);
                buckets[c].push(rest);
            }
        }
        let mut dense = vec![ring.zero(); cols];
        for (c, v) in piv {
            dense[c] = v;
        }
        out.push(dense);
    }
    Ok(out)
}

/// Invariant factors (nonzero diagonal entries, `d1 | d2 | ...`) of an
/// integer matrix given by sparse rows. Uses machine integers when they
/// suffice and retries with arbitrary precision on overflow.
pub fn integer_invariant_factors(rows: &[SparseRow<i64>], cols: usize) -> Vec<BigInt> {
    let small = || -> RingResult<Vec<BigInt>> {
        let ech = echelon(&SmallIntegers, rows.to_vec(), cols)?;
        let snf = smith(&SmallIntegers, ech, cols, SnfOptions { divisibility: true, ..Default::default() })?;
        Ok(snf.diagonal[..snf.rank].iter().map(|&d| BigInt::from(d)).collect())
    };
    if let Ok(f) = small() {
        return f;
    }
    let big: Vec<SparseRow<BigInt>> =
        rows.iter().map(|r| r.iter().map(|&(c, v)| (c, BigInt::from(v))).collect()).collect();
    let ech = echelon(&Integers, big, cols).expect("bigint arithmetic cannot overflow");
    let snf = smith(&Integers, ech, cols, SnfOptions { divisibility: true, ..Default::default() })
        .expect("bigint arithmetic cannot overflow");
    snf.diagonal[..snf.rank].to_vec()
}

/// Rank of an integer matrix over the prime field `F_p`.
pub fn rank_mod_prime(rows: &[SparseRow<i64>], cols: usize, p: u64) -> usize {
    let ring = IntegersMod::new(p);
    let rows = rows
        .iter()
        .map(|r| {
            r.iter()
                .filter_map(|&(c, v)| {
                    let x = ring.from_i64(v);
                    (x != 0).then_some((c, x))
                })
                .collect()
        })
        .collect();
    echelon(&ring, rows, cols).expect("modular arithmetic cannot overflow").len()
}

/// Convenience for small dense integer matrices: invariant factors with full transforms.
pub fn smith_normal_form(matrix: &[Vec<i64>]) -> Snf<BigInt> {
    let cols = matrix.first().map_or(0, |r| r.len());
    let m: Dense<BigInt> = matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    smith(&Integers, m, cols, SnfOptions::all()).expect("bigint arithmetic cannot overflow")
}

impl Snf<BigInt> {
    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal[..self.rank].to_vec()
    }
}

pub fn to_i64(v: &BigInt) -> Option<i64> {
    v.to_i64()
}
