//! Group cohomology with trivial coefficients in `Z/N`, `U(1)` and `Z`.
//!
//! `H^p(G, Z/N)` is computed from the kernel of the bar differential
//! (a Smith form over `Z/N` of its echelonized matrix) modulo the image
//! of the previous differential. `H^p(G, U(1))` is read off from the exact
//! sequence `0 -> Z/N -> U(1) -> U(1) -> 0`: for `N` a multiple of the
//! exponent of `H^p(G, U(1))` (e.g. `N = |G|`) the map
//! `H^p(G, Z/N) -> H^p(G, U(1))` is onto with kernel the Bockstein image of
//! `H^{p-1}(G, Z/N)`. Cocycle values are exponents `k` of `exp(2πi k/N)`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::abelian::AbelianQuotient;
use crate::cochain::{bockstein, coboundary, differential_matrix, slot_count, Cochain};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::howell::HowellForm;
use crate::snf::{echelon, integer_invariant_factors, rank_mod_prime, smith, IntegersMod, SnfOptions, SnfRing, SparseRow};

pub use crate::cochain::is_cocycle;

/// Largest group order accepted for `H^2` computations.
pub const MAX_ORDER_DEGREE_2: usize = 24;
/// Largest group order accepted for `H^3` computations.
pub const MAX_ORDER_DEGREE_3: usize = 8;
/// Largest `|H^p|` that [`enumerate_class_representatives`] will list.
pub const MAX_ENUMERATED_CLASSES: u64 = 4096;
/// Largest cochain table handled by the coboundary solvers.
const MAX_SOLVER_SLOTS: usize = 30_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    /// `Z/N`.
    Cyclic(u64),
    /// `U(1)`, represented by `μ_N`-valued cocycles.
    Circle(u64),
}

fn check_ceiling(g: &FiniteGroup, p: usize) -> Result<()> {
    let n = g.order();
    match p {
        1 => Ok(()),
        2 if n <= MAX_ORDER_DEGREE_2 => Ok(()),
        3 if n <= MAX_ORDER_DEGREE_3 => Ok(()),
        2 | 3 => Err(Error::TooLarge(format!(
            "H^{p} is limited to |G| <= {}, got {n}",
            if p == 2 { MAX_ORDER_DEGREE_2 } else { MAX_ORDER_DEGREE_3 }
        ))),
        _ => Err(Error::Degree { degree: p, reason: "cohomology is computed for p in 1..=3".into() }),
    }
}

fn check_cochain(g: &FiniteGroup, c: &Cochain) -> Result<()> {
    if c.group_order() != g.order() {
        return Err(Error::Shape(format!("cochain is for a group of order {}, not {}", c.group_order(), g.order())));
    }
    Ok(())
}

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn big_mod(v: &BigInt, n: u64) -> u64 {
    v.mod_floor(&BigInt::from(n)).to_u64().expect("reduced residue")
}

/// `ker(d_p)` over `Z/N` as `⊕ Z/g_i`, with explicit generators and coordinates.
#[derive(Debug, Clone)]
struct Kernel {
    modulus: u64,
    orders: Vec<u64>,
    // row i of V^{-1}, scale N/g_i
    coord_rows: Vec<Vec<u64>>,
    scales: Vec<u64>,
    generators: Vec<Vec<u64>>,
}

impl Kernel {
    fn new(g: &FiniteGroup, p: usize, n: u64) -> Kernel {
        let m = slot_count(g.order(), p);
        let ring = IntegersMod::new(n);
        let rows: Vec<SparseRow<u64>> = differential_matrix(g, p)
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .filter_map(|(c, v)| {
                        let x = ring.from_i64(v);
                        (x != 0).then_some((c, x))
                    })
                    .collect()
            })
            .collect();
        let ech = echelon(&ring, rows, m).expect("modular arithmetic cannot overflow");
        let opts = SnfOptions { right: true, right_inverse: true, ..Default::default() };
        let snf = smith(&ring, ech, m, opts).expect("modular arithmetic cannot overflow");
        let v = snf.right.expect("requested");
        let vinv = snf.right_inverse.expect("requested");
        let mut kernel = Kernel { modulus: n, orders: vec![], coord_rows: vec![], scales: vec![], generators: vec![] };
        for i in 0..m {
            let s = snf.diagonal.get(i).copied().unwrap_or(0);
            let gi = s.gcd(&n);
            if gi == 1 {
                continue;
            }
            let scale = n / gi;
            kernel.orders.push(gi);
            kernel.scales.push(scale);
            kernel.coord_rows.push(vinv[i].clone());
            kernel.generators.push(v.iter().map(|row| mulmod(row[i], scale, n)).collect());
        }
        kernel
    }

    fn coords(&self, z: &[u64]) -> Vec<BigInt> {
        let n = self.modulus;
        self.coord_rows
            .iter()
            .zip(self.scales.iter().zip(&self.orders))
            .map(|(row, (&scale, &order))| {
                let y = row.iter().zip(z).fold(0u64, |acc, (&a, &b)| (acc + mulmod(a, b, n)) % n);
                debug_assert_eq!(y % scale, 0, "not a cocycle");
                BigInt::from((y / scale) % order)
            })
            .collect()
    }

    fn combine(&self, coords: &[BigInt]) -> Vec<u64> {
        let n = self.modulus;
        let width = self.generators.first().map_or(0, Vec::len);
        let mut out = vec![0u64; width];
        for (gen, c) in self.generators.iter().zip(coords) {
            let c = big_mod(c, n);
            if c == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(gen) {
                *o = (*o + mulmod(c, x, n)) % n;
            }
        }
        out
    }
}

/// The coboundaries `B^p` over `Z/N`, in Howell form.
#[derive(Debug, Clone)]
pub struct Coboundaries {
    degree: usize,
    modulus: u64,
    howell: HowellForm,
}

impl Coboundaries {
    pub fn new(g: &FiniteGroup, p: usize, modulus: u64) -> Result<Coboundaries> {
        if p == 0 || p > 4 {
            return Err(Error::Degree { degree: p, reason: "coboundaries are formed for p in 1..=4".into() });
        }
        let width = slot_count(g.order(), p);
        if width > MAX_SOLVER_SLOTS {
            return Err(Error::TooLarge(format!("{width} cochain slots exceed {MAX_SOLVER_SLOTS}")));
        }
        let prev = slot_count(g.order(), p - 1);
        let mut columns = vec![vec![0u64; width]; prev];
        for (slot, row) in differential_matrix(g, p - 1).into_iter().enumerate() {
            for (col, v) in row {
                columns[col][slot] = v.rem_euclid(modulus as i64) as u64;
            }
        }
        Ok(Coboundaries { degree: p, modulus, howell: HowellForm::new(modulus, width, &columns) })
    }

    /// Number of `p`-coboundaries.
    pub fn order(&self) -> u128 {
        self.howell.submodule_order()
    }

    fn check(&self, c: &Cochain) -> Result<()> {
        if c.degree() != self.degree || c.modulus() != self.modulus {
            return Err(Error::Shape(format!(
                "expected a {}-cochain mod {}, got degree {} mod {}",
                self.degree,
                self.modulus,
                c.degree(),
                c.modulus()
            )));
        }
        Ok(())
    }

    /// Lexicographically least table in `c + B^p`.
    pub fn reduce(&self, g: &FiniteGroup, c: &Cochain) -> Result<Cochain> {
        self.check(c)?;
        let (rest, _) = self.howell.reduce(c.values());
        Cochain::from_values(g, self.degree, self.modulus, rest)
    }

    /// `b` with `db = c`, if one exists.
    pub fn witness(&self, g: &FiniteGroup, c: &Cochain) -> Result<Option<Cochain>> {
        self.check(c)?;
        match self.howell.solve(c.values()) {
            Some(combo) => Ok(Some(Cochain::from_values(g, self.degree - 1, self.modulus, combo)?)),
            None => Ok(None),
        }
    }
}

/// A cohomology group together with the data needed to classify cocycles.
#[derive(Debug, Clone)]
pub struct CohomologyGroup {
    group: FiniteGroup,
    degree: usize,
    coefficients: Coefficients,
    modulus: u64,
    invariant_factors: Vec<u64>,
    representatives: Vec<Cochain>,
    coboundary_basis: Vec<Cochain>,
    kernel: Option<Kernel>,
    zn: Option<AbelianQuotient>,
    circle: Option<AbelianQuotient>,
    coboundaries: OnceLock<Coboundaries>,
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    /// Modulus `N` of the cocycle tables.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Nontrivial invariant factors `d1 | d2 | ...` (empty for the trivial group).
    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// One cocycle per cyclic factor, in the order of `invariant_factors`.
    pub fn representatives(&self) -> &[Cochain] {
        &self.representatives
    }

    /// Nonzero coboundaries `d(δ_x)` of the basis `(p-1)`-cochains; they span `B^p`.
    pub fn coboundary_basis(&self) -> &[Cochain] {
        &self.coboundary_basis
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    fn coboundaries(&self) -> &Coboundaries {
        self.coboundaries.get_or_init(|| {
            Coboundaries::new(&self.group, self.degree, self.modulus).expect("ceiling already checked")
        })
    }

    fn prepare(&self, c: &Cochain) -> Result<Cochain> {
        check_cochain(&self.group, c)?;
        if c.degree() != self.degree {
            return Err(Error::Shape(format!("expected degree {}, got {}", self.degree, c.degree())));
        }
        let c = if c.modulus() == self.modulus {
            c.clone()
        } else {
            c.rescale(self.modulus)?
        };
        if !is_cocycle(&self.group, &c) {
            return Err(Error::NotCocycle(format!("{}-cochain fails the cocycle condition", self.degree)));
        }
        Ok(c)
    }

    /// Coordinates of the class of `c`, one residue per invariant factor.
    ///
    /// The cocycle may be written over any divisor of the group's modulus.
    pub fn class_of(&self, c: &Cochain) -> Result<Vec<u64>> {
        let c = self.prepare(c)?;
        let (Some(kernel), Some(zn)) = (&self.kernel, &self.zn) else {
            return Ok(Vec::new());
        };
        let coords = zn.coords(&kernel.coords(c.values()));
        let coords = match &self.circle {
            Some(q) => q.coords(&coords),
            None => coords,
        };
        Ok(coords.iter().map(|x| x.to_u64().expect("reduced coordinate")).collect())
    }

    /// Coordinates of the class of a `U(1)`-valued cocycle written over any modulus.
    ///
    /// A modulus that does not divide the group's own is handled by
    /// classifying over the common multiple and matching against the images
    /// of this group's generators.
    pub fn class_of_u1(&self, c: &Cochain) -> Result<Vec<u64>> {
        if self.modulus % c.modulus() == 0 {
            return self.class_of(c);
        }
        if !matches!(self.coefficients(), Coefficients::Circle(_)) {
            return Err(Error::Shape(format!("modulus {} does not divide {}", c.modulus(), self.modulus)));
        }
        let m = c.modulus().lcm(&self.modulus);
        let fine = cohomology_u1_with_modulus(&self.group, self.degree, m)?;
        let target = fine.class_of(&c.rescale(m)?)?;
        let images: Vec<Vec<u64>> =
            self.representatives.iter().map(|r| fine.class_of(&r.rescale(m)?)).collect::<Result<_>>()?;
        let factors = fine.invariant_factors();
        self.class_coordinates()
            .into_iter()
            .find(|coords| {
                (0..factors.len()).all(|i| {
                    let sum: u128 = coords.iter().zip(&images).map(|(&k, img)| k as u128 * img[i] as u128).sum();
                    (sum % factors[i] as u128) as u64 == target[i]
                })
            })
            .ok_or_else(|| Error::Domain(format!("class not found in H^{}(G, U(1))", self.degree)))
    }

    pub fn is_trivial_class(&self, c: &Cochain) -> Result<bool> {
        Ok(self.class_of(c)?.iter().all(|&x| x == 0))
    }

    /// Canonical cocycle of the class with the given coordinates.
    pub fn representative(&self, coords: &[u64]) -> Result<Cochain> {
        if coords.len() != self.invariant_factors.len() {
            return Err(Error::Shape(format!("expected {} coordinates", self.invariant_factors.len())));
        }
        let mut c = Cochain::zero(&self.group, self.degree, self.modulus);
        for (r, &k) in self.representatives.iter().zip(coords) {
            c = c.add(&r.scale(k as i64));
        }
        self.coboundaries().reduce(&self.group, &c)
    }

    /// Canonical cocycle cohomologous to `c` in these coefficients.
    pub fn canonical(&self, c: &Cochain) -> Result<Cochain> {
        self.representative(&self.class_of(c)?)
    }

    /// Every coordinate vector, last coordinate varying fastest.
    pub fn class_coordinates(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.invariant_factors {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |k| {
                        let mut v = prefix.clone();
                        v.push(k);
                        v
                    })
                })
                .collect();
        }
        out
    }
}

fn coboundary_basis(g: &FiniteGroup, p: usize, n: u64) -> Vec<Cochain> {
    let prev = slot_count(g.order(), p - 1);
    let mut out = Vec::new();
    for x in 0..prev {
        let mut values = vec![0u64; prev];
        values[x] = 1 % n;
        let b = Cochain::from_values(g, p - 1, n, values).expect("shape");
        let db = coboundary(g, &b).expect("degree checked");
        if !db.is_zero() && !out.contains(&db) {
            out.push(db);
        }
    }
    out
}

fn trivial_group(g: &FiniteGroup, p: usize, coefficients: Coefficients, modulus: u64) -> CohomologyGroup {
    CohomologyGroup {
        group: g.clone(),
        degree: p,
        coefficients,
        modulus,
        invariant_factors: vec![],
        representatives: vec![],
        coboundary_basis: vec![],
        kernel: None,
        zn: None,
        circle: None,
        coboundaries: OnceLock::new(),
    }
}

/// `H^p(G, Z/N)` for `p` in `1..=3`.
pub fn cohomology_zn(g: &FiniteGroup, p: usize, n: u64) -> Result<CohomologyGroup> {
    check_ceiling(g, p)?;
    if n == 0 {
        return Err(Error::Domain("modulus must be positive".into()));
    }
    if n == 1 || g.order() == 1 {
        return Ok(trivial_group(g, p, Coefficients::Cyclic(n), n));
    }
    let kernel = Kernel::new(g, p, n);
    let k = kernel.orders.len();
    let mut relations: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            let mut r = vec![BigInt::zero(); k];
            r[i] = BigInt::from(kernel.orders[i]);
            r
        })
        .collect();
    let basis = coboundary_basis(g, p, n);
    relations.extend(basis.iter().map(|b| kernel.coords(b.values())));
    let zn = AbelianQuotient::new(k, &relations);
    let mut group = CohomologyGroup {
        group: g.clone(),
        degree: p,
        coefficients: Coefficients::Cyclic(n),
        modulus: n,
        invariant_factors: zn.factors_u64(),
        representatives: vec![],
        coboundary_basis: basis,
        kernel: None,
        zn: None,
        circle: None,
        coboundaries: OnceLock::new(),
    };
    let reps = (0..zn.factors().len())
        .map(|j| {
            let z = kernel.combine(zn.generator(j));
            let c = Cochain::from_values(g, p, n, z).expect("shape");
            group.coboundaries().reduce(g, &c)
        })
        .collect::<Result<Vec<_>>>()?;
    group.representatives = reps;
    group.kernel = Some(kernel);
    group.zn = Some(zn);
    Ok(group)
}

/// `H^p(G, U(1))` computed with `N = |G|`.
pub fn cohomology_u1(g: &FiniteGroup, p: usize) -> Result<CohomologyGroup> {
    cohomology_u1_with_modulus(g, p, g.order() as u64)
}

/// The `N`-torsion of `H^p(G, U(1))`, as `H^p(G, Z/N)` modulo Bockstein images.
///
/// `N` must be a multiple of the exponent of `G`. The result is all of
/// `H^p(G, U(1))` when `N` is a multiple of `|G|`.
pub fn cohomology_u1_with_modulus(g: &FiniteGroup, p: usize, n: u64) -> Result<CohomologyGroup> {
    check_ceiling(g, p)?;
    if n == 0 || n % g.exponent() as u64 != 0 {
        return Err(Error::Domain(format!("modulus {n} is not a multiple of the exponent {}", g.exponent())));
    }
    let mut zn = cohomology_zn(g, p, n)?;
    zn.coefficients = Coefficients::Circle(n);
    if p == 1 || zn.is_trivial() {
        return Ok(zn);
    }
    let lower = cohomology_zn(g, p - 1, n)?;
    let quotient = zn.zn.as_ref().expect("nontrivial");
    let kernel = zn.kernel.as_ref().expect("nontrivial");
    let dim = quotient.factors().len();
    let mut relations: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut r = vec![BigInt::zero(); dim];
            r[i] = quotient.factors()[i].clone();
            r
        })
        .collect();
    for r in lower.representatives() {
        let b = bockstein(g, r)?;
        relations.push(quotient.coords(&kernel.coords(b.values())));
    }
    let circle = AbelianQuotient::new(dim, &relations);
    let reps = (0..circle.factors().len())
        .map(|j| {
            let mut c = Cochain::zero(g, p, n);
            for (r, x) in zn.representatives.iter().zip(circle.generator(j)) {
                c = c.add(&r.scale(big_mod(x, n) as i64));
            }
            zn.coboundaries().reduce(g, &c)
        })
        .collect::<Result<Vec<_>>>()?;
    zn.invariant_factors = circle.factors_u64();
    zn.representatives = reps;
    zn.circle = Some(circle);
    Ok(zn)
}

/// `H^p(G, Z)` as torsion invariant factors plus, when affordable, the free rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralCohomology {
    pub degree: usize,
    pub torsion: Vec<BigInt>,
    pub free_rank: Option<usize>,
}

impl IntegralCohomology {
    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|d| d.to_u64().expect("factor fits u64")).collect()
    }
}

const ORACLE_RANK_BUDGET: usize = 2_000_000;
const RANK_PRIMES: [u64; 2] = [2_147_483_647, 1_000_000_007];

/// Integral cohomology from the bar complex over `Z`.
///
/// The torsion of `H^p` is the nontrivial invariant factors of `d_{p-1}`.
/// The free rank `m_p - rank d_p - rank d_{p-1}` needs `rank d_p`, which is
/// taken over two large prime fields and only when `d_p` is small enough.
pub fn cohomology_z_oracle(g: &FiniteGroup, p: usize) -> Result<IntegralCohomology> {
    let n = g.order();
    let ok = match p {
        0..=2 => true,
        3 => n <= MAX_ORDER_DEGREE_2,
        4 => n <= MAX_ORDER_DEGREE_3,
        _ => return Err(Error::Degree { degree: p, reason: "integral cohomology is computed for p <= 4".into() }),
    };
    if !ok {
        return Err(Error::TooLarge(format!("integral H^{p} is not computed for |G| = {n}")));
    }
    if p == 0 {
        return Ok(IntegralCohomology { degree: 0, torsion: vec![], free_rank: Some(1) });
    }
    let prev_cols = slot_count(n, p - 1);
    let factors = integer_invariant_factors(&differential_matrix(g, p - 1), prev_cols);
    let rank_prev = factors.len();
    let torsion: Vec<BigInt> = factors.into_iter().map(|d| if d < BigInt::zero() { -d } else { d }).filter(|d| *d != BigInt::from(1)).collect();
    let m = slot_count(n, p);
    let free_rank = (slot_count(n, p + 1).saturating_mul(m) <= ORACLE_RANK_BUDGET).then(|| {
        let d = differential_matrix(g, p);
        let rank = RANK_PRIMES.iter().map(|&q| rank_mod_prime(&d, m, q)).max().unwrap_or(0);
        m - rank - rank_prev
    });
    Ok(IntegralCohomology { degree: p, torsion, free_rank })
}

/// `b` with `db = c` over `Z/N`, or `None` when `c` is not a coboundary.
pub fn is_coboundary(g: &FiniteGroup, c: &Cochain) -> Result<Option<Cochain>> {
    check_cochain(g, c)?;
    Coboundaries::new(g, c.degree(), c.modulus())?.witness(g, c)
}

/// Whether the `μ_N`-valued cocycle `c` is a coboundary of a `U(1)`-valued cochain.
///
/// Such a cochain can always be taken `μ_{N^2}`-valued; the witness is
/// returned as a cochain mod `N^2`.
pub fn is_u1_coboundary(g: &FiniteGroup, c: &Cochain) -> Result<Option<Cochain>> {
    check_cochain(g, c)?;
    let n = c.modulus();
    let lifted = c.rescale(n * n)?;
    is_coboundary(g, &lifted)
}

/// Lexicographically least table cohomologous to `c` over `Z/N`.
pub fn reduce_by_coboundaries(g: &FiniteGroup, c: &Cochain) -> Result<Cochain> {
    check_cochain(g, c)?;
    Coboundaries::new(g, c.degree(), c.modulus())?.reduce(g, c)
}

/// One canonical `μ_{|G|}`-valued cocycle per element of `H^p(G, U(1))`.
pub fn enumerate_class_representatives(g: &FiniteGroup, p: usize) -> Result<Vec<Cochain>> {
    let h = cohomology_u1(g, p)?;
    if h.order() > MAX_ENUMERATED_CLASSES {
        return Err(Error::TooLarge(format!("|H^{p}| = {} exceeds {MAX_ENUMERATED_CLASSES}", h.order())));
    }
    h.class_coordinates().iter().map(|x| h.representative(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group_spec;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn grp(s: &str) -> FiniteGroup {
        parse_group_spec(s).unwrap()
    }

    fn u1(s: &str, p: usize) -> Vec<u64> {
        cohomology_u1(&grp(s), p).unwrap().invariant_factors().to_vec()
    }

    /// Brute force over every normalized μ_N-valued 2-cochain, evaluated
    /// straight from the multiplication table: the cocycles modulo the
    /// μ_N-valued coboundaries of μ_{N^2}-valued 1-cochains. Returns, for each
    /// d | N, the number of classes killed by d.
    fn brute_force_h2_u1(g: &FiniteGroup) -> Vec<(u64, usize)> {
        let n = g.order();
        let modulus = n as u64;
        let e = g.identity();
        let others: Vec<usize> = g.non_identity().collect();
        let pairs: Vec<(usize, usize)> = others.iter().flat_map(|&a| others.iter().map(move |&b| (a, b))).collect();
        let index = |a: usize, b: usize| -> Option<usize> {
            if a == e || b == e {
                None
            } else {
                Some(others.iter().position(|&x| x == a).unwrap() * others.len() + others.iter().position(|&x| x == b).unwrap())
            }
        };
        let value = |w: &[u64], a: usize, b: usize| index(a, b).map_or(0, |i| w[i]);
        let mut cocycles = Vec::new();
        let total = (modulus as usize).pow(pairs.len() as u32);
        for code in 0..total {
            let mut w = vec![0u64; pairs.len()];
            let mut c = code;
            for x in w.iter_mut() {
                *x = (c % n) as u64;
                c /= n;
            }
            let ok = g.elements().all(|a| {
                g.elements().all(|b| {
                    g.elements().all(|c| {
                        (value(&w, a, b) + value(&w, g.mul(a, b), c)) % modulus
                            == (value(&w, b, c) + value(&w, a, g.mul(b, c))) % modulus
                    })
                })
            });
            if ok {
                cocycles.push(w);
            }
        }
        let big = modulus * modulus;
        let mut trivial = HashSet::new();
        let fcount = (big as usize).pow(others.len() as u32);
        for code in 0..fcount {
            let mut f = vec![0u64; n];
            let mut c = code;
            for &x in &others {
                f[x] = (c % big as usize) as u64;
                c /= big as usize;
            }
            let db: Vec<u64> = pairs.iter().map(|&(a, b)| (f[a] + f[b] + big - f[g.mul(a, b)]) % big).collect();
            if db.iter().all(|v| v % modulus == 0) {
                trivial.insert(db.iter().map(|v| v / modulus).collect::<Vec<u64>>());
            }
        }
        (1..=modulus)
            .filter(|d| modulus % d == 0)
            .map(|d| {
                let killed = cocycles
                    .iter()
                    .filter(|w| trivial.contains(&w.iter().map(|x| x * d % modulus).collect::<Vec<u64>>()))
                    .count();
                (d, killed / trivial.len())
            })
            .collect()
    }

    fn killed_by(factors: &[u64], d: u64) -> usize {
        factors.iter().map(|&f| f.gcd(&d) as usize).product()
    }

    #[test]
    fn hand_examples_zn() {
        let z2 = grp("Z2");
        assert_eq!(cohomology_zn(&z2, 2, 2).unwrap().invariant_factors(), &[2]);
        assert_eq!(cohomology_zn(&z2, 1, 2).unwrap().invariant_factors(), &[2]);
        let v4 = grp("Z2xZ2");
        let h = cohomology_zn(&v4, 2, 4).unwrap();
        // H^2(V4, Z/4) = Z/2^3 (Ext and Hom parts)
        assert_eq!(h.invariant_factors(), &[2, 2, 2]);
        let w = Cochain::from_fn(&v4, 2, 4, |a| 2 * ((a[0] >> 1) * (a[1] & 1)) as i64);
        assert!(!h.is_trivial_class(&w).unwrap());
    }

    #[test]
    fn schur_multipliers() {
        for n in 1..=12 {
            assert!(u1(&format!("Z{n}"), 2).is_empty(), "Z{n}");
        }
        assert_eq!(u1("Z2xZ2", 2), vec![2]);
        assert_eq!(u1("Z3xZ3", 2), vec![3]);
        assert_eq!(u1("Z2xZ2xZ2", 2), vec![2, 2, 2]);
        assert_eq!(u1("D4", 2), vec![2]);
        assert!(u1("Q8", 2).is_empty());
        assert!(u1("S3", 2).is_empty());
        assert_eq!(u1("A4", 2), vec![2]);
    }

    #[test]
    fn first_cohomology_is_dual_abelianization() {
        for s in ["Z6", "S3", "Q8", "D4", "Z2xZ4"] {
            let g = grp(s);
            let ab = g.abelianization().invariant_factors;
            assert_eq!(u1(s, 1), ab, "{s}");
        }
    }

    #[test]
    fn third_cohomology_of_cyclic() {
        for n in 2..=4u64 {
            assert_eq!(u1(&format!("Z{n}"), 3), vec![n]);
        }
        assert_eq!(cohomology_u1(&grp("Z2xZ2"), 3).unwrap().order(), 8);
    }

    #[test]
    fn integral_oracle_examples() {
        let z2 = grp("Z2");
        let h = cohomology_z_oracle(&z2, 2).unwrap();
        assert_eq!(h.torsion_u64(), vec![2]);
        assert_eq!(h.free_rank, Some(0));
        assert!(cohomology_z_oracle(&z2, 3).unwrap().torsion.is_empty());
        assert_eq!(cohomology_z_oracle(&grp("Z2xZ2"), 3).unwrap().torsion_u64(), vec![2]);
        assert_eq!(cohomology_z_oracle(&z2, 0).unwrap().free_rank, Some(1));
        assert!(cohomology_z_oracle(&z2, 5).is_err());
    }

    #[test]
    fn u1_matches_integral_oracle() {
        for s in ["Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4", "D4", "Q8", "Z2xZ2xZ2"] {
            let g = grp(s);
            for p in 1..=2 {
                let a = cohomology_u1(&g, p).unwrap();
                let b = cohomology_z_oracle(&g, p + 1).unwrap();
                assert_eq!(a.invariant_factors(), &b.torsion_u64()[..], "{s} p={p}");
            }
        }
    }

    #[test]
    fn u1_matches_brute_force_for_small_groups() {
        for s in ["Z1", "Z2", "Z3", "Z4", "Z2xZ2"] {
            let g = grp(s);
            let h = cohomology_u1(&g, 2).unwrap();
            for (d, killed) in brute_force_h2_u1(&g) {
                assert_eq!(killed, killed_by(h.invariant_factors(), d), "{s} d={d}");
            }
        }
    }

    #[test]
    fn representatives_are_independent_cocycles() {
        for s in ["Z2xZ2", "Z3xZ3", "D4", "Z2xZ2xZ2", "Z4", "Z2xZ4"] {
            let g = grp(s);
            for p in 2..=3 {
                if p == 3 && g.order() > 8 {
                    continue;
                }
                let h = cohomology_u1(&g, p).unwrap();
                let reps = enumerate_class_representatives(&g, p).unwrap();
                assert_eq!(reps.len() as u64, h.order());
                for r in &reps {
                    assert!(is_cocycle(&g, r));
                }
                for (i, a) in reps.iter().enumerate() {
                    for b in &reps[i + 1..] {
                        assert!(is_u1_coboundary(&g, &a.sub(b)).unwrap().is_none(), "{s} p={p}");
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_class_representatives(&grp("Z2"), 2).unwrap().len(), 1);
        assert_eq!(enumerate_class_representatives(&grp("Z2xZ2"), 2).unwrap().len(), 2);
        assert_eq!(enumerate_class_representatives(&grp("Z3xZ3"), 2).unwrap().len(), 3);
    }

    #[test]
    fn coboundary_witnesses() {
        let v4 = grp("Z2xZ2");
        let zero = Cochain::zero(&v4, 2, 4);
        assert!(is_cocycle(&v4, &zero));
        assert!(is_coboundary(&v4, &zero).unwrap().unwrap().is_zero());
        let w = Cochain::from_fn(&v4, 2, 4, |a| 2 * ((a[0] >> 1) * (a[1] & 1)) as i64);
        assert!(is_cocycle(&v4, &w));
        assert!(is_coboundary(&v4, &w).unwrap().is_none());
        assert!(is_u1_coboundary(&v4, &w).unwrap().is_none());
        // ω(g,g) = -1 on Z2 is the coboundary of f(g) = i
        let z2 = grp("Z2");
        let minus = Cochain::from_fn(&z2, 2, 2, |_| 1);
        assert!(is_coboundary(&z2, &minus).unwrap().is_none());
        let b = is_u1_coboundary(&z2, &minus).unwrap().unwrap();
        assert_eq!(coboundary(&z2, &b).unwrap(), minus.rescale(4).unwrap());
    }

    #[test]
    fn random_coboundaries_reduce_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for s in ["S3", "Z2xZ2", "Q8", "Z3xZ3"] {
            let g = grp(s);
            for p in 1..=3 {
                if p == 3 && g.order() > 8 {
                    continue;
                }
                let n = g.order() as u64;
                let f = Cochain::from_fn(&g, p - 1, n, |_| rng.gen_range(0..n as i64));
                let df = coboundary(&g, &f).unwrap();
                let b = is_coboundary(&g, &df).unwrap().expect("coboundary");
                assert_eq!(coboundary(&g, &b).unwrap(), df);
                assert_eq!(reduce_by_coboundaries(&g, &df).unwrap(), Cochain::zero(&g, p, n));
            }
        }
    }

    #[test]
    fn bockstein_is_natural_on_small_groups() {
        for s in ["Z2", "Z3", "Z4", "Z2xZ2"] {
            let g = grp(s);
            let n = g.order() as u64;
            let m0 = slot_count(g.order(), 0);
            let m1 = slot_count(g.order(), 1);
            for p in 0..=1usize {
                let m = if p == 0 { m0 } else { m1 };
                for code in 0..(n as usize).pow(m as u32) {
                    let mut c = code;
                    let vals = (0..m)
                        .map(|_| {
                            let v = (c % n as usize) as u64;
                            c /= n as usize;
                            v
                        })
                        .collect();
                    let b = Cochain::from_values(&g, p, n, vals).unwrap();
                    let db = coboundary(&g, &b).unwrap();
                    let beta = bockstein(&g, &db).unwrap();
                    assert!(is_coboundary(&g, &beta).unwrap().is_some(), "{s}");
                }
            }
        }
    }

    #[test]
    fn ceilings() {
        assert!(matches!(cohomology_u1(&grp("Z5xZ5"), 2), Err(Error::TooLarge(_))));
        assert!(matches!(cohomology_u1(&grp("Z3xZ3"), 3), Err(Error::TooLarge(_))));
        assert!(matches!(cohomology_zn(&grp("Z2"), 4, 2), Err(Error::Degree { .. })));
        assert!(cohomology_u1_with_modulus(&grp("Z4"), 2, 2).is_err());
    }

    #[test]
    fn larger_modulus_agrees() {
        for s in ["Z2xZ2", "D4", "Z3xZ3"] {
            let g = grp(s);
            let a = cohomology_u1(&g, 2).unwrap();
            let b = cohomology_u1_with_modulus(&g, 2, 2 * g.order() as u64).unwrap();
            assert_eq!(a.invariant_factors(), b.invariant_factors());
            for r in a.representatives() {
                let coords = b.class_of(r).unwrap();
                assert!(coords.iter().any(|&x| x != 0));
            }
        }
    }

    #[test]
    fn finer_moduli_classify_in_the_standard_basis() {
        for s in ["Z2xZ2", "D4", "Z3xZ3"] {
            let g = grp(s);
            let h = cohomology_u1(&g, 2).unwrap();
            let m = h.modulus() * 5;
            for coords in h.class_coordinates() {
                let r = h.representative(&coords).unwrap().rescale(m).unwrap();
                assert_eq!(h.class_of_u1(&r).unwrap(), coords, "{s}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn classes_are_coboundary_invariant(seed in any::<u64>(), which in 0usize..4) {
            let s = ["Z2xZ2", "D4", "Z3xZ3", "Z2xZ4"][which];
            let g = grp(s);
            let h = cohomology_u1(&g, 2).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = h.modulus();
            let coords: Vec<u64> = h.invariant_factors().iter().map(|&d| rng.gen_range(0..d)).collect();
            let r = h.representative(&coords).unwrap();
            prop_assert!(is_cocycle(&g, &r));
            let f = Cochain::from_fn(&g, 1, n, |_| rng.gen_range(0..n as i64));
            let shifted = r.add(&coboundary(&g, &f).unwrap());
            prop_assert_eq!(h.class_of(&shifted).unwrap(), coords.clone());
            prop_assert_eq!(h.canonical(&shifted).unwrap(), r);
        }
    }
}
