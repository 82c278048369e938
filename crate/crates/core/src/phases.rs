//! Twisted-sector phases and the quantities built from them.
//!
//! All phases are additive exponents ([`Phase`]); partition sums are exact
//! cyclotomic numbers.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cochain::{is_cocycle, Cochain};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::phase::Phase;

/// A commuting pair `(g, h)` of boundary holonomies on the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sector {
    pub g: usize,
    pub h: usize,
}

impl Sector {
    pub fn new(group: &FiniteGroup, g: usize, h: usize) -> Result<Sector> {
        if g >= group.order() || h >= group.order() {
            return Err(Error::Domain(format!("element out of range for a group of order {}", group.order())));
        }
        if !group.commutes(g, h) {
            return Err(Error::NonCommuting(g, h));
        }
        Ok(Sector { g, h })
    }

    pub fn label(&self, group: &FiniteGroup) -> String {
        format!("Z({},{})", group.label(self.g), group.label(self.h))
    }
}

fn check_omega(group: &FiniteGroup, omega: &Cochain, degree: usize) -> Result<()> {
    if omega.degree() != degree || omega.group_order() != group.order() {
        return Err(Error::Shape(format!(
            "expected a {degree}-cochain on a group of order {}, got degree {} on order {}",
            group.order(),
            omega.degree(),
            omega.group_order()
        )));
    }
    Ok(())
}

/// `ε(g, h) = ω(g, h) - ω(h, g)` for a commuting pair.
pub fn epsilon(group: &FiniteGroup, omega: &Cochain, g: usize, h: usize) -> Result<Phase> {
    check_omega(group, omega, 2)?;
    Sector::new(group, g, h)?;
    Ok(omega.phase(&[g, h]) - omega.phase(&[h, g]))
}

/// `ε` on every commuting pair, in lexicographic order of `(g, h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorTable {
    entries: Vec<(Sector, Phase)>,
    index: BTreeMap<Sector, usize>,
}

impl SectorTable {
    pub fn entries(&self) -> &[(Sector, Phase)] {
        &self.entries
    }

    pub fn get(&self, g: usize, h: usize) -> Option<Phase> {
        self.index.get(&Sector { g, h }).map(|&i| self.entries[i].1)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of sectors whose phase is not 1.
    pub fn nontrivial_count(&self) -> usize {
        self.entries.iter().filter(|(_, p)| !p.is_one()).count()
    }
}

pub fn epsilon_table(group: &FiniteGroup, omega: &Cochain) -> Result<SectorTable> {
    check_omega(group, omega, 2)?;
    if !is_cocycle(group, omega) {
        return Err(Error::NotCocycle("ω fails the 2-cocycle condition".into()));
    }
    let entries: Vec<(Sector, Phase)> = group
        .commuting_pairs()
        .into_iter()
        .map(|(g, h)| (Sector { g, h }, omega.phase(&[g, h]) - omega.phase(&[h, g])))
        .collect();
    let index = entries.iter().enumerate().map(|(i, (s, _))| (*s, i)).collect();
    Ok(SectorTable { entries, index })
}

/// An element `(a, b; c, d)` of `SL(2, Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sl2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Sl2 {
    pub const IDENTITY: Sl2 = Sl2 { a: 1, b: 0, c: 0, d: 1 };
    /// `τ -> τ + 1`.
    pub const T: Sl2 = Sl2 { a: 1, b: 0, c: 1, d: 1 };
    /// `τ -> -1/τ`.
    pub const S: Sl2 = Sl2 { a: 0, b: -1, c: 1, d: 0 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Sl2> {
        let det = a * d - b * c;
        if det != 1 {
            return Err(Error::Determinant(det));
        }
        Ok(Sl2 { a, b, c, d })
    }

    pub fn mul(&self, o: &Sl2) -> Sl2 {
        Sl2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

/// `(g, h) -> (g^a h^c, g^b h^d)`, so that `T` gives `(gh, h)` and `S` gives `(h, g^-1)`.
pub fn modular_transform(group: &FiniteGroup, s: Sector, m: Sl2) -> Result<Sector> {
    Sl2::new(m.a, m.b, m.c, m.d)?;
    Sector::new(group, s.g, s.h)?;
    let g = group.mul(group.pow(s.g, m.a), group.pow(s.h, m.c));
    let h = group.mul(group.pow(s.g, m.b), group.pow(s.h, m.d));
    Ok(Sector { g, h })
}

/// Orbits of commuting pairs under `(g, h) -> (kgk^-1, khk^-1)`, each sorted,
/// ordered by their least member.
pub fn conjugation_orbits(group: &FiniteGroup) -> Vec<Vec<Sector>> {
    let mut seen = BTreeMap::new();
    let mut orbits: Vec<Vec<Sector>> = Vec::new();
    for (g, h) in group.commuting_pairs() {
        let s = Sector { g, h };
        if seen.contains_key(&s) {
            continue;
        }
        let mut orbit: Vec<Sector> =
            group.elements().map(|k| Sector { g: group.conj(k, g), h: group.conj(k, h) }).collect();
        orbit.sort();
        orbit.dedup();
        for t in &orbit {
            seen.insert(*t, orbits.len());
        }
        orbits.push(orbit);
    }
    orbits
}

/// Per-sector amplitudes `Z_(g,h)`.
#[derive(Debug, Clone)]
pub enum Amplitudes {
    /// Opaque symbols `Z(g,h)`.
    Symbolic,
    /// Exact rational values; every commuting pair must be present.
    Numeric(BTreeMap<Sector, BigRational>),
}

impl Amplitudes {
    pub fn constant(group: &FiniteGroup, value: BigRational) -> Amplitudes {
        Amplitudes::Numeric(group.commuting_pairs().into_iter().map(|(g, h)| (Sector { g, h }, value.clone())).collect())
    }

    /// Every amplitude equal to 1.
    pub fn unit(group: &FiniteGroup) -> Amplitudes {
        Amplitudes::constant(group, BigRational::one())
    }
}

/// One symbol of a partition sum with its exact coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTerm {
    /// Representative sector (least member of `orbit`).
    pub sector: Sector,
    /// Sectors sharing this symbol: the sector alone, or its conjugation orbit.
    pub orbit: Vec<Sector>,
    /// Sum of `ε` over the orbit.
    pub coefficient: Cyclotomic,
}

/// `(1/|G|) Σ_{gh = hg} ε(g, h) Z_(g,h)`.
#[derive(Debug, Clone)]
pub struct PartitionSum {
    pub group_order: usize,
    pub terms: Vec<PartitionTerm>,
    /// Exact value when the amplitudes were numeric.
    pub value: Option<Cyclotomic>,
}

fn coefficient_text(c: &Cyclotomic) -> (bool, String) {
    if let Some(q) = c.to_rational() {
        let neg = q < BigRational::zero();
        let mag = if neg { -q } else { q };
        if mag.is_one() {
            return (neg, String::new());
        }
        let text = if mag.is_integer() { mag.numer().to_string() } else { format!("{}/{}", mag.numer(), mag.denom()) };
        return (neg, format!("{text}*"));
    }
    let text = c.to_string();
    if text.contains(' ') {
        (false, format!("({text})*"))
    } else if let Some(rest) = text.strip_prefix('-') {
        (true, format!("{rest}*"))
    } else {
        (false, format!("{text}*"))
    }
}

impl PartitionSum {
    /// `1/|G| * ( Z(g,h) + ... - Z(..) + e(k/N)*Z(..) )`; terms with zero
    /// coefficient are dropped.
    pub fn symbolic(&self, group: &FiniteGroup) -> String {
        let mut body = String::new();
        for t in self.terms.iter().filter(|t| !t.coefficient.is_zero()) {
            let (neg, coeff) = coefficient_text(&t.coefficient);
            if body.is_empty() {
                if neg {
                    body.push_str("- ");
                }
            } else {
                body.push_str(if neg { " - " } else { " + " });
            }
            write!(body, "{coeff}{}", t.sector.label(group)).unwrap();
        }
        if body.is_empty() {
            body.push('0');
        }
        if self.group_order == 1 {
            body
        } else {
            format!("1/{} * ( {body} )", self.group_order)
        }
    }
}

/// Weights each commuting pair by `ε(g, h)` and sums with the `1/|G|` prefactor.
///
/// With `quotient_conjugation` the symbolic terms are grouped by
/// simultaneous-conjugation orbit.
pub fn assemble_partition(
    group: &FiniteGroup,
    omega: &Cochain,
    amplitudes: &Amplitudes,
    quotient_conjugation: bool,
) -> Result<PartitionSum> {
    let table = epsilon_table(group, omega)?;
    let orbits = if quotient_conjugation {
        conjugation_orbits(group)
    } else {
        table.entries().iter().map(|(s, _)| vec![*s]).collect()
    };
    let one = BigRational::one();
    let terms = orbits
        .into_iter()
        .map(|orbit| {
            let coefficient =
                Cyclotomic::from_terms(orbit.iter().map(|s| (table.get(s.g, s.h).expect("sector"), one.clone())));
            PartitionTerm { sector: orbit[0], orbit, coefficient }
        })
        .collect();
    let value = match amplitudes {
        Amplitudes::Symbolic => None,
        Amplitudes::Numeric(values) => {
            let mut terms = Vec::with_capacity(table.len());
            for (s, p) in table.entries() {
                let z = values.get(s).ok_or(Error::MissingSector(s.g, s.h))?;
                terms.push((*p, z.clone()));
            }
            let scale = BigRational::new(BigInt::one(), BigInt::from(group.order()));
            Some(Cyclotomic::from_terms(terms).scale(&scale))
        }
    };
    Ok(PartitionSum { group_order: group.order(), terms, value })
}

/// Element `Σ c_g g` of the rational group algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    pub coefficients: Vec<BigRational>,
}

impl GroupAlgebraElement {
    pub fn mul(&self, other: &GroupAlgebraElement, group: &FiniteGroup) -> GroupAlgebraElement {
        let mut out = vec![BigRational::zero(); group.order()];
        for (a, x) in self.coefficients.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (b, y) in other.coefficients.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                out[group.mul(a, b)] += x * y;
            }
        }
        GroupAlgebraElement { coefficients: out }
    }

    pub fn is_idempotent(&self, group: &FiniteGroup) -> bool {
        self.mul(self, group) == *self
    }

    /// Matrix of left multiplication on the regular representation.
    pub fn regular_matrix(&self, group: &FiniteGroup) -> Vec<Vec<BigRational>> {
        let n = group.order();
        let mut m = vec![vec![BigRational::zero(); n]; n];
        for (g, c) in self.coefficients.iter().enumerate() {
            for y in 0..n {
                m[group.mul(g, y)][y] += c;
            }
        }
        m
    }

    pub fn regular_rank(&self, group: &FiniteGroup) -> usize {
        rational_rank(self.regular_matrix(group))
    }
}

/// `(1/|G|) Σ_g g`.
pub fn projection_operator(group: &FiniteGroup) -> GroupAlgebraElement {
    let c = BigRational::new(BigInt::one(), BigInt::from(group.order()));
    GroupAlgebraElement { coefficients: vec![c; group.order()] }
}

/// Rank over `Q` by Gaussian elimination.
pub fn rational_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &pivot;
                let src = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&src) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Line integrals `∫_x^{h·x} Λ(g)` of the flat connections, keyed by `(g, h)`.
/// Missing entries are the identity phase.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WilsonData {
    paths: BTreeMap<(usize, usize), Phase>,
}

impl WilsonData {
    pub fn trivial() -> WilsonData {
        WilsonData::default()
    }

    /// `Λ(g)` integrated along the path from `x` to `along · x`.
    pub fn set(&mut self, g: usize, along: usize, value: Phase) {
        if value.is_one() {
            self.paths.remove(&(g, along));
        } else {
            self.paths.insert((g, along), value);
        }
    }

    /// Each `Λ(g)` has holonomy `values[g]` along every nontrivial path.
    pub fn per_element(group: &FiniteGroup, values: &[Phase]) -> WilsonData {
        let mut w = WilsonData::default();
        for (g, &v) in values.iter().enumerate() {
            for h in group.non_identity() {
                w.set(g, h, v);
            }
        }
        w
    }

    pub fn get(&self, g: usize, along: usize) -> Phase {
        self.paths.get(&(g, along)).copied().unwrap_or(Phase::ONE)
    }

    pub fn is_trivial(&self) -> bool {
        self.paths.is_empty()
    }
}

/// `ω(g,h) - ω(h,g) + ∫_x^{h·x} Λ(g) - ∫_x^{g·x} Λ(h)`; the bulk `B` term is zero here.
pub fn holonomy_phase(group: &FiniteGroup, omega: &Cochain, wilson: &WilsonData, g: usize, h: usize) -> Result<Phase> {
    check_omega(group, omega, 2)?;
    Sector::new(group, g, h)?;
    Ok(omega.phase(&[g, h]) - omega.phase(&[h, g]) + wilson.get(g, h) - wilson.get(h, g))
}

fn check_triple(group: &FiniteGroup, t: [usize; 3]) -> Result<()> {
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        Sector::new(group, t[i], t[j])?;
    }
    Ok(())
}

/// Six-term alternating sum of a 3-cocycle over the orderings of a pairwise commuting triple.
pub fn membrane_phase(group: &FiniteGroup, omega3: &Cochain, g1: usize, g2: usize, g3: usize) -> Result<Phase> {
    check_omega(group, omega3, 3)?;
    check_triple(group, [g1, g2, g3])?;
    let w = |a, b, c| omega3.phase(&[a, b, c]);
    Ok(w(g1, g2, g3) - w(g2, g1, g3) - w(g3, g2, g1) + w(g3, g1, g2) + w(g2, g3, g1) - w(g1, g3, g2))
}

pub type Matrix3 = [[i64; 3]; 3];

pub fn det3(m: &Matrix3) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// `g'_i = Π_j g_j^{M_ij}` for a pairwise commuting triple.
pub fn sl3_transform(group: &FiniteGroup, t: [usize; 3], m: &Matrix3) -> Result<[usize; 3]> {
    let det = det3(m);
    if det != 1 {
        return Err(Error::Determinant(det));
    }
    check_triple(group, t)?;
    let mut out = [group.identity(); 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i] = group.mul(out[i], group.pow(t[j], m[i][j]));
        }
    }
    Ok(out)
}

pub fn check_sl3_invariance(group: &FiniteGroup, omega3: &Cochain, t: [usize; 3], m: &Matrix3) -> Result<bool> {
    let u = sl3_transform(group, t, m)?;
    Ok(membrane_phase(group, omega3, t[0], t[1], t[2])? == membrane_phase(group, omega3, u[0], u[1], u[2])?)
}

/// Elementary transvections `1 + E_ij` and signed permutation matrices of determinant 1.
pub fn sl3_generators() -> Vec<Matrix3> {
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let mut m = [[0; 3]; 3];
                for (k, row) in m.iter_mut().enumerate() {
                    row[k] = 1;
                }
                m[i][j] = 1;
                out.push(m);
            }
        }
    }
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for p in perms {
        for signs in 0..8 {
            let mut m = [[0; 3]; 3];
            for i in 0..3 {
                m[i][p[i]] = if signs >> i & 1 == 1 { -1 } else { 1 };
            }
            if det3(&m) == 1 {
                out.push(m);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::coboundary;
    use crate::cohomology::enumerate_class_representatives;
    use crate::group::parse_group_spec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grp(s: &str) -> FiniteGroup {
        parse_group_spec(s).unwrap()
    }

    // V4 elements 0..4 are bit pairs (x1, x2) with x1 the high bit.
    fn v4_omega(g: &FiniteGroup) -> Cochain {
        Cochain::from_fn(g, 2, 4, |a| 2 * ((a[0] >> 1) * (a[1] & 1)) as i64)
    }

    fn type_three(g: &FiniteGroup) -> Cochain {
        Cochain::from_fn(g, 3, 8, |a| 4 * ((a[0] >> 2 & 1) * (a[1] >> 1 & 1) * (a[2] & 1)) as i64)
    }

    #[test]
    fn v4_cocycle_condition_by_enumeration() {
        let g = grp("Z2xZ2");
        let w = v4_omega(&g);
        let mut checked = 0;
        for a in g.elements() {
            for b in g.elements() {
                for c in g.elements() {
                    let lhs = w.get(&[a, b]) + w.get(&[g.mul(a, b), c]);
                    let rhs = w.get(&[b, c]) + w.get(&[a, g.mul(b, c)]);
                    assert_eq!(lhs % 4, rhs % 4);
                    checked += 1;
                }
            }
        }
        assert_eq!(checked, 64);
    }

    #[test]
    fn v4_epsilon_values() {
        let g = grp("Z2xZ2");
        let w = v4_omega(&g);
        // a = (1,0) is index 2, b = (0,1) is index 1
        assert_eq!(epsilon(&g, &w, 2, 1).unwrap(), Phase::new(2, 4));
        let t = epsilon_table(&g, &w).unwrap();
        assert_eq!(t.len(), 16);
        // linearly independent pairs in F2^2
        assert_eq!(t.nontrivial_count(), 3 * 2);
        for &(s, p) in t.entries() {
            let (x1, x2, y1, y2) = (s.g >> 1, s.g & 1, s.h >> 1, s.h & 1);
            assert_eq!(p.is_one(), x1 * y2 == x2 * y1);
        }
        let s3 = grp("S3");
        let t = epsilon_table(&s3, &Cochain::zero(&s3, 2, 6)).unwrap();
        assert_eq!(t.len(), 18);
        assert_eq!(t.nontrivial_count(), 0);
    }

    #[test]
    fn epsilon_laws_on_all_classes() {
        for s in ["Z2xZ2", "D4", "Q8", "Z2xZ4", "Z2xZ2xZ2", "S3", "Z3xZ3"] {
            let g = grp(s);
            for w in enumerate_class_representatives(&g, 2).unwrap() {
                let t = epsilon_table(&g, &w).unwrap();
                for &(sec, p) in t.entries() {
                    assert!(t.get(sec.g, sec.g).unwrap().is_one());
                    assert!((p + t.get(sec.h, sec.g).unwrap()).is_one());
                }
            }
        }
    }

    #[test]
    fn coboundary_invariance() {
        let g = grp("Z2xZ2");
        let w = v4_omega(&g);
        let base = epsilon_table(&g, &w).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let f = Cochain::from_fn(&g, 1, 4, |_| rng.gen_range(0..4));
            let shifted = w.add(&coboundary(&g, &f).unwrap());
            assert_eq!(epsilon_table(&g, &shifted).unwrap(), base);
        }
    }

    #[test]
    fn bicharacter_on_abelian_groups() {
        for s in ["Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2", "Z9", "Z3xZ3"] {
            let g = grp(s);
            for w in enumerate_class_representatives(&g, 2).unwrap() {
                let t = epsilon_table(&g, &w).unwrap();
                for a in g.elements() {
                    for b in g.elements() {
                        for h in g.elements() {
                            let lhs = t.get(g.mul(a, b), h).unwrap();
                            assert_eq!(lhs, t.get(a, h).unwrap() + t.get(b, h).unwrap(), "{s}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn modular_examples_and_invariance() {
        let g = grp("S3");
        let (a, b) = g.commuting_pairs().into_iter().find(|&(a, b)| a != b && a != 0 && b != 0).unwrap();
        let s = Sector::new(&g, a, b).unwrap();
        let t = modular_transform(&g, s, Sl2::T).unwrap();
        assert_eq!(t, Sector { g: g.mul(s.g, s.h), h: s.h });
        assert_eq!(modular_transform(&g, s, Sl2::IDENTITY).unwrap(), s);
        let st = modular_transform(&g, s, Sl2::S).unwrap();
        assert_eq!(st, Sector { g: s.h, h: g.inv(s.g) });
        assert_eq!(Sl2::new(1, 1, 1, 1), Err(Error::Determinant(0)));
        for spec in ["Z2xZ2", "Z3xZ3"] {
            let g = grp(spec);
            for w in enumerate_class_representatives(&g, 2).unwrap() {
                let t = epsilon_table(&g, &w).unwrap();
                for m in [Sl2::T, Sl2::S, Sl2::T.mul(&Sl2::S), Sl2::S.mul(&Sl2::T)] {
                    for &(sec, p) in t.entries() {
                        let u = modular_transform(&g, sec, m).unwrap();
                        assert_eq!(t.get(u.g, u.h).unwrap(), p);
                    }
                }
            }
        }
    }

    #[test]
    fn partition_examples() {
        let z2 = grp("Z2");
        let z = assemble_partition(&z2, &Cochain::zero(&z2, 2, 2), &Amplitudes::Symbolic, false).unwrap();
        assert_eq!(z.symbolic(&z2), "1/2 * ( Z(0,0) + Z(0,1) + Z(1,0) + Z(1,1) )");
        let v4 = grp("Z2xZ2");
        let one = BigRational::one();
        let z = assemble_partition(&v4, &v4_omega(&v4), &Amplitudes::constant(&v4, one.clone()), false).unwrap();
        // (10 - 6) / 4: one ω-regular class
        assert_eq!(z.value.unwrap().to_rational(), Some(one.clone()));
        let z1 = grp("Z1");
        let z = assemble_partition(&z1, &Cochain::zero(&z1, 2, 1), &Amplitudes::Symbolic, false).unwrap();
        assert_eq!(z.symbolic(&z1), "Z(0,0)");
        let mut partial = BTreeMap::new();
        partial.insert(Sector { g: 0, h: 0 }, one);
        assert!(matches!(
            assemble_partition(&z2, &Cochain::zero(&z2, 2, 2), &Amplitudes::Numeric(partial), false),
            Err(Error::MissingSector(..))
        ));
    }

    #[test]
    fn trivial_torsion_counts_classes() {
        for s in ["S3", "D4", "Q8", "A4", "Z2xZ2", "D5"] {
            let g = grp(s);
            let n = g.order() as u64;
            let z = assemble_partition(&g, &Cochain::zero(&g, 2, n), &Amplitudes::constant(&g, BigRational::one()), true)
                .unwrap();
            let v = z.value.unwrap().to_rational().unwrap();
            assert_eq!(v, BigRational::from_integer(BigInt::from(g.num_classes())), "{s}");
            assert_eq!(z.terms.iter().map(|t| t.orbit.len()).sum::<usize>(), g.commuting_pairs().len());
        }
    }

    #[test]
    fn signs_in_symbolic_output() {
        let v4 = grp("Z2xZ2");
        let z = assemble_partition(&v4, &v4_omega(&v4), &Amplitudes::Symbolic, false).unwrap();
        let text = z.symbolic(&v4);
        assert!(text.starts_with("1/4 * ( Z((0,0),(0,0)) + "));
        assert_eq!(text.matches(" - ").count(), 6);
        let z3 = grp("Z3xZ3");
        let w = enumerate_class_representatives(&z3, 2).unwrap().pop().unwrap();
        let text = assemble_partition(&z3, &w, &Amplitudes::Symbolic, false).unwrap().symbolic(&z3);
        assert!(text.contains("e(1/3)*Z(") || text.contains("e(2/3)*Z("), "{text}");
    }

    #[test]
    fn projection_operator_properties() {
        for s in ["Z2", "S3", "Z2xZ2"] {
            let g = grp(s);
            let p = projection_operator(&g);
            assert!(p.is_idempotent(&g));
            assert_eq!(p.regular_rank(&g), 1);
        }
        let g = grp("Z2");
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(projection_operator(&g).coefficients, vec![half.clone(), half]);
    }

    #[test]
    fn holonomy_reduces_to_epsilon() {
        let g = grp("Z2xZ2");
        let w = v4_omega(&g);
        let trivial = WilsonData::trivial();
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(holonomy_phase(&g, &w, &trivial, a, b).unwrap(), epsilon(&g, &w, a, b).unwrap());
            }
        }
        let zero = Cochain::zero(&g, 2, 4);
        assert!(holonomy_phase(&g, &zero, &trivial, 1, 2).unwrap().is_one());
        let mut values = vec![Phase::ONE; 4];
        values[1] = Phase::new(1, 4);
        let wil = WilsonData::per_element(&g, &values);
        assert_eq!(holonomy_phase(&g, &zero, &wil, 1, 2).unwrap(), Phase::new(1, 4));
        let s3 = grp("S3");
        let (a, b) = s3.elements().flat_map(|a| s3.elements().map(move |b| (a, b))).find(|&(a, b)| !s3.commutes(a, b)).unwrap();
        assert_eq!(holonomy_phase(&s3, &Cochain::zero(&s3, 2, 6), &trivial, a, b), Err(Error::NonCommuting(a, b)));
    }

    #[test]
    fn type_three_membrane() {
        let g = grp("Z2xZ2xZ2");
        let w = type_three(&g);
        let mut checked = 0;
        for a in g.elements() {
            for b in g.elements() {
                for c in g.elements() {
                    for d in g.elements() {
                        let lhs = w.get(&[b, c, d]) + w.get(&[a, g.mul(b, c), d]) + w.get(&[a, b, c]);
                        let rhs = w.get(&[g.mul(a, b), c, d]) + w.get(&[a, b, g.mul(c, d)]);
                        assert_eq!(lhs % 8, rhs % 8);
                        checked += 1;
                    }
                }
            }
        }
        assert_eq!(checked, 4096);
        // e1 = (1,0,0) = 4, e2 = 2, e3 = 1
        assert_eq!(membrane_phase(&g, &w, 4, 2, 1).unwrap(), Phase::minus_one());
        for a in g.elements() {
            for b in g.elements() {
                assert!(membrane_phase(&g, &w, a, a, b).unwrap().is_one());
                assert!(membrane_phase(&g, &w, a, b, a).unwrap().is_one());
                assert!(membrane_phase(&g, &w, b, a, a).unwrap().is_one());
            }
        }
        assert!(membrane_phase(&g, &Cochain::zero(&g, 3, 8), 4, 2, 1).unwrap().is_one());
    }

    #[test]
    fn sl3_invariance() {
        let g = grp("Z2xZ2xZ2");
        let w = type_three(&g);
        let gens = sl3_generators();
        assert_eq!(gens.len(), 6 + 24);
        for a in g.elements() {
            for b in g.elements() {
                for c in g.elements() {
                    for m in &gens {
                        assert!(check_sl3_invariance(&g, &w, [a, b, c], m).unwrap());
                    }
                }
            }
        }
        let flip = [[-1, 0, 0], [0, 1, 0], [0, 0, 1]];
        assert_eq!(check_sl3_invariance(&g, &w, [4, 2, 1], &flip), Err(Error::Determinant(-1)));
    }
}
