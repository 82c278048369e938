//! Finite groups given by Cayley tables.
//!
//! Elements are the dense indices `0..order`; the multiplication table is the
//! single source of truth. Named families and permutation generators are
//! compiled into a table by [`parse_group_spec`].

pub mod action;
mod families;
mod parse;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::abelian::AbelianQuotient;
use crate::error::{Error, Result};

pub use families::{alternating, cyclic, dihedral, direct_product, quaternion, symmetric};
pub use parse::parse_group_spec;

/// Largest group order accepted by the constructors.
pub const MAX_ORDER: usize = 128;
/// Above this order associativity is sampled instead of checked exhaustively.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 64;
const ASSOCIATIVITY_SAMPLES: usize = 10_000;

#[derive(Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    identity: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    labels: Vec<String>,
    conjugacy: OnceLock<ConjugacyData>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            name: self.name.clone(),
            order: self.order,
            identity: self.identity,
            mul: self.mul.clone(),
            inv: self.inv.clone(),
            labels: self.labels.clone(),
            conjugacy: OnceLock::new(),
        }
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

/// Conjugacy classes and centralizers.
#[derive(Debug, Clone, Serialize)]
pub struct ConjugacyData {
    /// Classes ordered by their least element; each class sorted.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub centralizers: Vec<Vec<usize>>,
}

/// `G / [G, G]` as a product of cyclic groups `Z/d1 x Z/d2 x ...` with `d1 | d2 | ...`.
#[derive(Debug, Clone, Serialize)]
pub struct Abelianization {
    pub invariant_factors: Vec<u64>,
    /// Coordinates of the image of each element, one entry per factor.
    pub projection: Vec<Vec<u64>>,
    pub commutator_subgroup: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a row-major Cayley table and builds the group.
    pub fn from_table(name: impl Into<String>, order: usize, mul: Vec<usize>) -> Result<FiniteGroup> {
        Self::build(name.into(), order, mul, None)
    }

    pub(crate) fn build(name: String, order: usize, mul: Vec<usize>, labels: Option<Vec<String>>) -> Result<FiniteGroup> {
        if order == 0 {
            return Err(Error::InvalidGroup("empty element set".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::TooLarge(format!("order {order} exceeds the supported maximum {MAX_ORDER}")));
        }
        if mul.len() != order * order {
            return Err(Error::InvalidGroup(format!("table has {} entries, expected {}", mul.len(), order * order)));
        }
        if let Some(&bad) = mul.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidGroup(format!("entry {bad} out of range 0..{order}")));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| mul[e * order + g] == g && mul[g * order + e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inv = vec![usize::MAX; order];
        for g in 0..order {
            let h = (0..order)
                .find(|&h| mul[g * order + h] == identity && mul[h * order + g] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {g} has no inverse")))?;
            inv[g] = h;
        }
        // Latin square: every row and column is a permutation.
        for g in 0..order {
            let mut seen_row = vec![false; order];
            let mut seen_col = vec![false; order];
            for h in 0..order {
                seen_row[mul[g * order + h]] = true;
                seen_col[mul[h * order + g]] = true;
            }
            if seen_row.iter().chain(&seen_col).any(|s| !s) {
                return Err(Error::InvalidGroup(format!("row or column {g} is not a permutation")));
            }
        }
        let m = |a: usize, b: usize| mul[a * order + b];
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if m(m(a, b), c) != m(a, m(b, c)) {
                return Err(Error::InvalidGroup(format!("associativity fails at ({a}, {b}, {c})")));
            }
            Ok(())
        };
        if order <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                check(rng.gen_range(0..order), rng.gen_range(0..order), rng.gen_range(0..order))?;
            }
        }
        let labels = labels.unwrap_or_else(|| (0..order).map(|g| g.to_string()).collect());
        Ok(FiniteGroup { name, order, identity, mul, inv, labels, conjugacy: OnceLock::new() })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Elements other than the identity, in index order.
    pub fn non_identity(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&g| g != self.identity)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.mul
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn pow(&self, g: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(g) } else { g };
        let mut result = self.identity;
        for _ in 0..e.unsigned_abs() % self.element_order(g) as u64 {
            result = self.mul(result, base);
        }
        result
    }

    pub fn conj(&self, k: usize, g: usize) -> usize {
        self.mul(self.mul(k, g), self.inv(k))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.commutes(a, b)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elements().fold(1, |acc, g| acc.lcm(&self.element_order(g)))
    }

    pub fn conjugacy(&self) -> &ConjugacyData {
        self.conjugacy.get_or_init(|| self.compute_conjugacy())
    }

    fn compute_conjugacy(&self) -> ConjugacyData {
        let n = self.order;
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let class: BTreeSet<usize> = (0..n).map(|k| self.conj(k, g)).collect();
            for &x in &class {
                class_of[x] = classes.len();
            }
            classes.push(class.into_iter().collect());
        }
        let centralizers = (0..n).map(|g| (0..n).filter(|&h| self.commutes(g, h)).collect()).collect();
        ConjugacyData { classes, class_of, centralizers }
    }

    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.conjugacy().classes
    }

    pub fn num_classes(&self) -> usize {
        self.conjugacy().classes.len()
    }

    pub fn centralizer(&self, g: usize) -> &[usize] {
        &self.conjugacy().centralizers[g]
    }

    /// Elements commuting with every member of `set`.
    pub fn centralizer_of_set(&self, set: &[usize]) -> Vec<usize> {
        self.elements().filter(|&h| set.iter().all(|&g| self.commutes(g, h))).collect()
    }

    /// All `(g, h)` with `gh = hg`, in lexicographic order.
    pub fn commuting_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for g in self.elements() {
            for h in self.elements() {
                if self.commutes(g, h) {
                    out.push((g, h));
                }
            }
        }
        out
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        self.elements().filter(|&g| seen[g]).collect()
    }

    /// Subgroups generated by at most two elements, sorted and deduplicated.
    pub fn small_subgroups(&self) -> Vec<Vec<usize>> {
        let mut set = BTreeSet::new();
        for a in self.elements() {
            for b in a..self.order {
                set.insert(self.subgroup_generated(&[a, b]));
            }
        }
        set.into_iter().collect()
    }

    /// The subgroup on `elements` as a group of its own, with the embedding
    /// `sub index -> parent index`. Labels are inherited.
    pub fn subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let mut embed = elements.to_vec();
        embed.sort_unstable();
        embed.dedup();
        let mut index = vec![usize::MAX; self.order];
        for (i, &g) in embed.iter().enumerate() {
            if g >= self.order {
                return Err(Error::InvalidGroup(format!("element {g} out of range")));
            }
            index[g] = i;
        }
        let n = embed.len();
        let mut mul = Vec::with_capacity(n * n);
        for &a in &embed {
            for &b in &embed {
                let c = index[self.mul(a, b)];
                if c == usize::MAX {
                    return Err(Error::InvalidGroup("elements are not closed under multiplication".into()));
                }
                mul.push(c);
            }
        }
        let labels = embed.iter().map(|&g| self.labels[g].clone()).collect();
        let sub = FiniteGroup::build(format!("{}<{n}>", self.name), n, mul, Some(labels))?;
        Ok((sub, embed))
    }

    /// A generating set chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = vec![self.identity];
        for g in self.elements() {
            if current.len() == self.order {
                break;
            }
            if current.binary_search(&g).is_err() {
                gens.push(g);
                current = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let comms: BTreeSet<usize> = self
            .elements()
            .flat_map(|a| self.elements().map(move |b| (a, b)))
            .map(|(a, b)| self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))))
            .collect();
        self.subgroup_generated(&comms.into_iter().collect::<Vec<_>>())
    }

    /// The abelianization `G/[G,G]` with invariant factors and the projection map.
    pub fn abelianization(&self) -> Abelianization {
        let k = self.commutator_subgroup();
        // coset representative = least element of gK
        let coset_of = |g: usize| k.iter().map(|&x| self.mul(g, x)).min().unwrap();
        let mut reps: Vec<usize> = self.elements().map(coset_of).collect::<BTreeSet<_>>().into_iter().collect();
        reps.sort_unstable();
        let index_of = |g: usize| reps.binary_search(&coset_of(g)).unwrap();
        let q = reps.len();
        let gens = self.generators();
        // Z^q modulo e_1 and e_a + e_s - e_{as} for every coset a and generator s.
        let mut relations = Vec::new();
        let mut unit = vec![BigInt::from(0); q];
        unit[index_of(self.identity)] = BigInt::from(1);
        relations.push(unit);
        for (ai, &a) in reps.iter().enumerate() {
            for &s in &gens {
                let mut r = vec![BigInt::from(0); q];
                r[ai] += 1;
                r[index_of(s)] += 1;
                r[index_of(self.mul(a, s))] -= 1;
                relations.push(r);
            }
        }
        let quotient = AbelianQuotient::new(q, &relations);
        let projection = self
            .elements()
            .map(|g| {
                let mut e = vec![BigInt::from(0); q];
                e[index_of(g)] = BigInt::from(1);
                quotient.coords(&e).iter().map(|c| u64::try_from(c).unwrap()).collect()
            })
            .collect();
        Abelianization { invariant_factors: quotient.factors_u64(), projection, commutator_subgroup: k }
    }
}
