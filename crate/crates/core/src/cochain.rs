//! Normalized inhomogeneous cochains `G^p -> Z/N` and the bar differential.
//!
//! A `p`-cochain stores one residue per tuple of non-identity elements
//! (`(|G|-1)^p` slots, lexicographic in element index); any argument equal
//! to the identity reads as zero. Values are exponents: the residue `k`
//! stands for the phase `exp(2πi k/N)`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::phase::Phase;
use crate::snf::SparseRow;

/// Highest cochain degree the table layout supports.
pub const MAX_DEGREE: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    modulus: u64,
    group_order: usize,
    identity: usize,
    values: Vec<u64>,
}

/// Number of slots of a normalized `p`-cochain on a group of order `n`.
pub fn slot_count(n: usize, p: usize) -> usize {
    (n - 1).pow(p as u32)
}

impl Cochain {
    pub fn zero(g: &FiniteGroup, degree: usize, modulus: u64) -> Cochain {
        assert!(modulus > 0, "modulus must be positive");
        assert!(degree <= MAX_DEGREE, "degree {degree} above {MAX_DEGREE}");
        Cochain {
            degree,
            modulus,
            group_order: g.order(),
            identity: g.identity(),
            values: vec![0; slot_count(g.order(), degree)],
        }
    }

    /// Builds a normalized cochain from `f`, evaluated only on non-identity tuples.
    pub fn from_fn(g: &FiniteGroup, degree: usize, modulus: u64, mut f: impl FnMut(&[usize]) -> i64) -> Cochain {
        let mut c = Cochain::zero(g, degree, modulus);
        for slot in 0..c.values.len() {
            let args = c.tuple_of_slot(slot);
            c.values[slot] = f(&args).rem_euclid(modulus as i64) as u64;
        }
        c
    }

    pub fn from_values(g: &FiniteGroup, degree: usize, modulus: u64, values: Vec<u64>) -> Result<Cochain> {
        let mut c = Cochain::zero(g, degree, modulus);
        if values.len() != c.values.len() {
            return Err(Error::Shape(format!(
                "{}-cochain on a group of order {} needs {} values, got {}",
                degree,
                g.order(),
                c.values.len(),
                values.len()
            )));
        }
        c.values = values.into_iter().map(|v| v % modulus).collect();
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    fn pos(&self, g: usize) -> Option<usize> {
        match g.cmp(&self.identity) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Less => Some(g),
            std::cmp::Ordering::Greater => Some(g - 1),
        }
    }

    /// Slot of a tuple, `None` when an argument is the identity.
    pub fn slot(&self, args: &[usize]) -> Option<usize> {
        debug_assert_eq!(args.len(), self.degree);
        let base = self.group_order - 1;
        args.iter().try_fold(0usize, |acc, &g| Some(acc * base + self.pos(g)?))
    }

    pub fn tuple_of_slot(&self, mut slot: usize) -> Vec<usize> {
        let base = self.group_order - 1;
        let mut out = vec![0; self.degree];
        for i in (0..self.degree).rev() {
            let p = slot % base;
            slot /= base;
            out[i] = if p < self.identity { p } else { p + 1 };
        }
        out
    }

    /// Residue at `args` (zero if any argument is the identity).
    pub fn get(&self, args: &[usize]) -> u64 {
        self.slot(args).map_or(0, |s| self.values[s])
    }

    pub fn phase(&self, args: &[usize]) -> Phase {
        Phase::from_residue(self.get(args), self.modulus)
    }

    /// Sets a non-identity slot; returns an error for identity arguments.
    pub fn set(&mut self, args: &[usize], value: i64) -> Result<()> {
        let s = self
            .slot(args)
            .ok_or_else(|| Error::Shape("normalized cochains vanish on identity arguments".into()))?;
        self.values[s] = value.rem_euclid(self.modulus as i64) as u64;
        Ok(())
    }

    fn check_compatible(&self, other: &Cochain) {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        assert_eq!(self.group_order, other.group_order, "group mismatch");
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.check_compatible(other);
        let n = self.modulus;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| (a + b) % n).collect();
        Cochain { values, ..self.clone() }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Cochain {
        let n = self.modulus as i128;
        let values = self.values.iter().map(|&a| (a as i128 * k as i128).rem_euclid(n) as u64).collect();
        Cochain { values, ..self.clone() }
    }

    /// The same phases written over a multiple `new_modulus` of the current modulus.
    pub fn rescale(&self, new_modulus: u64) -> Result<Cochain> {
        if new_modulus % self.modulus != 0 {
            return Err(Error::Domain(format!("modulus {new_modulus} is not a multiple of {}", self.modulus)));
        }
        let f = new_modulus / self.modulus;
        Ok(Cochain { modulus: new_modulus, values: self.values.iter().map(|&v| v * f).collect(), ..self.clone() })
    }

    /// `(tuple, residue)` for every nonzero slot, in slot order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (Vec<usize>, u64)> + '_ {
        self.values.iter().enumerate().filter(|(_, &v)| v != 0).map(|(s, &v)| (self.tuple_of_slot(s), v))
    }

    /// Text form: a header line then one `g1 ... gp k/N` line per nonzero entry.
    pub fn to_text(&self, group_name: &str) -> String {
        let mut out = format!("cocycle p={} N={} group={}\n", self.degree, self.modulus, group_name);
        for (args, v) in self.nonzero_entries() {
            for a in &args {
                write!(out, "{a} ").unwrap();
            }
            writeln!(out, "{}", Phase::from_residue(v, self.modulus)).unwrap();
        }
        out
    }

    pub fn parse_text(g: &FiniteGroup, text: &str) -> Result<Cochain> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty cocycle text".into()))?;
        let rest = header
            .strip_prefix("cocycle")
            .ok_or_else(|| Error::Parse("cocycle header must start with `cocycle`".into()))?;
        let mut degree = None;
        let mut modulus = None;
        for tok in rest.split_whitespace() {
            if let Some(v) = tok.strip_prefix("p=") {
                degree = Some(v.parse::<usize>().map_err(|_| Error::Parse(format!("bad degree `{v}`")))?);
            } else if let Some(v) = tok.strip_prefix("N=") {
                modulus = Some(v.parse::<u64>().map_err(|_| Error::Parse(format!("bad modulus `{v}`")))?);
            } else if tok.starts_with("group=") {
                break;
            }
        }
        let degree = degree.ok_or_else(|| Error::Parse("header lacks p=".into()))?;
        let modulus = modulus.filter(|&n| n > 0).ok_or_else(|| Error::Parse("header lacks N=".into()))?;
        if degree > MAX_DEGREE {
            return Err(Error::Degree { degree, reason: format!("above {MAX_DEGREE}") });
        }
        let mut c = Cochain::zero(g, degree, modulus);
        for line in lines {
            let words: Vec<&str> = line.split_whitespace().collect();
            if words.len() != degree + 1 {
                return Err(Error::Parse(format!("expected {} fields in `{line}`", degree + 1)));
            }
            let args: Vec<usize> = words[..degree]
                .iter()
                .map(|w| match w.parse::<usize>() {
                    Ok(x) if x < g.order() => Ok(x),
                    _ => Err(Error::Parse(format!("bad element `{w}`"))),
                })
                .collect::<Result<_>>()?;
            let phase: Phase = words[degree].parse()?;
            let k = phase
                .residue_mod(modulus)
                .ok_or_else(|| Error::Parse(format!("phase {phase} is not a {modulus}-th root of unity")))?;
            c.set(&args, k as i64)?;
        }
        Ok(c)
    }
}

/// Terms `(sign, argument tuple)` of the bar differential at a `(p+1)`-tuple.
fn differential_terms(g: &FiniteGroup, args: &[usize]) -> Vec<(i64, Vec<usize>)> {
    let p = args.len() - 1;
    let mut terms = Vec::with_capacity(p + 2);
    terms.push((1, args[1..].to_vec()));
    for i in 0..p {
        let mut t = Vec::with_capacity(p);
        t.extend_from_slice(&args[..i]);
        t.push(g.mul(args[i], args[i + 1]));
        t.extend_from_slice(&args[i + 2..]);
        terms.push((if i % 2 == 0 { -1 } else { 1 }, t));
    }
    terms.push((if p % 2 == 0 { -1 } else { 1 }, args[..p].to_vec()));
    terms
}

/// Integer value of the bar differential of integer lifts at one tuple.
fn differential_at(g: &FiniteGroup, c: &Cochain, args: &[usize]) -> i128 {
    differential_terms(g, args).into_iter().map(|(s, t)| s as i128 * c.get(&t) as i128).sum()
}

fn check_group(g: &FiniteGroup, c: &Cochain) -> Result<()> {
    if c.group_order != g.order() || c.identity != g.identity() {
        return Err(Error::Shape(format!("cochain belongs to a group of order {}", c.group_order)));
    }
    Ok(())
}

/// The bar differential `d: C^p -> C^{p+1}` for `p <= 3`.
///
/// `(dc)(g1..g_{p+1}) = c(g2..g_{p+1}) + Σ_i (-1)^i c(.., g_i g_{i+1}, ..) + (-1)^{p+1} c(g1..g_p)`.
pub fn coboundary(g: &FiniteGroup, c: &Cochain) -> Result<Cochain> {
    check_group(g, c)?;
    if c.degree > 3 {
        return Err(Error::Degree { degree: c.degree, reason: "coboundary is defined for p <= 3".into() });
    }
    let n = c.modulus as i128;
    let mut out = Cochain::zero(g, c.degree + 1, c.modulus);
    for slot in 0..out.values.len() {
        let args = out.tuple_of_slot(slot);
        out.values[slot] = differential_at(g, c, &args).rem_euclid(n) as u64;
    }
    Ok(out)
}

pub fn is_cocycle(g: &FiniteGroup, c: &Cochain) -> bool {
    coboundary(g, c).map(|d| d.is_zero()).unwrap_or(false)
}

/// Connecting map of `0 -> Z/N -> Z/N^2 -> Z/N -> 0`: lift to `[0, N)`,
/// apply the integral differential, divide by `N`, reduce mod `N`.
pub fn bockstein(g: &FiniteGroup, c: &Cochain) -> Result<Cochain> {
    check_group(g, c)?;
    if c.degree > 3 {
        return Err(Error::Degree { degree: c.degree, reason: "bockstein is defined for p <= 3".into() });
    }
    let n = c.modulus as i128;
    let mut out = Cochain::zero(g, c.degree + 1, c.modulus);
    for slot in 0..out.values.len() {
        let args = out.tuple_of_slot(slot);
        let v = differential_at(g, c, &args);
        if v.rem_euclid(n) != 0 {
            return Err(Error::NotCocycle(format!("differential is {} at {:?}", v.rem_euclid(n), args)));
        }
        out.values[slot] = (v / n).rem_euclid(n) as u64;
    }
    Ok(out)
}

/// Sparse integer matrix of `d: C^p -> C^{p+1}` (rows indexed by `(p+1)`-slots).
pub fn differential_matrix(g: &FiniteGroup, p: usize) -> Vec<SparseRow<i64>> {
    let src = Cochain { degree: p, modulus: 1, group_order: g.order(), identity: g.identity(), values: Vec::new() };
    let dst = Cochain { degree: p + 1, ..src.clone() };
    let rows = slot_count(g.order(), p + 1);
    let mut out = Vec::with_capacity(rows);
    for slot in 0..rows {
        let args = dst.tuple_of_slot(slot);
        let mut row: Vec<(usize, i64)> =
            differential_terms(g, &args).into_iter().filter_map(|(s, t)| Some((src.slot(&t)?, s))).collect();
        row.sort_unstable();
        let mut merged: SparseRow<i64> = Vec::with_capacity(row.len());
        for (col, v) in row {
            match merged.last_mut() {
                Some((c, acc)) if *c == col => *acc += v,
                _ => merged.push((col, v)),
            }
        }
        merged.retain(|&(_, v)| v != 0);
        out.push(merged);
    }
    out
}
