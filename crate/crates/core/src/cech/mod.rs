//! Equivariant structures on bundles and gerbes over finite discrete sites.
//!
//! Everything is flat and locally constant: functions are phases on the
//! components of overlaps, connections vanish, and all relations are written
//! additively in `Q/Z`. Overlap keys are increasing patch tuples, so a value
//! on `U_β ∩ U_α` with `α < β` is read as the negative of the stored one.

mod parse;
mod site;

use std::fmt;

use num_integer::Integer;

use crate::cochain::{is_cocycle, Cochain};
use crate::cohomology::cohomology_u1;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::phase::Phase;

pub use parse::{parse_cech_document, CechDocument};
pub use site::{faces_of, DiscreteSite, OverlapData, SiteBuilder, SiteFunction};

/// Stable identifiers of the checked relations.
pub mod relation {
    pub const BUNDLE_CLOSURE: &str = "bundle:closure";
    pub const BUNDLE_TRANSITION: &str = "bundle:transition";
    pub const BUNDLE_COMPOSITION: &str = "bundle:composition";
    pub const GERBE_CLOSURE: &str = "gerbe:closure";
    pub const GERBE_TRIPLE: &str = "gerbe:triple";
    pub const GERBE_NU: &str = "gerbe:nu";
    pub const GERBE_COCYCLE: &str = "gerbe:cocycle";
    pub const DIFF_CLOSURE: &str = "diff:closure";
    pub const DIFF_MORPHISM: &str = "diff:morphism";
    pub const DIFF_GROUP_LAW: &str = "diff:group-law";
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub relation: &'static str,
    pub overlap: Vec<usize>,
    pub component: usize,
    pub elements: Vec<usize>,
    pub lhs: Phase,
    pub rhs: Phase,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, relation: &str) -> bool {
        self.violations.iter().any(|v| v.relation == relation)
    }

    fn check(&mut self, relation: &'static str, overlap: &[usize], component: usize, elements: &[usize], lhs: Phase, rhs: Phase) {
        self.checked += 1;
        if lhs != rhs {
            self.violations.push(Violation {
                relation,
                overlap: overlap.to_vec(),
                component,
                elements: elements.to_vec(),
                lhs,
                rhs,
            });
        }
    }

    fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }

    /// Human-readable lines, at most `limit` violations.
    pub fn render(&self, group: &FiniteGroup, limit: usize) -> String {
        let mut out = if self.passed() {
            format!("PASS ({} relations checked)\n", self.checked)
        } else {
            format!("FAIL ({} of {} relations violated)\n", self.violations.len(), self.checked)
        };
        for v in self.violations.iter().take(limit) {
            out.push_str(&format!("  {}\n", v.display(group)));
        }
        if self.violations.len() > limit {
            out.push_str(&format!("  ... {} more\n", self.violations.len() - limit));
        }
        out
    }
}

impl Violation {
    pub fn display<'a>(&'a self, group: &'a FiniteGroup) -> impl fmt::Display + 'a {
        struct Show<'a>(&'a Violation, &'a FiniteGroup);
        impl fmt::Display for Show<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let v = self.0;
                let elements: Vec<&str> = v.elements.iter().map(|&g| self.1.label(g)).collect();
                write!(
                    f,
                    "{} on overlap {:?} component {} at ({}): {} != {}",
                    v.relation,
                    v.overlap,
                    v.component,
                    elements.join(", "),
                    v.lhs,
                    v.rhs
                )
            }
        }
        Show(self, group)
    }
}

fn first_failure(report: &Report, group: &FiniteGroup, what: &str) -> Result<()> {
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::Domain(format!("{what} is not valid: {}", v.display(group)))),
    }
}

/// Transition functions `g_{αβ}` of a flat bundle, on double overlaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleCocycle {
    pub transition: SiteFunction,
}

impl BundleCocycle {
    pub fn trivial(site: &DiscreteSite) -> BundleCocycle {
        BundleCocycle { transition: site.zero_function(2) }
    }
}

/// Gauge transformations `h^g_α` on patches, one function per group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleEquivariance {
    pub h: Vec<SiteFunction>,
}

impl BundleEquivariance {
    pub fn trivial(site: &DiscreteSite) -> BundleEquivariance {
        BundleEquivariance { h: vec![site.zero_function(1); site.group().order()] }
    }

    /// Constant `h^g = φ(g)` on every patch.
    pub fn from_character(site: &DiscreteSite, phi: &[Phase]) -> BundleEquivariance {
        BundleEquivariance { h: phi.iter().map(|&p| site.constant_function(1, p)).collect() }
    }

    /// Twists every `h^g` by the character `χ`.
    pub fn act(&self, site: &DiscreteSite, chi: &[Phase]) -> BundleEquivariance {
        BundleEquivariance { h: self.h.iter().zip(chi).map(|(h, &c)| h.add(&site.constant_function(1, c))).collect() }
    }
}

/// `h_{αβγ}` on triple overlaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GerbeCocycle {
    pub h: SiteFunction,
}

impl GerbeCocycle {
    pub fn trivial(site: &DiscreteSite) -> GerbeCocycle {
        GerbeCocycle { h: site.zero_function(3) }
    }
}

/// `ν^g_{αβ}` on double overlaps and `h^{g1,g2}_α` on patches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GerbeEquivariance {
    pub nu: Vec<SiteFunction>,
    /// Indexed by `g1 * |G| + g2`.
    pub h: Vec<SiteFunction>,
}

impl GerbeEquivariance {
    pub fn trivial(site: &DiscreteSite) -> GerbeEquivariance {
        let n = site.group().order();
        GerbeEquivariance { nu: vec![site.zero_function(2); n], h: vec![site.zero_function(1); n * n] }
    }

    /// `ν = 0` and `h^{g1,g2} = ω(g1,g2)` on every patch.
    pub fn from_cocycle(site: &DiscreteSite, omega: &Cochain) -> GerbeEquivariance {
        let d = GerbeDifferenceData::from_cocycle(site, omega);
        GerbeEquivariance { nu: d.transition, h: d.omega }
    }

    pub fn pair(&self, order: usize, g1: usize, g2: usize) -> &SiteFunction {
        &self.h[g1 * order + g2]
    }

    /// Shifts `ν` by `T` and `h` by `ω`.
    pub fn act(&self, d: &GerbeDifferenceData) -> GerbeEquivariance {
        GerbeEquivariance {
            nu: self.nu.iter().zip(&d.transition).map(|(a, b)| a.add(b)).collect(),
            h: self.h.iter().zip(&d.omega).map(|(a, b)| a.add(b)).collect(),
        }
    }
}

/// `T^g_{αβ}` on double overlaps and `ω^{g1,g2}_α` on patches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GerbeDifferenceData {
    pub transition: Vec<SiteFunction>,
    /// Indexed by `g1 * |G| + g2`.
    pub omega: Vec<SiteFunction>,
}

impl GerbeDifferenceData {
    pub fn trivial(site: &DiscreteSite) -> GerbeDifferenceData {
        let n = site.group().order();
        GerbeDifferenceData { transition: vec![site.zero_function(2); n], omega: vec![site.zero_function(1); n * n] }
    }

    /// Trivial `T` and the constant maps `ω^{g1,g2} = ω(g1,g2)`.
    pub fn from_cocycle(site: &DiscreteSite, omega: &Cochain) -> GerbeDifferenceData {
        let g = site.group();
        let mut d = GerbeDifferenceData::trivial(site);
        for g1 in g.elements() {
            for g2 in g.elements() {
                d.omega[g1 * g.order() + g2] = site.constant_function(1, omega.phase(&[g1, g2]));
            }
        }
        d
    }

    pub fn pair(&self, order: usize, g1: usize, g2: usize) -> &SiteFunction {
        &self.omega[g1 * order + g2]
    }
}

fn check_per_element(site: &DiscreteSite, fs: &[SiteFunction], count: usize, layer: usize, what: &str) -> Result<()> {
    if fs.len() != count {
        return Err(Error::Shape(format!("{what}: expected {count} functions, found {}", fs.len())));
    }
    fs.iter().try_for_each(|f| site.check_function(f, layer, what))
}

fn closure(site: &DiscreteSite, f: &SiteFunction, layer: usize, relation: &'static str, elements: &[usize], report: &mut Report) {
    for (key, data) in site.layer(layer) {
        let faces = faces_of(key);
        for (c, r) in data.faces.iter().enumerate() {
            // faces are listed with the last patch dropped first, so the
            // alternating sign of face j is (-1)^(len-1-j)
            let total: Phase = faces
                .iter()
                .zip(r)
                .enumerate()
                .map(|(j, (fk, &x))| if (layer - 1 - j) % 2 == 0 { f.get(fk, x) } else { -f.get(fk, x) })
                .sum();
            report.check(relation, key, c, elements, total, Phase::ONE);
        }
    }
}

/// Triple-overlap closure of the bundle transition functions.
pub fn verify_bundle_cocycle(site: &DiscreteSite, cocycle: &BundleCocycle) -> Result<Report> {
    site.check_function(&cocycle.transition, 2, "bundle cocycle")?;
    let mut report = Report::default();
    closure(site, &cocycle.transition, 3, relation::BUNDLE_CLOSURE, &[], &mut report);
    Ok(report)
}

/// Checks the transition-function and composition relations of a bundle
/// equivariant structure, along with the closure of the cocycle itself.
pub fn verify_bundle_equivariance(site: &DiscreteSite, cocycle: &BundleCocycle, s: &BundleEquivariance) -> Result<Report> {
    let group = site.group();
    let n = group.order();
    check_per_element(site, &s.h, n, 1, "bundle equivariant structure")?;
    let mut report = verify_bundle_cocycle(site, cocycle)?;
    let t = &cocycle.transition;
    for g in group.elements() {
        for (key, data) in site.layer(2) {
            let (a, b) = (&key[..1], &key[1..]);
            for (c, r) in data.faces.iter().enumerate() {
                let lhs = t.get(key, site.act(g, key, c));
                let rhs = t.get(key, c) + s.h[g].get(a, r[0]) - s.h[g].get(b, r[1]);
                report.check(relation::BUNDLE_TRANSITION, key, c, &[g], lhs, rhs);
            }
        }
    }
    for g1 in group.elements() {
        for g2 in group.elements() {
            let g12 = group.mul(g1, g2);
            for (key, data) in site.layer(1) {
                for c in 0..data.components {
                    let lhs = s.h[g12].get(key, c);
                    let rhs = s.h[g1].get(key, site.act(g2, key, c)) + s.h[g2].get(key, c);
                    report.check(relation::BUNDLE_COMPOSITION, key, c, &[g1, g2], lhs, rhs);
                }
            }
        }
    }
    Ok(report)
}

/// Difference of two bundle equivariant structures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BundleDifference {
    /// A character `G → U(1)`, one phase per element.
    Character(Vec<Phase>),
    /// One character per connected component of the site, indexed by component label.
    PerComponent(Vec<Vec<Phase>>),
}

/// `φ(g) = h^g_α − h̄^g_α`, a character on each connected component.
pub fn bundle_difference_character(
    site: &DiscreteSite,
    cocycle: &BundleCocycle,
    s1: &BundleEquivariance,
    s2: &BundleEquivariance,
) -> Result<BundleDifference> {
    let group = site.group();
    first_failure(&verify_bundle_equivariance(site, cocycle, s1)?, group, "first structure")?;
    first_failure(&verify_bundle_equivariance(site, cocycle, s2)?, group, "second structure")?;
    let labels = site.patch_components();
    let mut chars: Vec<Vec<Option<Phase>>> = vec![vec![None; group.order()]; site.connected_components()];
    for g in group.elements() {
        let diff = s1.h[g].sub(&s2.h[g]);
        for &((patch, c), label) in &labels {
            let v = diff.get(&[patch], c);
            match chars[label][g] {
                None => chars[label][g] = Some(v),
                Some(w) if w != v => {
                    return Err(Error::Domain(format!(
                        "difference of the structures is not locally constant at patch {patch} for {}",
                        group.label(g)
                    )))
                }
                Some(_) => {}
            }
        }
    }
    let chars: Vec<Vec<Phase>> = chars.into_iter().map(|c| c.into_iter().map(|x| x.unwrap_or(Phase::ONE)).collect()).collect();
    for phi in &chars {
        for g1 in group.elements() {
            for g2 in group.elements() {
                if phi[group.mul(g1, g2)] != phi[g1] + phi[g2] {
                    return Err(Error::Domain("difference of the structures is not a homomorphism".into()));
                }
            }
        }
    }
    Ok(match chars.len() {
        0 => BundleDifference::Character(vec![Phase::ONE; group.order()]),
        1 => BundleDifference::Character(chars.into_iter().next().expect("one component")),
        _ => BundleDifference::PerComponent(chars),
    })
}

/// Quadruple-overlap closure of `h_{αβγ}`.
pub fn verify_gerbe_cocycle(site: &DiscreteSite, cocycle: &GerbeCocycle) -> Result<Report> {
    site.check_function(&cocycle.h, 3, "gerbe cocycle")?;
    let mut report = Report::default();
    closure(site, &cocycle.h, 4, relation::GERBE_CLOSURE, &[], &mut report);
    Ok(report)
}

fn check_gerbe_shape(site: &DiscreteSite, nu: &[SiteFunction], h: &[SiteFunction], what: &str) -> Result<()> {
    let n = site.group().order();
    check_per_element(site, nu, n, 2, what)?;
    check_per_element(site, h, n * n, 1, what)
}

// ν^{g1g2} = ν^{g2} + g2^*ν^{g1} + h^{g1,g2}_α − h^{g1,g2}_β
fn morphism_relation(
    site: &DiscreteSite,
    nu: &[SiteFunction],
    h: &[SiteFunction],
    relation: &'static str,
    report: &mut Report,
) {
    let group = site.group();
    let n = group.order();
    for g1 in group.elements() {
        for g2 in group.elements() {
            let g12 = group.mul(g1, g2);
            let hp = &h[g1 * n + g2];
            for (key, data) in site.layer(2) {
                for (c, r) in data.faces.iter().enumerate() {
                    let lhs = nu[g12].get(key, c);
                    let rhs = nu[g2].get(key, c) + nu[g1].get(key, site.act(g2, key, c)) + hp.get(&key[..1], r[0])
                        - hp.get(&key[1..], r[1]);
                    report.check(relation, key, c, &[g1, g2], lhs, rhs);
                }
            }
        }
    }
}

// h^{g1,g2g3} + h^{g2,g3} = g3^*h^{g1,g2} + h^{g1g2,g3}
fn group_law_relation(site: &DiscreteSite, h: &[SiteFunction], relation: &'static str, report: &mut Report) {
    let group = site.group();
    let n = group.order();
    for g1 in group.elements() {
        for g2 in group.elements() {
            for g3 in group.elements() {
                let (g12, g23) = (group.mul(g1, g2), group.mul(g2, g3));
                for (key, data) in site.layer(1) {
                    for c in 0..data.components {
                        let lhs = h[g1 * n + g23].get(key, c) + h[g2 * n + g3].get(key, c);
                        let rhs = h[g1 * n + g2].get(key, site.act(g3, key, c)) + h[g12 * n + g3].get(key, c);
                        report.check(relation, key, c, &[g1, g2, g3], lhs, rhs);
                    }
                }
            }
        }
    }
}

/// Checks the three relations of a gerbe equivariant structure, along with
/// the closure of the gerbe cocycle.
pub fn verify_gerbe_equivariance(site: &DiscreteSite, cocycle: &GerbeCocycle, s: &GerbeEquivariance) -> Result<Report> {
    check_gerbe_shape(site, &s.nu, &s.h, "gerbe equivariant structure")?;
    let mut report = verify_gerbe_cocycle(site, cocycle)?;
    for g in site.group().elements() {
        let nu = &s.nu[g];
        for (key, data) in site.layer(3) {
            let faces = faces_of(key);
            for (c, r) in data.faces.iter().enumerate() {
                // faces are [a,b], [a,c], [b,c]
                let lhs = cocycle.h.get(key, site.act(g, key, c));
                let rhs = cocycle.h.get(key, c) + nu.get(&faces[0], r[0]) + nu.get(&faces[2], r[2]) - nu.get(&faces[1], r[1]);
                report.check(relation::GERBE_TRIPLE, key, c, &[g], lhs, rhs);
            }
        }
    }
    morphism_relation(site, &s.nu, &s.h, relation::GERBE_NU, &mut report);
    group_law_relation(site, &s.h, relation::GERBE_COCYCLE, &mut report);
    Ok(report)
}

/// `T^g = ν^g − ν̄^g` and `ω^{g1,g2} = h^{g1,g2} − h̄^{g1,g2}`.
pub fn gerbe_difference_data(
    site: &DiscreteSite,
    cocycle: &GerbeCocycle,
    s1: &GerbeEquivariance,
    s2: &GerbeEquivariance,
) -> Result<GerbeDifferenceData> {
    let group = site.group();
    first_failure(&verify_gerbe_equivariance(site, cocycle, s1)?, group, "first structure")?;
    first_failure(&verify_gerbe_equivariance(site, cocycle, s2)?, group, "second structure")?;
    Ok(GerbeDifferenceData {
        transition: s1.nu.iter().zip(&s2.nu).map(|(a, b)| a.sub(b)).collect(),
        omega: s1.h.iter().zip(&s2.h).map(|(a, b)| a.sub(b)).collect(),
    })
}

/// Closure of every `T^g`, the morphism relation tying `T` to `ω`, and the group law for `ω`.
pub fn verify_difference_data(site: &DiscreteSite, d: &GerbeDifferenceData) -> Result<Report> {
    check_gerbe_shape(site, &d.transition, &d.omega, "difference data")?;
    let mut report = Report::default();
    for (g, t) in d.transition.iter().enumerate() {
        closure(site, t, 3, relation::DIFF_CLOSURE, &[g], &mut report);
    }
    morphism_relation(site, &d.transition, &d.omega, relation::DIFF_MORPHISM, &mut report);
    let mut law = Report::default();
    group_law_relation(site, &d.omega, relation::DIFF_GROUP_LAW, &mut law);
    report.merge(law);
    Ok(report)
}

/// Whether `ω` satisfies the group law on every patch component and triple.
pub fn verify_group_law_diagram(site: &DiscreteSite, d: &GerbeDifferenceData) -> Result<bool> {
    check_gerbe_shape(site, &d.transition, &d.omega, "difference data")?;
    let mut report = Report::default();
    group_law_relation(site, &d.omega, relation::DIFF_GROUP_LAW, &mut report);
    Ok(report.passed())
}

/// A class in `H^2(G, U(1))` read off from trivialized difference data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionClass {
    pub invariant_factors: Vec<u64>,
    pub coordinates: Vec<u64>,
    /// The normalized constant `ω`.
    pub cocycle: Cochain,
    /// Canonical representative of the class.
    pub representative: Cochain,
}

impl TorsionClass {
    pub fn is_trivial(&self) -> bool {
        self.coordinates.iter().all(|&x| x == 0)
    }
}

/// Reads the constant `ω` as a group 2-cocycle and classifies it.
///
/// The constant `ω(e,e)` is a coboundary and is removed first, leaving a
/// normalized cocycle.
pub fn extract_discrete_torsion(site: &DiscreteSite, d: &GerbeDifferenceData) -> Result<TorsionClass> {
    let group = site.group();
    let n = group.order();
    check_gerbe_shape(site, &d.transition, &d.omega, "difference data")?;
    if let Some(g) = d.transition.iter().position(|t| !t.is_trivial()) {
        return Err(Error::Domain(format!("T^{} is not trivialized", group.label(g))));
    }
    let mut values = vec![Phase::ONE; n * n];
    for (i, f) in d.omega.iter().enumerate() {
        values[i] = f.constant_value().ok_or_else(|| {
            Error::Domain(format!(
                "omega at ({}, {}) is not constant across patches",
                group.label(i / n),
                group.label(i % n)
            ))
        })?;
    }
    let e = group.identity();
    let shift = values[e * n + e];
    for g in group.elements() {
        if values[e * n + g] != shift || values[g * n + e] != shift {
            return Err(Error::NotCocycle("omega is not a group 2-cocycle".into()));
        }
    }
    let h2 = cohomology_u1(group, 2)?;
    let conductor = values.iter().fold(1u64, |acc, p| acc.lcm(&(*p - shift).order()));
    let modulus = conductor.lcm(&h2.modulus());
    let cocycle = Cochain::from_fn(group, 2, modulus, |t| {
        let p = values[t[0] * n + t[1]] - shift;
        p.residue_mod(modulus).expect("modulus is a multiple of every order") as i64
    });
    if !is_cocycle(group, &cocycle) {
        return Err(Error::NotCocycle("omega is not a group 2-cocycle".into()));
    }
    let coordinates = h2.class_of_u1(&cocycle)?;
    let representative = h2.representative(&coordinates)?;
    Ok(TorsionClass { invariant_factors: h2.invariant_factors().to_vec(), coordinates, cocycle, representative })
}
