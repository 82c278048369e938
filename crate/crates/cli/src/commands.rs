use std::fs;
use std::path::Path;

use dtorsion::cech::{
    bundle_difference_character, extract_discrete_torsion, gerbe_difference_data, parse_cech_document, verify_bundle_cocycle,
    verify_bundle_equivariance, verify_difference_data, verify_gerbe_cocycle, verify_gerbe_equivariance,
    verify_group_law_diagram, BundleCocycle, BundleDifference, CechDocument, GerbeCocycle,
};
use dtorsion::cochain::Cochain;
use dtorsion::cohomology::{cohomology_u1, cohomology_z_oracle, cohomology_zn};
use dtorsion::phases::{assemble_partition, epsilon_table, membrane_phase, Amplitudes};
use dtorsion::projrep::{twisted_regular_rep, twisted_rep_report};
use dtorsion::topology::{
    euler_char, inertia_components, orbifold_euler_conjugacy, orbifold_euler_sum, parse_complex, GComplex,
};
use dtorsion::{parse_group_spec, FiniteGroup, Phase};

use crate::report::{Report, Section};

/// Failures surfaced to the user; both exit with status 1.
/// Usage errors (exit 2) are raised by the argument parser before this point.
#[derive(Debug)]
pub enum CliError {
    /// The inputs were understood but the computation refused them: exit 1.
    Domain(String),
    /// A report was produced but some checked relation failed: exit 1.
    Failed(Report),
}

impl From<dtorsion::Error> for CliError {
    fn from(e: dtorsion::Error) -> CliError {
        CliError::Domain(e.to_string())
    }
}

pub type CliResult = std::result::Result<Report, CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Domain(format!("cannot read {}: {e}", path.display())))
}

/// A group spec, or `@path` for a spec stored in a file.
pub fn load_group(spec: &str) -> Result<FiniteGroup, CliError> {
    let text = match spec.strip_prefix('@') {
        Some(path) => read(Path::new(path))?,
        None => spec.to_string(),
    };
    Ok(parse_group_spec(&text)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn list<T: ToString>(items: &[T]) -> String {
    format!("[{}]", items.iter().map(T::to_string).collect::<Vec<_>>().join(","))
}

fn abelian_group(factors: &[u64]) -> String {
    if factors.is_empty() {
        "0".into()
    } else {
        factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
    }
}

pub fn info(cmd: Vec<String>, g: &FiniteGroup) -> CliResult {
    let mut r = Report::new(cmd).with_group(g);
    let ab = g.abelianization();
    let gens: Vec<&str> = g.generators().iter().map(|&x| g.label(x)).collect();
    r.push(Section::fields(
        "group",
        [
            ("name", g.name().to_string()),
            ("order", g.order().to_string()),
            ("exponent", g.exponent().to_string()),
            ("classes", g.num_classes().to_string()),
            ("abelian", yes_no(g.is_abelian()).to_string()),
            ("abelianization", list(&ab.invariant_factors)),
            ("generators", list(&gens)),
        ],
    ));
    let rows = g
        .conjugacy_classes()
        .iter()
        .enumerate()
        .map(|(i, class)| {
            let rep = class[0];
            vec![
                i.to_string(),
                g.label(rep).to_string(),
                class.len().to_string(),
                g.element_order(rep).to_string(),
                g.centralizer(rep).len().to_string(),
            ]
        })
        .collect();
    r.push(Section::table("conjugacy classes", &["class", "representative", "size", "element_order", "centralizer"], rows));
    Ok(r)
}

pub fn cohomology(cmd: Vec<String>, g: &FiniteGroup, p: usize, modulus: Option<u64>, oracle: bool) -> CliResult {
    let mut r = Report::new(cmd).with_group(g);
    let (name, h) = match modulus {
        Some(n) => (format!("H^{p}(G,Z/{n})"), cohomology_zn(g, p, n)?),
        None => (format!("H^{p}(G,U(1))"), cohomology_u1(g, p)?),
    };
    r.push(Section::lines("result", vec![format!("{name} = {}", abelian_group(h.invariant_factors()))]));
    r.push(Section::fields(
        "details",
        [
            ("degree", p.to_string()),
            ("invariant_factors", list(h.invariant_factors())),
            ("order", h.order().to_string()),
            ("cochain_modulus", h.modulus().to_string()),
        ],
    ));
    if oracle {
        let z = cohomology_z_oracle(g, p + 1)?;
        let torsion = z.torsion_u64();
        let mut fields = vec![
            ("integral_degree", (p + 1).to_string()),
            ("integral_torsion", list(&torsion)),
            ("free_rank", z.free_rank.map_or("unknown".into(), |k| k.to_string())),
        ];
        if modulus.is_none() {
            fields.push(("agrees", yes_no(torsion == h.invariant_factors()).to_string()));
        }
        r.push(Section::fields("integral oracle", fields));
    }
    Ok(r)
}

pub fn cocycles(cmd: Vec<String>, g: &FiniteGroup, p: usize, class: Option<usize>) -> CliResult {
    let mut r = Report::new(cmd).with_group(g);
    let h = cohomology_u1(g, p)?;
    let coords = h.class_coordinates();
    let picked: Vec<usize> = match class {
        Some(k) if k >= coords.len() => return Err(class_range(k, coords.len())),
        Some(k) => vec![k],
        None => (0..coords.len()).collect(),
    };
    let mut rows = Vec::new();
    let mut texts = Vec::new();
    for k in picked {
        let c = h.representative(&coords[k])?;
        rows.push(vec![k.to_string(), list(&coords[k]), c.nonzero_entries().count().to_string()]);
        texts.push(Section::lines(&format!("class {k}"), c.to_text(g.name()).lines().map(String::from).collect()));
    }
    r.push(Section::fields(
        "cohomology",
        [("degree", p.to_string()), ("invariant_factors", list(h.invariant_factors())), ("classes", coords.len().to_string())],
    ));
    r.push(Section::table("classes", &["class", "coordinates", "nonzero"], rows));
    r.sections.extend(texts);
    Ok(r)
}

fn class_range(k: usize, len: usize) -> CliError {
    CliError::Domain(format!("class index {k} out of range (there are {len} classes)"))
}

/// The cocycle picked by `--class` (default 0) or loaded with `--cocycle`.
pub struct Selected {
    pub label: String,
    pub coordinates: Vec<u64>,
    pub cocycle: Cochain,
}

pub fn select(g: &FiniteGroup, p: usize, class: Option<usize>, file: Option<&Path>) -> Result<Selected, CliError> {
    let h = cohomology_u1(g, p)?;
    match file {
        Some(path) => {
            let c = Cochain::parse_text(g, &read(path)?)?;
            if c.degree() != p {
                return Err(CliError::Domain(format!("expected a {p}-cocycle, the file holds degree {}", c.degree())));
            }
            let coordinates = h.class_of_u1(&c)?;
            Ok(Selected { label: path.display().to_string(), coordinates, cocycle: c })
        }
        None => {
            let k = class.unwrap_or(0);
            let coords = h.class_coordinates();
            let coordinates = coords.get(k).ok_or_else(|| class_range(k, coords.len()))?.clone();
            let cocycle = h.representative(&coordinates)?;
            Ok(Selected { label: k.to_string(), coordinates, cocycle })
        }
    }
}

fn class_fields(s: &Selected) -> Section {
    Section::fields("class", [("class", s.label.clone()), ("coordinates", list(&s.coordinates))])
}

pub fn phases(cmd: Vec<String>, g: &FiniteGroup, s: &Selected) -> CliResult {
    let mut r = Report::new(cmd).with_group(g);
    let table = epsilon_table(g, &s.cocycle)?;
    r.push(class_fields(s));
    r.push(Section::fields("summary", [("sectors", table.len()), ("nontrivial", table.nontrivial_count())]));
    let rows = table
        .entries()
        .iter()
        .map(|(sec, p)| vec![g.label(sec.g).to_string(), g.label(sec.h).to_string(), p.to_string()])
        .collect();
    r.push(Section::table("epsilon", &["g", "h", "epsilon"], rows));
    Ok(r)
}

pub fn partition(cmd: Vec<String>, g: &FiniteGroup, s: &Selected, quotient: bool) -> CliResult {
    let mut r = Report::new(cmd).with_group(g);
    let one = Amplitudes::unit(g);
    let sum = assemble_partition(g, &s.cocycle, &one, quotient)?;
    r.push(class_fields(s));
    r.push(Section::lines("partition", vec![format!("Z = {}", sum.symbolic(g))]));
    let value = sum.value.as_ref().map(|v| v.to_string()).unwrap_or_default();
    r.push(Section::fields("unit amplitudes", [("value", value)]));
    let rows = sum
        .terms
        .iter()
        .map(|t| {
            let orbit: Vec<String> = t.orbit.iter().map(|o| o.label(g)).collect();
            vec![t.sector.label(g), t.coefficient.to_string(), orbit.join(" ")]
        })
        .collect();
    r.push(Section::table("terms", &["sector", "coefficient", "orbit"], rows));
    Ok(r)
}

pub fn membrane(cmd: Vec<String>, g: &FiniteGroup, s: &Selected) -> CliResult {
    let mut r = Report::new(cmd).with_group(g);
    let mut rows = Vec::new();
    let mut nontrivial = 0;
    for a in g.elements() {
        for b in g.elements().filter(|&b| g.commutes(a, b)) {
            for c in g.elements().filter(|&c| g.commutes(a, c) && g.commutes(b, c)) {
                let p = membrane_phase(g, &s.cocycle, a, b, c)?;
                nontrivial += usize::from(!p.is_one());
                rows.push(vec![g.label(a).to_string(), g.label(b).to_string(), g.label(c).to_string(), p.to_string()]);
            }
        }
    }
    r.push(class_fields(s));
    r.push(Section::fields("summary", [("triples", rows.len()), ("nontrivial", nontrivial)]));
    r.push(Section::table("membrane", &["g1", "g2", "g3", "phase"], rows));
    Ok(r)
}

pub fn load_complex(g: &FiniteGroup, path: &Path) -> Result<GComplex, CliError> {
    Ok(parse_complex(g, &read(path)?)?)
}

pub fn euler(cmd: Vec<String>, x: &GComplex) -> CliResult {
    let g = x.group();
    let mut r = Report::new(cmd).with_group(g);
    let sum = orbifold_euler_sum(x)?;
    let conj = orbifold_euler_conjugacy(x)?;
    r.push(Section::fields(
        "euler",
        [
            ("cells", list(&x.cell_counts())),
            ("euler", euler_char(x).to_string()),
            ("orbifold_sum", sum.to_string()),
            ("orbifold_conjugacy", conj.to_string()),
            ("agree", yes_no(sum == conj).to_string()),
        ],
    ));
    if sum != conj {
        return Err(CliError::Failed(r));
    }
    Ok(r)
}

pub fn inertia(cmd: Vec<String>, x: &GComplex) -> CliResult {
    let g = x.group();
    let mut r = Report::new(cmd).with_group(g);
    let report = inertia_components(x)?;
    let rows = report
        .components
        .iter()
        .map(|c| {
            vec![
                c.label.clone(),
                c.class_size.to_string(),
                c.centralizer_order.to_string(),
                list(&c.cell_counts),
                c.euler_fixed.to_string(),
                c.euler_quotient.to_string(),
            ]
        })
        .collect();
    r.push(Section::table(
        "components",
        &["class", "class_size", "centralizer", "fixed_cells", "euler_fixed", "euler_quotient"],
        rows,
    ));
    r.push(Section::fields(
        "totals",
        [
            ("conjugacy_sum", report.total.to_string()),
            ("pair_sum", report.sum_formula.to_string()),
            ("agree", yes_no(report.formulas_agree()).to_string()),
        ],
    ));
    if !report.formulas_agree() {
        return Err(CliError::Failed(r));
    }
    Ok(r)
}

pub fn projrep(cmd: Vec<String>, g: &FiniteGroup, s: &Selected, emit: bool) -> CliResult {
    let mut r = Report::new(cmd).with_group(g);
    let rep = twisted_rep_report(g, &s.cocycle, s.coordinates.clone())?;
    r.push(class_fields(s));
    r.push(Section::fields(
        "representation",
        [
            ("regular_classes", list(&rep.regular_classes)),
            ("irreducibles", rep.dimensions.len().to_string()),
            ("dimensions", list(&rep.dimensions)),
            ("sum_of_squares", rep.dimensions.iter().map(|d| d * d).sum::<usize>().to_string()),
            ("group_order", rep.sum_of_squares.to_string()),
            ("resolved", yes_no(rep.resolved).to_string()),
            ("projective_relation", yes_no(rep.relation_holds).to_string()),
            ("regular_character", yes_no(rep.character_holds).to_string()),
            ("consistent", yes_no(rep.consistent()).to_string()),
        ],
    ));
    if emit {
        let regular = twisted_regular_rep(g, &s.cocycle)?;
        let lines = g
            .elements()
            .map(|x| {
                let entries: Vec<String> =
                    regular.matrix(x).triples().iter().map(|(i, j, p)| format!("({i}, {j}, {p})")).collect();
                format!("{}\t{}", g.label(x), entries.join(" "))
            })
            .collect();
        r.push(Section::lines("matrices", lines));
    }
    if !rep.consistent() {
        return Err(CliError::Failed(r));
    }
    Ok(r)
}

pub fn load_cech(path: &Path) -> Result<CechDocument, CliError> {
    Ok(parse_cech_document(&read(path)?)?)
}

fn render(report: &dtorsion::cech::Report, g: &FiniteGroup) -> Vec<String> {
    report.render(g, 20).lines().map(String::from).collect()
}

pub fn cech_verify(cmd: Vec<String>, doc: &CechDocument) -> CliResult {
    let site = &doc.site;
    let g = doc.group();
    let mut r = Report::new(cmd).with_group(g);
    r.push(Section::fields(
        "site",
        [
            ("patches", site.layer(1).count().to_string()),
            ("doubles", site.layer(2).count().to_string()),
            ("triples", site.layer(3).count().to_string()),
            ("quads", site.layer(4).count().to_string()),
            ("connected", yes_no(site.is_connected()).to_string()),
        ],
    ));
    let mut checks = Vec::new();
    if doc.bundle.is_some() || doc.bundle_equivariance.is_some() {
        let b = doc.bundle.clone().unwrap_or_else(|| BundleCocycle::trivial(site));
        checks.push(("bundle cocycle", verify_bundle_cocycle(site, &b)?));
        if let Some(s) = &doc.bundle_equivariance {
            checks.push(("bundle equivariance", verify_bundle_equivariance(site, &b, s)?));
        }
    }
    if doc.gerbe.is_some() || doc.gerbe_equivariance.is_some() {
        let c = doc.gerbe.clone().unwrap_or_else(|| GerbeCocycle::trivial(site));
        checks.push(("gerbe cocycle", verify_gerbe_cocycle(site, &c)?));
        if let Some(s) = &doc.gerbe_equivariance {
            checks.push(("gerbe equivariance", verify_gerbe_equivariance(site, &c, s)?));
        }
    }
    let rows = checks
        .iter()
        .map(|(name, rep)| {
            vec![
                name.to_string(),
                rep.checked.to_string(),
                rep.violations.len().to_string(),
                if rep.passed() { "PASS" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    r.push(Section::table("checks", &["structure", "checked", "violated", "status"], rows));
    let failed = checks.iter().any(|(_, rep)| !rep.passed());
    for (name, rep) in &checks {
        if !rep.passed() {
            r.push(Section::lines(name, render(rep, g)));
        }
    }
    if failed {
        return Err(CliError::Failed(r));
    }
    Ok(r)
}

fn phase_row(g: &FiniteGroup, phases: &[Phase]) -> String {
    g.elements().map(|x| format!("{}:{}", g.label(x), phases[x])).collect::<Vec<_>>().join(" ")
}

pub fn cech_diff(cmd: Vec<String>, a: &CechDocument, b: &CechDocument) -> CliResult {
    if a.site != b.site {
        return Err(CliError::Domain("the two files describe different sites".into()));
    }
    let site = &a.site;
    let g = a.group();
    let mut r = Report::new(cmd).with_group(g);
    let mut any = false;
    if let (Some(s1), Some(s2)) = (&a.bundle_equivariance, &b.bundle_equivariance) {
        any = true;
        let b1 = a.bundle.clone().unwrap_or_else(|| BundleCocycle::trivial(site));
        let b2 = b.bundle.clone().unwrap_or_else(|| BundleCocycle::trivial(site));
        if b1 != b2 {
            return Err(CliError::Domain("the bundle cocycles differ".into()));
        }
        let lines = match bundle_difference_character(site, &b1, s1, s2)? {
            BundleDifference::Character(phi) => vec![format!("character\t{}", phase_row(g, &phi))],
            BundleDifference::PerComponent(chars) => chars
                .iter()
                .enumerate()
                .map(|(i, phi)| format!("component {i}\t{}", phase_row(g, phi)))
                .collect(),
        };
        r.push(Section::lines("bundle difference", lines));
    }
    let mut failed = false;
    if let (Some(s1), Some(s2)) = (&a.gerbe_equivariance, &b.gerbe_equivariance) {
        any = true;
        let c1 = a.gerbe.clone().unwrap_or_else(|| GerbeCocycle::trivial(site));
        let c2 = b.gerbe.clone().unwrap_or_else(|| GerbeCocycle::trivial(site));
        if c1 != c2 {
            return Err(CliError::Domain("the gerbe cocycles differ".into()));
        }
        let d = gerbe_difference_data(site, &c1, s1, s2)?;
        let check = verify_difference_data(site, &d)?;
        let law = verify_group_law_diagram(site, &d)?;
        failed = !check.passed() || !law;
        let trivialized = d.transition.iter().all(|t| t.is_trivial());
        let mut fields = vec![
            ("relations", check.render(g, 0).lines().next().unwrap_or_default().to_string()),
            ("group_law", yes_no(law).to_string()),
            ("transition_trivial", yes_no(trivialized).to_string()),
        ];
        match extract_discrete_torsion(site, &d) {
            Ok(t) => {
                fields.push(("h2", list(&t.invariant_factors)));
                fields.push(("torsion_class", list(&t.coordinates)));
                fields.push(("torsion_trivial", yes_no(t.is_trivial()).to_string()));
            }
            Err(e) => fields.push(("torsion_class", format!("unavailable: {e}"))),
        }
        r.push(Section::fields("gerbe difference", fields));
        if !check.passed() {
            r.push(Section::lines("violations", render(&check, g)));
        }
    }
    if !any {
        return Err(CliError::Domain("no equivariant structure appears in both files".into()));
    }
    if failed {
        return Err(CliError::Failed(r));
    }
    Ok(r)
}
