//! Acceptance criteria: one PASS/FAIL line each, exit status 1 if any fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use dtorsion::cech::{
    bundle_difference_character, extract_discrete_torsion, gerbe_difference_data, BundleCocycle, BundleDifference,
    BundleEquivariance, DiscreteSite, GerbeCocycle, GerbeDifferenceData, GerbeEquivariance, SiteBuilder,
};
use dtorsion::cochain::{coboundary, is_cocycle, Cochain};
use dtorsion::cohomology::{cohomology_u1, cohomology_z_oracle, enumerate_class_representatives};
use dtorsion::phases::{
    assemble_partition, conjugation_orbits, epsilon, epsilon_table, membrane_phase, modular_transform, sl3_generators,
    sl3_transform, Amplitudes, Sector, Sl2,
};
use dtorsion::projrep::{irrep_dimensions, omega_regular_classes, twisted_regular_rep, verify_projective_relation};
use dtorsion::topology::{
    circle_rotation, circle_with_involution, circle_with_rotation, inertia_components, orbifold_euler_conjugacy,
    orbifold_euler_sum, random_admissible_complex, sphere_octahedral, torus_power, GComplex, OctahedralSymmetry,
};
use dtorsion::{parse_group_spec, FiniteGroup, Phase};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET_SCHUR: Duration = Duration::from_secs(60);
const BUDGET_H3: Duration = Duration::from_secs(120);
const BUDGET_EPSILON: Duration = Duration::from_secs(10);
const BUDGET_PARTITION: Duration = Duration::from_secs(1);
const BUDGET_KUMMER: Duration = Duration::from_secs(5);
const BUDGET_EULER: Duration = Duration::from_secs(60);
const BUDGET_PROJREP: Duration = Duration::from_secs(30);
const BUDGET_MEMBRANE: Duration = Duration::from_secs(30);
const BUDGET_CECH: Duration = Duration::from_secs(30);
const BUDGET_DETERMINISM: Duration = Duration::from_secs(60);

const SCHUR_GROUPS: u32 = 20;
const COBOUNDARY_SHIFTS: usize = 200;
const RANDOM_COMPLEXES: usize = 100;

fn grp(spec: &str) -> FiniteGroup {
    parse_group_spec(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

/// Outcome of one criterion: failures collected as messages.
struct Check {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Check {
        Check { failures: Vec::new(), notes: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn run(id: usize, title: &str, budget: Duration, body: impl FnOnce(&mut Check)) -> bool {
    let start = Instant::now();
    let mut check = Check::new();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| body(&mut check)));
    let elapsed = start.elapsed();
    if let Err(e) = outcome {
        let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
        check.failures.push(format!("panicked: {}", msg.unwrap_or_default()));
    }
    if elapsed > budget {
        check.failures.push(format!("took {:.2}s, budget {:.0}s", elapsed.as_secs_f64(), budget.as_secs_f64()));
    }
    let pass = check.failures.is_empty();
    let mut line = format!(
        "{} criterion {id}: {title} [{:.3}s / {:.0}s]",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    if !check.notes.is_empty() {
        line.push_str(&format!(" ({})", check.notes.join("; ")));
    }
    if !pass {
        line.push_str(&format!(" -- {}", check.failures.join("; ")));
    }
    println!("{line}");
    pass
}

// ---------- brute-force helpers, independent of the cohomology engine ----------

/// Normalized 2-cochain values with `ω(e,·) = ω(·,e) = 0`, slots over non-identity pairs.
fn bf_is_cocycle2(g: &FiniteGroup, n: u64, w: &[u64]) -> bool {
    let e = g.identity();
    let val = |a: usize, b: usize| -> u64 {
        if a == e || b == e {
            0
        } else {
            w[slot2(g, a, b)]
        }
    };
    for a in g.elements() {
        for b in g.elements() {
            for c in g.elements() {
                // ω(b,c) - ω(ab,c) + ω(a,bc) - ω(a,b) = 0
                let lhs = (val(b, c) + val(a, g.mul(b, c))) % n;
                let rhs = (val(g.mul(a, b), c) + val(a, b)) % n;
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

fn slot2(g: &FiniteGroup, a: usize, b: usize) -> usize {
    let pos = |x: usize| if x < g.identity() { x } else { x - 1 };
    pos(a) * (g.order() - 1) + pos(b)
}

/// `|H^2(G, U(1))|` by enumerating every normalized `μ_N` 2-cochain, `N = |G|`.
///
/// `|H^2(G, Z/N)| = |G_ab ⊗ Z/N| · |Hom(M(G), Z/N)|` and `N = |G|` kills both,
/// so `|M(G)| = |Z^2| / (|B^2| · |G_ab|)`.
fn bf_schur_order(g: &FiniteGroup) -> u64 {
    let n = g.order() as u64;
    let m = g.order() - 1;
    let slots = m * m;
    let total = n.pow(slots as u32);
    let mut w = vec![0u64; slots];
    let mut cocycles = 0u64;
    for mut code in 0..total {
        for x in w.iter_mut() {
            *x = code % n;
            code /= n;
        }
        if bf_is_cocycle2(g, n, &w) {
            cocycles += 1;
        }
    }
    let e = g.identity();
    let mut bounds = BTreeSet::new();
    for mut code in 0..n.pow(m as u32) {
        let mut f = vec![0u64; g.order()];
        for x in g.elements().filter(|&x| x != e) {
            f[x] = code % n;
            code /= n;
        }
        let mut b = vec![0u64; slots];
        for a in g.elements().filter(|&x| x != e) {
            for c in g.elements().filter(|&x| x != e) {
                b[slot2(g, a, c)] = (f[a] + f[c] + n - f[g.mul(a, c)]) % n;
            }
        }
        bounds.insert(b);
    }
    let ab: u64 = g.abelianization().invariant_factors.iter().product();
    cocycles / (bounds.len() as u64 * ab)
}

fn criterion_1(c: &mut Check) {
    let mut cases: Vec<(String, Vec<u64>)> = (1..=12).map(|n| (format!("Z{n}"), vec![])).collect();
    for (s, f) in [
        ("Z2xZ2", vec![2]),
        ("Z3xZ3", vec![3]),
        ("Z2xZ2xZ2", vec![2, 2, 2]),
        ("D4", vec![2]),
        ("Q8", vec![]),
        ("S3", vec![]),
        ("S4", vec![2]),
        ("A4", vec![2]),
    ] {
        cases.push((s.to_string(), f));
    }
    for (spec, expected) in &cases {
        let start = Instant::now();
        let g = grp(spec);
        let h = cohomology_u1(&g, 2).expect("H^2");
        c.require(h.invariant_factors() == expected.as_slice(), || format!("{spec}: got {:?}", h.invariant_factors()));
        let oracle = cohomology_z_oracle(&g, 3).expect("oracle").torsion_u64();
        c.require(oracle == *expected, || format!("{spec}: oracle H^3(G,Z) torsion {oracle:?}"));
        if g.order() <= 4 {
            let count = bf_schur_order(&g);
            let want: u64 = expected.iter().product();
            c.require(count == want, || format!("{spec}: enumeration gives |H^2| = {count}"));
        }
        c.require(start.elapsed() < BUDGET_SCHUR, || format!("{spec} exceeded its per-group budget"));
    }
    c.note(format!("{} groups", cases.len()));
}

fn criterion_2(c: &mut Check) {
    for n in 2..=4u64 {
        let g = grp(&format!("Z{n}"));
        let h = cohomology_u1(&g, 3).expect("H^3");
        c.require(h.invariant_factors() == [n], || format!("Z{n}: H^3 = {:?}", h.invariant_factors()));
        let z = cohomology_z_oracle(&g, 4).expect("oracle").torsion_u64();
        c.require(z == [n], || format!("Z{n}: oracle {z:?}"));
    }
    let g = grp("Z2xZ2");
    let h = cohomology_u1(&g, 3).expect("H^3");
    let z = cohomology_z_oracle(&g, 4).expect("oracle").torsion_u64();
    c.require(h.order() == 8, || format!("V4: |H^3| = {}", h.order()));
    c.require(z == h.invariant_factors(), || format!("V4: Bockstein {:?} vs oracle {z:?}", h.invariant_factors()));
    c.note(format!("H^3(V4,U(1)) = {:?}", h.invariant_factors()));
}

fn e_table_holds(g: &FiniteGroup, omega: &Cochain, c: &mut Check, spec: &str) {
    for a in g.elements() {
        c.require(epsilon(g, omega, a, a).unwrap().is_one(), || format!("{spec}: ε(g,g) != 1"));
        for b in g.elements().filter(|&b| g.commutes(a, b)) {
            let s = epsilon(g, omega, a, b).unwrap() + epsilon(g, omega, b, a).unwrap();
            c.require(s.is_one(), || format!("{spec}: ε(g,h)ε(h,g) != 1"));
        }
    }
}

fn criterion_3(c: &mut Check) {
    let groups = ["Z2", "Z3", "Z4", "Z2xZ2", "Z2xZ4", "Z3xZ3", "Z2xZ2xZ2", "S3", "D4", "Q8", "A4"];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut pool = Vec::new();
    for spec in groups {
        let g = grp(spec);
        for omega in enumerate_class_representatives(&g, 2).unwrap() {
            e_table_holds(&g, &omega, c, spec);
            pool.push((g.clone(), omega));
        }
    }
    for _ in 0..COBOUNDARY_SHIFTS {
        let (g, omega) = &pool[rng.gen_range(0..pool.len())];
        let n = omega.modulus();
        let f = Cochain::from_fn(g, 1, n, |_| rng.gen_range(0..n as i64));
        let shifted = omega.add(&coboundary(g, &f).unwrap());
        let a = epsilon_table(g, omega).unwrap();
        let b = epsilon_table(g, &shifted).unwrap();
        c.require(a.entries() == b.entries(), || format!("{}: ε changed under a coboundary shift", g.name()));
    }
    for spec in ["Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z2xZ2", "Z2xZ4", "Z2xZ2xZ2", "Z3xZ3"] {
        let g = grp(spec);
        for omega in enumerate_class_representatives(&g, 2).unwrap() {
            let e = |a, b| epsilon(&g, &omega, a, b).unwrap();
            for a in g.elements() {
                for b in g.elements() {
                    for x in g.elements() {
                        c.require(e(g.mul(a, b), x) == e(a, x) + e(b, x), || format!("{spec}: not multiplicative on the left"));
                        c.require(e(x, g.mul(a, b)) == e(x, a) + e(x, b), || format!("{spec}: not multiplicative on the right"));
                    }
                }
            }
        }
    }
    let (t, s) = (Sl2::T, Sl2::S);
    let moves = [t, s, t.mul(&s), s.mul(&t)];
    for spec in ["Z2xZ2", "Z3xZ3"] {
        let g = grp(spec);
        for omega in enumerate_class_representatives(&g, 2).unwrap() {
            for (a, b) in g.commuting_pairs() {
                let sec = Sector { g: a, h: b };
                for m in moves {
                    let u = modular_transform(&g, sec, m).unwrap();
                    c.require(epsilon(&g, &omega, a, b).unwrap() == epsilon(&g, &omega, u.g, u.h).unwrap(), || {
                        format!("{spec}: ε not SL(2,Z) invariant")
                    });
                }
            }
        }
    }
    let v4 = grp("Z2xZ2");
    let reps = enumerate_class_representatives(&v4, 2).unwrap();
    let gens = v4.generators();
    let table = epsilon_table(&v4, &reps[1]).unwrap();
    let eps_ab = table.get(gens[0], gens[1]).unwrap();
    c.require(eps_ab == Phase::minus_one(), || format!("V4: ε(a,b) = {eps_ab}"));
    let minus = table.entries().iter().filter(|(_, p)| *p == Phase::minus_one()).count();
    c.note(format!("V4 nontrivial class: {minus} of {} entries are -1", table.len()));
    c.require(minus == 8, || format!("V4: expected exactly eight -1 entries, found {minus}"));
}

fn criterion_4(c: &mut Check) {
    for spec in ["Z1", "Z2", "Z2xZ2", "Z3xZ3", "S3", "D4", "Q8", "A4", "S4"] {
        let g = grp(spec);
        let trivial = Cochain::zero(&g, 2, 1);
        let symbolic = assemble_partition(&g, &trivial, &Amplitudes::Symbolic, false).unwrap();
        let pairs = g.commuting_pairs();
        let shape_ok = symbolic.group_order == g.order()
            && symbolic.value.is_none()
            && symbolic.terms.len() == pairs.len()
            && symbolic.terms.iter().zip(&pairs).all(|(t, &(a, b))| t.sector == Sector { g: a, h: b } && t.orbit.len() == 1);
        c.require(shape_ok, || format!("{spec}: symbolic sum has the wrong shape"));
        let grouped = assemble_partition(&g, &trivial, &Amplitudes::Symbolic, true).unwrap();
        c.require(grouped.terms.len() == conjugation_orbits(&g).len(), || format!("{spec}: orbit grouping"));
        let value = assemble_partition(&g, &trivial, &Amplitudes::unit(&g), false).unwrap().value.unwrap();
        let classes = g.num_classes().to_string();
        c.require(value.to_string() == classes, || format!("{spec}: value {value} but {classes} classes"));
    }
    let v4 = grp("Z2xZ2");
    let omega = &enumerate_class_representatives(&v4, 2).unwrap()[1];
    let value = assemble_partition(&v4, omega, &Amplitudes::unit(&v4), false).unwrap().value.unwrap();
    c.note(format!("V4 nontrivial class with unit amplitudes gives {value}"));
    c.require(value.is_zero(), || format!("V4 nontrivial: expected 0, got {value}"));
}

fn criterion_5(c: &mut Check) {
    let x = torus_power(4);
    let sum = orbifold_euler_sum(&x).unwrap();
    let conj = orbifold_euler_conjugacy(&x).unwrap();
    let parts: Vec<i64> = inertia_components(&x).unwrap().components.iter().map(|p| p.euler_quotient).collect();
    c.require(sum == 24, || format!("sum formula gives {sum}"));
    c.require(conj == 24, || format!("conjugacy formula gives {conj}"));
    c.require(parts == [8, 16], || format!("inertia parts {parts:?}"));
}

// |G| times the pair sum, counted cell by cell
fn brute_pair_sum(x: &GComplex) -> i64 {
    let g = x.group();
    let mut total = 0;
    for (a, b) in g.commuting_pairs() {
        for (i, cell) in x.cells().iter().enumerate() {
            if x.act(a, i) == i && x.act(b, i) == i {
                total += if cell.dim % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    total
}

fn criterion_6(c: &mut Check) {
    let mut complexes = vec![
        circle_with_involution(),
        circle_with_rotation(),
        sphere_octahedral(OctahedralSymmetry::Antipodal),
        sphere_octahedral(OctahedralSymmetry::Reflection),
        torus_power(1),
        torus_power(2),
        torus_power(4),
        circle_rotation(3).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for spec in ["Z2", "Z3", "Z2xZ2", "S3"] {
        let g = grp(spec);
        for _ in 0..RANDOM_COMPLEXES {
            complexes.push(random_admissible_complex(&g, &mut rng, 10, 3));
        }
    }
    for x in &complexes {
        let n = x.group().order() as i64;
        let total = brute_pair_sum(x);
        c.require(total % n == 0, || format!("pair sum {total}/{n} is not integral"));
        match (orbifold_euler_sum(x), orbifold_euler_conjugacy(x)) {
            (Ok(a), Ok(b)) => {
                c.require(a == b, || format!("formulas disagree: {a} vs {b}"));
                c.require(a * n == total, || format!("sum formula {a} vs brute force {total}/{n}"));
            }
            (a, b) => c.failures.push(format!("evaluation failed: {a:?} {b:?}")),
        }
    }
    c.note(format!("{} complexes", complexes.len()));
}

fn criterion_7(c: &mut Check) {
    let groups = ["Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z2xZ2", "Z2xZ4", "Z2xZ2xZ2", "S3", "D4", "Q8"];
    let mut classes = 0;
    for spec in groups {
        let g = grp(spec);
        for omega in enumerate_class_representatives(&g, 2).unwrap() {
            classes += 1;
            let rep = twisted_regular_rep(&g, &omega).unwrap();
            let bad = verify_projective_relation(&g, &rep, &omega).unwrap();
            c.require(bad.is_empty(), || format!("{spec}: relation fails on {} pairs", bad.len()));
        }
    }
    let v4 = grp("Z2xZ2");
    let omega = &enumerate_class_representatives(&v4, 2).unwrap()[1];
    let regular = omega_regular_classes(&v4, omega).unwrap();
    let dims = irrep_dimensions(&v4, omega).unwrap();
    c.require(regular.len() == 1, || format!("V4: {} regular classes", regular.len()));
    c.require(dims.dimensions == [2], || format!("V4: dimensions {:?}", dims.dimensions));
    let rep = twisted_regular_rep(&v4, omega).unwrap();
    for x in v4.non_identity() {
        let diagonal = rep.matrix(x).triples().iter().filter(|(i, j, _)| i == j).count();
        c.require(diagonal == 0, || format!("V4: γ({}) has a nonzero trace term", v4.label(x)));
    }
    c.note(format!("{classes} classes over {} groups", groups.len()));
}

fn criterion_8(c: &mut Check) {
    let g = grp("Z2xZ2xZ2");
    let bits: Vec<[i64; 3]> = g
        .elements()
        .map(|x| {
            let v: Vec<i64> = g.label(x).trim_matches(|ch| ch == '(' || ch == ')').split(',').map(|t| t.parse().unwrap()).collect();
            [v[0], v[1], v[2]]
        })
        .collect();
    let omega = Cochain::from_fn(&g, 3, 2, |t| bits[t[0]][0] * bits[t[1]][1] * bits[t[2]][2]);
    c.require(is_cocycle(&g, &omega), || "type-III cochain is not a cocycle".into());
    let find = |v: [i64; 3]| g.elements().find(|&x| bits[x] == v).unwrap();
    let (e1, e2, e3) = (find([1, 0, 0]), find([0, 1, 0]), find([0, 0, 1]));
    let p = membrane_phase(&g, &omega, e1, e2, e3).unwrap();
    c.require(p == Phase::minus_one(), || format!("phase on (e1,e2,e3) is {p}"));
    let mut triples = 0;
    for a in g.elements() {
        for b in g.elements() {
            for rep in [[a, a, b], [a, b, a], [b, a, a]] {
                let q = membrane_phase(&g, &omega, rep[0], rep[1], rep[2]).unwrap();
                c.require(q.is_one(), || format!("repeated argument gives {q}"));
            }
            for x in g.elements() {
                triples += 1;
                let base = membrane_phase(&g, &omega, a, b, x).unwrap();
                for m in sl3_generators() {
                    let u = sl3_transform(&g, [a, b, x], &m).unwrap();
                    let q = membrane_phase(&g, &omega, u[0], u[1], u[2]).unwrap();
                    c.require(q == base, || "membrane phase is not SL(3,Z) invariant".into());
                }
            }
        }
    }
    c.note(format!("{triples} triples, {} generators", sl3_generators().len()));
}

fn two_patch(g: &FiniteGroup, swap: Option<usize>) -> DiscreteSite {
    let mut b = SiteBuilder::new(g).patch(0, 1).patch(1, 1).overlap(&[0, 1], vec![vec![0, 0], vec![0, 0]]);
    for gen in g.generators() {
        b = b.act(gen, &[0, 1], if Some(gen) == swap { vec![1, 0] } else { vec![0, 1] });
    }
    b.build().unwrap()
}

// every homomorphism G -> μ_N, by brute force over images of the generators
fn characters(g: &FiniteGroup) -> Vec<Vec<Phase>> {
    let n = g.exponent() as u64;
    let gens = g.generators();
    let mut out = Vec::new();
    let count = n.pow(gens.len() as u32);
    for mut code in 0..count {
        let mut images = Vec::new();
        for _ in &gens {
            images.push(Phase::from_residue(code % n, n));
            code /= n;
        }
        let mut phi: Vec<Option<Phase>> = vec![None; g.order()];
        phi[g.identity()] = Some(Phase::ONE);
        let mut frontier = vec![g.identity()];
        while let Some(x) = frontier.pop() {
            for (k, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                if phi[y].is_none() {
                    phi[y] = Some(phi[x].unwrap() + images[k]);
                    frontier.push(y);
                }
            }
        }
        let phi: Vec<Phase> = phi.into_iter().map(Option::unwrap).collect();
        let hom = g.elements().all(|a| g.elements().all(|b| phi[g.mul(a, b)] == phi[a] + phi[b]));
        if hom {
            out.push(phi);
        }
    }
    out
}

fn criterion_9(c: &mut Check) {
    let mut rounds = 0;
    for spec in ["Z2", "Z3", "Z4", "Z2xZ2", "S3"] {
        let g = grp(spec);
        let mut sites = vec![DiscreteSite::point(&g), two_patch(&g, None)];
        // swapping the overlap components along one generator is an action when G is abelian and that generator has even order
        if let Some(&s) = g.generators().first().filter(|&&s| g.is_abelian() && g.element_order(s) % 2 == 0) {
            sites.push(two_patch(&g, Some(s)));
        }
        let reps = enumerate_class_representatives(&g, 2).unwrap();
        for site in &sites {
            let bundle = BundleCocycle::trivial(site);
            let gerbe = GerbeCocycle::trivial(site);
            for phi in characters(&g) {
                let base = BundleEquivariance::from_character(site, &vec![Phase::ONE; g.order()]);
                let moved = base.act(site, &phi);
                let back = bundle_difference_character(site, &bundle, &moved, &base).unwrap();
                c.require(back == BundleDifference::Character(phi.clone()), || format!("{spec}: bundle round trip"));
                rounds += 1;
            }
            for omega in &reps {
                let base = GerbeEquivariance::trivial(site);
                let d = GerbeDifferenceData::from_cocycle(site, omega);
                let moved = base.act(&d);
                let back = gerbe_difference_data(site, &gerbe, &moved, &base).unwrap();
                c.require(back == d, || format!("{spec}: gerbe round trip"));
                rounds += 1;
            }
        }
    }
    let mut extracted = 0;
    for spec in ["Z2", "Z2xZ2", "Z2xZ4", "Z3xZ3", "D4", "Z2xZ2xZ2", "Q8", "S3", "A4"] {
        let g = grp(spec);
        let h = cohomology_u1(&g, 2).unwrap();
        let site = DiscreteSite::point(&g);
        for coords in h.class_coordinates() {
            let omega = h.representative(&coords).unwrap();
            let t = extract_discrete_torsion(&site, &GerbeDifferenceData::from_cocycle(&site, &omega)).unwrap();
            c.require(t.coordinates == coords, || format!("{spec}: extracted {:?} from {coords:?}", t.coordinates));
            c.require(t.representative == omega, || format!("{spec}: representative differs"));
            extracted += 1;
        }
    }
    c.note(format!("{rounds} round trips, {extracted} classes extracted"));
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn criterion_10(c: &mut Check) {
    let corpus: Vec<Vec<String>> = [
        vec!["info", "Z2xZ2"],
        vec!["info", "S4"],
        vec!["cohomology", "Z2xZ2", "-p", "2"],
        vec!["cohomology", "Z2xZ2", "-p", "3", "--oracle"],
        vec!["cohomology", "D4", "-p", "2", "--modulus", "4"],
        vec!["cocycles", "Z2xZ4"],
        vec!["phases", "Z2xZ2", "--class", "1"],
        vec!["phases", "Z3xZ3", "--class", "2", "--json"],
        vec!["partition", "Z2xZ2", "--class", "1"],
        vec!["partition", "S3", "--quotient-conjugation"],
        vec!["membrane", "Z2xZ2xZ2", "--class", "5"],
        vec!["projrep", "D4", "--class", "1", "--emit-matrices"],
        vec!["euler", "Z2", &data("kummer_t4.cx")],
        vec!["inertia", "Z2", &data("sphere_reflection.cx"), "--json"],
        vec!["cech", "verify", &data("circle_z2_a.cech")],
        vec!["cech", "verify", &data("circle_z2_broken.cech")],
        vec!["cech", "diff", &data("point_v4_torsion.cech"), &data("point_v4_trivial.cech")],
        vec!["phases", "Z2", "--class", "9"],
        vec!["info", "Znope"],
    ]
    .iter()
    .map(|v| v.iter().map(|s| s.to_string()).collect())
    .collect();
    let exe = env!("CARGO_BIN_EXE_dtorsion");
    for args in &corpus {
        let a = Command::new(exe).args(args).output().expect("spawn");
        let b = Command::new(exe).args(args).output().expect("spawn");
        c.require(a.stdout == b.stdout && a.stderr == b.stderr && a.status == b.status, || {
            format!("`{}` differs between runs", args.join(" "))
        });
    }
    c.note(format!("{} invocations", corpus.len()));
}

fn main() {
    let criteria: Vec<(&str, Duration, fn(&mut Check))> = vec![
        ("Schur multipliers", BUDGET_SCHUR * SCHUR_GROUPS, criterion_1),
        ("H^3 suite", BUDGET_H3, criterion_2),
        ("epsilon laws", BUDGET_EPSILON, criterion_3),
        ("partition structure", BUDGET_PARTITION, criterion_4),
        ("Kummer orbifold Euler characteristic", BUDGET_KUMMER, criterion_5),
        ("orbifold Euler formulas agree", BUDGET_EULER, criterion_6),
        ("projectivization", BUDGET_PROJREP, criterion_7),
        ("membrane phases", BUDGET_MEMBRANE, criterion_8),
        ("Cech round trips", BUDGET_CECH, criterion_9),
        ("CLI determinism", BUDGET_DETERMINISM, criterion_10),
    ];
    let mut failed = 0;
    for (i, (title, budget, body)) in criteria.into_iter().enumerate() {
        if !run(i + 1, title, budget, body) {
            failed += 1;
        }
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
