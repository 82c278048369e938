//! Projective representations twisted by a 2-cocycle.
//!
//! Convention: `γ(g) γ(h) = ω(g, h) γ(gh)`. The twisted regular
//! representation acts on the basis `e_x, x ∈ G` by `γ(g) e_x = ω(g, x) e_{gx}`.

use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cochain::{is_cocycle, Cochain};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::phase::Phase;
use crate::phases::epsilon;

/// Largest group for the numerical dimension extraction.
pub const MAX_DECOMPOSITION_ORDER: usize = 32;

/// Tolerance for grouping eigenvalues of the commutant element.
pub const EIGEN_TOLERANCE: f64 = 1e-9;

const DECOMPOSITION_ATTEMPTS: u64 = 5;

/// A matrix with exactly one nonzero entry in each row and column.
///
/// Column `j` holds `phases[j]` in row `rows[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMatrix {
    rows: Vec<usize>,
    phases: Vec<Phase>,
}

impl MonomialMatrix {
    pub fn new(rows: Vec<usize>, phases: Vec<Phase>) -> Result<MonomialMatrix> {
        let n = rows.len();
        let mut seen = vec![false; n];
        if phases.len() != n || rows.iter().any(|&r| r >= n || std::mem::replace(&mut seen[r], true)) {
            return Err(Error::Shape("rows must be a permutation with one phase per column".into()));
        }
        Ok(MonomialMatrix { rows, phases })
    }

    pub fn identity(n: usize) -> MonomialMatrix {
        MonomialMatrix { rows: (0..n).collect(), phases: vec![Phase::ONE; n] }
    }

    /// From a dense matrix whose entries are `None` (zero) or a phase.
    pub fn from_dense(entries: &[Vec<Option<Phase>>]) -> Result<MonomialMatrix> {
        let n = entries.len();
        let mut rows = vec![usize::MAX; n];
        let mut phases = vec![Phase::ONE; n];
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape("matrix is not square".into()));
            }
            for (j, e) in row.iter().enumerate() {
                if let Some(p) = e {
                    if rows[j] != usize::MAX {
                        return Err(Error::Shape(format!("column {j} has more than one nonzero entry")));
                    }
                    rows[j] = i;
                    phases[j] = *p;
                }
            }
        }
        if rows.contains(&usize::MAX) {
            return Err(Error::Shape("a column has no nonzero entry".into()));
        }
        MonomialMatrix::new(rows, phases)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn mul(&self, other: &MonomialMatrix) -> MonomialMatrix {
        let rows = other.rows.iter().map(|&r| self.rows[r]).collect();
        let phases = other.phases.iter().zip(&other.rows).map(|(&p, &r)| p + self.phases[r]).collect();
        MonomialMatrix { rows, phases }
    }

    pub fn scale(&self, p: Phase) -> MonomialMatrix {
        MonomialMatrix { rows: self.rows.clone(), phases: self.phases.iter().map(|&x| x + p).collect() }
    }

    /// Trace as a sum of phases on the diagonal.
    pub fn diagonal(&self) -> Vec<Phase> {
        (0..self.dim()).filter(|&j| self.rows[j] == j).map(|j| self.phases[j]).collect()
    }

    /// `(row, col, phase)` for every nonzero entry, by column.
    pub fn triples(&self) -> Vec<(usize, usize, Phase)> {
        self.rows.iter().zip(&self.phases).enumerate().map(|(j, (&r, &p))| (r, j, p)).collect()
    }

    fn to_complex(&self) -> DMatrix<Complex<f64>> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for (r, c, p) in self.triples() {
            let (re, im) = p.to_complex();
            m[(r, c)] = Complex::new(re, im);
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialRep {
    dim: usize,
    matrices: Vec<MonomialMatrix>,
}

impl MonomialRep {
    pub fn new(group: &FiniteGroup, matrices: Vec<MonomialMatrix>) -> Result<MonomialRep> {
        if matrices.len() != group.order() {
            return Err(Error::Shape(format!("{} matrices for a group of order {}", matrices.len(), group.order())));
        }
        let dim = matrices.first().map_or(0, MonomialMatrix::dim);
        if matrices.iter().any(|m| m.dim() != dim) {
            return Err(Error::Shape("matrices have different sizes".into()));
        }
        Ok(MonomialRep { dim, matrices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &MonomialMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[MonomialMatrix] {
        &self.matrices
    }
}

fn check_cocycle(group: &FiniteGroup, omega: &Cochain) -> Result<()> {
    if omega.degree() != 2 || omega.group_order() != group.order() {
        return Err(Error::Shape("expected a 2-cochain on this group".into()));
    }
    if !is_cocycle(group, omega) {
        return Err(Error::NotCocycle("twisting cochain fails the cocycle condition".into()));
    }
    Ok(())
}

/// `γ(g) e_x = ω(g, x) e_{gx}`.
pub fn twisted_regular_rep(group: &FiniteGroup, omega: &Cochain) -> Result<MonomialRep> {
    check_cocycle(group, omega)?;
    let matrices = group
        .elements()
        .map(|g| {
            let rows = group.elements().map(|x| group.mul(g, x)).collect();
            let phases = group.elements().map(|x| omega.phase(&[g, x])).collect();
            MonomialMatrix { rows, phases }
        })
        .collect();
    MonomialRep::new(group, matrices)
}

/// Pairs `(g, h)` with `γ(g) γ(h) ≠ ω(g, h) γ(gh)`.
pub fn verify_projective_relation(group: &FiniteGroup, rep: &MonomialRep, omega: &Cochain) -> Result<Vec<(usize, usize)>> {
    if rep.matrices.len() != group.order() || omega.degree() != 2 || omega.group_order() != group.order() {
        return Err(Error::Shape("representation, cochain and group do not match".into()));
    }
    let mut bad = Vec::new();
    for g in group.elements() {
        for h in group.elements() {
            let lhs = rep.matrices[g].mul(&rep.matrices[h]);
            let rhs = rep.matrices[group.mul(g, h)].scale(omega.phase(&[g, h]));
            if lhs != rhs {
                bad.push((g, h));
            }
        }
    }
    Ok(bad)
}

/// Whether `tr γ(g)` is `|G|` at the identity and `0` elsewhere.
pub fn regular_character_holds(group: &FiniteGroup, rep: &MonomialRep) -> bool {
    group.elements().all(|g| {
        let diag = rep.matrices[g].diagonal();
        if g == group.identity() {
            diag.len() == group.order() && diag.iter().all(Phase::is_one)
        } else {
            crate::cyclotomic::Cyclotomic::from_terms(diag.into_iter().map(|p| (p, num_traits::One::one()))).is_zero()
        }
    })
}

/// Indices (into `conjugacy_classes`) of the classes `[g]` with `ε(g, h) = 1` for every `h ∈ C(g)`.
pub fn omega_regular_classes(group: &FiniteGroup, omega: &Cochain) -> Result<Vec<usize>> {
    check_cocycle(group, omega)?;
    let regular_at = |g: usize| -> Result<bool> {
        for &h in group.centralizer(g) {
            if !epsilon(group, omega, g, h)?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut out = Vec::new();
    for (i, class) in group.conjugacy_classes().iter().enumerate() {
        let regular = regular_at(class[0])?;
        // regularity is a class function; check a second member as well
        if regular_at(class[class.len() - 1])? != regular {
            return Err(Error::Domain(format!("regularity differs within the class of {}", group.label(class[0]))));
        }
        if regular {
            out.push(i);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrrepDimensions {
    /// Sorted ascending.
    pub dimensions: Vec<usize>,
    /// Whether the eigenvalue clusters were consistent with both counting identities.
    pub resolved: bool,
}

/// Dimensions of the irreducible `ω`-representations.
///
/// A random Hermitian element of the commutant of the twisted regular
/// representation has, on each isotypic block of an irreducible of dimension
/// `d`, `d` eigenvalues each of multiplicity `d`. Clustering the spectrum
/// therefore recovers the dimensions; the result is accepted only if the
/// number of irreducibles equals the number of `ω`-regular classes and the
/// squares sum to `|G|`.
pub fn irrep_dimensions(group: &FiniteGroup, omega: &Cochain) -> Result<IrrepDimensions> {
    if group.order() > MAX_DECOMPOSITION_ORDER {
        return Err(Error::TooLarge(format!("|G| = {} exceeds {MAX_DECOMPOSITION_ORDER}", group.order())));
    }
    let regular = omega_regular_classes(group, omega)?.len();
    let mut last = Vec::new();
    for seed in 0..DECOMPOSITION_ATTEMPTS {
        let dims = decompose(group, omega, seed);
        if dims.len() == regular && dims.iter().map(|d| d * d).sum::<usize>() == group.order() {
            return Ok(IrrepDimensions { dimensions: dims, resolved: true });
        }
        last = dims;
    }
    Ok(IrrepDimensions { dimensions: last, resolved: false })
}

// right action ρ(h) e_x = ω(x, h) e_{xh}, which commutes with the left γ(g)
fn right_operator(group: &FiniteGroup, omega: &Cochain, h: usize) -> MonomialMatrix {
    MonomialMatrix {
        rows: group.elements().map(|x| group.mul(x, h)).collect(),
        phases: group.elements().map(|x| omega.phase(&[x, h])).collect(),
    }
}

fn decompose(group: &FiniteGroup, omega: &Cochain, seed: u64) -> Vec<usize> {
    let n = group.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = DMatrix::<Complex<f64>>::zeros(n, n);
    for h in group.elements() {
        let c = Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        a += right_operator(group, omega, h).to_complex() * c;
    }
    let hermitian = &a + a.adjoint();
    let mut eigen: Vec<f64> = hermitian.symmetric_eigenvalues().iter().copied().collect();
    eigen.sort_by(f64::total_cmp);
    let scale = eigen.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let mut clusters = Vec::new();
    let mut size = 0;
    for (i, &x) in eigen.iter().enumerate() {
        if i > 0 && x - eigen[i - 1] > EIGEN_TOLERANCE * scale {
            clusters.push(size);
            size = 0;
        }
        size += 1;
    }
    if size > 0 {
        clusters.push(size);
    }
    // an irreducible of dimension d contributes d clusters of size d
    let mut dims = Vec::new();
    let max = clusters.iter().copied().max().unwrap_or(0);
    for d in 1..=max {
        let count = clusters.iter().filter(|&&c| c == d).count();
        dims.extend(std::iter::repeat_n(d, count / d));
        if count % d != 0 {
            dims.push(0);
        }
    }
    dims
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistedRepReport {
    pub group: String,
    pub class: Vec<u64>,
    pub regular_classes: Vec<String>,
    pub dimensions: Vec<usize>,
    pub resolved: bool,
    pub relation_holds: bool,
    pub character_holds: bool,
    pub sum_of_squares: usize,
}

impl TwistedRepReport {
    pub fn consistent(&self) -> bool {
        self.resolved
            && self.relation_holds
            && self.character_holds
            && self.dimensions.len() == self.regular_classes.len()
            && self.sum_of_squares == self.dimensions.iter().map(|d| d * d).sum::<usize>()
    }
}

/// Builds the twisted regular representation for `omega` and checks every identity.
pub fn twisted_rep_report(group: &FiniteGroup, omega: &Cochain, class: Vec<u64>) -> Result<TwistedRepReport> {
    let rep = twisted_regular_rep(group, omega)?;
    let regular = omega_regular_classes(group, omega)?;
    let dims = irrep_dimensions(group, omega)?;
    Ok(TwistedRepReport {
        group: group.name().to_string(),
        class,
        regular_classes: regular.iter().map(|&i| group.label(group.conjugacy_classes()[i][0]).to_string()).collect(),
        dimensions: dims.dimensions,
        resolved: dims.resolved,
        relation_holds: verify_projective_relation(group, &rep, omega)?.is_empty(),
        character_holds: regular_character_holds(group, &rep),
        sum_of_squares: group.order(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::coboundary;
    use crate::cohomology::{cohomology_u1, enumerate_class_representatives};
    use crate::group::parse_group_spec;

    fn group(spec: &str) -> FiniteGroup {
        parse_group_spec(spec).unwrap()
    }

    fn v4_omega(g: &FiniteGroup) -> Cochain {
        Cochain::from_fn(g, 2, 2, |t| ((t[0] >> 1) * (t[1] & 1)) as i64)
    }

    fn z3z3_omega(g: &FiniteGroup) -> Cochain {
        // ω(a, b) = a0·b1 / 3 with a = 3·a0 + a1
        Cochain::from_fn(g, 2, 3, |t| ((t[0] / 3) * (t[1] % 3)) as i64)
    }

    #[test]
    fn regular_representation_examples() {
        let v4 = group("Z2xZ2");
        let trivial = Cochain::zero(&v4, 2, 2);
        let rep = twisted_regular_rep(&v4, &trivial).unwrap();
        assert!(verify_projective_relation(&v4, &rep, &trivial).unwrap().is_empty());
        let omega = v4_omega(&v4);
        let rep = twisted_regular_rep(&v4, &omega).unwrap();
        assert_eq!(rep.dim(), 4);
        assert_eq!(*rep.matrix(0), MonomialMatrix::identity(4));
        assert!(verify_projective_relation(&v4, &rep, &omega).unwrap().is_empty());
        for a in 1..4 {
            for b in 1..4 {
                if a != b {
                    let ab = rep.matrix(a).mul(rep.matrix(b));
                    let ba = rep.matrix(b).mul(rep.matrix(a));
                    assert_eq!(ab, ba.scale(Phase::minus_one()));
                }
            }
        }
        // the untwisted regular representation fails exactly where ω ≠ 1
        let plain = twisted_regular_rep(&v4, &trivial).unwrap();
        let bad = verify_projective_relation(&v4, &plain, &omega).unwrap();
        let expected: Vec<(usize, usize)> =
            v4.elements().flat_map(|g| v4.elements().map(move |h| (g, h))).filter(|&(g, h)| !omega.phase(&[g, h]).is_one()).collect();
        assert_eq!(bad, expected);
        let not_cocycle = Cochain::from_fn(&v4, 2, 4, |t| (t[0] == 1 && t[1] == 1) as i64);
        assert!(matches!(twisted_regular_rep(&v4, &not_cocycle), Err(Error::NotCocycle(_))));
    }

    #[test]
    fn pauli_representation() {
        let v4 = group("Z2xZ2");
        let omega = v4_omega(&v4);
        let one = Some(Phase::ONE);
        let minus = Some(Phase::minus_one());
        let x = MonomialMatrix::from_dense(&[vec![None, one], vec![one, None]]).unwrap();
        let z = MonomialMatrix::from_dense(&[vec![one, None], vec![None, minus]]).unwrap();
        let rep = MonomialRep::new(&v4, vec![MonomialMatrix::identity(2), x.clone(), z.clone(), x.mul(&z)]).unwrap();
        assert!(verify_projective_relation(&v4, &rep, &omega).unwrap().is_empty());
        let commuting = MonomialRep::new(&v4, vec![MonomialMatrix::identity(2); 4]).unwrap();
        assert_eq!(verify_projective_relation(&v4, &commuting, &omega).unwrap().len(), 4);
        assert!(MonomialMatrix::from_dense(&[vec![one, one], vec![None, None]]).is_err());
    }

    #[test]
    fn exhaustive_relation_and_character() {
        for spec in ["Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2", "D4", "Q8"] {
            let g = group(spec);
            for rep_cocycle in enumerate_class_representatives(&g, 2).unwrap() {
                let rep = twisted_regular_rep(&g, &rep_cocycle).unwrap();
                assert!(verify_projective_relation(&g, &rep, &rep_cocycle).unwrap().is_empty(), "{spec}");
                assert!(regular_character_holds(&g, &rep), "{spec}");
            }
        }
    }

    #[test]
    fn regular_classes_examples() {
        let v4 = group("Z2xZ2");
        assert_eq!(omega_regular_classes(&v4, &Cochain::zero(&v4, 2, 2)).unwrap().len(), 4);
        assert_eq!(omega_regular_classes(&v4, &v4_omega(&v4)).unwrap(), vec![0]);
        let z33 = group("Z3xZ3");
        assert_eq!(omega_regular_classes(&z33, &z3z3_omega(&z33)).unwrap(), vec![0]);
    }

    #[test]
    fn dimension_examples() {
        let z2 = group("Z2");
        let d = irrep_dimensions(&z2, &Cochain::zero(&z2, 2, 2)).unwrap();
        assert_eq!(d, IrrepDimensions { dimensions: vec![1, 1], resolved: true });
        let v4 = group("Z2xZ2");
        assert_eq!(irrep_dimensions(&v4, &v4_omega(&v4)).unwrap().dimensions, vec![2]);
        let z33 = group("Z3xZ3");
        assert_eq!(irrep_dimensions(&z33, &z3z3_omega(&z33)).unwrap().dimensions, vec![3]);
        // untwisted S3: 1, 1, 2
        let s3 = group("S3");
        assert_eq!(irrep_dimensions(&s3, &Cochain::zero(&s3, 2, 6)).unwrap().dimensions, vec![1, 1, 2]);
    }

    #[test]
    fn counting_identities_across_groups() {
        for spec in ["Z2xZ2", "Z2xZ4", "Z2xZ2xZ2", "D4", "Q8", "Z3xZ3", "A4", "D6", "Z2xZ2xZ4", "Z4xZ4"] {
            let g = group(spec);
            for omega in enumerate_class_representatives(&g, 2).unwrap() {
                let report = twisted_rep_report(&g, &omega, vec![]).unwrap();
                assert!(report.consistent(), "{spec}: {report:?}");
            }
        }
    }

    #[test]
    fn cohomologous_cocycles_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for spec in ["Z2xZ2", "D4", "Z3xZ3", "Z2xZ4"] {
            let g = group(spec);
            let h2 = cohomology_u1(&g, 2).unwrap();
            for omega in h2.representatives() {
                let base_classes = omega_regular_classes(&g, omega).unwrap();
                let base_dims = irrep_dimensions(&g, omega).unwrap();
                let m = omega.modulus();
                let f = Cochain::from_fn(&g, 1, m, |_| rng.gen_range(0..m as i64));
                let shifted = omega.add(&coboundary(&g, &f).unwrap());
                assert_eq!(omega_regular_classes(&g, &shifted).unwrap(), base_classes);
                assert_eq!(irrep_dimensions(&g, &shifted).unwrap(), base_dims);
            }
        }
    }

    #[test]
    fn ceiling() {
        let g = group("Z2xZ2xZ2xZ2xZ2xZ2");
        assert!(matches!(irrep_dimensions(&g, &Cochain::zero(&g, 2, 2)), Err(Error::TooLarge(_))));
    }
}
