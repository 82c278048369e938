use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::group::cyclic;
use crate::group::FiniteGroup;

use super::{product_complex, Cell, GComplex};

fn cell(id: String, dim: usize, boundary: Vec<usize>) -> Cell {
    Cell { id, dim, boundary }
}

// two vertices joined by two edges
fn circle_cells() -> Vec<Cell> {
    vec![
        cell("v0".into(), 0, vec![]),
        cell("v1".into(), 0, vec![]),
        cell("e0".into(), 1, vec![0, 1]),
        cell("e1".into(), 1, vec![0, 1]),
    ]
}

fn z2_complex(cells: Vec<Cell>, generator: Vec<usize>) -> GComplex {
    let z2 = cyclic(2).expect("Z2");
    GComplex::from_images(&z2, cells, BTreeMap::from([(1, generator)])).expect("builder complexes are admissible")
}

/// Circle with a reflection: both vertices fixed, the two edges swapped.
pub fn circle_with_involution() -> GComplex {
    z2_complex(circle_cells(), vec![0, 1, 3, 2])
}

/// Circle with the half-turn rotation, a free `Z2` action.
pub fn circle_with_rotation() -> GComplex {
    z2_complex(circle_cells(), vec![1, 0, 3, 2])
}

/// An `n`-gon with `Z_n` rotating it freely.
pub fn circle_rotation(n: usize) -> crate::error::Result<GComplex> {
    let g = cyclic(n)?;
    let mut cells: Vec<Cell> = (0..n).map(|i| cell(format!("v{i}"), 0, vec![])).collect();
    cells.extend((0..n).map(|i| cell(format!("e{i}"), 1, vec![i, (i + 1) % n])));
    let shift: Vec<usize> = (0..n).map(|i| (i + 1) % n).chain((0..n).map(|i| n + (i + 1) % n)).collect();
    let given = if n > 1 { BTreeMap::from([(1, shift)]) } else { BTreeMap::new() };
    GComplex::from_images(&g, cells, given)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OctahedralSymmetry {
    /// `x ↦ −x`, free.
    Antipodal,
    /// `z ↦ −z`, fixing the equator.
    Reflection,
}

/// The boundary of the octahedron (6 vertices, 12 edges, 8 faces) with a `Z2` symmetry.
pub fn sphere_octahedral(symmetry: OctahedralSymmetry) -> GComplex {
    // vertex 2a + s is the point with coordinate a equal to (-1)^s
    let mut cells: Vec<Cell> = (0..6).map(|v| cell(format!("v{v}"), 0, vec![])).collect();
    let mut edges = BTreeMap::new();
    for u in 0..6 {
        for v in u + 1..6 {
            if u / 2 != v / 2 {
                edges.insert((u, v), cells.len());
                cells.push(cell(format!("e{}", edges.len() - 1), 1, vec![u, v]));
            }
        }
    }
    let mut faces = BTreeMap::new();
    for s in 0..8usize {
        let vs = [s & 1, 2 + ((s >> 1) & 1), 4 + ((s >> 2) & 1)];
        let boundary = vec![edges[&(vs[0], vs[1])], edges[&(vs[0], vs[2])], edges[&(vs[1], vs[2])]];
        faces.insert(vs, cells.len());
        cells.push(cell(format!("f{s}"), 2, boundary));
    }
    let vmap = |v: usize| match symmetry {
        OctahedralSymmetry::Antipodal => v ^ 1,
        OctahedralSymmetry::Reflection if v >= 4 => v ^ 1,
        OctahedralSymmetry::Reflection => v,
    };
    let mut image = vec![0; cells.len()];
    for v in 0..6 {
        image[v] = vmap(v);
    }
    for (&(u, v), &e) in &edges {
        let (a, b) = (vmap(u), vmap(v));
        image[e] = edges[&(a.min(b), a.max(b))];
    }
    for (vs, &f) in &faces {
        let mut m = vs.map(vmap);
        m.sort_unstable();
        image[f] = faces[&m];
    }
    z2_complex(cells, image)
}

/// The `k`-fold product of [`circle_with_involution`] with the diagonal action;
/// a model of `T^k` with `x ↦ −x`.
pub fn torus_power(k: usize) -> GComplex {
    let mut x = z2_complex(vec![cell("p".into(), 0, vec![])], vec![0]);
    for _ in 0..k {
        x = product_complex(&x, &circle_with_involution()).expect("same group");
    }
    x
}

/// A random admissible complex assembled from orbits of cells `G/H`.
///
/// A cell with stabilizer `H` only takes boundary cells fixed by `H`, so its
/// translates are well defined and the action is admissible by construction.
pub fn random_admissible_complex<R: Rng>(group: &FiniteGroup, rng: &mut R, orbits: usize, max_dim: usize) -> GComplex {
    let subgroups = group.small_subgroups();
    let n = group.order();
    let mut cells: Vec<Cell> = Vec::new();
    // per cell: (orbit, coset representative); per orbit: coset of each element
    let mut orbit_of: Vec<(usize, usize)> = Vec::new();
    let mut orbit_cells: Vec<BTreeMap<usize, usize>> = Vec::new();
    let mut orbit_coset: Vec<Vec<usize>> = Vec::new();
    for o in 0..orbits {
        let top = cells.iter().map(|c| c.dim + 1).max().unwrap_or(0).min(max_dim);
        let dim = rng.gen_range(0..=top);
        let h = subgroups.choose(rng).expect("the trivial subgroup exists");
        let candidates: Vec<usize> =
            (0..cells.len()).filter(|&c| cells[c].dim < dim && h.iter().all(|&g| act_on(&orbit_of, &orbit_cells, &orbit_coset, group, g, c) == c)).collect();
        let take = rng.gen_range(0..=candidates.len().min(4));
        let boundary: Vec<usize> = candidates.choose_multiple(rng, take).copied().collect();
        // coset label of every element: smallest member of gH
        let coset: Vec<usize> = (0..n).map(|g| h.iter().map(|&x| group.mul(g, x)).min().expect("nonempty")).collect();
        let mut reps: Vec<usize> = coset.clone();
        reps.sort_unstable();
        reps.dedup();
        let mut map = BTreeMap::new();
        orbit_cells.push(BTreeMap::new());
        orbit_coset.push(coset);
        for &k in &reps {
            let idx = cells.len();
            let b = boundary.iter().map(|&c| act_on(&orbit_of, &orbit_cells, &orbit_coset, group, k, c)).collect();
            cells.push(cell(format!("c{idx}"), dim, b));
            orbit_of.push((o, k));
            map.insert(k, idx);
        }
        orbit_cells[o] = map;
    }
    let action = group
        .elements()
        .map(|g| (0..cells.len()).map(|c| act_on(&orbit_of, &orbit_cells, &orbit_coset, group, g, c)).collect())
        .collect();
    GComplex::new(group, cells, action).expect("orbit-cell complexes are admissible")
}

fn act_on(
    orbit_of: &[(usize, usize)],
    orbit_cells: &[BTreeMap<usize, usize>],
    orbit_coset: &[Vec<usize>],
    group: &FiniteGroup,
    g: usize,
    c: usize,
) -> usize {
    let (o, k) = orbit_of[c];
    orbit_cells[o][&orbit_coset[o][group.mul(g, k)]]
}
