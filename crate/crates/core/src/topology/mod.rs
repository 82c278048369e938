//! Finite equivariant cell complexes and orbifold Euler characteristics.
//!
//! A complex is purely combinatorial: cells with a dimension and a boundary
//! list, and a group permuting the cells. Actions must be admissible (a cell
//! fixed by `g` has its whole boundary fixed by `g`), which makes orbit
//! counting a valid way to take Euler characteristics of quotients.

mod builders;
mod parse;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::action::{check_action, complete_action, fill_trivial_generators, Action};
use crate::group::FiniteGroup;

pub use builders::{
    circle_rotation, circle_with_involution, circle_with_rotation, random_admissible_complex, sphere_octahedral,
    torus_power, OctahedralSymmetry,
};
pub use parse::parse_complex;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub id: String,
    pub dim: usize,
    pub boundary: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GComplex {
    group: FiniteGroup,
    cells: Vec<Cell>,
    action: Action,
}

impl GComplex {
    /// Validates boundaries, the action, and admissibility.
    pub fn new(group: &FiniteGroup, cells: Vec<Cell>, action: Action) -> Result<GComplex> {
        let n = cells.len();
        for c in &cells {
            for &b in &c.boundary {
                if b >= n {
                    return Err(Error::InvalidComplex(format!("cell {} has unknown boundary cell {b}", c.id)));
                }
                if cells[b].dim >= c.dim {
                    return Err(Error::InvalidComplex(format!(
                        "boundary cell {} of {} does not have smaller dimension",
                        cells[b].id, c.id
                    )));
                }
            }
        }
        if n == 0 {
            return Ok(GComplex { group: group.clone(), cells, action: vec![Vec::new(); group.order()] });
        }
        check_action(group, &action).map_err(|e| Error::InvalidComplex(e.to_string()))?;
        for g in group.elements() {
            for (i, c) in cells.iter().enumerate() {
                let image = &cells[action[g][i]];
                if image.dim != c.dim {
                    return Err(Error::InvalidComplex(format!("{} moves cell {} to a different dimension", group.label(g), c.id)));
                }
                let moved: BTreeSet<usize> = c.boundary.iter().map(|&b| action[g][b]).collect();
                let target: BTreeSet<usize> = image.boundary.iter().copied().collect();
                if moved != target {
                    return Err(Error::InvalidComplex(format!(
                        "{} does not carry the boundary of {} to the boundary of {}",
                        group.label(g),
                        c.id,
                        image.id
                    )));
                }
                if action[g][i] == i {
                    if let Some(&b) = c.boundary.iter().find(|&&b| action[g][b] != b) {
                        return Err(Error::InvalidComplex(format!(
                            "inadmissible action: {} fixes cell {} but moves its boundary cell {}",
                            group.label(g),
                            c.id,
                            cells[b].id
                        )));
                    }
                }
            }
        }
        Ok(GComplex { group: group.clone(), cells, action })
    }

    /// Builds the action from the images of some elements; generators outside
    /// their span act trivially.
    pub fn from_images(group: &FiniteGroup, cells: Vec<Cell>, mut given: BTreeMap<usize, Vec<usize>>) -> Result<GComplex> {
        fill_trivial_generators(group, cells.len(), &mut given);
        let action = complete_action(group, cells.len(), &given).map_err(|e| Error::InvalidComplex(e.to_string()))?;
        GComplex::new(group, cells, action)
    }

    /// The complex with every element acting as the identity.
    pub fn with_trivial_action(group: &FiniteGroup, cells: Vec<Cell>) -> Result<GComplex> {
        let action = vec![(0..cells.len()).collect(); group.order()];
        GComplex::new(group, cells, action)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn act(&self, g: usize, cell: usize) -> usize {
        self.action[g][cell]
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn euler_char(&self) -> i64 {
        signed_count(self.cells.iter().map(|c| c.dim))
    }

    /// Number of cells in each dimension.
    pub fn cell_counts(&self) -> Vec<usize> {
        counts(self.cells.iter().map(|c| c.dim))
    }

    pub fn is_fixed(&self, g: usize, cell: usize) -> bool {
        self.action[g][cell] == cell
    }

    /// Text form readable by [`parse_complex`], with one `act` line per generator.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cells {
            out.push_str(&format!("cell {} {}\n", c.id, c.dim));
        }
        for c in self.cells.iter().filter(|c| !c.boundary.is_empty()) {
            let ids: Vec<&str> = c.boundary.iter().map(|&b| self.cells[b].id.as_str()).collect();
            out.push_str(&format!("bnd {} {}\n", c.id, ids.join(" ")));
        }
        if !self.cells.is_empty() {
            for g in self.group.generators() {
                let ids: Vec<&str> = self.action[g].iter().map(|&x| self.cells[x].id.as_str()).collect();
                out.push_str(&format!("act {g} {}\n", ids.join(" ")));
            }
        }
        out
    }
}

fn signed_count(dims: impl Iterator<Item = usize>) -> i64 {
    dims.map(|d| if d % 2 == 0 { 1 } else { -1 }).sum()
}

fn counts(dims: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = Vec::new();
    for d in dims {
        if out.len() <= d {
            out.resize(d + 1, 0);
        }
        out[d] += 1;
    }
    out
}

pub fn euler_char(x: &GComplex) -> i64 {
    x.euler_char()
}

/// Indices of the cells fixed by every element of `s`.
pub fn fixed_cells(x: &GComplex, s: &[usize]) -> Vec<usize> {
    (0..x.len()).filter(|&c| s.iter().all(|&g| x.is_fixed(g, c))).collect()
}

/// The cells fixed by all of `s`, acted on by the centralizer of `s`.
pub fn fixed_subcomplex(x: &GComplex, s: &[usize]) -> Result<GComplex> {
    let group = x.group();
    if let Some(&g) = s.iter().find(|&&g| g >= group.order()) {
        return Err(Error::Domain(format!("element {g} out of range")));
    }
    let keep = fixed_cells(x, s);
    let mut index = vec![usize::MAX; x.len()];
    for (i, &c) in keep.iter().enumerate() {
        index[c] = i;
    }
    let cells = keep
        .iter()
        .map(|&c| {
            let cell = &x.cells[c];
            Cell { id: cell.id.clone(), dim: cell.dim, boundary: cell.boundary.iter().map(|&b| index[b]).collect() }
        })
        .collect();
    let (centralizer, embed) = group.subgroup(&group.centralizer_of_set(s))?;
    let action = embed.iter().map(|&g| keep.iter().map(|&c| index[x.act(g, c)]).collect()).collect();
    GComplex::new(&centralizer, cells, action)
}

fn check_subgroup(group: &FiniteGroup, h: &[usize]) -> Result<()> {
    let set: BTreeSet<usize> = h.iter().copied().collect();
    if set.iter().any(|&g| g >= group.order()) || !set.contains(&group.identity()) {
        return Err(Error::Domain("not a subgroup".into()));
    }
    for &a in &set {
        for &b in &set {
            if !set.contains(&group.mul(a, b)) {
                return Err(Error::Domain("not a subgroup: not closed under multiplication".into()));
            }
        }
    }
    Ok(())
}

// signed count of orbits of `h` on the given cells, which must form an h-invariant set
fn orbit_euler(x: &GComplex, cells: &[usize], h: &[usize]) -> i64 {
    let mut seen = BTreeSet::new();
    let mut total = 0;
    for &c in cells {
        if seen.contains(&c) {
            continue;
        }
        for &g in h {
            seen.insert(x.act(g, c));
        }
        total += if x.cells[c].dim % 2 == 0 { 1 } else { -1 };
    }
    total
}

/// Euler characteristic of `X/H`, counting `H`-orbits of cells with sign.
pub fn quotient_orbit_euler(x: &GComplex, h: &[usize]) -> Result<i64> {
    check_subgroup(x.group(), h)?;
    let all: Vec<usize> = (0..x.len()).collect();
    Ok(orbit_euler(x, &all, h))
}

/// `(1/|G|) Σ_{gh=hg} e(X^{g,h})`, checked to be an integer.
pub fn orbifold_euler_sum(x: &GComplex) -> Result<i64> {
    let group = x.group();
    let total: i64 = group
        .commuting_pairs()
        .into_iter()
        .map(|(g, h)| signed_count(fixed_cells(x, &[g, h]).into_iter().map(|c| x.cells[c].dim)))
        .sum();
    let n = group.order() as i64;
    if total % n != 0 {
        return Err(Error::Domain(format!("orbifold Euler sum {total}/{n} is not an integer")));
    }
    Ok(total / n)
}

/// `Σ_{[g]} e(X^g / C(g))`.
pub fn orbifold_euler_conjugacy(x: &GComplex) -> Result<i64> {
    Ok(inertia_components(x)?.total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InertiaComponent {
    pub representative: usize,
    pub label: String,
    pub class_size: usize,
    pub centralizer_order: usize,
    /// Cells of `X^g` per dimension.
    pub cell_counts: Vec<usize>,
    pub euler_fixed: i64,
    pub euler_quotient: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InertiaReport {
    pub components: Vec<InertiaComponent>,
    /// `Σ_{[g]} e(X^g / C(g))`.
    pub total: i64,
    /// `(1/|G|) Σ_{gh=hg} e(X^{g,h})`.
    pub sum_formula: i64,
}

impl InertiaReport {
    pub fn formulas_agree(&self) -> bool {
        self.total == self.sum_formula
    }
}

/// One component `X^g / C(g)` per conjugacy class.
pub fn inertia_components(x: &GComplex) -> Result<InertiaReport> {
    let group = x.group();
    let components: Vec<InertiaComponent> = group
        .conjugacy_classes()
        .iter()
        .map(|class| {
            let g = class[0];
            let fixed = fixed_cells(x, &[g]);
            let centralizer = group.centralizer(g);
            InertiaComponent {
                representative: g,
                label: group.label(g).to_string(),
                class_size: class.len(),
                centralizer_order: centralizer.len(),
                cell_counts: counts(fixed.iter().map(|&c| x.cells[c].dim)),
                euler_fixed: signed_count(fixed.iter().map(|&c| x.cells[c].dim)),
                euler_quotient: orbit_euler(x, &fixed, centralizer),
            }
        })
        .collect();
    let total = components.iter().map(|c| c.euler_quotient).sum();
    let sum_formula = orbifold_euler_sum(x)?;
    Ok(InertiaReport { components, total, sum_formula })
}

/// Cells are pairs, dimensions add, and the group acts diagonally.
pub fn product_complex(x: &GComplex, y: &GComplex) -> Result<GComplex> {
    if x.group() != y.group() {
        return Err(Error::Domain("factors carry actions of different groups".into()));
    }
    let m = y.len();
    let mut cells = Vec::with_capacity(x.len() * m);
    for (i, a) in x.cells.iter().enumerate() {
        for (j, b) in y.cells.iter().enumerate() {
            let mut boundary: Vec<usize> = a.boundary.iter().map(|&p| p * m + j).collect();
            boundary.extend(b.boundary.iter().map(|&q| i * m + q));
            cells.push(Cell { id: format!("{}*{}", a.id, b.id), dim: a.dim + b.dim, boundary });
        }
    }
    let action = x
        .group()
        .elements()
        .map(|g| (0..x.len()).flat_map(|a| (0..m).map(move |b| (a, b))).map(|(a, b)| x.act(g, a) * m + y.act(g, b)).collect())
        .collect();
    GComplex::new(x.group(), cells, action)
}
