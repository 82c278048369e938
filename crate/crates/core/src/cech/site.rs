use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::action::{complete_action, fill_trivial_generators};
use crate::group::FiniteGroup;
use crate::phase::Phase;

/// Components of one overlap `U_{p0} ∩ ... ∩ U_{pk}` and their restrictions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapData {
    pub components: usize,
    /// `faces[c][j]`: component of the `j`-th face (lexicographic order of the
    /// sub-tuples) containing component `c`.
    pub faces: Vec<Vec<usize>>,
}

/// Overlap keys in lexicographic order: `[a, b, c]` has faces `[a, b]`, `[a, c]`, `[b, c]`.
pub fn faces_of(key: &[usize]) -> Vec<Vec<usize>> {
    (0..key.len())
        .rev()
        .map(|skip| key.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &p)| p).collect())
        .collect()
}

/// A finite combinatorial cover: patches, their overlaps up to fourfold, and a
/// `G`-action permuting the components of every overlap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteSite {
    group: FiniteGroup,
    overlaps: BTreeMap<Vec<usize>, OverlapData>,
    action: Vec<BTreeMap<Vec<usize>, Vec<usize>>>,
    connected: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct SiteBuilder {
    group: FiniteGroup,
    overlaps: BTreeMap<Vec<usize>, OverlapData>,
    actions: BTreeMap<usize, BTreeMap<Vec<usize>, Vec<usize>>>,
}

impl SiteBuilder {
    pub fn new(group: &FiniteGroup) -> SiteBuilder {
        SiteBuilder { group: group.clone(), overlaps: BTreeMap::new(), actions: BTreeMap::new() }
    }

    pub fn patch(mut self, id: usize, components: usize) -> SiteBuilder {
        self.overlaps.insert(vec![id], OverlapData { components, faces: vec![vec![]; components] });
        self
    }

    /// `faces[c]` lists, for component `c`, its components in the lexicographic faces.
    pub fn overlap(mut self, patches: &[usize], faces: Vec<Vec<usize>>) -> SiteBuilder {
        self.overlaps.insert(patches.to_vec(), OverlapData { components: faces.len(), faces });
        self
    }

    /// Permutation of the components of `overlap` under `g`; unspecified overlaps stay fixed.
    pub fn act(mut self, g: usize, overlap: &[usize], perm: Vec<usize>) -> SiteBuilder {
        self.actions.entry(g).or_default().insert(overlap.to_vec(), perm);
        self
    }

    pub fn build(self) -> Result<DiscreteSite> {
        let SiteBuilder { group, overlaps, actions } = self;
        for (key, data) in &overlaps {
            if key.is_empty() || key.len() > 4 || key.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidSite(format!("overlap {key:?} must list 1 to 4 increasing patches")));
            }
            if data.faces.len() != data.components {
                return Err(Error::InvalidSite(format!("overlap {key:?}: restriction count mismatch")));
            }
            if key.len() == 1 {
                continue;
            }
            let faces = faces_of(key);
            for f in &faces {
                if !overlaps.contains_key(f) {
                    return Err(Error::InvalidSite(format!("overlap {key:?} needs its face {f:?}")));
                }
            }
            for (c, r) in data.faces.iter().enumerate() {
                if r.len() != faces.len() {
                    return Err(Error::InvalidSite(format!("overlap {key:?} component {c}: expected {} faces", faces.len())));
                }
                for (f, &x) in faces.iter().zip(r) {
                    if x >= overlaps[f].components {
                        return Err(Error::InvalidSite(format!("overlap {key:?} component {c}: face {f:?} has no component {x}")));
                    }
                }
            }
        }
        // restrictions through different faces must agree
        for (key, data) in overlaps.iter().filter(|(k, _)| k.len() >= 3) {
            let faces = faces_of(key);
            for (c, r) in data.faces.iter().enumerate() {
                for i in 0..faces.len() {
                    for j in i + 1..faces.len() {
                        let common: Vec<usize> = faces[i].iter().copied().filter(|p| faces[j].contains(p)).collect();
                        let via = |fi: usize| {
                            let sub = faces_of(&faces[fi]);
                            let pos = sub.iter().position(|s| *s == common).expect("common face");
                            overlaps[&faces[fi]].faces[r[fi]][pos]
                        };
                        if via(i) != via(j) {
                            return Err(Error::InvalidSite(format!(
                                "overlap {key:?} component {c} restricts inconsistently to {common:?}"
                            )));
                        }
                    }
                }
            }
        }
        let mut offsets = BTreeMap::new();
        let mut points = 0;
        for (key, data) in &overlaps {
            offsets.insert(key.clone(), points);
            points += data.components;
        }
        let mut given = BTreeMap::new();
        for (&g, per) in &actions {
            let mut flat: Vec<usize> = (0..points).collect();
            for (key, perm) in per {
                let off = *offsets
                    .get(key)
                    .ok_or_else(|| Error::InvalidSite(format!("action on unknown overlap {key:?}")))?;
                let n = overlaps[key].components;
                if perm.len() != n || perm.iter().any(|&x| x >= n) {
                    return Err(Error::InvalidSite(format!("action of {g} on {key:?} is not a permutation of {n}")));
                }
                for (c, &x) in perm.iter().enumerate() {
                    flat[off + c] = off + x;
                }
            }
            given.insert(g, flat);
        }
        fill_trivial_generators(&group, points, &mut given);
        let flat = complete_action(&group, points, &given).map_err(|e| Error::InvalidSite(e.to_string()))?;
        let action: Vec<BTreeMap<Vec<usize>, Vec<usize>>> = flat
            .iter()
            .map(|perm| {
                overlaps
                    .iter()
                    .map(|(key, data)| {
                        let off = offsets[key];
                        (key.clone(), (0..data.components).map(|c| perm[off + c] - off).collect())
                    })
                    .collect()
            })
            .collect();
        for g in group.elements() {
            for (key, data) in overlaps.iter().filter(|(k, _)| k.len() >= 2) {
                for (c, r) in data.faces.iter().enumerate() {
                    let moved = &data.faces[action[g][key][c]];
                    for (j, f) in faces_of(key).iter().enumerate() {
                        if moved[j] != action[g][f][r[j]] {
                            return Err(Error::InvalidSite(format!(
                                "action of {} does not commute with restriction from {key:?} to {f:?}",
                                group.label(g)
                            )));
                        }
                    }
                }
            }
        }
        let connected = components(&overlaps);
        Ok(DiscreteSite { group, overlaps, action, connected })
    }
}

// connected-component label of every patch component, in patch-key order
fn components(overlaps: &BTreeMap<Vec<usize>, OverlapData>) -> Vec<usize> {
    let mut index = BTreeMap::new();
    for (key, data) in overlaps.iter().filter(|(k, _)| k.len() == 1) {
        for c in 0..data.components {
            let n = index.len();
            index.insert((key[0], c), n);
        }
    }
    let mut parent: Vec<usize> = (0..index.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for (key, data) in overlaps.iter().filter(|(k, _)| k.len() == 2) {
        for r in &data.faces {
            let a = find(&mut parent, index[&(key[0], r[0])]);
            let b = find(&mut parent, index[&(key[1], r[1])]);
            parent[a.max(b)] = a.min(b);
        }
    }
    let roots: Vec<usize> = (0..parent.len()).map(|x| find(&mut parent, x)).collect();
    let mut labels = BTreeMap::new();
    roots
        .into_iter()
        .map(|r| {
            let n = labels.len();
            *labels.entry(r).or_insert(n)
        })
        .collect()
}

impl DiscreteSite {
    /// One patch with one component, trivial action.
    pub fn point(group: &FiniteGroup) -> DiscreteSite {
        SiteBuilder::new(group).patch(0, 1).build().expect("a point is a valid site")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn overlaps(&self) -> impl Iterator<Item = (&Vec<usize>, &OverlapData)> {
        self.overlaps.iter()
    }

    /// Overlaps of `layer` patches.
    pub fn layer(&self, layer: usize) -> impl Iterator<Item = (&Vec<usize>, &OverlapData)> {
        self.overlaps.iter().filter(move |(k, _)| k.len() == layer)
    }

    pub fn overlap(&self, key: &[usize]) -> Option<&OverlapData> {
        self.overlaps.get(key)
    }

    /// Image of component `c` of `key` under `g`.
    pub fn act(&self, g: usize, key: &[usize], c: usize) -> usize {
        self.action[g][key][c]
    }

    /// Connected-component label of every patch component, keyed by `(patch, component)`.
    pub fn patch_components(&self) -> Vec<((usize, usize), usize)> {
        let mut out = Vec::new();
        let mut i = 0;
        for (key, data) in self.layer(1) {
            for c in 0..data.components {
                out.push(((key[0], c), self.connected[i]));
                i += 1;
            }
        }
        out
    }

    pub fn connected_components(&self) -> usize {
        self.connected.iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components() <= 1
    }

    /// The zero function on overlaps of `layer` patches.
    pub fn zero_function(&self, layer: usize) -> SiteFunction {
        SiteFunction {
            layer,
            values: self.layer(layer).map(|(k, d)| (k.clone(), vec![Phase::ONE; d.components])).collect(),
        }
    }

    pub fn constant_function(&self, layer: usize, value: Phase) -> SiteFunction {
        SiteFunction {
            layer,
            values: self.layer(layer).map(|(k, d)| (k.clone(), vec![value; d.components])).collect(),
        }
    }

    pub(crate) fn check_function(&self, f: &SiteFunction, layer: usize, what: &str) -> Result<()> {
        let ok = f.layer == layer
            && f.values.len() == self.layer(layer).count()
            && self.layer(layer).all(|(k, d)| f.values.get(k).is_some_and(|v| v.len() == d.components));
        if ok {
            Ok(())
        } else {
            Err(Error::Shape(format!("{what} does not match the {layer}-fold overlaps of the site")))
        }
    }
}

/// A `U(1)`-valued locally constant function on the `layer`-fold overlaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiteFunction {
    layer: usize,
    values: BTreeMap<Vec<usize>, Vec<Phase>>,
}

impl SiteFunction {
    pub fn layer(&self) -> usize {
        self.layer
    }

    pub fn get(&self, key: &[usize], c: usize) -> Phase {
        self.values[key][c]
    }

    pub fn set(&mut self, key: &[usize], c: usize, value: Phase) -> Result<()> {
        let slot = self
            .values
            .get_mut(key)
            .and_then(|v| v.get_mut(c))
            .ok_or_else(|| Error::Shape(format!("no component {c} on overlap {key:?}")))?;
        *slot = value;
        Ok(())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vec<Phase>)> {
        self.values.iter()
    }

    pub fn is_trivial(&self) -> bool {
        self.values.values().flatten().all(Phase::is_one)
    }

    /// `(g^* f)(c) = f(g·c)`.
    pub fn pullback(&self, site: &DiscreteSite, g: usize) -> SiteFunction {
        let values = self
            .values
            .iter()
            .map(|(k, v)| (k.clone(), (0..v.len()).map(|c| v[site.act(g, k, c)]).collect()))
            .collect();
        SiteFunction { layer: self.layer, values }
    }

    fn zip(&self, other: &SiteFunction, f: impl Fn(Phase, Phase) -> Phase) -> SiteFunction {
        assert_eq!(self.layer, other.layer, "layer mismatch");
        let values = self
            .values
            .iter()
            .map(|(k, v)| (k.clone(), v.iter().zip(&other.values[k]).map(|(&a, &b)| f(a, b)).collect()))
            .collect();
        SiteFunction { layer: self.layer, values }
    }

    pub fn add(&self, other: &SiteFunction) -> SiteFunction {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SiteFunction) -> SiteFunction {
        self.zip(other, |a, b| a - b)
    }

    /// The common value when the function is constant.
    pub fn constant_value(&self) -> Option<Phase> {
        let mut it = self.values.values().flatten();
        let first = *it.next()?;
        it.all(|&v| v == first).then_some(first)
    }

    /// Least common multiple of the orders of all values.
    pub fn conductor(&self) -> u64 {
        use num_integer::Integer;
        self.values.values().flatten().fold(1, |acc, p| acc.lcm(&p.order()))
    }
}
