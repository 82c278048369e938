//! Permutation actions of a finite group on a finite set.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::FiniteGroup;

/// `act[g][x]` is the image of point `x` under `g`, with `act[gh] = act[g] ∘ act[h]`.
pub type Action = Vec<Vec<usize>>;

fn check_perm(p: &[usize], points: usize) -> Result<()> {
    if p.len() != points {
        return Err(Error::Shape(format!("permutation has {} entries, expected {points}", p.len())));
    }
    let mut seen = vec![false; points];
    for &x in p {
        if x >= points || std::mem::replace(&mut seen[x], true) {
            return Err(Error::Shape(format!("{p:?} is not a permutation of 0..{points}")));
        }
    }
    Ok(())
}

/// Extends the images of some elements to a full action and checks the homomorphism law.
///
/// With no images given the action is trivial. Otherwise every element must
/// be a product of the given ones.
pub fn complete_action(group: &FiniteGroup, points: usize, given: &BTreeMap<usize, Vec<usize>>) -> Result<Action> {
    let identity: Vec<usize> = (0..points).collect();
    if given.is_empty() {
        return Ok(vec![identity; group.order()]);
    }
    for (&g, p) in given {
        if g >= group.order() {
            return Err(Error::Domain(format!("element {g} out of range")));
        }
        check_perm(p, points)?;
    }
    let mut act: Vec<Option<Vec<usize>>> = vec![None; group.order()];
    act[group.identity()] = Some(identity);
    let mut queue = vec![group.identity()];
    while let Some(a) = queue.pop() {
        for (&s, ps) in given {
            let pa = act[a].as_ref().expect("queued elements are known");
            let composed: Vec<usize> = ps.iter().map(|&x| pa[x]).collect();
            let b = group.mul(a, s);
            match &act[b] {
                Some(existing) if *existing != composed => {
                    return Err(Error::Domain(format!(
                        "the given permutations do not define an action (conflict at {})",
                        group.label(b)
                    )));
                }
                Some(_) => {}
                None => {
                    act[b] = Some(composed);
                    queue.push(b);
                }
            }
        }
    }
    let act: Action = act
        .into_iter()
        .enumerate()
        .map(|(g, p)| {
            p.ok_or_else(|| Error::Domain(format!("action of {} is not determined by the given elements", group.label(g))))
        })
        .collect::<Result<_>>()?;
    for (&g, p) in given {
        if act[g] != *p {
            return Err(Error::Domain(format!("permutation for {} is inconsistent", group.label(g))));
        }
    }
    check_action(group, &act)?;
    Ok(act)
}

/// Adds identity images for generators outside the span of the given
/// elements, so that unlisted generators act trivially.
pub fn fill_trivial_generators(group: &FiniteGroup, points: usize, given: &mut BTreeMap<usize, Vec<usize>>) {
    if given.is_empty() {
        return;
    }
    let mut span = group.subgroup_generated(&given.keys().copied().collect::<Vec<_>>());
    for s in group.generators() {
        if span.binary_search(&s).is_err() {
            given.insert(s, (0..points).collect());
            span = group.subgroup_generated(&given.keys().copied().collect::<Vec<_>>());
        }
    }
}

/// Verifies `act[gh] = act[g] ∘ act[h]` for all pairs.
pub fn check_action(group: &FiniteGroup, act: &Action) -> Result<()> {
    if act.len() != group.order() {
        return Err(Error::Shape(format!("{} permutations for a group of order {}", act.len(), group.order())));
    }
    let points = act.first().map_or(0, Vec::len);
    for p in act {
        check_perm(p, points)?;
    }
    for g in group.elements() {
        for h in group.elements() {
            let gh = &act[group.mul(g, h)];
            if (0..points).any(|x| gh[x] != act[g][act[h][x]]) {
                return Err(Error::Domain(format!(
                    "permutations violate the group law at ({}, {})",
                    group.label(g),
                    group.label(h)
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group_spec;

    #[test]
    fn closure_from_generators() {
        let s3 = parse_group_spec("S3").unwrap();
        let mut given = BTreeMap::new();
        for g in s3.generators() {
            given.insert(g, vec![0, 1, 2]);
        }
        // trivial images on generators give the trivial action
        let act = complete_action(&s3, 3, &given).unwrap();
        assert!(act.iter().all(|p| *p == vec![0, 1, 2]));
        let z4 = parse_group_spec("Z4").unwrap();
        let mut given = BTreeMap::new();
        given.insert(1, vec![1, 2, 3, 0]);
        let act = complete_action(&z4, 4, &given).unwrap();
        assert_eq!(act[2], vec![2, 3, 0, 1]);
        given.insert(1, vec![1, 0, 2, 3]);
        given.insert(2, vec![0, 1, 3, 2]);
        assert!(complete_action(&z4, 4, &given).is_err());
        let v4 = parse_group_spec("Z2xZ2").unwrap();
        let mut given = BTreeMap::new();
        given.insert(1, vec![1, 0]);
        assert!(complete_action(&v4, 2, &given).is_err());
        let mut filled = given.clone();
        fill_trivial_generators(&v4, 2, &mut filled);
        assert_eq!(complete_action(&v4, 2, &filled).unwrap()[3], vec![1, 0]);
        given.insert(2, vec![0, 1]);
        assert!(complete_action(&v4, 2, &given).is_ok());
        assert!(complete_action(&v4, 2, &BTreeMap::new()).unwrap().iter().all(|p| *p == vec![0, 1]));
    }
}
