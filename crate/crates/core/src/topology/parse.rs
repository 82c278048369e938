use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

use super::{Cell, GComplex};

/// Reads `cell <id> <dim>`, `bnd <id> <ids...>` and
/// `act <element> <image ids in cell order>` lines. Elements are given by
/// index or label; generators without an `act` line act trivially.
pub fn parse_complex(group: &FiniteGroup, text: &str) -> Result<GComplex> {
    let mut cells: Vec<Cell> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut bnd: Vec<(usize, Vec<String>)> = Vec::new();
    let mut acts: Vec<(usize, usize, Vec<String>)> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let words: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
        let err = |msg: String| Error::Parse(format!("line {}: {msg}", no + 1));
        match words.as_slice() {
            [] => {}
            ["cell", id, dim] => {
                let dim: usize = dim.parse().map_err(|_| err(format!("bad dimension `{dim}`")))?;
                if index.insert(id.to_string(), cells.len()).is_some() {
                    return Err(err(format!("duplicate cell `{id}`")));
                }
                cells.push(Cell { id: id.to_string(), dim, boundary: Vec::new() });
            }
            ["bnd", id, rest @ ..] => bnd.push((no + 1, [vec![id.to_string()], rest.iter().map(|s| s.to_string()).collect()].concat())),
            ["act", g, rest @ ..] => {
                let g = group
                    .labels()
                    .iter()
                    .position(|l| l == g)
                    .or_else(|| g.parse().ok().filter(|&i: &usize| i < group.order()))
                    .ok_or_else(|| err(format!("unknown group element `{g}`")))?;
                acts.push((no + 1, g, rest.iter().map(|s| s.to_string()).collect()));
            }
            _ => return Err(err(format!("cannot read `{}`", raw.trim()))),
        }
    }
    let lookup = |line: usize, id: &str| {
        index.get(id).copied().ok_or_else(|| Error::Parse(format!("line {line}: unknown cell `{id}`")))
    };
    for (line, ids) in &bnd {
        let c = lookup(*line, &ids[0])?;
        let boundary = ids[1..].iter().map(|id| lookup(*line, id)).collect::<Result<Vec<_>>>()?;
        cells[c].boundary.extend(boundary);
    }
    let mut given = BTreeMap::new();
    for (line, g, ids) in &acts {
        if ids.len() != cells.len() {
            return Err(Error::Parse(format!("line {line}: expected {} images, found {}", cells.len(), ids.len())));
        }
        let perm = ids.iter().map(|id| lookup(*line, id)).collect::<Result<Vec<_>>>()?;
        given.insert(*g, perm);
    }
    GComplex::from_images(group, cells, given)
}
