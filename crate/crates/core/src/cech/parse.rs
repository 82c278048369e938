//! Text stanzas describing a site and the structures on it.
//!
//! ```text
//! group Z2xZ2
//! site
//!   patch 0 1
//!   patch 1 1
//!   double 0 1 2 restrict 0:0 0:0
//!   act (1,0) double 0 1 1 0
//! end
//! bundle
//!   g 0 1 1 1/2
//! end
//! equiv bundle
//!   h (1,0) 0 0 1/2
//! end
//! equiv gerbe
//!   nu (1,0) 0 1 0 1/2
//!   h (1,0) (0,1) 0 0 1/2
//! end
//! ```
//!
//! `double`, `triple` and `quad` give the patch ids, the component count and,
//! for each component, its components in the faces joined by `:` (faces in
//! lexicographic order). The `restrict` clause may be dropped when every face
//! has a single component. Group elements are written by label or index.
//! Unlisted values are zero.

use crate::error::{Error, Result};
use crate::group::{parse_group_spec, FiniteGroup};
use crate::phase::Phase;

use super::{
    faces_of, BundleCocycle, BundleEquivariance, DiscreteSite, GerbeCocycle, GerbeEquivariance, SiteBuilder, SiteFunction,
};

#[derive(Debug, Clone)]
pub struct CechDocument {
    pub site: DiscreteSite,
    pub bundle: Option<BundleCocycle>,
    pub gerbe: Option<GerbeCocycle>,
    pub bundle_equivariance: Option<BundleEquivariance>,
    pub gerbe_equivariance: Option<GerbeEquivariance>,
}

impl CechDocument {
    pub fn group(&self) -> &FiniteGroup {
        self.site.group()
    }
}

struct Line<'a> {
    number: usize,
    words: Vec<&'a str>,
}

impl Line<'_> {
    fn err(&self, msg: impl std::fmt::Display) -> Error {
        Error::Parse(format!("line {}: {msg}", self.number))
    }

    fn usize_at(&self, i: usize) -> Result<usize> {
        let w = self.words.get(i).ok_or_else(|| self.err("too few fields"))?;
        w.parse().map_err(|_| self.err(format!("expected a number, found `{w}`")))
    }

    fn phase_at(&self, i: usize) -> Result<Phase> {
        let w = self.words.get(i).ok_or_else(|| self.err("too few fields"))?;
        w.parse().map_err(|e| self.err(e))
    }

    fn element_at(&self, group: &FiniteGroup, i: usize) -> Result<usize> {
        let w = *self.words.get(i).ok_or_else(|| self.err("too few fields"))?;
        if let Some(g) = group.labels().iter().position(|l| l == w) {
            return Ok(g);
        }
        match w.parse::<usize>() {
            Ok(g) if g < group.order() => Ok(g),
            _ => Err(self.err(format!("unknown group element `{w}`"))),
        }
    }

    fn expect_len(&self, n: usize) -> Result<()> {
        if self.words.len() == n {
            Ok(())
        } else {
            Err(self.err(format!("expected {n} fields, found {}", self.words.len())))
        }
    }
}

fn set_value(f: &mut SiteFunction, line: &Line, key: &[usize], comp: usize, value: Phase) -> Result<()> {
    f.set(key, comp, value).map_err(|e| line.err(e))
}

fn sorted_key(line: &Line, ids: &[usize]) -> Result<Vec<usize>> {
    if ids.windows(2).any(|w| w[0] >= w[1]) {
        return Err(line.err("patch ids must be listed in increasing order"));
    }
    Ok(ids.to_vec())
}

pub fn parse_cech_document(text: &str) -> Result<CechDocument> {
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .map(|(i, l)| Line { number: i + 1, words: l.split('#').next().unwrap_or("").split_whitespace().collect() })
        .filter(|l| !l.words.is_empty())
        .collect();
    let mut it = lines.iter().peekable();
    let first = it.next().ok_or_else(|| Error::Parse("empty document".into()))?;
    if first.words[0] != "group" || first.words.len() < 2 {
        return Err(first.err("document must start with `group <spec>`"));
    }
    let group = parse_group_spec(&first.words[1..].join(" "))?;

    let mut blocks: Vec<(&Line, Vec<&Line>)> = Vec::new();
    while let Some(head) = it.next() {
        let mut body = Vec::new();
        loop {
            let l = it.next().ok_or_else(|| head.err("block is missing `end`"))?;
            if l.words == ["end"] {
                break;
            }
            body.push(l);
        }
        blocks.push((head, body));
    }

    let site_block = blocks
        .iter()
        .find(|(h, _)| h.words == ["site"])
        .ok_or_else(|| Error::Parse("missing `site` block".into()))?;
    let site = parse_site(&group, &site_block.1)?;

    let mut doc = CechDocument { site, bundle: None, gerbe: None, bundle_equivariance: None, gerbe_equivariance: None };
    for (head, body) in &blocks {
        match head.words.as_slice() {
            ["site"] => {}
            ["bundle"] => doc.bundle = Some(parse_bundle(&doc.site, body)?),
            ["gerbe"] => doc.gerbe = Some(parse_gerbe(&doc.site, body)?),
            ["equiv", "bundle"] => doc.bundle_equivariance = Some(parse_equiv_bundle(&doc.site, body)?),
            ["equiv", "gerbe"] => doc.gerbe_equivariance = Some(parse_equiv_gerbe(&doc.site, body)?),
            _ => return Err(head.err(format!("unknown block `{}`", head.words.join(" ")))),
        }
    }
    if doc.bundle_equivariance.is_some() && doc.bundle.is_none() {
        doc.bundle = Some(BundleCocycle::trivial(&doc.site));
    }
    if doc.gerbe_equivariance.is_some() && doc.gerbe.is_none() {
        doc.gerbe = Some(GerbeCocycle::trivial(&doc.site));
    }
    Ok(doc)
}

fn overlap_arity(kind: &str) -> Option<usize> {
    match kind {
        "patch" => Some(1),
        "double" => Some(2),
        "triple" => Some(3),
        "quad" => Some(4),
        _ => None,
    }
}

fn parse_site(group: &FiniteGroup, body: &[&Line]) -> Result<DiscreteSite> {
    let mut builder = SiteBuilder::new(group);
    let mut counts = std::collections::BTreeMap::new();
    for line in body {
        let kind = line.words[0];
        match (kind, overlap_arity(kind)) {
            ("patch", _) => {
                line.expect_len(3)?;
                let (id, n) = (line.usize_at(1)?, line.usize_at(2)?);
                counts.insert(vec![id], n);
                builder = builder.patch(id, n);
            }
            (_, Some(k)) => {
                let ids: Vec<usize> = (1..=k).map(|i| line.usize_at(i)).collect::<Result<_>>()?;
                let key = sorted_key(line, &ids)?;
                let n = line.usize_at(k + 1)?;
                let faces = faces_of(&key);
                let restrictions: Vec<Vec<usize>> = match line.words.get(k + 2) {
                    None => {
                        if faces.iter().any(|f| counts.get(f) != Some(&1)) {
                            return Err(line.err("`restrict` is required unless every face has one component"));
                        }
                        vec![vec![0; faces.len()]; n]
                    }
                    Some(&"restrict") => {
                        let items = &line.words[k + 3..];
                        if items.len() != n {
                            return Err(line.err(format!("expected {n} restrictions, found {}", items.len())));
                        }
                        items
                            .iter()
                            .map(|item| {
                                let parts: Vec<usize> = item
                                    .split(':')
                                    .map(|x| x.parse().map_err(|_| line.err(format!("bad restriction `{item}`"))))
                                    .collect::<Result<_>>()?;
                                if parts.len() != faces.len() {
                                    return Err(line.err(format!("restriction `{item}` needs {} entries", faces.len())));
                                }
                                Ok(parts)
                            })
                            .collect::<Result<_>>()?
                    }
                    Some(w) => return Err(line.err(format!("expected `restrict`, found `{w}`"))),
                };
                counts.insert(key.clone(), n);
                builder = builder.overlap(&key, restrictions);
            }
            ("act", _) => {
                let g = line.element_at(group, 1)?;
                let kind = *line.words.get(2).ok_or_else(|| line.err("too few fields"))?;
                let k = overlap_arity(kind).ok_or_else(|| line.err(format!("unknown overlap kind `{kind}`")))?;
                let ids: Vec<usize> = (3..3 + k).map(|i| line.usize_at(i)).collect::<Result<_>>()?;
                let key = sorted_key(line, &ids)?;
                let perm: Vec<usize> = (3 + k..line.words.len()).map(|i| line.usize_at(i)).collect::<Result<_>>()?;
                builder = builder.act(g, &key, perm);
            }
            _ => return Err(line.err(format!("unknown site entry `{kind}`"))),
        }
    }
    builder.build()
}

fn parse_bundle(site: &DiscreteSite, body: &[&Line]) -> Result<BundleCocycle> {
    let mut f = site.zero_function(2);
    for line in body {
        if line.words[0] != "g" {
            return Err(line.err("expected `g a b comp k/N`"));
        }
        line.expect_len(5)?;
        let key = sorted_key(line, &[line.usize_at(1)?, line.usize_at(2)?])?;
        set_value(&mut f, line, &key, line.usize_at(3)?, line.phase_at(4)?)?;
    }
    Ok(BundleCocycle { transition: f })
}

fn parse_gerbe(site: &DiscreteSite, body: &[&Line]) -> Result<GerbeCocycle> {
    let mut f = site.zero_function(3);
    for line in body {
        if line.words[0] != "h" {
            return Err(line.err("expected `h a b c comp k/N`"));
        }
        line.expect_len(6)?;
        let key = sorted_key(line, &[line.usize_at(1)?, line.usize_at(2)?, line.usize_at(3)?])?;
        set_value(&mut f, line, &key, line.usize_at(4)?, line.phase_at(5)?)?;
    }
    Ok(GerbeCocycle { h: f })
}

fn parse_equiv_bundle(site: &DiscreteSite, body: &[&Line]) -> Result<BundleEquivariance> {
    let group = site.group();
    let mut s = BundleEquivariance::trivial(site);
    for line in body {
        if line.words[0] != "h" {
            return Err(line.err("expected `h g a comp k/N`"));
        }
        line.expect_len(5)?;
        let g = line.element_at(group, 1)?;
        set_value(&mut s.h[g], line, &[line.usize_at(2)?], line.usize_at(3)?, line.phase_at(4)?)?;
    }
    Ok(s)
}

fn parse_equiv_gerbe(site: &DiscreteSite, body: &[&Line]) -> Result<GerbeEquivariance> {
    let group = site.group();
    let n = group.order();
    let mut s = GerbeEquivariance::trivial(site);
    for line in body {
        match line.words[0] {
            "nu" => {
                line.expect_len(6)?;
                let g = line.element_at(group, 1)?;
                let key = sorted_key(line, &[line.usize_at(2)?, line.usize_at(3)?])?;
                set_value(&mut s.nu[g], line, &key, line.usize_at(4)?, line.phase_at(5)?)?;
            }
            "h" => {
                line.expect_len(6)?;
                let (g1, g2) = (line.element_at(group, 1)?, line.element_at(group, 2)?);
                set_value(&mut s.h[g1 * n + g2], line, &[line.usize_at(3)?], line.usize_at(4)?, line.phase_at(5)?)?;
            }
            other => return Err(line.err(format!("expected `nu` or `h`, found `{other}`"))),
        }
    }
    Ok(s)
}
