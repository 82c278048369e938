//! Group-spec text: `Z<n>` joined by `x`, `D<n>`, `Q8`, `S<n>`, `A<n>`,
//! `perm <degree> <cycles...>`, or `table <n> <n*n entries>`.

use crate::error::{Error, Result};

use super::families::{alternating, cyclic, dihedral, direct_product, generated_by, quaternion, symmetric};
use super::FiniteGroup;

pub fn parse_group_spec(text: &str) -> Result<FiniteGroup> {
    let text = text.trim();
    let mut words = text.split_whitespace();
    match words.next() {
        None => Err(Error::Parse("empty group spec".into())),
        Some("perm") => parse_perm(text, words.collect::<Vec<_>>().join(" ").as_str()),
        Some("table") => parse_table(words),
        Some(tok) => {
            if let Some(extra) = words.next() {
                return Err(Error::Parse(format!("unexpected `{extra}` after `{tok}`")));
            }
            parse_product(tok)
        }
    }
}

fn parse_product(tok: &str) -> Result<FiniteGroup> {
    let mut factors = tok.split('x').map(parse_family);
    let first = factors.next().ok_or_else(|| Error::Parse("empty product".into()))??;
    factors.try_fold(first, |acc, f| direct_product(&acc, &f?))
}

fn parse_family(tok: &str) -> Result<FiniteGroup> {
    if tok == "Q8" {
        return quaternion();
    }
    let bad = || Error::Parse(format!("malformed group token `{tok}`"));
    let mut chars = tok.chars();
    let head = chars.next().ok_or_else(bad)?;
    let n: usize = chars.as_str().parse().map_err(|_| bad())?;
    match head {
        'Z' => cyclic(n),
        'D' => dihedral(n),
        'S' => symmetric(n),
        'A' => alternating(n),
        'Q' => Err(Error::Unsupported(format!("Q{n} (only Q8 is available)"))),
        _ => Err(Error::Unsupported(tok.to_string())),
    }
}

fn parse_perm(full: &str, rest: &str) -> Result<FiniteGroup> {
    let rest = rest.trim();
    let (deg, cycles) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
    let degree: usize = deg.parse().map_err(|_| Error::Parse(format!("bad permutation degree `{deg}`")))?;
    if degree == 0 {
        return Err(Error::Parse("permutation degree must be positive".into()));
    }
    let mut gens = Vec::new();
    let mut s = cycles.trim();
    while !s.is_empty() {
        let body_end = s.find(')').ok_or_else(|| Error::Parse("unclosed cycle".into()))?;
        let body = s.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected `(` at `{s}`")))?;
        let body = &body[..body_end - 1];
        let mut perm: Vec<usize> = (0..degree).collect();
        let pts: Vec<usize> = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|w| !w.is_empty())
            .map(|w| w.parse::<usize>().map_err(|_| Error::Parse(format!("bad point `{w}`"))))
            .collect::<Result<_>>()?;
        if pts.iter().any(|&p| p == 0 || p > degree) {
            return Err(Error::Parse(format!("cycle point out of range 1..={degree}")));
        }
        let mut sorted = pts.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != pts.len() {
            return Err(Error::Parse("repeated point in cycle".into()));
        }
        for (i, &p) in pts.iter().enumerate() {
            perm[p - 1] = pts[(i + 1) % pts.len()] - 1;
        }
        gens.push(perm);
        s = s[body_end + 1..].trim_start();
    }
    generated_by(full.to_string(), degree, &gens)
}

fn parse_table<'a>(mut words: impl Iterator<Item = &'a str>) -> Result<FiniteGroup> {
    let n: usize = words
        .next()
        .ok_or_else(|| Error::Parse("table needs an order".into()))?
        .parse()
        .map_err(|_| Error::Parse("bad table order".into()))?;
    let entries: Vec<usize> = words
        .map(|w| w.parse::<usize>().map_err(|_| Error::Parse(format!("bad table entry `{w}`"))))
        .collect::<Result<_>>()?;
    if entries.len() != n * n {
        return Err(Error::Parse(format!("table of order {n} needs {} entries, got {}", n * n, entries.len())));
    }
    FiniteGroup::from_table(format!("table{n}"), n, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_examples() {
        let z2 = parse_group_spec("Z2").unwrap();
        assert_eq!(z2.order(), 2);
        assert_eq!(z2.mul(1, 1), 0);
        let v4 = parse_group_spec("Z2xZ2").unwrap();
        assert_eq!(v4.order(), 4);
        assert!(v4.non_identity().all(|g| v4.inv(g) == g));
    }

    #[test]
    fn permutation_closure_is_s3() {
        let g = parse_group_spec("perm 3 (1 2) (1 2 3)").unwrap();
        assert_eq!(g.order(), 6);
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(g.table(), parse_group_spec("S3").unwrap().table());
    }

    #[test]
    fn table_input() {
        let g = parse_group_spec("table 3 0 1 2 1 2 0 2 0 1").unwrap();
        assert_eq!(g.order(), 3);
        assert!(matches!(parse_group_spec("table 2 0 1 1 1"), Err(Error::InvalidGroup(_))));
        assert!(matches!(parse_group_spec("table 2 0 1 1"), Err(Error::Parse(_))));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_group_spec(""), Err(Error::Parse(_))));
        assert!(matches!(parse_group_spec("Zfoo"), Err(Error::Parse(_))));
        assert!(matches!(parse_group_spec("S6"), Err(Error::Unsupported(_))));
        assert!(matches!(parse_group_spec("Q16"), Err(Error::Unsupported(_))));
        assert!(matches!(parse_group_spec("X3"), Err(Error::Unsupported(_))));
        assert!(matches!(parse_group_spec("perm 3 (1 4)"), Err(Error::Parse(_))));
        assert!(matches!(parse_group_spec("Z2 Z3"), Err(Error::Parse(_))));
        assert!(matches!(parse_group_spec("Z12xZ12"), Err(Error::TooLarge(_))));
    }
}
