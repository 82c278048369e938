//! Named group families with frozen element orderings.
//!
//! * `Z<n>`: element `k` is `k mod n`.
//! * `D<n>` (order `2n`): index `i < n` is `r^i`, index `n + i` is `r^i s`.
//! * `Q8`: `[1, -1, i, -i, j, -j, k, -k]`.
//! * `S<n>`, `A<n>`: permutations of `0..n` in lexicographic order of their
//!   image arrays, composed right-to-left (`(gh)(x) = g(h(x))`).
//! * Direct products: lexicographic tuples, first factor most significant.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::FiniteGroup;

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidGroup("Z0 is not finite".into()));
    }
    let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    FiniteGroup::build(format!("Z{n}"), n, mul, None)
}

pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidGroup("D0 is not defined".into()));
    }
    let order = 2 * n;
    let decode = |x: usize| (x % n, x / n);
    let mut mul = vec![0; order * order];
    for a in 0..order {
        for b in 0..order {
            let (i, s) = decode(a);
            let (j, t) = decode(b);
            // r^i s^s r^j s^t = r^(i ± j) s^(s+t)
            let rot = if s == 0 { (i + j) % n } else { (i + n - j) % n };
            mul[a * order + b] = rot + n * ((s + t) % 2);
        }
    }
    let labels = (0..order)
        .map(|x| {
            let (i, s) = decode(x);
            match (i, s) {
                (0, 0) => "e".to_string(),
                (i, 0) => format!("r{i}"),
                (0, _) => "s".to_string(),
                (i, _) => format!("r{i}s"),
            }
        })
        .collect();
    FiniteGroup::build(format!("D{n}"), order, mul, Some(labels))
}

pub fn quaternion() -> Result<FiniteGroup> {
    // unit index: 0 = 1, 1 = i, 2 = j, 3 = k; element = 2*unit + sign
    const UNIT_MUL: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let mut mul = vec![0; 64];
    for a in 0..8 {
        for b in 0..8 {
            let (u, su) = (a / 2, a % 2 == 1);
            let (v, sv) = (b / 2, b % 2 == 1);
            let (w, sw) = UNIT_MUL[u][v];
            mul[a * 8 + b] = 2 * w + usize::from(su ^ sv ^ sw);
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
    FiniteGroup::build("Q8".into(), 8, mul, Some(labels))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn is_even(p: &[usize]) -> bool {
    let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    inversions % 2 == 0
}

fn cycle_label(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = vec![start + 1];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cyc.push(x + 1);
            x = p[x];
        }
        out.push('(');
        out.push_str(&cyc.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// Group whose elements are the given permutations (sorted, closed under composition).
pub(crate) fn from_permutations(name: String, perms: Vec<Vec<usize>>) -> Result<FiniteGroup> {
    let order = perms.len();
    if order > super::MAX_ORDER {
        return Err(Error::TooLarge(format!("permutation group of order {order} exceeds {}", super::MAX_ORDER)));
    }
    let mut mul = vec![0; order * order];
    for (a, p) in perms.iter().enumerate() {
        for (b, q) in perms.iter().enumerate() {
            let comp: Vec<usize> = q.iter().map(|&x| p[x]).collect();
            mul[a * order + b] = perms
                .binary_search(&comp)
                .map_err(|_| Error::InvalidGroup("permutation set not closed".into()))?;
        }
    }
    let labels = perms.iter().map(|p| cycle_label(p)).collect();
    FiniteGroup::build(name, order, mul, Some(labels))
}

/// Closure of permutation generators of the given degree.
pub(crate) fn generated_by(name: String, degree: usize, gens: &[Vec<usize>]) -> Result<FiniteGroup> {
    let id: Vec<usize> = (0..degree).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(p) = stack.pop() {
        for g in gens {
            let comp: Vec<usize> = g.iter().map(|&x| p[x]).collect();
            if seen.insert(comp.clone()) {
                if seen.len() > super::MAX_ORDER {
                    return Err(Error::TooLarge(format!("generated group exceeds order {}", super::MAX_ORDER)));
                }
                stack.push(comp);
            }
        }
    }
    from_permutations(name, seen.into_iter().collect())
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if !(1..=5).contains(&n) {
        return Err(Error::Unsupported(format!("S{n} (supported: S1..S5)")));
    }
    from_permutations(format!("S{n}"), permutations(n))
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    if !(1..=5).contains(&n) {
        return Err(Error::Unsupported(format!("A{n} (supported: A1..A5)")));
    }
    from_permutations(format!("A{n}"), permutations(n).into_iter().filter(|p| is_even(p)).collect())
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let (na, nb) = (a.order(), b.order());
    let order = na * nb;
    if order > super::MAX_ORDER {
        return Err(Error::TooLarge(format!("product order {order} exceeds {}", super::MAX_ORDER)));
    }
    let mut mul = vec![0; order * order];
    for x in 0..order {
        for y in 0..order {
            let (xa, xb) = (x / nb, x % nb);
            let (ya, yb) = (y / nb, y % nb);
            mul[x * order + y] = a.mul(xa, ya) * nb + b.mul(xb, yb);
        }
    }
    let labels = (0..order)
        .map(|x| {
            let la = a.label(x / nb);
            let lb = b.label(x % nb);
            let la = la.strip_prefix('(').filter(|_| la.contains(',')).and_then(|s| s.strip_suffix(')')).unwrap_or(la);
            format!("({la},{lb})")
        })
        .collect();
    FiniteGroup::build(format!("{}x{}", a.name(), b.name()), order, mul, Some(labels))
}
