use rayon::prelude::*;
use serde::Serialize;

use crate::bases::{base_number_search, BaseKind, DEFAULT_BUDGET};
use crate::ccfg::CoherentConfiguration;
use crate::error::{Error, Result};
use crate::permgrp::{Permutation, PermutationGroup};
use crate::wl::engine::{rank_labels, refine_together};
use crate::wl::AlgebraicIsomorphism;

/// Why `X ≠ inv(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TestWitness {
    /// Two pairs of one color lie in different orbits of `G`.
    Split { color: u32, first: (u32, u32), second: (u32, u32) },
    /// Pairs of two colors lie in one orbit of `G`.
    Merged { colors: (u32, u32), first: (u32, u32), second: (u32, u32) },
}

/// `Test(X, G)`: whether the colors of `x` are exactly the orbits of `g` on
/// ordered pairs.
pub fn test_config_group(x: &CoherentConfiguration, g: &PermutationGroup) -> Result<Option<TestWitness>> {
    let n = x.n();
    if g.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: g.degree(),
        });
    }
    let orbits = g.pair_orbits();
    let mut orbit_of_color: Vec<Option<(u32, (u32, u32))>> = vec![None; x.rank()];
    let mut color_of_orbit: Vec<Option<(u32, (u32, u32))>> = vec![None; orbits.rank()];
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            let (c, o) = (x.color(a, b), orbits.get(a, b));
            match orbit_of_color[c as usize] {
                None => orbit_of_color[c as usize] = Some((o, (a, b))),
                Some((o2, first)) if o2 != o => {
                    return Ok(Some(TestWitness::Split {
                        color: c,
                        first,
                        second: (a, b),
                    }))
                }
                _ => {}
            }
            match color_of_orbit[o as usize] {
                None => color_of_orbit[o as usize] = Some((c, (a, b))),
                Some((c2, first)) if c2 != c => {
                    return Ok(Some(TestWitness::Merged {
                        colors: (c2, c),
                        first,
                        second: (a, b),
                    }))
                }
                _ => {}
            }
        }
    }
    Ok(None)
}

/// The group generated by `elements`, keeping only elements not already
/// generated by the earlier ones.
pub fn group_from_elements(degree: usize, elements: &[Permutation]) -> PermutationGroup {
    let mut group = PermutationGroup::trivial(degree);
    for g in elements {
        if !group.contains(g) {
            let mut gens = group.generators().to_vec();
            gens.push(g.clone());
            group = PermutationGroup::new(degree, gens).expect("elements share the degree");
        }
    }
    group
}

fn diag(n: usize, p: usize) -> usize {
    p * (n + 1)
}

/// Individualizes `pa` on one side and `pb` on the other, then refines both
/// in lockstep. `None` if the refinements diverge.
fn individualize(n: usize, a: &[u32], b: &[u32], pa: usize, pb: usize) -> Option<(Vec<u32>, Vec<u32>)> {
    let tag = |side: &[u32], p: usize| -> Vec<(u32, bool)> {
        side.iter().enumerate().map(|(i, &c)| (c, i == diag(n, p))).collect()
    };
    let mut sides = rank_labels(&[tag(a, pa), tag(b, pb)]);
    refine_together(n, &mut sides).ok()?;
    let b = sides.pop().unwrap();
    let a = sides.pop().unwrap();
    Some((a, b))
}

/// Depth-first search over images of the base points. Leaves are reached
/// once all base points are individualized, when both colorings are
/// discrete on the diagonal.
fn descend(
    n: usize,
    base: &[u32],
    a: &[u32],
    b: &[u32],
    limit: Option<usize>,
    out: &mut Vec<Vec<u32>>,
) {
    if limit.is_some_and(|l| out.len() >= l) {
        return;
    }
    let Some((&bp, rest)) = base.split_first() else {
        let mut at = vec![u32::MAX; a.len()];
        for y in 0..n {
            at[b[diag(n, y)] as usize] = y as u32;
        }
        let f: Vec<u32> = (0..n).map(|x| at[a[diag(n, x)] as usize]).collect();
        out.push(f);
        return;
    };
    let want = a[diag(n, bp as usize)];
    for y in 0..n {
        if b[diag(n, y)] != want {
            continue;
        }
        if let Some((a2, b2)) = individualize(n, a, b, bp as usize, y) {
            descend(n, rest, &a2, &b2, limit, out);
            if limit.is_some_and(|l| out.len() >= l) {
                return;
            }
        }
    }
}

/// Isomorphisms `x → x2` inducing `phi`, at most `limit` of them when given.
fn isomorphisms(
    x: &CoherentConfiguration,
    x2: &CoherentConfiguration,
    phi: &AlgebraicIsomorphism,
    limit: Option<usize>,
) -> Result<Vec<Permutation>> {
    let phi = AlgebraicIsomorphism::new(x, x2, phi.map().to_vec())?;
    let n = x.n();
    if x2.n() != n {
        return Err(Error::InvalidAlgebraicIso(format!("degrees {} and {} differ", n, x2.n())));
    }
    let inverse = phi.inverse();
    let a0: Vec<u32> = x.matrix().as_slice().to_vec();
    let b0: Vec<u32> = x2.matrix().as_slice().iter().map(|&c| inverse.apply(c)).collect();
    let mut sides = rank_labels(&[a0, b0]);
    if refine_together(n, &mut sides).is_err() {
        return Ok(Vec::new());
    }
    let (a, b) = (&sides[0], &sides[1]);
    let base = base_number_search(x, BaseKind::Base, DEFAULT_BUDGET)?.points();

    let mut maps: Vec<Vec<u32>> = match (limit, base.split_first()) {
        (None, Some((&bp, rest))) => {
            let want = a[diag(n, bp as usize)];
            let branches: Vec<usize> = (0..n).filter(|&y| b[diag(n, y)] == want).collect();
            branches
                .par_iter()
                .map(|&y| {
                    let mut out = Vec::new();
                    if let Some((a2, b2)) = individualize(n, a, b, bp as usize, y) {
                        descend(n, rest, &a2, &b2, None, &mut out);
                    }
                    out
                })
                .collect::<Vec<_>>()
                .concat()
        }
        _ => {
            let mut out = Vec::new();
            descend(n, &base, a, b, limit, &mut out);
            out
        }
    };
    maps.sort_unstable();
    maps.dedup();
    let mut result = Vec::with_capacity(maps.len());
    for f in maps {
        let Ok(f) = Permutation::from_images(f) else { continue };
        let induces = (0..n as u32).all(|i| {
            (0..n as u32).all(|j| x2.color(f.image(i), f.image(j)) == phi.apply(x.color(i, j)))
        });
        if induces {
            result.push(f);
        }
    }
    Ok(result)
}

/// `iso(X, X', φ)`: every point bijection carrying each color `c` of `x`
/// onto the color `φ(c)` of `x2`, sorted by image list.
///
/// A minimum base `B` of `x` is individualized point by point against every
/// candidate image in `x2`; each branch is refined in lockstep and dropped
/// as soon as the two sides diverge.
pub fn list_isomorphisms(
    x: &CoherentConfiguration,
    x2: &CoherentConfiguration,
    phi: &AlgebraicIsomorphism,
) -> Result<Vec<Permutation>> {
    isomorphisms(x, x2, phi, None)
}

/// One element of `iso(X, X', φ)`, if any.
pub fn find_isomorphism(
    x: &CoherentConfiguration,
    x2: &CoherentConfiguration,
    phi: &AlgebraicIsomorphism,
) -> Result<Option<Permutation>> {
    Ok(isomorphisms(x, x2, phi, Some(1))?.pop())
}

/// `Aut(X)` as the group generated by `iso(X, X, id)`.
pub fn automorphisms_by_listing(x: &CoherentConfiguration) -> Result<PermutationGroup> {
    let all = list_isomorphisms(x, x, &AlgebraicIsomorphism::identity(x.rank()))?;
    Ok(group_from_elements(x.n(), &all))
}
