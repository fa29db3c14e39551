use serde::Serialize;

use super::engine::{rank_labels, refine_together};
use crate::ccfg::{CoherentConfiguration, ColorMatrix};
use crate::error::{Error, Result};
use crate::permgrp::PermutationGroup;

/// A named binary relation on `{0..n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub name: String,
    pub pairs: Vec<(u32, u32)>,
}

/// A list of binary relations on a common point set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationSet {
    pub n: usize,
    pub relations: Vec<Relation>,
}

impl RelationSet {
    /// The color classes of a matrix, named by color id.
    pub fn from_matrix(m: &ColorMatrix) -> Self {
        let mut relations: Vec<Relation> = (0..m.rank())
            .map(|c| Relation {
                name: c.to_string(),
                pairs: Vec::new(),
            })
            .collect();
        for a in 0..m.n() as u32 {
            for b in 0..m.n() as u32 {
                relations[m.get(a, b) as usize].pairs.push((a, b));
            }
        }
        RelationSet { n: m.n(), relations }
    }

    /// Per pair: diagonal flag, membership bits of `(a, b)` and of `(b, a)`.
    pub(crate) fn seed_labels(&self) -> Result<Vec<(bool, Vec<u64>, Vec<u64>)>> {
        let n = self.n;
        let words = self.relations.len().div_ceil(64).max(1);
        let mut bits = vec![vec![0u64; words]; n * n];
        for (i, rel) in self.relations.iter().enumerate() {
            for &(a, b) in &rel.pairs {
                let far = a.max(b) as usize;
                if far >= n {
                    return Err(Error::DegreeMismatch {
                        expected: n,
                        found: far + 1,
                    });
                }
                bits[a as usize * n + b as usize][i / 64] |= 1u64 << (i % 64);
            }
        }
        let mut labels = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                labels.push((a == b, bits[a * n + b].clone(), bits[b * n + a].clone()));
            }
        }
        Ok(labels)
    }
}

fn finish(n: usize, colors: Vec<u32>) -> CoherentConfiguration {
    let m = ColorMatrix::new(n, colors).expect("refinement ids are contiguous");
    CoherentConfiguration::new(m).expect("stable refinement is coherent")
}

/// The smallest coherent configuration whose relations' unions include every
/// seed relation.
pub fn coherent_closure(seeds: &RelationSet) -> Result<CoherentConfiguration> {
    let labels = seeds.seed_labels()?;
    let mut sides = rank_labels(&[labels]);
    refine_together(seeds.n, &mut sides).expect("a single side cannot diverge");
    Ok(finish(seeds.n, sides.pop().unwrap()))
}

/// The smallest coherent configuration in which every color class of `m` is
/// a union of relations.
pub fn closure_of_matrix(m: &ColorMatrix) -> CoherentConfiguration {
    let n = m.n() as u32;
    let mut labels = Vec::with_capacity(m.n() * m.n());
    for a in 0..n {
        for b in 0..n {
            labels.push((a == b, m.get(a, b), m.get(b, a)));
        }
    }
    let mut sides = rank_labels(&[labels]);
    refine_together(m.n(), &mut sides).expect("a single side cannot diverge");
    finish(m.n(), sides.pop().unwrap())
}

/// `fis(X, Π)`: the smallest fission of `x` containing `1_Δ` for every `Δ`
/// in `pi`.
pub fn fission(x: &CoherentConfiguration, pi: &[Vec<u32>]) -> CoherentConfiguration {
    let n = x.n();
    let words = pi.len().div_ceil(64).max(1);
    let mut member = vec![vec![0u64; words]; n];
    for (i, delta) in pi.iter().enumerate() {
        for &a in delta {
            member[a as usize][i / 64] |= 1u64 << (i % 64);
        }
    }
    let empty = vec![0u64; words];
    let mut labels = Vec::with_capacity(n * n);
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            let tag = if a == b { &member[a as usize] } else { &empty };
            labels.push((x.color(a, b), tag.clone()));
        }
    }
    let mut sides = rank_labels(&[labels]);
    refine_together(n, &mut sides).expect("a single side cannot diverge");
    finish(n, sides.pop().unwrap())
}

/// Fission individualizing each listed point.
pub fn fission_points(x: &CoherentConfiguration, points: &[u32]) -> CoherentConfiguration {
    let pi: Vec<Vec<u32>> = points.iter().map(|&p| vec![p]).collect();
    fission(x, &pi)
}

/// `inv(G)`: the configuration of orbits of `G` on ordered pairs.
pub fn inv_of_group(g: &PermutationGroup) -> CoherentConfiguration {
    CoherentConfiguration::new(g.pair_orbits()).expect("pair orbits form a coherent configuration")
}
