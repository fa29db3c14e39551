use serde::Serialize;

use crate::ccfg::{CoherentConfiguration, ColorMatrix};
use crate::permgrp::{Permutation, PermutationGroup};
use crate::wl::{closure_of_matrix, Relation};

/// Flat indexing of tuples, row-major with the last coordinate fastest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductPointMap {
    factors: Vec<usize>,
}

impl ProductPointMap {
    pub fn new(factors: Vec<usize>) -> Self {
        ProductPointMap { factors }
    }

    /// `m` copies of a factor of size `n`.
    pub fn power(n: usize, m: usize) -> Self {
        ProductPointMap {
            factors: vec![n; m],
        }
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn size(&self) -> usize {
        self.factors.iter().product()
    }

    pub fn encode(&self, coords: &[u32]) -> u32 {
        debug_assert_eq!(coords.len(), self.factors.len());
        coords
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&c, &f)| acc * f + c as usize) as u32
    }

    pub fn decode(&self, mut point: u32) -> Vec<u32> {
        let mut out = vec![0u32; self.factors.len()];
        for (slot, &f) in out.iter_mut().zip(&self.factors).rev() {
            *slot = point % f as u32;
            point /= f as u32;
        }
        out
    }
}

/// The point map of `X1 ≀ X2`: point `(x1, x2)` is `x1 * n2 + x2`, and the
/// block `Ω1 × {α}` holds the points with second coordinate `α`.
pub fn wreath_point_map(n1: usize, n2: usize) -> ProductPointMap {
    ProductPointMap::new(vec![n1, n2])
}

/// The blocks `Ω1 × {α}` of a wreath product, ordered by `α`.
pub fn wreath_blocks(n1: usize, n2: usize) -> Vec<Vec<u32>> {
    let map = wreath_point_map(n1, n2);
    (0..n2 as u32)
        .map(|a| (0..n1 as u32).map(|x| map.encode(&[x, a])).collect())
        .collect()
}

/// `X1 ≀ X2` on `Ω1 × Ω2`.
///
/// For homogeneous factors the relations are `s1 ⊗ 1` and `Ω1² ⊗ s2`
/// (`s2` non-reflexive); otherwise the smallest configuration containing
/// those relations and the block equivalence.
pub fn wreath_product(
    x1: &CoherentConfiguration,
    x2: &CoherentConfiguration,
) -> CoherentConfiguration {
    let (n1, n2) = (x1.n(), x2.n());
    let map = wreath_point_map(n1, n2);
    let n = n1 * n2;
    let mut labels: Vec<(bool, u32)> = Vec::with_capacity(n * n);
    for a in 0..n as u32 {
        let pa = map.decode(a);
        for b in 0..n as u32 {
            let pb = map.decode(b);
            labels.push(if pa[1] == pb[1] {
                (false, x1.color(pa[0], pb[0]))
            } else {
                (true, x2.color(pa[1], pb[1]))
            });
        }
    }
    let seed = ColorMatrix::from_labels(n, &labels);
    let x = if x1.is_homogeneous() && x2.is_homogeneous() {
        CoherentConfiguration::new(seed).expect("wreath product of schemes is coherent")
    } else {
        // Inside a block the label ignores which fiber of X2 the block sits
        // in; the closure restores the Ω1² ⊗ 1_Δ relations.
        let mut full: Vec<(Option<u32>, u32)> = Vec::with_capacity(n * n);
        for a in 0..n as u32 {
            let pa = map.decode(a);
            for b in 0..n as u32 {
                let pb = map.decode(b);
                let inner = (pa[1] == pb[1]).then(|| x1.color(pa[0], pb[0]));
                full.push((inner, x2.color(pa[1], pb[1])));
            }
        }
        closure_of_matrix(&ColorMatrix::from_labels(n, &full))
    };
    x.canonical()
}

/// `Y^{⊗m}`: colors are `m`-tuples of colors of `Y`.
pub fn cartesian_power(y: &CoherentConfiguration, m: usize) -> CoherentConfiguration {
    tuple_configuration(y, m, |t| t.to_vec())
}

/// `(α^l)_i = α_j` where `j^l = i`, i.e. coordinate `j` moves to position
/// `l(j)`.
pub fn act_on_tuple<T: Copy>(tuple: &[T], l: &Permutation) -> Vec<T> {
    let mut out = tuple.to_vec();
    for (j, &v) in tuple.iter().enumerate() {
        out[l.image(j as u32) as usize] = v;
    }
    out
}

/// `Y ↑ L`: colors are the `L`-orbits of `m`-tuples of colors of `Y`, where
/// `m` is the degree of `L`.
pub fn exponentiation(y: &CoherentConfiguration, l: &PermutationGroup) -> CoherentConfiguration {
    let elements = l
        .elements(1 << 20)
        .expect("the acting group is small enough to enumerate");
    tuple_configuration(y, l.degree(), |t| {
        elements
            .iter()
            .map(|g| act_on_tuple(t, g))
            .min()
            .expect("a group has at least one element")
    })
}

fn tuple_configuration(
    y: &CoherentConfiguration,
    m: usize,
    label: impl Fn(&[u32]) -> Vec<u32>,
) -> CoherentConfiguration {
    let map = ProductPointMap::power(y.n(), m);
    let n = map.size();
    let coords: Vec<Vec<u32>> = (0..n as u32).map(|p| map.decode(p)).collect();
    let mut labels = Vec::with_capacity(n * n);
    let mut t = vec![0u32; m];
    for a in &coords {
        for b in &coords {
            for i in 0..m {
                t[i] = y.color(a[i], b[i]);
            }
            labels.push(label(&t));
        }
    }
    CoherentConfiguration::new(ColorMatrix::from_labels(n, &labels))
        .expect("tuple configurations are coherent")
        .canonical()
}

/// Number of coordinates in which two points of `Γ^m` differ.
pub fn hamming_distance(map: &ProductPointMap, a: u32, b: u32) -> usize {
    map.decode(a)
        .iter()
        .zip(map.decode(b))
        .filter(|(x, y)| **x != *y)
        .count()
}

/// `r_0, …, r_m` on `Γ^m` with `|Γ| = n`: `r_i` holds the pairs at Hamming
/// distance `i`.
pub fn hamming_relations(n: usize, m: usize) -> Vec<Relation> {
    let map = ProductPointMap::power(n, m);
    let size = map.size() as u32;
    let mut rels: Vec<Relation> = (0..=m)
        .map(|i| Relation {
            name: format!("r{i}"),
            pairs: Vec::new(),
        })
        .collect();
    for a in 0..size {
        for b in 0..size {
            rels[hamming_distance(&map, a, b)].pairs.push((a, b));
        }
    }
    rels
}

/// The point of `Γ^m` with every coordinate `γ0`.
pub fn constant_point(n: usize, m: usize, gamma0: u32) -> u32 {
    ProductPointMap::power(n, m).encode(&vec![gamma0; m])
}

/// `ρ(β) = β r_{d-1} ∩ α r` with `α` the constant `γ0` point and
/// `d = d(α, β)`; sorted.
pub fn rho_map(n: usize, m: usize, gamma0: u32, beta: u32) -> Vec<u32> {
    let map = ProductPointMap::power(n, m);
    let alpha = constant_point(n, m, gamma0);
    let d = hamming_distance(&map, alpha, beta);
    if d == 0 {
        return Vec::new();
    }
    (0..map.size() as u32)
        .filter(|&x| hamming_distance(&map, alpha, x) == 1 && hamming_distance(&map, beta, x) == d - 1)
        .collect()
}

/// The unique `β` with `ρ(β) = Λ`, when `Λ ⊆ αr` meets each coordinate
/// class in at most one point.
pub fn rho_preimage(n: usize, m: usize, gamma0: u32, lambda: &[u32]) -> Option<u32> {
    let map = ProductPointMap::power(n, m);
    let alpha = constant_point(n, m, gamma0);
    let mut beta = vec![gamma0; m];
    for &x in lambda {
        if hamming_distance(&map, alpha, x) != 1 {
            return None;
        }
        let c = map.decode(x);
        let i = c.iter().position(|&v| v != gamma0).unwrap();
        if beta[i] != gamma0 {
            return None;
        }
        beta[i] = c[i];
    }
    let b = map.encode(&beta);
    let mut want = lambda.to_vec();
    want.sort_unstable();
    (rho_map(n, m, gamma0, b) == want).then_some(b)
}

/// The block equivalence of a wreath product as a relation.
pub fn block_relation(n1: usize, n2: usize) -> Relation {
    let mut pairs = Vec::new();
    for block in wreath_blocks(n1, n2) {
        for &a in &block {
            for &b in &block {
                pairs.push((a, b));
            }
        }
    }
    Relation {
        name: "blocks".into(),
        pairs,
    }
}

/// Checks that `rel` is a union of colors of `x`.
pub fn is_union_of_colors(x: &CoherentConfiguration, rel: &Relation) -> bool {
    let n = x.n();
    let mut inside = vec![false; n * n];
    for &(a, b) in &rel.pairs {
        inside[a as usize * n + b as usize] = true;
    }
    x.colors_of_relation(|a, b| inside[a as usize * n + b as usize]).is_some()
}
