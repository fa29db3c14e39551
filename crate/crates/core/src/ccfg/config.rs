use std::collections::HashMap;

use serde::Serialize;

use super::ColorMatrix;
use crate::error::{CoherenceWitness, Error, Result};
use crate::permgrp::Permutation;

/// A color matrix checked against the axioms of a coherent configuration,
/// with its fibers, valencies and intersection numbers.
#[derive(Clone, Debug)]
pub struct CoherentConfiguration {
    matrix: ColorMatrix,
    star: Vec<u32>,
    reflexive: Vec<bool>,
    fibers: Vec<Vec<u32>>,
    fiber_of_point: Vec<u32>,
    color_fibers: Vec<(u32, u32)>,
    sizes: Vec<usize>,
    valency: Vec<usize>,
    tensor: HashMap<(u32, u32, u32), u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureFlags {
    pub homogeneous: bool,
    pub antisymmetric: bool,
    pub primitive: bool,
    pub regular: bool,
    pub one_regular_points: Vec<u32>,
}

impl CoherentConfiguration {
    /// Validates `m` and computes the derived data.
    pub fn new(m: ColorMatrix) -> Result<Self> {
        let n = m.n();
        let k = m.rank();
        let mut reflexive = vec![false; k];
        for a in 0..n as u32 {
            reflexive[m.get(a, a) as usize] = true;
        }
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                let c = m.get(a, b);
                if a != b && reflexive[c as usize] {
                    return Err(Error::DiagonalMixed { color: c });
                }
            }
        }
        let mut star = vec![u32::MAX; k];
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                let c = m.get(a, b) as usize;
                let t = m.get(b, a);
                if star[c] == u32::MAX {
                    star[c] = t;
                } else if star[c] != t {
                    return Err(Error::NotTransposeClosed { color: c as u32 });
                }
            }
        }

        // Fibers are the diagonal color classes, ordered by least point.
        let mut fiber_of_diag: HashMap<u32, u32> = HashMap::new();
        let mut fibers: Vec<Vec<u32>> = Vec::new();
        let mut fiber_of_point = vec![0u32; n];
        for a in 0..n as u32 {
            let d = m.get(a, a);
            let next = fibers.len() as u32;
            let f = *fiber_of_diag.entry(d).or_insert(next);
            if f == next {
                fibers.push(Vec::new());
            }
            fibers[f as usize].push(a);
            fiber_of_point[a as usize] = f;
        }

        let reps = m.representatives();
        let sizes = m.color_sizes();
        let mut color_fibers = Vec::with_capacity(k);
        let mut valency = Vec::with_capacity(k);
        for (c, &(a, b)) in reps.iter().enumerate() {
            let fa = fiber_of_point[a as usize];
            color_fibers.push((fa, fiber_of_point[b as usize]));
            valency.push(sizes[c] / fibers[fa as usize].len());
        }

        // Coherence: each pair must see the same multiset of (c(a,g), c(g,b))
        // as the representative of its color.
        let key = |r: u32, s: u32| ((r as u64) << 32) | s as u64;
        let profile = |a: u32, b: u32| -> Vec<u64> {
            let mut v: Vec<u64> = (0..n as u32).map(|g| key(m.get(a, g), m.get(g, b))).collect();
            v.sort_unstable();
            v
        };
        let rep_profiles: Vec<Vec<u64>> = reps.iter().map(|&(a, b)| profile(a, b)).collect();
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                let t = m.get(a, b);
                let (ra, rb) = reps[t as usize];
                if (ra, rb) == (a, b) {
                    continue;
                }
                let p = profile(a, b);
                if p != rep_profiles[t as usize] {
                    let count = |v: &[u64]| {
                        let mut h: HashMap<u64, u32> = HashMap::new();
                        for &x in v {
                            *h.entry(x).or_default() += 1;
                        }
                        h
                    };
                    let (hr, hp) = (count(&rep_profiles[t as usize]), count(&p));
                    let mut keys: Vec<u64> = hr.keys().chain(hp.keys()).copied().collect();
                    keys.sort_unstable();
                    let bad = keys
                        .into_iter()
                        .find(|x| hr.get(x) != hp.get(x))
                        .expect("profiles differ");
                    return Err(Error::NotCoherent(Box::new(CoherenceWitness {
                        r: (bad >> 32) as u32,
                        s: bad as u32,
                        t,
                        first: (ra, rb),
                        first_count: hr.get(&bad).copied().unwrap_or(0),
                        second: (a, b),
                        second_count: hp.get(&bad).copied().unwrap_or(0),
                    })));
                }
            }
        }

        let mut tensor = HashMap::new();
        for (t, &(a, b)) in reps.iter().enumerate() {
            for g in 0..n as u32 {
                *tensor.entry((m.get(a, g), m.get(g, b), t as u32)).or_insert(0) += 1;
            }
        }

        Ok(CoherentConfiguration {
            matrix: m,
            star,
            reflexive,
            fibers,
            fiber_of_point,
            color_fibers,
            sizes,
            valency,
            tensor,
        })
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn matrix(&self) -> &ColorMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ColorMatrix {
        self.matrix
    }

    #[inline]
    pub fn color(&self, a: u32, b: u32) -> u32 {
        self.matrix.get(a, b)
    }

    pub fn star(&self, c: u32) -> u32 {
        self.star[c as usize]
    }

    pub fn is_reflexive(&self, c: u32) -> bool {
        self.reflexive[c as usize]
    }

    pub fn fibers(&self) -> &[Vec<u32>] {
        &self.fibers
    }

    pub fn fiber_of(&self, point: u32) -> u32 {
        self.fiber_of_point[point as usize]
    }

    /// Source and target fiber of a color.
    pub fn color_fibers(&self, c: u32) -> (u32, u32) {
        self.color_fibers[c as usize]
    }

    /// Diagonal color of fiber `f`.
    pub fn fiber_color(&self, f: u32) -> u32 {
        let a = self.fibers[f as usize][0];
        self.color(a, a)
    }

    /// Number of pairs in color `c`.
    pub fn size(&self, c: u32) -> usize {
        self.sizes[c as usize]
    }

    /// `|αc|` for any point `α` of the source fiber of `c`.
    pub fn valency(&self, c: u32) -> usize {
        self.valency[c as usize]
    }

    pub fn max_valency(&self) -> usize {
        self.valency.iter().copied().max().unwrap_or(0)
    }

    /// Colors from fiber `from` to fiber `to`.
    pub fn colors_between(&self, from: u32, to: u32) -> Vec<u32> {
        (0..self.rank() as u32)
            .filter(|&c| self.color_fibers[c as usize] == (from, to))
            .collect()
    }

    /// `c_{rs}^t`: for `(α, β) ∈ t`, the number of `γ` with `(α, γ) ∈ r` and
    /// `(γ, β) ∈ s`.
    #[inline]
    pub fn c(&self, r: u32, s: u32, t: u32) -> u32 {
        self.tensor.get(&(r, s, t)).copied().unwrap_or(0)
    }

    pub fn intersection_number(&self, r: u32, s: u32, t: u32) -> Result<u32> {
        let k = self.rank();
        for x in [r, s, t] {
            if x as usize >= k {
                return Err(Error::ColorOutOfRange { color: x, rank: k });
            }
        }
        Ok(self.c(r, s, t))
    }

    /// Nonzero entries `((r, s, t), c_{rs}^t)`, sorted.
    pub fn tensor_entries(&self) -> Vec<((u32, u32, u32), u32)> {
        let mut v: Vec<_> = self.tensor.iter().map(|(&k, &c)| (k, c)).collect();
        v.sort_unstable();
        v
    }

    pub fn is_homogeneous(&self) -> bool {
        self.fibers.len() <= 1
    }

    /// Every fiber a singleton: each color is a single pair.
    pub fn is_complete(&self) -> bool {
        self.fibers.len() == self.n()
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.rank() as u32).all(|c| self.reflexive[c as usize] || self.star(c) != c)
    }

    /// Homogeneous with every relation `s ∪ s*`, `s` non-reflexive,
    /// connected.
    pub fn is_primitive(&self) -> bool {
        if !self.is_homogeneous() {
            return false;
        }
        let n = self.n();
        (0..self.rank() as u32)
            .filter(|&c| !self.reflexive[c as usize])
            .all(|c| {
                let s = self.star(c);
                let mut seen = vec![false; n];
                seen[0] = true;
                let mut stack = vec![0u32];
                let mut count = 1;
                while let Some(a) = stack.pop() {
                    for b in 0..n as u32 {
                        let x = self.color(a, b);
                        if !seen[b as usize] && (x == c || x == s) {
                            seen[b as usize] = true;
                            count += 1;
                            stack.push(b);
                        }
                    }
                }
                count == n
            })
    }

    pub fn is_regular(&self) -> bool {
        self.is_homogeneous() && self.valency.iter().all(|&v| v == 1)
    }

    /// Points `α` with `|αr| ≤ 1` for every color `r`.
    pub fn regular_points(&self) -> Vec<u32> {
        let mut good = vec![true; self.fibers.len()];
        for c in 0..self.rank() {
            if self.valency[c] > 1 {
                good[self.color_fibers[c].0 as usize] = false;
            }
        }
        (0..self.n() as u32)
            .filter(|&a| good[self.fiber_of_point[a as usize] as usize])
            .collect()
    }

    pub fn structure_flags(&self) -> StructureFlags {
        StructureFlags {
            homogeneous: self.is_homogeneous(),
            antisymmetric: self.is_antisymmetric(),
            primitive: self.is_primitive(),
            regular: self.is_regular(),
            one_regular_points: self.regular_points(),
        }
    }

    /// Checks the symmetry identities of the intersection numbers over every
    /// fiber-compatible triple: `c_{r*s*}^{t*} = c_{sr}^t`,
    /// `|t| c_{rs}^{t*} = |r| c_{st}^{r*} = |s| c_{tr}^{s*}`, the valency
    /// form for homogeneous configurations, and `Σ_s c_{rs}^t = n_r`.
    pub fn verify_identities(&self) -> std::result::Result<(), String> {
        let k = self.rank() as u32;
        let nf = self.fibers.len() as u32;
        let mut between: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new(); nf as usize]; nf as usize];
        for c in 0..k {
            let (a, b) = self.color_fibers(c);
            between[a as usize][b as usize].push(c);
        }
        let homogeneous = self.is_homogeneous();
        for g in 0..nf as usize {
            for d in 0..nf as usize {
                for e in 0..nf as usize {
                    for &r in &between[g][d] {
                        for &s in &between[d][e] {
                            for &t in &between[g][e] {
                                let lhs = self.c(self.star(s), self.star(r), self.star(t));
                                if lhs != self.c(r, s, t) {
                                    return Err(format!(
                                        "c_{{s*r*}}^{{t*}} != c_{{rs}}^t for r={r} s={s} t={t}"
                                    ));
                                }
                            }
                            for &t in &between[e][g] {
                                let ts = self.star(t);
                                let (rs, ss) = (self.star(r), self.star(s));
                                let a = self.size(t) * self.c(r, s, ts) as usize;
                                let b = self.size(r) * self.c(s, t, rs) as usize;
                                let c = self.size(s) * self.c(t, r, ss) as usize;
                                if a != b || b != c {
                                    return Err(format!(
                                        "size identity fails for r={r} s={s} t={t}: {a} {b} {c}"
                                    ));
                                }
                                if homogeneous {
                                    let a = self.valency(t) * self.c(r, s, ts) as usize;
                                    let b = self.valency(r) * self.c(s, t, rs) as usize;
                                    let c = self.valency(s) * self.c(t, r, ss) as usize;
                                    if a != b || b != c {
                                        return Err(format!(
                                            "valency identity fails for r={r} s={s} t={t}"
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        for r in 0..k {
            let (g, d) = self.color_fibers(r);
            for e in 0..nf as usize {
                for &t in &between[g as usize][e] {
                    let sum: usize = between[d as usize][e]
                        .iter()
                        .map(|&s| self.c(r, s, t) as usize)
                        .sum();
                    if sum != self.valency(r) {
                        return Err(format!("row sum of c_{{{r}s}}^{t} is {sum}, not n_r"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Colors renumbered by (source fiber, target fiber, valency, first
    /// occurrence).
    pub fn canonical(&self) -> CoherentConfiguration {
        let reps = self.matrix.representatives();
        let n = self.n();
        let mut order: Vec<u32> = (0..self.rank() as u32).collect();
        order.sort_by_key(|&c| {
            let (a, b) = reps[c as usize];
            let (f, g) = self.color_fibers(c);
            (f, g, self.valency(c), a as usize * n + b as usize)
        });
        let mut new_id = vec![0u32; order.len()];
        for (i, &c) in order.iter().enumerate() {
            new_id[c as usize] = i as u32;
        }
        self.recolored(&new_id)
    }

    /// Renames colors by `new_id[old]`, which must be a bijection.
    pub fn recolored(&self, new_id: &[u32]) -> CoherentConfiguration {
        let k = self.rank();
        let colors: Vec<u32> = self.matrix.as_slice().iter().map(|&c| new_id[c as usize]).collect();
        let mut inv = vec![0u32; k];
        for (old, &new) in new_id.iter().enumerate() {
            inv[new as usize] = old as u32;
        }
        let tensor = self
            .tensor
            .iter()
            .map(|(&(r, s, t), &c)| ((new_id[r as usize], new_id[s as usize], new_id[t as usize]), c))
            .collect();
        CoherentConfiguration {
            matrix: ColorMatrix::new(self.n(), colors).expect("bijective recoloring"),
            star: inv.iter().map(|&o| new_id[self.star[o as usize] as usize]).collect(),
            reflexive: pick(&inv, &self.reflexive),
            fibers: self.fibers.clone(),
            fiber_of_point: self.fiber_of_point.clone(),
            color_fibers: pick(&inv, &self.color_fibers),
            sizes: pick(&inv, &self.sizes),
            valency: pick(&inv, &self.valency),
            tensor,
        }
    }

    /// The configuration transported along `f` (point `x` becomes `f(x)`),
    /// keeping color names.
    pub fn relabeled(&self, f: &Permutation) -> CoherentConfiguration {
        CoherentConfiguration::new(self.matrix.permuted(f)).expect("relabeling preserves coherence")
    }

    /// Whether every relation of `coarser` is a union of relations of
    /// `self`.
    pub fn refines(&self, coarser: &CoherentConfiguration) -> bool {
        self.matrix.refines(&coarser.matrix)
    }

    /// The colors whose union is the given relation, if it is one.
    pub fn colors_of_relation(&self, rel: impl Fn(u32, u32) -> bool) -> Option<Vec<u32>> {
        let k = self.rank();
        let mut state = vec![0u8; k]; // 0 unseen, 1 inside, 2 outside
        let n = self.n() as u32;
        for a in 0..n {
            for b in 0..n {
                let c = self.color(a, b) as usize;
                let want = if rel(a, b) { 1 } else { 2 };
                if state[c] == 0 {
                    state[c] = want;
                } else if state[c] != want {
                    return None;
                }
            }
        }
        Some((0..k as u32).filter(|&c| state[c as usize] == 1).collect())
    }
}

fn pick<T: Copy>(order: &[u32], v: &[T]) -> Vec<T> {
    order.iter().map(|&o| v[o as usize]).collect()
}
