use serde::Serialize;

use crate::error::{Error, Result};
use crate::permgrp::Permutation;
use crate::wl::{Relation, RelationSet};

/// A tournament whose arcs carry colors `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tournament {
    n: usize,
    k: usize,
    /// `arc[i * n + j]` is the color of the arc `i -> j`, if present.
    #[serde(skip)]
    arc: Vec<Option<u32>>,
}

impl Tournament {
    /// `arcs` lists `(tail, head, color)`; exactly one arc per unordered
    /// pair, colors contiguous from 0.
    pub fn new(n: usize, arcs: &[(u32, u32, u32)]) -> Result<Self> {
        let mut arc = vec![None; n * n];
        let mut k = 0usize;
        for &(i, j, c) in arcs {
            if i as usize >= n || j as usize >= n {
                return Err(Error::NotATournament(format!("arc {i} -> {j} leaves 0..{n}")));
            }
            if i == j {
                return Err(Error::NotATournament(format!("loop at {i}")));
            }
            if arc[i as usize * n + j as usize].is_some() || arc[j as usize * n + i as usize].is_some() {
                return Err(Error::NotATournament(format!("pair {{{i}, {j}}} has two arcs")));
            }
            arc[i as usize * n + j as usize] = Some(c);
            k = k.max(c as usize + 1);
        }
        for i in 0..n {
            for j in i + 1..n {
                if arc[i * n + j].is_none() && arc[j * n + i].is_none() {
                    return Err(Error::NotATournament(format!("pair {{{i}, {j}}} has no arc")));
                }
            }
        }
        let mut used = vec![false; k];
        for c in arc.iter().flatten() {
            used[*c as usize] = true;
        }
        if let Some(c) = used.iter().position(|u| !u) {
            return Err(Error::NotATournament(format!("color {c} is unused")));
        }
        Ok(Tournament { n, k, arc })
    }

    /// Uncolored tournament from an orientation predicate on `i < j`.
    pub fn from_orientation(n: usize, forward: impl Fn(u32, u32) -> bool) -> Self {
        let mut arcs = Vec::new();
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                arcs.push(if forward(i, j) { (i, j, 0) } else { (j, i, 0) });
            }
        }
        Tournament::new(n, &arcs).expect("one arc per pair")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of arc colors.
    pub fn colors(&self) -> usize {
        self.k
    }

    pub fn arc_color(&self, i: u32, j: u32) -> Option<u32> {
        self.arc[i as usize * self.n + j as usize]
    }

    pub fn has_arc(&self, i: u32, j: u32) -> bool {
        self.arc_color(i, j).is_some()
    }

    /// Arcs `(tail, head, color)` in row-major order.
    pub fn arcs(&self) -> Vec<(u32, u32, u32)> {
        let n = self.n as u32;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if let Some(c) = self.arc_color(i, j) {
                    out.push((i, j, c));
                }
            }
        }
        out
    }

    pub fn out_degree(&self, i: u32) -> usize {
        (0..self.n as u32).filter(|&j| self.has_arc(i, j)).count()
    }

    /// The color classes of the arc set, named by color.
    pub fn color_classes(&self) -> RelationSet {
        let mut relations: Vec<Relation> = (0..self.k)
            .map(|c| Relation {
                name: format!("c{c}"),
                pairs: Vec::new(),
            })
            .collect();
        for (i, j, c) in self.arcs() {
            relations[c as usize].pairs.push((i, j));
        }
        RelationSet { n: self.n, relations }
    }

    /// The tournament with vertex `x` renamed `f(x)`.
    pub fn relabeled(&self, f: &Permutation) -> Tournament {
        let arcs: Vec<_> = self
            .arcs()
            .into_iter()
            .map(|(i, j, c)| (f.image(i), f.image(j), c))
            .collect();
        Tournament::new(self.n, &arcs).expect("relabeling keeps a tournament")
    }

    /// The tournament with the arc between `i` and `j` turned around.
    pub fn with_arc_reversed(&self, i: u32, j: u32) -> Tournament {
        let arcs: Vec<_> = self
            .arcs()
            .into_iter()
            .map(|(a, b, c)| if (a, b) == (i, j) || (a, b) == (j, i) { (b, a, c) } else { (a, b, c) })
            .collect();
        Tournament::new(self.n, &arcs).expect("reversal keeps a tournament")
    }

    /// Whether `f` maps every arc to an arc of the same color in `other`.
    pub fn is_isomorphism(&self, other: &Tournament, f: &Permutation) -> bool {
        self.n == other.n
            && self
                .arcs()
                .into_iter()
                .all(|(i, j, c)| other.arc_color(f.image(i), f.image(j)) == Some(c))
    }
}
