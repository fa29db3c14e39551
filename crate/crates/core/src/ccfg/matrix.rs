use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::permgrp::Permutation;

/// A partition of `Ω²` given by an `n × n` matrix of color ids `0..k`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ColorMatrix {
    n: usize,
    k: usize,
    colors: Vec<u32>,
}

impl ColorMatrix {
    /// Row-major colors; ids must be exactly `0..k` with every id used.
    pub fn new(n: usize, colors: Vec<u32>) -> Result<Self> {
        if colors.len() != n * n {
            return Err(Error::MalformedMatrix(format!(
                "expected {} entries, found {}",
                n * n,
                colors.len()
            )));
        }
        let k = colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut used = vec![false; k];
        for &c in &colors {
            used[c as usize] = true;
        }
        if let Some(missing) = used.iter().position(|u| !u) {
            return Err(Error::MalformedMatrix(format!(
                "color ids are not contiguous: {missing} is unused"
            )));
        }
        Ok(ColorMatrix { n, k, colors })
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::MalformedMatrix(format!("row {bad} does not have {n} entries")));
        }
        Self::new(n, rows.concat())
    }

    /// Renumbers arbitrary labels to `0..k` in first-encounter order.
    pub fn from_labels<T: Eq + std::hash::Hash + Clone>(n: usize, labels: &[T]) -> Self {
        assert_eq!(labels.len(), n * n);
        let mut ids: HashMap<T, u32> = HashMap::new();
        let mut colors = Vec::with_capacity(n * n);
        for l in labels {
            let next = ids.len() as u32;
            colors.push(*ids.entry(l.clone()).or_insert(next));
        }
        ColorMatrix {
            n,
            k: ids.len(),
            colors,
        }
    }

    pub fn from_fn<T: Eq + std::hash::Hash + Clone>(n: usize, f: impl Fn(u32, u32) -> T) -> Self {
        let mut labels = Vec::with_capacity(n * n);
        for i in 0..n as u32 {
            for j in 0..n as u32 {
                labels.push(f(i, j));
            }
        }
        Self::from_labels(n, &labels)
    }

    /// Diagonal in one color, everything else in another.
    pub fn trivial(n: usize) -> Self {
        Self::from_fn(n, |i, j| i == j)
    }

    /// Every pair in its own color.
    pub fn discrete(n: usize) -> Self {
        Self::from_fn(n, |i, j| (i, j))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of colors.
    #[inline]
    pub fn rank(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, i: u32, j: u32) -> u32 {
        self.colors[i as usize * self.n + j as usize]
    }

    pub fn row(&self, i: u32) -> &[u32] {
        let s = i as usize * self.n;
        &self.colors[s..s + self.n]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.colors
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.colors.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    /// Number of pairs carrying each color.
    pub fn color_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.k];
        for &c in &self.colors {
            sizes[c as usize] += 1;
        }
        sizes
    }

    pub fn pairs_of(&self, color: u32) -> Vec<(u32, u32)> {
        let n = self.n;
        self.colors
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == color)
            .map(|(idx, _)| ((idx / n) as u32, (idx % n) as u32))
            .collect()
    }

    /// First pair (row-major) of each color.
    pub fn representatives(&self) -> Vec<(u32, u32)> {
        let mut reps = vec![(u32::MAX, u32::MAX); self.k];
        for (idx, &c) in self.colors.iter().enumerate().rev() {
            reps[c as usize] = ((idx / self.n) as u32, (idx % self.n) as u32);
        }
        reps
    }

    /// Renumbers colors in first-encounter order.
    pub fn normalized(&self) -> ColorMatrix {
        Self::from_labels(self.n, &self.colors)
    }

    /// Same partition of `Ω²`, ignoring color names.
    pub fn same_partition(&self, other: &ColorMatrix) -> bool {
        self.n == other.n && self.k == other.k && self.normalized().colors == other.normalized().colors
    }

    /// Every color of `self` lies inside a single color of `coarser`.
    pub fn refines(&self, coarser: &ColorMatrix) -> bool {
        if self.n != coarser.n {
            return false;
        }
        let mut map = vec![u32::MAX; self.k];
        for (a, b) in self.colors.iter().zip(&coarser.colors) {
            let slot = &mut map[*a as usize];
            if *slot == u32::MAX {
                *slot = *b;
            } else if *slot != *b {
                return false;
            }
        }
        true
    }

    /// Applies `colors[i][j] -> colors[f(i)][f(j)]`, i.e. returns the matrix
    /// `M'` with `M'(f(i), f(j)) = M(i, j)`.
    pub fn permuted(&self, f: &Permutation) -> ColorMatrix {
        let n = self.n;
        let mut colors = vec![0u32; n * n];
        for i in 0..n as u32 {
            let fi = f.image(i) as usize;
            for j in 0..n as u32 {
                colors[fi * n + f.image(j) as usize] = self.get(i, j);
            }
        }
        ColorMatrix { n, k: self.k, colors }
    }

    /// Whether `f` maps every color class onto itself.
    pub fn is_automorphism(&self, f: &Permutation) -> bool {
        let n = self.n as u32;
        (0..n).all(|i| {
            let fi = f.image(i);
            (0..n).all(|j| self.get(i, j) == self.get(fi, f.image(j)))
        })
    }

    /// Submatrix on the listed points (in that order), colors renumbered by
    /// first encounter.
    pub fn induced(&self, points: &[u32]) -> ColorMatrix {
        let m = points.len();
        let mut labels = Vec::with_capacity(m * m);
        for &a in points {
            for &b in points {
                labels.push(self.get(a, b));
            }
        }
        Self::from_labels(m, &labels)
    }
}

impl std::fmt::Debug for ColorMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ColorMatrix(n={}, k={})", self.n, self.k)?;
        for r in self.colors.chunks(self.n.max(1)) {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_gaps() {
        assert!(ColorMatrix::new(2, vec![0, 2, 2, 0]).is_err());
        assert!(ColorMatrix::new(2, vec![0, 1, 1]).is_err());
        let m = ColorMatrix::new(2, vec![0, 1, 1, 0]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn permuted_moves_pairs() {
        let m = ColorMatrix::from_rows(&[vec![0, 1, 2], vec![2, 0, 1], vec![1, 2, 0]]).unwrap();
        let f = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let p = m.permuted(&f);
        assert_eq!(p.get(1, 0), m.get(0, 1));
        assert!(!m.is_automorphism(&f));
        let rot = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        assert!(m.is_automorphism(&rot));
        assert_eq!(m.permuted(&rot), m);
    }

    #[test]
    fn refinement_order() {
        let fine = ColorMatrix::discrete(3);
        let coarse = ColorMatrix::trivial(3);
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert!(coarse.same_partition(&ColorMatrix::from_fn(3, |i, j| i != j)));
    }
}
