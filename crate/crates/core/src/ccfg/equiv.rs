use std::collections::BTreeSet;

use serde::Serialize;

use super::{CoherentConfiguration, ColorMatrix};
use crate::error::{Error, Result};

/// An equivalence relation that is a union of basis relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EquivalenceRelation {
    /// Sorted colors whose union is the relation.
    pub colors: Vec<u32>,
    /// Classes, each sorted, ordered by least point.
    pub classes: Vec<Vec<u32>>,
    /// Sorted points covered by the relation.
    pub support: Vec<u32>,
}

impl EquivalenceRelation {
    /// Builds the relation from a color set, checking that it is an
    /// equivalence on its support.
    pub fn from_colors(x: &CoherentConfiguration, colors: &[u32]) -> Result<Self> {
        let set: BTreeSet<u32> = colors.iter().copied().collect();
        if !is_equivalence_set(x, &set) {
            return Err(Error::NotEquivalence);
        }
        Ok(Self::from_closed_set(x, &set))
    }

    fn from_closed_set(x: &CoherentConfiguration, set: &BTreeSet<u32>) -> Self {
        let n = x.n();
        let mut inside = vec![false; x.rank()];
        for &c in set {
            inside[c as usize] = true;
        }
        let mut support_mask = vec![false; n];
        for &c in set {
            for &a in &x.fibers()[x.color_fibers(c).0 as usize] {
                support_mask[a as usize] = true;
            }
        }
        let support: Vec<u32> = (0..n as u32).filter(|&a| support_mask[a as usize]).collect();
        let mut assigned = vec![false; n];
        let mut classes = Vec::new();
        for &a in &support {
            if assigned[a as usize] {
                continue;
            }
            let class: Vec<u32> = (0..n as u32)
                .filter(|&b| inside[x.color(a, b) as usize])
                .collect();
            for &b in &class {
                assigned[b as usize] = true;
            }
            classes.push(class);
        }
        EquivalenceRelation {
            colors: set.iter().copied().collect(),
            classes,
            support,
        }
    }

    pub fn contains_pair(&self, x: &CoherentConfiguration, a: u32, b: u32) -> bool {
        self.colors.binary_search(&x.color(a, b)).is_ok()
    }

    /// Index of the class containing each point, `u32::MAX` off the support.
    pub fn class_index(&self, n: usize) -> Vec<u32> {
        let mut idx = vec![u32::MAX; n];
        for (i, class) in self.classes.iter().enumerate() {
            for &a in class {
                idx[a as usize] = i as u32;
            }
        }
        idx
    }

    pub fn is_subset_of(&self, other: &EquivalenceRelation) -> bool {
        self.colors.iter().all(|c| other.colors.binary_search(c).is_ok())
    }
}

/// Symmetric, transitive, and reflexive on the union of the source fibers.
fn is_equivalence_set(x: &CoherentConfiguration, set: &BTreeSet<u32>) -> bool {
    if set.is_empty() {
        return false;
    }
    for &r in set {
        if !set.contains(&x.star(r)) {
            return false;
        }
        let (f, _) = x.color_fibers(r);
        if !set.contains(&x.fiber_color(f)) {
            return false;
        }
    }
    closure(x, set).len() == set.len()
}

/// Smallest color set containing `seed` that is closed under `*`, under
/// products, and contains the diagonal of every fiber it touches.
fn closure(x: &CoherentConfiguration, seed: &BTreeSet<u32>) -> BTreeSet<u32> {
    let mut set = seed.clone();
    loop {
        let mut add: Vec<u32> = Vec::new();
        for &r in &set {
            let s = x.star(r);
            if !set.contains(&s) {
                add.push(s);
            }
            let (f, g) = x.color_fibers(r);
            for d in [x.fiber_color(f), x.fiber_color(g)] {
                if !set.contains(&d) {
                    add.push(d);
                }
            }
        }
        for &r in &set {
            let (_, mid) = x.color_fibers(r);
            for &s in &set {
                if x.color_fibers(s).0 != mid {
                    continue;
                }
                let (src, _) = x.color_fibers(r);
                let (_, dst) = x.color_fibers(s);
                for t in x.colors_between(src, dst) {
                    if !set.contains(&t) && x.c(r, s, t) > 0 {
                        add.push(t);
                    }
                }
            }
        }
        if add.is_empty() {
            return set;
        }
        set.extend(add);
    }
}

/// Above this many non-reflexive `*`-classes the lattice of joins replaces
/// the exhaustive subset scan.
const EXHAUSTIVE_LIMIT: usize = 16;

/// Equivalences of `x` whose support is exactly the union of `fibers`.
fn equivalences_on(
    x: &CoherentConfiguration,
    fibers: &[u32],
    exhaustive_limit: usize,
) -> Vec<EquivalenceRelation> {
    let in_scope = |c: u32| {
        let (f, g) = x.color_fibers(c);
        fibers.contains(&f) && fibers.contains(&g)
    };
    let bottom: BTreeSet<u32> = fibers.iter().map(|&f| x.fiber_color(f)).collect();
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for c in 0..x.rank() as u32 {
        if in_scope(c) && !x.is_reflexive(c) && c <= x.star(c) {
            pairs.push((c, x.star(c)));
        }
    }
    let mut found: BTreeSet<Vec<u32>> = BTreeSet::new();
    if pairs.len() <= exhaustive_limit {
        for mask in 0u32..(1u32 << pairs.len()) {
            let mut set = bottom.clone();
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    set.insert(a);
                    set.insert(b);
                }
            }
            if closure(x, &set).len() == set.len() {
                found.insert(set.into_iter().collect());
            }
        }
    } else {
        let mut layer: Vec<BTreeSet<u32>> = vec![bottom.clone()];
        for &(a, b) in &pairs {
            let mut seed = bottom.clone();
            seed.insert(a);
            seed.insert(b);
            layer.push(closure(x, &seed));
        }
        let atoms = layer.clone();
        let mut all: BTreeSet<Vec<u32>> = layer.iter().map(|s| s.iter().copied().collect()).collect();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for e in &layer {
                for a in &atoms {
                    let joined = closure(x, &e.union(a).copied().collect());
                    if all.insert(joined.iter().copied().collect()) {
                        next.push(joined);
                    }
                }
            }
            layer = next;
        }
        found = all;
    }
    let mut out: Vec<EquivalenceRelation> = found
        .into_iter()
        .map(|v| EquivalenceRelation::from_closed_set(x, &v.into_iter().collect()))
        .collect();
    out.sort_by(|a, b| (a.colors.len(), &a.colors).cmp(&(b.colors.len(), &b.colors)));
    out
}

/// All equivalence relations with full support; for an inhomogeneous
/// configuration, followed by those supported on each single fiber.
pub fn equivalence_relations(x: &CoherentConfiguration) -> Vec<EquivalenceRelation> {
    let all: Vec<u32> = (0..x.fibers().len() as u32).collect();
    let mut out = equivalences_on(x, &all, EXHAUSTIVE_LIMIT);
    if !x.is_homogeneous() {
        for f in all {
            out.extend(equivalences_on(x, &[f], EXHAUSTIVE_LIMIT));
        }
    }
    out
}

/// A maximal chain `1_Ω = e_0 ⊂ e_1 ⊂ … ⊂ e_s = Ω²`, stepping each time to
/// the cover with the smallest classes.
pub fn equivalence_chain(x: &CoherentConfiguration) -> Result<Vec<EquivalenceRelation>> {
    if !x.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let all = equivalence_relations(x);
    let mut chain = vec![all[0].clone()];
    loop {
        let cur = chain.last().unwrap();
        if cur.colors.len() == x.rank() {
            break;
        }
        let above: Vec<&EquivalenceRelation> = all
            .iter()
            .filter(|e| e.colors.len() > cur.colors.len() && cur.is_subset_of(e))
            .collect();
        let covers = above.iter().filter(|e| {
            !above
                .iter()
                .any(|f| f.colors.len() < e.colors.len() && f.is_subset_of(e))
        });
        let next = covers
            .min_by(|a, b| {
                (a.classes[0].len(), &a.colors).cmp(&(b.classes[0].len(), &b.colors))
            })
            .expect("Ω² lies above every equivalence");
        chain.push((*next).clone());
    }
    Ok(chain)
}

/// `X_Γ` together with the correspondence to `X`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub config: CoherentConfiguration,
    /// `points[i]` is the point of `X` that became `i`.
    pub points: Vec<u32>,
    /// `color_origin[c]` is the color of `X` that `c` came from.
    pub color_origin: Vec<u32>,
}

/// Whether `gamma` (sorted) is a union of fibers.
fn is_fiber_union(x: &CoherentConfiguration, gamma: &[u32]) -> bool {
    let mut inside = vec![false; x.n()];
    for &a in gamma {
        inside[a as usize] = true;
    }
    x.fibers()
        .iter()
        .all(|f| f.iter().all(|&a| inside[a as usize]) || f.iter().all(|&a| !inside[a as usize]))
}

/// Whether `gamma` is a class of some equivalence in `S^∪`: the colors met
/// by `Γ²` must form an equivalence having `Γ` as a class.
pub fn is_equivalence_class(x: &CoherentConfiguration, gamma: &[u32]) -> bool {
    if gamma.is_empty() {
        return false;
    }
    let set: BTreeSet<u32> = gamma
        .iter()
        .flat_map(|&a| gamma.iter().map(move |&b| (a, b)))
        .map(|(a, b)| x.color(a, b))
        .collect();
    if !is_equivalence_set(x, &set) {
        return false;
    }
    let a = gamma[0];
    let class: Vec<u32> = (0..x.n() as u32)
        .filter(|&b| set.contains(&x.color(a, b)))
        .collect();
    class.len() == gamma.len()
}

/// Restriction to a union of fibers or to a class of an equivalence relation.
pub fn restriction(x: &CoherentConfiguration, gamma: &[u32]) -> Result<Restriction> {
    let mut points: Vec<u32> = gamma.to_vec();
    points.sort_unstable();
    points.dedup();
    if let Some(&p) = points.iter().find(|&&p| p as usize >= x.n()) {
        return Err(Error::PointOutOfRange { point: p, degree: x.n() });
    }
    if points.is_empty() || !(is_fiber_union(x, &points) || is_equivalence_class(x, &points)) {
        return Err(Error::NotFiberUnion);
    }
    Ok(restriction_unchecked(x, &points))
}

pub(crate) fn restriction_unchecked(x: &CoherentConfiguration, points: &[u32]) -> Restriction {
    let m = points.len();
    let mut labels = Vec::with_capacity(m * m);
    for &a in points {
        for &b in points {
            labels.push(x.color(a, b));
        }
    }
    let matrix = ColorMatrix::from_labels(m, &labels);
    let mut color_origin = vec![0u32; matrix.rank()];
    for (new, old) in matrix.as_slice().iter().zip(&labels) {
        color_origin[*new as usize] = *old;
    }
    let config = CoherentConfiguration::new(matrix).expect("restriction of a coherent configuration");
    Restriction {
        config,
        points: points.to_vec(),
        color_origin,
    }
}

/// `X_{Ω/e}` together with the class list and color correspondence.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub config: CoherentConfiguration,
    pub classes: Vec<Vec<u32>>,
    /// For each quotient color, the colors of `X` meeting a pair of classes
    /// in that color.
    pub color_sets: Vec<Vec<u32>>,
}

pub fn quotient(x: &CoherentConfiguration, e: &EquivalenceRelation) -> Result<Quotient> {
    let set: BTreeSet<u32> = e.colors.iter().copied().collect();
    if !is_equivalence_set(x, &set) || e.support.len() != x.n() {
        return Err(Error::NotEquivalence);
    }
    let q = e.classes.len();
    let mut labels: Vec<Vec<u32>> = Vec::with_capacity(q * q);
    for g in &e.classes {
        for d in &e.classes {
            let met: BTreeSet<u32> = g
                .iter()
                .flat_map(|&a| d.iter().map(move |&b| (a, b)))
                .map(|(a, b)| x.color(a, b))
                .collect();
            labels.push(met.into_iter().collect());
        }
    }
    let matrix = ColorMatrix::from_labels(q, &labels);
    let mut color_sets = vec![Vec::new(); matrix.rank()];
    for (new, set) in matrix.as_slice().iter().zip(&labels) {
        color_sets[*new as usize] = set.clone();
    }
    let config = CoherentConfiguration::new(matrix)?;
    Ok(Quotient {
        config,
        classes: e.classes.clone(),
        color_sets,
    })
}
