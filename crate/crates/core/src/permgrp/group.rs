use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::Serialize;

use super::chain::StabChain;
use super::perm::Permutation;
use super::search::subgroup_search;
use crate::ccfg::ColorMatrix;
use crate::error::GroupError;

/// A permutation group given by generators, with a lazily built stabilizer
/// chain.
#[derive(Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FixStats {
    /// Largest number of fixed points of a non-identity element.
    pub fix_max: usize,
    /// Total number of fixed points over all non-identity elements.
    pub fix_sum: u64,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(PermutationGroup {
            degree,
            generators: gens,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup {
            degree,
            generators: Vec::new(),
            chain: OnceLock::new(),
        }
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            let cycle: Vec<u32> = (0..degree as u32).collect();
            gens.push(Permutation::from_cycles(degree, &[cycle]).unwrap());
            gens.push(Permutation::transposition(degree, 0, 1));
        }
        let g = PermutationGroup::new(degree, gens).unwrap();
        let order: Vec<u32> = (0..degree as u32).collect();
        let _ = g.chain.set(StabChain::symmetric(degree, &order));
        g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Non-identity generators; empty for the trivial group.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::new(self.degree, &self.generators, &[]))
    }

    /// A fresh chain whose base begins with `prefix`.
    pub fn chain_with_base(&self, prefix: &[u32]) -> StabChain {
        StabChain::new(self.degree, &self.generators, prefix)
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn is_odd_order(&self) -> bool {
        self.order().bit(0)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.chain().contains(p)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// Orbits on an invariant subset, each sorted, ordered by least point.
    pub fn orbits(&self, domain: &[u32]) -> Result<Vec<Vec<u32>>, GroupError> {
        let n = self.degree;
        let mut inside = vec![false; n];
        for &x in domain {
            if x as usize >= n {
                return Err(GroupError::PointOutOfRange { point: x, degree: n });
            }
            inside[x as usize] = true;
        }
        for (gi, g) in self.generators.iter().enumerate() {
            if let Some(&x) = domain.iter().find(|&&x| !inside[g.image(x) as usize]) {
                return Err(GroupError::DomainNotInvariant {
                    point: x,
                    generator: gi,
                });
            }
        }
        let mut sorted: Vec<u32> = domain.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for &x in &sorted {
            if seen[x as usize] {
                continue;
            }
            seen[x as usize] = true;
            let mut orbit = vec![x];
            let mut head = 0;
            while head < orbit.len() {
                let y = orbit[head];
                head += 1;
                for g in &self.generators {
                    let z = g.image(y);
                    if !seen[z as usize] {
                        seen[z as usize] = true;
                        orbit.push(z);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        Ok(out)
    }

    pub fn all_orbits(&self) -> Vec<Vec<u32>> {
        let all: Vec<u32> = (0..self.degree as u32).collect();
        self.orbits(&all).expect("the full point set is invariant")
    }

    pub fn is_transitive(&self) -> bool {
        self.all_orbits().len() <= 1
    }

    /// Orbits on ordered pairs, colored in first-encounter row-major order.
    pub fn pair_orbits(&self) -> ColorMatrix {
        let n = self.degree;
        let mut parent: Vec<u32> = (0..(n * n) as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                let up = parent[parent[x as usize] as usize];
                parent[x as usize] = up;
                x = up;
            }
            x
        }
        for g in &self.generators {
            for i in 0..n as u32 {
                let gi = g.image(i) as usize;
                for j in 0..n as u32 {
                    let a = find(&mut parent, i * n as u32 + j);
                    let b = find(&mut parent, (gi * n) as u32 + g.image(j));
                    if a != b {
                        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                        parent[hi as usize] = lo;
                    }
                }
            }
        }
        let roots: Vec<u32> = (0..(n * n) as u32).map(|x| find(&mut parent, x)).collect();
        ColorMatrix::from_labels(n, &roots)
    }

    /// All elements, refusing groups larger than `bound`.
    pub fn elements(&self, bound: u64) -> Result<Vec<Permutation>, GroupError> {
        let order = self.order();
        if order > BigUint::from(bound) {
            return Err(GroupError::GroupTooLarge {
                order: order.to_string(),
                bound,
            });
        }
        let mut out = Vec::new();
        self.chain().for_each_element(|g| out.push(g.clone()));
        Ok(out)
    }

    /// Fixed-point statistics over the non-identity elements.
    pub fn fix_stats(&self, bound: u64) -> Result<FixStats, GroupError> {
        let order = self.order();
        if order > BigUint::from(bound) {
            return Err(GroupError::GroupTooLarge {
                order: order.to_string(),
                bound,
            });
        }
        let mut stats = FixStats {
            fix_max: 0,
            fix_sum: 0,
        };
        self.chain().for_each_element(|g| {
            if !g.is_identity() {
                let f = g.fixed_points();
                stats.fix_max = stats.fix_max.max(f);
                stats.fix_sum += f as u64;
            }
        });
        Ok(stats)
    }

    /// `{g in G : Δ^g = Δ}`.
    pub fn setwise_stabilizer(&self, delta: &[u32]) -> PermutationGroup {
        let n = self.degree;
        let mut inside = vec![false; n];
        for &x in delta {
            inside[x as usize] = true;
        }
        let mut prefix: Vec<u32> = delta.to_vec();
        prefix.sort_unstable();
        prefix.dedup();
        let chain = self.chain_with_base(&prefix);
        let base = chain.base();
        let gens = subgroup_search(
            &chain,
            |j, images| inside[base[j] as usize] == inside[images[j] as usize],
            |g| delta.iter().all(|&x| inside[g.image(x) as usize]),
        );
        PermutationGroup::new(n, gens).unwrap()
    }

    /// The group acting on disjoint union `Ω1 ⊔ Ω2`, second factor shifted by
    /// `self.degree()`.
    pub fn direct_product(&self, other: &PermutationGroup) -> PermutationGroup {
        let n1 = self.degree;
        let n = n1 + other.degree;
        let mut gens = Vec::new();
        for g in &self.generators {
            let mut img: Vec<u32> = g.images().to_vec();
            img.extend(n1 as u32..n as u32);
            gens.push(Permutation::from_images(img).unwrap());
        }
        for g in &other.generators {
            let mut img: Vec<u32> = (0..n1 as u32).collect();
            img.extend(g.images().iter().map(|&x| x + n1 as u32));
            gens.push(Permutation::from_images(img).unwrap());
        }
        PermutationGroup::new(n, gens).unwrap()
    }

    /// The same group acting on points relabeled by `f` (point `x` becomes
    /// `f(x)`).
    pub fn relabeled(&self, f: &Permutation) -> PermutationGroup {
        let gens = self.generators.iter().map(|g| g.conjugate_by(f)).collect();
        PermutationGroup::new(self.degree, gens).unwrap()
    }

    /// The action on an invariant set; point `points[i]` becomes `i`.
    pub fn restricted(&self, points: &[u32]) -> Result<PermutationGroup, GroupError> {
        let n = self.degree;
        let mut index = vec![u32::MAX; n];
        for (i, &x) in points.iter().enumerate() {
            index[x as usize] = i as u32;
        }
        let mut gens = Vec::new();
        for (gi, g) in self.generators.iter().enumerate() {
            let mut img = Vec::with_capacity(points.len());
            for &x in points {
                let y = index[g.image(x) as usize];
                if y == u32::MAX {
                    return Err(GroupError::DomainNotInvariant {
                        point: x,
                        generator: gi,
                    });
                }
                img.push(y);
            }
            gens.push(Permutation::from_images(img)?);
        }
        PermutationGroup::new(points.len(), gens)
    }

    /// Whether every element of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermutationGroup) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }
}

/// Serialized as degree, order (a decimal string) and generator images.
impl Serialize for PermutationGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PermutationGroup", 3)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("order", &self.order().to_string())?;
        st.serialize_field("generators", &self.generators)?;
        st.end()
    }
}

impl std::fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PermutationGroup(degree={}, gens=[", self.degree)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}

/// Base order for searching automorphisms of a coloring: repeatedly take
/// forced points, otherwise the least point in the smallest class of points
/// that agree on their colors with every point already chosen.
pub(crate) fn refining_order(m: &ColorMatrix) -> Vec<u32> {
    let n = m.n();
    let mut chosen: Vec<u32> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    while chosen.len() < n {
        let mut classes: std::collections::HashMap<Vec<u32>, Vec<u32>> = Default::default();
        for x in 0..n as u32 {
            if used[x as usize] {
                continue;
            }
            let mut sig = Vec::with_capacity(2 * chosen.len() + 2);
            sig.push(m.get(x, x));
            for &c in &chosen {
                sig.push(m.get(c, x));
                sig.push(m.get(x, c));
            }
            classes.entry(sig).or_default().push(x);
        }
        let mut best: Option<&Vec<u32>> = None;
        for class in classes.values() {
            best = match best {
                None => Some(class),
                Some(b) if (class.len(), class[0]) < (b.len(), b[0]) => Some(class),
                keep => keep,
            };
        }
        let x = best.unwrap()[0];
        used[x as usize] = true;
        chosen.push(x);
    }
    chosen
}

/// Color-preserving permutations: `Aut(m)`, or `Aut(m) ∩ G` when `group` is
/// given. Candidate images are pruned by the colors of pairs with every
/// earlier base point.
pub fn color_aut_backtrack(
    m: &ColorMatrix,
    group: Option<&PermutationGroup>,
) -> Result<PermutationGroup, GroupError> {
    let n = m.n();
    let order = refining_order(m);
    let chain = match group {
        Some(g) => {
            if g.degree() != n {
                return Err(GroupError::DegreeMismatch {
                    expected: n,
                    found: g.degree(),
                });
            }
            g.chain_with_base(&order)
        }
        None => StabChain::symmetric(n, &order),
    };
    let base = chain.base();
    let gens = subgroup_search(
        &chain,
        |j, images| {
            let b = base[j];
            let x = images[j];
            if m.get(b, b) != m.get(x, x) {
                return false;
            }
            base[..j].iter().zip(&images[..j]).all(|(&c, &y)| {
                m.get(c, b) == m.get(y, x) && m.get(b, c) == m.get(x, y)
            })
        },
        |g| m.is_automorphism(g),
    );
    PermutationGroup::new(n, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn affine(p: u32, a: u32, b: u32) -> Permutation {
        Permutation::from_images((0..p).map(|x| (a * x + b) % p).collect()).unwrap()
    }

    fn frobenius21() -> PermutationGroup {
        PermutationGroup::new(7, vec![affine(7, 1, 1), affine(7, 2, 0)]).unwrap()
    }

    #[test]
    fn frobenius_order_and_membership() {
        let g = frobenius21();
        assert_eq!(g.order(), BigUint::from(21u32));
        assert!(g.contains(&affine(7, 4, 3)));
        assert!(!g.contains(&affine(7, 3, 0)));
        assert!(g.is_odd_order());
    }

    #[test]
    fn orbits_and_invariance() {
        let g = PermutationGroup::new(4, vec![Permutation::from_cycles(4, &[vec![0, 1, 2]]).unwrap()]).unwrap();
        assert_eq!(g.orbits(&[0, 1, 2]).unwrap(), vec![vec![0, 1, 2]]);
        assert!(matches!(
            g.orbits(&[0, 1]),
            Err(GroupError::DomainNotInvariant { .. })
        ));
        assert_eq!(g.all_orbits(), vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn pair_orbits_of_frobenius() {
        let m = frobenius21().pair_orbits();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.color_sizes(), vec![7, 21, 21]);
    }

    #[test]
    fn setwise_stabilizers() {
        let s3 = PermutationGroup::symmetric(3);
        assert_eq!(s3.setwise_stabilizer(&[0]).order(), BigUint::from(2u32));
        let f = frobenius21();
        assert_eq!(f.setwise_stabilizer(&[0]).order(), BigUint::from(3u32));
        assert_eq!(f.setwise_stabilizer(&[0, 1, 2, 3, 4, 5, 6]).order(), BigUint::from(21u32));
    }

    #[test]
    fn fix_statistics() {
        let mult = PermutationGroup::new(7, vec![affine(7, 2, 0)]).unwrap();
        assert_eq!(
            mult.fix_stats(100).unwrap(),
            FixStats {
                fix_max: 1,
                fix_sum: 2
            }
        );
        assert_eq!(
            PermutationGroup::trivial(3).fix_stats(1).unwrap(),
            FixStats {
                fix_max: 0,
                fix_sum: 0
            }
        );
        assert!(frobenius21().fix_stats(10).is_err());
    }

    #[test]
    fn automorphisms_of_paley7() {
        let m = frobenius21().pair_orbits();
        let aut = color_aut_backtrack(&m, None).unwrap();
        assert_eq!(aut.order(), BigUint::from(21u32));
        let z3 = PermutationGroup::new(3, vec![affine(3, 1, 1)]).unwrap().pair_orbits();
        let s3 = PermutationGroup::symmetric(3);
        assert_eq!(color_aut_backtrack(&z3, Some(&s3)).unwrap().order(), BigUint::from(3u32));
        let complete = ColorMatrix::discrete(3);
        assert!(color_aut_backtrack(&complete, None).unwrap().is_trivial());
    }
}
