use serde::Serialize;

use super::closure::RelationSet;
use super::engine::{rank_labels, refine_together};
use crate::ccfg::{CoherentConfiguration, ColorMatrix};
use crate::error::{Error, Result};

/// A color bijection between two configurations preserving every
/// intersection number.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AlgebraicIsomorphism {
    map: Vec<u32>,
}

impl AlgebraicIsomorphism {
    /// Checks `c_{rs}^t = c_{φ(r)φ(s)}^{φ(t)}` for all triples together with
    /// star, reflexivity and valency preservation.
    pub fn new(
        source: &CoherentConfiguration,
        target: &CoherentConfiguration,
        map: Vec<u32>,
    ) -> Result<Self> {
        let k = source.rank();
        let bad = |msg: String| Err(Error::InvalidAlgebraicIso(msg));
        if target.rank() != k || map.len() != k {
            return bad(format!(
                "ranks {} and {} with a map of length {}",
                k,
                target.rank(),
                map.len()
            ));
        }
        let mut hit = vec![false; k];
        for &c in &map {
            if c as usize >= k || hit[c as usize] {
                return bad("map is not a bijection of colors".into());
            }
            hit[c as usize] = true;
        }
        for c in 0..k as u32 {
            let d = map[c as usize];
            if source.is_reflexive(c) != target.is_reflexive(d)
                || map[source.star(c) as usize] != target.star(d)
                || source.valency(c) != target.valency(d)
                || source.size(c) != target.size(d)
            {
                return bad(format!("color {c} and its image {d} differ in type"));
            }
        }
        let entries = source.tensor_entries();
        if entries.len() != target.tensor_entries().len() {
            return bad("different numbers of nonzero intersection numbers".into());
        }
        for ((r, s, t), v) in entries {
            let w = target.c(map[r as usize], map[s as usize], map[t as usize]);
            if w != v {
                return bad(format!("c_{{{r}{s}}}^{t} = {v} but its image is {w}"));
            }
        }
        Ok(AlgebraicIsomorphism { map })
    }

    pub fn identity(k: usize) -> Self {
        AlgebraicIsomorphism {
            map: (0..k as u32).collect(),
        }
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, c: u32) -> u32 {
        self.map[c as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &c)| i as u32 == c)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.map.len()];
        for (i, &c) in self.map.iter().enumerate() {
            inv[c as usize] = i as u32;
        }
        AlgebraicIsomorphism { map: inv }
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &AlgebraicIsomorphism) -> Self {
        AlgebraicIsomorphism {
            map: self.map.iter().map(|&c| next.apply(c)).collect(),
        }
    }
}

/// Outcome of refining two relation lists in lockstep.
#[derive(Clone, Debug)]
pub enum Stabilization {
    /// Both closures with the extension `phi` of the given relation matching.
    Matched {
        source: CoherentConfiguration,
        target: CoherentConfiguration,
        phi: AlgebraicIsomorphism,
    },
    /// The color histograms differed after `round` refinement rounds.
    Refused { round: usize },
}

/// Decides whether the matching `psi` (relation `i` of `s1` to relation
/// `psi[i]` of `s2`) extends to an algebraic isomorphism of the closures, and
/// returns the extension when it does.
pub fn simultaneous_stabilization(
    s1: &RelationSet,
    s2: &RelationSet,
    psi: &[usize],
) -> Result<Stabilization> {
    if s1.relations.len() != s2.relations.len() {
        return Err(Error::SizeMismatch {
            left: s1.relations.len(),
            right: s2.relations.len(),
        });
    }
    if s1.n != s2.n {
        return Err(Error::SizeMismatch {
            left: s1.n,
            right: s2.n,
        });
    }
    let m = s1.relations.len();
    let mut hit = vec![false; m];
    if psi.len() != m || psi.iter().any(|&j| j >= m || std::mem::replace(&mut hit[j], true)) {
        return Err(Error::PreconditionViolated(
            "relation matching is not a bijection".into(),
        ));
    }
    // Reorder the second list so that relation i corresponds to relation i.
    let aligned = RelationSet {
        n: s2.n,
        relations: psi.iter().map(|&j| s2.relations[j].clone()).collect(),
    };
    let mut sides = rank_labels(&[s1.seed_labels()?, aligned.seed_labels()?]);
    Ok(match refine_together(s1.n, &mut sides) {
        Err(round) => Stabilization::Refused { round },
        Ok(_) => {
            let target = sides.pop().unwrap();
            let source = sides.pop().unwrap();
            let source = CoherentConfiguration::new(ColorMatrix::new(s1.n, source)?)?;
            let target = CoherentConfiguration::new(ColorMatrix::new(s1.n, target)?)?;
            let phi = AlgebraicIsomorphism::new(&source, &target, (0..source.rank() as u32).collect())?;
            Stabilization::Matched {
                source,
                target,
                phi,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wl::Relation;

    fn arcs(n: usize, pairs: Vec<(u32, u32)>) -> RelationSet {
        RelationSet {
            n,
            relations: vec![Relation {
                name: "arc".into(),
                pairs,
            }],
        }
    }

    #[test]
    fn cycle_against_path_is_refused() {
        let cyc = arcs(3, vec![(0, 1), (1, 2), (2, 0)]);
        let path = arcs(3, vec![(0, 1), (1, 2)]);
        assert!(matches!(
            simultaneous_stabilization(&cyc, &path, &[0]).unwrap(),
            Stabilization::Refused { .. }
        ));
        match simultaneous_stabilization(&cyc, &cyc, &[0]).unwrap() {
            Stabilization::Matched { phi, .. } => assert!(phi.is_identity()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mismatched_lists() {
        let a = arcs(3, vec![(0, 1)]);
        let b = RelationSet { n: 3, relations: vec![] };
        assert!(simultaneous_stabilization(&a, &b, &[]).is_err());
    }
}
