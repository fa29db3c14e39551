use serde::Serialize;

use super::search::{is_base, is_generalized_base, BaseCertificate};
use crate::ccfg::{restriction, CoherentConfiguration};
use crate::constructions::{constant_point, rho_preimage, wreath_point_map, wreath_product, ProductPointMap};
use crate::error::{Error, Result};
use crate::permgrp::PermutationGroup;
use crate::wl::{fission_points, inv_of_group};

/// A family produced by one of the constructive builders, checked by an
/// independent fission.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BuiltBase {
    pub sets: Vec<Vec<u32>>,
    /// The size the construction promises for the given inputs.
    pub bound: usize,
    pub certificate: BaseCertificate,
}

impl BuiltBase {
    pub fn size(&self) -> usize {
        self.sets.len()
    }

    pub fn within_bound(&self) -> bool {
        self.sets.len() <= self.bound
    }
}

fn violated<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::PreconditionViolated(msg.into()))
}

fn complement(n: usize, set: &[u32]) -> Vec<u32> {
    let mut inside = vec![false; n];
    for &x in set {
        inside[x as usize] = true;
    }
    (0..n as u32).filter(|&x| !inside[x as usize]).collect()
}

fn check_points(n: usize, sets: &[Vec<u32>], what: &str) -> Result<()> {
    if sets.iter().flatten().any(|&p| p as usize >= n) {
        return violated(format!("{what} has a point outside 0..{n}"));
    }
    Ok(())
}

/// Some set meets every block `Ω1 × {α}` in a proper subset.
pub fn is_proper(n1: usize, n2: usize, sets: &[Vec<u32>]) -> bool {
    sets.iter().any(|set| {
        let mut count = vec![0usize; n2];
        for &p in set {
            count[p as usize % n2] += 1;
        }
        count.iter().all(|&c| c < n1)
    })
}

/// Every set meets every block in at most one point.
pub fn is_thin(n2: usize, sets: &[Vec<u32>]) -> bool {
    sets.iter().all(|set| {
        let mut count = vec![0usize; n2];
        set.iter().all(|&p| {
            count[p as usize % n2] += 1;
            count[p as usize % n2] <= 1
        })
    })
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v
}

/// A generalized base of `X1 ≀ X2` of size `b` from generalized bases of
/// both factors: each `Γ1 ∈ Π1`, paired with `Γ2 ∈ Π2`, contributes
/// `Γ1 × Γ2 ∪ Γ1' × Γ2'` (primes are complements).
pub fn build_wreath_generalized_base(
    x1: &CoherentConfiguration,
    x2: &CoherentConfiguration,
    pi1: &[Vec<u32>],
    pi2: &[Vec<u32>],
) -> Result<BuiltBase> {
    let (n1, n2) = (x1.n(), x2.n());
    if !x1.is_antisymmetric() {
        return violated("the first factor is not antisymmetric");
    }
    if !x1.is_homogeneous() || !x2.is_homogeneous() {
        return violated("both factors must be homogeneous");
    }
    if pi1.is_empty() || pi2.is_empty() {
        return violated("both generalized bases must be non-empty (b > 0)");
    }
    check_points(n1, pi1, "Π1")?;
    check_points(n2, pi2, "Π2")?;
    if !pi1.iter().any(|g| !g.is_empty() && g.len() < n1) {
        return violated("Π1 contains no proper non-empty subset of Ω1");
    }
    if !is_generalized_base(x1, pi1).0 {
        return violated("Π1 is not a generalized base of X1");
    }
    if !is_generalized_base(x2, pi2).0 {
        return violated("Π2 is not a generalized base of X2");
    }
    let b = pi1.len().max(pi2.len());
    let pad = |pi: &[Vec<u32>]| {
        let mut v = pi.to_vec();
        while v.len() < b {
            v.push(pi.last().unwrap().clone());
        }
        v
    };
    let (p1, p2) = (pad(pi1), pad(pi2));
    let map = wreath_point_map(n1, n2);
    let sets: Vec<Vec<u32>> = p1
        .iter()
        .zip(&p2)
        .map(|(g1, g2)| {
            let (c1, c2) = (complement(n1, g1), complement(n2, g2));
            let mut set = Vec::new();
            for (a, b) in [(g1, g2), (&c1, &c2)] {
                for &x in a {
                    for &y in b {
                        set.push(map.encode(&[x, y]));
                    }
                }
            }
            sorted(set)
        })
        .collect();
    let x = wreath_product(x1, x2);
    let (_, certificate) = is_generalized_base(&x, &sets);
    Ok(BuiltBase {
        sets,
        bound: b,
        certificate,
    })
}

/// A thin generalized base of `X1 ≀ X2` from a base `B1` of `X1` and a
/// generalized base `Π2` of `X2`.
///
/// When `2 b2 ≥ b1` an odd `b1` is padded with an extra point, the base is
/// split into halves `B`, `B'` paired position by position, and each
/// `β ∈ B` matched with `Γ_β ∈ Π2` contributes
/// `{β} × Γ_β ∪ {β'} × Γ_β'` and `{β'} × Γ_β ∪ {β} × Γ_β'`; the unmatched
/// `Γ2 ∈ Π2` contribute `{δ} × Γ2`. Otherwise `b2` pairs are used and the
/// remaining base points `β` contribute `{β} × Ω2`.
pub fn build_thin_generalized_base(
    x1: &CoherentConfiguration,
    x2: &CoherentConfiguration,
    b1: &[u32],
    pi2: &[Vec<u32>],
) -> Result<BuiltBase> {
    let (n1, n2) = (x1.n(), x2.n());
    if !x1.is_antisymmetric() {
        return violated("the first factor is not antisymmetric");
    }
    check_points(n1, &[b1.to_vec()], "B1")?;
    check_points(n2, pi2, "Π2")?;
    if !is_base(x1, b1).0 {
        return violated("B1 is not a base of X1");
    }
    if !is_generalized_base(x2, pi2).0 {
        return violated("Π2 is not a generalized base of X2");
    }
    let (nb1, nb2) = (b1.len(), pi2.len());
    let bound = nb1 + nb2.saturating_sub(nb1.div_ceil(2));
    let map = wreath_point_map(n1, n2);
    let all2: Vec<u32> = (0..n2 as u32).collect();
    let mut sets: Vec<Vec<u32>> = Vec::new();
    let mut pair_sets = |beta: u32, beta2: u32, gamma: &[u32]| {
        let gc = complement(n2, gamma);
        let block = |x: u32, ys: &[u32]| ys.iter().map(|&y| map.encode(&[x, y])).collect::<Vec<_>>();
        let mut g = block(beta, gamma);
        g.extend(block(beta2, &gc));
        let mut g2 = block(beta2, gamma);
        g2.extend(block(beta, &gc));
        sets.push(sorted(g));
        sets.push(sorted(g2));
    };
    let mut base = b1.to_vec();
    if 2 * nb2 >= nb1 {
        if nb1 % 2 == 1 {
            match (0..n1 as u32).find(|p| !base.contains(p)) {
                Some(p) => base.push(p),
                None => return violated("B1 covers Ω1, so it cannot be padded to even size"),
            }
        }
        let half = base.len() / 2;
        let (bs, bs2) = base.split_at(half);
        for i in 0..half {
            pair_sets(bs[i], bs2[i], &pi2[i]);
        }
        let delta = 0u32;
        for g2 in &pi2[half..] {
            sets.push(sorted(g2.iter().map(|&y| map.encode(&[delta, y])).collect()));
        }
    } else {
        let (bs, rest) = base.split_at(nb2);
        let (bs2, rest) = rest.split_at(nb2);
        for i in 0..nb2 {
            pair_sets(bs[i], bs2[i], &pi2[i]);
        }
        for &beta in rest {
            sets.push(sorted(all2.iter().map(|&y| map.encode(&[beta, y])).collect()));
        }
    }
    debug_assert!(is_thin(n2, &sets));
    let x = wreath_product(x1, x2);
    let (_, certificate) = is_generalized_base(&x, &sets);
    Ok(BuiltBase {
        sets,
        bound,
        certificate,
    })
}

/// A point base of `Y ↑ L` from a base `B_Y` of `Y` (its first point is
/// `γ0`) and a generalized base `Π_L` of `inv(L)`.
///
/// A thin generalized base of `Y0 ≀ inv(L)`, where `Y0` is the one-point
/// fission of `Y` at `γ0` restricted to `Γ \ {γ0}`, is carried into the
/// Hamming neighbourhood `αr` of the constant point `α` and each of its sets
/// replaced by its `ρ`-preimage; `α` is added at the end.
pub fn build_exponentiation_base(
    y: &CoherentConfiguration,
    l: &PermutationGroup,
    b_y: &[u32],
    pi_l: &[Vec<u32>],
) -> Result<BuiltBase> {
    let (ny, m) = (y.n(), l.degree());
    if !y.is_antisymmetric() {
        return violated("Y is not antisymmetric");
    }
    if y.is_complete() {
        return violated("Y is complete");
    }
    if !l.is_transitive() {
        return violated("L is not transitive");
    }
    if !l.is_odd_order() {
        return violated("L does not have odd order");
    }
    check_points(ny, &[b_y.to_vec()], "B_Y")?;
    if b_y.is_empty() || !is_base(y, b_y).0 {
        return violated("B_Y is not a non-empty base of Y");
    }
    let inv_l = inv_of_group(l);
    check_points(m, pi_l, "Π_L")?;
    if !is_generalized_base(&inv_l, pi_l).0 {
        return violated("Π_L is not a generalized base of inv(L)");
    }
    let bound = b_y.len() + pi_l.len().saturating_sub((b_y.len() - 1).div_ceil(2));
    let x = crate::constructions::exponentiation(y, l);
    if m == 1 {
        let sets: Vec<Vec<u32>> = b_y.iter().map(|&p| vec![p]).collect();
        let (_, certificate) = is_generalized_base(&x, &sets);
        return Ok(BuiltBase {
            sets,
            bound,
            certificate,
        });
    }

    let gamma0 = b_y[0];
    let gamma_rest: Vec<u32> = (0..ny as u32).filter(|&g| g != gamma0).collect();
    let y0 = restriction(&fission_points(y, &[gamma0]), &gamma_rest)?;
    // Base points of Y other than γ0, renumbered inside Γ0.
    let b0: Vec<u32> = b_y[1..]
        .iter()
        .map(|p| y0.points.iter().position(|q| q == p).unwrap() as u32)
        .collect();
    let thin = build_thin_generalized_base(&y0.config, &inv_l, &b0, pi_l)?;

    // (γ, i) in Γ0 × Δ goes to the point with coordinate i equal to γ and
    // every other coordinate γ0.
    let inner = wreath_point_map(ny - 1, m);
    let outer = ProductPointMap::power(ny, m);
    let to_point = |p: u32| {
        let c = inner.decode(p);
        let mut t = vec![gamma0; m];
        t[c[1] as usize] = y0.points[c[0] as usize];
        outer.encode(&t)
    };
    let mut points = Vec::new();
    for set in &thin.sets {
        let lambda: Vec<u32> = set.iter().map(|&p| to_point(p)).collect();
        match rho_preimage(ny, m, gamma0, &lambda) {
            Some(beta) => points.push(beta),
            None => return violated("a set of the thin base is not in the image of ρ"),
        }
    }
    points.push(constant_point(ny, m, gamma0));
    let sets: Vec<Vec<u32>> = points.iter().map(|&p| vec![p]).collect();
    let (_, certificate) = is_base(&x, &points);
    Ok(BuiltBase {
        sets,
        bound,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccfg::ColorMatrix;
    use crate::permgrp::Permutation;

    fn z3() -> CoherentConfiguration {
        CoherentConfiguration::new(ColorMatrix::from_fn(3, |a, b| (b + 3 - a) % 3)).unwrap()
    }

    fn cyclic_group(n: u32) -> PermutationGroup {
        let g = Permutation::from_images((0..n).map(|x| (x + 1) % n).collect()).unwrap();
        PermutationGroup::new(n as usize, vec![g]).unwrap()
    }

    #[test]
    fn wreath_builder_on_z3() {
        let built = build_wreath_generalized_base(&z3(), &z3(), &[vec![0]], &[vec![0]]).unwrap();
        assert_eq!(built.size(), 1);
        assert!(built.certificate.complete);
        assert!(is_proper(3, 3, &built.sets));
    }

    #[test]
    fn wreath_builder_rejects_bad_inputs() {
        assert!(build_wreath_generalized_base(&z3(), &z3(), &[], &[vec![0]]).is_err());
        let sym = CoherentConfiguration::new(ColorMatrix::trivial(3)).unwrap();
        assert!(matches!(
            build_wreath_generalized_base(&sym, &z3(), &[vec![0], vec![1]], &[vec![0]]),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn thin_builder_without_second_base() {
        let one = CoherentConfiguration::new(ColorMatrix::trivial(1)).unwrap();
        let built = build_thin_generalized_base(&z3(), &one, &[0], &[]).unwrap();
        assert_eq!(built.sets, vec![vec![0]]);
        assert!(built.certificate.complete);
    }

    #[test]
    fn thin_builder_pads_odd_base() {
        let built = build_thin_generalized_base(&z3(), &z3(), &[0], &[vec![0]]).unwrap();
        assert!(is_thin(3, &built.sets));
        assert!(built.certificate.complete);
        assert_eq!(built.size(), 2);
        assert_eq!(built.bound, 1);
    }

    #[test]
    fn exponentiation_builder_on_z3() {
        let built = build_exponentiation_base(&z3(), &cyclic_group(3), &[0], &[vec![0]]).unwrap();
        assert!(built.certificate.complete);
        assert!(built.within_bound(), "{built:?}");
        let trivial = PermutationGroup::trivial(1);
        let same = build_exponentiation_base(&z3(), &trivial, &[1], &[]).unwrap();
        assert_eq!(same.sets, vec![vec![1]]);
        let complete = CoherentConfiguration::new(ColorMatrix::discrete(1)).unwrap();
        assert!(build_exponentiation_base(&complete, &cyclic_group(3), &[0], &[vec![0]]).is_err());
    }
}
