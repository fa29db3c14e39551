use serde::Serialize;

use super::iso::list_isomorphisms;
use super::schurity::{recognize_schurity, Rejection, Schurity};
use super::tournament::Tournament;
use crate::ccfg::CoherentConfiguration;
use crate::constructions::glue_disjoint_union;
use crate::error::{Error, Result};
use crate::permgrp::{color_aut_backtrack, find_element, Permutation, PermutationGroup};
use crate::wl::{coherent_closure, simultaneous_stabilization, AlgebraicIsomorphism, Stabilization};

/// Largest coset enumerated by the gluing route.
const COSET_LIMIT: u64 = 1 << 20;

/// Outcome of comparing two tournaments.
#[derive(Clone, Debug, Serialize)]
pub struct IsoReport {
    pub isomorphic: bool,
    /// Why the answer is empty before any search, if it is.
    pub refused_by: Option<String>,
    /// `iso(X1, X2, φ)` by individualizing a base, sorted.
    pub direct: Vec<Permutation>,
    /// The same set read off the automorphism group of three glued copies.
    pub glued: Vec<Permutation>,
    pub routes_agree: bool,
}

impl IsoReport {
    fn empty(reason: impl Into<String>) -> Self {
        IsoReport {
            isomorphic: false,
            refused_by: Some(reason.into()),
            direct: Vec::new(),
            glued: Vec::new(),
            routes_agree: true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TournamentReport {
    pub n: usize,
    /// Rank of `X(T)`, the closure of the arc color classes.
    pub closure_rank: usize,
    pub schurian: bool,
    pub rejection: Option<Rejection>,
    /// `Aut(T) = Aut(X(T))`.
    pub automorphisms: PermutationGroup,
    pub iso: Option<IsoReport>,
}

/// Recognizes schurity of `X(T1)` and, when `t2` is given, computes
/// `iso(T1, T2)` by two independent routes.
pub fn tournament_pipeline(t1: &Tournament, t2: Option<&Tournament>) -> Result<TournamentReport> {
    let x1 = coherent_closure(&t1.color_classes())?;
    let verdict = recognize_schurity(&x1)?;
    let (schurian, rejection, automorphisms) = match verdict {
        Schurity::Schurian { group } => (true, None, group),
        Schurity::NotSchurian { rejection } => (false, Some(rejection), color_aut_backtrack(x1.matrix(), None)?),
    };
    let iso = t2.map(|t2| compare(t1, t2, schurian)).transpose()?;
    Ok(TournamentReport {
        n: t1.n(),
        closure_rank: x1.rank(),
        schurian,
        rejection,
        automorphisms,
        iso,
    })
}

fn compare(t1: &Tournament, t2: &Tournament, first_schurian: bool) -> Result<IsoReport> {
    if t1.n() != t2.n() {
        return Ok(IsoReport::empty("different numbers of vertices"));
    }
    if t1.colors() != t2.colors() {
        return Ok(IsoReport::empty("different numbers of arc colors"));
    }
    // Color classes are matched by name, and names are the color numbers.
    let psi: Vec<usize> = (0..t1.colors()).collect();
    let (x1, x2, phi) = match simultaneous_stabilization(&t1.color_classes(), &t2.color_classes(), &psi)? {
        Stabilization::Refused { round } => {
            return Ok(IsoReport::empty(format!("refinement diverged in round {round}")))
        }
        Stabilization::Matched { source, target, phi } => (source, target, phi),
    };
    if !first_schurian || !recognize_schurity(&x2)?.is_schurian() {
        return Err(Error::NotSchurian);
    }
    let mut direct = list_isomorphisms(&x1, &x2, &phi)?;
    direct.sort_by(|a, b| a.images().cmp(b.images()));
    let mut glued = isomorphisms_by_gluing(&x1, &x2, &phi)?;
    glued.sort_by(|a, b| a.images().cmp(b.images()));
    Ok(IsoReport {
        isomorphic: !direct.is_empty(),
        refused_by: None,
        routes_agree: direct == glued,
        direct,
        glued,
    })
}

/// Glues `X1, X2, X2` along `φ` with the cyclic group on the three parts,
/// so that the result stays antisymmetric. When it is schurian, every
/// isomorphism is `h` on `Ω1` followed by one fixed `g` carrying `Ω1` onto
/// `Ω2`, with `h` running over the setwise stabilizer of `Ω1`.
fn isomorphisms_by_gluing(
    x1: &CoherentConfiguration,
    x2: &CoherentConfiguration,
    phi: &AlgebraicIsomorphism,
) -> Result<Vec<Permutation>> {
    let n = x1.n();
    let id = AlgebraicIsomorphism::identity(x1.rank());
    let inv = phi.inverse();
    let psi = vec![
        vec![Some(id.clone()), Some(phi.clone()), Some(phi.clone())],
        vec![Some(inv.clone()), Some(id.clone()), Some(id.clone())],
        vec![Some(inv), Some(id.clone()), Some(id)],
    ];
    let q = PermutationGroup::new(3, vec![Permutation::from_cycles(3, &[vec![0, 1, 2]])?])?;
    let glued = glue_disjoint_union(&[x1.clone(), x2.clone(), x2.clone()], &psi, &q)?;
    let aut = match recognize_schurity(&glued.config)? {
        Schurity::Schurian { group } => group,
        Schurity::NotSchurian { .. } => return Ok(Vec::new()),
    };
    let (first, second) = (&glued.parts[0], &glued.parts[1]);
    let in_second = |p: u32| (n as u32..2 * n as u32).contains(&p);
    let chain = aut.chain_with_base(first);
    let base = chain.base();
    let Some(g) = find_element(
        &chain,
        |j, images| !first.contains(&base[j]) || in_second(images[j]),
        |g| first.iter().all(|&p| in_second(g.image(p))),
    ) else {
        return Ok(Vec::new());
    };
    debug_assert_eq!(second.len(), n);
    let h = aut.setwise_stabilizer(first).restricted(first)?;
    let mut out = Vec::new();
    for e in h.elements(COSET_LIMIT)? {
        let images = (0..n as u32).map(|x| g.image(e.image(x)) - n as u32).collect();
        out.push(Permutation::from_images(images)?);
    }
    Ok(out)
}
