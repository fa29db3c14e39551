use num_bigint::BigUint;
use serde::Serialize;

use super::iso::{automorphisms_by_listing, find_isomorphism};
use crate::ccfg::{quotient, restriction, CoherentConfiguration, EquivalenceRelation, Restriction};
use crate::constructions::ProductPointMap;
use crate::error::{Error, Result};
use crate::permgrp::{Permutation, PermutationGroup};
use crate::wl::AlgebraicIsomorphism;

/// The blocks `Γ1/e0` for `Γ1 ∈ Ω/e1`, as configurations on classes of
/// `e0`.
pub(crate) struct LevelBlocks {
    /// Each block lists indices into the classes of `e0`, sorted.
    pub blocks: Vec<Vec<u32>>,
    /// `X_{Ω/e0}` restricted to each block.
    pub parts: Vec<Restriction>,
}

pub(crate) fn level_blocks(
    x: &CoherentConfiguration,
    e0: &EquivalenceRelation,
    e1: &EquivalenceRelation,
) -> Result<LevelBlocks> {
    if !e0.is_subset_of(e1) {
        return Err(Error::ChainMismatch("e0 is not contained in e1".into()));
    }
    let q = quotient(x, e0)?;
    let outer = e1.class_index(x.n());
    let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); e1.classes.len()];
    for (i, class) in q.classes.iter().enumerate() {
        blocks[outer[class[0] as usize] as usize].push(i as u32);
    }
    let parts = blocks
        .iter()
        .map(|b| restriction(&q.config, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(LevelBlocks { blocks, parts })
}

/// `φ_{Γ,Γ'}`: the color of `X_Γ` coming from `s` goes to the color of
/// `X_Γ'` coming from `s`. `None` when the two blocks meet different colors.
pub(crate) fn block_isomorphism(from: &Restriction, to: &Restriction) -> Option<AlgebraicIsomorphism> {
    if from.color_origin.len() != to.color_origin.len() {
        return None;
    }
    let map = from
        .color_origin
        .iter()
        .map(|o| to.color_origin.iter().position(|p| p == o).map(|i| i as u32))
        .collect::<Option<Vec<u32>>>()?;
    AlgebraicIsomorphism::new(&from.config, &to.config, map).ok()
}

/// A group `H` on `Δ` with bijections `f_Γ : Γ → Δ` from every block.
#[derive(Clone, Debug, Serialize)]
pub struct Majorant {
    pub group: PermutationGroup,
    /// Blocks as sorted lists of class indices of `e0`.
    pub blocks: Vec<Vec<u32>>,
    /// `bijections[i][k]` is the point of `Δ` that the `k`-th class of block
    /// `i` goes to.
    pub bijections: Vec<Vec<u32>>,
    /// Index of the block whose configuration defines `Δ` and `H`.
    pub reference: usize,
}

impl Majorant {
    pub fn degree(&self) -> usize {
        self.group.degree()
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MajorantOutcome {
    Built(Majorant),
    /// `iso(X_Γ, X_Γ', φ_{Γ,Γ'})` is empty for the block `Γ'`.
    Refused { block: usize, classes: Vec<u32> },
}

pub(crate) fn majorant_from_blocks(level: &LevelBlocks) -> Result<MajorantOutcome> {
    let reference = 0;
    let base = &level.parts[reference];
    let group = automorphisms_by_listing(&base.config)?;
    let mut bijections = Vec::with_capacity(level.parts.len());
    for (i, part) in level.parts.iter().enumerate() {
        let refused = || MajorantOutcome::Refused {
            block: i,
            classes: level.blocks[i].clone(),
        };
        if part.config.n() != base.config.n() {
            return Ok(refused());
        }
        let Some(phi) = block_isomorphism(base, part) else {
            return Ok(refused());
        };
        let Some(f) = find_isomorphism(&base.config, &part.config, &phi)? else {
            return Ok(refused());
        };
        // f maps Δ onto the block; its inverse is f_Γ'.
        bijections.push(f.inverse().into_images());
    }
    Ok(MajorantOutcome::Built(Majorant {
        group,
        blocks: level.blocks.clone(),
        bijections,
        reference,
    }))
}

/// A majorant of `Aut(X)` for the pair `e0 ⊂ e1`: `Aut(X_Γ)` for the block
/// `Γ` with the least classes, and one isomorphism onto every other block
/// inducing the block algebraic isomorphism. Refuses when some block admits
/// no such isomorphism.
pub fn build_majorant(
    x: &CoherentConfiguration,
    e0: &EquivalenceRelation,
    e1: &EquivalenceRelation,
) -> Result<MajorantOutcome> {
    majorant_from_blocks(&level_blocks(x, e0, e1)?)
}

/// `Wr(G_1, …, G_s)` in imprimitive action on `Δ_s × … × Δ_1` together with
/// the bijection `f` from the points of `X`.
#[derive(Clone, Debug, Serialize)]
pub struct WreathEmbedding {
    pub group: PermutationGroup,
    /// Point `α` of `X` goes to `map(α)`, the flat index of its coordinates.
    pub map: Permutation,
    /// Coordinate sizes, outermost level first.
    pub factors: Vec<usize>,
    #[serde(serialize_with = "crate::algo::order_as_string")]
    pub order: BigUint,
}

/// Builds the iterated wreath product of the majorant groups and the
/// coordinate map `α ↦ (…, f_i(Γ_{i-1}), …)`.
pub fn wreath_embedding(
    x: &CoherentConfiguration,
    chain: &[EquivalenceRelation],
    majorants: &[Majorant],
) -> Result<WreathEmbedding> {
    let n = x.n();
    let s = majorants.len();
    if chain.len() != s + 1 {
        return Err(Error::ChainMismatch(format!(
            "{} equivalences need {} majorants, got {s}",
            chain.len(),
            chain.len().saturating_sub(1)
        )));
    }
    // factors[p] is the coordinate of level s - p.
    let factors: Vec<usize> = majorants.iter().rev().map(|m| m.degree()).collect();
    let map = ProductPointMap::new(factors.clone());
    if map.size() != n {
        return Err(Error::ChainMismatch(format!(
            "coordinate sizes multiply to {}, not {n}",
            map.size()
        )));
    }
    let mut coords = vec![vec![0u32; s]; n];
    for (i, maj) in majorants.iter().enumerate() {
        let lower = chain[i].class_index(n);
        let upper = &chain[i + 1];
        if maj.blocks.len() != upper.classes.len() {
            return Err(Error::ChainMismatch(format!("level {} block count", i + 1)));
        }
        let mut place = vec![None; chain[i].classes.len()];
        for (b, block) in maj.blocks.iter().enumerate() {
            if block.len() != maj.degree() || maj.bijections[b].len() != block.len() {
                return Err(Error::ChainMismatch(format!("level {} block {b} size", i + 1)));
            }
            for (k, &class) in block.iter().enumerate() {
                place[class as usize] = Some(maj.bijections[b][k]);
            }
        }
        for a in 0..n {
            let class = lower[a];
            let Some(Some(delta)) = place.get(class as usize) else {
                return Err(Error::ChainMismatch(format!("class {class} has no block at level {}", i + 1)));
            };
            coords[a][s - 1 - i] = *delta;
        }
    }
    let images: Vec<u32> = coords.iter().map(|c| map.encode(c)).collect();
    let f = Permutation::from_images(images)
        .map_err(|_| Error::ChainMismatch("coordinate map is not a bijection".into()))?;

    let mut gens = Vec::new();
    let mut order = BigUint::from(1u32);
    for (i, maj) in majorants.iter().enumerate() {
        let p = s - 1 - i;
        let copies: usize = factors[..p].iter().product();
        order *= maj.group.order().pow(copies as u32);
        let outer = ProductPointMap::new(factors[..p].to_vec());
        for copy in 0..copies as u32 {
            let prefix = outer.decode(copy);
            for g in maj.group.generators() {
                let images: Vec<u32> = (0..n as u32)
                    .map(|pt| {
                        let mut t = map.decode(pt);
                        if t[..p] == prefix[..] {
                            t[p] = g.image(t[p]);
                        }
                        map.encode(&t)
                    })
                    .collect();
                gens.push(Permutation::from_images(images).expect("acts on one coordinate"));
            }
        }
    }
    let group = PermutationGroup::new(n, gens)?;
    Ok(WreathEmbedding {
        group,
        map: f,
        factors,
        order,
    })
}
