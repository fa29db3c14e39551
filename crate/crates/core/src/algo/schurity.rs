use rayon::join;
use serde::Serialize;

use super::iso::{test_config_group, TestWitness};
use super::majorant::{level_blocks, majorant_from_blocks, wreath_embedding, MajorantOutcome};
use crate::bases::{bounded_base_search, BaseKind, DEFAULT_BUDGET};
use crate::ccfg::{equivalence_chain, restriction, CoherentConfiguration};
use crate::error::{Error, Result};
use crate::permgrp::{color_aut_backtrack, Permutation, PermutationGroup};

/// Why a configuration was found not to be schurian.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Rejection {
    /// The reference block at `level` has no base of size at most 3.
    BaseTooLarge { level: usize, block_size: usize },
    /// Block `block` at `level` is not isomorphic to the reference block
    /// along the block algebraic isomorphism.
    NoIsomorphism { level: usize, block: usize, classes: Vec<u32> },
    /// The candidate group does not have the colors as its 2-orbits.
    TestFailed { witness: TestWitness },
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Schurity {
    Schurian { group: PermutationGroup },
    NotSchurian { rejection: Rejection },
}

impl Schurity {
    pub fn is_schurian(&self) -> bool {
        matches!(self, Schurity::Schurian { .. })
    }

    pub fn group(&self) -> Option<&PermutationGroup> {
        match self {
            Schurity::Schurian { group } => Some(group),
            Schurity::NotSchurian { .. } => None,
        }
    }
}

/// Decides whether an antisymmetric configuration is schurian and returns
/// `Aut(X)` when it is.
pub fn recognize_schurity(x: &CoherentConfiguration) -> Result<Schurity> {
    recognize_schurity_with_budget(x, DEFAULT_BUDGET)
}

/// As [`recognize_schurity`], with a budget for each base search.
pub fn recognize_schurity_with_budget(x: &CoherentConfiguration, budget: u64) -> Result<Schurity> {
    if !x.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    recognize(x, budget)
}

fn finish(x: &CoherentConfiguration, candidate: Option<&PermutationGroup>) -> Result<Schurity> {
    let h = color_aut_backtrack(x.matrix(), candidate)?;
    Ok(match test_config_group(x, &h)? {
        None => Schurity::Schurian { group: h },
        Some(witness) => Schurity::NotSchurian {
            rejection: Rejection::TestFailed { witness },
        },
    })
}

fn recognize(x: &CoherentConfiguration, budget: u64) -> Result<Schurity> {
    let n = x.n();
    if n == 1 {
        return Ok(Schurity::Schurian {
            group: PermutationGroup::trivial(1),
        });
    }
    if !x.is_homogeneous() {
        return recognize_inhomogeneous(x, budget);
    }

    let chain = equivalence_chain(x)?;
    let mut majorants = Vec::with_capacity(chain.len() - 1);
    for level in 1..chain.len() {
        let blocks = level_blocks(x, &chain[level - 1], &chain[level])?;
        let reference = &blocks.parts[0].config;
        if bounded_base_search(reference, BaseKind::Base, 3, budget)?.is_none() {
            return Ok(Schurity::NotSchurian {
                rejection: Rejection::BaseTooLarge {
                    level,
                    block_size: reference.n(),
                },
            });
        }
        match majorant_from_blocks(&blocks)? {
            MajorantOutcome::Built(m) => majorants.push(m),
            MajorantOutcome::Refused { block, classes } => {
                return Ok(Schurity::NotSchurian {
                    rejection: Rejection::NoIsomorphism { level, block, classes },
                })
            }
        }
    }
    let embedding = wreath_embedding(x, &chain, &majorants)?;
    let w = embedding.group.relabeled(&embedding.map.inverse());
    finish(x, Some(&w))
}

/// Splits off the smallest fiber, recognizes both sides, and searches
/// `Aut(X)` inside the product of the two answers.
fn recognize_inhomogeneous(x: &CoherentConfiguration, budget: u64) -> Result<Schurity> {
    let fibers = x.fibers();
    let smallest = fibers
        .iter()
        .min_by_key(|f| f.len())
        .expect("a configuration has a fiber");
    let mut inside = vec![false; x.n()];
    for &a in smallest {
        inside[a as usize] = true;
    }
    let first: Vec<u32> = (0..x.n() as u32).filter(|&a| inside[a as usize]).collect();
    let rest: Vec<u32> = (0..x.n() as u32).filter(|&a| !inside[a as usize]).collect();
    let x1 = restriction(x, &first)?;
    let x2 = restriction(x, &rest)?;
    let (k1, k2) = join(|| recognize(&x1.config, budget), || recognize(&x2.config, budget));
    let (k1, k2) = match (k1?, k2?) {
        (Schurity::Schurian { group: a }, Schurity::Schurian { group: b }) => (a, b),
        (no @ Schurity::NotSchurian { .. }, _) | (_, no @ Schurity::NotSchurian { .. }) => return Ok(no),
    };
    let order: Vec<u32> = x1.points.iter().chain(&x2.points).copied().collect();
    let f = Permutation::from_images(order)?;
    let k = k1.direct_product(&k2).relabeled(&f);
    finish(x, Some(&k))
}
