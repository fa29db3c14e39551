use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::ccfg::CoherentConfiguration;
use crate::error::{Error, Result};
use crate::wl::fission;

/// Candidates tested per parallel batch; fixed so that budget accounting and
/// the returned witness do not depend on the thread count.
const BATCH: usize = 256;

/// Budget used when the caller does not supply one.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseKind {
    Base,
    Generalized,
}

/// A family of point sets together with the rank of the fission it
/// produces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseCertificate {
    pub kind: BaseKind,
    pub sets: Vec<Vec<u32>>,
    pub fission_rank: usize,
    /// The fission is complete, i.e. every fiber is a singleton.
    pub complete: bool,
}

impl BaseCertificate {
    pub fn size(&self) -> usize {
        self.sets.len()
    }

    /// The points of a base certificate, in order.
    pub fn points(&self) -> Vec<u32> {
        self.sets.iter().flatten().copied().collect()
    }
}

/// Whether the `Π`-fission of `x` is complete.
pub fn is_generalized_base(x: &CoherentConfiguration, pi: &[Vec<u32>]) -> (bool, BaseCertificate) {
    let y = fission(x, pi);
    let complete = y.fibers().len() == y.n();
    let kind = if pi.iter().all(|s| s.len() == 1) {
        BaseKind::Base
    } else {
        BaseKind::Generalized
    };
    (
        complete,
        BaseCertificate {
            kind,
            sets: pi.to_vec(),
            fission_rank: y.rank(),
            complete,
        },
    )
}

/// Whether individualizing `points` makes `x` complete.
pub fn is_base(x: &CoherentConfiguration, points: &[u32]) -> (bool, BaseCertificate) {
    let pi: Vec<Vec<u32>> = points.iter().map(|&p| vec![p]).collect();
    let (ok, mut cert) = is_generalized_base(x, &pi);
    cert.kind = BaseKind::Base;
    (ok, cert)
}

/// A base found by individualizing, one at a time, the least point of the
/// first fiber that is not yet a singleton.
pub fn greedy_base(x: &CoherentConfiguration) -> Vec<u32> {
    let mut points = Vec::new();
    let mut y = x.clone();
    while let Some(f) = y.fibers().iter().find(|f| f.len() > 1) {
        points.push(f[0]);
        y = crate::wl::fission_points(x, &points);
    }
    points
}

/// Exact `b(X)` or `gb(X)` with a witness, testing at most `budget`
/// candidate families.
pub fn base_number_search(
    x: &CoherentConfiguration,
    kind: BaseKind,
    budget: u64,
) -> Result<BaseCertificate> {
    Ok(bounded_base_search(x, kind, x.n(), budget)?.expect("a base of size at most n exists"))
}

/// Like [`base_number_search`] but gives up (returning `None`) once every
/// family of size `max_size` has failed.
pub fn bounded_base_search(
    x: &CoherentConfiguration,
    kind: BaseKind,
    max_size: usize,
    budget: u64,
) -> Result<Option<BaseCertificate>> {
    let n = x.n();
    let mut spent = 0u64;
    let exceeded = || Error::BudgetExceeded {
        budget,
        best_upper_bound: greedy_base(x).len(),
    };
    for k in 0..=max_size.min(n) {
        let found = match kind {
            BaseKind::Base => {
                let families = (0..n as u32)
                    .combinations(k)
                    .map(|c| c.into_iter().map(|p| vec![p]).collect::<Vec<_>>());
                first_complete(x, families, &mut spent, budget)
            }
            BaseKind::Generalized => {
                // A set and its complement give the same fission, so only sets
                // avoiding the last point are tried; ∅ and Ω add nothing.
                let singles = (1..n)
                    .flat_map(|size| (0..n as u32 - 1).combinations(size));
                let families = singles.combinations(k);
                first_complete(x, families, &mut spent, budget)
            }
        };
        match found {
            Some(Some(mut cert)) => {
                cert.kind = kind;
                return Ok(Some(cert));
            }
            Some(None) => continue,
            None => return Err(exceeded()),
        }
    }
    Ok(None)
}

/// Tests families in order and returns the first complete one. `None` when
/// the budget runs out, `Some(None)` when the families are exhausted.
fn first_complete(
    x: &CoherentConfiguration,
    mut families: impl Iterator<Item = Vec<Vec<u32>>>,
    spent: &mut u64,
    budget: u64,
) -> Option<Option<BaseCertificate>> {
    loop {
        let room = budget.saturating_sub(*spent);
        let batch: Vec<Vec<Vec<u32>>> = families.by_ref().take(BATCH.min(room as usize + 1)).collect();
        if batch.is_empty() {
            return Some(None);
        }
        if batch.len() as u64 > room {
            return None;
        }
        *spent += batch.len() as u64;
        let hit = batch.par_iter().find_map_first(|pi| {
            let (ok, cert) = is_generalized_base(x, pi);
            ok.then_some(cert)
        });
        if hit.is_some() {
            return Some(hit);
        }
    }
}
