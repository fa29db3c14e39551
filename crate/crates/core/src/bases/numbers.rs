use itertools::Itertools;
use serde::Serialize;

use super::search::is_base;
use crate::ccfg::CoherentConfiguration;
use crate::error::{Error, Result};
use crate::wl::fission_points;

/// Indistinguishing numbers `c(s) = Σ_t c_{t t*}^s` of every color and
/// their maximum `c(X)` over non-reflexive colors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Indistinguishing {
    pub per_color: Vec<u32>,
    pub max: u32,
}

pub fn indistinguishing_numbers(x: &CoherentConfiguration) -> Result<Indistinguishing> {
    if !x.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let k = x.rank() as u32;
    let per_color: Vec<u32> = (0..k)
        .map(|s| (0..k).map(|t| x.c(t, x.star(t), s)).sum())
        .collect();
    let max = (0..k)
        .filter(|&s| !x.is_reflexive(s))
        .map(|s| per_color[s as usize])
        .max()
        .unwrap_or(0);
    Ok(Indistinguishing { per_color, max })
}

/// Connected symmetric relation with semiregular neighbourhoods.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiregularVerdict {
    pub holds: bool,
    /// Colors whose union is the witness relation `s`.
    pub witness: Option<Vec<u32>>,
    /// A pair in `s`, checked to be a base.
    pub base_pair: Option<(u32, u32)>,
    pub confirmed: Option<bool>,
}

/// `4 c (m - 1) < n` with `m` the largest valency.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndistinguishingVerdict {
    pub holds: bool,
    pub c: u32,
    pub max_valency: usize,
    pub n: usize,
    /// Every one-point fission has a regular point.
    pub confirmed: Option<bool>,
}

/// The counting condition on a non-reflexive color `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountingVerdict {
    pub holds: bool,
    /// The condition itself, regardless of the hypotheses.
    pub condition: bool,
    pub witness_color: Option<u32>,
    /// Antisymmetric and primitive; schurity is not checked here and must be
    /// known by the caller for the verdict to imply `b ≤ 2`.
    pub hypotheses_met: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Base2Verdicts {
    pub antisymmetric: bool,
    pub primitive: bool,
    pub semiregular: SemiregularVerdict,
    pub indistinguishing: IndistinguishingVerdict,
    pub counting: CountingVerdict,
}

impl Base2Verdicts {
    pub fn any(&self) -> bool {
        self.semiregular.holds || self.indistinguishing.holds || self.counting.holds
    }
}

/// Unions of star-classes tried for the semiregular verdict: all of them up
/// to this many classes, otherwise single classes only.
const UNION_LIMIT: usize = 10;

/// Three sufficient conditions for `b(X) ≤ 2`.
pub fn sufficient_base2_checks(x: &CoherentConfiguration) -> Result<Base2Verdicts> {
    let n = x.n();
    let antisymmetric = x.is_antisymmetric();
    if x.is_complete() {
        // b = 0; every verdict holds vacuously.
        return Ok(Base2Verdicts {
            antisymmetric,
            primitive: x.is_homogeneous(),
            semiregular: SemiregularVerdict {
                holds: true,
                witness: Some(Vec::new()),
                base_pair: None,
                confirmed: Some(true),
            },
            indistinguishing: IndistinguishingVerdict {
                holds: true,
                c: 0,
                max_valency: 1,
                n,
                confirmed: Some(true),
            },
            counting: CountingVerdict {
                holds: true,
                condition: true,
                witness_color: None,
                hypotheses_met: true,
            },
        });
    }
    if !x.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let primitive = x.is_primitive();
    let singles: Vec<_> = (0..n as u32).map(|a| fission_points(x, &[a])).collect();
    Ok(Base2Verdicts {
        antisymmetric,
        primitive,
        semiregular: semiregular_verdict(x, &singles),
        indistinguishing: indistinguishing_verdict(x, &singles)?,
        counting: counting_verdict(x, antisymmetric && primitive),
    })
}

fn connected(x: &CoherentConfiguration, s: &[bool]) -> bool {
    let n = x.n();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0u32];
    while let Some(a) = stack.pop() {
        for b in 0..n as u32 {
            if !seen[b as usize] && s[x.color(a, b) as usize] {
                seen[b as usize] = true;
                stack.push(b);
            }
        }
    }
    seen.iter().all(|&v| v)
}

/// `(X_α)_{αs}` is semiregular: every color of the one-point fission with
/// both fibers inside `αs` has valency 1.
fn neighbourhood_semiregular(x: &CoherentConfiguration, y: &CoherentConfiguration, alpha: u32, s: &[bool]) -> bool {
    let inside: Vec<bool> = (0..x.n() as u32).map(|b| s[x.color(alpha, b) as usize]).collect();
    (0..y.rank() as u32).all(|c| {
        let (f, g) = y.color_fibers(c);
        let fiber_in = |f: u32| inside[y.fibers()[f as usize][0] as usize];
        !(fiber_in(f) && fiber_in(g)) || y.valency(c) == 1
    })
}

fn semiregular_verdict(x: &CoherentConfiguration, singles: &[CoherentConfiguration]) -> SemiregularVerdict {
    let k = x.rank() as u32;
    let classes: Vec<Vec<u32>> = (0..k)
        .filter(|&c| !x.is_reflexive(c) && c <= x.star(c))
        .map(|c| if c == x.star(c) { vec![c] } else { vec![c, x.star(c)] })
        .collect();
    let max_size = if classes.len() <= UNION_LIMIT { classes.len() } else { 1 };
    for size in 1..=max_size {
        for pick in classes.iter().combinations(size) {
            let mut s = vec![false; k as usize];
            for &c in pick.iter().flat_map(|v| v.iter()) {
                s[c as usize] = true;
            }
            if !connected(x, &s) {
                continue;
            }
            if (0..x.n() as u32).all(|a| neighbourhood_semiregular(x, &singles[a as usize], a, &s)) {
                let mut witness: Vec<u32> = pick.into_iter().flatten().copied().collect();
                witness.sort_unstable();
                let pair = x.matrix().pairs_of(witness[0])[0];
                let confirmed = is_base(x, &[pair.0, pair.1]).0;
                return SemiregularVerdict {
                    holds: true,
                    witness: Some(witness),
                    base_pair: Some(pair),
                    confirmed: Some(confirmed),
                };
            }
        }
    }
    SemiregularVerdict {
        holds: false,
        witness: None,
        base_pair: None,
        confirmed: None,
    }
}

fn indistinguishing_verdict(
    x: &CoherentConfiguration,
    singles: &[CoherentConfiguration],
) -> Result<IndistinguishingVerdict> {
    let c = indistinguishing_numbers(x)?.max;
    let m = x.max_valency();
    let n = x.n();
    let holds = 4 * c as usize * (m - 1) < n;
    let confirmed = holds.then(|| singles.iter().all(|y| !y.regular_points().is_empty()));
    Ok(IndistinguishingVerdict {
        holds,
        c,
        max_valency: m,
        n,
        confirmed,
    })
}

/// Colors `t` in the complex product `r* s` with `c_{r t}^s ≤ bound`.
fn small_products(x: &CoherentConfiguration, r: u32, s: u32, bound: u32) -> Vec<u32> {
    let rs = x.star(r);
    (0..x.rank() as u32)
        .filter(|&t| x.c(rs, s, t) > 0 && x.c(r, t, s) <= bound)
        .collect()
}

fn counting_verdict(x: &CoherentConfiguration, hypotheses_met: bool) -> CountingVerdict {
    let witness = (0..x.rank() as u32).filter(|&r| !x.is_reflexive(r)).find(|&r| {
        let same = small_products(x, r, r, 2);
        let reverse = small_products(x, r, x.star(r), 2);
        let mut union = same;
        union.extend(&reverse);
        union.sort_unstable();
        union.dedup();
        !reverse.is_empty() && 3 * union.len() > 2 * x.valency(r)
    });
    CountingVerdict {
        holds: witness.is_some() && hypotheses_met,
        condition: witness.is_some(),
        witness_color: witness,
        hypotheses_met,
    }
}
