use std::collections::HashMap;
use std::hash::Hash;

/// Assigns each distinct label its rank among all labels of all sides, so
/// equal labels get equal ids across sides and ids do not depend on point
/// order.
pub(crate) fn rank_labels<L: Ord + Hash + Clone>(sides: &[Vec<L>]) -> Vec<Vec<u32>> {
    let mut distinct: Vec<L> = Vec::new();
    let mut seen: HashMap<L, ()> = HashMap::new();
    for side in sides {
        for l in side {
            if seen.insert(l.clone(), ()).is_none() {
                distinct.push(l.clone());
            }
        }
    }
    distinct.sort();
    let ids: HashMap<L, u32> = distinct
        .into_iter()
        .enumerate()
        .map(|(i, l)| (l, i as u32))
        .collect();
    sides
        .iter()
        .map(|side| side.iter().map(|l| ids[l]).collect())
        .collect()
}

fn histogram(colors: &[u32]) -> Vec<u32> {
    let k = colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut h = vec![0u32; k];
    for &c in colors {
        h[c as usize] += 1;
    }
    h
}

fn count(colors: &[u32]) -> usize {
    histogram(colors).iter().filter(|&&x| x > 0).count()
}

/// Runs two-dimensional Weisfeiler-Leman refinement on every side at once
/// with a shared signature dictionary.
///
/// Each side is a row-major `n × n` coloring in a common vocabulary. A pair's
/// new color is the rank of its signature: its old color followed by the
/// sorted multiset of `(c(a, g), c(g, b))` over all `g`. Returns the number
/// of refinement rounds, or the round at which the color histograms of the
/// sides first differed (round 0 is the input).
pub(crate) fn refine_together(n: usize, sides: &mut [Vec<u32>]) -> Result<usize, usize> {
    let same = |sides: &[Vec<u32>]| {
        let h0 = histogram(&sides[0]);
        sides[1..].iter().all(|s| histogram(s) == h0)
    };
    if sides.len() > 1 && !same(sides) {
        return Err(0);
    }
    if n == 0 {
        return Ok(0);
    }
    let mut colors = count(&sides[0]);
    let mut round = 0;
    let mut buf: Vec<u64> = Vec::with_capacity(n);
    loop {
        round += 1;
        let mut labels: Vec<Vec<(u32, Vec<u64>)>> = Vec::with_capacity(sides.len());
        for side in sides.iter() {
            let mut out = Vec::with_capacity(n * n);
            for a in 0..n {
                let row = &side[a * n..a * n + n];
                for b in 0..n {
                    buf.clear();
                    for g in 0..n {
                        buf.push(((row[g] as u64) << 32) | side[g * n + b] as u64);
                    }
                    buf.sort_unstable();
                    out.push((row[b], buf.clone()));
                }
            }
            labels.push(out);
        }
        let next = rank_labels(&labels);
        for (side, new) in sides.iter_mut().zip(next) {
            *side = new;
        }
        if sides.len() > 1 && !same(sides) {
            return Err(round);
        }
        let now = count(&sides[0]);
        if now == colors {
            return Ok(round);
        }
        colors = now;
    }
}
