//! Test-only reference implementations. None of them calls into the library
//! beyond reading colors and generators, so they can catch errors in it.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Renumbers labels by first occurrence, row-major.
pub fn normalize<T: Ord + Clone>(labels: &[T]) -> Vec<u32> {
    let mut ids: BTreeMap<T, u32> = BTreeMap::new();
    let mut out = Vec::with_capacity(labels.len());
    let mut next = 0;
    for l in labels {
        let id = *ids.entry(l.clone()).or_insert_with(|| {
            next += 1;
            next - 1
        });
        out.push(id);
    }
    out
}

/// Whether two colorings induce the same partition of the pairs.
pub fn same_partition(a: &[u32], b: &[u32]) -> bool {
    let pairs: Vec<(u32, u32)> = a.iter().copied().zip(b.iter().copied()).collect();
    normalize(a) == normalize(&pairs) && normalize(b) == normalize(&pairs)
}

/// Naive two-dimensional stabilization: repeatedly recolor each pair by
/// its old color and the sorted list of color pairs along all paths of
/// length two, until the number of colors stops growing. The starting
/// coloring is made transpose-aware and diagonal-aware first.
pub fn naive_stabilize(n: usize, initial: &[u32]) -> Vec<u32> {
    let start: Vec<(bool, u32, u32)> = (0..n * n)
        .map(|i| {
            let (a, b) = (i / n, i % n);
            (a == b, initial[a * n + b], initial[b * n + a])
        })
        .collect();
    let mut colors = normalize(&start);
    loop {
        let count = colors.iter().collect::<BTreeSet<_>>().len();
        let signatures: Vec<(u32, Vec<(u32, u32)>)> = (0..n * n)
            .map(|i| {
                let (a, b) = (i / n, i % n);
                let mut walk: Vec<(u32, u32)> =
                    (0..n).map(|g| (colors[a * n + g], colors[g * n + b])).collect();
                walk.sort_unstable();
                (colors[i], walk)
            })
            .collect();
        let next = normalize(&signatures);
        let next_count = next.iter().collect::<BTreeSet<_>>().len();
        colors = next;
        if next_count == count {
            return colors;
        }
    }
}

/// Naive fission: individualizes each set of `pi` on the diagonal, then
/// stabilizes.
pub fn naive_fission(n: usize, colors: &[u32], pi: &[Vec<u32>]) -> Vec<u32> {
    let tags: Vec<(u32, Vec<bool>)> = (0..n * n)
        .map(|i| {
            let (a, b) = (i / n, i % n);
            let tag = pi.iter().map(|s| a == b && s.contains(&(a as u32))).collect();
            (colors[i], tag)
        })
        .collect();
    naive_stabilize(n, &normalize(&tags))
}

/// Whether a coloring has `n * n` colors on `n` points.
pub fn is_discrete(colors: &[u32]) -> bool {
    colors.iter().collect::<BTreeSet<_>>().len() == colors.len()
}

/// Checks the axioms directly: diagonal colors stay on the diagonal, each
/// color's transpose is a color, and `c_{rs}^t` does not depend on the
/// chosen `t`-pair.
pub fn satisfies_axioms(n: usize, colors: &[u32]) -> bool {
    let k = colors.iter().max().map_or(0, |&m| m as usize + 1);
    let mut diag = vec![None; k];
    let mut star = vec![None; k];
    for a in 0..n {
        for b in 0..n {
            let c = colors[a * n + b] as usize;
            if *diag[c].get_or_insert(a == b) != (a == b) {
                return false;
            }
            if *star[c].get_or_insert(colors[b * n + a]) != colors[b * n + a] {
                return false;
            }
        }
    }
    // The sorted list of (c(a,g), c(g,b)) over g determines every c_{rs}^t
    // at once.
    let mut seen: HashMap<u32, Vec<(u32, u32)>> = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            let mut walk: Vec<(u32, u32)> = (0..n).map(|g| (colors[a * n + g], colors[g * n + b])).collect();
            walk.sort_unstable();
            let entry = seen.entry(colors[a * n + b]).or_insert_with(|| walk.clone());
            if *entry != walk {
                return false;
            }
        }
    }
    true
}

/// All color-preserving permutations, by depth-first assignment of images
/// in point order, checking every pair with earlier points.
pub fn automorphisms(n: usize, colors: &[u32]) -> Vec<Vec<u32>> {
    isomorphisms(n, colors, colors, usize::MAX)
}

/// Bijections `f` with `b[f(x), f(y)] = a[x, y]`, at most `limit` of them.
pub fn isomorphisms(n: usize, a: &[u32], b: &[u32], limit: usize) -> Vec<Vec<u32>> {
    fn go(
        n: usize,
        a: &[u32],
        b: &[u32],
        f: &mut Vec<u32>,
        used: &mut [bool],
        out: &mut Vec<Vec<u32>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        let x = f.len();
        if x == n {
            out.push(f.clone());
            return;
        }
        for y in 0..n {
            if used[y] || a[x * n + x] != b[y * n + y] {
                continue;
            }
            let fits = (0..x).all(|p| {
                let q = f[p] as usize;
                a[p * n + x] == b[q * n + y] && a[x * n + p] == b[y * n + q]
            });
            if fits {
                used[y] = true;
                f.push(y as u32);
                go(n, a, b, f, used, out, limit);
                f.pop();
                used[y] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, a, b, &mut Vec::with_capacity(n), &mut vec![false; n], &mut out, limit);
    out
}

/// Number of color-preserving permutations, without storing them.
pub fn count_automorphisms(n: usize, colors: &[u32]) -> u64 {
    fn go(n: usize, c: &[u32], f: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        let x = f.len();
        if x == n {
            return 1;
        }
        let mut total = 0;
        for y in 0..n {
            if used[y] || c[x * n + x] != c[y * n + y] {
                continue;
            }
            if (0..x).all(|p| c[p * n + x] == c[f[p] * n + y] && c[x * n + p] == c[y * n + f[p]]) {
                used[y] = true;
                f.push(y);
                total += go(n, c, f, used);
                f.pop();
                used[y] = false;
            }
        }
        total
    }
    go(n, colors, &mut Vec::with_capacity(n), &mut vec![false; n])
}

/// Orbits of the group generated by `gens` (image lists) on ordered pairs,
/// by breadth-first search from each unvisited pair.
pub fn pair_orbits(n: usize, gens: &[Vec<u32>]) -> Vec<u32> {
    let mut orbit = vec![u32::MAX; n * n];
    let mut next = 0;
    for start in 0..n * n {
        if orbit[start] != u32::MAX {
            continue;
        }
        orbit[start] = next;
        let mut queue = vec![start];
        while let Some(i) = queue.pop() {
            let (a, b) = (i / n, i % n);
            for g in gens {
                let j = g[a] as usize * n + g[b] as usize;
                if orbit[j] == u32::MAX {
                    orbit[j] = next;
                    queue.push(j);
                }
            }
        }
        next += 1;
    }
    orbit
}

/// Whether the coloring is the pair-orbit partition of its own
/// automorphism group, by brute force. Also returns the group order.
pub fn is_schurian(n: usize, colors: &[u32]) -> (bool, u64) {
    let auts = automorphisms(n, colors);
    let orbits = pair_orbits(n, &auts);
    (same_partition(colors, &orbits), auts.len() as u64)
}

/// Smallest `k` such that some `k` points individualize to a discrete
/// coloring, by trying all subsets in order of size.
pub fn base_number(n: usize, colors: &[u32], max: usize) -> Option<usize> {
    (0..=max.min(n)).find(|&k| {
        subsets(n, k)
            .into_iter()
            .any(|s| is_discrete(&naive_fission(n, colors, &s.iter().map(|&p| vec![p]).collect::<Vec<_>>())))
    })
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<u32>> {
    fn go(n: u32, k: usize, from: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in from..n {
            cur.push(x);
            go(n, k, x + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n as u32, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Number of orbits of a permutation group on `k^m` tuples, by Burnside's
/// lemma: the average of `k^(number of cycles)` over the elements, given
/// as image lists.
pub fn burnside_count(elements: &[Vec<u32>], k: u64) -> u64 {
    let total: u64 = elements
        .iter()
        .map(|g| {
            let m = g.len();
            let mut seen = vec![false; m];
            let mut cycles = 0;
            for s in 0..m {
                if !seen[s] {
                    cycles += 1;
                    let mut x = s;
                    while !seen[x] {
                        seen[x] = true;
                        x = g[x] as usize;
                    }
                }
            }
            k.pow(cycles)
        })
        .sum();
    total / elements.len() as u64
}

/// Every element of the group generated by `gens`, by closure under
/// multiplication.
pub fn group_elements(n: usize, gens: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let id: Vec<u32> = (0..n as u32).collect();
    let mut all: BTreeSet<Vec<u32>> = BTreeSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(g) = queue.pop() {
        for h in gens {
            let gh: Vec<u32> = g.iter().map(|&x| h[x as usize]).collect();
            if all.insert(gh.clone()) {
                queue.push(gh);
            }
        }
    }
    all.into_iter().collect()
}

/// Arc colors of a random tournament: `out[i * n + j]` is 1 for an arc
/// `i -> j`, 2 for `j -> i`, 0 on the diagonal.
pub fn random_tournament(n: usize, rng: &mut impl rand::Rng) -> Vec<u32> {
    let mut m = vec![0u32; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let forward = rng.gen_bool(0.5);
            m[i * n + j] = if forward { 1 } else { 2 };
            m[j * n + i] = if forward { 2 } else { 1 };
        }
    }
    m
}
