use super::chain::StabChain;
use super::perm::Permutation;

/// Finds generators of the subgroup `{g in G : full(g)}` by backtracking over
/// the stabilizer chain of `G`.
///
/// `partial(depth, images)` receives the images of base points `0..=depth`
/// and must be a necessary condition for `full`: it may only reject prefixes
/// that cannot extend to a member of the subgroup. The search visits levels
/// from the deepest up and skips images already reached by the subgroup found
/// so far, so the output is deterministic.
pub fn subgroup_search<P, F>(chain: &StabChain, partial: P, full: F) -> Vec<Permutation>
where
    P: Fn(usize, &[u32]) -> bool,
    F: Fn(&Permutation) -> bool,
{
    let n = chain.degree();
    let k = chain.len();
    let base = chain.base();
    let mut found: Vec<Permutation> = Vec::new();
    let mut images = base.clone();
    for i in (0..k).rev() {
        let deeper = found.len();
        let level = &chain.levels()[i];
        let mut reached = orbit_mask(n, base[i], &found);
        let mut dead = vec![false; n];
        for &delta in level.orbit() {
            if reached[delta as usize] || dead[delta as usize] {
                continue;
            }
            images[..i].copy_from_slice(&base[..i]);
            images[i] = delta;
            let mut hit = None;
            if partial(i, &images[..=i]) {
                let p = level.rep(delta).unwrap().clone();
                hit = descend(chain, i + 1, &p, &mut images, &partial, &full);
            }
            match hit {
                Some(g) => {
                    found.push(g);
                    reached = orbit_mask(n, base[i], &found);
                }
                None => {
                    // Elements fixing b_0..b_i map a failed image to failed images.
                    for x in orbit_list(n, delta, &found[..deeper]) {
                        dead[x as usize] = true;
                    }
                }
            }
        }
    }
    found
}

fn descend<P, F>(
    chain: &StabChain,
    j: usize,
    p: &Permutation,
    images: &mut Vec<u32>,
    partial: &P,
    full: &F,
) -> Option<Permutation>
where
    P: Fn(usize, &[u32]) -> bool,
    F: Fn(&Permutation) -> bool,
{
    if j == chain.len() {
        return if full(p) { Some(p.clone()) } else { None };
    }
    let level = &chain.levels()[j];
    for &delta in level.orbit() {
        images[j] = p.image(delta);
        if !partial(j, &images[..=j]) {
            continue;
        }
        let q = level.rep(delta).unwrap().then(p);
        if let Some(g) = descend(chain, j + 1, &q, images, partial, full) {
            return Some(g);
        }
    }
    None
}

/// Finds one element `g` of the group with `full(g)`, pruning by `partial`.
pub fn find_element<P, F>(chain: &StabChain, partial: P, full: F) -> Option<Permutation>
where
    P: Fn(usize, &[u32]) -> bool,
    F: Fn(&Permutation) -> bool,
{
    let mut images = chain.base();
    descend(
        chain,
        0,
        &Permutation::identity(chain.degree()),
        &mut images,
        &partial,
        &full,
    )
}

fn orbit_list(n: usize, start: u32, gens: &[Permutation]) -> Vec<u32> {
    let mut seen = vec![false; n];
    seen[start as usize] = true;
    let mut out = vec![start];
    let mut head = 0;
    while head < out.len() {
        let x = out[head];
        head += 1;
        for g in gens {
            let y = g.image(x);
            if !seen[y as usize] {
                seen[y as usize] = true;
                out.push(y);
            }
        }
    }
    out
}

fn orbit_mask(n: usize, start: u32, gens: &[Permutation]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for x in orbit_list(n, start, gens) {
        mask[x as usize] = true;
    }
    mask
}
