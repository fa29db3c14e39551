use crate::ccfg::{CoherentConfiguration, ColorMatrix};
use crate::error::{Error, Result};
use crate::permgrp::PermutationGroup;
use crate::wl::{closure_of_matrix, AlgebraicIsomorphism};

/// A configuration on the disjoint union of several parts.
#[derive(Clone, Debug)]
pub struct Glued {
    pub config: CoherentConfiguration,
    /// Points of each part, in order; part `i` occupies a contiguous range.
    pub parts: Vec<Vec<u32>>,
}

/// Checks `ψ_{i,i} = id` and `ψ_{i,j} ψ_{j,k} = ψ_{i,k}` wherever defined,
/// and that every `ψ_{i,j}` is an algebraic isomorphism `X_i → X_j`.
fn check_psi(
    parts: &[CoherentConfiguration],
    psi: &[Vec<Option<AlgebraicIsomorphism>>],
) -> Result<()> {
    let p = parts.len();
    if psi.len() != p || psi.iter().any(|row| row.len() != p) {
        return Err(Error::InconsistentPsi(format!("expected a {p} × {p} family")));
    }
    for i in 0..p {
        for j in 0..p {
            let Some(f) = &psi[i][j] else { continue };
            AlgebraicIsomorphism::new(&parts[i], &parts[j], f.map().to_vec())
                .map_err(|e| Error::InconsistentPsi(format!("ψ[{i}][{j}]: {e}")))?;
            if i == j && !f.is_identity() {
                return Err(Error::InconsistentPsi(format!("ψ[{i}][{i}] is not the identity")));
            }
            for k in 0..p {
                if let (Some(g), Some(h)) = (&psi[j][k], &psi[i][k]) {
                    if f.then(g) != *h {
                        return Err(Error::InconsistentPsi(format!(
                            "ψ[{i}][{j}] then ψ[{j}][{k}] differs from ψ[{i}][{k}]"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The smallest coherent configuration on the disjoint union of `parts` in
/// which colors matched by `psi` are fused across parts and the relations
/// `Ω_i × Ω_j` are grouped by the orbits of `q` on pairs of part indices.
pub fn glue_disjoint_union(
    parts: &[CoherentConfiguration],
    psi: &[Vec<Option<AlgebraicIsomorphism>>],
    q: &PermutationGroup,
) -> Result<Glued> {
    let p = parts.len();
    if q.degree() != p {
        return Err(Error::DegreeMismatch {
            expected: p,
            found: q.degree(),
        });
    }
    check_psi(parts, psi)?;

    // Union-find over (part, color) nodes linked by ψ.
    let mut offset = vec![0usize; p + 1];
    for i in 0..p {
        offset[i + 1] = offset[i] + parts[i].rank();
    }
    let mut parent: Vec<usize> = (0..offset[p]).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..p {
        for j in 0..p {
            if let Some(f) = &psi[i][j] {
                for c in 0..parts[i].rank() {
                    let a = find(&mut parent, offset[i] + c);
                    let b = find(&mut parent, offset[j] + f.apply(c as u32) as usize);
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }

    let mut start = vec![0usize; p + 1];
    for i in 0..p {
        start[i + 1] = start[i] + parts[i].n();
    }
    let n = start[p];
    let mut part_of = vec![0usize; n];
    for i in 0..p {
        part_of[start[i]..start[i + 1]].fill(i);
    }
    let blocks = q.pair_orbits();
    let mut labels: Vec<(bool, usize)> = Vec::with_capacity(n * n);
    for a in 0..n {
        let i = part_of[a];
        for b in 0..n {
            let j = part_of[b];
            labels.push(if i == j {
                let c = parts[i].color((a - start[i]) as u32, (b - start[i]) as u32);
                (false, find(&mut parent, offset[i] + c as usize))
            } else {
                (true, blocks.get(i as u32, j as u32) as usize)
            });
        }
    }
    let config = closure_of_matrix(&ColorMatrix::from_labels(n, &labels)).canonical();
    let parts = (0..p)
        .map(|i| (start[i] as u32..start[i + 1] as u32).collect())
        .collect();
    Ok(Glued { config, parts })
}
