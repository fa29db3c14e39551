//! Fixed benchmark instances, shared by the criterion benches.

use cohcfg_core::catalog;
use cohcfg_core::wl::{inv_of_group, RelationSet};
use cohcfg_core::{CoherentConfiguration, Permutation};

/// Arc classes of the Paley tournament on `q` vertices.
pub fn paley_seeds(q: u32) -> RelationSet {
    catalog::paley_tournament(q).color_classes()
}

/// `x` and a copy relabeled by `i -> (a*i + 1) mod n`, `a` coprime to `n`.
pub fn relabeled_pair(x: &CoherentConfiguration, a: u32) -> (CoherentConfiguration, CoherentConfiguration) {
    let n = x.n() as u32;
    let f = Permutation::from_images((0..n).map(|i| (a * i + 1) % n).collect()).expect("a is coprime to n");
    (x.clone(), x.relabeled(&f))
}

/// `inv(G)` for a named catalog group.
pub fn catalog_scheme(name: &str) -> CoherentConfiguration {
    inv_of_group(&catalog::group(name).unwrap_or_else(|| panic!("no catalog group {name}")))
}
