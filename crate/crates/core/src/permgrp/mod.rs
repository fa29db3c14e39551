//! Permutation groups: stabilizer chains, orbits, pair orbits and
//! backtrack search for subgroups defined by a property.

mod chain;
mod group;
mod perm;
mod search;

pub use chain::{Level, StabChain};
pub use group::{color_aut_backtrack, FixStats, PermutationGroup};
pub use perm::Permutation;
pub use search::{find_element, subgroup_search};
