//! Coherent configurations, two-dimensional Weisfeiler-Leman closure, bases
//! and generalized bases, and schurity recognition for antisymmetric
//! configurations and tournaments.

pub mod algo;
pub mod bases;
pub mod catalog;
pub mod ccfg;
pub mod constructions;
pub mod error;
pub mod io;
pub mod permgrp;
pub mod wl;

pub use ccfg::{CoherentConfiguration, ColorMatrix, EquivalenceRelation};
pub use error::{Error, GroupError, Result};
pub use permgrp::{Permutation, PermutationGroup};
