//! Wreath products, Cartesian powers, exponentiation, Hamming relations and
//! the gluing of configurations along a disjoint union.

mod glue;
mod product;

pub use glue::{glue_disjoint_union, Glued};
pub use product::{
    act_on_tuple, block_relation, cartesian_power, constant_point, exponentiation,
    hamming_distance, hamming_relations, is_union_of_colors, rho_map, rho_preimage,
    wreath_blocks, wreath_point_map, wreath_product, ProductPointMap,
};
