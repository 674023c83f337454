//! Integer partitions, set partitions of `{1..n}`, and the lattice
//! predicates (transversality, complementarity) used by the Wick rule.

mod int_partition;
mod set_partition;

pub use int_partition::{enum_int_partitions, enum_partitions_of_weight, IntPartition};
pub use set_partition::{
    enum_complementary, enum_set_partitions, for_each_set_partition, is_complementary,
    is_transversal, meet, mobius_coeff, SetPartition,
};
