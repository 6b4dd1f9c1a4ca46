//! Type A combinatorial primitives: permutations, partitions, roots and the `⪯` order.
//!
//! Every interface is 1-based. Inversions list the larger index first.

mod enumerate;
mod partition;
mod perm;
mod roots;

pub use enumerate::{enumerate_perms, factorial, PermRange, DEFAULT_N_CAP, MAX_SWEEP_N};
pub use partition::{
    dual_partition, enumerate_partitions, j_set, jj_set, partition_cmp, step_decomposition,
    truncate_columns, Partition, StepDecomposition,
};
pub use perm::{
    delete_entries, descents_left, descents_right, inversions, maximal_staircases, Perm,
};
pub use roots::{parse_root_set, RootPair, SimpleRootSet};

pub(crate) use roots::parse_int_list;
