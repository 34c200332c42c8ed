//! Permutations, partitions and words.

mod partition;
mod perm;
mod word;

pub use partition::{c_coeff, c_coeff_multi, partitions, rho_nu, MultiPartition, Partition};
pub use perm::{all_perms, all_perms_limited, Perm, MAX_PERM_ORDER};
pub use word::{
    canon_ct_seq, canon_t_seq, least_rotation, multiset_equal, transpose_seq, Equivalence, Letter,
    Transposable, Word, WordMultiset,
};
