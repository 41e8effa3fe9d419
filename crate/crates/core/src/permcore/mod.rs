//! Exact permutation-group engine.

pub mod backtrack;
pub mod chain;
pub mod cosets;
pub mod group;
pub mod ops;
pub mod perm;

pub use cosets::{coset_action, right_transversal, CosetAction, DEFAULT_INDEX_BOUND, QUOTIENT_INDEX_BOUND};
pub use group::{is_prime, p_part, PermGroup, Subgroup};
pub use ops::{
    are_conjugate, center, centralizer, derived_subgroup, element_centralizer,
    element_transporter, intersection, is_p_group, normal_closure, normalizer, p_core,
    p_part_element, p_prime_core, simultaneous_transporter, subgroup_transporter, sylow, ConjArg,
};
pub use perm::{CycleType, Permutation};
