//! Modules over `F_p` for permutation groups.

pub mod matrix;
pub mod module;

pub use matrix::{Echelon, Matrix};
pub use module::{
    fixed_space, hom_dim, induced_action, module_from_action, module_from_quotient, spin,
    DecompositionVerdict, FpModule, Irreducibility, Section, DEFAULT_RELATOR_BUDGET,
    IRREDUCIBILITY_DIM_LIMIT,
};
