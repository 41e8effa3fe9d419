//! Structure of a single p-group: subgroup classes, characteristic subgroups, automorphisms.

pub mod aut;
pub mod charsub;
pub mod classes;
pub mod table;

pub use aut::{aut_group, PGroupAutGroup, AUT_GENERATOR_LIMIT};
pub use charsub::Extraspecial;
pub use classes::{
    class_orbit, class_reps, subgroup_classes, EnumMode, LatticeOptions, PSubgroupClass,
    DEFAULT_LATTICE_BOUND,
};
pub use table::{Bits, PGroupTable, TABLE_LIMIT};

use crate::error::Result;
use crate::permcore::PermGroup;

/// `Ω₁(P)` for a p-group given as a permutation group.
pub fn omega1(p: &PermGroup) -> Result<PermGroup> {
    let t = PGroupTable::new(p)?;
    Ok(t.to_group(&t.omega1()))
}

pub fn second_center(s: &PermGroup) -> Result<PermGroup> {
    let t = PGroupTable::new(s)?;
    Ok(t.to_group(&t.second_center()))
}

pub fn thompson_subgroup(s: &PermGroup) -> Result<PermGroup> {
    let t = PGroupTable::new(s)?;
    Ok(t.to_group(&t.thompson()?))
}

pub fn is_extraspecial(s: &PermGroup) -> Result<Extraspecial> {
    Ok(PGroupTable::new(s)?.extraspecial())
}
