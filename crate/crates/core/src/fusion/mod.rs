//! Fusion systems of finite groups on a Sylow subgroup.

pub mod autf;
pub mod embedded;
pub mod kappa;
pub mod labeling;
pub mod system;

pub use autf::FusionAutGroup;
pub use embedded::{has_strongly_p_embedded, strongly_p_embedded_subgroup};
pub use kappa::{out_order, KappaBar, KappaInjCriteria, KappaVerdict, OutSource};
pub use labeling::{abelian_type, ClassLabeling, Fingerprint};
pub use system::{EssentialInfo, FusionMorphism, FusionSystem, OutToAut, ZHatMember};

#[cfg(test)]
mod tests;
