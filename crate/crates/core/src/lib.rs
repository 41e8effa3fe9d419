pub mod catalog;
pub mod error;
pub mod fusion;
pub mod linking;
pub mod modrep;
pub mod oracle;
pub mod plattice;
pub mod permcore;

pub use error::{Error, Result};
