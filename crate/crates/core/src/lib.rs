//! Derivation rings, adjoint groups and non-inner automorphisms of small
//! finite p-groups.

pub mod berkovich;
pub mod catalog;
pub mod cli;
pub mod derivation;
pub mod error;
pub mod fullness;
pub mod group;
pub mod io;
pub mod lattice;
pub mod pc;
pub mod report;
pub mod ring;
pub mod structure;

pub use error::{Error, Result};
pub use group::{Elem, FiniteGroup, GroupHom, Subgroup};
pub use pc::{from_pc_presentation, PcPresentation};
