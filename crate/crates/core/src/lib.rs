//! Finite racks and quandles: covering extensions by constant cocycles,
//! congruences, identities, adjoint groups and structural verdicts.

pub mod adjoint;
pub mod analysis;
pub mod catalog;
pub mod cli;
pub mod congruence;
pub mod cover;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod io;
pub mod iso;
pub mod permgroup;
pub mod quasigroup;
pub mod terms;

pub use congruence::Partition;
pub use cover::{ConstantCocycle, CoverStructure, Fiber};
pub use error::{Error, Result};
pub use permgroup::{PermGroup, Permutation};
pub use quasigroup::{AbelianGroup, LeftQuasigroup};
pub use terms::{Identity, Term};
