//! Right transversals of subgroups, the right loops they induce, group
//! torsion, right-loop congruences and solvability, plus exhaustive
//! verification suites over catalogs of small finite groups.

pub mod cay;
pub mod congruence;
pub mod error;
pub mod group;
pub mod harness;
pub mod perm;
pub mod rightloop;
pub mod transversal;

pub use error::{Error, Result};
pub use group::{ElementSet, FiniteGroup, Subgroup};
pub use rightloop::RightLoop;
