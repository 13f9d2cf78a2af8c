//! Exact finite order-topology workbench.
//!
//! Finite posets and finite topological spaces are handled by direct
//! enumeration over [`Subset`] bitsets. On top of that sit Scott spaces,
//! the Xi-Zhao dcpo model of a poset, closed-set families (`S_c`, `Irr`,
//! `KF`, `WD`), sobrification, the well-filtered reflection and a classifier
//! for the usual separation-style properties. The cofinite topology on ℕ is
//! handled symbolically in [`symbolic`].

pub mod families;
pub mod fixtures;
pub mod lab;
pub mod order;
pub mod reflections;
pub mod scott;
pub mod subset;
pub mod symbolic;
pub mod systems;
pub mod topo;

pub use families::{ClosedFamily, FamilyError, FamilyRole, FilteredFamily, SpaceFamilies, WdStatus};
pub use order::{FinPoset, OrderError};
pub use subset::Subset;
pub use topo::{ContinuousMap, FinSpace, HyperSpace, TopoError};
