//! Divisor theory on finite graphs: chip-firing, reduced divisors, the
//! Jacobian, Baker–Norine rank, and the Weierstrass semigroups of a vertex.
//!
//! Divisors and firing scripts are integer vectors indexed by vertex. All
//! arithmetic is exact; floating point appears only in the algebraic
//! connectivity, which is reported and never used in a decision.

pub mod connectivity;
pub mod divisor;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod graph;
pub mod jacobian;
pub mod rank;
pub mod reduce;
pub mod semigroup;
pub mod snf;
pub mod sweep;
pub mod weierstrass;

pub use connectivity::{connectivity_report, ConnectivityReport};
pub use divisor::{divisor_of, monopole_witness_valid, Divisor, FiringScript, MonopoleCheck};
pub use error::{Error, Result};
pub use graph::{Graph, LaplacianMatrix};
pub use jacobian::{jacobian, JacobianStructure};
pub use rank::{RankCertificate, RankEngine};
pub use reduce::{is_g_parking, linearly_equivalent, reduce, ReducedForm, Reducer};
pub use semigroup::{SemigroupWindow, Witness};
pub use sweep::{conjecture_sweep, SweepConfig, SweepReport};
pub use weierstrass::{containment_report, ContainmentReport, Weierstrass};
