//! Exact computations around discrete torsion in orbifolds of finite groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`]: finite groups from Cayley tables, conjugacy and abelianization.
//! * [`snf`], [`abelian`], [`howell`]: exact integer and `Z/N` linear algebra.
//! * [`cochain`], [`cohomology`]: normalized bar cochains, `H^p(G, Z/N)`,
//!   `H^p(G, U(1))` through the Bockstein quotient, and an integral oracle.
//! * [`phases`]: twisted-sector phases, partition sums, modular reindexing,
//!   holonomy and membrane phases.
//! * [`cech`]: Čech-level equivariant structures on finite discrete sites.
//! * [`topology`]: equivariant cell complexes and orbifold Euler characteristics.
//! * [`projrep`]: twisted regular representations and ω-regular classes.

pub mod abelian;
pub mod cech;
pub mod error;
pub mod cochain;
pub mod cohomology;
pub mod cyclotomic;
pub mod group;
pub mod howell;
pub mod phase;
pub mod phases;
pub mod projrep;
pub mod snf;
pub mod topology;

pub use error::{Error, Result};
pub use group::{parse_group_spec, FiniteGroup};
pub use phase::Phase;
