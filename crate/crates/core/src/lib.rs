//! Exact rational Mackey functors and Weyl sheaves.
//!
//! Finite groups are stored as Cayley tables; profinite groups are presented
//! as finite towers of quotients `G/N_d -> ... -> G/N_0` and every statement
//! is evaluated at an explicit truncation depth. All linear algebra is over
//! `Q` with arbitrary-precision rationals, so every identity is checked
//! exactly.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`]: finite groups, subgroup lattices, cosets, Möbius function.
//! * [`qmod`]: matrices, subspaces and modules over `Q`.
//! * [`burnside`]: tables of marks, Burnside ring arithmetic, idempotents.
//! * [`tower`]: towers of finite quotients and the clopen basis of the
//!   subgroup space.
//! * [`mackey`]: Mackey functors, the axiom checker, builtin examples.
//! * [`sheaf`]: equivariant and Weyl sheaves, and the two functors between
//!   sheaves and Mackey functors.

pub mod burnside;
pub mod error;
pub mod group;
pub mod io;
pub mod mackey;
pub mod qmod;
pub mod rational;
pub mod report;
pub mod sheaf;
pub mod suite;
pub mod tower;

pub use burnside::{BurnsideElement, BurnsideRing, MarkFunction, TableOfMarks};
pub use error::{Error, Result};
pub use group::{FiniteGroup, Subgroup, SubgroupLattice};
pub use mackey::MackeyFunctor;
pub use qmod::{QMap, QModule, Subspace};
pub use rational::Q;
pub use report::{Check, Report, Status};
pub use sheaf::{EquivariantSheaf, Section, WeylSheaf};
pub use tower::{ClopenBasic, ClosedChain, OpenSubgroupRef, Tower};
