//! Exact linear algebra over `Q`.

mod map;
mod module;
mod subspace;

pub use map::QMap;
pub use module::{
    colimit_of_sequence, fixed_points, fixed_subspace, sequence_cone, Colimit, GroupAction, QModule,
};
pub use subspace::Subspace;
