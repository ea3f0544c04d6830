//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use mackey_core::{SubgroupLattice, Tower};

pub fn tower(spec: &str) -> Arc<Tower> {
    Arc::new(Tower::from_spec(spec).expect("builtin tower"))
}

pub fn lattice(spec: &str) -> Arc<SubgroupLattice> {
    tower(spec).lattice(0).clone()
}
