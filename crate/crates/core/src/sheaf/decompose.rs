//! Splitting `M(G)` into Weyl-fixed pieces over conjugacy classes.

use std::sync::Arc;

use crate::error::Result;
use crate::mackey::MackeyFunctor;
use crate::qmod::{fixed_subspace, QMap, QModule, Subspace};

#[derive(Clone, Debug)]
pub struct Piece {
    pub class_rep: usize,
    /// `e^K_{(1,K)} M(K)`.
    pub space: Subspace,
    /// The Weyl group `N(K)/K` acting on the piece.
    pub weyl_module: QModule,
    pub fixed_dim: usize,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub pieces: Vec<Piece>,
    /// `dim M(G)` for the deepest level `G`.
    pub top_dim: usize,
}

impl Decomposition {
    pub fn total(&self) -> usize {
        self.pieces.iter().map(|p| p.fixed_dim).sum()
    }

    pub fn holds(&self) -> bool {
        self.total() == self.top_dim
    }
}

/// For each class `(K)` of subgroups of the deepest level, the piece
/// `e^K_{(1,K)} M(K)` with its Weyl group action and fixed dimension. The
/// fixed dimensions add up to `dim M(G)`.
pub fn decompose(m: &MackeyFunctor) -> Result<Decomposition> {
    let lat = m.lattice().clone();
    let mut pieces = Vec::with_capacity(lat.class_count());
    for c in 0..lat.class_count() {
        let k = lat.class_rep(c);
        let space = Subspace::image(&m.idempotent_action(k, lat.trivial(), k)?);
        let w = lat.weyl_group(k)?;
        let mut mats = vec![QMap::identity(space.dim()); w.group.order()];
        let mut seen = vec![false; w.group.order()];
        for (x, p) in w.projection.iter().enumerate() {
            if let Some(id) = *p {
                if !seen[id as usize] {
                    seen[id as usize] = true;
                    mats[id as usize] = space
                        .coords_of_columns(&m.conj(x as u32, k).compose(&space.inclusion())?)?;
                }
            }
        }
        let wg = Arc::new(w.group);
        let weyl_module = QModule::with_action(wg.clone(), mats)?;
        let fixed_dim = fixed_subspace(&weyl_module, &wg.whole())?.dim();
        pieces.push(Piece {
            class_rep: k,
            space,
            weyl_module,
            fixed_dim,
        });
    }
    Ok(Decomposition {
        pieces,
        top_dim: m.dim(lat.top()),
    })
}
