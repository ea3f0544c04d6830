use crate::error::{Error, Result};
use crate::qmod::{QMap, Subspace};

/// A module over `C(X, Q)` for a finite discrete `X`, split into its stalks.
///
/// Sections over `U` are `e_U M`; restriction from `U` to `V` is
/// multiplication by `e_V`.
#[derive(Clone, Debug)]
pub struct PointSplit {
    dim: usize,
    projectors: Vec<QMap>,
}

impl PointSplit {
    pub fn points(&self) -> usize {
        self.projectors.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `e_U` for `U` a set of points.
    pub fn characteristic(&self, u: &[usize]) -> QMap {
        let mut e = QMap::zero(self.dim, self.dim);
        for &x in u {
            e.add_assign(&self.projectors[x]);
        }
        e
    }

    pub fn sections(&self, u: &[usize]) -> Subspace {
        Subspace::image(&self.characteristic(u))
    }

    pub fn stalk(&self, x: usize) -> Subspace {
        Subspace::image(&self.projectors[x])
    }

    /// Restriction `F(U) -> F(V)` in the bases of the two section spaces.
    pub fn restriction(&self, u: &[usize], v: &[usize]) -> Result<QMap> {
        if !v.iter().all(|x| u.contains(x)) {
            return Err(Error::Invalid("restriction target is not a subset".into()));
        }
        let fu = self.sections(u);
        let fv = self.sections(v);
        let m = self.characteristic(v).compose(&fu.inclusion())?;
        fv.coords_of_columns(&m)
    }
}

/// Splits `M` along the characteristic functions of the points of `X`.
///
/// Each supplied matrix must be idempotent, they must be pairwise orthogonal,
/// and together they must sum to the identity.
pub fn module_to_sheaf(dim: usize, point_idempotents: Vec<QMap>) -> Result<PointSplit> {
    let mut total = QMap::zero(dim, dim);
    for (i, e) in point_idempotents.iter().enumerate() {
        if e.rows() != dim || e.cols() != dim {
            return Err(Error::ShapeMismatch(format!(
                "idempotent {i} is {}x{}",
                e.rows(),
                e.cols()
            )));
        }
        if e.compose(e)? != *e {
            return Err(Error::IdempotentMismatch(format!("e_{i}^2 != e_{i}")));
        }
        for (j, f) in point_idempotents.iter().enumerate().skip(i + 1) {
            if !e.compose(f)?.is_zero() || !f.compose(e)?.is_zero() {
                return Err(Error::IdempotentMismatch(format!("e_{i} e_{j} != 0")));
            }
        }
        total.add_assign(e);
    }
    if !total.is_identity() {
        return Err(Error::IdempotentMismatch(
            "point idempotents do not sum to 1".into(),
        ));
    }
    Ok(PointSplit {
        dim,
        projectors: point_idempotents,
    })
}
