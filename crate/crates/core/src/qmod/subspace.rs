use num_traits::Zero;

use super::QMap;
use crate::error::{Error, Result};
use crate::rational::Q;

/// A subspace of `Q^n` with its unique reduced row-echelon basis.
///
/// Because the basis is reduced, the coordinates of a member vector are its
/// entries at the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: QMap,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vec<Q>]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let m = QMap::from_rows(vectors.to_vec()).expect("equal-length vectors");
        assert_eq!(m.cols(), ambient, "vector length");
        Subspace::from_row_space(&m)
    }

    fn from_row_space(m: &QMap) -> Subspace {
        let (r, pivots) = m.rref();
        let rows: Vec<Vec<Q>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        let basis = if rows.is_empty() {
            QMap::zero(0, m.cols())
        } else {
            QMap::from_rows(rows).expect("rect")
        };
        Subspace {
            ambient: m.cols(),
            basis,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: QMap::zero(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: QMap::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Null space of a map.
    pub fn kernel(map: &QMap) -> Subspace {
        Subspace::span(map.cols(), &map.kernel_basis())
    }

    /// Column space of a map.
    pub fn image(map: &QMap) -> Subspace {
        Subspace::from_row_space(&map.transpose())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        self.basis.row(i).to_vec()
    }

    pub fn basis(&self) -> Vec<Vec<Q>> {
        (0..self.dim()).map(|i| self.basis_vector(i)).collect()
    }

    /// `ambient x dim` matrix whose columns are the basis vectors.
    pub fn inclusion(&self) -> QMap {
        self.basis.transpose()
    }

    pub fn coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let c: Vec<Q> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.inclusion().apply(&c);
        (back.as_slice() == v).then_some(c)
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    /// Coordinates of every column of `m`, which must lie in this subspace.
    pub fn coords_of_columns(&self, m: &QMap) -> Result<QMap> {
        if m.rows() != self.ambient {
            return Err(Error::ShapeMismatch(format!(
                "{} rows vs ambient {}",
                m.rows(),
                self.ambient
            )));
        }
        let mut out = QMap::zero(self.dim(), m.cols());
        for j in 0..m.cols() {
            let c = self
                .coords(&m.column(j))
                .ok_or_else(|| Error::ShapeMismatch(format!("column {j} leaves the subspace")))?;
            for (i, x) in c.into_iter().enumerate() {
                out[(i, j)] = x;
            }
        }
        Ok(out)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        // v = A x = B y  <=>  [A | -B] (x, y) = 0
        let a = self.inclusion();
        let b = other.inclusion();
        let mut stacked = QMap::zero(self.ambient, a.cols() + b.cols());
        for r in 0..self.ambient {
            for c in 0..a.cols() {
                stacked[(r, c)] = a[(r, c)].clone();
            }
            for c in 0..b.cols() {
                stacked[(r, a.cols() + c)] = -b[(r, c)].clone();
            }
        }
        let vecs: Vec<Vec<Q>> = stacked
            .kernel_basis()
            .iter()
            .map(|k| a.apply(&k[..a.cols()]))
            .collect();
        Subspace::span(self.ambient, &vecs)
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Subspace of vectors fixed by every given endomorphism.
    pub fn fixed_by(ambient: usize, maps: &[QMap]) -> Subspace {
        if maps.is_empty() {
            return Subspace::full(ambient);
        }
        let id = QMap::identity(ambient);
        let mut stacked = QMap::zero(0, ambient);
        for m in maps {
            stacked = stacked
                .vstack(&m.sub(&id).expect("square map"))
                .expect("stack");
        }
        Subspace::kernel(&stacked)
    }

    pub fn is_trivial_vector(v: &[Q]) -> bool {
        v.iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn coordinates_at_pivots() {
        let s = Subspace::span(3, &[vec![q(2), q(2), q(0)], vec![q(0), q(0), q(5)]]);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.coords(&[q(3), q(3), q(1)]).unwrap(), vec![q(3), q(1)]);
        assert!(s.coords(&[q(1), q(0), q(0)]).is_none());
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::span(3, &[vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]);
        let b = Subspace::span(3, &[vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]]);
        assert_eq!(
            a.intersection(&b),
            Subspace::span(3, &[vec![q(0), q(1), q(0)]])
        );
    }

    #[test]
    fn image_and_kernel() {
        let m = QMap::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(Subspace::image(&m).dim(), 1);
        assert_eq!(Subspace::kernel(&m).dim(), 1);
        assert!(Subspace::image(&m).contains(&[q(3), q(6)]));
    }
}
