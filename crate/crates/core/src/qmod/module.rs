use std::sync::Arc;

use super::{QMap, Subspace};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

/// A linear action of a finite group: one invertible matrix per element.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: Arc<FiniteGroup>,
    matrices: Vec<QMap>,
}

impl GroupAction {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn matrix(&self, g: u32) -> &QMap {
        &self.matrices[g as usize]
    }
}

/// Finite-dimensional `Q`-vector space, optionally with a group action.
#[derive(Clone, Debug)]
pub struct QModule {
    dim: usize,
    action: Option<GroupAction>,
}

impl QModule {
    pub fn new(dim: usize) -> Self {
        QModule { dim, action: None }
    }

    /// Validates `rho(e) = id` and `rho(g) rho(h) = rho(gh)` on all pairs.
    pub fn with_action(group: Arc<FiniteGroup>, matrices: Vec<QMap>) -> Result<Self> {
        let n = group.order();
        if matrices.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "{} matrices for a group of order {n}",
                matrices.len()
            )));
        }
        let dim = matrices[0].rows();
        if matrices.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::ShapeMismatch(
                "action matrices must be square of equal size".into(),
            ));
        }
        if !matrices[0].is_identity() {
            return Err(Error::Invalid(
                "identity does not act as the identity".into(),
            ));
        }
        for g in group.elements() {
            for h in group.elements() {
                let lhs = matrices[g as usize].compose(&matrices[h as usize])?;
                if lhs != matrices[group.mul(g, h) as usize] {
                    return Err(Error::Invalid(format!(
                        "action is not multiplicative at ({g},{h})"
                    )));
                }
            }
        }
        Ok(QModule {
            dim,
            action: Some(GroupAction { group, matrices }),
        })
    }

    /// Extends matrices given on `group.generators()` along the word tree.
    pub fn from_generator_images(group: Arc<FiniteGroup>, images: &[QMap]) -> Result<Self> {
        if images.len() != group.generators().len() {
            return Err(Error::ShapeMismatch(format!(
                "{} generator images for {} generators",
                images.len(),
                group.generators().len()
            )));
        }
        let dim = images.first().map_or(0, QMap::rows);
        let mut mats = vec![QMap::identity(dim); group.order()];
        for &x in group.bfs_order().iter().skip(1) {
            let (p, s) = group.bfs_parent(x).expect("non-identity");
            mats[x as usize] = mats[p as usize].compose(&images[s])?;
        }
        QModule::with_action(group, mats)
    }

    pub fn trivial_action(group: Arc<FiniteGroup>, dim: usize) -> Self {
        let matrices = vec![QMap::identity(dim); group.order()];
        QModule {
            dim,
            action: Some(GroupAction { group, matrices }),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> Option<&GroupAction> {
        self.action.as_ref()
    }

    pub fn matrix(&self, g: u32) -> Result<&QMap> {
        Ok(self.action.as_ref().ok_or(Error::NoAction)?.matrix(g))
    }

    /// Pulls the action back along a homomorphism given element-wise.
    pub fn inflate(&self, group: Arc<FiniteGroup>, projection: &[u32]) -> Result<QModule> {
        let act = self.action.as_ref().ok_or(Error::NoAction)?;
        let matrices = projection.iter().map(|&p| act.matrix(p).clone()).collect();
        Ok(QModule {
            dim: self.dim,
            action: Some(GroupAction { group, matrices }),
        })
    }

    pub fn direct_sum(&self, other: &QModule) -> Result<QModule> {
        match (&self.action, &other.action) {
            (None, None) => Ok(QModule::new(self.dim + other.dim)),
            (Some(a), Some(b)) if a.group == b.group => {
                let matrices = a
                    .matrices
                    .iter()
                    .zip(&b.matrices)
                    .map(|(x, y)| x.direct_sum(y))
                    .collect();
                Ok(QModule {
                    dim: self.dim + other.dim,
                    action: Some(GroupAction {
                        group: a.group.clone(),
                        matrices,
                    }),
                })
            }
            _ => Err(Error::ShapeMismatch(
                "direct sum of modules over different groups".into(),
            )),
        }
    }
}

/// Vectors fixed by every element of `s`, as a subspace.
pub fn fixed_subspace(m: &QModule, s: &Subgroup) -> Result<Subspace> {
    let act = m.action.as_ref().ok_or(Error::NoAction)?;
    let gens = act.group.subgroup_generators(s);
    let mats: Vec<QMap> = gens.iter().map(|&g| act.matrix(g).clone()).collect();
    Ok(Subspace::fixed_by(m.dim, &mats))
}

/// `M^S` and its inclusion into `M`.
pub fn fixed_points(m: &QModule, s: &Subgroup) -> Result<(QModule, QMap)> {
    let sub = fixed_subspace(m, s)?;
    Ok((QModule::new(sub.dim()), sub.inclusion()))
}

/// Colimit of a finite sequence `M_0 -> M_1 -> ... -> M_d`, realized as the
/// last term once the sequence has stabilized.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub dim: usize,
    /// `cone[i]: M_i -> M_d`, with `cone[d]` the identity.
    pub cone: Vec<QMap>,
    /// Smallest index from which every map is an isomorphism.
    pub stable_from: usize,
}

impl Colimit {
    /// Whether the last map is an isomorphism (vacuous for one term).
    pub fn is_stable(&self) -> bool {
        self.stable_from + 1 < self.cone.len() || self.cone.len() == 1
    }
}

/// Computes the cone maps and stabilization index without judging it.
pub fn sequence_cone(first_dim: usize, maps: &[QMap]) -> Result<Colimit> {
    let mut dim = first_dim;
    for (i, m) in maps.iter().enumerate() {
        if m.cols() != dim {
            return Err(Error::ShapeMismatch(format!(
                "map {i} has domain {} but the previous term has dim {dim}",
                m.cols()
            )));
        }
        dim = m.rows();
    }
    let mut cone = vec![QMap::identity(dim)];
    for m in maps.iter().rev() {
        let next = cone.last().expect("non-empty").compose(m)?;
        cone.push(next);
    }
    cone.reverse();
    let mut stable_from = maps.len();
    while stable_from > 0 && maps[stable_from - 1].is_isomorphism() {
        stable_from -= 1;
    }
    Ok(Colimit {
        dim,
        cone,
        stable_from,
    })
}

/// Colimit of a chain that must end in an isomorphism; otherwise the
/// truncation is too shallow and `NotStabilized` is returned.
pub fn colimit_of_sequence(first_dim: usize, maps: &[QMap]) -> Result<Colimit> {
    let c = sequence_cone(first_dim, maps)?;
    if !maps.is_empty() && !maps[maps.len() - 1].is_isomorphism() {
        return Err(Error::NotStabilized { chain: None });
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2).unwrap())
    }

    #[test]
    fn fixed_points_of_c2_representations() {
        let g = c2();
        let trivial = QModule::trivial_action(g.clone(), 3);
        assert_eq!(fixed_points(&trivial, &g.whole()).unwrap().0.dim(), 3);

        let regular =
            QModule::from_generator_images(g.clone(), &[QMap::from_i64(&[&[0, 1], &[1, 0]])])
                .unwrap();
        let (fp, inc) = fixed_points(&regular, &g.whole()).unwrap();
        assert_eq!(fp.dim(), 1);
        assert!(inc.is_injective());

        let sign = QModule::from_generator_images(g.clone(), &[QMap::from_i64(&[&[-1]])]).unwrap();
        assert_eq!(fixed_points(&sign, &g.whole()).unwrap().0.dim(), 0);
        assert_eq!(
            fixed_points(&sign, &g.trivial_subgroup()).unwrap().0.dim(),
            1
        );

        assert_eq!(
            fixed_points(&QModule::new(2), &g.whole()).unwrap_err(),
            Error::NoAction
        );
    }

    #[test]
    fn action_must_be_multiplicative() {
        let g = c2();
        assert!(QModule::from_generator_images(g.clone(), &[QMap::from_i64(&[&[2]])]).is_err());
        let mats = vec![QMap::identity(1), QMap::from_i64(&[&[-1]])];
        assert!(QModule::with_action(g, mats).is_ok());
    }

    #[test]
    fn colimits() {
        let id = QMap::identity(2);
        let c = colimit_of_sequence(2, &[id.clone(), id.clone()]).unwrap();
        assert_eq!(c.dim, 2);
        assert!(c.cone.iter().all(QMap::is_identity));

        // 0 -> 0 -> Q
        let zz = QMap::zero(0, 0);
        let zq = QMap::zero(1, 0);
        assert_eq!(
            colimit_of_sequence(0, &[zz.clone(), zq.clone()]).unwrap_err(),
            Error::NotStabilized { chain: None }
        );
        let c = colimit_of_sequence(0, &[zz, zq, QMap::identity(1)]).unwrap();
        assert_eq!(c.dim, 1);
        assert_eq!(c.stable_from, 2);

        let p = QMap::scalar(1, q(3));
        let c = colimit_of_sequence(1, &[p.clone(), p.clone(), p]).unwrap();
        assert_eq!(c.dim, 1);
        assert_eq!(c.cone[0], QMap::scalar(1, q(27)));
        assert_eq!(c.stable_from, 0);

        assert!(colimit_of_sequence(3, &[QMap::identity(2)]).is_err());
    }

    #[test]
    fn cone_commutes_with_chain() {
        let maps = vec![
            QMap::from_i64(&[&[1, 0], &[0, 0]]),
            QMap::from_i64(&[&[2, 1], &[1, 1]]),
        ];
        let c = sequence_cone(2, &maps).unwrap();
        for (i, m) in maps.iter().enumerate() {
            assert_eq!(c.cone[i + 1].compose(m).unwrap(), c.cone[i]);
        }
    }
}
