use std::collections::BTreeMap;
use std::sync::Arc;

use super::MackeyFunctor;
use crate::burnside::{conjugation_matrix, induction_matrix, restriction_matrix, BurnsideRing};
use crate::error::{Error, Result};
use crate::group::left_transversal;
use crate::qmod::{fixed_subspace, QMap, QModule, Subspace};
use crate::rational::Q;
use crate::tower::Tower;

/// The built-in Mackey functors.
#[derive(Clone, Debug)]
pub enum Builtin {
    /// `B` everywhere, restriction the identity, induction the index.
    Constant {
        dim: usize,
    },
    /// `H -> A_Q(H)`.
    Burnside,
    /// `H -> C^H` for a module `C` over the level-`level` group.
    FixedPoint {
        module: QModule,
        level: usize,
    },
    Zero,
    /// The constant functor with induction replaced by the identity; fails
    /// the double coset formula whenever some index exceeds 1.
    BrokenConstant,
}

impl Builtin {
    pub fn build(&self, tower: Arc<Tower>, depth: usize) -> Result<MackeyFunctor> {
        match self {
            Builtin::Constant { dim } => MackeyFunctor::constant(tower, depth, *dim),
            Builtin::Burnside => MackeyFunctor::burnside(tower, depth),
            Builtin::FixedPoint { module, level } => {
                MackeyFunctor::fixed_point(tower, depth, module, *level)
            }
            Builtin::Zero => MackeyFunctor::constant(tower, depth, 0).map(|m| m.with_name("zero")),
            Builtin::BrokenConstant => MackeyFunctor::broken_constant(tower, depth),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Builtin::Constant { .. } => "constant",
            Builtin::Burnside => "burnside",
            Builtin::FixedPoint { .. } => "fixed_point",
            Builtin::Zero => "zero",
            Builtin::BrokenConstant => "broken_constant",
        }
    }
}

fn assemble(
    name: String,
    tower: Arc<Tower>,
    depth: usize,
    dims: Vec<usize>,
    res: impl Fn(usize, usize) -> QMap,
    ind: impl Fn(usize, usize) -> QMap,
    conj: impl Fn(u32, usize) -> QMap,
) -> Result<MackeyFunctor> {
    tower.check_depth(depth)?;
    let lat = tower.lattice(depth).clone();
    let mut r = BTreeMap::new();
    let mut i = BTreeMap::new();
    for h in 0..lat.len() {
        for &k in lat.subsets(h) {
            r.insert((h, k), res(h, k));
            i.insert((h, k), ind(h, k));
        }
    }
    let gens = tower.level(depth).generators().to_vec();
    let c = gens
        .iter()
        .map(|&g| (0..lat.len()).map(|h| conj(g, h)).collect())
        .collect();
    MackeyFunctor::from_parts(name, tower, depth, dims, r, i, c)
}

impl MackeyFunctor {
    pub fn constant(tower: Arc<Tower>, depth: usize, dim: usize) -> Result<Self> {
        tower.check_depth(depth)?;
        let lat = tower.lattice(depth).clone();
        let l2 = lat.clone();
        assemble(
            format!("constant({dim})"),
            tower,
            depth,
            vec![dim; lat.len()],
            |_, _| QMap::identity(dim),
            move |h, k| {
                QMap::scalar(
                    dim,
                    Q::from_integer(((l2.order_of(h) / l2.order_of(k)) as i64).into()),
                )
            },
            |_, _| QMap::identity(dim),
        )
    }

    pub fn broken_constant(tower: Arc<Tower>, depth: usize) -> Result<Self> {
        tower.check_depth(depth)?;
        let n = tower.lattice(depth).len();
        assemble(
            "broken_constant".into(),
            tower,
            depth,
            vec![1; n],
            |_, _| QMap::identity(1),
            |_, _| QMap::identity(1),
            |_, _| QMap::identity(1),
        )
    }

    pub fn burnside(tower: Arc<Tower>, depth: usize) -> Result<Self> {
        tower.check_depth(depth)?;
        let lat = tower.lattice(depth).clone();
        let rings: Vec<BurnsideRing> = (0..lat.len())
            .map(|h| BurnsideRing::new(lat.clone(), h))
            .collect();
        let dims = rings.iter().map(BurnsideRing::rank).collect();
        assemble(
            "burnside".into(),
            tower,
            depth,
            dims,
            |h, k| restriction_matrix(&rings[h], &rings[k]),
            |h, k| induction_matrix(&rings[k], &rings[h]),
            |g, h| conjugation_matrix(g, &rings[h], &rings[lat.conjugate(g, h)]),
        )
    }

    /// `H -> C^H` for a discrete module `C`, given over the level-`level` group.
    pub fn fixed_point(
        tower: Arc<Tower>,
        depth: usize,
        module: &QModule,
        level: usize,
    ) -> Result<Self> {
        tower.check_depth(depth)?;
        if level > depth {
            return Err(Error::DepthTooSmall { level, depth });
        }
        let act = module.action().ok_or(Error::NoAction)?;
        if act.group().order() != tower.level(level).order() {
            return Err(Error::ShapeMismatch(format!(
                "module acted on by a group of order {}, level {level} has order {}",
                act.group().order(),
                tower.level(level).order()
            )));
        }
        let g = tower.level(depth).clone();
        let projection: Vec<u32> = g
            .elements()
            .map(|x| tower.project_element(x, depth, level))
            .collect();
        let c = module.inflate(g.clone(), &projection)?;
        let lat = tower.lattice(depth).clone();
        let fixed: Vec<Subspace> = (0..lat.len())
            .map(|h| fixed_subspace(&c, lat.subgroup(h)))
            .collect::<Result<_>>()?;
        let dims = fixed.iter().map(Subspace::dim).collect();
        let rho = |x: u32| c.matrix(x).expect("inflated action");
        assemble(
            format!("fixed_point({})", module.dim()),
            tower,
            depth,
            dims,
            |h, k| {
                fixed[k]
                    .coords_of_columns(&fixed[h].inclusion())
                    .expect("H-fixed vectors are K-fixed")
            },
            |h, k| {
                let mut sum = QMap::zero(c.dim(), fixed[k].dim());
                for t in left_transversal(&g, lat.subgroup(k), lat.subgroup(h)) {
                    sum.add_assign(&rho(t).compose(&fixed[k].inclusion()).expect("shape"));
                }
                fixed[h]
                    .coords_of_columns(&sum)
                    .expect("orbit sums are H-fixed")
            },
            |x, h| {
                let moved = rho(x).compose(&fixed[h].inclusion()).expect("shape");
                fixed[lat.conjugate(x, h)]
                    .coords_of_columns(&moved)
                    .expect("translates of fixed vectors")
            },
        )
    }
}

/// A 2-dimensional module over the level-`level` group, inflated from a
/// cyclic quotient of order 2 (the permutation module on two cosets) or of
/// order 3 (the rotation of order 3); trivial when no such quotient exists.
pub fn sample_module(tower: &Tower, level: usize) -> Result<QModule> {
    tower.check_depth(level)?;
    let g = tower.level(level).clone();
    let lat = tower.lattice(level);
    let quotient = (0..lat.len()).find_map(|n| {
        let idx = g.order() / lat.order_of(n);
        (lat.is_normal(n) && (idx == 2 || idx == 3)).then_some((n, idx))
    });
    let Some((n, idx)) = quotient else {
        return Ok(QModule::trivial_action(g, 2));
    };
    let nsub = lat.subgroup(n);
    let g0 = g
        .elements()
        .find(|&x| !nsub.contains(x))
        .expect("proper subgroup");
    // power of g0 whose coset contains x
    let exponent = |x: u32| -> usize {
        let mut y = 0u32;
        for k in 0..idx {
            if nsub.contains(g.mul(g.inv(y), x)) {
                return k;
            }
            y = g.mul(y, g0);
        }
        unreachable!("cyclic quotient")
    };
    let base = if idx == 2 {
        QMap::from_i64(&[&[0, 1], &[1, 0]])
    } else {
        QMap::from_i64(&[&[0, -1], &[1, -1]])
    };
    let mats = g
        .elements()
        .map(|x| {
            (0..exponent(x)).fold(QMap::identity(2), |acc, _| base.compose(&acc).expect("2x2"))
        })
        .collect();
    QModule::with_action(g, mats)
}
