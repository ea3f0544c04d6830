//! Stalks of a Mackey functor.
//!
//! For a chain `K` at depth `d`, stage `i` uses `N_i = ker(G_d -> G_i)` and
//! `J_i = N_i K`, with module `e^{J_i}_{(N_i,J_i)} M(J_i)`. Consecutive
//! stages are joined by restriction followed by the next idempotent. The
//! last stage has `N_d = 1`, so the stalk is `e^K_{(1,K)} M(K)`.

use rayon::prelude::*;

use super::{EquivariantSheaf, WeylSheaf};
use crate::error::{Error, Result};
use crate::mackey::MackeyFunctor;
use crate::qmod::{sequence_cone, QMap, Subspace};

/// How to treat a stage sequence whose final map is not an isomorphism.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StalkPolicy {
    /// Use the terminal stage and record the stabilization witness.
    #[default]
    Terminal,
    /// Fail with `NotStabilized` for such a chain.
    RequireStable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StalkWitness {
    pub chain: usize,
    /// `(J_i, dim)` per stage, coarsest first.
    pub stages: Vec<(usize, usize)>,
    /// First stage from which every transition is an isomorphism.
    pub stable_from: usize,
}

impl StalkWitness {
    /// Whether the last transition is an isomorphism.
    pub fn stabilized(&self) -> bool {
        self.stable_from + 1 < self.stages.len() || self.stages.len() == 1
    }
}

/// The Weyl sheaf of a Mackey functor, with each stalk realized inside
/// `M(K)`.
#[derive(Clone, Debug)]
pub struct MackeySheaf {
    pub sheaf: WeylSheaf,
    pub stalks: Vec<Subspace>,
    pub witnesses: Vec<StalkWitness>,
}

fn stalk_of(m: &MackeyFunctor, k: usize) -> Result<(Subspace, StalkWitness)> {
    let tower = m.tower();
    let lat = m.lattice();
    let d = m.depth();
    let mut spaces: Vec<(usize, Subspace)> = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let n = tower.kernel(i, d);
        let j = lat.join(n, k);
        spaces.push((j, Subspace::image(&m.idempotent_action(j, n, j)?)));
    }
    let mut maps = Vec::with_capacity(d);
    for i in 0..d {
        let (j0, ref v0) = spaces[i];
        let (j1, ref v1) = spaces[i + 1];
        let e1 = m.idempotent_action(j1, tower.kernel(i + 1, d), j1)?;
        let img = e1.compose(m.res(j0, j1)?)?.compose(&v0.inclusion())?;
        maps.push(v1.coords_of_columns(&img)?);
    }
    let cone = sequence_cone(spaces[0].1.dim(), &maps)?;
    let witness = StalkWitness {
        chain: k,
        stages: spaces.iter().map(|(j, v)| (*j, v.dim())).collect(),
        stable_from: cone.stable_from,
    };
    Ok((spaces.pop().expect("at least one stage").1, witness))
}

/// Builds the Weyl sheaf of stalks; conjugation restricts `C_g` to the stalk
/// subspaces.
pub fn mackey_to_sheaf(m: &MackeyFunctor, policy: StalkPolicy) -> Result<MackeySheaf> {
    let lat = m.lattice().clone();
    let parts = (0..lat.len())
        .into_par_iter()
        .map(|k| stalk_of(m, k))
        .collect::<Result<Vec<_>>>()?;
    let (stalks, witnesses): (Vec<Subspace>, Vec<StalkWitness>) = parts.into_iter().unzip();
    if policy == StalkPolicy::RequireStable {
        if let Some(w) = witnesses.iter().find(|w| !w.stabilized()) {
            return Err(Error::NotStabilized {
                chain: Some(w.chain),
            });
        }
    }
    let conj = lat
        .group()
        .generators()
        .iter()
        .map(|&s| {
            (0..lat.len())
                .map(|k| {
                    let t = lat.conjugate(s, k);
                    stalks[t].coords_of_columns(&m.conj(s, k).compose(&stalks[k].inclusion())?)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let dims = stalks.iter().map(Subspace::dim).collect();
    let sheaf = EquivariantSheaf::from_parts(
        format!("stalks({})", m.name()),
        m.tower().clone(),
        m.depth(),
        dims,
        conj,
    )?;
    Ok(MackeySheaf {
        sheaf: WeylSheaf::new(sheaf)?,
        stalks,
        witnesses,
    })
}

/// Germs of `m in M(H)`: `m_K = e^K_{(1,K)} R^H_K m` in stalk coordinates,
/// stacked over the chains below `H` in lattice order.
pub fn theta_germs(m: &MackeyFunctor, ms: &MackeySheaf, h: usize) -> Result<QMap> {
    let lat = m.lattice();
    let blocks = ms.sheaf.blocks(lat.subsets(h).to_vec());
    let mut out = QMap::zero(blocks.total(), m.dim(h));
    for &k in lat.subsets(h) {
        let e = m.idempotent_action(k, lat.trivial(), k)?;
        let germ = ms.stalks[k].coords_of_columns(&e.compose(m.res(h, k)?)?)?;
        let o = blocks.offset(k).expect("chain below H");
        for r in 0..germ.rows() {
            for c in 0..germ.cols() {
                out[(o + r, c)] = germ[(r, c)].clone();
            }
        }
    }
    Ok(out)
}

/// `theta_H : M(H) -> (ΓΦM)(H)` in the basis of equivariant sections.
/// Errors with `NotIso` unless it is bijective.
pub fn theta(m: &MackeyFunctor, ms: &MackeySheaf, h: usize) -> Result<QMap> {
    let germs = theta_germs(m, ms, h)?;
    let (_, fixed) = super::equivariant_sections(&ms.sheaf, h)?;
    let w = format!("H={}", m.lattice().subgroup(h));
    let map = fixed
        .coords_of_columns(&germs)
        .map_err(|_| Error::NotIso(format!("{w}: germs are not equivariant")))?;
    if !map.is_isomorphism() {
        return Err(Error::NotIso(format!(
            "{w}: dim M(H)={}, sections {}, rank {}",
            m.dim(h),
            fixed.dim(),
            map.rank()
        )));
    }
    Ok(map)
}
