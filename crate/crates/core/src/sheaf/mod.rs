//! Equivariant sheaves over the subgroup space, in level presentation.
//!
//! At depth `d` the base is the finite set of chains, i.e. the subgroups of
//! `G_d`, so a section over a set `U` of chains is a tuple of germs, one per
//! chain. `G_d` acts on germs through one matrix per generator and chain,
//! `C_g : E_K -> E_{gKg^-1}`, and on sections by `(g*s)(gKg^-1) = C_g s(K)`.
//! A sheaf is Weyl when every `K` acts trivially on `E_K`.

mod decompose;
mod from_mackey;
mod germs;
mod roundtrip;
mod to_mackey;

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::group::SubgroupLattice;
use crate::qmod::{QMap, QModule, Subspace};
use crate::rational::{one, Q};
use crate::tower::Tower;

pub use decompose::{decompose, Decomposition, Piece};
pub use from_mackey::{
    mackey_to_sheaf, theta, theta_germs, MackeySheaf, StalkPolicy, StalkWitness,
};
pub use germs::{represent_germ, represent_germ_at_level, section_stabilizer};
pub use roundtrip::{
    burnside_action_on_sections, roundtrip_mackey, roundtrip_sheaf, weylify, weylify_check,
};
pub use to_mackey::{equivariant_sections, induced_mackey_map, sheaf_to_mackey, Transversal};

/// Block layout of `⊕_{K in U} E_K` for an ordered set of chains `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocks {
    chains: Vec<usize>,
    offsets: Vec<usize>,
    total: usize,
    pos: HashMap<usize, usize>,
}

impl Blocks {
    pub fn new(chains: Vec<usize>, dims: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(chains.len());
        let mut total = 0;
        for &k in &chains {
            offsets.push(total);
            total += dims[k];
        }
        let pos = chains.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        Blocks {
            chains,
            offsets,
            total,
            pos,
        }
    }

    pub fn chains(&self) -> &[usize] {
        &self.chains
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Start of the block of chain `k`, if present.
    pub fn offset(&self, k: usize) -> Option<usize> {
        self.pos.get(&k).map(|&i| self.offsets[i])
    }

    pub fn contains(&self, k: usize) -> bool {
        self.pos.contains_key(&k)
    }

    /// Germ of chain `k` in a section vector.
    pub fn germ<'a>(&self, v: &'a [Q], k: usize, dim: usize) -> &'a [Q] {
        let o = self.offset(k).expect("chain in domain");
        &v[o..o + dim]
    }
}

/// A section over a set of chains, with the subgroup it is equivariant for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub domain: Vec<usize>,
    pub germs: Vec<Vec<Q>>,
    pub equivariant_under: Option<usize>,
}

impl Section {
    pub fn germ(&self, k: usize) -> Option<&[Q]> {
        self.domain
            .iter()
            .position(|&x| x == k)
            .map(|i| self.germs[i].as_slice())
    }
}

pub struct EquivariantSheaf {
    name: String,
    tower: Arc<Tower>,
    depth: usize,
    dims: Vec<usize>,
    conj_gens: Vec<Vec<QMap>>,
    conj_all: OnceLock<Vec<Vec<QMap>>>,
}

impl fmt::Debug for EquivariantSheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EquivariantSheaf")
            .field("name", &self.name)
            .field("tower", &self.tower.label())
            .field("depth", &self.depth)
            .field("dims", &self.dims)
            .finish()
    }
}

impl Clone for EquivariantSheaf {
    fn clone(&self) -> Self {
        EquivariantSheaf {
            name: self.name.clone(),
            tower: self.tower.clone(),
            depth: self.depth,
            dims: self.dims.clone(),
            conj_gens: self.conj_gens.clone(),
            conj_all: OnceLock::new(),
        }
    }
}

impl EquivariantSheaf {
    /// Stalk dimensions per chain and `C_s` per generator `s` of `G_d` and
    /// chain. Checks shapes and that the generator matrices extend to an
    /// action of `G_d`.
    pub fn from_parts(
        name: impl Into<String>,
        tower: Arc<Tower>,
        depth: usize,
        dims: Vec<usize>,
        conj_gens: Vec<Vec<QMap>>,
    ) -> Result<Self> {
        tower.check_depth(depth)?;
        let lat = tower.lattice(depth).clone();
        let g = tower.level(depth).clone();
        if dims.len() != lat.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} stalks for {} chains",
                dims.len(),
                lat.len()
            )));
        }
        if conj_gens.len() != g.generators().len() {
            return Err(Error::ShapeMismatch(format!(
                "{} conjugation families for {} generators",
                conj_gens.len(),
                g.generators().len()
            )));
        }
        for (s, family) in conj_gens.iter().enumerate() {
            if family.len() != lat.len() {
                return Err(Error::ShapeMismatch(format!(
                    "generator {s} acts on {} chains",
                    family.len()
                )));
            }
            for (k, m) in family.iter().enumerate() {
                let t = lat.conjugate(g.generators()[s], k);
                if (m.rows(), m.cols()) != (dims[t], dims[k]) {
                    return Err(Error::ShapeMismatch(format!("generator {s} on chain {k}")));
                }
            }
        }
        let sheaf = EquivariantSheaf {
            name: name.into(),
            tower,
            depth,
            dims,
            conj_gens,
            conj_all: OnceLock::new(),
        };
        // the word-tree extension is an action iff it respects right multiplication by generators
        for x in g.elements() {
            for (s, &gen) in g.generators().iter().enumerate() {
                for k in 0..lat.len() {
                    let lhs = sheaf
                        .conj(x, lat.conjugate(gen, k))
                        .compose(&sheaf.conj_gens[s][k])?;
                    if &lhs != sheaf.conj(g.mul(x, gen), k) {
                        return Err(Error::Invalid(format!(
                            "stalk maps are not a group action at g={x}, generator {s}, chain {k}"
                        )));
                    }
                }
            }
        }
        Ok(sheaf)
    }

    /// Builds the generator matrices from a function of `(g, chain)`.
    pub fn from_fn(
        name: impl Into<String>,
        tower: Arc<Tower>,
        depth: usize,
        dims: Vec<usize>,
        conj: impl Fn(u32, usize) -> QMap,
    ) -> Result<Self> {
        tower.check_depth(depth)?;
        let n = tower.lattice(depth).len();
        let gens = tower.level(depth).generators().to_vec();
        let c = gens
            .iter()
            .map(|&g| (0..n).map(|k| conj(g, k)).collect())
            .collect();
        Self::from_parts(name, tower, depth, dims, c)
    }

    /// Every stalk is `C`, with `G_d` acting through `C`'s action; Weyl only
    /// when the action is trivial.
    pub fn from_module(tower: Arc<Tower>, depth: usize, module: &QModule) -> Result<Self> {
        tower.check_depth(depth)?;
        let act = module.action().ok_or(Error::NoAction)?;
        if act.group().order() != tower.level(depth).order() {
            return Err(Error::ShapeMismatch(
                "module is not over the deepest level".into(),
            ));
        }
        let n = tower.lattice(depth).len();
        Self::from_fn(
            format!("module({})", module.dim()),
            tower,
            depth,
            vec![module.dim(); n],
            |g, _| act.matrix(g).clone(),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        self.tower.lattice(self.depth)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn stalk_dim(&self, k: usize) -> usize {
        self.dims[k]
    }

    pub fn conj_generators(&self) -> &[Vec<QMap>] {
        &self.conj_gens
    }

    /// `C_g : E_K -> E_{gKg^-1}`.
    pub fn conj(&self, g: u32, k: usize) -> &QMap {
        &self.conj_all.get_or_init(|| {
            let grp = self.tower.level(self.depth);
            let lat = self.lattice();
            let mut table: Vec<Vec<QMap>> = vec![Vec::new(); grp.order()];
            table[0] = self.dims.iter().map(|&d| QMap::identity(d)).collect();
            for &x in grp.bfs_order().iter().skip(1) {
                let (p, s) = grp.bfs_parent(x).expect("non-identity");
                let gen = grp.generators()[s];
                table[x as usize] = (0..lat.len())
                    .map(|h| {
                        table[p as usize][lat.conjugate(gen, h)]
                            .compose(&self.conj_gens[s][h])
                            .expect("shapes")
                    })
                    .collect();
            }
            table
        })[g as usize][k]
    }

    /// The action of the stabilizer `N_{G_d}(K)` on `E_K`.
    pub fn stalk_module(&self, k: usize) -> Result<QModule> {
        let lat = self.lattice();
        let w = lat.weyl_group(k)?;
        let norm = lat.subgroup(w.normalizer).clone();
        let (ngroup, ids) = lat.group().subgroup_as_group(&norm)?;
        let mut mats = vec![QMap::identity(self.dims[k]); ngroup.order()];
        for &x in norm.members() {
            mats[ids[x as usize].expect("member") as usize] = self.conj(x, k).clone();
        }
        QModule::with_action(Arc::new(ngroup), mats)
    }

    /// `E_K^K`.
    pub fn stalk_fixed(&self, k: usize) -> Subspace {
        let lat = self.lattice();
        let gens = lat.group().subgroup_generators(lat.subgroup(k));
        let mats: Vec<QMap> = gens.iter().map(|&x| self.conj(x, k).clone()).collect();
        Subspace::fixed_by(self.dims[k], &mats)
    }

    /// Chains whose own subgroup acts non-trivially on the stalk.
    pub fn weyl_violations(&self) -> Vec<usize> {
        (0..self.dims.len())
            .filter(|&k| self.stalk_fixed(k).dim() != self.dims[k])
            .collect()
    }

    pub fn is_weyl(&self) -> bool {
        self.weyl_violations().is_empty()
    }

    pub fn blocks(&self, chains: Vec<usize>) -> Blocks {
        Blocks::new(chains, &self.dims)
    }

    /// `s -> g*s` from sections over `from` to sections over `to`; every
    /// translated chain of `from` must lie in `to`.
    pub fn translate(&self, g: u32, from: &Blocks, to: &Blocks) -> Result<QMap> {
        let lat = self.lattice();
        let mut m = QMap::zero(to.total(), from.total());
        for &k in from.chains() {
            let t = lat.conjugate(g, k);
            let (ro, co) = (
                to.offset(t)
                    .ok_or_else(|| Error::Invalid(format!("chain {t} outside the target")))?,
                from.offset(k).unwrap(),
            );
            let c = self.conj(g, k);
            for r in 0..c.rows() {
                for col in 0..c.cols() {
                    m[(ro + r, co + col)] = c[(r, col)].clone();
                }
            }
        }
        Ok(m)
    }

    /// Restriction of sections from `from` to the sub-domain `to`.
    pub fn restriction(&self, from: &Blocks, to: &Blocks) -> Result<QMap> {
        let mut m = QMap::zero(to.total(), from.total());
        for &k in to.chains() {
            let co = from
                .offset(k)
                .ok_or_else(|| Error::Invalid(format!("chain {k} outside the source")))?;
            let ro = to.offset(k).unwrap();
            for i in 0..self.dims[k] {
                m[(ro + i, co + i)] = one();
            }
        }
        Ok(m)
    }

    /// Extension by zero from `from` to a larger domain `to`.
    pub fn extension_by_zero(&self, from: &Blocks, to: &Blocks) -> Result<QMap> {
        Ok(self.restriction(to, from)?.transpose())
    }
}

/// An equivariant sheaf satisfying the Weyl condition.
#[derive(Clone, Debug)]
pub struct WeylSheaf(EquivariantSheaf);

impl WeylSheaf {
    pub fn new(sheaf: EquivariantSheaf) -> Result<Self> {
        let bad = sheaf.weyl_violations();
        if let Some(&k) = bad.first() {
            return Err(Error::Invalid(format!(
                "chain {k} acts non-trivially on its own stalk"
            )));
        }
        Ok(WeylSheaf(sheaf))
    }

    pub fn into_inner(self) -> EquivariantSheaf {
        self.0
    }

    /// Constant sheaf with stalk `Q^dim` and identity conjugations.
    pub fn constant(tower: Arc<Tower>, depth: usize, dim: usize) -> Result<Self> {
        tower.check_depth(depth)?;
        let n = tower.lattice(depth).len();
        let e = EquivariantSheaf::from_fn(
            format!("constant_sheaf({dim})"),
            tower,
            depth,
            vec![dim; n],
            |_, _| QMap::identity(dim),
        )?;
        Ok(WeylSheaf(e))
    }

    pub fn zero(tower: Arc<Tower>, depth: usize) -> Result<Self> {
        Ok(Self::constant(tower, depth, 0)?
            .0
            .with_name("zero_sheaf")
            .into_weyl_unchecked())
    }

    /// Skyscraper at the class of chain `k` with stalk `C`, a module over
    /// the Weyl group `N(K)/K` as numbered by [`SubgroupLattice::weyl_group`].
    ///
    /// Each conjugate `K' = x K x^-1` uses the smallest such `x`, and `g`
    /// maps `x_{K'} C` to `x_{gK'g^-1} C` through the Weyl element of
    /// `x_{gK'g^-1}^-1 g x_{K'}`.
    pub fn skyscraper(tower: Arc<Tower>, depth: usize, k: usize, module: &QModule) -> Result<Self> {
        tower.check_depth(depth)?;
        let lat = tower.lattice(depth).clone();
        let g = lat.group().clone();
        let w = lat.weyl_group(k)?;
        let act = module.action().ok_or(Error::NoAction)?;
        if act.group().order() != w.group.order() {
            return Err(Error::ShapeMismatch(format!(
                "module over a group of order {}, Weyl group has order {}",
                act.group().order(),
                w.group.order()
            )));
        }
        let mut rep: Vec<Option<u32>> = vec![None; lat.len()];
        for x in g.elements() {
            let t = lat.conjugate(x, k);
            if rep[t].is_none() {
                rep[t] = Some(x);
            }
        }
        let dims: Vec<usize> = rep
            .iter()
            .map(|r| if r.is_some() { module.dim() } else { 0 })
            .collect();
        let e = EquivariantSheaf::from_fn(
            format!("skyscraper({},{})", lat.subgroup(k), module.dim()),
            tower,
            depth,
            dims.clone(),
            |x, kk| match rep[kk] {
                None => QMap::zero(0, 0),
                Some(a) => {
                    let b = rep[lat.conjugate(x, kk)].expect("orbit is closed");
                    let n = g.mul(g.mul(g.inv(b), x), a);
                    let wid = w.projection[n as usize].expect("element of the normalizer");
                    act.matrix(wid).clone()
                }
            },
        )?;
        WeylSheaf::new(e)
    }
}

impl EquivariantSheaf {
    fn into_weyl_unchecked(self) -> WeylSheaf {
        WeylSheaf(self)
    }
}

impl Deref for WeylSheaf {
    type Target = EquivariantSheaf;

    fn deref(&self) -> &EquivariantSheaf {
        &self.0
    }
}

/// A morphism of equivariant sheaves: one matrix per chain, commuting with
/// the stalk maps.
#[derive(Clone, Debug)]
pub struct SheafMap {
    pub stalks: Vec<QMap>,
}

impl SheafMap {
    pub fn new(
        source: &EquivariantSheaf,
        target: &EquivariantSheaf,
        stalks: Vec<QMap>,
    ) -> Result<Self> {
        let lat = source.lattice();
        if stalks.len() != lat.len() || target.dims().len() != lat.len() {
            return Err(Error::ShapeMismatch(
                "sheaf map needs one matrix per chain".into(),
            ));
        }
        for (k, f) in stalks.iter().enumerate() {
            if (f.rows(), f.cols()) != (target.stalk_dim(k), source.stalk_dim(k)) {
                return Err(Error::ShapeMismatch(format!("sheaf map at chain {k}")));
            }
        }
        for &g in lat.group().generators() {
            for k in 0..lat.len() {
                let t = lat.conjugate(g, k);
                if stalks[t].compose(source.conj(g, k))? != target.conj(g, k).compose(&stalks[k])? {
                    return Err(Error::Invalid(format!(
                        "sheaf map is not equivariant at generator {g}, chain {k}"
                    )));
                }
            }
        }
        Ok(SheafMap { stalks })
    }

    pub fn identity(sheaf: &EquivariantSheaf) -> Self {
        SheafMap {
            stalks: sheaf.dims().iter().map(|&d| QMap::identity(d)).collect(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SheafMap) -> Result<SheafMap> {
        let stalks = self
            .stalks
            .iter()
            .zip(&other.stalks)
            .map(|(a, b)| a.compose(b))
            .collect::<Result<_>>()?;
        Ok(SheafMap { stalks })
    }
}

#[cfg(test)]
mod tests;
