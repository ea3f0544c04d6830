//! Rational Mackey functors over a tower, stored at a fixed depth.
//!
//! Values live on the subgroups of the deepest level `G_d`; an open subgroup
//! given at a coarser level is identified with its preimage there.
//! Conjugation is stored for the generators of `G_d` and extended along the
//! word tree by `C_{gh} = C_g C_h`.

mod action;
mod axioms;
mod builtin;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::burnside::{BurnsideElement, BurnsideRing};
use crate::error::{Error, Result};
use crate::group::SubgroupLattice;
use crate::qmod::QMap;
use crate::tower::{OpenSubgroupRef, Tower};

pub use action::{burnside_action, fix_inflate_iso, frobenius_check, FixInflate};
pub use axioms::check_axioms;
pub use builtin::{sample_module, Builtin};

pub struct MackeyFunctor {
    name: String,
    tower: Arc<Tower>,
    depth: usize,
    dims: Vec<usize>,
    res: BTreeMap<(usize, usize), QMap>,
    ind: BTreeMap<(usize, usize), QMap>,
    /// `conj_gens[s][h]`: `M(H) -> M(sHs^-1)` for the `s`-th generator.
    conj_gens: Vec<Vec<QMap>>,
    conj_all: OnceLock<Vec<Vec<QMap>>>,
    rings: Mutex<BTreeMap<usize, Arc<BurnsideRing>>>,
}

impl fmt::Debug for MackeyFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MackeyFunctor")
            .field("name", &self.name)
            .field("tower", &self.tower.label())
            .field("depth", &self.depth)
            .field("dims", &self.dims)
            .finish()
    }
}

impl Clone for MackeyFunctor {
    fn clone(&self) -> Self {
        MackeyFunctor {
            name: self.name.clone(),
            tower: self.tower.clone(),
            depth: self.depth,
            dims: self.dims.clone(),
            res: self.res.clone(),
            ind: self.ind.clone(),
            conj_gens: self.conj_gens.clone(),
            conj_all: OnceLock::new(),
            rings: Mutex::new(BTreeMap::new()),
        }
    }
}

impl MackeyFunctor {
    /// Assembles a functor from raw data, checking that every containment
    /// pair has maps of the right shapes. Axioms are not checked here.
    pub fn from_parts(
        name: impl Into<String>,
        tower: Arc<Tower>,
        depth: usize,
        dims: Vec<usize>,
        res: BTreeMap<(usize, usize), QMap>,
        ind: BTreeMap<(usize, usize), QMap>,
        conj_gens: Vec<Vec<QMap>>,
    ) -> Result<Self> {
        tower.check_depth(depth)?;
        let lat = tower.lattice(depth).clone();
        if dims.len() != lat.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} dimensions for {} subgroups",
                dims.len(),
                lat.len()
            )));
        }
        for h in 0..lat.len() {
            for &k in lat.subsets(h) {
                let r = res
                    .get(&(h, k))
                    .ok_or_else(|| Error::Invalid(format!("missing restriction {h}>{k}")))?;
                let i = ind
                    .get(&(h, k))
                    .ok_or_else(|| Error::Invalid(format!("missing induction {k}>{h}")))?;
                if (r.rows(), r.cols()) != (dims[k], dims[h])
                    || (i.rows(), i.cols()) != (dims[h], dims[k])
                {
                    return Err(Error::ShapeMismatch(format!(
                        "maps between subgroups {h} and {k}"
                    )));
                }
            }
        }
        if res.len() != ind.len() || res.keys().any(|&(h, k)| !lat.leq(k, h)) {
            return Err(Error::Invalid(
                "maps given for a non-containment pair".into(),
            ));
        }
        let gens = tower.level(depth).generators().len();
        if conj_gens.len() != gens {
            return Err(Error::ShapeMismatch(format!(
                "{} conjugation families for {gens} generators",
                conj_gens.len()
            )));
        }
        for (s, family) in conj_gens.iter().enumerate() {
            if family.len() != lat.len() {
                return Err(Error::ShapeMismatch(format!(
                    "generator {s} conjugates {} subgroups",
                    family.len()
                )));
            }
            let g = tower.level(depth).generators()[s];
            for (h, m) in family.iter().enumerate() {
                let t = lat.conjugate(g, h);
                if (m.rows(), m.cols()) != (dims[t], dims[h]) {
                    return Err(Error::ShapeMismatch(format!(
                        "conjugation by generator {s} on subgroup {h}"
                    )));
                }
            }
        }
        Ok(MackeyFunctor {
            name: name.into(),
            tower,
            depth,
            dims,
            res,
            ind,
            conj_gens,
            conj_all: OnceLock::new(),
            rings: Mutex::new(BTreeMap::new()),
        })
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

    pub fn dim(&self, h: usize) -> usize {
        self.dims[h]
    }

    /// Value at an open subgroup given at any level up to the depth.
    pub fn dim_at(&self, open: OpenSubgroupRef) -> Result<usize> {
        self.tower.check_depth(open.level)?;
        if open.level > self.depth {
            return Err(Error::DepthExceeded {
                requested: open.level,
                available: self.depth,
            });
        }
        Ok(self.dims[self.tower.preimage(open, self.depth)])
    }

    /// `R^H_K : M(H) -> M(K)`.
    pub fn res(&self, h: usize, k: usize) -> Result<&QMap> {
        self.res
            .get(&(h, k))
            .ok_or(Error::NotComparable { lower: k, upper: h })
    }

    /// `I^H_K : M(K) -> M(H)`.
    pub fn ind(&self, h: usize, k: usize) -> Result<&QMap> {
        self.ind
            .get(&(h, k))
            .ok_or(Error::NotComparable { lower: k, upper: h })
    }

    pub fn conj_generators(&self) -> &[Vec<QMap>] {
        &self.conj_gens
    }

    fn conj_table(&self) -> &Vec<Vec<QMap>> {
        self.conj_all.get_or_init(|| {
            let g = self.tower.level(self.depth);
            let lat = self.lattice();
            let mut table: Vec<Vec<QMap>> = vec![Vec::new(); g.order()];
            table[0] = self.dims.iter().map(|&d| QMap::identity(d)).collect();
            for &x in g.bfs_order().iter().skip(1) {
                let (p, s) = g.bfs_parent(x).expect("non-identity");
                let gen = g.generators()[s];
                let row = (0..lat.len())
                    .map(|h| {
                        let moved = lat.conjugate(gen, h);
                        table[p as usize][moved]
                            .compose(&self.conj_gens[s][h])
                            .expect("conjugation shapes")
                    })
                    .collect();
                table[x as usize] = row;
            }
            table
        })
    }

    /// `C_g : M(H) -> M(gHg^-1)` for `g` in the deepest level.
    pub fn conj(&self, g: u32, h: usize) -> &QMap {
        &self.conj_table()[g as usize][h]
    }

    /// `A_Q(H)`, cached per subgroup.
    pub fn burnside_ring(&self, h: usize) -> Arc<BurnsideRing> {
        let mut rings = self.rings.lock().expect("ring cache");
        rings
            .entry(h)
            .or_insert_with(|| Arc::new(BurnsideRing::new(self.lattice().clone(), h)))
            .clone()
    }

    /// Action of `x in A_Q(H)` on `M(H)`.
    pub fn act(&self, x: &BurnsideElement) -> QMap {
        burnside_action(self, x.top(), x).expect("element over a stored subgroup")
    }

    /// Action of `e^H_{(N,J)}` on `M(H)`.
    pub fn idempotent_action(&self, h: usize, n: usize, j: usize) -> Result<QMap> {
        let ring = self.burnside_ring(h);
        let e = ring.idempotent_char(n, j)?;
        burnside_action(self, h, &e)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }
}
