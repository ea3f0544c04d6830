//! Profinite groups presented as towers of finite quotients
//! `G_D -> ... -> G_1 -> G_0`, and the level-wise space of closed subgroups.
//!
//! A closed subgroup truncated at depth `d` is a compatible chain
//! `(K_0, ..., K_d)` with `q_i(K_{i+1}) = K_i`; it is determined by `K_d`.
//! The basic clopen set at level `i` through `J` is every chain with
//! `K_i = J`, i.e. `{K : N_i K = J~}` for `N_i` the kernel down to level `i`.

mod checks;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, SubgroupLattice, DEFAULT_MAX_ORDER};

pub use checks::{inflation_matrix, sh_is_clopen_check, tower_burnside_check};

/// An open subgroup, given as a subgroup `J` of some level; semantically
/// the preimage of `J` in the limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OpenSubgroupRef {
    pub level: usize,
    pub index: usize,
}

/// A closed subgroup truncated at `depth`: lattice indices per level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClosedChain {
    pub levels: Vec<usize>,
}

impl ClosedChain {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// Index of the deepest member.
    pub fn deepest(&self) -> usize {
        *self.levels.last().expect("non-empty chain")
    }
}

/// Chains whose level-`level` member is `index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClopenBasic {
    pub level: usize,
    pub index: usize,
}

impl ClopenBasic {
    pub fn contains(&self, chain: &ClosedChain) -> bool {
        chain.levels.get(self.level) == Some(&self.index)
    }
}

pub struct Tower {
    label: String,
    levels: Vec<Arc<FiniteGroup>>,
    lattices: Vec<Arc<SubgroupLattice>>,
    /// `maps[i]`: level `i+1` -> level `i`, element-wise.
    maps: Vec<Vec<u32>>,
    /// `sub_proj[i]`: subgroup indices of level `i+1` -> level `i`.
    sub_proj: Vec<Vec<usize>>,
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<usize> = self.levels.iter().map(|g| g.order()).collect();
        f.debug_struct("Tower")
            .field("label", &self.label)
            .field("orders", &orders)
            .finish()
    }
}

impl Tower {
    /// Validates that every map is a surjective homomorphism.
    pub fn new(
        label: impl Into<String>,
        levels: Vec<FiniteGroup>,
        maps: Vec<Vec<u32>>,
    ) -> Result<Self> {
        Self::with_cap(label, levels, maps, DEFAULT_MAX_ORDER)
    }

    pub fn with_cap(
        label: impl Into<String>,
        levels: Vec<FiniteGroup>,
        maps: Vec<Vec<u32>>,
        cap: usize,
    ) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidTower(
                "a tower needs at least one level".into(),
            ));
        }
        if maps.len() + 1 != levels.len() {
            return Err(Error::InvalidTower(format!(
                "{} levels need {} maps, got {}",
                levels.len(),
                levels.len() - 1,
                maps.len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            let (lo, hi) = (&levels[i], &levels[i + 1]);
            if m.len() != hi.order() {
                return Err(Error::InvalidTower(format!(
                    "map {i} has {} images for {} elements",
                    m.len(),
                    hi.order()
                )));
            }
            if m.iter().any(|&x| x as usize >= lo.order()) {
                return Err(Error::InvalidTower(format!("map {i} leaves level {i}")));
            }
            let mut hit = vec![false; lo.order()];
            m.iter().for_each(|&x| hit[x as usize] = true);
            if hit.contains(&false) {
                return Err(Error::InvalidTower(format!("map {i} is not surjective")));
            }
            for a in hi.elements() {
                for b in hi.elements() {
                    if m[hi.mul(a, b) as usize] != lo.mul(m[a as usize], m[b as usize]) {
                        return Err(Error::InvalidTower(format!(
                            "map {i} is not a homomorphism at ({a},{b})"
                        )));
                    }
                }
            }
        }
        let levels: Vec<Arc<FiniteGroup>> = levels.into_iter().map(Arc::new).collect();
        let lattices = levels
            .iter()
            .map(|g| SubgroupLattice::with_cap(g.clone(), cap).map(Arc::new))
            .collect::<Result<Vec<_>>>()?;
        let sub_proj = maps
            .iter()
            .enumerate()
            .map(|(i, m)| {
                lattices[i + 1]
                    .subgroups()
                    .iter()
                    .map(|s| {
                        let mut img: Vec<u32> =
                            s.members().iter().map(|&x| m[x as usize]).collect();
                        img.sort_unstable();
                        img.dedup();
                        lattices[i]
                            .index_of(&Subgroup::from_sorted(img))
                            .expect("image of a subgroup")
                    })
                    .collect()
            })
            .collect();
        Ok(Tower {
            label: label.into(),
            levels,
            lattices,
            maps,
            sub_proj,
        })
    }

    /// A finite group as a one-level tower.
    pub fn constant(g: FiniteGroup) -> Result<Self> {
        let label = g.label().unwrap_or("G").to_string();
        Tower::new(label, vec![g], Vec::new())
    }

    /// `Z/p^0 <- Z/p <- ... <- Z/p^depth`.
    pub fn p_adic(p: usize, depth: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidTower(format!("p = {p}")));
        }
        let mut levels = Vec::with_capacity(depth + 1);
        let mut maps = Vec::with_capacity(depth);
        let mut n = 1usize;
        levels.push(FiniteGroup::cyclic(1)?);
        for _ in 0..depth {
            let m = n * p;
            levels.push(FiniteGroup::cyclic(m)?);
            maps.push((0..m as u32).map(|x| x % n as u32).collect());
            n = m;
        }
        Tower::new(format!("p-adic:{p}:{depth}"), levels, maps)
    }

    /// Level-wise direct product; the shorter tower is padded with
    /// identity maps on its top level.
    pub fn product(a: &Tower, b: &Tower) -> Result<Self> {
        let len = a.levels.len().max(b.levels.len());
        let level = |t: &Tower, i: usize| t.levels[i.min(t.levels.len() - 1)].clone();
        let map = |t: &Tower, i: usize| -> Vec<u32> {
            if i < t.maps.len() {
                t.maps[i].clone()
            } else {
                t.levels[t.levels.len() - 1].elements().collect()
            }
        };
        let mut levels = Vec::with_capacity(len);
        let mut maps = Vec::with_capacity(len - 1);
        for i in 0..len {
            levels.push(FiniteGroup::direct_product(&level(a, i), &level(b, i))?);
        }
        for i in 0..len - 1 {
            let (ma, mb) = (map(a, i), map(b, i));
            let (nb_hi, nb_lo) = (level(b, i + 1).order() as u32, level(b, i).order() as u32);
            let m = (0..levels[i + 1].order() as u32)
                .map(|x| ma[(x / nb_hi) as usize] * nb_lo + mb[(x % nb_hi) as usize])
                .collect();
            maps.push(m);
        }
        Tower::new(format!("{}x{}", a.label, b.label), levels, maps)
    }

    /// Parses `p-adic:<p>:<depth>`, `constant:<group>` or a bare group name.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        match parts.as_slice() {
            ["p-adic", p, d] | ["padic", p, d] => {
                let p = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad prime in {spec}")))?;
                let d = d
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad depth in {spec}")))?;
                Tower::p_adic(p, d)
            }
            ["constant", g] => Tower::constant(FiniteGroup::from_name(g)?),
            [g] => Tower::constant(FiniteGroup::from_name(g)?),
            _ => Err(Error::Parse(format!("unknown tower spec {spec}"))),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Deepest available level index.
    pub fn max_depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn check_depth(&self, d: usize) -> Result<()> {
        if d > self.max_depth() {
            Err(Error::DepthExceeded {
                requested: d,
                available: self.max_depth(),
            })
        } else {
            Ok(())
        }
    }

    pub fn level(&self, i: usize) -> &Arc<FiniteGroup> {
        &self.levels[i]
    }

    pub fn lattice(&self, i: usize) -> &Arc<SubgroupLattice> {
        &self.lattices[i]
    }

    pub fn map(&self, i: usize) -> &[u32] {
        &self.maps[i]
    }

    /// Image of an element of level `from` at level `to <= from`.
    pub fn project_element(&self, mut x: u32, from: usize, to: usize) -> u32 {
        for i in (to..from).rev() {
            x = self.maps[i][x as usize];
        }
        x
    }

    /// Image of a level-`from` subgroup index at level `to <= from`.
    pub fn project_subgroup(&self, mut k: usize, from: usize, to: usize) -> usize {
        for i in (to..from).rev() {
            k = self.sub_proj[i][k];
        }
        k
    }

    /// Index at level `to >= open.level` of the preimage of an open subgroup.
    pub fn preimage(&self, open: OpenSubgroupRef, to: usize) -> usize {
        assert!(to >= open.level, "preimage goes down the tower");
        let j = self.lattices[open.level].subgroup(open.index);
        let members: Vec<u32> = self.levels[to]
            .elements()
            .filter(|&x| j.contains(self.project_element(x, to, open.level)))
            .collect();
        self.lattices[to]
            .index_of(&Subgroup::from_sorted(members))
            .expect("preimage of a subgroup")
    }

    /// Kernel of `G_d -> G_i`, as a level-`d` index.
    pub fn kernel(&self, i: usize, d: usize) -> usize {
        self.preimage(
            OpenSubgroupRef {
                level: i,
                index: self.lattices[i].trivial(),
            },
            d,
        )
    }

    /// Chain of the subgroup with index `k` at level `d`.
    pub fn chain_of(&self, d: usize, k: usize) -> ClosedChain {
        let levels = (0..=d).map(|i| self.project_subgroup(k, d, i)).collect();
        ClosedChain { levels }
    }

    pub fn closed_subgroups_at_depth(&self, d: usize) -> Result<Vec<ClosedChain>> {
        self.check_depth(d)?;
        Ok((0..self.lattices[d].len())
            .map(|k| self.chain_of(d, k))
            .collect())
    }

    pub fn project_chain<'a>(&'a self, chain: &ClosedChain, i: usize) -> Result<&'a Subgroup> {
        if i > chain.depth() {
            return Err(Error::DepthExceeded {
                requested: i,
                available: chain.depth(),
            });
        }
        Ok(self.lattices[i].subgroup(chain.levels[i]))
    }

    pub fn basic_nbhd(&self, chain: &ClosedChain, i: usize) -> Result<ClopenBasic> {
        if i > chain.depth() {
            return Err(Error::DepthExceeded {
                requested: i,
                available: chain.depth(),
            });
        }
        Ok(ClopenBasic {
            level: i,
            index: chain.levels[i],
        })
    }

    /// `O_1 ∩ O_2` as basics at the finer of the two levels.
    pub fn refine_basic(&self, a: ClopenBasic, b: ClopenBasic) -> Vec<ClopenBasic> {
        let level = a.level.max(b.level);
        (0..self.lattices[level].len())
            .filter(|&j| {
                self.project_subgroup(j, level, a.level) == a.index
                    && self.project_subgroup(j, level, b.level) == b.index
            })
            .map(|index| ClopenBasic { level, index })
            .collect()
    }

    /// Level-wise conjugation of a chain by `g` in the chain's deepest level.
    pub fn conjugate_chain(&self, g: u32, chain: &ClosedChain) -> ClosedChain {
        let d = chain.depth();
        self.chain_of(d, self.lattices[d].conjugate(g, chain.deepest()))
    }

    /// Human-readable name of a chain: its deepest member.
    pub fn describe_chain(&self, chain: &ClosedChain) -> String {
        self.lattices[chain.depth()]
            .subgroup(chain.deepest())
            .to_string()
    }
}

#[cfg(test)]
mod tests;
