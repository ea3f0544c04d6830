//! Finite groups given by Cayley tables.
//!
//! Elements are canonical ids `0..order` with `0` the identity. A group also
//! carries a deterministic generating set and a breadth-first spanning tree
//! over it, so any element can be written as a word in the generators. Data
//! attached to generators (conjugation matrices, say) extends to the whole
//! group along that tree.

mod constructors;
mod cosets;
mod lattice;
mod moebius;

pub use cosets::{double_coset_reps, left_transversal};
pub use lattice::{SubgroupLattice, WeylGroup, DEFAULT_MAX_ORDER};

use std::collections::VecDeque;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sorted set of element ids closed under the group operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup(Vec<u32>);

impl Subgroup {
    /// Wraps a member list without checking closure.
    pub fn from_sorted(mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        members.dedup();
        Subgroup(members)
    }

    pub fn members(&self) -> &[u32] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, g: u32) -> bool {
        self.0.binary_search(&g).is_ok()
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|&g| other.contains(g))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup(
            self.0
                .iter()
                .copied()
                .filter(|&g| other.contains(g))
                .collect(),
        )
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    label: Option<String>,
    generators: Vec<u32>,
    /// `parent[g] = (p, s)` with `g = p * generators[s]`; the identity points at itself.
    parent: Vec<(u32, u32)>,
    bfs_order: Vec<u32>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from a Cayley table, validating the group axioms.
    ///
    /// Associativity is checked on every triple up to order 64 and on a fixed
    /// pseudo-random sample of triples above that.
    pub fn from_table(table: Vec<Vec<u32>>, label: Option<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut mul = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {i} has length {}",
                    row.len()
                )));
            }
            for &x in row {
                if x as usize >= n {
                    return Err(Error::InvalidGroup(format!("entry {x} out of range")));
                }
            }
            mul.extend_from_slice(row);
        }
        Self::from_flat(n, mul, label)
    }

    pub(crate) fn from_flat(n: usize, mul: Vec<u32>, label: Option<String>) -> Result<Self> {
        let at = |a: usize, b: usize| mul[a * n + b] as usize;
        for x in 0..n {
            if at(0, x) != x || at(x, 0) != x {
                return Err(Error::InvalidGroup(
                    "element 0 is not a two-sided identity".into(),
                ));
            }
        }
        let mut inv = vec![u32::MAX; n];
        for (x, slot) in inv.iter_mut().enumerate() {
            for y in 0..n {
                if at(x, y) == 0 {
                    if at(y, x) != 0 {
                        return Err(Error::InvalidGroup(format!(
                            "{y} is only a one-sided inverse of {x}"
                        )));
                    }
                    *slot = y as u32;
                    break;
                }
            }
            if *slot == u32::MAX {
                return Err(Error::InvalidGroup(format!("element {x} has no inverse")));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::InvalidGroup(format!(
                                "not associative on ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..50_000 {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if !assoc(a, b, c) {
                    return Err(Error::InvalidGroup(format!(
                        "not associative on ({a},{b},{c})"
                    )));
                }
            }
        }
        let mut group = FiniteGroup {
            order: n,
            mul,
            inv,
            label,
            generators: Vec::new(),
            parent: Vec::new(),
            bfs_order: Vec::new(),
        };
        group.init_generators();
        Ok(group)
    }

    /// Greedy generating set (smallest ids not yet generated) and the BFS tree.
    fn init_generators(&mut self) {
        let n = self.order;
        let mut gens = Vec::new();
        let mut covered = vec![false; n];
        covered[0] = true;
        let mut count = 1;
        for g in 1..n as u32 {
            if count == n {
                break;
            }
            if !covered[g as usize] {
                gens.push(g);
                let sub = self.closure(&gens);
                covered.iter_mut().for_each(|c| *c = false);
                for &x in sub.members() {
                    covered[x as usize] = true;
                }
                count = sub.order();
            }
        }
        let mut parent = vec![(u32::MAX, u32::MAX); n];
        parent[0] = (0, u32::MAX);
        let mut order = vec![0u32];
        let mut queue = VecDeque::from([0u32]);
        while let Some(p) = queue.pop_front() {
            for (si, &s) in gens.iter().enumerate() {
                let g = self.mul(p, s);
                if parent[g as usize].0 == u32::MAX {
                    parent[g as usize] = (p, si as u32);
                    order.push(g);
                    queue.push_back(g);
                }
            }
        }
        self.generators = gens;
        self.parent = parent;
        self.bfs_order = order;
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `g h g^-1`.
    #[inline]
    pub fn conj(&self, g: u32, h: u32) -> u32 {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    pub fn table(&self) -> Vec<Vec<u32>> {
        self.mul.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Elements in breadth-first order over the generators; each element's
    /// parent precedes it.
    pub fn bfs_order(&self) -> &[u32] {
        &self.bfs_order
    }

    /// `(p, s)` with `g = p * generators()[s]`, or `None` for the identity.
    pub fn bfs_parent(&self, g: u32) -> Option<(u32, usize)> {
        if g == 0 {
            None
        } else {
            let (p, s) = self.parent[g as usize];
            Some((p, s as usize))
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| {
            self.generators
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    pub fn element_order(&self, g: u32) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Subgroup {
        let n = self.order;
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut members = vec![0u32];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        Subgroup::from_sorted(members)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup((0..self.order as u32).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup(vec![0])
    }

    /// Checks closure under multiplication and inverses.
    pub fn is_subgroup(&self, s: &Subgroup) -> bool {
        s.contains(0)
            && s.members().iter().all(|&a| {
                s.contains(self.inv(a)) && s.members().iter().all(|&b| s.contains(self.mul(a, b)))
            })
    }

    pub fn conjugate_subgroup(&self, g: u32, h: &Subgroup) -> Subgroup {
        Subgroup::from_sorted(h.members().iter().map(|&x| self.conj(g, x)).collect())
    }

    pub fn is_normal_in(&self, n: &Subgroup, within: &Subgroup) -> bool {
        within
            .members()
            .iter()
            .all(|&g| n.members().iter().all(|&x| n.contains(self.conj(g, x))))
    }

    /// Small generating set of a subgroup, chosen greedily by element id.
    pub fn subgroup_generators(&self, s: &Subgroup) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        for &g in s.members() {
            if current.order() == s.order() {
                break;
            }
            if !current.contains(g) {
                gens.push(g);
                current = self.closure(&gens);
            }
        }
        gens
    }

    /// Product set `A B`, which is a subgroup when one factor normalizes the other.
    pub fn product_set(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut out = Vec::with_capacity(a.order() * b.order());
        for &x in a.members() {
            for &y in b.members() {
                out.push(self.mul(x, y));
            }
        }
        Subgroup::from_sorted(out)
    }

    /// Quotient `within / normal` as a standalone group.
    ///
    /// Cosets are numbered by their minimal element, so the identity coset is
    /// 0. The returned vector maps each element of `within` to its coset id and
    /// every other element to `None`.
    pub fn quotient_of(
        &self,
        within: &Subgroup,
        normal: &Subgroup,
    ) -> Result<(FiniteGroup, Vec<Option<u32>>)> {
        if !normal.is_subset(within) || !self.is_normal_in(normal, within) {
            return Err(Error::InvalidGroup(
                "quotient by a non-normal subgroup".into(),
            ));
        }
        let mut coset = vec![None; self.order];
        let mut reps = Vec::new();
        for &g in within.members() {
            if coset[g as usize].is_none() {
                let id = reps.len() as u32;
                reps.push(g);
                for &x in normal.members() {
                    coset[self.mul(g, x) as usize] = Some(id);
                }
            }
        }
        let m = reps.len();
        let mut mul = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                mul.push(coset[self.mul(a, b) as usize].expect("closed"));
            }
        }
        let q = FiniteGroup::from_flat(m, mul, None)?;
        Ok((q, coset))
    }

    /// `within` as a standalone group, with ids assigned in increasing order.
    pub fn subgroup_as_group(&self, within: &Subgroup) -> Result<(FiniteGroup, Vec<Option<u32>>)> {
        self.quotient_of(within, &self.trivial_subgroup())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], None).is_err());
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]], None).is_err());
        assert!(FiniteGroup::from_table(vec![], None).is_err());
    }

    #[test]
    fn words_reconstruct_elements() {
        let g = FiniteGroup::symmetric(4).unwrap();
        for &x in g.bfs_order() {
            if let Some((p, s)) = g.bfs_parent(x) {
                assert_eq!(g.mul(p, g.generators()[s]), x);
            }
        }
        assert_eq!(g.closure(g.generators()).order(), 24);
        assert_eq!(g.bfs_order().len(), 24);
    }

    #[test]
    fn quotient_of_s3_by_c3() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let c3 = g
            .elements()
            .find(|&x| g.element_order(x) == 3)
            .map(|x| g.closure(&[x]))
            .unwrap();
        let (q, map) = g.quotient_of(&g.whole(), &c3).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(map[0], Some(0));
        assert!(map.iter().all(|c| c.is_some()));
    }
}
