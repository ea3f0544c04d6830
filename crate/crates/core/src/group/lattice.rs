use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_ORDER: usize = 384;

/// All subgroups of a finite group, with containment and conjugacy.
///
/// Subgroups are sorted by `(order, member list)`, so containment only ever
/// points from a smaller index to a larger one. The representative of a
/// conjugacy class is its lexicographically smallest member list, which is
/// also the smallest index in the class; classes are ordered by
/// representative.
pub struct SubgroupLattice {
    group: Arc<FiniteGroup>,
    subgroups: Vec<Subgroup>,
    gens: Vec<Vec<u32>>,
    index: HashMap<Subgroup, usize>,
    leq: Vec<Vec<bool>>,
    subsets: Vec<Vec<usize>>,
    supersets: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    generator_action: Vec<Vec<usize>>,
    conj_table: OnceLock<Vec<Vec<usize>>>,
    moebius_rows: Mutex<HashMap<usize, Arc<Vec<i64>>>>,
}

impl std::fmt::Debug for SubgroupLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubgroupLattice")
            .field("group", &self.group)
            .field("subgroups", &self.subgroups.len())
            .field("classes", &self.classes.len())
            .finish()
    }
}

/// `N_G(H) / H` together with the projection from the normalizer.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub group: FiniteGroup,
    pub normalizer: usize,
    /// Coset id for elements of the normalizer, `None` elsewhere.
    pub projection: Vec<Option<u32>>,
}

impl SubgroupLattice {
    pub fn new(group: Arc<FiniteGroup>) -> Result<Self> {
        Self::with_cap(group, DEFAULT_MAX_ORDER)
    }

    /// Enumerates subgroups by cyclic extension: every subgroup is reached
    /// from a smaller one by adjoining a single element, and one element per
    /// left coset suffices.
    pub fn with_cap(group: Arc<FiniteGroup>, cap: usize) -> Result<Self> {
        let n = group.order();
        if n > cap {
            return Err(Error::GroupTooLarge { order: n, cap });
        }
        let mut subgroups = vec![group.trivial_subgroup()];
        let mut gens: Vec<Vec<u32>> = vec![Vec::new()];
        let mut index: HashMap<Subgroup, usize> = HashMap::from([(subgroups[0].clone(), 0)]);
        let mut i = 0;
        while i < subgroups.len() {
            let h = subgroups[i].clone();
            let mut covered = vec![false; n];
            for &x in h.members() {
                covered[x as usize] = true;
            }
            for g in 0..n as u32 {
                if covered[g as usize] {
                    continue;
                }
                for &x in h.members() {
                    covered[group.mul(g, x) as usize] = true;
                }
                let mut ext = gens[i].clone();
                ext.push(g);
                let s = group.closure(&ext);
                if !index.contains_key(&s) {
                    index.insert(s.clone(), subgroups.len());
                    subgroups.push(s);
                    gens.push(ext);
                }
            }
            i += 1;
        }

        let mut order: Vec<usize> = (0..subgroups.len()).collect();
        order.sort_by(|&a, &b| {
            (subgroups[a].order(), subgroups[a].members())
                .cmp(&(subgroups[b].order(), subgroups[b].members()))
        });
        let subgroups: Vec<Subgroup> = order.iter().map(|&k| subgroups[k].clone()).collect();
        let gens: Vec<Vec<u32>> = order.iter().map(|&k| gens[k].clone()).collect();
        let index: HashMap<Subgroup, usize> = subgroups
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, s)| (s, k))
            .collect();

        let m = subgroups.len();
        let mut leq = vec![vec![false; m]; m];
        let mut subsets = vec![Vec::new(); m];
        let mut supersets = vec![Vec::new(); m];
        for a in 0..m {
            for b in a..m {
                if subgroups[b].order().is_multiple_of(subgroups[a].order())
                    && subgroups[a].is_subset(&subgroups[b])
                {
                    leq[a][b] = true;
                    subsets[b].push(a);
                    supersets[a].push(b);
                }
            }
        }

        let generator_action: Vec<Vec<usize>> = group
            .generators()
            .iter()
            .map(|&g| {
                subgroups
                    .iter()
                    .map(|s| index[&group.conjugate_subgroup(g, s)])
                    .collect()
            })
            .collect();

        let mut class_of = vec![usize::MAX; m];
        let mut classes = Vec::new();
        for start in 0..m {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members = vec![start];
            class_of[start] = c;
            let mut j = 0;
            while j < members.len() {
                let s = members[j];
                for act in &generator_action {
                    let t = act[s];
                    if class_of[t] == usize::MAX {
                        class_of[t] = c;
                        members.push(t);
                    }
                }
                j += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }

        Ok(SubgroupLattice {
            group,
            subgroups,
            gens,
            index,
            leq,
            subsets,
            supersets,
            class_of,
            classes,
            generator_action,
            conj_table: OnceLock::new(),
            moebius_rows: Mutex::new(HashMap::new()),
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn order_of(&self, i: usize) -> usize {
        self.subgroups[i].order()
    }

    /// Lattice index of a subgroup given by its members.
    pub fn index_of(&self, s: &Subgroup) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Index of the subgroup generated by the given elements.
    pub fn generated(&self, elems: &[u32]) -> usize {
        self.index[&self.group.closure(elems)]
    }

    pub fn trivial(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// All `K <= H`, ascending, including `H`.
    pub fn subsets(&self, h: usize) -> &[usize] {
        &self.subsets[h]
    }

    /// All `K >= H`, ascending, including `H`.
    pub fn supersets(&self, h: usize) -> &[usize] {
        &self.supersets[h]
    }

    pub fn intersect(&self, a: usize, b: usize) -> usize {
        self.index[&self.subgroups[a].intersection(&self.subgroups[b])]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        let mut g = self.gens[a].clone();
        g.extend_from_slice(&self.gens[b]);
        self.generated(&g)
    }

    pub fn class_of(&self, h: usize) -> usize {
        self.class_of[h]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_rep(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    /// Conjugation by each generator, as a permutation of subgroup indices.
    pub fn generator_action(&self) -> &[Vec<usize>] {
        &self.generator_action
    }

    fn conj_table(&self) -> &Vec<Vec<usize>> {
        self.conj_table.get_or_init(|| {
            let g = &self.group;
            let m = self.len();
            let mut table = vec![Vec::new(); g.order()];
            table[0] = (0..m).collect();
            for &x in g.bfs_order().iter().skip(1) {
                let (p, s) = g.bfs_parent(x).expect("non-identity");
                let row: Vec<usize> = (0..m)
                    .map(|h| table[p as usize][self.generator_action[s][h]])
                    .collect();
                table[x as usize] = row;
            }
            table
        })
    }

    /// Index of `g H g^-1`.
    pub fn conjugate(&self, g: u32, h: usize) -> usize {
        self.conj_table()[g as usize][h]
    }

    pub fn normalizer(&self, h: usize) -> Subgroup {
        Subgroup::from_sorted(
            self.group
                .elements()
                .filter(|&g| self.conjugate(g, h) == h)
                .collect(),
        )
    }

    pub fn normalizer_index(&self, h: usize) -> usize {
        self.index[&self.normalizer(h)]
    }

    /// `N_within(H)`.
    pub fn normalizer_in(&self, h: usize, within: usize) -> usize {
        let s = Subgroup::from_sorted(
            self.subgroups[within]
                .members()
                .iter()
                .copied()
                .filter(|&g| self.conjugate(g, h) == h)
                .collect(),
        );
        self.index[&s]
    }

    /// Intersection of all conjugates of `H`.
    pub fn core(&self, h: usize) -> usize {
        let class = &self.classes[self.class_of[h]];
        class.iter().fold(h, |acc, &k| self.intersect(acc, k))
    }

    pub fn is_normal(&self, h: usize) -> bool {
        self.classes[self.class_of[h]].len() == 1
    }

    /// Whether `n` is normalized by every element of `within`.
    pub fn is_normal_in(&self, n: usize, within: usize) -> bool {
        self.subgroups[within]
            .members()
            .iter()
            .all(|&g| self.conjugate(g, n) == n)
    }

    pub fn weyl_group(&self, h: usize) -> Result<WeylGroup> {
        let norm = self.normalizer(h);
        let (group, projection) = self.group.quotient_of(&norm, &self.subgroups[h])?;
        Ok(WeylGroup {
            group,
            normalizer: self.index[&norm],
            projection,
        })
    }

    /// Whether `K <= H` up to conjugation in `within`: some `w` has `w K w^-1 <= H`.
    pub fn subconjugate_in(&self, k: usize, h: usize, within: usize) -> bool {
        self.subgroups[within]
            .members()
            .iter()
            .any(|&w| self.leq(self.conjugate(w, k), h))
    }

    /// Memoized Möbius row `mu(lower, -)`; entries for non-supersets are zero.
    pub(crate) fn moebius_row(&self, lower: usize) -> Arc<Vec<i64>> {
        if let Some(row) = self.moebius_rows.lock().expect("moebius cache").get(&lower) {
            return row.clone();
        }
        let mut row = vec![0i64; self.len()];
        let ups = &self.supersets[lower];
        row[lower] = 1;
        for (pos, &x) in ups.iter().enumerate().skip(1) {
            let s: i64 = ups[..pos]
                .iter()
                .filter(|&&y| self.leq(y, x))
                .map(|&y| row[y])
                .sum();
            row[x] = -s;
        }
        let row = Arc::new(row);
        self.moebius_rows
            .lock()
            .expect("moebius cache")
            .insert(lower, row.clone());
        row
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(name: &str) -> SubgroupLattice {
        SubgroupLattice::new(Arc::new(FiniteGroup::from_name(name).unwrap())).unwrap()
    }

    /// Every subset closed under the operation, found by brute force.
    fn brute_force_subgroup_count(g: &FiniteGroup) -> usize {
        let n = g.order();
        (0u64..1 << n)
            .filter(|mask| {
                let s =
                    Subgroup::from_sorted((0..n as u32).filter(|&i| mask >> i & 1 == 1).collect());
                g.is_subgroup(&s)
            })
            .count()
    }

    #[test]
    fn counts_match_brute_force() {
        for (name, subs, classes) in [
            ("trivial", 1, 1),
            ("c2", 2, 2),
            ("s3", 6, 4),
            ("c2xc2", 5, 5),
            ("c4", 3, 3),
        ] {
            let l = lattice(name);
            assert_eq!(l.len(), subs, "{name}");
            assert_eq!(l.class_count(), classes, "{name}");
            assert_eq!(brute_force_subgroup_count(l.group()), subs, "{name}");
        }
        assert_eq!(
            brute_force_subgroup_count(&FiniteGroup::dihedral(4).unwrap()),
            lattice("d8").len()
        );
    }

    #[test]
    fn known_lattice_sizes() {
        for (name, subs, classes) in [("d8", 10, 8), ("q8", 6, 6), ("a4", 10, 5), ("s4", 30, 11)] {
            let l = lattice(name);
            assert_eq!((l.len(), l.class_count()), (subs, classes), "{name}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = Arc::new(FiniteGroup::symmetric(4).unwrap());
        assert_eq!(
            SubgroupLattice::with_cap(g, 10).unwrap_err(),
            Error::GroupTooLarge { order: 24, cap: 10 }
        );
    }

    #[test]
    fn normalizers_and_weyl_groups_in_s3() {
        let l = lattice("s3");
        let top = l.top();
        assert_eq!(l.normalizer_index(top), top);
        assert_eq!(l.weyl_group(top).unwrap().group.order(), 1);
        let c2 = l.class_rep(1);
        assert_eq!(l.order_of(c2), 2);
        assert_eq!(l.normalizer_index(c2), c2);
        assert_eq!(l.weyl_group(c2).unwrap().group.order(), 1);
        let c3 = l.class_rep(2);
        assert_eq!(l.order_of(c3), 3);
        assert_eq!(l.normalizer_index(c3), top);
        assert_eq!(l.weyl_group(c3).unwrap().group.order(), 2);
        assert_eq!(l.core(c2), 0);
        assert_eq!(l.core(c3), c3);
    }

    #[test]
    fn conjugation_permutes_and_preserves_containment() {
        for name in ["s3", "d8", "a4", "q8"] {
            let l = lattice(name);
            for g in l.group().elements() {
                let mut image: Vec<usize> = (0..l.len()).map(|h| l.conjugate(g, h)).collect();
                for a in 0..l.len() {
                    let direct = l.group().conjugate_subgroup(g, l.subgroup(a));
                    assert_eq!(l.subgroup(image[a]), &direct);
                    for b in 0..l.len() {
                        assert_eq!(l.leq(a, b), l.leq(image[a], image[b]));
                    }
                }
                image.sort_unstable();
                assert_eq!(image, (0..l.len()).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn class_reps_are_lexicographic_minima() {
        let l = lattice("s4");
        for class in l.classes() {
            let rep = l.subgroup(class[0]);
            assert!(class
                .iter()
                .all(|&k| l.subgroup(k).members() >= rep.members()));
        }
    }
}
