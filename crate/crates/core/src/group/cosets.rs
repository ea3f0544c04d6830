use super::{FiniteGroup, Subgroup};

/// One representative per left coset `gK` of `K` in `H`, each the smallest
/// element id of its coset, in increasing order.
pub fn left_transversal(group: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> Vec<u32> {
    let mut covered = vec![false; group.order()];
    let mut reps = Vec::with_capacity(h.order() / k.order().max(1));
    for &g in h.members() {
        if covered[g as usize] {
            continue;
        }
        reps.push(g);
        for &x in k.members() {
            covered[group.mul(g, x) as usize] = true;
        }
    }
    reps
}

/// One representative per double coset `J x L` in `H`, each minimal.
pub fn double_coset_reps(
    group: &FiniteGroup,
    j: &Subgroup,
    l: &Subgroup,
    h: &Subgroup,
) -> Vec<u32> {
    let mut covered = vec![false; group.order()];
    let mut reps = Vec::new();
    for &x in h.members() {
        if covered[x as usize] {
            continue;
        }
        reps.push(x);
        for &a in j.members() {
            let ax = group.mul(a, x);
            for &b in l.members() {
                covered[group.mul(ax, b) as usize] = true;
            }
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::SubgroupLattice;

    #[test]
    fn transversal_sizes() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(left_transversal(&c2, &c2.whole(), &c2.whole()), vec![0]);

        let l = SubgroupLattice::new(Arc::new(FiniteGroup::symmetric(3).unwrap())).unwrap();
        let g = l.group();
        let c3 = l.subgroup(l.class_rep(2));
        assert_eq!(left_transversal(g, c3, &g.whole()).len(), 2);
        for h in 0..l.len() {
            for &k in l.subsets(h) {
                let t = left_transversal(g, l.subgroup(k), l.subgroup(h));
                assert_eq!(t.len() * l.order_of(k), l.order_of(h));
            }
        }
    }

    #[test]
    fn double_cosets_partition() {
        let l = SubgroupLattice::new(Arc::new(FiniteGroup::symmetric(3).unwrap())).unwrap();
        let g = l.group();
        let c2 = l.subgroup(l.class_rep(1));
        let reps = double_coset_reps(g, c2, c2, &g.whole());
        assert_eq!(reps.len(), 2);
        for h in 0..l.len() {
            for &a in l.subsets(h) {
                for &b in l.subsets(h) {
                    let (ja, lb) = (l.subgroup(a), l.subgroup(b));
                    let total: usize = double_coset_reps(g, ja, lb, l.subgroup(h))
                        .into_iter()
                        .map(|x| {
                            let xb = g.conjugate_subgroup(x, lb);
                            ja.order() * lb.order() / ja.intersection(&xb).order()
                        })
                        .sum();
                    assert_eq!(total, l.order_of(h));
                }
            }
        }
    }
}
