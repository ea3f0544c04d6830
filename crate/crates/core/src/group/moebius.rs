use super::SubgroupLattice;
use crate::error::{Error, Result};

impl SubgroupLattice {
    /// Möbius function of the subgroup poset, `mu(D, K)` for `D <= K`.
    ///
    /// Computed by the recursion `mu(K, K) = 1`,
    /// `mu(D, K) = -sum_{D <= X < K} mu(D, X)`, memoized per lower end.
    pub fn moebius(&self, d: usize, k: usize) -> Result<i64> {
        if !self.leq(d, k) {
            return Err(Error::NotComparable { lower: d, upper: k });
        }
        Ok(self.moebius_row(d)[k])
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use crate::group::{FiniteGroup, SubgroupLattice};

    /// `sum_i (-1)^i c_i` over strictly increasing chains `D = X_0 < ... < X_i = K`.
    fn chain_count(l: &SubgroupLattice, d: usize, k: usize) -> i64 {
        if d == k {
            return 1;
        }
        // chains through a first step d < x <= k
        l.supersets(d)
            .iter()
            .filter(|&&x| x != d && l.leq(x, k))
            .map(|&x| -chain_count(l, x, k))
            .sum()
    }

    #[test]
    fn small_values() {
        let c2 = SubgroupLattice::new(Arc::new(FiniteGroup::cyclic(2).unwrap())).unwrap();
        assert_eq!(c2.moebius(0, 1).unwrap(), -1);
        assert_eq!(c2.moebius(1, 1).unwrap(), 1);
        assert!(c2.moebius(1, 0).is_err());

        let s3 = SubgroupLattice::new(Arc::new(FiniteGroup::symmetric(3).unwrap())).unwrap();
        assert_eq!(s3.moebius(0, s3.top()).unwrap(), 3);
    }

    #[test]
    fn recursion_matches_chain_counting() {
        for name in ["c2", "c4", "c2xc2", "s3", "d8", "q8", "a4"] {
            let l = SubgroupLattice::new(Arc::new(FiniteGroup::from_name(name).unwrap())).unwrap();
            assert!(l.len() <= 20);
            for d in 0..l.len() {
                for &k in l.supersets(d) {
                    assert_eq!(
                        l.moebius(d, k).unwrap(),
                        chain_count(&l, d, k),
                        "{name} ({d},{k})"
                    );
                }
            }
        }
    }
}
