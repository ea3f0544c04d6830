use std::collections::HashMap;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// Hard ceiling on permutation closures, independent of the lattice cap.
const PERM_CLOSURE_LIMIT: usize = 1 << 16;

impl FiniteGroup {
    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1).expect("trivial group")
    }

    /// `Z/n`, element `k` is the residue `k`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        let mul = (0..n)
            .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
            .collect();
        FiniteGroup::from_flat(n, mul, Some(format!("C{n}")))
    }

    /// Symmetries of the regular `n`-gon, order `2n`. Element `k + n*e` is `r^k s^e`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("dihedral group with n = 0".into()));
        }
        let m = 2 * n;
        let mut mul = Vec::with_capacity(m * m);
        for x in 0..m {
            let (a, e) = (x % n, x / n);
            for y in 0..m {
                let (b, f) = (y % n, y / n);
                let k = if e == 0 { (a + b) % n } else { (a + n - b) % n };
                mul.push((k + n * ((e + f) % 2)) as u32);
            }
        }
        FiniteGroup::from_flat(m, mul, Some(format!("D{m}")))
    }

    /// Quaternion group of order 8: `+-1, +-i, +-j, +-k`, id = `unit + 4*sign`.
    pub fn quaternion() -> Self {
        // unit products over {1,i,j,k}: (sign, unit)
        const T: [[(u8, u8); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let mut mul = Vec::with_capacity(64);
        for x in 0..8usize {
            for y in 0..8usize {
                let (s, u) = T[x % 4][y % 4];
                let sign = (x / 4 + y / 4 + s as usize) % 2;
                mul.push((u as usize + 4 * sign) as u32);
            }
        }
        FiniteGroup::from_flat(8, mul, Some("Q8".into())).expect("quaternion table")
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<u32> = (0..n as u32).collect();
            t.swap(0, 1);
            gens.push(t);
        }
        if n >= 3 {
            gens.push((0..n as u32).map(|i| (i + 1) % n as u32).collect());
        }
        Ok(FiniteGroup::from_permutations(n.max(1), &gens)?.with_label(format!("S{n}")))
    }

    pub fn alternating(n: usize) -> Result<Self> {
        let gens: Vec<Vec<u32>> = (2..n)
            .map(|k| {
                let mut p: Vec<u32> = (0..n as u32).collect();
                p[0] = 1;
                p[1] = k as u32;
                p[k] = 0;
                p
            })
            .collect();
        Ok(FiniteGroup::from_permutations(n.max(1), &gens)?.with_label(format!("A{n}")))
    }

    /// Direct product; `(a, b)` has id `a * |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n as u32 {
            for y in 0..n as u32 {
                let p = a.mul(x / nb as u32, y / nb as u32);
                let q = b.mul(x % nb as u32, y % nb as u32);
                mul.push(p * nb as u32 + q);
            }
        }
        let label = match (a.label(), b.label()) {
            (Some(l), Some(r)) => Some(format!("{l}x{r}")),
            _ => None,
        };
        FiniteGroup::from_flat(n, mul, label)
    }

    /// Group generated by permutations of `0..degree`, composed right to left:
    /// `(p q)(x) = p(q(x))`. Elements are numbered in breadth-first order from
    /// the identity.
    pub fn from_permutations(degree: usize, gens: &[Vec<u32>]) -> Result<Self> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(Error::InvalidGroup(format!(
                    "permutation of length {} on {degree} points",
                    g.len()
                )));
            }
            for &x in g {
                if x as usize >= degree || std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::InvalidGroup(format!("{g:?} is not a permutation")));
                }
            }
        }
        let compose =
            |p: &[u32], q: &[u32]| -> Vec<u32> { q.iter().map(|&x| p[x as usize]).collect() };
        let id: Vec<u32> = (0..degree as u32).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<u32>, u32> = HashMap::from([(id, 0)]);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let y = compose(&elems[i], g);
                if !index.contains_key(&y) {
                    if elems.len() >= PERM_CLOSURE_LIMIT {
                        return Err(Error::GroupTooLarge {
                            order: elems.len() + 1,
                            cap: PERM_CLOSURE_LIMIT,
                        });
                    }
                    index.insert(y.clone(), elems.len() as u32);
                    elems.push(y);
                }
            }
            i += 1;
        }
        let n = elems.len();
        let mut mul = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                mul.push(index[&compose(a, b)]);
            }
        }
        FiniteGroup::from_flat(n, mul, None)
    }

    /// Parses shorthand names: `trivial`, `c<n>`, `d<order>`, `s<n>`, `a<n>`,
    /// `q8`, and products joined by `x` (e.g. `c2xc2`).
    pub fn from_name(name: &str) -> Result<Self> {
        let name = name.trim().to_ascii_lowercase();
        if name.contains('x') {
            let mut parts = name.split('x');
            let first = FiniteGroup::from_name(parts.next().unwrap_or(""))?;
            let mut acc = first;
            for p in parts {
                acc = FiniteGroup::direct_product(&acc, &FiniteGroup::from_name(p)?)?;
            }
            return Ok(acc);
        }
        let bad = || Error::InvalidGroup(format!("unknown group name {name:?}"));
        if name == "trivial" || name == "1" {
            return Ok(FiniteGroup::trivial());
        }
        if name == "q8" {
            return Ok(FiniteGroup::quaternion());
        }
        let (head, num) = name.split_at(1);
        let k: usize = num.parse().map_err(|_| bad())?;
        match head {
            "c" => FiniteGroup::cyclic(k),
            "d" if k >= 2 && k.is_multiple_of(2) => FiniteGroup::dihedral(k / 2),
            "s" => FiniteGroup::symmetric(k),
            "a" => FiniteGroup::alternating(k),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(FiniteGroup::cyclic(5).unwrap().order(), 5);
        assert_eq!(FiniteGroup::dihedral(4).unwrap().order(), 8);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
        assert_eq!(FiniteGroup::alternating(4).unwrap().order(), 12);
        assert_eq!(FiniteGroup::quaternion().order(), 8);
        assert_eq!(FiniteGroup::from_name("c2xc2").unwrap().order(), 4);
        assert_eq!(FiniteGroup::from_name("d8").unwrap().order(), 8);
        assert!(FiniteGroup::from_name("d7").is_err());
    }

    #[test]
    fn quaternion_has_unique_involution() {
        let q = FiniteGroup::quaternion();
        let involutions: Vec<_> = q.elements().filter(|&x| q.element_order(x) == 2).collect();
        assert_eq!(involutions, vec![4]);
        assert!(!q.is_abelian());
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(FiniteGroup::from_permutations(3, &[vec![0, 0, 1]]).is_err());
        assert!(FiniteGroup::from_permutations(3, &[vec![0, 1]]).is_err());
    }
}
