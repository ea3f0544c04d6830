use std::collections::HashMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::group::FiniteGroup;
use crate::rational::frac;

fn ring(name: &str) -> BurnsideRing {
    let g = Arc::new(FiniteGroup::from_name(name).unwrap());
    BurnsideRing::of_group(Arc::new(SubgroupLattice::new(g).unwrap()))
}

fn qs(v: &[(i64, i64)]) -> Vec<Q> {
    v.iter().map(|&(n, d)| frac(n, d)).collect()
}

/// Decomposes `H/A x H/B` into orbits by brute force and returns the
/// coefficient of each class.
fn product_by_orbits(r: &BurnsideRing, a: usize, b: usize) -> Vec<Q> {
    let lat = r.lattice();
    let g = lat.group();
    let h = lat.subgroup(r.top());
    let coset = |x: u32, k: usize| -> Vec<u32> {
        let mut c: Vec<u32> = lat
            .subgroup(k)
            .members()
            .iter()
            .map(|&y| g.mul(x, y))
            .collect();
        c.sort_unstable();
        c
    };
    let ta = left_transversal(g, lat.subgroup(a), h);
    let tb = left_transversal(g, lat.subgroup(b), h);
    let ida: HashMap<Vec<u32>, usize> = ta
        .iter()
        .enumerate()
        .map(|(i, &x)| (coset(x, a), i))
        .collect();
    let idb: HashMap<Vec<u32>, usize> = tb
        .iter()
        .enumerate()
        .map(|(i, &x)| (coset(x, b), i))
        .collect();
    let mut seen = vec![vec![false; tb.len()]; ta.len()];
    let mut out = vec![Q::zero(); r.rank()];
    for i in 0..ta.len() {
        for j in 0..tb.len() {
            if seen[i][j] {
                continue;
            }
            let mut stab = Vec::new();
            for &x in h.members() {
                let ni = ida[&coset(g.mul(x, ta[i]), a)];
                let nj = idb[&coset(g.mul(x, tb[j]), b)];
                seen[ni][nj] = true;
                if ni == i && nj == j {
                    stab.push(x);
                }
            }
            let s = lat
                .index_of(&crate::group::Subgroup::from_sorted(stab))
                .unwrap();
            out[r.class_of(s).unwrap()] += Q::one();
        }
    }
    out
}

#[test]
fn marks_of_small_groups() {
    assert_eq!(ring("trivial").table_of_marks().rows(), &[vec![1]]);
    assert_eq!(
        ring("c2").table_of_marks().rows(),
        &[vec![2, 0], vec![1, 1]]
    );
    let s3 = ring("s3");
    let first: Vec<u64> = (0..4).map(|i| s3.table_of_marks().get(i, 0)).collect();
    assert_eq!(first, vec![6, 3, 2, 1]);
    for i in 0..s3.rank() {
        for j in i + 1..s3.rank() {
            assert_eq!(s3.table_of_marks().get(i, j), 0, "lower triangular");
        }
        assert!(s3.table_of_marks().get(i, i) > 0);
    }
}

#[test]
fn diagonal_marks_are_weyl_orders() {
    for name in ["s3", "d8", "a4", "q8"] {
        let r = ring(name);
        for c in 0..r.rank() {
            let k = r.class_rep(c);
            let lat = r.lattice();
            let w = lat.order_of(lat.normalizer_index(k)) / lat.order_of(k);
            assert_eq!(r.table_of_marks().get(c, c), w as u64);
        }
    }
}

#[test]
fn products_of_transitive_sets() {
    let c2 = ring("c2");
    let x = c2.basis(0);
    assert_eq!(c2.mul(&x, &x), c2.scale(&x, &q(2)));
    let s3 = ring("s3");
    assert_eq!(s3.mul(&s3.basis(1), &s3.basis(2)), s3.basis(0));
    assert_eq!(s3.mark_of(&s3.one()).values, vec![q(1); 4]);
}

#[test]
fn products_agree_with_orbit_count() {
    for name in ["s3", "d8", "q8", "a4", "c2xc2"] {
        let r = ring(name);
        for a in 0..r.rank() {
            for b in 0..r.rank() {
                let expected = product_by_orbits(&r, r.class_rep(a), r.class_rep(b));
                assert_eq!(
                    r.mul(&r.basis(a), &r.basis(b)).coeffs(),
                    &expected[..],
                    "{name} {a} {b}"
                );
            }
        }
    }
}

#[test]
fn idempotents_of_c2_and_s3() {
    let c2 = ring("c2");
    let e = c2.idempotent(0, 1).unwrap();
    assert_eq!(e.coeffs(), &qs(&[(-1, 2), (1, 1)])[..]);
    let e1 = c2.idempotent(0, 0).unwrap();
    assert_eq!(c2.add(&e, &e1), c2.one());

    let s3 = ring("s3");
    let top = s3.lattice().top();
    let e = s3.idempotent(0, top).unwrap();
    assert_eq!(e.coeffs(), &qs(&[(1, 2), (-1, 1), (-1, 2), (1, 1)])[..]);
    assert_eq!(s3.mark_of(&e).values, vec![q(0), q(0), q(0), q(1)]);
    assert_eq!(s3.idempotent(top, 0).unwrap(), s3.one());
}

#[test]
fn idempotent_requires_normal_subgroup() {
    let s3 = ring("s3");
    let c2 = s3.class_rep(1);
    assert!(matches!(
        s3.idempotent(c2, c2),
        Err(Error::NotNormal { .. })
    ));
}

#[test]
fn idempotents_depend_only_on_the_class() {
    for name in ["s3", "d8", "a4"] {
        let r = ring(name);
        let lat = r.lattice().clone();
        for class in lat.classes() {
            let e0 = r.idempotent(0, class[0]).unwrap();
            for &k in class {
                assert_eq!(r.idempotent(0, k).unwrap(), e0);
            }
        }
    }
}

#[test]
fn idempotent_suites_pass() {
    for name in ["trivial", "c2", "c4", "c2xc2", "s3", "d8", "q8", "a4", "s4"] {
        let r = ring(name);
        let lat = r.lattice().clone();
        for n in 0..lat.len() {
            if !lat.is_normal(n) {
                continue;
            }
            let rep = r.idempotent_suite_check(n).unwrap();
            assert!(
                rep.passed(),
                "{name} N={n}: {:?}",
                rep.failures().collect::<Vec<_>>()
            );
        }
    }
}

#[test]
fn burnside_ring_of_a_subgroup() {
    let g = Arc::new(FiniteGroup::from_name("s3").unwrap());
    let lat = Arc::new(SubgroupLattice::new(g).unwrap());
    let c3 = (0..lat.len()).find(|&i| lat.order_of(i) == 3).unwrap();
    let r = BurnsideRing::new(lat, c3);
    assert_eq!(r.rank(), 2);
    assert_eq!(r.table_of_marks().rows(), &[vec![3, 0], vec![1, 1]]);
    assert!(r.idempotent_suite_check(0).unwrap().passed());
}

#[test]
fn self_action_splits_into_lines() {
    let s3 = ring("s3");
    let es: Vec<QMap> = (0..4)
        .map(|c| s3.multiplication_matrix(&s3.characteristic(&[c])))
        .collect();
    let split = module_to_sheaf(4, es).unwrap();
    for x in 0..4 {
        assert_eq!(split.stalk(x).dim(), 1);
    }
    assert_eq!(split.sections(&[0, 2]).dim(), 2);
    assert_eq!(split.restriction(&[0, 2, 3], &[2]).unwrap().rows(), 1);

    let two = module_to_sheaf(
        2,
        vec![
            QMap::from_i64(&[&[1, 0], &[0, 0]]),
            QMap::from_i64(&[&[0, 0], &[0, 1]]),
        ],
    )
    .unwrap();
    assert_eq!(two.stalk(1).dim(), 1);
    assert_eq!(
        module_to_sheaf(3, vec![QMap::identity(3)])
            .unwrap()
            .sections(&[0])
            .dim(),
        3
    );

    assert!(matches!(
        module_to_sheaf(1, vec![QMap::from_i64(&[&[2]])]),
        Err(Error::IdempotentMismatch(_))
    ));
    assert!(matches!(
        module_to_sheaf(1, vec![QMap::identity(1), QMap::identity(1)]),
        Err(Error::IdempotentMismatch(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn marks_are_multiplicative(seed in any::<u64>(), which in 0usize..4) {
        let r = ring(["s3", "d8", "a4", "c2xc2"][which]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = r.random_element(&mut rng, 5);
        let y = r.random_element(&mut rng, 5);
        let fx = r.mark_of(&x).values;
        let fy = r.mark_of(&y).values;
        let fxy = r.mark_of(&r.mul(&x, &y)).values;
        for i in 0..r.rank() {
            prop_assert_eq!(&fxy[i], &(&fx[i] * &fy[i]));
        }
        prop_assert_eq!(r.from_marks(&r.mark_of(&x)).unwrap(), x);
    }
}
