use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::burnside::BurnsideRing;
use crate::rational::q;

fn padic(p: usize, d: usize) -> Tower {
    Tower::p_adic(p, d).unwrap()
}

#[test]
fn rejects_bad_maps() {
    let c2 = FiniteGroup::cyclic(2).unwrap();
    let c4 = FiniteGroup::cyclic(4).unwrap();
    assert!(Tower::new("x", vec![c2.clone(), c4.clone()], vec![vec![0, 0, 0, 0]]).is_err());
    assert!(Tower::new("x", vec![c2.clone(), c4.clone()], vec![vec![0, 1, 1, 0]]).is_err());
    assert!(Tower::new("x", vec![c2, c4], vec![]).is_err());
}

#[test]
fn padic_chains() {
    for (p, d) in [(2, 4), (3, 4), (5, 2)] {
        let t = padic(p, d);
        for e in 0..=d {
            assert_eq!(t.closed_subgroups_at_depth(e).unwrap().len(), e + 1);
        }
        assert!(matches!(
            t.closed_subgroups_at_depth(d + 1),
            Err(Error::DepthExceeded { .. })
        ));
    }
    let t = padic(2, 3);
    let lat = t.lattice(3);
    let pz = (0..lat.len()).find(|&k| lat.order_of(k) == 4).unwrap();
    let chain = t.chain_of(3, pz);
    assert_eq!(t.project_chain(&chain, 3).unwrap().members(), &[0, 2, 4, 6]);
    assert_eq!(t.project_chain(&chain, 1).unwrap().order(), 1);
    assert_eq!(t.project_chain(&chain, 2).unwrap().members(), &[0, 2]);
}

#[test]
fn constant_and_trivial_towers() {
    let t = Tower::from_spec("s3").unwrap();
    let chains = t.closed_subgroups_at_depth(0).unwrap();
    assert_eq!(chains.len(), 6);
    assert_eq!(t.lattice(0).class_count(), 4);
    let whole = t.chain_of(0, t.lattice(0).top());
    assert_eq!(
        t.basic_nbhd(&whole, 0).unwrap(),
        ClopenBasic {
            level: 0,
            index: t.lattice(0).top()
        }
    );
    assert_eq!(
        Tower::from_spec("trivial")
            .unwrap()
            .closed_subgroups_at_depth(0)
            .unwrap()
            .len(),
        1
    );

    let p = padic(3, 2);
    let top = p.chain_of(2, p.lattice(2).top());
    assert_eq!(
        p.basic_nbhd(&top, 0).unwrap(),
        ClopenBasic { level: 0, index: 0 }
    );
}

#[test]
fn basics_partition_chains_at_every_level() {
    for t in [
        padic(2, 3),
        Tower::from_spec("d8").unwrap(),
        Tower::product(&padic(2, 2), &padic(3, 1)).unwrap(),
    ] {
        let d = t.max_depth();
        let chains = t.closed_subgroups_at_depth(d).unwrap();
        for i in 0..=d {
            for c in &chains {
                let n = (0..t.lattice(i).len())
                    .filter(|&j| ClopenBasic { level: i, index: j }.contains(c))
                    .count();
                assert_eq!(n, 1);
            }
        }
    }
}

#[test]
fn conjugation_permutes_basics() {
    let t = Tower::from_spec("s3").unwrap();
    let lat = t.lattice(0);
    for g in t.level(0).elements() {
        for c in t.closed_subgroups_at_depth(0).unwrap() {
            let o = t.basic_nbhd(&c, 0).unwrap();
            let moved = t.conjugate_chain(g, &c);
            assert!(ClopenBasic {
                level: 0,
                index: lat.conjugate(g, o.index)
            }
            .contains(&moved));
        }
    }
}

#[test]
fn refinement() {
    let t = padic(2, 2);
    let whole0 = ClopenBasic { level: 0, index: 0 };
    assert_eq!(t.refine_basic(whole0, whole0), vec![whole0]);
    let p1 = ClopenBasic { level: 1, index: 0 };
    assert_eq!(t.refine_basic(whole0, p1), vec![p1]);
    assert!(t
        .refine_basic(
            ClopenBasic { level: 1, index: 0 },
            ClopenBasic { level: 1, index: 1 }
        )
        .is_empty());
    let fine = t.refine_basic(p1, ClopenBasic { level: 2, index: 1 });
    assert_eq!(fine, vec![ClopenBasic { level: 2, index: 1 }]);
}

#[test]
fn product_tower_levels() {
    let t = Tower::product(&padic(2, 2), &Tower::from_spec("c3").unwrap()).unwrap();
    let orders: Vec<usize> = (0..=t.max_depth()).map(|i| t.level(i).order()).collect();
    assert_eq!(orders, vec![3, 6, 12]);
}

#[test]
fn open_subgroups_are_clopen() {
    let s3 = Tower::from_spec("s3").unwrap();
    let lat = s3.lattice(0);
    for h in 0..lat.len() {
        let r = sh_is_clopen_check(&s3, OpenSubgroupRef { level: 0, index: h }, 0).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
    let c3 = (0..lat.len()).find(|&k| lat.order_of(k) == 3).unwrap();
    let r = sh_is_clopen_check(
        &s3,
        OpenSubgroupRef {
            level: 0,
            index: c3,
        },
        0,
    )
    .unwrap();
    assert_eq!(r.summary.total, 2);
    // {1, C3} is covered by the two level-0 points {1} and {C3}
    assert!(r.checks[0]
        .witness
        .as_deref()
        .unwrap()
        .ends_with("basics=2"));

    let t = padic(3, 3);
    for level in 0..=3 {
        for index in 0..t.lattice(level).len() {
            let r = sh_is_clopen_check(&t, OpenSubgroupRef { level, index }, 3).unwrap();
            assert!(r.passed());
        }
    }
}

#[test]
fn inflation_of_burnside_rings() {
    for t in [padic(2, 3), padic(3, 2), Tower::from_spec("s3").unwrap()] {
        let r = tower_burnside_check(&t, t.max_depth()).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
    for p in [2u64, 3] {
        let t = padic(p as usize, 2);
        let lo = BurnsideRing::of_group(Arc::clone(t.lattice(1)));
        let hi = BurnsideRing::of_group(Arc::clone(t.lattice(2)));
        let m = inflation_matrix(&t, &lo, &hi, 1);
        let x = hi.from_coeffs(m.apply(lo.basis(0).coeffs())).unwrap();
        let p = p as i64;
        assert_eq!(hi.mark_of(&x).values, vec![q(p), q(p), q(0)]);
    }
}

proptest! {
    #[test]
    fn refine_is_exact_intersection(p in 2usize..4, a in 0usize..4, b in 0usize..4, ia in 0usize..8, ib in 0usize..8) {
        let t = padic(p, 3);
        let oa = ClopenBasic { level: a.min(3), index: ia % t.lattice(a.min(3)).len() };
        let ob = ClopenBasic { level: b.min(3), index: ib % t.lattice(b.min(3)).len() };
        let fine = t.refine_basic(oa, ob);
        for c in t.closed_subgroups_at_depth(3).unwrap() {
            let n = fine.iter().filter(|o| o.contains(&c)).count();
            prop_assert_eq!(n, usize::from(oa.contains(&c) && ob.contains(&c)));
        }
    }
}
