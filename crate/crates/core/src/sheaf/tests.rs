use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::group::FiniteGroup;
use crate::mackey::{check_axioms, MackeyFunctor};
use crate::qmod::QModule;
use crate::rational::{q, Q};
use crate::tower::Tower;

fn constant_tower(name: &str) -> Arc<Tower> {
    Arc::new(Tower::constant(FiniteGroup::from_name(name).unwrap()).unwrap())
}

fn by_order(lat: &crate::group::SubgroupLattice, n: usize) -> Vec<usize> {
    (0..lat.len()).filter(|&k| lat.order_of(k) == n).collect()
}

fn sign_of_c2() -> QModule {
    let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
    QModule::from_generator_images(c2, &[QMap::from_i64(&[&[-1]])]).unwrap()
}

#[test]
fn constant_functor_stalks_live_at_the_trivial_chain() {
    let t = constant_tower("s3");
    let m = MackeyFunctor::constant(t, 0, 1).unwrap();
    let ms = mackey_to_sheaf(&m, StalkPolicy::RequireStable).unwrap();
    let expect: Vec<usize> = (0..m.lattice().len())
        .map(|k| usize::from(k == m.lattice().trivial()))
        .collect();
    assert_eq!(ms.sheaf.dims(), expect.as_slice());
}

#[test]
fn burnside_functor_has_one_dimensional_stalks() {
    for name in ["c2", "s3", "d8"] {
        let m = MackeyFunctor::burnside(constant_tower(name), 0).unwrap();
        let ms = mackey_to_sheaf(&m, StalkPolicy::Terminal).unwrap();
        assert!(ms.sheaf.dims().iter().all(|&d| d == 1), "{name}");
    }
}

#[test]
fn constant_sheaf_sections_count_classes() {
    // H-fixed functions on subgroups of H: one per H-class
    let t = constant_tower("s3");
    let e = WeylSheaf::constant(t.clone(), 0, 1).unwrap();
    let m = sheaf_to_mackey(&e, Transversal::Canonical).unwrap();
    let lat = m.lattice();
    for h in 0..lat.len() {
        let ring = crate::burnside::BurnsideRing::new(lat.clone(), h);
        assert_eq!(m.dim(h), ring.rank());
    }
    assert_eq!(m.dims(), &[1, 2, 2, 2, 2, 4]);
    assert!(check_axioms(&m).passed());
}

#[test]
fn constant_sheaf_sections_are_the_burnside_functor() {
    // the sections functor of the constant sheaf has the Burnside ring as value
    // and Burnside stalks, so its stalks agree with those of the Burnside functor
    for name in ["c4", "s3", "q8"] {
        let t = constant_tower(name);
        let e = WeylSheaf::constant(t.clone(), 0, 1).unwrap();
        let m = sheaf_to_mackey(&e, Transversal::Canonical).unwrap();
        let b = MackeyFunctor::burnside(t, 0).unwrap();
        assert_eq!(m.dims(), b.dims(), "{name}");
        let ms = mackey_to_sheaf(&m, StalkPolicy::Terminal).unwrap();
        assert_eq!(ms.sheaf.dims(), e.dims());
    }
}

#[test]
fn skyscraper_at_normal_and_non_normal_subgroups() {
    let t = constant_tower("s3");
    let lat = t.lattice(0).clone();
    let c3 = by_order(&lat, 3)[0];
    let w = lat.weyl_group(c3).unwrap();
    let triv = QModule::trivial_action(Arc::new(w.group), 1);
    let sky = WeylSheaf::skyscraper(t.clone(), 0, c3, &triv).unwrap();
    let stalks: Vec<usize> = (0..lat.len()).map(|k| usize::from(k == c3)).collect();
    assert_eq!(sky.dims(), stalks.as_slice());
    let m = sheaf_to_mackey(&sky, Transversal::Canonical).unwrap();
    let values: Vec<usize> = (0..lat.len())
        .map(|k| usize::from(lat.leq(c3, k)))
        .collect();
    assert_eq!(m.dims(), values.as_slice());
    assert!(check_axioms(&m).passed());

    let c2 = by_order(&lat, 2)[0];
    let w = lat.weyl_group(c2).unwrap();
    let sky =
        WeylSheaf::skyscraper(t, 0, c2, &QModule::trivial_action(Arc::new(w.group), 1)).unwrap();
    let m = sheaf_to_mackey(&sky, Transversal::Canonical).unwrap();
    // one germ on each of the three transpositions, and one orbit at S3
    let expect: Vec<usize> = (0..lat.len())
        .map(|k| usize::from(lat.order_of(k) == 2 || k == lat.top()))
        .collect();
    assert_eq!(m.dims(), expect.as_slice());
    assert!(roundtrip_sheaf(&sky).unwrap().passed());
}

#[test]
fn skyscraper_at_the_whole_group_lives_only_at_the_top() {
    let t = constant_tower("s3");
    let lat = t.lattice(0).clone();
    let w = lat.weyl_group(lat.top()).unwrap();
    let sky = WeylSheaf::skyscraper(
        t,
        0,
        lat.top(),
        &QModule::trivial_action(Arc::new(w.group), 1),
    )
    .unwrap();
    let m = sheaf_to_mackey(&sky, Transversal::Canonical).unwrap();
    let expect: Vec<usize> = (0..lat.len())
        .map(|k| usize::from(k == lat.top()))
        .collect();
    assert_eq!(m.dims(), expect.as_slice());
}

#[test]
fn zero_functor_round_trips() {
    let t = constant_tower("s3");
    let m = crate::mackey::Builtin::Zero.build(t.clone(), 0).unwrap();
    let ms = mackey_to_sheaf(&m, StalkPolicy::RequireStable).unwrap();
    assert!(ms.sheaf.dims().iter().all(|&d| d == 0));
    for h in 0..m.lattice().len() {
        assert_eq!(theta(&m, &ms, h).unwrap().rows(), 0);
    }
    assert!(roundtrip_mackey(&m, 0).unwrap().passed());
    assert!(roundtrip_sheaf(&WeylSheaf::zero(t, 0).unwrap())
        .unwrap()
        .passed());
    let d = decompose(&m).unwrap();
    assert!(d.pieces.iter().all(|p| p.space.dim() == 0));
}

#[test]
fn burnside_theta_at_the_top_of_s3() {
    let m = MackeyFunctor::burnside(constant_tower("s3"), 0).unwrap();
    let ms = mackey_to_sheaf(&m, StalkPolicy::Terminal).unwrap();
    let th = theta(&m, &ms, m.lattice().top()).unwrap();
    assert_eq!((th.rows(), th.cols()), (4, 4));
    assert!(th.is_isomorphism());
}

#[test]
fn skyscraper_at_trivial_is_the_fixed_point_functor() {
    let t = constant_tower("d8");
    let lat = t.lattice(0).clone();
    let g = t.level(0).clone();
    let w = lat.weyl_group(lat.trivial()).unwrap();
    let module = crate::mackey::sample_module(&t, 0).unwrap();
    // the Weyl group of the trivial subgroup is G itself, numbered identically
    assert_eq!(w.group.order(), g.order());
    let mats: Vec<QMap> = (0..g.order() as u32)
        .map(|x| module.matrix(x).unwrap().clone())
        .collect();
    let cw = QModule::with_action(Arc::new(w.group), mats).unwrap();
    let sky = WeylSheaf::skyscraper(t.clone(), 0, lat.trivial(), &cw).unwrap();
    let m = sheaf_to_mackey(&sky, Transversal::Canonical).unwrap();
    let fp = MackeyFunctor::fixed_point(t, 0, &module, 0).unwrap();
    assert_eq!(m.dims(), fp.dims());
}

#[test]
fn roundtrips_for_builtins() {
    for spec in ["c2", "c2xc2", "s3", "d8", "p-adic:2:3", "p-adic:3:2"] {
        let t = Arc::new(Tower::from_spec(spec).unwrap());
        let d = t.max_depth();
        let module = crate::mackey::sample_module(&t, d).unwrap();
        let functors = [
            MackeyFunctor::constant(t.clone(), d, 1).unwrap(),
            MackeyFunctor::burnside(t.clone(), d).unwrap(),
            MackeyFunctor::fixed_point(t.clone(), d, &module, d).unwrap(),
        ];
        for m in &functors {
            let r = roundtrip_mackey(m, 7).unwrap();
            assert!(r.passed(), "{spec} {}: {}", m.name(), r.to_text());
            let ms = mackey_to_sheaf(m, StalkPolicy::Terminal).unwrap();
            let r = roundtrip_sheaf(&ms.sheaf).unwrap();
            assert!(r.passed(), "{spec} {}: {}", m.name(), r.to_text());
        }
    }
}

#[test]
fn broken_functor_fails_the_roundtrip() {
    let t = constant_tower("c2");
    let m = MackeyFunctor::broken_constant(t, 0).unwrap();
    let r = roundtrip_mackey(&m, 1).unwrap();
    assert!(!r.passed());
}

#[test]
fn require_stable_rejects_the_short_p_adic_truncation() {
    let t = Arc::new(Tower::p_adic(2, 2).unwrap());
    let m = MackeyFunctor::constant(t.clone(), 2, 1).unwrap();
    let lat = t.lattice(2);
    let order2 = by_order(lat, 2)[0];
    assert_eq!(
        mackey_to_sheaf(&m, StalkPolicy::RequireStable).unwrap_err(),
        Error::NotStabilized {
            chain: Some(order2)
        }
    );
    let ms = mackey_to_sheaf(&m, StalkPolicy::Terminal).unwrap();
    let w = &ms.witnesses[order2];
    assert_eq!(
        w.stages.iter().map(|s| s.1).collect::<Vec<_>>(),
        vec![1, 1, 0]
    );
    assert!(!w.stabilized());
    assert!(ms.witnesses[lat.trivial()].stabilized());
}

#[test]
fn theta_is_rejected_for_a_mismatched_sheaf() {
    let t = constant_tower("c2");
    let m = MackeyFunctor::constant(t.clone(), 0, 1).unwrap();
    let mut ms = mackey_to_sheaf(&m, StalkPolicy::Terminal).unwrap();
    ms.stalks[m.lattice().trivial()] = Subspace::zero(1);
    ms.sheaf = WeylSheaf::zero(t, 0).unwrap();
    assert!(theta(&m, &ms, m.lattice().top()).is_err());
}

#[test]
fn weylify_takes_fixed_points() {
    let t = constant_tower("s3");
    let g = t.level(0).clone();
    let mats: Vec<QMap> = g
        .elements()
        .map(|x| {
            let mut p = QMap::zero(g.order(), g.order());
            for y in g.elements() {
                p[(g.mul(x, y) as usize, y as usize)] = q(1);
            }
            p
        })
        .collect();
    let regular = QModule::with_action(g.clone(), mats).unwrap();
    let f = EquivariantSheaf::from_module(t.clone(), 0, &regular).unwrap();
    assert!(!f.is_weyl());
    let w = weylify(&f).unwrap();
    let lat = t.lattice(0);
    let expect: Vec<usize> = (0..lat.len())
        .map(|k| g.order() / lat.order_of(k))
        .collect();
    assert_eq!(w.dims(), expect.as_slice());
    assert!(weylify_check(&f).unwrap().passed());

    let t2 = constant_tower("c2");
    let f = EquivariantSheaf::from_module(t2, 0, &sign_of_c2()).unwrap();
    assert_eq!(weylify(&f).unwrap().dims(), &[1, 0]);
    assert!(weylify_check(&f).unwrap().passed());
    assert!(WeylSheaf::new(f).is_err());
}

#[test]
fn decompose_examples() {
    let t = constant_tower("c2");
    let d = decompose(&MackeyFunctor::constant(t.clone(), 0, 1).unwrap()).unwrap();
    assert_eq!(
        d.pieces.iter().map(|p| p.fixed_dim).collect::<Vec<_>>(),
        vec![1, 0]
    );
    assert!(d.holds());

    let d = decompose(&MackeyFunctor::fixed_point(t, 0, &sign_of_c2(), 0).unwrap()).unwrap();
    assert_eq!(
        d.pieces.iter().map(|p| p.space.dim()).collect::<Vec<_>>(),
        vec![1, 0]
    );
    assert_eq!(d.total(), 0);
    assert!(d.holds());

    for name in ["s3", "d8", "a4"] {
        let b = MackeyFunctor::burnside(constant_tower(name), 0).unwrap();
        let d = decompose(&b).unwrap();
        assert!(d.pieces.iter().all(|p| p.fixed_dim == 1), "{name}");
        assert!(d.holds());
    }
}

#[test]
fn burnside_acts_on_sections_by_marks() {
    for name in ["c2", "s3", "d8"] {
        let t = constant_tower(name);
        let e = WeylSheaf::constant(t.clone(), 0, 2).unwrap();
        for h in 0..t.lattice(0).len() {
            let r = burnside_action_on_sections(&e, h).unwrap();
            assert!(r.passed(), "{name}: {}", r.to_text());
        }
    }
    let t = constant_tower("s3");
    let lat = t.lattice(0).clone();
    let c2 = by_order(&lat, 2)[1];
    let w = lat.weyl_group(c2).unwrap();
    let sky =
        WeylSheaf::skyscraper(t, 0, c2, &QModule::trivial_action(Arc::new(w.group), 1)).unwrap();
    assert!(burnside_action_on_sections(&sky, lat.top())
        .unwrap()
        .passed());
}

#[test]
fn germs_at_the_coarsest_level() {
    let t = constant_tower("s3");
    let lat = t.lattice(0).clone();
    let c3 = by_order(&lat, 3)[0];
    let w = lat.weyl_group(c3).unwrap();
    let sky =
        WeylSheaf::skyscraper(t, 0, c3, &QModule::trivial_action(Arc::new(w.group), 1)).unwrap();
    let (level, s) = represent_germ(&sky, c3, &[q(3)]).unwrap();
    assert_eq!(level, 0);
    assert_eq!(s.domain, vec![c3]);
    assert_eq!(s.germ(c3).unwrap(), &[q(3)]);
    assert_eq!(section_stabilizer(&sky, &s), lat.top());

    let t = Arc::new(Tower::p_adic(2, 3).unwrap());
    let e = WeylSheaf::constant(t.clone(), 3, 1).unwrap();
    let lat = t.lattice(3).clone();
    let k = by_order(&lat, 4)[0];
    let (level, s) = represent_germ(&e, k, &[q(1)]).unwrap();
    assert_eq!(level, 0);
    assert_eq!(s.domain.len(), lat.len());
    let s1 = represent_germ_at_level(&e, k, &[q(1)], 1).unwrap();
    let basic = t.basic_nbhd(&t.chain_of(3, k), 1).unwrap();
    let inside: Vec<usize> = (0..lat.len())
        .filter(|&l| basic.contains(&t.chain_of(3, l)))
        .collect();
    assert_eq!(s1.domain, inside);
    assert_eq!(s1.domain.len(), 3);
    assert_eq!(s1.germ(k).unwrap(), &[q(1)]);
}

#[test]
fn germ_must_be_fixed_by_its_stabilizer() {
    let t = constant_tower("c2");
    let f = EquivariantSheaf::from_module(t, 0, &sign_of_c2()).unwrap();
    let lat = f.lattice().clone();
    assert_eq!(
        represent_germ(&f, lat.top(), &[q(1)]).unwrap_err(),
        Error::NotStabilized {
            chain: Some(lat.top())
        }
    );
    let (_, s) = represent_germ(&f, lat.trivial(), &[q(1)]).unwrap();
    assert_eq!(section_stabilizer(&f, &s), lat.trivial());
}

#[test]
fn from_parts_rejects_a_non_action() {
    let t = constant_tower("c2");
    let bad = vec![vec![QMap::scalar(1, q(2)), QMap::scalar(1, q(1))]];
    assert!(EquivariantSheaf::from_parts("bad", t.clone(), 0, vec![1, 1], bad).is_err());
    let short = vec![vec![QMap::identity(1)]];
    assert!(matches!(
        EquivariantSheaf::from_parts("short", t, 0, vec![1, 1], short),
        Err(Error::ShapeMismatch(_))
    ));
}

#[test]
fn sections_functor_of_a_plain_sheaf_satisfies_the_axioms() {
    let t = constant_tower("s3");
    let module = crate::mackey::sample_module(&t, 0).unwrap();
    let f = EquivariantSheaf::from_module(t, 0, &module).unwrap();
    let m = sheaf_to_mackey(&f, Transversal::Random(3)).unwrap();
    assert!(check_axioms(&m).passed());
}

#[test]
fn identity_sheaf_map_gives_identity() {
    let t = constant_tower("s3");
    let e = WeylSheaf::constant(t, 0, 2).unwrap();
    let id = SheafMap::identity(&e);
    for f in induced_mackey_map(&id, &e, &e).unwrap() {
        assert!(f.is_identity());
    }
}

fn small_matrix() -> impl Strategy<Value = QMap> {
    proptest::collection::vec(-3i64..=3, 4).prop_map(|v| QMap::from_i64(&[&v[0..2], &v[2..4]]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn induced_maps_compose(a in small_matrix(), b in small_matrix()) {
        let t = constant_tower("s3");
        let e = WeylSheaf::constant(t, 0, 2).unwrap();
        let n = e.lattice().len();
        let fa = SheafMap::new(&e, &e, vec![a; n]).unwrap();
        let fb = SheafMap::new(&e, &e, vec![b; n]).unwrap();
        let lhs = induced_mackey_map(&fa.compose(&fb).unwrap(), &e, &e).unwrap();
        let ra = induced_mackey_map(&fa, &e, &e).unwrap();
        let rb = induced_mackey_map(&fb, &e, &e).unwrap();
        for h in 0..n {
            prop_assert_eq!(&lhs[h], &ra[h].compose(&rb[h]).unwrap());
        }
    }

    #[test]
    fn theta_of_random_elements_is_equivariant(seed in 0u64..1000) {
        use rand::{Rng, SeedableRng};
        let t = constant_tower("s3");
        let m = MackeyFunctor::burnside(t, 0).unwrap();
        let ms = mackey_to_sheaf(&m, StalkPolicy::Terminal).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let h = m.lattice().top();
        let v: Vec<Q> = (0..m.dim(h)).map(|_| q(rng.gen_range(-5..=5))).collect();
        let germs = theta_germs(&m, &ms, h).unwrap().apply(&v);
        let (_, fixed) = equivariant_sections(&ms.sheaf, h).unwrap();
        prop_assert!(fixed.contains(&germs));
    }
}
