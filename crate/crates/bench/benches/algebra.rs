use criterion::{criterion_group, criterion_main, Criterion};
use mackey_bench::{lattice, tower};
use mackey_core::mackey::check_axioms;
use mackey_core::sheaf::{mackey_to_sheaf, roundtrip_mackey, StalkPolicy};
use mackey_core::{BurnsideRing, MackeyFunctor};

fn burnside(c: &mut Criterion) {
    for g in ["s3", "d8", "a4"] {
        let lat = lattice(g);
        c.bench_function(&format!("table_of_marks/{g}"), |b| {
            b.iter(|| BurnsideRing::of_group(lat.clone()))
        });
        let ring = BurnsideRing::of_group(lat.clone());
        c.bench_function(&format!("idempotents/{g}"), |b| {
            b.iter(|| {
                ring.classes_over(lat.trivial())
                    .into_iter()
                    .map(|j| ring.idempotent_formula(lat.trivial(), j).unwrap())
                    .collect::<Vec<_>>()
            })
        });
    }
}

fn functors(c: &mut Criterion) {
    for spec in ["d8", "p-adic:2:3"] {
        let t = tower(spec);
        let m = MackeyFunctor::burnside(t.clone(), t.max_depth()).unwrap();
        c.bench_function(&format!("check_axioms/{spec}"), |b| {
            b.iter(|| check_axioms(&m))
        });
        c.bench_function(&format!("to_sheaf/{spec}"), |b| {
            b.iter(|| mackey_to_sheaf(&m, StalkPolicy::Terminal).unwrap())
        });
        c.bench_function(&format!("roundtrip/{spec}"), |b| {
            b.iter(|| roundtrip_mackey(&m, 0).unwrap())
        });
    }
}

criterion_group!(benches, burnside, functors);
criterion_main!(benches);
