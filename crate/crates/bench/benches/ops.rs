use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tvspace::enumerate::all_structures;
use tvspace::generation::{c_generated_structure, cmap_space};
use tvspace::random::{random_relation, random_space};
use tvspace::space::{exponential, is_exponentiable, sierpinski};
use tvspace::{Budget, Carrier, Monad, ProbeClass, Quantale};

fn closure(c: &mut Criterion) {
    let mut g = c.benchmark_group("closure");
    let q = Quantale::cost_plus();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [4, 8, 16] {
        let r = random_relation(&mut rng, n, &q, 0.3);
        g.bench_with_input(BenchmarkId::new("floyd-warshall", n), &r, |b, r| {
            b.iter(|| r.reflexive_transitive_closure())
        });
        g.bench_with_input(BenchmarkId::new("naive", n), &r, |b, r| b.iter(|| r.reflexive_transitive_closure_naive()));
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let q = Quantale::chain(3).unwrap();
    c.bench_function("all structures chain3 on 3 points", |b| {
        b.iter(|| all_structures(black_box(&Carrier::range(3)), Monad::Identity, &q, &Budget::default()))
    });
}

fn exponentials(c: &mut Criterion) {
    let q = Quantale::chain(3).unwrap();
    let s = sierpinski(&q, Monad::Identity, None).unwrap();
    c.bench_function("exponential S^S chain3", |b| b.iter(|| exponential(black_box(&s), &s)));
    c.bench_function("exponentiable S chain3", |b| b.iter(|| is_exponentiable(black_box(&s))));
    let class = ProbeClass::sierpinski(&q, Monad::Identity, None).unwrap();
    c.bench_function("cmap S S chain3", |b| b.iter(|| cmap_space(black_box(&s), &s, &class)));
}

fn coreflection(c: &mut Criterion) {
    let q = Quantale::lukasiewicz_grid(4).unwrap();
    let class = ProbeClass::compact_hausdorff_upto(Monad::Identity, &q, 2, &Budget::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let x = random_space(&mut rng, 4, Monad::Identity, &q, 0.3).unwrap();
    c.bench_function("coreflect luk4 4 points", |b| b.iter(|| c_generated_structure(black_box(&x), &class)));
}

criterion_group!(benches, closure, enumeration, exponentials, coreflection);
criterion_main!(benches);
