use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stratakit_core::fixtures;
use stratakit_core::fmod::{minimal_resolution, simples, FModule};
use stratakit_core::linalg::{Field, Matrix};
use stratakit_core::random;
use stratakit_core::strata::{find_stratifications, recollement_condition_check};

fn rank(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, f) in [("Q", Field::RATIONALS), ("F101", Field::prime(101).unwrap())] {
        let rows: Vec<_> = (0..40).map(|_| (0..40).map(|_| f.from_i64(rng.gen_range(-9..10))).collect()).collect();
        let m = Matrix::from_rows(f, 40, rows);
        c.bench_function(&format!("rank 40x40 {name}"), |b| b.iter(|| black_box(&m).rank()));
    }
}

fn resolutions(c: &mut Criterion) {
    let f2 = Field::prime(2).unwrap();
    let a = Arc::new(fixtures::ei_char2().algebra(f2).unwrap());
    let s = simples(&a).unwrap();
    c.bench_function("resolve simples ei-char2", |b| {
        b.iter(|| s.iter().map(|m| minimal_resolution(m, 20, 0).unwrap().terms.len()).sum::<usize>())
    });
    let pa = fixtures::five_vertex(Field::RATIONALS).unwrap().build().unwrap();
    let s = simples(pa.algebra()).unwrap();
    c.bench_function("resolve simples five-vertex", |b| {
        b.iter(|| s.iter().map(|m| minimal_resolution(m, 20, 0).unwrap().terms.len()).sum::<usize>())
    });
    let regular = FModule::regular(pa.algebra());
    c.bench_function("resolve regular five-vertex", |b| b.iter(|| minimal_resolution(&regular, 4, 0).unwrap()));
}

fn stratifications(c: &mut Criterion) {
    let pa = fixtures::five_vertex(Field::RATIONALS).unwrap().build().unwrap();
    let a = pa.algebra().clone();
    c.bench_function("find_stratifications five-vertex", |b| b.iter(|| find_stratifications(&a).unwrap().len()));
    let e = a.vertex_sum(&[0, 1, 2, 3]);
    c.bench_function("recollement check five-vertex", |b| b.iter(|| recollement_condition_check(&a, &e, 6).unwrap()));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let stratified: Vec<_> = std::iter::from_fn(|| random::random_stratified_algebra(&mut rng, Field::RATIONALS, 20).unwrap())
        .take(8)
        .map(|p| p.algebra().clone())
        .collect();
    c.bench_function("find_stratifications random x8", |b| {
        b.iter(|| stratified.iter().map(|a| find_stratifications(a).unwrap().len()).sum::<usize>())
    });
}

criterion_group!(benches, rank, resolutions, stratifications);
criterion_main!(benches);
