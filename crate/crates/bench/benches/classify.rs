use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fanoclass::classify::{classify_all, classify_for_ufp, count_all, ClassificationTask, Mode};
use fanoclass::normal_form::normal_form;
use fanoclass::ufp::{enumerate_ufps, UnitFractionPartition};
use fanoclass::IntMatrix;

fn ufps(c: &mut Criterion) {
    c.bench_function("enumerate_ufps g=12 n=4", |b| b.iter(|| enumerate_ufps(black_box(12), 4).unwrap()));
    c.bench_function("enumerate_ufps g=1 n=6", |b| b.iter(|| enumerate_ufps(black_box(1), 6).unwrap()));
}

fn normal_forms(c: &mut Criterion) {
    let p = IntMatrix::from_rows(&[vec![1, 1, 1, -11], vec![0, 4, 4, -8], vec![0, 0, 36, -36]]);
    c.bench_function("normal_form 3x4", |b| b.iter(|| normal_form(black_box(&p)).unwrap()));
    let p = IntMatrix::from_rows(&[vec![1, 1, 1, 1, -7], vec![0, 2, 2, 2, -6], vec![0, 0, 8, 0, -8], vec![0, 0, 0, 8, -8]]);
    c.bench_function("normal_form 4x5 symmetric", |b| b.iter(|| normal_form(black_box(&p)).unwrap()));
}

fn classification(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify");
    g.sample_size(10);
    g.bench_function("d=2 g=50", |b| b.iter(|| count_all(2, black_box(50), Mode::Fano).unwrap()));
    g.bench_function("d=3 g=2", |b| b.iter(|| classify_all(3, black_box(2), Mode::Fano).unwrap()));
    g.bench_function("d=4 g=1", |b| b.iter(|| count_all(4, black_box(1), Mode::Fano).unwrap()));
    let task = ClassificationTask::new(UnitFractionPartition::new(3, vec![12, 12, 12, 12]).unwrap(), Mode::Fano).unwrap();
    g.bench_function("single ufp (12,12,12,12) g=3", |b| b.iter(|| classify_for_ufp(black_box(&task)).unwrap()));
    g.finish();
}

criterion_group!(benches, ufps, normal_forms, classification);
criterion_main!(benches);
