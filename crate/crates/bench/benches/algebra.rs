//! Criterion benchmarks for the construction-heavy paths: building the
//! algebra, splitting it into blocks, and assembling the KLR generators.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use hecke_core::blockspectral::block_decomposition;
use hecke_core::exactfield::parse_field;
use hecke_core::heckecore::build_hecke;
use hecke_core::klriso::{klr_generators, poincare_polynomial, verify_klr_relations, QChoice};
use hecke_core::rootdata::{DominantWeight, Quiver};
use hecke_core::symbolic::{divided_difference, Series};

fn build_and_split(c: &mut Criterion) {
    c.bench_function("build_hecke FS_4", |b| {
        let f = parse_field("Q,q=1").unwrap();
        let w = DominantWeight::new(Quiver::new(0), &[0]);
        b.iter(|| black_box(build_hecke(&f, &w, 4).dim()));
    });
    c.bench_function("block_decomposition FS_4", |b| {
        let f = parse_field("Q,q=1").unwrap();
        let w = DominantWeight::new(Quiver::new(0), &[0]);
        let h = build_hecke(&f, &w, 4);
        b.iter(|| black_box(block_decomposition(&h).unwrap().len()));
    });
}

fn klr_paths(c: &mut Criterion) {
    let f = parse_field("Q,q=-1").unwrap();
    let w = DominantWeight::new(Quiver::new(2), &[0]);
    let h = build_hecke(&f, &w, 3);
    let blocks = block_decomposition(&h).unwrap();
    let big = blocks.values().max_by_key(|b| b.dim).unwrap();
    c.bench_function("klr_generators e=2 d=3", |b| {
        b.iter(|| black_box(klr_generators(big, QChoice::Paper).dim));
    });
    let a = klr_generators(big, QChoice::Paper);
    c.bench_function("verify_klr_relations e=2 d=3", |b| {
        b.iter(|| black_box(verify_klr_relations(&a).total_instances()));
    });
    c.bench_function("poincare e=2 d=3", |b| {
        b.iter(|| black_box(poincare_polynomial(&a).poincare.len()));
    });
}

fn series_ops(c: &mut Criterion) {
    let f = parse_field("Q,q=1").unwrap();
    c.bench_function("divided_difference deg 8", |b| {
        let y1 = Series::var(&f, 3, 8, 0);
        let y2 = Series::var(&f, 3, 8, 1);
        let mut s = Series::one(&f, 3, 8);
        for _ in 0..4 {
            s = s.mul(&y1.add(&y2));
        }
        b.iter(|| black_box(divided_difference(0, &s).degree()));
    });
}

criterion_group!(benches, build_and_split, klr_paths, series_ops);
criterion_main!(benches);
