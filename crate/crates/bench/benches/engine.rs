use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use zpk_core::catalog::{builtin_catalog, iso_check, verify_bounds};
use zpk_core::{materialize, parse_expr, zp_bruteforce, zp_exact, TableRing};

fn ring(text: &str) -> TableRing {
    materialize(&parse_expr(text).unwrap()).unwrap()
}

fn engine(c: &mut Criterion) {
    let mut g = c.benchmark_group("zp");
    for text in ["Z8", "Z4 x Z4", "GF(2^5)", "Z2 x Z2 x Z2 x Z2 x Z2 x Z2"] {
        let r = ring(text);
        g.bench_with_input(BenchmarkId::new("dp_k4", text), &r, |b, r| b.iter(|| zp_exact(black_box(r), 4)));
        g.bench_with_input(BenchmarkId::new("dp_k12", text), &r, |b, r| {
            b.iter(|| zp_exact(black_box(r), 12))
        });
    }
    for text in ["Z8", "Z4 x Z4"] {
        let r = ring(text);
        g.bench_with_input(BenchmarkId::new("bruteforce_k4", text), &r, |b, r| {
            b.iter(|| zp_bruteforce(black_box(r), 4))
        });
    }
    g.finish();
}

fn structure(c: &mut Criterion) {
    let (a, b) = (ring("Z4 x Z2 x Z2"), ring("Z2 x Z2 x Z4"));
    c.bench_function("iso_check/order16", |bch| bch.iter(|| iso_check(black_box(&a), black_box(&b))));
    let expr = parse_expr("GF(2^3) x Zq(2,x^3)").unwrap();
    c.bench_function("materialize/order64", |bch| bch.iter(|| materialize(black_box(&expr))));
    let r = ring("Z4 x Zq(2,x^2) x Z2");
    c.bench_function("verify_bounds/order32_k6", |bch| bch.iter(|| verify_bounds(black_box(&r), 6)));
    c.bench_function("builtin_catalog/64", |bch| bch.iter(|| builtin_catalog(black_box(64))));
}

criterion_group!(benches, engine, structure);
criterion_main!(benches);
