use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use ringlab_bench::{elem, finite, index, ring, z8_matrix};
use ringlab_core::expr::ring_from_str;
use ringlab_core::{all_ideals, is_valuation_ring, minimal_free_resolution, warfield_decompose, FiniteModule, Ring};

fn construction(c: &mut Criterion) {
    for expr in ["Z/64", "F64", "F2[x,y]/(x^2,x*y,y^2) x Z/3", "triv(Z/4, Z/4)"] {
        let desc = ring_from_str(expr).unwrap();
        c.bench_function(&format!("build {expr}"), |b| b.iter(|| Ring::new(black_box(&desc)).unwrap()));
    }
}

fn lattices(c: &mut Criterion) {
    let z64 = finite("Z/64");
    c.bench_function("all ideals Z/64", |b| b.iter(|| all_ideals(black_box(&z64), 64).unwrap()));
    let t = finite("triv(Z/4, Z/4)");
    c.bench_function("valuation check triv(Z/4, Z/4)", |b| b.iter(|| is_valuation_ring(black_box(&t), 64)));
}

fn modules(c: &mut Criterion) {
    let z8 = finite("Z/8");
    let m = z8_matrix(&z8);
    c.bench_function("warfield 3x3 over Z/8", |b| b.iter(|| warfield_decompose(&z8, black_box(&m), 3).unwrap()));

    let r = ring("Z/8");
    let module = FiniteModule::new(z8.clone(), 1, vec![vec![index(&r, "2")]]).unwrap();
    c.bench_function("resolve Z/8/(2), 8 steps", |b| b.iter(|| minimal_free_resolution(black_box(&module), 8).unwrap()));
}

fn dvr(c: &mut Criterion) {
    let r = ring("triv(Zloc(2), Frac)");
    let t = r.dvr_triv().unwrap();
    let (x, y) = (elem(&r, "(12/7, 3/5)"), elem(&r, "(48/35, 1/9)"));
    c.bench_function("divides in triv(Zloc(2), Frac)", |b| b.iter(|| t.divides(black_box(&x), black_box(&y))));
}

criterion_group!(benches, construction, lattices, modules, dvr);
criterion_main!(benches);
