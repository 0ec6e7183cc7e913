use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hydrobound::oracle::{solve_radial_bvp, RadialGrid};
use hydrobound::{CoatedSphere, Loading, Phase};
use hydrobound_bench::reference_composite;

fn analytic(c: &mut Criterion) {
    let sphere = CoatedSphere::new(&reference_composite(), Phase::One);
    let loading = Loading::new(0.5, 1.0);
    c.bench_function("analytic_local_field", |b| {
        b.iter(|| sphere.local_field_constants(black_box(&loading)).unwrap())
    });
}

fn radial(c: &mut Criterion) {
    let sphere = CoatedSphere::new(&reference_composite(), Phase::Two);
    let loading = Loading::new(0.5, 1.0);
    for n in [256, 4096] {
        let grid = RadialGrid::uniform(n, sphere.core_radius()).unwrap();
        c.bench_function(&format!("radial_solve_n{n}"), |b| {
            b.iter(|| solve_radial_bvp(&sphere, black_box(&loading), &grid).unwrap())
        });
    }
}

criterion_group!(benches, analytic, radial);
criterion_main!(benches);
