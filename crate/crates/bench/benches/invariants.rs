use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use realbott::census;
use realbott::cohomology;

fn bench_census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for n in [6usize, 7] {
        group.bench_function(format!("n{n}_single"), |b| {
            b.iter(|| census::census(black_box(n), 1).unwrap())
        });
    }
    group.bench_function("n8_workers4", |b| {
        b.iter(|| census::census(black_box(8), 4).unwrap())
    });
    group.finish();
}

fn bench_cohomology(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let matrices: Vec<_> = (0..32)
        .map(|_| census::random_orientable(10, &mut rng))
        .collect();
    c.bench_function("w2_reduced_n10", |b| {
        b.iter(|| {
            for m in &matrices {
                black_box(cohomology::w2_reduced(m));
            }
        })
    });
    c.bench_function("spinc_linear_n10", |b| {
        b.iter(|| {
            for m in &matrices {
                black_box(cohomology::has_spinc_linear(m).unwrap());
            }
        })
    });
    c.bench_function("beta2_kernel_dim_n10", |b| {
        b.iter(|| {
            for m in &matrices {
                black_box(cohomology::beta2_kernel_dim(m));
            }
        })
    });
}

criterion_group!(benches, bench_census, bench_cohomology);
criterion_main!(benches);
