use criterion::{black_box, criterion_group, criterion_main, Criterion};
use parabolic::cone::{effective_cone, weak_fano_report};
use parabolic::quantum::quantum_product;
use parabolic::schubert::{lr_coefficient, lr_product};
use parabolic::walls::first_wall;
use parabolic::Partition;
use parabolic_bench::{hyperplane, scaling_path};

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn littlewood_richardson(c: &mut Criterion) {
    let (lambda, mu, nu) = (p(&[4, 3, 2, 1]), p(&[3, 2, 1]), p(&[6, 5, 3, 2]));
    c.bench_function("lr_coefficient 4321*321", |b| b.iter(|| lr_coefficient(black_box(&lambda), black_box(&mu), black_box(&nu))));
    c.bench_function("lr_product 321*321", |b| b.iter(|| lr_product(black_box(&mu), black_box(&mu), 6)));
}

fn quantum(c: &mut Criterion) {
    let h = hyperplane(3, 7);
    c.bench_function("sigma_1^12 on Gr(3,7)", |b| {
        b.iter(|| (0..11).fold(h.clone(), |acc, _| quantum_product(&acc, black_box(&h)).unwrap()))
    });
}

fn walls(c: &mut Criterion) {
    let mut g = c.benchmark_group("first_wall");
    g.sample_size(10);
    for &(r, n) in &[(2, 9), (3, 9), (4, 9)] {
        let path = scaling_path(r, n, (19, 10));
        g.bench_function(format!("r={r} n={n}"), |b| b.iter(|| first_wall(black_box(&path))));
    }
    g.finish();
}

// The invariant-one types and basis products are cached per process, so
// after the first iteration these measure the warm path.
fn cones(c: &mut Criterion) {
    let mut g = c.benchmark_group("cone");
    g.sample_size(10);
    g.bench_function("effective_cone r=3 n=7", |b| b.iter(|| effective_cone(3, 7, None).unwrap()));
    g.bench_function("weak_fano_report r=2 n=7", |b| b.iter(|| weak_fano_report(2, 7).unwrap()));
    g.finish();
}

criterion_group!(benches, littlewood_richardson, quantum, walls, cones);
criterion_main!(benches);
