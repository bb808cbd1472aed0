use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use periodforge::exec::{self, Mode};
use periodforge::identity_suite::{sample_frames, verify_discriminant_eta_with, verify_eta_quotients_with};
use periodforge::inversion::invert;
use periodforge::CurveType;

fn modes() -> [(&'static str, Mode); 2] {
    [("parallel", Mode::Parallel), ("sequential", Mode::Sequential)]
}

fn identity_suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("identities");
    group.sample_size(10);
    for n in [16usize, 64] {
        let frames = sample_frames(n, 1);
        for (name, mode) in modes() {
            group.bench_with_input(BenchmarkId::new(name, n), &frames, |b, f| {
                b.iter(|| {
                    let q = verify_eta_quotients_with(black_box(f), 1e-8, mode);
                    let d = verify_discriminant_eta_with(CurveType::G2, black_box(f), 1e-8, mode);
                    black_box((q.pass, d.pass))
                })
            });
        }
    }
    group.finish();
}

fn inversion_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("invert");
    let frames = sample_frames(256, 2);
    for (name, mode) in modes() {
        group.bench_function(name, |b| {
            b.iter(|| exec::map(mode, black_box(&frames), |w| invert(CurveType::B2, w).map(|r| r.g.g_s)))
        });
    }
    group.finish();
}

criterion_group!(benches, identity_suites, inversion_grid);
criterion_main!(benches);
