use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use plancherel::asymptotics::{airy_kernel, extended_airy_kernel, extended_sine_kernel};
use plancherel::dynamics::{sample_m_theta, simulate, InitialCondition};
use plancherel::kernels::{extended_kernel_contour, extended_kernel_series, ContourSpec, DiscreteBesselKernel};
use plancherel::rng::{stream_rng, StreamId};
use plancherel::rsk::{PoissonRealization, RskMode};
use plancherel::special::BesselTable;
use plancherel::{AdmissibleCurve, HalfInt};

fn bessel(c: &mut Criterion) {
    let mut g = c.benchmark_group("bessel_table");
    for theta in [1.0f64, 100.0, 400.0] {
        g.bench_with_input(BenchmarkId::from_parameter(theta), &theta, |b, &th| {
            b.iter(|| BesselTable::covering(black_box(2.0 * th.sqrt())))
        });
    }
    g.finish();
}

fn kernels(c: &mut Criterion) {
    let x = HalfInt::new(1);
    let y = HalfInt::new(-2);
    let k = DiscreteBesselKernel::new(4.0).unwrap();
    c.bench_function("discrete_ratio", |b| b.iter(|| k.ratio(black_box(x), black_box(y))));
    c.bench_function("discrete_series", |b| b.iter(|| k.series(black_box(x), black_box(y))));
    c.bench_function("extended_series", |b| {
        b.iter(|| extended_kernel_series(1.0, 1.0, black_box(0.5), 0.0, x, y).unwrap())
    });
    c.bench_function("extended_contour", |b| {
        b.iter(|| extended_kernel_contour(1.0, 1.0, black_box(0.5), 0.0, x, y, ContourSpec::default_for(0.5, 0.0)).unwrap())
    });
}

fn limits(c: &mut Criterion) {
    c.bench_function("airy_kernel", |b| b.iter(|| airy_kernel(black_box(-1.0), black_box(0.5))));
    c.bench_function("extended_airy_positive", |b| {
        b.iter(|| extended_airy_kernel(black_box(0.5), -1.0, 0.5).unwrap())
    });
    c.bench_function("extended_sine", |b| b.iter(|| extended_sine_kernel(0.0, black_box(0.5), 2).unwrap()));
}

fn processes(c: &mut Criterion) {
    c.bench_function("sample_m_theta/100", |b| {
        let mut rng = stream_rng(1, 0);
        b.iter(|| sample_m_theta(black_box(100.0), &mut rng).unwrap())
    });
    let curve = AdmissibleCurve::hyperbola(25.0).unwrap();
    c.bench_function("simulate/theta25_unit_time", |b| {
        let mut rng = stream_rng(2, 0);
        b.iter(|| simulate(&curve, 0.0, 1.0, &InitialCondition::DrawFromMTheta, &mut rng).unwrap())
    });
    let mut g = c.benchmark_group("rsk_shape_process");
    for mode in [RskMode::Incremental, RskMode::FromScratch] {
        g.bench_function(format!("{mode:?}"), |b| {
            let mut i = 0;
            b.iter(|| {
                i += 1;
                PoissonRealization::new(StreamId::new(3, i))
                    .shape_process(&curve, 0.0, 1.0, mode)
                    .unwrap()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, bessel, kernels, limits, processes);
criterion_main!(benches);
