use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tetramer::sweeps::{field_sweep, phase_diagram, threshold_curve, Range, TempPoint};
use tetramer::{Exec, PairLabel};

const STRATEGIES: [(&str, Exec); 2] = [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)];

fn phase(c: &mut Criterion) {
    let j1 = Range::new(0.0, 2.0, 41).unwrap();
    let h = Range::new(0.0, 4.0, 41).unwrap();
    let mut g = c.benchmark_group("phase_diagram_41x41");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| phase_diagram(&j1, &h, exec).unwrap()));
    }
    g.finish();
}

fn sweep(c: &mut Criterion) {
    let h = Range::new(0.0, 4.0, 101).unwrap();
    let temps = [TempPoint::Zero, TempPoint::Finite(0.1), TempPoint::Finite(0.5)];
    let mut g = c.benchmark_group("field_sweep_101x3");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| field_sweep(0.5, &temps, &h, &PairLabel::ALL, exec).unwrap())
        });
    }
    g.finish();
}

fn threshold(c: &mut Criterion) {
    let h = Range::new(0.0, 2.0, 16).unwrap();
    let mut g = c.benchmark_group("threshold_curve_16");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| threshold_curve(0.5, &h, PairLabel::Mu1S1, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, phase, sweep, threshold);
criterion_main!(benches);
