use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use jumpdet::asymptotics::thm1_ratio;
use jumpdet::confluent::{monodromy_residual, HypParams, Relation};
use jumpdet::moments::JumpWeight;
use jumpdet::orthopoly::{op_data_for, selberg_det};
use jumpdet::parallel::{par_map, seq_map};
use jumpdet::{Complex, CoveringPoint, PrecisionContext};

/// `|exact ratio / prediction - 1|` at one degree.
fn thm1_error(n: &usize) -> f64 {
    let c = PrecisionContext::for_degree(*n);
    let b = c.complex(0.0, 0.3);
    let w = JumpWeight::scaled(b.clone(), c.float(0.3), *n).unwrap();
    let d = op_data_for(&c, &w, *n).unwrap();
    let exact = d.det(*n).scale(&selberg_det(c.bits(), *n).recip());
    let p = thm1_ratio(*n, &b, &c.float(0.3)).unwrap().value;
    (&(&exact / &p) - &Complex::one(c.bits())).abs().to_f64()
}

fn relation_residual(k: &usize) -> f64 {
    let c = PrecisionContext::with_bits(256).unwrap();
    let rel = Relation::ALL[k % Relation::ALL.len()];
    let a = c.complex(0.1 + 0.05 * (*k % 7) as f64, -0.2 + 0.03 * (*k % 5) as f64);
    let z = CoveringPoint::from_polar_f64(&c, 0.5 + (*k % 8) as f64, -2.5 + 0.4 * *k as f64 % 5.0).unwrap();
    monodromy_residual(rel, &HypParams::log_case(a), &z).unwrap().to_f64()
}

fn sweeps(c: &mut Criterion) {
    let degrees: Vec<usize> = (8..=32).step_by(4).collect();
    let mut g = c.benchmark_group("thm1_sweep");
    g.sample_size(10);
    g.bench_function(BenchmarkId::new("sequential", degrees.len()), |b| b.iter(|| seq_map(&degrees, thm1_error)));
    g.bench_function(BenchmarkId::new("parallel", degrees.len()), |b| b.iter(|| par_map(&degrees, thm1_error)));
    g.finish();

    let samples: Vec<usize> = (0..44).collect();
    let mut g = c.benchmark_group("relation_samples");
    g.sample_size(10);
    g.bench_function(BenchmarkId::new("sequential", samples.len()), |b| b.iter(|| seq_map(&samples, relation_residual)));
    g.bench_function(BenchmarkId::new("parallel", samples.len()), |b| b.iter(|| par_map(&samples, relation_residual)));
    g.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
