use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use mmimo_core::beamform::{antenna_select_exact, dft_codebook, hybrid_combiner, zf};
use mmimo_core::campaign::{run_drop, Preset, ScenarioConfig};
use mmimo_core::channel::correlation_matrix;
use mmimo_core::randcore::{cholesky_psd, derive_stream};
use mmimo_core::CMatrix;

fn channel(n: usize, k: usize, seed: u64) -> CMatrix {
    let mut rng = derive_stream(seed, 0);
    CMatrix::from_fn(n, k, |_, _| rng.complex_normal())
}

fn cholesky(c: &mut Criterion) {
    let mut g = c.benchmark_group("cholesky");
    for n in [64, 128, 256] {
        let r = correlation_matrix(n, 0.5, 0.3).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &r, |b, r| b.iter(|| cholesky_psd(black_box(r)).unwrap()));
    }
    g.finish();
}

fn combiners(c: &mut Criterion) {
    let mut g = c.benchmark_group("combiner");
    let h = channel(128, 16, 1);
    g.bench_function("zf_128x16", |b| b.iter(|| zf(black_box(&h), 0.0).unwrap()));
    let f = dft_codebook(128).unwrap();
    g.bench_function("hybrid_128x16_rf32", |b| b.iter(|| hybrid_combiner(black_box(&h), &f, 32, 0.0).unwrap()));
    g.finish();
}

fn knapsack(c: &mut Criterion) {
    let mut g = c.benchmark_group("antenna_select");
    let mut rng = derive_stream(2, 0);
    let u: Vec<f64> = (0..128).map(|_| rng.uniform(0.0, 10.0)).collect();
    let equal = vec![0.4; 128];
    g.bench_function("uniform_128", |b| b.iter(|| antenna_select_exact(black_box(&u), &equal, 38.4).unwrap()));
    let u20 = &u[..20];
    let p20: Vec<f64> = (0..20).map(|_| rng.uniform(0.2, 0.6)).collect();
    let budget = 0.6 * p20.iter().sum::<f64>();
    g.bench_function("weighted_20", |b| b.iter(|| antenna_select_exact(black_box(u20), &p20, budget).unwrap()));
    g.finish();
}

fn drops(c: &mut Criterion) {
    let mut g = c.benchmark_group("run_drop");
    g.sample_size(10);
    for p in Preset::ALL {
        let cfg = ScenarioConfig::preset(p);
        g.bench_function(p.name(), |b| b.iter(|| run_drop(black_box(&cfg), 0).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, cholesky, combiners, knapsack, drops);
criterion_main!(benches);
