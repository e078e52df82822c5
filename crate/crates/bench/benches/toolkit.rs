use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use sdof_core::*;

fn bench_extreme_points(c: &mut Criterion) {
    let mut group = c.benchmark_group("extreme_points");
    for k in [3usize, 4, 5] {
        let mac = mac_region(k).unwrap();
        group.bench_function(format!("mac_k{k}"), |b| {
            b.iter(|| extreme_points(black_box(&mac)).unwrap())
        });
        let ic = ic_region(k).unwrap();
        group.bench_function(format!("ic_k{k}"), |b| {
            b.iter(|| extreme_points(black_box(&ic)).unwrap())
        });
    }
    group.finish();
}

fn bench_leakage(c: &mut Criterion) {
    let mut group = c.benchmark_group("leakage_exact");
    group.bench_function("q64_pair", |b| {
        b.iter(|| leakage_exact(black_box(64), black_box(&[2, 2])).unwrap())
    });
    group.bench_function("q4096_triple", |b| {
        b.iter(|| leakage_exact(black_box(4096), black_box(&[3, 3, 3])).unwrap())
    });
    group.finish();
}

fn bench_min_distance(c: &mut Criterion) {
    let ch = sample_channel(ChannelKind::HelperWiretap { m: 2 }, 7).unwrap();
    let plan = build_helper_plan(&ch).unwrap();
    let dims = receiver_constellation(&plan, &ch, Receiver::Legitimate)
        .unwrap()
        .coeffs();
    c.bench_function("min_distance_oracle_l3_q8", |b| {
        b.iter(|| min_distance_oracle(black_box(&dims), black_box(8), black_box(1.0)).unwrap())
    });
}

fn bench_decode(c: &mut Criterion) {
    let ch = sample_channel(ChannelKind::HelperWiretap { m: 2 }, 7)
        .unwrap()
        .with_noise_var(1e-3)
        .unwrap();
    let plan = build_helper_plan(&ch).unwrap();
    let pam = pam_params(100.0, 3, 0.05, default_gamma(&plan)).unwrap();
    c.bench_function("transmit_and_decode_1k_trials", |b| {
        b.iter_batched(
            || SimConfig {
                plan: &plan,
                channel: &ch,
                pam,
                trials: 1000,
                seed: 3,
            },
            |cfg| transmit_and_decode(black_box(&cfg)).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(
    benches,
    bench_extreme_points,
    bench_leakage,
    bench_min_distance,
    bench_decode
);
criterion_main!(benches);
