use criterion::{black_box, criterion_group, criterion_main, Criterion};

use hotrad::acoustic::emission_acoustic;
use hotrad::config::SweepConfig;
use hotrad::coulomb::{coulomb_integral, valley_response_coulomb};
use hotrad::oracle::{oracle_acoustic_with, OracleOptions};
use hotrad::quad::Tolerance;
use hotrad::specfun::{absorption_kernel, bessel_k01_scaled, emission_kernel};
use hotrad::sweep::run_sweep;
use hotrad::units::{kelvin_to_erg, HBAR};
use hotrad::{BraceMode, CarrierState, MaterialParams, Process, RadiationQuery, ScreeningParams, UnitVec3, ValleySet};

fn special_functions(c: &mut Criterion) {
    let xs: Vec<f64> = (1..=64).map(|k| 0.05 * k as f64).collect();
    c.bench_function("bessel_k01_scaled x64", |b| {
        b.iter(|| xs.iter().map(|&x| bessel_k01_scaled(black_box(x)).unwrap().0).sum::<f64>())
    });
    c.bench_function("emission+absorption kernels x64", |b| {
        b.iter(|| {
            xs.iter()
                .map(|&a| emission_kernel(black_box(a)).unwrap() + absorption_kernel(black_box(a)).unwrap())
                .sum::<f64>()
        })
    });
}

fn closed_forms(c: &mut Criterion) {
    let mat = MaterialParams::n_ge();
    let valleys = ValleySet::germanium();
    let t1 = kelvin_to_erg(20.0);
    let carriers = CarrierState::field_111(6.25e14, t1, 6.25e14, 2.0 * t1).unwrap();
    let screening = ScreeningParams::from_carriers(&carriers, mat.chi0).unwrap();
    let g = UnitVec3::from_components(1.0, 0.0, 0.0).unwrap();
    let omega = 0.05 * t1 / HBAR;
    let q = RadiationQuery::new(omega, g).unwrap();

    c.bench_function("emission_acoustic 4 valleys", |b| {
        b.iter(|| emission_acoustic(&mat, &valleys, &carriers, black_box(&q)).unwrap().total)
    });
    c.bench_function("coulomb_integral", |b| {
        b.iter(|| coulomb_integral(&mat, t1, black_box(HBAR * omega), &screening, BraceMode::Sum, Tolerance::relative(1e-8)).unwrap())
    });
    c.bench_function("valley_response_coulomb", |b| {
        b.iter(|| valley_response_coulomb(&mat, 6.25e14, t1, black_box(omega), &screening, BraceMode::Sum).unwrap())
    });
}

fn sweep(c: &mut Criterion) {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/field111-mechanisms.json");
    let cfg = SweepConfig::from_path(std::path::Path::new(path)).unwrap();
    c.bench_function("run_sweep field111", |b| b.iter(|| run_sweep(black_box(&cfg), None).unwrap().rows.len()));
}

fn oracle(c: &mut Criterion) {
    let mat = MaterialParams::n_ge();
    let l = ValleySet::germanium().axes()[0];
    let g = UnitVec3::from_components(0.2, -0.5, 1.0).unwrap();
    let t = kelvin_to_erg(20.0);
    let opts = OracleOptions {
        rel_tol: 1.0,
        max_level: 1,
    };
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    group.bench_function("acoustic level 1", |b| {
        b.iter(|| oracle_acoustic_with(&mat, &l, 1e14, t, black_box(t / HBAR), &g, Process::Absorption, &opts).unwrap())
    });
    group.finish();
}

criterion_group!(benches, special_functions, closed_forms, sweep, oracle);
criterion_main!(benches);
