#![cfg(feature = "oracle")]

use hotrad::oracle::{
    monte_carlo_coulomb_integral, oracle_acoustic_with, oracle_coulomb_with, oracle_hotfield, OracleOptions,
    OracleReport,
};
use hotrad::units::{kelvin_to_erg, HBAR};
use hotrad::{BraceMode, MaterialParams, MonoValleyModel, Process, ScreeningParams, UnitVec3, ValleySet, Vec3};

const OPTS: OracleOptions = OracleOptions {
    rel_tol: 1e-2,
    max_level: 2,
};

fn rotate(v: &UnitVec3) -> UnitVec3 {
    // Rodrigues rotation by 0.7 rad about (1, 2, 3)/√14
    let k = Vec3::new(1.0, 2.0, 3.0).normalized().unwrap().vec();
    let (s, c) = 0.7f64.sin_cos();
    let x = v.vec();
    let r = x * c + k.cross(&x) * s + k * (k.dot(&x) * (1.0 - c));
    UnitVec3::new(r, "rotated").unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

#[test]
fn acoustic_oracle_is_rotation_invariant() {
    let mat = MaterialParams::n_ge();
    let l = ValleySet::germanium().axes()[1];
    let g = UnitVec3::from_components(0.3, 1.0, -0.4).unwrap();
    let t = kelvin_to_erg(30.0);
    let omega = 0.5 * t / HBAR;
    let a = oracle_acoustic_with(&mat, &l, 1e14, t, omega, &g, Process::Absorption, &OPTS).unwrap();
    let b = oracle_acoustic_with(&mat, &rotate(&l), 1e14, t, omega, &rotate(&g), Process::Absorption, &OPTS).unwrap();
    assert!(close(a.closed_form, b.closed_form, 1e-12));
    assert!(close(a.brute_force, b.brute_force, 2e-3), "{a:?} {b:?}");
    assert!(a.agrees_within(OPTS.rel_tol) && b.agrees_within(OPTS.rel_tol));
}

#[test]
fn acoustic_oracle_detailed_balance() {
    let mat = MaterialParams::n_ge();
    let l = ValleySet::germanium().axes()[0];
    let g = UnitVec3::from_components(1.0, 0.0, 0.0).unwrap();
    let t = kelvin_to_erg(20.0);
    let omega = 1.0 * t / HBAR;
    let up = oracle_acoustic_with(&mat, &l, 1e14, t, omega, &g, Process::Absorption, &OPTS).unwrap();
    let down = oracle_acoustic_with(&mat, &l, 1e14, t, omega, &g, Process::Emission, &OPTS).unwrap();
    assert!(up.brute_force > 0.0 && down.brute_force < 0.0);
    let ratio = -down.brute_force / up.brute_force;
    assert!(close(ratio, (-1.0f64).exp(), 5e-3), "{ratio}");
}

#[test]
fn isotropic_band_has_no_polarization_dependence() {
    let mut mat = MaterialParams::n_ge();
    mat.m_par = 1.001 * mat.m_perp;
    let l = ValleySet::germanium().axes()[0];
    let perp = l.orthonormal_frame().0;
    let t = kelvin_to_erg(40.0);
    let omega = 0.4 * t / HBAR;
    let s = ScreeningParams::from_density(4e14, t, mat.chi0).unwrap();
    let par = oracle_coulomb_with(&mat, &l, 1e14, t, omega, &l, &s, BraceMode::Sum, Process::Absorption, &OPTS).unwrap();
    let per = oracle_coulomb_with(&mat, &l, 1e14, t, omega, &perp, &s, BraceMode::Sum, Process::Absorption, &OPTS).unwrap();
    assert!(close(par.closed_form, per.closed_form, 2e-3));
    assert!(close(par.brute_force, per.brute_force, 2e-3), "{par:?} {per:?}");
}

#[test]
fn monte_carlo_is_reproducible_per_seed() {
    let mat = MaterialParams::n_ge();
    let t = kelvin_to_erg(30.0);
    let s = ScreeningParams::from_density(1e15, t, mat.chi0).unwrap();
    let run = |seed| monte_carlo_coulomb_integral(&mat, t, 0.3 * t, 0.5, &s, BraceMode::Sum, 20_000, seed).unwrap();
    let a = run(11);
    assert_eq!(a, run(11));
    assert_ne!(a.brute_force, run(12).brute_force);
    assert!(a.relative_discrepancy < 5.0 * a.relative_error() + 1e-3, "{a:?}");
}

#[test]
fn hotfield_report_round_trips_through_json() {
    let mat = MaterialParams::n_ge();
    let model = MonoValleyModel::from_multivalley(&mat, 1.5e14, kelvin_to_erg(60.0), 3e-2, 0.4).unwrap();
    let r = oracle_hotfield(&model, kelvin_to_erg(10.0) / HBAR).unwrap();
    assert!(r.agrees_within(5e-3), "{r:?}");
    let back: OracleReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(r, back);
}
