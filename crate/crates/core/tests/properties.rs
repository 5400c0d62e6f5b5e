use hotrad::acoustic::{delta_p_acoustic, emission_acoustic};
use hotrad::coulomb::{coulomb_p, emission_coulomb};
use hotrad::emission::decompose_in_plane;
use hotrad::specfun::{absorption_kernel, emission_kernel};
use hotrad::units::{kelvin_to_erg, HBAR};
use hotrad::{
    BraceMode, CarrierState, MaterialParams, Process, RadiationQuery, ScreeningParams, UnitVec3, ValleySet, Vec3,
};
use proptest::prelude::*;

fn unit(x: f64, y: f64, z: f64) -> UnitVec3 {
    Vec3::new(x, y, z).normalized().unwrap()
}

fn direction() -> impl Strategy<Value = UnitVec3> {
    (-1.0f64..1.0, 0.0f64..std::f64::consts::TAU).prop_map(|(c, p)| {
        let s = (1.0 - c * c).sqrt();
        unit(s * p.cos(), s * p.sin(), c)
    })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn acoustic_detailed_balance(t_k in 5.0f64..200.0, ratio in 0.01f64..10.0, g in direction()) {
        let mat = MaterialParams::n_ge();
        let t = kelvin_to_erg(t_k);
        let q = RadiationQuery::new(ratio * t / HBAR, g).unwrap();
        let l = ValleySet::germanium().axes()[1];
        let up = delta_p_acoustic(&mat, &l, 1e14, t, &q, 1.0, Process::Absorption).unwrap();
        let down = delta_p_acoustic(&mat, &l, 1e14, t, &q, 1.0, Process::Emission).unwrap();
        prop_assert!(up > 0.0);
        prop_assert!(close(-down / up, (-ratio).exp(), 1e-12));
    }

    #[test]
    fn coulomb_detailed_balance(t_k in 20.0f64..100.0, ratio in 0.02f64..1.0, g in direction()) {
        let mat = MaterialParams::n_ge();
        let t = kelvin_to_erg(t_k);
        let q = RadiationQuery::new(ratio * t / HBAR, g).unwrap();
        let s = ScreeningParams::from_density(1e15, t, mat.chi0).unwrap();
        let l = ValleySet::germanium().axes()[2];
        let up = coulomb_p(&mat, &l, 2.5e14, t, &q, &s, 1.0, Process::Absorption, BraceMode::Sum).unwrap();
        let down = coulomb_p(&mat, &l, 2.5e14, t, &q, &s, 1.0, Process::Emission, BraceMode::Sum).unwrap();
        prop_assert!(up > 0.0);
        prop_assert!(close(-down / up, (-ratio).exp(), 1e-12));
    }

    #[test]
    fn uniform_valleys_radiate_isotropically(t_k in 5.0f64..200.0, g in direction(), h in direction()) {
        let mat = MaterialParams::n_ge();
        let valleys = ValleySet::germanium();
        let carriers = CarrierState::uniform(4, 1e14, kelvin_to_erg(t_k)).unwrap();
        let omega = 0.2 * kelvin_to_erg(t_k) / HBAR;
        let a = emission_acoustic(&mat, &valleys, &carriers, &RadiationQuery::new(omega, g).unwrap()).unwrap();
        let b = emission_acoustic(&mat, &valleys, &carriers, &RadiationQuery::new(omega, h).unwrap()).unwrap();
        prop_assert!(close(a.total, b.total, 1e-12));
    }

    #[test]
    fn reversed_polarization_is_equivalent(t1 in 10.0f64..60.0, t2 in 10.0f64..120.0, g in direction()) {
        let mat = MaterialParams::n_ge();
        let valleys = ValleySet::germanium();
        let carriers = CarrierState::field_111(3e14, kelvin_to_erg(t1), 3e14, kelvin_to_erg(t2)).unwrap();
        let s = ScreeningParams::from_carriers(&carriers, mat.chi0).unwrap();
        let omega = 0.05 * kelvin_to_erg(t1) / HBAR;
        let neg = UnitVec3::new(-g.vec(), "g0").unwrap();
        let q = RadiationQuery::new(omega, g).unwrap();
        let a = emission_coulomb(&mat, &valleys, &carriers, &q, &s, BraceMode::Sum).unwrap();
        let b = emission_coulomb(&mat, &valleys, &carriers, &q.with_polarization(neg), &s, BraceMode::Sum).unwrap();
        prop_assert!(a.total > 0.0);
        prop_assert!(close(a.total, b.total, 1e-12));
    }

    #[test]
    fn decomposition_reproduces_direct_sum(
        t1 in 10.0f64..60.0,
        t2 in 10.0f64..120.0,
        e1 in direction(),
        phi in 0.0f64..std::f64::consts::TAU,
    ) {
        let mat = MaterialParams::n_ge();
        let valleys = ValleySet::germanium();
        let carriers = CarrierState::field_111(2e14, kelvin_to_erg(t1), 5e14, kelvin_to_erg(t2)).unwrap();
        let omega = 0.1 * kelvin_to_erg(t1) / HBAR;
        let e2 = e1.orthonormal_frame().0;
        let g = UnitVec3::new(e1.vec() * phi.cos() + e2.vec() * phi.sin(), "g0").unwrap();
        let em = emission_acoustic(&mat, &valleys, &carriers, &RadiationQuery::new(omega, g).unwrap()).unwrap();
        let responses: Vec<_> = carriers
            .valleys()
            .iter()
            .map(|v| hotrad::acoustic::valley_response_acoustic(&mat, v.n, v.t, omega).unwrap())
            .collect();
        let d = decompose_in_plane(&valleys, &responses, &e1, &e2).unwrap();
        prop_assert!(close(d.at(phi), em.total, 1e-12));
        prop_assert!(close(d.at(phi), d.at(phi + std::f64::consts::PI), 1e-12));
    }

    #[test]
    fn kernels_are_positive(a in 1e-3f64..40.0) {
        prop_assert!(emission_kernel(a).unwrap() > 0.0);
        prop_assert!(absorption_kernel(a).unwrap().is_finite());
    }
}
