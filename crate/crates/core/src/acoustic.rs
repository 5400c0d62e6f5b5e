//! Acoustic-phonon channel: scattering weight, energy exchange with the
//! wave, absorption coefficient and spontaneous emission.

use std::f64::consts::PI;

use serde::Serialize;

use crate::emission::{decompose_111_responses, AngularDecomposition, Emission, ValleyResponse};
use crate::error::{require_positive, Error, Result};
use crate::material::{cos2_angle, CarrierState, MaterialParams, RadiationQuery, ValleySet};
use crate::quad::GaussLegendre;
use crate::specfun::{absorption_kernel, emission_kernel};
use crate::units::{C, E0, HBAR};
use crate::vector::{UnitVec3, Vec3};

/// Absorption (+) or emission (−) of one photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Process {
    Absorption,
    Emission,
}

/// W_a as a function of cos²θ between the phonon wavevector and the valley axis.
pub fn acoustic_w_cos2(mat: &MaterialParams, c2: f64) -> f64 {
    let pre = mat.t_lattice / (4.0 * PI * PI * HBAR.powi(4) * mat.rho);
    let long = (mat.sigma_d + mat.sigma_u * c2).powi(2) / (mat.s_par * mat.s_par);
    let trans = mat.sigma_u * mat.sigma_u * (1.0 - c2) * c2 / (mat.s_perp * mat.s_perp);
    pre * (long + trans)
}

/// Acoustic scattering weight W_a(q) in the deformation-potential approximation.
pub fn acoustic_w(mat: &MaterialParams, qvec: &Vec3, l0: &UnitVec3) -> Result<f64> {
    let q = qvec.norm();
    if !q.is_finite() || q <= 0.0 {
        return Err(Error::arg("qvec", "phonon wavevector must be nonzero and finite"));
    }
    let c = (l0.vec().dot(qvec) / q).clamp(-1.0, 1.0);
    Ok(acoustic_w_cos2(mat, c * c))
}

/// τ⊥⁽⁰⁾, τ∥⁽⁰⁾ from the deformation potentials at the lattice temperature.
///
/// The momentum transfer is averaged over directions in the coordinates where
/// the ellipsoid becomes a sphere; ν is the cosine to the axis there.
pub fn relaxation_times_acoustic(mat: &MaterialParams) -> Result<(f64, f64)> {
    require_positive("m_perp", mat.m_perp)?;
    require_positive("m_par", mat.m_par)?;
    require_positive("t_lattice", mat.t_lattice)?;
    let gl = GaussLegendre::new(48);
    let (mut x_perp, mut x_par) = (0.0, 0.0);
    for (nu, w) in gl.mapped(0.0, 1.0) {
        let nu2 = nu * nu;
        let c2 = mat.m_par * nu2 / (mat.m_perp * (1.0 - nu2) + mat.m_par * nu2);
        let wa = acoustic_w_cos2(mat, c2);
        x_perp += w * 0.5 * wa * (1.0 - nu2);
        x_par += w * wa * nu2;
    }
    let pre = 12.0 * 2f64.sqrt() * PI * mat.m_perp * mat.m_par.sqrt() * mat.t_lattice.sqrt();
    let rate_perp = pre * x_perp;
    let rate_par = pre * x_par;
    if !(rate_perp > 0.0 && rate_par > 0.0) {
        return Err(Error::arg("sigma", "deformation potentials give no acoustic scattering"));
    }
    Ok((1.0 / rate_perp, 1.0 / rate_par))
}

fn check_valley_inputs(n: f64, t_e: f64) -> Result<()> {
    require_positive("n", n)?;
    require_positive("T_e", t_e)?;
    Ok(())
}

/// Energy per unit time and volume exchanged between the wave (vector
/// potential amplitude `a0_amp`) and one valley.
///
/// Absorption returns ΔP(+) > 0; emission returns ΔP(−) = −e^{−ħω/T_e}·ΔP(+).
pub fn delta_p_acoustic(
    mat: &MaterialParams,
    valley: &UnitVec3,
    n: f64,
    t_e: f64,
    q: &RadiationQuery,
    a0_amp: f64,
    process: Process,
) -> Result<f64> {
    check_valley_inputs(n, t_e)?;
    let c2 = cos2_angle(valley, &q.g0)?;
    let (inv_perp, inv_par) = mat.inverse_m_tau();
    let amp2 = a0_amp * a0_amp;
    let brace = amp2 * ((1.0 - c2) * inv_perp + c2 * inv_par);
    let hw = q.photon_energy();
    let pre = 2.0 * E0 * E0 / (3.0 * PI.sqrt()) * brace * n * t_e.powf(1.5)
        / (mat.t_lattice.sqrt() * C * C * hw);
    let a = q.a(t_e);
    Ok(match process {
        Process::Absorption => pre * absorption_kernel(a)?.abs(),
        Process::Emission => -pre * emission_kernel(a)?,
    })
}

/// Free-carrier absorption coefficient, cm⁻¹.
pub fn absorption_coefficient_acoustic(
    mat: &MaterialParams,
    valleys: &ValleySet,
    carriers: &CarrierState,
    q: &RadiationQuery,
) -> Result<f64> {
    carriers.check_matches(valleys)?;
    let mut net = 0.0;
    for (l, v) in valleys.axes().iter().zip(carriers.valleys()) {
        let p = delta_p_acoustic(mat, l, v.n, v.t, q, 1.0, Process::Absorption)?;
        net += -(-2.0 * q.a(v.t)).exp_m1() * p;
    }
    Ok(net / flux_per_unit_amplitude(mat, q.omega))
}

/// Electromagnetic flux Π for unit vector-potential amplitude.
pub(crate) fn flux_per_unit_amplitude(mat: &MaterialParams, omega: f64) -> f64 {
    mat.chi0.sqrt() * omega * omega / (8.0 * PI * C)
}

/// Converts ΔP(−) per unit squared amplitude into power per unit solid angle
/// for one photon mode (vector potential normalized to a single photon and
/// multiplied by the photon state density).
pub(crate) fn spontaneous_factor(omega: f64) -> f64 {
    HBAR * omega / (PI * PI * C)
}

/// 2e₀²/(3π^{5/2}c³T^{1/2}): common prefactor of the emission formulas.
pub(crate) fn emission_prefactor(mat: &MaterialParams) -> f64 {
    2.0 * E0 * E0 / (3.0 * PI.powf(2.5) * C.powi(3) * mat.t_lattice.sqrt())
}

/// Response (g₀ ⊥ l, g₀ ∥ l) of one valley, erg/(s·cm³·sr).
pub fn valley_response_acoustic(mat: &MaterialParams, n: f64, t_e: f64, omega: f64) -> Result<ValleyResponse> {
    check_valley_inputs(n, t_e)?;
    require_positive("omega", omega)?;
    let a = 0.5 * HBAR * omega / t_e;
    let s = emission_prefactor(mat) * n * t_e.powf(1.5) * emission_kernel(a)?;
    let (inv_perp, inv_par) = mat.inverse_m_tau();
    Ok(ValleyResponse {
        perp: s * inv_perp,
        par: s * inv_par,
    })
}

/// Spontaneous emission per unit volume, time and solid angle.
pub fn emission_acoustic(
    mat: &MaterialParams,
    valleys: &ValleySet,
    carriers: &CarrierState,
    q: &RadiationQuery,
) -> Result<Emission> {
    carriers.check_matches(valleys)?;
    let responses = carriers
        .valleys()
        .iter()
        .map(|v| valley_response_acoustic(mat, v.n, v.t, q.omega))
        .collect::<Result<Vec<_>>>()?;
    Emission::from_responses(valleys, &responses, &q.g0)
}

/// Same quantity obtained literally from ΔP(−), the single-photon amplitude
/// and the photon state density; used to cross-check the assembled formula.
pub fn emission_from_delta_p(mat: &MaterialParams, valley: &UnitVec3, n: f64, t_e: f64, q: &RadiationQuery) -> Result<f64> {
    let a2 = 8.0 * PI * HBAR * C * C / q.omega;
    let dp = delta_p_acoustic(mat, valley, n, t_e, q, a2.sqrt(), Process::Emission)?;
    Ok(-dp / a2 * spontaneous_factor(q.omega))
}

/// Classical-limit (ħω ≪ Tᵢ) emission, summed over valleys.
pub fn emission_classical_reference(
    mat: &MaterialParams,
    valleys: &ValleySet,
    carriers: &CarrierState,
    q: &RadiationQuery,
) -> Result<Vec<f64>> {
    per_valley_reference(mat, valleys, carriers, q, |_, v| {
        2.0 * emission_prefactor(mat) * v.n * v.t.powf(1.5)
    })
}

/// Quantum-limit (ħω ≫ Tᵢ) emission per valley.
pub fn emission_quantum_reference(
    mat: &MaterialParams,
    valleys: &ValleySet,
    carriers: &CarrierState,
    q: &RadiationQuery,
) -> Result<Vec<f64>> {
    let hw = q.photon_energy();
    let pre = E0 * E0 * hw.powf(1.5) / (6.0 * PI * PI * C.powi(3) * mat.t_lattice.sqrt());
    per_valley_reference(mat, valleys, carriers, q, |_, v| pre * v.n * (-hw / v.t).exp())
}

fn per_valley_reference<F>(
    mat: &MaterialParams,
    valleys: &ValleySet,
    carriers: &CarrierState,
    q: &RadiationQuery,
    weight: F,
) -> Result<Vec<f64>>
where
    F: Fn(usize, &crate::material::ValleyCarriers) -> f64,
{
    carriers.check_matches(valleys)?;
    let (inv_perp, inv_par) = mat.inverse_m_tau();
    valleys
        .axes()
        .iter()
        .zip(carriers.valleys())
        .enumerate()
        .map(|(i, (l, v))| {
            let c2 = cos2_angle(l, &q.g0)?;
            Ok(weight(i, v) * ((1.0 - c2) * inv_perp + c2 * inv_par))
        })
        .collect()
}

/// Total emission when all four germanium valleys share (n_e, T_e); the
/// result does not depend on polarization.
pub fn emission_symmetric(mat: &MaterialParams, n_e: f64, t_e: f64, omega: f64) -> Result<f64> {
    check_valley_inputs(n_e, t_e)?;
    require_positive("omega", omega)?;
    let a = 0.5 * HBAR * omega / t_e;
    let (inv_perp, inv_par) = mat.inverse_m_tau();
    Ok(emission_prefactor(mat) * (4.0 / 3.0) * n_e * t_e.powf(1.5) * (2.0 * inv_perp + inv_par) * emission_kernel(a)?)
}

/// A₀ + A₂·cos 2φ₁ for a heating field along (1,1,1): valley 1 holds
/// (n1, t1), valleys 2–4 hold (n2, t2).
pub fn decompose_111(
    mat: &MaterialParams,
    n1: f64,
    t1: f64,
    n2: f64,
    t2: f64,
    q: &RadiationQuery,
) -> Result<AngularDecomposition> {
    let r1 = valley_response_acoustic(mat, n1, t1, q.omega)?;
    let r2 = valley_response_acoustic(mat, n2, t2, q.omega)?;
    Ok(decompose_111_responses(r1, r2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::{kelvin_to_erg, M_E};
    use approx::assert_relative_eq;

    fn query(a: f64, t: f64, g0: UnitVec3) -> RadiationQuery {
        RadiationQuery::new(2.0 * a * t / HBAR, g0).unwrap()
    }

    #[test]
    fn w_is_even_and_reduces() {
        let mat = MaterialParams::n_ge();
        let l = ValleySet::germanium().axes()[1];
        let q = Vec3::new(0.3, -1.2, 2.0);
        assert_eq!(acoustic_w(&mat, &q, &l).unwrap(), acoustic_w(&mat, &(-q), &l).unwrap());
        assert!(acoustic_w(&mat, &Vec3::default(), &l).is_err());
        let mut iso = mat;
        iso.sigma_u = 0.0;
        let expect = mat.t_lattice * mat.sigma_d.powi(2) / (4.0 * PI * PI * HBAR.powi(4) * mat.rho * mat.s_par.powi(2));
        assert_relative_eq!(acoustic_w(&iso, &q, &l).unwrap(), expect, max_relative = 1e-14);
        // along the axis only the longitudinal branch remains
        let along = acoustic_w(&mat, &l.vec(), &l).unwrap();
        let pre = mat.t_lattice / (4.0 * PI * PI * HBAR.powi(4) * mat.rho);
        assert_relative_eq!(along, pre * (mat.sigma_d + mat.sigma_u).powi(2) / mat.s_par.powi(2), max_relative = 1e-14);
    }

    #[test]
    fn isotropic_relaxation_time() {
        let mut mat = MaterialParams::n_ge();
        mat.sigma_u = 0.0;
        mat.m_par = mat.m_perp * (1.0 + 1e-9);
        let (tp, tl) = relaxation_times_acoustic(&mat).unwrap();
        let m = mat.m_perp;
        let rate = 2f64.sqrt() * m.powf(1.5) * mat.t_lattice.powf(1.5) * mat.sigma_d.powi(2)
            / (PI * HBAR.powi(4) * mat.rho * mat.s_par.powi(2));
        assert_relative_eq!(1.0 / tp, rate, max_relative = 1e-8);
        assert_relative_eq!(1.0 / tl, rate, max_relative = 1e-8);
    }

    #[test]
    fn germanium_relaxation_times_are_ordered() {
        let mat = MaterialParams::n_ge();
        assert!(mat.m_perp * mat.tau_perp0 < mat.m_par * mat.tau_par0);
    }

    #[test]
    fn detailed_balance_ln2() {
        let mat = MaterialParams::n_ge();
        let t = kelvin_to_erg(20.0);
        let q = RadiationQuery::new(2f64.ln() * t / HBAR, UnitVec3::Z).unwrap();
        let l = ValleySet::germanium().axes()[0];
        let plus = delta_p_acoustic(&mat, &l, 1e15, t, &q, 1.0, Process::Absorption).unwrap();
        let minus = delta_p_acoustic(&mat, &l, 1e15, t, &q, 1.0, Process::Emission).unwrap();
        assert_relative_eq!(minus / plus, -0.5, max_relative = 1e-13);
    }

    #[test]
    fn perpendicular_polarization_uses_only_tau_perp() {
        let mat = MaterialParams::n_ge();
        let t = kelvin_to_erg(20.0);
        let q = query(1.0, t, UnitVec3::X);
        let l = UnitVec3::Z;
        let mut changed = mat;
        changed.tau_par0 *= 7.0;
        let p1 = delta_p_acoustic(&mat, &l, 1e15, t, &q, 1.0, Process::Absorption).unwrap();
        let p2 = delta_p_acoustic(&changed, &l, 1e15, t, &q, 1.0, Process::Absorption).unwrap();
        assert_eq!(p1, p2);
        assert_eq!(delta_p_acoustic(&mat, &l, 1e15, t, &q, 0.0, Process::Absorption).unwrap(), 0.0);
    }

    #[test]
    fn emission_matches_literal_normalization() {
        let mat = MaterialParams::n_ge();
        let valleys = ValleySet::germanium();
        let t = kelvin_to_erg(30.0);
        let g0 = UnitVec3::from_components(0.2, 0.5, 0.9).unwrap();
        let q = query(0.7, t, g0);
        let carriers = CarrierState::uniform(4, 1e15, t).unwrap();
        let e = emission_acoustic(&mat, &valleys, &carriers, &q).unwrap();
        for (i, w) in &e.per_valley {
            let lit = emission_from_delta_p(&mat, &valleys.axes()[*i], 1e15, t, &q).unwrap();
            assert_relative_eq!(*w, lit, max_relative = 1e-12);
        }
    }

    #[test]
    fn symmetric_total_and_isotropy() {
        let mat = MaterialParams::n_ge();
        let valleys = ValleySet::germanium();
        let t = kelvin_to_erg(25.0);
        let carriers = CarrierState::uniform(4, 5e14, t).unwrap();
        let sym = emission_symmetric(&mat, 5e14, t, 2.0 * t / HBAR).unwrap();
        for k in 0..12 {
            let th = 0.5 * k as f64;
            let g0 = UnitVec3::from_components(th.cos() * 0.6, th.sin(), 0.3 * th.cos()).unwrap();
            let q = query(1.0, t, g0);
            let e = emission_acoustic(&mat, &valleys, &carriers, &q).unwrap();
            assert_relative_eq!(e.total, sym, max_relative = 1e-12);
        }
    }

    #[test]
    fn absorption_coefficient_properties() {
        let mat = MaterialParams::n_ge();
        let valleys = ValleySet::germanium();
        let t = kelvin_to_erg(25.0);
        let q = query(0.8, t, UnitVec3::from_components(0.1, 0.7, 0.2).unwrap());
        let c1 = CarrierState::uniform(4, 1e14, t).unwrap();
        let c2 = CarrierState::uniform(4, 3e14, t).unwrap();
        let k1 = absorption_coefficient_acoustic(&mat, &valleys, &c1, &q).unwrap();
        let k2 = absorption_coefficient_acoustic(&mat, &valleys, &c2, &q).unwrap();
        assert!(k1 > 0.0);
        assert_relative_eq!(k2, 3.0 * k1, max_relative = 1e-13);
        let k3 = absorption_coefficient_acoustic(&mat, &valleys, &c1, &q.with_polarization(UnitVec3::X)).unwrap();
        assert_relative_eq!(k3, k1, max_relative = 1e-12);
    }

    #[test]
    fn decomposition_sign_follows_population_factor() {
        let mat = MaterialParams::n_ge();
        let t1 = kelvin_to_erg(20.0);
        let q = query(0.5, t1, UnitVec3::Z);
        let up = decompose_111(&mat, 1e15, t1, 1e15, 2.0 * t1, &q).unwrap();
        assert!(up.a2 > 0.0);
        assert!(up.a2.abs() <= up.a0);
        // equal n T^{3/2} only cancels exactly in the classical limit
        let qc = query(1e-9, t1, UnitVec3::Z);
        let n2 = 1e15 / 2f64.powf(1.5);
        let flat = decompose_111(&mat, 1e15, t1, n2, 2.0 * t1, &qc).unwrap();
        assert!(flat.a2.abs() < 1e-6 * flat.a0);
        let down = decompose_111(&mat, 4e15, t1, 1e15, 2.0 * t1, &q).unwrap();
        assert!(down.a2 < 0.0);
    }

    #[test]
    fn classical_reference_limit() {
        let mat = MaterialParams::n_ge();
        let valleys = ValleySet::germanium();
        let t = kelvin_to_erg(15.0);
        let carriers = CarrierState::uniform(4, 1e15, t).unwrap();
        let q = query(1e-6, t, UnitVec3::from_components(0.0, 0.3, 1.0).unwrap());
        let e = emission_acoustic(&mat, &valleys, &carriers, &q).unwrap();
        let cl = emission_classical_reference(&mat, &valleys, &carriers, &q).unwrap();
        for (i, w) in e.per_valley {
            assert_relative_eq!(w, cl[i], max_relative = 1e-5);
        }
        let _ = M_E;
    }
}
