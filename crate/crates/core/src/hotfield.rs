//! Mono-valley model with the second Legendre harmonic of the distribution
//! retained: polarization dependence of the emission for a heating field
//! along a symmetric crystal direction.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::acoustic::emission_symmetric;
use crate::error::{require_positive, Error, Result};
use crate::material::MaterialParams;
use crate::specfun::{a_exp_k1, bessel_k01_scaled, emission_kernel, p2};
use crate::units::{C, E0, HBAR};

/// Which closed form multiplies P₂(cos θ₀).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BracketForm {
    /// a e^{−a}[(2a + 5)K₁(a) + 2aK₀(a)], obtained by integrating the f₂
    /// harmonic against the single-photon transition rate; tends to 5.
    #[default]
    Derived,
    /// E(a) + ½(1 + 4a)·a e^{−a}K₁(a); tends to 5/2.
    Printed,
}

/// Isotropic parabolic band, 1/τ(ε) = (1/τ⁽⁰⁾)(ε/T)^{1/2}, heated by a
/// field of magnitude `field` at angle `theta0` to the polarization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonoValleyModel {
    pub m: f64,
    pub tau0: f64,
    /// Field magnitude, statV/cm.
    pub field: f64,
    pub theta0: f64,
    /// Concentration, cm⁻³.
    pub n: f64,
    pub t_e: f64,
    pub t_lattice: f64,
}

impl MonoValleyModel {
    pub fn new(m: f64, tau0: f64, field: f64, theta0: f64, n: f64, t_e: f64, t_lattice: f64) -> Result<Self> {
        require_positive("m", m)?;
        require_positive("tau0", tau0)?;
        require_positive("n", n)?;
        require_positive("T_e", t_e)?;
        require_positive("t_lattice", t_lattice)?;
        if !(field.is_finite() && field >= 0.0) {
            return Err(Error::arg("field", format!("must be >= 0, got {field}")));
        }
        if !theta0.is_finite() {
            return Err(Error::arg("theta0", "must be finite"));
        }
        Ok(Self {
            m,
            tau0,
            field,
            theta0,
            n,
            t_e,
            t_lattice,
        })
    }

    /// Isotropic stand-in for a many-valley material with equal valleys:
    /// conductivity mass and 1/(mτ⁽⁰⁾) = ⅓(2/(m⊥τ⊥⁽⁰⁾) + 1/(m∥τ∥⁽⁰⁾)).
    pub fn from_multivalley(mat: &MaterialParams, n_total: f64, t_e: f64, field: f64, theta0: f64) -> Result<Self> {
        let m = 3.0 / (2.0 / mat.m_perp + 1.0 / mat.m_par);
        let (ip, il) = mat.inverse_m_tau();
        let inv_m_tau = (2.0 * ip + il) / 3.0;
        Self::new(m, 1.0 / (m * inv_m_tau), field, theta0, n_total, t_e, mat.t_lattice)
    }

    /// (e₀Fτ⁽⁰⁾)²T/(m T_e²).
    fn drift_ratio(&self) -> f64 {
        (E0 * self.field * self.tau0).powi(2) * self.t_lattice / (self.m * self.t_e * self.t_e)
    }

    /// β = (e₀Fτ⁽⁰⁾)²T/(6mT_e²).
    pub fn beta(&self) -> f64 {
        self.drift_ratio() / 6.0
    }

    pub fn tau(&self, epsilon: f64) -> f64 {
        self.tau0 * (self.t_lattice / epsilon).sqrt()
    }

    /// Maxwellian normalized to `n` electrons per cm³.
    pub fn f0(&self, epsilon: f64) -> f64 {
        self.n / (2.0 * PI * self.m * self.t_e).powf(1.5) * (-epsilon / self.t_e).exp()
    }

    /// Amplitude of the P₁ harmonic, −e₀Fτ df₀/dp.
    pub fn f1_correction(&self, epsilon: f64) -> Result<f64> {
        require_positive("epsilon", epsilon)?;
        let p = (2.0 * self.m * epsilon).sqrt();
        Ok(E0 * self.field * self.tau(epsilon) * p / (self.m * self.t_e) * self.f0(epsilon))
    }

    /// Amplitude of the P₂ harmonic, ⅔(e₀F)²τ p d/dp(τ/p · df₀/dp).
    pub fn f2_correction(&self, epsilon: f64) -> Result<f64> {
        require_positive("epsilon", epsilon)?;
        Ok(2.0 / 3.0 * self.drift_ratio() * (2.0 + self.t_e / epsilon) * self.f0(epsilon))
    }

    /// Constant scattering weight W_a consistent with τ(ε): 1/τ(p) = 4πm p W_a.
    pub fn scattering_weight(&self) -> f64 {
        let p_t = (2.0 * self.m * self.t_lattice).sqrt();
        1.0 / (4.0 * PI * self.m * p_t * self.tau0)
    }
}

/// Emission split into its isotropic part and the coefficient of
/// P₂(cos θ₀), erg/(s·cm³·sr).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistortedEmission {
    pub isotropic: f64,
    pub p2_coefficient: f64,
    pub total: f64,
    pub beta: f64,
}

impl DistortedEmission {
    pub fn at(&self, theta0: f64) -> f64 {
        self.isotropic + self.p2_coefficient * p2(theta0.cos())
    }
}

/// a e^{−a}[(2a+5)K₁ + 2aK₀].
pub fn derived_bracket(a: f64) -> Result<f64> {
    let (k0, k1) = bessel_k01_scaled(a)?;
    Ok(a * (-2.0 * a).exp() * ((2.0 * a + 5.0) * k1 + 2.0 * a * k0))
}

/// E(a) + ½(1 + 4a)·a e^{−a}K₁(a).
pub fn printed_bracket(a: f64) -> Result<f64> {
    Ok(emission_kernel(a)? + printed_second_term(a)?)
}

/// ½(1 + 4a)·a e^{−a}K₁(a), which tends to ½.
pub fn printed_second_term(a: f64) -> Result<f64> {
    Ok(0.5 * (1.0 + 4.0 * a) * a_exp_k1(a)?)
}

pub fn bracket(form: BracketForm, a: f64) -> Result<f64> {
    match form {
        BracketForm::Derived => derived_bracket(a),
        BracketForm::Printed => printed_bracket(a),
    }
}

/// Emission with the field distortion of the distribution, default bracket.
pub fn emission_distorted(model: &MonoValleyModel, omega: f64) -> Result<DistortedEmission> {
    emission_distorted_with(model, omega, BracketForm::default())
}

pub fn emission_distorted_with(model: &MonoValleyModel, omega: f64, form: BracketForm) -> Result<DistortedEmission> {
    require_positive("omega", omega)?;
    let beta = model.beta();
    if beta >= 1.0 {
        return Err(Error::DistortionTooLarge { beta });
    }
    let a = 0.5 * HBAR * omega / model.t_e;
    let pre = 2.0 * E0 * E0 * model.n * model.t_e.powf(1.5)
        / (3.0 * PI.powf(2.5) * C.powi(3) * model.t_lattice.sqrt() * model.m * model.tau0);
    let isotropic = pre * emission_kernel(a)?;
    let p2_coefficient = pre * 0.8 * beta * bracket(form, a)?;
    Ok(DistortedEmission {
        isotropic,
        p2_coefficient,
        total: isotropic + p2_coefficient * p2(model.theta0.cos()),
        beta,
    })
}

/// |isotropic mono-valley emission − four-valley emission| / value for a
/// field along (1,0,0), with the isotropic model built by the
/// 1/(mτ⁽⁰⁾) substitution scaled by `perturbation` (1 for the exact one).
pub fn isotropic_substitution_discrepancy(
    mat: &MaterialParams,
    n_total: f64,
    t_e: f64,
    omega: f64,
    perturbation: f64,
) -> Result<f64> {
    let mut model = MonoValleyModel::from_multivalley(mat, n_total, t_e, 0.0, 0.0)?;
    model.tau0 /= perturbation;
    let mono = emission_distorted(&model, omega)?.isotropic;
    let multi = emission_symmetric(mat, 0.25 * n_total, t_e, omega)?;
    Ok((mono - multi).abs() / multi.abs())
}

/// Discrepancy for the exact substitution.
pub fn isotropic_substitution_check(mat: &MaterialParams, n_total: f64, t_e: f64, omega: f64) -> Result<f64> {
    isotropic_substitution_discrepancy(mat, n_total, t_e, omega, 1.0)
}
