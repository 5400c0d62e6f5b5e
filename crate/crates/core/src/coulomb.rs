//! Ionized-impurity (screened Coulomb) channel.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::acoustic::Process;
use crate::emission::{decompose_111_responses, AngularDecomposition, Emission, ValleyResponse};
use crate::error::{require_positive, Error, Result};
use crate::material::{cos2_angle, CarrierState, MaterialParams, RadiationQuery, ValleySet};
use crate::quad::{integrate_semi_infinite, QuadResult, Tolerance};
use crate::units::{C, E0, EULER_GAMMA, HBAR};
use crate::vector::UnitVec3;

/// ħω/T above which the classical impurity formulas are refused.
pub const CLASSICAL_LIMIT: f64 = 0.2;

/// Below this 1/b the arctangent forms of B₁, B₂ are replaced by their
/// power series.
const SERIES_SWITCH: f64 = 0.3;

/// How the two momentum-transfer roots enter the x-integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BraceMode {
    /// Ψ(q_max) + Ψ(q_min).
    #[default]
    Sum,
    /// Ψ(q_max) − Ψ(q_min).
    Difference,
}

/// Debye screening of the impurity potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScreeningParams {
    pub r_d: f64,
}

impl ScreeningParams {
    pub fn new(r_d: f64) -> Result<Self> {
        require_positive("r_d", r_d)?;
        Ok(Self { r_d })
    }

    /// Screening by `n_total` electrons at a common temperature.
    pub fn from_density(n_total: f64, t_e: f64, chi0: f64) -> Result<Self> {
        Self::new(debye_radius(n_total, t_e, chi0)?)
    }

    /// Screening by all valleys, each at its own temperature:
    /// r_D⁻² = Σ 4πe₀²nᵢ/(χ₀Tᵢ).
    pub fn from_carriers(carriers: &CarrierState, chi0: f64) -> Result<Self> {
        require_positive("chi0", chi0)?;
        let inv: f64 = carriers
            .valleys()
            .iter()
            .map(|v| 4.0 * PI * E0 * E0 * v.n / (chi0 * v.t))
            .sum();
        Self::new(1.0 / inv.sqrt())
    }

    /// Dimensionless cutoff x_min = ħ²/(8m⊥T r_D²) of the Coulomb logarithm.
    pub fn x_min(&self, m_perp: f64, t_e: f64) -> f64 {
        HBAR * HBAR / (8.0 * m_perp * t_e * self.r_d * self.r_d)
    }

    /// ln(C₁x_min)⁻¹ with ln C₁ = γ.
    pub fn coulomb_log(&self, m_perp: f64, t_e: f64) -> Result<f64> {
        let c1x = EULER_GAMMA.exp() * self.x_min(m_perp, t_e);
        if c1x >= 1.0 {
            return Err(Error::CoulombLogarithm { c1_xmin: c1x });
        }
        Ok(-c1x.ln())
    }
}

/// r_D = √(χ₀T/(4πe₀²n)), cm.
pub fn debye_radius(n_total: f64, t_e: f64, chi0: f64) -> Result<f64> {
    require_positive("n_total", n_total)?;
    require_positive("T_e", t_e)?;
    require_positive("chi0", chi0)?;
    Ok((chi0 * t_e / (4.0 * PI * E0 * E0 * n_total)).sqrt())
}

/// The angular functions B₁(b), B₂(b).
pub fn b1_b2(b: f64) -> Result<(f64, f64)> {
    if b.is_nan() || b <= 0.0 {
        return Err(Error::arg("b", format!("must be > 0, got {b}")));
    }
    Ok(b1_b2_unchecked(b))
}

fn b1_b2_unchecked(b: f64) -> (f64, f64) {
    if b.is_infinite() {
        return (0.0, 0.0);
    }
    let u = 1.0 / b;
    if u < SERIES_SWITCH {
        let u2 = u * u;
        let mut p = u2 * u2;
        let (mut b1, mut b2) = (0.0, 0.0);
        let mut sign = 1.0;
        for j in 1..40 {
            let jf = j as f64;
            let t1 = sign * 4.0 * jf / (4.0 * jf * jf - 1.0) * p;
            let t2 = sign * 2.0 * jf / (2.0 * jf + 1.0) * p;
            b1 += t1;
            b2 += t2;
            if t1.abs() < 1e-17 * b1.abs() {
                break;
            }
            p *= u2;
            sign = -sign;
        }
        (b1, b2)
    } else {
        let at = u.atan();
        let b2sq = b * b;
        let b1 = 1.0 / b2sq + (1.0 - b2sq) / (b2sq * b) * at;
        let b2 = -1.0 / (1.0 + b2sq) + at / b;
        (b1, b2)
    }
}

/// b² = m⊥/(m∥ − m⊥)·(1 + 1/(q r_D)²).
fn b_of_q(b0sq: f64, q: f64, r_d: f64) -> f64 {
    let qr = q * r_d;
    (b0sq * (1.0 + 1.0 / (qr * qr))).sqrt()
}

/// The two pieces of the x-integral: `b1` multiplies sin²φ and `b2`
/// (which already carries 2m⊥/m∥) multiplies cos²φ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoulombIntegral {
    pub b1: QuadResult,
    pub b2: QuadResult,
}

impl CoulombIntegral {
    /// ∫ e^{−x}{Ψ(q₊) ± Ψ(q₋)}/√(x(x+w)) dx for cos²φ = `cos2`.
    pub fn value(&self, cos2: f64) -> f64 {
        (1.0 - cos2) * self.b1.value + cos2 * self.b2.value
    }

    pub fn abs_error(&self, cos2: f64) -> f64 {
        (1.0 - cos2) * self.b1.abs_error + cos2 * self.b2.abs_error
    }
}

/// Integrand of the x-integral for one valley: the weight
/// e^{−x}/√(x(x+w)) and the brace {Ψ(q₊) ± Ψ(q₋)} split into its sin²φ and
/// cos²φ parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BraceIntegrand {
    /// ħω/T_e.
    pub w: f64,
    k: f64,
    b0sq: f64,
    mass_ratio: f64,
    sign: f64,
    r_d: f64,
}

impl BraceIntegrand {
    pub fn new(mat: &MaterialParams, t_e: f64, hw: f64, screening: &ScreeningParams, brace: BraceMode) -> Result<Self> {
        mat.validate()?;
        require_positive("T_e", t_e)?;
        require_positive("hbar*omega", hw)?;
        Ok(Self {
            w: hw / t_e,
            k: (2.0 * mat.m_perp * t_e).sqrt() / HBAR,
            b0sq: mat.m_perp / (mat.m_par - mat.m_perp),
            mass_ratio: 2.0 * mat.m_perp / mat.m_par,
            sign: match brace {
                BraceMode::Sum => 1.0,
                BraceMode::Difference => -1.0,
            },
            r_d: screening.r_d,
        })
    }

    pub fn weight(&self, x: f64) -> f64 {
        (-x).exp() / (x * (x + self.w)).sqrt()
    }

    /// (sin²φ part, cos²φ part) of the brace at `x`.
    pub fn terms(&self, x: f64) -> (f64, f64) {
        let sx = x.sqrt();
        let sw = (x + self.w).sqrt();
        let (p1, p2) = b1_b2_unchecked(b_of_q(self.b0sq, self.k * (sw + sx), self.r_d));
        // q₋ = k(√(x+w) − √x) written without cancellation
        let qm = self.k * self.w / (sw + sx);
        let (m1, m2) = b1_b2_unchecked(b_of_q(self.b0sq, qm, self.r_d));
        (p1 + self.sign * m1, self.mass_ratio * (p2 + self.sign * m2))
    }
}

/// Evaluates the x-integral for a valley at temperature `t_e` and photon
/// energy `hw`, both in erg.
pub fn coulomb_integral(
    mat: &MaterialParams,
    t_e: f64,
    hw: f64,
    screening: &ScreeningParams,
    brace: BraceMode,
    tol: Tolerance,
) -> Result<CoulombIntegral> {
    let kern = BraceIntegrand::new(mat, t_e, hw, screening, brace)?;
    let b1 = integrate_semi_infinite(|x| kern.weight(x) * kern.terms(x).0, tol)?;
    let b2 = integrate_semi_infinite(|x| kern.weight(x) * kern.terms(x).1, tol)?;
    Ok(CoulombIntegral { b1, b2 })
}

/// e₀⁶N_D n/(4χ₀²) · (2πm∥/T)^{1/2}/(m∥ − m⊥)²: the part of P(+) that does not
/// depend on the photon.
pub(crate) fn coulomb_strength(mat: &MaterialParams, n: f64, t_e: f64) -> f64 {
    E0.powi(6) * mat.n_d * n / (4.0 * mat.chi0 * mat.chi0) * (2.0 * PI * mat.m_par / t_e).sqrt()
        / (mat.m_par - mat.m_perp).powi(2)
}

/// P(±) for one valley with vector-potential amplitude `a0_amp`.
#[allow(clippy::too_many_arguments)]
pub fn coulomb_p(
    mat: &MaterialParams,
    valley: &UnitVec3,
    n: f64,
    t_e: f64,
    q: &RadiationQuery,
    screening: &ScreeningParams,
    a0_amp: f64,
    process: Process,
    brace: BraceMode,
) -> Result<f64> {
    require_positive("n", n)?;
    let c2 = cos2_angle(valley, &q.g0)?;
    let hw = q.photon_energy();
    let integral = coulomb_integral(mat, t_e, hw, screening, brace, Tolerance::relative(1e-8))?;
    let plus = coulomb_strength(mat, n, t_e) * a0_amp * a0_amp / (C * C * hw) * integral.value(c2);
    Ok(match process {
        Process::Absorption => plus,
        Process::Emission => -(-hw / t_e).exp() * plus,
    })
}

/// Spontaneous emission response of one valley from the full x-integral.
pub fn valley_response_coulomb(
    mat: &MaterialParams,
    n: f64,
    t_e: f64,
    omega: f64,
    screening: &ScreeningParams,
    brace: BraceMode,
) -> Result<ValleyResponse> {
    require_positive("n", n)?;
    require_positive("omega", omega)?;
    let hw = HBAR * omega;
    let integral = coulomb_integral(mat, t_e, hw, screening, brace, Tolerance::relative(1e-8))?;
    let pre = coulomb_strength(mat, n, t_e) * (-hw / t_e).exp() / (PI * PI * C.powi(3));
    Ok(ValleyResponse {
        perp: pre * integral.b1.value,
        par: pre * integral.b2.value,
    })
}

/// Spontaneous emission from impurity scattering, any ħω/T.
pub fn emission_coulomb(
    mat: &MaterialParams,
    valleys: &ValleySet,
    carriers: &CarrierState,
    q: &RadiationQuery,
    screening: &ScreeningParams,
    brace: BraceMode,
) -> Result<Emission> {
    carriers.check_matches(valleys)?;
    let responses = carriers
        .valleys()
        .iter()
        .map(|v| valley_response_coulomb(mat, v.n, v.t, q.omega, screening, brace))
        .collect::<Result<Vec<_>>>()?;
    Emission::from_responses(valleys, &responses, &q.g0)
}

/// Impurity relaxation-time components (τ⊥, τ∥) at electron temperature `t_e`.
pub fn relaxation_times_coulomb(mat: &MaterialParams, t_e: f64, screening: &ScreeningParams) -> Result<(f64, f64)> {
    mat.validate()?;
    require_positive("T_e", t_e)?;
    require_positive("n_d", mat.n_d)?;
    let log = screening.coulomb_log(mat.m_perp, t_e)?;
    let (bp, bl) = tau_brackets(b0(mat));
    let common = 8.0 / 3.0 * E0.powi(4) * (2.0 * mat.m_par).sqrt() / (mat.chi0 * mat.chi0 * t_e.powf(1.5)) * mat.n_d * log;
    let b = b0(mat);
    let rate_perp = common / mat.m_perp * 0.5 * b * bp;
    let rate_par = common / mat.m_par * b * bl;
    Ok((1.0 / rate_perp, 1.0 / rate_par))
}

fn b0(mat: &MaterialParams) -> f64 {
    (mat.m_perp / (mat.m_par - mat.m_perp)).sqrt()
}

/// [b₀ + (1 − b₀²)arctg(1/b₀)] and [−b₀ + (1 + b₀²)arctg(1/b₀)].
pub fn tau_brackets(b0: f64) -> (f64, f64) {
    let at = (1.0 / b0).atan();
    (b0 + (1.0 - b0 * b0) * at, -b0 + (1.0 + b0 * b0) * at)
}

fn require_classical(operation: &'static str, q: &RadiationQuery, carriers: &CarrierState) -> Result<()> {
    for v in carriers.valleys() {
        let ratio = q.photon_energy() / v.t;
        if ratio >= CLASSICAL_LIMIT {
            return Err(Error::QuantumRegime {
                operation,
                ratio,
                limit: CLASSICAL_LIMIT,
            });
        }
    }
    Ok(())
}

/// Classical free-carrier absorption coefficient for impurity scattering, cm⁻¹.
pub fn absorption_coefficient_coulomb(
    mat: &MaterialParams,
    valleys: &ValleySet,
    carriers: &CarrierState,
    q: &RadiationQuery,
    screening: &ScreeningParams,
) -> Result<f64> {
    carriers.check_matches(valleys)?;
    require_classical("absorption_coefficient_coulomb", q, carriers)?;
    let pre = 1.5 * PI.powf(1.5) * E0 * E0 / (mat.chi0.sqrt() * C * q.omega * q.omega);
    let mut sum = 0.0;
    for (l, v) in valleys.axes().iter().zip(carriers.valleys()) {
        let (tp, tl) = relaxation_times_coulomb(mat, v.t, screening)?;
        let c2 = cos2_angle(l, &q.g0)?;
        sum += v.n * ((1.0 - c2) / (mat.m_perp * tp) + c2 / (mat.m_par * tl));
    }
    Ok(pre * sum)
}

/// Classical emission response of one valley.
pub fn valley_response_coulomb_classical(
    mat: &MaterialParams,
    n: f64,
    t_e: f64,
    screening: &ScreeningParams,
) -> Result<ValleyResponse> {
    require_positive("n", n)?;
    let (tp, tl) = relaxation_times_coulomb(mat, t_e, screening)?;
    let pre = 3.0 * E0 * E0 / (16.0 * PI.powf(1.5) * C.powi(3)) * n * t_e;
    Ok(ValleyResponse {
        perp: pre / (mat.m_perp * tp),
        par: pre / (mat.m_par * tl),
    })
}

/// Classical spontaneous emission for impurity scattering.
pub fn emission_coulomb_classical(
    mat: &MaterialParams,
    valleys: &ValleySet,
    carriers: &CarrierState,
    q: &RadiationQuery,
    screening: &ScreeningParams,
) -> Result<Emission> {
    carriers.check_matches(valleys)?;
    require_classical("emission_coulomb_classical", q, carriers)?;
    let responses = carriers
        .valleys()
        .iter()
        .map(|v| valley_response_coulomb_classical(mat, v.n, v.t, screening))
        .collect::<Result<Vec<_>>>()?;
    Emission::from_responses(valleys, &responses, &q.g0)
}

/// Classical A₀ + A₂·cos 2φ₁ for a heating field along (1,1,1).
pub fn decompose_111_coulomb_classical(
    mat: &MaterialParams,
    n1: f64,
    t1: f64,
    n2: f64,
    t2: f64,
    screening: &ScreeningParams,
) -> Result<AngularDecomposition> {
    let r1 = valley_response_coulomb_classical(mat, n1, t1, screening)?;
    let r2 = valley_response_coulomb_classical(mat, n2, t2, screening)?;
    Ok(decompose_111_responses(r1, r2))
}
