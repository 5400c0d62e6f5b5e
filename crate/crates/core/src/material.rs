//! Material, valley and carrier data model plus the small geometric and
//! transport relations shared by every scattering channel.

use serde::Serialize;

use crate::error::{require_positive, Error, Result};
use crate::units::{E0, HBAR};
use crate::vector::{UnitVec3, Vec3};

/// Band, lattice and impurity parameters of a many-valley semiconductor.
///
/// All quantities are CGS-Gaussian; temperatures and deformation potentials
/// are energies in erg.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaterialParams {
    pub m_perp: f64,
    pub m_par: f64,
    pub sigma_d: f64,
    pub sigma_u: f64,
    pub rho: f64,
    pub s_par: f64,
    pub s_perp: f64,
    pub chi0: f64,
    pub t_lattice: f64,
    /// Transverse acoustic relaxation-time scale τ⊥⁽⁰⁾, s.
    pub tau_perp0: f64,
    /// Longitudinal acoustic relaxation-time scale τ∥⁽⁰⁾, s.
    pub tau_par0: f64,
    /// Ionized impurity concentration, cm⁻³.
    pub n_d: f64,
}

impl MaterialParams {
    pub fn validate(&self) -> Result<()> {
        require_positive("m_perp", self.m_perp)?;
        require_positive("m_par", self.m_par)?;
        if self.m_par <= self.m_perp {
            return Err(Error::arg(
                "m_par",
                format!("must exceed m_perp ({} <= {})", self.m_par, self.m_perp),
            ));
        }
        for (name, v) in [
            ("rho", self.rho),
            ("s_par", self.s_par),
            ("s_perp", self.s_perp),
            ("chi0", self.chi0),
            ("t_lattice", self.t_lattice),
            ("tau_perp0", self.tau_perp0),
            ("tau_par0", self.tau_par0),
        ] {
            require_positive(name, v)?;
        }
        if !(self.sigma_d.is_finite() && self.sigma_u.is_finite()) {
            return Err(Error::arg("sigma", "deformation potentials must be finite"));
        }
        if !(self.n_d.is_finite() && self.n_d >= 0.0) {
            return Err(Error::arg("n_d", format!("must be >= 0, got {}", self.n_d)));
        }
        Ok(())
    }

    /// The bundled n-Ge parameter set.
    pub fn n_ge() -> Self {
        crate::config::MaterialSpec::n_ge()
            .to_params()
            .expect("bundled preset is valid")
    }

    /// 1/(m⊥τ⊥⁽⁰⁾), 1/(m∥τ∥⁽⁰⁾): the two collision-rate weights that enter
    /// every acoustic formula.
    pub fn inverse_m_tau(&self) -> (f64, f64) {
        (
            1.0 / (self.m_perp * self.tau_perp0),
            1.0 / (self.m_par * self.tau_par0),
        )
    }

    /// Acoustic mobility components (μ∥, μ⊥) of cold electrons.
    pub fn acoustic_mobilities(&self) -> Result<(f64, f64)> {
        Ok((
            mobility_from_tau(self.m_par, self.tau_par0)?,
            mobility_from_tau(self.m_perp, self.tau_perp0)?,
        ))
    }

    /// Replaces the relaxation-time scales with the ones implied by cold
    /// mobilities μ∥, μ⊥ (cm²/(statV·s)).
    pub fn with_mobilities(mut self, mu_par: f64, mu_perp: f64) -> Result<Self> {
        self.tau_par0 = tau_from_mobility(self.m_par, mu_par)?;
        self.tau_perp0 = tau_from_mobility(self.m_perp, mu_perp)?;
        Ok(self)
    }

    /// Replaces the relaxation-time scales with the deformation-potential
    /// values at the current lattice temperature.
    pub fn with_deformation_relaxation_times(mut self) -> Result<Self> {
        let (tp, tl) = crate::acoustic::relaxation_times_acoustic(&self)?;
        self.tau_perp0 = tp;
        self.tau_par0 = tl;
        Ok(self)
    }
}

/// Tolerance on |l| − 1 for valley axes.
pub const AXIS_TOLERANCE: f64 = 1e-12;

/// Rotation axes l_k of the mass ellipsoids.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValleySet {
    axes: Vec<UnitVec3>,
}

impl ValleySet {
    pub fn new(axes: Vec<Vec3>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::arg("axes", "a valley set needs at least one axis"));
        }
        let axes = axes
            .into_iter()
            .map(|v| {
                let n = v.norm();
                if (n - 1.0).abs() > AXIS_TOLERANCE {
                    Err(Error::NotUnitVector { name: "valley axis", norm: n })
                } else {
                    UnitVec3::new(v, "valley axis")
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { axes })
    }

    /// The four ⟨111⟩ valleys of germanium, l₁ = (1,1,1)/√3 first.
    pub fn germanium() -> Self {
        let s = 1.0 / 3f64.sqrt();
        let axes = [
            (1.0, 1.0, 1.0),
            (-1.0, 1.0, 1.0),
            (1.0, -1.0, 1.0),
            (-1.0, -1.0, 1.0),
        ]
        .into_iter()
        .map(|(x, y, z)| Vec3::new(s * x, s * y, s * z))
        .collect();
        Self::new(axes).expect("germanium axes are unit vectors")
    }

    pub fn axes(&self) -> &[UnitVec3] {
        &self.axes
    }

    pub fn len(&self) -> usize {
        self.axes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axes.is_empty()
    }
}

/// Concentration (cm⁻³) and electron temperature (erg) of one valley.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub struct ValleyCarriers {
    pub n: f64,
    pub t: f64,
}

impl ValleyCarriers {
    pub fn new(n: f64, t: f64) -> Result<Self> {
        require_positive("n", n)?;
        require_positive("T_e", t)?;
        Ok(Self { n, t })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarrierState {
    valleys: Vec<ValleyCarriers>,
}

impl CarrierState {
    pub fn new(valleys: Vec<ValleyCarriers>) -> Result<Self> {
        if valleys.is_empty() {
            return Err(Error::arg("carriers", "no valleys given"));
        }
        for v in &valleys {
            ValleyCarriers::new(v.n, v.t)?;
        }
        Ok(Self { valleys })
    }

    /// Every valley holds `n` electrons at temperature `t`.
    pub fn uniform(count: usize, n: f64, t: f64) -> Result<Self> {
        Self::new(vec![ValleyCarriers::new(n, t)?; count])
    }

    /// Heating field along (1,1,1): valley 1 gets (n1, t1), the other three
    /// share (n2, t2).
    pub fn field_111(n1: f64, t1: f64, n2: f64, t2: f64) -> Result<Self> {
        let cold = ValleyCarriers::new(n1, t1)?;
        let hot = ValleyCarriers::new(n2, t2)?;
        Self::new(vec![cold, hot, hot, hot])
    }

    pub fn valleys(&self) -> &[ValleyCarriers] {
        &self.valleys
    }

    pub fn len(&self) -> usize {
        self.valleys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.valleys.is_empty()
    }

    pub fn total_concentration(&self) -> f64 {
        self.valleys.iter().map(|v| v.n).sum()
    }

    pub(crate) fn check_matches(&self, valleys: &ValleySet) -> Result<()> {
        if self.len() != valleys.len() {
            return Err(Error::arg(
                "carriers",
                format!("{} carrier entries for {} valleys", self.len(), valleys.len()),
            ));
        }
        Ok(())
    }
}

/// Photon frequency and polarization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiationQuery {
    pub omega: f64,
    pub g0: UnitVec3,
}

impl RadiationQuery {
    pub fn new(omega: f64, g0: UnitVec3) -> Result<Self> {
        require_positive("omega", omega)?;
        let n = g0.vec().norm();
        if (n - 1.0).abs() > AXIS_TOLERANCE {
            return Err(Error::NotUnitVector { name: "g0", norm: n });
        }
        Ok(Self { omega, g0 })
    }

    pub fn photon_energy(&self) -> f64 {
        HBAR * self.omega
    }

    /// a = ħω/(2T).
    pub fn a(&self, t: f64) -> f64 {
        0.5 * self.photon_energy() / t
    }

    pub fn with_polarization(&self, g0: UnitVec3) -> Self {
        Self { g0, ..*self }
    }
}

fn check_unit(v: &UnitVec3, name: &'static str) -> Result<()> {
    let n = v.vec().norm();
    if (n - 1.0).abs() > crate::vector::UNIT_TOLERANCE {
        return Err(Error::NotUnitVector { name, norm: n });
    }
    Ok(())
}

/// cos²φ = (l·g₀)².
pub fn cos2_angle(l: &UnitVec3, g0: &UnitVec3) -> Result<f64> {
    check_unit(l, "l")?;
    check_unit(g0, "g0")?;
    Ok(l.dot(g0).powi(2).min(1.0))
}

/// Power delivered by a static field F (statV/cm) to the electrons of one
/// valley, erg/(s·cm³).
pub fn joule_heating(n: f64, mu_par: f64, mu_perp: f64, l: &UnitVec3, f: &Vec3) -> Result<f64> {
    require_positive("mu_par", mu_par)?;
    require_positive("mu_perp", mu_perp)?;
    check_unit(l, "l")?;
    let proj = l.vec().dot(f);
    Ok(E0 * n * (mu_perp * f.norm2() + (mu_par - mu_perp) * proj * proj))
}

const MOBILITY_FACTOR: f64 = 0.752_252_778_063_675_1; // 4/(3√π)

/// Cold-electron acoustic mobility μ = (4/3√π)·e·τ⁽⁰⁾/m, cm²/(statV·s).
pub fn mobility_from_tau(m: f64, tau0: f64) -> Result<f64> {
    require_positive("m", m)?;
    require_positive("tau0", tau0)?;
    Ok(MOBILITY_FACTOR * E0 * tau0 / m)
}

pub fn tau_from_mobility(m: f64, mu: f64) -> Result<f64> {
    require_positive("m", m)?;
    require_positive("mu", mu)?;
    Ok(mu * m / (MOBILITY_FACTOR * E0))
}
