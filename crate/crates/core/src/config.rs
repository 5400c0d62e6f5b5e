//! JSON configuration: material description in laboratory units and the
//! sweep scenarios run by [`crate::sweep`].
//!
//! Masses are in free-electron masses, temperatures in K, energies in eV or
//! meV, concentrations in cm⁻³ and fields in V/cm. Everything is converted to
//! CGS-Gaussian units on the way in.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::coulomb::BraceMode;
use crate::error::{Error, Result};
use crate::hotfield::BracketForm;
use crate::material::MaterialParams;
use crate::units::{ev_to_erg, kelvin_to_erg, mobility_practical_to_cgs, M_E};

pub const SCHEMA_VERSION: u32 = 1;

const N_GE_PRESET: &str = include_str!("../presets/n-Ge.json");

/// Where τ⊥⁽⁰⁾ and τ∥⁽⁰⁾ come from.
#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TauSource {
    /// Computed from the deformation potentials at the lattice temperature.
    DeformationPotentials,
    Explicit { tau_perp_s: f64, tau_par_s: f64 },
    /// Cold-electron acoustic mobilities, cm²/(V·s).
    Mobility {
        mu_par_cm2_per_Vs: f64,
        mu_perp_cm2_per_Vs: f64,
    },
}

/// Material in laboratory units. With `preset` set, every omitted field is
/// taken from the named preset.
#[allow(non_snake_case)]
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    pub m_perp_m0: Option<f64>,
    pub m_par_m0: Option<f64>,
    pub sigma_d_eV: Option<f64>,
    pub sigma_u_eV: Option<f64>,
    pub density_g_per_cm3: Option<f64>,
    pub sound_speed_longitudinal_cm_per_s: Option<f64>,
    pub sound_speed_transverse_cm_per_s: Option<f64>,
    pub dielectric_constant: Option<f64>,
    pub lattice_temperature_K: Option<f64>,
    pub impurity_concentration_cm3: Option<f64>,
    pub relaxation_times: Option<TauSource>,
}

macro_rules! merge_fields {
    ($dst:ident, $src:ident; $($f:ident),*) => {
        $( if $dst.$f.is_none() { $dst.$f = $src.$f.clone(); } )*
    };
}

impl MaterialSpec {
    pub fn n_ge() -> Self {
        serde_json::from_str(N_GE_PRESET).expect("bundled preset parses")
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "n-Ge" => Ok(Self::n_ge()),
            other => Err(Error::Config {
                path: "material.preset".into(),
                message: format!("unknown preset `{other}` (available: n-Ge)"),
            }),
        }
    }

    /// Fills omitted fields from the preset, if one is named.
    pub fn resolved(&self) -> Result<Self> {
        let mut out = self.clone();
        if let Some(p) = &self.preset {
            let base = Self::preset(p)?;
            merge_fields!(out, base; name, provenance, m_perp_m0, m_par_m0, sigma_d_eV, sigma_u_eV,
                density_g_per_cm3, sound_speed_longitudinal_cm_per_s, sound_speed_transverse_cm_per_s,
                dielectric_constant, lattice_temperature_K, impurity_concentration_cm3, relaxation_times);
            out.preset = None;
        }
        Ok(out)
    }

    pub fn to_params(&self) -> Result<MaterialParams> {
        let s = self.resolved()?;
        let t = req(s.lattice_temperature_K, "lattice_temperature_K")?;
        s.build(t)
    }

    /// Parameters at a lattice temperature (K) other than the configured one.
    pub fn to_params_at(&self, lattice_temperature_k: f64) -> Result<MaterialParams> {
        self.resolved()?.build(lattice_temperature_k)
    }

    fn build(&self, t_lattice_k: f64) -> Result<MaterialParams> {
        let mut mat = MaterialParams {
            m_perp: req(self.m_perp_m0, "m_perp_m0")? * M_E,
            m_par: req(self.m_par_m0, "m_par_m0")? * M_E,
            sigma_d: ev_to_erg(req(self.sigma_d_eV, "sigma_d_eV")?),
            sigma_u: ev_to_erg(req(self.sigma_u_eV, "sigma_u_eV")?),
            rho: req(self.density_g_per_cm3, "density_g_per_cm3")?,
            s_par: req(self.sound_speed_longitudinal_cm_per_s, "sound_speed_longitudinal_cm_per_s")?,
            s_perp: req(self.sound_speed_transverse_cm_per_s, "sound_speed_transverse_cm_per_s")?,
            chi0: req(self.dielectric_constant, "dielectric_constant")?,
            t_lattice: kelvin_to_erg(t_lattice_k),
            tau_perp0: 1.0,
            tau_par0: 1.0,
            n_d: req(self.impurity_concentration_cm3, "impurity_concentration_cm3")?,
        };
        mat = match self.relaxation_times.clone().unwrap_or(TauSource::DeformationPotentials) {
            TauSource::DeformationPotentials => mat.with_deformation_relaxation_times(),
            TauSource::Explicit { tau_perp_s, tau_par_s } => {
                mat.tau_perp0 = tau_perp_s;
                mat.tau_par0 = tau_par_s;
                Ok(mat)
            }
            TauSource::Mobility {
                mu_par_cm2_per_Vs,
                mu_perp_cm2_per_Vs,
            } => mat.with_mobilities(
                mobility_practical_to_cgs(mu_par_cm2_per_Vs),
                mobility_practical_to_cgs(mu_perp_cm2_per_Vs),
            ),
        }
        .map_err(|e| config_err("material.relaxation_times", e))?;
        mat.validate().map_err(|e| config_err("material", e))?;
        Ok(mat)
    }
}

fn req(v: Option<f64>, key: &str) -> Result<f64> {
    v.ok_or_else(|| Error::Config {
        path: format!("material.{key}"),
        message: "missing (no preset supplies it)".into(),
    })
}

fn config_err(path: impl Into<String>, e: impl std::fmt::Display) -> Error {
    Error::Config {
        path: path.into(),
        message: e.to_string(),
    }
}

/// Interpretation of the cutoff in the Coulomb logarithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum XminConvention {
    /// x_min = ħ²/(8m⊥T r_D²).
    #[default]
    RadiusSquared,
    /// The first power of r_D, which is not dimensionless; rejected.
    AsPrinted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AngleSpec {
    Steps { steps: usize },
    Values { values_rad: Vec<f64> },
}

impl Default for AngleSpec {
    fn default() -> Self {
        AngleSpec::Steps { steps: 36 }
    }
}

impl AngleSpec {
    pub fn angles(&self) -> Vec<f64> {
        match self {
            AngleSpec::Steps { steps } => {
                let h = std::f64::consts::TAU / *steps as f64;
                (0..*steps).map(|k| h * k as f64).collect()
            }
            AngleSpec::Values { values_rad } => values_rad.clone(),
        }
    }

    fn validate(&self) -> Result<()> {
        let a = self.angles();
        if a.is_empty() {
            return Err(config_err("angles", "at least one angle is required"));
        }
        for (i, phi) in a.iter().enumerate() {
            if !(0.0..std::f64::consts::TAU).contains(phi) {
                return Err(config_err(format!("angles.values_rad[{i}]"), format!("{phi} is outside [0, 2π)")));
            }
        }
        Ok(())
    }
}

/// Scattering channel(s) used for a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum Mechanism {
    Acoustic,
    Coulomb,
    /// Weighted sum of both channels.
    AutoMix { acoustic_weight: f64, coulomb_weight: f64 },
}

impl Mechanism {
    pub fn label(&self) -> &'static str {
        match self {
            Mechanism::Acoustic => "acoustic",
            Mechanism::Coulomb => "coulomb",
            Mechanism::AutoMix { .. } => "auto-mix",
        }
    }

    pub fn weights(&self) -> (f64, f64) {
        match *self {
            Mechanism::Acoustic => (1.0, 0.0),
            Mechanism::Coulomb => (0.0, 1.0),
            Mechanism::AutoMix {
                acoustic_weight,
                coulomb_weight,
            } => (acoustic_weight, coulomb_weight),
        }
    }
}

/// Carrier state of one point of a (1,1,1) sweep.
#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Point111 {
    pub field_V_per_cm: f64,
    pub n1_cm3: f64,
    pub T1_K: f64,
    pub n2_cm3: f64,
    pub T2_K: f64,
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Point100 {
    pub field_V_per_cm: f64,
    /// Total concentration over all valleys.
    pub n_cm3: f64,
    pub T_e_K: f64,
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticePoint {
    pub lattice_temperature_K: f64,
    pub n1_cm3: f64,
    pub T1_K: f64,
    pub n2_cm3: f64,
    pub T2_K: f64,
    pub acoustic_weight: f64,
    pub coulomb_weight: f64,
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Scenario {
    /// Heating field along (1,1,1): cold valley 1, three hot valleys.
    #[serde(rename = "field-111")]
    Field111 {
        name: String,
        mechanism: Mechanism,
        points: Vec<Point111>,
    },
    /// Heating field along (1,0,0): equal valleys, anisotropy from the
    /// field distortion of the distribution; φ is measured from the field.
    #[serde(rename = "field-100")]
    Field100 { name: String, points: Vec<Point100> },
    /// Lattice-temperature scan at fixed field along (1,1,1) with explicit
    /// mechanism weights per point.
    LatticeTempScan {
        name: String,
        field_V_per_cm: f64,
        points: Vec<LatticePoint>,
    },
}

impl Scenario {
    pub fn name(&self) -> &str {
        match self {
            Scenario::Field111 { name, .. }
            | Scenario::Field100 { name, .. }
            | Scenario::LatticeTempScan { name, .. } => name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Scenario::Field111 { .. } => "field-111",
            Scenario::Field100 { .. } => "field-100",
            Scenario::LatticeTempScan { .. } => "lattice-temp-scan",
        }
    }

    pub fn point_count(&self) -> usize {
        match self {
            Scenario::Field111 { points, .. } => points.len(),
            Scenario::Field100 { points, .. } => points.len(),
            Scenario::LatticeTempScan { points, .. } => points.len(),
        }
    }
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub schema_version: u32,
    pub material: MaterialSpec,
    pub photon_energy_meV: f64,
    #[serde(default)]
    pub angles: AngleSpec,
    #[serde(default)]
    pub coulomb_brace: BraceMode,
    #[serde(default)]
    pub x_min_convention: XminConvention,
    #[serde(default)]
    pub hotfield_bracket: BracketForm,
    pub scenarios: Vec<Scenario>,
}

impl SweepConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: SweepConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            refine_scenario_error(text, &path).unwrap_or(Error::Config {
                path,
                message: e.inner().to_string(),
            })
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(config_err(
                "schema_version",
                format!("unsupported version {} (expected {SCHEMA_VERSION})", self.schema_version),
            ));
        }
        if self.x_min_convention == XminConvention::AsPrinted {
            return Err(config_err(
                "x_min_convention",
                "`as-printed` divides by the first power of r_D, which leaves x_min with units of length; use `radius-squared`",
            ));
        }
        positive("photon_energy_meV", self.photon_energy_meV)?;
        self.angles.validate()?;
        self.material.to_params().map_err(|e| match e {
            e @ Error::Config { .. } => e,
            other => config_err("material", other),
        })?;
        if self.scenarios.is_empty() {
            return Err(config_err("scenarios", "at least one scenario is required"));
        }
        for (i, sc) in self.scenarios.iter().enumerate() {
            let base = format!("scenarios[{i}]");
            if sc.point_count() == 0 {
                return Err(config_err(format!("{base}.points"), "at least one point is required"));
            }
            if self.scenarios[..i].iter().any(|o| o.name() == sc.name()) {
                return Err(config_err(format!("{base}.name"), format!("duplicate scenario name `{}`", sc.name())));
            }
            match sc {
                Scenario::Field111 { mechanism, points, .. } => {
                    check_mechanism(&format!("{base}.mechanism"), mechanism)?;
                    for (j, p) in points.iter().enumerate() {
                        let b = format!("{base}.points[{j}]");
                        positive(&format!("{b}.field_V_per_cm"), p.field_V_per_cm)?;
                        positive(&format!("{b}.n1_cm3"), p.n1_cm3)?;
                        positive(&format!("{b}.T1_K"), p.T1_K)?;
                        positive(&format!("{b}.n2_cm3"), p.n2_cm3)?;
                        positive(&format!("{b}.T2_K"), p.T2_K)?;
                    }
                }
                Scenario::Field100 { points, .. } => {
                    for (j, p) in points.iter().enumerate() {
                        let b = format!("{base}.points[{j}]");
                        nonnegative(&format!("{b}.field_V_per_cm"), p.field_V_per_cm)?;
                        positive(&format!("{b}.n_cm3"), p.n_cm3)?;
                        positive(&format!("{b}.T_e_K"), p.T_e_K)?;
                    }
                }
                Scenario::LatticeTempScan {
                    field_V_per_cm, points, ..
                } => {
                    positive(&format!("{base}.field_V_per_cm"), *field_V_per_cm)?;
                    for (j, p) in points.iter().enumerate() {
                        let b = format!("{base}.points[{j}]");
                        positive(&format!("{b}.lattice_temperature_K"), p.lattice_temperature_K)?;
                        positive(&format!("{b}.n1_cm3"), p.n1_cm3)?;
                        positive(&format!("{b}.T1_K"), p.T1_K)?;
                        positive(&format!("{b}.n2_cm3"), p.n2_cm3)?;
                        positive(&format!("{b}.T2_K"), p.T2_K)?;
                        check_mechanism(
                            &b,
                            &Mechanism::AutoMix {
                                acoustic_weight: p.acoustic_weight,
                                coulomb_weight: p.coulomb_weight,
                            },
                        )?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Photon energy in erg.
    pub fn photon_energy(&self) -> f64 {
        ev_to_erg(1e-3 * self.photon_energy_meV)
    }
}

/// Internally tagged scenarios hide the location of an error inside them;
/// re-reads the points of scenario `path` against the concrete point type.
fn refine_scenario_error(text: &str, path: &str) -> Option<Error> {
    let i: usize = path.strip_prefix("scenarios[")?.strip_suffix(']')?.parse().ok()?;
    let root: serde_json::Value = serde_json::from_str(text).ok()?;
    let sc = root.get("scenarios")?.get(i)?;
    let points = sc.get("points")?.as_array()?;
    for (j, p) in points.iter().enumerate() {
        let r = match sc.get("kind")?.as_str()? {
            "field-111" => serde_path_to_error::deserialize::<_, Point111>(p).map(drop),
            "field-100" => serde_path_to_error::deserialize::<_, Point100>(p).map(drop),
            "lattice-temp-scan" => serde_path_to_error::deserialize::<_, LatticePoint>(p).map(drop),
            _ => return None,
        };
        if let Err(e) = r {
            let inner = e.path().to_string();
            let sep = if inner == "." { String::new() } else { format!(".{inner}") };
            return Some(config_err(format!("{path}.points[{j}]{sep}"), e.inner()));
        }
    }
    if let Some(m) = sc.get("mechanism") {
        if let Err(e) = Mechanism::deserialize(m) {
            return Some(config_err(format!("{path}.mechanism"), e));
        }
    }
    None
}

fn positive(path: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(config_err(path, format!("must be > 0, got {v}")))
    }
}

fn nonnegative(path: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(config_err(path, format!("must be >= 0, got {v}")))
    }
}

fn check_mechanism(path: &str, m: &Mechanism) -> Result<()> {
    let (a, c) = m.weights();
    if !(a.is_finite() && c.is_finite() && a >= 0.0 && c >= 0.0 && a + c > 0.0) {
        return Err(config_err(path, "mixing weights must be >= 0 and not both zero"));
    }
    Ok(())
}
