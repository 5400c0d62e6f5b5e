//! Physical constants (CGS-Gaussian) and conversions used at the I/O boundary.
//!
//! Internally every temperature is an energy in erg, fields are in statV/cm
//! and mobilities in cm²/(statV·s).

use serde::Serialize;

/// Elementary charge, statC.
pub const E0: f64 = 4.803_204_712_570_263e-10;
/// Reduced Planck constant, erg·s.
pub const HBAR: f64 = 1.054_571_817e-27;
/// Speed of light, cm/s.
pub const C: f64 = 2.997_924_58e10;
/// Boltzmann constant, erg/K.
pub const K_B: f64 = 1.380_649e-16;
/// Free electron mass, g.
pub const M_E: f64 = 9.109_383_701_5e-28;
/// One electron-volt in erg.
pub const EV: f64 = 1.602_176_634e-12;
/// Volts per statvolt.
pub const VOLTS_PER_STATVOLT: f64 = 299.792_458;
/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// The constants bundled as a value, for reports and for callers that want
/// to pass them around explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    pub e0: f64,
    pub hbar: f64,
    pub c: f64,
    pub k_b: f64,
}

impl Constants {
    pub const CGS: Constants = Constants {
        e0: E0,
        hbar: HBAR,
        c: C,
        k_b: K_B,
    };
}

impl Default for Constants {
    fn default() -> Self {
        Self::CGS
    }
}

pub fn kelvin_to_erg(t: f64) -> f64 {
    t * K_B
}

pub fn erg_to_kelvin(e: f64) -> f64 {
    e / K_B
}

pub fn ev_to_erg(e: f64) -> f64 {
    e * EV
}

pub fn erg_to_ev(e: f64) -> f64 {
    e / EV
}

pub fn mev_to_erg(e: f64) -> f64 {
    e * 1e-3 * EV
}

/// V/cm → statV/cm.
pub fn volt_per_cm_to_cgs(f: f64) -> f64 {
    f / VOLTS_PER_STATVOLT
}

pub fn cgs_to_volt_per_cm(f: f64) -> f64 {
    f * VOLTS_PER_STATVOLT
}

/// cm²/(V·s) → cm²/(statV·s).
pub fn mobility_practical_to_cgs(mu: f64) -> f64 {
    mu * VOLTS_PER_STATVOLT
}

pub fn mobility_cgs_to_practical(mu: f64) -> f64 {
    mu / VOLTS_PER_STATVOLT
}

/// Photon angular frequency for a quantum energy given in erg.
pub fn omega_from_energy(e: f64) -> f64 {
    e / HBAR
}
