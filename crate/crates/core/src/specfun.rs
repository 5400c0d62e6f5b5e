//! Modified Bessel functions K₀, K₁ and the emission/absorption kernels
//! built from them, plus the Legendre polynomial P₂.
//!
//! K₀ and K₁ use the ascending series for x ≤ 2 and Steed's continued
//! fraction (Temme's CF2 form) above. Both branches produce the
//! exponentially scaled values eˣK(x) so that the kernels, which combine
//! K with e^{±a}, never overflow or underflow in the intermediate steps.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::units::EULER_GAMMA;

const SERIES_LIMIT: f64 = 2.0;
const MAX_ITER: usize = 10_000;

fn check_arg(a: f64) -> Result<f64> {
    if a.is_finite() && a > 0.0 || a == f64::INFINITY {
        Ok(a)
    } else {
        Err(Error::arg("a", format!("Bessel argument must be > 0, got {a}")))
    }
}

/// (K₀(x), K₁(x)) from the ascending series; valid for 0 < x ≤ 2.
fn k01_series(x: f64) -> (f64, f64) {
    let t = 0.25 * x * x;
    let lg = (0.5 * x).ln() + EULER_GAMMA;

    // I₀, I₁ and the harmonic-number sums share the same term recursion.
    let mut term0 = 1.0; // t^k / (k!)²
    let mut term1 = 1.0; // t^k / (k!(k+1)!)
    let mut h_k = 0.0;
    let mut i0 = 0.0;
    let mut i1s = 0.0;
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    for k in 0..60 {
        let kf = k as f64;
        if k > 0 {
            term0 *= t / (kf * kf);
            term1 *= t / (kf * (kf + 1.0));
            h_k += 1.0 / kf;
        }
        let h_k1 = h_k + 1.0 / (kf + 1.0);
        i0 += term0;
        i1s += term1;
        s0 += term0 * h_k;
        s1 += term1 * (h_k + h_k1);
        if term0 < 1e-18 * i0 && term1 < 1e-18 * i1s {
            break;
        }
    }
    let i1 = 0.5 * x * i1s;
    let k0 = -lg * i0 + s0;
    let k1 = 1.0 / x + lg * i1 - 0.25 * x * s1;
    (k0, k1)
}

/// (eˣK₀(x), eˣK₁(x)) by Steed's method; intended for x ≥ 2.
fn k01_scaled_cf2(x: f64) -> (f64, f64) {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    let h = a1 * h;
    let k0 = (std::f64::consts::PI / (2.0 * x)).sqrt() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

/// Exponentially scaled pair (eˣK₀(x), eˣK₁(x)).
pub fn bessel_k01_scaled(x: f64) -> Result<(f64, f64)> {
    let x = check_arg(x)?;
    if x.is_infinite() {
        return Ok((0.0, 0.0));
    }
    if x <= SERIES_LIMIT {
        let (k0, k1) = k01_series(x);
        let e = x.exp();
        Ok((k0 * e, k1 * e))
    } else {
        Ok(k01_scaled_cf2(x))
    }
}

/// Unscaled pair (K₀(x), K₁(x)); underflows smoothly to 0 for x ≳ 705.
pub fn bessel_k01(x: f64) -> Result<(f64, f64)> {
    let x = check_arg(x)?;
    if x <= SERIES_LIMIT {
        return Ok(k01_series(x));
    }
    let (k0, k1) = bessel_k01_scaled(x)?;
    // Split the exponential so that K·e^{-x} does not underflow before the
    // product would.
    let e = (-0.5 * x).exp();
    Ok((k0 * e * e, k1 * e * e))
}

pub fn bessel_k0(x: f64) -> Result<f64> {
    Ok(bessel_k01(x)?.0)
}

/// Modified Bessel function of the second kind, order one.
pub fn bessel_k1(x: f64) -> Result<f64> {
    Ok(bessel_k01(x)?.1)
}

/// d/da (K₁(a)/a) in closed form, −(aK₀ + 2K₁)/a², scaled by eᵃ.
fn d_k1_over_a_scaled(a: f64) -> Result<f64> {
    let (k0, k1) = bessel_k01_scaled(a)?;
    Ok(-(a * k0 + 2.0 * k1) / (a * a))
}

/// d/da (K₁(a)/a).
pub fn d_k1_over_a(a: f64) -> Result<f64> {
    let (k0, k1) = bessel_k01(a)?;
    Ok(-(a * k0 + 2.0 * k1) / (a * a))
}

/// E(a) = −a³e⁻ᵃ d/da(K₁(a)/a) = a e^{−2a} (a eᵃK₀ + 2 eᵃK₁).
///
/// Positive; tends to 2 as a → 0 and to √(π/2)·a^{3/2}·e^{−2a} as a → ∞.
pub fn emission_kernel(a: f64) -> Result<f64> {
    let d = d_k1_over_a_scaled(a)?;
    Ok(-a * a * a * d * (-2.0 * a).exp())
}

/// a³eᵃ d/da(K₁(a)/a), which is negative. |value|·e^{−2a} = E(a).
pub fn absorption_kernel(a: f64) -> Result<f64> {
    let d = d_k1_over_a_scaled(a)?;
    Ok(a * a * a * d)
}

/// a e^{−a} K₁(a), used by the field-distortion term.
pub fn a_exp_k1(a: f64) -> Result<f64> {
    let (_, k1) = bessel_k01_scaled(a)?;
    Ok(a * k1 * (-2.0 * a).exp())
}

/// Large-a leading asymptote of [`emission_kernel`].
pub fn emission_kernel_asymptote(a: f64) -> f64 {
    (std::f64::consts::FRAC_PI_2).sqrt() * a.powf(1.5) * (-2.0 * a).exp()
}

pub fn legendre_p2(x: f64) -> Result<f64> {
    if x.is_nan() || x.abs() > 1.0 {
        return Err(Error::arg("x", format!("P2 argument must lie in [-1, 1], got {x}")));
    }
    Ok(0.5 * (3.0 * x * x - 1.0))
}

/// Unchecked P₁ and P₂ for internal use inside quadrature loops.
#[inline]
pub(crate) fn p2(x: f64) -> f64 {
    0.5 * (3.0 * x * x - 1.0)
}

/// A kernel evaluated at a given a, kept together for tabulation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelValue {
    pub a: f64,
    pub value: f64,
}

impl KernelValue {
    pub fn emission(a: f64) -> Result<Self> {
        Ok(Self {
            a,
            value: emission_kernel(a)?,
        })
    }

    pub fn absorption(a: f64) -> Result<Self> {
        Ok(Self {
            a,
            value: absorption_kernel(a)?,
        })
    }
}
