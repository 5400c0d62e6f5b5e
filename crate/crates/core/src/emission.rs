//! Per-valley emission responses and their angular decomposition.
//!
//! In every channel the power radiated by one valley is linear in
//! cos²φ = (l·g₀)², so a valley is summarized by the two values it takes for
//! polarization perpendicular and parallel to its axis.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::material::{cos2_angle, ValleySet};
use crate::vector::{UnitVec3, Vec3};

/// Emission of one valley for g₀ ⊥ l (`perp`) and g₀ ∥ l (`par`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValleyResponse {
    pub perp: f64,
    pub par: f64,
}

impl ValleyResponse {
    /// perp·sin²φ + par·cos²φ.
    pub fn at(&self, cos2: f64) -> f64 {
        self.perp * (1.0 - cos2) + self.par * cos2
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            perp: self.perp * s,
            par: self.par * s,
        }
    }
}

impl std::ops::Add for ValleyResponse {
    type Output = ValleyResponse;
    fn add(self, o: Self) -> Self {
        Self {
            perp: self.perp + o.perp,
            par: self.par + o.par,
        }
    }
}

/// W(φ) = a0 + a2·cos 2φ + b2·sin 2φ, with φ measured from `reference_axis`
/// inside the plane spanned by `reference_axis` and `second_axis`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngularDecomposition {
    pub a0: f64,
    pub a2: f64,
    pub b2: f64,
    pub reference_axis: UnitVec3,
    pub second_axis: UnitVec3,
}

impl AngularDecomposition {
    pub fn at(&self, phi: f64) -> f64 {
        self.a0 + self.a2 * (2.0 * phi).cos() + self.b2 * (2.0 * phi).sin()
    }

    /// Polarization vector at angle φ.
    pub fn polarization(&self, phi: f64) -> UnitVec3 {
        let v = self.reference_axis.vec() * phi.cos() + self.second_axis.vec() * phi.sin();
        UnitVec3::new(v, "g0").expect("combination of orthonormal axes")
    }

    /// Angles in [0, π) of the maximum and minimum of W(φ).
    pub fn extrema(&self) -> (f64, f64) {
        let pi = std::f64::consts::PI;
        let phase = 0.5 * self.b2.atan2(self.a2);
        let max = phase.rem_euclid(pi);
        let min = (phase + 0.5 * pi).rem_euclid(pi);
        (max, min)
    }

    pub fn amplitude(&self) -> f64 {
        self.a2.hypot(self.b2)
    }
}

/// Per-valley and total emission for one polarization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Emission {
    /// (valley index, power) pairs in erg/(s·cm³·sr).
    pub per_valley: Vec<(usize, f64)>,
    pub total: f64,
    pub decomposition: AngularDecomposition,
}

impl Emission {
    /// Assembles the emission for polarization `g0`; the decomposition is
    /// taken in the plane through the first valley axis and `g0`.
    pub fn from_responses(valleys: &ValleySet, responses: &[ValleyResponse], g0: &UnitVec3) -> Result<Self> {
        if responses.len() != valleys.len() {
            return Err(Error::arg("responses", "one response per valley required"));
        }
        let per_valley = valleys
            .axes()
            .iter()
            .zip(responses)
            .enumerate()
            .map(|(i, (l, r))| Ok((i, r.at(cos2_angle(l, g0)?))))
            .collect::<Result<Vec<_>>>()?;
        let total = per_valley.iter().map(|(_, w)| w).sum();
        let reference = valleys.axes()[0];
        let second = plane_partner(&reference, g0);
        let decomposition = decompose_in_plane(valleys, responses, &reference, &second)?;
        Ok(Self {
            per_valley,
            total,
            decomposition,
        })
    }

    /// Total emitted into 4π steradian, for isotropic angular distributions
    /// of the emitted direction.
    pub fn total_full_sphere(&self) -> f64 {
        4.0 * std::f64::consts::PI * self.total
    }
}

/// Unit vector orthogonal to `reference` in the plane containing `g0`;
/// any orthogonal direction if the two are parallel.
pub fn plane_partner(reference: &UnitVec3, g0: &UnitVec3) -> UnitVec3 {
    let r = reference.vec();
    let perp: Vec3 = g0.vec() - r * r.dot(&g0.vec());
    if perp.norm() > 1e-8 {
        perp.normalized().expect("nonzero vector")
    } else {
        reference.orthonormal_frame().0
    }
}

/// Decomposes Σᵢ Wᵢ(g₀(φ)) for g₀ = cos φ·e₁ + sin φ·e₂.
pub fn decompose_in_plane(
    valleys: &ValleySet,
    responses: &[ValleyResponse],
    e1: &UnitVec3,
    e2: &UnitVec3,
) -> Result<AngularDecomposition> {
    if e1.dot(e2).abs() > 1e-9 {
        return Err(Error::arg("e2", "plane axes must be orthogonal"));
    }
    let (mut a0, mut a2, mut b2) = (0.0, 0.0, 0.0);
    for (l, r) in valleys.axes().iter().zip(responses) {
        // (l·g)² = ½(u² + v²) + ½(u² − v²)cos 2φ + uv·sin 2φ
        let u = l.dot(e1);
        let v = l.dot(e2);
        let d = r.par - r.perp;
        a0 += r.perp + d * 0.5 * (u * u + v * v);
        a2 += d * 0.5 * (u * u - v * v);
        b2 += d * u * v;
    }
    Ok(AngularDecomposition {
        a0,
        a2,
        b2,
        reference_axis: *e1,
        second_axis: *e2,
    })
}

/// Closed form of the (1,1,1) decomposition for germanium valleys: valley 1
/// has response `r1`, valleys 2–4 share `r2`, and φ is measured from l₁.
pub fn decompose_111_responses(r1: ValleyResponse, r2: ValleyResponse) -> AngularDecomposition {
    let d = (r1.par - r1.perp) - (r2.par - r2.perp);
    let a0 = 4.0 * r2.perp + (4.0 / 3.0) * (r2.par - r2.perp) + (r1.perp - r2.perp) + 0.5 * d;
    let l1 = ValleySet::germanium().axes()[0];
    let (e2, _) = l1.orthonormal_frame();
    AngularDecomposition {
        a0,
        a2: 0.5 * d,
        b2: 0.0,
        reference_axis: l1,
        second_axis: e2,
    }
}
