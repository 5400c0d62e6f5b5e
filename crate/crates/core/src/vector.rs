use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on |v| − 1 when a unit vector is required.
pub const UNIT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3(pub [f64; 3]);

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3([x, y, z])
    }

    pub fn dot(&self, other: &Vec3) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(&self, o: &Vec3) -> Vec3 {
        let [a, b, c] = self.0;
        let [x, y, z] = o.0;
        Vec3::new(b * z - c * y, c * x - a * z, a * y - b * x)
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn norm2(&self) -> f64 {
        self.dot(self)
    }

    pub fn scale(&self, s: f64) -> Vec3 {
        Vec3::new(self.0[0] * s, self.0[1] * s, self.0[2] * s)
    }

    pub fn normalized(&self) -> Result<UnitVec3> {
        let n = self.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::arg("vector", "cannot normalize a zero or non-finite vector"));
        }
        Ok(UnitVec3(self.scale(1.0 / n)))
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2])
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2])
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        self.scale(-1.0)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        self.scale(s)
    }
}

/// A 3-vector known to have unit length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitVec3(Vec3);

impl UnitVec3 {
    /// Checks |v| = 1 within [`UNIT_TOLERANCE`]; does not renormalize.
    pub fn new(v: Vec3, name: &'static str) -> Result<Self> {
        let n = v.norm();
        if (n - 1.0).abs() > UNIT_TOLERANCE || !n.is_finite() {
            return Err(Error::NotUnitVector { name, norm: n });
        }
        Ok(UnitVec3(v))
    }

    pub fn from_components(x: f64, y: f64, z: f64) -> Result<Self> {
        Vec3::new(x, y, z).normalized()
    }

    pub const X: UnitVec3 = UnitVec3(Vec3::new(1.0, 0.0, 0.0));
    pub const Y: UnitVec3 = UnitVec3(Vec3::new(0.0, 1.0, 0.0));
    pub const Z: UnitVec3 = UnitVec3(Vec3::new(0.0, 0.0, 1.0));

    pub fn vec(&self) -> Vec3 {
        self.0
    }

    pub fn dot(&self, other: &UnitVec3) -> f64 {
        self.0.dot(&other.0)
    }

    pub fn neg(&self) -> UnitVec3 {
        UnitVec3(-self.0)
    }

    /// Two unit vectors completing a right-handed orthonormal frame with `self`
    /// as the third axis.
    pub fn orthonormal_frame(&self) -> (UnitVec3, UnitVec3) {
        let z = self.0;
        let helper = if z.0[0].abs() < 0.9 {
            Vec3::new(1.0, 0.0, 0.0)
        } else {
            Vec3::new(0.0, 1.0, 0.0)
        };
        let x = (helper - z * helper.dot(&z)).scale(1.0);
        let x = x.scale(1.0 / x.norm());
        let y = z.cross(&x);
        (UnitVec3(x), UnitVec3(y))
    }
}

impl<'de> Deserialize<'de> for UnitVec3 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec3::deserialize(d)?;
        v.normalized().map_err(serde::de::Error::custom)
    }
}
