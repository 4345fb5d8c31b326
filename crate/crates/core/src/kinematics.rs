//! Free-particle kinematics: momentum states, the rapidity and η
//! parametrizations, polarization directions and Minkowski four-vectors.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{DiracError, Result};

/// Real Euclidean 3-vector.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub const fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    pub const fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub const fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Self) -> Self {
        Self::new(self.y * o.z - self.z * o.y, self.z * o.x - self.x * o.z, self.x * o.y - self.y * o.x)
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Unit vector along `self`, or `None` for the zero vector.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        (n > 0.0).then(|| self * (1.0 / n))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn max_abs_diff(self, o: Self) -> f64 {
        let d = self - o;
        d.x.abs().max(d.y.abs()).max(d.z.abs())
    }
}

impl Add for Vec3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

/// Speed of light and reduced Planck constant; both default to 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub c: f64,
    pub hbar: f64,
}

impl PhysicalConstants {
    pub fn new(c: f64, hbar: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite() && hbar > 0.0 && hbar.is_finite()) {
            return Err(DiracError::InvalidConstants { c, hbar });
        }
        Ok(Self { c, hbar })
    }

    pub const fn natural() -> Self {
        Self { c: 1.0, hbar: 1.0 }
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::natural()
    }
}

/// Sign of the energy eigenvalue, `E = ±R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergyBranch {
    Pos,
    Neg,
}

impl EnergyBranch {
    pub const BOTH: [Self; 2] = [Self::Pos, Self::Neg];

    pub fn sign(self) -> f64 {
        match self {
            Self::Pos => 1.0,
            Self::Neg => -1.0,
        }
    }
}

/// Polar angles of a direction, `θ ∈ [0, π]` and `φ ∈ [0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolarAngles {
    theta: f64,
    phi: f64,
}

impl PolarAngles {
    /// Clamps `θ` into `[0, π]` and wraps `φ` modulo `2π`.
    pub fn new(theta: f64, phi: f64) -> Self {
        let theta = theta.clamp(0.0, PI);
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Self { theta, phi }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Unit vector `(sin θ cos φ, sin θ sin φ, cos θ)`.
    pub fn direction(&self) -> Vec3 {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        Vec3::new(st * cp, st * sp, ct)
    }

    /// Angles of a nonzero vector; the azimuth is 0 on the polar axis.
    pub fn of(v: Vec3) -> Result<Self> {
        let n = v.norm();
        if n == 0.0 {
            return Err(DiracError::ZeroMomentum);
        }
        let theta = (v.z / n).clamp(-1.0, 1.0).acos();
        let phi = if v.x == 0.0 && v.y == 0.0 { 0.0 } else { v.y.atan2(v.x) };
        Ok(Self::new(theta, phi))
    }
}

/// Free-function form of [`PolarAngles::direction`].
pub fn direction(angles: &PolarAngles) -> Vec3 {
    angles.direction()
}

/// The η parameter, `0 ≤ η < 1`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct EtaParam(f64);

impl EtaParam {
    pub fn new(eta: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&eta) {
            return Err(DiracError::EtaOutOfRange(eta));
        }
        Ok(Self(eta))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Contravariant four-vector `a^μ = (a⁰, a)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourVector {
    pub t: f64,
    pub spatial: Vec3,
}

impl FourVector {
    pub const fn new(t: f64, spatial: Vec3) -> Self {
        Self { t, spatial }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], Vec3::new(a[1], a[2], a[3]))
    }

    /// Contravariant components `a^μ`.
    pub fn upper(&self) -> [f64; 4] {
        [self.t, self.spatial.x, self.spatial.y, self.spatial.z]
    }

    /// Covariant components `a_μ = g_{μν} a^ν`.
    pub fn lower(&self) -> [f64; 4] {
        [self.t, -self.spatial.x, -self.spatial.y, -self.spatial.z]
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.t * s, self.spatial * s)
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        (self.t - o.t).abs().max(self.spatial.max_abs_diff(o.spatial))
    }
}

/// `a⁰b⁰ − a·b`.
pub fn minkowski_dot(a: &FourVector, b: &FourVector) -> f64 {
    a.t * b.t - a.spatial.dot(b.spatial)
}

/// Mass, constants and momentum of a free particle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentumState {
    m: f64,
    constants: PhysicalConstants,
    p: Vec3,
}

impl MomentumState {
    pub fn new(m: f64, constants: PhysicalConstants, p: Vec3) -> Result<Self> {
        if !(m >= 0.0 && m.is_finite()) {
            return Err(DiracError::InvalidMass(m));
        }
        if !p.is_finite() {
            return Err(DiracError::InvalidMass(f64::NAN));
        }
        Ok(Self { m, constants, p })
    }

    /// State with `|p| = 2mcη/(1−η²)` along `n(dir)`.
    pub fn from_eta(m: f64, constants: PhysicalConstants, eta: EtaParam, dir: PolarAngles) -> Result<Self> {
        if m <= 0.0 {
            return Err(DiracError::MasslessState);
        }
        let e = eta.value();
        let p = 2.0 * m * constants.c * e / (1.0 - e * e);
        Self::new(m, constants, dir.direction() * p)
    }

    /// State at rapidity `ϑ` along `n(dir)`, `|p| = mc sinh ϑ`.
    pub fn from_rapidity(m: f64, constants: PhysicalConstants, rapidity: f64, dir: PolarAngles) -> Result<Self> {
        if m <= 0.0 {
            return Err(DiracError::MasslessState);
        }
        Self::new(m, constants, dir.direction() * (m * constants.c * rapidity.sinh()))
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn constants(&self) -> PhysicalConstants {
        self.constants
    }

    pub fn c(&self) -> f64 {
        self.constants.c
    }

    pub fn p(&self) -> Vec3 {
        self.p
    }

    pub fn p_norm(&self) -> f64 {
        self.p.norm()
    }

    /// Rest energy `mc²`.
    pub fn rest_energy(&self) -> f64 {
        self.m * self.c() * self.c()
    }

    /// `R = sqrt(c²|p|² + m²c⁴)`.
    pub fn r(&self) -> f64 {
        let c = self.c();
        (c * c * self.p.dot(self.p) + self.rest_energy().powi(2)).sqrt()
    }

    /// `E = ±R`.
    pub fn energy(&self, branch: EnergyBranch) -> f64 {
        branch.sign() * self.r()
    }

    /// `p^μ = (R/c, p)`.
    pub fn four_momentum(&self) -> FourVector {
        FourVector::new(self.r() / self.c(), self.p)
    }

    /// Unit vector along `p`.
    pub fn direction(&self) -> Result<Vec3> {
        self.p.normalized().ok_or(DiracError::ZeroMomentum)
    }

    pub fn angles(&self) -> Result<PolarAngles> {
        PolarAngles::of(self.p)
    }

    /// `η = c|p|/(R + mc²)`.
    pub fn to_eta(&self) -> Result<EtaParam> {
        if self.m <= 0.0 {
            return Err(DiracError::MasslessState);
        }
        EtaParam::new(self.c() * self.p_norm() / (self.r() + self.rest_energy()))
    }

    /// `ϑ = asinh(|p|/(mc))`.
    pub fn rapidity(&self) -> Result<f64> {
        if self.m <= 0.0 {
            return Err(DiracError::MasslessState);
        }
        Ok((self.p_norm() / (self.m * self.c())).asinh())
    }

    /// Same state with momentum reversed.
    pub fn reversed(&self) -> Self {
        Self { p: -self.p, ..*self }
    }

    /// `(E/c)² − |p|² − m²c²` for `E = ±R`; zero up to rounding.
    pub fn on_shell_residual(&self) -> f64 {
        let c = self.c();
        let e = self.r() / c;
        e * e - self.p.dot(self.p) - (self.m * c).powi(2)
    }
}
