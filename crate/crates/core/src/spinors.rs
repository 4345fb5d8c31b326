//! Two-component helicity spinors and four-component bi-spinors.
//!
//! Internal constructions are unnormalized; a [`NormalizationConvention`] is
//! always applied as an explicit final step.
//!
//! Negative-energy bi-spinors `v(p)` use the form
//! `v = (cσ·p/(R + mc²) φ, φ)`, which satisfies `(p̂ + mc)v = 0` and is an
//! eigenvector of `H(−p)` with eigenvalue `−R`. Its physical helicity is the
//! opposite of the label of `φ`, so [`helicity_bispinor`] builds the
//! negative-branch state of helicity `λ` from `φ^(−λ)`.

use serde::{Deserialize, Serialize};

use crate::error::{DiracError, Result};
use crate::gamma::{hamiltonian, sigma_dot, GammaSet};
use crate::kinematics::{EnergyBranch, EtaParam, MomentumState, PolarAngles, Vec3};
use crate::smallmat::{Block2x2, CMat2, CMat4, CVec, Complex, I};

pub type Spinor2 = CVec<2>;
pub type BiSpinor4 = CVec<4>;

/// Helicity eigenvalue `λ = ±1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Helicity {
    #[serde(rename = "+1/2")]
    Plus,
    #[serde(rename = "-1/2")]
    Minus,
}

impl Helicity {
    pub const BOTH: [Self; 2] = [Self::Plus, Self::Minus];

    /// `λ` itself, `±0.5`.
    pub fn value(self) -> f64 {
        0.5 * self.sign()
    }

    /// `2λ = ±1`.
    pub fn sign(self) -> f64 {
        match self {
            Self::Plus => 1.0,
            Self::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Self::Plus => Self::Minus,
            Self::Minus => Self::Plus,
        }
    }
}

/// How a bi-spinor is scaled after construction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum NormalizationConvention {
    /// `u†u = 1`.
    Unit,
    /// `ūu = ±1`.
    InvariantUnit,
    /// `ūu = 2mc` (positive branch) or `v̄v = −2mc` (negative branch).
    Invariant2mc,
    /// `u†u = 1/V`, one particle in a box of volume `V`.
    Box { volume: f64 },
}

/// Half-angle helicity spinor `φ^(λ)(θ, φ)` with eigenvalue `2λ` under `σ·n`.
pub fn helicity_spinor(lambda: Helicity, angles: &PolarAngles) -> Spinor2 {
    let (s, c) = (angles.theta() / 2.0).sin_cos();
    let em = Complex::from_polar(1.0, -angles.phi() / 2.0);
    let ep = Complex::from_polar(1.0, angles.phi() / 2.0);
    match lambda {
        Helicity::Plus => CVec([em * c, ep * s]),
        Helicity::Minus => CVec([-em * s, ep * c]),
    }
}

/// `Φ = (φ^(1/2), φ^(−1/2))`, a unitary matrix.
pub fn phi_matrix(angles: &PolarAngles) -> CMat2 {
    CMat2::from_columns([helicity_spinor(Helicity::Plus, angles), helicity_spinor(Helicity::Minus, angles)])
}

/// `Φ̃ = (φ^(1/2), −φ^(−1/2))`, so that `σ·n = Φ̃Φ†`.
pub fn phi_tilde_matrix(angles: &PolarAngles) -> CMat2 {
    CMat2::from_columns([helicity_spinor(Helicity::Plus, angles), -helicity_spinor(Helicity::Minus, angles)])
}

/// `cσ·p/(mc² + R)`, the lower-to-upper block ratio shared by all constructions.
fn kinetic_ratio(state: &MomentumState) -> CMat2 {
    sigma_dot(state.p()) * (state.c() / (state.rest_energy() + state.r()))
}

/// Hermitian involution `U` whose columns are the spin-projection bi-spinors
/// `u⁽¹⁾, u⁽²⁾` (energy `+R`) and `u⁽³⁾, u⁽⁴⁾` (energy `−R`).
pub fn spin_basis_matrix(state: &MomentumState) -> CMat4 {
    let k = kinetic_ratio(state);
    let scale = ((state.rest_energy() + state.r()) / (2.0 * state.r())).sqrt();
    Block2x2::new(CMat2::identity(), k, k, -CMat2::identity()).assemble().scale_re(scale)
}

/// Unnormalized bi-spinor for a given `φ`.
///
/// Positive branch: `(φ, cσ·p/(mc² + R) φ)`. Negative branch:
/// `(cσ·p/(R + mc²) φ, φ)`.
pub fn bispinor_block_raw(phi: &Spinor2, state: &MomentumState, branch: EnergyBranch) -> BiSpinor4 {
    let lower = kinetic_ratio(state) * *phi;
    match branch {
        EnergyBranch::Pos => join(phi, &lower),
        EnergyBranch::Neg => join(&lower, phi),
    }
}

/// The alternative negative-energy form `(cσ·p/(mc² + R) χ, −χ)`, an
/// eigenvector of `H(p)` with eigenvalue `−R`. Equals minus the default
/// negative-branch form evaluated at `−p`.
pub fn bispinor_block_lower_raw(chi: &Spinor2, state: &MomentumState) -> BiSpinor4 {
    join(&(kinetic_ratio(state) * *chi), &-*chi)
}

/// Bi-spinor for `φ` on the requested branch with an explicit normalization.
pub fn bispinor_block(
    phi: &Spinor2,
    state: &MomentumState,
    branch: EnergyBranch,
    norm: NormalizationConvention,
) -> Result<BiSpinor4> {
    if phi.norm_sqr() == 0.0 {
        return Err(DiracError::UnnormalizablePhi);
    }
    normalize(&bispinor_block_raw(phi, state, branch), state, norm)
}

/// Rescales `u` to satisfy `norm`. Invariant conventions need `m > 0`.
pub fn normalize(u: &BiSpinor4, state: &MomentumState, norm: NormalizationConvention) -> Result<BiSpinor4> {
    let dagger_norm = u.norm_sqr();
    if dagger_norm == 0.0 {
        return Err(DiracError::UnnormalizablePhi);
    }
    let scalar = |u: &BiSpinor4| -> f64 {
        let g0 = GammaSet::get().gamma0;
        u.inner(&(g0 * *u)).re.abs()
    };
    let factor = match norm {
        NormalizationConvention::Unit => 1.0 / dagger_norm.sqrt(),
        NormalizationConvention::Box { volume } => {
            if !(volume > 0.0 && volume.is_finite()) {
                return Err(DiracError::NonPositiveVolume(volume));
            }
            1.0 / (volume * dagger_norm).sqrt()
        }
        NormalizationConvention::InvariantUnit | NormalizationConvention::Invariant2mc => {
            if state.m() <= 0.0 {
                return Err(DiracError::MasslessState);
            }
            let target = match norm {
                NormalizationConvention::InvariantUnit => 1.0,
                _ => 2.0 * state.m() * state.c(),
            };
            (target / scalar(u)).sqrt()
        }
    };
    Ok(u.scale_re(factor))
}

/// Boosted rest-frame state `cosh(ϑ/2)(φ, (σ·l) tanh(ϑ/2) φ)` with `l = p/|p|`.
pub fn boost_bispinor(phi: &Spinor2, state: &MomentumState) -> Result<BiSpinor4> {
    let theta = state.rapidity()?;
    let l = state.p().normalized().unwrap_or(Vec3::zero());
    let half = theta / 2.0;
    let lower = (sigma_dot(l) * *phi).scale_re(half.tanh());
    Ok(join(phi, &lower).scale_re(half.cosh()))
}

/// Constant `C = sqrt((mc² + E)/(2mc²))` relating the boost to the raw block form.
pub fn boost_prefactor(state: &MomentumState) -> f64 {
    ((state.rest_energy() + state.r()) / (2.0 * state.rest_energy())).sqrt()
}

/// Helicity bi-spinor along `p` with physical helicity `λ`.
pub fn helicity_bispinor(
    lambda: Helicity,
    state: &MomentumState,
    branch: EnergyBranch,
    norm: NormalizationConvention,
) -> Result<BiSpinor4> {
    let angles = state.angles()?;
    let label = match branch {
        EnergyBranch::Pos => lambda,
        EnergyBranch::Neg => lambda.flip(),
    };
    bispinor_block(&helicity_spinor(label, &angles), state, branch, norm)
}

/// Relativistic helicity matrices `V` and `Ṽ`.
///
/// Columns of `V` are the `H(p)` eigenvectors with helicities
/// `(+½, −½, +½, −½)` and energies `(+R, +R, −R, −R)`; `Ṽ` negates the last two.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HelicityBasis {
    pub v: CMat4,
    pub v_tilde: CMat4,
}

pub fn helicity_basis(state: &MomentumState) -> Result<HelicityBasis> {
    let angles = state.angles()?;
    let phi = phi_matrix(&angles);
    let phi_t = phi_tilde_matrix(&angles);
    let mc2 = state.rest_energy();
    let r = state.r();
    let eta = state.c() * state.p_norm() / (mc2 + r);
    let scale = ((mc2 + r) / (2.0 * r)).sqrt();
    let v = Block2x2::new(phi, phi_t * eta, phi_t * eta, -phi).assemble().scale_re(scale);
    let flip = CMat4::diag([1.0, 1.0, -1.0, -1.0].map(|x| Complex::new(x, 0.0)));
    Ok(HelicityBasis { v, v_tilde: v * flip })
}

/// Unnormalized block matrix `[[(mc²+R)Φ, cσ·pΦ], [cσ·pΦ, −(mc²+R)Φ]]`.
pub fn helicity_block_matrix(state: &MomentumState) -> Result<CMat4> {
    let phi = phi_matrix(&state.angles()?);
    let a = state.rest_energy() + state.r();
    let b = sigma_dot(state.p()) * phi * state.c();
    Ok(Block2x2::new(phi * a, b, b, phi * -a).assemble())
}

/// Prefactor applied to the η-parametrized columns.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FluggeScale {
    /// No prefactor.
    Raw,
    /// `1/sqrt(V(1 + η²))`, giving `u†u = 1/V`.
    Box { volume: f64 },
    /// `sqrt(2mc/(1 − η²))`, giving `ūu = ±2mc`.
    Invariant { m: f64, c: f64 },
}

/// η-parametrized helicity column, with physical helicity `λ` on both branches.
///
/// Raw forms: `(φ⁺, ηφ⁺)`, `(−φ⁻, ηφ⁻)` for positive energy and
/// `(ηφ⁺, φ⁺)` (`λ = −½`), `(−ηφ⁻, φ⁻)` (`λ = +½`) for negative energy.
pub fn flugge_bispinor_scaled(
    lambda: Helicity,
    branch: EnergyBranch,
    eta: EtaParam,
    angles: &PolarAngles,
    scale: FluggeScale,
) -> Result<BiSpinor4> {
    let e = eta.value();
    let plus = helicity_spinor(Helicity::Plus, angles);
    let minus = helicity_spinor(Helicity::Minus, angles);
    let raw = match (branch, lambda) {
        (EnergyBranch::Pos, Helicity::Plus) => join(&plus, &plus.scale_re(e)),
        (EnergyBranch::Pos, Helicity::Minus) => join(&-minus, &minus.scale_re(e)),
        (EnergyBranch::Neg, Helicity::Minus) => join(&plus.scale_re(e), &plus),
        (EnergyBranch::Neg, Helicity::Plus) => join(&minus.scale_re(-e), &minus),
    };
    let factor = match scale {
        FluggeScale::Raw => 1.0,
        FluggeScale::Box { volume } => {
            if !(volume > 0.0 && volume.is_finite()) {
                return Err(DiracError::NonPositiveVolume(volume));
            }
            1.0 / (volume * (1.0 + e * e)).sqrt()
        }
        FluggeScale::Invariant { m, c } => (2.0 * m * c / (1.0 - e * e)).sqrt(),
    };
    Ok(raw.scale_re(factor))
}

/// η-parametrized helicity column in box normalization.
pub fn flugge_bispinor(
    lambda: Helicity,
    branch: EnergyBranch,
    eta: EtaParam,
    angles: &PolarAngles,
    volume: f64,
) -> Result<BiSpinor4> {
    flugge_bispinor_scaled(lambda, branch, eta, angles, FluggeScale::Box { volume })
}

/// The four raw η-columns stacked as `(v₊^(½), v₊^(−½), v₋^(½), v₋^(−½))`.
pub fn flugge_matrix(eta: EtaParam, angles: &PolarAngles) -> CMat4 {
    let col = |l, b| flugge_bispinor_scaled(l, b, eta, angles, FluggeScale::Raw).expect("raw scale is infallible");
    CMat4::from_columns([
        col(Helicity::Plus, EnergyBranch::Pos),
        col(Helicity::Minus, EnergyBranch::Pos),
        col(Helicity::Plus, EnergyBranch::Neg),
        col(Helicity::Minus, EnergyBranch::Neg),
    ])
}

/// Box-to-invariant conversion factor `sqrt(2mc/(1 − η²)) · sqrt(V(1 + η²))`.
pub fn box_to_invariant_factor(m: f64, c: f64, eta: EtaParam, volume: f64) -> f64 {
    let e = eta.value();
    (2.0 * m * c / (1.0 - e * e) * volume * (1.0 + e * e)).sqrt()
}

/// `iγ² u*`.
pub fn charge_conjugate(u: &BiSpinor4) -> BiSpinor4 {
    (GammaSet::get().gamma2.scale(I)) * u.conj()
}

/// Matrix `M` with `C(C(u)) = M u`; it equals `+I`.
pub fn charge_conjugation_square() -> CMat4 {
    let c = GammaSet::get().gamma2.scale(I);
    c * c.conj()
}

/// `u e^{±i(p·r − Rt)/ħ}`, upper sign for the positive branch.
pub fn plane_wave(u: &BiSpinor4, state: &MomentumState, branch: EnergyBranch, r: Vec3, t: f64) -> BiSpinor4 {
    let arg = (state.p().dot(r) - state.r() * t) / state.constants().hbar;
    u.scale(Complex::from_polar(1.0, branch.sign() * arg))
}

/// `‖(H − E)u‖∞` with `E = ±R`.
pub fn energy_residual(u: &BiSpinor4, state: &MomentumState, branch: EnergyBranch) -> f64 {
    let h = hamiltonian(state);
    (h * *u - u.scale_re(state.energy(branch))).max_abs()
}

fn join(top: &Spinor2, bottom: &Spinor2) -> BiSpinor4 {
    CVec([top[0], top[1], bottom[0], bottom[1]])
}

/// Upper and lower halves of a bi-spinor.
pub fn split(u: &BiSpinor4) -> (Spinor2, Spinor2) {
    (CVec([u[0], u[1]]), CVec([u[2], u[3]]))
}
