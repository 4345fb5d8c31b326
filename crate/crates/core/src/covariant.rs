//! Covariant bilinears: the Dirac adjoint, the polarization four-vector
//! `a^μ`, the current `j^μ` and spin expectation values.

use serde::{Deserialize, Serialize};

use crate::error::{DiracError, Result};
use crate::gamma::{gamma_slash, GammaSet, PauliSet, SigmaSet};
use crate::kinematics::{FourVector, MomentumState, Vec3};
use crate::smallmat::{CMat4, Complex, RowVec, DEFAULT_TOL};
use crate::spinors::{BiSpinor4, Spinor2};

/// Pseudo-vector `a^μ` extending the rest-frame spin direction `n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolarizationFourVector(pub FourVector);

/// Expectation value of the spin operator, in units of `ħ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinExpectation(pub Vec3);

/// `ū = u†γ⁰`.
pub fn dirac_adjoint(u: &BiSpinor4) -> RowVec<4> {
    u.dagger().mul_mat(&GammaSet::get().gamma0)
}

/// `ū_left M u_right`.
pub fn bilinear(u_left: &BiSpinor4, m: &CMat4, u_right: &BiSpinor4) -> Complex {
    dirac_adjoint(u_left).dot(&(*m * *u_right))
}

/// Real part of `z`, rejecting an imaginary part above `tol · max(1, |z|)`.
pub fn checked_real(z: Complex, tol: f64) -> Result<f64> {
    if z.im.abs() > tol * z.norm().max(1.0) {
        return Err(DiracError::ImaginaryResidue(z.im));
    }
    Ok(z.re)
}

fn four_vector_bilinear(u: &BiSpinor4, mats: [CMat4; 4]) -> Result<FourVector> {
    let comps = mats.map(|m| checked_real(bilinear(u, &m, u), DEFAULT_TOL));
    let [t, x, y, z] = comps;
    Ok(FourVector::from_array([t?, x?, y?, z?]))
}

/// Closed form `a⁰ = (p·n)/mc`, `a = n + p(p·n)/(m(E + mc²))` with `E = R`.
pub fn polarization_four_vector(state: &MomentumState, n: Vec3) -> Result<PolarizationFourVector> {
    let m = state.m();
    if m <= 0.0 {
        return Err(DiracError::MasslessState);
    }
    let p = state.p();
    let pn = p.dot(n);
    let a0 = pn / (m * state.c());
    let a = n + p * (pn / (m * (state.r() + state.rest_energy())));
    Ok(PolarizationFourVector(FourVector::new(a0, a)))
}

/// `a^μ = ū γ_5γ^μ u / ūu`, the bilinear definition of the polarization vector.
pub fn polarization_from_bilinear(u: &BiSpinor4) -> Result<PolarizationFourVector> {
    let g = GammaSet::get();
    let g5 = g.gamma5_lower();
    let norm = checked_real(bilinear(u, &CMat4::identity(), u), DEFAULT_TOL)?;
    let a = four_vector_bilinear(u, g.upper().map(|gm| g5 * gm))?;
    Ok(PolarizationFourVector(a.scale(1.0 / norm)))
}

/// `‖(γ_5 γ^μ a_μ + I) u‖∞`.
pub fn check_polarization_equation(u: &BiSpinor4, a: &PolarizationFourVector) -> f64 {
    let op = GammaSet::get().gamma5_lower() * gamma_slash(&a.0) + CMat4::identity();
    (op * *u).max_abs()
}

/// `j^μ = ū γ^μ u`.
pub fn current_density(u: &BiSpinor4) -> Result<FourVector> {
    four_vector_bilinear(u, GammaSet::get().upper())
}

/// `p^μ/(mc)`, the normalized current of a positive-energy plane wave.
pub fn expected_current(state: &MomentumState) -> FourVector {
    state.four_momentum().scale(1.0 / (state.m() * state.c()))
}

/// `⟨S⟩ = u†(Σ/2)u / u†u`.
pub fn spin_expectations(u: &BiSpinor4) -> SpinExpectation {
    let norm = u.norm_sqr();
    let [x, y, z] = SigmaSet::get().as_array().map(|s| u.inner(&(s * *u)).re * 0.5 / norm);
    SpinExpectation(Vec3::new(x, y, z))
}

/// `⟨s⟩ = φ†(σ/2)φ / φ†φ`.
pub fn nonrel_spin_expectations(phi: &Spinor2) -> SpinExpectation {
    let norm = phi.norm_sqr();
    let [x, y, z] = PauliSet::get().as_array().map(|s| phi.inner(&(s * *phi)).re * 0.5 / norm);
    SpinExpectation(Vec3::new(x, y, z))
}

/// `⟨S⟩ = (mc²/E)⟨s⟩ + c²p(p·⟨s⟩)/(E(E + mc²))` with `E = R`.
pub fn relate_spin_expectations(state: &MomentumState, s_nonrel: SpinExpectation) -> SpinExpectation {
    let e = state.r();
    let mc2 = state.rest_energy();
    let c = state.c();
    let p = state.p();
    let s = s_nonrel.0;
    SpinExpectation(s * (mc2 / e) + p * (c * c * p.dot(s) / (e * (e + mc2))))
}

/// `(mc²/2E) a` for the `+½` state along `n`; equals `⟨S⟩` for that state.
pub fn spin_from_polarization(state: &MomentumState, a: &PolarizationFourVector) -> SpinExpectation {
    SpinExpectation(a.0.spatial * (state.rest_energy() / (2.0 * state.r())))
}
