//! Pauli, Dirac and covariant gamma matrices in the standard (Dirac)
//! representation, with the metric `diag(1, −1, −1, −1)`.
//!
//! The upper-index `γ⁵ = iγ⁰γ¹γ²γ³` and the lowered `γ_5 = −γ⁵` are both
//! provided; formulas that are written with the lowered symbol must use
//! [`GammaSet::gamma5_lower`].

use std::sync::OnceLock;

use crate::error::{DiracError, Result};
use crate::kinematics::{FourVector, MomentumState, Vec3};
use crate::smallmat::{Block2x2, CMat2, CMat4, Complex, I, ONE, ZERO};

pub use crate::smallmat::{anticommutator, commutator};

/// Minkowski metric `g^{μν} = g_{μν}`.
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliSet {
    pub sigma1: CMat2,
    pub sigma2: CMat2,
    pub sigma3: CMat2,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiracSet {
    pub alpha1: CMat4,
    pub alpha2: CMat4,
    pub alpha3: CMat4,
    pub beta: CMat4,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaSet {
    pub gamma0: CMat4,
    pub gamma1: CMat4,
    pub gamma2: CMat4,
    pub gamma3: CMat4,
    /// Upper-index `γ⁵`.
    pub gamma5: CMat4,
}

/// Block-diagonal spin matrices `Σ_q = diag(σ_q, σ_q)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SigmaSet {
    pub sigma1: CMat4,
    pub sigma2: CMat4,
    pub sigma3: CMat4,
}

impl PauliSet {
    pub fn get() -> &'static Self {
        static SET: OnceLock<PauliSet> = OnceLock::new();
        SET.get_or_init(|| Self {
            sigma1: CMat2::from_rows([[ZERO, ONE], [ONE, ZERO]]),
            sigma2: CMat2::from_rows([[ZERO, -I], [I, ZERO]]),
            sigma3: CMat2::from_rows([[ONE, ZERO], [ZERO, -ONE]]),
        })
    }

    pub fn as_array(&self) -> [CMat2; 3] {
        [self.sigma1, self.sigma2, self.sigma3]
    }
}

impl DiracSet {
    pub fn get() -> &'static Self {
        static SET: OnceLock<DiracSet> = OnceLock::new();
        SET.get_or_init(|| {
            let s = PauliSet::get();
            let z = CMat2::zero();
            let alpha = |x: CMat2| Block2x2::new(z, x, x, z).assemble();
            Self {
                alpha1: alpha(s.sigma1),
                alpha2: alpha(s.sigma2),
                alpha3: alpha(s.sigma3),
                beta: Block2x2::new(CMat2::identity(), z, z, -CMat2::identity()).assemble(),
            }
        })
    }

    pub fn alphas(&self) -> [CMat4; 3] {
        [self.alpha1, self.alpha2, self.alpha3]
    }

    /// `α₁, α₂, α₃, β`.
    pub fn as_array(&self) -> [CMat4; 4] {
        [self.alpha1, self.alpha2, self.alpha3, self.beta]
    }
}

impl GammaSet {
    /// Builds `γ⁰ = β`, `γᵏ = βαₖ` and `γ⁵` from the product, checking it against the block form.
    pub fn get() -> &'static Self {
        static SET: OnceLock<GammaSet> = OnceLock::new();
        SET.get_or_init(|| {
            let d = DiracSet::get();
            let [g1, g2, g3] = d.alphas().map(|a| d.beta * a);
            let gamma5 = (d.beta * g1 * g2 * g3).scale(I);
            let z = CMat2::zero();
            let block = Block2x2::new(z, CMat2::identity(), CMat2::identity(), z).assemble();
            assert_eq!(gamma5, block, "iγ⁰γ¹γ²γ³ must equal [[0, 1], [1, 0]]");
            Self { gamma0: d.beta, gamma1: g1, gamma2: g2, gamma3: g3, gamma5 }
        })
    }

    /// `γ^μ` for μ = 0..3.
    pub fn upper(&self) -> [CMat4; 4] {
        [self.gamma0, self.gamma1, self.gamma2, self.gamma3]
    }

    /// Lower-index `γ_5 = −γ⁵`.
    pub fn gamma5_lower(&self) -> CMat4 {
        -self.gamma5
    }
}

impl SigmaSet {
    pub fn get() -> &'static Self {
        static SET: OnceLock<SigmaSet> = OnceLock::new();
        SET.get_or_init(|| {
            let s = PauliSet::get();
            Self {
                sigma1: Block2x2::diagonal(s.sigma1).assemble(),
                sigma2: Block2x2::diagonal(s.sigma2).assemble(),
                sigma3: Block2x2::diagonal(s.sigma3).assemble(),
            }
        })
    }

    pub fn as_array(&self) -> [CMat4; 3] {
        [self.sigma1, self.sigma2, self.sigma3]
    }
}

/// Levi-Civita symbol `e_{qrs}` with indices in `1..=3`; zero for repeated or out-of-range indices.
pub fn levi_civita(q: usize, r: usize, s: usize) -> i32 {
    match (q, r, s) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
        _ => 0,
    }
}

/// `v₁σ₁ + v₂σ₂ + v₃σ₃`.
pub fn sigma_dot(v: Vec3) -> CMat2 {
    let s = PauliSet::get();
    s.sigma1 * v.x + s.sigma2 * v.y + s.sigma3 * v.z
}

/// `v₁α₁ + v₂α₂ + v₃α₃`.
pub fn alpha_dot(v: Vec3) -> CMat4 {
    let d = DiracSet::get();
    d.alpha1 * v.x + d.alpha2 * v.y + d.alpha3 * v.z
}

/// `v₁Σ₁ + v₂Σ₂ + v₃Σ₃`.
pub fn big_sigma_dot(v: Vec3) -> CMat4 {
    let s = SigmaSet::get();
    s.sigma1 * v.x + s.sigma2 * v.y + s.sigma3 * v.z
}

/// Feynman slash `γ^μ a_μ = a⁰γ⁰ − a·γ`.
pub fn gamma_slash(a: &FourVector) -> CMat4 {
    let g = GammaSet::get();
    g.gamma0 * a.t - g.gamma1 * a.spatial.x - g.gamma2 * a.spatial.y - g.gamma3 * a.spatial.z
}

/// Dirac Hamiltonian `H = cα·p + mc²β`.
pub fn hamiltonian(state: &MomentumState) -> CMat4 {
    let c = state.constants().c;
    alpha_dot(state.p() * c) + DiracSet::get().beta * (state.m() * c * c)
}

/// Helicity operator `½(Σ·p)/|p|`.
pub fn helicity_operator(state: &MomentumState) -> Result<CMat4> {
    let p = state.p();
    let norm = p.norm();
    if norm == 0.0 {
        return Err(DiracError::ZeroMomentum);
    }
    Ok(big_sigma_dot(p) * (0.5 / norm))
}

/// `2ic (α × p)_q`, the commutator `[H, Σ_q]` assembled from components.
pub fn hamiltonian_spin_commutator(state: &MomentumState, q: usize) -> CMat4 {
    let alphas = DiracSet::get().alphas();
    let p = state.p().to_array();
    let c = state.constants().c;
    let mut out = CMat4::zero();
    for r in 1..=3 {
        for s in 1..=3 {
            let e = levi_civita(q, r, s);
            if e != 0 {
                out += alphas[r - 1] * (e as f64 * p[s - 1]);
            }
        }
    }
    out.scale(Complex::new(0.0, 2.0 * c))
}
