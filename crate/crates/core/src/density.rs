//! Energy projectors `Λ± = mc ± p̂`, pure-state polarization density
//! matrices and their 2×2 block structure, and the `Σ^{μν}` decomposition.
//!
//! Density matrices follow the bi-spinor normalization `ūu = 2mc`,
//! `v̄v = −2mc`: `uū = ρ₊` and `vv̄ = −ρ₋`, where
//! `ρ± = ½(mc ± p̂)(I − γ_5â)` and `â` is built from the effective
//! polarization direction `2λ·n`.

use crate::covariant::{dirac_adjoint, polarization_four_vector};
use crate::error::{DiracError, Result};
use crate::gamma::{alpha_dot, big_sigma_dot, gamma_slash, sigma_dot, GammaSet};
use crate::kinematics::{EnergyBranch, EtaParam, FourVector, MomentumState, PolarAngles, Vec3};
use crate::smallmat::{Block2x2, CMat2, CMat4, Complex, I};
use crate::spinors::{flugge_bispinor_scaled, helicity_spinor, BiSpinor4, FluggeScale, Helicity};

/// Allowed deviation of `|n|` from one.
const UNIT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix2 {
    pub matrix: CMat2,
    pub lambda: Helicity,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyProjector {
    pub matrix: CMat4,
    pub branch: EnergyBranch,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix4 {
    pub matrix: CMat4,
    pub branch: EnergyBranch,
    pub lambda: Helicity,
}

fn check_unit(n: Vec3) -> Result<()> {
    let len = n.norm();
    if (len - 1.0).abs() > UNIT_TOL {
        return Err(DiracError::NonUnitDirection(len));
    }
    Ok(())
}

/// `ρ^(λ)(n) = ½(I ± σ·n)`.
pub fn nonrel_density(lambda: Helicity, n: Vec3) -> Result<DensityMatrix2> {
    check_unit(n)?;
    let matrix = (CMat2::identity() + sigma_dot(n) * lambda.sign()) * 0.5;
    Ok(DensityMatrix2 { matrix, lambda })
}

/// `φ^(λ)(φ^(λ))†`, the outer-product form of [`nonrel_density`].
pub fn nonrel_density_outer(lambda: Helicity, angles: &PolarAngles) -> CMat2 {
    let phi = helicity_spinor(lambda, angles);
    phi.outer(&phi.dagger())
}

/// `Λ± = mc ± p̂` with `p^μ = (R/c, p)` on both branches.
pub fn energy_projector(state: &MomentumState, branch: EnergyBranch) -> EnergyProjector {
    let mc = CMat4::identity() * (state.m() * state.c());
    let matrix = mc + gamma_slash(&state.four_momentum()) * branch.sign();
    EnergyProjector { matrix, branch }
}

/// `u ū`.
pub fn outer_adjoint(u: &BiSpinor4) -> CMat4 {
    u.outer(&dirac_adjoint(u))
}

/// `â = γ^μ a_μ` for the polarization vector along `n`.
fn a_slash(state: &MomentumState, n: Vec3) -> Result<CMat4> {
    Ok(gamma_slash(&polarization_four_vector(state, n)?.0))
}

/// `I − γ_5 â(n)`.
pub fn polarization_factor(state: &MomentumState, n: Vec3) -> Result<CMat4> {
    Ok(CMat4::identity() - GammaSet::get().gamma5_lower() * a_slash(state, n)?)
}

/// `ρ± = ½(mc ± p̂)(I − γ_5 â(2λn))`.
pub fn density4(state: &MomentumState, branch: EnergyBranch, lambda: Helicity, n: Vec3) -> Result<DensityMatrix4> {
    check_unit(n)?;
    let lam = energy_projector(state, branch).matrix;
    let matrix = lam * polarization_factor(state, n * lambda.sign())? * 0.5;
    Ok(DensityMatrix4 { matrix, branch, lambda })
}

/// [`density4`] with `n = p/|p|`.
pub fn helicity_density4(state: &MomentumState, branch: EnergyBranch, lambda: Helicity) -> Result<DensityMatrix4> {
    density4(state, branch, lambda, state.direction()?)
}

/// `(structure, ρ)` such that the raw outer product of the η-parametrized
/// column is `structure · diag(ρ, ρ)`.
///
/// Positive energy, `s = 2λ`: `[[1, −sη], [sη, −η²]]` with `ρ^(s)`.
/// Negative energy, `s = −2λ`: `[[η², −sη], [sη, −1]]` with `ρ^(s)`.
pub fn density_block_factors(
    eta: EtaParam,
    angles: &PolarAngles,
    branch: EnergyBranch,
    lambda: Helicity,
) -> (Block2x2, CMat2) {
    let e = eta.value();
    let (s, top, bottom) = match branch {
        EnergyBranch::Pos => (lambda.sign(), 1.0, -e * e),
        EnergyBranch::Neg => (-lambda.sign(), e * e, -1.0),
    };
    let id = CMat2::identity();
    let structure = Block2x2::new(id * top, id * (-s * e), id * (s * e), id * bottom);
    let rho = (id + sigma_dot(angles.direction()) * s) * 0.5;
    (structure, rho)
}

/// `w w̄` for the raw η-parametrized column `w`, in the factorized block form.
pub fn density_block_form(eta: EtaParam, angles: &PolarAngles, branch: EnergyBranch, lambda: Helicity) -> Block2x2 {
    let (structure, rho) = density_block_factors(eta, angles, branch, lambda);
    structure.block_mul(&Block2x2::diagonal(rho))
}

/// `‖assemble(block form) − w w̄‖∞` against the directly computed outer product.
pub fn density_block_residual(eta: EtaParam, angles: &PolarAngles, branch: EnergyBranch, lambda: Helicity) -> f64 {
    let w = flugge_bispinor_scaled(lambda, branch, eta, angles, FluggeScale::Raw).expect("raw scale is infallible");
    density_block_form(eta, angles, branch, lambda).assemble().max_abs_diff(&outer_adjoint(&w))
}

/// `Σ^{μν} = ½[γ^μ, γ^ν]`.
pub fn sigma_tensor(mu: usize, nu: usize) -> Result<CMat4> {
    if mu > 3 || nu > 3 {
        return Err(DiracError::IndexOutOfRange(mu, nu));
    }
    let g = GammaSet::get().upper();
    Ok((g[mu] * g[nu] - g[nu] * g[mu]) * 0.5)
}

/// `Σ^{μν} p_μ a_ν` summed over all index pairs.
pub fn slash_pair(p: &FourVector, a: &FourVector) -> CMat4 {
    let (pl, al) = (p.lower(), a.lower());
    let mut out = CMat4::zero();
    for (mu, pm) in pl.iter().enumerate() {
        for (nu, an) in al.iter().enumerate() {
            if mu != nu {
                out += sigma_tensor(mu, nu).expect("indices in range") * (pm * an);
            }
        }
    }
    out
}

/// `−p₀(α·a) + a₀(α·p) − iΣ·(p × a)`.
pub fn slash_pair_closed(p: &FourVector, a: &FourVector) -> CMat4 {
    alpha_dot(a.spatial) * -p.t + alpha_dot(p.spatial) * a.t - big_sigma_dot(p.spatial.cross(a.spatial)).scale(I)
}

/// Residual of `(mc ± p̂)(I − γ_5â) = mc(I − γ_5â) ± (p̂ + γ_5(p̂a))` for a
/// polarization direction `n_eff`.
pub fn covariant_density_residual(state: &MomentumState, branch: EnergyBranch, n_eff: Vec3) -> Result<f64> {
    let g5 = GammaSet::get().gamma5_lower();
    let a = polarization_four_vector(state, n_eff)?.0;
    let p = state.four_momentum();
    let factor = CMat4::identity() - g5 * gamma_slash(&a);
    let mc = state.m() * state.c();
    let lhs = energy_projector(state, branch).matrix * factor;
    let rhs = factor * mc + (gamma_slash(&p) + g5 * slash_pair(&p, &a)) * branch.sign();
    Ok(lhs.max_abs_diff(&rhs))
}

/// Block factors of `mc ± p̂` and `I − γ_5â(2λn)` in terms of `η` and `n = p/|p|`.
pub fn covariant_block_factors(
    state: &MomentumState,
    branch: EnergyBranch,
    lambda: Helicity,
) -> Result<(Block2x2, Block2x2)> {
    let e = state.to_eta()?.value();
    let n = state.direction()?;
    let sn = sigma_dot(n);
    let id = CMat2::identity();
    let k = 2.0 * state.m() * state.c() / (1.0 - e * e);
    let projector = match branch {
        EnergyBranch::Pos => Block2x2::new(id, sn * -e, sn * e, id * (-e * e)).scale_re(k),
        EnergyBranch::Neg => Block2x2::new(id * (e * e), sn * -e, sn * e, -id).scale_re(-k),
    };
    let s = lambda.sign();
    let (d, q) = (1.0 - e * e, 1.0 + e * e);
    let polarization =
        Block2x2::new(id * d + sn * (s * q), id * (-2.0 * s * e), id * (2.0 * s * e), id * d - sn * (s * q))
            .scale_re(1.0 / d);
    Ok((projector, polarization))
}

/// Largest residual among the covariant identity, the block-product route,
/// and the factorized block form, for the helicity state along `p`.
pub fn covariant_density_identity(state: &MomentumState, branch: EnergyBranch, lambda: Helicity) -> Result<f64> {
    let n = state.direction()?;
    let covariant = covariant_density_residual(state, branch, n * lambda.sign())?;
    let lhs = energy_projector(state, branch).matrix * polarization_factor(state, n * lambda.sign())?;
    let (proj, pol) = covariant_block_factors(state, branch, lambda)?;
    let block_route = proj.block_mul(&pol).assemble().max_abs_diff(&lhs);
    let eta = state.to_eta()?;
    let k = 2.0 * state.m() * state.c() / (1.0 - eta.value().powi(2));
    let structured = density_block_form(eta, &state.angles()?, branch, lambda).assemble() * (2.0 * k * branch.sign());
    let structure_route = structured.max_abs_diff(&lhs);
    Ok(covariant.max(block_route).max(structure_route))
}

/// Explicit η-parametrized matrices for the helicity states along `n(θ, φ)`.
pub mod explicit {
    use super::*;

    struct Trig {
        c2: f64,
        s2: f64,
        half_sin: f64,
        cos: f64,
        sin: f64,
        em: Complex,
        ep: Complex,
    }

    fn trig(angles: &PolarAngles) -> Trig {
        let (th, ph) = (angles.theta(), angles.phi());
        let (s, c) = (th / 2.0).sin_cos();
        Trig {
            c2: c * c,
            s2: s * s,
            half_sin: 0.5 * th.sin(),
            cos: th.cos(),
            sin: th.sin(),
            em: Complex::from_polar(1.0, -ph),
            ep: Complex::from_polar(1.0, ph),
        }
    }

    fn r(x: f64) -> Complex {
        Complex::new(x, 0.0)
    }

    /// `mc + p̂` written out in `η, θ, φ`.
    pub fn mc_plus_p_slash(m: f64, c: f64, eta: EtaParam, angles: &PolarAngles) -> CMat4 {
        let e = eta.value();
        let t = trig(angles);
        CMat4::from_rows([
            [r(1.0), r(0.0), r(-e * t.cos), t.em * (-e * t.sin)],
            [r(0.0), r(1.0), t.ep * (-e * t.sin), r(e * t.cos)],
            [r(e * t.cos), t.em * (e * t.sin), r(-e * e), r(0.0)],
            [t.ep * (e * t.sin), r(-e * t.cos), r(0.0), r(-e * e)],
        ]) * (2.0 * m * c / (1.0 - e * e))
    }

    /// `mc − p̂` written out in `η, θ, φ`.
    pub fn mc_minus_p_slash(m: f64, c: f64, eta: EtaParam, angles: &PolarAngles) -> CMat4 {
        let e = eta.value();
        let t = trig(angles);
        CMat4::from_rows([
            [r(e * e), r(0.0), r(-e * t.cos), t.em * (-e * t.sin)],
            [r(0.0), r(e * e), t.ep * (-e * t.sin), r(e * t.cos)],
            [r(e * t.cos), t.em * (e * t.sin), r(-1.0), r(0.0)],
            [t.ep * (e * t.sin), r(-e * t.cos), r(0.0), r(-1.0)],
        ]) * (-2.0 * m * c / (1.0 - e * e))
    }

    /// `((1 − η²)/2)(I − γ_5â)` for `λ = +½`.
    pub fn polarization_factor_plus(eta: EtaParam, angles: &PolarAngles) -> CMat4 {
        let e = eta.value();
        let t = trig(angles);
        let q = 1.0 + e * e;
        let d1 = t.c2 - e * e * t.s2;
        let d2 = t.s2 - e * e * t.c2;
        CMat4::from_rows([
            [r(d1), t.em * (q * t.half_sin), r(-e), r(0.0)],
            [t.ep * (q * t.half_sin), r(d2), r(0.0), r(-e)],
            [r(e), r(0.0), r(d2), t.em * (-q * t.half_sin)],
            [r(0.0), r(e), t.ep * (-q * t.half_sin), r(d1)],
        ])
    }

    /// `((1 − η²)/2)(I + γ_5â)`, the `λ = −½` counterpart.
    pub fn polarization_factor_minus(eta: EtaParam, angles: &PolarAngles) -> CMat4 {
        let e = eta.value();
        let t = trig(angles);
        let q = 1.0 + e * e;
        let d1 = t.c2 - e * e * t.s2;
        let d2 = t.s2 - e * e * t.c2;
        CMat4::from_rows([
            [r(d2), t.em * (-q * t.half_sin), r(e), r(0.0)],
            [t.ep * (-q * t.half_sin), r(d1), r(0.0), r(e)],
            [r(-e), r(0.0), r(d1), t.em * (q * t.half_sin)],
            [r(0.0), r(-e), t.ep * (q * t.half_sin), r(d2)],
        ])
    }

    /// `(1 − η²)` times the raw outer product `w w̄` of the `λ = +½`, positive-energy column.
    pub fn positive_density(eta: EtaParam, angles: &PolarAngles) -> CMat4 {
        let e = eta.value();
        let t = trig(angles);
        let h = t.half_sin;
        CMat4::from_rows([
            [r(t.c2), t.em * h, r(-e * t.c2), t.em * (-e * h)],
            [t.ep * h, r(t.s2), t.ep * (-e * h), r(-e * t.s2)],
            [r(e * t.c2), t.em * (e * h), r(-e * e * t.c2), t.em * (-e * e * h)],
            [t.ep * (e * h), r(e * t.s2), t.ep * (-e * e * h), r(-e * e * t.s2)],
        ]) * (1.0 - e * e)
    }

    /// `(1 − η²)` times the raw outer product `w w̄` of the `λ = −½`, negative-energy column.
    pub fn negative_density(eta: EtaParam, angles: &PolarAngles) -> CMat4 {
        let e = eta.value();
        let t = trig(angles);
        let h = t.half_sin;
        CMat4::from_rows([
            [r(e * e * t.c2), t.em * (e * e * h), r(-e * t.c2), t.em * (-e * h)],
            [t.ep * (e * e * h), r(e * e * t.s2), t.ep * (-e * h), r(-e * t.s2)],
            [r(e * t.c2), t.em * (e * h), r(-t.c2), t.em * (-h)],
            [t.ep * (e * h), r(e * t.s2), t.ep * (-h), r(-t.s2)],
        ]) * (1.0 - e * e)
    }
}
