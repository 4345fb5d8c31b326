//! The identity registry. Each entry reduces one identity to its worst
//! residual over the grid (or over seeded random samples).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{nan_max, Context, Suite};
use crate::covariant::{
    bilinear, check_polarization_equation, current_density, dirac_adjoint, expected_current, nonrel_spin_expectations,
    polarization_four_vector, polarization_from_bilinear, relate_spin_expectations, spin_expectations,
    spin_from_polarization,
};
use crate::density::{
    covariant_density_identity, density_block_residual, energy_projector, explicit, helicity_density4, nonrel_density,
    nonrel_density_outer, outer_adjoint, polarization_factor, slash_pair, slash_pair_closed,
};
use crate::error::Result;
use crate::fermi::{
    eigen_signature, fermi_bispinors_corrected, fermi_bispinors_original, fermi_gamma_set, fermi_projectors,
    fermi_seven_matrices, fermi_sigma_primes, stacked_determinant,
};
use crate::gamma::{
    anticommutator, big_sigma_dot, commutator, gamma_slash, hamiltonian, hamiltonian_spin_commutator,
    helicity_operator, levi_civita, sigma_dot, DiracSet, GammaSet, PauliSet, SigmaSet, METRIC,
};
use crate::kinematics::{minkowski_dot, EnergyBranch, EtaParam, MomentumState, PhysicalConstants, PolarAngles, Vec3};
use crate::smallmat::{det4, inverse4, schur_det, Block2x2, CMat, CMat2, CMat4, Complex, I};
use crate::spinors::{
    bispinor_block, bispinor_block_raw, boost_bispinor, boost_prefactor, charge_conjugate, energy_residual,
    flugge_bispinor, flugge_matrix, helicity_basis, helicity_bispinor, helicity_spinor, phi_matrix, phi_tilde_matrix,
    spin_basis_matrix, Helicity, NormalizationConvention, Spinor2,
};

pub(super) struct CheckDef {
    pub id: &'static str,
    pub suite: Suite,
    pub description: &'static str,
    pub run: fn(&Context) -> f64,
    /// Linear-dependence check, evaluated with a floor on the tolerance.
    pub dependence: bool,
    /// Set for known misstatements: evaluated and reported, never a failure.
    pub deviation: Option<&'static str>,
}

const fn def(id: &'static str, suite: Suite, description: &'static str, run: fn(&Context) -> f64) -> CheckDef {
    CheckDef { id, suite, description, run, dependence: false, deviation: None }
}

const fn deviation(
    id: &'static str,
    suite: Suite,
    description: &'static str,
    note: &'static str,
    run: fn(&Context) -> f64,
) -> CheckDef {
    CheckDef { id, suite, description, run, dependence: false, deviation: Some(note) }
}

use Suite::{Algebra, Covariant, Density, Fermi, Spinors};

pub(super) static REGISTRY: &[CheckDef] = &[
    // algebra
    def(
        "algebra.alpha_beta_anticommutators",
        Algebra,
        "{αᵢ, αⱼ} = 2δᵢⱼ, {αᵢ, β} = 0, β² = I",
        alpha_beta_anticommutators,
    ),
    def(
        "algebra.alpha_spin_commutators",
        Algebra,
        "[α_r, Σ_q] = 2i e_rqs α_s and [β, Σ_q] = 0",
        alpha_spin_commutators,
    ),
    def(
        "algebra.block_mul_oracle",
        Algebra,
        "block product equals dense product (1000 random pairs)",
        block_mul_oracle,
    ),
    def("algebra.clifford", Algebra, "{γ^μ, γ^ν} = 2g^μν I", clifford),
    def("algebra.dagger_antihomomorphism", Algebra, "(XY)† = Y†X† and X†† = X", dagger_antihomomorphism),
    def("algebra.det_multiplicative", Algebra, "det(XY) = det X det Y, relative", det_multiplicative),
    def("algebra.hamiltonian_helicity_commute", Algebra, "[H, Σ·p] = 0", hamiltonian_helicity_commute),
    def("algebra.hamiltonian_spin_commutator", Algebra, "[H, Σ_q] = 2ic(α × p)_q", hamiltonian_spin_commutator_check),
    def("algebra.pauli_product", Algebra, "(σ·p)(σ·n) = i(p × n)·σ + p·n", pauli_product),
    def("algebra.pauli_sandwich", Algebra, "(σ·p)σ_k(σ·p) = 2p_k(σ·p) − p²σ_k", pauli_sandwich),
    def(
        "algebra.schur_determinant",
        Algebra,
        "Schur-complement determinant equals cofactor determinant, relative",
        schur_determinant,
    ),
    def("algebra.spin_from_gamma5", Algebra, "Σ_q = α_q γ⁵", spin_from_gamma5),
    // kinematics and spinors
    def("kinematics.eta_rapidity", Spinors, "η = tanh(ϑ/2)", eta_rapidity),
    def("kinematics.eta_round_trip", Spinors, "η → p → η is the identity", eta_round_trip),
    def("kinematics.on_shell", Spinors, "(E/c)² − p² − m²c² = 0 for every constructor, relative", on_shell),
    def("kinematics.unit_direction", Spinors, "|p/|p|| = 1", unit_direction),
    deviation(
        "kinematics.polar_component",
        Spinors,
        "third component of n(θ, φ): printed cos φ versus implemented cos θ",
        "n₃ = cos φ is a misprint; n₃ = cos θ is implemented, as the helicity spinors require",
        polar_component,
    ),
    def("spinors.adjoint_orthogonality", Spinors, "ū^(λ) v^(λ′) = 0, relative to 2mc", adjoint_orthogonality),
    def("spinors.boost_equivalence", Spinors, "boosted rest spinor equals C times the block form", boost_equivalence),
    def("spinors.charge_conjugation", Spinors, "iγ²(v₊^(λ))* = v₋^(λ)", charge_conjugation),
    def(
        "spinors.dirac_block_determinant",
        Spinors,
        "Schur determinant of H − E equals (E² − c²p² − m²c⁴)², relative",
        dirac_block_determinant,
    ),
    def(
        "spinors.eta_columns",
        Spinors,
        "first two columns of V equal the η-parametrized box states (second negated)",
        eta_columns,
    ),
    def("spinors.hamiltonian_factorization", Spinors, "H = R Ṽ V⁻¹", hamiltonian_factorization),
    def("spinors.helicity_completeness", Spinors, "Σ_λ φ^(λ)φ^(λ)† = I", helicity_completeness),
    def(
        "spinors.nonrel_limit",
        Spinors,
        "‖U − diag(1, 1, −1, −1)‖ decreases and stays below 3/c for c = 10, 100, 1000",
        nonrel_limit,
    ),
    def("spinors.sigma_n_factorization", Spinors, "σ·n = Φ̃Φ†", sigma_n_factorization),
    def("spinors.u_determinant", Spinors, "|det U| = 1 and |det V| = 1", u_determinant),
    def("spinors.u_eigen", Spinors, "H u⁽ᵏ⁾ = E_k u⁽ᵏ⁾ for the columns of U", u_eigen),
    def("spinors.u_involution", Spinors, "U = U† and U² = I", u_involution),
    def("spinors.v_eigen", Spinors, "H v⁽ᵏ⁾ = E_k v⁽ᵏ⁾ for the columns of V", v_eigen),
    def("spinors.v_helicity", Spinors, "Λ̂ v⁽ᵏ⁾ = λ_k v⁽ᵏ⁾ with λ = (½, −½, ½, −½)", v_helicity),
    def("spinors.v_unitary", Spinors, "V†V = I", v_unitary),
    deviation(
        "spinors.v_gamma0_sandwich",
        Spinors,
        "γ⁰V†γ⁰ as the inverse of V",
        "V⁻¹ = γ⁰V†γ⁰ does not hold; V is unitary, so V⁻¹ = V†",
        v_gamma0_sandwich,
    ),
    // covariant observables
    def("covariant.bispinor_norm", Covariant, "u†u = 2E/(E + mc²) φ†φ for the raw block bi-spinor", bispinor_norm),
    def("covariant.current", Covariant, "j^μ/(ūu) = p^μ/mc", current),
    def(
        "covariant.polarization_closed_vs_bilinear",
        Covariant,
        "closed-form a^μ equals ūγ_5γ^μu/ūu over (η, θ_n, θ_p)",
        polarization_closed_vs_bilinear,
    ),
    def("covariant.polarization_equation", Covariant, "(γ_5 â + I)u = 0 for u†u = 1", polarization_equation),
    def("covariant.polarization_norms", Covariant, "p·a = 0 and a·a = −1", polarization_norms),
    def("covariant.spin_bound", Covariant, "|⟨S⟩| ≤ |⟨s⟩|, with equality for spin along p", spin_bound),
    def("covariant.spin_dual_path", Covariant, "⟨S⟩ from u, from ⟨s⟩, and from a^μ agree", spin_dual_path),
    // density matrices
    def("density.block_forms", Density, "raw w w̄ equals its factorized block form", block_forms),
    def(
        "density.covariant_decomposition",
        Density,
        "(mc ± p̂)(I − γ_5â) by the Σ^μν expansion and by blocks",
        covariant_decomposition,
    ),
    def("density.explicit_densities", Density, "written-out ρ₊ and ρ₋ in η, θ, φ", explicit_densities),
    def(
        "density.explicit_polarization_factors",
        Density,
        "written-out I ∓ γ_5â in η, θ, φ",
        explicit_polarization_factors,
    ),
    def("density.explicit_projectors", Density, "written-out mc ± p̂ in η, θ, φ", explicit_projectors),
    def("density.eta_determinant", Density, "det of the four η-parametrized columns = (1 − η²)²", eta_determinant),
    def("density.nonrel_density", Density, "½(I ± σ·n) = φφ†", nonrel_density_check),
    def("density.outer_product", Density, "uū = ρ₊ and vv̄ = −ρ₋", outer_product),
    def("density.p_slash_square", Density, "p̂² = m²c² I", p_slash_square),
    def("density.projector_algebra", Density, "Λ₊ + Λ₋ = 2mc, Λ₊Λ₋ = 0, Λ±² = 2mcΛ±", projector_algebra),
    def("density.slash_pair", Density, "Σ^μν p_μ a_ν equals its closed form", slash_pair_check),
    def("density.trace", Density, "tr ρ± = 2mc and tr(uū) = ūu", density_trace),
    deviation(
        "density.projector_trace",
        Density,
        "tr Λ₊ against the stated value 2mc",
        "Tr Λ₊ = 2mc does not hold; tr(mc + p̂) = 4mc, and 2mc is the trace of ρ₊",
        projector_trace,
    ),
    // Fermi audit
    def("fermi.alpha_relation", Fermi, "αₖ = iβγₖF equals the standard αₖ", fermi_alpha_relation),
    def("fermi.corrected_determinant", Fermi, "|det| of the corrected bi-spinors = 1", fermi_corrected_determinant),
    def("fermi.corrected_eigen", Fermi, "corrected bi-spinors have energies (R, R, −R, −R)", fermi_corrected_eigen),
    def("fermi.eigenvalue_signature", Fermi, "β, αₖ, γₖF have tr = 0, tr M² = 4, det = 1", fermi_eigenvalue_signature),
    def("fermi.gamma_clifford", Fermi, "{γ_μF, γ_νF} = 2δ_μν", fermi_gamma_clifford),
    CheckDef {
        id: "fermi.original_dependent",
        suite: Fermi,
        description: "original four bi-spinors have zero determinant",
        run: fermi_original_dependent,
        dependence: true,
        deviation: None,
    },
    def(
        "fermi.original_positive_energy",
        Fermi,
        "all four original bi-spinors satisfy H u = +R u",
        fermi_original_positive_energy,
    ),
    def(
        "fermi.projector_action",
        Fermi,
        "𝒫 and 𝒩 keep and kill the right corrected bi-spinors",
        fermi_projector_action,
    ),
    def("fermi.projector_algebra", Fermi, "𝒫 + 𝒩 = I, 𝒫² = 𝒫, 𝒩² = 𝒩, 𝒫𝒩 = 0", fermi_projector_algebra),
    def("fermi.sigma_prime", Fermi, "σ′ = (1/i)αα products equal Σ", fermi_sigma_prime),
];

fn worst(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, nan_max)
}

fn or_inf(r: Result<f64>) -> f64 {
    r.unwrap_or(f64::INFINITY)
}

fn rng(ctx: &Context, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(ctx.grid.seed ^ salt)
}

fn random_vec3(rng: &mut ChaCha8Rng) -> Vec3 {
    Vec3::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
}

fn random_mat<const N: usize>(rng: &mut ChaCha8Rng) -> CMat<N> {
    CMat::from_fn(|_, _| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

fn diag4(d: [f64; 4]) -> CMat4 {
    CMat4::diag(d.map(|x| Complex::new(x, 0.0)))
}

/// Spin direction for a grid point, deliberately not parallel to `p`.
fn tilted(a: &PolarAngles) -> Vec3 {
    PolarAngles::new(a.theta() + 0.7, a.phi() + 2.1).direction()
}

fn plus_along(n: Vec3) -> Spinor2 {
    helicity_spinor(Helicity::Plus, &PolarAngles::of(n).expect("unit vector"))
}

const BRANCHES_AND_HELICITIES: [(EnergyBranch, Helicity); 4] = [
    (EnergyBranch::Pos, Helicity::Plus),
    (EnergyBranch::Pos, Helicity::Minus),
    (EnergyBranch::Neg, Helicity::Plus),
    (EnergyBranch::Neg, Helicity::Minus),
];

// ---- algebra

fn clifford(_: &Context) -> f64 {
    let g = GammaSet::get().upper();
    worst((0..4).flat_map(|mu| (0..4).map(move |nu| (mu, nu))).map(|(mu, nu)| {
        let diag = if mu == nu { 2.0 * METRIC[mu] } else { 0.0 };
        anticommutator(&g[mu], &g[nu]).max_abs_diff(&(CMat4::identity() * diag))
    }))
}

fn alpha_beta_anticommutators(_: &Context) -> f64 {
    let d = DiracSet::get();
    let a = d.alphas();
    let id = CMat4::identity();
    let mut out = (d.beta * d.beta).max_abs_diff(&id);
    for i in 0..3 {
        out = out.max(anticommutator(&a[i], &d.beta).max_abs());
        for j in 0..3 {
            let expected = if i == j { id * 2.0 } else { CMat4::zero() };
            out = out.max(anticommutator(&a[i], &a[j]).max_abs_diff(&expected));
        }
    }
    out
}

fn alpha_spin_commutators(_: &Context) -> f64 {
    let a = DiracSet::get().alphas();
    let beta = DiracSet::get().beta;
    let s = SigmaSet::get().as_array();
    let mut out = 0.0f64;
    for r in 1..=3 {
        for q in 1..=3 {
            let mut expected = CMat4::zero();
            for t in 1..=3 {
                expected += a[t - 1].scale(I * (2.0 * levi_civita(r, q, t) as f64));
            }
            out = out.max(commutator(&a[r - 1], &s[q - 1]).max_abs_diff(&expected));
        }
        out = out.max(commutator(&beta, &s[r - 1]).max_abs());
    }
    out
}

fn spin_from_gamma5(_: &Context) -> f64 {
    let g5 = GammaSet::get().gamma5;
    let a = DiracSet::get().alphas();
    let s = SigmaSet::get().as_array();
    worst((0..3).map(|q| s[q].max_abs_diff(&(a[q] * g5))))
}

fn hamiltonian_helicity_commute(ctx: &Context) -> f64 {
    worst(ctx.points.iter().map(|pt| {
        let h = hamiltonian(&pt.state);
        commutator(&h, &big_sigma_dot(pt.state.p())).max_abs()
    }))
}

fn hamiltonian_spin_commutator_check(ctx: &Context) -> f64 {
    let s = SigmaSet::get().as_array();
    worst(ctx.points.iter().flat_map(|pt| {
        let h = hamiltonian(&pt.state);
        (1..=3).map(move |q| commutator(&h, &s[q - 1]).max_abs_diff(&hamiltonian_spin_commutator(&pt.state, q)))
    }))
}

fn pauli_product(ctx: &Context) -> f64 {
    let mut rng = rng(ctx, 1);
    worst((0..256).map(|_| {
        let (p, n) = (random_vec3(&mut rng), random_vec3(&mut rng));
        let rhs = sigma_dot(p.cross(n)).scale(I) + CMat2::identity() * p.dot(n);
        (sigma_dot(p) * sigma_dot(n)).max_abs_diff(&rhs)
    }))
}

fn pauli_sandwich(ctx: &Context) -> f64 {
    let s = PauliSet::get().as_array();
    let mut rng = rng(ctx, 2);
    worst((0..256).flat_map(|_| {
        let p = random_vec3(&mut rng);
        let sp = sigma_dot(p);
        let pk = p.to_array();
        (0..3).map(move |k| (sp * s[k] * sp).max_abs_diff(&(sp * (2.0 * pk[k]) - s[k] * p.dot(p))))
    }))
}

fn block_mul_oracle(ctx: &Context) -> f64 {
    let mut rng = rng(ctx, 3);
    let block =
        |rng: &mut ChaCha8Rng| Block2x2::new(random_mat(rng), random_mat(rng), random_mat(rng), random_mat(rng));
    worst((0..1000).map(|_| {
        let (x, y) = (block(&mut rng), block(&mut rng));
        x.block_mul(&y).assemble().max_abs_diff(&(x.assemble() * y.assemble()))
    }))
}

fn dagger_antihomomorphism(ctx: &Context) -> f64 {
    let mut rng = rng(ctx, 4);
    worst((0..200).map(|_| {
        let x: CMat4 = random_mat(&mut rng);
        let y: CMat4 = random_mat(&mut rng);
        (x * y).dagger().max_abs_diff(&(y.dagger() * x.dagger())).max(x.dagger().dagger().max_abs_diff(&x))
    }))
}

fn det_multiplicative(ctx: &Context) -> f64 {
    let mut rng = rng(ctx, 5);
    worst((0..200).map(|_| {
        let x: CMat4 = random_mat(&mut rng);
        let y: CMat4 = random_mat(&mut rng);
        let (dx, dy) = (det4(&x), det4(&y));
        (det4(&(x * y)) - dx * dy).norm() / (dx.norm() * dy.norm()).max(1.0)
    }))
}

fn schur_determinant(ctx: &Context) -> f64 {
    let mut rng = rng(ctx, 6);
    worst((0..200).map(|k| {
        let a: CMat2 = random_mat(&mut rng);
        let b: CMat2 = random_mat(&mut rng);
        let d: CMat2 = random_mat(&mut rng);
        // A polynomial in A commutes with A; alternate which pair commutes.
        let poly = |m: CMat2, rng: &mut ChaCha8Rng| {
            m * Complex::new(rng.gen_range(-1.0..1.0), 0.3) + CMat2::identity() * rng.gen_range(-1.0..1.0)
        };
        let blocks = if k % 2 == 0 {
            Block2x2::new(a, b, poly(a, &mut rng), d)
        } else {
            Block2x2::new(a, b, poly(d, &mut rng), d)
        };
        let dense = det4(&blocks.assemble());
        or_inf(schur_det(&blocks, 1e-9).map(|s| (s - dense).norm() / dense.norm().max(1.0)))
    }))
}

// ---- kinematics

fn on_shell(ctx: &Context) -> f64 {
    worst(ctx.points.iter().map(|pt| {
        let s = pt.state;
        let scale = (s.r() / s.c()).powi(2);
        let via_rapidity = or_inf(s.rapidity()).max(0.0);
        let paths = [
            Ok(s),
            MomentumState::from_rapidity(s.m(), s.constants(), via_rapidity, pt.angles),
            MomentumState::new(s.m(), s.constants(), s.p()),
        ];
        worst(paths.into_iter().map(|st| or_inf(st.map(|st| st.on_shell_residual().abs() / scale))))
    }))
}

fn eta_rapidity(ctx: &Context) -> f64 {
    worst(ctx.points.iter().map(|pt| or_inf(pt.state.rapidity().map(|t| ((t / 2.0).tanh() - pt.eta.value()).abs()))))
}

fn eta_round_trip(ctx: &Context) -> f64 {
    worst(ctx.points.iter().map(|pt| or_inf(pt.state.to_eta().map(|e| (e.value() - pt.eta.value()).abs()))))
}

fn unit_direction(ctx: &Context) -> f64 {
    worst(ctx.moving().map(|pt| or_inf(pt.state.direction().map(|n| (n.norm() - 1.0).abs()))))
}

fn polar_component(ctx: &Context) -> f64 {
    worst(ctx.points.iter().map(|pt| (pt.angles.phi().cos() - pt.angles.direction().z).abs()))
}

// ---- spinors

/// Grid states plus the rest state.
fn states_with_rest(ctx: &Context) -> Vec<MomentumState> {
    let rest = MomentumState::new(ctx.grid.mass, ctx.grid.constants(), Vec3::zero()).expect("validated grid");
    std::iter::once(rest).chain(ctx.points.iter().map(|p| p.state)).collect()
}

const COLUMN_BRANCHES: [EnergyBranch; 4] = [EnergyBranch::Pos, EnergyBranch::Pos, EnergyBranch::Neg, EnergyBranch::Neg];

fn u_eigen(ctx: &Context) -> f64 {
    worst(states_with_rest(ctx).iter().flat_map(|s| {
        let u = spin_basis_matrix(s);
        (0..4).map(move |j| energy_residual(&u.column(j), s, COLUMN_BRANCHES[j]))
    }))
}

fn u_involution(ctx: &Context) -> f64 {
    worst(states_with_rest(ctx).iter().map(|s| {
        let u = spin_basis_matrix(s);
        u.max_abs_diff(&u.dagger()).max((u * u).max_abs_diff(&CMat4::identity()))
    }))
}

fn u_determinant(ctx: &Context) -> f64 {
    let u = worst(states_with_rest(ctx).iter().map(|s| (det4(&spin_basis_matrix(s)).norm() - 1.0).abs()));
    let v = worst(ctx.moving().map(|pt| or_inf(helicity_basis(&pt.state).map(|b| (det4(&b.v).norm() - 1.0).abs()))));
    u.max(v)
}

fn v_eigen(ctx: &Context) -> f64 {
    worst(ctx.moving().map(|pt| {
        or_inf(
            helicity_basis(&pt.state)
                .map(|b| worst((0..4).map(|j| energy_residual(&b.v.column(j), &pt.state, COLUMN_BRANCHES[j])))),
        )
    }))
}

fn v_helicity(ctx: &Context) -> f64 {
    worst(ctx.moving().map(|pt| {
        or_inf(helicity_basis(&pt.state).and_then(|b| {
            let lam = helicity_operator(&pt.state)?;
            Ok(worst([0.5, -0.5, 0.5, -0.5].into_iter().enumerate().map(|(j, l)| {
                let col = b.v.column(j);
                (lam * col).max_abs_diff(&(col * l))
            })))
        }))
    }))
}

fn v_unitary(ctx: &Context) -> f64 {
    worst(
        ctx.moving()
            .map(|pt| or_inf(helicity_basis(&pt.state).map(|b| (b.v.dagger() * b.v).max_abs_diff(&CMat4::identity())))),
    )
}

fn v_gamma0_sandwich(ctx: &Context) -> f64 {
    let g0 = GammaSet::get().gamma0;
    worst(ctx.moving().map(|pt| {
        or_inf(helicity_basis(&pt.state).map(|b| ((g0 * b.v.dagger() * g0) * b.v).max_abs_diff(&CMat4::identity())))
    }))
}

fn sigma_n_factorization(ctx: &Context) -> f64 {
    worst(ctx.points.iter().map(|pt| {
        let a = &pt.angles;
        sigma_dot(a.direction()).max_abs_diff(&(phi_tilde_matrix(a) * phi_matrix(a).dagger()))
    }))
}

fn hamiltonian_factorization(ctx: &Context) -> f64 {
    worst(ctx.moving().map(|pt| {
        or_inf(helicity_basis(&pt.state).map(|b| match inverse4(&b.v) {
            Some(inv) => hamiltonian(&pt.state).max_abs_diff(&(b.v_tilde * inv * pt.state.r())),
            None => f64::INFINITY,
        }))
    }))
}

fn boost_equivalence(ctx: &Context) -> f64 {
    worst(ctx.points.iter().flat_map(|pt| {
        Helicity::BOTH.map(|l| {
            let phi = helicity_spinor(l, &pt.angles);
            let direct = bispinor_block_raw(&phi, &pt.state, EnergyBranch::Pos) * boost_prefactor(&pt.state);
            or_inf(boost_bispinor(&phi, &pt.state).map(|u| u.max_abs_diff(&direct)))
        })
    }))
}

fn helicity_completeness(ctx: &Context) -> f64 {
    worst(ctx.grid.angles().iter().map(|a| {
        let sum = Helicity::BOTH
            .into_iter()
            .map(|l| {
                let phi = helicity_spinor(l, a);
                phi.outer(&phi.dagger())
            })
            .fold(CMat2::zero(), |acc, m| acc + m);
        sum.max_abs_diff(&CMat2::identity())
    }))
}

/// Distance of `U` from its rest value for `m = |p| = 1`, as a function of `c`.
pub(crate) fn nonrel_distance(c: f64) -> f64 {
    let consts = PhysicalConstants { c, hbar: 1.0 };
    let s = MomentumState::new(1.0, consts, Vec3::new(0.6, 0.0, 0.8)).expect("finite inputs");
    spin_basis_matrix(&s).max_abs_diff(&diag4([1.0, 1.0, -1.0, -1.0]))
}

/// Sum of the violations of monotone decrease and of the `3/c` bound.
fn nonrel_limit(_: &Context) -> f64 {
    let cs = [10.0, 100.0, 1000.0];
    let d = cs.map(nonrel_distance);
    let bound = worst(cs.iter().zip(&d).map(|(c, d)| (d - 3.0 / c).max(0.0)));
    let monotone = worst(d.windows(2).map(|w| (w[1] - w[0]).max(0.0)));
    bound + monotone
}

fn adjoint_orthogonality(ctx: &Context) -> f64 {
    let norm = NormalizationConvention::Invariant2mc;
    worst(ctx.moving().flat_map(|pt| {
        let mc = pt.state.m() * pt.state.c();
        Helicity::BOTH.into_iter().flat_map(move |l| {
            Helicity::BOTH.map(move |lp| {
                or_inf((|| {
                    let u = helicity_bispinor(l, &pt.state, EnergyBranch::Pos, norm)?;
                    let v = helicity_bispinor(lp, &pt.state, EnergyBranch::Neg, norm)?;
                    Ok(dirac_adjoint(&u).dot(&v).norm() / (2.0 * mc))
                })())
            })
        })
    }))
}

fn charge_conjugation(ctx: &Context) -> f64 {
    worst(ctx.points.iter().flat_map(|pt| {
        Helicity::BOTH.map(|l| {
            or_inf((|| {
                let u = flugge_bispinor(l, EnergyBranch::Pos, pt.eta, &pt.angles, 1.0)?;
                let v = flugge_bispinor(l, EnergyBranch::Neg, pt.eta, &pt.angles, 1.0)?;
                Ok(charge_conjugate(&u).max_abs_diff(&v))
            })())
        })
    }))
}

fn eta_columns(ctx: &Context) -> f64 {
    worst(ctx.moving().map(|pt| {
        or_inf((|| {
            // On the axis the state's azimuth is reset to zero; use the state's own angles.
            let angles = pt.state.angles()?;
            let v = helicity_basis(&pt.state)?.v;
            let u1 = flugge_bispinor(Helicity::Plus, EnergyBranch::Pos, pt.eta, &angles, 1.0)?;
            let u2 = flugge_bispinor(Helicity::Minus, EnergyBranch::Pos, pt.eta, &angles, 1.0)?;
            Ok(v.column(0).max_abs_diff(&u1).max(v.column(1).max_abs_diff(&-u2)))
        })())
    }))
}

fn dirac_block_determinant(ctx: &Context) -> f64 {
    worst(ctx.points.iter().flat_map(|pt| {
        let s = pt.state;
        let mc2 = s.rest_energy();
        let k = sigma_dot(s.p()) * s.c();
        // Off shell by at least 0.69 R²; the top-left block is singular only at E = mc².
        [-1.7, -0.45, 0.55, 1.5].map(|f| {
            let e = f * s.r();
            let id = CMat2::identity();
            let blocks = Block2x2::new(id * (mc2 - e), k, k, id * (-mc2 - e));
            let expected = (e * e - s.r() * s.r()).powi(2);
            or_inf(schur_det(&blocks, 1e-12).map(|d| (d - expected).norm() / expected))
        })
    }))
}

// ---- covariant

fn polarization_norms(ctx: &Context) -> f64 {
    worst(ctx.points.iter().map(|pt| {
        let s = pt.state;
        or_inf(polarization_four_vector(&s, tilted(&pt.angles)).map(|a| {
            let p = s.four_momentum();
            let pa = minkowski_dot(&p, &a.0).abs() / (s.m() * s.c());
            let aa = (minkowski_dot(&a.0, &a.0) + 1.0).abs();
            pa.max(aa)
        }))
    }))
}

fn polarization_closed_vs_bilinear(ctx: &Context) -> f64 {
    let thetas = ctx.grid.thetas();
    let mut out = 0.0;
    for &e in &ctx.grid.eta_values {
        let eta = EtaParam::new(e).expect("validated grid");
        for &tn in &thetas {
            let n = PolarAngles::new(tn, std::f64::consts::FRAC_PI_3).direction();
            for &tp in &thetas {
                let r = (|| {
                    let s =
                        MomentumState::from_eta(ctx.grid.mass, ctx.grid.constants(), eta, PolarAngles::new(tp, 0.0))?;
                    let u =
                        bispinor_block(&plus_along(n), &s, EnergyBranch::Pos, NormalizationConvention::Invariant2mc)?;
                    let closed = polarization_four_vector(&s, n)?;
                    Ok(polarization_from_bilinear(&u)?.0.max_abs_diff(&closed.0))
                })();
                out = nan_max(out, or_inf(r));
            }
        }
    }
    out
}

fn polarization_equation(ctx: &Context) -> f64 {
    worst(ctx.points.iter().map(|pt| {
        let n = tilted(&pt.angles);
        or_inf((|| {
            let u = bispinor_block(&plus_along(n), &pt.state, EnergyBranch::Pos, NormalizationConvention::Unit)?;
            let a = polarization_four_vector(&pt.state, n)?;
            Ok(check_polarization_equation(&u, &a))
        })())
    }))
}

fn current(ctx: &Context) -> f64 {
    worst(ctx.points.iter().map(|pt| {
        let n = tilted(&pt.angles);
        or_inf((|| {
            let u =
                bispinor_block(&plus_along(n), &pt.state, EnergyBranch::Pos, NormalizationConvention::InvariantUnit)?;
            let norm = bilinear(&u, &CMat4::identity(), &u).re;
            Ok(current_density(&u)?.scale(1.0 / norm).max_abs_diff(&expected_current(&pt.state)))
        })())
    }))
}

fn spin_dual_path(ctx: &Context) -> f64 {
    worst(ctx.points.iter().map(|pt| {
        let n = tilted(&pt.angles);
        let phi = plus_along(n);
        or_inf((|| {
            let u = bispinor_block(&phi, &pt.state, EnergyBranch::Pos, NormalizationConvention::Unit)?;
            let direct = spin_expectations(&u).0;
            let related = relate_spin_expectations(&pt.state, nonrel_spin_expectations(&phi)).0;
            let from_a = spin_from_polarization(&pt.state, &polarization_four_vector(&pt.state, n)?).0;
            Ok(direct.max_abs_diff(related).max(direct.max_abs_diff(from_a)))
        })())
    }))
}

fn bispinor_norm(ctx: &Context) -> f64 {
    worst(ctx.points.iter().flat_map(|pt| {
        let a = PolarAngles::new(pt.angles.theta() + 0.7, pt.angles.phi() + 2.1);
        let mixed = helicity_spinor(Helicity::Plus, &a) * Complex::new(0.6, 0.0)
            + helicity_spinor(Helicity::Minus, &a) * Complex::new(0.0, 0.8);
        [helicity_spinor(Helicity::Plus, &a), helicity_spinor(Helicity::Minus, &a), mixed].map(|phi| {
            let s = pt.state;
            let raw = bispinor_block_raw(&phi, &s, EnergyBranch::Pos);
            let e = s.r();
            (raw.norm_sqr() - 2.0 * e / (e + s.rest_energy()) * phi.norm_sqr()).abs()
        })
    }))
}

fn spin_bound(ctx: &Context) -> f64 {
    worst(ctx.points.iter().map(|pt| {
        let s = pt.state;
        // General direction: inequality only. Along p: equality.
        let general = plus_along(tilted(&pt.angles));
        let along = helicity_spinor(Helicity::Plus, &pt.angles);
        or_inf((|| {
            let excess = |phi: &Spinor2| -> Result<f64> {
                let u = bispinor_block(phi, &s, EnergyBranch::Pos, NormalizationConvention::Unit)?;
                Ok(spin_expectations(&u).0.norm() - nonrel_spin_expectations(phi).0.norm())
            };
            Ok(excess(&general)?.max(0.0).max(excess(&along)?.abs()))
        })())
    }))
}

// ---- density

fn projector_algebra(ctx: &Context) -> f64 {
    worst(ctx.points.iter().map(|pt| {
        let s = pt.state;
        let mc = s.m() * s.c();
        let lp = energy_projector(&s, EnergyBranch::Pos).matrix;
        let lm = energy_projector(&s, EnergyBranch::Neg).matrix;
        worst([
            (lp + lm).max_abs_diff(&(CMat4::identity() * (2.0 * mc))),
            (lp * lm).max_abs(),
            (lm * lp).max_abs(),
            (lp * lp).max_abs_diff(&(lp * (2.0 * mc))),
            (lm * lm).max_abs_diff(&(lm * (2.0 * mc))),
        ])
    }))
}

fn p_slash_square(ctx: &Context) -> f64 {
    worst(ctx.points.iter().map(|pt| {
        let s = pt.state;
        let ps = gamma_slash(&s.four_momentum());
        (ps * ps).max_abs_diff(&(CMat4::identity() * (s.m() * s.c()).powi(2)))
    }))
}

fn density_trace(ctx: &Context) -> f64 {
    worst(ctx.moving().flat_map(|pt| {
        let s = pt.state;
        let mc = s.m() * s.c();
        BRANCHES_AND_HELICITIES.map(|(b, l)| {
            or_inf((|| {
                let rho = helicity_density4(&s, b, l)?.matrix;
                let u = helicity_bispinor(l, &s, b, NormalizationConvention::Invariant2mc)?;
                let outer = outer_adjoint(&u).trace();
                let bar = dirac_adjoint(&u).dot(&u);
                Ok((rho.trace() - 2.0 * mc).norm().max((outer - bar).norm()))
            })())
        })
    }))
}

fn projector_trace(ctx: &Context) -> f64 {
    worst(ctx.points.iter().map(|pt| {
        let s = pt.state;
        (energy_projector(&s, EnergyBranch::Pos).matrix.trace() - 2.0 * s.m() * s.c()).norm()
    }))
}

fn outer_product(ctx: &Context) -> f64 {
    worst(ctx.moving().flat_map(|pt| {
        BRANCHES_AND_HELICITIES.map(|(b, l)| {
            or_inf((|| {
                let u = helicity_bispinor(l, &pt.state, b, NormalizationConvention::Invariant2mc)?;
                let rho = helicity_density4(&pt.state, b, l)?.matrix;
                Ok(rho.max_abs_diff(&(outer_adjoint(&u) * b.sign())))
            })())
        })
    }))
}

fn explicit_projectors(ctx: &Context) -> f64 {
    let (m, c) = (ctx.grid.mass, ctx.grid.c);
    worst(ctx.points.iter().map(|pt| {
        let lp = energy_projector(&pt.state, EnergyBranch::Pos).matrix;
        let lm = energy_projector(&pt.state, EnergyBranch::Neg).matrix;
        explicit::mc_plus_p_slash(m, c, pt.eta, &pt.angles)
            .max_abs_diff(&lp)
            .max(explicit::mc_minus_p_slash(m, c, pt.eta, &pt.angles).max_abs_diff(&lm))
    }))
}

fn explicit_polarization_factors(ctx: &Context) -> f64 {
    worst(ctx.moving().map(|pt| {
        let d = 1.0 - pt.eta.value().powi(2);
        let n = pt.angles.direction();
        or_inf((|| {
            let plus = polarization_factor(&pt.state, n)? * (d / 2.0);
            let minus = polarization_factor(&pt.state, -n)? * (d / 2.0);
            Ok(explicit::polarization_factor_plus(pt.eta, &pt.angles)
                .max_abs_diff(&plus)
                .max(explicit::polarization_factor_minus(pt.eta, &pt.angles).max_abs_diff(&minus)))
        })())
    }))
}

fn explicit_densities(ctx: &Context) -> f64 {
    worst(ctx.moving().map(|pt| {
        let s = pt.state;
        let d = 1.0 - pt.eta.value().powi(2);
        let k = 2.0 * s.m() * s.c() / (d * d);
        or_inf((|| {
            let rho_p = helicity_density4(&s, EnergyBranch::Pos, Helicity::Plus)?.matrix;
            let rho_m = helicity_density4(&s, EnergyBranch::Neg, Helicity::Minus)?.matrix;
            Ok(explicit::positive_density(pt.eta, &pt.angles)
                .max_abs_diff(&(rho_p * (1.0 / k)))
                .max(explicit::negative_density(pt.eta, &pt.angles).max_abs_diff(&(rho_m * (-1.0 / k)))))
        })())
    }))
}

fn block_forms(ctx: &Context) -> f64 {
    worst(
        ctx.points
            .iter()
            .flat_map(|pt| BRANCHES_AND_HELICITIES.map(|(b, l)| density_block_residual(pt.eta, &pt.angles, b, l))),
    )
}

fn covariant_decomposition(ctx: &Context) -> f64 {
    worst(
        ctx.moving()
            .flat_map(|pt| BRANCHES_AND_HELICITIES.map(|(b, l)| or_inf(covariant_density_identity(&pt.state, b, l)))),
    )
}

fn eta_determinant(ctx: &Context) -> f64 {
    worst(ctx.points.iter().map(|pt| {
        let e = pt.eta.value();
        (det4(&flugge_matrix(pt.eta, &pt.angles)) - (1.0 - e * e).powi(2)).norm()
    }))
}

fn nonrel_density_check(ctx: &Context) -> f64 {
    worst(ctx.grid.angles().iter().flat_map(|a| {
        Helicity::BOTH.map(|l| {
            or_inf(nonrel_density(l, a.direction()).map(|rho| rho.matrix.max_abs_diff(&nonrel_density_outer(l, a))))
        })
    }))
}

fn slash_pair_check(ctx: &Context) -> f64 {
    worst(ctx.points.iter().map(|pt| {
        let p = pt.state.four_momentum();
        or_inf(
            polarization_four_vector(&pt.state, tilted(&pt.angles))
                .map(|a| slash_pair(&p, &a.0).max_abs_diff(&slash_pair_closed(&p, &a.0))),
        )
    }))
}

// ---- Fermi

fn fermi_gamma_clifford(_: &Context) -> f64 {
    let g = fermi_gamma_set().as_array();
    worst((0..4).flat_map(|a| (0..4).map(move |b| (a, b))).map(|(a, b)| {
        let expected = if a == b { CMat4::identity() * 2.0 } else { CMat4::zero() };
        anticommutator(&g[a], &g[b]).max_abs_diff(&expected)
    }))
}

fn fermi_alpha_relation(_: &Context) -> f64 {
    let std = DiracSet::get().alphas();
    worst(fermi_gamma_set().alphas().iter().zip(&std).map(|(f, s)| f.max_abs_diff(s)))
}

fn fermi_sigma_prime(_: &Context) -> f64 {
    let s = SigmaSet::get().as_array();
    worst(fermi_sigma_primes().iter().zip(&s).map(|(a, b)| a.max_abs_diff(b)))
}

fn fermi_eigenvalue_signature(_: &Context) -> f64 {
    worst(fermi_seven_matrices().iter().map(|(_, m)| {
        let (t, t2, d) = eigen_signature(m);
        t.norm().max((t2 - 4.0).norm()).max((d - 1.0).norm())
    }))
}

fn fermi_original_positive_energy(ctx: &Context) -> f64 {
    worst(ctx.moving().map(|pt| {
        or_inf(
            fermi_bispinors_original(&pt.state)
                .map(|us| worst(us.iter().map(|u| energy_residual(u, &pt.state, EnergyBranch::Pos)))),
        )
    }))
}

fn fermi_original_dependent(ctx: &Context) -> f64 {
    worst(ctx.moving().map(|pt| or_inf(fermi_bispinors_original(&pt.state).map(|us| stacked_determinant(&us).norm()))))
}

fn fermi_corrected_determinant(ctx: &Context) -> f64 {
    worst(states_with_rest(ctx).iter().map(|s| (stacked_determinant(&fermi_bispinors_corrected(s)).norm() - 1.0).abs()))
}

fn fermi_corrected_eigen(ctx: &Context) -> f64 {
    worst(states_with_rest(ctx).iter().flat_map(|s| {
        let us = fermi_bispinors_corrected(s);
        (0..4).map(move |j| energy_residual(&us[j], s, COLUMN_BRANCHES[j]))
    }))
}

fn fermi_projector_algebra(ctx: &Context) -> f64 {
    worst(states_with_rest(ctx).iter().map(|s| fermi_projectors(s).algebra_residual()))
}

fn fermi_projector_action(ctx: &Context) -> f64 {
    worst(states_with_rest(ctx).iter().map(|s| fermi_projectors(s).action_residual(&fermi_bispinors_corrected(s))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn ids_are_unique_and_prefixed() {
        let mut seen = HashSet::new();
        for d in REGISTRY {
            assert!(seen.insert(d.id), "duplicate {}", d.id);
            let prefix = d.id.split('.').next().unwrap();
            let expected = match d.suite {
                Suite::Spinors => ["spinors", "kinematics"].contains(&prefix),
                s => prefix == s.name(),
            };
            assert!(expected, "{} filed under {}", d.id, d.suite);
        }
    }

    #[test]
    fn exactly_three_deviations() {
        let ids: Vec<_> = REGISTRY.iter().filter(|d| d.deviation.is_some()).map(|d| d.id).collect();
        assert_eq!(ids.len(), 3);
    }

    #[test]
    fn nonrel_distance_shrinks() {
        let d: Vec<_> = [10.0, 100.0, 1000.0].into_iter().map(nonrel_distance).collect();
        assert!(d[0] > d[1] && d[1] > d[2]);
        assert!(d[2] < 3e-3);
    }
}
