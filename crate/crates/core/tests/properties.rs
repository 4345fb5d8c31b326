use proptest::prelude::*;

use dirac_core::covariant::{
    check_polarization_equation, current_density, expected_current, polarization_four_vector,
    polarization_from_bilinear, spin_expectations,
};
use dirac_core::density::{energy_projector, helicity_density4, nonrel_density, nonrel_density_outer, outer_adjoint};
use dirac_core::fermi::{fermi_bispinors_corrected, fermi_projectors, stacked_determinant};
use dirac_core::gamma::{hamiltonian, helicity_operator};
use dirac_core::kinematics::{
    minkowski_dot, EnergyBranch, EtaParam, MomentumState, PhysicalConstants, PolarAngles, Vec3,
};
use dirac_core::smallmat::{det4, inverse4, schur_det, Block2x2, CMat4, Complex};
use dirac_core::spinors::{
    charge_conjugate, flugge_bispinor, helicity_basis, helicity_bispinor, spin_basis_matrix, Helicity,
    NormalizationConvention,
};

const BRANCHES: [EnergyBranch; 2] = [EnergyBranch::Pos, EnergyBranch::Neg];

fn complex() -> impl Strategy<Value = Complex> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| Complex::new(re, im))
}

fn mat4() -> impl Strategy<Value = CMat4> {
    prop::array::uniform16(complex()).prop_map(|e| CMat4::from_fn(|i, j| e[4 * i + j]))
}

fn state() -> impl Strategy<Value = MomentumState> {
    (0.1..5.0f64, 0.5..20.0f64, prop::array::uniform3(-5.0..5.0f64))
        .prop_filter("non-zero momentum", |(_, _, p)| Vec3::from_array(*p).norm() > 1e-3)
        .prop_map(|(m, c, p)| {
            MomentumState::new(m, PhysicalConstants::new(c, 1.0).unwrap(), Vec3::from_array(p)).unwrap()
        })
}

fn angles() -> impl Strategy<Value = PolarAngles> {
    (0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU).prop_map(|(t, p)| PolarAngles::new(t, p))
}

fn helicity() -> impl Strategy<Value = Helicity> {
    prop_oneof![Just(Helicity::Plus), Just(Helicity::Minus)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn determinant_is_multiplicative(a in mat4(), b in mat4()) {
        let (da, db) = (det4(&a), det4(&b));
        let scale = 1.0 + (da * db).norm();
        prop_assert!((det4(&(a * b)) - da * db).norm() < 1e-10 * scale);
    }

    #[test]
    fn dagger_reverses_products(a in mat4(), b in mat4()) {
        prop_assert!((a * b).dagger().max_abs_diff(&(b.dagger() * a.dagger())) < 1e-13);
    }

    #[test]
    fn block_product_and_schur(a in mat4(), b in mat4()) {
        let (ba, bb) = (Block2x2::disassemble(&a), Block2x2::disassemble(&b));
        prop_assert!(ba.block_mul(&bb).assemble().max_abs_diff(&(a * b)) < 1e-13);
        if let Ok(d) = schur_det(&ba, 1e-6) {
            prop_assert!((d - det4(&a)).norm() < 1e-8 * (1.0 + d.norm()));
        }
    }

    #[test]
    fn inverse_recovers_identity(a in mat4()) {
        prop_assume!(det4(&a).norm() > 1e-2);
        let inv = inverse4(&a).unwrap();
        prop_assert!((a * inv).max_abs_diff(&CMat4::identity()) < 1e-8);
    }

    #[test]
    fn hamiltonian_squares_to_energy(s in state()) {
        let h = hamiltonian(&s);
        let r2 = s.r() * s.r();
        prop_assert!(h.max_abs_diff(&h.dagger()) == 0.0);
        prop_assert!((h * h).max_abs_diff(&(CMat4::identity() * r2)) < 1e-13 * r2);
        let hel = helicity_operator(&s).unwrap();
        prop_assert!((h * hel - hel * h).max_abs() < 1e-13 * s.r());
    }

    #[test]
    fn on_shell_and_eta_round_trip(s in state()) {
        let scale = (s.r() / s.c()).powi(2);
        prop_assert!(s.on_shell_residual().abs() < 1e-13 * scale);
        let eta = s.to_eta().unwrap();
        let back = MomentumState::from_eta(s.m(), s.constants(), eta, s.angles().unwrap()).unwrap();
        prop_assert!(back.p().max_abs_diff(s.p()) < 1e-11 * (1.0 + s.p_norm()));
        prop_assert_eq!(s.reversed().r(), s.r());
    }

    #[test]
    fn spin_basis_is_a_hermitian_involution(s in state()) {
        let u = spin_basis_matrix(&s);
        prop_assert!(u.max_abs_diff(&u.dagger()) < 1e-15);
        prop_assert!((u * u).max_abs_diff(&CMat4::identity()) < 1e-13);
        let h = hamiltonian(&s);
        for (k, col) in u.columns().iter().enumerate() {
            let e = if k < 2 { s.r() } else { -s.r() };
            prop_assert!((h * *col).max_abs_diff(&(*col * e)) < 1e-12 * s.r());
        }
    }

    #[test]
    fn helicity_basis_is_unitary(s in state()) {
        let v = helicity_basis(&s).unwrap().v;
        prop_assert!((v.dagger() * v).max_abs_diff(&CMat4::identity()) < 1e-13);
    }

    #[test]
    fn normalizations_hold(s in state(), l in helicity(), b in prop::sample::select(BRANCHES.to_vec())) {
        let u = helicity_bispinor(l, &s, b, NormalizationConvention::Unit).unwrap();
        prop_assert!((u.norm_sqr() - 1.0).abs() < 1e-13);
        let w = helicity_bispinor(l, &s, b, NormalizationConvention::Invariant2mc).unwrap();
        let bar = outer_adjoint(&w).trace();
        prop_assert!((bar - 2.0 * s.m() * s.c() * b.sign()).norm() < 1e-11 * s.r() / s.c());
    }

    #[test]
    fn charge_conjugation_swaps_branches(e in 0.0..0.99f64, a in angles(), l in helicity()) {
        let eta = EtaParam::new(e).unwrap();
        let pos = flugge_bispinor(l, EnergyBranch::Pos, eta, &a, 1.0).unwrap();
        let neg = flugge_bispinor(l, EnergyBranch::Neg, eta, &a, 1.0).unwrap();
        prop_assert!(charge_conjugate(&pos).max_abs_diff(&neg) < 1e-15);
    }

    #[test]
    fn polarization_vector_is_spacelike_unit(s in state(), a in angles()) {
        let n = a.direction();
        let av = polarization_four_vector(&s, n).unwrap().0;
        let scale = 1.0 + (s.p_norm() / (s.m() * s.c())).powi(2);
        prop_assert!((minkowski_dot(&av, &av) + 1.0).abs() < 1e-11 * scale);
        prop_assert!(minkowski_dot(&av, &s.four_momentum()).abs() < 1e-11 * scale * s.r() / s.c());
    }

    #[test]
    fn helicity_state_satisfies_polarization_equation(s in state()) {
        let u = helicity_bispinor(Helicity::Plus, &s, EnergyBranch::Pos, NormalizationConvention::Unit).unwrap();
        let n = s.direction().unwrap();
        let a = polarization_four_vector(&s, n).unwrap();
        prop_assert!(check_polarization_equation(&u, &a) < 1e-10 * (1.0 + s.p_norm() / (s.m() * s.c())));
        let from_bilinear = polarization_from_bilinear(&u).unwrap().0;
        prop_assert!(from_bilinear.max_abs_diff(&a.0) < 1e-9 * (1.0 + (s.p_norm() / (s.m() * s.c())).powi(2)));
    }

    #[test]
    fn current_and_spin_bound(s in state(), l in helicity()) {
        let u = helicity_bispinor(l, &s, EnergyBranch::Pos, NormalizationConvention::InvariantUnit).unwrap();
        let j = current_density(&u).unwrap();
        let scale = s.r() / (s.m() * s.c() * s.c());
        prop_assert!(j.max_abs_diff(&expected_current(&s)) < 1e-11 * scale);
        prop_assert!(spin_expectations(&u).0.norm() <= 0.5 + 1e-14);
    }

    #[test]
    fn energy_projectors_are_orthogonal(s in state()) {
        let mc = s.m() * s.c();
        let lp = energy_projector(&s, EnergyBranch::Pos).matrix;
        let lm = energy_projector(&s, EnergyBranch::Neg).matrix;
        let scale = (s.r() / s.c()).powi(2);
        prop_assert!((lp * lm).max_abs() < 1e-12 * scale);
        prop_assert!((lp * lp).max_abs_diff(&(lp * (2.0 * mc))) < 1e-12 * scale);
        prop_assert!((lp.trace() - 4.0 * mc).norm() < 1e-12 * mc);
    }

    #[test]
    fn density_is_signed_outer_product(s in state(), l in helicity(), b in prop::sample::select(BRANCHES.to_vec())) {
        let rho = helicity_density4(&s, b, l).unwrap().matrix;
        let u = helicity_bispinor(l, &s, b, NormalizationConvention::Invariant2mc).unwrap();
        let scale = (s.r() / s.c()).powi(2) / (s.m() * s.c());
        prop_assert!(rho.max_abs_diff(&(outer_adjoint(&u) * b.sign())) < 1e-11 * scale);
        prop_assert!((rho.trace() - 2.0 * s.m() * s.c()).norm() < 1e-11 * scale);
    }

    #[test]
    fn nonrel_density_matches_outer_product(a in angles(), l in helicity()) {
        let rho = nonrel_density(l, a.direction()).unwrap().matrix;
        prop_assert!(rho.max_abs_diff(&nonrel_density_outer(l, &a)) < 1e-15);
    }

    #[test]
    fn fermi_corrected_set_is_a_basis(s in state()) {
        let us = fermi_bispinors_corrected(&s);
        prop_assert!((stacked_determinant(&us).norm() - 1.0).abs() < 1e-12);
        let pr = fermi_projectors(&s);
        prop_assert!(pr.algebra_residual() < 1e-13);
        prop_assert!(pr.action_residual(&us) < 1e-12);
    }
}
