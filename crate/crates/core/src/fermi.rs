//! Fermi's alternate gamma representation and an audit of his plane-wave
//! bi-spinors.
//!
//! The bi-spinors as originally written list `u⁽³⁾, u⁽⁴⁾` as negative-energy
//! solutions, but with the standard Hamiltonian all four are `+R`
//! eigenvectors and the set is linearly dependent. They are kept verbatim in
//! [`fermi_bispinors_original`]; [`fermi_bispinors_corrected`] gives the
//! working set.

use std::sync::OnceLock;

use crate::error::{DiracError, Result};
use crate::gamma::{hamiltonian, DiracSet};
use crate::kinematics::MomentumState;
use crate::smallmat::{det4, CMat4, CVec, Complex, I, ONE, ZERO};
use crate::spinors::{spin_basis_matrix, BiSpinor4};

/// `γ₁F, γ₂F, γ₃F` and `γ₄F = β`. Each squares to the identity and distinct
/// members anticommute.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FermiGammaSet {
    pub gamma1f: CMat4,
    pub gamma2f: CMat4,
    pub gamma3f: CMat4,
    pub gamma4f: CMat4,
}

impl FermiGammaSet {
    pub fn as_array(&self) -> [CMat4; 4] {
        [self.gamma1f, self.gamma2f, self.gamma3f, self.gamma4f]
    }

    /// `αₖ = iβγₖF` for k = 1..3.
    pub fn alphas(&self) -> [CMat4; 3] {
        [self.gamma1f, self.gamma2f, self.gamma3f].map(|g| (self.gamma4f * g).scale(I))
    }
}

pub fn fermi_gamma_set() -> &'static FermiGammaSet {
    static SET: OnceLock<FermiGammaSet> = OnceLock::new();
    SET.get_or_init(|| {
        let (o, z, i) = (ONE, ZERO, I);
        FermiGammaSet {
            gamma1f: CMat4::from_rows([[z, z, z, -i], [z, z, -i, z], [z, i, z, z], [i, z, z, z]]),
            gamma2f: CMat4::from_rows([[z, z, z, -o], [z, z, o, z], [z, o, z, z], [-o, z, z, z]]),
            gamma3f: CMat4::from_rows([[z, z, -i, z], [z, z, z, i], [i, z, z, z], [z, -i, z, z]]),
            gamma4f: DiracSet::get().beta,
        }
    })
}

/// `σ′_x = (1/i)α₂α₃`, `σ′_y = (1/i)α₃α₁`, `σ′_z = (1/i)α₁α₂`.
pub fn fermi_sigma_primes() -> [CMat4; 3] {
    let [a1, a2, a3] = fermi_gamma_set().alphas();
    [a2 * a3, a3 * a1, a1 * a2].map(|m| m.scale(-I))
}

/// The seven matrices `β, α₁, α₂, α₃, γ₁F, γ₂F, γ₃F`, each with eigenvalues
/// `{+1, +1, −1, −1}`.
pub fn fermi_seven_matrices() -> [(&'static str, CMat4); 7] {
    let g = fermi_gamma_set();
    let [a1, a2, a3] = g.alphas();
    [
        ("beta", g.gamma4f),
        ("alpha1", a1),
        ("alpha2", a2),
        ("alpha3", a3),
        ("gamma1F", g.gamma1f),
        ("gamma2F", g.gamma2f),
        ("gamma3F", g.gamma3f),
    ]
}

/// `(tr M, tr M², det M)`; a 4×4 matrix with `M² = I` and eigenvalues
/// `{+1, +1, −1, −1}` gives `(0, 4, 1)`.
pub fn eigen_signature(m: &CMat4) -> (Complex, Complex, Complex) {
    (m.trace(), (*m * *m).trace(), det4(m))
}

/// Fermi's four bi-spinors exactly as he wrote them. Every one of them is a
/// `+R` eigenvector of the standard Hamiltonian.
pub fn fermi_bispinors_original(state: &MomentumState) -> Result<[BiSpinor4; 4]> {
    let pn = state.p_norm();
    if pn == 0.0 {
        return Err(DiracError::ZeroMomentum);
    }
    let (c, r, mc2) = (state.c(), state.r(), state.rest_energy());
    let p = state.p();
    let cpz = Complex::new(c * p.z, 0.0);
    let cp_plus = Complex::new(c * p.x, c * p.y);
    let cp_minus = Complex::new(c * p.x, -c * p.y);

    let sum = mc2 + r;
    // R − mc² without cancellation at small |p|.
    let diff = c * c * pn * pn / sum;
    let kp = (sum / (2.0 * r)).sqrt();
    let kn = (diff / (2.0 * r)).sqrt();

    let u1 = CVec([ONE, ZERO, cpz / sum, cp_plus / sum]) * kp;
    let u2 = CVec([ZERO, ONE, cp_minus / sum, -cpz / sum]) * kp;
    let u3 = CVec([cpz / diff, cp_plus / diff, ONE, ZERO]) * kn;
    let u4 = CVec([cp_minus / diff, -cpz / diff, ZERO, ONE]) * kn;
    Ok([u1, u2, u3, u4])
}

/// Corrected set: the columns of the spin-basis matrix, with `u⁽¹⁾, u⁽²⁾` at
/// `+R` and `u⁽³⁾, u⁽⁴⁾` at `−R`. Regular at `p = 0`.
pub fn fermi_bispinors_corrected(state: &MomentumState) -> [BiSpinor4; 4] {
    spin_basis_matrix(state).columns()
}

/// Determinant of the matrix whose columns are the given bi-spinors.
pub fn stacked_determinant(us: &[BiSpinor4; 4]) -> Complex {
    det4(&CMat4::from_columns(*us))
}

/// Positive- and negative-energy projectors `𝒫 = ½ + H/(2R)` and
/// `𝒩 = ½ − H/(2R)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FermiProjectors {
    pub p: CMat4,
    pub n: CMat4,
}

pub fn fermi_projectors(state: &MomentumState) -> FermiProjectors {
    let half = CMat4::identity().scale_re(0.5);
    let h = hamiltonian(state).scale_re(0.5 / state.r());
    FermiProjectors { p: half + h, n: half - h }
}

impl FermiProjectors {
    /// Largest entry among `P + N − I`, `P² − P`, `N² − N` and `PN`.
    pub fn algebra_residual(&self) -> f64 {
        let id = CMat4::identity();
        [
            (self.p + self.n).max_abs_diff(&id),
            (self.p * self.p).max_abs_diff(&self.p),
            (self.n * self.n).max_abs_diff(&self.n),
            (self.p * self.n).max_abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// How far `𝒫` and `𝒩` are from acting as `(1, 1, 0, 0)` and
    /// `(0, 0, 1, 1)` on the four bi-spinors.
    pub fn action_residual(&self, us: &[BiSpinor4; 4]) -> f64 {
        us.iter()
            .enumerate()
            .map(|(k, u)| {
                let (keep, kill) = if k < 2 { (&self.p, &self.n) } else { (&self.n, &self.p) };
                (*keep * *u).max_abs_diff(u).max((*kill * *u).max_abs())
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::{anticommutator, SigmaSet};
    use crate::kinematics::{PhysicalConstants, Vec3};

    fn state(m: f64, c: f64, p: [f64; 3]) -> MomentumState {
        MomentumState::new(m, PhysicalConstants::new(c, 1.0).unwrap(), Vec3::from_array(p)).unwrap()
    }

    fn eigen_residual(state: &MomentumState, u: &BiSpinor4, e: f64) -> f64 {
        (hamiltonian(state) * *u).max_abs_diff(&(*u * e))
    }

    #[test]
    fn fermi_gammas_form_a_clifford_set() {
        let g = fermi_gamma_set().as_array();
        for a in 0..4 {
            for b in 0..4 {
                let expected = if a == b { CMat4::identity() * 2.0 } else { CMat4::zero() };
                assert_eq!(anticommutator(&g[a], &g[b]), expected, "({a}, {b})");
            }
        }
    }

    #[test]
    fn alphas_match_dirac_representation() {
        assert_eq!(fermi_gamma_set().alphas(), DiracSet::get().alphas());
    }

    #[test]
    fn sigma_primes_equal_big_sigma() {
        let s = fermi_sigma_primes();
        assert_eq!(s, SigmaSet::get().as_array());
        let z = CMat4::diag([ONE, -ONE, ONE, -ONE]);
        assert_eq!(s[2], z);
    }

    #[test]
    fn seven_matrices_have_paired_eigenvalues() {
        for (name, m) in fermi_seven_matrices() {
            let (t, t2, d) = eigen_signature(&m);
            assert!(t.norm() < 1e-15, "{name}");
            assert!((t2 - 4.0).norm() < 1e-15, "{name}");
            assert!((d - 1.0).norm() < 1e-14, "{name}");
        }
    }

    #[test]
    fn original_set_is_all_positive_energy() {
        for p in [[0.0, 0.0, 1.0], [0.3, -0.4, 0.2], [2.0, 1.0, -3.0]] {
            let s = state(1.3, 1.7, p);
            let us = fermi_bispinors_original(&s).unwrap();
            for u in &us {
                assert!(eigen_residual(&s, u, s.r()) < 1e-12);
                assert!(eigen_residual(&s, u, -s.r()) > 1e-3);
            }
            assert!(stacked_determinant(&us).norm() < 1e-10);
        }
    }

    #[test]
    fn original_lower_pair_lies_in_upper_span() {
        let s = state(1.0, 1.0, [0.2, 0.5, -0.7]);
        let [u1, u2, u3, u4] = fermi_bispinors_original(&s).unwrap();
        assert!(u1.inner(&u2).norm() < 1e-15);
        for u in [u3, u4] {
            let k1 = u1.inner(&u) / u1.norm_sqr();
            let k2 = u2.inner(&u) / u2.norm_sqr();
            assert!((u - u1 * k1 - u2 * k2).max_abs() < 1e-12);
        }
    }

    #[test]
    fn original_needs_momentum() {
        let s = state(1.0, 1.0, [0.0; 3]);
        assert_eq!(fermi_bispinors_original(&s), Err(DiracError::ZeroMomentum));
    }

    #[test]
    fn corrected_set_has_unit_determinant_and_signs() {
        for p in [[0.0, 0.0, 0.0], [0.3, -0.4, 0.2], [5.0, 1.0, -3.0]] {
            let s = state(0.8, 2.0, p);
            let us = fermi_bispinors_corrected(&s);
            assert!((stacked_determinant(&us).norm() - 1.0).abs() < 1e-12);
            for (k, u) in us.iter().enumerate() {
                let e = if k < 2 { s.r() } else { -s.r() };
                assert!(eigen_residual(&s, u, e) < 1e-12);
            }
        }
    }

    #[test]
    fn projectors_split_the_corrected_set() {
        let s = state(1.0, 3.0, [0.4, 1.1, -0.6]);
        let pr = fermi_projectors(&s);
        assert!(pr.algebra_residual() < 1e-14);
        assert!(pr.action_residual(&fermi_bispinors_corrected(&s)) < 1e-14);
        // On the original set 𝒫 keeps everything.
        let orig = fermi_bispinors_original(&s).unwrap();
        for u in &orig {
            assert!((pr.p * *u).max_abs_diff(u) < 1e-12);
        }
    }

    #[test]
    fn projector_is_eigenvalue_interpolation() {
        // (R + H)/(2R) from the eigen-decomposition H = U diag(R, R, −R, −R) U†.
        let s = state(2.0, 1.0, [1.0, 2.0, 2.0]);
        let u = spin_basis_matrix(&s);
        let d = CMat4::diag([ONE, ONE, ZERO, ZERO]);
        let oracle = u * d * u.dagger();
        assert!(fermi_projectors(&s).p.max_abs_diff(&oracle) < 1e-14);
    }
}
