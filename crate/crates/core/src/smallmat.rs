//! Fixed-size complex linear algebra for 2×2 and 4×4 matrices.
//!
//! Everything in the crate is expressed through [`CMat2`] / [`CMat4`] and the
//! matching column vectors. Matrices are dense, row-major and `Copy`; there is
//! no heap allocation anywhere on these paths.
//!
//! Residual comparisons use the max-abs-entry norm, see [`CMat::max_abs_diff`].

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{DiracError, Result};

pub use num_complex::Complex64 as Complex;

/// Default absolute tolerance for max-abs-entry residuals.
pub const DEFAULT_TOL: f64 = 1e-12;

/// The imaginary unit.
pub const I: Complex = Complex::new(0.0, 1.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);
pub const ZERO: Complex = Complex::new(0.0, 0.0);

/// Shorthand for a real-valued complex number.
#[inline]
pub const fn re(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

/// Dense N×N complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat<const N: usize> {
    entries: [[Complex; N]; N],
}

pub type CMat2 = CMat<2>;
pub type CMat4 = CMat<4>;

/// Complex column vector with N components.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CVec<const N: usize>(pub [Complex; N]);

/// Complex row vector, e.g. a Dirac adjoint.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RowVec<const N: usize>(pub [Complex; N]);

impl<const N: usize> CMat<N> {
    pub const fn from_rows(entries: [[Complex; N]; N]) -> Self {
        Self { entries }
    }

    pub fn from_real_rows(rows: [[f64; N]; N]) -> Self {
        Self::from_fn(|i, j| re(rows[i][j]))
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut entries = [[ZERO; N]; N];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = f(i, j);
            }
        }
        Self { entries }
    }

    pub fn from_columns(cols: [CVec<N>; N]) -> Self {
        Self::from_fn(|i, j| cols[j].0[i])
    }

    pub const fn zero() -> Self {
        Self { entries: [[ZERO; N]; N] }
    }

    pub fn identity() -> Self {
        Self::scalar(ONE)
    }

    /// `s · I`.
    pub fn scalar(s: Complex) -> Self {
        Self::from_fn(|i, j| if i == j { s } else { ZERO })
    }

    pub fn diag(d: [Complex; N]) -> Self {
        Self::from_fn(|i, j| if i == j { d[i] } else { ZERO })
    }

    pub fn rows(&self) -> &[[Complex; N]; N] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> CVec<N> {
        CVec(std::array::from_fn(|i| self.entries[i][j]))
    }

    pub fn columns(&self) -> [CVec<N>; N] {
        std::array::from_fn(|j| self.column(j))
    }

    pub fn mat_mul(&self, other: &Self) -> Self {
        Self::from_fn(|i, j| self.entries[i].iter().zip(other.entries.iter()).map(|(a, row)| a * row[j]).sum())
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(|i, j| self.entries[j][i].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.entries[j][i])
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self::from_fn(|i, j| self.entries[i][j].conj())
    }

    pub fn trace(&self) -> Complex {
        (0..N).map(|i| self.entries[i][i]).sum()
    }

    pub fn scale(&self, s: Complex) -> Self {
        Self::from_fn(|i, j| s * self.entries[i][j])
    }

    pub fn scale_re(&self, s: f64) -> Self {
        Self::from_fn(|i, j| self.entries[i][j] * s)
    }

    pub fn apply(&self, v: &CVec<N>) -> CVec<N> {
        CVec(std::array::from_fn(|i| self.entries[i].iter().zip(v.0.iter()).map(|(a, b)| a * b).sum()))
    }

    /// Largest entry modulus (the max-abs-entry norm).
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().flatten().all(|z| z.is_finite())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(), |acc, _| acc * *self)
    }
}

impl<const N: usize> Default for CMat<N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<const N: usize> Index<(usize, usize)> for CMat<N> {
    type Output = Complex;
    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.entries[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMat<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.entries[i][j]
    }
}

impl<const N: usize> Add for CMat<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.entries[i][j] + rhs.entries[i][j])
    }
}

impl<const N: usize> AddAssign for CMat<N> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const N: usize> Sub for CMat<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.entries[i][j] - rhs.entries[i][j])
    }
}

impl<const N: usize> Neg for CMat<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_fn(|i, j| -self.entries[i][j])
    }
}

impl<const N: usize> Mul for CMat<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mat_mul(&rhs)
    }
}

impl<const N: usize> Mul<CVec<N>> for CMat<N> {
    type Output = CVec<N>;
    fn mul(self, rhs: CVec<N>) -> CVec<N> {
        self.apply(&rhs)
    }
}

impl<const N: usize> Mul<Complex> for CMat<N> {
    type Output = Self;
    fn mul(self, rhs: Complex) -> Self {
        self.scale(rhs)
    }
}

impl<const N: usize> Mul<f64> for CMat<N> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale_re(rhs)
    }
}

impl<const N: usize> Mul<CMat<N>> for f64 {
    type Output = CMat<N>;
    fn mul(self, rhs: CMat<N>) -> CMat<N> {
        rhs.scale_re(self)
    }
}

impl<const N: usize> Mul<CMat<N>> for Complex {
    type Output = CMat<N>;
    fn mul(self, rhs: CMat<N>) -> CMat<N> {
        rhs.scale(self)
    }
}

impl<const N: usize> CVec<N> {
    pub const fn zero() -> Self {
        Self([ZERO; N])
    }

    pub fn conj(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    /// Hermitian inner product `self† · other`.
    pub fn inner(&self, other: &Self) -> Complex {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: Complex) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn scale_re(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    /// Plain Hermitian conjugate as a row.
    pub fn dagger(&self) -> RowVec<N> {
        RowVec(self.0.map(|z| z.conj()))
    }

    /// Column-times-row product `self · row`.
    pub fn outer(&self, row: &RowVec<N>) -> CMat<N> {
        CMat::from_fn(|i, j| self.0[i] * row.0[j])
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|z| *z == ZERO)
    }
}

impl<const N: usize> Index<usize> for CVec<N> {
    type Output = Complex;
    fn index(&self, i: usize) -> &Complex {
        &self.0[i]
    }
}

impl<const N: usize> Add for CVec<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl<const N: usize> Sub for CVec<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl<const N: usize> Neg for CVec<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|z| -z))
    }
}

impl<const N: usize> Mul<Complex> for CVec<N> {
    type Output = Self;
    fn mul(self, rhs: Complex) -> Self {
        self.scale(rhs)
    }
}

impl<const N: usize> Mul<f64> for CVec<N> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale_re(rhs)
    }
}

impl<const N: usize> RowVec<N> {
    /// Row-times-column product.
    pub fn dot(&self, col: &CVec<N>) -> Complex {
        self.0.iter().zip(col.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn mul_mat(&self, m: &CMat<N>) -> Self {
        RowVec(std::array::from_fn(|j| (0..N).map(|k| self.0[k] * m[(k, j)]).sum()))
    }
}

pub fn commutator<const N: usize>(x: &CMat<N>, y: &CMat<N>) -> CMat<N> {
    *x * *y - *y * *x
}

pub fn anticommutator<const N: usize>(x: &CMat<N>, y: &CMat<N>) -> CMat<N> {
    *x * *y + *y * *x
}

pub fn det2(m: &CMat2) -> Complex {
    m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
}

fn det3(rows: [[Complex; 3]; 3]) -> Complex {
    rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
        - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
        + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0])
}

fn minor4(m: &CMat4, skip_row: usize, skip_col: usize) -> Complex {
    let mut sub = [[ZERO; 3]; 3];
    for (si, i) in (0..4).filter(|&i| i != skip_row).enumerate() {
        for (sj, j) in (0..4).filter(|&j| j != skip_col).enumerate() {
            sub[si][sj] = m[(i, j)];
        }
    }
    det3(sub)
}

/// Determinant by cofactor expansion along the first row.
pub fn det4(m: &CMat4) -> Complex {
    (0..4)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            m[(0, j)] * minor4(m, 0, j) * sign
        })
        .sum()
}

/// Inverse of a 2×2 matrix; `None` when the determinant vanishes exactly.
pub fn inverse2(m: &CMat2) -> Option<CMat2> {
    let d = det2(m);
    if d == ZERO {
        return None;
    }
    let inv = ONE / d;
    Some(CMat2::from_rows([[m[(1, 1)] * inv, -m[(0, 1)] * inv], [-m[(1, 0)] * inv, m[(0, 0)] * inv]]))
}

/// Inverse of a 4×4 matrix via the adjugate.
pub fn inverse4(m: &CMat4) -> Option<CMat4> {
    let d = det4(m);
    if d == ZERO {
        return None;
    }
    let inv = ONE / d;
    Some(CMat4::from_fn(|i, j| {
        let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
        minor4(m, j, i) * sign * inv
    }))
}

/// A 4×4 matrix partitioned into four 2×2 blocks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Block2x2 {
    pub a: CMat2,
    pub b: CMat2,
    pub c: CMat2,
    pub d: CMat2,
}

/// Which of the two Schur reductions was applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchurFormula {
    /// `det(AD − CB)`, valid when `AC = CA`.
    CommutingAc,
    /// `det(AD − BC)`, valid when `CD = DC`.
    CommutingCd,
}

impl Block2x2 {
    pub const fn new(a: CMat2, b: CMat2, c: CMat2, d: CMat2) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(CMat2::identity(), CMat2::zero(), CMat2::zero(), CMat2::identity())
    }

    /// Block-diagonal matrix with `x` repeated on the diagonal.
    pub fn diagonal(x: CMat2) -> Self {
        Self::new(x, CMat2::zero(), CMat2::zero(), x)
    }

    pub fn disassemble(m: &CMat4) -> Self {
        let block = |r0: usize, c0: usize| CMat2::from_fn(|i, j| m[(r0 + i, c0 + j)]);
        Self::new(block(0, 0), block(0, 2), block(2, 0), block(2, 2))
    }

    pub fn assemble(&self) -> CMat4 {
        CMat4::from_fn(|i, j| {
            let blk = match (i < 2, j < 2) {
                (true, true) => &self.a,
                (true, false) => &self.b,
                (false, true) => &self.c,
                (false, false) => &self.d,
            };
            blk[(i % 2, j % 2)]
        })
    }

    /// Partitioned product: top-left `A₁A₂ + B₁C₂` and so on.
    pub fn block_mul(&self, other: &Self) -> Self {
        Self::new(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )
    }

    pub fn dagger(&self) -> Self {
        Self::new(self.a.dagger(), self.c.dagger(), self.b.dagger(), self.d.dagger())
    }

    pub fn scale_re(&self, s: f64) -> Self {
        Self::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    /// Picks the Schur formula whose commutation precondition holds, preferring `AC = CA`.
    pub fn schur_formula(&self, tol: f64) -> std::result::Result<SchurFormula, DiracError> {
        let ac = commutator(&self.a, &self.c).max_abs();
        if ac <= tol {
            return Ok(SchurFormula::CommutingAc);
        }
        let cd = commutator(&self.c, &self.d).max_abs();
        if cd <= tol {
            return Ok(SchurFormula::CommutingCd);
        }
        Err(DiracError::NonCommutingBlocks { tol, ac_residual: ac, cd_residual: cd })
    }
}

/// Determinant of the assembled matrix through a 2×2 Schur reduction.
pub fn schur_det(blocks: &Block2x2, tol: f64) -> Result<Complex> {
    let reduced = match blocks.schur_formula(tol)? {
        SchurFormula::CommutingAc => blocks.a * blocks.d - blocks.c * blocks.b,
        SchurFormula::CommutingCd => blocks.a * blocks.d - blocks.b * blocks.c,
    };
    Ok(det2(&reduced))
}

/// Rank criterion: with `A` non-singular the 4×4 matrix has rank 2 iff `D = C A⁻¹ B`.
pub fn block_rank_is_n(blocks: &Block2x2, tol: f64) -> Result<bool> {
    let det_abs = det2(&blocks.a).norm();
    if det_abs <= tol {
        return Err(DiracError::SingularA { det_abs });
    }
    let a_inv = inverse2(&blocks.a).ok_or(DiracError::SingularA { det_abs })?;
    let schur_complement = blocks.d - blocks.c * a_inv * blocks.b;
    Ok(schur_complement.max_abs() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_mat<const N: usize>(rng: &mut impl Rng) -> CMat<N> {
        CMat::from_fn(|_, _| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    // Independent oracles: naive ikj triple loop and Leibniz permutation sum.
    fn naive_mul(x: &CMat4, y: &CMat4) -> CMat4 {
        let mut out = CMat4::zero();
        for i in 0..4 {
            for k in 0..4 {
                for j in 0..4 {
                    out[(i, j)] += x[(i, k)] * y[(k, j)];
                }
            }
        }
        out
    }

    fn leibniz_det(m: &CMat4) -> Complex {
        let mut total = ZERO;
        let mut perm = [0usize, 1, 2, 3];
        fn permutations(k: usize, perm: &mut [usize; 4], out: &mut Vec<[usize; 4]>) {
            if k == 4 {
                out.push(*perm);
                return;
            }
            for i in k..4 {
                perm.swap(k, i);
                permutations(k + 1, perm, out);
                perm.swap(k, i);
            }
        }
        let mut all = Vec::new();
        permutations(0, &mut perm, &mut all);
        for p in all {
            let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
            total += (0..4).map(|i| m[(i, p[i])]).product::<Complex>() * sign;
        }
        total
    }

    fn sigma1() -> CMat2 {
        CMat2::from_real_rows([[0.0, 1.0], [1.0, 0.0]])
    }

    fn sigma2() -> CMat2 {
        CMat2::from_rows([[ZERO, -I], [I, ZERO]])
    }

    fn sigma3() -> CMat2 {
        CMat2::from_real_rows([[1.0, 0.0], [0.0, -1.0]])
    }

    /// Blocks of `[[(mc²−E)·1, cσ·p], [cσ·p, −(mc²+E)·1]]` with m = c = 1.
    fn d9_blocks(p: [f64; 3], e: f64) -> Block2x2 {
        let sp = sigma1() * p[0] + sigma2() * p[1] + sigma3() * p[2];
        Block2x2::new(CMat2::identity() * (1.0 - e), sp, sp, CMat2::identity() * -(1.0 + e))
    }

    #[test]
    fn identity_is_neutral() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m: CMat4 = random_mat(&mut rng);
        assert_eq!(CMat4::identity() * m, m);
        assert_eq!(m * CMat4::identity(), m);
    }

    #[test]
    fn pauli_squares() {
        assert_eq!(sigma1() * sigma1(), CMat2::identity());
        assert_eq!(sigma2().dagger(), sigma2());
        assert_eq!(CMat4::identity().dagger(), CMat4::identity());
    }

    #[test]
    fn mat_mul_matches_triple_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let x: CMat4 = random_mat(&mut rng);
            let y: CMat4 = random_mat(&mut rng);
            assert!((x * y).max_abs_diff(&naive_mul(&x, &y)) <= 1e-14);
        }
    }

    #[test]
    fn block_mul_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..1000 {
            let x: CMat4 = random_mat(&mut rng);
            let y: CMat4 = random_mat(&mut rng);
            let blocks = Block2x2::disassemble(&x).block_mul(&Block2x2::disassemble(&y));
            assert!(blocks.assemble().max_abs_diff(&(x * y)) <= 1e-13);
        }
        assert_eq!(Block2x2::identity().block_mul(&Block2x2::identity()), Block2x2::identity());
    }

    #[test]
    fn block_mul_of_dirac_pair_is_diagonal() {
        // m = c = 1, p = (0, 0, 1), E = 2: (1 + 1 − 4)·I = −2·I.
        let x = d9_blocks([0.0, 0.0, 1.0], 2.0);
        let y = d9_blocks([0.0, 0.0, 1.0], -2.0);
        let prod = x.block_mul(&y).assemble();
        assert!(prod.max_abs_diff(&(CMat4::identity() * -2.0)) <= 1e-15);
    }

    #[test]
    fn assemble_roundtrip_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m: CMat4 = random_mat(&mut rng);
        assert_eq!(Block2x2::disassemble(&m).assemble(), m);
    }

    #[test]
    fn det4_cases() {
        assert_eq!(det4(&CMat4::identity()), ONE);
        // On shell: E = R = sqrt(2) for p = (0, 0, 1).
        let on_shell = d9_blocks([0.0, 0.0, 1.0], 2f64.sqrt()).assemble();
        assert!(det4(&on_shell).norm() <= 1e-14);
        // p = 0, E = 2: (E² − m²c⁴)² = 9.
        let at_rest = d9_blocks([0.0, 0.0, 0.0], 2.0).assemble();
        assert!((det4(&at_rest) - re(9.0)).norm() <= 1e-14);
        assert!((leibniz_det(&at_rest) - re(9.0)).norm() <= 1e-14);
    }

    #[test]
    fn det4_matches_leibniz_and_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let x: CMat4 = random_mat(&mut rng);
            let y: CMat4 = random_mat(&mut rng);
            assert!((det4(&x) - leibniz_det(&x)).norm() <= 1e-13);
            assert!((det4(&(x * y)) - det4(&x) * det4(&y)).norm() <= 1e-12);
        }
    }

    #[test]
    fn schur_det_cases() {
        assert_eq!(schur_det(&Block2x2::identity(), DEFAULT_TOL).unwrap(), ONE);
        for &(p, e) in &[([0.3, -0.2, 0.9], 2.5), ([1.0, 1.0, 1.0], 0.7)] {
            let blocks = d9_blocks(p, e);
            let p2: f64 = p.iter().map(|x| x * x).sum();
            let expected = (e * e - p2 - 1.0).powi(2);
            let got = schur_det(&blocks, DEFAULT_TOL).unwrap();
            assert!((got - re(expected)).norm() <= 1e-12 * expected.abs().max(1.0));
            assert!((got - det4(&blocks.assemble())).norm() <= 1e-12);
        }
    }

    #[test]
    fn schur_det_random_commuting_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            // C a polynomial in A commutes with A.
            let a: CMat2 = random_mat(&mut rng);
            let s = Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let c = a * a + CMat2::scalar(s);
            let blocks = Block2x2::new(a, random_mat(&mut rng), c, random_mat(&mut rng));
            assert_eq!(blocks.schur_formula(1e-12), Ok(SchurFormula::CommutingAc));
            let got = schur_det(&blocks, 1e-12).unwrap();
            assert!((got - det4(&blocks.assemble())).norm() <= 1e-12);
        }
        // Only CD = DC: route falls through to the second formula.
        let d: CMat2 = random_mat(&mut rng);
        let blocks = Block2x2::new(random_mat(&mut rng), random_mat(&mut rng), d * d, d);
        assert_eq!(blocks.schur_formula(1e-12), Ok(SchurFormula::CommutingCd));
        let got = schur_det(&blocks, 1e-12).unwrap();
        assert!((got - det4(&blocks.assemble())).norm() <= 1e-12);
    }

    #[test]
    fn schur_det_rejects_non_commuting() {
        let blocks = Block2x2::new(sigma1(), sigma2(), sigma3(), sigma1());
        assert!(matches!(schur_det(&blocks, DEFAULT_TOL), Err(DiracError::NonCommutingBlocks { .. })));
    }

    /// Gaussian elimination with partial pivoting.
    fn numerical_rank(m: &CMat4, tol: f64) -> usize {
        let mut rows = *m.rows();
        let mut rank = 0;
        for col in 0..4 {
            let pivot = (rank..4).max_by(|&i, &j| rows[i][col].norm().partial_cmp(&rows[j][col].norm()).unwrap());
            let Some(p) = pivot else { break };
            if rows[p][col].norm() <= tol {
                continue;
            }
            rows.swap(rank, p);
            for i in rank + 1..4 {
                let f = rows[i][col] / rows[rank][col];
                let pivot = rows[rank];
                for (x, v) in rows[i].iter_mut().zip(pivot) {
                    *x -= f * v;
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn block_rank_criterion() {
        let trivial = Block2x2::new(CMat2::identity(), CMat2::zero(), CMat2::zero(), CMat2::zero());
        assert_eq!(block_rank_is_n(&trivial, DEFAULT_TOL), Ok(true));

        // Second matrix of the Dirac product pair, [[(mc²+E), cσ·p], [cσ·p, −(mc²−E)]].
        let p = [0.4, -0.3, 1.2];
        let r = (1.0 + p.iter().map(|x| x * x).sum::<f64>()).sqrt();
        let build = |e: f64| {
            let sp = sigma1() * p[0] + sigma2() * p[1] + sigma3() * p[2];
            Block2x2::new(CMat2::identity() * (1.0 + e), sp, sp, CMat2::identity() * -(1.0 - e))
        };
        let on = build(r);
        assert_eq!(block_rank_is_n(&on, DEFAULT_TOL), Ok(true));
        assert_eq!(numerical_rank(&on.assemble(), 1e-10), 2);
        let off = build(r + 1.0);
        assert_eq!(block_rank_is_n(&off, DEFAULT_TOL), Ok(false));
        assert_eq!(numerical_rank(&off.assemble(), 1e-10), 4);

        let singular = Block2x2::new(CMat2::zero(), CMat2::identity(), CMat2::identity(), CMat2::zero());
        assert!(matches!(block_rank_is_n(&singular, DEFAULT_TOL), Err(DiracError::SingularA { .. })));
    }

    #[test]
    fn inverse4_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m: CMat4 = random_mat(&mut rng);
        let inv = inverse4(&m).unwrap();
        assert!((m * inv).max_abs_diff(&CMat4::identity()) <= 1e-12);
        assert!(inverse4(&CMat4::zero()).is_none());
    }

    #[test]
    fn dagger_reverses_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let x: CMat4 = random_mat(&mut rng);
        let y: CMat4 = random_mat(&mut rng);
        assert_eq!(x.dagger().dagger(), x);
        assert!((x * y).dagger().max_abs_diff(&(y.dagger() * x.dagger())) <= 1e-15);
    }
}
