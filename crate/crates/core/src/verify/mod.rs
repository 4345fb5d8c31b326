//! Identity registry and sweep engine.
//!
//! Every registered identity is evaluated over a parameter grid and reduced
//! to its worst residual. A few commonly quoted forms that are false (a
//! misprinted component, a wrong inverse, a wrong trace) are evaluated too,
//! but reported as deviations and never counted as failures.

mod checks;
pub mod json;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{DiracError, Result};
use crate::kinematics::{EtaParam, MomentumState, PhysicalConstants, PolarAngles};

/// The ids every `all` run must produce, one per line.
pub const MANIFEST: &str = include_str!("manifest.txt");

/// Determinant-based linear-dependence checks never use a tolerance below this.
pub const DEPENDENCE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Spinors,
    Covariant,
    Density,
    Fermi,
    All,
}

impl Suite {
    pub const MODULES: [Self; 5] = [Self::Algebra, Self::Spinors, Self::Covariant, Self::Density, Self::Fermi];

    pub fn name(self) -> &'static str {
        match self {
            Self::Algebra => "algebra",
            Self::Spinors => "spinors",
            Self::Covariant => "covariant",
            Self::Density => "density",
            Self::Fermi => "fermi",
            Self::All => "all",
        }
    }

    fn includes(self, other: Self) -> bool {
        self == Self::All || self == other
    }
}

impl FromStr for Suite {
    type Err = DiracError;

    fn from_str(s: &str) -> Result<Self> {
        [Self::Algebra, Self::Spinors, Self::Covariant, Self::Density, Self::Fermi, Self::All]
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| DiracError::UnknownSuite(s.to_string()))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameter grid: every `η` is combined with `theta_count × phi_count`
/// directions, `θ` evenly spaced on `[0, π]` and `φ = 2πj/phi_count`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub eta_values: Vec<f64>,
    pub theta_count: usize,
    pub phi_count: usize,
    pub mass: f64,
    pub c: f64,
    /// Seed for the randomly sampled identities.
    pub seed: u64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            eta_values: vec![0.1, 0.3, 0.5, 0.7, 0.9],
            theta_count: 8,
            phi_count: 8,
            mass: 1.0,
            c: 1.0,
            seed: 0x00d1_5ac0,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.eta_values.is_empty() || self.theta_count == 0 || self.phi_count == 0 {
            return Err(DiracError::EmptyGrid);
        }
        for &e in &self.eta_values {
            EtaParam::new(e)?;
        }
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(DiracError::InvalidMass(self.mass));
        }
        PhysicalConstants::new(self.c, 1.0)?;
        Ok(())
    }

    pub fn thetas(&self) -> Vec<f64> {
        let n = self.theta_count;
        if n == 1 {
            return vec![0.0];
        }
        (0..n).map(|i| std::f64::consts::PI * i as f64 / (n - 1) as f64).collect()
    }

    pub fn phis(&self) -> Vec<f64> {
        let n = self.phi_count;
        (0..n).map(|j| std::f64::consts::TAU * j as f64 / n as f64).collect()
    }

    pub fn angles(&self) -> Vec<PolarAngles> {
        let phis = self.phis();
        self.thetas().into_iter().flat_map(|t| phis.iter().map(move |&p| PolarAngles::new(t, p))).collect()
    }

    pub fn constants(&self) -> PhysicalConstants {
        PhysicalConstants { c: self.c, hbar: 1.0 }
    }
}

/// Outcome of one identity over the whole grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub id: String,
    pub description: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deviation_note: Option<String>,
}

impl IdentityCheck {
    fn new(id: &str, description: &str, residual: f64, tolerance: f64, deviation_note: Option<&str>) -> Self {
        Self {
            id: id.to_string(),
            description: description.to_string(),
            residual,
            tolerance,
            passed: residual <= tolerance,
            deviation_note: deviation_note.map(str::to_string),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub grid_spec: GridSpec,
    pub tolerance: f64,
    /// Sorted by id.
    pub checks: Vec<IdentityCheck>,
    /// Documented discrepancies, sorted by id; excluded from `all_passed`.
    pub deviations: Vec<IdentityCheck>,
    pub max_residual: f64,
    pub all_passed: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, id: &str) -> Option<&IdentityCheck> {
        self.checks.iter().chain(&self.deviations).find(|c| c.id == id)
    }
}

/// Grid point with its on-shell state.
#[derive(Clone, Copy, Debug)]
pub(crate) struct GridPoint {
    pub eta: EtaParam,
    pub angles: PolarAngles,
    pub state: MomentumState,
}

pub(crate) struct Context {
    pub grid: GridSpec,
    pub points: Vec<GridPoint>,
}

impl Context {
    fn new(grid: &GridSpec) -> Result<Self> {
        grid.validate()?;
        let angles = grid.angles();
        let mut points = Vec::with_capacity(grid.eta_values.len() * angles.len());
        for &e in &grid.eta_values {
            let eta = EtaParam::new(e)?;
            for &a in &angles {
                let state = MomentumState::from_eta(grid.mass, grid.constants(), eta, a)?;
                points.push(GridPoint { eta, angles: a, state });
            }
        }
        Ok(Self { grid: grid.clone(), points })
    }

    /// Points with non-zero momentum.
    pub fn moving(&self) -> impl Iterator<Item = &GridPoint> {
        self.points.iter().filter(|p| p.state.p_norm() > 0.0)
    }
}

/// Ids of the registered identities belonging to `suite`, sorted.
pub fn registered_ids(suite: Suite) -> Vec<&'static str> {
    let mut ids: Vec<_> = checks::REGISTRY.iter().filter(|d| suite.includes(d.suite)).map(|d| d.id).collect();
    ids.sort_unstable();
    ids
}

/// Ids listed in [`MANIFEST`].
pub fn manifest_ids() -> Vec<&'static str> {
    MANIFEST.lines().map(str::trim).filter(|l| !l.is_empty()).collect()
}

/// Runs every identity of `suite` over `grid`.
pub fn run_suite(suite: Suite, grid: &GridSpec, tol: f64) -> Result<VerificationReport> {
    run_filtered(suite, grid, tol, |_| true)
}

/// Runs only the listed identities (they may belong to any suite).
pub fn run_checks(ids: &[&str], grid: &GridSpec, tol: f64) -> Result<VerificationReport> {
    for id in ids {
        if !checks::REGISTRY.iter().any(|d| d.id == *id) {
            return Err(DiracError::UnknownCheck(id.to_string()));
        }
    }
    run_filtered(Suite::All, grid, tol, |id| ids.contains(&id))
}

fn run_filtered(suite: Suite, grid: &GridSpec, tol: f64, keep: impl Fn(&str) -> bool) -> Result<VerificationReport> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(DiracError::InvalidTolerance(tol));
    }
    let ctx = Context::new(grid)?;
    let mut checks = Vec::new();
    let mut deviations = Vec::new();
    for def in checks::REGISTRY.iter().filter(|d| suite.includes(d.suite) && keep(d.id)) {
        let residual = (def.run)(&ctx);
        let tolerance = if def.dependence { tol.max(DEPENDENCE_TOL) } else { tol };
        let check = IdentityCheck::new(def.id, def.description, residual, tolerance, def.deviation);
        if def.deviation.is_some() {
            deviations.push(check);
        } else {
            checks.push(check);
        }
    }
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    deviations.sort_by(|a, b| a.id.cmp(&b.id));
    let max_residual = checks.iter().map(|c| c.residual).fold(0.0, nan_max);
    let all_passed = checks.iter().all(|c| c.passed);
    Ok(VerificationReport {
        suite,
        grid_spec: grid.clone(),
        tolerance: tol,
        checks,
        deviations,
        max_residual,
        all_passed,
    })
}

/// `max` that lets a NaN through instead of hiding it.
pub(crate) fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}
