//! `dirac`: verify the identity registry or print individual objects.
//!
//! Exit status: 0 on success, 1 when a verification check fails, 2 for usage
//! and precondition errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dirac_core::covariant::dirac_adjoint;
use dirac_core::density::{helicity_density4, outer_adjoint};
use dirac_core::gamma::helicity_operator;
use dirac_core::kinematics::{EnergyBranch, EtaParam, MomentumState, PhysicalConstants, PolarAngles, Vec3};
use dirac_core::smallmat::CMat4;
use dirac_core::spinors::{
    bispinor_block_raw, boost_bispinor, boost_prefactor, energy_residual, helicity_bispinor, helicity_spinor,
    BiSpinor4, Helicity, NormalizationConvention,
};
use dirac_core::verify::json::{self, Envelope};
use dirac_core::verify::{run_suite, GridSpec, Suite, VerificationReport};
use dirac_core::{DiracError, DEFAULT_TOL};

#[derive(Parser)]
#[command(name = "dirac", version, about = "Free Dirac particle spinors, densities and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the registered identities over a parameter grid.
    Verify(VerifyArgs),
    /// Print a helicity bi-spinor.
    Spinor(SpinorArgs),
    /// Print the polarization density matrix of a helicity state.
    Density(DensityArgs),
    /// Print the boosted rest-frame spinor.
    Boost(BoostArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Branch {
    Pos,
    Neg,
}

impl From<Branch> for EnergyBranch {
    fn from(b: Branch) -> Self {
        match b {
            Branch::Pos => EnergyBranch::Pos,
            Branch::Neg => EnergyBranch::Neg,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Norm {
    Unit,
    Inv1,
    Inv2mc,
    Box,
}

#[derive(Args)]
struct VerifyArgs {
    /// algebra, spinors, covariant, density, fermi or all.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, env = "DIRAC_TOL", default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Comma-separated η values in [0, 1).
    #[arg(long, value_delimiter = ',', default_values_t = GridSpec::default().eta_values)]
    eta: Vec<f64>,
    /// Direction grid as THETAxPHI counts.
    #[arg(long, default_value = "8x8", value_parser = parse_angles)]
    angles: (usize, usize),
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Seed for the randomly sampled identities.
    #[arg(long, default_value_t = GridSpec::default().seed)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct Kinematics {
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Momentum as x,y,z.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_vec3, conflicts_with_all = ["eta", "theta", "phi"])]
    p: Option<Vec3>,
    /// Momentum via η = c|p|/(R + mc²), along (θ, φ).
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    theta: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    phi: f64,
}

impl Kinematics {
    fn state(&self) -> Result<MomentumState, DiracError> {
        let consts = PhysicalConstants::new(self.c, 1.0)?;
        match (self.p, self.eta) {
            (Some(p), _) => MomentumState::new(self.m, consts, p),
            (None, Some(e)) => {
                MomentumState::from_eta(self.m, consts, EtaParam::new(e)?, PolarAngles::new(self.theta, self.phi))
            }
            (None, None) => MomentumState::new(self.m, consts, Vec3::zero()),
        }
    }
}

#[derive(Args)]
struct SpinorArgs {
    #[command(flatten)]
    kin: Kinematics,
    #[arg(long, value_enum, default_value_t = Branch::Pos)]
    branch: Branch,
    /// +1/2 or -1/2.
    #[arg(long, allow_hyphen_values = true, default_value = "+1/2", value_parser = parse_helicity)]
    lambda: Helicity,
    #[arg(long, value_enum, default_value_t = Norm::Unit)]
    norm: Norm,
    /// Box volume for --norm box.
    #[arg(long)]
    volume: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct DensityArgs {
    #[command(flatten)]
    kin: Kinematics,
    #[arg(long, value_enum, default_value_t = Branch::Pos)]
    branch: Branch,
    #[arg(long, allow_hyphen_values = true, default_value = "+1/2", value_parser = parse_helicity)]
    lambda: Helicity,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct BoostArgs {
    #[command(flatten)]
    kin: Kinematics,
    #[arg(long, allow_hyphen_values = true, default_value = "+1/2", value_parser = parse_helicity)]
    lambda: Helicity,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn parse_angles(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or("expected THETAxPHI, e.g. 8x8")?;
    let a = a.trim().parse().map_err(|e| format!("theta count: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("phi count: {e}"))?;
    Ok((a, b))
}

fn parse_vec3(s: &str) -> Result<Vec3, String> {
    let parts: Vec<f64> =
        s.split(',').map(|x| x.trim().parse::<f64>().map_err(|e| format!("'{x}': {e}"))).collect::<Result<_, _>>()?;
    match parts[..] {
        [x, y, z] => Ok(Vec3::new(x, y, z)),
        _ => Err(format!("expected three components, got {}", parts.len())),
    }
}

fn parse_helicity(s: &str) -> Result<Helicity, String> {
    match s {
        "+1/2" | "1/2" | "+0.5" | "0.5" => Ok(Helicity::Plus),
        "-1/2" | "-0.5" => Ok(Helicity::Minus),
        _ => Err(format!("expected +1/2 or -1/2, got '{s}'")),
    }
}

fn norm_convention(norm: Norm, volume: Option<f64>) -> Result<NormalizationConvention, String> {
    Ok(match norm {
        Norm::Unit => NormalizationConvention::Unit,
        Norm::Inv1 => NormalizationConvention::InvariantUnit,
        Norm::Inv2mc => NormalizationConvention::Invariant2mc,
        Norm::Box => NormalizationConvention::Box { volume: volume.ok_or("--norm box needs --volume")? },
    })
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<DiracError> for Failure {
    fn from(e: DiracError) -> Self {
        Self::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Self::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Spinor(a) => spinor(a),
        Command::Density(a) => density(a),
        Command::Boost(a) => boost(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn verify(a: VerifyArgs) -> Result<(), Failure> {
    let suite: Suite = a.suite.parse()?;
    let grid =
        GridSpec { eta_values: a.eta, theta_count: a.angles.0, phi_count: a.angles.1, mass: a.m, c: a.c, seed: a.seed };
    let report = run_suite(suite, &grid, a.tol)?;
    match a.format {
        Format::Json => println!("{}", json::report_to_json(&report)?),
        Format::Text => print_report(&report),
    }
    if report.all_passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn print_report(r: &VerificationReport) {
    let g = &r.grid_spec;
    println!(
        "suite {} | eta {:?} | {}x{} directions | m = {}, c = {} | tol {:e}",
        r.suite, g.eta_values, g.theta_count, g.phi_count, g.mass, g.c, r.tolerance
    );
    for c in &r.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        println!("{mark}  {:<44} {:>10.3e} <= {:.0e}  {}", c.id, c.residual, c.tolerance, c.description);
    }
    if !r.deviations.is_empty() {
        println!("deviations (reported, not counted):");
        for c in &r.deviations {
            println!("  {:<44} {:>10.3e}  {}", c.id, c.residual, c.deviation_note.as_deref().unwrap_or(""));
        }
    }
    let failed = r.failures().count();
    println!(
        "{} checks, {} failed, max residual {:.3e}: {}",
        r.checks.len(),
        failed,
        r.max_residual,
        if r.all_passed { "ok" } else { "FAILED" }
    );
}

#[derive(Serialize)]
struct StateInputs {
    m: f64,
    c: f64,
    p: [f64; 3],
    branch: EnergyBranch,
    lambda: Helicity,
}

impl StateInputs {
    fn new(state: &MomentumState, branch: EnergyBranch, lambda: Helicity) -> Self {
        Self { m: state.m(), c: state.c(), p: state.p().to_array(), branch, lambda }
    }
}

fn helicity_residual(
    u: &BiSpinor4,
    state: &MomentumState,
    branch: EnergyBranch,
    lambda: Helicity,
) -> Result<f64, DiracError> {
    let op = helicity_operator(&frame(state, branch))?;
    Ok((op * *u).max_abs_diff(&(*u * lambda.value())))
}

/// Negative-branch states are eigenvectors of `H(−p)` and of the helicity
/// operator along `−p`.
fn frame(state: &MomentumState, branch: EnergyBranch) -> MomentumState {
    match branch {
        EnergyBranch::Pos => *state,
        EnergyBranch::Neg => state.reversed(),
    }
}

fn spinor(a: SpinorArgs) -> Result<(), Failure> {
    let state = a.kin.state()?;
    let branch = EnergyBranch::from(a.branch);
    let norm = norm_convention(a.norm, a.volume).map_err(Failure::Usage)?;
    let u = helicity_bispinor(a.lambda, &state, branch, norm)?;

    #[derive(Serialize)]
    struct Out {
        components: Vec<[f64; 2]>,
        energy: f64,
        energy_residual: f64,
        helicity_residual: f64,
        dagger_norm: f64,
        bar_norm: [f64; 2],
    }
    let out = Out {
        components: json::vector(&u),
        energy: state.energy(branch),
        energy_residual: energy_residual(&u, &frame(&state, branch), branch),
        helicity_residual: helicity_residual(&u, &state, branch, a.lambda)?,
        dagger_norm: u.norm_sqr(),
        bar_norm: json::complex(dirac_adjoint(&u).dot(&u)),
    };
    match a.format {
        Format::Json => {
            #[derive(Serialize)]
            struct In {
                #[serde(flatten)]
                state: StateInputs,
                norm: NormalizationConvention,
            }
            let inputs = In { state: StateInputs::new(&state, branch, a.lambda), norm };
            println!("{}", json::to_string(&Envelope::new(inputs, out, None))?);
        }
        Format::Text => {
            for (k, z) in u.0.iter().enumerate() {
                println!("u[{k}] = {:+.16e} {:+.16e}i", z.re, z.im);
            }
            println!("energy            {:+.16e}", out.energy);
            println!("energy residual   {:.3e}", out.energy_residual);
            println!("helicity residual {:.3e}", out.helicity_residual);
            println!("u†u               {:.16e}", out.dagger_norm);
            println!("ūu                {:+.16e}", out.bar_norm[0]);
        }
    }
    Ok(())
}

fn density(a: DensityArgs) -> Result<(), Failure> {
    let state = a.kin.state()?;
    let branch = EnergyBranch::from(a.branch);
    let rho = helicity_density4(&state, branch, a.lambda)?.matrix;
    let u = helicity_bispinor(a.lambda, &state, branch, NormalizationConvention::Invariant2mc)?;
    let outer: CMat4 = outer_adjoint(&u) * branch.sign();

    #[derive(Serialize)]
    struct Out {
        matrix: Vec<Vec<[f64; 2]>>,
        trace: [f64; 2],
        outer_product_residual: f64,
    }
    let out = Out {
        matrix: json::matrix(&rho),
        trace: json::complex(rho.trace()),
        outer_product_residual: rho.max_abs_diff(&outer),
    };
    match a.format {
        Format::Json => {
            let inputs = StateInputs::new(&state, branch, a.lambda);
            println!("{}", json::to_string(&Envelope::new(inputs, out, None))?);
        }
        Format::Text => {
            for row in rho.rows() {
                let cells: Vec<String> = row.iter().map(|z| format!("{:+.6e}{:+.6e}i", z.re, z.im)).collect();
                println!("{}", cells.join("  "));
            }
            println!("trace                  {:+.16e}", out.trace[0]);
            println!("outer-product residual {:.3e}", out.outer_product_residual);
        }
    }
    Ok(())
}

fn boost(a: BoostArgs) -> Result<(), Failure> {
    let state = a.kin.state()?;
    let angles = match state.angles() {
        Ok(angles) => angles,
        Err(DiracError::ZeroMomentum) => PolarAngles::new(a.kin.theta, a.kin.phi),
        Err(e) => return Err(e.into()),
    };
    let phi = helicity_spinor(a.lambda, &angles);
    let u = boost_bispinor(&phi, &state)?;
    let direct = bispinor_block_raw(&phi, &state, EnergyBranch::Pos) * boost_prefactor(&state);

    #[derive(Serialize)]
    struct Out {
        components: Vec<[f64; 2]>,
        rapidity: f64,
        prefactor: f64,
        block_form_residual: f64,
    }
    let out = Out {
        components: json::vector(&u),
        rapidity: state.rapidity()?,
        prefactor: boost_prefactor(&state),
        block_form_residual: u.max_abs_diff(&direct),
    };
    match a.format {
        Format::Json => {
            let inputs = StateInputs::new(&state, EnergyBranch::Pos, a.lambda);
            println!("{}", json::to_string(&Envelope::new(inputs, out, None))?);
        }
        Format::Text => {
            for (k, z) in u.0.iter().enumerate() {
                println!("u[{k}] = {:+.16e} {:+.16e}i", z.re, z.im);
            }
            println!("rapidity            {:.16e}", out.rapidity);
            println!("prefactor C         {:.16e}", out.prefactor);
            println!("block-form residual {:.3e}", out.block_form_residual);
        }
    }
    Ok(())
}
