//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use dirac_core::kinematics::{MomentumState, PhysicalConstants, Vec3};
use dirac_core::smallmat::{CMat4, Complex};
use dirac_core::spinors::spin_basis_matrix;
use dirac_core::verify::{run_checks, GridSpec, VerificationReport};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

/// Runs `ids` on the default grid; every residual must be at most its bound.
fn residuals(ids: &[(&str, f64)]) -> (VerificationReport, Vec<String>, bool) {
    let names: Vec<&str> = ids.iter().map(|(id, _)| *id).collect();
    let report = run_checks(&names, &GridSpec::default(), 1e-12).expect("registered ids");
    let mut ok = true;
    let mut parts = Vec::new();
    for (id, bound) in ids {
        let c = report.check(id).expect("requested check present");
        ok &= c.residual <= *bound;
        parts.push(format!("{id}={:.2e}", c.residual));
    }
    (report, parts, ok)
}

fn criterion_1() -> Outcome {
    let ids = [
        ("algebra.clifford", 0.0),
        ("algebra.alpha_beta_anticommutators", 0.0),
        ("algebra.alpha_spin_commutators", 0.0),
    ];
    // Warm up the lazily built matrix sets before timing.
    let _ = residuals(&ids);
    let ((_, parts, ok), t) = timed(|| residuals(&ids));
    let fast = t < Duration::from_millis(10);
    Outcome { passed: ok && fast, detail: format!("{} in {:.2?} (< 10 ms)", parts.join(" "), t) }
}

fn criterion_2() -> Outcome {
    let ids = [("spinors.u_eigen", 1e-12), ("spinors.v_eigen", 1e-12), ("spinors.v_helicity", 1e-12)];
    let ((_, parts, ok), t) = timed(|| residuals(&ids));
    let fast = t < Duration::from_secs(1);
    Outcome { passed: ok && fast, detail: format!("{} in {:.2?} (< 1 s)", parts.join(" "), t) }
}

fn simple(ids: &[(&str, f64)]) -> Outcome {
    let (_, parts, ok) = residuals(ids);
    Outcome { passed: ok, detail: parts.join(" ") }
}

fn criterion_9() -> Outcome {
    let rest = CMat4::diag([1.0, 1.0, -1.0, -1.0].map(|x| Complex::new(x, 0.0)));
    let p = Vec3::new(0.48, -0.6, 0.64);
    let cs = [10.0, 100.0, 1000.0];
    let d: Vec<f64> = cs
        .iter()
        .map(|&c| {
            let s = MomentumState::new(1.0, PhysicalConstants::new(c, 1.0).unwrap(), p).unwrap();
            spin_basis_matrix(&s).max_abs_diff(&rest)
        })
        .collect();
    let monotone = d.windows(2).all(|w| w[1] < w[0]);
    let bounded = cs.iter().zip(&d).all(|(c, d)| *d < 3.0 / c);
    let (_, parts, ok) = residuals(&[("spinors.nonrel_limit", 0.0)]);
    Outcome {
        passed: monotone && bounded && ok,
        detail: format!("distances {:.3e} {:.3e} {:.3e} vs 3/c; {}", d[0], d[1], d[2], parts.join(" ")),
    }
}

fn criterion_10() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_dirac");
    let (out, t) = timed(|| {
        Command::new(exe)
            .args(["verify", "--suite", "all", "--format", "json"])
            .env_remove("DIRAC_TOL")
            .output()
            .expect("binary runs")
    });
    let code = out.status.code();
    let json: serde_json::Value = match serde_json::from_slice(&out.stdout) {
        Ok(v) => v,
        Err(e) => return Outcome { passed: false, detail: format!("bad JSON: {e}") },
    };
    let deviations: Vec<&str> = json["outputs"]["deviations"]
        .as_array()
        .map(|a| a.iter().filter_map(|d| d["id"].as_str()).collect())
        .unwrap_or_default();
    let expected = ["density.projector_trace", "kinematics.polar_component", "spinors.v_gamma0_sandwich"];
    let listed = expected.iter().all(|id| deviations.contains(id)) && deviations.len() == 3;
    let all_passed = json["outputs"]["all_passed"].as_bool() == Some(true);
    let checks_exclude = json["checks"]
        .as_array()
        .is_some_and(|a| a.iter().all(|c| !expected.contains(&c["id"].as_str().unwrap_or(""))));
    Outcome {
        passed: code == Some(0) && t < Duration::from_secs(5) && listed && all_passed && checks_exclude,
        detail: format!("exit {code:?} in {t:.2?} (< 5 s), deviations {deviations:?}"),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Clifford, anticommutator and commutator tables exact", criterion_1),
        ("eigen-structure of U and V across the grid", criterion_2),
        ("σ·n = Φ̃Φ† and H = RṼV⁻¹", || {
            simple(&[("spinors.sigma_n_factorization", 1e-12), ("spinors.hamiltonian_factorization", 1e-12)])
        }),
        ("Schur determinant off shell and η-column determinant", || {
            simple(&[("spinors.dirac_block_determinant", 1e-12), ("density.eta_determinant", 1e-12)])
        }),
        ("covariant suite", || {
            simple(&[
                ("covariant.polarization_norms", 1e-12),
                ("covariant.polarization_equation", 1e-12),
                ("covariant.current", 1e-12),
                ("covariant.spin_dual_path", 1e-12),
            ])
        }),
        ("density suite", || {
            simple(&[
                ("density.projector_algebra", 1e-12),
                ("density.outer_product", 1e-12),
                ("density.explicit_densities", 1e-12),
                ("density.block_forms", 1e-12),
            ])
        }),
        ("Fermi audit", || {
            simple(&[
                ("fermi.original_positive_energy", 1e-12),
                ("fermi.original_dependent", 1e-10),
                ("fermi.corrected_determinant", 1e-12),
            ])
        }),
        ("charge conjugation", || simple(&[("spinors.charge_conjugation", 1e-12)])),
        ("nonrelativistic limit", criterion_9),
        ("full verify run", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let mark = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {mark}  {name}: {}", k + 1, o.detail);
        failed += usize::from(!o.passed);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
