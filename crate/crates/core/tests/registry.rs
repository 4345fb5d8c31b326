use dirac_core::verify::json::report_to_json;
use dirac_core::verify::{manifest_ids, registered_ids, run_checks, run_suite, GridSpec, Suite, DEPENDENCE_TOL};
use dirac_core::DiracError;

fn small_grid() -> GridSpec {
    GridSpec { eta_values: vec![0.2, 0.6], theta_count: 3, phi_count: 4, ..GridSpec::default() }
}

#[test]
fn manifest_lists_every_registered_identity() {
    assert_eq!(registered_ids(Suite::All), manifest_ids());
}

#[test]
fn module_suites_partition_the_registry() {
    let mut ids: Vec<_> = Suite::MODULES.iter().flat_map(|s| registered_ids(*s)).collect();
    ids.sort_unstable();
    assert_eq!(ids, registered_ids(Suite::All));
}

#[test]
fn every_manifest_id_is_reported() {
    let report = run_suite(Suite::All, &GridSpec::default(), 1e-12).unwrap();
    let mut seen: Vec<_> = report.checks.iter().chain(&report.deviations).map(|c| c.id.as_str()).collect();
    seen.sort_unstable();
    assert_eq!(seen, manifest_ids());
    assert!(report.all_passed, "{:?}", report.failures().collect::<Vec<_>>());
    assert!(report.max_residual <= 1e-12);
}

#[test]
fn json_output_is_deterministic() {
    let a = report_to_json(&run_suite(Suite::All, &small_grid(), 1e-12).unwrap()).unwrap();
    let b = report_to_json(&run_suite(Suite::All, &small_grid(), 1e-12).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn impossible_tolerance_fails() {
    let report = run_suite(Suite::Density, &small_grid(), 1e-30).unwrap();
    assert!(!report.all_passed);
    assert!(report.failures().count() > 0);
}

#[test]
fn dependence_check_uses_looser_floor() {
    let report = run_suite(Suite::Fermi, &small_grid(), 1e-12).unwrap();
    let dep = report.check("fermi.original_dependent").unwrap();
    assert_eq!(dep.tolerance, DEPENDENCE_TOL);
    assert!(dep.passed);
    assert_eq!(report.check("fermi.corrected_determinant").unwrap().tolerance, 1e-12);
}

#[test]
fn deviations_never_fail_the_run() {
    let report = run_suite(Suite::All, &small_grid(), 1e-12).unwrap();
    assert_eq!(report.deviations.len(), 3);
    for d in &report.deviations {
        assert!(!d.passed, "{} unexpectedly holds", d.id);
        assert!(d.deviation_note.is_some());
    }
    assert!(report.all_passed);
    assert!(report.max_residual < 1e-12);
}

#[test]
fn unknown_ids_are_rejected() {
    let err = run_checks(&["spinors.nope"], &small_grid(), 1e-12).unwrap_err();
    assert_eq!(err, DiracError::UnknownCheck("spinors.nope".into()));
}

#[test]
fn larger_c_passes_at_energy_scaled_tolerance() {
    // Residuals are absolute, so they grow with the largest energy on the grid.
    let grid = GridSpec { c: 137.0, mass: 0.5, ..small_grid() };
    let eta = 0.6f64;
    let r_max = grid.mass * grid.c * grid.c * (1.0 + eta * eta) / (1.0 - eta * eta);
    let report = run_suite(Suite::All, &grid, 1e-14 * r_max).unwrap();
    assert!(report.all_passed, "{:?}", report.failures().collect::<Vec<_>>());
}
