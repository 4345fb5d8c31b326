//! Byte-stable JSON output: floats carry 17 significant digits, complex
//! numbers are `[re, im]` pairs and matrices are row-major nested arrays.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;

use super::{IdentityCheck, VerificationReport};
use crate::smallmat::{CMat, CVec, Complex};

/// Compact formatter that prints every finite float as `{:.16e}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct RoundTripFormatter;

impl Formatter for RoundTripFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

pub fn to_string<T: Serialize + ?Sized>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, RoundTripFormatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

pub fn complex(z: Complex) -> [f64; 2] {
    [z.re, z.im]
}

pub fn vector<const N: usize>(v: &CVec<N>) -> Vec<[f64; 2]> {
    v.0.iter().copied().map(complex).collect()
}

pub fn matrix<const N: usize>(m: &CMat<N>) -> Vec<Vec<[f64; 2]>> {
    m.rows().iter().map(|row| row.iter().copied().map(complex).collect()).collect()
}

/// Top-level `{version, inputs, outputs, checks?}` object.
#[derive(Serialize)]
pub struct Envelope<'a, I: Serialize, O: Serialize> {
    pub version: &'static str,
    pub inputs: I,
    pub outputs: O,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<&'a [IdentityCheck]>,
}

impl<'a, I: Serialize, O: Serialize> Envelope<'a, I, O> {
    pub fn new(inputs: I, outputs: O, checks: Option<&'a [IdentityCheck]>) -> Self {
        Self { version: env!("CARGO_PKG_VERSION"), inputs, outputs, checks }
    }
}

#[derive(Serialize)]
struct ReportInputs<'a> {
    suite: &'a str,
    grid: &'a super::GridSpec,
    tolerance: f64,
}

#[derive(Serialize)]
struct ReportOutputs<'a> {
    all_passed: bool,
    max_residual: f64,
    check_count: usize,
    failures: Vec<&'a str>,
    deviations: &'a [IdentityCheck],
}

pub fn report_to_json(report: &VerificationReport) -> serde_json::Result<String> {
    let inputs = ReportInputs { suite: report.suite.name(), grid: &report.grid_spec, tolerance: report.tolerance };
    let outputs = ReportOutputs {
        all_passed: report.all_passed,
        max_residual: report.max_residual,
        check_count: report.checks.len(),
        failures: report.failures().map(|c| c.id.as_str()).collect(),
        deviations: &report.deviations,
    };
    to_string(&Envelope::new(inputs, outputs, Some(&report.checks)))
}
