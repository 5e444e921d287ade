//! Verification and experimentation: exhaustive coverage, property checks
//! of the mask construction, the published-table reproduction and a seeded
//! defect/error channel simulator.

mod coverage;
mod sim;
mod table;
mod theorems;

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

pub use coverage::{
    coverage_size, verify_coverage, verify_coverage_sampled, verify_coverage_with_guard,
    CoverageReport, DEFAULT_GUARD,
};
pub use sim::{simulate, ErrorModel, SimStats};
pub use table::{reproduce_table1, reproduce_table1_with, TableExpectation, TableRow, TABLE1};
pub use theorems::{verify_theorems, verify_theorems_with_guard};

use crate::error::Result;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// Which published claim the check exercises.
    pub anchor: String,
    pub params: String,
    pub passed: bool,
    pub measured: String,
    pub expected: String,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed)
    }

    /// Times `f` and records its `(passed, measured, expected)` result.
    pub(crate) fn run(
        &mut self,
        name: &str,
        anchor: &str,
        params: String,
        f: impl FnOnce() -> (bool, String, String),
    ) {
        let start = Instant::now();
        let (passed, measured, expected) = f();
        self.records.push(CheckRecord {
            name: name.to_string(),
            anchor: anchor.to_string(),
            params,
            passed,
            measured,
            expected,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }

    /// One line per check.
    pub fn write_text<W: Write>(&self, mut out: W) -> Result<()> {
        for r in &self.records {
            writeln!(
                out,
                "{} {:<22} {:<14} measured={} expected={} [{}] {:.1}ms",
                if r.passed { "PASS" } else { "FAIL" },
                r.name,
                r.params,
                r.measured,
                r.expected,
                r.anchor,
                r.elapsed_ms
            )?;
        }
        Ok(())
    }

    /// JSON lines, one record per check.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut out, r).map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
        Ok(())
    }
}
