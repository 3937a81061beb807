//! One line per acceptance criterion. Criteria recorded as failing in
//! `EXPECTED_FAILURES` still print FAIL; the run exits non-zero only when an
//! outcome differs from the record.

use std::process::ExitCode;
use std::time::Instant;

use zonal::checks::{run_criterion, runtime_limit, CRITERIA};

/// Criteria whose checks cannot all hold as stated (see README, "Known failures").
const EXPECTED_FAILURES: [u8; 2] = [8, 10];

fn main() -> ExitCode {
    let verbose = std::env::args().any(|a| a == "--verbose" || a == "-v");
    let mut unexpected = Vec::new();
    for id in CRITERIA {
        let start = Instant::now();
        let report = run_criterion(id);
        let elapsed = start.elapsed().as_secs_f64();
        let in_time = runtime_limit(id).is_none_or(|limit| elapsed < limit);
        let passed = report.passed && in_time;
        let timing = match runtime_limit(id) {
            Some(limit) => format!("{elapsed:.2}s, limit {limit:.0}s"),
            None => format!("{elapsed:.2}s"),
        };
        println!("criterion {id:>2} [{}] {} ({timing})", if passed { "PASS" } else { "FAIL" }, report.title);
        for line in report.details.iter().filter(|l| verbose || !l.starts_with("[ok]")) {
            println!("    {line}");
        }
        if passed == EXPECTED_FAILURES.contains(&id) {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: outcomes match the record (expected failures: {EXPECTED_FAILURES:?})");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
