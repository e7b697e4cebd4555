//! Acceptance criteria at full scale, one line per criterion. Runs without
//! the libtest harness so the lines are never captured.

use std::process::ExitCode;
use std::time::Instant;

use nah_core::checks::{self, Report, Scale};

const SEED: u64 = 20240611;

fn main() -> ExitCode {
    let runs: [fn(u64, Scale) -> Report; 9] = [
        checks::rees_roundtrip,
        checks::purity,
        checks::twistor_identities,
        checks::section_uniqueness,
        checks::sigma_prime_identity,
        checks::jump_loci,
        checks::gm_geometry,
        checks::langton_reduction,
        checks::birkhoff_consistency,
    ];
    let mut failed = Vec::new();
    for run in runs {
        let start = Instant::now();
        let report = run(SEED, Scale::full());
        println!("{} [{:.2?}]", report.line(), start.elapsed());
        if !report.passed() {
            failed.push(report.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: criteria failed: {failed:?}");
        ExitCode::FAILURE
    }
}
