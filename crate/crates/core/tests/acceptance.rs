//! Runs the acceptance suite without the libtest harness so that each
//! criterion prints exactly one PASS/FAIL line.

use std::process::ExitCode;
use std::time::Instant;

use richword::acceptance::criteria;

fn main() -> ExitCode {
    let all = criteria();
    let mut failures = 0;
    for c in &all {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {}: {detail} [{elapsed:.1?}]", c.id, c.name),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {}: {detail} [{elapsed:.1?}]", c.id, c.name);
            }
        }
    }
    println!("acceptance: {}/{} passed", all.len() - failures, all.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
