//! Runs every acceptance criterion and prints one line each. Exits nonzero if
//! any criterion fails.

use std::process::ExitCode;

use pvform::acceptance::run_all;
use pvform::par::Execution;

fn main() -> ExitCode {
    // `cargo test -- --list` and filters are accepted and ignored
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    println!("\nrunning 10 acceptance criteria");
    let results = run_all(Execution::default());
    for r in &results {
        println!("{r}");
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    if failed.is_empty() {
        println!("acceptance: all 10 criteria passed\n");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}\n");
        ExitCode::FAILURE
    }
}
