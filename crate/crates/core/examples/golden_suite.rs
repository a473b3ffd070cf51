//! Every fixed-answer check, with the JSON report written next to a CSV.
//!
//! ```bash
//! cargo run --example golden_suite -- /tmp/golden.json
//! ```

use univalent::harness::{run_scan, Experiment, ScanConfig, Status};

fn main() -> univalent::Result<()> {
    let mut cfg = ScanConfig::for_experiment(Experiment::Golden);
    cfg.out = std::env::args().nth(1).map(Into::into);
    let report = run_scan(&cfg)?;
    for c in report.checks.iter().filter(|c| c.status != Status::Pass) {
        println!("[{}] {}: expected {}, found {}", c.status, c.name, c.expected, c.found);
    }
    println!("{}", report.summary());
    std::process::exit(report.exit_code);
}
