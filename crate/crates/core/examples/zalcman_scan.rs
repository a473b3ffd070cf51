//! A seeded Zalcman scan over the catalog plus random starlike maps.
//!
//! ```bash
//! WORKBENCH_THREADS=2 cargo run --release --example zalcman_scan -- 2000 float
//! ```

use univalent::harness::{run_scan, Experiment, ScanConfig};

fn main() -> univalent::Result<()> {
    let mut args = std::env::args().skip(1);
    let mut cfg = ScanConfig::for_experiment(Experiment::Zalcman);
    if let Some(n) = args.next() {
        cfg.samples = n.parse().map_err(|_| univalent::Error::Config(format!("sample count `{n}`")))?;
    }
    if let Some(mode) = args.next() {
        cfg.mode = mode.parse()?;
    }
    let report = run_scan(&cfg)?;
    println!("{}", report.summary());
    for w in report.witnesses.iter().filter(|w| w.n == 3) {
        println!("  attains 4 at n = 3: {}", w.sample);
    }
    std::process::exit(report.exit_code);
}
