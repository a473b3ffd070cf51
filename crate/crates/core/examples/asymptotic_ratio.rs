//! `|a_n² − a_{2n−1}|/(n − 1)²` along a few fixed maps, up to `n = 40`.

use univalent::harness::{run_scan, Experiment, ScanConfig};

fn main() -> univalent::Result<()> {
    let cfg = ScanConfig::for_experiment(Experiment::Ratio);
    let report = run_scan(&cfg)?;
    for s in &report.ratios {
        let head: Vec<String> = s.ratios.iter().take(4).map(|r| format!("{r:.4}")).collect();
        println!(
            "{:<52} sup {:.4} at n = {:<2} decay {:.4}  [{} ...]",
            s.sample,
            s.sup,
            s.argmax_n,
            s.tail_decay,
            head.join(", ")
        );
    }
    println!("violations: {}", report.violations.len());
    Ok(())
}
