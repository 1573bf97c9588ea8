//! Robustness prediction on the bundled benchmark table of 12 ImageNet
//! classifiers.
//!
//! ```bash
//! cargo run --example fixture_correlation
//! ```

use latentprobe::indicators::{correlate, table2, Indicator};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let records = table2().records;
    println!("{:<16} {:>6} {:>6}", "indicator", "R²", "tau");
    for indicator in Indicator::ALL {
        match correlate(&records, indicator, None) {
            Ok(r) => println!("{:<16} {:>6.3} {:>6.3}", indicator.name(), r.r_squared, r.kendall_tau),
            Err(e) => println!("{:<16} skipped: {e}", indicator.name()),
        }
    }

    let r = correlate(&records, Indicator::KmeansAcc, None)?;
    println!("\nrank  predicted           actual");
    for (i, (p, a)) in r.predicted_ranking.iter().zip(&r.actual_ranking).enumerate() {
        println!("{:>4}  {p:<18}  {a}", i + 1);
    }
    let alexnet = r.points.iter().find(|p| p.name == "alexnet").expect("alexnet in fixture");
    println!(
        "\nalexnet: predicted {:.1}, actual {:.1}",
        100.0 * alexnet.indicator,
        100.0 * alexnet.robustness
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
