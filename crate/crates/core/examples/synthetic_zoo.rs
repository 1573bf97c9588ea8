//! End-to-end on synthetic latent spaces: five "models" of increasing class
//! separation, corrupted at five severities, scored and correlated.
//!
//! ```bash
//! cargo run --release --example synthetic_zoo
//! ```

use latentprobe::indicators::{correlate, Indicator};
use latentprobe::zoo::{build_zoo, ZooSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = ZooSpec::standard(4);
    let zoo = build_zoo(&spec)?;
    for (m, sep) in zoo.iter().zip(&spec.separations) {
        let r = &m.record;
        println!(
            "{} (separation {sep}): clean {:.1}, km purity {:.1}, mc purity {:.1}, delta by severity {:?}",
            r.name,
            r.clean_acc,
            r.kmeans_purity.unwrap_or_default(),
            r.multicut_purity.unwrap_or_default(),
            m.delta_by_severity.iter().map(|d| (d * 1000.0).round() / 1000.0).collect::<Vec<_>>()
        );
    }
    let records: Vec<_> = zoo.into_iter().map(|m| m.record).collect();
    for indicator in [Indicator::KmeansPurity, Indicator::CombinedPurity] {
        let r = correlate(&records, indicator, None)?;
        println!(
            "{indicator}: R² {:.3}, slope {:+.3}, tau {:.3}",
            r.r_squared, r.fit.slope, r.kendall_tau
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
