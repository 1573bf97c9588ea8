//! Driving the command-line interface in-process: generate data, cluster it,
//! and write a correlation report with a scatter plot.
//!
//! ```bash
//! cargo run --example command_line
//! ```

use latentprobe::cli::run_with;

fn invoke(args: &[&str]) -> Result<serde_json::Value, Box<dyn std::error::Error>> {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(std::iter::once("latentprobe").chain(args.iter().copied()), &mut out, &mut err);
    if code != 0 {
        return Err(String::from_utf8_lossy(&err).into_owned().into());
    }
    Ok(serde_json::from_slice(&out)?)
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let p = |name: &str| dir.path().join(name).to_string_lossy().into_owned();

    let gen = invoke(&["gen-synthetic", "--out-dir", &p("syn"), "--seed", "3", "--severities", "3"])?;
    println!("generated {} rows", gen["result"]["n"]);

    let km = invoke(&["kmeans", "--features", &p("syn/clean.lpfs"), "--k", "5", "--out", &p("km.lpcl")])?;
    println!("k-means scores: {}", km["result"]["scores"]);

    let mc = invoke(&["multicut", "--features", &p("syn/clean.lpfs"), "--sweep", "10:30:2", "--sweep-csv", &p("sweep.csv")])?;
    println!("multicut best theta {}, scores {}", mc["result"]["theta"], mc["result"]["scores"]);

    let cor = invoke(&[
        "correlate",
        "--fixture",
        "table2",
        "--indicator",
        "combined_purity",
        "--csv",
        &p("scatter.csv"),
        "--svg",
        &p("scatter.svg"),
        "--no-timestamp",
    ])?;
    println!("combined purity R² = {:.3}", cor["result"]["r_squared"].as_f64().unwrap_or(f64::NAN));
    println!("scatter CSV has {} lines", std::fs::read_to_string(p("scatter.csv"))?.lines().count());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
