//! Feature containers: binary and CSV round trips, distances and chunking.
//!
//! ```bash
//! cargo run --example feature_io
//! ```

use latentprobe::featureset::{load_features, parse_csv, save_features, split_disjoint, to_csv};
use latentprobe::FeatureSet;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let fs = FeatureSet::from_rows(
        &[vec![0.0, 0.0], vec![3.0, 4.0], vec![1.5, -2.25], vec![10.0, 0.5]],
        vec![0, 0, 1, 1],
        2,
    )?;
    println!("n = {}, d = {}, classes = {}", fs.n(), fs.d(), fs.class_count());
    println!("d(0, 1) = {}", fs.pairwise_distance(0, 1)?);

    let dir = tempfile::tempdir()?;
    let path = dir.path().join("features.lpfs");
    save_features(&fs, &path)?;
    let bytes = std::fs::metadata(&path)?.len();
    let back = load_features(&path)?;
    assert_eq!(back, fs);
    println!("binary container: {bytes} bytes, round trip exact");

    let csv = to_csv(&fs);
    print!("{csv}");
    assert_eq!(parse_csv(&csv)?, fs);

    // Hand-written CSV may omit the header's n and L.
    let tiny = parse_csv("# d=2\n1.0,2.0,0\n")?;
    println!("hand-written CSV: n = {}, d = {}", tiny.n(), tiny.d());

    for (i, chunk) in split_disjoint(&fs, 3, 42)?.iter().enumerate() {
        println!("chunk {i}: rows {:?}", chunk.indices);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
