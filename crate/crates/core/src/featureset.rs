//! Labeled feature matrices and their on-disk formats.
//!
//! A [`FeatureSet`] is an `n x d` row-major matrix of `f32` latent coordinates
//! together with one class label per row. Two file formats are supported:
//!
//! * **Binary container** (the interchange format, always used for writing).
//!   All integers little-endian:
//!
//!   | offset | size      | field                          |
//!   |--------|-----------|--------------------------------|
//!   | 0      | 4         | magic `b"LPFS"`                |
//!   | 4      | 4         | version (`u32`, currently 1)   |
//!   | 8      | 8         | `n` (`u64`)                    |
//!   | 16     | 4         | `d` (`u32`)                    |
//!   | 20     | 4         | class count `L` (`u32`)        |
//!   | 24     | `4·n·d`   | matrix, `f32`, row-major       |
//!   | …      | `4·n`     | labels, `u32`                  |
//!
//! * **CSV**, meant for small hand-written inputs. An optional first line
//!   `# n,d,L` (positional) or `# n=..,d=..,L=..` (keyed, any subset, the `#`
//!   may be omitted) declares the shape; each following line holds `d` floats
//!   and the integer label. Values are written with 9 significant digits,
//!   enough to round-trip any `f32`.
//!
//! Shuffling in [`split_disjoint`] and [`subset`] uses ChaCha8 seeded with
//! `seed_from_u64`, which is portable across platforms.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"LPFS";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSet {
    n: usize,
    d: usize,
    class_count: usize,
    data: Vec<f32>,
    labels: Vec<usize>,
}

impl FeatureSet {
    /// Builds a feature set, checking every invariant. `n` is inferred from
    /// the label count.
    pub fn new(d: usize, class_count: usize, data: Vec<f32>, labels: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Invariant("feature set must contain at least one sample".into()));
        }
        if d == 0 {
            return Err(Error::Invariant("feature dimension must be at least 1".into()));
        }
        if data.len() != n * d {
            return Err(Error::DimensionMismatch {
                expected: n * d,
                found: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / d,
                col: pos % d,
            });
        }
        if let Some((row, &label)) = labels.iter().enumerate().find(|(_, &l)| l >= class_count) {
            return Err(Error::LabelOutOfRange {
                row,
                label,
                class_count,
            });
        }
        Ok(Self {
            n,
            d,
            class_count,
            data,
            labels,
        })
    }

    /// Unlabeled points (every label 0, one class).
    pub fn unlabeled(d: usize, data: Vec<f32>) -> Result<Self> {
        let n = data.len().checked_div(d).unwrap_or(0);
        Self::new(d, 1, data, vec![0; n])
    }

    pub fn from_rows(rows: &[Vec<f32>], labels: Vec<usize>, class_count: usize) -> Result<Self> {
        let d = rows.first().map(Vec::len).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * d);
        for row in rows {
            if row.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        if rows.len() != labels.len() {
            return Err(Error::LengthMismatch {
                left: rows.len(),
                right: labels.len(),
            });
        }
        Self::new(d, class_count, data, labels)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn row(&self, i: usize) -> &[f32] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f32]> {
        self.data.chunks_exact(self.d)
    }

    /// Squared Euclidean distance between rows `i` and `j`.
    pub fn pairwise_distance(&self, i: usize, j: usize) -> Result<f64> {
        for idx in [i, j] {
            if idx >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    len: self.n,
                });
            }
        }
        Ok(squared_distance(self.row(i), self.row(j)))
    }

    /// New set holding the given rows, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let mut data = Vec::with_capacity(indices.len() * self.d);
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= self.n {
                return Err(Error::IndexOutOfRange { index: i, len: self.n });
            }
            data.extend_from_slice(self.row(i));
            labels.push(self.labels[i]);
        }
        Self::new(self.d, self.class_count, data, labels)
    }

    /// Same labels, replaced matrix. Used by transforms that keep row identity.
    pub fn with_data(&self, d: usize, data: Vec<f32>) -> Result<Self> {
        Self::new(d, self.class_count, data, self.labels.clone())
    }

    /// Number of samples carrying each label.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.class_count];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }
}

pub fn squared_distance(a: &[f32], b: &[f32]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let diff = f64::from(x) - f64::from(y);
            diff * diff
        })
        .sum()
}

/// Reads a feature file, dispatching on the leading magic bytes: the binary
/// container if present, CSV otherwise.
pub fn load_features(path: impl AsRef<Path>) -> Result<FeatureSet> {
    let bytes = fs::read(path)?;
    if bytes.starts_with(MAGIC) {
        decode_binary(&bytes)
    } else {
        let text = String::from_utf8(bytes)
            .map_err(|_| Error::MalformedHeader("neither a binary container nor UTF-8 CSV".into()))?;
        parse_csv(&text)
    }
}

pub fn save_features(fs: &FeatureSet, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, encode_binary(fs))?;
    Ok(())
}

pub fn encode_binary(fs: &FeatureSet) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + 4 * fs.n * fs.d + 4 * fs.n);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(fs.n as u64).to_le_bytes());
    out.extend_from_slice(&(fs.d as u32).to_le_bytes());
    out.extend_from_slice(&(fs.class_count as u32).to_le_bytes());
    for v in &fs.data {
        out.extend_from_slice(&v.to_le_bytes());
    }
    for &l in &fs.labels {
        out.extend_from_slice(&(l as u32).to_le_bytes());
    }
    out
}

fn read_u32(bytes: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(bytes[at..at + 4].try_into().unwrap())
}

pub fn decode_binary(bytes: &[u8]) -> Result<FeatureSet> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::MalformedHeader(format!(
            "header needs {HEADER_LEN} bytes, file has {}",
            bytes.len()
        )));
    }
    if &bytes[..4] != MAGIC {
        return Err(Error::MalformedHeader("bad magic".into()));
    }
    let version = read_u32(bytes, 4);
    if version != VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let n = u64::from_le_bytes(bytes[8..16].try_into().unwrap()) as usize;
    let d = read_u32(bytes, 16) as usize;
    let class_count = read_u32(bytes, 20) as usize;
    if n == 0 || d == 0 {
        return Err(Error::MalformedHeader(format!("n={n}, d={d}: both must be positive")));
    }

    let row_bytes = 4 * d;
    let payload = &bytes[HEADER_LEN..];
    let expected = n
        .checked_mul(row_bytes + 4)
        .ok_or_else(|| Error::MalformedHeader("declared size overflows".into()))?;
    if payload.len() < expected {
        // Complete matrix rows, or complete labels once the matrix is whole.
        let found = if payload.len() >= n * row_bytes {
            (payload.len() - n * row_bytes) / 4
        } else {
            payload.len() / row_bytes
        };
        return Err(Error::TruncatedPayload { expected: n, found });
    }
    if payload.len() > expected {
        return Err(Error::TrailingData(payload.len() - expected));
    }

    let (matrix, label_bytes) = payload.split_at(n * row_bytes);
    let data = matrix
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let labels = label_bytes
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes(c.try_into().unwrap()) as usize)
        .collect();
    FeatureSet::new(d, class_count, data, labels)
}

#[derive(Debug, Default)]
struct CsvHeader {
    n: Option<usize>,
    d: Option<usize>,
    class_count: Option<usize>,
}

fn parse_header(line: &str, line_no: usize) -> Result<CsvHeader> {
    let body = line.trim_start_matches('#').trim();
    let parts: Vec<&str> = body.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
    let bad = |msg: String| Error::MalformedHeader(format!("line {line_no}: {msg}"));
    let parse_num = |s: &str| s.parse::<usize>().map_err(|_| bad(format!("`{s}` is not a count")));

    let mut header = CsvHeader::default();
    if parts.iter().any(|p| p.contains('=')) {
        for part in parts {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| bad(format!("mixed keyed and positional fields in `{body}`")))?;
            let value = parse_num(value.trim())?;
            match key.trim() {
                "n" => header.n = Some(value),
                "d" => header.d = Some(value),
                "L" | "l" | "classes" => header.class_count = Some(value),
                other => return Err(bad(format!("unknown key `{other}`"))),
            }
        }
    } else {
        if parts.len() != 3 {
            return Err(bad(format!("expected `n,d,L`, got `{body}`")));
        }
        header.n = Some(parse_num(parts[0])?);
        header.d = Some(parse_num(parts[1])?);
        header.class_count = Some(parse_num(parts[2])?);
    }
    Ok(header)
}

pub fn parse_csv(text: &str) -> Result<FeatureSet> {
    let mut header = CsvHeader::default();
    let mut data = Vec::new();
    let mut labels = Vec::new();
    let mut d = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if labels.is_empty() && (line.starts_with('#') || line.contains('=')) {
            header = parse_header(line, line_no)?;
            d = header.d;
            continue;
        }
        if line.starts_with('#') {
            continue;
        }

        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let width = *d.get_or_insert(fields.len().saturating_sub(1));
        if width == 0 || fields.len() != width + 1 {
            return Err(Error::DimensionMismatch {
                expected: width + 1,
                found: fields.len(),
            });
        }
        let row = labels.len();
        for (col, field) in fields[..width].iter().enumerate() {
            let value: f64 = field.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("`{field}` is not a number"),
            })?;
            let value = value as f32;
            if !value.is_finite() {
                return Err(Error::NonFinite { row, col });
            }
            data.push(value);
        }
        let label: usize = fields[width].parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("`{}` is not a label", fields[width]),
        })?;
        labels.push(label);
    }

    if let Some(n) = header.n {
        if labels.len() < n {
            return Err(Error::TruncatedPayload {
                expected: n,
                found: labels.len(),
            });
        }
        if labels.len() > n {
            return Err(Error::TrailingData(labels.len() - n));
        }
    }
    let class_count = header
        .class_count
        .unwrap_or_else(|| labels.iter().max().map_or(1, |m| m + 1));
    FeatureSet::new(d.unwrap_or(0), class_count, data, labels)
}

pub fn to_csv(fs: &FeatureSet) -> String {
    let mut out = format!("# {},{},{}\n", fs.n, fs.d, fs.class_count);
    for (row, label) in fs.rows().zip(&fs.labels) {
        for v in row {
            write!(out, "{v:.8e},").unwrap();
        }
        writeln!(out, "{label}").unwrap();
    }
    out
}

pub fn save_csv(fs: &FeatureSet, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_csv(fs))?;
    Ok(())
}

/// One disjoint piece of a feature set; `indices[i]` is the original row of
/// local row `i`.
#[derive(Debug, Clone)]
pub struct Chunk {
    pub features: FeatureSet,
    pub indices: Vec<usize>,
}

fn shuffled_indices(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

/// Shuffles the rows with a seeded generator and slices them into `chunks`
/// contiguous pieces whose sizes differ by at most one (larger pieces first).
pub fn split_disjoint(fs: &FeatureSet, chunks: usize, seed: u64) -> Result<Vec<Chunk>> {
    if chunks == 0 || chunks > fs.n {
        return Err(Error::ChunksOutOfRange { chunks, n: fs.n });
    }
    let order = shuffled_indices(fs.n, seed);
    let base = fs.n / chunks;
    let extra = fs.n % chunks;
    let mut start = 0;
    let mut out = Vec::with_capacity(chunks);
    for c in 0..chunks {
        let len = base + usize::from(c < extra);
        let indices = order[start..start + len].to_vec();
        start += len;
        out.push(Chunk {
            features: fs.select(&indices)?,
            indices,
        });
    }
    Ok(out)
}

/// Random subset of `size` rows, returned in ascending original order.
pub fn subset(fs: &FeatureSet, size: usize, seed: u64) -> Result<Chunk> {
    if size == 0 || size > fs.n {
        return Err(Error::InvalidParameter(format!(
            "subset size {size} must be in 1..={}",
            fs.n
        )));
    }
    let mut indices = shuffled_indices(fs.n, seed);
    indices.truncate(size);
    indices.sort_unstable();
    Ok(Chunk {
        features: fs.select(&indices)?,
        indices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small() -> FeatureSet {
        FeatureSet::from_rows(
            &[vec![0.0, 0.0], vec![3.0, 4.0], vec![-1.5, 2.25]],
            vec![0, 1, 1],
            2,
        )
        .unwrap()
    }

    #[test]
    fn save_load_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.lpf");
        let fs = small();
        save_features(&fs, &path).unwrap();
        assert_eq!(load_features(&path).unwrap(), fs);
    }

    #[test]
    fn csv_with_keyed_header() {
        let fs = parse_csv("d=2\n1.0,2.0,0\n").unwrap();
        assert_eq!(fs.n(), 1);
        assert_eq!(fs.d(), 2);
        assert_eq!(fs.labels(), &[0]);
        assert_eq!(fs.row(0), &[1.0, 2.0]);
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let fs = FeatureSet::from_rows(
            &[vec![0.1, 1.0e-7], vec![3.402_823_5e38, -7.25]],
            vec![0, 1],
            2,
        )
        .unwrap();
        assert_eq!(parse_csv(&to_csv(&fs)).unwrap(), fs);
    }

    #[test]
    fn csv_short_payload() {
        let err = parse_csv("# 5,1,1\n1,0\n2,0\n3,0\n4,0\n").unwrap_err();
        assert!(matches!(err, Error::TruncatedPayload { expected: 5, found: 4 }));
    }

    #[test]
    fn binary_short_payload() {
        let fs = FeatureSet::unlabeled(1, vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        let bytes = encode_binary(&fs);
        // Drop the last row's worth of data (labels area shifts into matrix).
        let cut = &bytes[..bytes.len() - 8];
        assert!(matches!(
            decode_binary(cut).unwrap_err(),
            Error::TruncatedPayload { expected: 5, .. }
        ));
    }

    #[test]
    fn distinct_errors() {
        assert!(matches!(parse_csv("# 1,2\n").unwrap_err(), Error::MalformedHeader(_)));
        assert!(matches!(
            parse_csv("# 1,2,1\n1.0,0\n").unwrap_err(),
            Error::DimensionMismatch { .. }
        ));
        assert!(matches!(
            parse_csv("1.0,inf,0\n").unwrap_err(),
            Error::NonFinite { row: 0, col: 1 }
        ));
        assert!(matches!(
            parse_csv("# 1,1,2\n1.0,2\n").unwrap_err(),
            Error::LabelOutOfRange { label: 2, .. }
        ));
        let mut bytes = encode_binary(&small());
        bytes[0] = b'X';
        assert!(matches!(decode_binary(&bytes).unwrap_err(), Error::MalformedHeader(_)));
    }

    #[test]
    fn empty_set_rejected() {
        assert!(matches!(
            FeatureSet::new(2, 1, vec![], vec![]).unwrap_err(),
            Error::Invariant(_)
        ));
    }

    #[test]
    fn container_size_for_wide_features() {
        // 24-byte header + 2 rows of 4096 f32 + 2 u32 labels.
        let fs = FeatureSet::unlabeled(4096, vec![0.5; 2 * 4096]).unwrap();
        assert_eq!(encode_binary(&fs).len(), 24 + 2 * 4096 * 4 + 2 * 4);
        assert_eq!(encode_binary(&fs).len(), 32_800);
    }

    #[test]
    fn distances() {
        let fs = small();
        assert_eq!(fs.pairwise_distance(0, 0).unwrap(), 0.0);
        assert_eq!(fs.pairwise_distance(0, 1).unwrap(), 25.0);
        assert!(matches!(
            fs.pairwise_distance(0, 3).unwrap_err(),
            Error::IndexOutOfRange { index: 3, len: 3 }
        ));
    }

    #[test]
    fn split_sizes_and_determinism() {
        let fs = FeatureSet::unlabeled(1, (0..10).map(|v| v as f32).collect()).unwrap();
        let chunks = split_disjoint(&fs, 3, 11).unwrap();
        let sizes: Vec<usize> = chunks.iter().map(|c| c.indices.len()).collect();
        assert_eq!(sizes, vec![4, 3, 3]);
        let again = split_disjoint(&fs, 3, 11).unwrap();
        for (a, b) in chunks.iter().zip(&again) {
            assert_eq!(a.indices, b.indices);
        }
        let single = split_disjoint(&fs, 1, 3).unwrap();
        assert_eq!(single.len(), 1);
        let mut idx = single[0].indices.clone();
        idx.sort_unstable();
        assert_eq!(idx, (0..10).collect::<Vec<_>>());
        for (local, &orig) in single[0].indices.iter().enumerate() {
            assert_eq!(single[0].features.row(local), fs.row(orig));
        }
        assert!(split_disjoint(&fs, 0, 1).is_err());
        assert!(split_disjoint(&fs, 11, 1).is_err());
    }

    fn arb_featureset() -> impl Strategy<Value = FeatureSet> {
        (1usize..6, 1usize..5, 1usize..4).prop_flat_map(|(n, d, l)| {
            (
                proptest::collection::vec(-1.0e6f32..1.0e6, n * d),
                proptest::collection::vec(0..l, n),
            )
                .prop_map(move |(data, labels)| FeatureSet::new(d, l, data, labels).unwrap())
        })
    }

    proptest! {
        #[test]
        fn binary_round_trip(fs in arb_featureset()) {
            prop_assert_eq!(decode_binary(&encode_binary(&fs)).unwrap(), fs);
        }

        #[test]
        fn distance_axioms(fs in arb_featureset()) {
            for i in 0..fs.n() {
                prop_assert_eq!(fs.pairwise_distance(i, i).unwrap(), 0.0);
                for j in 0..fs.n() {
                    let dij = fs.pairwise_distance(i, j).unwrap();
                    prop_assert!(dij >= 0.0);
                    prop_assert_eq!(dij, fs.pairwise_distance(j, i).unwrap());
                }
            }
        }

        #[test]
        fn split_partitions_rows(n in 1usize..40, chunks in 1usize..8, seed in any::<u64>()) {
            prop_assume!(chunks <= n);
            let fs = FeatureSet::unlabeled(1, (0..n).map(|v| v as f32).collect()).unwrap();
            let parts = split_disjoint(&fs, chunks, seed).unwrap();
            let mut all: Vec<usize> = parts.iter().flat_map(|c| c.indices.clone()).collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
            let sizes: Vec<usize> = parts.iter().map(|c| c.indices.len()).collect();
            prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        }
    }
}
