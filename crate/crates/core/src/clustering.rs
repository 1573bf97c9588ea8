//! Cluster assignments shared by every solver and metric.
//!
//! Clustering files use the feature container's conventions: magic `b"LPCL"`,
//! `u32` version, `u64` n, `u32` cluster count, then `n` little-endian `u32`
//! cluster ids.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"LPCL";
pub const VERSION: u32 = 1;
const HEADER_LEN: usize = 20;

/// Assignment of `n` items to contiguous cluster ids `0..cluster_count`,
/// every id non-empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clustering {
    assignment: Vec<usize>,
    cluster_count: usize,
}

impl Clustering {
    /// Validates an assignment that is already contiguous.
    pub fn new(assignment: Vec<usize>) -> Result<Self> {
        let cluster_count = assignment.iter().max().map_or(0, |m| m + 1);
        let mut seen = vec![false; cluster_count];
        for &c in &assignment {
            seen[c] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::Invariant(format!("cluster id {missing} is empty")));
        }
        Ok(Self {
            assignment,
            cluster_count,
        })
    }

    /// Relabels arbitrary ids to `0..K` in order of first appearance.
    pub fn from_labels<T: Copy + Ord>(raw: &[T]) -> Self {
        let mut map = std::collections::BTreeMap::new();
        let assignment = raw
            .iter()
            .map(|id| {
                let next = map.len();
                *map.entry(*id).or_insert(next)
            })
            .collect();
        Self {
            assignment,
            cluster_count: map.len(),
        }
    }

    pub fn single(n: usize) -> Self {
        Self {
            assignment: vec![0; n],
            cluster_count: usize::from(n > 0),
        }
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            assignment: (0..n).collect(),
            cluster_count: n,
        }
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn cluster_count(&self) -> usize {
        self.cluster_count
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn cluster_of(&self, i: usize) -> usize {
        self.assignment[i]
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.cluster_count];
        for &c in &self.assignment {
            sizes[c] += 1;
        }
        sizes
    }

    /// Members of each cluster, in ascending item order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.cluster_count];
        for (i, &c) in self.assignment.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    /// Canonical form: ids renumbered by first appearance. Two clusterings
    /// describe the same partition iff their canonical forms are equal.
    pub fn canonical(&self) -> Self {
        Self::from_labels(&self.assignment)
    }

    pub fn same_partition(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

pub fn encode_clustering(c: &Clustering) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + 4 * c.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(c.len() as u64).to_le_bytes());
    out.extend_from_slice(&(c.cluster_count as u32).to_le_bytes());
    for &id in &c.assignment {
        out.extend_from_slice(&(id as u32).to_le_bytes());
    }
    out
}

pub fn decode_clustering(bytes: &[u8]) -> Result<Clustering> {
    if bytes.len() < HEADER_LEN || &bytes[..4] != MAGIC {
        return Err(Error::MalformedHeader("not a clustering file".into()));
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    if version != VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let n = u64::from_le_bytes(bytes[8..16].try_into().unwrap()) as usize;
    let k = u32::from_le_bytes(bytes[16..20].try_into().unwrap()) as usize;
    let payload = &bytes[HEADER_LEN..];
    if payload.len() < 4 * n {
        return Err(Error::TruncatedPayload {
            expected: n,
            found: payload.len() / 4,
        });
    }
    if payload.len() > 4 * n {
        return Err(Error::TrailingData(payload.len() - 4 * n));
    }
    let ids = payload
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes(c.try_into().unwrap()) as usize)
        .collect();
    let clustering = Clustering::new(ids)?;
    if clustering.cluster_count != k {
        return Err(Error::MalformedHeader(format!(
            "header declares {k} clusters, payload has {}",
            clustering.cluster_count
        )));
    }
    Ok(clustering)
}

pub fn save_clustering(c: &Clustering, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, encode_clustering(c))?;
    Ok(())
}

pub fn load_clustering(path: impl AsRef<Path>) -> Result<Clustering> {
    decode_clustering(&fs::read(path)?)
}
