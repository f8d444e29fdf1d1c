//! Optional on-disk persistence of component normalizers, keyed by a hash of
//! (identity set, rank, multidegree). Controlled by `VERONALT_CACHE_DIR`.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use num::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::linalg::Rref;
use crate::monomial::MultiDegree;
use crate::poly::format_rational;
use crate::tideal::IdentitySet;

const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct StoredRref {
    version: u32,
    ncols: usize,
    pivot_cols: Vec<u32>,
    // pivot col -> [(non-pivot col, rational as "p/q")]
    reductions: Vec<(u32, Vec<(u32, String)>)>,
}

fn cache_key(ids: &IdentitySet, rank: usize, m: &MultiDegree) -> String {
    let mut hasher = Sha256::new();
    hasher.update(FORMAT_VERSION.to_le_bytes());
    hasher.update(ids.canonical_text().as_bytes());
    hasher.update(b"|");
    hasher.update(rank.to_le_bytes());
    for c in m.counts() {
        hasher.update(c.to_le_bytes());
    }
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn cache_path(dir: &Path, ids: &IdentitySet, rank: usize, m: &MultiDegree) -> PathBuf {
    dir.join(format!("{}.json", cache_key(ids, rank, m)))
}

pub fn load(
    dir: &Path,
    ids: &IdentitySet,
    rank: usize,
    m: &MultiDegree,
    expected_ncols: usize,
) -> Option<Rref> {
    let path = cache_path(dir, ids, rank, m);
    let text = std::fs::read_to_string(path).ok()?;
    let stored: StoredRref = serde_json::from_str(&text).ok()?;
    if stored.version != FORMAT_VERSION || stored.ncols != expected_ncols {
        return None;
    }
    let mut reductions = HashMap::new();
    for (pivot, expansion) in stored.reductions {
        let mut row = Vec::with_capacity(expansion.len());
        for (col, s) in expansion {
            row.push((col, parse_rational(&s)?));
        }
        reductions.insert(pivot, row);
    }
    Some(Rref::from_parts(
        stored.ncols,
        stored.pivot_cols,
        reductions,
    ))
}

pub fn store(dir: &Path, ids: &IdentitySet, rank: usize, m: &MultiDegree, rref: &Rref) {
    // Best effort: cache failures never fail the computation.
    if std::fs::create_dir_all(dir).is_err() {
        return;
    }
    let reductions = rref
        .pivot_cols
        .iter()
        .map(|&c| {
            let row = rref
                .reduction_of(c)
                .unwrap()
                .iter()
                .map(|(col, v)| (*col, format_rational(v)))
                .collect();
            (c, row)
        })
        .collect();
    let stored = StoredRref {
        version: FORMAT_VERSION,
        ncols: rref.ncols,
        pivot_cols: rref.pivot_cols.clone(),
        reductions,
    };
    let path = cache_path(dir, ids, rank, m);
    let tmp = path.with_extension("tmp");
    if let Ok(text) = serde_json::to_string(&stored) {
        if std::fs::write(&tmp, text).is_ok() {
            let _ = std::fs::rename(&tmp, &path);
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => Some(BigRational::new(n.parse().ok()?, d.parse().ok()?)),
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}
