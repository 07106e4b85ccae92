//! Generation of all irreducible hypertrees on `n` points up to relabeling.
//!
//! Collections grow one hyperedge at a time. Every partial collection with
//! at least two edges must satisfy the convexity inequality strictly, so
//! each level is kept as a set of canonical forms and expanded in parallel.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::canon::{canonical_form, canonical_labeling, Hypergraph};
use crate::{CanonicalHypertree, Error, Hypertree, Result};

pub const MIN_N: usize = 4;
pub const MAX_N: usize = 12;

#[derive(Clone, Debug, Default)]
pub struct EnumerationOptions {
    /// Shuffle candidate edges within each state using this seed.
    pub candidate_seed: Option<u64>,
}

/// Sorted list of 0-based edge masks in canonical labeling.
type State = Vec<u64>;

struct Grower {
    n: usize,
    target: usize,
    seed: Option<u64>,
}

impl Grower {
    fn weight(m: u64) -> usize {
        m.count_ones() as usize - 2
    }

    fn canonical(&self, edges: &[u64]) -> State {
        canonical_labeling(&Hypergraph { n: self.n, edges }, false).canonical
    }

    fn seeds(&self) -> Vec<State> {
        (3..self.n).map(|s| vec![(1u64 << s) - 1]).collect()
    }

    /// All extensions of `state` by one edge, split into complete
    /// hypertrees and partial collections, both canonicalized.
    fn expand(&self, state: &State) -> (Vec<State>, Vec<State>) {
        let n = self.n;
        let k = state.len();
        let covered = state.iter().fold(0u64, |a, &e| a | e);
        let v = covered.count_ones() as usize;
        let used: usize = state.iter().map(|&e| Self::weight(e)).sum();
        let remaining = self.target - used;

        let mut sub_union = vec![0u64; 1 << k];
        let mut sub_weight = vec![0usize; 1 << k];
        for s in 1usize..1 << k {
            let low = s.trailing_zeros() as usize;
            let rest = s & (s - 1);
            sub_union[s] = sub_union[rest] | state[low];
            sub_weight[s] = sub_weight[rest] + Self::weight(state[low]);
        }
        let mut valence = [0u8; 64];
        for &e in state {
            let mut m = e;
            while m != 0 {
                valence[m.trailing_zeros() as usize] += 1;
                m &= m - 1;
            }
        }

        let mut candidates = Vec::new();
        let mut inside = Vec::new();
        linear_subsets(state, v, 0, 0, &mut inside);
        for &a in &inside {
            let na = a.count_ones() as usize;
            for t in 0..=(n - v) {
                if na + t < 3 || na + t - 2 > remaining {
                    continue;
                }
                let fresh = ((1u64 << t) - 1) << v;
                candidates.push(a | fresh);
            }
        }
        if let Some(seed) = self.seed {
            let mut rng = ChaCha8Rng::seed_from_u64(
                seed ^ state.iter().fold(0u64, |h, &e| h.rotate_left(7) ^ e),
            );
            candidates.shuffle(&mut rng);
        }

        let mut complete = Vec::new();
        let mut partial = Vec::new();
        for x in candidates {
            let wx = Self::weight(x);
            let left = remaining - wx;
            let new_cover = covered | x;
            let nv = new_cover.count_ones() as usize;
            let mut deficit = 2 * (n - nv);
            for i in 0..nv {
                let val = valence[i] as usize + (x >> i & 1) as usize;
                deficit += 2usize.saturating_sub(val);
            }
            if deficit > 3 * left {
                continue;
            }
            let done = left == 0;
            let full = (1usize << k) - 1;
            let strict = (1usize..1 << k).all(|s| {
                let lhs = (sub_union[s] | x).count_ones() as usize;
                let rhs = sub_weight[s] + wx + 2;
                if done && s == full {
                    lhs == rhs
                } else {
                    lhs > rhs
                }
            });
            if !strict {
                continue;
            }
            let mut next = state.clone();
            next.push(x);
            if done {
                complete.push(self.canonical(&next));
            } else {
                partial.push(self.canonical(&next));
            }
        }
        (complete, partial)
    }
}

/// Nonempty subsets of `{0..v}` meeting every edge in at most one point.
fn linear_subsets(edges: &[u64], v: usize, i: usize, acc: u64, out: &mut Vec<u64>) {
    if i == v {
        if acc != 0 {
            out.push(acc);
        }
        return;
    }
    linear_subsets(edges, v, i + 1, acc, out);
    let with = acc | 1 << i;
    if edges.iter().all(|&e| (e & with).count_ones() <= 1) {
        linear_subsets(edges, v, i + 1, with, out);
    }
}

pub fn enumerate_irreducible(n: usize) -> Result<Vec<CanonicalHypertree>> {
    enumerate_irreducible_with(n, &EnumerationOptions::default())
}

/// Irreducible hypertrees on `{1..n}`, one canonical representative per
/// isomorphism class, sorted by certificate.
pub fn enumerate_irreducible_with(
    n: usize,
    options: &EnumerationOptions,
) -> Result<Vec<CanonicalHypertree>> {
    if !(MIN_N..=MAX_N).contains(&n) {
        return Err(Error::Limit(format!(
            "enumeration supports {MIN_N} <= n <= {MAX_N}, got {n}"
        )));
    }
    let g = Grower {
        n,
        target: n - 2,
        seed: options.candidate_seed,
    };
    let mut level: Vec<State> = g.seeds();
    let mut found: HashSet<State> = HashSet::new();
    while !level.is_empty() {
        let (complete, partial): (Vec<Vec<State>>, Vec<Vec<State>>) =
            level.par_iter().map(|s| g.expand(s)).unzip();
        found.extend(complete.into_iter().flatten());
        let next: HashSet<State> = partial.into_iter().flatten().collect();
        level = next.into_iter().collect();
    }
    let mut out = found
        .into_par_iter()
        .map(|masks| {
            let shifted: Vec<u64> = masks.iter().map(|&m| m << 1).collect();
            let h = Hypertree::from_masks(n, &shifted)
                .map_err(|e| Error::Internal(format!("generated invalid hypertree: {e}")))?;
            Ok(canonical_form(&h))
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.certificate.cmp(&b.certificate));
    Ok(out)
}

/// Short hex name of a certificate.
pub fn certificate_hash(certificate: &[u8]) -> String {
    hex::encode(&Sha256::digest(certificate)[..8])
}

/// Writes `dir/n{n}/<hash>.json` per class and `dir/n{n}/index.json`.
pub fn write_catalog(dir: &Path, n: usize, classes: &[CanonicalHypertree]) -> Result<()> {
    let sub = dir.join(format!("n{n}"));
    let io = |e: std::io::Error| Error::Input(format!("{}: {e}", sub.display()));
    fs::create_dir_all(&sub).map_err(io)?;
    let mut entries = Vec::new();
    for c in classes {
        let name = format!("{}.json", certificate_hash(&c.certificate));
        let body = serde_json::json!({
            "n": c.hypertree.n(),
            "edges": c.hypertree.edges(),
            "automorphism_order": c.automorphism_order,
            "certificate": hex::encode(&c.certificate),
        });
        fs::write(
            sub.join(&name),
            serde_json::to_string_pretty(&body).expect("json"),
        )
        .map_err(io)?;
        entries.push(serde_json::json!({
            "file": name,
            "d": c.hypertree.d(),
            "automorphism_order": c.automorphism_order,
        }));
    }
    let index = serde_json::json!({ "n": n, "count": classes.len(), "classes": entries });
    fs::write(
        sub.join("index.json"),
        serde_json::to_string_pretty(&index).expect("json"),
    )
    .map_err(io)?;
    Ok(())
}

/// Reads back a catalog directory written by [`write_catalog`].
pub fn read_catalog(dir: &Path, n: usize) -> Result<Vec<Hypertree>> {
    let sub = dir.join(format!("n{n}"));
    let io = |e: std::io::Error| Error::Input(format!("{}: {e}", sub.display()));
    let index: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(sub.join("index.json")).map_err(io)?)
            .map_err(|e| Error::Input(e.to_string()))?;
    let files = index["classes"]
        .as_array()
        .ok_or_else(|| Error::Input("index.json: missing classes".into()))?;
    files
        .iter()
        .map(|f| {
            let name = f["file"]
                .as_str()
                .ok_or_else(|| Error::Input("index.json: bad entry".into()))?;
            Hypertree::from_json(&fs::read_to_string(sub.join(name)).map_err(io)?)
        })
        .collect()
}
