//! Search for nonisomorphic graphs with equal KSF, and the fingerprint cache.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_graph, is_isomorphic, min_edge_deletions_to_isomorphic};
use crate::constructions::find_ksf_equal_vertex_pairs;
use crate::enumerate::generate_all;
use crate::error::{input, KsfError, Result};
use crate::graph::{Graph, WeightedGraph};
use crate::graph6;
use crate::independence::{ksf_fingerprint, FingerprintDigest};
use crate::sym::{csf_mtilde, ksf_mbar_truncated};

/// Largest edge-deletion count tried when comparing a reported pair.
pub const EDGE_DELETION_LIMIT: usize = 3;

/// One pair of nonisomorphic graphs with equal KSF.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize, PartialOrd, Ord)]
pub struct PairReport {
    pub g1: String,
    pub g2: String,
    pub n: usize,
    pub fingerprint_digest: String,
    pub nonisomorphic: bool,
    pub min_edge_deletions: Option<usize>,
    pub vertex_pair_count: usize,
}

impl PairReport {
    pub fn graphs(&self) -> Result<(Graph, Graph)> {
        Ok((graph6::decode(&self.g1)?, graph6::decode(&self.g2)?))
    }
}

fn report(g1: &Graph, g2: &Graph, digest: FingerprintDigest) -> Result<PairReport> {
    let (a, b) = (graph6::encode(g1), graph6::encode(g2));
    let (a, b, g1, g2) = if a <= b { (a, b, g1, g2) } else { (b, a, g2, g1) };
    Ok(PairReport {
        g1: a,
        g2: b,
        n: g1.n(),
        fingerprint_digest: digest.to_hex(),
        nonisomorphic: !is_isomorphic(g1, g2),
        min_edge_deletions: min_edge_deletions_to_isomorphic(g1, g2, EDGE_DELETION_LIMIT)?,
        vertex_pair_count: find_ksf_equal_vertex_pairs(g1, g2)?.len(),
    })
}

/// Bucket canonical graphs by digest and admit a pair only after comparing
/// full fingerprints.
fn pairs_in_buckets(graphs: &[Graph], digests: &[FingerprintDigest]) -> Result<Vec<PairReport>> {
    let mut buckets: HashMap<FingerprintDigest, Vec<usize>> = HashMap::new();
    for (i, d) in digests.iter().enumerate() {
        buckets.entry(*d).or_default().push(i);
    }
    let mut candidates = Vec::new();
    for (d, members) in &buckets {
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                candidates.push((i, j, *d));
            }
        }
    }
    let reports: Vec<Option<PairReport>> = candidates
        .par_iter()
        .map(|&(i, j, d)| -> Result<Option<PairReport>> {
            if ksf_fingerprint(&graphs[i])? != ksf_fingerprint(&graphs[j])? {
                return Ok(None);
            }
            let r = report(&graphs[i], &graphs[j], d)?;
            Ok(r.nonisomorphic.then_some(r))
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<PairReport> = reports.into_iter().flatten().collect();
    out.sort();
    Ok(out)
}

/// Every unordered pair of nonisomorphic `n`-vertex graphs with equal KSF,
/// sorted.
pub fn search_equal_ksf(n: usize) -> Result<Vec<PairReport>> {
    let graphs = generate_all(n)?.into_graphs();
    let digests: Vec<FingerprintDigest> = graphs
        .par_iter()
        .map(|g| Ok(ksf_fingerprint(g)?.digest()))
        .collect::<Result<_>>()?;
    pairs_in_buckets(&graphs, &digests)
}

/// As [`search_equal_ksf`], reading and extending a fingerprint cache file.
pub fn search_equal_ksf_cached(n: usize, cache: &Path) -> Result<Vec<PairReport>> {
    let graphs = generate_all(n)?.into_graphs();
    cache_fingerprints(graphs.iter().cloned(), cache)?;
    let entries = load_cache(cache)?;
    let digests = graphs
        .iter()
        .map(|g| {
            let key = graph6::encode(g);
            entries
                .get(&key)
                .copied()
                .ok_or_else(|| KsfError::Io(format!("cache lost entry {key}")))
        })
        .collect::<Result<Vec<_>>>()?;
    pairs_in_buckets(&graphs, &digests)
}

/// Independent checks on a candidate pair.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PairVerification {
    pub fingerprints_equal: bool,
    pub nonisomorphic: bool,
    pub truncated_series_equal: bool,
    pub csf_equal: bool,
}

impl PairVerification {
    pub fn certified(&self) -> bool {
        self.fingerprints_equal && self.nonisomorphic && self.truncated_series_equal && self.csf_equal
    }
}

pub fn verify_pair(g1: &Graph, g2: &Graph, d: usize) -> Result<PairVerification> {
    if g1.n() != g2.n() {
        return input(format!("vertex counts differ ({} vs {})", g1.n(), g2.n()));
    }
    let (w1, w2) = (WeightedGraph::unit(g1.clone()), WeightedGraph::unit(g2.clone()));
    Ok(PairVerification {
        fingerprints_equal: ksf_fingerprint(g1)? == ksf_fingerprint(g2)?,
        nonisomorphic: !is_isomorphic(g1, g2),
        truncated_series_equal: ksf_mbar_truncated(&w1, d) == ksf_mbar_truncated(&w2, d),
        csf_equal: csf_mtilde(&w1) == csf_mtilde(&w2),
    })
}

fn corrupt(line: usize, msg: impl Into<String>) -> KsfError {
    KsfError::Cache {
        line,
        msg: msg.into(),
    }
}

/// Reads `g6<TAB>digest` lines; a missing file is an empty cache.
pub fn load_cache(path: &Path) -> Result<BTreeMap<String, FingerprintDigest>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
        Err(e) => return Err(e.into()),
    };
    let mut out = BTreeMap::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| corrupt(i + 1, e.to_string()))?;
        let mut fields = line.split('\t');
        let (Some(g6), Some(hex), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(corrupt(i + 1, "expected two tab-separated fields"));
        };
        graph6::decode(g6).map_err(|e| corrupt(i + 1, e.to_string()))?;
        let digest = FingerprintDigest::from_hex(hex).map_err(|e| corrupt(i + 1, e.to_string()))?;
        out.insert(g6.to_string(), digest);
    }
    Ok(out)
}

/// Appends a digest for every graph not yet cached, keyed by canonical
/// graph6; returns the number of lines written.
pub fn cache_fingerprints(graphs: impl IntoIterator<Item = Graph>, path: &Path) -> Result<usize> {
    let existing = load_cache(path)?;
    let mut seen: HashSet<String> = HashSet::new();
    let mut missing = Vec::new();
    for g in graphs {
        let c = canonical_graph(&g);
        let key = graph6::encode(&c);
        if !existing.contains_key(&key) && seen.insert(key.clone()) {
            missing.push((key, c));
        }
    }
    if missing.is_empty() {
        return Ok(0);
    }
    let lines: Vec<String> = missing
        .par_iter()
        .map(|(k, g)| Ok(format!("{k}\t{}\n", ksf_fingerprint(g)?.digest())))
        .collect::<Result<_>>()?;
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    for l in &lines {
        file.write_all(l.as_bytes())?;
    }
    file.flush()?;
    Ok(lines.len())
}
