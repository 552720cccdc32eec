//! Independence polynomials, the induced-subgraph fingerprint that determines
//! the KSF, the independence-uniqueness census and induced pattern counts.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::canon::canonical_code;
use crate::enumerate::generate_all;
use crate::error::{KsfError, Result};
use crate::graph::{bits, Graph};

/// Fingerprints sweep all `2^n` vertex subsets.
pub const MAX_FINGERPRINT_VERTICES: usize = 12;

/// Integer polynomial; `coeffs()[k]` is the number of independent sets of size `k`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Polynomial(Vec<u64>);

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, dropping trailing zeros.
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        Polynomial(coeffs)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    /// Value at `x = 1`: the total number of independent sets.
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{k}")?,
                _ => write!(f, "{c}x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

fn add_shifted(acc: &mut Vec<u64>, p: &[u64]) {
    if acc.len() < p.len() + 1 {
        acc.resize(p.len() + 1, 0);
    }
    for (k, &c) in p.iter().enumerate() {
        acc[k + 1] += c;
    }
}

fn indep_rec(g: &Graph, set: u64, memo: &mut HashMap<u64, Vec<u64>>) -> Vec<u64> {
    if set == 0 {
        return vec![1];
    }
    if let Some(p) = memo.get(&set) {
        return p.clone();
    }
    let v = set.trailing_zeros() as usize;
    let mut without = indep_rec(g, set & !(1 << v), memo);
    let closed = set & !(g.row(v) | 1 << v);
    let with = indep_rec(g, closed, memo);
    add_shifted(&mut without, &with);
    memo.insert(set, without.clone());
    without
}

/// `I(G) = I(G - v) + x I(G - N[v])`, memoised on vertex-subset masks.
pub fn independence_polynomial(g: &Graph) -> Polynomial {
    let mut memo = HashMap::new();
    Polynomial::new(indep_rec(g, g.vertex_mask(), &mut memo))
}

/// Independence polynomials of every induced subgraph, indexed by vertex mask.
pub fn subset_polynomials(g: &Graph) -> Result<Vec<Polynomial>> {
    let n = g.n();
    if n > MAX_FINGERPRINT_VERTICES {
        return Err(KsfError::Capacity {
            what: "fingerprint vertex count",
            got: n,
            limit: MAX_FINGERPRINT_VERTICES,
        });
    }
    let width = n + 1;
    let size = 1usize << n;
    let mut table = vec![0u64; size * width];
    table[0] = 1;
    for set in 1..size as u64 {
        let v = set.trailing_zeros() as usize;
        let a = (set & !(1 << v)) as usize;
        let b = (set & !(g.row(v) | 1 << v)) as usize;
        let s = set as usize;
        for k in 0..width {
            let mut c = table[a * width + k];
            if k > 0 {
                c += table[b * width + k - 1];
            }
            table[s * width + k] = c;
        }
    }
    Ok(table
        .chunks(width)
        .map(|c| Polynomial::new(c.to_vec()))
        .collect())
}

/// Canonically sorted multiset of the independence polynomials of all
/// induced subgraphs (the empty one included). Two graphs have equal KSF iff
/// their fingerprints are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Fingerprint(Vec<Polynomial>);

impl Fingerprint {
    pub fn polynomials(&self) -> &[Polynomial] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Length-prefixed little-endian serialization used for digesting.
    pub fn serialize(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.0.len() * 16);
        for p in &self.0 {
            out.push(p.0.len() as u8);
            for &c in &p.0 {
                out.extend_from_slice(&c.to_le_bytes());
            }
        }
        out
    }

    pub fn digest(&self) -> FingerprintDigest {
        fingerprint_digest(self)
    }
}

pub fn ksf_fingerprint(g: &Graph) -> Result<Fingerprint> {
    let mut polys = subset_polynomials(g)?;
    polys.sort_unstable();
    Ok(Fingerprint(polys))
}

/// 128-bit digest of a fingerprint, rendered as 32 hex characters.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FingerprintDigest(pub [u8; 16]);

impl FingerprintDigest {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        if s.len() != 32 || !s.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(KsfError::Parse(format!("bad digest {s:?}")));
        }
        let mut out = [0u8; 16];
        for (i, o) in out.iter_mut().enumerate() {
            *o = u8::from_str_radix(&s[2 * i..2 * i + 2], 16).expect("validated hex");
        }
        Ok(FingerprintDigest(out))
    }
}

impl fmt::Display for FingerprintDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Truncated SHA-256 of [`Fingerprint::serialize`].
pub fn fingerprint_digest(f: &Fingerprint) -> FingerprintDigest {
    let hash = Sha256::digest(f.serialize());
    let mut out = [0u8; 16];
    out.copy_from_slice(&hash[..16]);
    FingerprintDigest(out)
}

/// Number of isomorphism classes on `n` vertices whose independence polynomial
/// no other class on `n` vertices shares.
pub fn independence_unique_count(n: usize) -> Result<usize> {
    let graphs = generate_all(n)?.into_graphs();
    let polys: Vec<Polynomial> = graphs.par_iter().map(independence_polynomial).collect();
    let mut counts: HashMap<&Polynomial, usize> = HashMap::new();
    for p in &polys {
        *counts.entry(p).or_default() += 1;
    }
    Ok(counts.values().filter(|&&c| c == 1).count())
}

/// All canonical `n`-vertex graphs whose independence polynomial equals `p`.
pub fn find_graphs_with_polynomial(n: usize, p: &Polynomial) -> Result<Vec<Graph>> {
    let graphs = generate_all(n)?.into_graphs();
    Ok(graphs
        .into_par_iter()
        .filter(|g| &independence_polynomial(g) == p)
        .collect())
}

/// Next mask with the same popcount (Gosper's hack).
#[inline]
pub(crate) fn next_same_popcount(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// Visits every `k`-subset of `universe` (`universe` must be `0..n`).
pub(crate) fn for_each_k_subset(n: usize, k: usize, mut f: impl FnMut(u64)) {
    if k > n {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    let limit = 1u64 << n;
    let mut s = (1u64 << k) - 1;
    while s < limit {
        f(s);
        if k == n {
            break;
        }
        s = next_same_popcount(s);
    }
}

/// Number of vertex subsets `S` with `G[S] ≅ P` (subsets, not embeddings).
pub fn count_induced_copies(g: &Graph, pattern: &Graph) -> u64 {
    let k = pattern.n();
    let n = g.n();
    if k > n {
        return 0;
    }
    let pe = pattern.edge_count();
    let pdeg = pattern.degree_sequence();
    let pcode = canonical_code(pattern);
    let mut count = 0;
    for_each_k_subset(n, k, |set| {
        let edges: u32 = bits(set).map(|v| (g.row(v) & set).count_ones()).sum();
        if edges as usize != 2 * pe {
            return;
        }
        let sub = g.induced_unchecked(set);
        if sub.degree_sequence() != pdeg {
            return;
        }
        if canonical_code(&sub) == pcode {
            count += 1;
        }
    });
    count
}

/// Induced claws, counted per center as independent triples in its neighbourhood.
pub fn count_claws(g: &Graph) -> u64 {
    let mut total = 0;
    for v in 0..g.n() {
        let nb: Vec<usize> = bits(g.row(v)).collect();
        for (i, &a) in nb.iter().enumerate() {
            for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                if g.has_edge(a, b) {
                    continue;
                }
                for &c in &nb[j + 1..] {
                    if !g.has_edge(a, c) && !g.has_edge(b, c) {
                        total += 1;
                    }
                }
            }
        }
    }
    total
}
