//! Isomorphism-free generation of all simple graphs on `n` vertices.
//!
//! Orderly generation by canonical augmentation: every canonical graph on
//! `k` vertices is extended by a new last vertex with each possible
//! neighbourhood mask, and a child is kept iff its canonical form restricted
//! to the first `k` positions is the parent itself. Each isomorphism class
//! therefore has exactly one parent; children of one parent that coincide are
//! merged locally.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::canon::{canonical_child, CanonCode};
use crate::error::{KsfError, Result};
use crate::graph::Graph;

/// Largest vertex count accepted by the generator.
pub const MAX_GENERATION_VERTICES: usize = 9;

fn check_bounds(n: usize) -> Result<()> {
    if n == 0 || n > MAX_GENERATION_VERTICES {
        return Err(KsfError::Capacity {
            what: "generation vertex count",
            got: n,
            limit: MAX_GENERATION_VERTICES,
        });
    }
    Ok(())
}

fn children(parent: &CanonCode) -> HashSet<CanonCode> {
    let k = parent.n();
    let base = parent.to_graph();
    let mut rows: Vec<u64> = base.rows().to_vec();
    rows.push(0);
    let mut out = HashSet::new();
    for mask in 0u64..1 << k {
        for (i, r) in rows.iter_mut().enumerate().take(k) {
            *r = (base.row(i) & !(1 << k)) | ((mask >> i & 1) << k);
        }
        rows[k] = mask;
        let child = Graph::from_rows_unchecked(rows.clone());
        if let Some(code) = canonical_child(&child, parent) {
            out.insert(code);
        }
    }
    out
}

fn next_level(parents: &[CanonCode]) -> Vec<CanonCode> {
    let mut out: Vec<CanonCode> = parents
        .par_iter()
        .flat_map_iter(|p| children(p).into_iter())
        .collect();
    out.par_sort_unstable();
    out
}

/// Canonical codes of all graphs on `n` vertices, ascending.
pub fn generate_codes(n: usize) -> Result<Vec<CanonCode>> {
    check_bounds(n)?;
    let mut level = vec![CanonCode::of_labelled(&Graph::empty(1)?)];
    for _ in 1..n {
        level = next_level(&level);
    }
    Ok(level)
}

/// Stream of canonical representatives, one per isomorphism class, in
/// ascending code order.
#[derive(Clone, Debug)]
pub struct GraphStream {
    n: usize,
    codes: Vec<CanonCode>,
    cursor: usize,
}

impl GraphStream {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Index of the next graph to be emitted.
    pub fn position(&self) -> usize {
        self.cursor
    }

    /// Continue from a previously saved position.
    pub fn resume_from(mut self, position: usize) -> Self {
        self.cursor = position.min(self.codes.len());
        self
    }

    pub fn codes(&self) -> &[CanonCode] {
        &self.codes
    }

    pub fn into_graphs(self) -> Vec<Graph> {
        self.codes[self.cursor..].iter().map(CanonCode::to_graph).collect()
    }
}

impl Iterator for GraphStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        let c = self.codes.get(self.cursor)?;
        self.cursor += 1;
        Some(c.to_graph())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.codes.len() - self.cursor;
        (r, Some(r))
    }
}

impl ExactSizeIterator for GraphStream {}

pub fn generate_all(n: usize) -> Result<GraphStream> {
    Ok(GraphStream {
        n,
        codes: generate_codes(n)?,
        cursor: 0,
    })
}

/// Number of isomorphism classes on `n` vertices; the last level is counted
/// without being collected.
pub fn count_graphs(n: usize) -> Result<u64> {
    check_bounds(n)?;
    if n == 1 {
        return Ok(1);
    }
    let parents = generate_codes(n - 1)?;
    Ok(parents.par_iter().map(|p| children(p).len() as u64).sum())
}
