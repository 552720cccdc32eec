//! Canonical labelling, isomorphism and automorphisms.
//!
//! The canonical code of a graph is the lexicographically least upper-triangle
//! bit string `x(0,1), x(0,2), x(1,2), x(0,3), ...` over all vertex orderings.
//! Placing the vertex at position `k` appends exactly the column
//! `x(0,k), ..., x(k-1,k)`, so partial orderings produce prefixes of the final
//! code and the search below is an exact branch and bound:
//!
//! * at each depth only candidates whose column is minimal survive;
//! * a branch whose prefix exceeds the best complete code is cut;
//! * twin vertices (same neighbourhood apart from each other) are interchangeable,
//!   so only one per twin class is tried;
//! * two leaves with equal code yield an automorphism, and automorphisms that fix
//!   the current prefix pointwise identify candidates whose subtrees coincide.
//!
//! None of these cuts removes the minimum, so the result is the global minimum.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::error::{input, KsfError, Result};
use crate::graph::{bits, full_mask, Graph, MAX_VERTICES};

/// Vertex bound for explicit automorphism-group enumeration.
pub const MAX_AUTOMORPHISM_VERTICES: usize = 12;

const MAX_STORED_AUTOMORPHISMS: usize = 128;

/// Canonical upper-triangle code. `cols[k]` holds `x(0,k) .. x(k-1,k)`, with
/// `x(0,k)` as the most significant of its `k` bits.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonCode {
    n: usize,
    cols: Vec<u64>,
}

impl CanonCode {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> &[u64] {
        &self.cols
    }

    /// The code as a string of `0`/`1` characters (empty for `n < 2`).
    pub fn bit_string(&self) -> String {
        let mut s = String::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for (k, &c) in self.cols.iter().enumerate() {
            for i in (0..k).rev() {
                s.push(if c >> i & 1 == 1 { '1' } else { '0' });
            }
        }
        s
    }

    /// The graph whose identity labelling has this code.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n).expect("code within capacity");
        for (k, &c) in self.cols.iter().enumerate() {
            for i in 0..k {
                if c >> (k - 1 - i) & 1 == 1 {
                    g.set_edge(i, k, true);
                }
            }
        }
        g
    }

    /// Code of a labelled graph under its identity ordering.
    pub fn of_labelled(g: &Graph) -> CanonCode {
        let n = g.n();
        let cols = (0..n)
            .map(|k| {
                let mut c = 0u64;
                for i in 0..k {
                    c = c << 1 | (g.row(i) >> k & 1);
                }
                c
            })
            .collect();
        CanonCode { n, cols }
    }
}

impl fmt::Debug for CanonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonCode(n={}, {})", self.n, self.bit_string())
    }
}

/// Canonical code plus one relabelling achieving it: vertex `v` of the source
/// becomes vertex `perm[v]` of the canonical graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub code: CanonCode,
    pub perm: Vec<usize>,
}

impl CanonicalForm {
    pub fn graph(&self) -> Graph {
        self.code.to_graph()
    }
}

struct Search<'a> {
    n: usize,
    adj: &'a [u64],
    twin_class: Vec<usize>,
    order: Vec<usize>,
    best_cols: Vec<u64>,
    best_order: Vec<usize>,
    have_best: bool,
    autos: Vec<Vec<usize>>,
    bound: Option<&'a [u64]>,
    rejected: bool,
}

struct Orbits {
    parent: [u8; MAX_VERTICES],
}

impl Orbits {
    fn new(n: usize) -> Self {
        let mut parent = [0u8; MAX_VERTICES];
        for (i, p) in parent.iter_mut().enumerate().take(n) {
            *p = i as u8;
        }
        Orbits { parent }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb) as u8;
        }
    }
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, bound: Option<&'a [u64]>) -> Self {
        let n = g.n();
        let adj = g.rows();
        let mut twin_class: Vec<usize> = (0..n).collect();
        for b in 0..n {
            for a in 0..b {
                if twin_class[a] == a
                    && adj[a] & !(1u64 << b) == adj[b] & !(1u64 << a)
                {
                    twin_class[b] = a;
                    break;
                }
            }
        }
        Search {
            n,
            adj,
            twin_class,
            order: Vec::with_capacity(n),
            best_cols: vec![0; n],
            best_order: Vec::new(),
            have_best: false,
            autos: Vec::new(),
            bound,
            rejected: false,
        }
    }

    fn orbits_fixing_prefix(&self) -> Orbits {
        let mut orb = Orbits::new(self.n);
        for gamma in &self.autos {
            if self.order.iter().all(|&v| gamma[v] == v) {
                for (v, &image) in gamma.iter().enumerate() {
                    orb.union(v, image);
                }
            }
        }
        orb
    }

    /// `colvals[v]` is the column of unplaced `v` against the current prefix;
    /// `cur_cols` the columns chosen so far.
    fn dfs(
        &mut self,
        placed: u64,
        colvals: &[u64; MAX_VERTICES],
        cur_cols: &mut Vec<u64>,
        best_rel: Ordering,
        bound_rel: Ordering,
    ) {
        let k = self.order.len();
        if k == self.n {
            if !self.have_best || best_rel == Ordering::Less {
                self.best_cols.clone_from(cur_cols);
                self.best_order.clone_from(&self.order);
                self.have_best = true;
            } else if self.autos.len() < MAX_STORED_AUTOMORPHISMS {
                let mut gamma = vec![0usize; self.n];
                for i in 0..self.n {
                    gamma[self.best_order[i]] = self.order[i];
                }
                if gamma.iter().enumerate().any(|(i, &g)| i != g) {
                    self.autos.push(gamma);
                }
            }
            return;
        }
        let unplaced = full_mask(self.n) & !placed;
        let min_c = bits(unplaced).map(|v| colvals[v]).min().expect("unplaced vertex");

        let mut bound_rel = bound_rel;
        if let Some(b) = self.bound {
            if k < b.len() && bound_rel == Ordering::Equal {
                match min_c.cmp(&b[k]) {
                    Ordering::Less => {
                        self.rejected = true;
                        return;
                    }
                    Ordering::Greater => bound_rel = Ordering::Greater,
                    Ordering::Equal => {}
                }
            }
        }
        let mut best_rel = best_rel;
        if self.have_best && best_rel == Ordering::Equal {
            match min_c.cmp(&self.best_cols[k]) {
                Ordering::Greater => return,
                Ordering::Less => best_rel = Ordering::Less,
                Ordering::Equal => {}
            }
        }
        if !self.have_best {
            best_rel = Ordering::Less;
        }

        let mut seen_twins = 0u64;
        let mut explored: Vec<usize> = Vec::new();
        let mut orbits: Option<(usize, Orbits)> = None;
        cur_cols.push(min_c);
        for v in bits(unplaced) {
            if colvals[v] != min_c {
                continue;
            }
            let tc = self.twin_class[v];
            if seen_twins >> tc & 1 == 1 {
                continue;
            }
            if !explored.is_empty() && !self.autos.is_empty() {
                let stale = orbits.as_ref().is_none_or(|(len, _)| *len != self.autos.len());
                if stale {
                    orbits = Some((self.autos.len(), self.orbits_fixing_prefix()));
                }
                let orb = &mut orbits.as_mut().expect("computed").1;
                let rv = orb.find(v);
                if explored.iter().any(|&x| orb.find(x) == rv) {
                    continue;
                }
            }
            seen_twins |= 1 << tc;
            explored.push(v);

            let mut next = [0u64; MAX_VERTICES];
            let row = self.adj[v];
            for u in bits(unplaced & !(1 << v)) {
                next[u] = colvals[u] << 1 | (row >> u & 1);
            }
            self.order.push(v);
            // The first branch always decides against the current best; later
            // siblings restart from the relation at this node.
            let rel = if self.have_best { best_rel } else { Ordering::Less };
            self.dfs(placed | 1 << v, &next, cur_cols, rel, bound_rel);
            self.order.pop();
            if self.rejected {
                cur_cols.pop();
                return;
            }
            // Once a branch has produced a new best, siblings compare against it.
            if best_rel == Ordering::Less && self.have_best {
                best_rel = cmp_prefix(cur_cols, &self.best_cols);
            }
        }
        cur_cols.pop();
    }
}

/// Compares `cur` against the same-length prefix of `best`.
fn cmp_prefix(cur: &[u64], best: &[u64]) -> Ordering {
    cur.cmp(&best[..cur.len()])
}

fn run(g: &Graph, bound: Option<&[u64]>) -> Option<CanonicalForm> {
    let n = g.n();
    let mut s = Search::new(g, bound);
    let colvals = [0u64; MAX_VERTICES];
    let mut cur = Vec::with_capacity(n);
    s.dfs(0, &colvals, &mut cur, Ordering::Less, Ordering::Equal);
    if s.rejected {
        return None;
    }
    let mut perm = vec![0usize; n];
    for (pos, &v) in s.best_order.iter().enumerate() {
        perm[v] = pos;
    }
    Some(CanonicalForm {
        code: CanonCode { n, cols: s.best_cols },
        perm,
    })
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    run(g, None).expect("unbounded search never rejects")
}

pub fn canonical_code(g: &Graph) -> CanonCode {
    canonical_form(g).code
}

/// The canonical relabelling of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    canonical_code(g).to_graph()
}

/// Whether `g` is a canonical child of the canonical graph `parent`, where
/// `g` restricted to its first `n-1` vertices is exactly `parent`.
///
/// A child is canonical iff deleting the last vertex of its canonical form
/// gives back `parent`; equivalently the first `n-1` columns of the child's
/// code equal the parent's code. The search aborts as soon as it meets a
/// partial ordering whose prefix beats the parent's code.
pub(crate) fn canonical_child(g: &Graph, parent: &CanonCode) -> Option<CanonCode> {
    debug_assert_eq!(parent.n + 1, g.n());
    run(g, Some(&parent.cols)).map(|f| f.code)
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return false;
    }
    if g.degree_sequence() != h.degree_sequence() {
        return false;
    }
    canonical_code(g) == canonical_code(h)
}

/// Backtracking search for an automorphism respecting the forced images in
/// `constraints` (pairs `(vertex, image)`).
pub fn find_automorphism(g: &Graph, constraints: &[(usize, usize)]) -> Option<Vec<usize>> {
    let n = g.n();
    let mut forced = vec![usize::MAX; n];
    for &(a, b) in constraints {
        if a >= n || b >= n {
            return None;
        }
        if forced[a] != usize::MAX && forced[a] != b {
            return None;
        }
        forced[a] = b;
    }
    let mut seq: Vec<usize> = (0..n).filter(|&v| forced[v] != usize::MAX).collect();
    seq.extend((0..n).filter(|&v| forced[v] == usize::MAX));
    let mut image = vec![usize::MAX; n];
    if extend_map(g, &seq, &forced, 0, 0, &mut image) {
        Some(image)
    } else {
        None
    }
}

fn extend_map(
    g: &Graph,
    seq: &[usize],
    forced: &[usize],
    idx: usize,
    used: u64,
    image: &mut [usize],
) -> bool {
    if idx == seq.len() {
        return true;
    }
    let v = seq[idx];
    let candidates = if forced[v] != usize::MAX {
        1u64 << forced[v]
    } else {
        g.vertex_mask() & !used
    };
    for c in bits(candidates & !used) {
        if g.degree(c) != g.degree(v) {
            continue;
        }
        let ok = seq[..idx]
            .iter()
            .all(|&p| g.has_edge(v, p) == g.has_edge(c, image[p]));
        if ok {
            image[v] = c;
            if extend_map(g, seq, forced, idx + 1, used | 1 << c, image) {
                return true;
            }
            image[v] = usize::MAX;
        }
    }
    false
}

/// Every automorphism of `g`, identity first, as explicit permutations
/// (`perm[v]` is the image of `v`).
pub fn automorphisms(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    if n > MAX_AUTOMORPHISM_VERTICES {
        return Err(KsfError::Capacity {
            what: "vertex count for automorphism enumeration",
            got: n,
            limit: MAX_AUTOMORPHISM_VERTICES,
        });
    }
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    all_maps(g, 0, 0, &mut image, &mut out);
    Ok(out)
}

fn all_maps(g: &Graph, v: usize, used: u64, image: &mut [usize], out: &mut Vec<Vec<usize>>) {
    if v == g.n() {
        out.push(image.to_vec());
        return;
    }
    for c in bits(g.vertex_mask() & !used) {
        if g.degree(c) != g.degree(v) {
            continue;
        }
        if (0..v).all(|p| g.has_edge(v, p) == g.has_edge(c, image[p])) {
            image[v] = c;
            all_maps(g, v + 1, used | 1 << c, image, out);
        }
    }
    image[v] = usize::MAX;
}

/// Orbit representative (smallest member) of each vertex under `Aut(g)`.
pub fn vertex_orbits(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut orbit: Vec<usize> = (0..n).collect();
    for v in 0..n {
        for u in 0..v {
            if orbit[u] == u
                && g.degree(u) == g.degree(v)
                && find_automorphism(g, &[(u, v)]).is_some()
            {
                orbit[v] = u;
                break;
            }
        }
    }
    orbit
}

/// Visits every `t`-subset of `0..m` as a sorted index slice.
pub(crate) fn for_each_subset(m: usize, t: usize, mut f: impl FnMut(&[usize])) {
    if t > m {
        return;
    }
    let mut idx: Vec<usize> = (0..t).collect();
    loop {
        f(&idx);
        let mut i = t;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + m - t {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..t {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn deletion_codes(g: &Graph, t: usize) -> HashSet<CanonCode> {
    let edges = g.edges();
    let mut out = HashSet::new();
    for_each_subset(edges.len(), t, |sel| {
        let mut h = g.clone();
        for &i in sel {
            let (a, b) = edges[i];
            h.set_edge(a, b, false);
        }
        out.insert(canonical_code(&h));
    });
    out
}

/// Smallest `t <= k_max` such that deleting some `t` edges from each graph
/// leaves isomorphic graphs.
pub fn min_edge_deletions_to_isomorphic(g: &Graph, h: &Graph, k_max: usize) -> Result<Option<usize>> {
    if g.n() != h.n() {
        return input(format!("vertex counts differ ({} vs {})", g.n(), h.n()));
    }
    if g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    for t in 0..=k_max.min(g.edge_count()) {
        let a = deletion_codes(g, t);
        let b = deletion_codes(h, t);
        if a.iter().any(|c| b.contains(c)) {
            return Ok(Some(t));
        }
    }
    Ok(None)
}
