//! Builders for equal-KSF and equal-CSF constructions, and the conditions
//! under which those constructions apply or are told apart by the KSF.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{automorphisms, find_automorphism, is_isomorphic, vertex_orbits};
use crate::enumerate::generate_all;
use crate::error::{input, KsfError, Result};
use crate::graph::{bits, check_capacity, Graph, WeightedGraph};
use crate::graph6;
use crate::independence::{count_induced_copies, find_graphs_with_polynomial, ksf_fingerprint, Polynomial, MAX_FINGERPRINT_VERTICES};
use crate::sym::{f_series, ksf_mbar_truncated, odot_all, Basis, Partition, Rational, SymSeries};

fn check_vertex(g: &Graph, v: usize) -> Result<()> {
    if v >= g.n() {
        return input(format!("vertex {v} out of range for {} vertices", g.n()));
    }
    Ok(())
}

/// `G ⊔ H` plus every edge between `V(H)` and the vertices of `G` in `targets`.
fn attach(g: &Graph, h: &Graph, targets: u64) -> Result<Graph> {
    let mut out = g.disjoint_union(h)?;
    let n = g.n();
    for a in bits(targets) {
        for b in 0..h.n() {
            out.set_edge(a, n + b, true);
        }
    }
    Ok(out)
}

/// Attaches `H` to every vertex of `G` except `v`; vertices of `H` follow those of `G`.
pub fn attach_except(g: &Graph, v: usize, h: &Graph) -> Result<Graph> {
    check_vertex(g, v)?;
    attach(g, h, g.vertex_mask() & !(1 << v))
}

/// Attaches `H` to the single vertex `v` of `G`.
pub fn attach_to_vertex(g: &Graph, v: usize, h: &Graph) -> Result<Graph> {
    check_vertex(g, v)?;
    attach(g, h, 1 << v)
}

/// `sp(G)`: the vertices of `G` form a clique and each edge `ij` gains a new
/// vertex adjacent to exactly `i` and `j`, appended in edge order.
pub fn split_graph(g: &Graph) -> Result<Graph> {
    let n = g.n();
    let edges = g.edges();
    check_capacity(n + edges.len())?;
    let mut out = Graph::complete(n)?.disjoint_union(&Graph::empty(edges.len())?)?;
    for (k, &(i, j)) in edges.iter().enumerate() {
        out.set_edge(i, n + k, true);
        out.set_edge(j, n + k, true);
    }
    Ok(out)
}

/// KSF of `attach_except(G, v, H)` assembled from series of `G`, `G − v`,
/// `H` and `H ⊔ {v}` only:
/// `(f(v,H⊔v) + X̄_H) ⊙ (f(v,G) + X̄_{G−v}) ⊙ (1 + m̄_1) − X̄_H ⊙ X̄_{G−v}`.
pub fn gprime_series_formula(g: &Graph, v: usize, h: &Graph, d: usize) -> Result<SymSeries> {
    check_vertex(g, v)?;
    let wg = WeightedGraph::unit(g.clone());
    let wh = WeightedGraph::unit(h.clone());
    let h_plus = WeightedGraph::unit(h.disjoint_union(&Graph::empty(1)?)?);
    let xh = ksf_mbar_truncated(&wh, d);
    let xgv = ksf_mbar_truncated(&wg.delete_vertex(v)?, d);
    let f_h = f_series(&h_plus, h.n(), d)?;
    let f_g = f_series(&wg, v, d)?;
    let mut one_plus = SymSeries::one(Basis::KAugmented, d);
    one_plus.add_term(Partition::ones(1), Rational::from_integer(1.into()));
    let left = odot_all(&[&(&f_h + &xh), &(&f_g + &xgv), &one_plus])?;
    Ok(&left - &odot_all(&[&xh, &xgv])?)
}

/// Every `(v1, v2)` with `G1 − v1` and `G2 − v2` of equal KSF.
pub fn find_ksf_equal_vertex_pairs(g1: &Graph, g2: &Graph) -> Result<Vec<(usize, usize)>> {
    if g1.n() != g2.n() {
        return input(format!("vertex counts differ ({} vs {})", g1.n(), g2.n()));
    }
    let prints = |g: &Graph| -> Result<Vec<_>> {
        (0..g.n()).map(|v| ksf_fingerprint(&g.delete_vertex(v)?)).collect()
    };
    let a = prints(g1)?;
    let b = prints(g2)?;
    let mut out = Vec::new();
    for (i, fa) in a.iter().enumerate() {
        for (j, fb) in b.iter().enumerate() {
            if fa == fb {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// A vertex in each graph whose deletion, and whose deletion together with
/// its two non-neighbours, leaves isomorphic graphs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PendantWitness {
    pub v1: usize,
    pub v2: usize,
    pub non_neighbours1: (usize, usize),
    pub non_neighbours2: (usize, usize),
}

fn two_non_neighbours(g: &Graph, v: usize) -> Option<(usize, usize)> {
    let rest = g.vertex_mask() & !g.row(v) & !(1 << v);
    if rest.count_ones() != 2 {
        return None;
    }
    let a = rest.trailing_zeros() as usize;
    let b = 63 - rest.leading_zeros() as usize;
    Some((a, b))
}

/// All witnesses for the single-vertex attachment construction, in vertex order.
pub fn pendant_attachment_witnesses(g1: &Graph, g2: &Graph) -> Result<Vec<PendantWitness>> {
    if g1.n() != g2.n() {
        return input(format!("vertex counts differ ({} vs {})", g1.n(), g2.n()));
    }
    let mut out = Vec::new();
    for v1 in 0..g1.n() {
        let Some((a1, b1)) = two_non_neighbours(g1, v1) else { continue };
        for v2 in 0..g2.n() {
            let Some((a2, b2)) = two_non_neighbours(g2, v2) else { continue };
            if !is_isomorphic(&g1.delete_vertex(v1)?, &g2.delete_vertex(v2)?) {
                continue;
            }
            if is_isomorphic(&g1.delete_vertices(&[v1, a1, b1])?, &g2.delete_vertices(&[v2, a2, b2])?) {
                out.push(PendantWitness {
                    v1,
                    v2,
                    non_neighbours1: (a1, b1),
                    non_neighbours2: (a2, b2),
                });
            }
        }
    }
    Ok(out)
}

/// Four vertices of `G` for the Orellana–Scott construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct OsInstance {
    pub graph: Graph,
    pub u: usize,
    pub v: usize,
    pub w: usize,
    pub z: usize,
}

impl OsInstance {
    pub fn vertices(&self) -> [usize; 4] {
        [self.u, self.v, self.w, self.z]
    }

    fn range_check(&self) -> Result<()> {
        for x in self.vertices() {
            check_vertex(&self.graph, x)?;
        }
        let s: BTreeSet<usize> = self.vertices().into_iter().collect();
        if s.len() != 4 {
            return input("the four vertices must be distinct");
        }
        Ok(())
    }

    fn edge_pattern(&self) -> bool {
        let g = &self.graph;
        let (u, v, w, z) = (self.u, self.v, self.w, self.z);
        g.has_edge(u, z) && g.has_edge(w, z) && g.has_edge(v, w) && !g.has_edge(u, w) && !g.has_edge(v, z)
    }

    /// Whether `uv` is an edge; reported, not required.
    pub fn uv_adjacent(&self) -> bool {
        self.graph.has_edge(self.u, self.v)
    }
}

fn os_maps(inst: &OsInstance) -> Vec<[(usize, usize); 4]> {
    let (u, v, w, z) = (inst.u, inst.v, inst.w, inst.z);
    let mut out = Vec::new();
    for (pu, pw) in [(v, z), (z, v)] {
        for (pv, pz) in [(u, w), (w, u)] {
            out.push([(u, pu), (w, pw), (v, pv), (z, pz)]);
        }
    }
    out
}

/// An automorphism of `G − wz` exchanging `{u,w}` with `{v,z}`, if any.
pub fn os_automorphism(inst: &OsInstance) -> Result<Option<Vec<usize>>> {
    inst.range_check()?;
    let h = inst.graph.without_edge(inst.w, inst.z)?;
    Ok(os_maps(inst).iter().find_map(|c| find_automorphism(&h, c)))
}

/// An automorphism of `G − wz` with `u ↔ z` and `w ↔ v`, if any.
pub fn os_swap_automorphism(inst: &OsInstance) -> Result<Option<Vec<usize>>> {
    inst.range_check()?;
    let h = inst.graph.without_edge(inst.w, inst.z)?;
    let (u, v, w, z) = (inst.u, inst.v, inst.w, inst.z);
    Ok(find_automorphism(&h, &[(u, z), (z, u), (w, v), (v, w)]))
}

/// `uz, wz, vw ∈ E`, `uw, vz ∉ E`, and the exchanging automorphism exists.
pub fn check_os(inst: &OsInstance) -> Result<bool> {
    inst.range_check()?;
    if !inst.edge_pattern() {
        return Ok(false);
    }
    Ok(os_automorphism(inst)?.is_some())
}

/// `(G + uw, G + vz)`.
pub fn os_pair(inst: &OsInstance) -> Result<(Graph, Graph)> {
    if !check_os(inst)? {
        return Err(KsfError::Precondition("not an Orellana–Scott instance".into()));
    }
    Ok((
        inst.graph.with_edge(inst.u, inst.w)?,
        inst.graph.with_edge(inst.v, inst.z)?,
    ))
}

/// Neighbours of `a` in `G`, outside the instance, adjacent to neither `b` nor `c`.
fn lonely_neighbours(inst: &OsInstance, a: usize, b: usize, c: usize) -> u64 {
    let g = &inst.graph;
    let quad = inst.vertices().iter().fold(0u64, |m, &x| m | 1 << x);
    let set = g.row(a) & !quad & !g.row(b) & !g.row(c);
    u64::from(set.count_ones())
}

/// Claw-count margins `(left, right)`; unequal margins predict that the two
/// graphs of [`os_pair`] have different KSF.
pub fn os_claw_margin(inst: &OsInstance) -> Result<(u64, u64)> {
    if !check_os(inst)? || os_swap_automorphism(inst)?.is_none() {
        return Err(KsfError::Precondition(
            "needs an Orellana–Scott instance with u ↔ z, w ↔ v".into(),
        ));
    }
    let (u, v, w, z) = (inst.u, inst.v, inst.w, inst.z);
    let left = lonely_neighbours(inst, w, u, v) + lonely_neighbours(inst, w, z, v);
    let right = lonely_neighbours(inst, z, u, v) + lonely_neighbours(inst, z, u, w);
    Ok((left, right))
}

/// Vertices `u, v, u', v'` of `G` for the split-graph construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct AcszInstance {
    pub graph: Graph,
    pub u: usize,
    pub v: usize,
    pub u2: usize,
    pub v2: usize,
}

impl AcszInstance {
    pub fn vertices(&self) -> [usize; 4] {
        [self.u, self.v, self.u2, self.v2]
    }
}

/// `uv, u'v'` are non-edges between distinct vertices, some automorphism maps
/// `u ↦ u'` and some maps `v ↦ v'`.
pub fn check_acsz(inst: &AcszInstance) -> Result<bool> {
    let g = &inst.graph;
    for x in inst.vertices() {
        check_vertex(g, x)?;
    }
    if inst.u == inst.v || inst.u2 == inst.v2 {
        return Ok(false);
    }
    if g.has_edge(inst.u, inst.v) || g.has_edge(inst.u2, inst.v2) {
        return Ok(false);
    }
    Ok(find_automorphism(g, &[(inst.u, inst.u2)]).is_some()
        && find_automorphism(g, &[(inst.v, inst.v2)]).is_some())
}

fn require_acsz(inst: &AcszInstance) -> Result<()> {
    if !check_acsz(inst)? {
        return Err(KsfError::Precondition("not a split-graph instance".into()));
    }
    Ok(())
}

/// `(sp(G + uv), sp(G + u'v'))`.
pub fn acsz_pair(inst: &AcszInstance) -> Result<(Graph, Graph)> {
    require_acsz(inst)?;
    Ok((
        split_graph(&inst.graph.with_edge(inst.u, inst.v)?)?,
        split_graph(&inst.graph.with_edge(inst.u2, inst.v2)?)?,
    ))
}

/// The hypotheses under which the KSF tells the split pair apart.
pub fn check_acsz_distinguishing(inst: &AcszInstance) -> Result<bool> {
    require_acsz(inst)?;
    let g = &inst.graph;
    let common = g.row(inst.u) & g.row(inst.v);
    let common2 = g.row(inst.u2) & g.row(inst.v2);
    if common == 0 || common2 != 0 || g.n() < 6 {
        return Ok(false);
    }
    let hub = bits(common).any(|x| g.degree(x) >= 3);
    Ok(hub || g.degree(inst.u) >= 2 || g.degree(inst.v) >= 2)
}

/// `2x⁵ + 9x⁴ + 16x³ + 15x² + 7x + 1`.
pub fn h_polynomial() -> Polynomial {
    Polynomial::new(vec![1, 7, 15, 16, 9, 2])
}

/// The 7-vertex graphs with independence polynomial [`h_polynomial`],
/// found by exhaustive search.
pub fn h_graphs() -> &'static [Graph] {
    static CELL: OnceLock<Vec<Graph>> = OnceLock::new();
    CELL.get_or_init(|| find_graphs_with_polynomial(7, &h_polynomial()).expect("7 vertices is in range"))
}

/// Induced copies of both graphs of [`h_graphs`].
pub fn count_h1_h2(g: &Graph) -> u64 {
    h_graphs().iter().map(|h| count_induced_copies(g, h)).sum()
}

/// Entry of an instance registry, serialised one per line.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub g6: String,
    pub vertices: Vec<usize>,
    pub kind: String,
    pub distinguishing: bool,
}

fn min_image(auts: &[Vec<usize>], variants: &[[usize; 4]]) -> [usize; 4] {
    let mut best = [usize::MAX; 4];
    for p in auts {
        for t in variants {
            let img = t.map(|x| p[x]);
            best = best.min(img);
        }
    }
    best
}

fn os_instances_of(g: &Graph) -> Vec<OsInstance> {
    let n = g.n();
    let mut found = BTreeSet::new();
    let mut auts: Option<Vec<Vec<usize>>> = None;
    for w in 0..n {
        for z in bits(g.row(w)) {
            for u in bits(g.row(z) & !g.row(w) & !(1 << w)) {
                for v in bits(g.row(w) & !g.row(z) & !(1 << z) & !(1 << u)) {
                    let inst = OsInstance { graph: g.clone(), u, v, w, z };
                    if !matches!(os_automorphism(&inst), Ok(Some(_))) {
                        continue;
                    }
                    let auts = auts.get_or_insert_with(|| automorphisms(g).expect("small graph"));
                    found.insert(min_image(auts, &[[u, v, w, z], [v, u, z, w]]));
                }
            }
        }
    }
    found
        .into_iter()
        .map(|[u, v, w, z]| OsInstance { graph: g.clone(), u, v, w, z })
        .collect()
}

/// Orellana–Scott instances on every canonical graph with `4 ≤ n ≤ max_n`,
/// one per orbit under `Aut(G)` and the relabelling `(u,v,w,z) ↦ (v,u,z,w)`.
pub fn find_os_instances(max_n: usize) -> Result<Vec<OsInstance>> {
    let mut out = Vec::new();
    for n in 4..=max_n {
        let graphs = generate_all(n)?.into_graphs();
        let per: Vec<Vec<OsInstance>> = graphs.par_iter().map(os_instances_of).collect();
        out.extend(per.into_iter().flatten());
    }
    Ok(out)
}

fn acsz_instances_of(g: &Graph) -> Vec<AcszInstance> {
    let n = g.n();
    let orbit = vertex_orbits(g);
    let mut non_edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) {
                non_edges.push((a, b));
            }
        }
    }
    let mut found = BTreeSet::new();
    let mut auts: Option<Vec<Vec<usize>>> = None;
    for &(a, b) in &non_edges {
        for &(c, d) in &non_edges {
            if (a, b) == (c, d) {
                continue;
            }
            let oriented = if orbit[a] == orbit[c] && orbit[b] == orbit[d] {
                [a, b, c, d]
            } else if orbit[a] == orbit[d] && orbit[b] == orbit[c] {
                [a, b, d, c]
            } else {
                continue;
            };
            let auts = auts.get_or_insert_with(|| automorphisms(g).expect("small graph"));
            let [u, v, u2, v2] = oriented;
            found.insert(min_image(auts, &[oriented, [v, u, v2, u2]]));
        }
    }
    found
        .into_iter()
        .map(|[u, v, u2, v2]| AcszInstance { graph: g.clone(), u, v, u2, v2 })
        .collect()
}

/// Split-graph instances on every canonical graph with `2 ≤ n ≤ max_n` whose
/// split graphs have at most `max_split` vertices, one per ordered pair of
/// distinct non-edges up to `Aut(G)`.
pub fn find_acsz_instances(max_n: usize, max_split: usize) -> Result<Vec<AcszInstance>> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let graphs: Vec<Graph> = generate_all(n)?
            .filter(|g| g.n() + g.edge_count() < max_split)
            .collect();
        let per: Vec<Vec<AcszInstance>> = graphs.par_iter().map(acsz_instances_of).collect();
        out.extend(per.into_iter().flatten());
    }
    Ok(out)
}

/// Default split-graph size for instance scans: the fingerprint limit.
pub const DEFAULT_MAX_SPLIT_VERTICES: usize = MAX_FINGERPRINT_VERTICES;

impl OsInstance {
    pub fn record(&self) -> Result<InstanceRecord> {
        let distinguishing = match os_swap_automorphism(self)? {
            Some(_) => {
                let (l, r) = os_claw_margin(self)?;
                l != r
            }
            None => false,
        };
        Ok(InstanceRecord {
            g6: graph6::encode(&self.graph),
            vertices: self.vertices().to_vec(),
            kind: "os".into(),
            distinguishing,
        })
    }
}

impl AcszInstance {
    pub fn record(&self) -> Result<InstanceRecord> {
        Ok(InstanceRecord {
            g6: graph6::encode(&self.graph),
            vertices: self.vertices().to_vec(),
            kind: "acsz".into(),
            distinguishing: check_acsz_distinguishing(self)?,
        })
    }
}

/// Serialises records as JSON lines.
pub fn write_registry(records: &[InstanceRecord]) -> String {
    let mut s = String::new();
    for r in records {
        s.push_str(&serde_json::to_string(r).expect("records serialise"));
        s.push('\n');
    }
    s
}

/// Parses a registry written by [`write_registry`].
pub fn read_registry(text: &str) -> Result<Vec<InstanceRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| KsfError::Cache {
                line: i + 1,
                msg: e.to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym::ksf_mbar_truncated;

    fn k(n: usize) -> Graph {
        Graph::complete(n).unwrap()
    }

    fn e(n: usize) -> Graph {
        Graph::empty(n).unwrap()
    }

    fn p(n: usize) -> Graph {
        Graph::path(n).unwrap()
    }

    #[test]
    fn attach_examples() {
        let a = attach_except(&k(2), 0, &k(1)).unwrap();
        assert!(is_isomorphic(&a, &p(3)));
        assert_eq!(a.edges(), vec![(0, 1), (1, 2)]);
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(attach_except(&c4, 2, &e(0)).unwrap(), c4);
        assert_eq!(attach_except(&k(1), 0, &k(1)).unwrap(), e(2));
        assert!(attach_except(&k(1), 1, &k(1)).is_err());
        assert_eq!(attach_to_vertex(&k(1), 0, &k(2)).unwrap(), k(3));
        assert!(is_isomorphic(&attach_to_vertex(&k(2), 0, &k(1)).unwrap(), &p(3)));
        assert_eq!(attach_to_vertex(&c4, 1, &e(0)).unwrap(), c4);
    }

    #[test]
    fn split_examples() {
        assert_eq!(split_graph(&k(2)).unwrap(), k(3));
        assert_eq!(split_graph(&e(3)).unwrap(), k(3));
        let s = split_graph(&p(3)).unwrap();
        assert_eq!(s.n(), 5);
        assert_eq!(s.edges(), vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (1, 4), (2, 4)]);
        assert!(split_graph(&k(11)).is_err());
    }

    #[test]
    fn gprime_examples() {
        let one = gprime_series_formula(&k(1), 0, &e(0), 3).unwrap();
        assert_eq!(one, ksf_mbar_truncated(&WeightedGraph::unit(k(1)), 3));
        for (g, target) in [(k(2), p(3)), (e(2), attach_except(&e(2), 0, &k(1)).unwrap())] {
            assert_eq!(
                gprime_series_formula(&g, 0, &k(1), 5).unwrap(),
                ksf_mbar_truncated(&WeightedGraph::unit(target), 5)
            );
        }
    }

    #[test]
    fn vertex_pairs_of_asymmetric_graph() {
        // Smallest asymmetric graphs have 6 vertices.
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (3, 5)]).unwrap();
        assert_eq!(automorphisms(&g).unwrap().len(), 1);
        let pairs = find_ksf_equal_vertex_pairs(&g, &g).unwrap();
        for v in 0..6 {
            assert!(pairs.contains(&(v, v)));
        }
        assert!(find_ksf_equal_vertex_pairs(&g, &k(2)).is_err());
    }

    #[test]
    fn acsz_examples() {
        let inst = |g: Graph, u, v, u2, v2| AcszInstance { graph: g, u, v, u2, v2 };
        assert!(check_acsz(&inst(e(2), 0, 1, 0, 1)).unwrap());
        assert!(!check_acsz(&inst(k(2), 0, 1, 0, 1)).unwrap());
        assert!(check_acsz(&inst(p(4), 0, 3, 3, 0)).unwrap());
        assert!(check_acsz(&inst(k(2), 0, 2, 0, 1)).is_err());
        assert!(matches!(acsz_pair(&inst(k(2), 0, 1, 0, 1)), Err(KsfError::Precondition(_))));
        // Non-edges 02 and 31 of P4, related by the reversal.
        let g = p(4);
        let i = inst(g.clone(), 0, 2, 3, 1);
        assert!(check_acsz(&i).unwrap());
        let (a, b) = acsz_pair(&i).unwrap();
        assert_eq!(a.n(), 4 + 3 + 1);
        assert_eq!(b.n(), 4 + 3 + 1);
        // Too small for the distinguishing gate.
        assert!(!check_acsz_distinguishing(&i).unwrap());
    }

    #[test]
    fn os_examples() {
        // Path u - z - w - v: uz, zw, wv are edges and uw, vz are not.
        let g = p(4);
        let inst = OsInstance { graph: g.clone(), u: 0, z: 1, w: 2, v: 3 };
        assert!(check_os(&inst).unwrap());
        assert!(os_swap_automorphism(&inst).unwrap().is_some());
        assert_eq!(os_claw_margin(&inst).unwrap(), (0, 0));
        let (h, j) = os_pair(&inst).unwrap();
        assert_eq!(h.edge_count(), 4);
        assert_eq!(j.edge_count(), 4);
        let chorded = Graph::cycle(4).unwrap().with_edge(0, 2).unwrap();
        let bad = OsInstance { graph: chorded, u: 0, z: 1, w: 2, v: 3 };
        assert!(!check_os(&bad).unwrap());
        assert!(os_pair(&bad).is_err());
        let dup = OsInstance { graph: g, u: 0, z: 0, w: 2, v: 3 };
        assert!(check_os(&dup).is_err());
    }

    #[test]
    fn os_without_automorphism() {
        // u - z - w - v with a pendant on z: G − wz has no exchanging map.
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        let inst = OsInstance { graph: g, u: 0, z: 1, w: 2, v: 3 };
        assert!(!check_os(&inst).unwrap());
    }

    #[test]
    fn h_graphs_found() {
        let hs = h_graphs();
        assert_eq!(hs.len(), 2);
        assert!(!is_isomorphic(&hs[0], &hs[1]));
        assert!(count_h1_h2(&hs[0]) >= 1);
        assert_eq!(count_h1_h2(&k(6)), 0);
    }

    #[test]
    fn registry_round_trip() {
        let r = InstanceRecord { g6: "C~".into(), vertices: vec![0, 1, 2, 3], kind: "os".into(), distinguishing: true };
        let text = write_registry(&[r.clone(), r.clone()]);
        assert_eq!(read_registry(&text).unwrap(), vec![r.clone(), r]);
        assert!(matches!(read_registry("{\"g6\":1}\n"), Err(KsfError::Cache { line: 1, .. })));
    }

    #[test]
    fn small_scans_are_valid() {
        for inst in find_os_instances(5).unwrap() {
            assert!(check_os(&inst).unwrap());
        }
        let acsz = find_acsz_instances(5, 12).unwrap();
        assert!(!acsz.is_empty());
        for inst in acsz {
            assert!(check_acsz(&inst).unwrap());
        }
    }
}
