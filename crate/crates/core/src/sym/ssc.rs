//! Expansions of the KSF and CSF of a vertex-weighted graph.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::partition::Partition;
use super::series::{odot_product, Basis, SymSeries};
use crate::error::{input, Result};
use crate::graph::{bits, full_mask, WeightedGraph};

/// A set of distinct nonempty stable sets whose union is the vertex set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StableSetCover {
    sets: Vec<u64>,
}

impl StableSetCover {
    /// Member sets as vertex masks, in enumeration order.
    pub fn sets(&self) -> &[u64] {
        &self.sets
    }

    /// `λ(C)`: the sorted weights of the member sets.
    pub fn partition(&self, g: &WeightedGraph) -> Partition {
        cover_partition(g, &self.sets)
    }

    pub fn total_weight(&self, g: &WeightedGraph) -> usize {
        self.sets.iter().map(|&s| g.weight_of(s)).sum()
    }
}

fn cover_partition(g: &WeightedGraph, sets: &[u64]) -> Partition {
    Partition::new(sets.iter().map(|&s| g.weight_of(s) as u32).collect())
        .expect("stable sets are nonempty and weights positive")
}

/// All nonempty stable sets, ordered by `(size, mask)`.
pub fn stable_sets(g: &WeightedGraph) -> Vec<u64> {
    let n = g.n();
    let gr = g.graph();
    // Extend each stable set only by vertices above its maximum.
    let mut out = Vec::new();
    let mut stack: Vec<(u64, u64)> = (0..n).map(|v| (1u64 << v, gr.row(v))).collect();
    while let Some((set, blocked)) = stack.pop() {
        out.push(set);
        let top = 63 - set.leading_zeros() as usize;
        for v in top + 1..n {
            if blocked >> v & 1 == 0 {
                stack.push((set | 1 << v, blocked | gr.row(v)));
            }
        }
    }
    out.sort_by_key(|&s| (s.count_ones(), s));
    out
}

/// Include/exclude DFS over `sets` visiting every subfamily that covers all
/// vertices with total weight at most `budget`.
fn visit_covers(g: &WeightedGraph, sets: &[u64], budget: usize, visit: &mut impl FnMut(&[u64])) {
    let all = full_mask(g.n());
    let weights: Vec<usize> = sets.iter().map(|&s| g.weight_of(s)).collect();
    let mut suffix = vec![0u64; sets.len() + 1];
    for i in (0..sets.len()).rev() {
        suffix[i] = suffix[i + 1] | sets[i];
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        g: &WeightedGraph,
        sets: &[u64],
        weights: &[usize],
        suffix: &[u64],
        all: u64,
        i: usize,
        covered: u64,
        left: usize,
        chosen: &mut Vec<u64>,
        visit: &mut impl FnMut(&[u64]),
    ) {
        let missing = all & !covered;
        if missing & !suffix[i] != 0 || g.weight_of(missing) > left {
            return;
        }
        if i == sets.len() {
            visit(chosen);
            return;
        }
        if weights[i] <= left {
            chosen.push(sets[i]);
            rec(g, sets, weights, suffix, all, i + 1, covered | sets[i], left - weights[i], chosen, visit);
            chosen.pop();
        }
        rec(g, sets, weights, suffix, all, i + 1, covered, left, chosen, visit);
    }
    rec(g, sets, &weights, &suffix, all, 0, 0, budget, &mut Vec::new(), visit);
}

/// Every stable set cover of total weight at most `d`, each exactly once.
pub fn stable_set_covers(g: &WeightedGraph, d: usize) -> Vec<StableSetCover> {
    let mut out = Vec::new();
    visit_covers(g, &stable_sets(g), d, &mut |c| {
        out.push(StableSetCover { sets: c.to_vec() })
    });
    out
}

fn count_covers(g: &WeightedGraph, sets: &[u64], d: usize) -> SymSeries {
    let mut counts: HashMap<Vec<u32>, u128> = HashMap::new();
    let mut key = Vec::new();
    visit_covers(g, sets, d, &mut |c| {
        key.clear();
        key.extend(c.iter().map(|&s| g.weight_of(s) as u32));
        key.sort_unstable_by(|a, b| b.cmp(a));
        *counts.entry(key.clone()).or_default() += 1;
    });
    SymSeries::from_counts(
        Basis::KAugmented,
        d,
        counts.into_iter().map(|(k, c)| (Partition::from_sorted(k), c)),
    )
}

/// KSF in the K-augmented basis: one `m̄_{λ(C)}` per stable set cover `C`.
pub fn ksf_mbar_truncated(g: &WeightedGraph, d: usize) -> SymSeries {
    count_covers(g, &stable_sets(g), d)
}

/// Sum of `m̄_{λ(C)}` over covers that do not contain the singleton `{v}`.
pub fn f_series(g: &WeightedGraph, v: usize, d: usize) -> Result<SymSeries> {
    if v >= g.n() {
        return input(format!("vertex {v} out of range for {} vertices", g.n()));
    }
    let sets: Vec<u64> = stable_sets(g).into_iter().filter(|&s| s != 1 << v).collect();
    Ok(count_covers(g, &sets, d))
}

/// `Σ_{k=0..d} (−1)^k m̄_{w^k}` truncated at `d`, the ⊙-inverse of `1 + m̄_w`.
pub fn odot_geometric_inverse(w: u32, d: usize) -> SymSeries {
    let mut s = SymSeries::zero(Basis::KAugmented, d);
    let mut k = 0usize;
    while k * w as usize <= d {
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        s.add_term(
            Partition::from_sorted(vec![w; k]),
            BigRational::from_integer(BigInt::from(sign)),
        );
        k += 1;
        if w == 0 {
            break;
        }
    }
    s
}

pub fn odot_geometric_inverse_one_plus_m1(d: usize) -> SymSeries {
    odot_geometric_inverse(1, d)
}

/// `m̄_w` and `1 + m̄_w` at bound `d`.
fn mbar_single(w: u32, d: usize) -> (SymSeries, SymSeries) {
    let m = SymSeries::term(
        Basis::KAugmented,
        d,
        Partition::from_sorted(vec![w]),
        BigRational::from_integer(1.into()),
    );
    let one_plus = &SymSeries::one(Basis::KAugmented, d) + &m;
    (m, one_plus)
}

/// Right-hand side of the vertex recursion
/// `X̄_G = X̄_{G−v} ⊙ m̄_{w(v)} + f(v,G) ⊙ (1 + m̄_{w(v)})`.
pub fn vertex_recursion_rhs(g: &WeightedGraph, v: usize, d: usize) -> Result<SymSeries> {
    let f = f_series(g, v, d)?;
    let (m, one_plus) = mbar_single(g.weights()[v], d);
    let rest = ksf_mbar_truncated(&g.delete_vertex(v)?, d);
    Ok(&odot_product(&rest, &m)? + &odot_product(&f, &one_plus)?)
}

/// `f(v,G)` recovered from `X̄_G` and `X̄_{G−v}` alone.
pub fn f_series_closed_form(g: &WeightedGraph, v: usize, d: usize) -> Result<SymSeries> {
    if v >= g.n() {
        return input(format!("vertex {v} out of range for {} vertices", g.n()));
    }
    let w = g.weights()[v];
    let (m, _) = mbar_single(w, d);
    let whole = ksf_mbar_truncated(g, d);
    let rest = ksf_mbar_truncated(&g.delete_vertex(v)?, d);
    let diff = &whole - &odot_product(&rest, &m)?;
    odot_product(&diff, &odot_geometric_inverse(w, d))
}

/// CSF in the augmented basis: one `m̃_λ` per partition of the vertex set
/// into stable sets. The bound is the total weight, so the result is exact.
pub fn csf_mtilde(g: &WeightedGraph) -> SymSeries {
    let mut counts: HashMap<Vec<u32>, u128> = HashMap::new();
    fn rec(
        g: &WeightedGraph,
        rest: u64,
        blocks: &mut Vec<u32>,
        counts: &mut HashMap<Vec<u32>, u128>,
    ) {
        if rest == 0 {
            let mut k = blocks.clone();
            k.sort_unstable_by(|a, b| b.cmp(a));
            *counts.entry(k).or_default() += 1;
            return;
        }
        let v = rest.trailing_zeros() as usize;
        let gr = g.graph();
        let pool = rest & !(1 << v) & !gr.row(v);
        // Every stable subset of `pool ∪ {v}` containing `v`.
        fn blocks_from(
            g: &WeightedGraph,
            block: u64,
            candidates: u64,
            rest: u64,
            blocks: &mut Vec<u32>,
            counts: &mut HashMap<Vec<u32>, u128>,
        ) {
            blocks.push(g.weight_of(block) as u32);
            rec(g, rest & !block, blocks, counts);
            blocks.pop();
            for u in bits(candidates) {
                let higher = candidates & !full_mask(u + 1);
                blocks_from(
                    g,
                    block | 1 << u,
                    higher & !g.graph().row(u),
                    rest,
                    blocks,
                    counts,
                );
            }
        }
        blocks_from(g, 1 << v, pool, rest, blocks, counts);
    }
    rec(g, full_mask(g.n()), &mut Vec::new(), &mut counts);
    SymSeries::from_counts(
        Basis::Augmented,
        g.total_weight(),
        counts.into_iter().map(|(k, c)| (Partition::from_sorted(k), c)),
    )
}

/// KSF in the monomial basis by counting proper set colourings: the
/// coefficient of `m_α` is the number of tuples `(S_1..S_ℓ)` of stable sets
/// with `w(S_i) = α_i` whose union is the vertex set.
pub fn ksf_monomial_truncated(g: &WeightedGraph, d: usize) -> SymSeries {
    let n = g.n();
    let all = full_mask(n);
    let mut by_weight: HashMap<usize, Vec<u64>> = HashMap::new();
    for s in stable_sets(g) {
        by_weight.entry(g.weight_of(s)).or_default().push(s);
    }
    let need = g.total_weight();
    let mut s = SymSeries::zero(Basis::Monomial, d);
    if need > d {
        return s;
    }
    for size in need..=d {
        for alpha in Partition::all_of_size(size) {
            // Sets are replaced, not merged, into the covered mask, so the
            // table is indexed by masks of `n` bits.
            let mut table: HashMap<u64, u128> = HashMap::new();
            table.insert(0, 1);
            let mut ok = true;
            for &part in alpha.parts() {
                let Some(cands) = by_weight.get(&(part as usize)) else {
                    ok = false;
                    break;
                };
                let mut next: HashMap<u64, u128> = HashMap::with_capacity(table.len());
                for (&mask, &c) in &table {
                    for &st in cands {
                        *next.entry(mask | st).or_default() += c;
                    }
                }
                table = next;
            }
            if !ok {
                continue;
            }
            if let Some(&c) = table.get(&all) {
                s.add_term(alpha, BigRational::from_integer(BigInt::from(c)));
            }
        }
    }
    s
}

fn compositions_bounded(weights: &[u32], d: usize) -> Vec<Vec<usize>> {
    fn rec(weights: &[u32], i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == weights.len() {
            out.push(cur.clone());
            return;
        }
        let later: usize = weights[i + 1..].iter().map(|&w| w as usize).sum();
        let w = weights[i] as usize;
        let mut a = 1;
        while a * w + later <= left {
            cur.push(a);
            rec(weights, i + 1, left - a * w, cur, out);
            cur.pop();
            a += 1;
        }
    }
    let mut out = Vec::new();
    rec(weights, 0, d, &mut Vec::new(), &mut out);
    out
}

/// `Σ_α (1/α!) X_{C_α}` in the monomial basis, over compositions `α` whose
/// clan graph has total weight at most `d`.
pub fn clan_expansion_monomial(g: &WeightedGraph, d: usize) -> Result<SymSeries> {
    let mut s = SymSeries::zero(Basis::Monomial, d);
    for alpha in compositions_bounded(g.weights(), d) {
        let clan = g.clan_graph(&alpha)?;
        let mut fact = BigInt::from(1);
        for &a in &alpha {
            for k in 2..=a {
                fact *= k;
            }
        }
        let weight = BigRational::new(1.into(), fact);
        let csf = csf_mtilde(&clan);
        for (p, c) in csf.terms() {
            let mono = c * BigRational::from_integer(p.multiplicity_factorial());
            s.add_term(p.clone(), mono * &weight);
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::sym::series::convert;

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn series(basis: Basis, d: usize, terms: &[(&[u32], i64)]) -> SymSeries {
        let mut s = SymSeries::zero(basis, d);
        for (p, c) in terms {
            s.add_term(pt(p), BigRational::from_integer((*c).into()));
        }
        s
    }

    fn unit(g: Graph) -> WeightedGraph {
        WeightedGraph::unit(g)
    }

    fn k(n: usize) -> WeightedGraph {
        unit(Graph::complete(n).unwrap())
    }

    fn e(n: usize) -> WeightedGraph {
        unit(Graph::empty(n).unwrap())
    }

    #[test]
    fn stable_set_order() {
        assert_eq!(stable_sets(&e(2)), vec![0b01, 0b10, 0b11]);
        assert_eq!(stable_sets(&k(3)), vec![1, 2, 4]);
        let p3 = unit(Graph::path(3).unwrap());
        assert_eq!(stable_sets(&p3), vec![1, 2, 4, 0b101]);
        assert_eq!(stable_sets(&e(5)).len(), 31);
    }

    #[test]
    fn cover_examples() {
        assert_eq!(stable_set_covers(&k(2), 2).len(), 1);
        assert_eq!(stable_set_covers(&k(1), 1).len(), 1);
        let mut covers: Vec<Vec<u64>> = stable_set_covers(&e(2), 5)
            .into_iter()
            .map(|c| {
                let mut s = c.sets().to_vec();
                s.sort();
                s
            })
            .collect();
        covers.sort();
        assert_eq!(
            covers,
            vec![vec![1, 2], vec![1, 2, 3], vec![1, 3], vec![2, 3], vec![3]]
        );
        assert!(stable_set_covers(&k(3), 2).is_empty());
    }

    #[test]
    fn mbar_examples() {
        assert_eq!(ksf_mbar_truncated(&k(2), 4), series(Basis::KAugmented, 4, &[(&[1, 1], 1)]));
        assert_eq!(
            ksf_mbar_truncated(&e(2), 4),
            series(
                Basis::KAugmented,
                4,
                &[(&[2], 1), (&[1, 1], 1), (&[2, 1], 2), (&[2, 1, 1], 1)]
            )
        );
        assert_eq!(ksf_mbar_truncated(&k(1), 3), series(Basis::KAugmented, 3, &[(&[1], 1)]));
    }

    #[test]
    fn monomial_examples() {
        assert_eq!(
            ksf_monomial_truncated(&k(1), 3),
            series(Basis::Monomial, 3, &[(&[1], 1), (&[1, 1], 1), (&[1, 1, 1], 1)])
        );
        assert_eq!(
            ksf_monomial_truncated(&k(2), 3),
            series(Basis::Monomial, 3, &[(&[1, 1], 2), (&[1, 1, 1], 6)])
        );
        let nothing = unit(Graph::empty(0).unwrap());
        assert_eq!(ksf_monomial_truncated(&nothing, 4), SymSeries::one(Basis::Monomial, 4));
        assert_eq!(ksf_mbar_truncated(&nothing, 4), SymSeries::one(Basis::KAugmented, 4));
    }

    #[test]
    fn csf_examples() {
        assert_eq!(csf_mtilde(&k(2)), series(Basis::Augmented, 2, &[(&[1, 1], 1)]));
        assert_eq!(
            csf_mtilde(&e(2)),
            series(Basis::Augmented, 2, &[(&[2], 1), (&[1, 1], 1)])
        );
        let heavy = WeightedGraph::new(Graph::empty(1).unwrap(), vec![3]).unwrap();
        assert_eq!(csf_mtilde(&heavy), series(Basis::Augmented, 3, &[(&[3], 1)]));
        // Bell numbers count set partitions of an edgeless graph.
        let total = |s: &SymSeries| s.terms().map(|(_, c)| c.to_integer()).sum::<BigInt>();
        assert_eq!(total(&csf_mtilde(&e(5))), BigInt::from(52));
        assert_eq!(total(&csf_mtilde(&e(6))), BigInt::from(203));
    }

    #[test]
    fn f_examples() {
        assert!(f_series(&k(2), 0, 4).unwrap().is_zero());
        assert_eq!(
            f_series(&e(2), 0, 4).unwrap(),
            series(Basis::KAugmented, 4, &[(&[2], 1), (&[2, 1], 1)])
        );
        assert_eq!(
            vertex_recursion_rhs(&e(2), 0, 4).unwrap(),
            ksf_mbar_truncated(&e(2), 4)
        );
        assert!(f_series(&e(2), 2, 4).is_err());
        assert_eq!(f_series_closed_form(&e(2), 0, 4).unwrap(), f_series(&e(2), 0, 4).unwrap());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(odot_geometric_inverse_one_plus_m1(0), SymSeries::one(Basis::KAugmented, 0));
        assert_eq!(
            odot_geometric_inverse_one_plus_m1(2),
            series(Basis::KAugmented, 2, &[(&[], 1), (&[1], -1), (&[1, 1], 1)])
        );
    }

    #[test]
    fn weighted_conversion_agrees() {
        let p3 = WeightedGraph::new(Graph::path(3).unwrap(), vec![2, 1, 1]).unwrap();
        let d = 6;
        assert_eq!(
            convert(&ksf_mbar_truncated(&p3, d), Basis::Monomial).unwrap(),
            ksf_monomial_truncated(&p3, d)
        );
        assert_eq!(
            clan_expansion_monomial(&p3, d).unwrap(),
            ksf_monomial_truncated(&p3, d)
        );
    }

    #[test]
    fn clan_expansion_k1() {
        assert_eq!(
            clan_expansion_monomial(&k(1), 3).unwrap(),
            ksf_monomial_truncated(&k(1), 3)
        );
    }

    #[test]
    fn weighted_recursion() {
        let g = WeightedGraph::new(Graph::path(3).unwrap(), vec![1, 2, 1]).unwrap();
        for v in 0..3 {
            assert_eq!(vertex_recursion_rhs(&g, v, 7).unwrap(), ksf_mbar_truncated(&g, 7));
            assert_eq!(f_series_closed_form(&g, v, 7).unwrap(), f_series(&g, v, 7).unwrap());
        }
    }
}
