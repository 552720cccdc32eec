//! Exhaustive identity checks over small graphs, each producing a report
//! of how many checks ran and which failed.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::canon::{canonical_code, is_isomorphic, CanonCode};
use crate::constructions::{
    acsz_pair, attach_except, attach_to_vertex, check_acsz_distinguishing, count_h1_h2,
    find_acsz_instances, find_ksf_equal_vertex_pairs, find_os_instances, gprime_series_formula,
    os_claw_margin, os_pair, os_swap_automorphism, pendant_attachment_witnesses, split_graph,
    AcszInstance, DEFAULT_MAX_SPLIT_VERTICES,
};
use crate::enumerate::generate_all;
use crate::error::{input, Result};
use crate::graph::{Graph, WeightedGraph};
use crate::graph6;
use crate::independence::{count_claws, ksf_fingerprint, Fingerprint};
use crate::search::{search_equal_ksf, PairReport};
use crate::sym::{
    clan_expansion_monomial, convert, csf_mtilde, f_series, f_series_closed_form,
    ksf_mbar_truncated, ksf_monomial_truncated, odot_product, ordinary_product,
    vertex_recursion_rhs, Basis, SymSeries,
};

/// Suite names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "f-identity",
    "join",
    "union",
    "clan",
    "expansion",
    "attach",
    "os",
    "split",
    "consistency",
    "amplify",
];

/// Failure messages kept per report; the count is always exact.
const KEPT_FAILURES: usize = 20;

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub name: String,
    pub checks: u64,
    pub failed: u64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(what());
            }
        }
    }

    fn absorb(&mut self, results: Vec<(bool, String)>) {
        for (ok, msg) in results {
            self.check(ok, || msg);
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {} checks, {} failed", self.name, self.checks, self.failed)?;
        for m in &self.failures {
            write!(f, "\n  {m}")?;
        }
        Ok(())
    }
}

/// Size limits shared by the suites; `degree` replaces each suite's default bound.
#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteConfig {
    pub max_n: Option<usize>,
    pub degree: Option<usize>,
}

impl SuiteConfig {
    fn n(&self, default: usize) -> usize {
        self.max_n.unwrap_or(default)
    }

    fn d(&self, default: usize) -> usize {
        self.degree.unwrap_or(default)
    }
}

fn unit(g: &Graph) -> WeightedGraph {
    WeightedGraph::unit(g.clone())
}

fn g6(g: &Graph) -> String {
    graph6::encode(g)
}

fn all_graphs(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(generate_all(n)?);
    }
    Ok(out)
}

/// The vertex recursion for `X̄_G` and the closed form of `f(v,G)`, for every
/// graph and vertex.
pub fn f_identity_suite(cfg: SuiteConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("f-identity");
    let graphs = all_graphs(cfg.n(6))?;
    let results: Vec<Vec<(bool, String)>> = graphs
        .par_iter()
        .map(|g| -> Result<_> {
            let d = cfg.d(g.n() + 2);
            let w = unit(g);
            let whole = ksf_mbar_truncated(&w, d);
            let mut out = Vec::new();
            for v in 0..g.n() {
                out.push((vertex_recursion_rhs(&w, v, d)? == whole, format!("recursion {} v={v}", g6(g))));
                out.push((
                    f_series_closed_form(&w, v, d)? == f_series(&w, v, d)?,
                    format!("closed form {} v={v}", g6(g)),
                ));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    rep.absorb(results.into_iter().flatten().collect());
    Ok(rep)
}

fn graph_pairs(total: usize) -> Result<Vec<(Graph, Graph)>> {
    let graphs = all_graphs(total.saturating_sub(1).max(1))?;
    let mut out = Vec::new();
    for a in &graphs {
        for b in &graphs {
            if a.n() + b.n() <= total {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(out)
}

/// `X̄_{G ⊙ H} = X̄_G ⊙ X̄_H` in the K-augmented basis.
pub fn join_suite(cfg: SuiteConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("join");
    let results: Vec<(bool, String)> = graph_pairs(cfg.n(6))?
        .par_iter()
        .map(|(a, b)| -> Result<_> {
            let d = cfg.d(a.n() + b.n() + 2);
            let joined = ksf_mbar_truncated(&unit(&a.join(b)?), d);
            let product = odot_product(&ksf_mbar_truncated(&unit(a), d), &ksf_mbar_truncated(&unit(b), d))?;
            Ok((joined == product, format!("join {} {}", g6(a), g6(b))))
        })
        .collect::<Result<_>>()?;
    rep.absorb(results);
    Ok(rep)
}

/// `X̄_{G ⊔ H} = X̄_G · X̄_H` in the monomial basis.
pub fn union_suite(cfg: SuiteConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("union");
    let results: Vec<(bool, String)> = graph_pairs(cfg.n(6))?
        .par_iter()
        .map(|(a, b)| -> Result<_> {
            let d = cfg.d(a.n() + b.n() + 2);
            let whole = ksf_monomial_truncated(&unit(&a.disjoint_union(b)?), d);
            let product = ordinary_product(
                &ksf_monomial_truncated(&unit(a), d),
                &ksf_monomial_truncated(&unit(b), d),
            )?;
            Ok((whole == product, format!("union {} {}", g6(a), g6(b))))
        })
        .collect::<Result<_>>()?;
    rep.absorb(results);
    Ok(rep)
}

/// The clan-graph expansion against the direct monomial expansion.
pub fn clan_suite(cfg: SuiteConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("clan");
    let results: Vec<(bool, String)> = all_graphs(cfg.n(4))?
        .par_iter()
        .map(|g| -> Result<_> {
            let d = cfg.d(g.n() + 1);
            let w = unit(g);
            let clan = clan_expansion_monomial(&w, d)?;
            let direct = convert(&ksf_mbar_truncated(&w, d), Basis::Monomial)?;
            Ok((clan == direct, format!("clan {} d={d}", g6(g))))
        })
        .collect::<Result<_>>()?;
    rep.absorb(results);
    Ok(rep)
}

/// Stable-set-cover expansion against set colourings, and its lowest slice
/// against the CSF.
pub fn expansion_suite(cfg: SuiteConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("expansion");
    let results: Vec<Vec<(bool, String)>> = all_graphs(cfg.n(5))?
        .par_iter()
        .map(|g| -> Result<_> {
            let n = g.n();
            let d = cfg.d(n + 2);
            let w = unit(g);
            let mbar = ksf_mbar_truncated(&w, d);
            let agree = convert(&mbar, Basis::Monomial)? == ksf_monomial_truncated(&w, d);
            let lowest = ksf_mbar_truncated(&w, n).slice(n);
            let csf = csf_mtilde(&w);
            let same_slice = lowest.terms().count() == csf.terms().count()
                && lowest.terms().zip(csf.terms()).all(|(a, b)| a == b);
            Ok(vec![
                (agree, format!("colourings {}", g6(g))),
                (same_slice && mbar.is_integral(), format!("lowest slice {}", g6(g))),
            ])
        })
        .collect::<Result<_>>()?;
    rep.absorb(results.into_iter().flatten().collect());
    Ok(rep)
}

/// The attach-except formula against direct expansion, for `n_H <= 2`.
pub fn attach_suite(cfg: SuiteConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("attach");
    let mut hs = vec![Graph::empty(0)?];
    hs.extend(all_graphs(2)?);
    let gs = all_graphs(cfg.n(4))?;
    let mut jobs = Vec::new();
    for g in &gs {
        for h in &hs {
            for v in 0..g.n() {
                jobs.push((g, h, v));
            }
        }
    }
    let results: Vec<(bool, String)> = jobs
        .par_iter()
        .map(|&(g, h, v)| -> Result<_> {
            let d = cfg.d(g.n() + h.n() + 2);
            let direct = ksf_mbar_truncated(&unit(&attach_except(g, v, h)?), d);
            let formula = gprime_series_formula(g, v, h, d)?;
            Ok((direct == formula, format!("attach {} v={v} H={}", g6(g), g6(h))))
        })
        .collect::<Result<_>>()?;
    rep.absorb(results);
    Ok(rep)
}

/// Orellana–Scott pairs: equal CSF, and unequal claw margins imply
/// different claw counts and different KSF.
pub fn os_suite(cfg: SuiteConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("os");
    let instances = find_os_instances(cfg.n(7))?;
    let results: Vec<Vec<(bool, String)>> = instances
        .par_iter()
        .map(|inst| -> Result<_> {
            let (h, j) = os_pair(inst)?;
            let tag = format!("{} {:?}", g6(&inst.graph), inst.vertices());
            let mut out = vec![(
                csf_mtilde(&unit(&h)) == csf_mtilde(&unit(&j)),
                format!("csf {tag}"),
            )];
            if os_swap_automorphism(inst)?.is_some() {
                let (l, r) = os_claw_margin(inst)?;
                if l != r {
                    out.push((count_claws(&h) != count_claws(&j), format!("claws {tag} margin {l}/{r}")));
                    out.push((
                        ksf_fingerprint(&h)? != ksf_fingerprint(&j)?,
                        format!("fingerprint {tag} margin {l}/{r}"),
                    ));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    rep.absorb(results.into_iter().flatten().collect());
    Ok(rep)
}

/// Memoised per canonical graph; split pairs repeat heavily across instances.
struct SplitData {
    csf: HashMap<CanonCode, SymSeries>,
    print: HashMap<CanonCode, Fingerprint>,
    h_count: HashMap<CanonCode, u64>,
}

impl SplitData {
    fn build(instances: &[AcszInstance]) -> Result<(Self, Vec<(CanonCode, CanonCode)>)> {
        let pairs: Vec<(CanonCode, CanonCode, Graph, Graph)> = instances
            .par_iter()
            .map(|i| {
                let (a, b) = acsz_pair(i)?;
                Ok((canonical_code(&a), canonical_code(&b), a, b))
            })
            .collect::<Result<_>>()?;
        let mut distinct: HashMap<CanonCode, Graph> = HashMap::new();
        for (ca, cb, a, b) in &pairs {
            distinct.entry(ca.clone()).or_insert_with(|| a.clone());
            distinct.entry(cb.clone()).or_insert_with(|| b.clone());
        }
        let rows: Vec<(CanonCode, SymSeries, Fingerprint, u64)> = distinct
            .into_par_iter()
            .map(|(c, g)| Ok((c, csf_mtilde(&unit(&g)), ksf_fingerprint(&g)?, count_h1_h2(&g))))
            .collect::<Result<_>>()?;
        let mut data = SplitData {
            csf: HashMap::new(),
            print: HashMap::new(),
            h_count: HashMap::new(),
        };
        for (c, s, f, h) in rows {
            data.csf.insert(c.clone(), s);
            data.print.insert(c.clone(), f);
            data.h_count.insert(c, h);
        }
        Ok((data, pairs.into_iter().map(|(a, b, _, _)| (a, b)).collect()))
    }
}

/// Split-graph pairs: equal CSF, and under the distinguishing hypotheses a
/// larger `H_1`/`H_2` count on the first side and different KSF. Also the
/// shape of `sp(G)` itself.
pub fn split_suite(cfg: SuiteConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("split");
    for g in all_graphs(cfg.n(8).min(6))? {
        let s = split_graph(&g)?;
        let n = g.n();
        let m = g.edge_count();
        let clique = (0..n).all(|i| (0..i).all(|j| s.has_edge(i, j)));
        let hats = (n..n + m).filter(|&x| s.degree(x) == 2).count() == m;
        rep.check(clique && hats, || format!("shape of sp({})", g6(&g)));
        if m > 0 {
            let triangle = crate::independence::count_induced_copies(&s, &Graph::complete(3)?) > 0;
            rep.check(triangle, || format!("triangle in sp({})", g6(&g)));
        }
    }
    let instances = find_acsz_instances(cfg.n(8), DEFAULT_MAX_SPLIT_VERTICES)?;
    let (data, pairs) = SplitData::build(&instances)?;
    for (inst, (a, b)) in instances.iter().zip(&pairs) {
        let tag = format!("{} {:?}", g6(&inst.graph), inst.vertices());
        rep.check(data.csf[a] == data.csf[b], || format!("csf {tag}"));
        if check_acsz_distinguishing(inst)? {
            rep.check(data.h_count[a] > data.h_count[b], || {
                format!("H count {tag}: {} vs {}", data.h_count[a], data.h_count[b])
            });
            rep.check(data.print[a] != data.print[b], || format!("fingerprint {tag}"));
        }
    }
    Ok(rep)
}

/// Classes by fingerprint and classes by truncated K-augmented series
/// coincide; with `all_distinct`, both must be singletons.
pub fn consistency_suite(cfg: SuiteConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("consistency");
    for n in 1..=cfg.n(6) {
        let graphs = generate_all(n)?.into_graphs();
        let d = cfg.d(n + 2);
        let keys: Vec<(Fingerprint, SymSeries)> = graphs
            .par_iter()
            .map(|g| Ok((ksf_fingerprint(g)?, ksf_mbar_truncated(&unit(g), d))))
            .collect::<Result<_>>()?;
        let classes_by = |f: &dyn Fn(usize) -> String| -> Vec<usize> {
            let mut first: HashMap<String, usize> = HashMap::new();
            (0..graphs.len()).map(|i| *first.entry(f(i)).or_insert(i)).collect()
        };
        let by_print = classes_by(&|i| format!("{:?}", keys[i].0));
        let by_series = classes_by(&|i| keys[i].1.to_string());
        rep.check(by_print == by_series, || format!("classes differ at n={n}, d={d}"));
        if n <= 7 {
            let print_classes = by_print.iter().enumerate().filter(|(i, c)| i == *c).count();
            let series_classes = by_series.iter().enumerate().filter(|(i, c)| i == *c).count();
            rep.check(print_classes == graphs.len(), || {
                format!("fingerprint classes {print_classes} of {} at n={n}", graphs.len())
            });
            rep.check(series_classes == graphs.len(), || {
                format!("series classes {series_classes} of {} at n={n}, d={d}", graphs.len())
            });
        }
    }
    Ok(rep)
}

fn amplify_pair(p: &PairReport) -> Result<Vec<(bool, String)>> {
    let (g1, g2) = p.graphs()?;
    let mut hs = vec![("K1", Graph::complete(1)?), ("K2", Graph::complete(2)?), ("E2", Graph::empty(2)?)];
    let mut jobs: Vec<(String, Graph, Graph)> = Vec::new();
    for (name, h) in &hs[..2] {
        jobs.push((format!("union {name}"), g1.disjoint_union(h)?, g2.disjoint_union(h)?));
        jobs.push((format!("join {name}"), g1.join(h)?, g2.join(h)?));
    }
    for (v1, v2) in find_ksf_equal_vertex_pairs(&g1, &g2)? {
        for (name, h) in &hs {
            jobs.push((
                format!("attach-except ({v1},{v2}) {name}"),
                attach_except(&g1, v1, h)?,
                attach_except(&g2, v2, h)?,
            ));
        }
    }
    hs.truncate(2);
    hs.push(("P3", Graph::path(3)?));
    for w in pendant_attachment_witnesses(&g1, &g2)? {
        for (name, h) in &hs {
            jobs.push((
                format!("attach-vertex ({},{}) {name}", w.v1, w.v2),
                attach_to_vertex(&g1, w.v1, h)?,
                attach_to_vertex(&g2, w.v2, h)?,
            ));
        }
    }
    jobs.par_iter()
        .map(|(what, a, b)| {
            let ok = ksf_fingerprint(a)? == ksf_fingerprint(b)? && !is_isomorphic(a, b);
            Ok((ok, format!("{what} on {} / {}", p.g1, p.g2)))
        })
        .collect()
}

/// Amplifying every equal-KSF pair on `n` vertices by unions, joins and
/// attachments yields nonisomorphic pairs with equal fingerprints.
pub fn amplify_suite(cfg: SuiteConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("amplify");
    for p in search_equal_ksf(cfg.n(8))? {
        rep.absorb(amplify_pair(&p)?);
    }
    Ok(rep)
}

pub fn run_suite(name: &str, cfg: SuiteConfig) -> Result<SuiteReport> {
    match name {
        "f-identity" => f_identity_suite(cfg),
        "join" => join_suite(cfg),
        "union" => union_suite(cfg),
        "clan" => clan_suite(cfg),
        "expansion" => expansion_suite(cfg),
        "attach" => attach_suite(cfg),
        "os" => os_suite(cfg),
        "split" => split_suite(cfg),
        "consistency" => consistency_suite(cfg),
        "amplify" => amplify_suite(cfg),
        other => input(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", "))),
    }
}
