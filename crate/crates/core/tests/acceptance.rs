//! End-to-end acceptance run: one PASS/FAIL line per criterion, non-zero
//! exit if any criterion fails. Time limits are part of each criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ksf_core::canon::is_isomorphic;
use ksf_core::constructions::{
    check_acsz_distinguishing, find_acsz_instances, find_os_instances, h_graphs, h_polynomial,
    os_claw_margin, os_swap_automorphism, DEFAULT_MAX_SPLIT_VERTICES,
};
use ksf_core::enumerate::{count_graphs, generate_all};
use ksf_core::independence::{independence_polynomial, independence_unique_count};
use ksf_core::search::search_equal_ksf;
use ksf_core::suites::{run_suite, SuiteConfig, SuiteReport};
use ksf_core::Result;

const MINUTE: Duration = Duration::from_secs(60);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn suite(name: &str, max_n: usize) -> Result<SuiteReport> {
    run_suite(
        name,
        SuiteConfig {
            max_n: Some(max_n),
            degree: None,
        },
    )
}

fn suites_outcome(reports: &[SuiteReport]) -> Outcome {
    let ok = reports.iter().all(|r| r.passed() && r.checks > 0);
    let detail = reports
        .iter()
        .map(|r| format!("{} {}/{}", r.name, r.checks - r.failed, r.checks))
        .collect::<Vec<_>>()
        .join(", ");
    let failures: Vec<String> = reports.iter().flat_map(|r| r.failures.iter().cloned()).collect();
    if failures.is_empty() {
        outcome(ok, detail)
    } else {
        outcome(ok, format!("{detail}; first failure: {}", failures[0]))
    }
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort_unstable();
    v
}

fn graph_counts() -> Result<Outcome> {
    let want = [1u64, 2, 4, 11, 34, 156, 1044, 12346];
    let got = (1..=8).map(count_graphs).collect::<Result<Vec<_>>>()?;
    Ok(outcome(got == want, format!("{got:?}")))
}

fn census() -> Result<Outcome> {
    let want = [1usize, 2, 4, 7, 13, 24, 53, 109];
    let got = (1..=8).map(independence_unique_count).collect::<Result<Vec<_>>>()?;
    Ok(outcome(got == want, format!("{got:?}")))
}

fn census_nine() -> Result<Outcome> {
    let got = independence_unique_count(9)?;
    Ok(outcome(got == 284, format!("n=9: {got}")))
}

fn search_and_structure() -> Result<(Outcome, Outcome)> {
    let small: Vec<usize> = (1..=7).map(|n| Ok(search_equal_ksf(n)?.len())).collect::<Result<_>>()?;
    let pairs = search_equal_ksf(8)?;
    let found = outcome(
        small.iter().all(|&c| c == 0) && pairs.len() == 4 && pairs.iter().all(|p| p.nonisomorphic),
        format!("n<=7 counts {small:?}, n=8 pairs {}", pairs.len()),
    );
    let deletions = sorted(pairs.iter().map(|p| p.min_edge_deletions).collect());
    let vertex_pairs = sorted(pairs.iter().map(|p| p.vertex_pair_count).collect());
    let structure = outcome(
        deletions == [Some(1), Some(2), Some(2), Some(2)] && vertex_pairs == [0, 2, 4, 4],
        format!("edge deletions {deletions:?}, vertex pairs {vertex_pairs:?}"),
    );
    Ok((found, structure))
}

fn h_discovery() -> Result<Outcome> {
    let p = h_polynomial();
    let direct = generate_all(7)?
        .filter(|g| independence_polynomial(g) == p)
        .count();
    let hs = h_graphs();
    let ok = hs.len() == 2 && direct == 2 && !is_isomorphic(&hs[0], &hs[1]);
    Ok(outcome(ok, format!("h_graphs {}, exhaustive {direct}", hs.len())))
}

fn os_end_to_end() -> Result<Outcome> {
    let instances = find_os_instances(7)?;
    let mut unequal = 0;
    for inst in &instances {
        if os_swap_automorphism(inst)?.is_some() {
            let (l, r) = os_claw_margin(inst)?;
            unequal += usize::from(l != r);
        }
    }
    let rep = suite("os", 7)?;
    let base = suites_outcome(std::slice::from_ref(&rep));
    // One CSF check per instance plus two per unequal margin.
    let complete = rep.checks as usize == instances.len() + 2 * unequal;
    Ok(outcome(
        base.ok && complete && unequal > 0,
        format!("{}; {} instances, {unequal} with unequal margins", base.detail, instances.len()),
    ))
}

fn acsz_end_to_end() -> Result<Outcome> {
    let instances = find_acsz_instances(8, DEFAULT_MAX_SPLIT_VERTICES)?;
    // sp(G + uv) has n + |E| + 1 vertices.
    let within = instances
        .iter()
        .all(|i| i.graph.n() + i.graph.edge_count() < DEFAULT_MAX_SPLIT_VERTICES);
    let mut distinguishing = 0;
    for inst in &instances {
        distinguishing += usize::from(check_acsz_distinguishing(inst)?);
    }
    let rep = suite("split", 8)?;
    let base = suites_outcome(std::slice::from_ref(&rep));
    Ok(outcome(
        base.ok && within && !instances.is_empty() && distinguishing > 0,
        format!("{}; {} instances, {distinguishing} distinguishing", base.detail, instances.len()),
    ))
}

struct Criterion {
    id: &'static str,
    name: &'static str,
    limit: Duration,
}

fn report(c: &Criterion, elapsed: Duration, res: Result<Outcome>) -> bool {
    let (ok, detail) = match res {
        Ok(o) => (o.ok && elapsed <= c.limit, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    let over = if elapsed > c.limit {
        format!(" over limit {:?}", c.limit)
    } else {
        String::new()
    };
    println!(
        "{} {:>3} {} [{:.2?}{over}] {detail}",
        if ok { "PASS" } else { "FAIL" },
        c.id,
        c.name,
        elapsed
    );
    ok
}

fn timed<T>(f: impl FnOnce() -> T) -> (Duration, T) {
    let start = Instant::now();
    let v = f();
    (start.elapsed(), v)
}

fn crit(id: &'static str, name: &'static str, minutes: u64) -> Criterion {
    Criterion {
        id,
        name,
        limit: MINUTE * minutes as u32,
    }
}

fn main() -> ExitCode {
    let mut ok = true;
    let mut run = |c: Criterion, f: &dyn Fn() -> Result<Outcome>| {
        let (t, res) = timed(f);
        ok &= report(&c, t, res);
    };

    run(crit("1", "graph counts n=1..8", 1), &graph_counts);
    run(crit("2", "independence-unique census n=1..8", 2), &census);

    // Criteria 3 and 4 share one search; both are charged its full time.
    let (t, res) = timed(search_and_structure);
    let (found, structure) = match res {
        Ok((a, b)) => (Ok(a), Ok(b)),
        Err(e) => (Err(e.to_string()), Err(e.to_string())),
    };
    for (c, r) in [
        (crit("3", "equal-KSF search n<=8", 10), found),
        (crit("4", "pair structure", 10), structure),
    ] {
        ok &= report(&c, t, r.map_err(ksf_core::KsfError::Io));
    }

    let mut run = |c: Criterion, f: &dyn Fn() -> Result<Outcome>| {
        let (t, res) = timed(f);
        ok &= report(&c, t, res);
    };
    run(crit("5", "fingerprint and series classes agree", 10), &|| {
        Ok(suites_outcome(&[suite("consistency", 7)?]))
    });
    run(crit("6", "vertex recursion identity n<=6", 10), &|| {
        Ok(suites_outcome(&[suite("f-identity", 6)?]))
    });
    run(crit("7", "join, union and clan multiplicativity", 10), &|| {
        Ok(suites_outcome(&[suite("join", 6)?, suite("union", 6)?, suite("clan", 4)?]))
    });
    run(crit("8", "attached-graph formula n<=4", 10), &|| {
        Ok(suites_outcome(&[suite("attach", 4)?]))
    });
    run(crit("9", "amplification of 8-vertex pairs", 15), &|| {
        Ok(suites_outcome(&[suite("amplify", 8)?]))
    });
    run(crit("10", "H1/H2 discovery", 10), &h_discovery);
    run(crit("11", "Orellana-Scott pairs n<=7", 10), &os_end_to_end);
    run(crit("12", "split-graph pairs", 10), &acsz_end_to_end);
    run(crit("2+", "census stretch n=9", 30), &census_nine);

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
