use std::fs;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use ksf_core::canon::canonical_graph;
use ksf_core::constructions::{
    attach_except, attach_to_vertex, find_acsz_instances, find_os_instances, split_graph,
    write_registry, InstanceRecord, DEFAULT_MAX_SPLIT_VERTICES,
};
use ksf_core::enumerate::generate_all;
use ksf_core::graph6;
use ksf_core::independence::{count_induced_copies, independence_unique_count, ksf_fingerprint};
use ksf_core::search::{cache_fingerprints, search_equal_ksf, search_equal_ksf_cached, verify_pair};
use ksf_core::suites::{run_suite, SuiteConfig, SUITES};
use ksf_core::sym::{convert, csf_mtilde, ksf_mbar_truncated, Basis};
use ksf_core::{Graph, WeightedGraph};

#[derive(Parser)]
#[command(name = "ksf", version, about = "Kromatic symmetric function toolkit")]
struct Cli {
    /// Degree bound for truncated series; defaults to n + 2.
    #[arg(long, global = true)]
    degree: Option<usize>,

    /// Directory for fingerprint caches and instance registries.
    #[arg(long, global = true, env = "KSF_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Union,
    Join,
    AttachExcept,
    AttachVertex,
    Split,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesBasis {
    /// K-augmented basis, truncated.
    Mbar,
    /// Monomial basis, truncated.
    M,
    /// CSF in the augmented basis, exact.
    Csf,
}

#[derive(Subcommand)]
enum Command {
    /// Print one canonical graph6 line per isomorphism class.
    Gen {
        #[arg(long)]
        n: usize,
    },
    /// Print `g6<TAB>digest` for the given graphs, or cache all graphs on `n` vertices.
    Fingerprint {
        graphs: Vec<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Print every independence polynomial instead of the digest.
        #[arg(long)]
        full: bool,
    },
    /// Print a truncated series for one graph.
    Series {
        graph: String,
        #[arg(long, value_enum, default_value = "mbar")]
        basis: SeriesBasis,
    },
    /// Report all pairs of nonisomorphic graphs with equal KSF as JSON lines.
    SearchEqualKsf {
        #[arg(long)]
        n: usize,
        /// Attach independent verification flags to each report.
        #[arg(long)]
        verify: bool,
    },
    /// Count independence-unique graphs on `n` vertices.
    #[command(name = "indunique-count")]
    IndUniqueCount {
        #[arg(long)]
        n: usize,
    },
    /// Count induced copies of a pattern in each graph of a graph6 file.
    Census {
        #[arg(long)]
        pattern: String,
        /// Input file, `-` for stdin.
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Build a graph and print it as graph6.
    Construct {
        #[arg(long, value_enum)]
        op: Op,
        graphs: Vec<String>,
        /// Vertex of the first graph for the attach operations.
        #[arg(long)]
        vertex: Option<usize>,
        /// Relabel the result canonically.
        #[arg(long)]
        canonical: bool,
    },
    /// Scan for Orellana–Scott instances.
    FindOs {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Scan for split-graph instances.
    FindAcsz {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Run a verification suite; exit status 0 iff every check passes.
    Verify {
        /// Suite name, or `all`.
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
    },
}

fn parse_graph(s: &str) -> Result<Graph> {
    graph6::decode(s.trim()).with_context(|| format!("parsing graph6 {s:?}"))
}

fn read_lines(path: &Path) -> Result<Vec<String>> {
    let reader: Box<dyn BufRead> = if path == Path::new("-") {
        Box::new(io::BufReader::new(io::stdin()))
    } else {
        let f = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
        Box::new(io::BufReader::new(f))
    };
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(line.trim().to_string());
        }
    }
    Ok(out)
}

fn cache_path(cli: &Cli, name: &str) -> Result<Option<PathBuf>> {
    match &cli.cache_dir {
        None => Ok(None),
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            Ok(Some(dir.join(name)))
        }
    }
}

fn emit_records(cli: &Cli, name: &str, records: &[InstanceRecord]) -> Result<()> {
    let text = write_registry(records);
    if let Some(path) = cache_path(cli, name)? {
        fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    io::stdout().lock().write_all(text.as_bytes())?;
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match &cli.command {
        Command::Gen { n } => {
            for g in generate_all(*n)? {
                writeln!(out, "{}", graph6::encode(&g))?;
            }
        }
        Command::Fingerprint { graphs, n, full } => {
            if let Some(n) = n {
                let Some(path) = cache_path(cli, &format!("fingerprints-{n}.tsv"))? else {
                    bail!("--n needs a cache directory (--cache-dir or KSF_CACHE_DIR)");
                };
                let written = cache_fingerprints(generate_all(*n)?, &path)?;
                eprintln!("{written} entries written to {}", path.display());
            }
            for s in graphs {
                let g = canonical_graph(&parse_graph(s)?);
                let f = ksf_fingerprint(&g)?;
                if *full {
                    let polys: Vec<String> = f.polynomials().iter().map(|p| p.to_string()).collect();
                    writeln!(out, "{}\t{}", graph6::encode(&g), polys.join("; "))?;
                } else {
                    writeln!(out, "{}\t{}", graph6::encode(&g), f.digest())?;
                }
            }
        }
        Command::Series { graph, basis } => {
            let g = WeightedGraph::unit(parse_graph(graph)?);
            let d = cli.degree.unwrap_or(g.n() + 2);
            let s = match basis {
                SeriesBasis::Mbar => ksf_mbar_truncated(&g, d),
                SeriesBasis::M => convert(&ksf_mbar_truncated(&g, d), Basis::Monomial)?,
                SeriesBasis::Csf => csf_mtilde(&g),
            };
            writeln!(out, "{s}")?;
        }
        Command::SearchEqualKsf { n, verify } => {
            let reports = match cache_path(cli, &format!("fingerprints-{n}.tsv"))? {
                Some(path) => search_equal_ksf_cached(*n, &path)?,
                None => search_equal_ksf(*n)?,
            };
            let d = cli.degree.unwrap_or(n + 2);
            for r in &reports {
                let mut value = serde_json::to_value(r)?;
                if *verify {
                    let (g1, g2) = r.graphs()?;
                    value["verification"] = serde_json::to_value(verify_pair(&g1, &g2, d)?)?;
                }
                writeln!(out, "{value}")?;
            }
        }
        Command::IndUniqueCount { n } => {
            writeln!(out, "{}", independence_unique_count(*n)?)?;
        }
        Command::Census { pattern, input } => {
            let p = parse_graph(pattern)?;
            for line in read_lines(input)? {
                let g = parse_graph(&line)?;
                writeln!(out, "{line}\t{}", count_induced_copies(&g, &p))?;
            }
        }
        Command::Construct { op, graphs, vertex, canonical } => {
            let gs = graphs.iter().map(|s| parse_graph(s)).collect::<Result<Vec<_>>>()?;
            let want = if matches!(op, Op::Split) { 1 } else { 2 };
            if gs.len() != want {
                bail!("this operation takes {want} graph(s), got {}", gs.len());
            }
            let needs_vertex = matches!(op, Op::AttachExcept | Op::AttachVertex);
            let v = match (needs_vertex, vertex) {
                (true, Some(v)) => *v,
                (true, None) => bail!("--vertex is required for attach operations"),
                (false, _) => 0,
            };
            let g = match op {
                Op::Union => gs[0].disjoint_union(&gs[1])?,
                Op::Join => gs[0].join(&gs[1])?,
                Op::AttachExcept => attach_except(&gs[0], v, &gs[1])?,
                Op::AttachVertex => attach_to_vertex(&gs[0], v, &gs[1])?,
                Op::Split => split_graph(&gs[0])?,
            };
            let g = if *canonical { canonical_graph(&g) } else { g };
            writeln!(out, "{}", graph6::encode(&g))?;
        }
        Command::FindOs { max_n } => {
            let records = find_os_instances(*max_n)?
                .iter()
                .map(|i| i.record())
                .collect::<ksf_core::Result<Vec<_>>>()?;
            out.flush()?;
            emit_records(cli, &format!("os-{max_n}.jsonl"), &records)?;
        }
        Command::FindAcsz { max_n } => {
            let records = find_acsz_instances(*max_n, DEFAULT_MAX_SPLIT_VERTICES)?
                .iter()
                .map(|i| i.record())
                .collect::<ksf_core::Result<Vec<_>>>()?;
            out.flush()?;
            emit_records(cli, &format!("acsz-{max_n}.jsonl"), &records)?;
        }
        Command::Verify { suite, max_n } => {
            let cfg = SuiteConfig {
                max_n: *max_n,
                degree: cli.degree,
            };
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut ok = true;
            for name in names {
                let report = run_suite(name, cfg)?;
                ok &= report.passed();
                writeln!(out, "{report}")?;
            }
            out.flush()?;
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
