use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pcarr::canon::CanonicalCode;
use pcarr::classifier::{classify, tally};
use pcarr::enumerate::{enumerate_class_with, great_seed, ArrClass, Census, EnumError, EnumOptions};
use pcarr::fixtures::{fixtures, shipped_certificates, Fixture};
use pcarr::flips::{flip_graph, FlipBudget, FlipError, Moves};
use pcarr::pipeline::{realize_codes, run, PipelineError, PipelineOptions};
use pcarr::realizer::{Certificate, RealizationBudget};
use pcarr::store::{self, append_certs, format_arrs, format_records, read_certs, read_codes, ArrsEntry, StoreError};

#[derive(Parser)]
#[command(name = "pcarr", version, about = "Arrangements of pseudocircles: enumeration, realization, classification")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for the pseudo-random search.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphClass {
    Connected,
    Intersecting,
    IntersectingDigonfree,
}

#[derive(Clone, Copy, ValueEnum)]
enum MoveSet {
    T,
    Td,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate a class of arrangements.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        class: ArrClass,
        #[arg(long)]
        long_run: bool,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        stats: bool,
    },
    /// Build a flip graph by breadth-first closure.
    Flipgraph {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        class: GraphClass,
        #[arg(long, value_enum, default_value = "t")]
        moves: MoveSet,
        #[arg(long)]
        check_connected: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 5_000_000)]
        max_nodes: usize,
    },
    /// Search circle certificates for target codes.
    Realize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        certs: PathBuf,
        #[arg(long, default_value_t = 60.0)]
        budget_secs: f64,
        #[arg(long, default_value_t = 50)]
        k: i64,
        #[arg(long, default_value_t = 64)]
        scale: i64,
        /// Ignore the certificates shipped with the library.
        #[arg(long)]
        fresh: bool,
    },
    /// Re-verify a certificate file exactly.
    Verify {
        #[arg(long)]
        certs: PathBuf,
    },
    /// Classify codes as realized, non-circularizable or open.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        certs: PathBuf,
        /// Named non-circularizable codes (default: the shipped fixtures).
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Class counts of an arrangement file.
    Stats {
        #[arg(long)]
        db: PathBuf,
    },
    /// Draw a certificate as SVG.
    ExportSvg {
        #[arg(long)]
        certs: PathBuf,
        /// Code to draw (default: the first certificate).
        #[arg(long)]
        code: Option<CanonicalCode>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Enumerate, realize and classify.
    Pipeline {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        class: ArrClass,
        #[arg(long, default_value_t = 600.0)]
        budget_secs: f64,
        #[arg(long)]
        certs: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        long_run: bool,
        /// Ignore the certificates shipped with the library.
        #[arg(long)]
        fresh: bool,
    },
}

/// Failure classes mapped to exit codes.
enum Failure {
    Contract(String),
    Budget(String),
}

impl From<StoreError> for Failure {
    fn from(e: StoreError) -> Self {
        Failure::Contract(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Contract(e.to_string())
    }
}

impl From<EnumError> for Failure {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Contract(e.to_string()),
        }
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Enumerate(e) => e.into(),
            other => Failure::Contract(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().expect("thread pool");
    }
    match execute(cli.cmd, cli.seed) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Contract(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("budget exceeded: {msg}");
            ExitCode::from(2)
        }
    }
}

fn write_codes(path: &PathBuf, codes: &[CanonicalCode]) -> Result<(), Failure> {
    let entries: Vec<ArrsEntry> = codes.iter().cloned().map(ArrsEntry::new).collect();
    fs::write(path, format_arrs(&entries))?;
    Ok(())
}

fn print_census(by_n: &BTreeMap<usize, Census>) {
    let ns: Vec<usize> = by_n.keys().copied().collect();
    print!("{:<26}", "class");
    for n in &ns {
        print!("{:>12}", format!("n={n}"));
    }
    println!();
    for row in 0..6 {
        let name = Census::default().rows()[row].0;
        print!("{name:<26}");
        for n in &ns {
            print!("{:>12}", by_n[n].rows()[row].1);
        }
        println!();
    }
}

fn load_verified(path: &PathBuf) -> Result<Vec<Certificate>, Failure> {
    let certs = read_certs(path)?;
    let (good, bad): (Vec<_>, Vec<_>) = certs.into_iter().partition(|c| c.verify().is_ok());
    if !bad.is_empty() {
        eprintln!("warning: ignoring {} cached certificates that do not verify", bad.len());
    }
    Ok(good)
}

fn execute(cmd: Cmd, seed: u64) -> Result<(), Failure> {
    match cmd {
        Cmd::Enumerate { n, class, long_run, out, stats } => {
            let codes = enumerate_class_with(n, class, EnumOptions { long_run, ..Default::default() })?;
            write_codes(&out, &codes)?;
            println!("{} arrangements ({class}, n={n}) written to {}", codes.len(), out.display());
            if stats {
                print_census(&BTreeMap::from([(n, Census::of_codes(&codes))]));
            }
        }
        Cmd::Flipgraph { n, class, moves, check_connected, out, max_nodes } => {
            let moves = match moves {
                MoveSet::T => Moves::Triangle,
                MoveSet::Td => Moves::TriangleDigon,
            };
            let budget = FlipBudget { max_nodes, max_time: None };
            let seed_arr = great_seed(n);
            let graph = match class {
                GraphClass::Connected => flip_graph(&[seed_arr], moves, |_| true, true, budget),
                GraphClass::Intersecting => flip_graph(&[seed_arr], moves, |a| a.flags().intersecting, true, budget),
                GraphClass::IntersectingDigonfree => {
                    flip_graph(&[seed_arr], moves, |a| a.flags().intersecting && a.flags().digon_free, true, budget)
                }
            }
            .map_err(|e| match e {
                FlipError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
                other => Failure::Contract(other.to_string()),
            })?;
            println!("nodes {}", graph.len());
            let mut edges: Vec<(u32, u32)> = graph.edges.clone();
            edges.sort_unstable();
            edges.dedup();
            println!("edges {}", edges.len());
            if check_connected {
                println!("connected {}", graph.is_connected());
            }
            if let Some(path) = out {
                let mut lines: Vec<String> = edges
                    .iter()
                    .map(|&(u, v)| {
                        let (a, b) = (&graph.nodes[u as usize], &graph.nodes[v as usize]);
                        let (a, b) = if a <= b { (a, b) } else { (b, a) };
                        format!("{a}\t{b}")
                    })
                    .collect();
                lines.sort_unstable();
                fs::write(path, lines.join("\n") + "\n")?;
            }
        }
        Cmd::Realize { input, certs, budget_secs, k, scale, fresh } => {
            let targets = read_codes(&input)?;
            let mut cache = load_verified(&certs)?;
            if !fresh {
                cache.extend(shipped_certificates());
            }
            let budget = RealizationBudget { max_seconds: budget_secs, k, s: scale, ..Default::default() };
            let (certified, new_certs, _) = realize_codes(&targets, &cache, &budget, seed);
            append_certs(&certs, &new_certs)?;
            let mut sorted = targets.clone();
            sorted.sort_unstable();
            sorted.dedup();
            let mut open = 0;
            for code in &sorted {
                let status = if certified.contains_key(code) { "CERTIFIED" } else { "OPEN" };
                open += (status == "OPEN") as usize;
                println!("{code}\t{status}");
            }
            eprintln!("{} certified, {open} open, {} new", sorted.len() - open, new_certs.len());
            if open > 0 {
                return Err(Failure::Budget(format!("{open} targets left open")));
            }
        }
        Cmd::Verify { certs } => {
            let all = read_certs(&certs)?;
            let mut bad = 0;
            for (i, c) in all.iter().enumerate() {
                if let Err(e) = c.verify() {
                    bad += 1;
                    println!("certificate {}: {e}", i + 1);
                }
            }
            println!("{} certificates, {bad} failed", all.len());
            if bad > 0 {
                return Err(Failure::Contract(format!("{bad} certificates failed verification")));
            }
        }
        Cmd::Classify { input, certs, fixtures: fixture_path, out } => {
            let codes = read_codes(&input)?;
            let cache: HashMap<CanonicalCode, Certificate> =
                read_certs(&certs)?.into_iter().map(|c| (c.code.clone(), c)).collect();
            let named = match fixture_path {
                Some(p) => load_fixtures(&p)?,
                None => fixtures().to_vec(),
            };
            let records = classify(&codes, &cache, &named).map_err(|e| Failure::Contract(e.to_string()))?;
            fs::write(&out, format_records(&records))?;
            let [r, nc, o] = tally(&records);
            println!("REALIZED {r}\nNONCIRC {nc}\nOPEN {o}");
        }
        Cmd::Stats { db } => {
            let codes = read_codes(&db)?;
            let mut by_n: BTreeMap<usize, Census> = BTreeMap::new();
            for code in &codes {
                let arr = code.to_arrangement().map_err(|e| Failure::Contract(format!("{code}: {e}")))?;
                by_n.entry(arr.n()).or_default().add(&arr);
            }
            if by_n.is_empty() {
                by_n.insert(0, Census::default());
            }
            print_census(&by_n);
        }
        Cmd::ExportSvg { certs, code, out } => {
            let all = read_certs(&certs)?;
            let cert = match code {
                Some(c) => all.into_iter().find(|x| x.code == c),
                None => all.into_iter().next(),
            }
            .ok_or_else(|| Failure::Contract("no matching certificate".into()))?;
            fs::write(&out, store::svg(&cert)?)?;
        }
        Cmd::Pipeline { n, class, budget_secs, certs, out, long_run, fresh } => {
            let mut cache = match &certs {
                Some(p) => load_verified(p)?,
                None => Vec::new(),
            };
            if !fresh {
                cache.extend(shipped_certificates());
            }
            let opts = PipelineOptions {
                budget: RealizationBudget { max_seconds: budget_secs, ..Default::default() },
                seed,
                long_run,
                cache,
                ..Default::default()
            };
            let output = run(n, class, &opts)?;
            if let Some(p) = &certs {
                append_certs(p, &output.new_certs)?;
            }
            if let Some(p) = &out {
                fs::write(p, format_records(&output.records))?;
            }
            let [r, nc, o] = tally(&output.records);
            println!("{class} n={n}: {} arrangements", output.records.len());
            println!("REALIZED {r}\nNONCIRC {nc}\nOPEN {o}");
            if o > 0 {
                return Err(Failure::Budget(format!("{o} arrangements left open")));
            }
        }
    }
    Ok(())
}

fn load_fixtures(path: &PathBuf) -> Result<Vec<Fixture>, Failure> {
    let entries = store::parse_arrs(&fs::read_to_string(path)?)?;
    let mut seen = HashSet::new();
    Ok(entries
        .into_iter()
        .enumerate()
        .map(|(i, e)| Fixture {
            name: e.prop("name").map(str::to_string).unwrap_or_else(|| format!("fixture{}", i + 1)),
            symmetry: e.prop("sym").and_then(|s| s.parse().ok()).unwrap_or(0),
            paper_proof: e.prop("proof") != Some("theorem"),
            code: e.code,
        })
        .filter(|f| seen.insert(f.code.clone()))
        .collect())
}
