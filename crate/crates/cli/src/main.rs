use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use sdc72::analysis::{certify, Analysis};
use sdc72::construct::{scan_family, BlockSeed, GeneratorFamily};
use sdc72::fixtures::{self, Table1Row};
use sdc72::neighbour::chain;
use sdc72::search::{run, Registry, SearchConfig};
use sdc72::{
    intersection_dim, BitMatrix, BitVector, CodeRecord, CodeSource, CodeType, EnumeratorFamily, LinearCode, MinDistance,
    Provenance,
};

#[derive(Parser)]
#[command(name = "sdc72", version, about = "Self-dual [72,36,12] codes from group matrix rings")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "SDC72_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build [I | tau6(v)] from a family and a 9-digit hex seed and analyse it.
    Construct {
        family: GeneratorFamily,
        seed: String,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Analyse a code given as G<i>:<seed>, mat:<cols>:<hex rows>, or a file of 0/1 rows.
    Analyze {
        code: String,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Apply one or more neighbour steps (x as hex) to a code.
    Neighbour {
        code: String,
        #[arg(required = true)]
        xs: Vec<String>,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Run the population search from an initial code.
    Search(SearchArgs),
    /// Rebuild the six listed generator codes and check their parameters.
    Table1 {
        /// Alternative seed table (family,seed,gamma,beta,aut lines).
        #[arg(long)]
        fixture: Option<PathBuf>,
        /// Window radius.
        #[arg(long, default_value_t = 8)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify logged records against a baseline of known parameters.
    Registry {
        #[arg(long)]
        baseline: Option<PathBuf>,
        /// Record logs to classify.
        logs: Vec<PathBuf>,
        /// Write the merged key list here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample random seeds of one family and log those giving d = 12.
    Scan {
        family: GeneratorFamily,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ReportArgs {
    /// Window radius (default: min(8, k)).
    #[arg(long)]
    t: Option<usize>,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Initial code (same forms as `analyze`).
    #[arg(long)]
    initial: String,
    /// Flat `key = value` config file; flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Known keys (type,family,gamma,beta); defaults to the embedded lists.
    #[arg(long)]
    baseline: Option<PathBuf>,
    /// Record log destination (default: standard output only gets the summary).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Append to the log instead of truncating it.
    #[arg(long)]
    append: bool,
    /// Master RNG seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    population: Option<usize>,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    half_zero: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

/// `Ok(false)` means the command ran but a check failed.
fn dispatch(command: Command) -> Result<bool> {
    match command {
        Command::Construct { family, seed, report } => {
            let seed = BlockSeed::from_hex(&seed, family.block_kind()).context("malformed seed")?;
            let code = sdc72::build_generator(family, &seed)?;
            emit_analysis(&code, &report, &[])?;
        }
        Command::Analyze { code, report } => {
            let code = load_code(&code)?;
            emit_analysis(&code, &report, &[])?;
        }
        Command::Neighbour { code, xs, report } => {
            let start = load_code(&code)?;
            let xs = xs
                .iter()
                .map(|h| BitVector::from_hex(start.length(), h).with_context(|| format!("bad x {h:?}")))
                .collect::<Result<Vec<_>>>()?;
            let steps = chain(&start, &xs)?;
            let last = steps.last().expect("at least one x");
            let parent = if steps.len() > 1 { &steps[steps.len() - 2].child } else { &start };
            let extra = vec![
                format!("depth={}", last.depth),
                format!("parent={}", last.parent_fingerprint),
                format!("intersection_dim={}", intersection_dim(parent, &last.child)?),
            ];
            emit_analysis(&last.child, &report, &extra)?;
        }
        Command::Search(args) => return cmd_search(args),
        Command::Table1 { fixture, t, out } => return cmd_table1(fixture.as_deref(), t, out.as_deref()),
        Command::Registry { baseline, logs, out } => cmd_registry(baseline.as_deref(), &logs, out.as_deref())?,
        Command::Scan {
            family,
            samples,
            seed,
            out,
        } => {
            let recs = scan_family(family, samples, seed);
            let mut text = String::new();
            for r in &recs {
                text.push_str(&format!("{r}\n"));
            }
            match out {
                Some(p) => fs::write(&p, &text).with_context(|| format!("writing {}", p.display()))?,
                None => print!("{text}"),
            }
            eprintln!("{} of {samples} seeds give d = 12", recs.len());
        }
    }
    Ok(true)
}

/// `G<i>:<seed>`, `mat:<cols>:<rows>`, or a path to a file of 0/1 rows.
fn load_code(spec: &str) -> Result<LinearCode> {
    Ok(load_source(spec)?.build()?)
}

fn load_source(spec: &str) -> Result<CodeSource> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        let m = BitMatrix::from_binary_rows(&text).with_context(|| format!("parsing {spec}"))?;
        return Ok(CodeSource::Matrix(m));
    }
    spec.parse().with_context(|| format!("bad code spec {spec:?}"))
}

fn summary_line(a: &Analysis) -> String {
    let Some(cert) = &a.certificate else {
        return "not self-dual".into();
    };
    let mut s = format!("self-dual, d={}, Type {}", fmt_distance(cert.min_distance), cert.code_type);
    if let Some(p) = cert.params.as_ref().ok().filter(|p| p.family != EnumeratorFamily::NotLength72) {
        match p.code_type {
            CodeType::TypeI => s.push_str(&format!(", {}, gamma={}, beta={}", p.family, p.gamma, p.beta)),
            CodeType::TypeII => s.push_str(&format!(", {}, alpha={}", p.family, p.alpha)),
        }
    }
    s
}

fn emit_analysis(code: &LinearCode, report: &ReportArgs, extra: &[String]) -> Result<()> {
    if let Some(t) = report.t {
        if t > code.dimension() {
            bail!("window radius {t} exceeds dimension {}", code.dimension());
        }
    }
    let a = Analysis::new(code, report.t)?;
    let mut text = format!("{}\n{a}", summary_line(&a));
    for line in extra {
        text.push_str(line);
        text.push('\n');
    }
    print!("{text}");
    if let Some(path) = &report.out {
        fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn load_registry(baseline: Option<&Path>) -> Result<Registry> {
    match baseline {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(Registry::from_baseline_str(&text)?)
        }
        None => Ok(fixtures::baseline_registry()),
    }
}

fn cmd_search(args: SearchArgs) -> Result<bool> {
    let mut config = SearchConfig::default();
    if let Some(p) = &args.config {
        let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        config.apply_str(&text)?;
    }
    if let Some(s) = args.seed {
        config.master_seed = s;
    }
    if let Some(v) = args.population {
        config.population_size = v;
    }
    if let Some(v) = args.iterations {
        config.iterations = v;
    }
    if let Some(v) = args.runs {
        config.runs = v;
    }
    if let Some(f) = &args.family {
        config.set("family_filter", f)?;
    }
    if args.half_zero {
        config.half_zero = true;
    }
    let mut registry = load_registry(args.baseline.as_deref())?;
    let start = Provenance::origin(load_source(&args.initial)?);

    let mut sink: Box<dyn Write> = match &args.out {
        Some(p) => {
            let file = if args.append {
                OpenOptions::new().create(true).append(true).open(p)
            } else {
                File::create(p)
            }
            .with_context(|| format!("opening {}", p.display()))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(std::io::sink()),
    };
    let mut io_error = None;
    let outcome = run(&config, &start, &mut registry, &mut |rec| {
        if io_error.is_none() {
            if let Err(e) = writeln!(sink, "{rec}").and_then(|_| sink.flush()) {
                io_error = Some(e);
            }
        }
    })?;
    if let Some(e) = io_error {
        return Err(e).context("writing record log");
    }
    sink.flush()?;

    let new = outcome.records.iter().filter(|r| r.is_new).count();
    println!("records={} new_records={new}", outcome.records.len());
    let per_gamma = registry.new_per_gamma();
    let new_keys: usize = per_gamma.values().sum();
    println!("{new_keys} new");
    for (gamma, count) in per_gamma {
        println!("gamma={gamma} new_keys={count}");
    }
    for r in &outcome.rounds {
        match r.key {
            Some((g, b)) => println!("round={} saved={} replaced={} gamma={g} beta={b}", r.run, r.saved, r.replaced),
            None => println!("round={} saved={} replaced={}", r.run, r.saved, r.replaced),
        }
    }
    Ok(true)
}

fn cmd_table1(fixture: Option<&Path>, t: usize, out: Option<&Path>) -> Result<bool> {
    let rows: Vec<Table1Row> = match fixture {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            fixtures::parse_table1(&text)?
        }
        None => fixtures::table1(),
    };
    let mut report = String::new();
    let mut passed = 0;
    for row in &rows {
        let code = sdc72::build_generator(row.family, &row.seed)?;
        let mut line = format!("{} seed={} expect gamma={} beta={}", row.family, row.seed.to_hex(), row.gamma, row.beta);
        let ok = if !code.is_self_dual() {
            line.push_str(" got not-self-dual");
            false
        } else {
            let cert = certify(&code, t)?;
            let a = |w: usize| if w <= cert.window.max_weight() { cert.window.count(w).to_string() } else { "-".into() };
            line.push_str(&format!(" A12={} A14={} A16={}", a(12), a(14), a(16)));
            match &cert.params {
                Ok(p) => {
                    line.push_str(&format!(
                        " got d={} type={} family={} gamma={} beta={}",
                        fmt_distance(cert.min_distance), p.code_type, p.family, p.gamma, p.beta
                    ));
                    cert.min_distance == MinDistance::Exact(12)
                        && p.code_type == CodeType::TypeI
                        && (p.gamma, p.beta) == (row.gamma, row.beta)
                }
                Err(e) => {
                    line.push_str(&format!(" got d={} error={e}", fmt_distance(cert.min_distance)));
                    false
                }
            }
        };
        passed += usize::from(ok);
        line.push_str(if ok { " PASS\n" } else { " FAIL\n" });
        report.push_str(&line);
    }
    report.push_str(&format!("{passed}/{} pass\n", rows.len()));
    print!("{report}");
    if let Some(p) = out {
        fs::write(p, &report).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(passed == rows.len())
}

fn cmd_registry(baseline: Option<&Path>, logs: &[PathBuf], out: Option<&Path>) -> Result<()> {
    let mut registry = load_registry(baseline)?;
    println!("baseline_keys={}", registry.baseline_len());
    for log in logs {
        let text = fs::read_to_string(log).with_context(|| format!("reading {}", log.display()))?;
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let rec: CodeRecord = line
                .parse()
                .with_context(|| format!("{}:{}", log.display(), i + 1))?;
            let key = rec.key();
            let status = if registry.in_baseline(&key) { "known" } else { "new" };
            registry.insert_found(key);
            println!("{key} {status}");
        }
    }
    let per_gamma = registry.new_per_gamma();
    println!("{} new", per_gamma.values().sum::<usize>());
    for (gamma, count) in per_gamma {
        println!("gamma={gamma} new_keys={count}");
    }
    if let Some(p) = out {
        fs::write(p, registry.to_csv()).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn fmt_distance(d: MinDistance) -> String {
    match d {
        MinDistance::Exact(d) => d.to_string(),
        MinDistance::Above(b) => format!(">{b}"),
    }
}
