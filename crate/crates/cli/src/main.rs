//! `rootcast`: centrality scores, root finding and property sweeps on trees.
//!
//! Exit status: 0 on success, 1 when a checked property fails, 2 on usage or
//! input errors.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rootcast::edgelist;
use rootcast::prufer::{enumerate_trees, MAX_EXHAUSTIVE_N};
use rootcast::rootfind::{bench_scaling, BenchConfig};
use rootcast::verify::{cstar_no_potential_demo, Quantifier};
use rootcast::{
    find_root, find_roots_both, score_all, sweep, ConstructiveSpec, MeasureId, NumericMode, PropertyId,
    PropertyReport, SweepConfig, Tree,
};

#[derive(Parser, Debug)]
#[command(name = "rootcast", version, about = "Tree centrality, potentials and root finding")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "ROOTCAST_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Score every vertex: one `vertex<TAB>score` line per vertex.
    Centrality {
        /// e.g. closeness, decay:alpha=0.5, pagerank:alpha=0.85, abc:a=2,b=1,c=1
        #[arg(long)]
        measure: String,
        #[command(flatten)]
        input: Input,
    },
    /// Find the root(s) of a tree with Algorithm 1.
    FindRoot {
        /// closeness, eccentricity, all-subgraphs or abc:a=..,b=..,c=..
        #[arg(long)]
        potential: String,
        /// Report both roots when the root is an edge.
        #[arg(long)]
        both: bool,
        #[command(flatten)]
        mode: ModeFlags,
        #[command(flatten)]
        input: Input,
    },
    /// Sweep a property over all trees up to `--max-n` plus random trees.
    Verify {
        #[arg(long)]
        property: String,
        /// Not needed for cstar-no-potential.
        #[arg(long)]
        measure: Option<String>,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        /// Random trees appended after the exhaustive part.
        #[arg(long, default_value_t = 0)]
        random: u64,
        /// Largest random tree.
        #[arg(long, default_value_t = 12)]
        random_max_n: usize,
        /// Which roots of the tree the consistency check ranges over.
        #[arg(long, value_enum, default_value_t = QuantifierArg::Forall)]
        quantifier: QuantifierArg,
    },
    /// Print every labeled tree on `--n` vertices, blank-line separated.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Time Algorithm 1 against the baseline: TSV `n  algo1_ms  naive_ms`.
    Bench {
        /// Comma-separated tree sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        potential: String,
        #[command(flatten)]
        mode: ModeFlags,
        /// Random trees per size.
        #[arg(long, default_value_t = 5)]
        trees: usize,
        /// Largest size the baseline runs on.
        #[arg(long, default_value_t = 20_000)]
        naive_max_n: usize,
    },
    /// C* roots every tree yet admits no potential function.
    DemoCstar {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// Edge-list file, or `-` for standard input.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct ModeFlags {
    /// Exact rational arithmetic (default).
    #[arg(long)]
    exact: bool,
    /// Carry logarithms; all-subgraphs and abc only.
    #[arg(long)]
    logspace: bool,
    /// Plain floating point.
    #[arg(long)]
    float: bool,
}

impl ModeFlags {
    fn mode(&self) -> NumericMode {
        if self.logspace {
            NumericMode::LogSpace
        } else if self.float {
            NumericMode::Float
        } else {
            NumericMode::Exact
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QuantifierArg {
    Forall,
    Exists,
}

/// A failure with the flag or file it concerns.
struct Failure {
    context: String,
    message: String,
}

fn fail(context: impl Into<String>, err: impl ToString) -> Failure {
    Failure { context: context.into(), message: err.to_string() }
}

type Run<T> = std::result::Result<T, Failure>;

fn read_tree(input: &Input) -> Run<Tree> {
    let name = input.input.display().to_string();
    let mut text = String::new();
    if name == "-" {
        io::stdin().read_to_string(&mut text).map_err(|e| fail("standard input", e))?;
    } else {
        text = std::fs::read_to_string(&input.input).map_err(|e| fail(&name, e))?;
    }
    edgelist::parse(&text).map_err(|e| fail(&name, e))
}

fn parse_spec(flag: &str, name: &str, mode: NumericMode) -> Run<ConstructiveSpec> {
    let spec: ConstructiveSpec = name.parse().map_err(|e| fail(flag, e))?;
    Ok(spec.with_mode(mode))
}

fn mode_flag(mode: NumericMode) -> &'static str {
    match mode {
        NumericMode::Exact => "--exact",
        NumericMode::Float => "--float",
        NumericMode::LogSpace => "--logspace",
    }
}

/// The argument vector with every default spelled out.
fn reproduction(cli: &Cli) -> String {
    let mut line = format!("rootcast --seed {}", cli.seed);
    if let Some(j) = cli.jobs {
        write!(line, " --jobs {j}").unwrap();
    }
    match &cli.command {
        Command::Centrality { measure, input } => {
            write!(line, " centrality --measure {measure} --input {}", input.input.display())
        }
        Command::FindRoot { potential, both, mode, input } => write!(
            line,
            " find-root --potential {potential}{} {} --input {}",
            if *both { " --both" } else { "" },
            mode_flag(mode.mode()),
            input.input.display()
        ),
        Command::Verify { property, measure, max_n, random, random_max_n, quantifier } => {
            write!(line, " verify --property {property}").unwrap();
            if let Some(m) = measure {
                write!(line, " --measure {m}").unwrap();
            }
            write!(
                line,
                " --max-n {max_n} --random {random} --random-max-n {random_max_n} --quantifier {}",
                quantifier.to_possible_value().expect("value").get_name()
            )
        }
        Command::Enumerate { n } => write!(line, " enumerate --n {n}"),
        Command::Bench { sizes, potential, mode, trees, naive_max_n } => write!(
            line,
            " bench --sizes {} --potential {potential} {} --trees {trees} --naive-max-n {naive_max_n}",
            sizes.iter().map(usize::to_string).collect::<Vec<_>>().join(","),
            mode_flag(mode.mode())
        ),
        Command::DemoCstar { max_n } => write!(line, " demo-cstar --max-n {max_n}"),
    }
    .unwrap();
    line
}

fn print_report(out: &mut impl Write, report: &PropertyReport) -> io::Result<()> {
    writeln!(out, "property: {}", report.property)?;
    writeln!(out, "measure: {}", report.measure)?;
    writeln!(out, "trees checked: {}", report.trees_checked)?;
    writeln!(out, "verdict: {}", report.verdict())?;
    if report.fragile > 0 {
        writeln!(out, "fragile float comparisons: {}", report.fragile)?;
    }
    if let Some(detail) = &report.detail {
        writeln!(out, "detail: {detail}")?;
    }
    if let Some(cx) = &report.counterexample {
        let offending: Vec<String> = cx.offending.iter().map(usize::to_string).collect();
        writeln!(out, "counterexample: {} vertices, offending {}", cx.n, offending.join(" "))?;
        write!(out, "{}", cx.edges)?;
        if !cx.scores.is_empty() {
            writeln!(out, "scores: {}", cx.scores.join(" "))?;
        }
    }
    writeln!(out, "{}", report.to_json_line())
}

/// Returns whether the checked property held.
fn run(cli: &Cli, out: &mut impl Write) -> Run<bool> {
    let io_err = |e: io::Error| fail("standard output", e);
    match &cli.command {
        Command::Centrality { measure, input } => {
            let m: MeasureId = measure.parse().map_err(|e| fail("--measure", e))?;
            let tree = read_tree(input)?;
            let keys = score_all(&m, &tree).map_err(|e| fail("--measure", e))?;
            for (v, k) in keys.iter().enumerate() {
                writeln!(out, "{}\t{}", tree.label(v), k.render()).map_err(io_err)?;
            }
        }
        Command::FindRoot { potential, both, mode, input } => {
            let spec = parse_spec("--potential", potential, mode.mode())?;
            let tree = read_tree(input)?;
            let found = if *both { find_roots_both(&tree, &spec) } else { find_root(&tree, &spec) };
            let found = found.map_err(|e| fail("--potential", e))?;
            for (r, value) in found.roots.iter().zip(&found.values) {
                writeln!(out, "{}\t{}", tree.label(*r), value.render()).map_err(io_err)?;
            }
        }
        Command::Verify { property, measure, max_n, random, random_max_n, quantifier } => {
            let property: PropertyId = property.parse().map_err(|e| fail("--property", e))?;
            let config = SweepConfig {
                n_max: *max_n,
                random: *random,
                random_max_n: *random_max_n,
                seed: cli.seed,
                quantifier: match quantifier {
                    QuantifierArg::Forall => Quantifier::ForAll,
                    QuantifierArg::Exists => Quantifier::Exists,
                },
                jobs: cli.jobs,
            };
            let measure: MeasureId = match (measure, property) {
                (Some(m), _) => m.parse().map_err(|e| fail("--measure", e))?,
                (None, PropertyId::CstarNoPotential) => MeasureId::CStar,
                (None, _) => return Err(fail("--measure", "required for this property")),
            };
            let report = sweep(property, &measure, &config).map_err(|e| fail("--max-n", e))?;
            eprintln!("# wall time: {:.1} ms", report.wall_ms);
            print_report(out, &report).map_err(io_err)?;
            return Ok(report.pass);
        }
        Command::Enumerate { n } => {
            if *n == 1 {
                write!(out, "{}", edgelist::write(&Tree::single(0))).map_err(io_err)?;
                return Ok(true);
            }
            if *n == 0 || *n > MAX_EXHAUSTIVE_N {
                return Err(fail("--n", format!("must be between 1 and {MAX_EXHAUSTIVE_N}")));
            }
            for (i, tree) in enumerate_trees(*n).map_err(|e| fail("--n", e))?.enumerate() {
                if i > 0 {
                    writeln!(out).map_err(io_err)?;
                }
                write!(out, "{}", edgelist::write(&tree)).map_err(io_err)?;
            }
        }
        Command::Bench { sizes, potential, mode, trees, naive_max_n } => {
            if sizes.contains(&0) {
                return Err(fail("--sizes", "sizes must be positive"));
            }
            let spec = parse_spec("--potential", potential, mode.mode())?;
            let config = BenchConfig { trees: *trees, naive_max_n: *naive_max_n, min_sample: Duration::from_millis(20) };
            let rows = bench_scaling(sizes, &spec, cli.seed, &config).map_err(|e| fail("--potential", e))?;
            writeln!(out, "n\talgo1_ms\tnaive_ms").map_err(io_err)?;
            for row in rows {
                let naive = row.naive_ms.map_or("NA".to_string(), |ms| format!("{ms:.4}"));
                writeln!(out, "{}\t{:.4}\t{naive}", row.n, row.algo1_ms).map_err(io_err)?;
            }
        }
        Command::DemoCstar { max_n } => {
            let config = SweepConfig { n_max: *max_n, seed: cli.seed, jobs: cli.jobs, ..Default::default() };
            let report = cstar_no_potential_demo(&config).map_err(|e| fail("--max-n", e))?;
            eprintln!("# wall time: {:.1} ms", report.wall_ms);
            print_report(out, &report).map_err(io_err)?;
            return Ok(report.pass);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    eprintln!("# {}", reproduction(&cli));
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out);
    let flushed = out.flush();
    match result {
        Ok(true) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}: {}", f.context, f.message);
            ExitCode::from(2)
        }
    }
}
