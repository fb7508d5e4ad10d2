use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use freegroup::bench::{run_experiment, Experiment, ExperimentConfig, TupleLengths, TupleSize};
use freegroup::growth::deleted_edge_graph;
use freegroup::{
    automaton_matrix, cut_vertex_growth_bound, gaa_modulus, gab_modulus, is_primitive_shpilrain,
    is_primitive_whitehead, membership_mp, membership_mpd, power_iteration, relative_primitivity, Alphabet,
    DepthPolicy, Letter, StallingsGraph, Word,
};

/// Algorithms on finitely generated subgroups of free groups.
#[derive(Parser)]
#[command(name = "freegroup", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct WordInput {
    /// Rank of the ambient free group (default: the largest generator used).
    #[arg(long)]
    rank: Option<u32>,
    /// Freely reduce input words instead of rejecting unreduced ones.
    #[arg(long)]
    reduce: bool,
    /// Extra words, one per line; blank lines and `#` lines are skipped.
    #[arg(long, value_name = "PATH")]
    words_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether W0 lies in the subgroup generated by the given words.
    Member {
        w0: String,
        #[arg(long, num_args = 0.., value_name = "WORD")]
        gens: Vec<String>,
        #[arg(long, default_value = "mpd")]
        algorithm: MemberAlgorithm,
        #[arg(long, default_value = "logn")]
        depth_policy: DepthPolicy,
        #[command(flatten)]
        input: WordInput,
    },
    /// Decide whether each word is primitive.
    Primitive {
        words: Vec<String>,
        #[arg(long, default_value = "shpilrain")]
        algorithm: PrimitiveAlgorithm,
        #[command(flatten)]
        input: WordInput,
    },
    /// Decide whether W0 lies in the subgroup and is primitive there.
    Rprim {
        w0: String,
        #[arg(long, num_args = 0.., value_name = "WORD")]
        gens: Vec<String>,
        #[arg(long, default_value = "logn")]
        depth_policy: DepthPolicy,
        #[command(flatten)]
        input: WordInput,
    },
    /// Build the Stallings graph of the subgroup generated by the words.
    Stallings {
        gens: Vec<String>,
        /// Write the graph in DOT format.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[command(flatten)]
        input: WordInput,
    },
    /// Growth moduli of the deleted-edge automata, as CSV.
    Eigen {
        #[arg(long, default_value_t = 2)]
        min_rank: u32,
        #[arg(long, default_value_t = 8)]
        max_rank: u32,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run a Monte Carlo experiment and write its CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct BenchArgs {
    experiment: Experiment,
    #[arg(long)]
    rank: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    lengths: Option<Vec<usize>>,
    /// Lengths of w0 (mpd-cost).
    #[arg(long, value_delimiter = ',')]
    m_lengths: Option<Vec<usize>>,
    /// Tail depths (core-tail).
    #[arg(long, value_delimiter = ',')]
    ells: Option<Vec<usize>>,
    /// Tuple size: `k`, `pow:θ` or `density:β`.
    #[arg(long)]
    k: Option<TupleSize>,
    /// Generator lengths: `uniform` in 1..=n, or `ball` (uniform over words of length at most n).
    #[arg(long)]
    tuple_lengths: Option<TupleLengths>,
    #[arg(long)]
    depth_policy: Option<DepthPolicy>,
    /// Add a per-trial wall-clock column.
    #[arg(long)]
    timing: bool,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MemberAlgorithm {
    Mp,
    Mpd,
}

#[derive(Clone, Copy, ValueEnum)]
enum PrimitiveAlgorithm {
    Shpilrain,
    Whitehead,
}

#[derive(Debug, PartialEq, Eq)]
enum Verdict {
    Yes,
    No,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl WordInput {
    fn parse_one(&self, s: &str) -> Result<Word> {
        let w = if self.reduce { Word::parse_reducing(s) } else { Word::parse(s) };
        w.with_context(|| format!("cannot parse word {s:?}"))
    }

    /// Parses the listed words followed by those of `--words-file`.
    fn parse_all(&self, listed: &[String]) -> Result<Vec<Word>> {
        let mut words: Vec<Word> = listed.iter().map(|s| self.parse_one(s)).collect::<Result<_>>()?;
        if let Some(path) = &self.words_file {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            for line in text.lines().map(str::trim) {
                if !line.is_empty() && !line.starts_with('#') {
                    words.push(self.parse_one(line)?);
                }
            }
        }
        Ok(words)
    }

    fn alphabet<'a>(&self, words: impl IntoIterator<Item = &'a Word>) -> Result<Alphabet> {
        let used = words.into_iter().map(Word::max_generator).max().unwrap_or(0);
        let rank = match self.rank {
            Some(r) if r < used => bail!("a word uses generator {used} but --rank is {r}"),
            Some(r) => r,
            None => used.max(1),
        };
        Ok(Alphabet::new(rank)?)
    }
}

fn show(w: &Word) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.to_text().unwrap_or_else(|| w.to_numeric())
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing to stdout"),
    }
}

fn member(
    w0: &str,
    gens: &[String],
    algorithm: MemberAlgorithm,
    policy: DepthPolicy,
    input: &WordInput,
) -> Result<Verdict> {
    let w0 = input.parse_one(w0)?;
    let gens = input.parse_all(gens)?;
    let alphabet = input.alphabet(gens.iter().chain([&w0]))?;
    let (expression, tag) = match algorithm {
        MemberAlgorithm::Mp => (membership_mp(alphabet, &w0, &gens)?, "stallings".to_string()),
        MemberAlgorithm::Mpd => {
            let report = membership_mpd(alphabet, &w0, &gens, policy)?;
            if let Some(basis) = &report.fallback_basis {
                let basis: Vec<String> = basis.iter().map(show).collect();
                eprintln!("spanning-tree basis: {}", basis.join(" "));
            }
            (report.expression, report.route.to_string())
        }
    };
    match &expression {
        Some(x) => println!("member {x} ({tag})"),
        None => println!("non-member ({tag})"),
    }
    Ok(expression.is_some().into())
}

fn primitive(words: &[String], algorithm: PrimitiveAlgorithm, input: &WordInput) -> Result<Verdict> {
    let words = input.parse_all(words)?;
    if words.is_empty() {
        bail!("no word given");
    }
    let alphabet = input.alphabet(&words)?;
    let mut all = true;
    for w in &words {
        let (verdict, tag) = match algorithm {
            PrimitiveAlgorithm::Shpilrain => {
                let report = is_primitive_shpilrain(alphabet, w)?;
                (report.verdict, report.route.to_string())
            }
            PrimitiveAlgorithm::Whitehead => (is_primitive_whitehead(alphabet, w)?, "whitehead".to_string()),
        };
        let label = if verdict { "primitive" } else { "not primitive" };
        if words.len() == 1 {
            println!("{label} ({tag})");
        } else {
            println!("{} {label} ({tag})", show(w));
        }
        all &= verdict;
    }
    Ok(all.into())
}

fn rprim(w0: &str, gens: &[String], policy: DepthPolicy, input: &WordInput) -> Result<Verdict> {
    let w0 = input.parse_one(w0)?;
    let gens = input.parse_all(gens)?;
    let alphabet = input.alphabet(gens.iter().chain([&w0]))?;
    let report = relative_primitivity(alphabet, &w0, &gens, policy)?;
    let route = report.membership.route;
    match (report.expression(), report.primitive) {
        (Some(x), Some(p)) => {
            let label = if p { "primitive" } else { "not primitive" };
            println!("member {x} {label} in rank {} ({route})", report.basis_rank);
        }
        _ => println!("non-member ({route})"),
    }
    Ok(report.member().into())
}

fn stallings(gens: &[String], dot: Option<&Path>, input: &WordInput) -> Result<()> {
    let gens = input.parse_all(gens)?;
    let alphabet = input.alphabet(&gens)?;
    let g = StallingsGraph::build(alphabet, &gens)?;
    let index = g.finite_index().map_or("∞".to_string(), |i| i.to_string());
    println!("V={} E={} rank={} index={index}", g.vertex_count(), g.edge_count(), g.rank());
    if let Some(path) = dot {
        fs::write(path, g.to_dot()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn eigen(min_rank: u32, max_rank: u32, tol: f64, out: Option<&Path>) -> Result<()> {
    if min_rank < 2 || max_rank < min_rank {
        bail!("need 2 <= min-rank <= max-rank");
    }
    let mut csv = String::from(
        "# deleted-edge automata of the complete Whitehead graph\nr,gaa_closed,gaa_power,gab_closed,gab_power,bound\n",
    );
    let a = Letter::gen(1);
    for r in min_rank..=max_rank {
        let alphabet = Alphabet::new(r)?;
        let gaa = power_iteration::<f64>(&automaton_matrix(&deleted_edge_graph(alphabet, a, a.inverse())), tol)?;
        let gab = power_iteration::<f64>(&automaton_matrix(&deleted_edge_graph(alphabet, a, Letter::gen(2))), tol)?;
        csv.push_str(&format!(
            "{r},{},{},{},{},{}\n",
            gaa_modulus::<f64>(r),
            gaa.value,
            gab_modulus::<f64>(r),
            gab.value,
            cut_vertex_growth_bound::<f64>(r)
        ));
    }
    write_output(out, &csv)
}

fn bench(args: &BenchArgs) -> Result<()> {
    let mut config = ExperimentConfig::new(args.experiment);
    if let Some(r) = args.rank {
        config.rank = r;
    }
    if let Some(s) = args.seed {
        config.seed = s;
    }
    if let Some(s) = args.samples {
        config.samples = s;
    }
    if let Some(l) = &args.lengths {
        config.lengths = l.clone();
    }
    if let Some(m) = &args.m_lengths {
        config.m_lengths = m.clone();
    }
    if let Some(e) = &args.ells {
        config.ells = e.clone();
    }
    if let Some(k) = args.k {
        config.k = k;
    }
    if let Some(t) = args.tuple_lengths {
        config.tuple_lengths = t;
    }
    if let Some(p) = args.depth_policy {
        config.depth_policy = p;
    }
    config.timing = args.timing;
    let table = run_experiment(&config)?;
    write_output(args.out.as_deref(), &table.to_csv())
}

fn run(cli: Cli) -> Result<Verdict> {
    match cli.command {
        Command::Member { w0, gens, algorithm, depth_policy, input } => {
            member(&w0, &gens, algorithm, depth_policy, &input)
        }
        Command::Primitive { words, algorithm, input } => primitive(&words, algorithm, &input),
        Command::Rprim { w0, gens, depth_policy, input } => rprim(&w0, &gens, depth_policy, &input),
        Command::Stallings { gens, dot, input } => stallings(&gens, dot.as_deref(), &input).map(|_| Verdict::Yes),
        Command::Eigen { min_rank, max_rank, tol, out } => {
            eigen(min_rank, max_rank, tol, out.as_deref()).map(|_| Verdict::Yes)
        }
        Command::Bench(args) => bench(&args).map(|_| Verdict::Yes),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
