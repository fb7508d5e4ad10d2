//! Monte Carlo experiments over uniform random words and tuples.
//!
//! Every trial draws from its own generator, seeded by the master seed and
//! switched to the stream `(row << 32) | trial`, so a row is reproducible on
//! its own and aggregates do not depend on the order trials run in. All
//! aggregates are computed from exact integer counts.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ctp::{check_ctp, ctp_failure_probability_bound, fast_certificate, walk_certificate, DepthPolicy};
use crate::error::{Error, Result};
use crate::growth::{
    automaton_matrix, cut_vertex_growth_bound, cut_vertex_modulus, deleted_edge_graph, gaa_modulus, gab_modulus,
    MAX_ENUMERATION_RANK,
};
use crate::primitivity::{is_primitive_shpilrain, whitehead_graph, PrimitivityRoute, WhiteheadGraph};
use crate::words::{cyclic_core_bounds, probe_proper_prefix, sample_uniform_reduced, Alphabet, ReducedLetters, Word};

/// Generator for trial `trial` of row `row`.
pub fn trial_rng(seed: u64, row: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((row as u64) << 32) | trial as u64);
    rng
}

/// How generator lengths are drawn for a tuple with maximal length `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TupleLengths {
    /// Length uniform in `1..=n`, then a uniform reduced word of that length.
    #[default]
    Uniform,
    /// Uniform over all reduced words of length at most `n`.
    Ball,
}

impl fmt::Display for TupleLengths {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TupleLengths::Uniform => "uniform",
            TupleLengths::Ball => "ball",
        })
    }
}

impl FromStr for TupleLengths {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(TupleLengths::Uniform),
            "ball" => Ok(TupleLengths::Ball),
            _ => Err(Error::Config(format!("tuple lengths {s:?}: expected uniform or ball"))),
        }
    }
}

/// Draws word lengths for one value of `n`.
#[derive(Debug, Clone)]
pub struct LengthSampler {
    n: usize,
    /// Weights of `n - j` for `j = 0, 1, ...`, truncated once negligible.
    ball: Option<WeightedIndex<f64>>,
}

impl LengthSampler {
    pub fn new(lengths: TupleLengths, r: u32, n: usize) -> Self {
        let ball = (lengths == TupleLengths::Ball).then(|| {
            let q = 2.0 * r as f64 - 1.0;
            let cut = n.min((64.0 / q.log2()).ceil() as usize + 1);
            let weights = (0..=cut).map(|j| {
                if j == n {
                    // the empty word against 2r(2r-1)^(n-1) words of length n
                    q.powi(-(n as i32) + 1) / (2.0 * r as f64)
                } else {
                    q.powi(-(j as i32))
                }
            });
            WeightedIndex::new(weights).expect("positive weights")
        });
        Self { n, ball }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        match &self.ball {
            None => rng.random_range(1..=self.n),
            Some(w) => self.n - w.sample(rng),
        }
    }
}

/// Tuple of `k` words with lengths drawn by `lengths`, each uniform among
/// reduced words of its length.
pub fn sample_tuple<R: Rng + ?Sized>(alphabet: Alphabet, k: usize, lengths: &LengthSampler, rng: &mut R) -> Vec<Word> {
    (0..k)
        .map(|_| {
            let len = lengths.sample(rng);
            sample_uniform_reduced(alphabet, len, rng)
        })
        .collect()
}

/// Largest tuple an experiment will draw.
pub const MAX_TUPLE_SIZE: usize = 1 << 20;

/// Tuple size as a function of the maximal length `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TupleSize {
    Fixed(usize),
    /// `⌈n^θ⌉`.
    Pow(f64),
    /// `⌈(2r-1)^(βn)⌉`.
    Density(f64),
}

impl TupleSize {
    pub fn eval(&self, n: usize, r: u32) -> Result<usize> {
        let raw = match *self {
            TupleSize::Fixed(k) => k as f64,
            TupleSize::Pow(t) => (n as f64).powf(t),
            TupleSize::Density(b) => (2.0 * r as f64 - 1.0).powf(b * n as f64),
        };
        let k = (raw - 1e-9 * raw.abs().max(1.0)).ceil();
        if !(1.0..=MAX_TUPLE_SIZE as f64).contains(&k) {
            return Err(Error::Config(format!("tuple size {self} at n={n} is {raw}, outside 1..={MAX_TUPLE_SIZE}")));
        }
        Ok(k as usize)
    }
}

impl fmt::Display for TupleSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TupleSize::Fixed(k) => write!(f, "{k}"),
            TupleSize::Pow(t) => write!(f, "pow:{t}"),
            TupleSize::Density(b) => write!(f, "density:{b}"),
        }
    }
}

impl FromStr for TupleSize {
    type Err = Error;

    /// `k`, `pow:θ` or `density:β`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("tuple size {s:?}: expected k, pow:θ or density:β"));
        let real = |a: &str| a.parse::<f64>().ok().filter(|v| v.is_finite() && *v > 0.0).ok_or_else(bad);
        match s.split_once(':') {
            None => s.parse().ok().filter(|&k| k > 0).map(TupleSize::Fixed).ok_or_else(bad),
            Some(("pow", a)) => Ok(TupleSize::Pow(real(a)?)),
            Some(("density", a)) => Ok(TupleSize::Density(real(a)?)),
            Some(_) => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Experiment {
    /// Letter comparisons of the proper-prefix test on independent words.
    PppCost,
    /// Tail of the cyclic-core length.
    CoreTail,
    /// Rate at which random tuples miss the `d(n)`-ctp.
    CtpFailure,
    /// Letters of `w0` read by the fast membership walk.
    MpdCost,
    /// Edges inserted by Shpilrain's test before it stops.
    ShpilrainCost,
    /// Rate at which `W'(u)` is not connected without a cut vertex.
    CutVertexDecay,
}

impl Experiment {
    pub const ALL: [Experiment; 6] = [
        Experiment::PppCost,
        Experiment::CoreTail,
        Experiment::CtpFailure,
        Experiment::MpdCost,
        Experiment::ShpilrainCost,
        Experiment::CutVertexDecay,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Experiment::PppCost => "ppp-cost",
            Experiment::CoreTail => "core-tail",
            Experiment::CtpFailure => "ctp-failure",
            Experiment::MpdCost => "mpd-cost",
            Experiment::ShpilrainCost => "shpilrain-cost",
            Experiment::CutVertexDecay => "cut-vertex-decay",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown experiment {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub rank: u32,
    /// Word lengths, or maximal generator lengths for tuple experiments.
    pub lengths: Vec<usize>,
    /// Lengths of `w0` (mpd-cost).
    pub m_lengths: Vec<usize>,
    pub k: TupleSize,
    pub tuple_lengths: TupleLengths,
    pub depth_policy: DepthPolicy,
    /// Tail depths `ℓ` (core-tail).
    pub ells: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    /// Add a wall-clock column; the output is then no longer reproducible.
    pub timing: bool,
}

impl ExperimentConfig {
    /// Defaults matching the experiment's usual scale.
    pub fn new(experiment: Experiment) -> Self {
        let lengths = match experiment {
            Experiment::PppCost => vec![100, 1000, 10_000],
            Experiment::CoreTail => vec![100],
            Experiment::CtpFailure => vec![50, 100, 200],
            Experiment::MpdCost => vec![64],
            Experiment::ShpilrainCost => vec![1000, 10_000, 100_000],
            Experiment::CutVertexDecay => vec![10, 20, 30, 40, 50, 60],
        };
        Self {
            experiment,
            rank: 2,
            lengths,
            m_lengths: vec![1000, 10_000],
            k: TupleSize::Fixed(2),
            tuple_lengths: TupleLengths::Uniform,
            depth_policy: DepthPolicy::LogN,
            ells: (1..=5).collect(),
            samples: 10_000,
            seed: 1,
            timing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if self.samples == 0 {
            return bad("samples must be at least 1");
        }
        if self.rank < 2 {
            return bad("experiments need rank at least 2");
        }
        if self.lengths.is_empty() || self.lengths.contains(&0) {
            return bad("lengths must be a nonempty list of positive integers");
        }
        if self.samples > u32::MAX as usize || self.lengths.len() > u32::MAX as usize {
            return bad("too many samples or rows");
        }
        match self.experiment {
            Experiment::MpdCost if self.m_lengths.is_empty() => bad("m-lengths must be nonempty"),
            Experiment::CoreTail if self.ells.is_empty() => bad("ells must be nonempty"),
            Experiment::ShpilrainCost if self.rank > crate::primitivity::MAX_WHITEHEAD_RANK => {
                bad("rank too large for the Whitehead fallback")
            }
            _ => Ok(()),
        }
    }

    fn metadata(&self) -> Vec<String> {
        let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let mut lines = vec![
            format!("experiment={}", self.experiment),
            format!("seed={}", self.seed),
            format!("rank={} samples={} lengths={}", self.rank, self.samples, list(&self.lengths)),
        ];
        match self.experiment {
            Experiment::CtpFailure => lines
                .push(format!("k={} tuple_lengths={} depth_policy={}", self.k, self.tuple_lengths, self.depth_policy)),
            Experiment::MpdCost => lines.push(format!(
                "k={} tuple_lengths={} depth_policy={} m_lengths={}",
                self.k,
                self.tuple_lengths,
                self.depth_policy,
                list(&self.m_lengths)
            )),
            Experiment::CoreTail => lines.push(format!("ells={}", list(&self.ells))),
            _ => {}
        }
        lines
    }
}

/// Summary of one nonnegative integer counter over a row's trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub count: usize,
    pub total: u128,
    pub mean: f64,
    pub median: u64,
    pub p99: u64,
    pub max: u64,
}

impl Summary {
    /// Order statistics are taken on the sorted values: the median at rank
    /// `⌈N/2⌉` and the 99th percentile at rank `⌈0.99 N⌉` (1-based).
    pub fn of(mut values: Vec<u64>) -> Self {
        assert!(!values.is_empty());
        values.sort_unstable();
        let count = values.len();
        let total: u128 = values.iter().map(|&v| v as u128).sum();
        let rank = |num: usize, den: usize| values[(count * num).div_ceil(den).max(1) - 1];
        Summary {
            count,
            total,
            mean: total as f64 / count as f64,
            median: rank(1, 2),
            p99: rank(99, 100),
            max: values[count - 1],
        }
    }
}

/// Result of an experiment: `#` metadata lines, a header, and rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub metadata: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(metadata: Vec<String>, header: &[&str]) -> Self {
        Self { metadata, header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let j = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[j].as_str()).collect())
    }

    /// Column parsed as numbers.
    pub fn column_f64(&self, name: &str) -> Option<Vec<f64>> {
        self.column(name)?.into_iter().map(|s| s.parse().ok()).collect()
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let io = |e: std::io::Error| Error::Config(format!("writing CSV: {e}"));
        for line in &self.metadata {
            writeln!(out, "# {line}").map_err(io)?;
        }
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        let csv_err = |e: csv::Error| Error::Config(format!("writing CSV: {e}"));
        writer.write_record(&self.header).map_err(csv_err)?;
        for row in &self.rows {
            writer.write_record(row).map_err(csv_err)?;
        }
        writer.flush().map_err(io)?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV is UTF-8")
    }
}

fn num(x: f64) -> String {
    format!("{x}")
}

fn rate(hits: usize, n: usize) -> (f64, f64) {
    let p = hits as f64 / n as f64;
    (p, (p * (1.0 - p) / n as f64).sqrt())
}

struct Timer(Option<Instant>);

impl Timer {
    fn start(on: bool) -> Self {
        Timer(on.then(Instant::now))
    }

    fn push(self, header_has_it: bool, row: &mut Vec<String>, trials: usize) {
        if let (true, Some(t)) = (header_has_it, self.0) {
            row.push(format!("{:.1}", t.elapsed().as_nanos() as f64 / trials as f64));
        }
    }
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<Table> {
    config.validate()?;
    let alphabet = Alphabet::new(config.rank)?;
    let mut table = match config.experiment {
        Experiment::PppCost => ppp_cost(config, alphabet),
        Experiment::CoreTail => core_tail(config, alphabet),
        Experiment::CtpFailure => ctp_failure(config, alphabet)?,
        Experiment::MpdCost => mpd_cost(config, alphabet)?,
        Experiment::ShpilrainCost => shpilrain_cost(config, alphabet)?,
        Experiment::CutVertexDecay => cut_vertex_decay(config, alphabet)?,
    };
    if config.timing {
        table.metadata.push("timing=on (mean_ns_per_trial is machine dependent)".into());
    }
    Ok(table)
}

fn with_timing(config: &ExperimentConfig, header: &[&'static str]) -> Vec<&'static str> {
    let mut h = header.to_vec();
    if config.timing {
        h.push("mean_ns_per_trial");
    }
    h
}

fn ppp_cost(config: &ExperimentConfig, alphabet: Alphabet) -> Table {
    let header =
        with_timing(config, &["n", "samples", "mean_comparisons", "median", "p99", "max", "expected", "bound"]);
    let mut table = Table::new(config.metadata(), &header);
    for (row, &n) in config.lengths.iter().enumerate() {
        let timer = Timer::start(config.timing);
        let counts: Vec<u64> = (0..config.samples)
            .map(|trial| {
                let mut rng_u = trial_rng(config.seed, row, trial);
                let mut rng_v = ChaCha8Rng::from_rng(&mut rng_u);
                let u = ReducedLetters::new(alphabet, n, &mut rng_u);
                let v = ReducedLetters::new(alphabet, n, &mut rng_v);
                probe_proper_prefix(u, v).comparisons as u64
            })
            .collect();
        let s = Summary::of(counts);
        // first letters agree with probability 1/2r, later ones with 1/(2r-1)
        let size = alphabet.size() as f64;
        let expected = 1.0 + (size - 1.0) / (size * (size - 2.0));
        let mut line = vec![
            n.to_string(),
            config.samples.to_string(),
            num(s.mean),
            s.median.to_string(),
            s.p99.to_string(),
            s.max.to_string(),
            num(expected),
            num(2.0),
        ];
        timer.push(config.timing, &mut line, config.samples);
        table.rows.push(line);
    }
    table
}

fn core_tail(config: &ExperimentConfig, alphabet: Alphabet) -> Table {
    let header = with_timing(config, &["n", "ell", "samples", "hits", "rate", "sigma", "bound"]);
    let mut table = Table::new(config.metadata(), &header);
    let base = 2.0 * config.rank as f64 - 1.0;
    for (row, &n) in config.lengths.iter().enumerate() {
        let timer = Timer::start(config.timing);
        let cores: Vec<usize> = (0..config.samples)
            .map(|trial| {
                let mut rng = trial_rng(config.seed, row, trial);
                let u = sample_uniform_reduced(alphabet, n, &mut rng);
                cyclic_core_bounds(u.letters()).len()
            })
            .collect();
        let elapsed = timer;
        let mut lines = Vec::new();
        for &ell in &config.ells {
            let hits = cores.iter().filter(|&&c| c + 2 * ell <= n).count();
            let (p, sigma) = rate(hits, config.samples);
            lines.push(vec![
                n.to_string(),
                ell.to_string(),
                config.samples.to_string(),
                hits.to_string(),
                num(p),
                num(sigma),
                num(1.5 * base.powi(-(ell as i32))),
            ]);
        }
        if let Some(first) = lines.first_mut() {
            elapsed.push(config.timing, first, config.samples);
        }
        for line in lines.iter_mut().skip(1) {
            if config.timing {
                line.push(String::new());
            }
        }
        table.rows.extend(lines);
    }
    table
}

fn ctp_failure(config: &ExperimentConfig, alphabet: Alphabet) -> Result<Table> {
    let header = with_timing(
        config,
        &["n", "k", "d", "samples", "failures", "failure_rate", "sigma", "gate_failure_rate", "bound"],
    );
    let mut table = Table::new(config.metadata(), &header);
    for (row, &n) in config.lengths.iter().enumerate() {
        let timer = Timer::start(config.timing);
        let d = config.depth_policy.eval(n, config.rank);
        let k = config.k.eval(n, config.rank)?;
        let lengths = LengthSampler::new(config.tuple_lengths, config.rank, n);
        let mut failures = 0;
        let mut gate_failures = 0;
        for trial in 0..config.samples {
            let mut rng = trial_rng(config.seed, row, trial);
            let words = sample_tuple(alphabet, k, &lengths, &mut rng);
            if check_ctp(alphabet, &words, d)?.is_none() {
                failures += 1;
            }
            if fast_certificate(alphabet, &words, config.depth_policy)?.is_none() {
                gate_failures += 1;
            }
        }
        let (p, sigma) = rate(failures, config.samples);
        let d_half = config.depth_policy.eval((n / 2).max(1), config.rank);
        let mut line = vec![
            n.to_string(),
            k.to_string(),
            d.to_string(),
            config.samples.to_string(),
            failures.to_string(),
            num(p),
            num(sigma),
            num(gate_failures as f64 / config.samples as f64),
            num(ctp_failure_probability_bound::<f64>(k, config.rank, d_half)),
        ];
        timer.push(config.timing, &mut line, config.samples);
        table.rows.push(line);
    }
    Ok(table)
}

/// Rejection attempts allowed per trial when drawing a tuple that passes the
/// fast-route gate.
pub const MAX_REJECTIONS: usize = 1_000_000;

fn mpd_cost(config: &ExperimentConfig, alphabet: Alphabet) -> Result<Table> {
    let header = with_timing(
        config,
        &[
            "n",
            "m",
            "k",
            "d",
            "samples",
            "mean_letters_examined",
            "median",
            "p99",
            "max",
            "mean_leaf_passages",
            "member_rate",
            "mean_rejections",
            "bound_kd",
        ],
    );
    let mut table = Table::new(config.metadata(), &header);
    let mut row = 0;
    for &n in &config.lengths {
        let k = config.k.eval(n, config.rank)?;
        let lengths = LengthSampler::new(config.tuple_lengths, config.rank, n);
        for &m in &config.m_lengths {
            let timer = Timer::start(config.timing);
            let mut examined = Vec::with_capacity(config.samples);
            let mut passages = 0u128;
            let mut members = 0;
            let mut rejections = 0u128;
            let mut depth = None;
            for trial in 0..config.samples {
                let mut rng = trial_rng(config.seed, row, trial);
                let mut attempts = 0;
                let words = loop {
                    let words = sample_tuple(alphabet, k, &lengths, &mut rng);
                    if fast_certificate(alphabet, &words, config.depth_policy)?.is_some() {
                        break words;
                    }
                    attempts += 1;
                    if attempts == MAX_REJECTIONS {
                        return Err(Error::Config(format!("no tuple passed the fast-route gate at n={n}")));
                    }
                };
                rejections += attempts as u128;
                let cert = fast_certificate(alphabet, &words, config.depth_policy)?.expect("gate passed");
                depth = Some(cert.depth());
                let w0 = sample_uniform_reduced(alphabet, m, &mut rng);
                let (expression, counters) = walk_certificate(&cert, &w0);
                examined.push(counters.letters_examined as u64);
                passages += counters.leaf_passages as u128;
                members += expression.is_some() as usize;
            }
            let s = Summary::of(examined);
            let d = depth.expect("at least one sample");
            let mut line = vec![
                n.to_string(),
                m.to_string(),
                k.to_string(),
                d.to_string(),
                config.samples.to_string(),
                num(s.mean),
                s.median.to_string(),
                s.p99.to_string(),
                s.max.to_string(),
                num(passages as f64 / config.samples as f64),
                num(members as f64 / config.samples as f64),
                num(rejections as f64 / config.samples as f64),
                (k * d).to_string(),
            ];
            timer.push(config.timing, &mut line, config.samples);
            table.rows.push(line);
            row += 1;
        }
    }
    Ok(table)
}

fn shpilrain_cost(config: &ExperimentConfig, alphabet: Alphabet) -> Result<Table> {
    let header = with_timing(
        config,
        &[
            "n",
            "samples",
            "mean_edges_added",
            "median",
            "p99",
            "max",
            "mean_cut_vertex_checks",
            "obstruction_rate",
            "short_core_rate",
            "fallback_rate",
            "primitive_rate",
        ],
    );
    let mut table = Table::new(config.metadata(), &header);
    for (row, &n) in config.lengths.iter().enumerate() {
        let timer = Timer::start(config.timing);
        let mut edges = Vec::with_capacity(config.samples);
        let mut checks = 0u128;
        let (mut obstruction, mut short, mut fallback, mut primitive) = (0, 0, 0, 0);
        for trial in 0..config.samples {
            let mut rng = trial_rng(config.seed, row, trial);
            let u = sample_uniform_reduced(alphabet, n, &mut rng);
            let report = is_primitive_shpilrain(alphabet, &u)?;
            edges.push(report.counters.edges_added as u64);
            checks += report.counters.cut_vertex_checks as u128;
            match report.route {
                PrimitivityRoute::Obstruction { .. } => obstruction += 1,
                PrimitivityRoute::ShortCore => short += 1,
                PrimitivityRoute::WhiteheadFallback => fallback += 1,
            }
            primitive += report.verdict as usize;
        }
        let s = Summary::of(edges);
        let frac = |c: usize| num(c as f64 / config.samples as f64);
        let mut line = vec![
            n.to_string(),
            config.samples.to_string(),
            num(s.mean),
            s.median.to_string(),
            s.p99.to_string(),
            s.max.to_string(),
            num(checks as f64 / config.samples as f64),
            frac(obstruction),
            frac(short),
            frac(fallback),
            frac(primitive),
        ];
        timer.push(config.timing, &mut line, config.samples);
        table.rows.push(line);
    }
    Ok(table)
}

/// `max(gaa, gab) / (2r - 1)`. Both deleted-edge graphs are themselves
/// 2-connected, so this only bounds the cut-vertex decay rate from above;
/// see [`alpha`] for the exact rate.
pub fn alpha_upper<T: crate::scalar::Real>(r: u32) -> T {
    let top = T::from_u32(2 * r - 1).expect("small integer");
    gaa_modulus::<T>(r).max(gab_modulus::<T>(r)) / top
}

/// `λ0 / (2r - 1)` with `λ0` from [`cut_vertex_modulus`]: the exact
/// per-letter decay rate of the cut-vertex probability. Rank <= 3 only.
pub fn alpha<T: crate::scalar::Real>(alphabet: Alphabet) -> Result<T> {
    let top = T::from_u32(2 * alphabet.rank() - 1).expect("small integer");
    Ok(cut_vertex_modulus(alphabet, crate::scalar::lit::<T>(1e-12))? / top)
}

fn cut_vertex_decay(config: &ExperimentConfig, alphabet: Alphabet) -> Result<Table> {
    let header = with_timing(
        config,
        &[
            "n",
            "samples",
            "failures",
            "failure_rate",
            "sigma",
            "fitted_ratio",
            "alpha",
            "alpha_upper",
            "alpha_bound",
            "bound",
        ],
    );
    let mut table = Table::new(config.metadata(), &header);
    let r = config.rank;
    let bound_ratio = cut_vertex_growth_bound::<f64>(r) / (2.0 * r as f64 - 1.0);
    let exact = if r <= MAX_ENUMERATION_RANK { num(alpha::<f64>(alphabet)?) } else { String::new() };
    let mut previous: Option<(usize, f64)> = None;
    for (row, &n) in config.lengths.iter().enumerate() {
        let timer = Timer::start(config.timing);
        let mut failures = 0;
        for trial in 0..config.samples {
            let mut rng = trial_rng(config.seed, row, trial);
            let u = sample_uniform_reduced(alphabet, n, &mut rng);
            let ok = if n < 2 { false } else { whitehead_graph(alphabet, &u, false)?.connected_without_cutvertex() };
            failures += !ok as usize;
        }
        let (p, sigma) = rate(failures, config.samples);
        let fitted = match previous {
            Some((m, q)) if q > 0.0 && p > 0.0 && n > m => num((p / q).powf(1.0 / (n - m) as f64)),
            _ => String::new(),
        };
        previous = Some((n, p));
        let mut line = vec![
            n.to_string(),
            config.samples.to_string(),
            failures.to_string(),
            num(p),
            num(sigma),
            fitted,
            exact.clone(),
            num(alpha_upper::<f64>(r)),
            num(bound_ratio),
            num(bound_ratio.powi(n as i32)),
        ];
        timer.push(config.timing, &mut line, config.samples);
        table.rows.push(line);
    }
    Ok(table)
}

/// Least-squares slope of `ln(rate)` against `n`, exponentiated: the fitted
/// per-letter decay ratio. Rows with a zero rate are skipped.
pub fn fitted_decay_ratio(ns: &[f64], rates: &[f64]) -> Option<f64> {
    let points: Vec<(f64, f64)> = ns.iter().zip(rates).filter(|(_, &p)| p > 0.0).map(|(&n, &p)| (n, p.ln())).collect();
    if points.len() < 2 {
        return None;
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| (sxy / sxx).exp())
}

/// The automaton matrices behind [`alpha_upper`], for inspection.
pub fn deleted_edge_matrices(alphabet: Alphabet) -> (crate::growth::TransitionMatrix, crate::growth::TransitionMatrix) {
    let a = crate::words::Letter::gen(1);
    let gaa: WhiteheadGraph = deleted_edge_graph(alphabet, a, a.inverse());
    let gab = deleted_edge_graph(alphabet, a, crate::words::Letter::gen(2));
    (automaton_matrix(&gaa), automaton_matrix(&gab))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(e: Experiment) -> ExperimentConfig {
        let mut c = ExperimentConfig::new(e);
        c.samples = 200;
        c.lengths = match e {
            Experiment::ShpilrainCost => vec![50, 100],
            Experiment::CutVertexDecay => vec![5, 10, 15],
            Experiment::MpdCost => vec![32],
            _ => c.lengths,
        };
        c.m_lengths = vec![100];
        c
    }

    #[test]
    fn every_experiment_runs_and_is_reproducible() {
        for e in Experiment::ALL {
            let c = small(e);
            let a = run_experiment(&c).unwrap().to_csv();
            let b = run_experiment(&c).unwrap().to_csv();
            assert_eq!(a, b, "{e}");
            assert!(a.starts_with(&format!("# experiment={e}\n# seed=1\n")));
            assert!(!a.contains('\r'));
        }
    }

    #[test]
    fn seed_changes_output() {
        let mut c = small(Experiment::CoreTail);
        let a = run_experiment(&c).unwrap();
        c.seed = 2;
        let b = run_experiment(&c).unwrap();
        assert_ne!(a.rows, b.rows);
    }

    #[test]
    fn summary_order_statistics() {
        let s = Summary::of((1..=100).rev().collect());
        assert_eq!((s.median, s.p99, s.max, s.total), (50, 99, 100, 5050));
        assert_eq!(s.mean, 50.5);
        let s = Summary::of(vec![7]);
        assert_eq!((s.median, s.p99), (7, 7));
    }

    #[test]
    fn rows_are_independent_of_other_rows() {
        let mut c = small(Experiment::PppCost);
        c.lengths = vec![100, 1000];
        let both = run_experiment(&c).unwrap();
        c.lengths = vec![100];
        let one = run_experiment(&c).unwrap();
        assert_eq!(both.rows[0], one.rows[0]);
    }

    #[test]
    fn config_validation() {
        let mut c = ExperimentConfig::new(Experiment::PppCost);
        c.samples = 0;
        assert!(run_experiment(&c).is_err());
        let mut c = ExperimentConfig::new(Experiment::PppCost);
        c.rank = 1;
        assert!(run_experiment(&c).is_err());
        assert!("nope".parse::<Experiment>().is_err());
        for e in Experiment::ALL {
            assert_eq!(e.name().parse::<Experiment>().unwrap(), e);
        }
    }

    #[test]
    fn timing_adds_a_column() {
        let mut c = small(Experiment::PppCost);
        c.timing = true;
        let t = run_experiment(&c).unwrap();
        assert_eq!(t.header.last().unwrap(), "mean_ns_per_trial");
        assert!(t.rows.iter().all(|r| r.len() == t.header.len()));
        let mut c = small(Experiment::CoreTail);
        c.timing = true;
        let t = run_experiment(&c).unwrap();
        assert!(t.rows.iter().all(|r| r.len() == t.header.len()));
    }

    #[test]
    fn tuple_size_policies() {
        assert_eq!("3".parse::<TupleSize>().unwrap(), TupleSize::Fixed(3));
        assert_eq!("pow:0.5".parse::<TupleSize>().unwrap().eval(100, 2).unwrap(), 10);
        assert_eq!("density:0.1".parse::<TupleSize>().unwrap().eval(20, 2).unwrap(), 9);
        assert!("0".parse::<TupleSize>().is_err());
        assert!("pow:x".parse::<TupleSize>().is_err());
        assert!(TupleSize::Density(1.0).eval(1000, 2).is_err());
        for t in [TupleSize::Fixed(2), TupleSize::Pow(0.25), TupleSize::Density(0.125)] {
            assert_eq!(t.to_string().parse::<TupleSize>().unwrap(), t);
        }
    }

    #[test]
    fn ball_lengths_follow_word_counts() {
        // r = 2, n = 3: 1 + 4 + 12 + 36 = 53 words
        let sampler = LengthSampler::new(TupleLengths::Ball, 2, 3);
        let mut rng = trial_rng(5, 0, 0);
        let mut hist = [0usize; 4];
        let trials = 530_000;
        for _ in 0..trials {
            hist[sampler.sample(&mut rng)] += 1;
        }
        for (h, expect) in [1.0, 4.0, 12.0, 36.0].into_iter().enumerate() {
            let p = expect / 53.0;
            let sigma = (p * (1.0 - p) / trials as f64).sqrt();
            assert!((hist[h] as f64 / trials as f64 - p).abs() < 5.0 * sigma, "{hist:?}");
        }
        let uniform = LengthSampler::new(TupleLengths::Uniform, 2, 3);
        assert!((0..1000).all(|_| (1..=3).contains(&uniform.sample(&mut rng))));
        assert_eq!("ball".parse::<TupleLengths>().unwrap(), TupleLengths::Ball);
    }

    #[test]
    fn ball_tuples_fail_ctp_less_often() {
        let mut c = small(Experiment::CtpFailure);
        c.lengths = vec![100];
        c.samples = 2000;
        let uniform = run_experiment(&c).unwrap().column_f64("failure_rate").unwrap()[0];
        c.tuple_lengths = TupleLengths::Ball;
        let ball = run_experiment(&c).unwrap().column_f64("failure_rate").unwrap()[0];
        assert!(ball < uniform / 2.0, "{ball} vs {uniform}");
    }

    #[test]
    fn alpha_values() {
        assert!((alpha_upper::<f64>(2) - 2.561_552_812_808_83 / 3.0).abs() < 1e-12);
        for r in 2..=8 {
            assert!(alpha_upper::<f64>(r) < 1.0 - 0.5 / (r * r) as f64);
        }
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((alpha::<f64>(Alphabet::new(2).unwrap()).unwrap() - golden / 3.0).abs() < 1e-10);
        for r in 2..=3 {
            let exact = alpha::<f64>(Alphabet::new(r).unwrap()).unwrap();
            assert!(exact < alpha_upper::<f64>(r));
        }
        assert!((fitted_decay_ratio(&[1.0, 2.0, 3.0], &[0.5, 0.25, 0.125]).unwrap() - 0.5).abs() < 1e-12);
    }
}
