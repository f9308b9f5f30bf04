//! Command-line driver: classification runs with checkpointing, bound
//! verification, normal forms, ufp listings and summary tables.

pub mod checkpoint;
pub mod format;

use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fanoclass::bounds::{verify_bounds, BoundReport};
use fanoclass::classify::{classify_for_ufp_with, ufps_for, ClassificationTask, ClassifyOptions, Mode};
use fanoclass::int::rat_to_string;
use fanoclass::normal_form::normal_form;
use fanoclass::ufp::enumerate_ufps;
use fanoclass::{ClassificationRecord, IntMatrix, Rat};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Value};

use checkpoint::{digest, Checkpoint, Entry};
pub use format::Format;
use format::{encode, read_records, RecordWriter};

#[derive(Debug, Parser)]
#[command(name = "fanoclass", version, about = "Classify Fano and IP lattice simplices by dimension and Gorenstein index")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify all simplices of one dimension and a range of indices.
    Classify(ClassifyArgs),
    /// List the unit fraction partitions of 1/g of a given length.
    Ufp {
        #[arg(long)]
        index: u64,
        #[arg(long)]
        length: usize,
        /// Only well-formed partitions.
        #[arg(long)]
        well_formed: bool,
    },
    /// Check classification output against the volume, multiplicity and Mahler bounds.
    Verify(VerifyArgs),
    /// Read a JSON vertex matrix from stdin and print its normal form.
    NormalForm,
    /// Count records per index, or per index and weight system, as CSV.
    Stats(StatsArgs),
}

/// `g` or an inclusive range `a..b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexRange {
    pub lo: u64,
    pub hi: u64,
}

impl FromStr for IndexRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |x: &str| x.trim().parse::<u64>().map_err(|_| format!("bad index {x:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
            None => (num(s)?, num(s)?),
        };
        if lo == 0 || lo > hi {
            return Err(format!("empty or invalid index range {s:?}"));
        }
        Ok(IndexRange { lo, hi })
    }
}

impl fmt::Display for IndexRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StatsBy {
    Weights,
    Index,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub dim: usize,
    /// `g` or `a..b` (inclusive).
    #[arg(long)]
    pub index: IndexRange,
    /// Fano simplices only (the default).
    #[arg(long, conflicts_with = "all")]
    pub fano: bool,
    /// All IP lattice simplices.
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "jsonl")]
    pub format: Format,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Enables resumable runs; needs `--output`.
    #[arg(long, env = "FANO_CHECKPOINT_DIR")]
    pub checkpoint_dir: Option<PathBuf>,
    /// Per-ufp dedup sets larger than this spill to disk; 0 never spills.
    #[arg(long, default_value_t = ClassifyOptions::default().spill_threshold)]
    pub spill_threshold: usize,
    /// Stop after this many ufps, as if killed.
    #[arg(long, hide = true)]
    pub max_ufps: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Record file; stdin if absent.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Defaults to the input extension, else jsonl.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// The records are an all-IP classification.
    #[arg(long)]
    pub all: bool,
    /// The records need not be a complete classification.
    #[arg(long)]
    pub partial: bool,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, value_enum, default_value = "weights")]
    pub by: StatsBy,
}

/// Validated settings of a `classify` run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub d: usize,
    pub g: IndexRange,
    pub mode: Mode,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub threads: Option<usize>,
    pub checkpoint_dir: Option<PathBuf>,
    pub spill_threshold: usize,
    pub max_ufps: Option<usize>,
}

impl RunConfig {
    pub fn from_args(a: &ClassifyArgs) -> Result<Self, Failure> {
        if a.dim < 2 {
            return Err(Failure::Usage(anyhow!("--dim must be at least 2")));
        }
        if a.threads == Some(0) {
            return Err(Failure::Usage(anyhow!("--threads must be at least 1")));
        }
        // Checkpoints describe an output file; stdout runs are not resumable.
        let checkpoint_dir = a.output.as_ref().and(a.checkpoint_dir.clone());
        Ok(RunConfig {
            d: a.dim,
            g: a.index,
            mode: if a.all { Mode::AllIp } else { Mode::Fano },
            output: a.output.clone(),
            format: a.format,
            threads: a.threads,
            checkpoint_dir,
            spill_threshold: a.spill_threshold,
            max_ufps: a.max_ufps,
        })
    }

    fn mode_name(&self) -> &'static str {
        match self.mode {
            Mode::Fano => "fano",
            Mode::AllIp => "all",
        }
    }

    fn format_name(&self) -> &'static str {
        match self.format {
            Format::Jsonl => "jsonl",
            Format::Csv => "csv",
        }
    }

    fn run_id(&self, output: &Path) -> String {
        format!("classify d={} g={} mode={} format={} output={}", self.d, self.g, self.mode_name(), self.format_name(), output.display())
    }

    fn checkpoint_path(&self, dir: &Path, output: &Path) -> PathBuf {
        let tag = &digest(output.to_string_lossy().as_bytes())[..12];
        dir.join(format!(
            "classify-d{}-g{}-{}-{}-{}-{tag}.ckpt",
            self.d,
            self.g.lo,
            self.g.hi,
            self.mode_name(),
            self.format_name()
        ))
    }
}

/// Error classes with their exit codes.
#[derive(Debug)]
pub enum Failure {
    /// 1
    Verification(String),
    /// 2
    Usage(anyhow::Error),
    /// 3
    Io(anyhow::Error),
    /// 1
    Other(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(_) | Failure::Other(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Verification(m) => write!(f, "verification failed: {m}"),
            Failure::Usage(e) | Failure::Io(e) | Failure::Other(e) => write!(f, "{e:#}"),
        }
    }
}

impl From<fanoclass::Error> for Failure {
    fn from(e: fanoclass::Error) -> Self {
        match e {
            fanoclass::Error::InvalidArgument(_) => Failure::Usage(e.into()),
            fanoclass::Error::Io(_) => Failure::Io(e.into()),
            _ => Failure::Other(e.into()),
        }
    }
}

trait OrFailure<T> {
    fn io(self) -> Result<T, Failure>;
    fn usage(self) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> OrFailure<T> for Result<T, E> {
    fn io(self) -> Result<T, Failure> {
        self.map_err(|e| Failure::Io(e.into()))
    }
    fn usage(self) -> Result<T, Failure> {
        self.map_err(|e| Failure::Usage(e.into()))
    }
}

pub fn run(cli: Cli, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let res = match cli.command {
        Command::Classify(a) => cmd_classify(&RunConfig::from_args(&a)?, stdout, stderr),
        Command::Ufp { index, length, well_formed } => cmd_ufp(index, length, well_formed, stdout),
        Command::Verify(a) => cmd_verify(&a, stdin, stdout),
        Command::NormalForm => cmd_normal_form(stdin, stdout),
        Command::Stats(a) => cmd_stats(&a, stdin, stdout),
    };
    stdout.flush().io()?;
    res
}

fn build_pool(threads: Option<usize>) -> Result<rayon::ThreadPool, Failure> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Failure::Other(e.into()))
}

/// Classified records of one task, encoded.
struct Chunk {
    count: usize,
    bytes: Vec<u8>,
}

fn classify_chunk(task: &ClassificationTask, cfg: &RunConfig) -> fanoclass::Result<Chunk> {
    let mut bytes = Vec::new();
    let opts = ClassifyOptions { spill_threshold: cfg.spill_threshold };
    let count = classify_for_ufp_with(task, opts, &mut |r| {
        bytes.extend_from_slice(&encode(cfg.format, &r));
        Ok(())
    })?;
    Ok(Chunk { count, bytes })
}

/// Runs the classification. Tasks are ufps, solved in parallel batches and
/// written in a fixed order by this thread alone, so the output does not
/// depend on the thread count.
pub fn cmd_classify(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let pool = build_pool(cfg.threads)?;
    let mut tasks = Vec::new();
    for g in cfg.g.lo..=cfg.g.hi {
        for a in ufps_for(cfg.d, g, cfg.mode)? {
            tasks.push(ClassificationTask::new(a, cfg.mode)?);
        }
    }

    let mut counts: BTreeMap<u64, usize> = (cfg.g.lo..=cfg.g.hi).map(|g| (g, 0)).collect();
    let mut ckpt: Option<Checkpoint> = None;
    let mut done = 0;
    let mut pos: u64;
    let mut sink: Box<dyn Write + '_> = match &cfg.output {
        None => {
            let mut w = RecordWriter::new(cfg.format, Vec::new());
            w.header().map_err(Failure::Other)?;
            stdout.write_all(&w.into_inner()).io()?;
            pos = 0;
            Box::new(&mut *stdout)
        }
        Some(path) => {
            let abs = std::path::absolute(path).io()?;
            let id = cfg.run_id(&abs);
            let existing = match &cfg.checkpoint_dir {
                Some(dir) => Checkpoint::open(&cfg.checkpoint_path(dir, &abs), &id).usage()?,
                None => None,
            };
            match existing {
                Some(c) => {
                    for (e, t) in c.entries.iter().zip(&tasks) {
                        if e.g != t.g || e.ufp != t.ufp.entries() {
                            return Err(Failure::Usage(anyhow!("checkpoint {} does not match this run", c.path().display())));
                        }
                    }
                    if c.entries.len() > tasks.len() {
                        return Err(Failure::Usage(anyhow!("checkpoint {} has extra entries", c.path().display())));
                    }
                    for e in &c.entries {
                        *counts.get_mut(&e.g).expect("g in range") += e.count;
                    }
                    let f = c.restore_output(path).usage()?;
                    done = c.entries.len();
                    pos = c.end();
                    writeln!(stderr, "resuming after {done} of {} ufps", tasks.len()).io()?;
                    ckpt = Some(c);
                    Box::new(BufWriter::new(f))
                }
                None => {
                    let f = File::create(path).with_context(|| format!("creating {}", path.display())).io()?;
                    let mut w = RecordWriter::new(cfg.format, BufWriter::new(f));
                    w.header().io()?;
                    let mut f = w.into_inner();
                    f.flush().io()?;
                    pos = f.get_ref().metadata().io()?.len();
                    if let Some(dir) = &cfg.checkpoint_dir {
                        ckpt = Some(Checkpoint::create(&cfg.checkpoint_path(dir, &abs), &id, pos).io()?);
                    }
                    Box::new(f)
                }
            }
        }
    };

    let batch = pool.current_num_threads().max(1) * 4;
    let limit = cfg.max_ufps.map_or(tasks.len(), |m| tasks.len().min(done + m));
    while done < limit {
        let end = limit.min(done + batch);
        let chunks: Vec<Chunk> =
            pool.install(|| tasks[done..end].par_iter().map(|t| classify_chunk(t, cfg)).collect::<fanoclass::Result<_>>())?;
        for (t, c) in tasks[done..end].iter().zip(chunks) {
            sink.write_all(&c.bytes).io()?;
            pos += c.bytes.len() as u64;
            *counts.get_mut(&t.g).expect("g in range") += c.count;
            if let Some(ck) = ckpt.as_mut() {
                sink.flush().io()?;
                let e = Entry { g: t.g, ufp: t.ufp.entries().to_vec(), count: c.count, sha256: digest(&c.bytes), end: pos };
                ck.append(e).io()?;
            }
        }
        if let Some(ck) = ckpt.as_mut() {
            ck.sync().io()?;
        }
        done = end;
    }
    sink.flush().io()?;
    drop(sink);

    if done < tasks.len() {
        writeln!(stderr, "stopped after {done} of {} ufps", tasks.len()).io()?;
        return Ok(());
    }
    let summary: &mut dyn Write = if cfg.output.is_some() { stdout } else { stderr };
    for (g, n) in counts {
        writeln!(summary, "d={} g={g} count={n}", cfg.d).io()?;
    }
    Ok(())
}

pub fn cmd_ufp(g: u64, n: usize, well_formed: bool, stdout: &mut dyn Write) -> Result<(), Failure> {
    for a in enumerate_ufps(g, n)? {
        if well_formed && !a.is_well_formed() {
            continue;
        }
        writeln!(stdout, "{}", serde_json::to_string(a.entries()).expect("integer list")).io()?;
    }
    Ok(())
}

fn input_format(path: Option<&Path>, given: Option<Format>) -> Format {
    given.unwrap_or(match path.and_then(Path::extension) {
        Some(e) if e == "csv" => Format::Csv,
        _ => Format::Jsonl,
    })
}

fn load(path: Option<&Path>, given: Option<Format>, stdin: &mut dyn BufRead) -> Result<Vec<ClassificationRecord>, Failure> {
    let format = input_format(path, given);
    match path {
        Some(p) => {
            let f = File::open(p).with_context(|| format!("opening {}", p.display())).io()?;
            read_records(format, BufReader::new(f)).usage()
        }
        None => read_records(format, stdin).usage(),
    }
}

fn big_json(x: &BigInt) -> Value {
    x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(big_json).collect())).collect())
}

fn rat_json(r: Option<&Rat>) -> Value {
    r.map_or(Value::Null, |r| Value::String(rat_to_string(r)))
}

pub fn report_json(r: &BoundReport) -> Value {
    json!({
        "d": r.d,
        "g": r.g,
        "kind": r.kind.name(),
        "bound": rat_to_string(&r.bound),
        "max_observed": rat_json(r.max_observed.as_ref()),
        "violations": r.violations,
        "attained": r.attained,
        "attainers": r.attainers.iter().map(matrix_json).collect::<Vec<_>>(),
        "predicted": r.predicted.as_ref().map(|p| p.iter().map(matrix_json).collect::<Vec<_>>()),
        "sharpness": match r.sharpness_ok() {
            None => "not asserted",
            Some(true) => "match",
            Some(false) => "mismatch",
        },
        "authoritative": r.authoritative,
        "conjectured_bound": rat_json(r.conjectured_bound.as_ref()),
        "pass": r.passes(),
    })
}

/// Prints the reports; fails if a record is inconsistent, exceeds a bound,
/// or the maximizers differ from the predicted ones.
pub fn cmd_verify(a: &VerifyArgs, stdin: &mut dyn BufRead, stdout: &mut dyn Write) -> Result<(), Failure> {
    let mode = if a.all { Mode::AllIp } else { Mode::Fano };
    let records = load(a.input.as_deref(), a.format, stdin)?;
    for (i, r) in records.iter().enumerate() {
        r.check(mode).map_err(|e| Failure::Verification(format!("record {}: {e}", i + 1)))?;
    }
    let mut groups: BTreeMap<(usize, u64), Vec<ClassificationRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.d, r.g)).or_default().push(r);
    }
    let mut out = Vec::new();
    let mut failed = Vec::new();
    for ((d, g), recs) in &groups {
        for rep in verify_bounds(recs, *d, *g, mode, !a.partial)? {
            if !rep.passes() {
                failed.push(format!("{} bound at d={d} g={g}", rep.kind.name()));
            }
            out.push(report_json(&rep));
        }
    }
    // One report per line.
    let lines: Vec<String> = out.iter().map(Value::to_string).collect();
    writeln!(stdout, "[\n{}\n]", lines.join(",\n")).io()?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(failed.join(", ")))
    }
}

fn parse_matrix(v: &Value) -> anyhow::Result<IntMatrix> {
    let rows = v.as_array().ok_or_else(|| anyhow!("expected an array of rows"))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| anyhow!("expected a row array"))?
                .iter()
                .map(|x| match x {
                    Value::Number(n) if n.is_i64() || n.is_u64() => {
                        BigInt::from_str(&n.to_string()).map_err(|_| anyhow!("bad entry {n}"))
                    }
                    Value::String(s) => BigInt::from_str(s.trim()).map_err(|_| anyhow!("bad entry {s:?}")),
                    other => Err(anyhow!("bad entry {other}")),
                })
                .collect()
        })
        .collect::<anyhow::Result<Vec<Vec<BigInt>>>>()?;
    Ok(IntMatrix::from_big_rows(rows)?)
}

pub fn cmd_normal_form(stdin: &mut dyn BufRead, stdout: &mut dyn Write) -> Result<(), Failure> {
    let mut text = String::new();
    stdin.read_to_string(&mut text).io()?;
    let v: Value = serde_json::from_str(&text).usage()?;
    let m = parse_matrix(&v).usage()?;
    let nf = normal_form(&m)?;
    writeln!(stdout, "{}", matrix_json(nf.matrix())).io()?;
    Ok(())
}

pub fn cmd_stats(a: &StatsArgs, stdin: &mut dyn BufRead, stdout: &mut dyn Write) -> Result<(), Failure> {
    let records = load(a.input.as_deref(), a.format, stdin)?;
    match a.by {
        StatsBy::Index => {
            let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
            for r in &records {
                *counts.entry(r.g).or_default() += 1;
            }
            writeln!(stdout, "g,count").io()?;
            for (g, n) in counts {
                writeln!(stdout, "{g},{n}").io()?;
            }
        }
        StatsBy::Weights => {
            let mut counts: BTreeMap<(u64, Vec<BigInt>), usize> = BTreeMap::new();
            for r in records {
                *counts.entry((r.g, r.weights)).or_default() += 1;
            }
            writeln!(stdout, "g,weights,count").io()?;
            for ((g, w), n) in counts {
                let w: Vec<String> = w.iter().map(ToString::to_string).collect();
                writeln!(stdout, "{g},{},{n}", w.join(" ")).io()?;
            }
        }
    }
    Ok(())
}
