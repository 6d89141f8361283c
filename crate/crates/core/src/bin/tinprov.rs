use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use tinprov::ingest::{read_interactions, read_interactions_file, VertexTable};
use tinprov::noprov::top_generators;
use tinprov::report::{run, write_csv, write_json, Labels, RunOptions, SnapshotAt};
use tinprov::scalable::Budget;
use tinprov::stream::sort_check;
use tinprov::synth::{numeric_table, synth, Shape};
use tinprov::{EngineConfig, Error, Interaction, Policy, Scope, VertexId, DEFAULT_EPSILON};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Replay an interaction stream and report where buffered quantities came from.
#[derive(Parser, Debug)]
#[command(name = "tinprov", version)]
struct Args {
    /// Interaction file (source,dest,time,quantity); `-` reads stdin.
    input: Option<PathBuf>,

    #[arg(long, default_value = "noprov")]
    policy: Policy,
    /// Record the route of every parcel.
    #[arg(long)]
    paths: bool,
    /// Merge parcels with equal origin and birth time (lrb/mrb only).
    #[arg(long)]
    coalesce: bool,
    /// Vertices to track individually: a file with one label per line, or
    /// `topk=K` for the K largest generators.
    #[arg(long, value_name = "FILE|topk=K")]
    selective: Option<String>,
    /// CSV of `vertex_label,group_label` covering every vertex.
    #[arg(long, value_name = "FILE")]
    groups: Option<PathBuf>,
    #[arg(long, value_name = "W")]
    window: Option<u64>,
    #[arg(long, value_name = "C=<int>,f=<real>")]
    budget: Option<String>,
    #[arg(long, value_name = "E", default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    #[arg(long, value_name = "end|every-k=N", default_value = "end")]
    snapshot_at: String,
    /// Keep only the N fullest buffers in each snapshot.
    #[arg(long, value_name = "N")]
    top: Option<usize>,
    #[arg(long, value_name = "T")]
    alert_threshold: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Fail if any input line is rejected.
    #[arg(long)]
    strict: bool,
    /// Snapshot destination; stdout when absent.
    #[arg(short, long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Generate a stream of this shape instead of reading one.
    #[arg(long, value_enum, value_name = "SHAPE", conflicts_with = "input")]
    synth: Option<SynthShape>,
    #[arg(long, default_value_t = 1000)]
    vertices: usize,
    #[arg(long, default_value_t = 100_000)]
    interactions: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also save the generated stream here.
    #[arg(long, value_name = "FILE", requires = "synth")]
    write_stream: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SynthShape {
    Uniform,
    Hub,
    Chain,
}

impl From<SynthShape> for Shape {
    fn from(s: SynthShape) -> Shape {
        match s {
            SynthShape::Uniform => Shape::Uniform,
            SynthShape::Hub => Shape::Hub,
            SynthShape::Chain => Shape::Chain,
        }
    }
}

fn parse_snapshot_at(s: &str) -> tinprov::Result<SnapshotAt> {
    if s == "end" {
        return Ok(SnapshotAt::End);
    }
    match s.strip_prefix("every-k=").map(str::parse::<u64>) {
        Some(Ok(k)) if k > 0 => Ok(SnapshotAt::EveryK(k)),
        _ => Err(Error::config(format!(
            "--snapshot-at expects end or every-k=N, got {s:?}"
        ))),
    }
}

fn parse_budget(s: &str) -> tinprov::Result<Scope> {
    let bad = || Error::config(format!("--budget expects C=<int>,f=<real>, got {s:?}"));
    let mut capacity = None;
    let mut keep = Budget::DEFAULT_KEEP_FRACTION;
    for part in s.split(',') {
        match part.trim().split_once('=') {
            Some(("C", v)) => capacity = Some(v.parse::<usize>().map_err(|_| bad())?),
            Some(("f", v)) => keep = v.parse::<f64>().map_err(|_| bad())?,
            _ => return Err(bad()),
        }
    }
    Ok(Scope::budget(capacity.ok_or_else(bad)?, keep))
}

fn label_lookup(table: &VertexTable, label: &str, what: &str) -> tinprov::Result<VertexId> {
    table.get(label).ok_or_else(|| {
        Error::config(format!(
            "{what} names vertex {label:?} which does not occur in the stream"
        ))
    })
}

fn selective_scope(
    arg: &str,
    table: &VertexTable,
    stream: &[Interaction],
) -> tinprov::Result<Scope> {
    if let Some(k) = arg.strip_prefix("topk=") {
        let k: usize = k.parse().map_err(|_| {
            Error::config(format!("--selective topk=K needs an integer, got {k:?}"))
        })?;
        return Ok(Scope::Selective(top_generators(stream, table.len(), k)));
    }
    let text = std::fs::read_to_string(arg).map_err(|e| Error::Input {
        path: arg.into(),
        message: e.to_string(),
    })?;
    let tracked = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| label_lookup(table, l, "--selective"))
        .collect::<tinprov::Result<Vec<_>>>()?;
    Ok(Scope::Selective(tracked))
}

fn group_scope(path: &PathBuf, table: &VertexTable) -> tinprov::Result<(Scope, Vec<String>)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .from_path(path)?;
    let mut assignment = vec![None; table.len()];
    let mut names: Vec<String> = Vec::new();
    for rec in reader.records() {
        let rec = rec?;
        let (Some(v), Some(g)) = (rec.get(0), rec.get(1)) else {
            return Err(Error::config(format!(
                "group file line {:?} needs two fields",
                rec.position().map(|p| p.line())
            )));
        };
        let Some(v) = table.get(v.trim()) else {
            continue;
        };
        let g = g.trim();
        let slot = match names.iter().position(|n| n == g) {
            Some(i) => i,
            None => {
                names.push(g.to_owned());
                names.len() - 1
            }
        };
        assignment[v.index()] = Some(slot as u32);
    }
    if let Some(v) = assignment.iter().position(Option::is_none) {
        return Err(Error::config(format!(
            "group file does not assign vertex {:?}",
            table.label(VertexId(v as u32))
        )));
    }
    Ok((Scope::Grouped(assignment), names))
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("tinprov: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(args: &Args) -> tinprov::Result<ExitCode> {
    let snapshot_at = parse_snapshot_at(&args.snapshot_at)?;
    if let Some(t) = args.alert_threshold {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::config("--alert-threshold must be positive"));
        }
        if !args.policy.is_proportional() {
            return Err(Error::config(
                "--alert-threshold needs a proportional policy",
            ));
        }
    }
    let scopes = [
        args.selective.is_some(),
        args.groups.is_some(),
        args.window.is_some(),
        args.budget.is_some(),
    ];
    if scopes.iter().filter(|&&s| s).count() > 1 {
        return Err(Error::config(
            "--selective, --groups, --window and --budget are mutually exclusive",
        ));
    }
    // Catch bad flag combinations before touching the input.
    let mut config = EngineConfig::new(args.policy)
        .with_paths(args.paths)
        .with_coalesce(args.coalesce)
        .with_epsilon(args.epsilon);
    if let Some(w) = args.window {
        config = config.with_scope(Scope::Window(w));
    } else if let Some(b) = &args.budget {
        config = config.with_scope(parse_budget(b)?);
    } else if args.selective.is_some() {
        config = config.with_scope(Scope::Selective(vec![VertexId(0)]));
    } else if args.groups.is_some() {
        config = config.with_scope(Scope::Grouped(Vec::new()));
    }
    config.validate()?;

    let (table, stream) = match (&args.synth, &args.input) {
        (Some(shape), _) => {
            let stream = synth(args.vertices, args.interactions, args.seed, (*shape).into())?;
            let table = numeric_table(args.vertices);
            if let Some(path) = &args.write_stream {
                tinprov::ingest::write_interactions(
                    BufWriter::new(File::create(path)?),
                    &table,
                    &stream,
                )?;
            }
            (table, stream)
        }
        (None, input) => {
            let ingested = match input {
                Some(p) if p.as_os_str() != "-" => read_interactions_file(p)?,
                _ => read_interactions(io::stdin().lock())?,
            };
            for r in &ingested.rejected {
                eprintln!("tinprov: rejected {r}");
            }
            if args.strict && !ingested.rejected.is_empty() {
                eprintln!(
                    "tinprov: {} line(s) rejected, aborting (--strict)",
                    ingested.rejected.len()
                );
                return Ok(ExitCode::FAILURE);
            }
            let (stream, outcome) = sort_check(ingested.interactions);
            if !outcome.was_ordered() {
                eprintln!(
                    "tinprov: warning: input not in time order ({} inversion(s)); sorted before replay",
                    outcome.inversions
                );
            }
            (ingested.vertices, stream)
        }
    };

    let mut group_names = Vec::new();
    if let Some(arg) = &args.selective {
        config = config.with_scope(selective_scope(arg, &table, &stream)?);
    } else if let Some(path) = &args.groups {
        let (scope, names) = group_scope(path, &table)?;
        config = config.with_scope(scope);
        group_names = names;
    }
    let mut engine = config.build()?;

    let opts = RunOptions {
        snapshot_at,
        top_n: args.top,
        alert_threshold: args.alert_threshold,
        epsilon: args.epsilon,
    };
    let output = run(engine.as_mut(), &stream, &opts);

    let labels = Labels::new(&table).with_groups(&group_names);
    for a in &output.alerts {
        eprintln!(
            "alert: interaction={} vertex={} total={} contributors={}",
            a.index,
            labels.vertex(a.vertex),
            a.total,
            a.contributors
        );
    }
    let sink: Box<dyn Write> = match &args.out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match args.format {
        Format::Csv => {
            write_csv(sink, &output.snapshots, &labels)?;
            eprint!("{}", output.report.to_text());
        }
        Format::Json => write_json(sink, &output.report, &output.snapshots, &labels)?,
    }
    Ok(ExitCode::SUCCESS)
}
