//! Replay driver, run statistics and snapshot writers.

use std::io::Write;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::alert::{Alert, AlertScanner};
use crate::engine::ProvenanceEngine;
use crate::error::Result;
use crate::ingest::VertexTable;
use crate::types::{Interaction, Origin, ProvEntry, VertexId};

/// When snapshots are taken during a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SnapshotAt {
    #[default]
    End,
    /// After every `k`-th interaction, and at the end.
    EveryK(u64),
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub snapshot_at: SnapshotAt,
    /// Keep only the `n` fullest buffers in each snapshot.
    pub top_n: Option<usize>,
    pub alert_threshold: Option<f64>,
    pub epsilon: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexSnapshot {
    pub vertex: VertexId,
    pub total: f64,
    pub entries: Vec<ProvEntry>,
}

/// All non-empty buffers after `after` interactions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SnapshotSet {
    pub after: u64,
    pub vertices: Vec<VertexSnapshot>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShrinkStats {
    /// Mean shrink count over vertices whose buffer is non-empty.
    pub avg_shrinks_per_nonempty: f64,
    /// Share of all seen vertices shrunk at least once, in percent.
    pub pct_shrunk_once: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub policy: String,
    pub interactions: u64,
    pub wall_time_secs: f64,
    pub vertices: usize,
    pub nonempty_buffers: usize,
    pub total_quantity: f64,
    pub peak_entries: usize,
    pub final_entries: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shrink: Option<ShrinkStats>,
    pub dropped_dust: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub average_path_len: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alerts: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub report: RunReport,
    pub snapshots: Vec<SnapshotSet>,
    pub alerts: Vec<Alert>,
}

pub fn shrink_stats(counts: &[u32], totals: impl Fn(VertexId) -> f64) -> ShrinkStats {
    let (mut nonempty, mut shrinks, mut touched) = (0usize, 0u64, 0usize);
    for (v, &c) in counts.iter().enumerate() {
        if totals(VertexId(v as u32)) > 0.0 {
            nonempty += 1;
            shrinks += c as u64;
        }
        if c > 0 {
            touched += 1;
        }
    }
    ShrinkStats {
        avg_shrinks_per_nonempty: if nonempty == 0 {
            0.0
        } else {
            shrinks as f64 / nonempty as f64
        },
        pct_shrunk_once: if counts.is_empty() {
            0.0
        } else {
            100.0 * touched as f64 / counts.len() as f64
        },
    }
}

/// Snapshot of every non-empty buffer, fullest first when `top_n` is set.
pub fn capture(engine: &dyn ProvenanceEngine, after: u64, top_n: Option<usize>) -> SnapshotSet {
    let mut vertices: Vec<VertexSnapshot> = (0..engine.vertex_count() as u32)
        .map(VertexId)
        .filter(|&v| engine.total(v) > 0.0)
        .map(|v| VertexSnapshot {
            vertex: v,
            total: engine.total(v),
            entries: engine.snapshot(v),
        })
        .collect();
    if let Some(n) = top_n {
        vertices.sort_by(|a, b| b.total.total_cmp(&a.total).then(a.vertex.cmp(&b.vertex)));
        vertices.truncate(n);
    }
    SnapshotSet { after, vertices }
}

/// Replays `stream`, tracking peak state size, periodic snapshots and alerts.
pub fn run(
    engine: &mut dyn ProvenanceEngine,
    stream: &[Interaction],
    opts: &RunOptions,
) -> RunOutput {
    let mut scanner = opts
        .alert_threshold
        .map(|t| AlertScanner::new(t, opts.epsilon));
    let mut alerts = Vec::new();
    let mut snapshots = Vec::new();
    let mut peak = engine.entry_count();
    let mut elapsed = Duration::ZERO;
    for (i, r) in stream.iter().enumerate() {
        let start = Instant::now();
        engine.process(r);
        elapsed += start.elapsed();
        peak = peak.max(engine.entry_count());
        if let Some(s) = scanner.as_mut() {
            alerts.extend(s.observe(i, r, engine));
        }
        let done = i as u64 + 1;
        if let SnapshotAt::EveryK(k) = opts.snapshot_at {
            if done.is_multiple_of(k) && done != stream.len() as u64 {
                snapshots.push(capture(engine, done, opts.top_n));
            }
        }
    }
    let last = capture(engine, stream.len() as u64, opts.top_n);
    let n = engine.vertex_count();
    let totals: Vec<f64> = (0..n as u32).map(|v| engine.total(VertexId(v))).collect();
    let report = RunReport {
        policy: engine.name().to_owned(),
        interactions: stream.len() as u64,
        wall_time_secs: elapsed.as_secs_f64(),
        vertices: n,
        nonempty_buffers: totals.iter().filter(|&&t| t > 0.0).count(),
        total_quantity: totals.iter().fold(0.0, |a, t| a + t),
        peak_entries: peak,
        final_entries: engine.entry_count(),
        shrink: engine
            .shrink_counts()
            .map(|c| shrink_stats(c, |v| totals.get(v.index()).copied().unwrap_or(0.0))),
        dropped_dust: engine.dropped_mass(),
        average_path_len: engine.average_path_len(),
        alerts: scanner.map(|_| alerts.len()),
    };
    snapshots.push(last);
    RunOutput {
        report,
        snapshots,
        alerts,
    }
}

impl RunReport {
    /// `key: value` lines.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut line = |k: &str, v: String| {
            s.push_str(k);
            s.push_str(": ");
            s.push_str(&v);
            s.push('\n');
        };
        line("policy", self.policy.clone());
        line("interactions", self.interactions.to_string());
        line("wall_time_secs", format!("{:.6}", self.wall_time_secs));
        line("vertices", self.vertices.to_string());
        line("nonempty_buffers", self.nonempty_buffers.to_string());
        line("total_quantity", self.total_quantity.to_string());
        line("peak_entries", self.peak_entries.to_string());
        line("final_entries", self.final_entries.to_string());
        if let Some(sh) = self.shrink {
            line(
                "avg_shrinks_per_nonempty",
                sh.avg_shrinks_per_nonempty.to_string(),
            );
            line("pct_shrunk_once", sh.pct_shrunk_once.to_string());
        }
        line("dropped_dust", self.dropped_dust.to_string());
        if let Some(p) = self.average_path_len {
            line("average_path_len", p.to_string());
        }
        if let Some(a) = self.alerts {
            line("alerts", a.to_string());
        }
        s
    }
}

/// Renders vertex and origin ids back to input labels.
#[derive(Clone, Copy, Debug)]
pub struct Labels<'a> {
    pub vertices: &'a VertexTable,
    pub groups: Option<&'a [String]>,
}

impl<'a> Labels<'a> {
    pub fn new(vertices: &'a VertexTable) -> Self {
        Labels {
            vertices,
            groups: None,
        }
    }

    pub fn with_groups(mut self, groups: &'a [String]) -> Self {
        self.groups = Some(groups);
        self
    }

    pub fn vertex(&self, v: VertexId) -> &str {
        self.vertices.label(v)
    }

    pub fn origin(&self, o: Origin) -> String {
        match o {
            Origin::Vertex(v) => self.vertex(v).to_owned(),
            Origin::Group(g) => match self.groups.and_then(|names| names.get(g as usize)) {
                Some(name) => name.clone(),
                None => format!("group:{g}"),
            },
            Origin::Rest => "*".to_owned(),
            Origin::Unknown => "?".to_owned(),
        }
    }

    pub fn path(&self, path: &[VertexId]) -> String {
        path.iter()
            .map(|&v| self.vertex(v))
            .collect::<Vec<_>>()
            .join(">")
    }
}

/// Writes snapshots as `vertex,origin,quantity[,birth_time][,path]`.
///
/// Optional columns appear when any entry carries them. With more than one
/// snapshot set an `after` column is prepended.
pub fn write_csv<W: Write>(out: W, sets: &[SnapshotSet], labels: &Labels) -> Result<()> {
    let entries = || {
        sets.iter()
            .flat_map(|s| s.vertices.iter())
            .flat_map(|v| v.entries.iter())
    };
    let with_birth = entries().any(|e| e.birth_time.is_some());
    let with_path = entries().any(|e| e.path.is_some());
    let with_after = sets.len() > 1;

    let mut w = csv::Writer::from_writer(out);
    let mut header = Vec::new();
    if with_after {
        header.push("after");
    }
    header.extend(["vertex", "origin", "quantity"]);
    if with_birth {
        header.push("birth_time");
    }
    if with_path {
        header.push("path");
    }
    w.write_record(&header)?;
    for set in sets {
        for vs in &set.vertices {
            for e in &vs.entries {
                let mut row = Vec::with_capacity(header.len());
                if with_after {
                    row.push(set.after.to_string());
                }
                row.push(labels.vertex(vs.vertex).to_owned());
                row.push(labels.origin(e.origin));
                row.push(e.quantity.to_string());
                if with_birth {
                    row.push(e.birth_time.map(|t| t.to_string()).unwrap_or_default());
                }
                if with_path {
                    row.push(
                        e.path
                            .as_deref()
                            .map(|p| labels.path(p))
                            .unwrap_or_default(),
                    );
                }
                w.write_record(&row)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JsonEntry {
    origin: String,
    quantity: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    birth_time: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<Vec<String>>,
}

#[derive(Serialize)]
struct JsonVertex {
    vertex: String,
    total: f64,
    entries: Vec<JsonEntry>,
}

#[derive(Serialize)]
struct JsonSet {
    after: u64,
    vertices: Vec<JsonVertex>,
}

#[derive(Serialize)]
struct JsonDoc<'r> {
    report: &'r RunReport,
    snapshots: Vec<JsonSet>,
}

/// Writes the report and snapshots as one JSON document.
pub fn write_json<W: Write>(
    out: W,
    report: &RunReport,
    sets: &[SnapshotSet],
    labels: &Labels,
) -> Result<()> {
    let snapshots =
        sets.iter()
            .map(|s| JsonSet {
                after: s.after,
                vertices: s
                    .vertices
                    .iter()
                    .map(|vs| JsonVertex {
                        vertex: labels.vertex(vs.vertex).to_owned(),
                        total: vs.total,
                        entries: vs
                            .entries
                            .iter()
                            .map(|e| JsonEntry {
                                origin: labels.origin(e.origin),
                                quantity: e.quantity,
                                birth_time: e.birth_time,
                                path: e.path.as_ref().map(|p| {
                                    p.iter().map(|&v| labels.vertex(v).to_owned()).collect()
                                }),
                            })
                            .collect(),
                    })
                    .collect(),
            })
            .collect();
    serde_json::to_writer_pretty(out, &JsonDoc { report, snapshots })?;
    Ok(())
}
