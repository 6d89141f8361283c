//! Provenance-free propagation: buffer totals only.
//!
//! For each interaction the source relays `min(r.q, |B_s|)` from its buffer;
//! whatever is missing is newborn at the source. The destination always grows
//! by the full `r.q`.

use crate::engine::ProvenanceEngine;
use crate::types::{Interaction, ProvEntry, VertexId};

/// Effect of one interaction on the two buffers it touches.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Step {
    pub source: VertexId,
    pub dest: VertexId,
    /// Quantity taken from the source buffer.
    pub relayed: f64,
    /// Quantity generated at the source, `r.q - relayed`.
    pub newborn: f64,
    pub source_total: f64,
    pub dest_total: f64,
}

#[derive(Clone, Debug, Default)]
pub struct NoProvEngine {
    totals: Vec<f64>,
    generated: Vec<f64>,
    newborn_so_far: f64,
}

impl NoProvEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(n: usize) -> Self {
        NoProvEngine {
            totals: vec![0.0; n],
            generated: vec![0.0; n],
            newborn_so_far: 0.0,
        }
    }

    fn ensure(&mut self, bound: usize) {
        if self.totals.len() < bound {
            self.totals.resize(bound, 0.0);
            self.generated.resize(bound, 0.0);
        }
    }

    pub fn step(&mut self, r: &Interaction) -> Step {
        self.ensure(r.vertex_bound());
        let (s, d) = (r.source.index(), r.dest.index());
        let relayed = r.quantity.min(self.totals[s]);
        let newborn = r.quantity - relayed;
        self.totals[s] -= relayed;
        self.totals[d] += r.quantity;
        self.generated[s] += newborn;
        self.newborn_so_far += newborn;
        Step {
            source: r.source,
            dest: r.dest,
            relayed,
            newborn,
            source_total: self.totals[s],
            dest_total: self.totals[d],
        }
    }

    pub fn totals(&self) -> &[f64] {
        &self.totals
    }

    /// Quantity generated so far by each vertex.
    pub fn generated(&self) -> &[f64] {
        &self.generated
    }

    /// Cumulative newborn mass over the whole stream so far.
    pub fn newborn_so_far(&self) -> f64 {
        self.newborn_so_far
    }
}

impl ProvenanceEngine for NoProvEngine {
    fn process(&mut self, r: &Interaction) {
        self.step(r);
    }

    fn total(&self, v: VertexId) -> f64 {
        self.totals.get(v.index()).copied().unwrap_or(0.0)
    }

    fn snapshot(&self, _v: VertexId) -> Vec<ProvEntry> {
        Vec::new()
    }

    fn vertex_count(&self) -> usize {
        self.totals.len()
    }

    fn entry_count(&self) -> usize {
        0
    }

    fn name(&self) -> &'static str {
        "noprov"
    }
}

/// Per-interaction record of a whole replay.
#[derive(Clone, Debug, Default)]
pub struct Trace {
    pub steps: Vec<Step>,
    pub final_totals: Vec<f64>,
}

impl Trace {
    /// Totals of every vertex right after step `i` (0-based), reconstructed
    /// from the recorded step effects.
    pub fn totals_after(&self, i: usize) -> Vec<f64> {
        let mut totals = vec![0.0; self.final_totals.len()];
        for step in &self.steps[..=i] {
            totals[step.source.index()] = step.source_total;
            totals[step.dest.index()] = step.dest_total;
        }
        totals
    }
}

/// Replays a time-ordered stream and records every step.
pub fn propagate_noprov(stream: &[Interaction]) -> Trace {
    let mut engine = NoProvEngine::new();
    let steps = stream.iter().map(|r| engine.step(r)).collect();
    Trace {
        steps,
        final_totals: engine.totals,
    }
}

/// Total quantity generated by each vertex over a time-ordered stream.
pub fn generated_totals(stream: &[Interaction], n_vertices: usize) -> Vec<f64> {
    let mut engine = NoProvEngine::with_vertices(n_vertices);
    for r in stream {
        engine.step(r);
    }
    engine.generated
}

/// Indices of the `k` vertices generating the most quantity, largest first.
/// Ties go to the smaller index.
pub fn top_generators(stream: &[Interaction], n_vertices: usize, k: usize) -> Vec<VertexId> {
    let generated = generated_totals(stream, n_vertices);
    let mut order: Vec<usize> = (0..generated.len()).collect();
    order.sort_by(|&a, &b| generated[b].total_cmp(&generated[a]).then(a.cmp(&b)));
    order
        .into_iter()
        .take(k)
        .map(|i| VertexId(i as u32))
        .collect()
}
