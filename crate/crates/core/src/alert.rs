//! Flags buffers that hold a large quantity none of which came from the
//! vertices that actually sent to them.
//!
//! In-neighbors are accumulated as the stream is replayed. With scoped
//! tracking an in-neighbor counts through its slot, so an untracked sender
//! matches the "rest" entry and a grouped sender matches its whole group.
//! Unknown mass never matches.

use std::collections::HashSet;

use serde::Serialize;

use crate::engine::ProvenanceEngine;
use crate::types::{Interaction, Origin, VertexId};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Alert {
    /// Zero-based position of the triggering interaction.
    pub index: usize,
    pub vertex: VertexId,
    pub total: f64,
    /// Distinct origins with mass above epsilon in the buffer.
    pub contributors: usize,
}

#[derive(Clone, Debug)]
pub struct AlertScanner {
    threshold: f64,
    epsilon: f64,
    in_neighbors: Vec<HashSet<VertexId>>,
}

impl AlertScanner {
    pub fn new(threshold: f64, epsilon: f64) -> Self {
        AlertScanner {
            threshold,
            epsilon,
            in_neighbors: Vec::new(),
        }
    }

    pub fn in_neighbors(&self, v: VertexId) -> Option<&HashSet<VertexId>> {
        self.in_neighbors.get(v.index())
    }

    /// Records `r` and checks its destination. Call after the engine has
    /// processed `r`.
    pub fn observe(
        &mut self,
        index: usize,
        r: &Interaction,
        engine: &dyn ProvenanceEngine,
    ) -> Option<Alert> {
        let d = r.dest.index();
        if self.in_neighbors.len() <= d {
            self.in_neighbors.resize_with(d + 1, HashSet::new);
        }
        self.in_neighbors[d].insert(r.source);

        let total = engine.total(r.dest);
        if total <= self.threshold {
            return None;
        }
        let neighbor_origins: HashSet<Origin> = self.in_neighbors[d]
            .iter()
            .map(|&u| engine.origin_of(u))
            .collect();
        let snapshot = engine.snapshot(r.dest);
        let from_neighbors: f64 = snapshot
            .iter()
            .filter(|e| e.origin != Origin::Unknown && neighbor_origins.contains(&e.origin))
            .map(|e| e.quantity)
            .sum();
        if from_neighbors > self.epsilon {
            return None;
        }
        let contributors = snapshot
            .iter()
            .filter(|e| e.quantity > self.epsilon)
            .map(|e| e.origin)
            .collect::<HashSet<_>>()
            .len();
        Some(Alert {
            index,
            vertex: r.dest,
            total,
            contributors,
        })
    }
}

/// Replays `stream` through `engine`, collecting alerts for buffers above
/// `threshold`.
pub fn alert_scan(
    engine: &mut dyn ProvenanceEngine,
    stream: &[Interaction],
    threshold: f64,
    epsilon: f64,
) -> Vec<Alert> {
    let mut scanner = AlertScanner::new(threshold, epsilon);
    let mut alerts = Vec::new();
    for (i, r) in stream.iter().enumerate() {
        engine.process(r);
        alerts.extend(scanner.observe(i, r, engine));
    }
    alerts
}
