//! Windowed proportional provenance with two alternating lists per vertex.
//!
//! Both lists receive every update. After interaction number `n` (1-based),
//! if `n` is an odd multiple of `W` the odd lists of all vertices are reset to
//! `[(unknown, |B_v|)]`, and at even multiples the even lists are. Queries read
//! whichever list was reset least recently, which attributes every unit born
//! within the last `W` interactions to its true origin.

use crate::engine::ProvenanceEngine;
use crate::error::{Error, Result};
use crate::proportional::{
    apply_totals, classify, sparse_step, DustSink, SparseProvVector, UNKNOWN_SLOT,
};
use crate::types::{Interaction, Origin, ProvEntry, VertexId};

/// Which of the two lists is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Odd,
    Even,
}

#[derive(Clone, Debug)]
pub struct WindowEngine {
    window: u64,
    counter: u64,
    odd: Vec<SparseProvVector>,
    even: Vec<SparseProvVector>,
    totals: Vec<f64>,
    // interaction number of the latest reset, 0 = never
    odd_reset_at: u64,
    even_reset_at: u64,
    epsilon: f64,
    entries: usize,
}

impl WindowEngine {
    pub fn new(window: u64, epsilon: f64) -> Result<Self> {
        if window == 0 {
            return Err(Error::config("window size must be positive"));
        }
        Ok(WindowEngine {
            window,
            counter: 0,
            odd: Vec::new(),
            even: Vec::new(),
            totals: Vec::new(),
            odd_reset_at: 0,
            even_reset_at: 0,
            epsilon,
            entries: 0,
        })
    }

    pub fn window(&self) -> u64 {
        self.window
    }

    /// Interactions processed so far.
    pub fn counter(&self) -> u64 {
        self.counter
    }

    fn ensure(&mut self, bound: usize) {
        if self.totals.len() < bound {
            self.totals.resize(bound, 0.0);
            self.odd.resize(bound, SparseProvVector::new());
            self.even.resize(bound, SparseProvVector::new());
        }
    }

    pub fn step(&mut self, r: &Interaction) {
        self.ensure(r.vertex_bound());
        let (s, d) = (r.source.index(), r.dest.index());
        let transfer = classify(r.quantity, self.totals[s], self.epsilon);
        let sink = DustSink::Fold(UNKNOWN_SLOT);
        for side in [&mut self.odd, &mut self.even] {
            let before = side[s].len() + if s == d { 0 } else { side[d].len() };
            sparse_step(side, s, d, r.source.0, transfer, self.epsilon, sink, None);
            let after = side[s].len() + if s == d { 0 } else { side[d].len() };
            self.entries = self.entries + after - before;
        }
        apply_totals(&mut self.totals, s, d, r.quantity, transfer);
        self.window_step();
    }

    /// Advances the interaction counter and performs a reset when it lands
    /// on a multiple of the window.
    pub fn window_step(&mut self) -> Option<Side> {
        self.counter += 1;
        if !self.counter.is_multiple_of(self.window) {
            return None;
        }
        let side = if (self.counter / self.window) % 2 == 1 {
            Side::Odd
        } else {
            Side::Even
        };
        let lists = match side {
            Side::Odd => {
                self.odd_reset_at = self.counter;
                &mut self.odd
            }
            Side::Even => {
                self.even_reset_at = self.counter;
                &mut self.even
            }
        };
        for (list, &total) in lists.iter_mut().zip(&self.totals) {
            self.entries -= list.len();
            list.clear();
            if total > 0.0 {
                list.add_at(UNKNOWN_SLOT, total);
                self.entries += 1;
            }
        }
        Some(side)
    }

    /// The side a query would read now.
    pub fn serving_side(&self) -> Side {
        if self.odd_reset_at <= self.even_reset_at {
            Side::Odd
        } else {
            Side::Even
        }
    }

    pub fn last_reset(&self, side: Side) -> u64 {
        match side {
            Side::Odd => self.odd_reset_at,
            Side::Even => self.even_reset_at,
        }
    }

    pub fn list(&self, v: VertexId, side: Side) -> Option<&SparseProvVector> {
        match side {
            Side::Odd => self.odd.get(v.index()),
            Side::Even => self.even.get(v.index()),
        }
    }

    /// Provenance of `v` from the least recently reset list.
    pub fn window_query(&self, v: VertexId) -> SparseProvVector {
        self.list(v, self.serving_side())
            .cloned()
            .unwrap_or_default()
    }
}

impl ProvenanceEngine for WindowEngine {
    fn process(&mut self, r: &Interaction) {
        self.step(r);
    }

    fn total(&self, v: VertexId) -> f64 {
        self.totals.get(v.index()).copied().unwrap_or(0.0)
    }

    fn snapshot(&self, v: VertexId) -> Vec<ProvEntry> {
        self.window_query(v)
            .entries()
            .iter()
            .map(|&(slot, q)| {
                let origin = if slot == UNKNOWN_SLOT {
                    Origin::Unknown
                } else {
                    Origin::Vertex(VertexId(slot))
                };
                ProvEntry::new(origin, q)
            })
            .collect()
    }

    fn vertex_count(&self) -> usize {
        self.totals.len()
    }

    fn entry_count(&self) -> usize {
        self.entries
    }

    fn name(&self) -> &'static str {
        "prop-window"
    }
}
