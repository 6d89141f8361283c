//! Shared relay mechanics for policies that keep buffers as collections of
//! discrete quantity elements (parcels).
//!
//! For an interaction `r` the residue starts at `r.q`. While it is positive and
//! the source buffer is non-empty, the policy's selected parcel is either moved
//! whole or split, the moved piece carrying the same origin and birth time.
//! Whatever residue is left after the source empties is newborn at `r.s` at
//! time `r.t`. Moved parcels reach the destination in selection order,
//! followed by the newborn one.

use crate::engine::ProvenanceEngine;
use crate::paths::{PathRef, PathStore};
use crate::types::{Interaction, ProvEntry, VertexId};

/// A quantity element held in a buffer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Parcel {
    pub origin: VertexId,
    pub birth_time: f64,
    pub quantity: f64,
    pub path: Option<PathRef>,
}

/// Buffer organisation for one selection policy.
pub trait ParcelBuffer: Send {
    type Mode: Copy + Send;

    fn with_mode(mode: Self::Mode) -> Self;

    /// Inserts a parcel. `seq` grows monotonically across the engine.
    /// Returns false when the parcel was merged into an existing one.
    fn push(&mut self, parcel: Parcel, seq: u64) -> bool;

    /// The parcel the policy would select next.
    fn selected_mut(&mut self) -> Option<&mut Parcel>;

    fn pop_selected(&mut self) -> Option<Parcel>;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Parcels in the buffer's canonical order.
    fn parcels(&self) -> Vec<Parcel>;

    /// Whether snapshots should expose birth times.
    fn reports_birth_time() -> bool;

    fn mode_name(mode: Self::Mode) -> &'static str;
}

/// Engine generic over the buffer organisation.
pub struct ElementEngine<B: ParcelBuffer> {
    mode: B::Mode,
    buffers: Vec<B>,
    totals: Vec<f64>,
    paths: Option<PathStore>,
    epsilon: f64,
    seq: u64,
    parcel_count: usize,
    moved: Vec<Parcel>,
    last_newborn: Option<Parcel>,
}

impl<B: ParcelBuffer> ElementEngine<B> {
    pub fn new(mode: B::Mode, track_paths: bool, epsilon: f64) -> Self {
        ElementEngine {
            mode,
            buffers: Vec::new(),
            totals: Vec::new(),
            paths: track_paths.then(PathStore::new),
            epsilon,
            seq: 0,
            parcel_count: 0,
            moved: Vec::new(),
            last_newborn: None,
        }
    }

    fn ensure(&mut self, bound: usize) {
        while self.buffers.len() < bound {
            self.buffers.push(B::with_mode(self.mode));
            self.totals.push(0.0);
        }
    }

    pub fn step(&mut self, r: &Interaction) {
        self.ensure(r.vertex_bound());
        let eps = self.epsilon;
        let (s, d) = (r.source.index(), r.dest.index());

        self.moved.clear();
        let mut resq = r.quantity;
        {
            let src = &mut self.buffers[s];
            while resq > eps {
                let Some(top) = src.selected_mut() else { break };
                if top.quantity > resq && top.quantity - resq > eps {
                    let mut piece = *top;
                    piece.quantity = resq;
                    top.quantity -= resq;
                    self.moved.push(piece);
                    resq = 0.0;
                } else {
                    let whole = src.pop_selected().expect("selected parcel vanished");
                    resq -= whole.quantity;
                    self.moved.push(whole);
                    self.parcel_count -= 1;
                }
            }
            if src.is_empty() {
                self.totals[s] = 0.0;
            } else {
                let relayed: f64 = self.moved.iter().map(|p| p.quantity).sum();
                self.totals[s] = (self.totals[s] - relayed).max(0.0);
            }
        }

        self.last_newborn = (resq > eps).then(|| Parcel {
            origin: r.source,
            birth_time: r.time,
            quantity: resq,
            path: self.paths.as_mut().map(|store| store.on_birth(r.source)),
        });

        let mut arrived = 0.0;
        for i in 0..self.moved.len() {
            let mut p = self.moved[i];
            if let (Some(store), Some(path)) = (self.paths.as_mut(), p.path) {
                p.path = Some(store.on_transfer(path, r.source));
                self.moved[i].path = p.path;
            }
            arrived += p.quantity;
            self.seq += 1;
            if self.buffers[d].push(p, self.seq) {
                self.parcel_count += 1;
            }
        }
        if let Some(newborn) = self.last_newborn {
            arrived += newborn.quantity;
            self.seq += 1;
            if self.buffers[d].push(newborn, self.seq) {
                self.parcel_count += 1;
            }
        }
        self.totals[d] += arrived;
    }

    /// Parcels that left the source in the last interaction, in selection
    /// order, with their paths already extended.
    pub fn last_selection(&self) -> &[Parcel] {
        &self.moved
    }

    /// Parcel generated by the last interaction, if any.
    pub fn last_newborn(&self) -> Option<&Parcel> {
        self.last_newborn.as_ref()
    }

    pub fn buffer(&self, v: VertexId) -> Option<&B> {
        self.buffers.get(v.index())
    }

    pub fn parcels(&self, v: VertexId) -> Vec<Parcel> {
        self.buffer(v).map(B::parcels).unwrap_or_default()
    }

    pub fn path_store(&self) -> Option<&PathStore> {
        self.paths.as_ref()
    }

    pub fn resolve_path(&self, parcel: &Parcel) -> Option<Vec<VertexId>> {
        Some(self.paths.as_ref()?.resolve(parcel.path?))
    }

    /// Mean path length over all resident parcels, if paths are tracked.
    pub fn average_path_len(&self) -> Option<f64> {
        let store = self.paths.as_ref()?;
        let (mut sum, mut n) = (0usize, 0usize);
        for b in &self.buffers {
            for p in b.parcels() {
                sum += store.len_of(p.path?);
                n += 1;
            }
        }
        Some(if n == 0 { 0.0 } else { sum as f64 / n as f64 })
    }

    fn entry(&self, p: &Parcel) -> ProvEntry {
        ProvEntry {
            origin: p.origin.into(),
            quantity: p.quantity,
            birth_time: B::reports_birth_time().then_some(p.birth_time),
            path: self.resolve_path(p),
        }
    }
}

impl<B: ParcelBuffer> ProvenanceEngine for ElementEngine<B> {
    fn process(&mut self, r: &Interaction) {
        self.step(r);
    }

    fn total(&self, v: VertexId) -> f64 {
        self.totals.get(v.index()).copied().unwrap_or(0.0)
    }

    fn snapshot(&self, v: VertexId) -> Vec<ProvEntry> {
        self.parcels(v).iter().map(|p| self.entry(p)).collect()
    }

    fn vertex_count(&self) -> usize {
        self.buffers.len()
    }

    fn entry_count(&self) -> usize {
        self.parcel_count
    }

    fn average_path_len(&self) -> Option<f64> {
        ElementEngine::average_path_len(self)
    }

    fn path_memory_bytes(&self) -> usize {
        self.paths.as_ref().map_or(0, PathStore::memory_bytes)
    }

    fn name(&self) -> &'static str {
        B::mode_name(self.mode)
    }
}
