//! Proportional selection.
//!
//! Every vertex carries a provenance vector mapping origins to amounts. When
//! `r.q` covers the whole source buffer the source vector is moved to the
//! destination and the shortfall is credited to `r.s` as newborn. Otherwise a
//! fraction `r.q / |B_s|` of every component moves.

pub mod dense;
pub mod sparse;

use crate::engine::ProvenanceEngine;
use crate::scalable::budget::{budget_shrink, Budget};
use crate::scalable::scope::ScopeMap;
use crate::types::{Interaction, Origin, ProvEntry, VertexId};

pub use dense::DenseProvVector;
pub use sparse::{sparse_merge, DustSink, Merged, SparseProvVector, UNKNOWN_SLOT};

/// How an interaction moves provenance mass.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Transfer {
    /// Everything in the source moves, plus `newborn` generated at the source.
    Drain { newborn: f64 },
    /// Fraction `alpha` of every source component moves.
    Fraction { alpha: f64 },
}

/// Case split on `r.q` against the source total. Near-equal cases (within
/// `eps`) drain the source so the fraction never exceeds one.
pub fn classify(quantity: f64, source_total: f64, eps: f64) -> Transfer {
    if quantity >= source_total - eps {
        Transfer::Drain {
            newborn: (quantity - source_total).max(0.0),
        }
    } else {
        Transfer::Fraction {
            alpha: quantity / source_total,
        }
    }
}

/// Updates buffer totals for one interaction the way the vectors are updated.
pub(crate) fn apply_totals(
    totals: &mut [f64],
    s: usize,
    d: usize,
    quantity: f64,
    transfer: Transfer,
) {
    match transfer {
        Transfer::Drain { .. } => {
            let moved = totals[s];
            totals[s] = 0.0;
            totals[d] += moved.max(quantity);
        }
        Transfer::Fraction { .. } => {
            totals[s] -= quantity;
            totals[d] += quantity;
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct StepEffect {
    pub dropped_src: f64,
    pub dropped_dst: f64,
    pub shrunk: bool,
}

/// Applies one transfer to a set of sparse lists.
#[allow(clippy::too_many_arguments)]
pub(crate) fn sparse_step(
    vecs: &mut [SparseProvVector],
    s: usize,
    d: usize,
    newborn_slot: u32,
    transfer: Transfer,
    eps: f64,
    sink: DustSink,
    budget: Option<&Budget>,
) -> StepEffect {
    let mut effect = StepEffect::default();
    let incoming = if s == d {
        // withdraw then deposit into the same list: only newborn mass changes it
        match transfer {
            Transfer::Drain { newborn } if newborn > 0.0 => {
                SparseProvVector::from_sorted(vec![(newborn_slot, newborn)])
            }
            _ => return effect,
        }
    } else {
        match transfer {
            Transfer::Drain { newborn } => {
                let mut moved = std::mem::take(&mut vecs[s]);
                if newborn > 0.0 {
                    moved.add_at(newborn_slot, newborn);
                }
                moved
            }
            Transfer::Fraction { alpha } => {
                let src = &mut vecs[s];
                let mut slice = src.scaled(alpha);
                src.remove_fraction(alpha);
                effect.dropped_src = src.sweep_dust(eps, sink);
                effect.dropped_dst = slice.sweep_dust(eps, sink);
                slice
            }
        }
    };
    let dst = &vecs[d];
    let (vector, dropped, shrunk) = match budget {
        Some(b) => {
            let m = budget_shrink(dst, &incoming, 1.0, b, eps);
            (m.vector, m.dropped, m.shrunk)
        }
        None => {
            let m = sparse_merge(dst, &incoming, 1.0, eps, sink);
            (m.vector, m.dropped, false)
        }
    };
    vecs[d] = vector;
    effect.dropped_dst += dropped;
    effect.shrunk = shrunk;
    effect
}

fn dense_step(
    vecs: &mut [DenseProvVector],
    s: usize,
    d: usize,
    newborn_slot: usize,
    transfer: Transfer,
    eps: f64,
) {
    if s == d {
        if let Transfer::Drain { newborn } = transfer {
            if newborn > 0.0 {
                vecs[d].add_at(newborn_slot, newborn);
            }
        }
        return;
    }
    let mut src = std::mem::take(&mut vecs[s]);
    let dst = &mut vecs[d];
    match transfer {
        Transfer::Drain { newborn } => {
            dst.add_scaled(&src, 1.0);
            if newborn > 0.0 {
                dst.add_at(newborn_slot, newborn);
            }
            src.clear();
        }
        Transfer::Fraction { alpha } => {
            dst.add_scaled(&src, alpha);
            src.remove_fraction(alpha);
            src.clamp(eps);
        }
    }
    vecs[s] = src;
}

/// Storage choice for provenance vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    Dense,
    Sparse,
}

#[derive(Clone, Debug)]
enum Vectors {
    Dense(Vec<DenseProvVector>),
    Sparse(Vec<SparseProvVector>),
}

/// Proportional engine over dense or sparse vectors, optionally with a
/// selective/grouped origin scope and a per-vertex list budget.
#[derive(Clone, Debug)]
pub struct ProportionalEngine {
    scope: ScopeMap,
    vectors: Vectors,
    totals: Vec<f64>,
    epsilon: f64,
    budget: Option<Budget>,
    sink: DustSink,
    dropped: Vec<f64>,
    shrinks: Vec<u32>,
    entries: usize,
}

impl ProportionalEngine {
    pub fn new(repr: Representation, scope: ScopeMap, epsilon: f64) -> Self {
        let sink = match scope.rest_slot() {
            Some(rest) => DustSink::Fold(rest),
            None => DustSink::Drop,
        };
        ProportionalEngine {
            scope,
            vectors: match repr {
                Representation::Dense => Vectors::Dense(Vec::new()),
                Representation::Sparse => Vectors::Sparse(Vec::new()),
            },
            totals: Vec::new(),
            epsilon,
            budget: None,
            sink,
            dropped: Vec::new(),
            shrinks: Vec::new(),
            entries: 0,
        }
    }

    pub fn dense(epsilon: f64) -> Self {
        Self::new(Representation::Dense, ScopeMap::Identity, epsilon)
    }

    pub fn sparse(epsilon: f64) -> Self {
        Self::new(Representation::Sparse, ScopeMap::Identity, epsilon)
    }

    /// Sparse engine whose lists are capped by `budget`. Evicted and dust
    /// mass is credited to the unknown origin.
    pub fn budgeted(budget: Budget, epsilon: f64) -> Self {
        let mut e = Self::sparse(epsilon);
        e.budget = Some(budget);
        e.sink = DustSink::Fold(UNKNOWN_SLOT);
        e
    }

    pub fn representation(&self) -> Representation {
        match self.vectors {
            Vectors::Dense(_) => Representation::Dense,
            Vectors::Sparse(_) => Representation::Sparse,
        }
    }

    pub fn scope(&self) -> &ScopeMap {
        &self.scope
    }

    pub fn budget(&self) -> Option<&Budget> {
        self.budget.as_ref()
    }

    fn ensure(&mut self, bound: usize) {
        if self.totals.len() >= bound {
            return;
        }
        let width = self.scope.width();
        self.totals.resize(bound, 0.0);
        self.dropped.resize(bound, 0.0);
        self.shrinks.resize(bound, 0);
        match &mut self.vectors {
            Vectors::Dense(v) => {
                // fixed-width scopes allocate up front, identity grows lazily
                let fresh = width.map(DenseProvVector::with_len).unwrap_or_default();
                self.entries += width.unwrap_or(0) * (bound - v.len());
                v.resize(bound, fresh);
            }
            Vectors::Sparse(v) => v.resize(bound, SparseProvVector::new()),
        }
    }

    pub fn step(&mut self, r: &Interaction) -> Transfer {
        self.ensure(r.vertex_bound());
        let (s, d) = (r.source.index(), r.dest.index());
        let transfer = classify(r.quantity, self.totals[s], self.epsilon);
        let slot = self.scope.apply(r).newborn_slot;
        match &mut self.vectors {
            Vectors::Dense(v) => {
                let before = v[s].len() + v[d].len();
                dense_step(v, s, d, slot as usize, transfer, self.epsilon);
                let after = v[s].len() + v[d].len();
                self.entries += after - before;
            }
            Vectors::Sparse(v) => {
                let before = v[s].len() + if s == d { 0 } else { v[d].len() };
                let effect = sparse_step(
                    v,
                    s,
                    d,
                    slot,
                    transfer,
                    self.epsilon,
                    self.sink,
                    self.budget.as_ref(),
                );
                let after = v[s].len() + if s == d { 0 } else { v[d].len() };
                self.entries = self.entries + after - before;
                self.dropped[s] += effect.dropped_src;
                self.dropped[d] += effect.dropped_dst;
                if effect.shrunk {
                    self.shrinks[d] += 1;
                }
            }
        }
        apply_totals(&mut self.totals, s, d, r.quantity, transfer);
        transfer
    }

    /// Amount in `v`'s buffer credited to `slot`.
    pub fn amount(&self, v: VertexId, slot: u32) -> f64 {
        match &self.vectors {
            Vectors::Dense(vs) => vs.get(v.index()).map_or(0.0, |x| x.get(slot as usize)),
            Vectors::Sparse(vs) => vs.get(v.index()).map_or(0.0, |x| x.get(slot)),
        }
    }

    /// Nonzero `(slot, amount)` components of `v`'s vector.
    pub fn components(&self, v: VertexId) -> Vec<(u32, f64)> {
        match &self.vectors {
            Vectors::Dense(vs) => vs
                .get(v.index())
                .map(|x| x.nonzero().map(|(i, q)| (i as u32, q)).collect())
                .unwrap_or_default(),
            Vectors::Sparse(vs) => vs
                .get(v.index())
                .map(|x| x.entries().to_vec())
                .unwrap_or_default(),
        }
    }

    /// Vector of `v` expanded to `len` slots.
    pub fn dense_vector(&self, v: VertexId, len: usize) -> Vec<f64> {
        let mut out = vec![0.0; len];
        for (slot, q) in self.components(v) {
            if (slot as usize) < len {
                out[slot as usize] += q;
            }
        }
        out
    }

    pub fn sparse_list(&self, v: VertexId) -> Option<&SparseProvVector> {
        match &self.vectors {
            Vectors::Sparse(vs) => vs.get(v.index()),
            Vectors::Dense(_) => None,
        }
    }

    pub fn list_len(&self, v: VertexId) -> usize {
        match &self.vectors {
            Vectors::Sparse(vs) => vs.get(v.index()).map_or(0, SparseProvVector::len),
            Vectors::Dense(vs) => vs.get(v.index()).map_or(0, |x| x.nonzero().count()),
        }
    }

    /// Dust mass removed from each vertex's lists so far.
    pub fn dropped(&self) -> &[f64] {
        &self.dropped
    }

    pub fn totals(&self) -> &[f64] {
        &self.totals
    }
}

impl ProvenanceEngine for ProportionalEngine {
    fn process(&mut self, r: &Interaction) {
        self.step(r);
    }

    fn total(&self, v: VertexId) -> f64 {
        self.totals.get(v.index()).copied().unwrap_or(0.0)
    }

    fn snapshot(&self, v: VertexId) -> Vec<ProvEntry> {
        self.components(v)
            .into_iter()
            .map(|(slot, q)| ProvEntry::new(self.scope.origin(slot), q))
            .collect()
    }

    fn vertex_count(&self) -> usize {
        self.totals.len()
    }

    fn entry_count(&self) -> usize {
        self.entries
    }

    fn origin_of(&self, v: VertexId) -> Origin {
        self.scope.origin_of(v)
    }

    fn shrink_counts(&self) -> Option<&[u32]> {
        self.budget.as_ref().map(|_| self.shrinks.as_slice())
    }

    fn dropped_mass(&self) -> f64 {
        self.dropped.iter().sum()
    }

    fn name(&self) -> &'static str {
        match (self.representation(), self.budget.is_some()) {
            (Representation::Dense, _) => "prop-dense",
            (Representation::Sparse, false) => "prop-sparse",
            (Representation::Sparse, true) => "prop-budget",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn case_split_boundary() {
        assert_eq!(classify(3.0, 3.0, 1e-9), Transfer::Drain { newborn: 0.0 });
        assert_eq!(classify(5.0, 3.0, 1e-9), Transfer::Drain { newborn: 2.0 });
        assert_eq!(
            classify(3.0 - 1e-12, 3.0, 1e-9),
            Transfer::Drain { newborn: 0.0 }
        );
        assert_eq!(classify(1.5, 3.0, 1e-9), Transfer::Fraction { alpha: 0.5 });
    }

    #[test]
    fn exact_drain_zeroes_source_without_newborn() {
        for repr in [Representation::Dense, Representation::Sparse] {
            let mut e = ProportionalEngine::new(repr, ScopeMap::Identity, 1e-9);
            e.process(&Interaction::new(0, 1, 1.0, 3.0));
            e.process(&Interaction::new(1, 2, 2.0, 3.0));
            assert!(e.components(VertexId(1)).is_empty());
            assert_eq!(e.components(VertexId(2)), vec![(0, 3.0)]);
            assert_eq!(e.total(VertexId(1)), 0.0);
        }
    }

    #[test]
    fn fraction_branch_splits_every_component() {
        for repr in [Representation::Dense, Representation::Sparse] {
            let mut e = ProportionalEngine::new(repr, ScopeMap::Identity, 1e-9);
            e.process(&Interaction::new(1, 0, 1.0, 3.0));
            e.process(&Interaction::new(2, 0, 2.0, 2.0));
            let before = e.dense_vector(VertexId(0), 3);
            e.process(&Interaction::new(0, 3, 3.0, 3.0));
            let kept = e.dense_vector(VertexId(0), 3);
            let moved = e.dense_vector(VertexId(3), 3);
            assert!(close(&kept, &[0.0, 1.2, 0.8]));
            assert!(close(&moved, &[0.0, 1.8, 1.2]));
            for i in 0..3 {
                assert!((kept[i] + moved[i] - before[i]).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn self_loop_only_adds_newborn() {
        let mut e = ProportionalEngine::sparse(1e-9);
        e.process(&Interaction::new(0, 1, 1.0, 2.0));
        e.process(&Interaction::new(1, 1, 2.0, 1.0));
        assert_eq!(e.components(VertexId(1)), vec![(0, 2.0)]);
        e.process(&Interaction::new(1, 1, 3.0, 5.0));
        assert_eq!(e.components(VertexId(1)), vec![(0, 2.0), (1, 3.0)]);
        assert_eq!(e.total(VertexId(1)), 5.0);
    }

    #[test]
    fn fresh_vertex_snapshot_is_empty() {
        let e = ProportionalEngine::dense(1e-9);
        assert!(e.snapshot(VertexId(4)).is_empty());
    }

    #[test]
    fn entry_count_tracks_list_lengths() {
        let mut e = ProportionalEngine::sparse(1e-9);
        e.process(&Interaction::new(0, 2, 1.0, 1.0));
        e.process(&Interaction::new(1, 2, 2.0, 1.0));
        assert_eq!(e.entry_count(), 2);
        e.process(&Interaction::new(2, 3, 3.0, 1.0));
        assert_eq!(e.entry_count(), 4);
        e.process(&Interaction::new(2, 3, 4.0, 5.0));
        assert_eq!(e.entry_count(), 3);
    }
}
