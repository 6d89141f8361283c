//! Brute-force reference simulator for differential testing.
//!
//! Buffers are flat vectors scanned linearly on every selection; parcels carry
//! their full path as a plain `Vec`; proportional provenance is a full
//! `|V| × |V|` matrix updated component by component. No epsilon handling.
//! Nothing here is shared with the engines it checks.

use crate::types::{Interaction, Origin, ProvEntry, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OraclePolicy {
    LeastRecentlyBorn,
    MostRecentlyBorn,
    Fifo,
    Lifo,
    Proportional,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleParcel {
    pub origin: VertexId,
    pub birth_time: f64,
    pub quantity: f64,
    pub path: Vec<VertexId>,
    seq: u64,
}

#[derive(Clone, Debug)]
pub struct Oracle {
    policy: OraclePolicy,
    parcels: Vec<Vec<OracleParcel>>,
    matrix: Vec<Vec<f64>>,
    prop_totals: Vec<f64>,
    baseline: Vec<f64>,
    newborn: f64,
    seq: u64,
}

impl Oracle {
    pub fn new(policy: OraclePolicy, n_vertices: usize) -> Self {
        let matrix = if policy == OraclePolicy::Proportional {
            vec![vec![0.0; n_vertices]; n_vertices]
        } else {
            Vec::new()
        };
        Oracle {
            policy,
            parcels: vec![Vec::new(); n_vertices],
            matrix,
            prop_totals: vec![0.0; n_vertices],
            baseline: vec![0.0; n_vertices],
            newborn: 0.0,
            seq: 0,
        }
    }

    pub fn policy(&self) -> OraclePolicy {
        self.policy
    }

    fn pick(&self, v: usize) -> usize {
        let buf = &self.parcels[v];
        let mut best = 0;
        for i in 1..buf.len() {
            let (a, b) = (&buf[i], &buf[best]);
            let better = match self.policy {
                OraclePolicy::LeastRecentlyBorn => {
                    (a.birth_time, a.origin, a.seq) < (b.birth_time, b.origin, b.seq)
                }
                OraclePolicy::MostRecentlyBorn => {
                    a.birth_time > b.birth_time
                        || (a.birth_time == b.birth_time && (a.origin, a.seq) < (b.origin, b.seq))
                }
                OraclePolicy::Fifo => a.seq < b.seq,
                OraclePolicy::Lifo => a.seq > b.seq,
                OraclePolicy::Proportional => unreachable!(),
            };
            if better {
                best = i;
            }
        }
        best
    }

    pub fn step(&mut self, r: &Interaction) {
        let (s, d) = (r.source.index(), r.dest.index());

        // the plain totals-only propagation, kept alongside as a self check
        let relayed = r.quantity.min(self.baseline[s]);
        self.baseline[s] -= relayed;
        self.baseline[d] += r.quantity;
        self.newborn += r.quantity - relayed;

        if self.policy == OraclePolicy::Proportional {
            self.step_proportional(r);
        } else {
            self.step_parcels(r);
        }
    }

    fn step_parcels(&mut self, r: &Interaction) {
        let (s, d) = (r.source.index(), r.dest.index());
        let mut resq = r.quantity;
        let mut moved = Vec::new();
        while resq > 0.0 && !self.parcels[s].is_empty() {
            let i = self.pick(s);
            if self.parcels[s][i].quantity > resq {
                let mut piece = self.parcels[s][i].clone();
                piece.quantity = resq;
                self.parcels[s][i].quantity -= resq;
                moved.push(piece);
                resq = 0.0;
            } else {
                let whole = self.parcels[s].remove(i);
                resq -= whole.quantity;
                moved.push(whole);
            }
        }
        for mut p in moved {
            p.path.push(r.source);
            self.seq += 1;
            p.seq = self.seq;
            self.parcels[d].push(p);
        }
        if resq > 0.0 {
            self.seq += 1;
            self.parcels[d].push(OracleParcel {
                origin: r.source,
                birth_time: r.time,
                quantity: resq,
                path: vec![r.source],
                seq: self.seq,
            });
        }
    }

    fn step_proportional(&mut self, r: &Interaction) {
        let (s, d) = (r.source.index(), r.dest.index());
        let n = self.matrix.len();
        let held = self.prop_totals[s];
        if r.quantity >= held {
            let mut moving = vec![0.0; n];
            for (i, m) in moving.iter_mut().enumerate() {
                *m = self.matrix[s][i];
                self.matrix[s][i] = 0.0;
            }
            moving[s] += r.quantity - held;
            for (i, m) in moving.iter().enumerate() {
                self.matrix[d][i] += m;
            }
            self.prop_totals[s] = 0.0;
            self.prop_totals[d] += r.quantity;
        } else {
            let share: Vec<f64> = (0..n)
                .map(|i| self.matrix[s][i] * r.quantity / held)
                .collect();
            for (i, q) in share.iter().enumerate() {
                self.matrix[s][i] -= q;
            }
            for (i, q) in share.iter().enumerate() {
                self.matrix[d][i] += q;
            }
            self.prop_totals[s] -= r.quantity;
            self.prop_totals[d] += r.quantity;
        }
    }

    /// Parcels of `v` in arrival order.
    pub fn parcels(&self, v: VertexId) -> Vec<OracleParcel> {
        let mut out = self.parcels.get(v.index()).cloned().unwrap_or_default();
        out.sort_by_key(|p| p.seq);
        out
    }

    /// Proportional provenance vector of `v`.
    pub fn vector(&self, v: VertexId) -> &[f64] {
        &self.matrix[v.index()]
    }

    /// Buffer total as seen by the simulated policy.
    pub fn total(&self, v: VertexId) -> f64 {
        match self.policy {
            OraclePolicy::Proportional => self.prop_totals[v.index()],
            _ => self.parcels[v.index()].iter().map(|p| p.quantity).sum(),
        }
    }

    /// Buffer total under plain propagation.
    pub fn baseline_total(&self, v: VertexId) -> f64 {
        self.baseline[v.index()]
    }

    pub fn cumulative_newborn(&self) -> f64 {
        self.newborn
    }

    /// Snapshot of `v` shaped like an engine snapshot.
    ///
    /// Birth times are included for the generation-time policies and paths
    /// when `with_paths` is set.
    pub fn entries(&self, v: VertexId, with_paths: bool) -> Vec<ProvEntry> {
        match self.policy {
            OraclePolicy::Proportional => self
                .vector(v)
                .iter()
                .enumerate()
                .filter(|(_, &q)| q != 0.0)
                .map(|(i, &q)| ProvEntry::new(VertexId(i as u32), q))
                .collect(),
            policy => {
                let with_birth = matches!(
                    policy,
                    OraclePolicy::LeastRecentlyBorn | OraclePolicy::MostRecentlyBorn
                );
                self.parcels(v)
                    .into_iter()
                    .map(|p| ProvEntry {
                        origin: Origin::Vertex(p.origin),
                        quantity: p.quantity,
                        birth_time: with_birth.then_some(p.birth_time),
                        path: with_paths.then_some(p.path),
                    })
                    .collect()
            }
        }
    }
}

/// Per-vertex state captured after one interaction.
#[derive(Clone, Debug)]
pub struct OracleState {
    pub entries: Vec<Vec<ProvEntry>>,
    pub totals: Vec<f64>,
}

/// Replays `stream` and records every vertex's snapshot after every
/// interaction.
pub fn oracle_replay(
    stream: &[Interaction],
    policy: OraclePolicy,
    with_paths: bool,
) -> Vec<OracleState> {
    let n = stream
        .iter()
        .map(Interaction::vertex_bound)
        .max()
        .unwrap_or(0);
    let mut oracle = Oracle::new(policy, n);
    stream
        .iter()
        .map(|r| {
            oracle.step(r);
            let ids = (0..n as u32).map(VertexId);
            OracleState {
                entries: ids.clone().map(|v| oracle.entries(v, with_paths)).collect(),
                totals: ids.map(|v| oracle.total(v)).collect(),
            }
        })
        .collect()
}

/// Sorts entries into a canonical order so two snapshots can be compared as
/// multisets.
pub fn canonical(mut entries: Vec<ProvEntry>) -> Vec<ProvEntry> {
    entries.sort_by(|a, b| {
        a.origin
            .cmp(&b.origin)
            .then(
                a.birth_time
                    .unwrap_or(0.0)
                    .total_cmp(&b.birth_time.unwrap_or(0.0)),
            )
            .then(a.quantity.total_cmp(&b.quantity))
            .then(a.path.cmp(&b.path))
    });
    entries
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_totals_match_baseline() {
        let stream = [
            Interaction::new(1, 2, 1.0, 3.0),
            Interaction::new(2, 0, 3.0, 5.0),
            Interaction::new(0, 1, 4.0, 3.0),
            Interaction::new(1, 2, 5.0, 7.0),
            Interaction::new(2, 1, 7.0, 2.0),
            Interaction::new(2, 0, 8.0, 1.0),
        ];
        for policy in [
            OraclePolicy::LeastRecentlyBorn,
            OraclePolicy::MostRecentlyBorn,
            OraclePolicy::Fifo,
            OraclePolicy::Lifo,
            OraclePolicy::Proportional,
        ] {
            let mut o = Oracle::new(policy, 3);
            for r in &stream {
                o.step(r);
                for v in 0..3 {
                    let v = VertexId(v);
                    assert!(
                        (o.total(v) - o.baseline_total(v)).abs() < 1e-12,
                        "{policy:?}"
                    );
                }
            }
            assert_eq!(o.cumulative_newborn(), 9.0);
        }
    }

    #[test]
    fn lifo_split_stays_on_top() {
        let mut o = Oracle::new(OraclePolicy::Lifo, 3);
        o.step(&Interaction::new(1, 0, 1.0, 2.0));
        o.step(&Interaction::new(2, 0, 2.0, 4.0));
        o.step(&Interaction::new(0, 1, 3.0, 1.0));
        o.step(&Interaction::new(0, 1, 4.0, 1.0));
        let at0: Vec<_> = o
            .parcels(VertexId(0))
            .iter()
            .map(|p| (p.origin.0, p.quantity))
            .collect();
        assert_eq!(at0, vec![(1, 2.0), (2, 2.0)]);
    }
}
