use std::fmt;

use serde::{Deserialize, Serialize};

/// Dense vertex index assigned at interning time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub u32);

impl VertexId {
    /// Sentinel origin for mass whose true origin has been forgotten.
    /// Never assigned to a real vertex.
    pub const UNKNOWN: VertexId = VertexId(u32::MAX);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_unknown(self) -> bool {
        self == Self::UNKNOWN
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unknown() {
            f.write_str("?")
        } else {
            write!(f, "#{}", self.0)
        }
    }
}

/// One timestamped transfer `source -> dest` of `quantity` units at `time`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interaction {
    pub source: VertexId,
    pub dest: VertexId,
    pub time: f64,
    pub quantity: f64,
}

impl Interaction {
    pub fn new(
        source: impl Into<VertexId>,
        dest: impl Into<VertexId>,
        time: f64,
        quantity: f64,
    ) -> Self {
        Interaction {
            source: source.into(),
            dest: dest.into(),
            time,
            quantity,
        }
    }

    /// Highest vertex index referenced plus one.
    pub fn vertex_bound(&self) -> usize {
        self.source.index().max(self.dest.index()) + 1
    }
}

/// The origin a provenance entry is attributed to.
///
/// Plain policies only produce `Vertex`. Scoped proportional tracking adds
/// `Group` slots, the selective `Rest` slot and the `Unknown` aggregate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Origin {
    Vertex(VertexId),
    Group(u32),
    Rest,
    Unknown,
}

impl Origin {
    pub fn vertex(&self) -> Option<VertexId> {
        match self {
            Origin::Vertex(v) => Some(*v),
            _ => None,
        }
    }
}

impl From<VertexId> for Origin {
    fn from(v: VertexId) -> Self {
        if v.is_unknown() {
            Origin::Unknown
        } else {
            Origin::Vertex(v)
        }
    }
}

/// One row of a provenance snapshot: `quantity` units at the queried vertex
/// attributed to `origin`, optionally with birth time and route.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProvEntry {
    pub origin: Origin,
    pub quantity: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub birth_time: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<Vec<VertexId>>,
}

impl ProvEntry {
    pub fn new(origin: impl Into<Origin>, quantity: f64) -> Self {
        ProvEntry {
            origin: origin.into(),
            quantity,
            birth_time: None,
            path: None,
        }
    }
}

/// Sum of entry quantities.
pub fn snapshot_total(entries: &[ProvEntry]) -> f64 {
    entries.iter().fold(0.0, |a, e| a + e.quantity)
}

/// Relative closeness test used throughout: `|a - b| <= eps * (1 + |b|)`.
#[inline]
pub fn within(a: f64, b: f64, eps: f64) -> bool {
    (a - b).abs() <= eps * (1.0 + b.abs())
}
