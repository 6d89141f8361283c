//! Engine configuration and the common interface every policy implements.

use std::str::FromStr;

use crate::element::ElementEngine;
use crate::error::{Error, Result};
use crate::gentime::{BirthOrder, HeapBuffer, HeapMode};
use crate::noprov::NoProvEngine;
use crate::proportional::{ProportionalEngine, Representation};
use crate::receipt::{OrderedBuffer, ReceiptOrder};
use crate::scalable::budget::{Budget, KeepCriterion};
use crate::scalable::scope::ScopeMap;
use crate::scalable::window::WindowEngine;
use crate::types::{Interaction, Origin, ProvEntry, VertexId};

pub const DEFAULT_EPSILON: f64 = 1e-9;

/// A replay engine: consumes interactions in time order and answers
/// provenance queries about any vertex at any point.
pub trait ProvenanceEngine: Send {
    fn process(&mut self, r: &Interaction);

    /// `|B_v|`; zero for vertices never seen.
    fn total(&self, v: VertexId) -> f64;

    /// Provenance entries of `v`'s buffer. Empty for vertices never seen.
    fn snapshot(&self, v: VertexId) -> Vec<ProvEntry>;

    /// Vertices seen so far (highest index + 1).
    fn vertex_count(&self) -> usize;

    /// Provenance entries currently held across all buffers.
    fn entry_count(&self) -> usize;

    /// The origin under which mass generated at `v` is recorded.
    fn origin_of(&self, v: VertexId) -> Origin {
        Origin::Vertex(v)
    }

    /// Per-vertex shrink counters, for budgeted engines.
    fn shrink_counts(&self) -> Option<&[u32]> {
        None
    }

    /// Total dust mass removed from lists.
    fn dropped_mass(&self) -> f64 {
        0.0
    }

    /// Mean path length over resident parcels, when paths are tracked.
    fn average_path_len(&self) -> Option<f64> {
        None
    }

    fn path_memory_bytes(&self) -> usize {
        0
    }

    fn name(&self) -> &'static str;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Policy {
    NoProv,
    LeastRecentlyBorn,
    MostRecentlyBorn,
    Fifo,
    Lifo,
    ProportionalDense,
    ProportionalSparse,
}

impl Policy {
    pub const ALL: [Policy; 7] = [
        Policy::NoProv,
        Policy::LeastRecentlyBorn,
        Policy::MostRecentlyBorn,
        Policy::Fifo,
        Policy::Lifo,
        Policy::ProportionalDense,
        Policy::ProportionalSparse,
    ];

    pub fn is_element(self) -> bool {
        matches!(
            self,
            Policy::LeastRecentlyBorn | Policy::MostRecentlyBorn | Policy::Fifo | Policy::Lifo
        )
    }

    pub fn is_proportional(self) -> bool {
        matches!(self, Policy::ProportionalDense | Policy::ProportionalSparse)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Policy::NoProv => "noprov",
            Policy::LeastRecentlyBorn => "lrb",
            Policy::MostRecentlyBorn => "mrb",
            Policy::Fifo => "fifo",
            Policy::Lifo => "lifo",
            Policy::ProportionalDense => "prop-dense",
            Policy::ProportionalSparse => "prop-sparse",
        }
    }
}

impl FromStr for Policy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Policy::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::config(format!("unknown policy {s:?}")))
    }
}

impl std::fmt::Display for Policy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which origins are tracked and how much state is kept.
#[derive(Clone, Debug, Default, PartialEq)]
pub enum Scope {
    #[default]
    Full,
    /// Track these vertices individually, everything else as "rest".
    Selective(Vec<VertexId>),
    /// `groups[v]` is the group of vertex `v`.
    Grouped(Vec<Option<u32>>),
    /// Exact attribution for mass born within the last `W` interactions.
    Window(u64),
    Budget {
        capacity: usize,
        keep_fraction: f64,
        criterion: KeepCriterion,
    },
}

impl Scope {
    pub fn budget(capacity: usize, keep_fraction: f64) -> Self {
        Scope::Budget {
            capacity,
            keep_fraction,
            criterion: KeepCriterion::LargestAmount,
        }
    }

    pub fn is_full(&self) -> bool {
        matches!(self, Scope::Full)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EngineConfig {
    pub policy: Policy,
    pub scope: Scope,
    pub track_paths: bool,
    pub epsilon: f64,
    /// Merge generation-time triples with identical origin and birth time.
    pub coalesce: bool,
}

impl EngineConfig {
    pub fn new(policy: Policy) -> Self {
        EngineConfig {
            policy,
            scope: Scope::Full,
            track_paths: false,
            epsilon: DEFAULT_EPSILON,
            coalesce: false,
        }
    }

    pub fn with_scope(mut self, scope: Scope) -> Self {
        self.scope = scope;
        self
    }

    pub fn with_paths(mut self, on: bool) -> Self {
        self.track_paths = on;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_coalesce(mut self, on: bool) -> Self {
        self.coalesce = on;
        self
    }

    /// Rejects option combinations that have no meaning.
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(Error::config(format!(
                "epsilon must be a non-negative number, got {}",
                self.epsilon
            )));
        }
        if !self.scope.is_full() && !self.policy.is_proportional() {
            return Err(Error::config(format!(
                "selective, grouped, window and budget scopes need a proportional policy, not {}",
                self.policy
            )));
        }
        if self.track_paths && !self.policy.is_element() {
            return Err(Error::config(format!(
                "path tracking needs a generation-time or receipt-order policy, not {}",
                self.policy
            )));
        }
        if self.coalesce {
            if !matches!(
                self.policy,
                Policy::LeastRecentlyBorn | Policy::MostRecentlyBorn
            ) {
                return Err(Error::config("coalescing applies to lrb and mrb only"));
            }
            if self.track_paths {
                return Err(Error::config(
                    "coalescing cannot be combined with path tracking",
                ));
            }
        }
        if self.policy == Policy::ProportionalDense
            && matches!(self.scope, Scope::Window(_) | Scope::Budget { .. })
        {
            return Err(Error::config(
                "window and budget scopes work on sparse lists; use prop-sparse",
            ));
        }
        match &self.scope {
            Scope::Window(0) => return Err(Error::config("window size must be positive")),
            Scope::Budget {
                capacity,
                keep_fraction,
                criterion,
            } => {
                Budget::with_criterion(*capacity, *keep_fraction, criterion.clone())?;
            }
            _ => {}
        }
        Ok(())
    }

    pub fn build(&self) -> Result<Box<dyn ProvenanceEngine>> {
        self.validate()?;
        let eps = self.epsilon;
        let paths = self.track_paths;
        let heap = |order| HeapMode {
            order,
            coalesce: self.coalesce,
        };
        Ok(match self.policy {
            Policy::NoProv => Box::new(NoProvEngine::new()),
            Policy::LeastRecentlyBorn => Box::new(ElementEngine::<HeapBuffer>::new(
                heap(BirthOrder::LeastRecent),
                paths,
                eps,
            )),
            Policy::MostRecentlyBorn => Box::new(ElementEngine::<HeapBuffer>::new(
                heap(BirthOrder::MostRecent),
                paths,
                eps,
            )),
            Policy::Fifo => Box::new(ElementEngine::<OrderedBuffer>::new(
                ReceiptOrder::Fifo,
                paths,
                eps,
            )),
            Policy::Lifo => Box::new(ElementEngine::<OrderedBuffer>::new(
                ReceiptOrder::Lifo,
                paths,
                eps,
            )),
            Policy::ProportionalDense | Policy::ProportionalSparse => {
                let repr = if self.policy == Policy::ProportionalDense {
                    Representation::Dense
                } else {
                    Representation::Sparse
                };
                match &self.scope {
                    Scope::Full => Box::new(ProportionalEngine::new(repr, ScopeMap::Identity, eps)),
                    Scope::Selective(tracked) => Box::new(ProportionalEngine::new(
                        repr,
                        ScopeMap::selective(tracked.clone())?,
                        eps,
                    )),
                    Scope::Grouped(groups) => Box::new(ProportionalEngine::new(
                        repr,
                        ScopeMap::grouped(groups.clone())?,
                        eps,
                    )),
                    Scope::Window(w) => Box::new(WindowEngine::new(*w, eps)?),
                    Scope::Budget {
                        capacity,
                        keep_fraction,
                        criterion,
                    } => Box::new(ProportionalEngine::budgeted(
                        Budget::with_criterion(*capacity, *keep_fraction, criterion.clone())?,
                        eps,
                    )),
                }
            }
        })
    }
}

/// Feeds a whole stream through an engine.
pub fn replay(engine: &mut dyn ProvenanceEngine, stream: &[Interaction]) {
    for r in stream {
        engine.process(r);
    }
}
