//! Provenance tracking for quantities that flow through temporal interaction
//! networks.
//!
//! Interactions `⟨source, dest, time, quantity⟩` are replayed in time order.
//! Each vertex buffers what it receives and relays it onward; whatever a
//! vertex sends beyond its buffer is newborn there. The engines in this crate
//! answer, at any point in the replay, where the quantity buffered at a vertex
//! originated, under several rules for *which* buffered units get relayed:
//!
//! * [`gentime`]: least- or most-recently-born first,
//! * [`receipt`]: FIFO or LIFO by order of arrival,
//! * [`proportional`]: every origin contributes in proportion, with the
//!   state-bounding variants in [`scalable`].
//!
//! Element policies can also record the route of every parcel ([`paths`]).

pub mod alert;
pub mod element;
pub mod engine;
pub mod error;
pub mod gentime;
pub mod ingest;
pub mod noprov;
pub mod oracle;
pub mod paths;
pub mod proportional;
pub mod receipt;
pub mod report;
pub mod scalable;
pub mod stream;
pub mod synth;
pub mod types;

pub use engine::{replay, EngineConfig, Policy, ProvenanceEngine, Scope, DEFAULT_EPSILON};
pub use error::{Error, Result};
pub use gentime::GenTimeEngine;
pub use noprov::{generated_totals, propagate_noprov, NoProvEngine};
pub use proportional::ProportionalEngine;
pub use receipt::ReceiptEngine;
pub use scalable::WindowEngine;
pub use types::{Interaction, Origin, ProvEntry, VertexId};
