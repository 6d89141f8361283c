//! Selection by generation time: least- or most-recently-born first.
//!
//! Buffers hold `(origin, birth_time, quantity)` triples in a priority queue
//! keyed on birth time. Equal birth times are ordered by origin index and
//! then by insertion sequence.

use std::collections::BTreeMap;

use ordered_float::OrderedFloat;

use crate::element::{ElementEngine, Parcel, ParcelBuffer};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BirthOrder {
    /// Oldest triples leave first (min-queue).
    LeastRecent,
    /// Newest triples leave first (max-queue).
    MostRecent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeapMode {
    pub order: BirthOrder,
    /// Merge triples with identical origin and birth time on arrival.
    pub coalesce: bool,
}

impl HeapMode {
    pub fn least() -> Self {
        HeapMode {
            order: BirthOrder::LeastRecent,
            coalesce: false,
        }
    }

    pub fn most() -> Self {
        HeapMode {
            order: BirthOrder::MostRecent,
            coalesce: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Key {
    // birth time, negated for the most-recent order
    time: OrderedFloat<f64>,
    origin: u32,
    seq: u64,
}

/// Priority queue of triples; the first key is always the next selection.
#[derive(Clone, Debug)]
pub struct HeapBuffer {
    mode: HeapMode,
    queue: BTreeMap<Key, Parcel>,
}

impl HeapBuffer {
    fn key(&self, p: &Parcel, seq: u64) -> Key {
        let time = match self.mode.order {
            BirthOrder::LeastRecent => p.birth_time,
            BirthOrder::MostRecent => -p.birth_time,
        };
        Key {
            time: OrderedFloat(time),
            origin: p.origin.0,
            seq: if self.mode.coalesce { 0 } else { seq },
        }
    }
}

impl ParcelBuffer for HeapBuffer {
    type Mode = HeapMode;

    fn with_mode(mode: HeapMode) -> Self {
        HeapBuffer {
            mode,
            queue: BTreeMap::new(),
        }
    }

    fn push(&mut self, parcel: Parcel, seq: u64) -> bool {
        use std::collections::btree_map::Entry;
        match self.queue.entry(self.key(&parcel, seq)) {
            Entry::Occupied(mut held) => {
                held.get_mut().quantity += parcel.quantity;
                false
            }
            Entry::Vacant(slot) => {
                slot.insert(parcel);
                true
            }
        }
    }

    fn selected_mut(&mut self) -> Option<&mut Parcel> {
        self.queue.values_mut().next()
    }

    fn pop_selected(&mut self) -> Option<Parcel> {
        self.queue.pop_first().map(|(_, p)| p)
    }

    fn len(&self) -> usize {
        self.queue.len()
    }

    fn parcels(&self) -> Vec<Parcel> {
        self.queue.values().copied().collect()
    }

    fn reports_birth_time() -> bool {
        true
    }

    fn mode_name(mode: HeapMode) -> &'static str {
        match mode.order {
            BirthOrder::LeastRecent => "lrb",
            BirthOrder::MostRecent => "mrb",
        }
    }
}

pub type GenTimeEngine = ElementEngine<HeapBuffer>;

impl GenTimeEngine {
    pub fn least_recently_born(track_paths: bool, epsilon: f64) -> Self {
        ElementEngine::new(HeapMode::least(), track_paths, epsilon)
    }

    pub fn most_recently_born(track_paths: bool, epsilon: f64) -> Self {
        ElementEngine::new(HeapMode::most(), track_paths, epsilon)
    }
}
