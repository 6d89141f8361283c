//! Selection by order of receipt: FIFO queues or LIFO stacks of
//! `(origin, quantity)` pairs.

use std::collections::VecDeque;

use crate::element::{ElementEngine, Parcel, ParcelBuffer};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReceiptOrder {
    Fifo,
    Lifo,
}

/// Pairs in arrival order, front = oldest.
#[derive(Clone, Debug)]
pub struct OrderedBuffer {
    order: ReceiptOrder,
    pairs: VecDeque<Parcel>,
}

impl ParcelBuffer for OrderedBuffer {
    type Mode = ReceiptOrder;

    fn with_mode(order: ReceiptOrder) -> Self {
        OrderedBuffer {
            order,
            pairs: VecDeque::new(),
        }
    }

    fn push(&mut self, parcel: Parcel, _seq: u64) -> bool {
        self.pairs.push_back(parcel);
        true
    }

    fn selected_mut(&mut self) -> Option<&mut Parcel> {
        match self.order {
            ReceiptOrder::Fifo => self.pairs.front_mut(),
            // a split top stays on top
            ReceiptOrder::Lifo => self.pairs.back_mut(),
        }
    }

    fn pop_selected(&mut self) -> Option<Parcel> {
        match self.order {
            ReceiptOrder::Fifo => self.pairs.pop_front(),
            ReceiptOrder::Lifo => self.pairs.pop_back(),
        }
    }

    fn len(&self) -> usize {
        self.pairs.len()
    }

    fn parcels(&self) -> Vec<Parcel> {
        self.pairs.iter().copied().collect()
    }

    fn reports_birth_time() -> bool {
        false
    }

    fn mode_name(order: ReceiptOrder) -> &'static str {
        match order {
            ReceiptOrder::Fifo => "fifo",
            ReceiptOrder::Lifo => "lifo",
        }
    }
}

pub type ReceiptEngine = ElementEngine<OrderedBuffer>;

impl ReceiptEngine {
    pub fn fifo(track_paths: bool, epsilon: f64) -> Self {
        ElementEngine::new(ReceiptOrder::Fifo, track_paths, epsilon)
    }

    pub fn lifo(track_paths: bool, epsilon: f64) -> Self {
        ElementEngine::new(ReceiptOrder::Lifo, track_paths, epsilon)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::ProvenanceEngine;
    use crate::types::{Interaction, VertexId};

    fn pairs(e: &ReceiptEngine, v: u32) -> Vec<(u32, f64)> {
        e.parcels(VertexId(v))
            .iter()
            .map(|p| (p.origin.0, p.quantity))
            .collect()
    }

    #[test]
    fn fifo_split_keeps_remainder_in_front() {
        let mut e = ReceiptEngine::fifo(false, 1e-9);
        e.process(&Interaction::new(1, 0, 1.0, 5.0));
        e.process(&Interaction::new(0, 2, 2.0, 2.0));
        assert_eq!(pairs(&e, 0), vec![(1, 3.0)]);
        assert_eq!(pairs(&e, 2), vec![(1, 2.0)]);

        e.process(&Interaction::new(3, 0, 3.0, 1.0));
        e.process(&Interaction::new(0, 2, 4.0, 1.0));
        assert_eq!(pairs(&e, 0), vec![(1, 2.0), (3, 1.0)]);
    }

    #[test]
    fn lifo_takes_latest_and_appends_in_selection_order() {
        let mut e = ReceiptEngine::lifo(false, 1e-9);
        e.process(&Interaction::new(1, 0, 1.0, 3.0));
        e.process(&Interaction::new(2, 0, 2.0, 2.0));
        e.process(&Interaction::new(0, 3, 3.0, 4.0));
        assert_eq!(pairs(&e, 0), vec![(1, 1.0)]);
        assert_eq!(pairs(&e, 3), vec![(2, 2.0), (1, 2.0)]);
    }

    #[test]
    fn newborn_goes_last() {
        let mut e = ReceiptEngine::fifo(false, 1e-9);
        e.process(&Interaction::new(1, 0, 1.0, 1.0));
        e.process(&Interaction::new(0, 2, 2.0, 3.0));
        assert_eq!(pairs(&e, 2), vec![(1, 1.0), (0, 2.0)]);
        assert_eq!(e.total(VertexId(2)), 3.0);
    }

    #[test]
    fn self_loop_rotates_fifo() {
        let mut e = ReceiptEngine::fifo(false, 1e-9);
        e.process(&Interaction::new(1, 0, 1.0, 1.0));
        e.process(&Interaction::new(2, 0, 2.0, 1.0));
        e.process(&Interaction::new(0, 0, 3.0, 1.0));
        assert_eq!(pairs(&e, 0), vec![(2, 1.0), (1, 1.0)]);
        assert_eq!(e.total(VertexId(0)), 2.0);
    }

    #[test]
    fn fresh_vertex() {
        let e = ReceiptEngine::lifo(false, 1e-9);
        assert!(e.snapshot(VertexId(0)).is_empty());
    }
}
