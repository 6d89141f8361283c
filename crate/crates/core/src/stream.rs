//! Time ordering of interaction streams.

use crate::types::Interaction;

/// What [`sort_check`] had to do.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SortOutcome {
    /// Adjacent pairs found with decreasing time.
    pub inversions: usize,
}

impl SortOutcome {
    pub fn was_ordered(&self) -> bool {
        self.inversions == 0
    }
}

/// Counts adjacent time inversions.
pub fn inversions(stream: &[Interaction]) -> usize {
    stream.windows(2).filter(|w| w[1].time < w[0].time).count()
}

/// Returns the stream in nondecreasing time order.
///
/// An ordered stream is returned as-is. Otherwise a stable sort is applied,
/// so interactions with equal timestamps keep their input order.
pub fn sort_check(mut stream: Vec<Interaction>) -> (Vec<Interaction>, SortOutcome) {
    let inversions = inversions(&stream);
    if inversions > 0 {
        stream.sort_by(|a, b| a.time.total_cmp(&b.time));
    }
    (stream, SortOutcome { inversions })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(t: f64, q: f64) -> Interaction {
        Interaction::new(0, 1, t, q)
    }

    #[test]
    fn ordered_passes_through() {
        let times = [1.0, 3.0, 4.0, 5.0, 7.0, 8.0];
        let s: Vec<_> = times.iter().map(|&t| at(t, 1.0)).collect();
        let ptr = s.as_ptr();
        let (out, outcome) = sort_check(s);
        assert!(outcome.was_ordered());
        assert_eq!(out.as_ptr(), ptr);
        assert_eq!(out.iter().map(|r| r.time).collect::<Vec<_>>(), times);
    }

    #[test]
    fn reorders() {
        let (out, outcome) = sort_check(vec![at(3.0, 1.0), at(1.0, 1.0)]);
        assert_eq!(outcome.inversions, 1);
        assert_eq!(out[0].time, 1.0);
        assert_eq!(out[1].time, 3.0);
    }

    #[test]
    fn stable_ties() {
        let (out, _) = sort_check(vec![at(5.0, 0.5), at(2.0, 1.0), at(2.0, 2.0)]);
        assert_eq!(
            out.iter().map(|r| r.quantity).collect::<Vec<_>>(),
            vec![1.0, 2.0, 0.5]
        );
        let (out, outcome) = sort_check(vec![at(2.0, 1.0), at(2.0, 2.0)]);
        assert!(outcome.was_ordered());
        assert_eq!(out[0].quantity, 1.0);
    }
}
