/// Slot reserved for mass of forgotten origin. Sorts after every real slot.
pub const UNKNOWN_SLOT: u32 = u32::MAX;

/// Provenance as `(slot, amount)` pairs strictly sorted by slot.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseProvVector {
    entries: Vec<(u32, f64)>,
}

/// Where sub-epsilon entries go when they are removed from a list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DustSink {
    /// Removed outright; the mass is only reported.
    Drop,
    /// Added to the given slot (the unknown or "rest" slot).
    Fold(u32),
}

/// Result of a sparse merge.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Merged {
    pub vector: SparseProvVector,
    /// Mass of entries removed as dust and not folded anywhere.
    pub dropped: f64,
}

impl SparseProvVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a list from pairs; they must already be strictly sorted.
    pub fn from_sorted(entries: Vec<(u32, f64)>) -> Self {
        let v = SparseProvVector { entries };
        debug_assert!(v.is_sorted(), "sparse provenance list not strictly sorted");
        v
    }

    /// Builds a list from arbitrary pairs, summing duplicates.
    pub fn from_unsorted(mut entries: Vec<(u32, f64)>) -> Self {
        entries.sort_by_key(|e| e.0);
        let mut out: Vec<(u32, f64)> = Vec::with_capacity(entries.len());
        for (slot, q) in entries {
            match out.last_mut() {
                Some(last) if last.0 == slot => last.1 += q,
                _ => out.push((slot, q)),
            }
        }
        SparseProvVector { entries: out }
    }

    pub fn is_sorted(&self) -> bool {
        self.entries.windows(2).all(|w| w[0].0 < w[1].0)
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(u32, f64)> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, slot: u32) -> f64 {
        self.entries
            .binary_search_by_key(&slot, |e| e.0)
            .map(|i| self.entries[i].1)
            .unwrap_or(0.0)
    }

    pub fn sum(&self) -> f64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn clear(&mut self) {
        self.entries.clear();
    }

    pub fn add_at(&mut self, slot: u32, amount: f64) {
        match self.entries.binary_search_by_key(&slot, |e| e.0) {
            Ok(i) => self.entries[i].1 += amount,
            Err(i) => self.entries.insert(i, (slot, amount)),
        }
    }

    /// Copy with every amount multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> SparseProvVector {
        SparseProvVector {
            entries: self.entries.iter().map(|&(s, q)| (s, q * factor)).collect(),
        }
    }

    /// `self ⊖ fraction·self`.
    pub fn remove_fraction(&mut self, fraction: f64) {
        for e in &mut self.entries {
            e.1 -= fraction * e.1;
        }
    }

    /// Removes entries with amount `<= eps`. Returns the mass that was not
    /// folded into a sink slot.
    pub fn sweep_dust(&mut self, eps: f64, sink: DustSink) -> f64 {
        if !self.entries.iter().any(|e| e.1 <= eps) {
            return 0.0;
        }
        let mut dust = 0.0;
        self.entries.retain(|e| {
            if e.1 <= eps {
                dust += e.1;
                false
            } else {
                true
            }
        });
        match sink {
            DustSink::Drop => dust,
            DustSink::Fold(slot) => {
                if dust > 0.0 {
                    self.add_at(slot, dust);
                }
                0.0
            }
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<f64> {
        let mut out = vec![0.0; len];
        for &(s, q) in &self.entries {
            out[s as usize] += q;
        }
        out
    }
}

/// `a ⊕ scale·b` by a linear merge of the two sorted lists.
///
/// Result entries with amount `<= eps` are removed and handed to `sink`.
pub fn sparse_merge(
    a: &SparseProvVector,
    b: &SparseProvVector,
    scale: f64,
    eps: f64,
    sink: DustSink,
) -> Merged {
    debug_assert!(
        a.is_sorted() && b.is_sorted(),
        "sparse_merge on unsorted input"
    );
    let (x, y) = (&a.entries, &b.entries);
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        let (sa, qa) = x[i];
        let (sb, qb) = y[j];
        if sa < sb {
            out.push((sa, qa));
            i += 1;
        } else if sb < sa {
            out.push((sb, scale * qb));
            j += 1;
        } else {
            out.push((sa, qa + scale * qb));
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&x[i..]);
    out.extend(y[j..].iter().map(|&(s, q)| (s, scale * q)));

    let mut vector = SparseProvVector { entries: out };
    let dropped = vector.sweep_dust(eps, sink);
    Merged { vector, dropped }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(e: &[(u32, f64)]) -> SparseProvVector {
        SparseProvVector::from_sorted(e.to_vec())
    }

    #[test]
    fn disjoint_merge() {
        let m = sparse_merge(
            &sv(&[(0, 1.0)]),
            &sv(&[(1, 2.0)]),
            1.0,
            1e-9,
            DustSink::Drop,
        );
        assert_eq!(m.vector.entries(), &[(0, 1.0), (1, 2.0)]);
        assert_eq!(m.dropped, 0.0);
    }

    #[test]
    fn overlapping_scaled_merge() {
        let m = sparse_merge(
            &sv(&[(1, 1.0)]),
            &sv(&[(1, 2.0)]),
            0.5,
            1e-9,
            DustSink::Drop,
        );
        assert_eq!(m.vector.entries(), &[(1, 2.0)]);
    }

    #[test]
    fn dust_dropped_or_folded() {
        let a = sv(&[(0, 1.0), (2, 1e-12)]);
        let b = sv(&[(3, 4.0)]);
        let m = sparse_merge(&a, &b, 1.0, 1e-9, DustSink::Drop);
        assert_eq!(m.vector.entries(), &[(0, 1.0), (3, 4.0)]);
        assert_eq!(m.dropped, 1e-12);

        let m = sparse_merge(&a, &b, 1.0, 1e-9, DustSink::Fold(UNKNOWN_SLOT));
        assert_eq!(
            m.vector.entries(),
            &[(0, 1.0), (3, 4.0), (UNKNOWN_SLOT, 1e-12)]
        );
        assert_eq!(m.dropped, 0.0);
    }

    #[test]
    fn unknown_sorts_last() {
        let mut v = sv(&[(3, 1.0)]);
        v.add_at(UNKNOWN_SLOT, 2.0);
        v.add_at(0, 1.0);
        assert_eq!(v.entries(), &[(0, 1.0), (3, 1.0), (UNKNOWN_SLOT, 2.0)]);
        assert!(v.is_sorted());
    }

    #[test]
    fn from_unsorted_sums_duplicates() {
        let v = SparseProvVector::from_unsorted(vec![(4, 1.0), (1, 2.0), (4, 0.5)]);
        assert_eq!(v.entries(), &[(1, 2.0), (4, 1.5)]);
    }

    #[test]
    #[should_panic]
    #[cfg(debug_assertions)]
    fn unsorted_input_is_an_internal_error() {
        let bad = SparseProvVector {
            entries: vec![(2, 1.0), (1, 1.0)],
        };
        sparse_merge(&bad, &SparseProvVector::new(), 1.0, 1e-9, DustSink::Drop);
    }
}
