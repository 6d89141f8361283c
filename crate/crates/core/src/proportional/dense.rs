/// Origin-indexed amounts stored as a contiguous array.
///
/// The array grows on demand, so a missing tail reads as zeros. Vector
/// operations are plain loops over slices.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DenseProvVector {
    amounts: Vec<f64>,
}

impl DenseProvVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_len(len: usize) -> Self {
        DenseProvVector {
            amounts: vec![0.0; len],
        }
    }

    pub fn from_amounts(amounts: Vec<f64>) -> Self {
        DenseProvVector { amounts }
    }

    pub fn amounts(&self) -> &[f64] {
        &self.amounts
    }

    pub fn len(&self) -> usize {
        self.amounts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amounts.is_empty()
    }

    pub fn get(&self, slot: usize) -> f64 {
        self.amounts.get(slot).copied().unwrap_or(0.0)
    }

    fn grow(&mut self, len: usize) {
        if self.amounts.len() < len {
            self.amounts.resize(len, 0.0);
        }
    }

    pub fn add_at(&mut self, slot: usize, amount: f64) {
        self.grow(slot + 1);
        self.amounts[slot] += amount;
    }

    /// `self ⊕ scale·other`.
    pub fn add_scaled(&mut self, other: &DenseProvVector, scale: f64) {
        self.grow(other.amounts.len());
        for (a, &b) in self.amounts.iter_mut().zip(&other.amounts) {
            *a += scale * b;
        }
    }

    /// `self ⊖ fraction·self`.
    pub fn remove_fraction(&mut self, fraction: f64) {
        for a in &mut self.amounts {
            *a -= fraction * *a;
        }
    }

    /// Zeroes every entry, keeping the allocation.
    pub fn clear(&mut self) {
        self.amounts.iter_mut().for_each(|a| *a = 0.0);
    }

    /// Clamps entries in `[-eps, 0)` to zero.
    pub fn clamp(&mut self, eps: f64) {
        for a in &mut self.amounts {
            if *a < 0.0 && *a >= -eps {
                *a = 0.0;
            }
        }
    }

    pub fn sum(&self) -> f64 {
        self.amounts.iter().sum()
    }

    /// Nonzero `(slot, amount)` components in slot order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.amounts
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0.0)
            .map(|(i, &a)| (i, a))
    }
}
