//! Seeded synthetic interaction streams for tests and benchmarks.
//!
//! Times are the integers `1..=n`, quantities are integers in `1..=100` so
//! element policies stay exact in floating point.

use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ingest::VertexTable;
use crate::types::{Interaction, VertexId};

/// Fraction of hub-shaped interactions that touch the hub.
pub const HUB_SHARE: f64 = 0.7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// Endpoints drawn uniformly, no self-loops.
    Uniform,
    /// Vertex 0 sends or receives most of the traffic.
    Hub,
    /// Round-robin over the edges `v0→v1→…→v(n-1)`.
    Chain,
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Shape::Uniform),
            "hub" => Ok(Shape::Hub),
            "chain" => Ok(Shape::Chain),
            _ => Err(Error::config(format!("unknown stream shape {s:?}"))),
        }
    }
}

fn other_than(rng: &mut ChaCha8Rng, n: u32, avoid: u32) -> u32 {
    let v = rng.gen_range(0..n - 1);
    if v >= avoid {
        v + 1
    } else {
        v
    }
}

pub fn synth(
    n_vertices: usize,
    n_interactions: usize,
    seed: u64,
    shape: Shape,
) -> Result<Vec<Interaction>> {
    if n_vertices < 2 {
        return Err(Error::config(
            "a synthetic stream needs at least two vertices",
        ));
    }
    let n = u32::try_from(n_vertices).map_err(|_| Error::config("too many vertices"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n_interactions);
    for i in 0..n_interactions {
        let (s, d) = match shape {
            Shape::Uniform => {
                let s = rng.gen_range(0..n);
                (s, other_than(&mut rng, n, s))
            }
            Shape::Hub => {
                if rng.gen_bool(HUB_SHARE) {
                    let other = other_than(&mut rng, n, 0);
                    if rng.gen_bool(0.5) {
                        (0, other)
                    } else {
                        (other, 0)
                    }
                } else {
                    let s = rng.gen_range(0..n);
                    (s, other_than(&mut rng, n, s))
                }
            }
            Shape::Chain => {
                let s = (i as u32) % (n - 1);
                (s, s + 1)
            }
        };
        let q = rng.gen_range(1..=100u32) as f64;
        out.push(Interaction::new(s, d, (i + 1) as f64, q));
    }
    Ok(out)
}

/// A vertex table whose labels are the decimal ids `0..n`.
pub fn numeric_table(n: usize) -> VertexTable {
    let mut t = VertexTable::new();
    for v in 0..n {
        t.intern(&v.to_string());
    }
    t
}

/// Number of interactions touching `v`.
pub fn participation(stream: &[Interaction], v: VertexId) -> usize {
    stream
        .iter()
        .filter(|r| r.source == v || r.dest == v)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let a = synth(50, 500, 7, Shape::Uniform).unwrap();
        let b = synth(50, 500, 7, Shape::Uniform).unwrap();
        let c = synth(50, 500, 8, Shape::Uniform).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn chain_follows_edges() {
        let s = synth(4, 30, 1, Shape::Chain).unwrap();
        assert!(s
            .iter()
            .all(|r| r.dest.0 == r.source.0 + 1 && r.dest.0 <= 3));
    }

    #[test]
    fn hub_dominates() {
        let s = synth(1000, 10_000, 3, Shape::Hub).unwrap();
        assert!(participation(&s, VertexId(0)) * 2 >= s.len());
    }

    #[test]
    fn times_increase_and_quantities_positive() {
        let s = synth(10, 200, 2, Shape::Uniform).unwrap();
        assert!(s.windows(2).all(|w| w[0].time < w[1].time));
        assert!(s.iter().all(|r| r.quantity >= 1.0 && r.source != r.dest));
    }
}
