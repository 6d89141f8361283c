#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tinprov::oracle::OraclePolicy;
use tinprov::{Interaction, Policy};

/// Six-interaction stream over three vertices used by the golden tests.
pub fn running_example() -> Vec<Interaction> {
    vec![
        Interaction::new(1, 2, 1.0, 3.0),
        Interaction::new(2, 0, 3.0, 5.0),
        Interaction::new(0, 1, 4.0, 3.0),
        Interaction::new(1, 2, 5.0, 7.0),
        Interaction::new(2, 1, 7.0, 2.0),
        Interaction::new(2, 0, 8.0, 1.0),
    ]
}

/// Random stream with non-decreasing integer times (ties included) and
/// occasional self-loops. Integer quantities keep element policies exact.
pub fn random_stream(seed: u64, n_vertices: u32, len: usize, integer: bool) -> Vec<Interaction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = 0.0;
    (0..len)
        .map(|_| {
            t += rng.gen_range(0..3) as f64;
            let s = rng.gen_range(0..n_vertices);
            let d = if rng.gen_bool(0.05) {
                s
            } else {
                rng.gen_range(0..n_vertices)
            };
            let q = if integer {
                rng.gen_range(1..=20) as f64
            } else {
                rng.gen_range(0.01..50.0)
            };
            Interaction::new(s, d, t, q)
        })
        .collect()
}

pub fn oracle_policy(p: Policy) -> OraclePolicy {
    match p {
        Policy::LeastRecentlyBorn => OraclePolicy::LeastRecentlyBorn,
        Policy::MostRecentlyBorn => OraclePolicy::MostRecentlyBorn,
        Policy::Fifo => OraclePolicy::Fifo,
        Policy::Lifo => OraclePolicy::Lifo,
        Policy::ProportionalDense | Policy::ProportionalSparse => OraclePolicy::Proportional,
        Policy::NoProv => panic!("no oracle for plain propagation"),
    }
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + b.abs())
}
