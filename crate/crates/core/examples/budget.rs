// Budgeted provenance lists: a single shrink in detail, then statistics over
// a hub-shaped stream.

use tinprov::proportional::{SparseProvVector, UNKNOWN_SLOT};
use tinprov::report::{run, RunOptions};
use tinprov::scalable::{budget_shrink, Budget};
use tinprov::synth::{synth, Shape};
use tinprov::{EngineConfig, Policy, Scope};

pub fn run_example() -> tinprov::Result<()> {
    let (v, u, w, z, x, y) = (0, 1, 2, 3, 4, 5);
    let held = SparseProvVector::from_unsorted(vec![(v, 1.0), (u, 3.0), (w, 2.0), (z, 1.0)]);
    let incoming = SparseProvVector::from_unsorted(vec![(x, 2.0), (w, 1.0), (y, 4.0)]);
    let merged = budget_shrink(&held, &incoming, 1.0, &Budget::new(5, 0.6)?, 1e-9);
    let names = ["v", "u", "w", "z", "x", "y"];
    let shown: Vec<String> = merged
        .vector
        .entries()
        .iter()
        .map(|&(s, q)| {
            let name = if s == UNKNOWN_SLOT {
                "?"
            } else {
                names[s as usize]
            };
            format!("({name},{q})")
        })
        .collect();
    println!("shrunk list: {{{}}}", shown.join(", "));

    let stream = synth(1000, 20_000, 5, Shape::Hub)?;
    for c in [10, 50] {
        let mut engine = EngineConfig::new(Policy::ProportionalSparse)
            .with_scope(Scope::budget(c, Budget::DEFAULT_KEEP_FRACTION))
            .build()?;
        let out = run(engine.as_mut(), &stream, &RunOptions::default());
        let s = out.report.shrink.expect("budgeted engines report shrinks");
        println!(
            "C={c}: peak entries {}, avg shrinks per non-empty buffer {:.2}, {:.1}% of vertices shrunk",
            out.report.peak_entries, s.avg_shrinks_per_nonempty, s.pct_shrunk_once
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("budget example");
}
