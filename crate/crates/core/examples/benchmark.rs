// Throughput of every policy on one synthetic stream.
//
// Run with `cargo run --release --example benchmark`.

use tinprov::report::{run, RunOptions};
use tinprov::synth::{synth, Shape};
use tinprov::{EngineConfig, Policy};

pub fn run_example_with(n_vertices: usize, n_interactions: usize) -> tinprov::Result<()> {
    let stream = synth(n_vertices, n_interactions, 42, Shape::Uniform)?;
    println!("{n_interactions} interactions over {n_vertices} vertices");
    for policy in Policy::ALL {
        // dense vectors are |V| wide per vertex; skip them on large graphs
        if policy == Policy::ProportionalDense && n_vertices > 2_000 {
            continue;
        }
        let mut engine = EngineConfig::new(policy).build()?;
        let out = run(engine.as_mut(), &stream, &RunOptions::default());
        println!(
            "{:>12}: {:>8.3} s, peak {} entries",
            policy, out.report.wall_time_secs, out.report.peak_entries
        );
    }
    Ok(())
}

pub fn run_example() -> tinprov::Result<()> {
    run_example_with(1_000, 20_000)
}

#[allow(dead_code)]
fn main() {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let result = match args.as_slice() {
        [v, r] => run_example_with(*v, *r),
        _ => run_example_with(10_000, 1_000_000),
    };
    result.expect("benchmark");
}
