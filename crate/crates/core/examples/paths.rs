// Route tracking: every parcel remembers the vertices it passed through.

use tinprov::synth::{synth, Shape};
use tinprov::{Interaction, ProvenanceEngine, ReceiptEngine, VertexId};

pub fn run_example() -> tinprov::Result<f64> {
    let mut engine = ReceiptEngine::lifo(true, 1e-9);
    for r in [
        Interaction::new(0, 1, 1.0, 10.0),
        Interaction::new(1, 2, 2.0, 10.0),
        Interaction::new(2, 3, 3.0, 10.0),
    ] {
        engine.step(&r);
    }
    for p in engine.parcels(VertexId(3)) {
        let route: Vec<u32> = engine
            .resolve_path(&p)
            .unwrap()
            .iter()
            .map(|v| v.0)
            .collect();
        println!(
            "at v3: {} units from v{} via {route:?}",
            p.quantity, p.origin.0
        );
    }

    let mut fifo = ReceiptEngine::fifo(true, 1e-9);
    for r in synth(30, 3_000, 9, Shape::Uniform)? {
        fifo.step(&r);
    }
    let avg = fifo.average_path_len().unwrap_or(0.0);
    println!(
        "random stream: average path length {avg:.2}, {} path nodes ({} bytes)",
        fifo.path_store().map_or(0, |s| s.node_count()),
        fifo.path_memory_bytes()
    );
    Ok(avg)
}

#[allow(dead_code)]
fn main() {
    run_example().expect("paths example");
}
