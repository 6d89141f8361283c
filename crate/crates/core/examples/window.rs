// Windowed provenance: exact attribution for recently born mass, the rest
// is reported as unknown.

use tinprov::synth::{synth, Shape};
use tinprov::{Interaction, Origin, ProvenanceEngine, VertexId, WindowEngine};

pub fn run_example() -> tinprov::Result<()> {
    let w = 50;
    let mut engine = WindowEngine::new(w, 1e-9)?;
    let background = synth(20, 400, 3, Shape::Uniform)?;
    for r in &background {
        engine.step(r);
    }
    // vertex 20 is new, so whatever it sends is newborn there
    let t = background.last().unwrap().time;
    engine.step(&Interaction::new(20, 5, t + 1.0, 1000.0));
    for i in 0..(w - 2) {
        let r = background[i as usize];
        engine.step(&Interaction::new(
            r.source,
            r.dest,
            t + 2.0 + i as f64,
            r.quantity,
        ));
    }
    println!(
        "after {} interactions, serving the {:?} list",
        engine.counter(),
        engine.serving_side()
    );
    let snapshot = engine.snapshot(VertexId(5));
    let marked: f64 = snapshot
        .iter()
        .filter(|e| e.origin == Origin::Vertex(VertexId(20)))
        .map(|e| e.quantity)
        .sum();
    let unknown: f64 = snapshot
        .iter()
        .filter(|e| e.origin == Origin::Unknown)
        .map(|e| e.quantity)
        .sum();
    println!(
        "vertex 5: total {:.2}, from vertex 20 {marked:.2}, unknown {unknown:.2}",
        engine.total(VertexId(5))
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("window example");
}
