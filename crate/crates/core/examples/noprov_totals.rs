// Plain propagation: buffer totals and newborn quantities, no provenance.

use tinprov::noprov::NoProvEngine;
use tinprov::Interaction;

pub fn run_example() -> tinprov::Result<Vec<f64>> {
    let stream = [
        Interaction::new(1, 2, 1.0, 3.0),
        Interaction::new(2, 0, 3.0, 5.0),
        Interaction::new(0, 1, 4.0, 3.0),
        Interaction::new(1, 2, 5.0, 7.0),
        Interaction::new(2, 1, 7.0, 2.0),
        Interaction::new(2, 0, 8.0, 1.0),
    ];
    let mut engine = NoProvEngine::with_vertices(3);
    println!(
        "{:>14} {:>5} {:>5} {:>5}  newborn",
        "interaction", "v0", "v1", "v2"
    );
    for r in &stream {
        let step = engine.step(r);
        let t = engine.totals();
        let newborn = if step.newborn > 0.0 {
            step.newborn.to_string()
        } else {
            "-".into()
        };
        println!(
            "{:>14} {:>5} {:>5} {:>5}  {newborn}",
            format!("v{}->v{} t={}", r.source.0, r.dest.0, r.time),
            t[0],
            t[1],
            t[2]
        );
    }
    println!("generated per vertex: {:?}", engine.generated());
    assert_eq!(
        engine.newborn_so_far(),
        (0..3).map(|v| engine.totals()[v]).sum::<f64>()
    );
    Ok(engine.totals().to_vec())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("noprov example");
}
