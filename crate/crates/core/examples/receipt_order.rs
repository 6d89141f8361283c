// FIFO and LIFO buffers: relay by order of arrival.

use tinprov::{Interaction, ProvenanceEngine, ReceiptEngine, VertexId};

pub fn run_example() -> tinprov::Result<()> {
    let stream = [
        Interaction::new(1, 2, 1.0, 3.0),
        Interaction::new(2, 0, 3.0, 5.0),
        Interaction::new(0, 1, 4.0, 3.0),
        Interaction::new(1, 2, 5.0, 7.0),
        Interaction::new(2, 1, 7.0, 2.0),
        Interaction::new(2, 0, 8.0, 1.0),
    ];
    for mut engine in [
        ReceiptEngine::fifo(false, 1e-9),
        ReceiptEngine::lifo(false, 1e-9),
    ] {
        println!("{}", engine.name());
        for (i, r) in stream.iter().enumerate() {
            engine.step(r);
            let row: Vec<String> = (0..3)
                .map(|v| {
                    let pairs: Vec<String> = engine
                        .parcels(VertexId(v))
                        .iter()
                        .map(|p| format!("({},{})", p.origin.0, p.quantity))
                        .collect();
                    format!("[{}]", pairs.join(""))
                })
                .collect();
            println!("  after {}: {}", i + 1, row.join("  "));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("receipt-order example");
}
