// Proportional provenance with dense and sparse vectors side by side.

use tinprov::{Interaction, ProportionalEngine, VertexId};

pub fn run_example() -> tinprov::Result<f64> {
    let stream = [
        Interaction::new(1, 2, 1.0, 3.0),
        Interaction::new(2, 0, 3.0, 5.0),
        Interaction::new(0, 1, 4.0, 3.0),
        Interaction::new(1, 2, 5.0, 7.0),
        Interaction::new(2, 1, 7.0, 2.0),
        Interaction::new(2, 0, 8.0, 1.0),
    ];
    let mut dense = ProportionalEngine::dense(1e-9);
    let mut sparse = ProportionalEngine::sparse(1e-9);
    let mut worst: f64 = 0.0;
    for r in &stream {
        dense.step(r);
        sparse.step(r);
        let row: Vec<String> = (0..3)
            .map(|v| {
                let p = dense.dense_vector(VertexId(v), 3);
                let q = sparse.dense_vector(VertexId(v), 3);
                for i in 0..3 {
                    worst = worst.max((p[i] - q[i]).abs());
                }
                format!("[{:.2}, {:.2}, {:.2}]", p[0], p[1], p[2])
            })
            .collect();
        println!("{}", row.join("  "));
    }
    println!("largest dense/sparse difference: {worst:e}");
    Ok(worst)
}

#[allow(dead_code)]
fn main() {
    run_example().expect("proportional example");
}
