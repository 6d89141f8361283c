// Flag buffers that hold a lot of quantity none of which came from the
// vertices that sent to them directly.

use tinprov::alert::alert_scan;
use tinprov::{Interaction, ProportionalEngine};

pub fn run_example() -> tinprov::Result<usize> {
    let stream = [
        Interaction::new(0, 1, 1.0, 20_000.0),
        Interaction::new(1, 2, 2.0, 20_000.0),
        Interaction::new(3, 4, 3.0, 500.0),
        Interaction::new(4, 2, 4.0, 500.0),
        Interaction::new(2, 5, 5.0, 15_000.0),
    ];
    let mut engine = ProportionalEngine::sparse(1e-9);
    let alerts = alert_scan(&mut engine, &stream, 10_000.0, 1e-9);
    for a in &alerts {
        println!(
            "interaction #{}: v{} holds {} from {} origin(s), none of them a direct sender",
            a.index, a.vertex.0, a.total, a.contributors
        );
    }
    Ok(alerts.len())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("alerts example");
}
