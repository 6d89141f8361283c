// Least- and most-recently-born selection on a small stream.

use tinprov::{GenTimeEngine, Interaction, VertexId};

fn show(name: &str, engine: &GenTimeEngine) {
    println!("{name}");
    for v in 0..3 {
        let triples: Vec<String> = engine
            .parcels(VertexId(v))
            .iter()
            .map(|p| format!("({}, t{}, {})", p.origin.0, p.birth_time, p.quantity))
            .collect();
        println!("  v{v}: {{{}}}", triples.join(", "));
    }
}

pub fn run_example() -> tinprov::Result<()> {
    let stream = [
        Interaction::new(1, 2, 1.0, 3.0),
        Interaction::new(2, 0, 3.0, 5.0),
        Interaction::new(0, 1, 4.0, 3.0),
        Interaction::new(1, 2, 5.0, 7.0),
        Interaction::new(2, 1, 7.0, 2.0),
        Interaction::new(2, 0, 8.0, 1.0),
    ];
    let mut lrb = GenTimeEngine::least_recently_born(false, tinprov::DEFAULT_EPSILON);
    let mut mrb = GenTimeEngine::most_recently_born(false, tinprov::DEFAULT_EPSILON);
    for r in &stream {
        lrb.step(r);
        mrb.step(r);
    }
    show("least recently born", &lrb);
    show("most recently born", &mrb);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("generation-time example");
}
