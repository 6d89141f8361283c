// Selective (top-k generators plus "rest") and grouped proportional tracking.

use tinprov::noprov::top_generators;
use tinprov::synth::{synth, Shape};
use tinprov::{replay, EngineConfig, Origin, Policy, Scope, VertexId};

pub fn run_example() -> tinprov::Result<()> {
    let n = 200;
    let stream = synth(n, 5_000, 11, Shape::Uniform)?;

    let top = top_generators(&stream, n, 5);
    println!("tracking the top generators {top:?}");
    let mut selective = EngineConfig::new(Policy::ProportionalSparse)
        .with_scope(Scope::Selective(top))
        .build()?;
    replay(selective.as_mut(), &stream);

    // ten groups by id modulo ten
    let groups = (0..n).map(|v| Some(v as u32 % 10)).collect();
    let mut grouped = EngineConfig::new(Policy::ProportionalDense)
        .with_scope(Scope::Grouped(groups))
        .build()?;
    replay(grouped.as_mut(), &stream);

    let fullest = (0..n as u32)
        .map(VertexId)
        .max_by(|a, b| selective.total(*a).total_cmp(&selective.total(*b)))
        .unwrap();
    println!("vertex {fullest} holds {}", selective.total(fullest));
    for e in selective.snapshot(fullest) {
        let label = match e.origin {
            Origin::Rest => "rest".to_string(),
            o => format!("{o:?}"),
        };
        println!("  selective {label:>16}: {:.3}", e.quantity);
    }
    for e in grouped.snapshot(fullest) {
        println!(
            "  grouped   {:>16}: {:.3}",
            format!("{:?}", e.origin),
            e.quantity
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("scoped tracking example");
}
