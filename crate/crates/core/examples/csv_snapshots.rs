// Reading a labelled CSV stream and writing snapshots as CSV and JSON.

use tinprov::ingest::read_interactions;
use tinprov::report::{run, write_csv, write_json, Labels, RunOptions, SnapshotAt};
use tinprov::{EngineConfig, Policy};

const INPUT: &str = "\
source,dest,time,quantity
# transfers between three accounts
alice,bob,1,3
bob,carol,3,5
carol,alice,4,3
alice,bob,5,7
bob,alice,7,-2
bob,carol,8,2
";

pub fn run_example() -> tinprov::Result<String> {
    let ingested = read_interactions(INPUT.as_bytes())?;
    for r in &ingested.rejected {
        println!("skipped {r}");
    }
    let mut engine = EngineConfig::new(Policy::LeastRecentlyBorn)
        .with_paths(true)
        .build()?;
    let opts = RunOptions {
        snapshot_at: SnapshotAt::EveryK(2),
        ..RunOptions::default()
    };
    let out = run(engine.as_mut(), &ingested.interactions, &opts);
    let labels = Labels::new(&ingested.vertices);

    let mut csv = Vec::new();
    write_csv(&mut csv, &out.snapshots, &labels)?;
    let csv = String::from_utf8(csv).expect("csv output is utf-8");
    print!("{csv}");

    let mut json = Vec::new();
    write_json(
        &mut json,
        &out.report,
        &out.snapshots[out.snapshots.len() - 1..],
        &labels,
    )?;
    println!("{}", String::from_utf8_lossy(&json));
    print!("{}", out.report.to_text());
    Ok(csv)
}

#[allow(dead_code)]
fn main() {
    run_example().expect("csv example");
}
