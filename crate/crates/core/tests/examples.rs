macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(noprov_totals, "noprov_totals.rs");
example!(generation_time, "generation_time.rs");
example!(receipt_order, "receipt_order.rs");
example!(proportional, "proportional.rs");
example!(scoped_tracking, "scoped_tracking.rs");
example!(window, "window.rs");
example!(budget, "budget.rs");
example!(paths, "paths.rs");
example!(alerts, "alerts.rs");
example!(benchmark, "benchmark.rs");
example!(csv_snapshots, "csv_snapshots.rs");

#[test]
fn noprov_example_ends_with_expected_totals() {
    assert_eq!(noprov_totals::run_example().unwrap(), vec![3.0, 2.0, 4.0]);
}

#[test]
fn element_examples_run() {
    generation_time::run_example().unwrap();
    receipt_order::run_example().unwrap();
}

#[test]
fn proportional_example_dense_matches_sparse() {
    assert!(proportional::run_example().unwrap() < 1e-12);
}

#[test]
fn scalable_examples_run() {
    scoped_tracking::run_example().unwrap();
    window::run_example().unwrap();
    budget::run_example().unwrap();
}

#[test]
fn paths_example_reports_lengths() {
    assert!(paths::run_example().unwrap() >= 1.0);
}

#[test]
fn alerts_example_flags_relayed_mass() {
    assert_eq!(alerts::run_example().unwrap(), 3);
}

#[test]
fn benchmark_example_runs_small() {
    benchmark::run_example_with(200, 2_000).unwrap();
}

#[test]
fn csv_example_skips_bad_line() {
    let csv = csv_snapshots::run_example().unwrap();
    assert!(csv.starts_with("after,vertex,origin,quantity,birth_time,path\n"));
}
