mod residues_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/residues.rs"));
}
#[test]
fn residues_example_runs() {
    residues_example::run_example().expect("residues example should run");
}

mod composed_sum_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/composed_sum.rs"));
}
#[test]
fn composed_sum_example_runs() {
    composed_sum_example::run_example().expect("composed sum example should run");
}

mod diagonal_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/diagonal.rs"));
}
#[test]
fn diagonal_example_runs() {
    diagonal_example::run_example().expect("diagonal example should run");
}

mod walks_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/walks.rs"));
}
#[test]
fn walks_example_runs() {
    walks_example::run_example().expect("walks example should run");
}

mod telescoper_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/telescoper.rs"));
}
#[test]
fn telescoper_example_runs() {
    telescoper_example::run_example().expect("telescoper example should run");
}

mod newton_sums_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/newton_sums.rs"));
}
#[test]
fn newton_sums_example_runs() {
    newton_sums_example::run_example().expect("newton sums example should run");
}

mod cli_session_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cli_session.rs"));
}
#[test]
fn cli_session_example_runs() {
    cli_session_example::run_example().expect("cli session example should run");
}
