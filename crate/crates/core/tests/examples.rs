mod presentations {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/presentations.rs"
    ));
}

mod rewriting {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/rewriting.rs"
    ));
}

mod oracle {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/oracle.rs"));
}

mod automata {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/automata.rs"));
}

mod structures {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/structures.rs"
    ));
}

mod witness {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/witness.rs"));
}

mod constructions {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/constructions.rs"
    ));
}

mod squier {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/squier.rs"));
}

#[test]
fn presentations_example_runs() {
    presentations::run().expect("presentations example");
}

#[test]
fn rewriting_example_runs() {
    rewriting::run().expect("rewriting example");
}

#[test]
fn oracle_example_runs() {
    oracle::run().expect("oracle example");
}

#[test]
fn automata_example_runs() {
    automata::run().expect("automata example");
}

#[test]
fn structures_example_runs() {
    structures::run().expect("structures example");
}

#[test]
fn witness_example_runs() {
    witness::run().expect("witness example");
}

#[test]
fn constructions_example_runs() {
    constructions::run().expect("constructions example");
}

#[test]
fn squier_example_runs() {
    squier::run().expect("squier example");
}
