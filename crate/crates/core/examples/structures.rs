// Check a biautomatic structure against the oracle.

use std::error::Error;

use homog::autostruct::{validate_structure, MultiplierSuite};
use homog::catalogue;
use homog::oracle::Oracle;

pub fn run() -> Result<(), Box<dyn Error>> {
    let p = catalogue::nonfdt_biauto();
    let suite = MultiplierSuite::parse(catalogue::NONFDT_BIAUTO_SUITE)?;
    let cert = validate_structure(&Oracle::new(p.clone())?, &suite, 5)?;
    for line in cert.lines(&p.alphabet) {
        println!("{line}");
    }
    assert!(cert.biautomatic && cert.unique_representatives);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("structures example");
}
