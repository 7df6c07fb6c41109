// Pumping pairs that rule out left multipliers for a complete system.

use std::error::Error;

use homog::autostruct::refutation_witness;
use homog::catalogue;

pub fn run() -> Result<(), Box<dyn Error>> {
    let p = catalogue::complete_auto();
    let w = refutation_witness(&p, 6, 2)?;
    for line in w.lines(&p) {
        println!("{line}");
    }
    assert!(w.verified());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("witness example");
}
