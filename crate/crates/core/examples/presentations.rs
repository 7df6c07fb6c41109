// Parse a presentation, classify it and count its classes by length.

use std::error::Error;

use homog::oracle::Oracle;
use homog::presentation::Presentation;

const TEXT: &str = "\
letters: a b
rule: a a b -> a b a
rule: b a b -> b b a
";

pub fn run() -> Result<(), Box<dyn Error>> {
    let p = Presentation::parse(TEXT)?;
    let c = p.classify();
    println!(
        "homogeneous: {}, multihomogeneous: {}",
        c.homogeneous, c.multihomogeneous
    );
    assert!(c.homogeneous);

    let growth = Oracle::new(p.clone())?.growth_series(5)?;
    println!("classes by length: {growth:?}");
    assert_eq!(&growth[..3], &[1, 2, 4]);

    let rev = p.reversed();
    println!("reversed:\n{rev}");
    assert_eq!(rev.reversed(), p);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("presentations example");
}
