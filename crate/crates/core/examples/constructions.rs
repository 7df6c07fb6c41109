// Free products, n-ary extensions and the two-letter embedding.

use std::error::Error;

use homog::catalogue;
use homog::construct::{
    code_decompose, free_product, free_product_growth, ideal_correspondence, verify_embedding,
    PhiMap,
};

pub fn run() -> Result<(), Box<dyn Error>> {
    let (p, q) = (catalogue::complete_auto(), catalogue::nonfdt_biauto());
    let (prod, renames) = free_product(&p, &q);
    println!(
        "free product over {} letters, {} renamed",
        prod.alphabet.len(),
        renames.len()
    );
    let growth = free_product_growth(&p, &q, 4)?;
    println!(
        "growth {:?}, identity holds: {}",
        growth.product,
        growth.holds()
    );
    assert!(growth.holds());

    let commute = catalogue::commute();
    let (ext, report) = ideal_correspondence(&commute, 3)?;
    println!("3-ary extension:\n{ext}");
    assert!(report.holds());

    let phi = PhiMap::new(&commute.alphabet);
    let w = phi.apply(&commute.word("ab")?);
    let d = code_decompose(&w, &phi);
    assert_eq!(d.preimage(), Some(commute.word("ab")?));
    assert_eq!(d.recombine(), w);

    let r = verify_embedding(&commute, 4)?;
    for line in r.lines(&commute.alphabet, &phi.target) {
        println!("{line}");
    }
    assert!(r.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("constructions example");
}
