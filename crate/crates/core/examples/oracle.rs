// Word problem by congruence-class search.

use std::error::Error;

use homog::catalogue;
use homog::oracle::Oracle;

pub fn run() -> Result<(), Box<dyn Error>> {
    let p = catalogue::nonfdt_biauto();
    let o = Oracle::new(p.clone())?;
    let w = |s: &str| p.word(s);

    let class = o.congruence_class(&w("cab")?)?;
    println!("class of cab has {} members", class.len());
    assert!(class.contains(&w("cbb")?));

    assert!(o.are_equal(&w("acab")?, &w("cbbb")?)?);
    assert!(!o.are_equal(&w("ab")?, &w("bb")?)?);
    println!("acab = cbbb, ab != bb");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("oracle example");
}
