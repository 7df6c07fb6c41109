// Normal forms, critical pairs and completion.

use std::error::Error;

use homog::catalogue;
use homog::rewrite::{check_local_confluence, complete, RewriteSystem, TermOrder, DEFAULT_FUEL};

pub fn run() -> Result<(), Box<dyn Error>> {
    let p = catalogue::complete_auto();
    let sys = RewriteSystem::from_presentation(&p, 8);
    let w = p.word("cbcaaa")?;
    let nf = sys.normalize(&w, DEFAULT_FUEL)?;
    println!(
        "{} -> {} in {} steps",
        p.show(&w),
        p.show(&nf.word),
        nf.steps
    );
    assert_eq!(p.show(&nf.word), "cacacb");

    let report = check_local_confluence(&sys, DEFAULT_FUEL)?;
    println!(
        "{}/{} critical pairs joinable",
        report.joinable_count(),
        report.pairs.len()
    );
    assert!(report.all_joinable());

    // The three base rules alone are not confluent; completion adds the
    // missing family up to the rule limit.
    let q = catalogue::nonfdt_biauto();
    let base = RewriteSystem::from_presentation(&q, 8);
    assert!(!check_local_confluence(&base, DEFAULT_FUEL)?.all_joinable());
    let order = TermOrder::parse("shortlex:c<b<a", &q.alphabet)?;
    match complete(&q.alphabet, &base.pairs(), &order, 12, DEFAULT_FUEL) {
        Ok(rules) => println!("completed with {} rules", rules.len()),
        Err(e) => println!("completion stopped: {e}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("rewriting example");
}
