// Regular expressions, rational relations and padded synchronization.

use std::error::Error;

use homog::automata::{synchronize_bounded, write_dfa, Env, Side};
use homog::word::Alphabet;

pub fn run() -> Result<(), Box<dyn Error>> {
    let a = Alphabet::new(["a", "b"])?;
    let mut env = Env::new(&a);
    env.define("even", "(. .)*")?;
    let no_bb = env.lang("!(.* b b .*)")?;
    let both = env.lang("even & !(.* b b .*)")?;
    println!("words of length 4 without bb: {}", no_bb.count_of_length(4));
    assert_eq!(no_bb.count_of_length(4), 8);
    assert_eq!(both.count_of_length(3), 0);
    print!("{}", write_dfa(&both));

    // Appending a letter is a relation with bounded lag.
    let append = env.rel("id(.*) <ε, a>")?;
    let sync = synchronize_bounded(&append, 1, Side::Right)?;
    let (u, v) = (a.parse_word("ab")?, a.parse_word("aba")?);
    println!(
        "δ_R(ab, aba) = {}",
        sync.pairs.show(&sync.pairs.delta_r(&u, &v))
    );
    assert!(sync.accepts(&u, &v));
    assert!(!sync.accepts(&u, &u));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("automata example");
}
