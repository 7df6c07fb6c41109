// Critical circuits of `ac → ca, bc → cb, cab → cbb` and their images in
// the free ring.

use std::error::Error;

use homog::derivation::{module_membership, CircuitKind, Circuits};

pub fn run() -> Result<(), Box<dyn Error>> {
    let s = Circuits::standard();
    let w = |t: &str| s.alphabet.parse_word(t);

    let cu = s.build_cu(&w("ab")?)?;
    print!("{}", cu.dump(&s.alphabet));

    let ct3 = s.circuit(&CircuitKind::Ct3 {
        u: w("a")?,
        v: w("b")?,
    })?;
    let image = s.phi_eval(&ct3)?;
    println!(
        "CT3(a, b) closed at {}: {}",
        s.alphabet.show(ct3.start()),
        image.show(&s.alphabet)
    );
    assert_eq!(image, s.table_value(&w("a")?, &w("b")?));

    for m in 1..=3 {
        let target = s.table_value(&[], &vec![s.a; m + 1]);
        let r = module_membership(&target, s.a, s.b, m, m + 3)?;
        println!(
            "m = {m}: {}",
            if r.is_feasible() {
                "generated"
            } else {
                "not generated"
            }
        );
        assert!(!r.is_feasible());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("squier example");
}
