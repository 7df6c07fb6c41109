use homog::automata::{synchronize_bounded, Dfa, Env, PairAlphabet, Side};
use homog::catalogue;
use homog::construct::{code_decompose, PhiMap};
use homog::derivation::{Circuits, DerivationPath};
use homog::oracle::Oracle;
use homog::rewrite::{RewriteSystem, DEFAULT_FUEL};
use homog::word::{Alphabet, Letter, Word};
use proptest::prelude::*;

fn word(letters: u16, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..letters).prop_map(Letter), 0..=max).prop_map(Word)
}

fn side() -> impl Strategy<Value = Side> {
    prop_oneof![Just(Side::Right), Just(Side::Left)]
}

proptest! {
    #[test]
    fn padding_round_trips(u in word(2, 6), v in word(3, 6), s in side()) {
        let pa = PairAlphabet::new(&Alphabet::new(["a", "b"]).unwrap(), &Alphabet::new(["x", "y", "z"]).unwrap());
        let d = pa.delta(s, &u, &v);
        prop_assert_eq!(d.len(), u.len().max(v.len()));
        prop_assert_eq!(pa.unpad(s, &d), Some((u, v)));
    }

    #[test]
    fn synchronized_relation_agrees(u in word(2, 6), v in word(2, 7), s in side()) {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let rel = Env::new(&a).rel("id(.*) <ε, a> | id(.* b)").unwrap();
        let sync = synchronize_bounded(&rel, 1, s).unwrap();
        prop_assert_eq!(sync.accepts(&u, &v), rel.outputs(&u).accepts(&v));
    }

    #[test]
    fn boolean_laws(xs in prop::collection::vec(word(2, 4), 0..6), ys in prop::collection::vec(word(2, 4), 0..6)) {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let (x, y) = (Dfa::from_words(&a, &xs), Dfa::from_words(&a, &ys));
        prop_assert!(x.union(&y).complement().equivalent(&x.complement().intersection(&y.complement())));
        prop_assert!(x.difference(&y).equivalent(&x.intersection(&y.complement())));
        prop_assert!(x.complement().complement().equivalent(&x));
        prop_assert!(x.minimize().equivalent(&x));
        for w in xs.iter().chain(&ys) {
            prop_assert_eq!(x.union(&y).accepts(w), xs.contains(w) || ys.contains(w));
        }
    }

    #[test]
    fn normal_forms_stay_in_class(w in word(3, 6)) {
        let p = catalogue::complete_auto();
        let sys = RewriteSystem::from_presentation(&p, 8);
        let nf = sys.normalize(&w, DEFAULT_FUEL).unwrap().word;
        prop_assert!(sys.is_irreducible(&nf));
        prop_assert!(Oracle::new(p).unwrap().are_equal(&w, &nf).unwrap());
    }

    #[test]
    fn code_decomposition_recombines(w in word(2, 24)) {
        let phi = PhiMap::new(&catalogue::commute().alphabet);
        prop_assert_eq!(code_decompose(&w, &phi).recombine(), w);
    }

    #[test]
    fn images_decode(s in word(3, 5)) {
        let phi = PhiMap::new(&catalogue::complete_auto().alphabet);
        let d = code_decompose(&phi.apply(&s), &phi);
        prop_assert!(d.gaps.iter().all(Word::is_empty));
        prop_assert_eq!(d.preimage(), Some(s));
    }

    #[test]
    fn path_endpoint_algebra(u in word(2, 3), v in word(2, 3), x in word(3, 2), y in word(3, 2)) {
        let s = Circuits::standard();
        let (p, q) = (s.build_cu(&u).unwrap(), s.build_cu(&v).unwrap());
        let (pi, pt) = p.endpoints();
        prop_assert_eq!(p.inverse().endpoints(), (pt.clone(), pi.clone()));
        prop_assert_eq!(p.inverse().inverse(), p.clone());
        let moved = p.act(&x, &y);
        prop_assert_eq!(moved.endpoints(), (x.concat(&pi).concat(&y), x.concat(&pt).concat(&y)));
        let back = p.compose(&p.inverse()).unwrap();
        prop_assert!(back.is_closed());
        let (f, g) = DerivationPath::interleavings(&p, &q);
        prop_assert!(f.is_parallel(&g));
        prop_assert_eq!(f.len(), p.len() + q.len());
    }

    #[test]
    fn swaps_are_parallel_involutions(u in word(2, 3), v in word(2, 3)) {
        let s = Circuits::standard();
        let (p, q) = (s.build_cu(&u).unwrap(), s.build_cu(&v).unwrap());
        let (f, _) = DerivationPath::interleavings(&p, &q);
        let mut swapped = 0;
        for i in 0..f.len().saturating_sub(1) {
            if let Some(g) = f.swap_at(i) {
                swapped += 1;
                prop_assert!(g.is_parallel(&f));
                prop_assert_eq!(g.swap_at(i), Some(f.clone()));
            }
        }
        // The last edge of p and the first of q touch different copies.
        prop_assert!(swapped >= 1);
    }

    #[test]
    fn phi_respects_context_and_cancellation(u in word(2, 3), v in word(2, 3), x in word(2, 2)) {
        let s = Circuits::standard();
        let p = s.build_cu(&u).unwrap();
        let image = s.phi_eval(&p).unwrap();
        prop_assert_eq!(s.phi_eval(&p.act(&x, &v)).unwrap(), image.sandwich(&x, &[]));
        let back = p.compose(&p.inverse()).unwrap().compose(&p).unwrap();
        prop_assert_eq!(s.phi_eval(&back).unwrap(), image);
    }
}
