use std::sync::Arc;

use hyperdoc::chirality::{law_a, law_b};
use hyperdoc::equality::{thm3_pull, thm3_push, yoneda_check};
use hyperdoc::hyperdoctrine::reconstruction_check;
use hyperdoc::monoidal::{fiber_structure, law_c, law_e, law_f, law_forall_multimap};
use hyperdoc::quantifiers::{adjunction_check, co_yoneda, compose_quantifier_iso};
use hyperdoc::{Category, Distributor, Functor, Limits, Presheaf, Variance};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cat(i: usize) -> Arc<Category> {
    Arc::new(match i % 7 {
        0 => Category::terminal(),
        1 => Category::discrete(2),
        2 => Category::walking_arrow(),
        3 => Category::cospan(),
        4 => Category::span(),
        5 => Category::parallel_pair(),
        _ => Category::idempotent(),
    })
}

fn small(i: usize) -> Arc<Category> {
    cat(if i.is_multiple_of(2) { 0 } else { 2 })
}

fn lim() -> Limits {
    Limits::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn adjunction_is_bijective(i in 0usize..7, j in 0usize..7, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (cat(i), cat(j));
        let m = Distributor::random(&a, &b, 2, &mut rng);
        let r = Presheaf::random(&a, Variance::Contra, 2, &mut rng);
        let s = Presheaf::random(&b, Variance::Contra, 2, &mut rng);
        let report = adjunction_check(&m, &r, &s, lim()).unwrap();
        prop_assert!(report.holds, "{:?}", report.failure);
        prop_assert_eq!(report.left_count, report.right_count);
    }

    #[test]
    fn yoneda_both_ways(i in 0usize..7, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = cat(i);
        let r = Presheaf::random(&a, Variance::Contra, 2, &mut rng);
        prop_assert!(co_yoneda(&r, lim()).unwrap().holds);
        for x in 0..a.num_objects() {
            prop_assert!(yoneda_check(&r, x, lim()).unwrap().holds);
        }
    }

    #[test]
    fn chirality_and_equality(i in 0usize..7, j in 0usize..7, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (cat(i), cat(j));
        let m = Distributor::random(&a, &b, 2, &mut rng);
        let r = Presheaf::random(&a, Variance::Contra, 2, &mut rng);
        let s = Presheaf::random(&b, Variance::Contra, 2, &mut rng);
        let sc = Presheaf::random(&b, Variance::Co, 2, &mut rng);
        prop_assert!(law_a(&m, &s, lim()).unwrap().holds);
        prop_assert!(law_b(&m, &sc, lim()).unwrap().holds);
        prop_assert!(thm3_push(&m, &r, lim()).unwrap().holds);
        prop_assert!(thm3_pull(&m, &s, lim()).unwrap().holds);
    }

    #[test]
    fn composition(i in 0usize..7, j in 0usize..4, k in 0usize..4, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (cat(i), cat(j), cat(k));
        let m = Distributor::random(&a, &b, 2, &mut rng);
        let n = Distributor::random(&b, &c, 2, &mut rng);
        let r = Presheaf::random(&a, Variance::Contra, 2, &mut rng);
        prop_assert!(compose_quantifier_iso(&n, &m, &r, lim()).unwrap().holds);
    }

    #[test]
    fn tensor_laws(i in 0usize..4, j in 0usize..4, k in 0usize..2, l in 0usize..2, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c, d) = (cat(i), cat(j), small(k), small(l));
        let m = Distributor::random(&a, &c, 2, &mut rng);
        let n = Distributor::random(&b, &d, 2, &mut rng);
        let r = Presheaf::random(&a, Variance::Contra, 2, &mut rng);
        let s = Presheaf::random(&b, Variance::Contra, 2, &mut rng);
        prop_assert!(law_c(&m, &n, &r, &s, lim()).unwrap().holds);
        let n_rev = Distributor::random(&d, &b, 2, &mut rng);
        prop_assert!(law_forall_multimap(&m, &n_rev, &r, &s, lim()).unwrap().holds);
        // (e) and (f) only promise a natural map
        let m_in = Distributor::random(&c, &a, 2, &mut rng);
        let n_in = Distributor::random(&d, &b, 2, &mut rng);
        prop_assert!(law_e(&m_in, &n_in, &r, &s, lim()).is_ok());
        let rc = Presheaf::random(&a, Variance::Co, 2, &mut rng);
        let sc = Presheaf::random(&b, Variance::Co, 2, &mut rng);
        prop_assert!(law_f(&m, &n, &rc, &sc, lim()).is_ok());
    }

    #[test]
    fn reconstruction(i in 0usize..7, j in 0usize..7, pick: usize, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (cat(i), cat(j));
        let fs = Functor::enumerate(&a, &b, 4096).unwrap();
        prop_assume!(!fs.is_empty());
        let f = &fs[pick % fs.len()];
        let r = Presheaf::random(&a, Variance::Contra, 2, &mut rng);
        let s = Presheaf::random(&b, Variance::Contra, 2, &mut rng);
        for report in reconstruction_check(f, &r, &s, lim()).unwrap() {
            prop_assert!(report.holds);
        }
    }

    #[test]
    fn fibers_are_cartesian_closed(i in 0usize..7, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = cat(i);
        let fib = fiber_structure(&a).unwrap();
        let r = Presheaf::random(&a, Variance::Contra, 2, &mut rng);
        let s = Presheaf::random(&a, Variance::Contra, 2, &mut rng);
        prop_assert!(fib.top_check(lim()).unwrap().holds);
        prop_assert!(fib.meet_check(&r, &s, lim()).unwrap().holds);
        prop_assert!(fib.imp_check(&r, &s, lim()).unwrap().holds);
    }
}
