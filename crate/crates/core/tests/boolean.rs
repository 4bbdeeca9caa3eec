//! On discrete categories with presheaves of size at most one every
//! construction collapses to ordinary predicate logic. The expected truth
//! values below come from set comprehensions over object indices.

use std::sync::Arc;

use hyperdoc::hyperdoctrine::{emb_minus, emb_plus, pi, sigma, subst};
use hyperdoc::monoidal::law_e;
use hyperdoc::quantifiers::{exists_along, forall_along};
use hyperdoc::{Category, Distributor, FinSet, Functor, Limits, Presheaf, Variance};

fn bits(p: &Presheaf) -> Vec<bool> {
    (0..p.base.num_objects()).map(|x| p.size(x) > 0).collect()
}

fn exact(p: &Presheaf) -> Vec<usize> {
    (0..p.base.num_objects()).map(|x| p.size(x)).collect()
}

fn as_count(v: &[bool]) -> Vec<usize> {
    v.iter().map(|&b| b as usize).collect()
}

fn predicates(c: &Arc<Category>) -> Vec<Presheaf> {
    Presheaf::enumerate(c, Variance::Contra, 1, 1 << 12).unwrap()
}

fn discretes() -> Vec<Arc<Category>> {
    (1..=3).map(|n| Arc::new(Category::discrete(n))).collect()
}

#[test]
fn reconstruction_matches_comprehension() {
    let lim = Limits::default();
    let mut checked = 0;
    for a in &discretes() {
        for b in &discretes() {
            for f in Functor::enumerate(a, b, 1 << 12).unwrap() {
                let fibre = |y: usize| -> Vec<usize> { (0..a.num_objects()).filter(|&x| f.obj(x) == y).collect() };
                for r in predicates(a) {
                    let r_ = bits(&r);
                    let some: Vec<bool> = (0..b.num_objects()).map(|y| fibre(y).iter().any(|&x| r_[x])).collect();
                    let every: Vec<bool> = (0..b.num_objects()).map(|y| fibre(y).iter().all(|&x| r_[x])).collect();
                    assert_eq!(bits(&sigma(&f, &r, lim).unwrap()), some);
                    assert_eq!(bits(&exists_along(&emb_plus(&f), &r, lim).unwrap().presheaf), some);
                    assert_eq!(exact(&pi(&f, &r, lim).unwrap()), as_count(&every));
                    assert_eq!(exact(&forall_along(&emb_minus(&f), &r, lim).unwrap().presheaf), as_count(&every));
                    checked += 1;
                }
                for s in predicates(b) {
                    let s_ = bits(&s);
                    let pulled: Vec<bool> = (0..a.num_objects()).map(|x| s_[f.obj(x)]).collect();
                    assert_eq!(exact(&subst(&f, &s).unwrap()), as_count(&pulled));
                    assert_eq!(exact(&exists_along(&emb_minus(&f), &s, lim).unwrap().presheaf), as_count(&pulled));
                    assert_eq!(exact(&forall_along(&emb_plus(&f), &s, lim).unwrap().presheaf), as_count(&pulled));
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 500, "{checked}");
}

#[test]
fn quantifiers_along_relations() {
    let lim = Limits::default();
    for a in &discretes() {
        for b in &discretes() {
            for m in Distributor::enumerate(a, b, 1, 1 << 12).unwrap() {
                let rel = |y: usize, x: usize| m.size(y, x) > 0;
                for r in predicates(a) {
                    let r_ = bits(&r);
                    let want: Vec<bool> = (0..b.num_objects())
                        .map(|y| (0..a.num_objects()).any(|x| rel(y, x) && r_[x]))
                        .collect();
                    assert_eq!(bits(&exists_along(&m, &r, lim).unwrap().presheaf), want);
                }
                for s in predicates(b) {
                    let s_ = bits(&s);
                    let want: Vec<bool> = (0..a.num_objects())
                        .map(|x| (0..b.num_objects()).all(|y| !rel(y, x) || s_[y]))
                        .collect();
                    assert_eq!(exact(&forall_along(&m, &s, lim).unwrap().presheaf), as_count(&want));
                }
            }
        }
    }
}

/// `(∀x. M→R) ∧ (∀y. N→S)` versus `∀xy. M∧N → R∧S` with `M` empty,
/// `N` full and `S` false: the left side is false, the right side true.
#[test]
fn law_e_fails_on_booleans() {
    let one = Arc::new(Category::terminal());
    let rel = |inhabited: bool| {
        Distributor::build(
            &one,
            &one,
            |_, _| if inhabited { FinSet::singleton("m") } else { FinSet::empty() },
            |_, _, x| x,
            |_, _, x| x,
        )
    };
    let pred = |truth: bool| {
        let v = if truth { FinSet::singleton("t") } else { FinSet::empty() };
        Presheaf::build(&one, Variance::Contra, vec![v], |_, x| x)
    };
    let (mb, nb, rb, sb) = (false, true, true, false);
    let lhs = (!mb || rb) && (!nb || sb);
    let rhs = !(mb && nb) || (rb && sb);
    let report = law_e(&rel(mb), &rel(nb), &pred(rb), &pred(sb), Limits::default()).unwrap();
    assert_eq!(report.witness.src.size(0) > 0, lhs);
    assert_eq!(report.witness.tgt.size(0) > 0, rhs);
    assert!(!report.holds);
}
