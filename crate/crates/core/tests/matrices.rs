//! Matrix quantifiers over Łukasiewicz chains, compared with the usual
//! formulas on numerators `k` standing for `k / top`.

use hyperdoc::matll::{law_box, law_sides, mat_exists, mat_forall, mv_chain, MVMatrix, Relation};
use proptest::prelude::*;

struct Luk(i64);

impl Luk {
    fn tensor(&self, x: i64, y: i64) -> i64 {
        (x + y - self.0).max(0)
    }
    fn par(&self, x: i64, y: i64) -> i64 {
        (x + y).min(self.0)
    }
    fn neg(&self, x: i64) -> i64 {
        self.0 - x
    }
}

fn ints(v: &[usize]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

fn matrix(n: usize) -> impl Strategy<Value = (usize, usize, Vec<usize>)> {
    (1usize..4, 1usize..4).prop_flat_map(move |(rows, cols)| {
        (Just(rows), Just(cols), proptest::collection::vec(0..n, rows * cols))
    })
}

proptest! {
    #[test]
    fn exists_and_forall(n in 2usize..5, (rows, cols, e) in matrix(4), seed in proptest::collection::vec(0usize..4, 6)) {
        let e: Vec<usize> = e.iter().map(|x| x % n).collect();
        let v = mv_chain(n).unwrap();
        let l = Luk(n as i64 - 1);
        let m = MVMatrix::from_rows(rows, cols, e.clone()).unwrap();
        let r: Vec<usize> = (0..cols).map(|a| seed[a % 6] % n).collect();
        let s: Vec<usize> = (0..rows).map(|b| seed[(b + 3) % 6] % n).collect();
        let get = |b: usize, a: usize| e[b * cols + a] as i64;
        let ex: Vec<i64> = (0..rows).map(|b| (0..cols).map(|a| l.tensor(get(b, a), r[a] as i64)).max().unwrap()).collect();
        let fa: Vec<i64> = (0..cols).map(|a| (0..rows).map(|b| l.par(l.neg(get(b, a)), s[b] as i64)).min().unwrap()).collect();
        prop_assert_eq!(ints(&mat_exists(&m, &r, &v).unwrap()), ex.clone());
        prop_assert_eq!(ints(&mat_forall(&m, &s, &v).unwrap()), fa.clone());
        // residuation: ∃_M R ≤ S iff R ≤ ∀_M S
        let left = ex.iter().zip(&s).all(|(x, &y)| *x <= y as i64);
        let right = r.iter().zip(&fa).all(|(&x, y)| x as i64 <= *y);
        prop_assert_eq!(left, right);
    }
}

/// Independent evaluation of laws (e) and (f) at one index pair, with
/// `M : A ⇸ C`, `N : B ⇸ D` stored row-major by target.
fn e_f_sides(law: &str, l: &Luk, m: &MVMatrix, n: &MVMatrix, r: &[usize], s: &[usize]) -> (Vec<i64>, Vec<i64>) {
    let (mg, ng) = (|c, a| m.get(c, a) as i64, |d, b| n.get(d, b) as i64);
    let (r, s) = (ints(r), ints(s));
    let pairs: Vec<(usize, usize)> = (0..r.len()).flat_map(|a| (0..s.len()).map(move |b| (a, b))).collect();
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for c in 0..m.rows() {
        for d in 0..n.rows() {
            if law == "e" {
                let fm = (0..r.len()).map(|a| l.par(r[a], mg(c, a))).min().unwrap();
                let fn_ = (0..s.len()).map(|b| l.par(s[b], ng(d, b))).min().unwrap();
                lhs.push(l.tensor(fm, fn_));
                rhs.push(pairs.iter().map(|&(a, b)| l.par(l.par(l.tensor(r[a], s[b]), mg(c, a)), ng(d, b))).min().unwrap());
            } else {
                lhs.push(pairs.iter().map(|&(a, b)| l.tensor(l.tensor(mg(c, a), ng(d, b)), l.par(r[a], s[b]))).max().unwrap());
                let em = (0..r.len()).map(|a| l.tensor(mg(c, a), r[a])).max().unwrap();
                let en = (0..s.len()).map(|b| l.tensor(ng(d, b), s[b])).max().unwrap();
                rhs.push(l.par(em, en));
            }
        }
    }
    (lhs, rhs)
}

#[test]
fn law_box_on_three_chains() {
    for n in [2, 3, 4] {
        let v = mv_chain(n).unwrap();
        let l = Luk(n as i64 - 1);
        for summary in law_box(&v, 10_000, 7).unwrap() {
            assert!(summary.passed(), "chain {n} law {}", summary.law);
            assert_eq!(summary.failures, 0);
            if summary.relation == Relation::Below {
                let w = summary.strict_witness.as_ref().unwrap_or_else(|| panic!("no strict witness for {} on chain {n}", summary.law));
                let (lhs, rhs) = e_f_sides(&summary.law, &l, &w.m, &w.n, &w.r, &w.s);
                assert_eq!(lhs, ints(&w.lhs));
                assert_eq!(rhs, ints(&w.rhs));
                assert!(lhs.iter().zip(&rhs).all(|(x, y)| x <= y) && lhs != rhs);
                let (a, b) = law_sides(&summary.law, &w.m, &w.n, &w.r, &w.s, &v).unwrap();
                assert_eq!((a, b), (w.lhs.clone(), w.rhs.clone()));
            }
        }
    }
}
