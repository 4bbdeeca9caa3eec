//! Quantifier values checked against brute-force counts written here from
//! the coend and end formulas, independent of the engine's own routines.

use std::sync::Arc;

use hyperdoc::hyperdoctrine::{pi, sigma, subst};
use hyperdoc::quantifiers::{exists_along, forall_along};
use hyperdoc::{Category, Distributor, Functor, Limits, Presheaf, Variance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Classes(Vec<usize>);

impl Classes {
    fn new(n: usize) -> Classes {
        Classes((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn join(&mut self, x: usize, y: usize) {
        let (a, b) = (self.find(x), self.find(y));
        self.0[a] = b;
    }
    fn count(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// `|∫^a P(a) × Q(a)|` for `P` covariant and `Q` contravariant, given by
/// sizes and actions: for `f : a -> a'` we glue `(a', P(f) p, q)` to `(a, p, Q(f) q)`.
fn coend_size(
    c: &Category,
    size: impl Fn(usize) -> (usize, usize),
    push: impl Fn(usize, usize) -> usize,
    pull: impl Fn(usize, usize) -> usize,
) -> usize {
    let mut offset = vec![0];
    for a in 0..c.num_objects() {
        let (p, q) = size(a);
        offset.push(offset[a] + p * q);
    }
    let idx = |a: usize, p: usize, q: usize| offset[a] + p * size(a).1 + q;
    let mut uf = Classes::new(offset[c.num_objects()]);
    for f in 0..c.num_morphisms() {
        let (a, a2) = (c.src(f), c.tgt(f));
        for p in 0..size(a).0 {
            for q in 0..size(a2).1 {
                uf.join(idx(a2, push(f, p), q), idx(a, p, pull(f, q)));
            }
        }
    }
    uf.count()
}

/// `|(∃_M R)(b)|`: triples `(a, m ∈ M(b,a), r ∈ R(a))` with
/// `(a', M(f) m, r') ~ (a, m, R(f) r')`.
fn exists_oracle(m: &Distributor, r: &Presheaf, b: usize) -> usize {
    let a_cat = &m.src;
    coend_size(
        a_cat,
        |a| (m.size(b, a), r.size(a)),
        |f, x| m.act_right(f, b, x),
        |f, q| r.act(f, q),
    )
}

/// Counts natural families by brute force over all assignments.
fn families(objects: usize, dom: impl Fn(usize) -> usize, cod: impl Fn(usize) -> usize, natural: impl Fn(&[Vec<usize>]) -> bool) -> usize {
    let mut choice: Vec<Vec<usize>> = (0..objects).map(|x| vec![0; dom(x)]).collect();
    let slots: Vec<(usize, usize)> = (0..objects).flat_map(|x| (0..dom(x)).map(move |i| (x, i))).collect();
    if slots.iter().any(|&(x, _)| cod(x) == 0) {
        return 0;
    }
    let mut count = 0;
    loop {
        if natural(&choice) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == slots.len() {
                return count;
            }
            let (x, i) = slots[k];
            choice[x][i] += 1;
            if choice[x][i] < cod(x) {
                break;
            }
            choice[x][i] = 0;
            k += 1;
        }
    }
}

/// `|(∀_M S)(a)|`: families `φ_b : M(b,a) -> S(b)` with
/// `φ_{b'}(M(g) m) = S(g) φ_b(m)` for `g : b' -> b`.
fn forall_oracle(m: &Distributor, s: &Presheaf, a: usize) -> usize {
    let b_cat = &m.tgt;
    families(
        b_cat.num_objects(),
        |b| m.size(b, a),
        |b| s.size(b),
        |phi| {
            (0..b_cat.num_morphisms()).all(|g| {
                let (b2, b) = (b_cat.src(g), b_cat.tgt(g));
                (0..m.size(b, a)).all(|x| phi[b2][m.act_left(g, a, x)] == s.act(g, phi[b][x]))
            })
        },
    )
}

fn cats() -> Vec<Arc<Category>> {
    [
        Category::terminal(),
        Category::discrete(2),
        Category::walking_arrow(),
        Category::cospan(),
        Category::parallel_pair(),
        Category::idempotent(),
    ]
    .into_iter()
    .map(Arc::new)
    .collect()
}

#[test]
fn exists_and_forall_sizes() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let lim = Limits::default();
    for a in &cats() {
        for b in &cats() {
            for _ in 0..4 {
                let m = Distributor::random(a, b, 2, &mut rng);
                let r = Presheaf::random(a, Variance::Contra, 2, &mut rng);
                let s = Presheaf::random(b, Variance::Contra, 2, &mut rng);
                let ex = exists_along(&m, &r, lim).unwrap().presheaf;
                for y in 0..b.num_objects() {
                    assert_eq!(ex.size(y), exists_oracle(&m, &r, y));
                }
                let fa = forall_along(&m, &s, lim).unwrap().presheaf;
                for x in 0..a.num_objects() {
                    assert_eq!(fa.size(x), forall_oracle(&m, &s, x));
                }
            }
        }
    }
}

/// `Σ_F R (b) = ∫^a hom(b, Fa) × R(a)`, `Π_F R (b) = ∫_a hom(Fa, b) ⇒ R(a)`.
#[test]
fn sigma_pi_subst_sizes() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let lim = Limits::default();
    for a in &cats() {
        for b in &cats() {
            let Ok(fs) = Functor::enumerate(a, b, 256) else { continue };
            for f in fs.iter().take(4) {
                let r = Presheaf::random(a, Variance::Contra, 2, &mut rng);
                let s = Presheaf::random(b, Variance::Contra, 2, &mut rng);
                let sg = sigma(f, &r, lim).unwrap();
                let p = pi(f, &r, lim).unwrap();
                let st = subst(f, &s).unwrap();
                for y in 0..b.num_objects() {
                    let want = coend_size(
                        a,
                        |x| (b.hom(y, f.obj(x)).len(), r.size(x)),
                        |k, h| b.hom_position(b.comp(f.mor(k), b.hom(y, f.obj(a.src(k)))[h])),
                        |k, q| r.act(k, q),
                    );
                    assert_eq!(sg.size(y), want, "sigma");
                    let ends = families(
                        a.num_objects(),
                        |x| b.hom(f.obj(x), y).len(),
                        |x| r.size(x),
                        |phi| {
                            (0..a.num_morphisms()).all(|k| {
                                let (x0, x1) = (a.src(k), a.tgt(k));
                                (0..b.hom(f.obj(x1), y).len()).all(|h| {
                                    let pre = b.comp(b.hom(f.obj(x1), y)[h], f.mor(k));
                                    phi[x0][b.hom_position(pre)] == r.act(k, phi[x1][h])
                                })
                            })
                        },
                    );
                    assert_eq!(p.size(y), ends, "pi");
                }
                for x in 0..a.num_objects() {
                    assert_eq!(st.size(x), s.size(f.obj(x)), "subst");
                }
            }
        }
    }
}
