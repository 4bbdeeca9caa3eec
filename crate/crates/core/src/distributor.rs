//! Distributors `M : A ⇸ B`, i.e. functors `B^op × A -> Set`.

use std::sync::Arc;

use rand::Rng;

use crate::category::Category;
use crate::error::{Error, Limits, Result};
use crate::finset::{FinSet, SetMap};
use crate::functor::Functor;
use crate::presheaf::{Presheaf, Variance};
use crate::quantifiers::{coend, CoendResult};

/// Value `M(b,a)` sits at `b * |A| + a`. For `g : b' -> b` the left action
/// `left[g * |A| + a]` maps `M(b,a) -> M(b',a)`; for `f : a -> a'` the
/// right action `right[f * |B| + b]` maps `M(b,a) -> M(b,a')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distributor {
    pub src: Arc<Category>,
    pub tgt: Arc<Category>,
    pub values: Vec<FinSet>,
    pub left: Vec<SetMap>,
    pub right: Vec<SetMap>,
}

impl Distributor {
    /// Assembles a distributor from values and elementwise actions.
    pub fn build(
        src: &Arc<Category>,
        tgt: &Arc<Category>,
        value: impl Fn(usize, usize) -> FinSet,
        left: impl Fn(usize, usize, usize) -> usize,
        right: impl Fn(usize, usize, usize) -> usize,
    ) -> Distributor {
        let (na, nb) = (src.num_objects(), tgt.num_objects());
        let mut values = Vec::with_capacity(na * nb);
        for b in 0..nb {
            for a in 0..na {
                values.push(value(b, a));
            }
        }
        let size = |b: usize, a: usize| values[b * na + a].len();
        let mut lt = Vec::with_capacity(tgt.num_morphisms() * na);
        for g in 0..tgt.num_morphisms() {
            let (b1, b) = (tgt.src(g), tgt.tgt(g));
            for a in 0..na {
                lt.push(SetMap::new((0..size(b, a)).map(|e| left(g, a, e)).collect(), size(b1, a)));
            }
        }
        let mut rt = Vec::with_capacity(src.num_morphisms() * nb);
        for f in 0..src.num_morphisms() {
            let (a, a1) = (src.src(f), src.tgt(f));
            for b in 0..nb {
                rt.push(SetMap::new((0..size(b, a)).map(|e| right(f, b, e)).collect(), size(b, a1)));
            }
        }
        Distributor { src: src.clone(), tgt: tgt.clone(), values, left: lt, right: rt }
    }

    pub fn index(&self, b: usize, a: usize) -> usize {
        b * self.src.num_objects() + a
    }

    pub fn value(&self, b: usize, a: usize) -> &FinSet {
        &self.values[self.index(b, a)]
    }

    pub fn size(&self, b: usize, a: usize) -> usize {
        self.value(b, a).len()
    }

    /// Left action of `g : b' -> b` at `a`.
    pub fn act_left(&self, g: usize, a: usize, x: usize) -> usize {
        self.left[g * self.src.num_objects() + a].apply(x)
    }

    /// Right action of `f : a -> a'` at `b`.
    pub fn act_right(&self, f: usize, b: usize, x: usize) -> usize {
        self.right[f * self.tgt.num_objects() + b].apply(x)
    }

    /// `M(b, -)`, covariant on `A`.
    pub fn row(&self, b: usize) -> Presheaf {
        let nb = self.tgt.num_objects();
        Presheaf {
            base: self.src.clone(),
            variance: Variance::Co,
            values: (0..self.src.num_objects()).map(|a| self.value(b, a).clone()).collect(),
            actions: (0..self.src.num_morphisms()).map(|f| self.right[f * nb + b].clone()).collect(),
        }
    }

    /// `M(-, a)`, contravariant on `B`.
    pub fn column(&self, a: usize) -> Presheaf {
        let na = self.src.num_objects();
        Presheaf {
            base: self.tgt.clone(),
            variance: Variance::Contra,
            values: (0..self.tgt.num_objects()).map(|b| self.value(b, a).clone()).collect(),
            actions: (0..self.tgt.num_morphisms()).map(|g| self.left[g * na + a].clone()).collect(),
        }
    }

    pub fn validate(&self) -> Vec<String> {
        let (a, b) = (&self.src, &self.tgt);
        let (na, nb) = (a.num_objects(), b.num_objects());
        let mut v = Vec::new();
        if self.values.len() != na * nb
            || self.left.len() != b.num_morphisms() * na
            || self.right.len() != a.num_morphisms() * nb
        {
            v.push("value or action table is not total".to_string());
            return v;
        }
        for x in 0..nb {
            for msg in self.row(x).validate() {
                v.push(format!("right action at {}: {msg}", b.object_label(x)));
            }
        }
        for y in 0..na {
            for msg in self.column(y).validate() {
                v.push(format!("left action at {}: {msg}", a.object_label(y)));
            }
        }
        if !v.is_empty() {
            return v;
        }
        for g in 0..b.num_morphisms() {
            let (b1, b0) = (b.src(g), b.tgt(g));
            for f in 0..a.num_morphisms() {
                let (a0, a1) = (a.src(f), a.tgt(f));
                for x in 0..self.size(b0, a0) {
                    let one = self.act_left(g, a1, self.act_right(f, b0, x));
                    let two = self.act_right(f, b1, self.act_left(g, a0, x));
                    if one != two {
                        v.push(format!(
                            "action square fails at ({},{},{},{})",
                            b.morphism(g).label,
                            a.morphism(f).label,
                            b.object_label(b0),
                            a.object_label(a0)
                        ));
                        break;
                    }
                }
            }
        }
        v
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid { kind: "distributor".into(), violations: v })
        }
    }

    /// The same data as a contravariant presheaf on `B × A^op`; object
    /// `(b,a)` has the same index as `M(b,a)`.
    pub fn as_presheaf(&self) -> Presheaf {
        let base = Arc::new(self.tgt.product(&self.src.opposite()));
        let ma = self.src.num_morphisms();
        let actions = (0..base.num_morphisms())
            .map(|gf| {
                let (g, f) = (gf / ma, gf % ma);
                // f : a -> a1 in A, so (g,f) : (b',a1) -> (b,a) in B × A^op
                let (a1, b) = (self.src.tgt(f), self.tgt.tgt(g));
                self.left[g * self.src.num_objects() + a1].after(&self.right[f * self.tgt.num_objects() + b])
            })
            .collect();
        Presheaf { base, variance: Variance::Contra, values: self.values.clone(), actions }
    }

    /// Inverse of [`Distributor::as_presheaf`].
    pub fn from_presheaf(p: &Presheaf, src: &Arc<Category>, tgt: &Arc<Category>) -> Result<Distributor> {
        let expect = tgt.product(&src.opposite());
        if p.variance != Variance::Contra || *p.base != expect {
            return Err(Error::BaseMismatch("presheaf does not live over B × A^op".into()));
        }
        let (na, nb, ma) = (src.num_objects(), tgt.num_objects(), src.num_morphisms());
        let mut left = Vec::with_capacity(tgt.num_morphisms() * na);
        for g in 0..tgt.num_morphisms() {
            for a in 0..na {
                left.push(p.actions[g * ma + src.identity(a)].clone());
            }
        }
        let mut right = Vec::with_capacity(ma * nb);
        for f in 0..ma {
            for b in 0..nb {
                right.push(p.actions[tgt.identity(b) * ma + f].clone());
            }
        }
        Ok(Distributor { src: src.clone(), tgt: tgt.clone(), values: p.values.clone(), left, right })
    }

    /// `id_A(b,a) = hom_A(b,a)`, acting by composition.
    pub fn identity(a: &Arc<Category>) -> Distributor {
        Distributor::build(
            a,
            a,
            |y, x| hom_set(a, y, x),
            |g, x, h| a.hom_position(a.comp(a.hom(a.tgt(g), x)[h], g)),
            |f, y, h| a.hom_position(a.comp(f, a.hom(y, a.src(f))[h])),
        )
    }

    /// `N ∘ M` for `N : B ⇸ C` and `M : A ⇸ B`, by the coend over `B`.
    pub fn compose(n: &Distributor, m: &Distributor, lim: Limits) -> Result<Composite> {
        if *m.tgt != *n.src {
            return Err(Error::BaseMismatch("distributor composite: middle categories differ".into()));
        }
        let (na, nc) = (m.src.num_objects(), n.tgt.num_objects());
        let rows: Vec<Presheaf> = (0..nc).map(|c| n.row(c)).collect();
        let cols: Vec<Presheaf> = (0..na).map(|a| m.column(a)).collect();
        let mut coends = Vec::with_capacity(na * nc);
        for row in &rows {
            for col in &cols {
                coends.push(coend(row, col, lim)?);
            }
        }
        let mut left = Vec::with_capacity(n.tgt.num_morphisms() * na);
        for h in 0..n.tgt.num_morphisms() {
            let (c1, c) = (n.tgt.src(h), n.tgt.tgt(h));
            for a in 0..na {
                let (from, to) = (&coends[c * na + a], &coends[c1 * na + a]);
                left.push(from.induced(to, |b, x, y| (b, n.act_left(h, b, x), y))?);
            }
        }
        let mut right = Vec::with_capacity(m.src.num_morphisms() * nc);
        for f in 0..m.src.num_morphisms() {
            let (a, a1) = (m.src.src(f), m.src.tgt(f));
            for c in 0..nc {
                let (from, to) = (&coends[c * na + a], &coends[c * na + a1]);
                right.push(from.induced(to, |b, x, y| (b, x, m.act_right(f, b, y)))?);
            }
        }
        let dist = Distributor {
            src: m.src.clone(),
            tgt: n.tgt.clone(),
            values: coends.iter().map(|r| r.value.clone()).collect(),
            left,
            right,
        };
        Ok(Composite { dist, coends })
    }

    /// `M* : B^op ⇸ A^op` with `M*(a,b) = M(b,a)`. An involution on the nose.
    pub fn dual(&self) -> Distributor {
        let (na, nb) = (self.src.num_objects(), self.tgt.num_objects());
        let mut values = Vec::with_capacity(na * nb);
        for a in 0..na {
            for b in 0..nb {
                values.push(self.value(b, a).clone());
            }
        }
        Distributor {
            src: Arc::new(self.tgt.opposite()),
            tgt: Arc::new(self.src.opposite()),
            values,
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    /// `M ⊗ N : A × B ⇸ C × D`, componentwise.
    pub fn tensor(m: &Distributor, n: &Distributor) -> Distributor {
        let src = Arc::new(m.src.product(&n.src));
        let tgt = Arc::new(m.tgt.product(&n.tgt));
        let (nb, nd) = (n.src.num_objects(), n.tgt.num_objects());
        let (mb, md) = (n.src.num_morphisms(), n.tgt.num_morphisms());
        let pair = |x: usize, y: usize, sz: usize| x * sz + y;
        Distributor::build(
            &src,
            &tgt,
            |cd, ab| m.value(cd / nd, ab / nb).product(n.value(cd % nd, ab % nb)),
            |gh, ab, e| {
                let (g, h, a, b) = (gh / md, gh % md, ab / nb, ab % nb);
                let sz = n.size(n.tgt.tgt(h), b).max(1);
                let ny = n.size(n.tgt.src(h), b);
                pair(m.act_left(g, a, e / sz), n.act_left(h, b, e % sz), ny)
            },
            |fk, cd, e| {
                let (f, k, c, d) = (fk / mb, fk % mb, cd / nd, cd % nd);
                let sz = n.size(d, n.src.src(k)).max(1);
                let ny = n.size(d, n.src.tgt(k));
                pair(m.act_right(f, c, e / sz), n.act_right(k, d, e % sz), ny)
            },
        )
    }

    /// For `M : X × Y ⇸ Z`, the distributor `X ⇸ Y^op × Z` with
    /// `curry(M)((y,z),x) = M(z,(x,y))`. Only tables move.
    pub fn curry(&self, x: &Arc<Category>, y: &Arc<Category>) -> Result<Distributor> {
        if *self.src != x.product(y) {
            return Err(Error::BaseMismatch("curry: source is not the given product".into()));
        }
        let z = self.tgt.clone();
        let tgt = Arc::new(y.opposite().product(&z));
        let (ny, nz) = (y.num_objects(), z.num_objects());
        let (my, mz) = (y.num_morphisms(), z.num_morphisms());
        Ok(Distributor::build(
            x,
            &tgt,
            |yz, xi| self.value(yz % nz, xi * ny + yz / nz).clone(),
            |kg, xi, e| {
                // k : y -> y' in Y, g : z' -> z in Z
                let (k, g) = (kg / mz, kg % mz);
                let (y1, z0) = (y.tgt(k), z.tgt(g));
                let e = self.act_right(x.identity(xi) * my + k, z0, e);
                self.act_left(g, xi * ny + y1, e)
            },
            |f, yz, e| {
                let (yi, zi) = (yz / nz, yz % nz);
                self.act_right(f * my + y.identity(yi), zi, e)
            },
        ))
    }

    /// `(b,a') ↦ M(b,Fa')` for `F : A' -> A`.
    pub fn reindex_src(&self, functor: &Functor) -> Result<Distributor> {
        if *functor.tgt != *self.src {
            return Err(Error::BaseMismatch("reindexing along a functor into another category".into()));
        }
        Ok(Distributor::build(
            &functor.src,
            &self.tgt,
            |b, a| self.value(b, functor.obj(a)).clone(),
            |g, a, e| self.act_left(g, functor.obj(a), e),
            |f, b, e| self.act_right(functor.mor(f), b, e),
        ))
    }

    /// `(b',a) ↦ M(Gb',a)` for `G : B' -> B`.
    pub fn reindex_tgt(&self, functor: &Functor) -> Result<Distributor> {
        if *functor.tgt != *self.tgt {
            return Err(Error::BaseMismatch("reindexing along a functor into another category".into()));
        }
        Ok(Distributor::build(
            &self.src,
            &functor.src,
            |b, a| self.value(functor.obj(b), a).clone(),
            |g, a, e| self.act_left(functor.mor(g), a, e),
            |f, b, e| self.act_right(f, functor.obj(b), e),
        ))
    }

    /// Every distributor with values of size `<= max_size`.
    pub fn enumerate(src: &Arc<Category>, tgt: &Arc<Category>, max_size: usize, cap: usize) -> Result<Vec<Distributor>> {
        let base = Arc::new(tgt.product(&src.opposite()));
        Presheaf::enumerate(&base, Variance::Contra, max_size, cap)?
            .iter()
            .map(|p| Distributor::from_presheaf(p, src, tgt))
            .collect()
    }

    pub fn random<R: Rng>(src: &Arc<Category>, tgt: &Arc<Category>, max_size: usize, rng: &mut R) -> Distributor {
        let base = Arc::new(tgt.product(&src.opposite()));
        let p = Presheaf::random(&base, Variance::Contra, max_size, rng);
        Distributor::from_presheaf(&p, src, tgt).expect("base built above")
    }
}

/// `hom(x, y)` as a set labelled by morphism labels.
pub(crate) fn hom_set(c: &Category, x: usize, y: usize) -> FinSet {
    FinSet::from_distinct(c.hom(x, y).iter().map(|&h| c.morphism(h).label.clone()).collect())
}

/// A composite distributor together with the coends that produced each value.
#[derive(Debug, Clone)]
pub struct Composite {
    pub dist: Distributor,
    /// Coend for `(c,a)` at `c * |A| + a`.
    pub coends: Vec<CoendResult>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn cats() -> Vec<Arc<Category>> {
        vec![
            Arc::new(Category::terminal()),
            Arc::new(Category::walking_arrow()),
            Arc::new(Category::cospan()),
            Arc::new(Category::involution()),
        ]
    }

    #[test]
    fn identity_is_valid_and_counts_homs() {
        for c in cats() {
            assert!(Distributor::identity(&c).validate().is_empty());
        }
        let w = Arc::new(Category::walking_arrow());
        let id = Distributor::identity(&w);
        assert_eq!(id.values.iter().filter(|v| !v.is_empty()).count(), 3);
    }

    #[test]
    fn presheaf_view_round_trips() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for a in cats() {
            for b in cats() {
                let m = Distributor::random(&a, &b, 2, &mut rng);
                assert!(m.validate().is_empty());
                assert!(m.as_presheaf().validate().is_empty());
                assert_eq!(Distributor::from_presheaf(&m.as_presheaf(), &a, &b).unwrap(), m);
                assert_eq!(m.dual().dual(), m);
                assert!(m.dual().validate().is_empty());
            }
        }
    }

    #[test]
    fn perturbed_square_is_named() {
        // M : arrow ⇸ arrow with M(b,a) = {0,1} everywhere and identity actions,
        // then one entry of a right action is changed.
        let w = Arc::new(Category::walking_arrow());
        let two = FinSet::numbered(2);
        let mut m = Distributor::build(&w, &w, |_, _| two.clone(), |_, _, e| e, |_, _, e| e);
        assert!(m.validate().is_empty());
        // right action of f at b = 0 becomes constant
        let f = w.morphism_index("f").unwrap();
        m.right[f * 2] = SetMap::new(vec![0, 0], 2);
        let v = m.validate();
        assert_eq!(v, vec!["action square fails at (f,f,1,0)".to_string()]);
    }

    #[test]
    fn tensor_and_curry_are_valid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let w = Arc::new(Category::walking_arrow());
        let t = Arc::new(Category::terminal());
        let m = Distributor::random(&w, &w, 2, &mut rng);
        let n = Distributor::random(&t, &w, 2, &mut rng);
        let mn = Distributor::tensor(&m, &n);
        assert!(mn.validate().is_empty(), "{:?}", mn.validate());
        let ww = Arc::new(w.product(&w));
        let p = Distributor::random(&ww, &t, 2, &mut rng);
        let c = p.curry(&w, &w).unwrap();
        assert!(c.validate().is_empty(), "{:?}", c.validate());
    }

    #[test]
    fn discrete_composite_is_a_disjoint_union() {
        let d = Arc::new(Category::discrete(2));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let m = Distributor::random(&d, &d, 2, &mut rng);
        let n = Distributor::random(&d, &d, 2, &mut rng);
        let nm = Distributor::compose(&n, &m, Limits::default()).unwrap().dist;
        for c in 0..2 {
            for a in 0..2 {
                let expect: usize = (0..2).map(|b| n.size(c, b) * m.size(b, a)).sum();
                assert_eq!(nm.size(c, a), expect);
            }
        }
    }
}
