//! Functors as distributors, the presheaf hyperdoctrine `Σ_F ⊣ F* ⊣ Π_F`,
//! and the comparison of both with the quantifiers along distributors.

use std::sync::Arc;

use crate::category::Category;
use crate::distributor::{hom_set, Distributor};
use crate::error::{Error, Limits, Result};
use crate::finset::SetMap;
use crate::functor::Functor;
use crate::nat::{check_iso, IsoReport, NatTrans};
use crate::presheaf::{Presheaf, Variance};
use crate::quantifiers::{coend, exists_along, forall_along, nat_families, CoendResult, EndResult};

/// `emb⁺F : A ⇸ B`, `(b,a) ↦ hom_B(b, Fa)`.
pub fn emb_plus(f: &Functor) -> Distributor {
    let b = &f.tgt;
    Distributor::build(
        &f.src,
        b,
        |y, x| hom_set(b, y, f.obj(x)),
        |g, x, h| b.hom_position(b.comp(b.hom(b.tgt(g), f.obj(x))[h], g)),
        |k, y, h| b.hom_position(b.comp(f.mor(k), b.hom(y, f.obj(f.src.src(k)))[h])),
    )
}

/// `emb⁻F : B ⇸ A`, `(a,b) ↦ hom_B(Fa, b)`.
pub fn emb_minus(f: &Functor) -> Distributor {
    let b = &f.tgt;
    Distributor::build(
        b,
        &f.src,
        |x, y| hom_set(b, f.obj(x), y),
        |g, y, h| b.hom_position(b.comp(b.hom(f.obj(f.src.tgt(g)), y)[h], f.mor(g))),
        |k, x, h| b.hom_position(b.comp(k, b.hom(f.obj(x), b.src(k))[h])),
    )
}

/// Both embeddings of a functor.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub of: Functor,
    pub plus: Distributor,
    pub minus: Distributor,
}

impl Embedding {
    pub fn new(f: &Functor) -> Embedding {
        Embedding { of: f.clone(), plus: emb_plus(f), minus: emb_minus(f) }
    }
}

fn check_functor(f: &Functor) -> Result<()> {
    f.ensure_valid()
}

/// `Σ_F R` together with its coends: `(Σ_F R)(b) = ∫^a hom_B(b, Fa) × R(a)`.
pub fn sigma_with(f: &Functor, r: &Presheaf, lim: Limits) -> Result<(Presheaf, Vec<CoendResult>)> {
    check_functor(f)?;
    if r.variance != Variance::Contra || *r.base != *f.src {
        return Err(Error::BaseMismatch("Σ_F takes a contravariant presheaf on the source of F".into()));
    }
    let (a, b) = (&f.src, &f.tgt);
    let coends = (0..b.num_objects())
        .map(|y| {
            let values = (0..a.num_objects()).map(|x| hom_set(b, y, f.obj(x))).collect();
            let p = Presheaf::build(a, Variance::Co, values, |k, h| {
                b.hom_position(b.comp(f.mor(k), b.hom(y, f.obj(a.src(k)))[h]))
            });
            coend(&p, r, lim)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut actions = Vec::with_capacity(b.num_morphisms());
    for g in 0..b.num_morphisms() {
        let (y1, y) = (b.src(g), b.tgt(g));
        actions.push(coends[y].induced(&coends[y1], |x, h, e| {
            (x, b.hom_position(b.comp(b.hom(y, f.obj(x))[h], g)), e)
        })?);
    }
    let p = Presheaf {
        base: b.clone(),
        variance: Variance::Contra,
        values: coends.iter().map(|c| c.value.clone()).collect(),
        actions,
    };
    Ok((p, coends))
}

pub fn sigma(f: &Functor, r: &Presheaf, lim: Limits) -> Result<Presheaf> {
    Ok(sigma_with(f, r, lim)?.0)
}

/// `Π_F R` together with its ends: `(Π_F R)(b) = ∫_a hom_B(Fa, b) → R(a)`.
pub fn pi_with(f: &Functor, r: &Presheaf, lim: Limits) -> Result<(Presheaf, Vec<EndResult>)> {
    check_functor(f)?;
    if r.variance != Variance::Contra || *r.base != *f.src {
        return Err(Error::BaseMismatch("Π_F takes a contravariant presheaf on the source of F".into()));
    }
    let (a, b) = (&f.src, &f.tgt);
    let ends = (0..b.num_objects())
        .map(|y| {
            let values = (0..a.num_objects()).map(|x| hom_set(b, f.obj(x), y)).collect();
            let p = Presheaf::build(a, Variance::Contra, values, |k, h| {
                b.hom_position(b.comp(b.hom(f.obj(a.tgt(k)), y)[h], f.mor(k)))
            });
            nat_families(&p, r, lim)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut actions = Vec::with_capacity(b.num_morphisms());
    for g in 0..b.num_morphisms() {
        let (y1, y) = (b.src(g), b.tgt(g));
        let table = ends[y]
            .families
            .iter()
            .map(|phi| {
                let psi: Vec<SetMap> = (0..a.num_objects())
                    .map(|x| {
                        let t = b.hom(f.obj(x), y1).iter().map(|&h| phi[x].apply(b.hom_position(b.comp(g, h))));
                        SetMap::new(t.collect(), r.size(x))
                    })
                    .collect();
                ends[y1].lookup(&psi)
            })
            .collect::<Result<Vec<_>>>()?;
        actions.push(SetMap::new(table, ends[y1].len()));
    }
    let p = Presheaf {
        base: b.clone(),
        variance: Variance::Contra,
        values: ends.iter().map(|e| e.value.clone()).collect(),
        actions,
    };
    Ok((p, ends))
}

pub fn pi(f: &Functor, r: &Presheaf, lim: Limits) -> Result<Presheaf> {
    Ok(pi_with(f, r, lim)?.0)
}

/// `F* S = S ∘ F`.
pub fn subst(f: &Functor, s: &Presheaf) -> Result<Presheaf> {
    check_functor(f)?;
    s.restrict(f)
}

/// The four comparisons
/// `Σ_F R ≅ ∃_{emb⁺F} R`, `F* S ≅ ∀_{emb⁺F} S`, `F* S ≅ ∃_{emb⁻F} S`,
/// `Π_F R ≅ ∀_{emb⁻F} R`, for `R` on the source and `S` on the target.
pub fn reconstruction_check(f: &Functor, r: &Presheaf, s: &Presheaf, lim: Limits) -> Result<[IsoReport; 4]> {
    let (a, b) = (&f.src, &f.tgt);
    let e = Embedding::new(f);

    let (sig, sig_c) = sigma_with(f, r, lim)?;
    let push_plus = exists_along(&e.plus, r, lim)?;
    let k = (0..b.num_objects())
        .map(|y| sig_c[y].induced(&push_plus.coends[y], |x, h, t| (x, h, t)))
        .collect::<Result<Vec<_>>>()?;
    let one = check_iso(&sig, &push_plus.presheaf, NatTrans::new(sig.clone(), push_plus.presheaf.clone(), k))?;

    // s ↦ (h ↦ S(h) s)
    let fs = subst(f, s)?;
    let pull_plus = forall_along(&e.plus, s, lim)?;
    let k = (0..a.num_objects())
        .map(|x| {
            let t = (0..fs.size(x))
                .map(|el| {
                    let fam: Vec<SetMap> = (0..b.num_objects())
                        .map(|y| SetMap::new(b.hom(y, f.obj(x)).iter().map(|&h| s.act(h, el)).collect(), s.size(y)))
                        .collect();
                    pull_plus.ends[x].lookup(&fam)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SetMap::new(t, pull_plus.ends[x].len()))
        })
        .collect::<Result<Vec<_>>>()?;
    let two = check_iso(&fs, &pull_plus.presheaf, NatTrans::new(fs.clone(), pull_plus.presheaf.clone(), k))?;

    // [b; h; s] ↦ S(h) s
    let push_minus = exists_along(&e.minus, s, lim)?;
    let k = (0..a.num_objects())
        .map(|x| push_minus.coends[x].descend(fs.size(x), |y, h, el| s.act(b.hom(f.obj(x), y)[h], el)))
        .collect::<Result<Vec<_>>>()?;
    let three = check_iso(&push_minus.presheaf, &fs, NatTrans::new(push_minus.presheaf.clone(), fs.clone(), k))?;

    let (pi_p, pi_e) = pi_with(f, r, lim)?;
    let pull_minus = forall_along(&e.minus, r, lim)?;
    let k = (0..b.num_objects())
        .map(|y| {
            let t = pi_e[y].families.iter().map(|phi| pull_minus.ends[y].lookup(phi)).collect::<Result<Vec<_>>>()?;
            Ok(SetMap::new(t, pull_minus.ends[y].len()))
        })
        .collect::<Result<Vec<_>>>()?;
    let four = check_iso(&pi_p, &pull_minus.presheaf, NatTrans::new(pi_p.clone(), pull_minus.presheaf.clone(), k))?;
    Ok([one, two, three, four])
}

/// `emb⁺(G∘F) ≅ emb⁺G ∘ emb⁺F` via `[b; k; h] ↦ G(h) ∘ k`, and
/// `emb⁻(G∘F) ≅ emb⁻F ∘ emb⁻G` via `[b; h; k] ↦ k ∘ G(h)`, compared as
/// presheaves on `C × A^op` and `A × C^op`.
pub fn emb_functoriality(f: &Functor, g: &Functor, lim: Limits) -> Result<[IsoReport; 2]> {
    let gf = g.after(f)?;
    let c = &g.tgt;
    let na = f.src.num_objects();

    let whole = emb_plus(&gf);
    let comp = Distributor::compose(&emb_plus(g), &emb_plus(f), lim)?;
    let (lhs, rhs) = (comp.dist.as_presheaf(), whole.as_presheaf());
    let k = (0..lhs.base.num_objects())
        .map(|ca| {
            let (z, x) = (ca / na, ca % na);
            comp.coends[ca].descend(rhs.size(ca), |y, kk, h| {
                let kk = c.hom(z, g.obj(y))[kk];
                let h = f.tgt.hom(y, f.obj(x))[h];
                c.hom_position(c.comp(g.mor(h), kk))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let plus = check_iso(&lhs, &rhs, NatTrans::new(lhs.clone(), rhs.clone(), k))?;

    let whole = emb_minus(&gf);
    let comp = Distributor::compose(&emb_minus(f), &emb_minus(g), lim)?;
    let (lhs, rhs) = (comp.dist.as_presheaf(), whole.as_presheaf());
    let nc = c.num_objects();
    let k = (0..lhs.base.num_objects())
        .map(|ac| {
            let (x, z) = (ac / nc, ac % nc);
            comp.coends[ac].descend(rhs.size(ac), |y, h, kk| {
                let h = f.tgt.hom(f.obj(x), y)[h];
                let kk = c.hom(g.obj(y), z)[kk];
                c.hom_position(c.comp(kk, g.mor(h)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let minus = check_iso(&lhs, &rhs, NatTrans::new(lhs.clone(), rhs.clone(), k))?;
    Ok([plus, minus])
}

/// A monoid `(A, mult, unit)` in distributors.
#[derive(Debug, Clone)]
pub struct MonoidInDist {
    pub carrier: Arc<Category>,
    pub mult: Distributor,
    pub unit: Distributor,
}

/// The comonoid `(A, Δ, !)` of categories, transported by `emb⁻`.
pub fn comonoid(a: &Arc<Category>) -> MonoidInDist {
    MonoidInDist {
        carrier: a.clone(),
        mult: emb_minus(&Functor::diagonal(a)),
        unit: emb_minus(&Functor::to_terminal(a)),
    }
}

impl MonoidInDist {
    /// Associativity and both unit laws, each side compared with the
    /// distributor it must be isomorphic to: the triple diagonal
    /// `hom(x,a1) × hom(x,a2) × hom(x,a3)` and the identity.
    pub fn laws(&self, lim: Limits) -> Result<Vec<(String, IsoReport)>> {
        let a = &self.carrier;
        let (n, m) = (a.num_objects(), a.num_morphisms());
        let id = Distributor::identity(a);
        let aa = &self.mult.src;
        let mut out = Vec::new();

        // decode a morphism of A×A into its components
        let split = |k: usize| (k / m, k % m);

        // mult ∘ (mult ⊗ id) : (A×A)×A ⇸ A
        let left_assoc = Distributor::compose(&self.mult, &Distributor::tensor(&self.mult, &id), lim)?;
        let tri = Arc::new(aa.product(a));
        let diag3 = triple_diagonal(a, &tri);
        out.push((
            "associativity_left".to_string(),
            compare(&left_assoc, &diag3, |x, t, yz, hk, e| {
                // hk : (x,x) -> (y,z), e : ((y,z),((a1,a2),a3)) = ((y,y) -> (a1,a2)) × hom(z,a3)
                let (h, k) = split(aa.hom(x * n + x, yz)[hk]);
                let (y, z) = (yz / n, yz % n);
                let (a12, a3) = (t / n, t % n);
                let w = a.hom(z, a3).len();
                let (p, q) = split(aa.hom(y * n + y, a12)[e / w]);
                let s = a.hom(z, a3)[e % w];
                triple_index(a, x, (a12 / n, a12 % n, a3), (a.comp(p, h), a.comp(q, h), a.comp(s, k)))
            })?,
        ));

        // mult ∘ (id ⊗ mult) : A×(A×A) ⇸ A
        let right_assoc = Distributor::compose(&self.mult, &Distributor::tensor(&id, &self.mult), lim)?;
        let tri = Arc::new(a.product(aa));
        let diag3 = triple_diagonal(a, &tri);
        out.push((
            "associativity_right".to_string(),
            compare(&right_assoc, &diag3, |x, t, yz, hk, e| {
                let (h, k) = split(aa.hom(x * n + x, yz)[hk]);
                let (y, z) = (yz / n, yz % n);
                let (a1, a23) = (t / (n * n), t % (n * n));
                let w = aa.hom(z * n + z, a23).len();
                let s = a.hom(y, a1)[e / w];
                let (p, q) = split(aa.hom(z * n + z, a23)[e % w]);
                triple_index(a, x, (a1, a23 / n, a23 % n), (a.comp(s, h), a.comp(p, k), a.comp(q, k)))
            })?,
        ));

        // mult ∘ (unit ⊗ id) ≅ id, reindexed along 1 × A -> A
        let lu = Distributor::compose(&self.mult, &Distributor::tensor(&self.unit, &id), lim)?;
        let target = id.reindex_src(&Functor::left_unitor(a))?;
        out.push((
            "left_unit".to_string(),
            compare(&lu, &target, |x, t, yz, hk, e| {
                let (_, k) = split(aa.hom(x * n + x, yz)[hk]);
                let z = yz % n;
                // e : unit(y,*) × hom(z,a) with unit(y,*) a singleton
                let l = a.hom(z, t)[e];
                a.hom_position(a.comp(l, k))
            })?,
        ));

        // mult ∘ (id ⊗ unit) ≅ id, reindexed along A × 1 -> A
        let ru = Distributor::compose(&self.mult, &Distributor::tensor(&id, &self.unit), lim)?;
        let target = id.reindex_src(&Functor::right_unitor(a))?;
        out.push((
            "right_unit".to_string(),
            compare(&ru, &target, |x, t, yz, hk, e| {
                let (h, _) = split(aa.hom(x * n + x, yz)[hk]);
                let y = yz / n;
                let l = a.hom(y, t)[e];
                a.hom_position(a.comp(l, h))
            })?,
        ));
        Ok(out)
    }

    /// `∃_{emb⁻Δ}(R ⊗ S) ≅ ∀_{emb⁺Δ}(R ⊗ S)`, by
    /// `[(a1,a2);(h1,h2);(r,s)] ↦ ((k1,k2) ↦ (R(h1∘k1) r, S(h2∘k2) s))`.
    pub fn push_pull_agree(&self, r: &Presheaf, s: &Presheaf, lim: Limits) -> Result<IsoReport> {
        let a = &self.carrier;
        let (n, m) = (a.num_objects(), a.num_morphisms());
        let d = Functor::diagonal(a);
        let aa = &d.tgt;
        let rs = r.tensor(s)?;
        let push = exists_along(&self.mult, &rs, lim)?;
        let pull = forall_along(&emb_plus(&d), &rs, lim)?;
        let k = (0..n)
            .map(|x| {
                let t = (0..push.presheaf.size(x))
                    .map(|cls| {
                        let (a12, hk, e) = push.coends[x].representative(cls);
                        let hh = aa.hom(x * n + x, a12)[hk];
                        let (h1, h2) = (hh / m, hh % m);
                        let ws = s.size(a12 % n);
                        let (ri, si) = (e / ws, e % ws);
                        let fam: Vec<SetMap> = (0..n * n)
                            .map(|b12| {
                                let tab = aa.hom(b12, x * n + x).iter().map(|&kk| {
                                    let (k1, k2) = (kk / m, kk % m);
                                    let r1 = r.act(a.comp(h1, k1), ri);
                                    let s1 = s.act(a.comp(h2, k2), si);
                                    r1 * s.size(b12 % n) + s1
                                });
                                SetMap::new(tab.collect(), rs.size(b12))
                            })
                            .collect();
                        pull.ends[x].lookup(&fam)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SetMap::new(t, pull.ends[x].len()))
            })
            .collect::<Result<Vec<_>>>()?;
        check_iso(&push.presheaf, &pull.presheaf, NatTrans::new(push.presheaf.clone(), pull.presheaf.clone(), k))
    }
}

/// `(x, t) ↦ hom(x,a1) × hom(x,a2) × hom(x,a3)` on `src ⇸ A`, where `src`
/// is either bracketing of `A × A × A`. Both bracketings number objects and
/// morphisms in the same row-major order, so one decoding serves both.
fn triple_diagonal(a: &Arc<Category>, src: &Arc<Category>) -> Distributor {
    let (n, m) = (a.num_objects(), a.num_morphisms());
    let split = move |t: usize| (t / (n * n), (t / n) % n, t % n);
    let unpack = |x: usize, t: usize, e: usize| {
        let (a1, a2, a3) = split(t);
        let (w2, w3) = (a.hom(x, a2).len(), a.hom(x, a3).len());
        [(a1, e / (w2 * w3)), (a2, (e / w3) % w2), (a3, e % w3)]
            .map(|(y, i)| a.hom(x, y)[i])
    };
    Distributor::build(
        src,
        a,
        |x, t| {
            let (a1, a2, a3) = split(t);
            hom_set(a, x, a1).product(&hom_set(a, x, a2)).product(&hom_set(a, x, a3))
        },
        |g, t, e| {
            let [h1, h2, h3] = unpack(a.tgt(g), t, e);
            triple_index(a, a.src(g), split(t), (a.comp(h1, g), a.comp(h2, g), a.comp(h3, g)))
        },
        |f, x, e| {
            let [h1, h2, h3] = unpack(x, src.src(f), e);
            let (f1, f2, f3) = (f / (m * m), (f / m) % m, f % m);
            triple_index(a, x, split(src.tgt(f)), (a.comp(f1, h1), a.comp(f2, h2), a.comp(f3, h3)))
        },
    )
}

/// Element index of `(h1,h2,h3)` in `hom(x,a1) × hom(x,a2) × hom(x,a3)`.
fn triple_index(a: &Category, x: usize, (_, a2, a3): (usize, usize, usize), (h1, h2, h3): (usize, usize, usize)) -> usize {
    let (w2, w3) = (a.hom(x, a2).len(), a.hom(x, a3).len());
    (a.hom_position(h1) * w2 + a.hom_position(h2)) * w3 + a.hom_position(h3)
}

/// Compares a composite `mult ∘ K` with a target distributor on the same
/// categories through a recipe on coend summands
/// `(x, t, yz, hk, e) -> element of target(x, t)`.
fn compare(
    comp: &crate::distributor::Composite,
    target: &Distributor,
    recipe: impl Fn(usize, usize, usize, usize, usize) -> usize,
) -> Result<IsoReport> {
    let (lhs, rhs) = (comp.dist.as_presheaf(), target.as_presheaf());
    if lhs.base != rhs.base {
        return Err(Error::BaseMismatch("monoid law sides live over different categories".into()));
    }
    let nt = target.src.num_objects();
    let k = (0..lhs.base.num_objects())
        .map(|xt| {
            let (x, t) = (xt / nt, xt % nt);
            comp.coends[xt].descend(rhs.size(xt), |yz, hk, e| recipe(x, t, yz, hk, e))
        })
        .collect::<Result<Vec<_>>>()?;
    check_iso(&lhs, &rhs, NatTrans::new(lhs.clone(), rhs.clone(), k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn cats() -> Vec<Arc<Category>> {
        [Category::terminal(), Category::walking_arrow(), Category::cospan(), Category::idempotent()]
            .into_iter()
            .map(Arc::new)
            .collect()
    }

    #[test]
    fn embeddings_are_valid() {
        for a in cats() {
            for b in cats() {
                for f in Functor::enumerate(&a, &b, 1000).unwrap() {
                    assert!(emb_plus(&f).validate().is_empty());
                    assert!(emb_minus(&f).validate().is_empty());
                }
            }
        }
    }

    #[test]
    fn reconstruction_on_random_presheaves() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for a in cats() {
            for b in cats() {
                for f in Functor::enumerate(&a, &b, 1000).unwrap() {
                    let r = Presheaf::random(&a, Variance::Contra, 2, &mut rng);
                    let s = Presheaf::random(&b, Variance::Contra, 2, &mut rng);
                    for rep in reconstruction_check(&f, &r, &s, Limits::default()).unwrap() {
                        assert!(rep.holds, "{}", rep.summary());
                    }
                }
            }
        }
    }

    #[test]
    fn embeddings_compose() {
        let w = Arc::new(Category::walking_arrow());
        let c = Arc::new(Category::cospan());
        let i = Arc::new(Category::idempotent());
        for f in Functor::enumerate(&w, &c, 1000).unwrap() {
            for g in Functor::enumerate(&c, &i, 1000).unwrap() {
                for rep in emb_functoriality(&f, &g, Limits::default()).unwrap() {
                    assert!(rep.holds, "{}", rep.summary());
                }
            }
        }
    }

    #[test]
    fn diagonal_comonoid_laws() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for a in cats() {
            let mon = comonoid(&a);
            for (name, rep) in mon.laws(Limits::default()).unwrap() {
                assert!(rep.holds, "{name}: {}", rep.summary());
            }
            let r = Presheaf::random(&a, Variance::Contra, 2, &mut rng);
            let s = Presheaf::random(&a, Variance::Contra, 2, &mut rng);
            assert!(mon.push_pull_agree(&r, &s, Limits::default()).unwrap().holds);
        }
    }
}
