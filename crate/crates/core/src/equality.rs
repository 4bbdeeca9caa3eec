//! Graphs of distributors and the two identity predicates, with the
//! evaluation isomorphisms that express quantifiers through graphs.

use std::sync::Arc;

use crate::category::Category;
use crate::distributor::{hom_set, Distributor};
use crate::error::{Error, Limits, Result};
use crate::finset::{encode_function, SetMap};
use crate::functor::Functor;
use crate::hyperdoctrine::sigma_with;
use crate::monoidal::implication;
use crate::nat::{check_iso, IsoReport, NatTrans};
use crate::presheaf::{Presheaf, Variance};
use crate::quantifiers::{coend, exists_along, forall_along, nat_families, CoendResult};

/// `⌈M⌉`, the presheaf on `A^op × B` obtained by pushing the unit along
/// the curried distributor.
#[derive(Debug, Clone)]
pub struct GraphPredicate {
    pub of: Distributor,
    pub as_presheaf: Presheaf,
    /// Coend at `(a,b)`, index `a * |B| + b`.
    pub coends: Vec<CoendResult>,
    /// Whether every `⌈M⌉(a,b)` was found in bijection with `M(b,a)`.
    pub bijective: bool,
}

impl GraphPredicate {
    /// The class of `m ∈ M(b,a)`.
    pub fn element(&self, a: usize, b: usize, m: usize) -> usize {
        self.coends[a * self.of.tgt.num_objects() + b].inject(0, m, 0)
    }

    /// The element of `M(b,a)` a class stands for.
    pub fn decode(&self, a: usize, b: usize, class: usize) -> usize {
        self.coends[a * self.of.tgt.num_objects() + b].representative(class).1
    }
}

pub fn graph(m: &Distributor, lim: Limits) -> Result<GraphPredicate> {
    m.ensure_valid()?;
    let one = Arc::new(Category::terminal());
    let curried = m.reindex_src(&Functor::left_unitor(&m.src))?.curry(&one, &m.src)?;
    let push = exists_along(&curried, &Presheaf::unit(), lim)?;
    let nb = m.tgt.num_objects();
    let bijective = push.coends.iter().enumerate().all(|(ab, c)| {
        let (a, b) = (ab / nb, ab % nb);
        let forward = SetMap::new((0..m.size(b, a)).map(|x| c.inject(0, x, 0)).collect(), c.len());
        let backward = SetMap::new((0..c.len()).map(|k| c.representative(k).1).collect(), m.size(b, a));
        forward.is_bijective() && backward.after(&forward) == SetMap::identity(m.size(b, a))
    });
    Ok(GraphPredicate { of: m.clone(), as_presheaf: push.presheaf, coends: push.coends, bijective })
}

/// `hom_A` as a contravariant presheaf on `A^op × A`: `(x,y) ↦ hom(y,x)`,
/// with `(f,g)` acting by `h ↦ f ∘ h ∘ g`.
pub fn hom_presheaf(a: &Arc<Category>) -> Presheaf {
    let n = a.num_objects();
    let m = a.num_morphisms();
    let base = Arc::new(a.opposite().product(a));
    let values = (0..n * n).map(|xy| hom_set(a, xy % n, xy / n)).collect();
    Presheaf::build(&base, Variance::Contra, values, |fg, e| {
        let (f, g) = (fg / m, fg % m);
        let h = a.hom(a.tgt(g), a.src(f))[e];
        a.hom_position(a.comp(f, a.comp(h, g)))
    })
}

/// `Id_A = ⌈id_A⌉`.
pub fn id_rel(a: &Arc<Category>, lim: Limits) -> Result<Presheaf> {
    Ok(graph(&Distributor::identity(a), lim)?.as_presheaf)
}

/// `Id_A ≅ hom_A` through `[*; h; *] ↦ h`.
pub fn id_rel_check(a: &Arc<Category>, lim: Limits) -> Result<IsoReport> {
    let g = graph(&Distributor::identity(a), lim)?;
    let hom = hom_presheaf(a);
    let n = a.num_objects();
    let components = (0..n * n)
        .map(|xy| {
            let t = (0..g.as_presheaf.size(xy)).map(|k| g.decode(xy / n, xy % n, k)).collect();
            SetMap::new(t, hom.size(xy))
        })
        .collect();
    check_iso(&g.as_presheaf, &hom, NatTrans::new(g.as_presheaf.clone(), hom.clone(), components))
}

/// The Lawvere identity `(a1,a2) ↦ ∫^a hom(a1,a) × hom(a2,a)` on `A × A`,
/// with its coends at `a1 * |A| + a2`.
pub fn id_lawvere_with(a: &Arc<Category>, lim: Limits) -> Result<(Presheaf, Vec<CoendResult>)> {
    a.ensure_valid()?;
    let (n, m) = (a.num_objects(), a.num_morphisms());
    let top = Presheaf::terminal(a, Variance::Contra);
    let coends = (0..n * n)
        .map(|pair| {
            let (a1, a2) = (pair / n, pair % n);
            let values = (0..n).map(|x| hom_set(a, a1, x).product(&hom_set(a, a2, x))).collect();
            let p = Presheaf::build(a, Variance::Co, values, |k, e| {
                let x = a.src(k);
                let w = a.hom(a2, x).len();
                let (h1, h2) = (a.hom(a1, x)[e / w], a.hom(a2, x)[e % w]);
                a.hom_position(a.comp(k, h1)) * a.hom(a2, a.tgt(k)).len() + a.hom_position(a.comp(k, h2))
            });
            coend(&p, &top, lim)
        })
        .collect::<Result<Vec<_>>>()?;
    let base = Arc::new(a.product(a));
    let mut actions = Vec::with_capacity(m * m);
    for g12 in 0..m * m {
        let (g1, g2) = (g12 / m, g12 % m);
        let (from, to) = (a.tgt(g1) * n + a.tgt(g2), a.src(g1) * n + a.src(g2));
        let b2 = a.src(g2);
        actions.push(coends[from].induced(&coends[to], |x, e, t| {
            let w = a.hom(a.tgt(g2), x).len();
            let (h1, h2) = (a.hom(a.tgt(g1), x)[e / w], a.hom(a.tgt(g2), x)[e % w]);
            let e1 = a.hom_position(a.comp(h1, g1)) * a.hom(b2, x).len() + a.hom_position(a.comp(h2, g2));
            (x, e1, t)
        })?);
    }
    let p = Presheaf {
        base,
        variance: Variance::Contra,
        values: coends.iter().map(|c| c.value.clone()).collect(),
        actions,
    };
    Ok((p, coends))
}

pub fn id_lawvere(a: &Arc<Category>, lim: Limits) -> Result<Presheaf> {
    Ok(id_lawvere_with(a, lim)?.0)
}

/// The literal coend against `Σ_Δ ⊤`, summand for summand.
pub fn id_lawvere_sigma_check(a: &Arc<Category>, lim: Limits) -> Result<IsoReport> {
    let (lhs, lc) = id_lawvere_with(a, lim)?;
    let d = Functor::diagonal(a);
    let (rhs, rc) = sigma_with(&d, &Presheaf::terminal(a, Variance::Contra), lim)?;
    let (n, m) = (a.num_objects(), a.num_morphisms());
    let aa = &d.tgt;
    let components = (0..n * n)
        .map(|pair| {
            let (a1, a2) = (pair / n, pair % n);
            lc[pair].induced(&rc[pair], |x, e, t| {
                let w = a.hom(a2, x).len();
                let (h1, h2) = (a.hom(a1, x)[e / w], a.hom(a2, x)[e % w]);
                (x, aa.hom_position(h1 * m + h2), t)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if lhs.base != rhs.base {
        return Err(Error::BaseMismatch("Σ_Δ ⊤ lives over another product".into()));
    }
    check_iso(&lhs, &rhs, NatTrans::new(lhs.clone(), rhs.clone(), components))
}

/// Pointwise comparison of `Id^L_A(a1,a2)` with `Id_A(a1,a2) ≅ hom(a2,a1)`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct IdentityComparison {
    /// `(a1, a2, |Id^L(a1,a2)|, |hom(a2,a1)|)` wherever the sizes differ.
    pub differences: Vec<(usize, usize, usize, usize)>,
}

impl IdentityComparison {
    /// Sizes agree everywhere. On a discrete category all actions are
    /// identities, so this is agreement up to isomorphism.
    pub fn agree(&self) -> bool {
        self.differences.is_empty()
    }
}

pub fn compare_identities(a: &Arc<Category>, lim: Limits) -> Result<IdentityComparison> {
    let law = id_lawvere(a, lim)?;
    let n = a.num_objects();
    let differences = (0..n * n)
        .filter_map(|pair| {
            let (a1, a2) = (pair / n, pair % n);
            let (l, h) = (law.size(pair), a.hom(a2, a1).len());
            (l != h).then_some((a1, a2, l, h))
        })
        .collect();
    Ok(IdentityComparison { differences })
}

/// `eval : A × (A^op × B) ⇸ B`, `(b', (a, (a', b))) ↦ hom(a',a) × hom(b',b)`.
pub fn eval_dist(a: &Arc<Category>, b: &Arc<Category>) -> Distributor {
    let (na, nb) = (a.num_objects(), b.num_objects());
    let mb = b.num_morphisms();
    let src = Arc::new(a.product(&a.opposite().product(b)));
    let split = move |t: usize| (t / (na * nb), (t / nb) % na, t % nb);
    Distributor::build(
        &src,
        b,
        |y, t| {
            let (x, x1, z) = split(t);
            hom_set(a, x1, x).product(&hom_set(b, y, z))
        },
        |g, t, e| {
            let z = split(t).2;
            let w = b.hom(b.tgt(g), z).len();
            let l = b.hom(b.tgt(g), z)[e % w];
            (e / w) * b.hom(b.src(g), z).len() + b.hom_position(b.comp(l, g))
        },
        |fkg, y, e| {
            let (x, x1, z) = split(src.src(fkg));
            let (f, k, g) = (fkg / (a.num_morphisms() * mb), (fkg / mb) % a.num_morphisms(), fkg % mb);
            let w = b.hom(y, z).len();
            let (h, l) = (a.hom(x1, x)[e / w], b.hom(y, z)[e % w]);
            let h1 = a.comp(f, a.comp(h, k));
            a.hom_position(h1) * b.hom(y, b.tgt(g)).len() + b.hom_position(b.comp(g, l))
        },
    )
}

fn check_dist(m: &Distributor, r: &Presheaf, on_src: bool) -> Result<()> {
    m.ensure_valid()?;
    let base = if on_src { &m.src } else { &m.tgt };
    if r.variance != Variance::Contra || *r.base != **base {
        return Err(Error::BaseMismatch("presheaf does not live over the expected side of the distributor".into()));
    }
    Ok(())
}

/// `∃_M R ≅ ∃_eval(R ⊗ ⌈M⌉)` via `[(a,a',b); (h,l); (r,m)] ↦ [a'; M(l)m; R(h)r]`.
pub fn thm3_push(m: &Distributor, r: &Presheaf, lim: Limits) -> Result<IsoReport> {
    check_dist(m, r, true)?;
    let (a, b) = (&m.src, &m.tgt);
    let (na, nb) = (a.num_objects(), b.num_objects());
    let gp = graph(m, lim)?;
    let lhs = exists_along(m, r, lim)?;
    let eval = eval_dist(a, b);
    let rhs = exists_along(&eval, &r.tensor(&gp.as_presheaf)?, lim)?;
    let components = (0..nb)
        .map(|y| {
            rhs.coends[y].descend(lhs.presheaf.size(y), |t, x, e| {
                let (x0, x1, z) = (t / (na * nb), (t / nb) % na, t % nb);
                let w = b.hom(y, z).len();
                let (h, l) = (a.hom(x1, x0)[x / w], b.hom(y, z)[x % w]);
                let gw = gp.as_presheaf.size(x1 * nb + z);
                let mm = gp.decode(x1, z, e % gw);
                lhs.coends[y].inject(x1, m.act_left(l, x1, mm), r.act(h, e / gw))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    check_iso(&rhs.presheaf, &lhs.presheaf, NatTrans::new(rhs.presheaf.clone(), lhs.presheaf.clone(), components))
}

/// `∀_M S ≅ ∀_dni(⌈M⌉ ⊸ S)` with `dni` the currying of `eval`, via
/// `φ ↦ ((h,k) ↦ (m ↦ φ(M(k) M(h) m)))`.
pub fn thm3_pull(m: &Distributor, s: &Presheaf, lim: Limits) -> Result<IsoReport> {
    check_dist(m, s, false)?;
    let (a, b) = (&m.src, &m.tgt);
    let (na, nb) = (a.num_objects(), b.num_objects());
    let gp = graph(m, lim)?;
    let lhs = forall_along(m, s, lim)?;
    let imp = implication(&gp.as_presheaf, s)?;
    let dni = eval_dist(a, b).curry(a, &Arc::new(a.opposite().product(b)))?;
    let rhs = forall_along(&dni, &imp, lim)?;
    let components = (0..na)
        .map(|x| {
            let t = lhs.ends[x]
                .families
                .iter()
                .map(|phi| {
                    let fam: Vec<SetMap> = (0..na * nb * nb)
                        .map(|w| {
                            let (x1, z, y) = (w / (nb * nb), (w / nb) % nb, w % nb);
                            let kw = b.hom(y, z).len();
                            let codes = (0..dni.size(w, x)).map(|hk| {
                                let (h, k) = (a.hom(x1, x)[hk / kw], b.hom(y, z)[hk % kw]);
                                let table: Vec<usize> = (0..gp.as_presheaf.size(x1 * nb + z))
                                    .map(|g| {
                                        let mm = m.act_right(h, z, gp.decode(x1, z, g));
                                        phi[y].apply(m.act_left(k, x, mm))
                                    })
                                    .collect();
                                encode_function(&table, s.size(y))
                            });
                            SetMap::new(codes.collect(), imp.size(w))
                        })
                        .collect();
                    rhs.ends[x].lookup(&fam)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SetMap::new(t, rhs.ends[x].len()))
        })
        .collect::<Result<Vec<_>>>()?;
    check_iso(&lhs.presheaf, &rhs.presheaf, NatTrans::new(lhs.presheaf.clone(), rhs.presheaf.clone(), components))
}

/// Yoneda: `S(a) ≅ ∫_{a'} hom(a',a) → S(a')` via `s ↦ (h ↦ S(h) s)`,
/// reported as presheaves on the terminal category.
pub fn yoneda_check(s: &Presheaf, a: usize, lim: Limits) -> Result<IsoReport> {
    if s.variance != Variance::Contra {
        return Err(Error::Variance("Yoneda is checked on contravariant presheaves".into()));
    }
    let c = &s.base;
    let end = nat_families(&Presheaf::representable(c, a), s, lim)?;
    let one = Arc::new(Category::terminal());
    let lhs = Presheaf::constant(&one, Variance::Contra, s.value(a));
    let rhs = Presheaf::constant(&one, Variance::Contra, &end.value);
    let table = (0..s.size(a))
        .map(|e| {
            let fam: Vec<SetMap> = (0..c.num_objects())
                .map(|x| SetMap::new(c.hom(x, a).iter().map(|&h| s.act(h, e)).collect(), s.size(x)))
                .collect();
            end.lookup(&fam)
        })
        .collect::<Result<Vec<_>>>()?;
    let t = NatTrans::new(lhs.clone(), rhs.clone(), vec![SetMap::new(table, end.len())]);
    check_iso(&lhs, &rhs, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn cats() -> Vec<Arc<Category>> {
        [
            Category::terminal(),
            Category::discrete(2),
            Category::walking_arrow(),
            Category::cospan(),
            Category::iso_pair(),
            Category::idempotent(),
        ]
        .into_iter()
        .map(Arc::new)
        .collect()
    }

    #[test]
    fn identity_relation_is_hom() {
        for a in cats() {
            assert!(id_rel_check(&a, Limits::default()).unwrap().holds);
            assert!(id_lawvere_sigma_check(&a, Limits::default()).unwrap().holds);
        }
    }

    #[test]
    fn lawvere_identity_on_cospan() {
        let c = Arc::new(Category::cospan());
        let cmp = compare_identities(&c, Limits::default()).unwrap();
        assert!(cmp.differences.iter().any(|&(x, y, l, h)| (x, y) == (0, 1) && l > 0 && h == 0));
        assert!(compare_identities(&Arc::new(Category::discrete(2)), Limits::default()).unwrap().agree());
    }

    #[test]
    fn graph_of_discrete_distributor_keeps_values() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let d = Arc::new(Category::discrete(2));
        let m = Distributor::random(&d, &d, 2, &mut rng);
        let g = graph(&m, Limits::default()).unwrap();
        assert!(g.bijective);
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(g.as_presheaf.size(a * 2 + b), m.size(b, a));
            }
        }
    }

    #[test]
    fn theorem_three_and_yoneda() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for a in cats() {
            for b in cats() {
                let m = Distributor::random(&a, &b, 2, &mut rng);
                let r = Presheaf::random(&a, Variance::Contra, 2, &mut rng);
                let s = Presheaf::random(&b, Variance::Contra, 2, &mut rng);
                assert!(eval_dist(&a, &b).validate().is_empty());
                assert!(thm3_push(&m, &r, Limits::default()).unwrap().holds);
                assert!(thm3_pull(&m, &s, Limits::default()).unwrap().holds);
            }
            let s = Presheaf::random(&a, Variance::Contra, 2, &mut rng);
            for x in 0..a.num_objects() {
                assert!(yoneda_check(&s, x, Limits::default()).unwrap().holds);
            }
        }
    }
}
