//! Tensor and implication of presheaves, the actions mixing both sides,
//! the distributivity laws (c) to (f), and the cartesian closed structure
//! of each fiber.
//!
//! Canonical maps, elementwise:
//! - (c) `∃_{M⊗N}(R⊗S) -> ∃_M R ⊗ ∃_N S`: `[(a,b);(m,n);(r,s)] ↦ ([a;m;r], [b;n;s])`
//! - (d) `∀^q_{M⊗N}(R⊗S) -> ∀^q_M R ⊗ ∀^q_N S`: `[(a,b);(r,s);(m,n)] ↦ ([a;r;m], [b;s;n])`
//! - forall-vs-multimap `∃_M R ⊸ ∀_N S -> ∀_{M⊸N}(R⊸S)`:
//!   `φ ↦ ((m,n) ↦ (r ↦ φ[a;m;r]_b(n)))`
//! - (e) `∀_M R ⊗ ∀_N S -> ∀_{M⊗N}(R⊗S)`: `(φ,ψ) ↦ ((m,n) ↦ (φ(m), ψ(n)))`
//! - (f) `∃^q_M R ⊗ ∃^q_N S -> ∃^q_{M⊗N}(R⊗S)` as covariant presheaves, that
//!   is the opposite direction in the mirror fiber: `(φ,ψ) ↦ φ × ψ`

use std::sync::Arc;

use crate::category::Category;
use crate::chirality::{exists_q, forall_q};
use crate::distributor::Distributor;
use crate::error::{Error, Limits, Result};
use crate::finset::{decode_function, encode_function, SetMap};
use crate::functor::Functor;
use crate::hyperdoctrine::emb_minus;
use crate::nat::{check_iso, IsoReport, NatTrans};
use crate::presheaf::{Presheaf, Variance};
use crate::quantifiers::{exists_along, forall_along, nat_families, Pullback, Pushforward};

/// `(a,b) ↦ R(a) × S(b)` over `A × B`.
pub fn tensor(r: &Presheaf, s: &Presheaf) -> Result<Presheaf> {
    r.tensor(s)
}

/// Values `dom(x) → cod(y)` over `base = X × Y`, where `X` and `Y` share
/// morphism indices with the bases of `dom` and `cod`. A morphism `(f,g)`
/// acts by `h ↦ cod(g) ∘ h ∘ dom(f)`.
fn function_space_presheaf(dom: &Presheaf, cod: &Presheaf, base: Arc<Category>, variance: Variance) -> Result<Presheaf> {
    let (ny, my) = (cod.base.num_objects(), cod.base.num_morphisms());
    let values = (0..base.num_objects())
        .map(|xy| dom.value(xy / ny).function_space(cod.value(xy % ny)))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Presheaf { base, variance, values, actions: Vec::new() };
    let mut actions = Vec::with_capacity(out.base.num_morphisms());
    for fg in 0..out.base.num_morphisms() {
        let (f, g) = (fg / my, fg % my);
        let (from, to) = out.edge(fg);
        let (x0, y0, x1, y1) = (from / ny, from % ny, to / ny, to % ny);
        if dom.edge(f) != (x1, x0) || cod.edge(g) != (y0, y1) {
            return Err(Error::Variance("function space presheaf has inconsistent variances".into()));
        }
        let table = (0..out.size(from))
            .map(|code| {
                let h = decode_function(code, dom.size(x0), cod.size(y0));
                let h1: Vec<usize> = (0..dom.size(x1)).map(|d| cod.act(g, h[dom.act(f, d)])).collect();
                encode_function(&h1, cod.size(y1))
            })
            .collect();
        actions.push(SetMap::new(table, out.size(to)));
    }
    out.actions = actions;
    Ok(out)
}

/// `R ⊸ S`, `(a,b) ↦ R(a) → S(b)` over `A^op × B`.
pub fn implication(r: &Presheaf, s: &Presheaf) -> Result<Presheaf> {
    if r.variance != Variance::Contra || s.variance != Variance::Contra {
        return Err(Error::Variance("implication takes contravariant presheaves".into()));
    }
    function_space_presheaf(r, s, Arc::new(r.base.opposite().product(&s.base)), Variance::Contra)
}

/// Action of a covariant `X` on a contravariant `T`, landing on the
/// covariant side: `(a,z) ↦ T(a) → X(z)` over `A × Z`. The factors are
/// read right to left, so `R ⊸ S` is exactly the dual of `action_q(S*, R)`.
pub fn action_q(x: &Presheaf, t: &Presheaf) -> Result<Presheaf> {
    if x.variance != Variance::Co || t.variance != Variance::Contra {
        return Err(Error::Variance("action_q takes a covariant and a contravariant presheaf".into()));
    }
    function_space_presheaf(t, x, Arc::new(t.base.product(&x.base)), Variance::Co)
}

/// Action of a covariant `X` on a contravariant `T`, landing on the
/// contravariant side: `(z,b) ↦ X(z) → T(b)` over `Z × B`; `R ⊸ S` is
/// exactly `action_p(R*, S)`.
pub fn action_p(x: &Presheaf, t: &Presheaf) -> Result<Presheaf> {
    if x.variance != Variance::Co || t.variance != Variance::Contra {
        return Err(Error::Variance("action_p takes a covariant and a contravariant presheaf".into()));
    }
    function_space_presheaf(x, t, Arc::new(x.base.product(&t.base)), Variance::Contra)
}

fn pair_index(i: usize, j: usize, width: usize) -> usize {
    i * width + j
}

/// Law (c), also the exists-vs-tensor equation: for `M : A ⇸ C`,
/// `N : B ⇸ D`, `R` on `A`, `S` on `B`, compares `∃_{M⊗N}(R⊗S)` with
/// `∃_M R ⊗ ∃_N S`.
pub fn law_c(m: &Distributor, n: &Distributor, r: &Presheaf, s: &Presheaf, lim: Limits) -> Result<IsoReport> {
    let pm = exists_along(m, r, lim)?;
    let pn = exists_along(n, s, lim)?;
    let lhs = exists_along(&Distributor::tensor(m, n), &r.tensor(s)?, lim)?;
    let rhs = pm.presheaf.tensor(&pn.presheaf)?;
    let (nb, nd) = (n.src.num_objects(), n.tgt.num_objects());
    let components = (0..lhs.coends.len())
        .map(|cd| {
            let (c, d) = (cd / nd, cd % nd);
            lhs.coends[cd].descend(rhs.size(cd), |ab, mn, rs| {
                let (a, b) = (ab / nb, ab % nb);
                let (wn, ws) = (n.size(d, b), s.size(b));
                let x = pm.coends[c].inject(a, mn / wn, rs / ws);
                let y = pn.coends[d].inject(b, mn % wn, rs % ws);
                pair_index(x, y, pn.presheaf.size(d))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    check_iso(&lhs.presheaf, &rhs, NatTrans::new(lhs.presheaf.clone(), rhs.clone(), components))
}

/// Same as [`law_c`].
pub fn law_exists_tensor(m: &Distributor, n: &Distributor, r: &Presheaf, s: &Presheaf, lim: Limits) -> Result<IsoReport> {
    law_c(m, n, r, s, lim)
}

/// Law (d) on the covariant side: for `M : C ⇸ A`, `N : D ⇸ B`, `R`
/// covariant on `A`, `S` covariant on `B`, compares `∀^q_{M⊗N}(R⊗S)`
/// with `∀^q_M R ⊗ ∀^q_N S`.
pub fn law_d(m: &Distributor, n: &Distributor, r: &Presheaf, s: &Presheaf, lim: Limits) -> Result<IsoReport> {
    let pm = forall_q(m, r, lim)?;
    let pn = forall_q(n, s, lim)?;
    let lhs = forall_q(&Distributor::tensor(m, n), &r.tensor(s)?, lim)?;
    let rhs = pm.presheaf.tensor(&pn.presheaf)?;
    let (nb, nd) = (n.tgt.num_objects(), n.src.num_objects());
    let components = (0..lhs.coends.len())
        .map(|cd| {
            let (c, d) = (cd / nd, cd % nd);
            lhs.coends[cd].descend(rhs.size(cd), |ab, rs, mn| {
                let (a, b) = (ab / nb, ab % nb);
                let (wn, ws) = (n.size(b, d), s.size(b));
                let x = pm.coends[c].inject(a, rs / ws, mn / wn);
                let y = pn.coends[d].inject(b, rs % ws, mn % wn);
                pair_index(x, y, pn.presheaf.size(d))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    check_iso(&lhs.presheaf, &rhs, NatTrans::new(lhs.presheaf.clone(), rhs.clone(), components))
}

/// Builds the map into `∀_K T` whose value on `h` (an element of `dom` at
/// `cd`, decoded as a function) is the family `recipe(cd, h, ab, k)`, where
/// `k` indexes `K(ab, cd)` and the result is an element of `T(ab)`.
fn into_pullback(
    dom: &Presheaf,
    pull: &Pullback,
    k: &Distributor,
    t: &Presheaf,
    recipe: impl Fn(usize, usize, usize, usize) -> usize,
) -> Result<Vec<SetMap>> {
    (0..dom.base.num_objects())
        .map(|cd| {
            let table = (0..dom.size(cd))
                .map(|e| {
                    let fam: Vec<SetMap> = (0..k.tgt.num_objects())
                        .map(|ab| SetMap::new((0..k.size(ab, cd)).map(|x| recipe(cd, e, ab, x)).collect(), t.size(ab)))
                        .collect();
                    pull.ends[cd].lookup(&fam)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SetMap::new(table, pull.ends[cd].len()))
        })
        .collect()
}

/// For `M : A ⇸ C`, `N : D ⇸ B`, `R` on `A`, `S` on `B`, compares
/// `∃_M R ⊸ ∀_N S` with `∀_{M⊸N}(R⊸S)`, where `M⊸N = M* ⊗ N`.
pub fn law_forall_multimap(m: &Distributor, n: &Distributor, r: &Presheaf, s: &Presheaf, lim: Limits) -> Result<IsoReport> {
    let em = exists_along(m, r, lim)?;
    let fa = forall_along(n, s, lim)?;
    let lhs = implication(&em.presheaf, &fa.presheaf)?;
    let mn = Distributor::tensor(&m.dual(), n);
    let rs = implication(r, s)?;
    let rhs = forall_along(&mn, &rs, lim)?;
    let (nb, nd) = (s.base.num_objects(), n.src.num_objects());
    let components = into_pullback(&lhs, &rhs, &mn, &rs, |cd, code, ab, x| {
        let (c, d, a, b) = (cd / nd, cd % nd, ab / nb, ab % nb);
        let h = decode_function(code, em.presheaf.size(c), fa.presheaf.size(d));
        let wn = n.size(b, d);
        let (mi, ni) = (x / wn, x % wn);
        let g: Vec<usize> = (0..r.size(a))
            .map(|ri| fa.ends[d].families[h[em.coends[c].inject(a, mi, ri)]][b].apply(ni))
            .collect();
        encode_function(&g, s.size(b))
    })?;
    check_iso(&lhs, &rhs.presheaf, NatTrans::new(lhs.clone(), rhs.presheaf.clone(), components))
}

/// Law (d) with the tensor on the covariant side replaced by its action
/// on the contravariant side: for `M : C ⇸ A` and `R` covariant on `A`,
/// `N : D ⇸ B` and `S` contravariant on `B`, compares
/// `∀^q_M R ⊽ ∀_N S` with `∀_{M⊗N}(R ⊽ S)`, where `⊽` is [`action_p`].
/// Taking `M`, `R` to be duals recovers the forall-vs-multimap equation.
pub fn law_d_action(m: &Distributor, n: &Distributor, r: &Presheaf, s: &Presheaf, lim: Limits) -> Result<IsoReport> {
    let fq = forall_q(m, r, lim)?;
    let fa = forall_along(n, s, lim)?;
    let lhs = action_p(&fq.presheaf, &fa.presheaf)?;
    let mn = Distributor::tensor(m, n);
    let rs = action_p(r, s)?;
    let rhs = forall_along(&mn, &rs, lim)?;
    let (nb, nd) = (s.base.num_objects(), n.src.num_objects());
    let components = into_pullback(&lhs, &rhs, &mn, &rs, |cd, code, ab, x| {
        let (c, d, a, b) = (cd / nd, cd % nd, ab / nb, ab % nb);
        let h = decode_function(code, fq.presheaf.size(c), fa.presheaf.size(d));
        let wn = n.size(b, d);
        let (mi, ni) = (x / wn, x % wn);
        let g: Vec<usize> = (0..r.size(a))
            .map(|ri| fa.ends[d].families[h[fq.coends[c].inject(a, ri, mi)]][b].apply(ni))
            .collect();
        encode_function(&g, s.size(b))
    })?;
    check_iso(&lhs, &rhs.presheaf, NatTrans::new(lhs.clone(), rhs.presheaf.clone(), components))
}

/// Law (e): for `M : C ⇸ A`, `N : D ⇸ B`, `R` on `A`, `S` on `B`, the
/// canonical map `∀_M R ⊗ ∀_N S -> ∀_{M⊗N}(R⊗S)`. Natural always, not
/// invertible in general.
pub fn law_e(m: &Distributor, n: &Distributor, r: &Presheaf, s: &Presheaf, lim: Limits) -> Result<IsoReport> {
    let fm = forall_along(m, r, lim)?;
    let fn_ = forall_along(n, s, lim)?;
    let lhs = fm.presheaf.tensor(&fn_.presheaf)?;
    let mn = Distributor::tensor(m, n);
    let rs = r.tensor(s)?;
    let rhs = forall_along(&mn, &rs, lim)?;
    let (nb, nd) = (n.tgt.num_objects(), n.src.num_objects());
    let components = into_pullback(&lhs, &rhs, &mn, &rs, |cd, e, ab, x| {
        let (c, d, a, b) = (cd / nd, cd % nd, ab / nb, ab % nb);
        let w = fn_.presheaf.size(d);
        let (phi, psi) = (&fm.ends[c].families[e / w], &fn_.ends[d].families[e % w]);
        let wn = n.size(b, d);
        pair_index(phi[a].apply(x / wn), psi[b].apply(x % wn), s.size(b))
    })?;
    check_iso(&lhs, &rhs.presheaf, NatTrans::new(lhs.clone(), rhs.presheaf.clone(), components))
}

/// Law (f): for `M : A ⇸ C`, `N : B ⇸ D`, `R`, `S` covariant, the
/// canonical map `∃^q_M R ⊗ ∃^q_N S -> ∃^q_{M⊗N}(R⊗S)` of covariant
/// presheaves. Natural always, not invertible in general.
pub fn law_f(m: &Distributor, n: &Distributor, r: &Presheaf, s: &Presheaf, lim: Limits) -> Result<IsoReport> {
    let em = exists_q(m, r, lim)?;
    let en = exists_q(n, s, lim)?;
    let lhs = em.presheaf.tensor(&en.presheaf)?;
    let mn = Distributor::tensor(m, n);
    let rhs = exists_q(&mn, &r.tensor(s)?, lim)?;
    let (nb, nd, na) = (n.src.num_objects(), n.tgt.num_objects(), m.src.num_objects());
    let components = (0..lhs.base.num_objects())
        .map(|cd| {
            let (c, d) = (cd / nd, cd % nd);
            let w = en.presheaf.size(d);
            let table = (0..lhs.size(cd))
                .map(|e| {
                    let (phi, psi) = (&em.ends[c].families[e / w], &en.ends[d].families[e % w]);
                    let fam: Vec<SetMap> = (0..na * nb)
                        .map(|ab| {
                            let (a, b) = (ab / nb, ab % nb);
                            let wn = n.size(d, b);
                            let t = (0..m.size(c, a) * wn)
                                .map(|x| pair_index(phi[a].apply(x / wn), psi[b].apply(x % wn), s.size(b)));
                            SetMap::new(t.collect(), r.size(a) * s.size(b))
                        })
                        .collect();
                    rhs.ends[cd].lookup(&fam)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SetMap::new(table, rhs.ends[cd].len()))
        })
        .collect::<Result<Vec<_>>>()?;
    check_iso(&lhs, &rhs.presheaf, NatTrans::new(lhs.clone(), rhs.presheaf.clone(), components))
}

/// Unit, associativity and symmetry of `⊗`, each as a canonical iso after
/// reindexing along the structural functor.
pub fn tensor_coherence(r: &Presheaf, s: &Presheaf, t: &Presheaf) -> Result<Vec<(String, IsoReport)>> {
    let mut out = Vec::new();
    let one = Presheaf::terminal(&Arc::new(Category::terminal()), r.variance);
    let unit = one.tensor(r)?.restrict(&Functor::left_unitor_inverse(&r.base))?;
    let k = NatTrans::from_fn(&unit, r, |_, e| e);
    out.push(("left_unit".to_string(), check_iso(&unit, r, k)?));

    let (a, b, c) = (&r.base, &s.base, &t.base);
    let lhs = r.tensor(&s.tensor(t)?)?;
    let rhs = r.tensor(s)?.tensor(t)?.restrict(&Functor::associator(a, b, c))?;
    let (nb, nc) = (b.num_objects(), c.num_objects());
    let k = NatTrans::from_fn(&lhs, &rhs, |xyz, e| {
        let (y, z) = ((xyz / nc) % nb, xyz % nc);
        let wst = s.size(y) * t.size(z);
        let (i, rest) = (e / wst, e % wst);
        let (j, l) = (rest / t.size(z), rest % t.size(z));
        (i * s.size(y) + j) * t.size(z) + l
    });
    out.push(("associativity".to_string(), check_iso(&lhs, &rhs, k)?));

    let lhs = r.tensor(s)?;
    let rhs = s.tensor(r)?.restrict(&Functor::swap(a, b))?;
    let k = NatTrans::from_fn(&lhs, &rhs, |xy, e| {
        let y = xy % nb;
        let (i, j) = (e / s.size(y), e % s.size(y));
        j * r.size(xy / nb) + i
    });
    out.push(("symmetry".to_string(), check_iso(&lhs, &rhs, k)?));
    Ok(out)
}

/// The cartesian closed structure of the fiber over `A`, obtained from the
/// comonoid `(A, Δ, !)` transported to distributors.
#[derive(Debug, Clone)]
pub struct FiberStructure {
    pub base: Arc<Category>,
    /// `emb⁻(Δ) : A × A ⇸ A`.
    pub diagonal: Distributor,
    /// `emb⁻(!) : 1 ⇸ A`.
    pub bang: Distributor,
    /// `curry(emb⁻(Δ)) : A ⇸ A^op × A`.
    pub curried: Distributor,
}

pub fn fiber_structure(a: &Arc<Category>) -> Result<FiberStructure> {
    let diagonal = emb_minus(&Functor::diagonal(a));
    let bang = emb_minus(&Functor::to_terminal(a));
    let curried = diagonal.curry(a, a)?;
    Ok(FiberStructure { base: a.clone(), diagonal, bang, curried })
}

impl FiberStructure {
    /// `R ∧ S = ∃_{emb⁻Δ}(R ⊗ S)`.
    pub fn meet(&self, r: &Presheaf, s: &Presheaf, lim: Limits) -> Result<Pushforward> {
        exists_along(&self.diagonal, &r.tensor(s)?, lim)
    }

    /// `⊤ = ∃_{emb⁻!} 1`.
    pub fn top(&self, lim: Limits) -> Result<Pushforward> {
        exists_along(&self.bang, &Presheaf::unit(), lim)
    }

    /// `R ⊃ S = ∀_{curry(emb⁻Δ)}(R ⊸ S)`.
    pub fn imp(&self, r: &Presheaf, s: &Presheaf, lim: Limits) -> Result<Pullback> {
        forall_along(&self.curried, &implication(r, s)?, lim)
    }

    /// `R ∧ S ≅ R × S` via `[(a1,a2);(h1,h2);(r,s)] ↦ (R(h1) r, S(h2) s)`.
    pub fn meet_check(&self, r: &Presheaf, s: &Presheaf, lim: Limits) -> Result<IsoReport> {
        let a = &self.base;
        let m = a.num_morphisms();
        let aa = &self.diagonal.src;
        let push = self.meet(r, s, lim)?;
        let prod = r.pointwise_product(s)?;
        let n = a.num_objects();
        let components = (0..n)
            .map(|x| {
                push.coends[x].descend(prod.size(x), |a12, hk, rs| {
                    let k = aa.hom(x * n + x, a12)[hk];
                    let (h1, h2) = (k / m, k % m);
                    let ws = s.size(a12 % n);
                    pair_index(r.act(h1, rs / ws), s.act(h2, rs % ws), s.size(x))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        check_iso(&push.presheaf, &prod, NatTrans::new(push.presheaf.clone(), prod.clone(), components))
    }

    /// `⊤` is terminal.
    pub fn top_check(&self, lim: Limits) -> Result<IsoReport> {
        let push = self.top(lim)?;
        let one = Presheaf::terminal(&self.base, Variance::Contra);
        let k = NatTrans::from_fn(&push.presheaf, &one, |_, _| 0);
        check_iso(&push.presheaf, &one, k)
    }

    /// The pointwise exponential `x ↦ Nat(hom(-,x) × R, S)`, computed
    /// without any distributor.
    pub fn standard_exponential(&self, r: &Presheaf, s: &Presheaf, lim: Limits) -> Result<(Presheaf, Vec<crate::quantifiers::EndResult>)> {
        let a = &self.base;
        let ends = (0..a.num_objects())
            .map(|x| nat_families(&Presheaf::representable(a, x).pointwise_product(r)?, s, lim))
            .collect::<Result<Vec<_>>>()?;
        let mut actions = Vec::with_capacity(a.num_morphisms());
        for f in 0..a.num_morphisms() {
            let (x1, x) = (a.src(f), a.tgt(f));
            let table = ends[x]
                .families
                .iter()
                .map(|theta| {
                    let moved: Vec<SetMap> = (0..a.num_objects())
                        .map(|z| {
                            let w = r.size(z);
                            let t = (0..a.hom(z, x1).len() * w).map(|e| {
                                let h = a.comp(f, a.hom(z, x1)[e / w]);
                                theta[z].apply(a.hom_position(h) * w + e % w)
                            });
                            SetMap::new(t.collect(), s.size(z))
                        })
                        .collect();
                    ends[x1].lookup(&moved)
                })
                .collect::<Result<Vec<_>>>()?;
            actions.push(SetMap::new(table, ends[x1].len()));
        }
        let p = Presheaf {
            base: a.clone(),
            variance: Variance::Contra,
            values: ends.iter().map(|e| e.value.clone()).collect(),
            actions,
        };
        Ok((p, ends))
    }

    /// The standard exponential maps to `R ⊃ S` by
    /// `θ ↦ ((h,k) ↦ (r ↦ θ_z(h, R(k) r)))`.
    pub fn imp_check(&self, r: &Presheaf, s: &Presheaf, lim: Limits) -> Result<IsoReport> {
        let a = &self.base;
        let (n, m) = (a.num_objects(), a.num_morphisms());
        let (exp, ends) = self.standard_exponential(r, s, lim)?;
        let rs = implication(r, s)?;
        let pull = self.imp(r, s, lim)?;
        let aa = &self.diagonal.src;
        let components = into_pullback(&exp, &pull, &self.curried, &rs, |x, e, yz, hk| {
            let (y, z) = (yz / n, yz % n);
            let k = aa.hom(z * n + z, x * n + y)[hk];
            let (h, k) = (k / m, k % m);
            let theta = &ends[x].families[e][z];
            let g: Vec<usize> = (0..r.size(y))
                .map(|ri| theta.apply(a.hom_position(h) * r.size(z) + r.act(k, ri)))
                .collect();
            encode_function(&g, s.size(z))
        })?;
        check_iso(&exp, &pull.presheaf, NatTrans::new(exp.clone(), pull.presheaf.clone(), components))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn implication_is_the_dual_of_the_action() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let a = Arc::new(Category::walking_arrow());
        let b = Arc::new(Category::cospan());
        let r = Presheaf::random(&a, Variance::Contra, 2, &mut rng);
        let s = Presheaf::random(&b, Variance::Contra, 2, &mut rng);
        let imp = implication(&r, &s).unwrap();
        assert!(imp.validate().is_empty());
        assert_eq!(imp, action_q(&s.dual(), &r).unwrap().dual());
        assert_eq!(imp, action_p(&r.dual(), &s).unwrap());
    }

    #[test]
    fn laws_on_random_instances() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let w = Arc::new(Category::walking_arrow());
        let t = Arc::new(Category::terminal());
        let lim = Limits::default();
        for _ in 0..5 {
            let m = Distributor::random(&w, &t, 2, &mut rng);
            let n = Distributor::random(&t, &w, 2, &mut rng);
            let r = Presheaf::random(&w, Variance::Contra, 2, &mut rng);
            let s = Presheaf::random(&t, Variance::Contra, 2, &mut rng);
            assert!(law_c(&m, &n, &r, &s, lim).unwrap().holds);
            let s2 = Presheaf::random(&w, Variance::Contra, 2, &mut rng);
            assert!(law_forall_multimap(&m, &n, &r, &s2, lim).unwrap().holds);
            let rq = Presheaf::random(&t, Variance::Co, 2, &mut rng);
            let sq = Presheaf::random(&w, Variance::Co, 2, &mut rng);
            assert!(law_d(&m, &n, &rq, &sq, lim).unwrap().holds);
            law_e(&m, &n, &s, &s2, lim).unwrap();
            let rf = Presheaf::random(&w, Variance::Co, 2, &mut rng);
            law_f(&m, &n, &rf, &Presheaf::random(&t, Variance::Co, 2, &mut rng), lim).unwrap();
        }
    }

    #[test]
    fn fiber_structure_on_arrow() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let a = Arc::new(Category::walking_arrow());
        let fs = fiber_structure(&a).unwrap();
        let lim = Limits::default();
        assert!(fs.top_check(lim).unwrap().holds);
        for _ in 0..5 {
            let r = Presheaf::random(&a, Variance::Contra, 2, &mut rng);
            let s = Presheaf::random(&a, Variance::Contra, 2, &mut rng);
            assert!(fs.meet_check(&r, &s, lim).unwrap().holds);
            assert!(fs.imp_check(&r, &s, lim).unwrap().holds);
        }
    }

    #[test]
    fn tensor_is_symmetric_monoidal() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        let a = Arc::new(Category::walking_arrow());
        let b = Arc::new(Category::cospan());
        let r = Presheaf::random(&a, Variance::Contra, 2, &mut rng);
        let s = Presheaf::random(&b, Variance::Contra, 2, &mut rng);
        let t = Presheaf::random(&a, Variance::Contra, 2, &mut rng);
        for (name, rep) in tensor_coherence(&r, &s, &t).unwrap() {
            assert!(rep.holds, "{name}");
        }
    }
}
