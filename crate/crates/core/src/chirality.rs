//! The mirror side: covariant presheaves, their own quantifiers, and the
//! dualities relating them to the contravariant side.
//!
//! For `M : A ⇸ B` the covariant quantifiers are computed directly:
//! `(∃^q_M R)(b) = ∫_a M(b,a) → R(a)` and `(∀^q_M S)(a) = ∫^b S(b) × M(b,a)`.
//! Both are cross-checked against the contravariant side through duals.

use crate::distributor::Distributor;
use crate::error::{Error, Limits, Result};
use crate::finset::SetMap;
use crate::nat::{check_iso, IsoReport, NatTrans};
use crate::presheaf::{Presheaf, Variance};
use crate::quantifiers::{coend, exists_along, forall_along, nat_families, CoendResult, EndResult};

/// `R*`: same tables over the opposite base, other variance.
pub fn dual_presheaf(r: &Presheaf) -> Presheaf {
    r.dual()
}

/// `M*(a,b) = M(b,a)`.
pub fn dual_dist(m: &Distributor) -> Distributor {
    m.dual()
}

/// `∃^q_M R` with the end computed at each object of `B`.
#[derive(Debug, Clone)]
pub struct CoPushforward {
    pub presheaf: Presheaf,
    pub ends: Vec<EndResult>,
}

/// `∀^q_M S` with the coend computed at each object of `A`.
#[derive(Debug, Clone)]
pub struct CoPullback {
    pub presheaf: Presheaf,
    pub coends: Vec<CoendResult>,
}

/// `(∃^q_M R)(b) = Nat(M(b,-), R)`; `g : b' -> b` precomposes with the left action.
pub fn exists_q(m: &Distributor, r: &Presheaf, lim: Limits) -> Result<CoPushforward> {
    if r.variance != Variance::Co {
        return Err(Error::Variance("covariant ∃ takes a covariant presheaf".into()));
    }
    if *r.base != *m.src {
        return Err(Error::BaseMismatch("presheaf does not live over the source of the distributor".into()));
    }
    let (b, na) = (&m.tgt, m.src.num_objects());
    let ends = (0..b.num_objects()).map(|y| nat_families(&m.row(y), r, lim)).collect::<Result<Vec<_>>>()?;
    let mut actions = Vec::with_capacity(b.num_morphisms());
    for g in 0..b.num_morphisms() {
        let (y1, y) = (b.src(g), b.tgt(g));
        let table = ends[y1]
            .families
            .iter()
            .map(|phi| {
                let psi: Vec<SetMap> = (0..na).map(|a| phi[a].after(&m.left[g * na + a])).collect();
                ends[y].lookup(&psi)
            })
            .collect::<Result<Vec<_>>>()?;
        actions.push(SetMap::new(table, ends[y].len()));
    }
    let presheaf = Presheaf {
        base: b.clone(),
        variance: Variance::Co,
        values: ends.iter().map(|e| e.value.clone()).collect(),
        actions,
    };
    Ok(CoPushforward { presheaf, ends })
}

/// `(∀^q_M S)(a) = ∫^b S(b) × M(b,a)`; `f : a -> a'` acts through the right action.
pub fn forall_q(m: &Distributor, s: &Presheaf, lim: Limits) -> Result<CoPullback> {
    if s.variance != Variance::Co {
        return Err(Error::Variance("covariant ∀ takes a covariant presheaf".into()));
    }
    if *s.base != *m.tgt {
        return Err(Error::BaseMismatch("presheaf does not live over the target of the distributor".into()));
    }
    let a = &m.src;
    let coends = (0..a.num_objects()).map(|x| coend(s, &m.column(x), lim)).collect::<Result<Vec<_>>>()?;
    let mut actions = Vec::with_capacity(a.num_morphisms());
    for f in 0..a.num_morphisms() {
        let (x, x1) = (a.src(f), a.tgt(f));
        actions.push(coends[x].induced(&coends[x1], |b, e, y| (b, e, m.act_right(f, b, y)))?);
    }
    let presheaf = Presheaf {
        base: a.clone(),
        variance: Variance::Co,
        values: coends.iter().map(|c| c.value.clone()).collect(),
        actions,
    };
    Ok(CoPullback { presheaf, coends })
}

/// Law (a): `∀_M S ≅ *(∃^q_{M*} S*)` for `S` contravariant on `B`. Both
/// sides consist of the same natural families, so the canonical map sends
/// each family to itself.
pub fn law_a(m: &Distributor, s: &Presheaf, lim: Limits) -> Result<IsoReport> {
    let lhs = forall_along(m, s, lim)?;
    let rhs = exists_q(&m.dual(), &s.dual(), lim)?;
    let rhs_p = rhs.presheaf.dual();
    let components = (0..m.src.num_objects())
        .map(|a| {
            let t = lhs.ends[a].families.iter().map(|phi| rhs.ends[a].lookup(phi)).collect::<Result<Vec<_>>>()?;
            Ok(SetMap::new(t, rhs.ends[a].len()))
        })
        .collect::<Result<Vec<_>>>()?;
    check_iso(&lhs.presheaf, &rhs_p, NatTrans::new(lhs.presheaf.clone(), rhs_p.clone(), components))
}

/// Law (b): `∀^q_M S ≅ (∃_{M*} S*)*` for `S` covariant on `B`, with
/// canonical map `[b; s; m] ↦ [b; m; s]`.
pub fn law_b(m: &Distributor, s: &Presheaf, lim: Limits) -> Result<IsoReport> {
    let lhs = forall_q(m, s, lim)?;
    let rhs = exists_along(&m.dual(), &s.dual(), lim)?;
    let rhs_p = rhs.presheaf.dual();
    let components = (0..m.src.num_objects())
        .map(|a| lhs.coends[a].induced(&rhs.coends[a], |b, e, y| (b, y, e)))
        .collect::<Result<Vec<_>>>()?;
    check_iso(&lhs.presheaf, &rhs_p, NatTrans::new(lhs.presheaf.clone(), rhs_p.clone(), components))
}

/// The mirror of law (a) read from the covariant side:
/// `∃^q_M R ≅ *(∀_{M*} R*)` for `R` covariant on `A`.
pub fn exists_q_conjugation(m: &Distributor, r: &Presheaf, lim: Limits) -> Result<IsoReport> {
    let lhs = exists_q(m, r, lim)?;
    let rhs = forall_along(&m.dual(), &r.dual(), lim)?;
    let rhs_p = rhs.presheaf.dual();
    let components = (0..m.tgt.num_objects())
        .map(|b| {
            let t = lhs.ends[b].families.iter().map(|phi| rhs.ends[b].lookup(phi)).collect::<Result<Vec<_>>>()?;
            Ok(SetMap::new(t, rhs.ends[b].len()))
        })
        .collect::<Result<Vec<_>>>()?;
    check_iso(&lhs.presheaf, &rhs_p, NatTrans::new(lhs.presheaf.clone(), rhs_p.clone(), components))
}
