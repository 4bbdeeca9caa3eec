//! Coends, ends and the quantifiers `∃_M ⊣ ∀_M` along a distributor.
//!
//! `(∃_M R)(b) = ∫^a M(b,a) × R(a)` is a quotient of a disjoint union, and
//! `(∀_M S)(a) = ∫_b M(b,a) → S(b)` is the set of natural families.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;

use crate::distributor::Distributor;
use crate::error::{Error, Limits, Result};
use crate::finset::{FinSet, SetMap};
use crate::nat::{check_iso, BijectionReport, IsoReport, NatTrans};
use crate::presheaf::{Presheaf, Variance};

/// `∫^x P(x) × Q(x)` for a covariant `P` and a contravariant `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoendResult {
    pub value: FinSet,
    /// Every `(x, p, q)` of the disjoint union, in order.
    pub summands: Vec<(usize, usize, usize)>,
    /// Class of each summand.
    pub class_of: Vec<usize>,
    /// The summand whose label names each class.
    pub representatives: Vec<usize>,
    offsets: Vec<usize>,
    widths: Vec<usize>,
}

impl CoendResult {
    pub fn len(&self) -> usize {
        self.value.len()
    }

    pub fn is_empty(&self) -> bool {
        self.value.is_empty()
    }

    pub fn summand_index(&self, x: usize, p: usize, q: usize) -> usize {
        self.offsets[x] + p * self.widths[x] + q
    }

    /// The class of `(x, p, q)`.
    pub fn inject(&self, x: usize, p: usize, q: usize) -> usize {
        self.class_of[self.summand_index(x, p, q)]
    }

    pub fn representative(&self, class: usize) -> (usize, usize, usize) {
        self.summands[self.representatives[class]]
    }

    /// Members of every class, in summand order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.len()];
        for (s, &c) in self.class_of.iter().enumerate() {
            out[c].push(s);
        }
        out
    }

    /// A map out of the quotient given on summands. Every member of a class
    /// must land on the same element.
    pub fn descend(&self, codomain: usize, f: impl Fn(usize, usize, usize) -> usize) -> Result<SetMap> {
        let mut table = vec![usize::MAX; self.len()];
        for (s, &(x, p, q)) in self.summands.iter().enumerate() {
            let y = f(x, p, q);
            let c = self.class_of[s];
            if table[c] == usize::MAX {
                table[c] = y;
            } else if table[c] != y {
                let (rx, rp, rq) = self.representative(c);
                return Err(Error::IllDefined(format!(
                    "class {} (summands {rx}/{rp}/{rq} and {x}/{p}/{q}) has two images",
                    self.value.label(c)
                )));
            }
        }
        Ok(SetMap::new(table, codomain))
    }

    /// The map between quotients induced by a map of summands.
    pub fn induced(
        &self,
        target: &CoendResult,
        f: impl Fn(usize, usize, usize) -> (usize, usize, usize),
    ) -> Result<SetMap> {
        self.descend(target.len(), |x, p, q| {
            let (y, p1, q1) = f(x, p, q);
            target.inject(y, p1, q1)
        })
    }
}

/// Quotients `Σ_x P(x) × Q(x)` by `(y, P(f)p, q) ~ (x, p, Q(f)q)` for every
/// `f : x -> y`, with a union-find over the generating pairs.
pub fn coend(p: &Presheaf, q: &Presheaf, lim: Limits) -> Result<CoendResult> {
    if p.variance != Variance::Co || q.variance != Variance::Contra {
        return Err(Error::Variance("coend needs a covariant and a contravariant factor".into()));
    }
    if !(std::sync::Arc::ptr_eq(&p.base, &q.base) || p.base == q.base) {
        return Err(Error::BaseMismatch("coend factors live over different categories".into()));
    }
    let c = &p.base;
    let n = c.num_objects();
    let mut offsets = Vec::with_capacity(n);
    let mut widths = Vec::with_capacity(n);
    let mut total: u128 = 0;
    for x in 0..n {
        offsets.push(total as usize);
        widths.push(q.size(x));
        total += (p.size(x) * q.size(x)) as u128;
        if total > lim.coend as u128 {
            return Err(Error::cap("coend", total, lim.coend as u128));
        }
    }
    let total = total as usize;
    let idx = |x: usize, a: usize, b: usize| offsets[x] + a * widths[x] + b;
    let mut summands = Vec::with_capacity(total);
    for x in 0..n {
        for a in 0..p.size(x) {
            for b in 0..q.size(x) {
                summands.push((x, a, b));
            }
        }
    }
    let mut uf = UnionFind::<usize>::new(total);
    for f in 0..c.num_morphisms() {
        if c.is_identity(f) {
            continue;
        }
        let (x, y) = (c.src(f), c.tgt(f));
        for a in 0..p.size(x) {
            for b in 0..q.size(y) {
                uf.union(idx(y, p.act(f, a), b), idx(x, a, q.act(f, b)));
            }
        }
    }
    let labels: Vec<String> = summands
        .iter()
        .map(|&(x, a, b)| format!("[{};{};{}]", c.object_label(x), p.value(x).label(a), q.value(x).label(b)))
        .collect();
    let mut class_of = vec![usize::MAX; total];
    let mut root_class: HashMap<usize, usize> = HashMap::new();
    let mut representatives: Vec<usize> = Vec::new();
    for s in 0..total {
        let root = uf.find(s);
        let k = *root_class.entry(root).or_insert_with(|| {
            representatives.push(s);
            representatives.len() - 1
        });
        class_of[s] = k;
        if labels[s] < labels[representatives[k]] {
            representatives[k] = s;
        }
    }
    let value = FinSet::from_distinct(representatives.iter().map(|&s| labels[s].clone()).collect());
    Ok(CoendResult { value, summands, class_of, representatives, offsets, widths })
}

/// The natural transformations `P -> Q`, as natural families of maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndResult {
    pub value: FinSet,
    /// Components of each family, one map per object.
    pub families: Vec<Vec<SetMap>>,
    index: HashMap<Vec<usize>, usize>,
}

impl EndResult {
    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    /// Position of a family given by its components.
    pub fn lookup(&self, components: &[SetMap]) -> Result<usize> {
        self.index
            .get(&family_key(components))
            .copied()
            .ok_or_else(|| Error::Lookup("family is not natural".into()))
    }
}

fn family_key(components: &[SetMap]) -> Vec<usize> {
    components.iter().flat_map(|k| k.table.iter().copied()).collect()
}

/// Enumerates `Nat(P, Q)` for presheaves of the same variance over one base.
/// The search assigns one element image at a time and propagates along every
/// arrow, so each naturality constraint is checked once; `lim.family` bounds
/// the number of assignments tried.
pub fn nat_families(p: &Presheaf, q: &Presheaf, lim: Limits) -> Result<EndResult> {
    if !p.same_shape(q) {
        return Err(Error::BaseMismatch("natural families between presheaves of different shape".into()));
    }
    let c = &p.base;
    let n = c.num_objects();
    let mut offsets = vec![0; n + 1];
    for x in 0..n {
        offsets[x + 1] = offsets[x] + p.size(x);
    }
    let vars = offsets[n];
    let mut owner = vec![0; vars];
    let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vars];
    for x in 0..n {
        for e in 0..p.size(x) {
            owner[offsets[x] + e] = x;
        }
    }
    for f in 0..c.num_morphisms() {
        if c.is_identity(f) {
            continue;
        }
        let (x, y) = p.edge(f);
        for e in 0..p.size(x) {
            out[offsets[x] + e].push((f, offsets[y] + p.act(f, e)));
        }
    }
    let mut search = FamilySearch {
        q,
        owner: &owner,
        out: &out,
        assigned: vec![usize::MAX; vars],
        trail: Vec::new(),
        nodes: 0,
        cap: lim.family,
        found: Vec::new(),
    };
    search.go(0)?;
    let families: Vec<Vec<SetMap>> = search
        .found
        .iter()
        .map(|flat| {
            (0..n)
                .map(|x| SetMap::new(flat[offsets[x]..offsets[x + 1]].to_vec(), q.size(x)))
                .collect()
        })
        .collect();
    let labels = families
        .iter()
        .map(|comps| {
            let mut parts = Vec::new();
            for (x, comp) in comps.iter().enumerate().take(n) {
                for (e, &v) in comp.table.iter().enumerate() {
                    parts.push(format!("{}:{}>{}", c.object_label(x), p.value(x).label(e), q.value(x).label(v)));
                }
            }
            format!("<{}>", parts.join(","))
        })
        .collect();
    let index = search.found.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    Ok(EndResult { value: FinSet::from_distinct(labels), families, index })
}

struct FamilySearch<'a> {
    q: &'a Presheaf,
    owner: &'a [usize],
    out: &'a [Vec<(usize, usize)>],
    assigned: Vec<usize>,
    trail: Vec<usize>,
    nodes: usize,
    cap: usize,
    found: Vec<Vec<usize>>,
}

impl FamilySearch<'_> {
    fn go(&mut self, k: usize) -> Result<()> {
        if k == self.assigned.len() {
            self.found.push(self.assigned.clone());
            return Ok(());
        }
        if self.assigned[k] != usize::MAX {
            return self.go(k + 1);
        }
        for v in 0..self.q.size(self.owner[k]) {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(Error::cap("natural family search", self.nodes as u128, self.cap as u128));
            }
            let mark = self.trail.len();
            if self.assign(k, v) {
                self.go(k + 1)?;
            }
            while self.trail.len() > mark {
                let var = self.trail.pop().expect("trail entry");
                self.assigned[var] = usize::MAX;
            }
        }
        Ok(())
    }

    fn assign(&mut self, var: usize, val: usize) -> bool {
        let mut stack = vec![(var, val)];
        while let Some((x, v)) = stack.pop() {
            if self.assigned[x] != usize::MAX {
                if self.assigned[x] != v {
                    return false;
                }
                continue;
            }
            self.assigned[x] = v;
            self.trail.push(x);
            for &(f, y) in &self.out[x] {
                stack.push((y, self.q.act(f, v)));
            }
        }
        true
    }
}

/// `∫_x P(x) → Q(x)` for presheaves of the same variance.
pub fn end(p: &Presheaf, q: &Presheaf, lim: Limits) -> Result<EndResult> {
    nat_families(p, q, lim)
}

/// `∃_M R` together with the coend computed at each object of `B`.
#[derive(Debug, Clone)]
pub struct Pushforward {
    pub presheaf: Presheaf,
    pub coends: Vec<CoendResult>,
}

/// `∀_M S` together with the end computed at each object of `A`.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub presheaf: Presheaf,
    pub ends: Vec<EndResult>,
}

/// `(∃_M R)(b) = ∫^a M(b,a) × R(a)`; `g : b' -> b` acts on `[a;m;r]` by
/// the left action of `M`.
pub fn exists_along(m: &Distributor, r: &Presheaf, lim: Limits) -> Result<Pushforward> {
    if r.variance != Variance::Contra {
        return Err(Error::Variance("∃ along a distributor takes a contravariant presheaf".into()));
    }
    if *r.base != *m.src {
        return Err(Error::BaseMismatch("presheaf does not live over the source of the distributor".into()));
    }
    let b = &m.tgt;
    let coends = (0..b.num_objects()).map(|y| coend(&m.row(y), r, lim)).collect::<Result<Vec<_>>>()?;
    let mut actions = Vec::with_capacity(b.num_morphisms());
    for g in 0..b.num_morphisms() {
        let (y1, y) = (b.src(g), b.tgt(g));
        actions.push(coends[y].induced(&coends[y1], |a, x, e| (a, m.act_left(g, a, x), e))?);
    }
    let presheaf = Presheaf {
        base: b.clone(),
        variance: Variance::Contra,
        values: coends.iter().map(|c| c.value.clone()).collect(),
        actions,
    };
    Ok(Pushforward { presheaf, coends })
}

/// `(∀_M S)(a) = ∫_b M(b,a) → S(b)`; `f : a -> a'` acts by precomposing
/// each family with the right action of `M`.
pub fn forall_along(m: &Distributor, s: &Presheaf, lim: Limits) -> Result<Pullback> {
    if s.variance != Variance::Contra {
        return Err(Error::Variance("∀ along a distributor takes a contravariant presheaf".into()));
    }
    if *s.base != *m.tgt {
        return Err(Error::BaseMismatch("presheaf does not live over the target of the distributor".into()));
    }
    let a = &m.src;
    let nb = m.tgt.num_objects();
    let ends = (0..a.num_objects()).map(|x| nat_families(&m.column(x), s, lim)).collect::<Result<Vec<_>>>()?;
    let mut actions = Vec::with_capacity(a.num_morphisms());
    for f in 0..a.num_morphisms() {
        let (x, x1) = (a.src(f), a.tgt(f));
        let table = ends[x1]
            .families
            .iter()
            .map(|phi| {
                let psi: Vec<SetMap> = (0..nb).map(|b| phi[b].after(&m.right[f * nb + b])).collect();
                ends[x].lookup(&psi)
            })
            .collect::<Result<Vec<_>>>()?;
        actions.push(SetMap::new(table, ends[x].len()));
    }
    let presheaf = Presheaf {
        base: a.clone(),
        variance: Variance::Contra,
        values: ends.iter().map(|e| e.value.clone()).collect(),
        actions,
    };
    Ok(Pullback { presheaf, ends })
}

/// `∃_M α : ∃_M R -> ∃_M R'` for `α : R -> R'`.
pub fn exists_map(m: &Distributor, alpha: &NatTrans, lim: Limits) -> Result<NatTrans> {
    let from = exists_along(m, &alpha.src, lim)?;
    let to = exists_along(m, &alpha.tgt, lim)?;
    let components = (0..m.tgt.num_objects())
        .map(|b| from.coends[b].induced(&to.coends[b], |a, x, e| (a, x, alpha.components[a].apply(e))))
        .collect::<Result<Vec<_>>>()?;
    Ok(NatTrans::new(from.presheaf, to.presheaf, components))
}

/// `∀_M β : ∀_M S -> ∀_M S'` for `β : S -> S'`.
pub fn forall_map(m: &Distributor, beta: &NatTrans, lim: Limits) -> Result<NatTrans> {
    let from = forall_along(m, &beta.src, lim)?;
    let to = forall_along(m, &beta.tgt, lim)?;
    let components = (0..m.src.num_objects())
        .map(|a| {
            let table = from.ends[a]
                .families
                .iter()
                .map(|phi| {
                    let psi: Vec<SetMap> = phi.iter().zip(&beta.components).map(|(p, b)| b.after(p)).collect();
                    to.ends[a].lookup(&psi)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SetMap::new(table, to.ends[a].len()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NatTrans::new(from.presheaf, to.presheaf, components))
}

/// Compares `Nat(∃_M R, S)` with `Nat(R, ∀_M S)` through the transposition
/// `α ↦ (r ↦ (m ↦ α_b[a;m;r]))` and its inverse.
pub fn adjunction_check(m: &Distributor, r: &Presheaf, s: &Presheaf, lim: Limits) -> Result<BijectionReport> {
    let push = exists_along(m, r, lim)?;
    let pull = forall_along(m, s, lim)?;
    let lhs = nat_families(&push.presheaf, s, lim)?;
    let rhs = nat_families(r, &pull.presheaf, lim)?;
    let (na, nb) = (m.src.num_objects(), m.tgt.num_objects());
    let forward = lhs
        .families
        .iter()
        .map(|alpha| {
            let beta = (0..na)
                .map(|a| {
                    let table = (0..r.size(a))
                        .map(|e| {
                            let fam: Vec<SetMap> = (0..nb)
                                .map(|b| {
                                    let t = (0..m.size(b, a)).map(|x| alpha[b].apply(push.coends[b].inject(a, x, e)));
                                    SetMap::new(t.collect(), s.size(b))
                                })
                                .collect();
                            pull.ends[a].lookup(&fam)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(SetMap::new(table, pull.ends[a].len()))
                })
                .collect::<Result<Vec<_>>>()?;
            rhs.lookup(&beta)
        })
        .collect::<Result<Vec<_>>>()?;
    let backward = rhs
        .families
        .iter()
        .map(|beta| {
            let alpha = (0..nb)
                .map(|b| {
                    push.coends[b].descend(s.size(b), |a, x, e| {
                        pull.ends[a].families[beta[a].apply(e)][b].apply(x)
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            lhs.lookup(&alpha)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BijectionReport::from_maps(
        &SetMap::new(forward, rhs.len()),
        &SetMap::new(backward, lhs.len()),
    ))
}

/// The canonical map `∃_N ∃_M R -> ∃_{N∘M} R`,
/// `[b; n; [a; m; r]] ↦ [a; [b; n; m]; r]`.
pub fn compose_quantifier_iso(n: &Distributor, m: &Distributor, r: &Presheaf, lim: Limits) -> Result<IsoReport> {
    let inner = exists_along(m, r, lim)?;
    let lhs = exists_along(n, &inner.presheaf, lim)?;
    let comp = Distributor::compose(n, m, lim)?;
    let rhs = exists_along(&comp.dist, r, lim)?;
    let na = m.src.num_objects();
    let components = (0..n.tgt.num_objects())
        .map(|c| {
            lhs.coends[c].descend(rhs.presheaf.size(c), |b, x, k| {
                let (a, y, e) = inner.coends[b].representative(k);
                rhs.coends[c].inject(a, comp.coends[c * na + a].inject(b, x, y), e)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let t = NatTrans::new(lhs.presheaf.clone(), rhs.presheaf.clone(), components);
    check_iso(&lhs.presheaf, &rhs.presheaf, t)
}

/// The co-Yoneda map `∃_{id} R -> R`, `[a; h; r] ↦ R(h) r`.
pub fn co_yoneda(r: &Presheaf, lim: Limits) -> Result<IsoReport> {
    let id = Distributor::identity(&r.base);
    let push = exists_along(&id, r, lim)?;
    let c = &r.base;
    let components = (0..c.num_objects())
        .map(|b| push.coends[b].descend(r.size(b), |a, h, e| r.act(c.hom(b, a)[h], e)))
        .collect::<Result<Vec<_>>>()?;
    let t = NatTrans::new(push.presheaf.clone(), r.clone(), components);
    check_iso(&push.presheaf, r, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Category;
    use std::sync::Arc;

    #[test]
    fn discrete_pushforward_counts() {
        // A = {x, y}, B = {z}, M(z,x) = {m}, M(z,y) = {}
        let a = Arc::new(Category::discrete(2));
        let b = Arc::new(Category::terminal());
        let m = Distributor::build(&a, &b, |_, x| FinSet::numbered(1 - x), |_, _, e| e, |_, _, e| e);
        let r = Presheaf::build(&a, Variance::Contra, vec![FinSet::numbered(2), FinSet::numbered(1)], |_, e| e);
        let push = exists_along(&m, &r, Limits::default()).unwrap();
        assert_eq!(push.presheaf.size(0), 2);
    }

    #[test]
    fn discrete_pullback_counts() {
        let a = Arc::new(Category::discrete(2));
        let b = Arc::new(Category::terminal());
        let m = Distributor::build(&a, &b, |_, x| FinSet::numbered(1 - x), |_, _, e| e, |_, _, e| e);
        let s = Presheaf::build(&b, Variance::Contra, vec![FinSet::numbered(2)], |_, e| e);
        let pull = forall_along(&m, &s, Limits::default()).unwrap();
        assert_eq!((pull.presheaf.size(0), pull.presheaf.size(1)), (2, 1));
    }

    #[test]
    fn co_yoneda_on_arrow() {
        // R(0) = {p}, R(1) = {q, q'}, R(f) constant
        let w = Arc::new(Category::walking_arrow());
        let r = Presheaf::build(&w, Variance::Contra, vec![FinSet::numbered(1), FinSet::numbered(2)], |_, _| 0);
        let r = Presheaf { actions: vec![SetMap::identity(1), SetMap::identity(2), SetMap::new(vec![0, 0], 1)], ..r };
        assert!(r.validate().is_empty());
        assert!(co_yoneda(&r, Limits::default()).unwrap().holds);
    }

    #[test]
    fn cap_is_an_error() {
        let w = Arc::new(Category::walking_arrow());
        let id = Distributor::identity(&w);
        let r = Presheaf::constant(&w, Variance::Contra, &FinSet::numbered(2));
        assert!(matches!(exists_along(&id, &r, Limits::with_cap(2)), Err(Error::CapExceeded { .. })));
    }
}
