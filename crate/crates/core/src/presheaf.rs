//! Set-valued functors on finite categories, of either variance.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::category::Category;
use crate::error::{Error, Result};
use crate::finset::{decode_function, function_space_size, FinSet, SetMap};
use crate::functor::Functor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Contra,
    Co,
}

impl Variance {
    pub fn flip(self) -> Variance {
        match self {
            Variance::Contra => Variance::Co,
            Variance::Co => Variance::Contra,
        }
    }
}

impl fmt::Display for Variance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variance::Contra => "contra",
            Variance::Co => "co",
        })
    }
}

/// A finite-set-valued functor on `base`. For `Contra`, the action of
/// `f : a -> a'` maps `values[a']` to `values[a]`; for `Co` it maps
/// `values[a]` to `values[a']`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presheaf {
    pub base: Arc<Category>,
    pub variance: Variance,
    pub values: Vec<FinSet>,
    pub actions: Vec<SetMap>,
}

impl Presheaf {
    /// Objects `(from, to)` that the action of `f` goes between.
    pub fn edge(&self, f: usize) -> (usize, usize) {
        let m = self.base.morphism(f);
        match self.variance {
            Variance::Co => (m.src, m.tgt),
            Variance::Contra => (m.tgt, m.src),
        }
    }

    pub fn act(&self, f: usize, x: usize) -> usize {
        self.actions[f].table[x]
    }

    pub fn value(&self, x: usize) -> &FinSet {
        &self.values[x]
    }

    pub fn size(&self, x: usize) -> usize {
        self.values[x].len()
    }

    pub fn total_size(&self) -> usize {
        self.values.iter().map(FinSet::len).sum()
    }

    pub fn same_shape(&self, other: &Presheaf) -> bool {
        self.variance == other.variance && (Arc::ptr_eq(&self.base, &other.base) || self.base == other.base)
    }

    pub fn validate(&self) -> Vec<String> {
        let c = &self.base;
        let mut v = Vec::new();
        if self.values.len() != c.num_objects() || self.actions.len() != c.num_morphisms() {
            v.push("value or action table is not total".to_string());
            return v;
        }
        for f in 0..c.num_morphisms() {
            let (from, to) = self.edge(f);
            let a = &self.actions[f];
            if a.domain() != self.size(from) || a.codomain != self.size(to) || !a.is_total() {
                v.push(format!("action of {} is not a map between the right values", c.morphism(f).label));
            }
        }
        if !v.is_empty() {
            return v;
        }
        for x in 0..c.num_objects() {
            if self.actions[c.identity(x)] != SetMap::identity(self.size(x)) {
                v.push(format!("identity of {} does not act as the identity", c.object_label(x)));
            }
        }
        for g in 0..c.num_morphisms() {
            for f in 0..c.num_morphisms() {
                if let Some(h) = c.compose(g, f) {
                    let expect = match self.variance {
                        Variance::Co => self.actions[g].after(&self.actions[f]),
                        Variance::Contra => self.actions[f].after(&self.actions[g]),
                    };
                    if expect != self.actions[h] {
                        v.push(format!(
                            "functoriality fails at ({},{})",
                            c.morphism(g).label,
                            c.morphism(f).label
                        ));
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
            Err(Error::Invalid { kind: "presheaf".into(), violations: v })
        }
    }

    /// Assembles a presheaf from its values and an elementwise action
    /// `(morphism, element) -> element`.
    pub fn build(
        base: &Arc<Category>,
        variance: Variance,
        values: Vec<FinSet>,
        act: impl Fn(usize, usize) -> usize,
    ) -> Presheaf {
        let mut p = Presheaf { base: base.clone(), variance, values, actions: Vec::new() };
        p.actions = (0..base.num_morphisms())
            .map(|f| {
                let (x, y) = p.edge(f);
                SetMap::new((0..p.size(x)).map(|e| act(f, e)).collect(), p.size(y))
            })
            .collect();
        p
    }

    /// Every value a singleton.
    pub fn terminal(base: &Arc<Category>, variance: Variance) -> Presheaf {
        Presheaf::constant(base, variance, &FinSet::singleton("*"))
    }

    pub fn constant(base: &Arc<Category>, variance: Variance, set: &FinSet) -> Presheaf {
        Presheaf {
            base: base.clone(),
            variance,
            values: vec![set.clone(); base.num_objects()],
            actions: vec![SetMap::identity(set.len()); base.num_morphisms()],
        }
    }

    /// The unit `1` over the terminal category.
    pub fn unit() -> Presheaf {
        Presheaf::terminal(&Arc::new(Category::terminal()), Variance::Contra)
    }

    /// `hom(-, a)`, elements labelled by morphism labels.
    pub fn representable(base: &Arc<Category>, a: usize) -> Presheaf {
        let c = base;
        let values = (0..c.num_objects())
            .map(|x| FinSet::from_distinct(c.hom(x, a).iter().map(|&h| c.morphism(h).label.clone()).collect()))
            .collect();
        let actions = (0..c.num_morphisms())
            .map(|f| {
                let (x, y) = (c.src(f), c.tgt(f));
                let table = c.hom(y, a).iter().map(|&h| c.hom_position(c.comp(h, f))).collect();
                SetMap::new(table, c.hom(x, a).len())
            })
            .collect();
        Presheaf { base: base.clone(), variance: Variance::Contra, values, actions }
    }

    /// `hom(a, -)`.
    pub fn corepresentable(base: &Arc<Category>, a: usize) -> Presheaf {
        let c = base;
        let values = (0..c.num_objects())
            .map(|x| FinSet::from_distinct(c.hom(a, x).iter().map(|&h| c.morphism(h).label.clone()).collect()))
            .collect();
        let actions = (0..c.num_morphisms())
            .map(|f| {
                let (x, y) = (c.src(f), c.tgt(f));
                let table = c.hom(a, x).iter().map(|&h| c.hom_position(c.comp(f, h))).collect();
                SetMap::new(table, c.hom(a, y).len())
            })
            .collect();
        Presheaf { base: base.clone(), variance: Variance::Co, values, actions }
    }

    /// Same tables read over the opposite category with the other variance.
    /// An involution on the nose.
    pub fn dual(&self) -> Presheaf {
        Presheaf {
            base: Arc::new(self.base.opposite()),
            variance: self.variance.flip(),
            values: self.values.clone(),
            actions: self.actions.clone(),
        }
    }

    /// `(a,b) ↦ R(a) × S(b)` over `A × B`; both factors must share a variance.
    pub fn tensor(&self, other: &Presheaf) -> Result<Presheaf> {
        if self.variance != other.variance {
            return Err(Error::Variance("tensor factors must have the same variance".into()));
        }
        let base = Arc::new(self.base.product(&other.base));
        let values = (0..base.num_objects())
            .map(|x| {
                let (a, b) = (x / other.base.num_objects(), x % other.base.num_objects());
                self.values[a].product(&other.values[b])
            })
            .collect();
        let mb = other.base.num_morphisms();
        let actions = (0..base.num_morphisms())
            .map(|fg| {
                let (f, g) = (fg / mb, fg % mb);
                let (af, ag) = (&self.actions[f], &other.actions[g]);
                let table = (0..af.domain() * ag.domain())
                    .map(|xy| {
                        let (x, y) = (xy / ag.domain().max(1), xy % ag.domain().max(1));
                        af.apply(x) * ag.codomain + ag.apply(y)
                    })
                    .collect();
                SetMap::new(table, af.codomain * ag.codomain)
            })
            .collect();
        Ok(Presheaf { base, variance: self.variance, values, actions })
    }

    /// `x ↦ R(x) × S(x)` over a shared base.
    pub fn pointwise_product(&self, other: &Presheaf) -> Result<Presheaf> {
        if !self.same_shape(other) {
            return Err(Error::BaseMismatch("pointwise product needs a shared base and variance".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(x, y)| x.product(y)).collect();
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(af, ag)| {
                let table = (0..af.domain() * ag.domain())
                    .map(|xy| {
                        let (x, y) = (xy / ag.domain().max(1), xy % ag.domain().max(1));
                        af.apply(x) * ag.codomain + ag.apply(y)
                    })
                    .collect();
                SetMap::new(table, af.codomain * ag.codomain)
            })
            .collect();
        Ok(Presheaf { base: self.base.clone(), variance: self.variance, values, actions })
    }

    /// Precomposition with `F : A -> B`, giving a functor on `A` of the same variance.
    pub fn restrict(&self, functor: &Functor) -> Result<Presheaf> {
        if *functor.tgt != *self.base {
            return Err(Error::BaseMismatch("restriction along a functor into another base".into()));
        }
        Ok(Presheaf {
            base: functor.src.clone(),
            variance: self.variance,
            values: functor.on_objects.iter().map(|&y| self.values[y].clone()).collect(),
            actions: functor.on_morphisms.iter().map(|&g| self.actions[g].clone()).collect(),
        })
    }

    /// Every presheaf of the given variance with values of size `<= max_size`,
    /// elements labelled `0, 1, ...`.
    pub fn enumerate(base: &Arc<Category>, variance: Variance, max_size: usize, cap: usize) -> Result<Vec<Presheaf>> {
        let n = base.num_objects();
        let mut out = Vec::new();
        let mut sizes = vec![0; n];
        loop {
            let mut search = ActionSearch::new(base, variance, &sizes);
            search.run(&mut |p| {
                if out.len() >= cap {
                    return Err(Error::cap("presheaf enumeration", out.len() as u128 + 1, cap as u128));
                }
                out.push(p);
                Ok(true)
            }, None::<&mut rand_chacha::ChaCha8Rng>)?;
            let mut i = 0;
            while i < n {
                sizes[i] += 1;
                if sizes[i] <= max_size {
                    break;
                }
                sizes[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        Ok(out)
    }

    /// A random presheaf with values of size `<= max_size`; retries value
    /// sizes until some action tables exist.
    pub fn random<R: Rng>(base: &Arc<Category>, variance: Variance, max_size: usize, rng: &mut R) -> Presheaf {
        loop {
            let sizes: Vec<usize> = (0..base.num_objects()).map(|_| rng.gen_range(0..=max_size)).collect();
            let mut search = ActionSearch::new(base, variance, &sizes);
            let mut found = None;
            search
                .run(&mut |p| {
                    found = Some(p);
                    Ok(false)
                }, Some(&mut *rng))
                .expect("random search has no cap");
            if let Some(p) = found {
                return p;
            }
        }
    }
}

/// Backtracking search for functorial action tables with fixed value sizes.
struct ActionSearch<'a> {
    base: &'a Arc<Category>,
    variance: Variance,
    sizes: Vec<usize>,
    free: Vec<usize>,
    actions: Vec<Option<SetMap>>,
}

impl<'a> ActionSearch<'a> {
    fn new(base: &'a Arc<Category>, variance: Variance, sizes: &[usize]) -> Self {
        let mut actions = vec![None; base.num_morphisms()];
        for x in 0..base.num_objects() {
            actions[base.identity(x)] = Some(SetMap::identity(sizes[x]));
        }
        let free = (0..base.num_morphisms()).filter(|&f| !base.is_identity(f)).collect();
        ActionSearch { base, variance, sizes: sizes.to_vec(), free, actions }
    }

    fn edge(&self, f: usize) -> (usize, usize) {
        let m = self.base.morphism(f);
        match self.variance {
            Variance::Co => (m.src, m.tgt),
            Variance::Contra => (m.tgt, m.src),
        }
    }

    fn consistent(&self, k: usize) -> bool {
        let c = self.base;
        let f0 = self.free[k];
        for g in 0..c.num_morphisms() {
            for f in 0..c.num_morphisms() {
                let Some(h) = c.compose(g, f) else { continue };
                if g != f0 && f != f0 && h != f0 {
                    continue;
                }
                let (Some(ag), Some(af), Some(ah)) = (&self.actions[g], &self.actions[f], &self.actions[h]) else {
                    continue;
                };
                let expect = match self.variance {
                    Variance::Co => ag.after(af),
                    Variance::Contra => af.after(ag),
                };
                if &expect != ah {
                    return false;
                }
            }
        }
        true
    }

    fn finish(&self) -> Presheaf {
        Presheaf {
            base: self.base.clone(),
            variance: self.variance,
            values: self.sizes.iter().map(|&n| FinSet::numbered(n)).collect(),
            actions: self.actions.iter().map(|a| a.clone().expect("assigned")).collect(),
        }
    }

    /// Calls `emit` on each solution; stops when it returns `Ok(false)`.
    fn run<R: Rng>(
        &mut self,
        emit: &mut dyn FnMut(Presheaf) -> Result<bool>,
        mut rng: Option<&mut R>,
    ) -> Result<bool> {
        self.go(0, emit, &mut rng)
    }

    fn go<R: Rng>(
        &mut self,
        k: usize,
        emit: &mut dyn FnMut(Presheaf) -> Result<bool>,
        rng: &mut Option<&mut R>,
    ) -> Result<bool> {
        if k == self.free.len() {
            return emit(self.finish());
        }
        let f = self.free[k];
        let (from, to) = self.edge(f);
        let (d, c) = (self.sizes[from], self.sizes[to]);
        let Some(count) = function_space_size(d, c) else { return Ok(true) };
        let mut codes: Vec<usize> = (0..count).collect();
        if let Some(r) = rng.as_deref_mut() {
            codes.shuffle(r);
        }
        for code in codes {
            self.actions[f] = Some(SetMap::new(decode_function(code, d, c), c));
            if self.consistent(k) && !self.go(k + 1, emit, rng)? {
                self.actions[f] = None;
                return Ok(false);
            }
        }
        self.actions[f] = None;
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn representables_are_valid() {
        let c = Arc::new(Category::cospan());
        for a in 0..3 {
            assert!(Presheaf::representable(&c, a).validate().is_empty());
            assert!(Presheaf::corepresentable(&c, a).validate().is_empty());
        }
    }

    #[test]
    fn dual_is_an_involution() {
        let c = Arc::new(Category::walking_arrow());
        for p in Presheaf::enumerate(&c, Variance::Contra, 2, 1000).unwrap() {
            let d = p.dual();
            assert_eq!(d.variance, Variance::Co);
            assert!(d.validate().is_empty());
            assert_eq!(d.dual(), p);
        }
    }

    #[test]
    fn enumeration_counts_on_walking_arrow() {
        // brute force: sizes (s0, s1) in 0..=2, contra maps s1 -> s0
        let mut expect = 0;
        for s0 in 0..=2u32 {
            for s1 in 0..=2u32 {
                expect += s0.pow(s1) as usize;
            }
        }
        let c = Arc::new(Category::walking_arrow());
        assert_eq!(Presheaf::enumerate(&c, Variance::Contra, 2, 1000).unwrap().len(), expect);
    }

    #[test]
    fn broken_functoriality_is_reported() {
        let c = Arc::new(Category::involution());
        let mut p = Presheaf::terminal(&c, Variance::Contra);
        p.values = vec![FinSet::numbered(2)];
        p.actions = vec![SetMap::identity(2), SetMap::new(vec![0, 0], 2)];
        assert!(p.validate().iter().any(|v| v.contains("functoriality")));
    }

    #[test]
    fn random_presheaves_are_valid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let c = Arc::new(Category::cospan().product(&Category::walking_arrow().opposite()));
        for _ in 0..20 {
            let p = Presheaf::random(&c, Variance::Contra, 2, &mut rng);
            assert!(p.validate().is_empty());
        }
    }

    #[test]
    fn tensor_sizes_multiply() {
        let a = Arc::new(Category::walking_arrow());
        let r = Presheaf::representable(&a, 1);
        let s = Presheaf::terminal(&a, Variance::Contra);
        let t = r.tensor(&s).unwrap();
        assert!(t.validate().is_empty());
        for x in 0..4 {
            assert_eq!(t.size(x), r.size(x / 2) * s.size(x % 2));
        }
    }
}
