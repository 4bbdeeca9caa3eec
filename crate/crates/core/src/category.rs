//! Finite categories given by explicit composition tables.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub label: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category. Morphisms are addressed by index; `compose(g, f)` is
/// `g ∘ f` and is defined exactly when `tgt(f) == src(g)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Category {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    composites: Vec<Option<usize>>,
    // derived from the fields above
    homs: Vec<Vec<usize>>,
    hom_pos: Vec<usize>,
}

impl fmt::Debug for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Category")
            .field("objects", &self.objects)
            .field("morphisms", &self.morphisms.iter().map(|m| &m.label).collect::<Vec<_>>())
            .finish()
    }
}

pub fn identity_label(object: &str) -> String {
    format!("id_{object}")
}

impl Category {
    /// Assembles a category from raw tables without checking the axioms;
    /// see [`Category::validate`].
    pub fn from_tables(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composites: Vec<Option<usize>>,
    ) -> Self {
        let n = objects.len();
        let mut homs = vec![Vec::new(); n * n];
        let mut hom_pos = vec![0; morphisms.len()];
        for (i, m) in morphisms.iter().enumerate() {
            if m.src < n && m.tgt < n {
                let h = &mut homs[m.src * n + m.tgt];
                hom_pos[i] = h.len();
                h.push(i);
            }
        }
        Category { objects, morphisms, identities, composites, homs, hom_pos }
    }

    /// Builds a category from object labels, non-identity arrows
    /// `(label, src, tgt)` and composites `(g, f, g∘f)` between non-identity
    /// arrows. Identities are named `id_<object>` and composites involving
    /// them are filled in. Axioms are not checked here.
    pub fn from_presentation(
        objects: &[&str],
        arrows: &[(&str, &str, &str)],
        compose: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let obj_index = |o: &str| {
            objects
                .iter()
                .position(|x| *x == o)
                .ok_or_else(|| Error::Unresolved(o.to_string()))
        };
        let mut morphisms: Vec<Morphism> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| Morphism { label: identity_label(o), src: i, tgt: i })
            .collect();
        for (l, s, t) in arrows {
            morphisms.push(Morphism { label: l.to_string(), src: obj_index(s)?, tgt: obj_index(t)? });
        }
        let identities: Vec<usize> = (0..objects.len()).collect();
        let mut labels = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            if labels.insert(m.label.clone(), i).is_some() {
                return Err(Error::Invalid {
                    kind: "category".into(),
                    violations: vec![format!("duplicate morphism label `{}`", m.label)],
                });
            }
        }
        let m = morphisms.len();
        let mut composites = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                if morphisms[f].tgt != morphisms[g].src {
                    continue;
                }
                if g < objects.len() {
                    composites[g * m + f] = Some(f);
                } else if f < objects.len() {
                    composites[g * m + f] = Some(g);
                }
            }
        }
        for (g, f, h) in compose {
            let look = |l: &str| labels.get(l).copied().ok_or_else(|| Error::Unresolved(l.to_string()));
            composites[look(g)? * m + look(f)?] = Some(look(h)?);
        }
        Ok(Category::from_tables(
            objects.iter().map(|s| s.to_string()).collect(),
            morphisms,
            identities,
            composites,
        ))
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_label(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_index(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == label)
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphism_index(&self, label: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.label == label)
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].tgt
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities.get(self.src(f)) == Some(&f)
    }

    /// `g ∘ f`, when defined.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.composites[g * self.morphisms.len() + f]
    }

    /// `g ∘ f` for a pair the caller knows to be composable.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.compose(g, f).expect("composable pair")
    }

    /// Morphism indices `x -> y`, in index order.
    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.homs[x * self.objects.len() + y]
    }

    /// Position of a morphism inside its hom-set.
    pub fn hom_position(&self, f: usize) -> usize {
        self.hom_pos[f]
    }

    pub fn non_identity_count(&self) -> usize {
        (0..self.num_morphisms()).filter(|&f| !self.is_identity(f)).count()
    }

    pub fn is_discrete(&self) -> bool {
        self.non_identity_count() == 0
    }

    /// Every axiom instance that fails, described by name.
    pub fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        let n = self.objects.len();
        let m = self.morphisms.len();
        if self.composites.len() != m * m {
            v.push("composition table has wrong size".to_string());
            return v;
        }
        for (i, mor) in self.morphisms.iter().enumerate() {
            if mor.src >= n || mor.tgt >= n {
                v.push(format!("morphism {} has an unknown endpoint", mor.label));
                return v;
            }
            for other in &self.morphisms[..i] {
                if other.label == mor.label {
                    v.push(format!("duplicate morphism label {}", mor.label));
                }
            }
        }
        if self.identities.len() != n {
            v.push("identity table is not total".to_string());
            return v;
        }
        for (x, &e) in self.identities.iter().enumerate() {
            if e >= m || self.src(e) != x || self.tgt(e) != x {
                v.push(format!("identity of {} is not an endomorphism of it", self.objects[x]));
                return v;
            }
        }
        let label = |f: usize| self.morphisms[f].label.as_str();
        for g in 0..m {
            for f in 0..m {
                let composable = self.tgt(f) == self.src(g);
                match (composable, self.compose(g, f)) {
                    (false, Some(_)) => {
                        v.push(format!("composite ({},{}) defined on a non-composable pair", label(g), label(f)))
                    }
                    (true, None) => v.push(format!("composite ({},{}) missing", label(g), label(f))),
                    (true, Some(h)) if h >= m => {
                        v.push(format!("composite ({},{}) is not a morphism", label(g), label(f)))
                    }
                    (true, Some(h)) => {
                        if self.src(h) != self.src(f) {
                            v.push(format!("composite ({},{}) has wrong source", label(g), label(f)));
                        }
                        if self.tgt(h) != self.tgt(g) {
                            v.push(format!("composite ({},{}) has wrong target", label(g), label(f)));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        if !v.is_empty() {
            return v;
        }
        for f in 0..m {
            if self.comp(self.identity(self.tgt(f)), f) != f {
                v.push(format!("left identity law fails at {}", label(f)));
            }
            if self.comp(f, self.identity(self.src(f))) != f {
                v.push(format!("right identity law fails at {}", label(f)));
            }
        }
        for h in 0..m {
            for g in 0..m {
                if self.tgt(g) != self.src(h) {
                    continue;
                }
                for f in 0..m {
                    if self.tgt(f) != self.src(g) {
                        continue;
                    }
                    if self.comp(self.comp(h, g), f) != self.comp(h, self.comp(g, f)) {
                        v.push(format!("associativity fails at ({},{},{})", label(h), label(g), label(f)));
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
            Err(Error::Invalid { kind: "category".into(), violations: v })
        }
    }

    /// Same objects and morphism labels, arrows reversed. An involution on
    /// the nose.
    pub fn opposite(&self) -> Category {
        let m = self.morphisms.len();
        let morphisms = self
            .morphisms
            .iter()
            .map(|f| Morphism { label: f.label.clone(), src: f.tgt, tgt: f.src })
            .collect();
        let mut composites = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                composites[g * m + f] = self.composites[f * m + g];
            }
        }
        Category::from_tables(self.objects.clone(), morphisms, self.identities.clone(), composites)
    }

    /// Objects `(c,d)` at index `c * |D| + d`, morphisms `(f,g)` at index
    /// `f * |mor D| + g`, composition componentwise.
    pub fn product(&self, other: &Category) -> Category {
        let (n1, n2) = (self.num_objects(), other.num_objects());
        let (m1, m2) = (self.num_morphisms(), other.num_morphisms());
        let mut objects = Vec::with_capacity(n1 * n2);
        for c in &self.objects {
            for d in &other.objects {
                objects.push(format!("({c},{d})"));
            }
        }
        let mut morphisms = Vec::with_capacity(m1 * m2);
        for f in &self.morphisms {
            for g in &other.morphisms {
                morphisms.push(Morphism {
                    label: format!("({},{})", f.label, g.label),
                    src: f.src * n2 + g.src,
                    tgt: f.tgt * n2 + g.tgt,
                });
            }
        }
        let identities = (0..n1 * n2).map(|x| self.identity(x / n2) * m2 + other.identity(x % n2)).collect();
        let m = m1 * m2;
        let mut composites = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                let (g1, g2) = (g / m2, g % m2);
                let (f1, f2) = (f / m2, f % m2);
                if let (Some(h1), Some(h2)) = (self.compose(g1, f1), other.compose(g2, f2)) {
                    composites[g * m + f] = Some(h1 * m2 + h2);
                }
            }
        }
        Category::from_tables(objects, morphisms, identities, composites)
    }

    pub fn terminal() -> Category {
        Category::from_presentation(&["*"], &[], &[]).expect("terminal category")
    }

    pub fn discrete(n: usize) -> Category {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Category::from_presentation(&refs, &[], &[]).expect("discrete category")
    }

    /// `0 -f-> 1`.
    pub fn walking_arrow() -> Category {
        Category::from_presentation(&["0", "1"], &[("f", "0", "1")], &[]).expect("walking arrow")
    }

    /// `0 -f-> 2 <-g- 1`.
    pub fn cospan() -> Category {
        Category::from_presentation(&["0", "1", "2"], &[("f", "0", "2"), ("g", "1", "2")], &[])
            .expect("cospan")
    }

    /// `0 <-f- 2 -g-> 1`.
    pub fn span() -> Category {
        Category::from_presentation(&["0", "1", "2"], &[("f", "2", "0"), ("g", "2", "1")], &[])
            .expect("span")
    }

    /// `f, g : 0 -> 1`.
    pub fn parallel_pair() -> Category {
        Category::from_presentation(&["0", "1"], &[("f", "0", "1"), ("g", "0", "1")], &[])
            .expect("parallel pair")
    }

    /// Two objects and a pair of mutually inverse arrows.
    pub fn iso_pair() -> Category {
        Category::from_presentation(
            &["0", "1"],
            &[("f", "0", "1"), ("g", "1", "0")],
            &[("g", "f", "id_0"), ("f", "g", "id_1")],
        )
        .expect("iso pair")
    }

    /// One object with an idempotent `e ∘ e = e`.
    pub fn idempotent() -> Category {
        Category::from_presentation(&["*"], &[("e", "*", "*")], &[("e", "e", "e")]).expect("idempotent")
    }

    /// One object with an involution `s ∘ s = id`.
    pub fn involution() -> Category {
        Category::from_presentation(&["*"], &[("s", "*", "*")], &[("s", "s", "id_*")]).expect("involution")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_categories_are_valid() {
        for c in [
            Category::terminal(),
            Category::discrete(2),
            Category::walking_arrow(),
            Category::cospan(),
            Category::span(),
            Category::parallel_pair(),
            Category::iso_pair(),
            Category::idempotent(),
            Category::involution(),
        ] {
            assert_eq!(c.validate(), Vec::<String>::new(), "{c:?}");
        }
    }

    #[test]
    fn wrong_target_is_named() {
        let mut c = Category::iso_pair();
        // g ∘ f := f, which goes 0 -> 1 instead of 0 -> 0
        let (f, g) = (c.morphism_index("f").unwrap(), c.morphism_index("g").unwrap());
        let m = c.num_morphisms();
        c.composites[g * m + f] = Some(f);
        let v = c.validate();
        assert_eq!(v, vec!["composite (g,f) has wrong target".to_string()]);
    }

    #[test]
    fn missing_composite_is_reported() {
        let c = Category::from_presentation(&["0", "1", "2"], &[("f", "0", "1"), ("g", "1", "2")], &[]).unwrap();
        assert!(c.validate().iter().any(|v| v.contains("(g,f) missing")));
    }

    #[test]
    fn opposite_examples() {
        assert_eq!(Category::discrete(2).opposite(), Category::discrete(2));
        let op = Category::walking_arrow().opposite();
        let f = op.morphism_index("f").unwrap();
        assert_eq!((op.object_label(op.src(f)), op.object_label(op.tgt(f))), ("1", "0"));
        assert_eq!(Category::cospan().opposite(), Category::span());
        let c = Category::cospan();
        assert_eq!(c.opposite().opposite(), c);
    }

    #[test]
    fn product_examples() {
        let sq = Category::walking_arrow().product(&Category::walking_arrow());
        assert_eq!(sq.num_objects(), 4);
        // brute-force count of pairs of morphisms: 3 * 3
        let count = Category::walking_arrow().num_morphisms().pow(2);
        assert_eq!(sq.num_morphisms(), count);
        assert_eq!(count, 9);
        assert!(sq.validate().is_empty());
        let d = Category::discrete(2).product(&Category::discrete(2));
        assert_eq!((d.num_objects(), d.num_morphisms()), (4, 4));
        assert!(d.is_discrete());
        let t = Category::cospan().product(&Category::terminal());
        assert_eq!((t.num_objects(), t.num_morphisms()), (3, 5));
        assert_eq!(Category::cospan().opposite().product(&Category::walking_arrow().opposite()),
            Category::cospan().product(&Category::walking_arrow()).opposite());
    }

    #[test]
    fn hom_sets() {
        let c = Category::parallel_pair();
        assert_eq!(c.hom(0, 1).len(), 2);
        assert_eq!(c.hom(1, 0).len(), 0);
        let g = c.morphism_index("g").unwrap();
        assert_eq!(c.hom_position(g), 1);
    }
}
