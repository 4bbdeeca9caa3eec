use std::sync::Arc;

use crate::category::Category;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    pub src: Arc<Category>,
    pub tgt: Arc<Category>,
    pub on_objects: Vec<usize>,
    pub on_morphisms: Vec<usize>,
}

impl Functor {
    pub fn obj(&self, x: usize) -> usize {
        self.on_objects[x]
    }

    pub fn mor(&self, f: usize) -> usize {
        self.on_morphisms[f]
    }

    pub fn validate(&self) -> Vec<String> {
        let (a, b) = (&self.src, &self.tgt);
        let mut v = Vec::new();
        if self.on_objects.len() != a.num_objects() || self.on_morphisms.len() != a.num_morphisms() {
            v.push("functor tables are not total".to_string());
            return v;
        }
        if self.on_objects.iter().any(|&y| y >= b.num_objects())
            || self.on_morphisms.iter().any(|&g| g >= b.num_morphisms())
        {
            v.push("functor table leaves the target category".to_string());
            return v;
        }
        for f in 0..a.num_morphisms() {
            let g = self.mor(f);
            if b.src(g) != self.obj(a.src(f)) || b.tgt(g) != self.obj(a.tgt(f)) {
                v.push(format!("{} is not sent to an arrow between the images of its endpoints", a.morphism(f).label));
            }
        }
        if !v.is_empty() {
            return v;
        }
        for x in 0..a.num_objects() {
            if self.mor(a.identity(x)) != b.identity(self.obj(x)) {
                v.push(format!("identity of {} not preserved", a.object_label(x)));
            }
        }
        for g in 0..a.num_morphisms() {
            for f in 0..a.num_morphisms() {
                if let Some(h) = a.compose(g, f) {
                    if b.compose(self.mor(g), self.mor(f)) != Some(self.mor(h)) {
                        v.push(format!(
                            "composite ({},{}) not preserved",
                            a.morphism(g).label,
                            a.morphism(f).label
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
            Err(Error::Invalid { kind: "functor".into(), violations: v })
        }
    }

    pub fn identity(c: &Arc<Category>) -> Functor {
        Functor {
            src: c.clone(),
            tgt: c.clone(),
            on_objects: (0..c.num_objects()).collect(),
            on_morphisms: (0..c.num_morphisms()).collect(),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Functor) -> Result<Functor> {
        if *first.tgt != *self.src {
            return Err(Error::BaseMismatch("functor composite: middle categories differ".into()));
        }
        Ok(Functor {
            src: first.src.clone(),
            tgt: self.tgt.clone(),
            on_objects: first.on_objects.iter().map(|&x| self.obj(x)).collect(),
            on_morphisms: first.on_morphisms.iter().map(|&f| self.mor(f)).collect(),
        })
    }

    /// `Δ : A -> A × A`.
    pub fn diagonal(a: &Arc<Category>) -> Functor {
        let (n, m) = (a.num_objects(), a.num_morphisms());
        Functor {
            src: a.clone(),
            tgt: Arc::new(a.product(a)),
            on_objects: (0..n).map(|x| x * n + x).collect(),
            on_morphisms: (0..m).map(|f| f * m + f).collect(),
        }
    }

    /// `! : A -> 1`.
    pub fn to_terminal(a: &Arc<Category>) -> Functor {
        Functor {
            src: a.clone(),
            tgt: Arc::new(Category::terminal()),
            on_objects: vec![0; a.num_objects()],
            on_morphisms: vec![0; a.num_morphisms()],
        }
    }

    /// The object `x : 1 -> A`.
    pub fn object(a: &Arc<Category>, x: usize) -> Functor {
        Functor {
            src: Arc::new(Category::terminal()),
            tgt: a.clone(),
            on_objects: vec![x],
            on_morphisms: vec![a.identity(x)],
        }
    }

    /// `A -> 1 × A`.
    pub fn left_unitor_inverse(a: &Arc<Category>) -> Functor {
        Functor {
            src: a.clone(),
            tgt: Arc::new(Category::terminal().product(a)),
            on_objects: (0..a.num_objects()).collect(),
            on_morphisms: (0..a.num_morphisms()).collect(),
        }
    }

    /// `1 × A -> A`.
    pub fn left_unitor(a: &Arc<Category>) -> Functor {
        Functor {
            src: Arc::new(Category::terminal().product(a)),
            tgt: a.clone(),
            on_objects: (0..a.num_objects()).collect(),
            on_morphisms: (0..a.num_morphisms()).collect(),
        }
    }

    /// `A × 1 -> A`.
    pub fn right_unitor(a: &Arc<Category>) -> Functor {
        Functor {
            src: Arc::new(a.product(&Category::terminal())),
            tgt: a.clone(),
            on_objects: (0..a.num_objects()).collect(),
            on_morphisms: (0..a.num_morphisms()).collect(),
        }
    }

    /// `A × B -> B × A`.
    pub fn swap(a: &Arc<Category>, b: &Arc<Category>) -> Functor {
        let (na, nb) = (a.num_objects(), b.num_objects());
        let (ma, mb) = (a.num_morphisms(), b.num_morphisms());
        Functor {
            src: Arc::new(a.product(b)),
            tgt: Arc::new(b.product(a)),
            on_objects: (0..na * nb).map(|x| (x % nb) * na + x / nb).collect(),
            on_morphisms: (0..ma * mb).map(|f| (f % mb) * ma + f / mb).collect(),
        }
    }

    /// `A × (B × C) -> (A × B) × C`.
    pub fn associator(a: &Arc<Category>, b: &Arc<Category>, c: &Arc<Category>) -> Functor {
        let src = Arc::new(a.product(&b.product(c)));
        let tgt = Arc::new(a.product(b).product(c));
        // both products use the same row-major order of triples
        Functor {
            on_objects: (0..src.num_objects()).collect(),
            on_morphisms: (0..src.num_morphisms()).collect(),
            src,
            tgt,
        }
    }

    /// All functors `src -> tgt`, by backtracking over the morphism map.
    pub fn enumerate(src: &Arc<Category>, tgt: &Arc<Category>, cap: usize) -> Result<Vec<Functor>> {
        let mut out = Vec::new();
        let n = src.num_objects();
        let mut objs = vec![0; n];
        loop {
            let mut mors = vec![usize::MAX; src.num_morphisms()];
            for x in 0..n {
                mors[src.identity(x)] = tgt.identity(objs[x]);
            }
            let free: Vec<usize> = (0..src.num_morphisms()).filter(|&f| !src.is_identity(f)).collect();
            extend_functor(src, tgt, &objs, &mut mors, &free, 0, &mut out, cap)?;
            // next object assignment
            let mut i = 0;
            while i < n {
                objs[i] += 1;
                if objs[i] < tgt.num_objects() {
                    break;
                }
                objs[i] = 0;
                i += 1;
            }
            if i == n || tgt.num_objects() == 0 {
                break;
            }
        }
        Ok(out)
    }
}

#[allow(clippy::too_many_arguments)]
fn extend_functor(
    src: &Arc<Category>,
    tgt: &Arc<Category>,
    objs: &[usize],
    mors: &mut Vec<usize>,
    free: &[usize],
    k: usize,
    out: &mut Vec<Functor>,
    cap: usize,
) -> Result<()> {
    // check every composite whose three arrows are assigned
    for g in 0..src.num_morphisms() {
        for f in 0..src.num_morphisms() {
            if let Some(h) = src.compose(g, f) {
                if mors[g] != usize::MAX && mors[f] != usize::MAX && mors[h] != usize::MAX
                    && tgt.compose(mors[g], mors[f]) != Some(mors[h])
                {
                    return Ok(());
                }
            }
        }
    }
    if k == free.len() {
        if out.len() >= cap {
            return Err(Error::cap("functor enumeration", out.len() as u128 + 1, cap as u128));
        }
        out.push(Functor {
            src: src.clone(),
            tgt: tgt.clone(),
            on_objects: objs.to_vec(),
            on_morphisms: mors.clone(),
        });
        return Ok(());
    }
    let f = free[k];
    for &g in tgt.hom(objs[src.src(f)], objs[src.tgt(f)]) {
        mors[f] = g;
        extend_functor(src, tgt, objs, mors, free, k + 1, out, cap)?;
    }
    mors[f] = usize::MAX;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structural_functors_are_valid() {
        let a = Arc::new(Category::cospan());
        let b = Arc::new(Category::walking_arrow());
        for f in [
            Functor::identity(&a),
            Functor::diagonal(&a),
            Functor::to_terminal(&a),
            Functor::object(&a, 2),
            Functor::left_unitor_inverse(&a),
            Functor::left_unitor(&a),
            Functor::right_unitor(&a),
            Functor::swap(&a, &b),
            Functor::associator(&a, &b, &a),
        ] {
            assert!(f.validate().is_empty(), "{:?}", f.validate());
        }
    }

    #[test]
    fn enumeration_counts() {
        let w = Arc::new(Category::walking_arrow());
        // functors between posets 2 -> 2 are monotone maps: 3
        assert_eq!(Functor::enumerate(&w, &w, 100).unwrap().len(), 3);
        let p = Arc::new(Category::parallel_pair());
        // arrow into parallel pair: 2 constant + 2 choices of f/g
        assert_eq!(Functor::enumerate(&w, &p, 100).unwrap().len(), 4);
        for f in Functor::enumerate(&p, &w, 100).unwrap() {
            assert!(f.validate().is_empty());
        }
    }

    #[test]
    fn composite_preserves_validity() {
        let a = Arc::new(Category::walking_arrow());
        let d = Functor::diagonal(&a);
        let s = Functor::swap(&a, &a);
        let sd = s.after(&d).unwrap();
        assert!(sd.validate().is_empty());
        assert_eq!(sd.on_objects, d.on_objects);
    }
}
