//! Natural transformations between presheaves and the reports that record
//! whether a canonical comparison map is invertible.

use serde::Serialize;

use crate::error::{Error, Limits, Result};
use crate::finset::SetMap;
use crate::presheaf::Presheaf;
use crate::quantifiers::nat_families;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTrans {
    pub src: Presheaf,
    pub tgt: Presheaf,
    pub components: Vec<SetMap>,
}

impl NatTrans {
    pub fn new(src: Presheaf, tgt: Presheaf, components: Vec<SetMap>) -> Self {
        NatTrans { src, tgt, components }
    }

    pub fn identity(p: &Presheaf) -> NatTrans {
        let components = p.values.iter().map(|v| SetMap::identity(v.len())).collect();
        NatTrans { src: p.clone(), tgt: p.clone(), components }
    }

    /// Builds the components from an elementwise recipe `(object, element) -> element`.
    pub fn from_fn(src: &Presheaf, tgt: &Presheaf, f: impl Fn(usize, usize) -> usize) -> NatTrans {
        let components = (0..src.base.num_objects())
            .map(|x| SetMap::new((0..src.size(x)).map(|e| f(x, e)).collect(), tgt.size(x)))
            .collect();
        NatTrans { src: src.clone(), tgt: tgt.clone(), components }
    }

    /// Shape problems and failing naturality squares, one entry per failure.
    pub fn naturality_failures(&self) -> Vec<String> {
        let (p, q) = (&self.src, &self.tgt);
        let mut v = Vec::new();
        if !p.same_shape(q) {
            v.push("source and target live over different bases".to_string());
            return v;
        }
        let c = &p.base;
        if self.components.len() != c.num_objects() {
            v.push("component table is not total".to_string());
            return v;
        }
        for x in 0..c.num_objects() {
            let k = &self.components[x];
            if k.domain() != p.size(x) || k.codomain != q.size(x) || !k.is_total() {
                v.push(format!("component at {} has the wrong type", c.object_label(x)));
            }
        }
        if !v.is_empty() {
            return v;
        }
        for f in 0..c.num_morphisms() {
            let (x, y) = p.edge(f);
            for e in 0..p.size(x) {
                let lhs = q.act(f, self.components[x].apply(e));
                let rhs = self.components[y].apply(p.act(f, e));
                if lhs != rhs {
                    v.push(format!(
                        "square for {} fails at element {} of {}",
                        c.morphism(f).label,
                        p.value(x).label(e),
                        c.object_label(x)
                    ));
                }
            }
        }
        v
    }

    pub fn is_natural(&self) -> bool {
        self.naturality_failures().is_empty()
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &NatTrans) -> NatTrans {
        let components = self.components.iter().zip(&first.components).map(|(g, f)| g.after(f)).collect();
        NatTrans { src: first.src.clone(), tgt: self.tgt.clone(), components }
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(SetMap::is_bijective)
    }

    /// Componentwise inverse, if every component is a bijection.
    pub fn inverse(&self) -> Option<NatTrans> {
        let mut components = Vec::with_capacity(self.components.len());
        for k in &self.components {
            if !k.is_bijective() {
                return None;
            }
            let mut table = vec![0; k.codomain];
            for (x, &y) in k.table.iter().enumerate() {
                table[y] = x;
            }
            components.push(SetMap::new(table, k.domain()));
        }
        Some(NatTrans { src: self.tgt.clone(), tgt: self.src.clone(), components })
    }
}

/// Why a component failed to be a bijection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoFailure {
    pub object: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoReport {
    pub holds: bool,
    pub witness: NatTrans,
    pub failure: Option<IsoFailure>,
    /// Set when the witness came from the diagnostic search rather than a
    /// canonical construction.
    pub searched: bool,
}

impl IsoReport {
    /// One-line description of the outcome.
    pub fn summary(&self) -> String {
        match &self.failure {
            None => "iso".to_string(),
            Some(f) => format!("not iso at {}: {}", f.object, f.reason),
        }
    }
}

/// Checks that `canonical : lhs -> rhs` is natural and reports whether it
/// is invertible. A non-natural canonical map is an error, not a failed law.
pub fn check_iso(lhs: &Presheaf, rhs: &Presheaf, canonical: NatTrans) -> Result<IsoReport> {
    if !lhs.same_shape(rhs) {
        return Err(Error::BaseMismatch("iso check between presheaves over different bases".into()));
    }
    if canonical.src.values != lhs.values || canonical.tgt.values != rhs.values {
        return Err(Error::Shape("canonical map does not go between the compared presheaves".into()));
    }
    let failures = canonical.naturality_failures();
    if !failures.is_empty() {
        return Err(Error::NotNatural(failures.join("; ")));
    }
    let failure = first_non_bijective(&canonical);
    Ok(IsoReport { holds: failure.is_none(), witness: canonical, failure, searched: false })
}

fn first_non_bijective(t: &NatTrans) -> Option<IsoFailure> {
    let c = &t.src.base;
    for x in 0..c.num_objects() {
        let k = &t.components[x];
        let object = c.object_label(x).to_string();
        if let Some((e1, e2)) = k.collision() {
            let (s, q) = (t.src.value(x), t.tgt.value(x));
            return Some(IsoFailure {
                object,
                reason: format!("collision: {} and {} both map to {}", s.label(e1), s.label(e2), q.label(k.apply(e1))),
            });
        }
        if let Some(m) = k.missed() {
            return Some(IsoFailure { object, reason: format!("missed: {}", t.tgt.value(x).label(m)) });
        }
    }
    None
}

/// Diagnostic fallback: looks for any natural isomorphism `lhs -> rhs` by
/// enumerating natural transformations. Reports produced this way are
/// flagged with `searched`.
pub fn search_iso(lhs: &Presheaf, rhs: &Presheaf, lim: Limits) -> Result<IsoReport> {
    let sizes_match = (0..lhs.base.num_objects()).all(|x| lhs.size(x) == rhs.size(x));
    let fams = nat_families(lhs, rhs, lim)?;
    let mut first = None;
    if sizes_match {
        for comps in &fams.families {
            let t = NatTrans::new(lhs.clone(), rhs.clone(), comps.clone());
            if t.is_iso() {
                return Ok(IsoReport { holds: true, witness: t, failure: None, searched: true });
            }
            first.get_or_insert(t);
        }
    }
    let witness = first
        .or_else(|| fams.families.first().map(|c| NatTrans::new(lhs.clone(), rhs.clone(), c.clone())))
        .unwrap_or_else(|| NatTrans::new(lhs.clone(), rhs.clone(), Vec::new()));
    Ok(IsoReport {
        holds: false,
        witness,
        failure: Some(match (0..lhs.base.num_objects()).find(|&x| lhs.size(x) != rhs.size(x)) {
            Some(x) => IsoFailure {
                object: lhs.base.object_label(x).into(),
                reason: format!("sizes {} and {} differ", lhs.size(x), rhs.size(x)),
            },
            None => IsoFailure {
                object: "the whole base".into(),
                reason: format!("none of {} natural transformations is invertible", fams.families.len()),
            },
        }),
        searched: true,
    })
}

/// Outcome of comparing two hom-sets through a pair of transposition maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub holds: bool,
    pub left_count: usize,
    pub right_count: usize,
    pub failure: Option<String>,
}

impl BijectionReport {
    /// Checks that `forward` and `backward` are mutually inverse.
    pub fn from_maps(forward: &SetMap, backward: &SetMap) -> BijectionReport {
        let (l, r) = (forward.domain(), backward.domain());
        let failure = if l != r {
            Some(format!("hom-sets have sizes {l} and {r}"))
        } else if let Some(x) = (0..l).find(|&x| backward.apply(forward.apply(x)) != x) {
            Some(format!("round trip moves left element {x}"))
        } else {
            (0..r).find(|&y| forward.apply(backward.apply(y)) != y).map(|y| format!("round trip moves right element {y}"))
        };
        BijectionReport { holds: failure.is_none(), left_count: l, right_count: r, failure }
    }
}
