//! Typed terms for the string-diagram notation of presheaves, the moves
//! between them, and their semantics.
//!
//! A term denotes a presheaf. Blue terms are contravariant presheaves,
//! red terms covariant ones; `dual` and `codual` are the boxes that swap
//! the two while mirroring the boundary. Implication and universal
//! quantification have no constructor of their own:
//!
//! ```text
//! R ⊸ S    = codual(act(dual(S), R))
//! ∀_M S    = codual(exists(dual(M), dual(S)))
//! ```
//!
//! so every red region is opened by exactly one box.

mod interp;
mod moves;
pub(crate) mod parse;
mod render;

pub use interp::{interpret, random_model, soundness_check, sweep, sweep_cases, Interp, Node, SoundnessReport, SweepSummary};
pub use moves::{annuli, apply_move, redexes, Direction, Move, MoveArg, MoveKind};
pub use parse::{parse_cat, parse_dist, parse_term, print_dist, print_term};
pub use render::render;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::category::Category;
use crate::distributor::Distributor;
use crate::equality::eval_dist;
use crate::error::{Error, Result};
use crate::presheaf::{Presheaf, Variance};

/// A category named in a term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CatRef {
    Named(String),
    One,
    Op(Box<CatRef>),
    Product(Box<CatRef>, Box<CatRef>),
}

impl CatRef {
    pub fn named(s: &str) -> CatRef {
        CatRef::Named(s.to_string())
    }

    pub fn op(self) -> CatRef {
        CatRef::Op(Box::new(self))
    }

    pub fn times(self, other: CatRef) -> CatRef {
        CatRef::Product(Box::new(self), Box::new(other))
    }

    /// Pushes `op` to the leaves and cancels double `op`; both are strict
    /// equalities of categories.
    pub fn normalize(&self) -> CatRef {
        fn go(c: &CatRef, flip: bool) -> CatRef {
            match c {
                CatRef::Op(x) => go(x, !flip),
                CatRef::Product(x, y) => go(x, flip).times(go(y, flip)),
                CatRef::One => CatRef::One,
                n @ CatRef::Named(_) => {
                    if flip {
                        n.clone().op()
                    } else {
                        n.clone()
                    }
                }
            }
        }
        go(self, false)
    }
}

impl fmt::Display for CatRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatRef::Named(s) => write!(f, "{s}"),
            CatRef::One => write!(f, "1"),
            CatRef::Op(x) => write!(f, "op({x})"),
            CatRef::Product(x, y) => write!(f, "product({x},{y})"),
        }
    }
}

/// A distributor named in a term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum DistRef {
    Named(String),
    Id(CatRef),
    /// `M*`.
    Dual(Box<DistRef>),
    Tensor(Box<DistRef>, Box<DistRef>),
    /// `M ⊸ N = M* ⊗ N`.
    Imp(Box<DistRef>, Box<DistRef>),
    /// `A × (A^op × B) ⇸ B`.
    Eval(CatRef, CatRef),
    /// `B ⇸ A^op × (A × B)`.
    Coev(CatRef, CatRef),
}

impl DistRef {
    pub fn named(s: &str) -> DistRef {
        DistRef::Named(s.to_string())
    }

    pub fn dual(self) -> DistRef {
        DistRef::Dual(Box::new(self))
    }
}

/// Blue terms live in the contravariant world, red ones in the covariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Blue,
    Red,
}

impl Polarity {
    pub fn variance(self) -> Variance {
        match self {
            Polarity::Blue => Variance::Contra,
            Polarity::Red => Variance::Co,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum DiagTerm {
    /// A contravariant presheaf over the named category.
    Atom(String, CatRef),
    /// A covariant presheaf over the named category.
    AtomCo(String, CatRef),
    Tensor(Box<DiagTerm>, Box<DiagTerm>),
    /// `∃_M t`, on either side.
    Exists(DistRef, Box<DiagTerm>),
    /// Blue to red.
    Dual(Box<DiagTerm>),
    /// Red to blue.
    Codual(Box<DiagTerm>),
    /// `x ⊘ t` for red `x` and blue `t`, read right to left.
    Act(Box<DiagTerm>, Box<DiagTerm>),
}

impl DiagTerm {
    pub fn atom(name: &str, cat: &str) -> DiagTerm {
        DiagTerm::Atom(name.into(), CatRef::named(cat))
    }

    pub fn tensor(a: DiagTerm, b: DiagTerm) -> DiagTerm {
        DiagTerm::Tensor(Box::new(a), Box::new(b))
    }

    pub fn exists(m: DistRef, t: DiagTerm) -> DiagTerm {
        DiagTerm::Exists(m, Box::new(t))
    }

    pub fn dual(t: DiagTerm) -> DiagTerm {
        DiagTerm::Dual(Box::new(t))
    }

    pub fn codual(t: DiagTerm) -> DiagTerm {
        DiagTerm::Codual(Box::new(t))
    }

    pub fn act(x: DiagTerm, t: DiagTerm) -> DiagTerm {
        DiagTerm::Act(Box::new(x), Box::new(t))
    }

    /// `R ⊸ S`.
    pub fn imp(r: DiagTerm, s: DiagTerm) -> DiagTerm {
        DiagTerm::codual(DiagTerm::act(DiagTerm::dual(s), r))
    }

    /// `∀_M S`.
    pub fn forall(m: DistRef, s: DiagTerm) -> DiagTerm {
        DiagTerm::codual(DiagTerm::exists(m.dual(), DiagTerm::dual(s)))
    }

    pub fn children(&self) -> Vec<&DiagTerm> {
        match self {
            DiagTerm::Atom(..) | DiagTerm::AtomCo(..) => vec![],
            DiagTerm::Exists(_, t) | DiagTerm::Dual(t) | DiagTerm::Codual(t) => vec![t],
            DiagTerm::Tensor(a, b) | DiagTerm::Act(a, b) => vec![a, b],
        }
    }

    pub fn subterm(&self, path: &[usize]) -> Option<&DiagTerm> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.children().get(i)?.subterm(rest),
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }
}

impl fmt::Display for DiagTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_term(self))
    }
}

/// The boundary a term refines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Boundary {
    pub cat: CatRef,
    pub polarity: Polarity,
}

/// A named presheaf together with the category it is declared over.
#[derive(Debug, Clone)]
pub struct PresheafDecl {
    pub base: CatRef,
    pub value: Presheaf,
}

#[derive(Debug, Clone)]
pub struct DistDecl {
    pub src: CatRef,
    pub tgt: CatRef,
    pub value: Distributor,
}

/// Interpretation of the names occurring in terms.
#[derive(Debug, Clone, Default)]
pub struct Model {
    pub categories: BTreeMap<String, Arc<Category>>,
    pub presheaves: BTreeMap<String, PresheafDecl>,
    pub distributors: BTreeMap<String, DistDecl>,
}

impl Model {
    pub fn category(&self, c: &CatRef) -> Result<Arc<Category>> {
        Ok(match c {
            CatRef::Named(n) => self.categories.get(n).cloned().ok_or_else(|| Error::Unresolved(n.clone()))?,
            CatRef::One => Arc::new(Category::terminal()),
            CatRef::Op(x) => Arc::new(self.category(x)?.opposite()),
            CatRef::Product(x, y) => Arc::new(self.category(x)?.product(&*self.category(y)?)),
        })
    }

    /// Declared source and target.
    pub fn dist_type(&self, d: &DistRef) -> Result<(CatRef, CatRef)> {
        Ok(match d {
            DistRef::Named(n) => {
                let decl = self.distributors.get(n).ok_or_else(|| Error::Unresolved(n.clone()))?;
                (decl.src.clone(), decl.tgt.clone())
            }
            DistRef::Id(c) => (c.clone(), c.clone()),
            DistRef::Dual(m) => {
                let (s, t) = self.dist_type(m)?;
                (t.op(), s.op())
            }
            DistRef::Tensor(m, n) => {
                let ((s1, t1), (s2, t2)) = (self.dist_type(m)?, self.dist_type(n)?);
                (s1.times(s2), t1.times(t2))
            }
            DistRef::Imp(m, n) => {
                let ((s1, t1), (s2, t2)) = (self.dist_type(m)?, self.dist_type(n)?);
                (t1.op().times(s2), s1.op().times(t2))
            }
            DistRef::Eval(a, b) => (a.clone().times(a.clone().op().times(b.clone())), b.clone()),
            DistRef::Coev(a, b) => (b.clone(), a.clone().op().times(a.clone().times(b.clone()))),
        })
    }

    pub fn distributor(&self, d: &DistRef) -> Result<Distributor> {
        Ok(match d {
            DistRef::Named(n) => self.distributors.get(n).ok_or_else(|| Error::Unresolved(n.clone()))?.value.clone(),
            DistRef::Id(c) => Distributor::identity(&self.category(c)?),
            DistRef::Dual(m) => self.distributor(m)?.dual(),
            DistRef::Tensor(m, n) => Distributor::tensor(&self.distributor(m)?, &self.distributor(n)?),
            DistRef::Imp(m, n) => Distributor::tensor(&self.distributor(m)?.dual(), &self.distributor(n)?),
            DistRef::Eval(a, b) => eval_dist(&self.category(a)?, &self.category(b)?),
            DistRef::Coev(a, b) => coev_dist(&self.category(a)?, &self.category(b)?),
        })
    }
}

/// `coev : B ⇸ A^op × (A × B)`, `((a,(a',b')), b) ↦ hom(a',a) × hom(b',b)`.
pub fn coev_dist(a: &Arc<Category>, b: &Arc<Category>) -> Distributor {
    use crate::distributor::hom_set;
    let (na, nb) = (a.num_objects(), b.num_objects());
    let (ma, mb) = (a.num_morphisms(), b.num_morphisms());
    let tgt = Arc::new(a.opposite().product(&a.product(b)));
    let split = move |t: usize| (t / (na * nb), (t / nb) % na, t % nb);
    Distributor::build(
        b,
        &tgt,
        |t, y| {
            let (x, x1, z) = split(t);
            hom_set(a, x1, x).product(&hom_set(b, z, y))
        },
        |g, y, e| {
            // g = (f, (k, l)) : t0 -> t1, with f : x -> x0 in A, k : x10 -> x1, l : z0 -> z
            let (t0, t1) = (tgt.src(g), tgt.tgt(g));
            let (x, x1, z) = split(t1);
            let z0 = split(t0).2;
            let (f, k, l) = (g / (ma * mb), (g / mb) % ma, g % mb);
            let w = b.hom(z, y).len();
            let (h, p) = (a.hom(x1, x)[e / w], b.hom(z, y)[e % w]);
            a.hom_position(a.comp(f, a.comp(h, k))) * b.hom(z0, y).len() + b.hom_position(b.comp(p, l))
        },
        |q, t, e| {
            let (x, x1, z) = split(t);
            let w = b.hom(z, b.src(q)).len();
            let (h, p) = (a.hom(x1, x)[e / w], b.hom(z, b.src(q))[e % w]);
            a.hom_position(h) * b.hom(z, b.tgt(q)).len() + b.hom_position(b.comp(q, p))
        },
    )
}

/// Result of typechecking: the boundary when the term is well formed, and
/// every structural violation found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeReport {
    pub boundary: Option<Boundary>,
    pub violations: Vec<String>,
}

impl TypeReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && self.boundary.is_some()
    }
}

pub fn typecheck(t: &DiagTerm, model: &Model) -> TypeReport {
    let mut violations = Vec::new();
    let boundary = check(t, model, &mut violations, &mut Vec::new());
    if boundary.is_some() {
        red_regions(t, &mut violations, &mut Vec::new());
    }
    TypeReport { boundary: boundary.map(|b| Boundary { cat: b.cat.normalize(), polarity: b.polarity }), violations }
}

/// Typechecks and returns the boundary, or an error listing violations.
pub fn boundary(t: &DiagTerm, model: &Model) -> Result<Boundary> {
    let r = typecheck(t, model);
    match (r.boundary, r.violations.is_empty()) {
        (Some(b), true) => Ok(b),
        (_, _) => Err(Error::Invalid { kind: "diagram".into(), violations: r.violations }),
    }
}

fn at(path: &[usize]) -> String {
    if path.is_empty() {
        "root".into()
    } else {
        path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
    }
}

fn check(t: &DiagTerm, model: &Model, out: &mut Vec<String>, path: &mut Vec<usize>) -> Option<Boundary> {
    let here = at(path);
    let mut child = |i: usize, c: &DiagTerm, out: &mut Vec<String>| {
        path.push(i);
        let b = check(c, model, out, path);
        path.pop();
        b
    };
    match t {
        DiagTerm::Atom(n, c) | DiagTerm::AtomCo(n, c) => {
            let want = if matches!(t, DiagTerm::Atom(..)) { Polarity::Blue } else { Polarity::Red };
            match model.presheaves.get(n) {
                None => {
                    out.push(format!("{here}: unknown presheaf `{n}`"));
                    None
                }
                Some(decl) => {
                    if decl.base.normalize() != c.normalize() {
                        out.push(format!("{here}: `{n}` lives over {}, not {c}", decl.base));
                    }
                    if decl.value.variance != want.variance() {
                        out.push(format!("{here}: `{n}` is {}, expected {}", decl.value.variance, want.variance()));
                    }
                    Some(Boundary { cat: c.clone(), polarity: want })
                }
            }
        }
        DiagTerm::Tensor(a, b) => {
            let (ba, bb) = (child(0, a, out)?, child(1, b, out)?);
            if ba.polarity != bb.polarity {
                out.push(format!("{here}: tensor of a blue and a red term"));
            }
            Some(Boundary { cat: ba.cat.times(bb.cat), polarity: ba.polarity })
        }
        DiagTerm::Exists(m, x) => {
            let bx = child(0, x, out)?;
            match model.dist_type(m) {
                Err(e) => {
                    out.push(format!("{here}: {e}"));
                    None
                }
                Ok((src, tgt)) => {
                    if src.normalize() != bx.cat.normalize() {
                        out.push(format!("{here}: distributor source {} does not match boundary {}", src.normalize(), bx.cat.normalize()));
                    }
                    Some(Boundary { cat: tgt, polarity: bx.polarity })
                }
            }
        }
        DiagTerm::Dual(x) | DiagTerm::Codual(x) => {
            let bx = child(0, x, out)?;
            let (want, to) = match t {
                DiagTerm::Dual(_) => (Polarity::Blue, Polarity::Red),
                _ => (Polarity::Red, Polarity::Blue),
            };
            if bx.polarity != want {
                out.push(format!("{here}: box expects a {want:?} term inside"));
            }
            Some(Boundary { cat: bx.cat.op(), polarity: to })
        }
        DiagTerm::Act(x, y) => {
            let (bx, by) = (child(0, x, out)?, child(1, y, out)?);
            if bx.polarity != Polarity::Red || by.polarity != Polarity::Blue {
                out.push(format!("{here}: act glues a blue term into a red one"));
            }
            Some(Boundary { cat: by.cat.times(bx.cat), polarity: Polarity::Red })
        }
    }
}

/// Counts, for every maximal red region, the boxes and covariant atoms
/// that open it; there must be exactly one.
fn red_regions(t: &DiagTerm, out: &mut Vec<String>, path: &mut Vec<usize>) {
    fn sources(t: &DiagTerm, path: &mut Vec<usize>, found: &mut Vec<String>, blue: &mut Vec<(Vec<usize>, DiagTerm)>) {
        match t {
            DiagTerm::Dual(inner) => {
                found.push(at(path));
                path.push(0);
                blue.push((path.clone(), (**inner).clone()));
                path.pop();
            }
            DiagTerm::AtomCo(..) => found.push(at(path)),
            DiagTerm::Tensor(a, b) => {
                for (i, c) in [a, b].into_iter().enumerate() {
                    path.push(i);
                    sources(c, path, found, blue);
                    path.pop();
                }
            }
            DiagTerm::Exists(_, x) => {
                path.push(0);
                sources(x, path, found, blue);
                path.pop();
            }
            DiagTerm::Act(x, y) => {
                path.push(0);
                sources(x, path, found, blue);
                path.pop();
                path.push(1);
                blue.push((path.clone(), (**y).clone()));
                path.pop();
            }
            DiagTerm::Atom(..) | DiagTerm::Codual(_) => {}
        }
    }
    fn walk_blue(t: &DiagTerm, out: &mut Vec<String>, path: &mut Vec<usize>) {
        match t {
            DiagTerm::Codual(inner) => {
                path.push(0);
                red(inner, out, path);
                path.pop();
            }
            _ => {
                for (i, c) in t.children().into_iter().enumerate() {
                    path.push(i);
                    walk_blue(c, out, path);
                    path.pop();
                }
            }
        }
    }
    fn red(t: &DiagTerm, out: &mut Vec<String>, path: &[usize]) {
        let (mut found, mut blue) = (Vec::new(), Vec::new());
        sources(t, &mut path.to_vec(), &mut found, &mut blue);
        if found.len() != 1 {
            out.push(format!("{}: red region opened by {} boxes ({})", at(path), found.len(), found.join(", ")));
        }
        for (p, b) in blue {
            walk_blue(&b, out, &mut p.clone());
        }
    }
    // the root is either blue or itself a red region
    if is_red_root(t) {
        red(t, out, path);
    } else {
        walk_blue(t, out, path);
    }
}

fn is_red_root(t: &DiagTerm) -> bool {
    match t {
        DiagTerm::AtomCo(..) | DiagTerm::Dual(_) | DiagTerm::Act(..) => true,
        DiagTerm::Atom(..) | DiagTerm::Codual(_) => false,
        DiagTerm::Tensor(a, _) => is_red_root(a),
        DiagTerm::Exists(_, x) => is_red_root(x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    pub(crate) fn small_model() -> Model {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let a = Arc::new(Category::walking_arrow());
        let b = Arc::new(Category::discrete(2));
        let mut m = Model::default();
        m.categories.insert("A".into(), a.clone());
        m.categories.insert("B".into(), b.clone());
        let r = Presheaf::random(&a, Variance::Contra, 2, &mut rng);
        let s = Presheaf::random(&b, Variance::Contra, 2, &mut rng);
        m.presheaves.insert("R".into(), PresheafDecl { base: CatRef::named("A"), value: r });
        m.presheaves.insert("S".into(), PresheafDecl { base: CatRef::named("B"), value: s });
        let d = Distributor::random(&a, &b, 2, &mut rng);
        m.distributors.insert("M".into(), DistDecl { src: CatRef::named("A"), tgt: CatRef::named("B"), value: d });
        m
    }

    #[test]
    fn boundaries() {
        let m = small_model();
        let r = DiagTerm::atom("R", "A");
        assert_eq!(boundary(&r, &m).unwrap().cat, CatRef::named("A"));
        let dd = DiagTerm::codual(DiagTerm::dual(r.clone()));
        assert_eq!(boundary(&dd, &m).unwrap(), boundary(&r, &m).unwrap());
        let imp = DiagTerm::imp(r.clone(), DiagTerm::atom("S", "B"));
        assert_eq!(boundary(&imp, &m).unwrap().cat, CatRef::named("A").op().times(CatRef::named("B")));
        let all = DiagTerm::forall(DistRef::named("M"), DiagTerm::atom("S", "B"));
        assert_eq!(boundary(&all, &m).unwrap().cat, CatRef::named("A"));
    }

    #[test]
    fn two_boxes_in_one_red_region() {
        let m = small_model();
        let r = DiagTerm::atom("R", "A");
        let t = DiagTerm::codual(DiagTerm::tensor(DiagTerm::dual(r.clone()), DiagTerm::dual(r)));
        let rep = typecheck(&t, &m);
        assert_eq!(rep.violations.len(), 1, "{:?}", rep.violations);
        assert!(rep.violations[0].contains("2 boxes"));
    }

    #[test]
    fn structural_distributors_are_valid() {
        let a = Arc::new(Category::walking_arrow());
        let b = Arc::new(Category::cospan());
        assert!(coev_dist(&a, &b).validate().is_empty());
        assert!(coev_dist(&b, &a).validate().is_empty());
    }
}
