//! The expression language over a workspace.
//!
//! Every compound form is a prefixed call, so there is no precedence to
//! resolve. A bare name loads the presheaf declared under it; `load(R)` is
//! the same node spelled out. The grammar, also shipped as `grammar.ebnf`:
//!
//! ```text
//! expr    ::= NAME | "load" "(" NAME ")"
//!           | "exists" "(" dist "," expr ")" | "forall" "(" dist "," expr ")"
//!           | "tensor" "(" expr "," expr ")" | "imp" "(" expr "," expr ")"
//!           | "dual" "(" expr ")" | "graph" "(" dist ")"
//!           | "id_rel" "(" cat ")" | "id_lawvere" "(" cat ")"
//!           | "sigma" "(" functor "," expr ")" | "pi" "(" functor "," expr ")"
//!           | "subst" "(" functor "," expr ")"
//!           | "fiber_and" "(" cat "," expr "," expr ")" | "fiber_top" "(" cat ")"
//!           | "fiber_imp" "(" cat "," expr "," expr ")"
//! dist    ::= NAME | "id" "(" cat ")" | "dual" "(" dist ")"
//!           | "tensor" "(" dist "," dist ")" | "imp" "(" dist "," dist ")"
//!           | "compose" "(" dist "," dist ")"      second after first
//!           | "eval" "(" cat "," cat ")" | "coev" "(" cat "," cat ")"
//!           | "embp" "(" functor ")" | "embm" "(" functor ")"
//! functor ::= NAME | "diag" "(" cat ")" | "bang" "(" cat ")"
//! cat     ::= NAME | "1" | "op" "(" cat ")" | "product" "(" cat "," cat ")"
//! NAME    ::= [A-Za-z0-9_] [A-Za-z0-9_'.-]*
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::category::Category;
use crate::chirality::{exists_q, forall_q};
use crate::diagrams::{CatRef, DistRef};
use crate::distributor::Distributor;
use crate::equality::{graph, id_lawvere, id_rel};
use crate::error::{Error, Result};
use crate::format::Workspace;
use crate::functor::Functor;
use crate::hyperdoctrine::{emb_minus, emb_plus, pi, sigma, subst};
use crate::lexer::{Cursor, Tok};
use crate::monoidal::{fiber_structure, implication, tensor};
use crate::nat::IsoReport;
use crate::presheaf::{Presheaf, Variance};
use crate::quantifiers::{exists_along, forall_along};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctorExpr {
    Name(String),
    /// `A -> A × A`.
    Diag(CatRef),
    /// `A -> 1`.
    Bang(CatRef),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistExpr {
    Name(String),
    Id(CatRef),
    Dual(Box<DistExpr>),
    Tensor(Box<DistExpr>, Box<DistExpr>),
    Imp(Box<DistExpr>, Box<DistExpr>),
    /// `compose(M, N)` is `N ∘ M`.
    Compose(Box<DistExpr>, Box<DistExpr>),
    Eval(CatRef, CatRef),
    Coev(CatRef, CatRef),
    EmbPlus(FunctorExpr),
    EmbMinus(FunctorExpr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Load(String),
    Exists(DistExpr, Box<Expr>),
    Forall(DistExpr, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    Imp(Box<Expr>, Box<Expr>),
    Dual(Box<Expr>),
    Graph(DistExpr),
    IdRel(CatRef),
    IdLawvere(CatRef),
    Sigma(FunctorExpr, Box<Expr>),
    Pi(FunctorExpr, Box<Expr>),
    Subst(FunctorExpr, Box<Expr>),
    FiberAnd(CatRef, Box<Expr>, Box<Expr>),
    FiberTop(CatRef),
    FiberImp(CatRef, Box<Expr>, Box<Expr>),
}

// ---------------------------------------------------------------- parsing

pub fn parse(src: &str) -> Result<Expr> {
    let mut c = Cursor::new(src)?;
    let e = expr(&mut c)?;
    c.finish()?;
    Ok(e)
}

pub fn parse_dist_expr(src: &str) -> Result<DistExpr> {
    let mut c = Cursor::new(src)?;
    let d = dist(&mut c)?;
    c.finish()?;
    Ok(d)
}

fn open(c: &mut Cursor) -> Result<()> {
    c.expect(Tok::LParen).map(|_| ())
}

fn comma(c: &mut Cursor) -> Result<()> {
    c.expect(Tok::Comma).map(|_| ())
}

fn close(c: &mut Cursor) -> Result<()> {
    c.expect(Tok::RParen).map(|_| ())
}

fn boxed(c: &mut Cursor) -> Result<Box<Expr>> {
    expr(c).map(Box::new)
}

fn unknown<T>(head: &crate::lexer::Token, what: &str, name: &str) -> Result<T> {
    Err(Error::Syntax { line: head.line, column: head.column, message: format!("unknown {what} `{name}`") })
}

fn expr(c: &mut Cursor) -> Result<Expr> {
    let head = c.peek().clone();
    let name = c.ident()?;
    if c.peek().tok != Tok::LParen {
        return Ok(Expr::Load(name));
    }
    open(c)?;
    let e = match name.as_str() {
        "load" => Expr::Load(c.ident()?),
        "exists" | "forall" => {
            let m = dist(c)?;
            comma(c)?;
            let e = boxed(c)?;
            if name == "exists" {
                Expr::Exists(m, e)
            } else {
                Expr::Forall(m, e)
            }
        }
        "tensor" | "imp" => {
            let a = boxed(c)?;
            comma(c)?;
            let b = boxed(c)?;
            if name == "tensor" {
                Expr::Tensor(a, b)
            } else {
                Expr::Imp(a, b)
            }
        }
        "dual" => Expr::Dual(boxed(c)?),
        "graph" => Expr::Graph(dist(c)?),
        "id_rel" => Expr::IdRel(cat(c)?),
        "id_lawvere" => Expr::IdLawvere(cat(c)?),
        "sigma" | "pi" | "subst" => {
            let f = functor(c)?;
            comma(c)?;
            let e = boxed(c)?;
            match name.as_str() {
                "sigma" => Expr::Sigma(f, e),
                "pi" => Expr::Pi(f, e),
                _ => Expr::Subst(f, e),
            }
        }
        "fiber_top" => Expr::FiberTop(cat(c)?),
        "fiber_and" | "fiber_imp" => {
            let a = cat(c)?;
            comma(c)?;
            let r = boxed(c)?;
            comma(c)?;
            let s = boxed(c)?;
            if name == "fiber_and" {
                Expr::FiberAnd(a, r, s)
            } else {
                Expr::FiberImp(a, r, s)
            }
        }
        _ => return unknown(&head, "expression constructor", &name),
    };
    close(c)?;
    Ok(e)
}

fn dist(c: &mut Cursor) -> Result<DistExpr> {
    let head = c.peek().clone();
    let name = c.ident()?;
    if c.peek().tok != Tok::LParen {
        return Ok(DistExpr::Name(name));
    }
    open(c)?;
    let d = match name.as_str() {
        "id" => DistExpr::Id(cat(c)?),
        "dual" => DistExpr::Dual(Box::new(dist(c)?)),
        "tensor" | "imp" | "compose" => {
            let a = Box::new(dist(c)?);
            comma(c)?;
            let b = Box::new(dist(c)?);
            match name.as_str() {
                "tensor" => DistExpr::Tensor(a, b),
                "imp" => DistExpr::Imp(a, b),
                _ => DistExpr::Compose(a, b),
            }
        }
        "eval" | "coev" => {
            let a = cat(c)?;
            comma(c)?;
            let b = cat(c)?;
            if name == "eval" {
                DistExpr::Eval(a, b)
            } else {
                DistExpr::Coev(a, b)
            }
        }
        "embp" => DistExpr::EmbPlus(functor(c)?),
        "embm" => DistExpr::EmbMinus(functor(c)?),
        _ => return unknown(&head, "distributor constructor", &name),
    };
    close(c)?;
    Ok(d)
}

fn functor(c: &mut Cursor) -> Result<FunctorExpr> {
    let head = c.peek().clone();
    let name = c.ident()?;
    if c.peek().tok != Tok::LParen {
        return Ok(FunctorExpr::Name(name));
    }
    open(c)?;
    let f = match name.as_str() {
        "diag" => FunctorExpr::Diag(cat(c)?),
        "bang" => FunctorExpr::Bang(cat(c)?),
        _ => return unknown(&head, "functor constructor", &name),
    };
    close(c)?;
    Ok(f)
}

fn cat(c: &mut Cursor) -> Result<CatRef> {
    crate::diagrams::parse::cat(c)
}

// ---------------------------------------------------------------- printing

impl fmt::Display for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorExpr::Name(n) => write!(f, "{n}"),
            FunctorExpr::Diag(a) => write!(f, "diag({a})"),
            FunctorExpr::Bang(a) => write!(f, "bang({a})"),
        }
    }
}

impl fmt::Display for DistExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistExpr::Name(n) => write!(f, "{n}"),
            DistExpr::Id(a) => write!(f, "id({a})"),
            DistExpr::Dual(m) => write!(f, "dual({m})"),
            DistExpr::Tensor(m, n) => write!(f, "tensor({m}, {n})"),
            DistExpr::Imp(m, n) => write!(f, "imp({m}, {n})"),
            DistExpr::Compose(m, n) => write!(f, "compose({m}, {n})"),
            DistExpr::Eval(a, b) => write!(f, "eval({a}, {b})"),
            DistExpr::Coev(a, b) => write!(f, "coev({a}, {b})"),
            DistExpr::EmbPlus(g) => write!(f, "embp({g})"),
            DistExpr::EmbMinus(g) => write!(f, "embm({g})"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Load(n) => write!(f, "{n}"),
            Expr::Exists(m, e) => write!(f, "exists({m}, {e})"),
            Expr::Forall(m, e) => write!(f, "forall({m}, {e})"),
            Expr::Tensor(a, b) => write!(f, "tensor({a}, {b})"),
            Expr::Imp(a, b) => write!(f, "imp({a}, {b})"),
            Expr::Dual(e) => write!(f, "dual({e})"),
            Expr::Graph(m) => write!(f, "graph({m})"),
            Expr::IdRel(a) => write!(f, "id_rel({a})"),
            Expr::IdLawvere(a) => write!(f, "id_lawvere({a})"),
            Expr::Sigma(g, e) => write!(f, "sigma({g}, {e})"),
            Expr::Pi(g, e) => write!(f, "pi({g}, {e})"),
            Expr::Subst(g, e) => write!(f, "subst({g}, {e})"),
            Expr::FiberAnd(a, r, s) => write!(f, "fiber_and({a}, {r}, {s})"),
            Expr::FiberTop(a) => write!(f, "fiber_top({a})"),
            Expr::FiberImp(a, r, s) => write!(f, "fiber_imp({a}, {r}, {s})"),
        }
    }
}

// ---------------------------------------------------------------- evaluation

fn functor_value(f: &FunctorExpr, ws: &Workspace) -> Result<Functor> {
    Ok(match f {
        FunctorExpr::Name(n) => ws.functors.get(n).cloned().ok_or_else(|| Error::Unresolved(n.clone()))?,
        FunctorExpr::Diag(a) => Functor::diagonal(&ws.model.category(a)?),
        FunctorExpr::Bang(a) => Functor::to_terminal(&ws.model.category(a)?),
    })
}

pub fn eval_dist(d: &DistExpr, ws: &Workspace, lim: Limits) -> Result<Distributor> {
    let structural = |r: DistRef| ws.model.distributor(&r);
    Ok(match d {
        DistExpr::Name(n) => structural(DistRef::Named(n.clone()))?,
        DistExpr::Id(a) => Distributor::identity(&ws.model.category(a)?),
        DistExpr::Dual(m) => eval_dist(m, ws, lim)?.dual(),
        DistExpr::Tensor(m, n) => Distributor::tensor(&eval_dist(m, ws, lim)?, &eval_dist(n, ws, lim)?),
        DistExpr::Imp(m, n) => Distributor::tensor(&eval_dist(m, ws, lim)?.dual(), &eval_dist(n, ws, lim)?),
        DistExpr::Compose(m, n) => Distributor::compose(&eval_dist(n, ws, lim)?, &eval_dist(m, ws, lim)?, lim)?.dist,
        DistExpr::Eval(a, b) => structural(DistRef::Eval(a.clone(), b.clone()))?,
        DistExpr::Coev(a, b) => structural(DistRef::Coev(a.clone(), b.clone()))?,
        DistExpr::EmbPlus(f) => emb_plus(&functor_value(f, ws)?),
        DistExpr::EmbMinus(f) => emb_minus(&functor_value(f, ws)?),
    })
}

/// Evaluates after [`infer`] has checked the whole tree, so ill-typed
/// input fails before any large computation starts.
pub fn eval(e: &Expr, ws: &Workspace, lim: Limits) -> Result<Presheaf> {
    infer(e, ws)?;
    eval_unchecked(e, ws, lim)
}

fn eval_unchecked(e: &Expr, ws: &Workspace, lim: Limits) -> Result<Presheaf> {
    let sub = |x: &Expr| eval_unchecked(x, ws, lim);
    let base = |a: &CatRef| -> Result<Arc<Category>> { ws.model.category(a) };
    Ok(match e {
        Expr::Load(n) => ws.model.presheaves.get(n).ok_or_else(|| Error::Unresolved(n.clone()))?.value.clone(),
        Expr::Exists(m, x) => {
            let (m, r) = (eval_dist(m, ws, lim)?, sub(x)?);
            match r.variance {
                Variance::Contra => exists_along(&m, &r, lim)?.presheaf,
                Variance::Co => exists_q(&m, &r, lim)?.presheaf,
            }
        }
        Expr::Forall(m, x) => {
            let (m, s) = (eval_dist(m, ws, lim)?, sub(x)?);
            match s.variance {
                Variance::Contra => forall_along(&m, &s, lim)?.presheaf,
                Variance::Co => forall_q(&m, &s, lim)?.presheaf,
            }
        }
        Expr::Tensor(a, b) => tensor(&sub(a)?, &sub(b)?)?,
        Expr::Imp(a, b) => implication(&sub(a)?, &sub(b)?)?,
        Expr::Dual(x) => sub(x)?.dual(),
        Expr::Graph(m) => graph(&eval_dist(m, ws, lim)?, lim)?.as_presheaf,
        Expr::IdRel(a) => id_rel(&base(a)?, lim)?,
        Expr::IdLawvere(a) => id_lawvere(&base(a)?, lim)?,
        Expr::Sigma(f, x) => sigma(&functor_value(f, ws)?, &sub(x)?, lim)?,
        Expr::Pi(f, x) => pi(&functor_value(f, ws)?, &sub(x)?, lim)?,
        Expr::Subst(f, x) => subst(&functor_value(f, ws)?, &sub(x)?)?,
        Expr::FiberAnd(a, r, s) => fiber_structure(&base(a)?)?.meet(&sub(r)?, &sub(s)?, lim)?.presheaf,
        Expr::FiberTop(a) => fiber_structure(&base(a)?)?.top(lim)?.presheaf,
        Expr::FiberImp(a, r, s) => fiber_structure(&base(a)?)?.imp(&sub(r)?, &sub(s)?, lim)?.presheaf,
    })
}

// ---------------------------------------------------------------- typing

fn functor_type(f: &FunctorExpr, ws: &Workspace) -> Result<(CatRef, CatRef)> {
    Ok(match f {
        FunctorExpr::Name(n) => ws.functor_types.get(n).cloned().ok_or_else(|| Error::Unresolved(n.clone()))?,
        FunctorExpr::Diag(a) => (a.clone(), a.clone().times(a.clone())),
        FunctorExpr::Bang(a) => (a.clone(), CatRef::One),
    })
}

/// Source and target of a distributor expression, without evaluating it.
pub fn dist_type(d: &DistExpr, ws: &Workspace) -> Result<(CatRef, CatRef)> {
    let model = &ws.model;
    Ok(match d {
        DistExpr::Name(n) => model.dist_type(&DistRef::Named(n.clone()))?,
        DistExpr::Id(a) => (a.clone(), a.clone()),
        DistExpr::Dual(m) => {
            let (s, t) = dist_type(m, ws)?;
            (t.op(), s.op())
        }
        DistExpr::Tensor(m, n) => {
            let ((s1, t1), (s2, t2)) = (dist_type(m, ws)?, dist_type(n, ws)?);
            (s1.times(s2), t1.times(t2))
        }
        DistExpr::Imp(m, n) => {
            let ((s1, t1), (s2, t2)) = (dist_type(m, ws)?, dist_type(n, ws)?);
            (t1.op().times(s2), s1.op().times(t2))
        }
        DistExpr::Compose(m, n) => {
            let ((s1, t1), (s2, t2)) = (dist_type(m, ws)?, dist_type(n, ws)?);
            if t1.normalize() != s2.normalize() {
                return Err(Error::BaseMismatch(format!("compose: {t1} and {s2} differ")));
            }
            (s1, t2)
        }
        DistExpr::Eval(a, b) => model.dist_type(&DistRef::Eval(a.clone(), b.clone()))?,
        DistExpr::Coev(a, b) => model.dist_type(&DistRef::Coev(a.clone(), b.clone()))?,
        DistExpr::EmbPlus(f) => functor_type(f, ws)?,
        DistExpr::EmbMinus(f) => {
            let (s, t) = functor_type(f, ws)?;
            (t, s)
        }
    })
}

fn expect_base(what: &str, want: &CatRef, got: &CatRef) -> Result<()> {
    if want.normalize() == got.normalize() {
        Ok(())
    } else {
        Err(Error::BaseMismatch(format!("{what} expects a presheaf on {want}, got one on {got}")))
    }
}

fn expect_contra(what: &str, v: Variance) -> Result<()> {
    if v == Variance::Contra {
        Ok(())
    } else {
        Err(Error::Variance(format!("{what} takes contravariant presheaves")))
    }
}

/// The base category and variance of an expression, checked against the
/// workspace without computing any presheaf.
pub fn infer(e: &Expr, ws: &Workspace) -> Result<(CatRef, Variance)> {
    use Variance::{Co, Contra};
    let t = |x: &Expr| infer(x, ws);
    Ok(match e {
        Expr::Load(n) => {
            let d = ws.model.presheaves.get(n).ok_or_else(|| Error::Unresolved(n.clone()))?;
            (d.base.clone(), d.value.variance)
        }
        Expr::Exists(m, x) => {
            let ((s, tg), (b, v)) = (dist_type(m, ws)?, t(x)?);
            expect_base("exists", &s, &b)?;
            (tg, v)
        }
        Expr::Forall(m, x) => {
            let ((s, tg), (b, v)) = (dist_type(m, ws)?, t(x)?);
            expect_base("forall", &tg, &b)?;
            (s, v)
        }
        Expr::Tensor(a, b) => {
            let ((ba, va), (bb, vb)) = (t(a)?, t(b)?);
            if va != vb {
                return Err(Error::Variance("tensor takes presheaves of one variance".into()));
            }
            (ba.times(bb), va)
        }
        Expr::Imp(a, b) => {
            let ((ba, va), (bb, vb)) = (t(a)?, t(b)?);
            expect_contra("imp", va)?;
            expect_contra("imp", vb)?;
            (ba.op().times(bb), Contra)
        }
        Expr::Dual(x) => {
            let (b, v) = t(x)?;
            (b.op(), if v == Contra { Co } else { Contra })
        }
        Expr::Graph(m) => {
            let (s, tg) = dist_type(m, ws)?;
            (s.op().times(tg), Contra)
        }
        Expr::IdRel(a) => (a.clone().op().times(a.clone()), Contra),
        Expr::IdLawvere(a) => (a.clone().times(a.clone()), Contra),
        Expr::Sigma(f, x) | Expr::Pi(f, x) => {
            let ((s, tg), (b, v)) = (functor_type(f, ws)?, t(x)?);
            expect_base("sigma/pi", &s, &b)?;
            expect_contra("sigma/pi", v)?;
            (tg, v)
        }
        Expr::Subst(f, x) => {
            let ((s, tg), (b, v)) = (functor_type(f, ws)?, t(x)?);
            expect_base("subst", &tg, &b)?;
            (s, v)
        }
        Expr::FiberAnd(a, r, s) | Expr::FiberImp(a, r, s) => {
            for x in [r, s] {
                let (b, v) = t(x)?;
                expect_base("fiber operation", a, &b)?;
                expect_contra("fiber operation", v)?;
            }
            (a.clone(), Contra)
        }
        Expr::FiberTop(a) => (a.clone(), Contra),
    })
}

// ---------------------------------------------------------------- canonical maps

/// Laws whose canonical comparison map `check-iso --canonical` can build.
pub const CANONICAL_LAWS: [&str; 10] = [
    "co_yoneda",
    "compose",
    "exists_tensor",
    "forall_multimap",
    "thm3_push",
    "chirality_a",
    "sigma_emb",
    "subst_forall",
    "subst_exists",
    "pi_emb",
];

fn shape<T>(law: &str, want: &str) -> Result<T> {
    Err(Error::Shape(format!("law `{law}` expects the first expression to be {want}")))
}

/// Checks `e1 ≅ e2` through the canonical map of `law`, whose operands are
/// read off `e1`. The map must run between exactly the values of `e1` and
/// `e2`, in either direction.
pub fn canonical_iso(law: &str, e1: &Expr, e2: &Expr, ws: &Workspace, lim: Limits) -> Result<IsoReport> {
    use crate::chirality::law_a;
    use crate::equality::thm3_push;
    use crate::hyperdoctrine::reconstruction_check;
    use crate::monoidal::{law_c, law_forall_multimap};
    use crate::quantifiers::{co_yoneda, compose_quantifier_iso};
    let (v1, v2) = (eval(e1, ws, lim)?, eval(e2, ws, lim)?);
    let d = |m: &DistExpr| eval_dist(m, ws, lim);
    let p = |x: &Expr| eval_unchecked(x, ws, lim);
    let recon = |f: &FunctorExpr, r: &Presheaf, s: &Presheaf, i: usize| -> Result<IsoReport> {
        let [a, b, c, e] = reconstruction_check(&functor_value(f, ws)?, r, s, lim)?;
        Ok([a, b, c, e][i].clone())
    };
    let rep = match (law, e1) {
        ("co_yoneda", Expr::Exists(DistExpr::Id(_), r)) => co_yoneda(&p(r)?, lim)?,
        ("co_yoneda", _) => return shape(law, "exists(id(A), R)"),
        ("compose", Expr::Exists(n, inner)) => match inner.as_ref() {
            Expr::Exists(m, r) => compose_quantifier_iso(&d(n)?, &d(m)?, &p(r)?, lim)?,
            _ => return shape(law, "exists(N, exists(M, R))"),
        },
        ("compose", _) => return shape(law, "exists(N, exists(M, R))"),
        ("exists_tensor", Expr::Exists(DistExpr::Tensor(m, n), body)) => match body.as_ref() {
            Expr::Tensor(r, s) => law_c(&d(m)?, &d(n)?, &p(r)?, &p(s)?, lim)?,
            _ => return shape(law, "exists(tensor(M, N), tensor(R, S))"),
        },
        ("exists_tensor", _) => return shape(law, "exists(tensor(M, N), tensor(R, S))"),
        ("forall_multimap", Expr::Imp(a, b)) => match (a.as_ref(), b.as_ref()) {
            (Expr::Exists(m, r), Expr::Forall(n, s)) => law_forall_multimap(&d(m)?, &d(n)?, &p(r)?, &p(s)?, lim)?,
            _ => return shape(law, "imp(exists(M, R), forall(N, S))"),
        },
        ("forall_multimap", _) => return shape(law, "imp(exists(M, R), forall(N, S))"),
        ("thm3_push", Expr::Exists(m, r)) => thm3_push(&d(m)?, &p(r)?, lim)?,
        ("thm3_push", _) => return shape(law, "exists(M, R)"),
        ("chirality_a", Expr::Forall(m, s)) => law_a(&d(m)?, &p(s)?, lim)?,
        ("chirality_a", _) => return shape(law, "forall(M, S)"),
        ("sigma_emb", Expr::Sigma(f, r)) => {
            let r = p(r)?;
            let s = Presheaf::terminal(&functor_value(f, ws)?.tgt, Variance::Contra);
            recon(f, &r, &s, 0)?
        }
        ("sigma_emb", _) => return shape(law, "sigma(F, R)"),
        ("subst_forall" | "subst_exists", Expr::Subst(f, s)) => {
            let s = p(s)?;
            let r = Presheaf::terminal(&functor_value(f, ws)?.src, Variance::Contra);
            recon(f, &r, &s, if law == "subst_forall" { 1 } else { 2 })?
        }
        ("subst_forall" | "subst_exists", _) => return shape(law, "subst(F, S)"),
        ("pi_emb", Expr::Pi(f, r)) => {
            let r = p(r)?;
            let s = Presheaf::terminal(&functor_value(f, ws)?.tgt, Variance::Contra);
            recon(f, &r, &s, 3)?
        }
        ("pi_emb", _) => return shape(law, "pi(F, R)"),
        _ => {
            return Err(Error::Format(format!(
                "unknown canonical law `{law}`, expected one of {}",
                CANONICAL_LAWS.join(", ")
            )))
        }
    };
    let (src, tgt) = (&rep.witness.src, &rep.witness.tgt);
    if !((*src == v1 && *tgt == v2) || (*src == v2 && *tgt == v1)) {
        return Err(Error::Shape(format!("the second expression is not the other side of law `{law}`")));
    }
    Ok(rep)
}

// ---------------------------------------------------------------- generation

const NAMES: [&str; 6] = ["R", "S", "T", "x1", "a_b", "P'"];

fn pick(rng: &mut impl Rng) -> String {
    NAMES[rng.gen_range(0..NAMES.len())].to_string()
}

fn random_cat(rng: &mut impl Rng, depth: usize) -> CatRef {
    match if depth == 0 { rng.gen_range(0..2) } else { rng.gen_range(0..4) } {
        0 => CatRef::Named(["A", "B", "C"][rng.gen_range(0..3)].into()),
        1 => CatRef::One,
        // `op` is an involution that normalizes on construction, so the
        // generator wraps a name to keep the printed form canonical
        2 => CatRef::Named("A".into()).op(),
        _ => random_cat(rng, depth - 1).times(random_cat(rng, depth - 1)),
    }
}

fn random_functor(rng: &mut impl Rng) -> FunctorExpr {
    match rng.gen_range(0..3) {
        0 => FunctorExpr::Name(pick(rng)),
        1 => FunctorExpr::Diag(random_cat(rng, 1)),
        _ => FunctorExpr::Bang(random_cat(rng, 1)),
    }
}

fn random_dist(rng: &mut impl Rng, depth: usize) -> DistExpr {
    let leaf = depth == 0;
    match rng.gen_range(0..if leaf { 5 } else { 10 }) {
        0 => DistExpr::Name(pick(rng)),
        1 => DistExpr::Id(random_cat(rng, 1)),
        2 => DistExpr::Eval(random_cat(rng, 1), random_cat(rng, 1)),
        3 => DistExpr::EmbPlus(random_functor(rng)),
        4 => DistExpr::EmbMinus(random_functor(rng)),
        5 => DistExpr::Coev(random_cat(rng, 1), random_cat(rng, 1)),
        6 => DistExpr::Dual(Box::new(random_dist(rng, depth - 1))),
        7 => DistExpr::Tensor(Box::new(random_dist(rng, depth - 1)), Box::new(random_dist(rng, depth - 1))),
        8 => DistExpr::Imp(Box::new(random_dist(rng, depth - 1)), Box::new(random_dist(rng, depth - 1))),
        _ => DistExpr::Compose(Box::new(random_dist(rng, depth - 1)), Box::new(random_dist(rng, depth - 1))),
    }
}

impl Expr {
    /// A random syntax tree of depth at most `depth`. The tree need not be
    /// well typed; it exercises the parser and printer.
    pub fn random(rng: &mut impl Rng, depth: usize) -> Expr {
        if depth == 0 {
            return match rng.gen_range(0..4) {
                0 => Expr::IdRel(random_cat(rng, 1)),
                1 => Expr::IdLawvere(random_cat(rng, 1)),
                2 => Expr::FiberTop(random_cat(rng, 1)),
                _ => Expr::Load(pick(rng)),
            };
        }
        let mut sub = || Box::new(Expr::random(rng, depth - 1));
        let a = sub();
        let b = sub();
        match rng.gen_range(0..12) {
            0 => Expr::Exists(random_dist(rng, 2), a),
            1 => Expr::Forall(random_dist(rng, 2), a),
            2 => Expr::Tensor(a, b),
            3 => Expr::Imp(a, b),
            4 => Expr::Dual(a),
            5 => Expr::Graph(random_dist(rng, 2)),
            6 => Expr::Sigma(random_functor(rng), a),
            7 => Expr::Pi(random_functor(rng), a),
            8 => Expr::Subst(random_functor(rng), a),
            9 => Expr::FiberAnd(random_cat(rng, 1), a, b),
            10 => Expr::FiberImp(random_cat(rng, 1), a, b),
            _ => Expr::Load(pick(rng)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{category_to_doc, distributor_to_doc, functor_to_doc, presheaf_to_doc, Document};
    use rand::SeedableRng;

    fn two_ws() -> Workspace {
        let a = Arc::new(Category::walking_arrow());
        let b = Arc::new(Category::cospan());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let f = Functor::enumerate(&a, &b, 64).unwrap().pop().unwrap();
        let m = Distributor::random(&a, &b, 2, &mut rng);
        let mut ws = Workspace::default();
        ws.add(vec![
            Document::Category(category_to_doc("A", &a)),
            Document::Category(category_to_doc("B", &b)),
            Document::Functor(functor_to_doc("F", "A", "B", &f)),
            Document::Distributor(distributor_to_doc("M", "A", "B", &m)),
            Document::Presheaf(presheaf_to_doc("R", "A", &Presheaf::random(&a, Variance::Contra, 2, &mut rng))),
            Document::Presheaf(presheaf_to_doc("S", "B", &Presheaf::random(&b, Variance::Contra, 2, &mut rng))),
            Document::Presheaf(presheaf_to_doc("X", "A", &Presheaf::random(&a, Variance::Co, 2, &mut rng))),
        ])
        .unwrap();
        ws
    }

    #[test]
    fn inferred_types_match_values() {
        let ws = two_ws();
        let lim = Limits::default();
        for src in [
            "exists(M, R)", "forall(M, S)", "exists(M, X)", "forall(dual(dual(M)), dual(dual(S)))",
            "imp(R, S)", "tensor(R, S)", "dual(tensor(R, S))", "graph(M)", "id_rel(B)", "id_lawvere(A)",
            "sigma(F, R)", "pi(F, R)", "subst(F, S)", "forall(embp(F), S)", "exists(embm(F), S)",
            "fiber_and(A, R, R)", "fiber_top(B)", "fiber_imp(A, R, R)", "exists(compose(M, id(B)), R)",
            "exists(tensor(M, M), tensor(R, R))", "forall(imp(M, M), imp(R, S))", "subst(diag(A), tensor(R, R))",
            "sigma(bang(A), R)",
        ] {
            let e = parse(src).unwrap();
            let (base, v) = infer(&e, &ws).unwrap_or_else(|err| panic!("{src}: {err}"));
            let p = eval(&e, &ws, lim).unwrap_or_else(|err| panic!("{src}: {err}"));
            assert_eq!(*ws.model.category(&base).unwrap(), *p.base, "{src}: {base}");
            assert_eq!(v, p.variance, "{src}");
            assert!(p.validate().is_empty(), "{src}");
        }
        for bad in ["exists(M, S)", "forall(M, R)", "imp(X, R)", "tensor(R, X)", "subst(F, R)", "fiber_and(B, R, R)"] {
            assert!(infer(&parse(bad).unwrap(), &ws).is_err(), "{bad}");
        }
    }

    #[test]
    fn canonical_maps_connect_the_two_sides() {
        let ws = two_ws();
        let lim = Limits::default();
        for (law, a, b) in [
            ("co_yoneda", "exists(id(A), R)", "R"),
            ("compose", "exists(id(B), exists(M, R))", "exists(compose(M, id(B)), R)"),
            ("exists_tensor", "exists(tensor(M, M), tensor(R, R))", "tensor(exists(M, R), exists(M, R))"),
            ("forall_multimap", "imp(exists(M, R), forall(M, S))", "forall(imp(M, M), imp(R, S))"),
            ("thm3_push", "exists(M, R)", "exists(eval(A, B), tensor(R, graph(M)))"),
            ("chirality_a", "forall(M, S)", "dual(exists(dual(M), dual(S)))"),
            ("sigma_emb", "sigma(F, R)", "exists(embp(F), R)"),
            ("subst_forall", "subst(F, S)", "forall(embp(F), S)"),
            ("subst_exists", "subst(F, S)", "exists(embm(F), S)"),
            ("pi_emb", "pi(F, R)", "forall(embm(F), R)"),
        ] {
            let rep = canonical_iso(law, &parse(a).unwrap(), &parse(b).unwrap(), &ws, lim)
                .unwrap_or_else(|e| panic!("{law}: {e}"));
            assert!(rep.holds && !rep.searched, "{law}");
        }
        assert!(matches!(
            canonical_iso("co_yoneda", &parse("R").unwrap(), &parse("R").unwrap(), &ws, lim),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            canonical_iso("compose", &parse("exists(id(B), exists(M, R))").unwrap(), &parse("exists(M, R)").unwrap(), &ws, lim),
            Err(Error::Shape(_))
        ));
    }

    fn arrow_ws() -> Workspace {
        let a = Arc::new(Category::walking_arrow());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let s = Presheaf::random(&a, Variance::Contra, 2, &mut rng);
        let mut ws = Workspace::default();
        ws.add(vec![
            Document::Category(category_to_doc("A", &a)),
            Document::Presheaf(presheaf_to_doc("S", "A", &s)),
        ])
        .unwrap();
        ws
    }

    #[test]
    fn shapes() {
        assert_eq!(parse("exists(M, R)").unwrap(), Expr::Exists(DistExpr::Name("M".into()), Box::new(Expr::Load("R".into()))));
        let e = parse("imp(tensor(R,S), T)").unwrap();
        let load = |n: &str| Box::new(Expr::Load(n.into()));
        assert_eq!(e, Expr::Imp(Box::new(Expr::Tensor(load("R"), load("S"))), load("T")));
        assert_eq!(parse("load(R)").unwrap(), Expr::Load("R".into()));
    }

    #[test]
    fn round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let e = Expr::random(&mut rng, 4);
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{e}");
        }
    }

    #[test]
    fn syntax_errors() {
        match parse("tensor(R,\n  frob(S))") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("exists(M R)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("id_rel(op(A)"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn evaluates_against_a_workspace() {
        let ws = arrow_ws();
        let lim = Limits::default();
        let hom = eval(&parse("id_rel(A)").unwrap(), &ws, lim).unwrap();
        // (x,y) holds hom(y,x); the only non-identity arrow is 0 -> 1
        let sizes: Vec<usize> = (0..4).map(|x| hom.size(x)).collect();
        assert_eq!(sizes, vec![1, 0, 1, 1]);
        let s = eval(&parse("S").unwrap(), &ws, lim).unwrap();
        let back = eval(&parse("exists(id(A), S)").unwrap(), &ws, lim).unwrap();
        assert_eq!((0..2).map(|x| back.size(x)).collect::<Vec<_>>(), (0..2).map(|x| s.size(x)).collect::<Vec<_>>());
        assert!(matches!(eval(&parse("Q").unwrap(), &ws, lim), Err(Error::Unresolved(_))));
        assert!(matches!(eval(&parse("imp(S, dual(S))").unwrap(), &ws, lim), Err(Error::Variance(_) | Error::BaseMismatch(_))));
    }
}
