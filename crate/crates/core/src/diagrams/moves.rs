//! Rewrites of diagram terms at a position.

use serde::Serialize;

use super::{boundary, CatRef, DiagTerm, DistRef, Model, Polarity};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    AnnulusInsert,
    AnnulusRemove,
    /// `∃_M R ⊸ ∀_N S` to `∀_{M⊸N}(R ⊸ S)` and back.
    Distributivity,
    /// `S` to `∀_coev(R ⊸ R ⊗ S)`.
    Coeval,
    /// `∃_eval(R ⊗ (R ⊸ S))` to `S`.
    Eval,
    /// `R` to `∀_M ∃_M R`.
    Unit,
    /// `∃_M ∀_M S` to `S`.
    Counit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Iso,
    Forward,
}

impl MoveKind {
    pub const ALL: [MoveKind; 7] = [
        MoveKind::AnnulusInsert,
        MoveKind::AnnulusRemove,
        MoveKind::Distributivity,
        MoveKind::Coeval,
        MoveKind::Eval,
        MoveKind::Unit,
        MoveKind::Counit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::AnnulusInsert => "annulus_insert",
            MoveKind::AnnulusRemove => "annulus_remove",
            MoveKind::Distributivity => "distributivity",
            MoveKind::Coeval => "coeval",
            MoveKind::Eval => "eval",
            MoveKind::Unit => "unit",
            MoveKind::Counit => "counit",
        }
    }

    pub fn from_name(s: &str) -> Option<MoveKind> {
        MoveKind::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn direction(self) -> Direction {
        match self {
            MoveKind::AnnulusInsert | MoveKind::AnnulusRemove | MoveKind::Distributivity => Direction::Iso,
            _ => Direction::Forward,
        }
    }
}

/// Extra data some moves need: the presheaf `R` introduced by `coeval`,
/// the distributor `M` introduced by `unit`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum MoveArg {
    Term(DiagTerm),
    Dist(DistRef),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Move {
    pub kind: MoveKind,
    pub path: Vec<usize>,
    pub arg: Option<MoveArg>,
}

impl Move {
    pub fn at(kind: MoveKind, path: Vec<usize>) -> Move {
        Move { kind, path, arg: None }
    }

    pub fn with(kind: MoveKind, path: Vec<usize>, arg: MoveArg) -> Move {
        Move { kind, path, arg: Some(arg) }
    }
}

/// Number of annuli, counted by their outer `codual` boundary.
pub fn annuli(t: &DiagTerm) -> usize {
    let own = matches!(t, DiagTerm::Codual(_)) as usize;
    own + t.children().into_iter().map(annuli).sum::<usize>()
}

fn no_redex(m: &Move) -> Error {
    Error::NoRedex(format!("{} at [{}]", m.kind.name(), m.path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")))
}

/// Matches `codual(exists(dual(M), dual(S)))`.
pub(crate) fn as_forall(t: &DiagTerm) -> Option<(&DistRef, &DiagTerm)> {
    if let DiagTerm::Codual(x) = t {
        if let DiagTerm::Exists(DistRef::Dual(m), y) = &**x {
            if let DiagTerm::Dual(s) = &**y {
                return Some((m, s));
            }
        }
    }
    None
}

/// Matches `codual(act(dual(S), R))`.
pub(crate) fn as_imp(t: &DiagTerm) -> Option<(&DiagTerm, &DiagTerm)> {
    if let DiagTerm::Codual(x) = t {
        if let DiagTerm::Act(y, r) = &**x {
            if let DiagTerm::Dual(s) = &**y {
                return Some((r, s));
            }
        }
    }
    None
}

/// Matches `codual(exists(dual(M ⊸ N), act(dual(S), R)))`.
pub(crate) fn as_distributed(t: &DiagTerm) -> Option<(&DistRef, &DistRef, &DiagTerm, &DiagTerm)> {
    if let DiagTerm::Codual(x) = t {
        if let DiagTerm::Exists(DistRef::Dual(mn), y) = &**x {
            if let (DistRef::Imp(m, n), DiagTerm::Act(ds, r)) = (&**mn, &**y) {
                if let DiagTerm::Dual(s) = &**ds {
                    return Some((m, n, r, s));
                }
            }
        }
    }
    None
}

/// Matches `∃_M R ⊸ ∀_N S`.
pub(crate) fn as_distributable(t: &DiagTerm) -> Option<(&DistRef, &DistRef, &DiagTerm, &DiagTerm)> {
    let (em, fa) = as_imp(t)?;
    let (n, s) = as_forall(fa)?;
    match em {
        DiagTerm::Exists(m, r) => Some((m, n, r, s)),
        _ => None,
    }
}

fn cat_of(t: &DiagTerm, model: &Model) -> Result<CatRef> {
    Ok(boundary(t, model)?.cat)
}

/// Rewrites the redex itself.
fn rewrite(t: &DiagTerm, m: &Move, model: &Model) -> Result<DiagTerm> {
    let pol = boundary(t, model)?.polarity;
    let bad = || no_redex(m);
    Ok(match m.kind {
        MoveKind::AnnulusInsert => match pol {
            Polarity::Blue => DiagTerm::codual(DiagTerm::dual(t.clone())),
            Polarity::Red => DiagTerm::dual(DiagTerm::codual(t.clone())),
        },
        MoveKind::AnnulusRemove => match t {
            DiagTerm::Codual(x) => match &**x {
                DiagTerm::Dual(y) => (**y).clone(),
                _ => return Err(bad()),
            },
            DiagTerm::Dual(x) => match &**x {
                DiagTerm::Codual(y) => (**y).clone(),
                _ => return Err(bad()),
            },
            _ => return Err(bad()),
        },
        MoveKind::Distributivity => {
            if let Some((mm, n, r, s)) = as_distributable(t) {
                DiagTerm::codual(DiagTerm::exists(
                    DistRef::Imp(Box::new(mm.clone()), Box::new(n.clone())).dual(),
                    DiagTerm::act(DiagTerm::dual(s.clone()), r.clone()),
                ))
            } else if let Some((mm, n, r, s)) = as_distributed(t) {
                DiagTerm::imp(DiagTerm::exists(mm.clone(), r.clone()), DiagTerm::forall(n.clone(), s.clone()))
            } else {
                return Err(bad());
            }
        }
        MoveKind::Coeval => {
            let r = match &m.arg {
                Some(MoveArg::Term(r)) => r,
                _ => return Err(Error::NoRedex("coeval needs the presheaf it introduces".into())),
            };
            if pol != Polarity::Blue {
                return Err(bad());
            }
            let (a, b) = (cat_of(r, model)?, cat_of(t, model)?);
            DiagTerm::forall(DistRef::Coev(a, b), DiagTerm::imp(r.clone(), DiagTerm::tensor(r.clone(), t.clone())))
        }
        MoveKind::Eval => match t {
            DiagTerm::Exists(DistRef::Eval(_, _), x) => match &**x {
                DiagTerm::Tensor(r, rs) => match as_imp(rs) {
                    Some((r1, s)) if r1 == &**r => s.clone(),
                    _ => return Err(bad()),
                },
                _ => return Err(bad()),
            },
            _ => return Err(bad()),
        },
        MoveKind::Unit => {
            let md = match &m.arg {
                Some(MoveArg::Dist(d)) => d,
                _ => return Err(Error::NoRedex("unit needs the distributor it introduces".into())),
            };
            if pol != Polarity::Blue {
                return Err(bad());
            }
            DiagTerm::forall(md.clone(), DiagTerm::exists(md.clone(), t.clone()))
        }
        MoveKind::Counit => match t {
            DiagTerm::Exists(md, x) => match as_forall(x) {
                Some((n, s)) if n == md => s.clone(),
                _ => return Err(bad()),
            },
            _ => return Err(bad()),
        },
    })
}

fn replace(t: &DiagTerm, path: &[usize], new: DiagTerm) -> Option<DiagTerm> {
    let Some((&i, rest)) = path.split_first() else {
        return Some(new);
    };
    let b = |x: &DiagTerm| replace(x, rest, new.clone()).map(Box::new);
    Some(match (t, i) {
        (DiagTerm::Exists(m, x), 0) => DiagTerm::Exists(m.clone(), b(x)?),
        (DiagTerm::Dual(x), 0) => DiagTerm::Dual(b(x)?),
        (DiagTerm::Codual(x), 0) => DiagTerm::Codual(b(x)?),
        (DiagTerm::Tensor(x, y), 0) => DiagTerm::Tensor(b(x)?, y.clone()),
        (DiagTerm::Tensor(x, y), 1) => DiagTerm::Tensor(x.clone(), b(y)?),
        (DiagTerm::Act(x, y), 0) => DiagTerm::Act(b(x)?, y.clone()),
        (DiagTerm::Act(x, y), 1) => DiagTerm::Act(x.clone(), b(y)?),
        _ => return None,
    })
}

/// Applies a move. The result is checked to be well typed with the same
/// boundary as the input.
pub fn apply_move(t: &DiagTerm, m: &Move, model: &Model) -> Result<DiagTerm> {
    let before = boundary(t, model)?;
    let redex = t.subterm(&m.path).ok_or_else(|| no_redex(m))?;
    let new = rewrite(redex, m, model)?;
    let out = replace(t, &m.path, new).ok_or_else(|| no_redex(m))?;
    let after = boundary(&out, model)?;
    if after != before {
        return Err(Error::Invalid {
            kind: "move".into(),
            violations: vec![format!("{} changed the boundary from {} to {}", m.kind.name(), before.cat, after.cat)],
        });
    }
    Ok(out)
}

/// Every position where a move without arguments applies.
pub fn redexes(t: &DiagTerm, model: &Model) -> Vec<Move> {
    let mut out = Vec::new();
    let mut stack = vec![(t, Vec::new())];
    while let Some((s, path)) = stack.pop() {
        for kind in [MoveKind::AnnulusRemove, MoveKind::Distributivity, MoveKind::Eval, MoveKind::Counit] {
            let m = Move::at(kind, path.clone());
            if rewrite(s, &m, model).is_ok() {
                out.push(m);
            }
        }
        for (i, c) in s.children().into_iter().enumerate() {
            let mut p = path.clone();
            p.push(i);
            stack.push((c, p));
        }
    }
    out.sort_by(|a, b| (&a.path, a.kind).cmp(&(&b.path, b.kind)));
    out
}
