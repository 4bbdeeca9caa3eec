//! Textual syntax for diagram terms.
//!
//! ```text
//! term ::= "atom" "(" NAME "," cat ")"        contravariant presheaf
//!        | "coatom" "(" NAME "," cat ")"      covariant presheaf
//!        | "tensor" "(" term "," term ")"
//!        | "exists" "(" dist "," term ")"
//!        | "dual" "(" term ")" | "codual" "(" term ")"
//!        | "act" "(" term "," term ")"        red term first, read right to left
//!        | "imp" "(" term "," term ")"        sugar for codual(act(dual(S), R))
//!        | "forall" "(" dist "," term ")"     sugar for codual(exists(dual(M), dual(S)))
//! dist ::= NAME | "id" "(" cat ")" | "dual" "(" dist ")"
//!        | "tensor" "(" dist "," dist ")" | "imp" "(" dist "," dist ")"
//!        | "eval" "(" cat "," cat ")" | "coev" "(" cat "," cat ")"
//! cat  ::= NAME | "1" | "op" "(" cat ")" | "product" "(" cat "," cat ")"
//! ```
//!
//! Sugar is expanded while parsing; the printer emits the core forms only,
//! so `parse(print(t)) == t`.

use super::{CatRef, DiagTerm, DistRef};
use crate::error::Result;
use crate::lexer::{Cursor, Tok};

pub fn parse_term(src: &str) -> Result<DiagTerm> {
    let mut c = Cursor::new(src)?;
    let t = term(&mut c)?;
    c.finish()?;
    Ok(t)
}

pub fn parse_dist(src: &str) -> Result<DistRef> {
    let mut c = Cursor::new(src)?;
    let d = dist(&mut c)?;
    c.finish()?;
    Ok(d)
}

pub fn parse_cat(src: &str) -> Result<CatRef> {
    let mut c = Cursor::new(src)?;
    let k = cat(&mut c)?;
    c.finish()?;
    Ok(k)
}

fn args<T>(c: &mut Cursor, n: usize, mut each: impl FnMut(&mut Cursor, usize) -> Result<T>) -> Result<Vec<T>> {
    c.expect(Tok::LParen)?;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 {
            c.expect(Tok::Comma)?;
        }
        out.push(each(c, i)?);
    }
    c.expect(Tok::RParen)?;
    Ok(out)
}

fn two<T>(mut v: Vec<T>) -> (T, T) {
    let b = v.pop().expect("two arguments");
    (v.pop().expect("two arguments"), b)
}

fn term(c: &mut Cursor) -> Result<DiagTerm> {
    let head = c.peek().clone();
    let name = c.ident()?;
    Ok(match name.as_str() {
        "atom" | "coatom" => {
            c.expect(Tok::LParen)?;
            let n = c.ident()?;
            c.expect(Tok::Comma)?;
            let k = cat(c)?;
            c.expect(Tok::RParen)?;
            if name == "atom" {
                DiagTerm::Atom(n, k)
            } else {
                DiagTerm::AtomCo(n, k)
            }
        }
        "tensor" | "act" | "imp" => {
            let (a, b) = two(args(c, 2, |c, _| term(c))?);
            match name.as_str() {
                "tensor" => DiagTerm::tensor(a, b),
                "act" => DiagTerm::act(a, b),
                _ => DiagTerm::imp(a, b),
            }
        }
        "exists" | "forall" => {
            c.expect(Tok::LParen)?;
            let d = dist(c)?;
            c.expect(Tok::Comma)?;
            let t = term(c)?;
            c.expect(Tok::RParen)?;
            if name == "exists" {
                DiagTerm::exists(d, t)
            } else {
                DiagTerm::forall(d, t)
            }
        }
        "dual" | "codual" => {
            let t = args(c, 1, |c, _| term(c))?.remove(0);
            if name == "dual" {
                DiagTerm::dual(t)
            } else {
                DiagTerm::codual(t)
            }
        }
        _ => {
            return Err(crate::error::Error::Syntax {
                line: head.line,
                column: head.column,
                message: format!("unknown term constructor `{name}`"),
            })
        }
    })
}

fn dist(c: &mut Cursor) -> Result<DistRef> {
    let name = c.ident()?;
    if c.peek().tok != Tok::LParen {
        return Ok(DistRef::Named(name));
    }
    Ok(match name.as_str() {
        "id" => DistRef::Id(args(c, 1, |c, _| cat(c))?.remove(0)),
        "dual" => args(c, 1, |c, _| dist(c))?.remove(0).dual(),
        "tensor" | "imp" => {
            let (a, b) = two(args(c, 2, |c, _| dist(c))?);
            if name == "tensor" {
                DistRef::Tensor(Box::new(a), Box::new(b))
            } else {
                DistRef::Imp(Box::new(a), Box::new(b))
            }
        }
        "eval" | "coev" => {
            let (a, b) = two(args(c, 2, |c, _| cat(c))?);
            if name == "eval" {
                DistRef::Eval(a, b)
            } else {
                DistRef::Coev(a, b)
            }
        }
        _ => return c.error(format!("unknown distributor constructor `{name}`")),
    })
}

pub(crate) fn cat(c: &mut Cursor) -> Result<CatRef> {
    let name = c.ident()?;
    if name == "1" {
        return Ok(CatRef::One);
    }
    if c.peek().tok != Tok::LParen {
        return Ok(CatRef::Named(name));
    }
    Ok(match name.as_str() {
        "op" => args(c, 1, |c, _| cat(c))?.remove(0).op(),
        "product" => {
            let (a, b) = two(args(c, 2, |c, _| cat(c))?);
            a.times(b)
        }
        _ => return c.error(format!("unknown category constructor `{name}`")),
    })
}

pub fn print_term(t: &DiagTerm) -> String {
    match t {
        DiagTerm::Atom(n, c) => format!("atom({n}, {c})"),
        DiagTerm::AtomCo(n, c) => format!("coatom({n}, {c})"),
        DiagTerm::Tensor(a, b) => format!("tensor({}, {})", print_term(a), print_term(b)),
        DiagTerm::Exists(m, x) => format!("exists({}, {})", print_dist(m), print_term(x)),
        DiagTerm::Dual(x) => format!("dual({})", print_term(x)),
        DiagTerm::Codual(x) => format!("codual({})", print_term(x)),
        DiagTerm::Act(a, b) => format!("act({}, {})", print_term(a), print_term(b)),
    }
}

pub fn print_dist(d: &DistRef) -> String {
    match d {
        DistRef::Named(n) => n.clone(),
        DistRef::Id(c) => format!("id({c})"),
        DistRef::Dual(m) => format!("dual({})", print_dist(m)),
        DistRef::Tensor(m, n) => format!("tensor({}, {})", print_dist(m), print_dist(n)),
        DistRef::Imp(m, n) => format!("imp({}, {})", print_dist(m), print_dist(n)),
        DistRef::Eval(a, b) => format!("eval({a}, {b})"),
        DistRef::Coev(a, b) => format!("coev({a}, {b})"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn sugar_expands() {
        let t = parse_term("imp(exists(M, atom(R, A)), forall(N, atom(S, B)))").unwrap();
        let want = DiagTerm::imp(
            DiagTerm::exists(DistRef::named("M"), DiagTerm::atom("R", "A")),
            DiagTerm::forall(DistRef::named("N"), DiagTerm::atom("S", "B")),
        );
        assert_eq!(t, want);
        assert_eq!(parse_term(&print_term(&t)).unwrap(), t);
    }

    #[test]
    fn categories_and_distributors() {
        let t = parse_term("exists(dual(imp(id(op(A)), eval(1, product(A, B)))), coatom(X, 1))").unwrap();
        assert_eq!(parse_term(&print_term(&t)).unwrap(), t);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_term("tensor(atom(R, A),\n  blob(S))") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
    }
}
