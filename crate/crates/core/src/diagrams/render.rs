//! Graphviz output for diagram terms.
//!
//! Boxes (`dual`, `codual`) become clusters shaded by the polarity of the
//! region they enclose. Atoms are framed nodes, quantifier boxes and
//! actions are plain nodes, and every wire carries the category it runs
//! over. Node names follow a preorder numbering, so output is stable.

use std::fmt::Write;

use super::moves::annuli;
use super::parse::print_dist;
use super::{DiagTerm, Model, Polarity};

struct Ctx<'a> {
    model: &'a Model,
    out: String,
    next: usize,
}

pub fn render(t: &DiagTerm, model: &Model) -> String {
    let mut cx = Ctx { model, out: String::new(), next: 0 };
    let _ = writeln!(cx.out, "digraph diagram {{");
    let _ = writeln!(cx.out, "  // annuli: {}", annuli(t));
    let _ = writeln!(cx.out, "  rankdir=BT;");
    let _ = writeln!(cx.out, "  node [fontname=\"monospace\"];");
    let top = node(&mut cx, t, 1);
    let b = super::typecheck(t, model).boundary;
    let label = b.map(|b| b.cat.to_string()).unwrap_or_else(|| "?".into());
    let _ = writeln!(cx.out, "  out [shape=point];");
    let _ = writeln!(cx.out, "  {top} -> out [label=\"{}\"];", esc(&label));
    cx.out.push_str("}\n");
    cx.out
}

fn esc(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn pad(depth: usize) -> String {
    "  ".repeat(depth)
}

fn fresh(cx: &mut Ctx) -> String {
    cx.next += 1;
    format!("n{}", cx.next)
}

fn wire(cx: &mut Ctx, from: &str, to: &str, sub: &DiagTerm, depth: usize) {
    let cat = super::typecheck(sub, cx.model).boundary.map(|b| b.cat.to_string()).unwrap_or_else(|| "?".into());
    let _ = writeln!(cx.out, "{}{from} -> {to} [label=\"{}\"];", pad(depth), esc(&cat));
}

/// Emits `t` and returns the name of the node carrying its output wire.
fn node(cx: &mut Ctx, t: &DiagTerm, depth: usize) -> String {
    let p = pad(depth);
    match t {
        DiagTerm::Atom(n, _) | DiagTerm::AtomCo(n, _) => {
            let id = fresh(cx);
            let color = if matches!(t, DiagTerm::Atom(..)) { "blue" } else { "red" };
            let _ = writeln!(cx.out, "{p}{id} [shape=box, color={color}, label=\"{}\"];", esc(n));
            id
        }
        DiagTerm::Dual(x) | DiagTerm::Codual(x) => {
            let cluster = fresh(cx);
            let inner = if matches!(t, DiagTerm::Dual(_)) { Polarity::Blue } else { Polarity::Red };
            let (fill, kind) = match inner {
                Polarity::Blue => ("lightblue", "dual"),
                Polarity::Red => ("mistyrose", "codual"),
            };
            let _ = writeln!(cx.out, "{p}subgraph cluster_{cluster} {{");
            let _ = writeln!(cx.out, "{p}  label=\"{kind}\"; style=filled; fillcolor={fill};");
            let id = node(cx, x, depth + 1);
            let _ = writeln!(cx.out, "{p}}}");
            id
        }
        DiagTerm::Tensor(a, b) | DiagTerm::Act(a, b) => {
            let (l, r) = (node(cx, a, depth), node(cx, b, depth));
            let id = fresh(cx);
            let label = if matches!(t, DiagTerm::Tensor(..)) { "⊗" } else { "⊘" };
            let _ = writeln!(cx.out, "{p}{id} [shape=circle, label=\"{label}\"];");
            wire(cx, &l, &id, a, depth);
            wire(cx, &r, &id, b, depth);
            id
        }
        DiagTerm::Exists(m, x) => {
            let inner = node(cx, x, depth);
            let id = fresh(cx);
            let _ = writeln!(cx.out, "{p}{id} [shape=trapezium, label=\"∃ {}\"];", esc(&print_dist(m)));
            wire(cx, &inner, &id, x, depth);
            id
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::tests::small_model;
    use crate::diagrams::{apply_move, DistRef, Move, MoveKind};

    #[test]
    fn atom_is_one_framed_node() {
        let m = small_model();
        let dot = render(&DiagTerm::atom("R", "A"), &m);
        assert_eq!(dot.matches("shape=box").count(), 1);
        assert!(!dot.contains("subgraph"));
        let boxed = render(&DiagTerm::dual(DiagTerm::atom("R", "A")), &m);
        assert_eq!(boxed.matches("subgraph").count(), 1);
    }

    #[test]
    fn distributivity_drops_an_annulus() {
        let m = small_model();
        let lhs = DiagTerm::imp(
            DiagTerm::exists(DistRef::named("M"), DiagTerm::atom("R", "A")),
            DiagTerm::forall(DistRef::named("M"), DiagTerm::atom("S", "B")),
        );
        let rhs = apply_move(&lhs, &Move::at(MoveKind::Distributivity, vec![]), &m).unwrap();
        let count = |s: &str| s.matches("label=\"codual\"").count();
        assert_eq!(count(&render(&lhs, &m)), count(&render(&rhs, &m)) + 1);
        assert_eq!(render(&lhs, &m), render(&lhs, &m));
    }
}
