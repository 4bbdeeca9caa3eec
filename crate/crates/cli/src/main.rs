//! `hyperdoc` command-line front end.
//!
//! Exit codes:
//!
//! | code | meaning                                                    |
//! |------|------------------------------------------------------------|
//! | 0    | success: valid, isomorphic, laws hold, witness found       |
//! | 1    | a check came out negative: invalid file, not isomorphic, law failure, no witness |
//! | 2    | usage, syntax, unresolved name or ill-typed input          |
//! | 3    | a size cap was exceeded                                    |
//! | 4    | a file could not be read                                   |

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hyperdoc::corpus::Size;
use hyperdoc::diagrams::{
    apply_move, parse_dist, parse_term, print_term, redexes, render, soundness_check, typecheck, Move, MoveArg, MoveKind,
};
use hyperdoc::error::{Error, Limits};
use hyperdoc::expr::{canonical_iso, eval, infer, parse};
use hyperdoc::format::{presheaf_to_doc, render_presheaf, Document, Workspace};
use hyperdoc::laws::{self, Config, Record, Tally};
use hyperdoc::matll::{
    law_sides, mat_compose_minus, mat_compose_plus, mat_exists, mat_exists_q, mat_forall, mat_forall_q, mv_chain,
    parse_matrix_file, render_matrix, render_vector, LawInstance, MVMatrix, Relation, StarAutPoset, LAWS,
};
use hyperdoc::nat::search_iso;

#[derive(Parser)]
#[command(name = "hyperdoc", version, about = "Finite presheaves, distributors and their quantifiers")]
struct Cli {
    /// Size cap for coends and natural-family searches.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Seed for sampled instances and randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load and validate workspace files.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Evaluate an expression and print its value tables.
    Eval {
        #[arg(short, long)]
        workspace: PathBuf,
        expr: String,
        /// Print the value as a presheaf document.
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two expressions are isomorphic.
    CheckIso {
        #[arg(short, long)]
        workspace: PathBuf,
        lhs: String,
        rhs: String,
        /// Use the canonical map of this law instead of a search.
        #[arg(long)]
        canonical: Option<String>,
    },
    /// Run a law suite and print one JSON record per instance.
    Laws {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value = "full")]
        corpus: Size,
        /// Chain size for the Mat(V) suite; all of 2, 3, 4 when absent.
        #[arg(long)]
        chain: Option<usize>,
        /// Random samples per category tuple.
        #[arg(long, default_value_t = 2)]
        samples: usize,
        /// Include per-instance wall times.
        #[arg(long)]
        timings: bool,
    },
    /// Search the corpus for a strict instance of law (e) or (f).
    Counterexample {
        #[arg(long, value_enum)]
        law: OneWayLaw,
        #[arg(long, default_value = "full")]
        corpus: Size,
    },
    /// Diagram terms: parse, type-check, rewrite, render.
    Diagram {
        #[command(subcommand)]
        command: DiagramCommand,
    },
    /// Matrices over a Łukasiewicz chain, read from a matrix file.
    Mat {
        #[arg(short, long)]
        file: PathBuf,
        /// Number of chain elements.
        #[arg(long, default_value_t = 3)]
        chain: usize,
        #[command(subcommand)]
        op: MatOp,
    },
}

#[derive(Subcommand)]
enum MatOp {
    /// `(∃_M R)_b = ⊕_a M(b,a) ⊗ R_a`.
    Exists { m: String, r: String },
    /// `(∀_M S)_a = &_b M(b,a)* ⅋ S_b`.
    Forall { m: String, s: String },
    ExistsQ { m: String, r: String },
    ForallQ { m: String, s: String },
    /// `N ∘ M`.
    ComposePlus { n: String, m: String },
    /// `N ⋄ M`.
    ComposeMinus { n: String, m: String },
    /// Both sides of a law: `a`/`b` take M S, `adjunction` M R S, `c` to `f`
    /// take M N R S. Exits 1 when the sides are not related as the law says.
    Law {
        law: String,
        #[arg(required = true)]
        names: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Core,
    Matll,
    Diagrams,
}

#[derive(Clone, Copy, ValueEnum)]
enum OneWayLaw {
    E,
    F,
}

#[derive(Subcommand)]
enum DiagramCommand {
    /// Parse a term and print it in core syntax.
    Parse { term: String },
    /// Type-check a term against a workspace and print its boundary.
    Check {
        #[arg(short, long)]
        workspace: PathBuf,
        term: String,
        /// Also list the moves that apply without an argument.
        #[arg(long)]
        redexes: bool,
    },
    /// Apply one move and print the rewritten term.
    Move {
        #[arg(short, long)]
        workspace: PathBuf,
        term: String,
        /// annulus_insert, annulus_remove, distributivity, coeval, eval, unit or counit.
        #[arg(long)]
        kind: String,
        /// Dotted child path to the redex; empty for the root.
        #[arg(long, default_value = "")]
        path: String,
        /// Term for coeval, distributor for unit.
        #[arg(long)]
        arg: Option<String>,
        /// Also certify the move against the semantics.
        #[arg(long)]
        check: bool,
    },
    /// Print the term as a Graphviz digraph.
    Render {
        #[arg(short, long)]
        workspace: PathBuf,
        term: String,
    },
}

/// Failure of a command, carrying its exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let code = match e {
            Error::Io(_) => 4,
            Error::CapExceeded { .. } => 3,
            Error::Invalid { .. } | Error::NotNatural(_) | Error::IllDefined(_) => 1,
            _ => 2,
        };
        Fail(code, e.to_string())
    }
}

type Out = Result<u8, Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let lim = cli.cap.map(Limits::with_cap).unwrap_or_default();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = run(cli.command, lim, cli.seed, &mut out);
    let _ = out.flush();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn workspace(dir: &Path) -> Result<Workspace, Fail> {
    if !dir.is_dir() {
        return Err(Fail(4, format!("workspace `{}` is not a directory", dir.display())));
    }
    Ok(Workspace::load_dir(dir)?)
}

fn run(cmd: Command, lim: Limits, seed: u64, out: &mut impl Write) -> Out {
    match cmd {
        Command::Validate { files } => validate(&files, out),
        Command::Eval { workspace: w, expr, json } => {
            let ws = workspace(&w)?;
            let e = parse(&expr)?;
            let (base, _) = infer(&e, &ws)?;
            let p = eval(&e, &ws, lim)?;
            if json {
                let doc = Document::Presheaf(presheaf_to_doc("value", &base.to_string(), &p));
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("documents serialize")).ok();
            } else {
                writeln!(out, "base {base}").ok();
                write!(out, "{}", render_presheaf(&p)).ok();
            }
            Ok(0)
        }
        Command::CheckIso { workspace: w, lhs, rhs, canonical } => {
            let ws = workspace(&w)?;
            let (e1, e2) = (parse(&lhs)?, parse(&rhs)?);
            let rep = match canonical {
                Some(law) => canonical_iso(&law, &e1, &e2, &ws, lim)?,
                None => search_iso(&eval(&e1, &ws, lim)?, &eval(&e2, &ws, lim)?, lim)?,
            };
            let how = if rep.searched { "searched (diagnostic)" } else { "canonical" };
            writeln!(out, "{} [{how}]", if rep.holds { "iso" } else { "not iso" }).ok();
            if !rep.holds {
                writeln!(out, "{}", rep.summary()).ok();
            }
            Ok(if rep.holds { 0 } else { 1 })
        }
        Command::Laws { suite, corpus, chain, samples, timings } => {
            let mut cfg = Config { corpus, seed, samples, lim, timings, ..Config::default() };
            if let Some(n) = chain {
                cfg.chains = vec![n];
            }
            let recs = match suite {
                Suite::Core => laws::core_suite(&cfg),
                Suite::Matll => laws::matll_suite(&cfg),
                Suite::Diagrams => laws::diagrams_suite(&cfg),
            };
            report(&recs, out)
        }
        Command::Counterexample { law, corpus } => {
            let name = match law {
                OneWayLaw::E => "e",
                OneWayLaw::F => "f",
            };
            match laws::counterexample(name, corpus, lim)? {
                Some(cx) => {
                    writeln!(out, "law ({}) strict at {}", cx.law, cx.instance).ok();
                    writeln!(out, "{}", cx.failure).ok();
                    let docs = serde_json::to_string_pretty(&cx.documents).expect("documents serialize");
                    writeln!(out, "{docs}").ok();
                    Ok(0)
                }
                None => {
                    writeln!(out, "no strict instance of law ({name}) in the corpus").ok();
                    Ok(1)
                }
            }
        }
        Command::Diagram { command } => diagram(command, lim, out),
        Command::Mat { file, chain, op } => matrices(&file, chain, op, out),
    }
}

fn matrices(file: &Path, chain: usize, op: MatOp, out: &mut impl Write) -> Out {
    let v = mv_chain(chain)?;
    let f = parse_matrix_file(&std::fs::read_to_string(file).map_err(Error::from)?, &v)?;
    let vector = |m: &str, x: &str, q: fn(&MVMatrix, &[usize], &StarAutPoset) -> hyperdoc::Result<Vec<usize>>, rows: bool| {
        let m = f.matrix(m)?;
        let y = q(m, &f.vector(x)?.entries, &v)?;
        Ok::<_, Error>(render_vector(if rows { &m.tgt } else { &m.src }, &y, &v))
    };
    let text = match op {
        MatOp::Exists { m, r } => vector(&m, &r, mat_exists, true)?,
        MatOp::ExistsQ { m, r } => vector(&m, &r, mat_exists_q, true)?,
        MatOp::Forall { m, s } => vector(&m, &s, mat_forall, false)?,
        MatOp::ForallQ { m, s } => vector(&m, &s, mat_forall_q, false)?,
        MatOp::ComposePlus { n, m } => render_matrix(&mat_compose_plus(f.matrix(&n)?, f.matrix(&m)?, &v)?, &v),
        MatOp::ComposeMinus { n, m } => render_matrix(&mat_compose_minus(f.matrix(&n)?, f.matrix(&m)?, &v)?, &v),
        MatOp::Law { law, names } => {
            let relation = LAWS
                .iter()
                .find(|(l, _)| *l == law)
                .map(|&(_, r)| r)
                .ok_or_else(|| Fail(2, format!("no matrix law named `{law}`")))?;
            let empty = MVMatrix::from_rows(0, 0, Vec::new())?;
            let args: Vec<&str> = names.iter().map(String::as_str).collect();
            let (m, n, r, s) = match (law.as_str(), &args[..]) {
                ("a" | "b", [m, s]) => (*m, None, None, *s),
                ("adjunction", [m, r, s]) => (*m, None, Some(*r), *s),
                ("c" | "d" | "e" | "f", [m, n, r, s]) => (*m, Some(*n), Some(*r), *s),
                _ => return Err(Fail(2, format!("wrong number of operands for law `{law}`"))),
            };
            let n = n.map(|n| f.matrix(n)).transpose()?.unwrap_or(&empty);
            let r = r.map(|r| f.vector(r).map(|x| x.entries.clone())).transpose()?.unwrap_or_default();
            let (lhs, rhs) = law_sides(&law, f.matrix(m)?, n, &r, &f.vector(s)?.entries, &v)?;
            let inst = LawInstance { m: f.matrix(m)?.clone(), n: n.clone(), r, s: f.vector(s)?.entries.clone(), lhs, rhs };
            let show = |x: &[usize]| x.iter().map(|&e| v.elements.label(e)).collect::<Vec<_>>().join(" ");
            writeln!(out, "lhs {}", show(&inst.lhs)).ok();
            writeln!(out, "rhs {}", show(&inst.rhs)).ok();
            let holds = inst.holds(relation);
            let rel = if relation == Relation::Equal { "=" } else { "<=" };
            writeln!(out, "{} lhs {rel} rhs{}", if holds { "holds" } else { "fails" }, if inst.strict() { ", strict" } else { "" }).ok();
            return Ok(if holds { 0 } else { 1 });
        }
    };
    write!(out, "{text}").ok();
    Ok(0)
}

fn validate(files: &[PathBuf], out: &mut impl Write) -> Out {
    for f in files {
        if !f.is_file() {
            return Err(Fail(4, format!("cannot read `{}`", f.display())));
        }
    }
    match Workspace::load_files(files) {
        Ok(ws) => {
            for n in ws.model.categories.keys() {
                writeln!(out, "ok category {n}").ok();
            }
            for n in ws.functors.keys() {
                writeln!(out, "ok functor {n}").ok();
            }
            for n in ws.model.presheaves.keys() {
                writeln!(out, "ok presheaf {n}").ok();
            }
            for n in ws.model.distributors.keys() {
                writeln!(out, "ok distributor {n}").ok();
            }
            Ok(0)
        }
        Err(Error::Io(m)) => Err(Fail(4, m)),
        Err(Error::Invalid { kind, violations }) => {
            writeln!(out, "invalid {kind}").ok();
            for v in violations {
                writeln!(out, "  {v}").ok();
            }
            Ok(1)
        }
        Err(e) => {
            writeln!(out, "invalid: {e}").ok();
            Ok(1)
        }
    }
}

fn report(recs: &[Record], out: &mut impl Write) -> Out {
    for r in recs {
        writeln!(out, "{}", r.to_json()).ok();
    }
    let t = Tally::of(recs);
    eprintln!("{} records: {} pass, {} fail, {} error", recs.len(), t.pass, t.fail, t.error);
    Ok(if t.ok() { 0 } else { 1 })
}

fn parse_path(s: &str) -> Result<Vec<usize>, Fail> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split('.')
        .map(|p| p.parse::<usize>().map_err(|_| Fail(2, format!("bad path component `{p}`"))))
        .collect()
}

fn diagram(cmd: DiagramCommand, lim: Limits, out: &mut impl Write) -> Out {
    match cmd {
        DiagramCommand::Parse { term } => {
            writeln!(out, "{}", print_term(&parse_term(&term)?)).ok();
            Ok(0)
        }
        DiagramCommand::Check { workspace: w, term, redexes: list } => {
            let ws = workspace(&w)?;
            let t = parse_term(&term)?;
            let rep = typecheck(&t, &ws.model);
            if let Some(b) = &rep.boundary {
                writeln!(out, "boundary {} {:?}", b.cat, b.polarity).ok();
            }
            for v in &rep.violations {
                writeln!(out, "violation: {v}").ok();
            }
            if list && rep.violations.is_empty() {
                for m in redexes(&t, &ws.model) {
                    let path: Vec<String> = m.path.iter().map(|i| i.to_string()).collect();
                    writeln!(out, "redex {} at [{}]", m.kind.name(), path.join(".")).ok();
                }
            }
            Ok(if rep.violations.is_empty() { 0 } else { 1 })
        }
        DiagramCommand::Move { workspace: w, term, kind, path, arg, check } => {
            let ws = workspace(&w)?;
            let t = parse_term(&term)?;
            let k = MoveKind::from_name(&kind).ok_or_else(|| Fail(2, format!("unknown move `{kind}`")))?;
            let path = parse_path(&path)?;
            let m = match (k, arg) {
                (MoveKind::Coeval, Some(a)) => Move::with(k, path, MoveArg::Term(parse_term(&a)?)),
                (MoveKind::Unit, Some(a)) => Move::with(k, path, MoveArg::Dist(parse_dist(&a)?)),
                (MoveKind::Coeval | MoveKind::Unit, None) => {
                    return Err(Fail(2, format!("move `{kind}` needs --arg")));
                }
                (_, _) => Move::at(k, path),
            };
            let new = apply_move(&t, &m, &ws.model)?;
            writeln!(out, "{}", print_term(&new)).ok();
            if check {
                let rep = soundness_check(&t, &m, &ws.model, lim)?;
                writeln!(
                    out,
                    "natural {} bijective {} claims_iso {} boundary_preserved {}",
                    rep.natural, rep.bijective, rep.claims_iso, rep.boundary_preserved
                )
                .ok();
                for f in &rep.failures {
                    writeln!(out, "failure: {f}").ok();
                }
                return Ok(if rep.passed() { 0 } else { 1 });
            }
            Ok(0)
        }
        DiagramCommand::Render { workspace: w, term } => {
            let ws = workspace(&w)?;
            let t = parse_term(&term)?;
            write!(out, "{}", render(&t, &ws.model)).ok();
            Ok(0)
        }
    }
}
