//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! fails. Law verdicts come from the shipped binary's JSON records; the
//! remaining checks call the library directly.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use hyperdoc::corpus::{self, Size, MAX_VALUE};
use hyperdoc::diagrams::sweep;
use hyperdoc::equality::{compare_identities, id_lawvere, id_rel};
use hyperdoc::expr::{parse, Expr};
use hyperdoc::format::{parse_documents, Workspace};
use hyperdoc::hyperdoctrine::{pi, sigma, subst};
use hyperdoc::matll::{law_box, mv_chain, Relation};
use hyperdoc::monoidal::{law_e, law_f};
use hyperdoc::{Category, Functor, Limits, Presheaf, Variance};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Verdict = Result<String, String>;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperdoc"))
}

fn example() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../workspaces/walking_arrow")
}

struct Suite {
    code: Option<i32>,
    by_law: BTreeMap<String, (usize, usize)>,
}

fn laws(args: &[&str]) -> Suite {
    let out = bin().arg("laws").args(args).output().expect("run laws");
    let mut by_law: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for line in String::from_utf8_lossy(&out.stdout).lines() {
        let v: Value = serde_json::from_str(line).expect("record is JSON");
        let e = by_law.entry(v["law"].as_str().unwrap_or_default().to_string()).or_default();
        e.0 += 1;
        e.1 += (v["status"] == "pass") as usize;
    }
    Suite { code: out.status.code(), by_law }
}

/// Every named law has records and all of them pass.
fn all_pass(s: &Suite, names: &[&str]) -> Verdict {
    let mut parts = Vec::new();
    for n in names {
        match s.by_law.get(*n) {
            None => return Err(format!("no records for {n}")),
            Some(&(total, ok)) if ok < total => return Err(format!("{n}: {ok}/{total} pass")),
            Some(&(total, _)) => parts.push(format!("{n} {total}/{total}")),
        }
    }
    Ok(parts.join(", "))
}

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond { Ok(()) } else { Err(what.into()) }
}

fn isomorphic(c: &Arc<Category>, d: &Arc<Category>) -> bool {
    if c.num_objects() != d.num_objects() || c.num_morphisms() != d.num_morphisms() {
        return false;
    }
    let (Ok(fs), Ok(gs)) = (Functor::enumerate(c, d, 1 << 16), Functor::enumerate(d, c, 1 << 16)) else {
        return false;
    };
    let (idc, idd) = (Functor::identity(c), Functor::identity(d));
    fs.iter().any(|f| {
        gs.iter().any(|g| {
            let (gf, fg) = (f.after(g).unwrap(), g.after(f).unwrap());
            gf.on_morphisms == idd.on_morphisms && fg.on_morphisms == idc.on_morphisms
        })
    })
}

/// Hand count of categories with 1 to 3 objects and at most two
/// non-identity arrows: 3 discrete; 8 with one arrow (2 endomorphism
/// kinds times 3 sizes, walking arrow in 2 sizes); 43 with two (7 monoids
/// of order 3 times 3 sizes, 6 with two endomorphisms on distinct objects,
/// 10 with an endomorphism beside an arrow, parallel pair and iso pair in
/// 2 sizes each, span, cospan).
const SMALL_CATEGORIES: usize = 3 + 8 + 43;

fn criterion_1(start: Instant) -> Verdict {
    let cats = corpus::categories(Size::Full);
    check(cats.len() == SMALL_CATEGORIES, format!("{} categories, expected {SMALL_CATEGORIES}", cats.len()))?;
    for e in &cats {
        let c = &e.category;
        check(c.validate().is_empty(), format!("{} is not a category", e.name))?;
        check((1..=3).contains(&c.num_objects()) && c.non_identity_count() <= 2, format!("{} is too big", e.name))?;
    }
    for (i, x) in cats.iter().enumerate() {
        for y in &cats[i + 1..] {
            check(!isomorphic(&x.category, &y.category), format!("{} and {} are isomorphic", x.name, y.name))?;
        }
    }
    for n in ["terminal", "discrete2", "walking_arrow", "cospan", "parallel_pair"] {
        check(cats.iter().any(|e| e.name == n), format!("{n} missing"))?;
    }
    check(MAX_VALUE == 2, "value bound")?;
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(300), format!("took {elapsed:?}"))?;
    Ok(format!("{} pairwise non-isomorphic categories, values <= {MAX_VALUE}, {:.1}s", cats.len(), elapsed.as_secs_f64()))
}

fn criterion_4(core: &Suite) -> Verdict {
    let natural = all_pass(core, &["e_forall_tensor", "f_exists_q_tensor"])?;
    let mut notes = vec![natural];
    for law in ["e", "f"] {
        let start = Instant::now();
        let out = bin().args(["counterexample", "--law", law]).output().map_err(|e| e.to_string())?;
        let took = start.elapsed();
        check(out.status.success(), format!("counterexample {law} exited {:?}", out.status.code()))?;
        check(took < Duration::from_secs(10), format!("counterexample {law} took {took:?}"))?;
        let text = String::from_utf8_lossy(&out.stdout).to_string();
        check(text.lines().next().unwrap_or("").ends_with("C=D=1"), format!("unexpected header: {text}"))?;
        // replay the witness from its documents
        let json = &text[text.find('[').ok_or("no documents")?..];
        let mut ws = Workspace::default();
        ws.add(parse_documents(json).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let d = |n: &str| ws.model.distributors[n].value.clone();
        let p = |n: &str| ws.model.presheaves[n].value.clone();
        let f = if law == "e" { law_e } else { law_f };
        let rep = f(&d("M"), &d("N"), &p("R"), &p("S"), Limits::default()).map_err(|e| e.to_string())?;
        check(!rep.holds, format!("replayed witness for {law} is bijective"))?;
        notes.push(format!("{law} witness in {}ms", took.as_millis()));
    }
    Ok(notes.join(", "))
}

fn criterion_6(core: &Suite) -> Verdict {
    let summary = all_pass(core, &["id_rel_hom", "id_lawvere_vs_rel"])?;
    let lim = Limits::default();
    let cospan = Arc::new(Category::cospan());
    let n = cospan.num_objects();
    let rel = id_rel(&cospan, lim).map_err(|e| e.to_string())?;
    let law = id_lawvere(&cospan, lim).map_err(|e| e.to_string())?;
    // id_rel at (x, y) holds hom(y, x); Lawvere's lives on A × A
    check(rel.size(n) == 0 && cospan.hom(0, 1).is_empty(), "hom(0,1) should be empty")?;
    check(law.size(1) > 0, "Lawvere (0,1) should be inhabited")?;
    check(!compare_identities(&cospan, lim).map_err(|e| e.to_string())?.agree(), "identities agree on the cospan")?;
    for k in 1..=3 {
        let d = Arc::new(Category::discrete(k));
        check(compare_identities(&d, lim).map_err(|e| e.to_string())?.agree(), format!("disagree on discrete{k}"))?;
    }
    Ok(format!("{summary}, cospan (0,1): hom 0, Lawvere {}", law.size(1)))
}

/// Boolean presheaves on discrete categories against set comprehensions.
fn boolean_oracle() -> Result<usize, String> {
    let lim = Limits::default();
    let mut n = 0;
    for i in 1..=3 {
        for j in 1..=3 {
            let (a, b) = (Arc::new(Category::discrete(i)), Arc::new(Category::discrete(j)));
            for f in Functor::enumerate(&a, &b, 4096).map_err(|e| e.to_string())? {
                for r in Presheaf::enumerate(&a, Variance::Contra, 1, 4096).map_err(|e| e.to_string())? {
                    let s = sigma(&f, &r, lim).map_err(|e| e.to_string())?;
                    let p = pi(&f, &r, lim).map_err(|e| e.to_string())?;
                    for y in 0..j {
                        let pre: Vec<usize> = (0..i).filter(|&x| f.obj(x) == y).collect();
                        check((s.size(y) > 0) == pre.iter().any(|&x| r.size(x) > 0), "sigma")?;
                        check(p.size(y) == pre.iter().all(|&x| r.size(x) > 0) as usize, "pi")?;
                    }
                    n += 1;
                }
                for s in Presheaf::enumerate(&b, Variance::Contra, 1, 4096).map_err(|e| e.to_string())? {
                    let q = subst(&f, &s).map_err(|e| e.to_string())?;
                    check((0..i).all(|x| q.size(x) == s.size(f.obj(x))), "subst")?;
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

fn criterion_8(core: &Suite) -> Verdict {
    let summary = all_pass(
        core,
        &["reconstruct_sigma", "reconstruct_pi", "reconstruct_subst_exists", "reconstruct_subst_forall"],
    )?;
    let cats = corpus::categories(Size::Full);
    let mut functors = 0;
    for a in &cats {
        for b in &cats {
            functors += Functor::enumerate(&a.category, &b.category, 4096).map_err(|e| e.to_string())?.len();
        }
    }
    // two sampled (R, S) per functor
    let covered = core.by_law.get("reconstruct_sigma").map_or(0, |c| c.0);
    check(covered == 2 * functors, format!("{covered} reconstruction records for {functors} functors"))?;
    let n = boolean_oracle()?;
    Ok(format!("{summary} over all {functors} functors, {n} Boolean instances match"))
}

fn criterion_10(matll: &Suite) -> Verdict {
    check(matll.code == Some(0), format!("matll suite exited {:?}", matll.code))?;
    let mut notes = Vec::new();
    for chain in [2, 3, 4] {
        let v = mv_chain(chain).map_err(|e| e.to_string())?;
        for s in law_box(&v, 10_000, 0).map_err(|e| e.to_string())? {
            check(s.failures == 0, format!("chain {chain} law {} fails", s.law))?;
            check(s.instances >= 10_000, format!("chain {chain} law {}: {} instances", s.law, s.instances))?;
            if s.relation == Relation::Below {
                let w = s.strict_witness.as_ref().ok_or(format!("chain {chain} law {}: no strict witness", s.law))?;
                check(w.strict(), "witness is not strict")?;
            }
        }
        notes.push(format!("chain {chain}"));
    }
    Ok(format!("{}: a-d equal, e/f below with strict witnesses", notes.join(", ")))
}

fn criterion_11() -> Verdict {
    let cats: Vec<Arc<Category>> = corpus::named().into_iter().map(|e| e.category).collect();
    let s = sweep(&cats, 1, 0, Limits::default());
    check(s.triples >= 200, format!("{} triples", s.triples))?;
    check(s.passed == s.triples, format!("{}/{} sound: {:?}", s.passed, s.triples, s.failures.first()))?;
    check(s.round_trips > 0 && s.round_trip_failures == 0, format!("{} round trip failures", s.round_trip_failures))?;
    check(s.degenerate_checked > 0 && s.degenerate_iso == s.degenerate_checked, "degenerate reductions")?;
    check(s.false_claims == 0, format!("{} false claims", s.false_claims))?;
    Ok(format!(
        "{} sound triples, {} round trips, {}/{} degenerate reductions",
        s.passed, s.round_trips, s.degenerate_iso, s.degenerate_checked
    ))
}

fn goldens() -> Result<usize, String> {
    let dir = example();
    let cases = std::fs::read_to_string(dir.join("golden/cases.txt")).map_err(|e| e.to_string())?;
    let mut n = 0;
    for line in cases.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        let (name, src) = line.split_once('\t').ok_or("bad case line")?;
        let want = std::fs::read_to_string(dir.join(format!("golden/{name}.txt"))).map_err(|e| e.to_string())?;
        for _ in 0..2 {
            let out = bin().args(["eval", "-w"]).arg(&dir).arg(src).output().map_err(|e| e.to_string())?;
            check(out.status.success(), format!("eval {name} exited {:?}", out.status.code()))?;
            check(String::from_utf8_lossy(&out.stdout) == want, format!("golden {name} differs"))?;
        }
        n += 1;
    }
    Ok(n)
}

fn criterion_12(core: &Suite, matll: &Suite) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for k in 0..1000 {
        let e = Expr::random(&mut rng, 1 + k % 4);
        let printed = e.to_string();
        check(parse(&printed).ok().as_ref() == Some(&e), format!("round trip fails on {printed}"))?;
    }
    check(core.code == Some(0), format!("laws --suite core exited {:?}", core.code))?;
    check(matll.code == Some(0), format!("laws --suite matll exited {:?}", matll.code))?;
    let n = goldens()?;
    Ok(format!("1000 ASTs round-trip, both suites exit 0, {n} goldens stable"))
}

fn main() {
    let start = Instant::now();
    let core = laws(&["--suite", "core", "--corpus", "full"]);
    let matll = laws(&["--suite", "matll"]);
    let mut results: Vec<(usize, &str, Verdict)> = vec![
        (2, "adjunction", all_pass(&core, &["adjunction"])),
        (
            3,
            "laws a-d, exists/tensor, forall/multimap",
            all_pass(&core, &["chirality_a", "chirality_b", "c_exists_tensor", "d_forall_q_tensor", "d_action", "forall_multimap"]),
        ),
        (4, "laws e/f natural, counterexamples", criterion_4(&core)),
        (5, "Yoneda and co-Yoneda", all_pass(&core, &["yoneda", "co_yoneda"])),
        (6, "identity predicates", criterion_6(&core)),
        (7, "evaluation push and pull", all_pass(&core, &["thm3_push", "thm3_pull"])),
        (8, "reconstruction", criterion_8(&core)),
        (9, "fiber ccc", all_pass(&core, &["fiber_meet", "fiber_top", "fiber_imp"])),
        (10, "Mat(V) chains", criterion_10(&matll)),
        (11, "diagram sweep", criterion_11()),
        (12, "parser, CLI suites, goldens", criterion_12(&core, &matll)),
    ];
    results.insert(0, (1, "corpus and budget", criterion_1(start)));
    let mut failed = 0;
    for (k, name, verdict) in &results {
        match verdict {
            Ok(note) => println!("PASS {k:>2} {name}: {note}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {k:>2} {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
