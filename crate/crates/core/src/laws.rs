//! Law suites over the corpus, reported one record per instance.
//!
//! A record is a JSON object with the fields
//!
//! | field     | type            | meaning                                        |
//! |-----------|-----------------|------------------------------------------------|
//! | `suite`   | string          | `core`, `matll` or `diagrams`                  |
//! | `law`     | string          | law name                                       |
//! | `instance`| string          | categories and sample index, unique per law    |
//! | `status`  | string          | `pass`, `fail` or `error`                      |
//! | `witness` | string or null  | the failing object or map, when there is one   |
//! | `note`    | string or null  | extra facts, e.g. whether a one-way map is bijective |
//! | `micros`  | integer, absent | wall time, only when timings are requested     |
//!
//! Records are sorted by `(law, instance)` before they are emitted, so the
//! report does not depend on scheduling.

use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::category::Category;
use crate::chirality::{exists_q_conjugation, law_a, law_b};
use crate::corpus::{self, Entry, Size};
use crate::diagrams::sweep;
use crate::distributor::Distributor;
use crate::equality::{compare_identities, id_lawvere_sigma_check, id_rel_check, thm3_pull, thm3_push, yoneda_check};
use crate::error::{Error, Limits, Result};
use crate::format::{category_to_doc, distributor_to_doc, presheaf_to_doc, Document};
use crate::functor::Functor;
use crate::hyperdoctrine::{comonoid, emb_functoriality, reconstruction_check};
use crate::matll::{law_box, mv_chain, Relation};
use crate::monoidal::{
    fiber_structure, law_c, law_d, law_d_action, law_e, law_f, law_forall_multimap, tensor_coherence,
};
use crate::nat::IsoReport;
use crate::presheaf::{Presheaf, Variance};
use crate::quantifiers::{adjunction_check, co_yoneda, compose_quantifier_iso};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub suite: String,
    pub law: String,
    pub instance: String,
    pub status: Status,
    pub witness: Option<String>,
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub micros: Option<u64>,
}

impl Record {
    fn new(suite: &str, law: &str, instance: &str, status: Status) -> Record {
        Record {
            suite: suite.into(),
            law: law.into(),
            instance: instance.into(),
            status,
            witness: None,
            note: None,
            micros: None,
        }
    }

    fn witness(mut self, w: impl Into<String>) -> Record {
        self.witness = Some(w.into());
        self
    }

    fn note(mut self, n: impl Into<String>) -> Record {
        self.note = Some(n.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

#[derive(Debug, Clone)]
pub struct Config {
    pub corpus: Size,
    pub seed: u64,
    /// Random samples per category tuple.
    pub samples: usize,
    pub lim: Limits,
    pub timings: bool,
    /// Chain sizes for the Mat(V) suite.
    pub chains: Vec<usize>,
    /// Instances per law and chain when the box is too large to exhaust.
    pub matrix_samples: usize,
    /// Model draws per ordered category pair in the diagram sweep.
    pub rounds: usize,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            corpus: Size::Full,
            seed: 0,
            samples: 2,
            lim: Limits::default(),
            timings: false,
            chains: vec![2, 3, 4],
            matrix_samples: 10_000,
            rounds: 1,
        }
    }
}

/// Counts of a finished run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

impl Tally {
    pub fn of(records: &[Record]) -> Tally {
        let mut t = Tally::default();
        for r in records {
            match r.status {
                Status::Pass => t.pass += 1,
                Status::Fail => t.fail += 1,
                Status::Error => t.error += 1,
            }
        }
        t
    }

    pub fn ok(&self) -> bool {
        self.fail == 0 && self.error == 0
    }
}

type Job = Box<dyn Fn() -> Vec<Record> + Send + Sync>;

fn run(jobs: Vec<Job>, timings: bool) -> Vec<Record> {
    let mut out: Vec<Record> = jobs
        .par_iter()
        .flat_map_iter(|job| {
            let start = Instant::now();
            let mut recs = job();
            if timings {
                let us = start.elapsed().as_micros() as u64;
                for r in &mut recs {
                    r.micros = Some(us);
                }
            }
            recs
        })
        .collect();
    out.sort_by(|a, b| (&a.law, &a.instance).cmp(&(&b.law, &b.instance)));
    out
}

fn iso(law: &str, inst: &str, rep: Result<IsoReport>) -> Record {
    match rep {
        Ok(r) if r.holds => Record::new("core", law, inst, Status::Pass),
        Ok(r) => Record::new("core", law, inst, Status::Fail).witness(r.summary()),
        Err(e) => Record::new("core", law, inst, Status::Error).witness(e.to_string()),
    }
}

/// A canonical map that need only be natural: passes when it is, and
/// notes whether it is also invertible.
fn one_way(law: &str, inst: &str, rep: Result<IsoReport>) -> Record {
    match rep {
        Ok(r) if r.holds => Record::new("core", law, inst, Status::Pass).note("bijective"),
        Ok(r) => Record::new("core", law, inst, Status::Pass).note(format!("not bijective: {}", r.summary())),
        Err(e @ Error::NotNatural(_)) => Record::new("core", law, inst, Status::Fail).witness(e.to_string()),
        Err(e) => Record::new("core", law, inst, Status::Error).witness(e.to_string()),
    }
}

fn rng_for(seed: u64, parts: &[usize]) -> ChaCha8Rng {
    let mix = parts.iter().fold(seed ^ 0x9e37_79b9_7f4a_7c15, |h, &p| h.rotate_left(17) ^ (p as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(mix)
}

fn entry<'a>(cats: &'a [Entry], name: &str) -> &'a Entry {
    cats.iter().find(|e| e.name == name).expect("named corpus member")
}

/// Ordered category pairs: every pair of named members, and each further
/// member against itself, the terminal category and the walking arrow, in
/// both orders.
pub fn pair_schedule(cats: &[Entry]) -> Vec<(Entry, Entry)> {
    let named = corpus::named();
    let is_named = |e: &Entry| named.iter().any(|n| n.name == e.name);
    let mut out = Vec::new();
    for a in cats.iter().filter(|e| is_named(e)) {
        for b in cats.iter().filter(|e| is_named(e)) {
            out.push((a.clone(), b.clone()));
        }
    }
    let partners = [entry(cats, "terminal").clone(), entry(cats, "walking_arrow").clone()];
    for x in cats.iter().filter(|e| !is_named(e)) {
        out.push((x.clone(), x.clone()));
        for p in &partners {
            out.push((x.clone(), p.clone()));
            out.push((p.clone(), x.clone()));
        }
    }
    out
}

fn rand_p(c: &Arc<Category>, v: Variance, rng: &mut ChaCha8Rng) -> Presheaf {
    Presheaf::random(c, v, corpus::MAX_VALUE, rng)
}

fn rand_d(a: &Arc<Category>, b: &Arc<Category>, rng: &mut ChaCha8Rng) -> Distributor {
    Distributor::random(a, b, corpus::MAX_VALUE, rng)
}

fn single_category_jobs(cats: &[Entry], cfg: &Config, jobs: &mut Vec<Job>) {
    let lim = cfg.lim;
    for (ci, e) in cats.iter().enumerate() {
        let (name, c) = (e.name.clone(), e.category.clone());
        let seed = cfg.seed;
        jobs.push(Box::new(move || {
            let mut out = Vec::new();
            let ps = corpus::presheaves(&c, Variance::Contra, 8, seed ^ ci as u64);
            for (i, r) in ps.iter().enumerate() {
                let inst = format!("A={name} #{i}");
                out.push(iso("co_yoneda", &inst, co_yoneda(r, lim)));
                for a in 0..c.num_objects() {
                    out.push(iso("yoneda", &format!("{inst} a={}", c.object_label(a)), yoneda_check(r, a, lim)));
                }
            }
            out
        }));
        let (name, c) = (e.name.clone(), e.category.clone());
        jobs.push(Box::new(move || {
            let mut out = Vec::new();
            let inst = format!("A={name}");
            out.push(iso("id_rel_hom", &inst, id_rel_check(&c, lim)));
            out.push(iso("id_lawvere_sigma", &inst, id_lawvere_sigma_check(&c, lim)));
            out.push(identity_comparison(&name, &c, lim));
            match comonoid(&c).laws(lim) {
                Ok(laws) => out.extend(laws.into_iter().map(|(l, r)| iso(&format!("comonoid_{l}"), &inst, Ok(r)))),
                Err(e) => out.push(Record::new("core", "comonoid", &inst, Status::Error).witness(e.to_string())),
            }
            match fiber_structure(&c) {
                Ok(fs) => out.push(iso("fiber_top", &inst, fs.top_check(lim))),
                Err(e) => out.push(Record::new("core", "fiber_top", &inst, Status::Error).witness(e.to_string())),
            }
            out
        }));
        let (name, c) = (e.name.clone(), e.category.clone());
        let samples = cfg.samples;
        jobs.push(Box::new(move || {
            let mut out = Vec::new();
            let Ok(fs) = fiber_structure(&c) else { return out };
            let mono = comonoid(&c);
            for k in 0..2 * samples {
                let mut rng = rng_for(seed, &[1, ci, k]);
                let (r, s, t) = (
                    rand_p(&c, Variance::Contra, &mut rng),
                    rand_p(&c, Variance::Contra, &mut rng),
                    rand_p(&c, Variance::Contra, &mut rng),
                );
                let inst = format!("A={name} #{k}");
                out.push(iso("fiber_meet", &inst, fs.meet_check(&r, &s, lim)));
                out.push(iso("fiber_imp", &inst, fs.imp_check(&r, &s, lim)));
                out.push(iso("comonoid_push_pull", &inst, mono.push_pull_agree(&r, &s, lim)));
                match tensor_coherence(&r, &s, &t) {
                    Ok(v) => out.extend(v.into_iter().map(|(l, rep)| iso(&format!("tensor_{l}"), &inst, Ok(rep)))),
                    Err(e) => out.push(Record::new("core", "tensor", &inst, Status::Error).witness(e.to_string())),
                }
            }
            out
        }));
    }
}

/// `Id^L` agrees with `hom` on discrete members and differs on the cospan.
fn identity_comparison(name: &str, c: &Arc<Category>, lim: Limits) -> Record {
    let inst = format!("A={name}");
    let cmp = match compare_identities(c, lim) {
        Ok(x) => x,
        Err(e) => return Record::new("core", "id_lawvere_vs_rel", &inst, Status::Error).witness(e.to_string()),
    };
    let discrete = c.non_identity_count() == 0;
    let diffs: Vec<String> = cmp
        .differences
        .iter()
        .map(|&(a1, a2, l, h)| format!("({},{}): lawvere {l}, hom {h}", c.object_label(a1), c.object_label(a2)))
        .collect();
    let status = match (discrete, name == "cospan") {
        (true, _) if !cmp.agree() => Status::Fail,
        (_, true) if cmp.agree() => Status::Fail,
        _ => Status::Pass,
    };
    let rec = Record::new("core", "id_lawvere_vs_rel", &inst, status);
    if cmp.agree() {
        rec.note("agree")
    } else {
        rec.note("differ").witness(diffs.join("; "))
    }
}

fn pair_jobs(pairs: &[(Entry, Entry)], cfg: &Config, jobs: &mut Vec<Job>) {
    let lim = cfg.lim;
    let terminal = Arc::new(Category::terminal());
    let arrow = Arc::new(Category::walking_arrow());
    for (pi, (ea, eb)) in pairs.iter().enumerate() {
        for k in 0..cfg.samples {
            let (a, b) = (ea.category.clone(), eb.category.clone());
            let inst = format!("A={} B={} #{k}", ea.name, eb.name);
            let seed = cfg.seed;
            let (terminal, arrow) = (terminal.clone(), arrow.clone());
            jobs.push(Box::new(move || {
                let mut rng = rng_for(seed, &[2, pi, k]);
                let mut out = Vec::new();
                let m = rand_d(&a, &b, &mut rng);
                let (r, s) = (rand_p(&a, Variance::Contra, &mut rng), rand_p(&b, Variance::Contra, &mut rng));
                let (rq, sq) = (rand_p(&a, Variance::Co, &mut rng), rand_p(&b, Variance::Co, &mut rng));
                out.push(match adjunction_check(&m, &r, &s, lim) {
                    Ok(rep) if rep.holds => Record::new("core", "adjunction", &inst, Status::Pass)
                        .note(format!("{} morphisms each side", rep.left_count)),
                    Ok(rep) => Record::new("core", "adjunction", &inst, Status::Fail)
                        .witness(rep.failure.unwrap_or_default()),
                    Err(e) => Record::new("core", "adjunction", &inst, Status::Error).witness(e.to_string()),
                });
                out.push(iso("chirality_a", &inst, law_a(&m, &s, lim)));
                out.push(iso("chirality_b", &inst, law_b(&m, &sq, lim)));
                out.push(iso("exists_q_conjugation", &inst, exists_q_conjugation(&m, &rq, lim)));
                out.push(iso("thm3_push", &inst, thm3_push(&m, &r, lim)));
                out.push(iso("thm3_pull", &inst, thm3_pull(&m, &s, lim)));

                // a third category after B, and a second pair (C, D); pairs
                // of three-object categories keep C and D terminal, since
                // their natural-family searches otherwise pass the cap
                let big = a.num_objects() * b.num_objects() >= 9;
                let c = if k % 2 == 0 || big { &terminal } else { &arrow };
                let n = rand_d(&b, c, &mut rng);
                out.push(iso("compose_exists", &inst, compose_quantifier_iso(&n, &m, &r, lim)));
                let d = if k % 2 == 0 && !big { &arrow } else { &terminal };
                // M : A ⇸ C, N : D ⇸ B for (c) and the multimap law
                let mac = rand_d(&a, c, &mut rng);
                let nbd = rand_d(&b, d, &mut rng);
                let ndb = rand_d(d, &b, &mut rng);
                let mca = rand_d(c, &a, &mut rng);
                out.push(iso("c_exists_tensor", &inst, law_c(&mac, &nbd, &r, &s, lim)));
                out.push(iso("forall_multimap", &inst, law_forall_multimap(&mac, &ndb, &r, &s, lim)));
                out.push(iso("d_forall_q_tensor", &inst, law_d(&mca, &ndb, &rq, &sq, lim)));
                out.push(iso("d_action", &inst, law_d_action(&mca, &ndb, &rq, &s, lim)));
                out.push(one_way("e_forall_tensor", &inst, law_e(&mca, &ndb, &r, &s, lim)));
                out.push(one_way("f_exists_q_tensor", &inst, law_f(&mac, &nbd, &rq, &sq, lim)));
                out
            }));
        }
    }
}

/// Every functor between two corpus members is checked; no pair has more
/// than this many.
const FUNCTOR_CAP: usize = 4096;

fn functor_jobs(pairs: &[(Entry, Entry)], cfg: &Config, jobs: &mut Vec<Job>) {
    let lim = cfg.lim;
    for (pi, (ea, eb)) in pairs.iter().enumerate() {
        let (a, b) = (ea.category.clone(), eb.category.clone());
        let label = format!("{}->{}", ea.name, eb.name);
        let (seed, samples) = (cfg.seed, cfg.samples);
        jobs.push(Box::new(move || {
            let mut out = Vec::new();
            let fs = match Functor::enumerate(&a, &b, FUNCTOR_CAP) {
                Ok(fs) => fs,
                Err(e) => return vec![Record::new("core", "functors", &label, Status::Error).witness(e.to_string())],
            };
            let back = Functor::to_terminal(&b);
            for (fi, f) in fs.iter().enumerate() {
                for k in 0..samples {
                    let mut rng = rng_for(seed, &[3, pi, fi, k]);
                    let r = rand_p(&a, Variance::Contra, &mut rng);
                    let s = rand_p(&b, Variance::Contra, &mut rng);
                    let inst = format!("F={label}#{fi} #{k}");
                    let names = ["reconstruct_sigma", "reconstruct_subst_forall", "reconstruct_subst_exists", "reconstruct_pi"];
                    match reconstruction_check(f, &r, &s, lim) {
                        Ok(reps) => {
                            out.extend(names.iter().zip(reps).map(|(n, rep)| iso(n, &inst, Ok(rep))));
                        }
                        Err(e) => out.push(Record::new("core", "reconstruct", &inst, Status::Error).witness(e.to_string())),
                    }
                }
                let inst = format!("F={label}#{fi} G={}->terminal", label.split("->").nth(1).unwrap_or("?"));
                match emb_functoriality(f, &back, lim) {
                    Ok([p, m]) => {
                        out.push(iso("emb_plus_functorial", &inst, Ok(p)));
                        out.push(iso("emb_minus_functorial", &inst, Ok(m)));
                    }
                    Err(e) => out.push(Record::new("core", "emb_functorial", &inst, Status::Error).witness(e.to_string())),
                }
            }
            out
        }));
    }
}

pub fn core_suite(cfg: &Config) -> Vec<Record> {
    let cats = corpus::categories(cfg.corpus);
    let pairs = pair_schedule(&cats);
    let mut jobs: Vec<Job> = Vec::new();
    single_category_jobs(&cats, cfg, &mut jobs);
    pair_jobs(&pairs, cfg, &mut jobs);
    let all_pairs: Vec<(Entry, Entry)> =
        cats.iter().flat_map(|a| cats.iter().map(move |b| (a.clone(), b.clone()))).collect();
    functor_jobs(&all_pairs, cfg, &mut jobs);
    run(jobs, cfg.timings)
}

pub fn matll_suite(cfg: &Config) -> Vec<Record> {
    let jobs: Vec<Job> = cfg
        .chains
        .iter()
        .map(|&n| {
            let (samples, seed) = (cfg.matrix_samples, cfg.seed);
            Box::new(move || {
                let inst = format!("chain={n}");
                let v = match mv_chain(n) {
                    Ok(v) => v,
                    Err(e) => return vec![Record::new("matll", "chain", &inst, Status::Error).witness(e.to_string())],
                };
                match law_box(&v, samples, seed) {
                    Ok(sums) => sums
                        .into_iter()
                        .map(|s| {
                            let status = if s.passed() { Status::Pass } else { Status::Fail };
                            let mut rec = Record::new("matll", &format!("mat_{}", s.law), &inst, status)
                                .note(match s.relation {
                                    Relation::Equal => format!("{} instances, lhs = rhs", s.instances),
                                    Relation::Below if s.strict_witness.is_some() => {
                                        format!("{} instances, lhs <= rhs, strict witness", s.instances)
                                    }
                                    Relation::Below => format!("{} instances, lhs <= rhs, never strict", s.instances),
                                });
                            if let Some(w) = s.first_failure.as_ref().or(s.strict_witness.as_ref()) {
                                rec = rec.witness(serde_json::to_string(w).expect("instances serialize"));
                            }
                            rec
                        })
                        .collect(),
                    Err(e) => vec![Record::new("matll", "law_box", &inst, Status::Error).witness(e.to_string())],
                }
            }) as Job
        })
        .collect();
    run(jobs, cfg.timings)
}

/// The diagram sweep runs over the named members, where every ordered pair
/// already yields well over two hundred (term, move, model) triples.
pub fn diagrams_suite(cfg: &Config) -> Vec<Record> {
    let cats: Vec<Arc<Category>> = corpus::categories(Size::Small).into_iter().map(|e| e.category).collect();
    let start = Instant::now();
    let s = sweep(&cats, cfg.rounds, cfg.seed, cfg.lim);
    let us = start.elapsed().as_micros() as u64;
    let inst = format!("named x{} rounds={}", cats.len(), cfg.rounds);
    let mk = |law: &str, ok: bool, note: String| {
        let mut r = Record::new("diagrams", law, &inst, if ok { Status::Pass } else { Status::Fail }).note(note);
        if !ok {
            r = r.witness(s.failures.first().cloned().unwrap_or_default());
        }
        if cfg.timings {
            r.micros = Some(us);
        }
        r
    };
    vec![
        mk("diagram_soundness", s.passed == s.triples, format!("{} of {} triples, {} over the size cap", s.passed, s.triples, s.skipped)),
        mk("diagram_round_trip", s.round_trip_failures == 0, format!("{} round trips", s.round_trips)),
        mk(
            "diagram_degenerate",
            s.degenerate_checked > 0 && s.degenerate_iso == s.degenerate_checked,
            format!("{} of {} degenerate reductions invertible", s.degenerate_iso, s.degenerate_checked),
        ),
        mk("diagram_claims", s.false_claims == 0, format!("{} false iso claims", s.false_claims)),
    ]
}

/// A strict instance of law (e) or (f) with `C = D = 1`.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub law: String,
    pub instance: String,
    pub failure: String,
    /// The categories involved and the four inputs, as documents of the
    /// workspace format.
    pub documents: Vec<Document>,
}

/// Searches the corpus in order for an instance whose canonical map is
/// natural but not invertible. Distributors run between the terminal
/// category and corpus members; presheaves are enumerated exhaustively.
pub fn counterexample(law: &str, size: Size, lim: Limits) -> Result<Option<Counterexample>> {
    if law != "e" && law != "f" {
        return Err(Error::Format(format!("no counterexample search for law `{law}`, expected e or f")));
    }
    let cats = corpus::categories(size);
    let one = Arc::new(Category::terminal());
    for ea in &cats {
        for eb in &cats {
            let (a, b) = (&ea.category, &eb.category);
            let found = if law == "e" {
                // M : 1 ⇸ A, N : 1 ⇸ B, R, S contravariant
                search(&one, a, b, Variance::Contra, lim, |m, n, r, s| law_e(m, n, r, s, lim), true)?
            } else {
                // M : A ⇸ 1, N : B ⇸ 1, R, S covariant
                search(&one, a, b, Variance::Co, lim, |m, n, r, s| law_f(m, n, r, s, lim), false)?
            };
            if let Some((m, n, r, s, failure)) = found {
                let (sa, sb) = (ea.name.as_str(), eb.name.as_str());
                let dist_doc = |name: &str, d: &Distributor, x: &str, y: &str| Document::Distributor(distributor_to_doc(name, x, y, d));
                let mut documents = vec![Document::Category(category_to_doc("1", &one))];
                for e in [ea, eb] {
                    if !documents.iter().any(|d| d.name() == e.name) {
                        documents.push(Document::Category(category_to_doc(&e.name, &e.category)));
                    }
                }
                let inputs: Vec<Document> = if law == "e" {
                    vec![dist_doc("M", &m, "1", sa), dist_doc("N", &n, "1", sb)]
                } else {
                    vec![dist_doc("M", &m, sa, "1"), dist_doc("N", &n, sb, "1")]
                }
                .into_iter()
                .chain([
                    Document::Presheaf(presheaf_to_doc("R", sa, &r)),
                    Document::Presheaf(presheaf_to_doc("S", sb, &s)),
                ])
                .collect();
                documents.extend(inputs);
                return Ok(Some(Counterexample {
                    law: law.into(),
                    instance: format!("A={sa} B={sb} C=D=1"),
                    failure,
                    documents,
                }));
            }
        }
    }
    Ok(None)
}

type Found = Option<(Distributor, Distributor, Presheaf, Presheaf, String)>;

fn search(
    one: &Arc<Category>,
    a: &Arc<Category>,
    b: &Arc<Category>,
    variance: Variance,
    lim: Limits,
    check: impl Fn(&Distributor, &Distributor, &Presheaf, &Presheaf) -> Result<IsoReport>,
    from_one: bool,
) -> Result<Found> {
    let cap = 4096;
    let dists = |x: &Arc<Category>| {
        if from_one {
            Distributor::enumerate(one, x, corpus::MAX_VALUE, cap)
        } else {
            Distributor::enumerate(x, one, corpus::MAX_VALUE, cap)
        }
    };
    let (ms, ns) = (dists(a)?, dists(b)?);
    let rs = Presheaf::enumerate(a, variance, corpus::MAX_VALUE, cap)?;
    let ss = Presheaf::enumerate(b, variance, corpus::MAX_VALUE, cap)?;
    let _ = lim;
    for m in &ms {
        for n in &ns {
            for r in &rs {
                for s in &ss {
                    let rep = check(m, n, r, s)?;
                    if !rep.holds {
                        return Ok(Some((m.clone(), n.clone(), r.clone(), s.clone(), rep.summary())));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_covers_named_pairs_and_extras() {
        let cats = corpus::categories(Size::Full);
        let pairs = pair_schedule(&cats);
        assert_eq!(pairs.len(), 25 + (cats.len() - 5) * 5);
        assert_eq!(pair_schedule(&corpus::named()).len(), 25);
    }

    #[test]
    fn small_core_suite_is_green_and_sorted() {
        let cfg = Config { corpus: Size::Small, samples: 1, ..Config::default() };
        let recs = core_suite(&cfg);
        let bad: Vec<_> = recs.iter().filter(|r| r.status != Status::Pass).collect();
        assert!(bad.is_empty(), "{:?}", bad.first());
        assert!(recs.windows(2).all(|w| (&w[0].law, &w[0].instance) < (&w[1].law, &w[1].instance)));
        assert!(recs.iter().all(|r| r.micros.is_none()));
    }

    #[test]
    fn counterexample_for_e_is_found() {
        let cx = counterexample("e", Size::Small, Limits::default()).unwrap().expect("strict instance");
        assert!(cx.instance.ends_with("C=D=1"));
        assert_eq!(cx.documents.len(), 6);
    }
}
