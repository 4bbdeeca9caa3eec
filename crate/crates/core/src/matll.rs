//! Matrices over a finite *-autonomous chain, their two compositions and
//! quantifiers, and the linear distributivity laws they satisfy.
//!
//! Truth values are the Łukasiewicz chain `{0, 1/(n-1), ..., 1}` stored as
//! integers `0..n`. With `top = n - 1`:
//! `x ⊗ y = max(0, x + y - top)`, `x⅋y = min(top, x + y)`, `x* = top - x`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finset::FinSet;

/// A finite commutative *-autonomous chain, given by its tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarAutPoset {
    pub elements: FinSet,
    tensor: Vec<usize>,
    par: Vec<usize>,
    neg: Vec<usize>,
    /// Unit of `⊗`.
    pub one: usize,
    /// Unit of `⅋`.
    pub bot: usize,
}

pub fn mv_chain(n: usize) -> Result<StarAutPoset> {
    if n < 2 {
        return Err(Error::Invalid { kind: "chain".into(), violations: vec![format!("a chain needs at least 2 elements, got {n}")] });
    }
    let top = n - 1;
    let label = |k: usize| {
        let g = gcd(k, top);
        match (k, top / g) {
            (0, _) => "0".to_string(),
            (_, 1) => "1".to_string(),
            (k, d) => format!("{}/{d}", k / g),
        }
    };
    let elements = FinSet::new((0..n).map(label).collect())?;
    let mut tensor = Vec::with_capacity(n * n);
    let mut par = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            tensor.push((x + y).saturating_sub(top));
            par.push((x + y).min(top));
        }
    }
    Ok(StarAutPoset { elements, tensor, par, neg: (0..n).rev().collect(), one: top, bot: 0 })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

impl StarAutPoset {
    pub fn len(&self) -> usize {
        self.neg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neg.is_empty()
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn tensor(&self, x: usize, y: usize) -> usize {
        self.tensor[x * self.len() + y]
    }

    pub fn par(&self, x: usize, y: usize) -> usize {
        self.par[x * self.len() + y]
    }

    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        x.min(y)
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        x.max(y)
    }

    /// `⊕` of a family; the empty join is the bottom element.
    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().max().unwrap_or(0)
    }

    /// `&` of a family; the empty meet is the top element.
    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().min().unwrap_or(self.top())
    }

    /// Every axiom instance that fails, checked exhaustively.
    pub fn validate(&self) -> Vec<String> {
        let n = self.len();
        let mut out = Vec::new();
        let el = |x: usize| self.elements.label(x).to_string();
        for x in 0..n {
            if self.neg(self.neg(x)) != x {
                out.push(format!("negation is not involutive at {}", el(x)));
            }
            if self.tensor(self.one, x) != x {
                out.push(format!("{} is not a unit for ⊗ at {}", el(self.one), el(x)));
            }
            if self.par(self.bot, x) != x {
                out.push(format!("{} is not a unit for ⅋ at {}", el(self.bot), el(x)));
            }
            for y in 0..n {
                if self.tensor(x, y) != self.tensor(y, x) {
                    out.push(format!("⊗ is not commutative at ({},{})", el(x), el(y)));
                }
                if self.par(x, y) != self.neg(self.tensor(self.neg(x), self.neg(y))) {
                    out.push(format!("⅋ is not dual to ⊗ at ({},{})", el(x), el(y)));
                }
                let (m, j) = (self.meet(x, y), self.join(x, y));
                if !(m <= x && m <= y && x <= j && y <= j) {
                    out.push(format!("meet/join are not bounds at ({},{})", el(x), el(y)));
                }
                for z in 0..n {
                    if self.tensor(self.tensor(x, y), z) != self.tensor(x, self.tensor(y, z)) {
                        out.push(format!("⊗ is not associative at ({},{},{})", el(x), el(y), el(z)));
                    }
                    let adj = (self.tensor(x, y) <= z) == (x <= self.par(self.neg(y), z));
                    if !adj {
                        out.push(format!("x⊗y ≤ z ⇔ x ≤ y*⅋z fails at ({},{},{})", el(x), el(y), el(z)));
                    }
                    if y <= z && self.tensor(x, y) > self.tensor(x, z) {
                        out.push(format!("⊗ is not monotone at ({},{},{})", el(x), el(y), el(z)));
                    }
                }
            }
        }
        out
    }
}

/// A matrix `M : A ⇸ B` with entries `M(b,a)` at `b * |A| + a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MVMatrix {
    pub src: FinSet,
    pub tgt: FinSet,
    pub entries: Vec<usize>,
}

impl MVMatrix {
    pub fn new(src: FinSet, tgt: FinSet, entries: Vec<usize>) -> Result<MVMatrix> {
        if entries.len() != src.len() * tgt.len() {
            return Err(Error::Shape(format!(
                "{} entries for a {}×{} matrix",
                entries.len(),
                tgt.len(),
                src.len()
            )));
        }
        Ok(MVMatrix { src, tgt, entries })
    }

    /// Numbered index sets; entries row by row.
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<usize>) -> Result<MVMatrix> {
        MVMatrix::new(FinSet::numbered(cols), FinSet::numbered(rows), entries)
    }

    pub fn get(&self, b: usize, a: usize) -> usize {
        self.entries[b * self.src.len() + a]
    }

    pub fn rows(&self) -> usize {
        self.tgt.len()
    }

    pub fn cols(&self) -> usize {
        self.src.len()
    }

    /// Diagonal `⊗`-unit, bottom elsewhere.
    pub fn identity(v: &StarAutPoset, a: &FinSet) -> MVMatrix {
        let n = a.len();
        let entries = (0..n * n).map(|i| if i / n == i % n { v.one } else { v.bot }).collect();
        MVMatrix { src: a.clone(), tgt: a.clone(), entries }
    }

    /// `M*(a,b) = M(b,a)*`.
    pub fn dual(&self, v: &StarAutPoset) -> MVMatrix {
        let (na, nb) = (self.cols(), self.rows());
        let entries = (0..na * nb).map(|i| v.neg(self.get(i % nb, i / nb))).collect();
        MVMatrix { src: self.tgt.clone(), tgt: self.src.clone(), entries }
    }

    fn pointwise(&self, other: &MVMatrix, op: impl Fn(usize, usize) -> usize) -> MVMatrix {
        let (src, tgt) = (self.src.product(&other.src), self.tgt.product(&other.tgt));
        let (nd, nb) = (other.rows(), other.cols());
        let entries = (0..tgt.len() * src.len())
            .map(|i| {
                let (cd, ab) = (i / src.len(), i % src.len());
                op(self.get(cd / nd, ab / nb), other.get(cd % nd, ab % nb))
            })
            .collect();
        MVMatrix { src, tgt, entries }
    }

    /// `(M ⊗ N)((c,d),(a,b)) = M(c,a) ⊗ N(d,b)`.
    pub fn tensor(&self, other: &MVMatrix, v: &StarAutPoset) -> MVMatrix {
        self.pointwise(other, |x, y| v.tensor(x, y))
    }

    /// `(M ⅋ N)((c,d),(a,b)) = M(c,a) ⅋ N(d,b)`.
    pub fn par(&self, other: &MVMatrix, v: &StarAutPoset) -> MVMatrix {
        self.pointwise(other, |x, y| v.par(x, y))
    }
}

fn check_shape(ok: bool, what: &str) -> Result<()> {
    if ok { Ok(()) } else { Err(Error::Shape(format!("{what}: shapes do not match"))) }
}

/// `(N ∘ M)(c,a) = ⊕_b N(c,b) ⊗ M(b,a)`.
pub fn mat_compose_plus(n: &MVMatrix, m: &MVMatrix, v: &StarAutPoset) -> Result<MVMatrix> {
    check_shape(n.src == m.tgt, "composite")?;
    let entries = (0..n.rows() * m.cols())
        .map(|i| {
            let (c, a) = (i / m.cols(), i % m.cols());
            v.join_all((0..m.rows()).map(|b| v.tensor(n.get(c, b), m.get(b, a))))
        })
        .collect();
    MVMatrix::new(m.src.clone(), n.tgt.clone(), entries)
}

/// `(N ⋄ M)(c,a) = &_b N(c,b) ⅋ M(b,a)`.
pub fn mat_compose_minus(n: &MVMatrix, m: &MVMatrix, v: &StarAutPoset) -> Result<MVMatrix> {
    check_shape(n.src == m.tgt, "composite")?;
    let entries = (0..n.rows() * m.cols())
        .map(|i| {
            let (c, a) = (i / m.cols(), i % m.cols());
            v.meet_all((0..m.rows()).map(|b| v.par(n.get(c, b), m.get(b, a))))
        })
        .collect();
    MVMatrix::new(m.src.clone(), n.tgt.clone(), entries)
}

/// `(∃_M R)_b = ⊕_a M(b,a) ⊗ R_a`.
pub fn mat_exists(m: &MVMatrix, r: &[usize], v: &StarAutPoset) -> Result<Vec<usize>> {
    check_shape(r.len() == m.cols(), "∃")?;
    Ok((0..m.rows()).map(|b| v.join_all(r.iter().enumerate().map(|(a, &x)| v.tensor(m.get(b, a), x)))).collect())
}

/// `(∀_M S)_a = &_b M*(a,b) ⅋ S_b`.
pub fn mat_forall(m: &MVMatrix, s: &[usize], v: &StarAutPoset) -> Result<Vec<usize>> {
    check_shape(s.len() == m.rows(), "∀")?;
    Ok((0..m.cols()).map(|a| v.meet_all(s.iter().enumerate().map(|(b, &y)| v.par(v.neg(m.get(b, a)), y)))).collect())
}

/// Mirror side: `(∃^q_M R)_b = ⊕_a R_a ⊗ M(b,a)*`.
pub fn mat_exists_q(m: &MVMatrix, r: &[usize], v: &StarAutPoset) -> Result<Vec<usize>> {
    check_shape(r.len() == m.cols(), "∃")?;
    Ok((0..m.rows()).map(|b| v.join_all(r.iter().enumerate().map(|(a, &x)| v.tensor(x, v.neg(m.get(b, a)))))).collect())
}

/// Mirror side: `(∀^q_M S)_a = &_b S_b ⅋ M(b,a)`.
pub fn mat_forall_q(m: &MVMatrix, s: &[usize], v: &StarAutPoset) -> Result<Vec<usize>> {
    check_shape(s.len() == m.rows(), "∀")?;
    Ok((0..m.cols()).map(|a| v.meet_all(s.iter().enumerate().map(|(b, &y)| v.par(y, m.get(b, a))))).collect())
}

fn neg_vec(x: &[usize], v: &StarAutPoset) -> Vec<usize> {
    x.iter().map(|&e| v.neg(e)).collect()
}

/// `(R ⊗ S)_{(a,b)}` and friends, indexed `a * |S| + b`.
fn outer(r: &[usize], s: &[usize], op: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    r.iter().flat_map(|&x| s.iter().map(move |&y| (x, y))).map(|(x, y)| op(x, y)).collect()
}

/// How the two sides of a law must relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Equal,
    #[serde(rename = "<=")]
    Below,
}

/// One instance of a law: inputs, both sides, verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawInstance {
    pub m: MVMatrix,
    pub n: MVMatrix,
    pub r: Vec<usize>,
    pub s: Vec<usize>,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

impl LawInstance {
    pub fn holds(&self, rel: Relation) -> bool {
        match rel {
            Relation::Equal => self.lhs == self.rhs,
            Relation::Below => self.lhs.iter().zip(&self.rhs).all(|(x, y)| x <= y),
        }
    }

    pub fn strict(&self) -> bool {
        self.lhs.iter().zip(&self.rhs).all(|(x, y)| x <= y) && self.lhs != self.rhs
    }
}

pub const LAWS: [(&str, Relation); 7] = [
    ("a", Relation::Equal),
    ("b", Relation::Equal),
    ("c", Relation::Equal),
    ("d", Relation::Equal),
    ("e", Relation::Below),
    ("f", Relation::Below),
    ("adjunction", Relation::Equal),
];

/// Both sides of one law. `m` and `n` are read with the shapes each law
/// needs; `r` and `s` must match their columns or rows accordingly.
///
/// - (a) `∀_M S = (∃^q_{M*} S*)*`
/// - (b) `∀^q_M S = (∃_{M*} S*)*`
/// - (c) `∃_M R ⊗ ∃_N S = ∃_{M⊗N}(R ⊗ S)`
/// - (d) `∀^q_M R ⅋ ∀^q_N S = ∀^q_{M⅋N}(R ⅋ S)`
/// - (e) `(&_a R_a ⅋ M(c,a)) ⊗ (&_b S_b ⅋ N(d,b)) ≤ &_{a,b} (R_a ⊗ S_b) ⅋ M(c,a) ⅋ N(d,b)`
/// - (f) `⊕_{a,b} M(c,a) ⊗ N(d,b) ⊗ (R_a ⅋ S_b) ≤ ∃_M R ⅋ ∃_N S`
/// - adjunction: `[∃_M R ≤ S] = [R ≤ ∀_M S]`, as one-entry vectors.
pub fn law_sides(law: &str, m: &MVMatrix, n: &MVMatrix, r: &[usize], s: &[usize], v: &StarAutPoset) -> Result<(Vec<usize>, Vec<usize>)> {
    let le = |x: &[usize], y: &[usize]| x.iter().zip(y).all(|(p, q)| p <= q) as usize;
    Ok(match law {
        "a" => (mat_forall(m, s, v)?, neg_vec(&mat_exists_q(&m.dual(v), &neg_vec(s, v), v)?, v)),
        "b" => (mat_forall_q(m, s, v)?, neg_vec(&mat_exists(&m.dual(v), &neg_vec(s, v), v)?, v)),
        "c" => {
            let lhs = outer(&mat_exists(m, r, v)?, &mat_exists(n, s, v)?, |x, y| v.tensor(x, y));
            (lhs, mat_exists(&m.tensor(n, v), &outer(r, s, |x, y| v.tensor(x, y)), v)?)
        }
        "d" => {
            let lhs = outer(&mat_forall_q(m, r, v)?, &mat_forall_q(n, s, v)?, |x, y| v.par(x, y));
            (lhs, mat_forall_q(&m.par(n, v), &outer(r, s, |x, y| v.par(x, y)), v)?)
        }
        "e" => {
            check_shape(r.len() == m.cols() && s.len() == n.cols(), "law (e)")?;
            let side = |mm: &MVMatrix, x: &[usize], c: usize| v.meet_all(x.iter().enumerate().map(|(a, &e)| v.par(e, mm.get(c, a))));
            let mut lhs = Vec::new();
            let mut rhs = Vec::new();
            for c in 0..m.rows() {
                for d in 0..n.rows() {
                    lhs.push(v.tensor(side(m, r, c), side(n, s, d)));
                    rhs.push(v.meet_all((0..r.len()).flat_map(|a| (0..s.len()).map(move |b| (a, b))).map(|(a, b)| {
                        v.par(v.par(v.tensor(r[a], s[b]), m.get(c, a)), n.get(d, b))
                    })));
                }
            }
            (lhs, rhs)
        }
        "f" => {
            let lhs = mat_exists(&m.tensor(n, v), &outer(r, s, |x, y| v.par(x, y)), v)?;
            (lhs, outer(&mat_exists(m, r, v)?, &mat_exists(n, s, v)?, |x, y| v.par(x, y)))
        }
        "adjunction" => {
            let pushed = mat_exists(m, r, v)?;
            check_shape(pushed.len() == s.len(), "adjunction")?;
            (vec![le(&pushed, s)], vec![le(r, &mat_forall(m, s, v)?)])
        }
        other => return Err(Error::Lookup(format!("no matrix law named `{other}`"))),
    })
}

/// Shapes of `(m, n, r, s)` a law reads: `(rows, cols)` for the matrices
/// and lengths for the vectors, given the four index-set sizes.
fn shapes(law: &str, [a, b, c, d]: [usize; 4]) -> ((usize, usize), (usize, usize), usize, usize) {
    match law {
        // M : A ⇸ B, S on B
        "a" | "b" => ((b, a), (0, 0), 0, b),
        "adjunction" => ((b, a), (0, 0), a, b),
        // M : C ⇸ A, N : D ⇸ B in the mirror reading
        "d" => ((a, c), (b, d), a, b),
        // M : A ⇸ C, N : B ⇸ D
        _ => ((c, a), (d, b), a, b),
    }
}

/// Aggregate result of a law over a sweep.
#[derive(Debug, Clone, Serialize)]
pub struct LawSummary {
    pub law: String,
    pub relation: Relation,
    pub instances: usize,
    pub failures: usize,
    pub first_failure: Option<LawInstance>,
    /// First instance where `≤` is strict.
    pub strict_witness: Option<LawInstance>,
}

impl LawSummary {
    pub fn passed(&self) -> bool {
        self.failures == 0 && (self.relation == Relation::Equal || self.strict_witness.is_some())
    }
}

fn instance(law: &str, dims: [usize; 4], v: &StarAutPoset, mut entry: impl FnMut() -> usize) -> Result<LawInstance> {
    let ((mr, mc), (nr, nc), lr, ls) = shapes(law, dims);
    let mut fill = |k: usize| (0..k).map(|_| entry()).collect::<Vec<_>>();
    let m = MVMatrix::from_rows(mr, mc, fill(mr * mc))?;
    let n = MVMatrix::from_rows(nr, nc, fill(nr * nc))?;
    let (r, s) = (fill(lr), fill(ls));
    let (lhs, rhs) = law_sides(law, &m, &n, &r, &s, v)?;
    Ok(LawInstance { m, n, r, s, lhs, rhs })
}

/// Checks every law on all `1×1` instances exhaustively and then on
/// `samples` random instances with index sets of size `1..=3`.
pub fn law_box(v: &StarAutPoset, samples: usize, seed: u64) -> Result<Vec<LawSummary>> {
    let k = v.len();
    LAWS.par_iter()
        .enumerate()
        .map(|(i, &(law, relation))| {
            let mut summary = LawSummary { law: law.to_string(), relation, instances: 0, failures: 0, first_failure: None, strict_witness: None };
            let mut record = |inst: LawInstance| {
                summary.instances += 1;
                if !inst.holds(relation) {
                    summary.failures += 1;
                    summary.first_failure.get_or_insert(inst);
                } else if relation == Relation::Below && inst.strict() && summary.strict_witness.is_none() {
                    summary.strict_witness = Some(inst);
                }
            };
            let ((mr, mc), (nr, nc), lr, ls) = shapes(law, [1; 4]);
            let slots = mr * mc + nr * nc + lr + ls;
            for code in 0..k.pow(slots as u32) {
                let mut c = code;
                record(instance(law, [1; 4], v, || {
                    let e = c % k;
                    c /= k;
                    e
                })?);
            }
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            for _ in 0..samples {
                let dims = [0; 4].map(|_| rng.gen_range(1..=3));
                let mut draws: Vec<usize> = (0..64).map(|_| rng.gen_range(0..k)).collect();
                record(instance(law, dims, v, || draws.pop().expect("at most 63 draws per instance"))?);
            }
            Ok(summary)
        })
        .collect()
}

/// One entry of a matrix file. Entries are element labels of the chain the
/// file is read against; matrices are dense, one row per target element.
///
/// ```json
/// [
///   {"kind": "matrix", "name": "M", "src": ["a0", "a1"], "tgt": ["b"], "entries": [["1/2", "1"]]},
///   {"kind": "vector", "name": "R", "over": ["a0", "a1"], "entries": ["0", "1"]}
/// ]
/// ```
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MatrixDoc {
    Matrix { name: String, src: Vec<String>, tgt: Vec<String>, entries: Vec<Vec<String>> },
    Vector { name: String, over: Vec<String>, entries: Vec<String> },
}

/// A vector over a labelled index set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MVVector {
    pub over: FinSet,
    pub entries: Vec<usize>,
}

/// Named matrices and vectors read from one file.
#[derive(Debug, Clone, Default)]
pub struct MatrixFile {
    pub matrices: BTreeMap<String, MVMatrix>,
    pub vectors: BTreeMap<String, MVVector>,
}

impl MatrixFile {
    pub fn matrix(&self, name: &str) -> Result<&MVMatrix> {
        self.matrices.get(name).ok_or_else(|| Error::Unresolved(format!("no matrix named `{name}`")))
    }

    pub fn vector(&self, name: &str) -> Result<&MVVector> {
        self.vectors.get(name).ok_or_else(|| Error::Unresolved(format!("no vector named `{name}`")))
    }
}

/// Reads a matrix file (one document or an array) against the chain `v`.
/// Unknown labels and ragged tables are reported together.
pub fn parse_matrix_file(text: &str, v: &StarAutPoset) -> Result<MatrixFile> {
    let docs: Vec<MatrixDoc> = match serde_json::from_str::<Vec<MatrixDoc>>(text) {
        Ok(d) => d,
        Err(_) => vec![serde_json::from_str::<MatrixDoc>(text)?],
    };
    let mut out = MatrixFile::default();
    for doc in docs {
        let mut bad = Vec::new();
        let value = |label: &str, bad: &mut Vec<String>| {
            v.elements.position(label).unwrap_or_else(|| {
                bad.push(format!("`{label}` is not an element of the {}-chain", v.len()));
                0
            })
        };
        match doc {
            MatrixDoc::Matrix { name, src, tgt, entries } => {
                let (src, tgt) = (FinSet::new(src)?, FinSet::new(tgt)?);
                if entries.len() != tgt.len() {
                    bad.push(format!("{} rows for {} target elements", entries.len(), tgt.len()));
                }
                let mut flat = Vec::with_capacity(src.len() * tgt.len());
                for (i, row) in entries.iter().enumerate() {
                    if row.len() != src.len() {
                        bad.push(format!("row {i} has {} entries, expected {}", row.len(), src.len()));
                    }
                    flat.extend(row.iter().map(|l| value(l, &mut bad)));
                }
                if !bad.is_empty() {
                    return Err(Error::Invalid { kind: format!("matrix {name}"), violations: bad });
                }
                out.matrices.insert(name, MVMatrix::new(src, tgt, flat)?);
            }
            MatrixDoc::Vector { name, over, entries } => {
                let over = FinSet::new(over)?;
                if entries.len() != over.len() {
                    bad.push(format!("{} entries over {} elements", entries.len(), over.len()));
                }
                let entries: Vec<usize> = entries.iter().map(|l| value(l, &mut bad)).collect();
                if !bad.is_empty() {
                    return Err(Error::Invalid { kind: format!("vector {name}"), violations: bad });
                }
                out.vectors.insert(name, MVVector { over, entries });
            }
        }
    }
    Ok(out)
}

/// Dense table: a header of source labels, then one line per target.
pub fn render_matrix(m: &MVMatrix, v: &StarAutPoset) -> String {
    let mut out = String::new();
    out.push_str(&format!("\t{}\n", m.src.labels().join("\t")));
    for b in 0..m.rows() {
        let row: Vec<&str> = (0..m.cols()).map(|a| v.elements.label(m.get(b, a))).collect();
        out.push_str(&format!("{}\t{}\n", m.tgt.label(b), row.join("\t")));
    }
    out
}

/// One `index value` line per entry.
pub fn render_vector(over: &FinSet, x: &[usize], v: &StarAutPoset) -> String {
    over.labels().iter().zip(x).map(|(i, &e)| format!("{i}\t{}\n", v.elements.label(e))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains_are_star_autonomous() {
        for n in 2..=6 {
            assert_eq!(mv_chain(n).unwrap().validate(), Vec::<String>::new());
        }
        assert!(mv_chain(1).is_err());
    }

    #[test]
    fn three_chain_arithmetic() {
        let v = mv_chain(3).unwrap();
        let half = v.elements.position("1/2").unwrap();
        assert_eq!(v.tensor(half, half), v.elements.position("0").unwrap());
        assert_eq!(v.par(half, half), v.elements.position("1").unwrap());
    }

    #[test]
    fn identity_is_a_unit_and_de_morgan_holds() {
        let v = mv_chain(3).unwrap();
        let m = MVMatrix::from_rows(2, 2, vec![0, 1, 2, 1]).unwrap();
        let n = MVMatrix::from_rows(2, 2, vec![2, 0, 1, 1]).unwrap();
        let id = MVMatrix::identity(&v, &m.src);
        assert_eq!(mat_compose_plus(&m, &id, &v).unwrap(), m);
        let lhs = mat_compose_plus(&n, &m, &v).unwrap().dual(&v);
        let rhs = mat_compose_minus(&m.dual(&v), &n.dual(&v), &v).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn law_box_small_sweep() {
        for n in 2..=4 {
            let v = mv_chain(n).unwrap();
            for s in law_box(&v, 300, 7).unwrap() {
                assert!(s.passed(), "chain {n}, law {}: {:?}", s.law, s.first_failure);
            }
        }
    }

    #[test]
    fn matrix_files() {
        let v = mv_chain(3).unwrap();
        let text = r#"[
            {"kind": "matrix", "name": "M", "src": ["a0", "a1"], "tgt": ["b"], "entries": [["1/2", "1"]]},
            {"kind": "vector", "name": "R", "over": ["a0", "a1"], "entries": ["1", "1/2"]}
        ]"#;
        let f = parse_matrix_file(text, &v).unwrap();
        let (m, r) = (f.matrix("M").unwrap(), f.vector("R").unwrap());
        assert_eq!(m.entries, vec![1, 2]);
        // ½⊗1 ⊕ 1⊗½ = ½
        assert_eq!(mat_exists(m, &r.entries, &v).unwrap(), vec![1]);
        assert_eq!(render_matrix(m, &v), "\ta0\ta1\nb\t1/2\t1\n");
        assert_eq!(render_vector(&r.over, &r.entries, &v), "a0\t1\na1\t1/2\n");
        assert!(matches!(f.matrix("N"), Err(Error::Unresolved(_))));

        let bad = r#"{"kind": "matrix", "name": "M", "src": ["a"], "tgt": ["b", "c"], "entries": [["1/3"]]}"#;
        match parse_matrix_file(bad, &v) {
            Err(Error::Invalid { violations, .. }) => assert_eq!(violations.len(), 2, "{violations:?}"),
            other => panic!("{other:?}"),
        }
    }
}
