//! JSON documents for categories, functors, presheaves and distributors,
//! and workspaces built from directories of them.
//!
//! Every document carries a `kind` and a `name`. Identities are implicit:
//! they are never listed as arrows, and tables only mention non-identity
//! arrows. A file holds one document or an array of them.
//!
//! ```json
//! {"kind": "category", "name": "A", "objects": ["0", "1"],
//!  "arrows": {"f": ["0", "1"]}, "compose": {}}
//! {"kind": "functor", "name": "F", "src": "A", "tgt": "B",
//!  "objects": {"0": "x", "1": "y"}, "arrows": {"f": "u"}}
//! {"kind": "presheaf", "name": "R", "base": "A", "variance": "contra",
//!  "values": {"0": ["a"], "1": ["b", "c"]}, "actions": {"f": {"b": "a", "c": "a"}}}
//! {"kind": "distributor", "name": "M", "src": "A", "tgt": "B",
//!  "values": {"y": {"0": ["m"]}},
//!  "left": {"g": {"0": {"m": "m'"}}}, "right": {"f": {"y": {"m": "n"}}}}
//! ```
//!
//! `compose` maps `g` to a map from `f` to `g∘f`. A presheaf base is a
//! category expression such as `product(A, op(B))`. For a distributor
//! `M : A ⇸ B`, `values[b][a]` is `M(b,a)`, `left[g][a]` is the action of
//! `g : b' -> b` from `M(b,a)` to `M(b',a)`, and `right[f][b]` the action
//! of `f : a -> a'` from `M(b,a)` to `M(b,a')`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::category::Category;
use crate::diagrams::{parse_cat, CatRef, DistDecl, Model, PresheafDecl};
use crate::distributor::Distributor;
use crate::error::{Error, Result};
use crate::finset::{FinSet, SetMap};
use crate::functor::Functor;
use crate::presheaf::{Presheaf, Variance};

type Table = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Document {
    Category(CategoryDoc),
    Functor(FunctorDoc),
    Presheaf(PresheafDoc),
    Distributor(DistributorDoc),
}

impl Document {
    pub fn name(&self) -> &str {
        match self {
            Document::Category(d) => &d.name,
            Document::Functor(d) => &d.name,
            Document::Presheaf(d) => &d.name,
            Document::Distributor(d) => &d.name,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub name: String,
    pub objects: Vec<String>,
    /// Arrow label to `[src, tgt]`.
    #[serde(default)]
    pub arrows: BTreeMap<String, [String; 2]>,
    #[serde(default)]
    pub compose: BTreeMap<String, Table>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    pub name: String,
    pub src: String,
    pub tgt: String,
    pub objects: Table,
    #[serde(default)]
    pub arrows: Table,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafDoc {
    pub name: String,
    pub base: String,
    pub variance: Variance,
    pub values: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub actions: BTreeMap<String, Table>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributorDoc {
    pub name: String,
    pub src: String,
    pub tgt: String,
    pub values: BTreeMap<String, BTreeMap<String, Vec<String>>>,
    #[serde(default)]
    pub left: BTreeMap<String, BTreeMap<String, Table>>,
    #[serde(default)]
    pub right: BTreeMap<String, BTreeMap<String, Table>>,
}

fn bad(kind: &str, name: &str, msg: impl Into<String>) -> Error {
    Error::Invalid { kind: format!("{kind} `{name}`"), violations: vec![msg.into()] }
}

fn object(c: &Category, label: &str, kind: &str, name: &str) -> Result<usize> {
    c.object_index(label).ok_or_else(|| bad(kind, name, format!("unknown object `{label}`")))
}

fn arrow(c: &Category, label: &str, kind: &str, name: &str) -> Result<usize> {
    c.morphism_index(label).ok_or_else(|| bad(kind, name, format!("unknown arrow `{label}`")))
}

fn finset(labels: &[String], kind: &str, name: &str) -> Result<FinSet> {
    FinSet::new(labels.to_vec()).map_err(|e| bad(kind, name, e.to_string()))
}

/// Builds a map from a label table, which must cover the domain.
fn set_map(table: Option<&Table>, dom: &FinSet, cod: &FinSet, what: &str, kind: &str, name: &str) -> Result<SetMap> {
    let empty = Table::new();
    let table = table.unwrap_or(&empty);
    for k in table.keys() {
        if dom.position(k).is_none() {
            return Err(bad(kind, name, format!("{what}: `{k}` is not an element of the domain")));
        }
    }
    let images = dom
        .labels()
        .iter()
        .map(|x| {
            let y = table.get(x).ok_or_else(|| bad(kind, name, format!("{what}: no image for `{x}`")))?;
            cod.position(y).ok_or_else(|| bad(kind, name, format!("{what}: `{y}` is not an element of the codomain")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SetMap::new(images, cod.len()))
}

pub fn category_from_doc(d: &CategoryDoc) -> Result<Category> {
    let objs: Vec<&str> = d.objects.iter().map(String::as_str).collect();
    let arrows: Vec<(&str, &str, &str)> = d.arrows.iter().map(|(l, [s, t])| (l.as_str(), s.as_str(), t.as_str())).collect();
    let compose: Vec<(&str, &str, &str)> = d
        .compose
        .iter()
        .flat_map(|(g, row)| row.iter().map(move |(f, h)| (g.as_str(), f.as_str(), h.as_str())))
        .collect();
    let c = Category::from_presentation(&objs, &arrows, &compose)?;
    c.ensure_valid()?;
    Ok(c)
}

pub fn category_to_doc(name: &str, c: &Category) -> CategoryDoc {
    let label = |f: usize| c.morphism(f).label.clone();
    let real: Vec<usize> = (0..c.num_morphisms()).filter(|&f| !c.is_identity(f)).collect();
    let arrows = real
        .iter()
        .map(|&f| (label(f), [c.object_label(c.src(f)).to_string(), c.object_label(c.tgt(f)).to_string()]))
        .collect();
    let mut compose: BTreeMap<String, Table> = BTreeMap::new();
    for &g in &real {
        for &f in &real {
            if let Some(h) = c.compose(g, f) {
                compose.entry(label(g)).or_default().insert(label(f), label(h));
            }
        }
    }
    CategoryDoc { name: name.into(), objects: c.objects().to_vec(), arrows, compose }
}

pub fn functor_from_doc(d: &FunctorDoc, src: &Arc<Category>, tgt: &Arc<Category>) -> Result<Functor> {
    let k = "functor";
    let on_objects = src
        .objects()
        .iter()
        .map(|x| {
            let y = d.objects.get(x).ok_or_else(|| bad(k, &d.name, format!("no image for object `{x}`")))?;
            object(tgt, y, k, &d.name)
        })
        .collect::<Result<Vec<_>>>()?;
    let on_morphisms = (0..src.num_morphisms())
        .map(|f| {
            if src.is_identity(f) {
                return Ok(tgt.identity(on_objects[src.src(f)]));
            }
            let l = &src.morphism(f).label;
            let g = d.arrows.get(l).ok_or_else(|| bad(k, &d.name, format!("no image for arrow `{l}`")))?;
            arrow(tgt, g, k, &d.name)
        })
        .collect::<Result<Vec<_>>>()?;
    let f = Functor { src: src.clone(), tgt: tgt.clone(), on_objects, on_morphisms };
    f.ensure_valid()?;
    Ok(f)
}

pub fn functor_to_doc(name: &str, src: &str, tgt: &str, f: &Functor) -> FunctorDoc {
    let objects = (0..f.src.num_objects())
        .map(|x| (f.src.object_label(x).to_string(), f.tgt.object_label(f.obj(x)).to_string()))
        .collect();
    let arrows = (0..f.src.num_morphisms())
        .filter(|&m| !f.src.is_identity(m))
        .map(|m| (f.src.morphism(m).label.clone(), f.tgt.morphism(f.mor(m)).label.clone()))
        .collect();
    FunctorDoc { name: name.into(), src: src.into(), tgt: tgt.into(), objects, arrows }
}

pub fn presheaf_from_doc(d: &PresheafDoc, base: &Arc<Category>) -> Result<Presheaf> {
    let k = "presheaf";
    for o in d.values.keys() {
        object(base, o, k, &d.name)?;
    }
    for a in d.actions.keys() {
        let f = arrow(base, a, k, &d.name)?;
        if base.is_identity(f) {
            return Err(bad(k, &d.name, format!("identity `{a}` is implicit")));
        }
    }
    let values = base
        .objects()
        .iter()
        .map(|o| finset(d.values.get(o).map(Vec::as_slice).unwrap_or(&[]), k, &d.name))
        .collect::<Result<Vec<_>>>()?;
    let actions = (0..base.num_morphisms())
        .map(|f| {
            let (s, t) = match d.variance {
                Variance::Contra => (base.tgt(f), base.src(f)),
                Variance::Co => (base.src(f), base.tgt(f)),
            };
            if base.is_identity(f) {
                return Ok(SetMap::identity(values[s].len()));
            }
            let l = &base.morphism(f).label;
            set_map(d.actions.get(l), &values[s], &values[t], &format!("action of `{l}`"), k, &d.name)
        })
        .collect::<Result<Vec<_>>>()?;
    let p = Presheaf { base: base.clone(), variance: d.variance, values, actions };
    p.ensure_valid()?;
    Ok(p)
}

fn map_table(m: &SetMap, dom: &FinSet, cod: &FinSet) -> Table {
    (0..dom.len()).map(|x| (dom.label(x).to_string(), cod.label(m.apply(x)).to_string())).collect()
}

pub fn presheaf_to_doc(name: &str, base: &str, p: &Presheaf) -> PresheafDoc {
    let c = &p.base;
    let values = (0..c.num_objects()).map(|x| (c.object_label(x).to_string(), p.value(x).labels().to_vec())).collect();
    let actions = (0..c.num_morphisms())
        .filter(|&f| !c.is_identity(f))
        .map(|f| {
            let (s, t) = p.edge(f);
            (c.morphism(f).label.clone(), map_table(&p.actions[f], p.value(s), p.value(t)))
        })
        .collect();
    PresheafDoc { name: name.into(), base: base.into(), variance: p.variance, values, actions }
}

pub fn distributor_from_doc(d: &DistributorDoc, src: &Arc<Category>, tgt: &Arc<Category>) -> Result<Distributor> {
    let k = "distributor";
    let name = &d.name;
    for (b, row) in &d.values {
        object(tgt, b, k, name)?;
        for a in row.keys() {
            object(src, a, k, name)?;
        }
    }
    let value = |b: usize, a: usize| -> Result<FinSet> {
        let labels = d.values.get(tgt.object_label(b)).and_then(|row| row.get(src.object_label(a)));
        finset(labels.map(Vec::as_slice).unwrap_or(&[]), k, name)
    };
    let (na, nb) = (src.num_objects(), tgt.num_objects());
    let values = (0..nb).flat_map(|b| (0..na).map(move |a| (b, a))).map(|(b, a)| value(b, a)).collect::<Result<Vec<_>>>()?;
    let val = |b: usize, a: usize| &values[b * na + a];
    let table = |side: &BTreeMap<String, BTreeMap<String, Table>>, f: &str, at: &str| side.get(f).and_then(|m| m.get(at)).cloned();
    let mut left = Vec::new();
    for g in 0..tgt.num_morphisms() {
        for a in 0..na {
            let (b1, b) = (tgt.src(g), tgt.tgt(g));
            left.push(if tgt.is_identity(g) {
                SetMap::identity(val(b, a).len())
            } else {
                let l = &tgt.morphism(g).label;
                let t = table(&d.left, l, src.object_label(a));
                set_map(t.as_ref(), val(b, a), val(b1, a), &format!("left action of `{l}`"), k, name)?
            });
        }
    }
    let mut right = Vec::new();
    for f in 0..src.num_morphisms() {
        for b in 0..nb {
            let (a, a1) = (src.src(f), src.tgt(f));
            right.push(if src.is_identity(f) {
                SetMap::identity(val(b, a).len())
            } else {
                let l = &src.morphism(f).label;
                let t = table(&d.right, l, tgt.object_label(b));
                set_map(t.as_ref(), val(b, a), val(b, a1), &format!("right action of `{l}`"), k, name)?
            });
        }
    }
    let m = Distributor { src: src.clone(), tgt: tgt.clone(), values, left, right };
    m.ensure_valid()?;
    Ok(m)
}

pub fn distributor_to_doc(name: &str, src: &str, tgt: &str, m: &Distributor) -> DistributorDoc {
    let (a, b) = (&m.src, &m.tgt);
    let mut values: BTreeMap<String, BTreeMap<String, Vec<String>>> = BTreeMap::new();
    for y in 0..b.num_objects() {
        for x in 0..a.num_objects() {
            if !m.value(y, x).is_empty() {
                values.entry(b.object_label(y).into()).or_default().insert(a.object_label(x).into(), m.value(y, x).labels().to_vec());
            }
        }
    }
    let mut left: BTreeMap<String, BTreeMap<String, Table>> = BTreeMap::new();
    for g in (0..b.num_morphisms()).filter(|&g| !b.is_identity(g)) {
        for x in 0..a.num_objects() {
            let dom = m.value(b.tgt(g), x);
            if !dom.is_empty() {
                let t = map_table(&m.left[g * a.num_objects() + x], dom, m.value(b.src(g), x));
                left.entry(b.morphism(g).label.clone()).or_default().insert(a.object_label(x).into(), t);
            }
        }
    }
    let mut right: BTreeMap<String, BTreeMap<String, Table>> = BTreeMap::new();
    for f in (0..a.num_morphisms()).filter(|&f| !a.is_identity(f)) {
        for y in 0..b.num_objects() {
            let dom = m.value(y, a.src(f));
            if !dom.is_empty() {
                let t = map_table(&m.right[f * b.num_objects() + y], dom, m.value(y, a.tgt(f)));
                right.entry(a.morphism(f).label.clone()).or_default().insert(b.object_label(y).into(), t);
            }
        }
    }
    DistributorDoc { name: name.into(), src: src.into(), tgt: tgt.into(), values, left, right }
}

/// Parses a file body: one document or an array of them.
pub fn parse_documents(text: &str) -> Result<Vec<Document>> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    Ok(match v {
        serde_json::Value::Array(items) => {
            items.into_iter().map(serde_json::from_value).collect::<std::result::Result<Vec<Document>, _>>()?
        }
        other => vec![serde_json::from_value(other)?],
    })
}

/// Named entities available to expressions and diagrams.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub model: Model,
    pub functors: BTreeMap<String, Functor>,
    /// Source and target names of each functor.
    pub functor_types: BTreeMap<String, (CatRef, CatRef)>,
}

impl Workspace {
    pub fn category(&self, name: &str) -> Result<Arc<Category>> {
        self.model.category(&parse_cat(name)?)
    }

    /// Adds documents in dependency order: categories, then functors,
    /// presheaves and distributors. Every entity is validated.
    pub fn add(&mut self, docs: Vec<Document>) -> Result<()> {
        let mut docs = docs;
        docs.sort_by_key(|d| match d {
            Document::Category(_) => 0,
            _ => 1,
        });
        for d in docs {
            if self.contains(d.name()) {
                return Err(bad("document", d.name(), "name declared twice"));
            }
            match d {
                Document::Category(c) => {
                    let cat = category_from_doc(&c)?;
                    self.model.categories.insert(c.name.clone(), Arc::new(cat));
                }
                Document::Functor(f) => {
                    let (s, t) = (parse_cat(&f.src)?, parse_cat(&f.tgt)?);
                    let v = functor_from_doc(&f, &self.model.category(&s)?, &self.model.category(&t)?)?;
                    self.functors.insert(f.name.clone(), v);
                    self.functor_types.insert(f.name, (s, t));
                }
                Document::Presheaf(p) => {
                    let base = parse_cat(&p.base)?;
                    let value = presheaf_from_doc(&p, &self.model.category(&base)?)?;
                    self.model.presheaves.insert(p.name, PresheafDecl { base, value });
                }
                Document::Distributor(m) => {
                    let (s, t) = (parse_cat(&m.src)?, parse_cat(&m.tgt)?);
                    let value = distributor_from_doc(&m, &self.model.category(&s)?, &self.model.category(&t)?)?;
                    self.model.distributors.insert(m.name, DistDecl { src: s, tgt: t, value });
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.model.categories.contains_key(name)
            || self.model.presheaves.contains_key(name)
            || self.model.distributors.contains_key(name)
            || self.functors.contains_key(name)
    }

    /// Loads every `*.json` file of a directory, in file-name order.
    pub fn load_dir(dir: &Path) -> Result<Workspace> {
        let mut files: Vec<_> = std::fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        Workspace::load_files(&files)
    }

    pub fn load_files(files: &[impl AsRef<Path>]) -> Result<Workspace> {
        let mut docs = Vec::new();
        for f in files {
            let text = std::fs::read_to_string(f.as_ref())?;
            docs.extend(parse_documents(&text).map_err(|e| match e {
                Error::Format(m) => Error::Format(format!("{}: {m}", f.as_ref().display())),
                other => other,
            })?);
        }
        let mut ws = Workspace::default();
        ws.add(docs)?;
        Ok(ws)
    }
}

/// Plain-text tables of a presheaf: one line per object with its elements,
/// one per non-identity arrow with its action.
pub fn render_presheaf(p: &Presheaf) -> String {
    let c = &p.base;
    let mut out = format!("variance {}\n", p.variance);
    for x in 0..c.num_objects() {
        out.push_str(&format!("{} = {}\n", c.object_label(x), p.value(x)));
    }
    for f in (0..c.num_morphisms()).filter(|&f| !c.is_identity(f)) {
        let (s, t) = p.edge(f);
        let body: Vec<String> = (0..p.size(s))
            .map(|e| format!("{}>{}", p.value(s).label(e), p.value(t).label(p.act(f, e))))
            .collect();
        out.push_str(&format!("{} : {{{}}}\n", c.morphism(f).label, body.join(", ")));
    }
    out
}
