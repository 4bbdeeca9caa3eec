//! The finite corpus that law suites sweep: every category with at most
//! three objects and two non-identity arrows up to isomorphism, plus
//! deterministic families of presheaves, distributors and functors over
//! them.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::category::Category;
use crate::distributor::Distributor;
use crate::error::{Error, Result};
use crate::functor::Functor;
use crate::presheaf::{Presheaf, Variance};

/// Largest value of any presheaf or distributor in the corpus.
pub const MAX_VALUE: usize = 2;

const MAX_OBJECTS: usize = 3;
const MAX_ARROWS: usize = 2;

/// A category with the name it is reported under.
#[derive(Debug, Clone)]
pub struct Entry {
    pub name: String,
    pub category: Arc<Category>,
}

/// Canonical key of a category up to isomorphism: the least encoding over
/// all relabellings of objects and non-identity arrows.
fn iso_key(c: &Category) -> Vec<usize> {
    let n = c.num_objects();
    let arrows: Vec<usize> = (0..c.num_morphisms()).filter(|&f| !c.is_identity(f)).collect();
    let k = arrows.len();
    let mut best: Option<Vec<usize>> = None;
    for sigma in permutations(n) {
        for pi in permutations(k) {
            // pi[new] = old position in `arrows`
            let mut key = vec![n, k];
            let new_of = |f: usize| -> usize {
                if c.is_identity(f) {
                    0
                } else {
                    1 + pi.iter().position(|&p| arrows[p] == f).expect("arrow")
                }
            };
            for &p in &pi {
                let f = arrows[p];
                key.push(sigma[c.src(f)]);
                key.push(sigma[c.tgt(f)]);
            }
            for &pg in &pi {
                for &pf in &pi {
                    key.push(c.compose(arrows[pg], arrows[pf]).map_or(usize::MAX, new_of));
                }
            }
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    best.unwrap_or_default()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn cartesian(options: &[Vec<usize>]) -> Vec<Vec<usize>> {
    options.iter().fold(vec![vec![]], |acc, opts| {
        acc.iter().flat_map(|p| opts.iter().map(move |&o| p.iter().copied().chain([o]).collect())).collect()
    })
}

/// Every valid category with `1..=3` objects and at most two non-identity
/// arrows, one representative per isomorphism class, in a fixed order.
pub fn enumerate_small() -> Vec<Arc<Category>> {
    let objects = ["0", "1", "2"];
    let labels = ["f", "g"];
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for n in 1..=MAX_OBJECTS {
        for k in 0..=MAX_ARROWS {
            let ends: Vec<Vec<usize>> = vec![(0..n * n).collect(); k];
            for shape in cartesian(&ends) {
                let st: Vec<(usize, usize)> = shape.iter().map(|&e| (e / n, e % n)).collect();
                // composable pairs (g, f) and the possible composites
                let mut pairs = Vec::new();
                let mut options = Vec::new();
                for g in 0..k {
                    for f in 0..k {
                        if st[f].1 != st[g].0 {
                            continue;
                        }
                        let (s, t) = (st[f].0, st[g].1);
                        let mut opts: Vec<usize> = (0..k).filter(|&h| st[h] == (s, t)).map(|h| h + 1).collect();
                        if s == t {
                            opts.push(0);
                        }
                        pairs.push((g, f));
                        options.push(opts);
                    }
                }
                for choice in cartesian(&options) {
                    let arrows: Vec<(&str, &str, &str)> =
                        (0..k).map(|i| (labels[i], objects[st[i].0], objects[st[i].1])).collect();
                    let ids: Vec<String> = (0..n).map(|x| format!("id_{}", objects[x])).collect();
                    let comp: Vec<(&str, &str, &str)> = pairs
                        .iter()
                        .zip(&choice)
                        .map(|(&(g, f), &h)| {
                            let h = if h == 0 { ids[st[f].0].as_str() } else { labels[h - 1] };
                            (labels[g], labels[f], h)
                        })
                        .collect();
                    let Ok(c) = Category::from_presentation(&objects[..n], &arrows, &comp) else { continue };
                    if !c.validate().is_empty() {
                        continue;
                    }
                    if seen.insert(iso_key(&c)) {
                        out.push(Arc::new(c));
                    }
                }
            }
        }
    }
    out
}

/// The named members, in the order they are reported.
pub fn named() -> Vec<Entry> {
    [
        ("terminal", Category::terminal()),
        ("discrete2", Category::discrete(2)),
        ("walking_arrow", Category::walking_arrow()),
        ("cospan", Category::cospan()),
        ("parallel_pair", Category::parallel_pair()),
    ]
    .into_iter()
    .map(|(n, c)| Entry { name: n.into(), category: Arc::new(c) })
    .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Size {
    /// The named categories only.
    Small,
    /// Every small category up to isomorphism.
    Full,
}

impl std::str::FromStr for Size {
    type Err = Error;
    fn from_str(s: &str) -> Result<Size> {
        match s {
            "small" => Ok(Size::Small),
            "full" => Ok(Size::Full),
            other => Err(Error::Format(format!("unknown corpus `{other}`, expected small or full"))),
        }
    }
}

/// The categories of a corpus. Enumerated categories isomorphic to a named
/// one are reported under the name.
pub fn categories(size: Size) -> Vec<Entry> {
    let named = named();
    if size == Size::Small {
        return named;
    }
    let keys: Vec<Vec<usize>> = named.iter().map(|e| iso_key(&e.category)).collect();
    let mut out = named.clone();
    for (i, c) in enumerate_small().into_iter().enumerate() {
        if !keys.contains(&iso_key(&c)) {
            let name = format!("c{}_{}_{i}", c.num_objects(), c.non_identity_count());
            out.push(Entry { name, category: c });
        }
    }
    out
}

/// Chooses at most `per` items deterministically: everything when it fits,
/// otherwise a seeded sample kept in enumeration order.
fn choose<T: Clone>(all: Vec<T>, per: usize, seed: u64) -> Vec<T> {
    if all.len() <= per {
        return all;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx = sample(&mut rng, all.len(), per).into_vec();
    idx.sort_unstable();
    idx.into_iter().map(|i| all[i].clone()).collect()
}

/// Enumeration is abandoned in favour of random draws beyond this many.
const ENUM_CAP: usize = 4096;

/// Presheaves over `c` with values of size at most two: all of them when
/// there are at most `per`, a seeded sample otherwise.
pub fn presheaves(c: &Arc<Category>, variance: Variance, per: usize, seed: u64) -> Vec<Presheaf> {
    match Presheaf::enumerate(c, variance, MAX_VALUE, ENUM_CAP) {
        Ok(all) => choose(all, per, seed),
        Err(_) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..per).map(|_| Presheaf::random(c, variance, MAX_VALUE, &mut rng)).collect()
        }
    }
}

/// Distributors `a ⇸ b` with values of size at most two, chosen as for
/// [`presheaves`].
pub fn distributors(a: &Arc<Category>, b: &Arc<Category>, per: usize, seed: u64) -> Vec<Distributor> {
    match Distributor::enumerate(a, b, MAX_VALUE, ENUM_CAP) {
        Ok(all) => choose(all, per, seed),
        Err(_) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..per).map(|_| Distributor::random(a, b, MAX_VALUE, &mut rng)).collect()
        }
    }
}

/// Every functor between corpus members, capped per pair.
pub fn functors(cats: &[Entry], per_pair: usize) -> Vec<(String, Functor)> {
    let mut out = Vec::new();
    for a in cats {
        for b in cats {
            if let Ok(fs) = Functor::enumerate(&a.category, &b.category, per_pair) {
                for (i, f) in fs.into_iter().enumerate() {
                    out.push((format!("{}->{}#{i}", a.name, b.name), f));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_is_closed_and_deduplicated() {
        let cats = enumerate_small();
        assert!(cats.iter().all(|c| c.validate().is_empty()));
        let keys: BTreeSet<_> = cats.iter().map(|c| iso_key(c)).collect();
        assert_eq!(keys.len(), cats.len());
        // one object: trivial, idempotent, involution, and the two-arrow monoids
        let one = cats.iter().filter(|c| c.num_objects() == 1).count();
        let one_arrow = cats.iter().filter(|c| c.num_objects() == 1 && c.non_identity_count() == 1).count();
        assert_eq!(one_arrow, 2);
        assert!(one > 3);
    }

    #[test]
    fn named_members_are_found_among_enumerated() {
        let keys: BTreeSet<_> = enumerate_small().iter().map(|c| iso_key(c)).collect();
        for e in named() {
            assert!(keys.contains(&iso_key(&e.category)), "{}", e.name);
        }
        assert_eq!(categories(Size::Full).len(), keys.len());
    }

    #[test]
    fn iso_key_ignores_labels() {
        assert_eq!(iso_key(&Category::cospan().opposite()), iso_key(&Category::span()));
        assert_ne!(iso_key(&Category::cospan()), iso_key(&Category::span()));
    }
}
