//! Finite sets with labelled elements, and total maps between them.
//!
//! Elements are addressed by index. A set remembers the order in which a
//! construction produced its elements, so structured constructions (products,
//! function spaces) can decode indices arithmetically; everything that is
//! printed goes through [`FinSet::canonical_order`], which sorts by label.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FinSet {
    labels: Vec<String>,
}

impl FinSet {
    /// Builds a set, rejecting duplicate labels.
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Invalid {
                    kind: "finite set".into(),
                    violations: vec![format!("duplicate element label `{l}`")],
                });
            }
        }
        Ok(FinSet { labels })
    }

    /// Builds a set from labels that are distinct by construction.
    pub(crate) fn from_distinct(labels: Vec<String>) -> Self {
        debug_assert_eq!(labels.iter().collect::<HashSet<_>>().len(), labels.len());
        FinSet { labels }
    }

    pub fn empty() -> Self {
        FinSet::default()
    }

    pub fn singleton(label: impl Into<String>) -> Self {
        FinSet { labels: vec![label.into()] }
    }

    /// `{0, 1, ..., n-1}` labelled by decimal numerals.
    pub fn numbered(n: usize) -> Self {
        FinSet { labels: (0..n).map(|i| i.to_string()).collect() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Element indices sorted lexicographically by label.
    pub fn canonical_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        idx
    }

    /// Cartesian product; element `(i, j)` has index `i * other.len() + j`.
    pub fn product(&self, other: &FinSet) -> FinSet {
        let mut labels = Vec::with_capacity(self.len() * other.len());
        for x in &self.labels {
            for y in &other.labels {
                labels.push(format!("({x},{y})"));
            }
        }
        FinSet { labels }
    }

    /// The set of all functions `self -> codomain`, encoded by
    /// [`encode_function`].
    pub fn function_space(&self, codomain: &FinSet) -> Result<FinSet> {
        let n = function_space_size(self.len(), codomain.len())
            .filter(|&n| n <= 1 << 20)
            .ok_or_else(|| {
                Error::cap(
                    "function space",
                    (codomain.len() as u128).saturating_pow(self.len() as u32),
                    1 << 20,
                )
            })?;
        let labels = (0..n)
            .map(|code| {
                let table = decode_function(code, self.len(), codomain.len());
                let body: Vec<String> = table
                    .iter()
                    .enumerate()
                    .map(|(x, &y)| format!("{}>{}", self.labels[x], codomain.labels[y]))
                    .collect();
                format!("{{{}}}", body.join(","))
            })
            .collect();
        Ok(FinSet { labels })
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sorted: Vec<&str> = self.canonical_order().into_iter().map(|i| self.label(i)).collect();
        write!(f, "{{{}}}", sorted.join(", "))
    }
}

/// `|codomain| ^ |domain|`, or `None` on overflow.
pub fn function_space_size(domain: usize, codomain: usize) -> Option<usize> {
    let mut n: usize = 1;
    for _ in 0..domain {
        n = n.checked_mul(codomain)?;
    }
    Some(n)
}

/// Base-`codomain` encoding with the first domain element as least
/// significant digit.
pub fn encode_function(table: &[usize], codomain: usize) -> usize {
    table.iter().rev().fold(0, |acc, &y| acc * codomain + y)
}

pub fn decode_function(mut code: usize, domain: usize, codomain: usize) -> Vec<usize> {
    let mut table = Vec::with_capacity(domain);
    for _ in 0..domain {
        table.push(code % codomain.max(1));
        code /= codomain.max(1);
    }
    table
}

/// A total map between finite sets, stored as an index table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SetMap {
    pub table: Vec<usize>,
    pub codomain: usize,
}

impl SetMap {
    pub fn new(table: Vec<usize>, codomain: usize) -> Self {
        SetMap { table, codomain }
    }

    pub fn identity(n: usize) -> Self {
        SetMap { table: (0..n).collect(), codomain: n }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn domain(&self) -> usize {
        self.table.len()
    }

    pub fn is_total(&self) -> bool {
        self.table.iter().all(|&y| y < self.codomain)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SetMap) -> SetMap {
        SetMap { table: first.table.iter().map(|&x| self.table[x]).collect(), codomain: self.codomain }
    }

    /// First pair of distinct elements with the same image.
    pub fn collision(&self) -> Option<(usize, usize)> {
        let mut seen = vec![usize::MAX; self.codomain];
        for (x, &y) in self.table.iter().enumerate() {
            if seen[y] != usize::MAX {
                return Some((seen[y], x));
            }
            seen[y] = x;
        }
        None
    }

    /// First codomain element outside the image.
    pub fn missed(&self) -> Option<usize> {
        let mut hit = vec![false; self.codomain];
        for &y in &self.table {
            hit[y] = true;
        }
        hit.iter().position(|h| !h)
    }

    pub fn is_bijective(&self) -> bool {
        self.domain() == self.codomain && self.collision().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_labels_rejected() {
        assert!(FinSet::new(vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn function_space_counts() {
        let x = FinSet::numbered(2);
        let y = FinSet::numbered(3);
        assert_eq!(x.function_space(&y).unwrap().len(), 9);
        assert_eq!(FinSet::empty().function_space(&y).unwrap().len(), 1);
        assert_eq!(x.function_space(&FinSet::empty()).unwrap().len(), 0);
    }

    #[test]
    fn function_codes_round_trip() {
        for code in 0..27 {
            let t = decode_function(code, 3, 3);
            assert_eq!(encode_function(&t, 3), code);
        }
    }

    #[test]
    fn bijection_witnesses() {
        let m = SetMap::new(vec![1, 1], 2);
        assert_eq!(m.collision(), Some((0, 1)));
        assert_eq!(m.missed(), Some(0));
        assert!(SetMap::identity(3).is_bijective());
    }
}
