use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::model::{Term, Variable};

/// A solution mapping: a finite partial function from variables to terms.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mapping(BTreeMap<Variable, Term>);

impl Mapping {
    pub fn new() -> Mapping {
        Mapping::default()
    }

    pub fn from_map(map: BTreeMap<Variable, Term>) -> Mapping {
        Mapping(map)
    }

    pub fn from_pairs<I>(pairs: I) -> Mapping
    where
        I: IntoIterator<Item = (Variable, Term)>,
    {
        Mapping(pairs.into_iter().collect())
    }

    pub fn get(&self, v: &Variable) -> Option<&Term> {
        self.0.get(v)
    }

    pub fn insert(&mut self, v: Variable, t: Term) -> Option<Term> {
        self.0.insert(v, t)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: &Variable) -> bool {
        self.0.contains_key(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Variable, &Term)> {
        self.0.iter()
    }

    pub fn domain(&self) -> BTreeSet<Variable> {
        self.0.keys().cloned().collect()
    }

    pub fn values(&self) -> impl Iterator<Item = &Term> {
        self.0.values()
    }

    /// `μ|W`.
    pub fn restrict(&self, vars: &BTreeSet<Variable>) -> Mapping {
        Mapping(
            self.0
                .iter()
                .filter(|(v, _)| vars.contains(*v))
                .map(|(v, t)| (v.clone(), t.clone()))
                .collect(),
        )
    }

    pub fn compatible(&self, other: &Mapping) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .0
            .iter()
            .all(|(v, t)| large.0.get(v).map_or(true, |u| u == t))
    }

    /// `μ ∪ μ'`, defined only for compatible mappings.
    pub fn union(&self, other: &Mapping) -> Option<Mapping> {
        if !self.compatible(other) {
            return None;
        }
        let mut out = self.0.clone();
        out.extend(other.0.iter().map(|(v, t)| (v.clone(), t.clone())));
        Some(Mapping(out))
    }
}

impl FromIterator<(Variable, Term)> for Mapping {
    fn from_iter<I: IntoIterator<Item = (Variable, Term)>>(iter: I) -> Self {
        Mapping(iter.into_iter().collect())
    }
}

impl fmt::Display for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} → {t}")?;
        }
        f.write_str("}")
    }
}

/// The finite set of terms variables range over, in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Universe(Arc<[Term]>);

impl Universe {
    pub fn new<I: IntoIterator<Item = Term>>(terms: I) -> Universe {
        let set: BTreeSet<Term> = terms.into_iter().collect();
        Universe(set.into_iter().collect())
    }

    pub fn terms(&self) -> &[Term] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.0.binary_search(t).is_ok()
    }

    /// `|U|^k`, saturating.
    pub fn count(&self, k: usize) -> u128 {
        let n = self.0.len() as u128;
        (0..k).fold(1u128, |acc, _| acc.saturating_mul(n))
    }

    /// Every mapping with domain exactly `vars`, in lexicographic order.
    pub fn mappings<'a>(&'a self, vars: &'a BTreeSet<Variable>) -> Assignments<'a> {
        self.extensions(Mapping::new(), vars)
    }

    /// Every extension of `base` by the variables in `vars` not already
    /// bound in `base`.
    pub fn extensions<'a>(&'a self, base: Mapping, vars: &BTreeSet<Variable>) -> Assignments<'a> {
        let free: Vec<Variable> = vars.iter().filter(|v| !base.contains(v)).cloned().collect();
        let exhausted = !free.is_empty() && self.0.is_empty();
        Assignments {
            universe: &self.0,
            indices: vec![0; free.len()],
            free,
            base,
            done: exhausted,
        }
    }
}

/// Odometer over assignments of free variables to universe terms.
pub struct Assignments<'a> {
    universe: &'a [Term],
    free: Vec<Variable>,
    indices: Vec<usize>,
    base: Mapping,
    done: bool,
}

impl Iterator for Assignments<'_> {
    type Item = Mapping;

    fn next(&mut self) -> Option<Mapping> {
        if self.done {
            return None;
        }
        let mut m = self.base.clone();
        for (v, &i) in self.free.iter().zip(&self.indices) {
            m.insert(v.clone(), self.universe[i].clone());
        }
        // advance, last variable fastest
        let mut pos = self.indices.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.indices[pos] += 1;
            if self.indices[pos] < self.universe.len() {
                break;
            }
            self.indices[pos] = 0;
        }
        Some(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Iri;

    fn t(s: &str) -> Term {
        Term::Iri(Iri::new(format!("urn:{s}")).unwrap())
    }

    fn vars(names: &[&str]) -> BTreeSet<Variable> {
        names.iter().map(Variable::new).collect()
    }

    #[test]
    fn compatibility_and_union() {
        let x = Variable::new("x");
        let y = Variable::new("y");
        let a = Mapping::from_pairs([(x.clone(), t("a"))]);
        let b = Mapping::from_pairs([(x.clone(), t("a")), (y.clone(), t("b"))]);
        let c = Mapping::from_pairs([(x.clone(), t("c"))]);
        assert!(a.compatible(&b));
        assert!(!a.compatible(&c));
        assert_eq!(a.union(&b), Some(b.clone()));
        assert_eq!(a.union(&c), None);
        assert_eq!(b.restrict(&vars(&["x"])), a);
    }

    #[test]
    fn enumeration_counts() {
        let u = Universe::new([t("a"), t("b"), t("c")]);
        assert_eq!(u.mappings(&vars(&["x", "y"])).count(), 9);
        assert_eq!(u.mappings(&vars(&[])).count(), 1);
        assert_eq!(u.count(2), 9);
        let empty = Universe::new([]);
        assert_eq!(empty.mappings(&vars(&["x"])).count(), 0);
        assert_eq!(empty.mappings(&vars(&[])).count(), 1);
    }

    #[test]
    fn extensions_keep_base() {
        let u = Universe::new([t("a"), t("b")]);
        let base = Mapping::from_pairs([(Variable::new("x"), t("a"))]);
        let all: Vec<_> = u.extensions(base.clone(), &vars(&["x", "y"])).collect();
        assert_eq!(all.len(), 2);
        assert!(all.iter().all(|m| m.get(&Variable::new("x")) == Some(&t("a"))));
    }
}
