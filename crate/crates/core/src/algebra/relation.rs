use std::collections::{BTreeMap, BTreeSet};

use super::{Mapping, Universe};
use crate::logic::FourValue;
use crate::model::Variable;

/// What the mappings of a relation range over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    /// Every mapping from the in-scope variables into a finite universe.
    Active(Universe),
    /// Every mapping into all IRIs and quoted triples.
    Open,
}

/// A total function from mappings over `vars` to [`FourValue`], stored as a
/// default plus a finite exception table.
///
/// Invariants: every exception key has domain exactly `vars`; no exception
/// carries the default.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourRelation {
    vars: BTreeSet<Variable>,
    default: FourValue,
    exceptions: BTreeMap<Mapping, FourValue>,
    domain: Domain,
}

impl FourRelation {
    pub fn constant(vars: BTreeSet<Variable>, default: FourValue, domain: Domain) -> FourRelation {
        FourRelation {
            vars,
            default,
            exceptions: BTreeMap::new(),
            domain,
        }
    }

    pub fn from_parts<I>(
        vars: BTreeSet<Variable>,
        default: FourValue,
        entries: I,
        domain: Domain,
    ) -> FourRelation
    where
        I: IntoIterator<Item = (Mapping, FourValue)>,
    {
        let mut r = FourRelation::constant(vars, default, domain);
        for (m, v) in entries {
            r.insert(m, v);
        }
        r
    }

    pub(crate) fn insert(&mut self, m: Mapping, v: FourValue) {
        debug_assert_eq!(m.len(), self.vars.len(), "mapping {m} does not match relation scope");
        if v == self.default {
            self.exceptions.remove(&m);
        } else {
            self.exceptions.insert(m, v);
        }
    }

    pub fn vars(&self) -> &BTreeSet<Variable> {
        &self.vars
    }

    pub fn default_value(&self) -> FourValue {
        self.default
    }

    pub fn exceptions(&self) -> &BTreeMap<Mapping, FourValue> {
        &self.exceptions
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn universe(&self) -> Option<&Universe> {
        match &self.domain {
            Domain::Active(u) => Some(u),
            Domain::Open => None,
        }
    }

    /// `R(μ)`; variables outside the scope are ignored.
    pub fn value_at(&self, m: &Mapping) -> FourValue {
        let hit = if m.len() == self.vars.len() {
            self.exceptions.get(m)
        } else {
            self.exceptions.get(&m.restrict(&self.vars))
        };
        hit.copied().unwrap_or(self.default)
    }

    /// Number of mappings in the domain; `None` when infinite.
    pub fn mapping_count(&self) -> Option<u128> {
        match &self.domain {
            Domain::Active(u) => Some(u.count(self.vars.len())),
            Domain::Open if self.vars.is_empty() => Some(1),
            Domain::Open => None,
        }
    }

    /// Whether some mapping takes the default value.
    pub fn default_attained(&self) -> bool {
        self.mapping_count()
            .map_or(true, |n| (self.exceptions.len() as u128) < n)
    }

    /// When every mapping is an exception, re-chooses the default as the
    /// most frequent value so the table is as small as possible.
    pub(crate) fn normalize(&mut self) {
        if self.default_attained() || self.exceptions.is_empty() {
            return;
        }
        let mut counts = [0usize; 4];
        for v in self.exceptions.values() {
            counts[FourValue::ALL.iter().position(|x| x == v).unwrap()] += 1;
        }
        let (best, _) = FourValue::ALL
            .into_iter()
            .zip(counts)
            .max_by_key(|&(v, c)| (c, std::cmp::Reverse(v)))
            .unwrap();
        self.default = best;
        self.exceptions.retain(|_, v| *v != best);
    }

    pub(crate) fn with_domain(mut self, domain: Domain) -> FourRelation {
        self.domain = domain;
        self
    }

    /// Equality as total functions.
    pub fn equivalent(&self, other: &FourRelation) -> bool {
        if self.vars != other.vars || self.domain != other.domain {
            return false;
        }
        let keys: BTreeSet<&Mapping> = self.exceptions.keys().chain(other.exceptions.keys()).collect();
        if keys.iter().any(|m| self.value_at(m) != other.value_at(m)) {
            return false;
        }
        let covered = self
            .mapping_count()
            .map_or(false, |n| keys.len() as u128 >= n);
        covered || self.default == other.default
    }

    /// Exceptions sorted by variable name, then term text.
    pub fn sorted_exceptions(&self) -> Vec<(&Mapping, FourValue)> {
        let mut rows: Vec<(Vec<String>, &Mapping, FourValue)> = self
            .exceptions
            .iter()
            .map(|(m, &v)| {
                let key = self
                    .vars
                    .iter()
                    .map(|x| m.get(x).map(|t| t.to_string()).unwrap_or_default())
                    .collect();
                (key, m, v)
            })
            .collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        rows.into_iter().map(|(_, m, v)| (m, v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Iri, Term};

    fn t(s: &str) -> Term {
        Term::Iri(Iri::new(format!("urn:{s}")).unwrap())
    }

    fn one_var(x: &str) -> BTreeSet<Variable> {
        BTreeSet::from([Variable::new(x)])
    }

    fn m(x: &str, v: &str) -> Mapping {
        Mapping::from_pairs([(Variable::new(x), t(v))])
    }

    #[test]
    fn insert_keeps_canonical_form() {
        let u = Universe::new([t("a"), t("b"), t("c")]);
        let mut r = FourRelation::constant(one_var("x"), FourValue::Unknown, Domain::Active(u));
        r.insert(m("x", "a"), FourValue::True);
        r.insert(m("x", "b"), FourValue::Unknown);
        assert_eq!(r.exceptions().len(), 1);
        assert_eq!(r.value_at(&m("x", "c")), FourValue::Unknown);
    }

    #[test]
    fn equivalence_ignores_unreachable_default() {
        let u = Universe::new([t("a"), t("b")]);
        let d = Domain::Active(u);
        let r1 = FourRelation::from_parts(
            one_var("x"),
            FourValue::True,
            [(m("x", "b"), FourValue::False)],
            d.clone(),
        );
        let r2 = FourRelation::from_parts(
            one_var("x"),
            FourValue::False,
            [(m("x", "a"), FourValue::True)],
            d.clone(),
        );
        let r3 = FourRelation::from_parts(
            one_var("x"),
            FourValue::Conflict,
            [(m("x", "a"), FourValue::True), (m("x", "b"), FourValue::False)],
            d,
        );
        assert!(r1.equivalent(&r2));
        assert!(r1.equivalent(&r3));
        let mut r4 = r3.clone();
        r4.normalize();
        assert!(r4.default_attained());
        assert!(r4.equivalent(&r1));
    }

    #[test]
    fn sorted_by_term_text() {
        let u = Universe::new([t("a"), t("b")]);
        let r = FourRelation::from_parts(
            one_var("x"),
            FourValue::Unknown,
            [(m("x", "b"), FourValue::True), (m("x", "a"), FourValue::False)],
            Domain::Active(u),
        );
        let rows = r.sorted_exceptions();
        assert_eq!(rows[0].0, &m("x", "a"));
    }
}
