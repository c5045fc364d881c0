//! Rendering relations as text tables, JSON lines or CSV.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::algebra::FourRelation;
use crate::model::{Iri, StarTriple, Term, RDF_TYPE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    JsonLines,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "table" => Ok(Format::Table),
            "json-lines" => Ok(Format::JsonLines),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}` (expected table, json-lines or csv)")),
        }
    }
}

/// How IRIs are written in result cells.
#[derive(Debug, Clone, Default)]
pub struct TermStyle {
    /// IRIs under this prefix are written as their local name.
    pub base: Option<String>,
}

impl TermStyle {
    pub fn with_base(base: impl Into<String>) -> TermStyle {
        TermStyle {
            base: Some(base.into()),
        }
    }

    /// A result cell: bare local names at the top level, bracketed IRIs
    /// inside quoted triples.
    pub fn cell(&self, t: &Term) -> String {
        match t {
            Term::Iri(iri) => match self.local(iri) {
                Some(name) => name.to_owned(),
                None => iri.to_string(),
            },
            Term::Triple(triple) => self.quoted(triple),
        }
    }

    fn local<'a>(&self, iri: &'a Iri) -> Option<&'a str> {
        let base = self.base.as_deref()?;
        iri.as_str().strip_prefix(base).filter(|rest| !rest.is_empty())
    }

    fn nested(&self, t: &Term) -> String {
        match t {
            Term::Iri(iri) => match self.local(iri) {
                Some(name) => format!("<{name}>"),
                None => iri.to_string(),
            },
            Term::Triple(triple) => self.quoted(triple),
        }
    }

    fn quoted(&self, t: &StarTriple) -> String {
        let predicate = if t.predicate.as_str() == RDF_TYPE {
            "a".to_owned()
        } else {
            self.nested(&Term::Iri(t.predicate.clone()))
        };
        format!("<< {} {predicate} {} >>", self.nested(&t.subject), self.nested(&t.object))
    }
}

/// Header plus one row per exception in canonical order, and a wildcard row
/// carrying the default when `show_default` is set.
fn rows(r: &FourRelation, style: &TermStyle, show_default: bool) -> (Vec<String>, Vec<Vec<String>>) {
    let mut header: Vec<String> = r.vars().iter().map(|v| v.name().to_owned()).collect();
    header.push("state".into());
    let mut out = Vec::new();
    for (m, v) in r.sorted_exceptions() {
        let mut row: Vec<String> = r
            .vars()
            .iter()
            .map(|var| m.get(var).map(|t| style.cell(t)).unwrap_or_default())
            .collect();
        row.push(v.to_string());
        out.push(row);
    }
    if show_default {
        let mut row = vec!["*".to_owned(); r.vars().len()];
        row.push(r.default_value().to_string());
        out.push(row);
    }
    (header, out)
}

pub fn serialize_relation(r: &FourRelation, format: Format, show_default: bool, style: &TermStyle) -> String {
    let (header, body) = rows(r, style, show_default);
    match format {
        Format::Table => table(&header, &body),
        Format::JsonLines => {
            let mut out = String::new();
            for row in &body {
                let fields: Vec<String> = header
                    .iter()
                    .zip(row)
                    .map(|(k, v)| {
                        format!(
                            "{}:{}",
                            serde_json::Value::String(k.clone()),
                            serde_json::Value::String(v.clone())
                        )
                    })
                    .collect();
                writeln!(out, "{{{}}}", fields.join(",")).unwrap();
            }
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header).expect("in-memory write");
            for row in &body {
                w.write_record(row).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 input")
        }
    }
}

fn table(header: &[String], body: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let last = cells.len() - 1;
        let parts: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == last {
                    c.clone()
                } else {
                    format!("{c:<width$}", width = widths[i])
                }
            })
            .collect();
        parts.join(" | ")
    };
    let mut out = String::new();
    writeln!(out, "{}", line(header)).unwrap();
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    writeln!(out, "{}", rule.join("-+-")).unwrap();
    for row in body {
        writeln!(out, "{}", line(row)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{eval, Domain, EvalMode, Mapping};
    use crate::fixtures::{self, data, var, DATA_BASE};
    use crate::logic::FourValue;
    use crate::model::BeliefVocabulary;
    use std::collections::BTreeSet;

    fn u1() -> FourRelation {
        let vocab = BeliefVocabulary::default();
        eval(&fixtures::u1(), &fixtures::table1(&vocab), &vocab, EvalMode::ActiveDomain).unwrap()
    }

    #[test]
    fn u1_table() {
        let text = serialize_relation(&u1(), Format::Table, true, &TermStyle::with_base(DATA_BASE));
        assert_eq!(text, "deity | state\n------+--------\nJesus | true\n*     | unknown\n");
    }

    #[test]
    fn json_lines_and_csv() {
        let style = TermStyle::with_base(DATA_BASE);
        let text = serialize_relation(&u1(), Format::JsonLines, false, &style);
        assert_eq!(text, "{\"deity\":\"Jesus\",\"state\":\"true\"}\n");
        let text = serialize_relation(&u1(), Format::Csv, true, &style);
        assert_eq!(text, "deity,state\nJesus,true\n*,unknown\n");
    }

    #[test]
    fn empty_relation_prints_nothing_as_json() {
        let r = FourRelation::constant(BTreeSet::from([var("x")]), FourValue::Unknown, Domain::Open);
        assert_eq!(serialize_relation(&r, Format::JsonLines, false, &TermStyle::default()), "");
    }

    #[test]
    fn quoted_cells() {
        let style = TermStyle::with_base(DATA_BASE);
        assert_eq!(style.cell(&Term::from(fixtures::t9())), "<< <Jesus> a <FullDeity> >>");
        assert_eq!(TermStyle::default().cell(&Term::Iri(data("Jesus"))), format!("<{DATA_BASE}Jesus>"));
        let r = FourRelation::from_parts(
            BTreeSet::from([var("t")]),
            FourValue::Unknown,
            [(Mapping::from_pairs([(var("t"), Term::from(fixtures::t9()))]), FourValue::True)],
            Domain::Open,
        );
        let text = serialize_relation(&r, Format::Csv, false, &style);
        assert_eq!(text, "t,state\n<< <Jesus> a <FullDeity> >>,true\n");
    }
}
