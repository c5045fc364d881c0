//! The FourStar graph format.
//!
//! ```text
//! @default unknown .
//! <http://ex.org/a> <http://ex.org/p> << <http://ex.org/b> <http://ex.org/q> <http://ex.org/c> >> @conflicted .
//! ```
//!
//! Statements end with `.`; a missing `@state` means true. Subjects may be
//! quoted triples as well as IRIs.

use std::fmt::Write as _;

use thiserror::Error;

use super::lexer::{tokenize, Cursor, Pos, Tok};
use super::ParseError;
use crate::logic::FourValue;
use crate::model::{FourGraph, Iri, StarTriple, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("line {line}, column {column}: duplicate triple {triple}")]
    DuplicateTriple {
        line: usize,
        column: usize,
        triple: StarTriple,
    },
}

pub fn parse_graph(input: &str) -> Result<FourGraph, GraphError> {
    let mut c = Cursor::new(tokenize(input)?);
    let mut default = FourValue::Unknown;
    if matches!(&c.peek().tok, Tok::At(w) if w == "default") {
        c.bump();
        default = state(&mut c)?;
        c.expect(Tok::Dot)?;
    }
    let mut g = FourGraph::new(default);
    let mut seen = std::collections::BTreeSet::new();
    while c.peek().tok != Tok::Eof {
        if matches!(&c.peek().tok, Tok::At(w) if w == "default") {
            return Err(c.error("a triple (`@default` must come first)").into());
        }
        let Pos { line, column } = c.peek().pos;
        let t = triple(&mut c)?;
        let v = if matches!(c.peek().tok, Tok::At(_)) {
            state_annotation(&mut c)?
        } else {
            FourValue::True
        };
        c.expect(Tok::Dot)?;
        if !seen.insert(t.clone()) {
            return Err(GraphError::DuplicateTriple {
                line,
                column,
                triple: t,
            });
        }
        g.insert(t, v);
    }
    Ok(g)
}

fn state(c: &mut Cursor) -> Result<FourValue, ParseError> {
    match &c.peek().tok {
        Tok::Word(w) => match w.to_ascii_lowercase().parse() {
            Ok(v) => {
                c.bump();
                Ok(v)
            }
            Err(_) => Err(c.error("a state (true, false, unknown, conflicted)")),
        },
        _ => Err(c.error("a state (true, false, unknown, conflicted)")),
    }
}

fn state_annotation(c: &mut Cursor) -> Result<FourValue, ParseError> {
    let expected = "`@true`, `@false`, `@unknown` or `@conflicted`";
    match &c.peek().tok {
        Tok::At(w) => match w.to_ascii_lowercase().parse() {
            Ok(v) => {
                c.bump();
                Ok(v)
            }
            Err(_) => Err(c.error(expected)),
        },
        _ => Err(c.error(expected)),
    }
}

fn iri(c: &mut Cursor) -> Result<Iri, ParseError> {
    match &c.peek().tok {
        Tok::Iri(text) if text.contains(':') => {
            let iri = Iri::new(text).map_err(|e| c.error(e.to_string()))?;
            c.bump();
            Ok(iri)
        }
        Tok::Iri(_) => Err(c.error("an absolute IRI")),
        _ => Err(c.error("an IRI")),
    }
}

fn term(c: &mut Cursor) -> Result<Term, ParseError> {
    if c.peek().tok == Tok::QuoteOpen {
        c.bump();
        let t = triple(c)?;
        c.expect(Tok::QuoteClose)?;
        Ok(Term::from(t))
    } else {
        Ok(Term::Iri(iri(c)?))
    }
}

fn triple(c: &mut Cursor) -> Result<StarTriple, ParseError> {
    let s = term(c)?;
    let p = iri(c)?;
    let o = term(c)?;
    Ok(StarTriple::new(s, p, o))
}

/// Canonical text of `g`: the default line when it is not unknown, then one
/// statement per exception in key order.
pub fn render_graph(g: &FourGraph) -> String {
    let mut out = String::new();
    if g.default_value() != FourValue::Unknown {
        writeln!(out, "@default {} .", g.default_value()).unwrap();
    }
    for (t, v) in g.exceptions() {
        match v {
            FourValue::True => writeln!(out, "{t} .").unwrap(),
            _ => writeln!(out, "{t} @{v} .").unwrap(),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_conflicted_statement() {
        let g = parse_graph("<u:a> <u:b> <u:c> @conflicted .").unwrap();
        assert_eq!(g.len(), 1);
        let t = StarTriple::new(Iri::new("u:a").unwrap(), Iri::new("u:b").unwrap(), Iri::new("u:c").unwrap());
        assert_eq!(g.lookup(&t), FourValue::Conflict);
        assert_eq!(g.default_value(), FourValue::Unknown);
    }

    #[test]
    fn duplicates_are_rejected() {
        let e = parse_graph("<u:a> <u:b> <u:c> .\n<u:a> <u:b> <u:c> @false .").unwrap_err();
        assert!(matches!(e, GraphError::DuplicateTriple { line: 2, column: 1, .. }));
    }

    #[test]
    fn default_must_come_first() {
        let g = parse_graph("# header\n@default false .\n<u:a> <u:b> <u:c> @false .").unwrap();
        assert_eq!(g.default_value(), FourValue::False);
        assert!(g.is_empty());
        assert!(parse_graph("<u:a> <u:b> <u:c> .\n@default false .").is_err());
    }

    #[test]
    fn relative_iris_and_truncation() {
        let e = parse_graph("<a> <u:b> <u:c> .").unwrap_err();
        assert!(matches!(e, GraphError::Parse(ParseError { line: 1, column: 1, .. })));
        let e = parse_graph("<u:a> <u:b> << <u:c> <u:d>").unwrap_err();
        match e {
            GraphError::Parse(p) => assert_eq!(p.found, "end of input"),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn render_round_trip() {
        let text = "@default false .\n<< <u:a> <u:b> <u:c> >> <u:p> << << <u:a> <u:b> <u:c> >> <u:q> <u:d> >> @unknown .\n<u:a> <u:b> <u:c> .\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(parse_graph(&render_graph(&g)).unwrap(), g);
    }
}
