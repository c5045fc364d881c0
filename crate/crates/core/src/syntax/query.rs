//! The user-facing eSPARQL grammar.
//!
//! ```text
//! query   := SELECT [INFO] ("*" | var+) [FROM BELIEF holder+] WHERE group
//! group   := "{" item ("." item)* ["."] "}"
//! item    := triple | MAP IF "(" cond ")" TO state ELSE state
//!          | FILTER "(" cond ")" | "{" query "}" | query | group [UNION group]
//! cond    := STATE IS state | BOUND "(" var ")" | operand "=" operand
//!          | "!" cond | cond "&&" cond | cond "||" cond | "(" cond ")"
//! ```
//!
//! Keywords are case-insensitive. An IRI without a `:` is a local name and
//! is resolved against the base IRI.

use super::lexer::{tokenize, Cursor, Pos, Tok};
use super::ParseError;
use crate::algebra::{FilterFormula, Operand};
use crate::logic::FourValue;
use crate::model::{Iri, PredicatePattern, TermPattern, TriplePattern, Variable};

pub type UserCond = FilterFormula;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projection {
    All,
    Vars(Vec<(Variable, Pos)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HolderRef {
    Iri(Iri),
    Variable(Variable),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UserQuery {
    pub info: bool,
    pub projection: Projection,
    pub from_belief: Vec<(HolderRef, Pos)>,
    pub body: Vec<BodyItem>,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BodyItem {
    Triple(TriplePattern, Pos),
    Map {
        cond: UserCond,
        to: FourValue,
        otherwise: FourValue,
        pos: Pos,
    },
    Filter {
        cond: UserCond,
        pos: Pos,
    },
    SubSelect(Box<UserQuery>),
    Group(Vec<BodyItem>, Pos),
    Union {
        left: Vec<BodyItem>,
        right: Vec<BodyItem>,
        pos: Pos,
    },
}

pub fn parse_query(input: &str, base: &str) -> Result<UserQuery, ParseError> {
    let mut p = Parser {
        c: Cursor::new(tokenize(input)?),
        base,
    };
    let q = p.query()?;
    if p.c.peek().tok != Tok::Eof {
        return Err(p.c.error("end of input"));
    }
    Ok(q)
}

struct Parser<'b> {
    c: Cursor,
    base: &'b str,
}

const STATE_NAMES: &str = "TRUE, FALSE, UNKNOWN or CONFLICTED";

impl Parser<'_> {
    fn query(&mut self) -> Result<UserQuery, ParseError> {
        let pos = self.c.expect_keyword("SELECT")?.pos;
        let info = self.c.eat_keyword("INFO");
        let projection = if self.c.peek().tok == Tok::Star {
            self.c.bump();
            Projection::All
        } else {
            let mut vars = Vec::new();
            while let Tok::Var(name) = &self.c.peek().tok {
                let v = Variable::new(name);
                vars.push((v, self.c.bump().pos));
            }
            if vars.is_empty() {
                return Err(self.c.error("`*` or a variable"));
            }
            Projection::Vars(vars)
        };
        let mut from_belief = Vec::new();
        if self.c.eat_keyword("FROM") {
            self.c.expect_keyword("BELIEF")?;
            loop {
                let pos = self.c.peek().pos;
                match self.c.peek().tok.clone() {
                    Tok::Var(name) => {
                        self.c.bump();
                        from_belief.push((HolderRef::Variable(Variable::new(name)), pos));
                    }
                    Tok::Iri(_) => {
                        let iri = self.iri()?;
                        from_belief.push((HolderRef::Iri(iri), pos));
                    }
                    _ if from_belief.is_empty() => return Err(self.c.error("a belief holder")),
                    _ => break,
                }
            }
        }
        self.c.expect_keyword("WHERE")?;
        let body = if self.c.at_keyword("SELECT") {
            vec![BodyItem::SubSelect(Box::new(self.query()?))]
        } else {
            self.group()?.0
        };
        Ok(UserQuery {
            info,
            projection,
            from_belief,
            body,
            pos,
        })
    }

    fn group(&mut self) -> Result<(Vec<BodyItem>, Pos), ParseError> {
        let pos = self.c.expect(Tok::LBrace)?.pos;
        let mut items = Vec::new();
        loop {
            if self.c.peek().tok == Tok::RBrace {
                self.c.bump();
                return Ok((items, pos));
            }
            if !items.is_empty() && self.c.peek().tok == Tok::Dot {
                self.c.bump();
                continue;
            }
            items.push(self.item()?);
        }
    }

    fn item(&mut self) -> Result<BodyItem, ParseError> {
        let pos = self.c.peek().pos;
        if self.c.at_keyword("SELECT") {
            return Ok(BodyItem::SubSelect(Box::new(self.query()?)));
        }
        if self.c.eat_keyword("MAP") {
            self.c.expect_keyword("IF")?;
            self.c.expect(Tok::LParen)?;
            let cond = self.cond()?;
            self.c.expect(Tok::RParen)?;
            self.c.expect_keyword("TO")?;
            let to = self.state()?;
            self.c.expect_keyword("ELSE")?;
            let otherwise = self.state()?;
            return Ok(BodyItem::Map {
                cond,
                to,
                otherwise,
                pos,
            });
        }
        if self.c.eat_keyword("FILTER") {
            self.c.expect(Tok::LParen)?;
            let cond = self.cond()?;
            self.c.expect(Tok::RParen)?;
            return Ok(BodyItem::Filter { cond, pos });
        }
        if self.c.peek().tok == Tok::LBrace {
            let mut left = self.braced()?;
            while self.c.at_keyword("UNION") {
                let union_pos = self.c.bump().pos;
                let right = self.braced()?;
                left = BodyItem::Union {
                    left: into_items(left),
                    right: into_items(right),
                    pos: union_pos,
                };
            }
            return Ok(left);
        }
        let t = self.triple()?;
        Ok(BodyItem::Triple(t, pos))
    }

    /// `{ query }` or a group.
    fn braced(&mut self) -> Result<BodyItem, ParseError> {
        let (mut items, pos) = self.group()?;
        if matches!(items.as_slice(), [BodyItem::SubSelect(_)]) {
            return Ok(items.pop().unwrap());
        }
        Ok(BodyItem::Group(items, pos))
    }

    fn state(&mut self) -> Result<FourValue, ParseError> {
        let value = match &self.c.peek().tok {
            Tok::Word(w) => match w.to_ascii_lowercase().as_str() {
                "true" => Some(FourValue::True),
                "false" => Some(FourValue::False),
                "unknown" => Some(FourValue::Unknown),
                "conflicted" => Some(FourValue::Conflict),
                _ => None,
            },
            _ => None,
        };
        match value {
            Some(v) => {
                self.c.bump();
                Ok(v)
            }
            None => Err(self.c.error(STATE_NAMES)),
        }
    }

    fn iri(&mut self) -> Result<Iri, ParseError> {
        match self.c.peek().tok.clone() {
            Tok::Iri(text) => {
                let full = if text.contains(':') {
                    text
                } else {
                    format!("{}{text}", self.base)
                };
                let iri = Iri::new(full).map_err(|e| self.c.error(e.to_string()))?;
                self.c.bump();
                Ok(iri)
            }
            _ => Err(self.c.error("an IRI")),
        }
    }

    fn term(&mut self) -> Result<TermPattern, ParseError> {
        match self.c.peek().tok.clone() {
            Tok::Var(name) => {
                self.c.bump();
                Ok(TermPattern::Variable(Variable::new(name)))
            }
            Tok::Iri(_) => Ok(TermPattern::Iri(self.iri()?)),
            Tok::QuoteOpen => {
                self.c.bump();
                let t = self.triple()?;
                self.c.expect(Tok::QuoteClose)?;
                Ok(TermPattern::Triple(Box::new(t)))
            }
            _ => Err(self.c.error("a variable, IRI or `<<`")),
        }
    }

    fn predicate(&mut self) -> Result<PredicatePattern, ParseError> {
        match self.c.peek().tok.clone() {
            Tok::Var(name) => {
                self.c.bump();
                Ok(PredicatePattern::Variable(Variable::new(name)))
            }
            Tok::Iri(_) => Ok(PredicatePattern::Iri(self.iri()?)),
            Tok::Word(w) if w == "a" => {
                self.c.bump();
                Ok(PredicatePattern::Iri(Iri::rdf_type()))
            }
            _ => Err(self.c.error("a variable, IRI or `a`")),
        }
    }

    fn triple(&mut self) -> Result<TriplePattern, ParseError> {
        let subject = self.term()?;
        let predicate = self.predicate()?;
        let object = self.term()?;
        Ok(TriplePattern {
            subject,
            predicate,
            object,
        })
    }

    fn cond(&mut self) -> Result<UserCond, ParseError> {
        let mut left = self.conjunction()?;
        while self.c.peek().tok == Tok::OrOr {
            self.c.bump();
            left = left.or(self.conjunction()?);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<UserCond, ParseError> {
        let mut left = self.unary()?;
        while self.c.peek().tok == Tok::AndAnd {
            self.c.bump();
            left = left.and(self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<UserCond, ParseError> {
        match self.c.peek().tok.clone() {
            Tok::Bang => {
                self.c.bump();
                Ok(self.unary()?.negate())
            }
            Tok::LParen => {
                self.c.bump();
                let inner = self.cond()?;
                self.c.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Word(w) if w.eq_ignore_ascii_case("STATE") => {
                self.c.bump();
                self.c.expect_keyword("IS")?;
                Ok(FilterFormula::StateIs(self.state()?))
            }
            Tok::Word(w) if w.eq_ignore_ascii_case("BOUND") => {
                self.c.bump();
                self.c.expect(Tok::LParen)?;
                let v = match self.c.peek().tok.clone() {
                    Tok::Var(name) => {
                        self.c.bump();
                        Variable::new(name)
                    }
                    _ => return Err(self.c.error("a variable")),
                };
                self.c.expect(Tok::RParen)?;
                Ok(FilterFormula::Bound(v))
            }
            Tok::Var(_) | Tok::Iri(_) => {
                let a = self.operand()?;
                self.c.expect(Tok::Eq)?;
                let b = self.operand()?;
                Ok(FilterFormula::Eq(a, b))
            }
            _ => Err(self.c.error("a condition")),
        }
    }

    fn operand(&mut self) -> Result<Operand, ParseError> {
        match self.c.peek().tok.clone() {
            Tok::Var(name) => {
                self.c.bump();
                Ok(Operand::Variable(Variable::new(name)))
            }
            Tok::Iri(_) => Ok(Operand::Iri(self.iri()?)),
            _ => Err(self.c.error("a variable or IRI")),
        }
    }
}

fn into_items(item: BodyItem) -> Vec<BodyItem> {
    match item {
        BodyItem::Group(items, _) => items,
        other => vec![other],
    }
}
