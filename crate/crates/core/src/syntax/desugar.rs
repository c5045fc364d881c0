//! Translation of parsed user queries into the algebra.
//!
//! A `SELECT` level picks its lattice once: with `INFO`, conjunction is ⊗,
//! `UNION` is ⊕, projection is ⊕ and `FILTER` is ⊗; otherwise ∧, ∨, ∨
//! and ∧. `FROM BELIEF u1 … un` becomes `((u1,⊕) ⊕ … ⊕ (un,⊕))` whatever
//! the lattice. `MAP` and `FILTER` apply to everything before them in their
//! group. Holder variables stay in scope after the projection.

use std::collections::BTreeSet;

use thiserror::Error;

use super::lexer::Pos;
use super::query::{BodyItem, HolderRef, Projection, UserQuery};
use crate::algebra::{IllFormedQuery, Query};
use crate::belief::{BeliefQuery, Holder};
use crate::logic::FourOperator;
use crate::model::Variable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {source}")]
pub struct DesugarError {
    pub line: usize,
    pub column: usize,
    pub source: IllFormedQuery,
}

fn ill_formed(pos: Pos, rule: impl Into<String>) -> DesugarError {
    DesugarError {
        line: pos.line,
        column: pos.column,
        source: IllFormedQuery::new(rule),
    }
}

struct Lattice {
    meet: FourOperator,
    join: FourOperator,
}

impl Lattice {
    fn of(info: bool) -> Lattice {
        if info {
            Lattice {
                meet: FourOperator::InfoMeet,
                join: FourOperator::InfoJoin,
            }
        } else {
            Lattice {
                meet: FourOperator::TruthMeet,
                join: FourOperator::TruthJoin,
            }
        }
    }
}

/// Desugars a top-level query. Its projection is always kept, so the
/// result has a `SELECT` node at the root.
pub fn desugar(uq: &UserQuery) -> Result<Query, DesugarError> {
    select(uq, true)
}

fn select(uq: &UserQuery, top: bool) -> Result<Query, DesugarError> {
    let lattice = Lattice::of(uq.info);
    let mut q = body(&uq.body, &lattice, uq.pos)?;

    if !uq.from_belief.is_empty() {
        let inner = scope(&q, uq.pos)?;
        let mut e: Option<BeliefQuery> = None;
        for (h, pos) in &uq.from_belief {
            let holder = match h {
                HolderRef::Iri(iri) => Holder::Iri(iri.clone()),
                HolderRef::Variable(v) => {
                    if inner.contains(v) {
                        return Err(ill_formed(
                            *pos,
                            format!("belief variable {v} is also bound inside the WHERE clause"),
                        ));
                    }
                    Holder::Variable(v.clone())
                }
            };
            let atom = BeliefQuery::all_states(holder, FourOperator::InfoJoin);
            e = Some(match e {
                None => atom,
                Some(prev) => prev.combine(FourOperator::InfoJoin, atom),
            });
        }
        q = Query::belief(e.expect("at least one holder"), q);
    }

    let in_scope = scope(&q, uq.pos)?;
    let mut keep: BTreeSet<Variable> = match &uq.projection {
        Projection::All => in_scope.clone(),
        Projection::Vars(vars) => {
            let mut keep = BTreeSet::new();
            for (v, pos) in vars {
                if !in_scope.contains(v) {
                    return Err(ill_formed(*pos, format!("projected variable {v} is not in scope")));
                }
                keep.insert(v.clone());
            }
            keep
        }
    };
    for (h, _) in &uq.from_belief {
        if let HolderRef::Variable(v) = h {
            keep.insert(v.clone());
        }
    }
    if top || keep != in_scope {
        q = Query::project(lattice.join, keep, q);
    }
    Ok(q)
}

fn scope(q: &Query, pos: Pos) -> Result<BTreeSet<Variable>, DesugarError> {
    q.in_scope().map_err(|e| DesugarError {
        line: pos.line,
        column: pos.column,
        source: e,
    })
}

fn body(items: &[BodyItem], lattice: &Lattice, pos: Pos) -> Result<Query, DesugarError> {
    let mut acc: Option<Query> = None;
    for item in items {
        let next = match item {
            BodyItem::Triple(t, _) => Query::pattern(t.clone()),
            BodyItem::SubSelect(sub) => select(sub, false)?,
            BodyItem::Group(inner, pos) => body(inner, lattice, *pos)?,
            BodyItem::Union { left, right, pos } => {
                let l = body(left, lattice, *pos)?;
                let r = body(right, lattice, *pos)?;
                let (wl, wr) = (scope(&l, *pos)?, scope(&r, *pos)?);
                if wl != wr {
                    return Err(ill_formed(
                        *pos,
                        "both sides of UNION must bind the same variables",
                    ));
                }
                Query::union(lattice.join, l, r)
            }
            BodyItem::Map {
                cond,
                to,
                otherwise,
                pos,
            } => {
                let Some(prev) = acc.take() else {
                    return Err(ill_formed(*pos, "MAP needs a pattern before it"));
                };
                acc = Some(Query::map_state(prev, cond.clone(), *to, *otherwise));
                continue;
            }
            BodyItem::Filter { cond, pos } => {
                let Some(prev) = acc.take() else {
                    return Err(ill_formed(*pos, "FILTER needs a pattern before it"));
                };
                acc = Some(Query::filter(lattice.meet, prev, cond.clone()));
                continue;
            }
        };
        acc = Some(match acc {
            None => next,
            Some(prev) => Query::join(lattice.meet, prev, next),
        });
    }
    acc.ok_or_else(|| ill_formed(pos, "empty group"))
}
