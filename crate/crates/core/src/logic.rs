//! Belnap's four-valued logic as a bilattice.
//!
//! The two partial orders are generated from their covering inequalities;
//! the four lattice operators are then computed as meets and joins of the
//! generated orders and frozen into lookup tables on first use.

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use thiserror::Error;

/// One of the four epistemic states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FourValue {
    /// ⊥
    False,
    /// ⊤
    True,
    /// ⊢, no information.
    Unknown,
    /// ⊣, both true and false.
    Conflict,
}

impl FourValue {
    pub const ALL: [FourValue; 4] = [
        FourValue::False,
        FourValue::True,
        FourValue::Unknown,
        FourValue::Conflict,
    ];

    #[inline]
    const fn index(self) -> usize {
        self as usize
    }

    /// Textual name used in graph files, query results, and on the CLI.
    pub const fn name(self) -> &'static str {
        match self {
            FourValue::False => "false",
            FourValue::True => "true",
            FourValue::Unknown => "unknown",
            FourValue::Conflict => "conflicted",
        }
    }

    pub const fn symbol(self) -> char {
        match self {
            FourValue::False => '⊥',
            FourValue::True => '⊤',
            FourValue::Unknown => '⊢',
            FourValue::Conflict => '⊣',
        }
    }
}

impl fmt::Display for FourValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown state `{0}` (expected true, false, unknown or conflicted)")]
pub struct ParseStateError(pub String);

impl FromStr for FourValue {
    type Err = ParseStateError;

    /// Accepts the lowercase names; the uppercase query keywords are handled
    /// by the query lexer, which lowercases before delegating here.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "true" => Ok(FourValue::True),
            "false" => Ok(FourValue::False),
            "unknown" => Ok(FourValue::Unknown),
            "conflicted" => Ok(FourValue::Conflict),
            other => Err(ParseStateError(other.to_owned())),
        }
    }
}

/// The four lattice operators of the bilattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FourOperator {
    /// ∧, meet in the truth order.
    TruthMeet,
    /// ∨, join in the truth order.
    TruthJoin,
    /// ⊗, meet in the information order.
    InfoMeet,
    /// ⊕, join in the information order.
    InfoJoin,
}

impl FourOperator {
    pub const ALL: [FourOperator; 4] = [
        FourOperator::TruthMeet,
        FourOperator::TruthJoin,
        FourOperator::InfoMeet,
        FourOperator::InfoJoin,
    ];

    #[inline]
    pub fn apply(self, a: FourValue, b: FourValue) -> FourValue {
        apply(self, a, b)
    }

    pub fn identity(self) -> FourValue {
        identity_of(self)
    }

    pub fn absorbing(self) -> FourValue {
        absorbing_of(self)
    }

    pub fn is_meet(self) -> bool {
        matches!(self, FourOperator::TruthMeet | FourOperator::InfoMeet)
    }

    pub fn is_join(self) -> bool {
        !self.is_meet()
    }

    pub fn is_info(self) -> bool {
        matches!(self, FourOperator::InfoMeet | FourOperator::InfoJoin)
    }

    pub const fn symbol(self) -> char {
        match self {
            FourOperator::TruthMeet => '∧',
            FourOperator::TruthJoin => '∨',
            FourOperator::InfoMeet => '⊗',
            FourOperator::InfoJoin => '⊕',
        }
    }

    /// Identity elements and absorbing elements are read off the derived
    /// tables: the identity of a meet is the order's top, of a join its bottom.
    fn order(self) -> &'static Order {
        if self.is_info() {
            &TABLES.info
        } else {
            &TABLES.truth
        }
    }
}

impl fmt::Display for FourOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A partial order on the four values with its meet and join tables.
struct Order {
    leq: [[bool; 4]; 4],
    meet: [[FourValue; 4]; 4],
    join: [[FourValue; 4]; 4],
    bottom: FourValue,
    top: FourValue,
}

impl Order {
    /// Reflexive-transitive closure of `covers`, then greatest lower and
    /// least upper bounds for every pair.
    fn generate(covers: &[(FourValue, FourValue)]) -> Order {
        let mut leq = [[false; 4]; 4];
        for v in FourValue::ALL {
            leq[v.index()][v.index()] = true;
        }
        for &(a, b) in covers {
            leq[a.index()][b.index()] = true;
        }
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }

        let le = |a: FourValue, b: FourValue| leq[a.index()][b.index()];
        let bound = |a: FourValue, b: FourValue, lower: bool| -> FourValue {
            let candidates: Vec<FourValue> = FourValue::ALL
                .into_iter()
                .filter(|&c| if lower { le(c, a) && le(c, b) } else { le(a, c) && le(b, c) })
                .collect();
            let best: Vec<FourValue> = candidates
                .iter()
                .copied()
                .filter(|&c| {
                    candidates
                        .iter()
                        .all(|&d| if lower { le(d, c) } else { le(c, d) })
                })
                .collect();
            assert_eq!(best.len(), 1, "generated order is not a lattice");
            best[0]
        };

        let mut meet = [[FourValue::False; 4]; 4];
        let mut join = [[FourValue::False; 4]; 4];
        for a in FourValue::ALL {
            for b in FourValue::ALL {
                meet[a.index()][b.index()] = bound(a, b, true);
                join[a.index()][b.index()] = bound(a, b, false);
            }
        }
        let extreme = |lowest: bool| {
            FourValue::ALL
                .into_iter()
                .find(|&c| {
                    FourValue::ALL
                        .iter()
                        .all(|&d| if lowest { le(c, d) } else { le(d, c) })
                })
                .expect("bounded lattice")
        };
        Order {
            leq,
            meet,
            join,
            bottom: extreme(true),
            top: extreme(false),
        }
    }
}

struct Tables {
    truth: Order,
    info: Order,
}

static TABLES: LazyLock<Tables> = LazyLock::new(|| {
    use FourValue::*;
    Tables {
        truth: Order::generate(&[
            (False, Unknown),
            (False, Conflict),
            (Unknown, True),
            (Conflict, True),
        ]),
        info: Order::generate(&[
            (Unknown, False),
            (Unknown, True),
            (False, Conflict),
            (True, Conflict),
        ]),
    }
});

/// `a ≤tr b`.
pub fn leq_truth(a: FourValue, b: FourValue) -> bool {
    TABLES.truth.leq[a.index()][b.index()]
}

/// `a ≤in b`.
pub fn leq_info(a: FourValue, b: FourValue) -> bool {
    TABLES.info.leq[a.index()][b.index()]
}

#[inline]
pub fn apply(op: FourOperator, a: FourValue, b: FourValue) -> FourValue {
    let order = op.order();
    let table = if op.is_meet() { &order.meet } else { &order.join };
    table[a.index()][b.index()]
}

pub fn identity_of(op: FourOperator) -> FourValue {
    let order = op.order();
    if op.is_meet() {
        order.top
    } else {
        order.bottom
    }
}

pub fn absorbing_of(op: FourOperator) -> FourValue {
    let order = op.order();
    if op.is_meet() {
        order.bottom
    } else {
        order.top
    }
}

/// Folds `op` over `values` starting from its identity.
pub fn reduce<I>(op: FourOperator, values: I) -> FourValue
where
    I: IntoIterator<Item = FourValue>,
{
    values
        .into_iter()
        .fold(identity_of(op), |acc, v| apply(op, acc, v))
}
