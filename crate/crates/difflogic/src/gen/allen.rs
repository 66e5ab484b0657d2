//! Unit-length Allen relations as constraints on left endpoints.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::{Atom, Constraint, Instance};
use crate::interval::Interval;
use crate::VarId;

/// Basic relations between two unit intervals `I` and `J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AllenRelation {
    Precedes,
    Meets,
    Overlaps,
    Equals,
    OverlappedBy,
    MetBy,
    PrecededBy,
}

impl AllenRelation {
    pub const ALL: [AllenRelation; 7] = [
        AllenRelation::Precedes,
        AllenRelation::Meets,
        AllenRelation::Overlaps,
        AllenRelation::Equals,
        AllenRelation::OverlappedBy,
        AllenRelation::MetBy,
        AllenRelation::PrecededBy,
    ];

    /// Set of values of `I- - J-` (difference of left endpoints).
    pub fn interval(self) -> Interval {
        match self {
            AllenRelation::Precedes => Interval::below(-1),
            AllenRelation::Meets => Interval::point(-1),
            AllenRelation::Overlaps => Interval::open(-1, 0),
            AllenRelation::Equals => Interval::point(0),
            AllenRelation::OverlappedBy => Interval::open(0, 1),
            AllenRelation::MetBy => Interval::point(1),
            AllenRelation::PrecededBy => Interval::above(1),
        }
    }

    /// Short name: `p m o e oi mi pi`.
    pub fn symbol(self) -> &'static str {
        match self {
            AllenRelation::Precedes => "p",
            AllenRelation::Meets => "m",
            AllenRelation::Overlaps => "o",
            AllenRelation::Equals => "e",
            AllenRelation::OverlappedBy => "oi",
            AllenRelation::MetBy => "mi",
            AllenRelation::PrecededBy => "pi",
        }
    }

    pub fn from_symbol(s: &str) -> Option<AllenRelation> {
        AllenRelation::ALL.into_iter().find(|r| r.symbol() == s)
    }

    pub fn converse(self) -> AllenRelation {
        AllenRelation::ALL[6 - self as usize]
    }
}

/// One variable per interval (its left endpoint); `(i, j, rels)` becomes the
/// disjunction of `I_i- - I_j- in interval(r)` over `rels`. An empty set gives
/// the empty constraint.
pub fn from_unit_allen(n: usize, relations: &[(VarId, VarId, Vec<AllenRelation>)]) -> Result<Instance> {
    let mut inst = Instance::with_vars(n);
    for (i, j, rels) in relations {
        if *i >= n || *j >= n {
            return Err(Error::InvalidArgument("interval index out of range"));
        }
        inst.push(Constraint::new(rels.iter().map(|r| Atom::new(*i, *j, r.interval())).collect()));
    }
    Ok(inst)
}

/// Two complete atomic instances that agree on their common variables
/// `x, y` and are each satisfiable, and their union, which is not:
/// `a - x = 1, y - a = 1, y - x > 1` and `b - x = 1, y - b in (0,1), y - x > 1`.
pub fn amalgamation_fixtures() -> (Instance, Instance, Instance) {
    let names = |ns: &[&str]| ns.iter().map(|s| (*s).into()).collect();
    let mut first = Instance::new(names(&["x", "a", "y"]));
    first.push_atom(1, 0, Interval::point(1));
    first.push_atom(2, 1, Interval::point(1));
    first.push_atom(2, 0, Interval::above(1));
    let mut second = Instance::new(names(&["x", "b", "y"]));
    second.push_atom(1, 0, Interval::point(1));
    second.push_atom(2, 1, Interval::open(0, 1));
    second.push_atom(2, 0, Interval::above(1));
    let mut union = Instance::new(names(&["x", "a", "y", "b"]));
    union.constraints.extend(first.constraints.iter().cloned());
    for c in &second.constraints {
        let rename = |v: VarId| if v == 1 { 3 } else { v };
        union.push(Constraint::new(c.disjuncts.iter().map(|a| Atom::new(rename(a.x), rename(a.y), a.interval)).collect()));
    }
    (first, second, union)
}
