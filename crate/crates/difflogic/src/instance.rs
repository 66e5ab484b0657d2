//! Atoms, constraints, instances and exact evaluation.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::interval::{Bound, Interval};
use crate::{Rational, VarId};

/// `n / d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn small(r: &Rational) -> Option<(i64, i64)> {
    Some((r.numer().to_i64()?, r.denom().to_i64()?))
}

/// Compares `a - b` with the integer `c`.
pub fn diff_cmp(a: &Rational, b: &Rational, c: i64) -> Ordering {
    if let (Some((an, ad)), Some((bn, bd))) = (small(a), small(b)) {
        let lhs = an as i128 * bd as i128 - bn as i128 * ad as i128;
        if let Some(rhs) = (c as i128).checked_mul(ad as i128 * bd as i128) {
            return lhs.cmp(&rhs);
        }
    }
    (a - b).cmp(&Rational::from_integer(BigInt::from(c)))
}

/// The simple constraint `x - y in interval`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub x: VarId,
    pub y: VarId,
    pub interval: Interval,
}

impl Atom {
    pub fn new(x: VarId, y: VarId, interval: Interval) -> Atom {
        Atom { x, y, interval }
    }

    /// The same atom with the smaller variable id on the left.
    pub fn canonical(&self) -> Atom {
        if self.x > self.y {
            Atom { x: self.y, y: self.x, interval: self.interval.mirror() }
        } else {
            *self
        }
    }

    pub fn is_self(&self) -> bool {
        self.x == self.y
    }

    pub fn holds(&self, vx: &Rational, vy: &Rational) -> bool {
        self.interval.contains_by(|c| diff_cmp(vx, vy, c))
    }

    pub fn eval(&self, a: &Assignment) -> Result<bool> {
        let vx = a.get(self.x).ok_or(Error::UnassignedVariable(self.x))?;
        let vy = a.get(self.y).ok_or(Error::UnassignedVariable(self.y))?;
        Ok(self.holds(vx, vy))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{} - v{} in {}", self.x, self.y, self.interval)
    }
}

/// A disjunction of atoms. The empty disjunction is unsatisfiable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    pub disjuncts: Vec<Atom>,
}

impl Constraint {
    pub fn new(disjuncts: Vec<Atom>) -> Constraint {
        Constraint { disjuncts }
    }

    /// The unsatisfiable constraint.
    pub fn empty() -> Constraint {
        Constraint { disjuncts: Vec::new() }
    }

    pub fn single(atom: Atom) -> Constraint {
        Constraint { disjuncts: alloc::vec![atom] }
    }

    pub fn is_empty(&self) -> bool {
        self.disjuncts.is_empty()
    }

    /// Sorted distinct variables of the constraint.
    pub fn scope(&self) -> Vec<VarId> {
        let mut s: Vec<VarId> = self.disjuncts.iter().flat_map(|a| [a.x, a.y]).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Number of distinct variables; avoids building the scope when every
    /// atom is on the same pair.
    pub fn arity(&self) -> usize {
        let Some(first) = self.disjuncts.first() else {
            return 0;
        };
        let (x, y) = (first.x, first.y);
        if self.disjuncts.iter().all(|a| (a.x == x && a.y == y) || (a.x == y && a.y == x)) {
            1 + (x != y) as usize
        } else {
            self.scope().len()
        }
    }

    pub fn eval(&self, a: &Assignment) -> Result<bool> {
        for atom in &self.disjuncts {
            if atom.eval(a)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn max_abs(&self) -> u64 {
        self.disjuncts.iter().filter_map(|a| a.interval.max_abs()).max().unwrap_or(0)
    }
}

/// A set of variables and a conjunction of constraints over them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Instance {
    pub var_names: Vec<String>,
    pub constraints: Vec<Constraint>,
}

impl Instance {
    pub fn new(var_names: Vec<String>) -> Instance {
        Instance { var_names, constraints: Vec::new() }
    }

    /// An instance with `n` variables named `v0 .. v{n-1}`.
    pub fn with_vars(n: usize) -> Instance {
        Instance::new((0..n).map(|i| alloc::format!("v{i}")).collect())
    }

    pub fn var_count(&self) -> usize {
        self.var_names.len()
    }

    pub fn add_var(&mut self, name: impl Into<String>) -> VarId {
        self.var_names.push(name.into());
        self.var_names.len() - 1
    }

    pub fn push(&mut self, c: Constraint) {
        self.constraints.push(c);
    }

    pub fn push_atom(&mut self, x: VarId, y: VarId, interval: Interval) {
        self.constraints.push(Constraint::single(Atom::new(x, y, interval)));
    }

    pub fn var_id(&self, name: &str) -> Option<VarId> {
        self.var_names.iter().position(|n| n == name)
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.constraints.iter().flat_map(|c| c.disjuncts.iter())
    }

    /// Largest absolute finite endpoint, 0 if there is none.
    pub fn num_bound(&self) -> u64 {
        self.constraints.iter().map(Constraint::max_abs).max().unwrap_or(0)
    }

    /// Largest number of distinct variables in one constraint.
    pub fn arity(&self) -> usize {
        self.constraints.iter().map(Constraint::arity).max().unwrap_or(0)
    }

    /// True if no atom has a strict finite bound.
    pub fn is_closed(&self) -> bool {
        self.atoms().all(|a| !a.interval.has_strict_bound())
    }

    /// Checks that every atom references a declared variable.
    pub fn validate(&self) -> Result<()> {
        let n = self.var_count();
        for a in self.atoms() {
            if a.x >= n || a.y >= n {
                return Err(Error::InvalidArgument("atom references an undeclared variable"));
            }
        }
        Ok(())
    }

    pub fn eval(&self, a: &Assignment) -> Result<bool> {
        Ok(self.first_violated(a)?.is_none())
    }

    /// Index of the first constraint the assignment violates.
    pub fn first_violated(&self, a: &Assignment) -> Result<Option<usize>> {
        for (i, c) in self.constraints.iter().enumerate() {
            if !c.eval(a)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

/// A partial map from variables to rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<Option<Rational>>,
}

impl Assignment {
    /// All `n` variables unassigned.
    pub fn new(n: usize) -> Assignment {
        Assignment { values: alloc::vec![None; n] }
    }

    pub fn total(values: Vec<Rational>) -> Assignment {
        Assignment { values: values.into_iter().map(Some).collect() }
    }

    pub fn from_ints(values: &[i64]) -> Assignment {
        Assignment::total(values.iter().map(|&v| int(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: VarId) -> Option<&Rational> {
        self.values.get(v).and_then(Option::as_ref)
    }

    pub fn set(&mut self, v: VarId, value: Rational) {
        if v >= self.values.len() {
            self.values.resize(v + 1, None);
        }
        self.values[v] = Some(value);
    }

    pub fn unset(&mut self, v: VarId) {
        if let Some(slot) = self.values.get_mut(v) {
            *slot = None;
        }
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    /// Values of a total assignment; `None` if some variable is unassigned.
    pub fn values(&self) -> Option<Vec<Rational>> {
        self.values.iter().cloned().collect()
    }

    /// Adds `c` to every assigned value.
    pub fn shifted(&self, c: &Rational) -> Assignment {
        Assignment { values: self.values.iter().map(|v| v.as_ref().map(|v| v + c)).collect() }
    }
}

fn push_unique(list: &mut Vec<Atom>, atom: Atom) {
    if !list.contains(&atom) {
        list.push(atom);
    }
}

/// Rewrites a binary instance so that each unordered variable pair carries at
/// most one constraint, with atoms oriented smaller id first.
pub fn normalize_pairwise(inst: &Instance) -> Result<Instance> {
    let mut pairs: Vec<(VarId, VarId)> = Vec::new();
    let mut merged: Vec<Vec<Atom>> = Vec::new();
    let mut out = Instance::new(inst.var_names.clone());
    let mut empty_at: Option<usize> = None;
    let mut order: Vec<Option<usize>> = Vec::new();

    for c in &inst.constraints {
        let scope = c.scope();
        if scope.len() > 2 {
            return Err(Error::NotBinary);
        }
        if c.disjuncts.iter().any(|a| a.is_self() && a.interval.contains_int(0)) {
            continue;
        }
        let atoms: Vec<Atom> = c.disjuncts.iter().filter(|a| !a.is_self()).map(Atom::canonical).collect();
        if atoms.is_empty() {
            if empty_at.is_none() {
                empty_at = Some(order.len());
                order.push(None);
            }
            continue;
        }
        let key = (atoms[0].x, atoms[0].y);
        match pairs.iter().position(|p| *p == key) {
            Some(i) => {
                let mut next = Vec::new();
                for a in &merged[i] {
                    for b in &atoms {
                        if let Some(iv) = a.interval.intersect(&b.interval) {
                            push_unique(&mut next, Atom::new(key.0, key.1, iv));
                        }
                    }
                }
                merged[i] = next;
            }
            None => {
                let mut list = Vec::new();
                for a in atoms {
                    push_unique(&mut list, a);
                }
                pairs.push(key);
                merged.push(list);
                order.push(Some(pairs.len() - 1));
            }
        }
    }
    // one empty constraint suffices, whether given or produced by merging
    let mut has_empty = false;
    for slot in order {
        let c = match slot {
            None => Constraint::empty(),
            Some(i) => Constraint::new(core::mem::take(&mut merged[i])),
        };
        if c.is_empty() {
            if has_empty {
                continue;
            }
            has_empty = true;
        }
        out.push(c);
    }
    Ok(out)
}

/// Rewrites every disjunct as a union of unit relations: points `{i}`, open
/// cells `(i,i+1)` and the tail `(k,+inf)`. The tail `(-inf,-k)` becomes the
/// swapped atom `y - x in (k,+inf)`.
pub fn to_unit_disjuncts(c: &Constraint, k: u64) -> Constraint {
    let k = c.max_abs().max(k) as i64;
    let mut out = Vec::new();
    for a in &c.disjuncts {
        let iv = &a.interval;
        if iv.intersect(&Interval::below(-k)).is_some() {
            push_unique(&mut out, Atom::new(a.y, a.x, Interval::above(k)));
        }
        for i in -k..=k {
            if iv.contains_int(i) {
                push_unique(&mut out, Atom::new(a.x, a.y, Interval::point(i)));
            }
            if i < k && iv.contains_scaled(2 * i + 1, 2) {
                push_unique(&mut out, Atom::new(a.x, a.y, Interval::open(i, i + 1)));
            }
        }
        if iv.intersect(&Interval::above(k)).is_some() {
            push_unique(&mut out, Atom::new(a.x, a.y, Interval::above(k)));
        }
    }
    Constraint::new(out)
}

/// True if the interval is one of the unit relations for bound `k`.
pub fn is_unit(iv: &Interval, k: u64) -> bool {
    let k = k as i64;
    match (iv.lo(), iv.hi()) {
        (Bound::Finite(a), Bound::Finite(b)) => {
            (a == b && a.abs() <= k) || (b == a + 1 && iv.lo_open() && iv.hi_open() && a >= -k && b <= k)
        }
        (Bound::Finite(a), Bound::PosInf) => a == k && iv.lo_open(),
        _ => false,
    }
}

/// Appends a zero variable `z` and turns each unary requirement `v in I`
/// into `v - z in I`. Returns the new instance and the id of `z`.
pub fn add_zero_variable(inst: &Instance, unary: &[(VarId, Interval)]) -> (Instance, VarId) {
    let mut out = inst.clone();
    let mut name = String::from("z");
    let mut i = 0;
    while out.var_names.contains(&name) {
        name = alloc::format!("z_{i}");
        i += 1;
    }
    let z = out.add_var(name);
    for &(v, iv) in unary {
        out.push_atom(v, z, iv);
    }
    (out, z)
}

/// Formats `p/q` with `/1` omitted.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_zero() || *r.denom() == BigInt::from(1) {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}
