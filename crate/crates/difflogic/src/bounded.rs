//! Span-bounded solving for binary instances: enumerate integer parts in
//! `[0, w)`, then decide the fractional parts as a point-algebra system.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::{int, rat, to_unit_disjuncts, Assignment, Atom, Constraint, Instance};
use crate::interval::Interval;
use crate::pa::{pa_feasible, PaSystem, ANY, EQ, GT, LT};
use crate::VarId;

/// A binary instance whose models are sought in `[0, w)`.
#[derive(Clone, Debug)]
pub struct SpanProblem {
    pub w: u64,
    pub inst: Instance,
}

/// What a constraint says about fractional parts once integer parts are fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellRelation {
    /// No disjunct is compatible with the integer parts.
    Unsat,
    /// Some disjunct holds whatever the fractional parts are.
    Trivial,
    /// `frac(x) mask frac(y)`.
    Order(VarId, VarId, u8),
}

/// Which of `frac(x) <, =, > frac(y)` make `x - y in iv` true when the
/// integer parts differ by `d`. Integer endpoints never split the cells
/// `(d-1,d)` and `(d,d+1)`, so the order decides membership.
fn order_mask(iv: &Interval, d: i64) -> u8 {
    let mut mask = 0;
    if iv.contains_scaled(2 * d - 1, 2) {
        mask |= LT;
    }
    if iv.contains_int(d) {
        mask |= EQ;
    }
    if iv.contains_scaled(2 * d + 1, 2) {
        mask |= GT;
    }
    mask
}

fn relation_of(c: &Constraint, phi_i: &[i64]) -> Result<CellRelation> {
    let mut pair: Option<(VarId, VarId)> = None;
    let mut mask = 0u8;
    for a in &c.disjuncts {
        if a.is_self() {
            if a.interval.contains_int(0) {
                return Ok(CellRelation::Trivial);
            }
            continue;
        }
        let a = a.canonical();
        match pair {
            None => pair = Some((a.x, a.y)),
            Some(p) if p != (a.x, a.y) => return Err(Error::NotBinary),
            _ => {}
        }
        let d = phi_i[a.x] - phi_i[a.y];
        mask |= order_mask(&a.interval, d);
    }
    Ok(match (pair, mask) {
        (_, ANY) => CellRelation::Trivial,
        (_, 0) | (None, _) => CellRelation::Unsat,
        (Some((x, y)), m) => CellRelation::Order(x, y, m),
    })
}

/// Per-constraint translation under fixed integer parts.
pub fn cell_relations(phi_i: &[i64], inst: &Instance) -> Result<Vec<CellRelation>> {
    inst.constraints.iter().map(|c| relation_of(c, phi_i)).collect()
}

/// The point-algebra system over fractional parts, or `None` if some
/// constraint has no compatible disjunct.
pub fn fractional_system(phi_i: &[i64], inst: &Instance) -> Result<Option<PaSystem>> {
    let mut sys = PaSystem::new(inst.var_count());
    for r in cell_relations(phi_i, inst)? {
        match r {
            CellRelation::Unsat => return Ok(None),
            CellRelation::Trivial => {}
            CellRelation::Order(x, y, m) => sys.add(x, y, m),
        }
    }
    Ok(Some(sys))
}

/// Decides the instance restricted to models in `[0, w)`; returns the model
/// for the lexicographically first feasible vector of integer parts.
pub fn solve_bounded(p: &SpanProblem) -> Result<Option<Assignment>> {
    if p.w == 0 {
        return Err(Error::InvalidArgument("span must be at least 1"));
    }
    if p.inst.arity() > 2 {
        return Err(Error::NotBinary);
    }
    let n = p.inst.var_count();
    let k = p.w.max(p.inst.num_bound());
    let mut unit = Instance::new(p.inst.var_names.clone());
    let mut by_last: Vec<Vec<Constraint>> = vec![Vec::new(); n];
    for c in &p.inst.constraints {
        let u = to_unit_disjuncts(c, k);
        match u.scope().last() {
            Some(&m) => by_last[m].push(u.clone()),
            None => return Ok(None),
        }
        unit.push(u);
    }
    if n == 0 {
        return Ok(Some(Assignment::new(0)));
    }
    let w = p.w as i64;
    let mut phi = vec![0i64; n];
    let mut sys_stack: Vec<PaSystem> = vec![PaSystem::new(n)];
    let mut level = 0usize;
    loop {
        if phi[level] == w {
            if level == 0 {
                return Ok(None);
            }
            phi[level] = 0;
            sys_stack.pop();
            level -= 1;
            phi[level] += 1;
            continue;
        }
        let mut sys = sys_stack[level].clone();
        let mut ok = true;
        for c in &by_last[level] {
            match relation_of(c, &phi)? {
                CellRelation::Unsat => {
                    ok = false;
                    break;
                }
                CellRelation::Trivial => {}
                CellRelation::Order(x, y, m) => sys.add(x, y, m),
            }
        }
        let ranks = if ok { pa_feasible(&sys) } else { None };
        let Some(ranks) = ranks else {
            phi[level] += 1;
            continue;
        };
        if level + 1 == n {
            let count = ranks.iter().max().map_or(0, |m| m + 1) as i64;
            let values = (0..n).map(|v| int(phi[v]) + rat(ranks[v] as i64, count + 1)).collect();
            return Ok(Some(Assignment::total(values)));
        }
        sys_stack.push(sys);
        level += 1;
        phi[level] = 0;
    }
}

/// Convenience: atoms pinning each listed variable into `[0, w)` against `z`.
pub fn pin_atoms(vars: &[VarId], z: VarId, w: u64) -> Vec<Atom> {
    let hi = Interval::new(crate::Bound::Finite(0), false, crate::Bound::Finite(w as i64), true).expect("w >= 1");
    vars.iter().map(|&v| Atom::new(v, z, hi)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Bound;

    fn one(x: VarId, y: VarId, iv: Interval) -> Instance {
        let mut inst = Instance::with_vars(2);
        inst.push_atom(x, y, iv);
        inst
    }

    #[test]
    fn bounded_examples() {
        let m = solve_bounded(&SpanProblem { w: 1, inst: one(0, 1, Interval::open(0, 1)) }).unwrap().unwrap();
        assert_eq!(m, Assignment::total(vec![rat(1, 3), int(0)]));
        let m = solve_bounded(&SpanProblem { w: 2, inst: one(0, 1, Interval::point(1)) }).unwrap().unwrap();
        assert_eq!(m, Assignment::from_ints(&[1, 0]));
        assert!(solve_bounded(&SpanProblem { w: 1, inst: one(0, 1, Interval::point(1)) }).unwrap().is_none());
    }

    #[test]
    fn table_rows() {
        let inst = one(0, 1, Interval::open(0, 1));
        assert_eq!(cell_relations(&[0, 0], &inst).unwrap(), vec![CellRelation::Order(0, 1, GT)]);
        let mut dis = Instance::with_vars(2);
        dis.push(Constraint::new(vec![Atom::new(0, 1, Interval::open(-1, 0)), Atom::new(0, 1, Interval::open(0, 1))]));
        assert_eq!(cell_relations(&[0, 0], &dis).unwrap(), vec![CellRelation::Order(0, 1, LT | GT)]);
        let point = one(0, 1, Interval::point(0));
        assert_eq!(cell_relations(&[5, 0], &point).unwrap(), vec![CellRelation::Unsat]);
        assert!(fractional_system(&[5, 0], &point).unwrap().is_none());
        let below = one(0, 1, Interval::open(2, 3));
        assert_eq!(cell_relations(&[3, 0], &below).unwrap(), vec![CellRelation::Order(0, 1, LT)]);
        let tail = one(0, 1, Interval::above(1));
        assert_eq!(cell_relations(&[3, 0], &tail).unwrap(), vec![CellRelation::Trivial]);
        assert_eq!(cell_relations(&[1, 0], &tail).unwrap(), vec![CellRelation::Order(0, 1, GT)]);
        assert_eq!(cell_relations(&[0, 0], &tail).unwrap(), vec![CellRelation::Unsat]);
        let half = one(0, 1, Interval::new(Bound::Finite(0), true, Bound::Finite(1), false).unwrap());
        assert_eq!(cell_relations(&[1, 0], &half).unwrap(), vec![CellRelation::Order(0, 1, LT | EQ)]);
        let swapped = one(1, 0, Interval::open(0, 1));
        assert_eq!(cell_relations(&[0, 0], &swapped).unwrap(), vec![CellRelation::Order(0, 1, LT)]);
        let wide = one(0, 1, Interval::closed(0, 2));
        assert_eq!(cell_relations(&[0, 0], &wide).unwrap(), vec![CellRelation::Order(0, 1, EQ | GT)]);
    }

    #[test]
    fn rejects_non_binary() {
        let mut inst = Instance::with_vars(3);
        inst.push(Constraint::new(vec![Atom::new(0, 1, Interval::full()), Atom::new(1, 2, Interval::full())]));
        assert_eq!(solve_bounded(&SpanProblem { w: 2, inst }).unwrap_err(), Error::NotBinary);
    }
}
