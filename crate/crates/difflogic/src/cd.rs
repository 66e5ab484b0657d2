//! The compact domain `CD(n,k)`: enumeration solver, compactification of
//! arbitrary models, certificates, and the disjunct-selection oracle.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::instance::{rat, Assignment, Atom, Instance};
use crate::interval::Interval;
use crate::stp::{stp_feasible, SimpleSystem, StpClosure};
use crate::Rational;

/// Default cap on the number of disjunct selections the oracle may try.
pub const DEFAULT_ORACLE_CAP: u64 = 1 << 24;

/// The grid `{ z + q/n : 0 <= z <= (n-1)(k+1), 0 <= q < n }`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CdGrid {
    pub n: usize,
    pub k: u64,
}

impl CdGrid {
    pub fn new(n: usize, k: u64) -> Result<CdGrid> {
        if n == 0 {
            return Err(Error::InvalidArgument("CD(n,k) needs n >= 1"));
        }
        Ok(CdGrid { n, k })
    }

    /// Number of integer parts.
    pub fn int_parts(&self) -> u64 {
        (self.n as u64 - 1) * (self.k + 1) + 1
    }

    /// Number of grid values; value `t` is `t / n`.
    pub fn len(&self) -> usize {
        (self.int_parts() * self.n as u64) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self, t: usize) -> Rational {
        rat(t as i64, self.n as i64)
    }

    /// Index of `v` in the grid, if present.
    pub fn index_of(&self, v: &Rational) -> Option<usize> {
        let scaled = v * Rational::from_integer(self.n.into());
        if !scaled.is_integer() {
            return None;
        }
        let t = scaled.to_integer().to_i64()?;
        (t >= 0 && (t as usize) < self.len()).then_some(t as usize)
    }

    pub fn contains(&self, v: &Rational) -> bool {
        self.index_of(v).is_some()
    }
}

/// The values of `CD(n,k)` in ascending order.
pub fn cd_values(n: usize, k: u64) -> Result<Vec<Rational>> {
    let g = CdGrid::new(n, k)?;
    Ok((0..g.len()).map(|t| g.value(t)).collect())
}

/// The grid used for an instance: `CD(max(n,1), num_bound)`.
pub fn grid_for(inst: &Instance) -> CdGrid {
    CdGrid { n: inst.var_count().max(1), k: inst.num_bound() }
}

/// Constraints bucketed by their highest variable, for backtracking.
struct Staged<'a> {
    by_last: Vec<Vec<&'a [Atom]>>,
    has_empty: bool,
}

impl<'a> Staged<'a> {
    fn new(inst: &'a Instance) -> Staged<'a> {
        let mut by_last = vec![Vec::new(); inst.var_count()];
        let mut has_empty = false;
        for c in &inst.constraints {
            match c.disjuncts.iter().map(|a| a.x.max(a.y)).max() {
                Some(m) => by_last[m].push(c.disjuncts.as_slice()),
                None => has_empty = true,
            }
        }
        Staged { by_last, has_empty }
    }
}

fn holds_scaled(atoms: &[Atom], t: &[usize], n: usize) -> bool {
    atoms.iter().any(|a| a.interval.contains_scaled(t[a.x] as i64 - t[a.y] as i64, n as i64))
}

/// Visits every assignment over the grid that satisfies the instance, in
/// lexicographic order; the visitor returns `false` to stop.
fn sweep<F: FnMut(&[usize]) -> bool>(inst: &Instance, grid: CdGrid, mut visit: F) {
    let staged = Staged::new(inst);
    if staged.has_empty {
        return;
    }
    let n = inst.var_count();
    if n == 0 {
        visit(&[]);
        return;
    }
    let m = grid.len();
    let scale = grid.n;
    let mut t = vec![0usize; n];
    let mut level = 0usize;
    // t[level] holds the next candidate to try at `level`.
    loop {
        if t[level] == m {
            if level == 0 {
                return;
            }
            t[level] = 0;
            level -= 1;
            t[level] += 1;
            continue;
        }
        let ok = staged.by_last[level].iter().all(|c| holds_scaled(c, &t, scale));
        if !ok {
            t[level] += 1;
            continue;
        }
        if level + 1 == n {
            if !visit(&t) {
                return;
            }
            t[level] += 1;
        } else {
            level += 1;
            t[level] = 0;
        }
    }
}

fn to_assignment(grid: CdGrid, t: &[usize]) -> Assignment {
    Assignment::total(t.iter().map(|&v| grid.value(v)).collect())
}

/// Searches `CD(n, num_bound)^n` in lexicographic order (variable id, then
/// ascending value) and returns the first model.
pub fn solve_enumerate(inst: &Instance) -> Option<Assignment> {
    let grid = grid_for(inst);
    let mut found = None;
    sweep(inst, grid, |t| {
        found = Some(to_assignment(grid, t));
        false
    });
    found
}

fn floor_frac(v: &Rational) -> (num_bigint::BigInt, Rational) {
    let fl = v.numer().div_floor(v.denom());
    let frac = v - Rational::from_integer(fl.clone());
    (fl, frac)
}

/// Maps a model `g` into `CD(n,k)` (k = num_bound) while keeping the set of
/// satisfied simple constraints with bound k.
pub fn compactify(g: &Assignment, inst: &Instance) -> Result<Assignment> {
    let n = inst.var_count();
    let k = inst.num_bound();
    let mut parts = Vec::with_capacity(n);
    for v in 0..n {
        let val = g.get(v).ok_or(Error::UnassignedVariable(v))?;
        parts.push(floor_frac(val));
    }
    let mut ints: Vec<_> = parts.iter().map(|p| p.0.clone()).collect();
    ints.sort();
    ints.dedup();
    let cap = num_bigint::BigInt::from(k + 1);
    let mut compact_int = Vec::with_capacity(ints.len());
    let mut acc = num_bigint::BigInt::zero();
    for (i, z) in ints.iter().enumerate() {
        if i > 0 {
            let gap = z - &ints[i - 1];
            acc += gap.min(cap.clone());
        }
        compact_int.push(acc.clone());
    }
    let mut fracs: Vec<_> = parts.iter().map(|p| p.1.clone()).collect();
    fracs.sort();
    fracs.dedup();
    let denom = Rational::from_integer(n.max(1).into());
    let values = parts
        .iter()
        .map(|(fl, fr)| {
            let ci = ints.binary_search(fl).expect("integer part present");
            let rank = fracs.binary_search(fr).expect("fraction present");
            Rational::from_integer(compact_int[ci].clone()) + Rational::from_integer(rank.into()) / &denom
        })
        .collect();
    Ok(Assignment::total(values))
}

/// Equivalence of two models: integer-part differences agree after clamping to
/// `[-(k+1), k+1]`, and fractional parts are ordered the same way.
pub fn equivalent_up_to(k: u64, f1: &Assignment, f2: &Assignment) -> bool {
    let (Some(a), Some(b)) = (f1.values(), f2.values()) else {
        return false;
    };
    if a.len() != b.len() {
        return false;
    }
    let pa: Vec<_> = a.iter().map(floor_frac).collect();
    let pb: Vec<_> = b.iter().map(floor_frac).collect();
    let cap = num_bigint::BigInt::from(k + 1);
    let clamp = |d: num_bigint::BigInt| d.clamp(-cap.clone(), cap.clone());
    for x in 0..a.len() {
        for y in 0..a.len() {
            if clamp(&pa[x].0 - &pa[y].0) != clamp(&pb[x].0 - &pb[y].0) {
                return false;
            }
            if pa[x].1.cmp(&pa[y].1) != pb[x].1.cmp(&pb[y].1) {
                return false;
            }
        }
    }
    true
}

/// A set of canonically oriented atoms drawn from the instance.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Certificate {
    pub atoms: Vec<Atom>,
}

impl Certificate {
    /// True if the atoms form a feasible conjunction.
    pub fn is_feasible(&self, var_count: usize) -> bool {
        stp_feasible(&SimpleSystem::new(var_count, self.atoms.clone())).is_some()
    }

    /// True if every constraint has a disjunct in the certificate.
    pub fn covers(&self, inst: &Instance) -> bool {
        inst.constraints
            .iter()
            .all(|c| c.disjuncts.iter().any(|a| self.atoms.binary_search(&a.canonical()).is_ok()))
    }
}

/// Distinct canonical atoms of the instance, sorted.
pub fn atom_universe(inst: &Instance) -> Vec<Atom> {
    let set: BTreeSet<Atom> = inst.atoms().map(Atom::canonical).collect();
    set.into_iter().collect()
}

/// All certificates, in order of first discovery by the lexicographic sweep.
pub fn list_certificates(inst: &Instance) -> Vec<Certificate> {
    let universe = atom_universe(inst);
    let grid = grid_for(inst);
    let words = universe.len().div_ceil(64);
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut order: Vec<Vec<u64>> = Vec::new();
    let scale = grid.n as i64;
    sweep(inst, grid, |t| {
        let mut bits = vec![0u64; words];
        for (i, a) in universe.iter().enumerate() {
            if a.interval.contains_scaled(t[a.x] as i64 - t[a.y] as i64, scale) {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        if seen.insert(bits.clone()) {
            order.push(bits);
        }
        true
    });
    order
        .into_iter()
        .map(|bits| Certificate {
            atoms: universe.iter().enumerate().filter(|(i, _)| bits[i / 64] >> (i % 64) & 1 == 1).map(|(_, a)| *a).collect(),
        })
        .collect()
}

/// Number of disjunct selections (saturating).
pub fn selection_count(inst: &Instance) -> u64 {
    inst.constraints.iter().fold(1u64, |acc, c| acc.saturating_mul(c.disjuncts.len() as u64))
}

/// Independent oracle: some choice of one disjunct per constraint is a
/// feasible conjunction.
pub fn certificate_oracle(inst: &Instance, cap: u64) -> Result<bool> {
    let count = selection_count(inst);
    if count > cap {
        return Err(Error::OracleBlowUp { cap });
    }
    if count == 0 {
        return Ok(false);
    }
    let n = inst.var_count();
    let cs = &inst.constraints;
    let mut chosen: Vec<Atom> = Vec::with_capacity(cs.len());
    let mut idx = vec![0usize; cs.len()];
    let mut level = 0usize;
    if cs.is_empty() {
        return Ok(true);
    }
    loop {
        if idx[level] == cs[level].disjuncts.len() {
            if level == 0 {
                return Ok(false);
            }
            idx[level] = 0;
            level -= 1;
            chosen.pop();
            idx[level] += 1;
            continue;
        }
        chosen.push(cs[level].disjuncts[idx[level]]);
        if stp_feasible(&SimpleSystem::new(n, chosen.clone())).is_none() {
            chosen.pop();
            idx[level] += 1;
            continue;
        }
        if level + 1 == cs.len() {
            return Ok(true);
        }
        level += 1;
    }
}

/// True if some disjunct selection is feasible; a backtracking search over an
/// incrementally closed difference system.
pub fn certificate_exists(inst: &Instance) -> bool {
    let n = inst.var_count();
    let mut cs: Vec<&[Atom]> = inst.constraints.iter().map(|c| c.disjuncts.as_slice()).collect();
    if cs.iter().any(|c| c.is_empty()) {
        return false;
    }
    cs.sort_by_key(|c| c.len());
    fn go(cs: &[&[Atom]], closure: &StpClosure) -> bool {
        let Some((first, rest)) = cs.split_first() else {
            return true;
        };
        if first.iter().any(|a| closure.implies(a)) {
            return go(rest, closure);
        }
        for a in first.iter() {
            let mut next = closure.clone();
            if next.add_atom(a) && go(rest, &next) {
                return true;
            }
        }
        false
    }
    go(&cs, &StpClosure::new(n))
}

/// A tautological unit-cell disjunction over `x - y` for bound `k`.
pub fn cell_cover(x: usize, y: usize, k: u64) -> Vec<Atom> {
    let k = k as i64;
    let mut out = vec![Atom::new(y, x, Interval::above(k))];
    for i in -k..=k {
        out.push(Atom::new(x, y, Interval::point(i)));
        if i < k {
            out.push(Atom::new(x, y, Interval::open(i, i + 1)));
        }
    }
    out.push(Atom::new(x, y, Interval::above(k)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{int, Constraint};

    #[test]
    fn cd_value_examples() {
        assert_eq!(cd_values(1, 5).unwrap(), vec![int(0)]);
        // z in {0,1,2}, q in {0,1}: expanded by hand
        assert_eq!(
            cd_values(2, 1).unwrap(),
            vec![int(0), rat(1, 2), int(1), rat(3, 2), int(2), rat(5, 2)]
        );
        assert_eq!(cd_values(2, 0).unwrap(), vec![int(0), rat(1, 2), int(1), rat(3, 2)]);
        assert!(cd_values(0, 1).is_err());
        let g = CdGrid::new(3, 2).unwrap();
        assert_eq!(g.len(), 21);
        assert_eq!(g.index_of(&rat(7, 3)), Some(7));
        assert_eq!(g.index_of(&rat(1, 2)), None);
    }

    #[test]
    fn enumerate_examples() {
        let mut open = Instance::with_vars(2);
        open.push_atom(0, 1, Interval::open(0, 1));
        let m = solve_enumerate(&open).unwrap();
        assert!(open.eval(&m).unwrap());
        assert_eq!(m, Assignment::total(vec![rat(1, 2), int(0)]));

        let mut cyc = Instance::with_vars(2);
        cyc.push_atom(0, 1, Interval::point(1));
        cyc.push_atom(1, 0, Interval::point(1));
        assert!(solve_enumerate(&cyc).is_none());

        // max(x,y) >= z with z - x = 1 forced: x, y, z
        let mut max = Instance::with_vars(3);
        max.push(Constraint::new(vec![Atom::new(2, 0, Interval::at_most(0)), Atom::new(2, 1, Interval::at_most(0))]));
        max.push_atom(2, 0, Interval::point(1));
        let m = solve_enumerate(&max).unwrap();
        assert!(max.eval(&m).unwrap());
        assert!(Atom::new(2, 1, Interval::at_most(0)).eval(&m).unwrap());
    }

    #[test]
    fn compactify_examples() {
        let inst = {
            let mut i = Instance::with_vars(2);
            i.push_atom(0, 1, Interval::closed(-1, 1));
            i
        };
        let f = compactify(&Assignment::total(vec![rat(29, 4), rat(29, 4)]), &inst).unwrap();
        assert_eq!(f, Assignment::from_ints(&[0, 0]));
        let g = Assignment::from_ints(&[0, 100]);
        let f = compactify(&g, &inst).unwrap();
        assert_eq!(f, Assignment::from_ints(&[0, 2]));
        assert!(equivalent_up_to(1, &g, &f));

        let mut three = Instance::with_vars(3);
        three.push_atom(0, 1, Interval::closed(-1, 1));
        let g = Assignment::total(vec![rat(3, 10), rat(7, 10), rat(17, 10)]);
        let f = compactify(&g, &three).unwrap();
        assert_eq!(f, Assignment::total(vec![int(0), rat(1, 3), rat(4, 3)]));
        assert!(equivalent_up_to(1, &g, &f));
    }

    #[test]
    fn equivalence_examples() {
        let f = Assignment::from_ints(&[0, 5]);
        assert!(equivalent_up_to(3, &f, &f));
        assert!(equivalent_up_to(3, &f, &Assignment::from_ints(&[0, 9])));
        assert!(!equivalent_up_to(0, &Assignment::total(vec![int(0), rat(1, 2)]), &Assignment::from_ints(&[0, 0])));
        assert!(!equivalent_up_to(3, &Assignment::from_ints(&[0, 2]), &Assignment::from_ints(&[0, 3])));
    }

    #[test]
    fn certificate_examples() {
        let mut two = Instance::with_vars(2);
        two.push(Constraint::new(vec![Atom::new(0, 1, Interval::point(0)), Atom::new(0, 1, Interval::point(1))]));
        let certs = list_certificates(&two);
        assert_eq!(
            certs,
            vec![
                Certificate { atoms: vec![Atom::new(0, 1, Interval::point(0))] },
                Certificate { atoms: vec![Atom::new(0, 1, Interval::point(1))] },
            ]
        );
        let mut cyc = Instance::with_vars(2);
        cyc.push_atom(0, 1, Interval::point(1));
        cyc.push_atom(1, 0, Interval::point(1));
        assert!(list_certificates(&cyc).is_empty());
        assert_eq!(list_certificates(&Instance::with_vars(1)), vec![Certificate { atoms: vec![] }]);
    }

    #[test]
    fn oracle_examples() {
        let mut single = Instance::with_vars(2);
        single.push_atom(0, 1, Interval::closed(1, 2));
        assert!(certificate_oracle(&single, 10).unwrap());
        assert!(certificate_exists(&single));
        let mut cyc = Instance::with_vars(2);
        cyc.push_atom(0, 1, Interval::point(1));
        cyc.push_atom(1, 0, Interval::point(1));
        assert!(!certificate_oracle(&cyc, 10).unwrap());
        assert!(!certificate_exists(&cyc));
        let mut wide = Instance::with_vars(2);
        for _ in 0..3 {
            wide.push(Constraint::new(cell_cover(0, 1, 1)));
        }
        assert_eq!(certificate_oracle(&wide, 100), Err(Error::OracleBlowUp { cap: 100 }));
        let mut empty = Instance::with_vars(1);
        empty.push(Constraint::empty());
        assert!(!certificate_oracle(&empty, 10).unwrap());
        assert!(!certificate_exists(&empty));
    }

    #[test]
    fn cell_cover_is_a_partition() {
        let cover = cell_cover(0, 1, 2);
        for t in -12..=12 {
            let a = Assignment::total(vec![rat(t, 4), int(0)]);
            let hits = cover.iter().filter(|atom| atom.eval(&a).unwrap()).count();
            assert_eq!(hits, 1, "{t}/4");
        }
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::testkit;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn planted_models_compactify((inst, g) in testkit::planted(4, 5, 2)) {
            prop_assert!(inst.eval(&g).unwrap());
            let model = solve_enumerate(&inst);
            prop_assert!(model.is_some());
            prop_assert!(inst.eval(&model.unwrap()).unwrap());
            let f = compactify(&g, &inst).unwrap();
            let grid = grid_for(&inst);
            prop_assert!(f.values().unwrap().iter().all(|v| grid.contains(v)));
            prop_assert!(equivalent_up_to(inst.num_bound(), &g, &f));
            prop_assert!(inst.eval(&f).unwrap());
        }

        #[test]
        fn enumeration_matches_oracle(inst in testkit::instance(3, 4, 2, false)) {
            let model = solve_enumerate(&inst);
            if let Some(m) = &model {
                prop_assert!(inst.eval(m).unwrap());
            }
            prop_assert_eq!(model.is_some(), certificate_oracle(&inst, 1 << 20).unwrap());
            prop_assert_eq!(certificate_exists(&inst), model.is_some());
        }

        #[test]
        fn certificates_are_feasible_covers(inst in testkit::instance(3, 3, 1, false)) {
            let certs = list_certificates(&inst);
            let universe = atom_universe(&inst);
            for c in &certs {
                prop_assert!(c.is_feasible(inst.var_count()));
                prop_assert!(c.covers(&inst));
                prop_assert!(c.atoms.iter().all(|a| universe.contains(a)));
            }
            prop_assert_eq!(!certs.is_empty(), certificate_oracle(&inst, 1 << 20).unwrap());
        }
    }
}
