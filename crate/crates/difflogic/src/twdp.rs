//! Dynamic programming over a nice tree decomposition of the incidence
//! graph. Records pair an assignment of the bag variables (as indices into
//! the compact grid) with a state per bag constraint.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cd::{grid_for, CdGrid};
use crate::error::{Error, Result};
use crate::instance::{Assignment, Constraint, Instance};
use crate::structure::{incidence_graph, validate, NiceDecomposition, NiceKind};
use crate::VarId;

/// State of a bag constraint in a record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BetaState {
    /// Satisfied by the assignment below.
    Sat,
    /// Not yet satisfied.
    Unsat,
    /// Not yet satisfied, but may use that the forgotten variable has the
    /// given grid value.
    Pending(VarId, u32),
}

/// `alpha[i]` is the grid index of the i-th bag variable, `beta[j]` the
/// state of the j-th bag constraint (both in ascending id order).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Record {
    pub alpha: Vec<u32>,
    pub beta: Vec<BetaState>,
}

pub type RecordSet = BTreeSet<Record>;

/// Options for [`solve_tw_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TwOptions {
    /// Keep one origin per record and rebuild a model top-down.
    pub recover_model: bool,
}

/// The variables and constraints of one bag.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BagParts {
    pub vars: Vec<VarId>,
    pub cons: Vec<usize>,
}

fn split_bag(bag: &[usize], n: usize) -> BagParts {
    BagParts {
        vars: bag.iter().copied().filter(|&v| v < n).collect(),
        cons: bag.iter().copied().filter(|&v| v >= n).map(|v| v - n).collect(),
    }
}

/// True if some disjunct has both endpoints assigned by `value` and holds.
fn satisfied_by(c: &Constraint, grid: &CdGrid, value: impl Fn(VarId) -> Option<u32>) -> bool {
    c.disjuncts.iter().any(|a| match (value(a.x), value(a.y)) {
        (Some(tx), Some(ty)) => a.interval.contains_scaled(tx as i64 - ty as i64, grid.n as i64),
        _ => false,
    })
}

/// Shared context of the transitions.
pub struct TwContext<'a> {
    pub inst: &'a Instance,
    pub grid: CdGrid,
    scopes: Vec<Vec<VarId>>,
}

impl<'a> TwContext<'a> {
    pub fn new(inst: &'a Instance) -> TwContext<'a> {
        TwContext { inst, grid: grid_for(inst), scopes: inst.constraints.iter().map(Constraint::scope).collect() }
    }

    pub fn parts(&self, bag: &[usize]) -> BagParts {
        split_bag(bag, self.inst.var_count())
    }

    fn sat_in_bag(&self, c: usize, parts: &BagParts, alpha: &[u32]) -> bool {
        satisfied_by(&self.inst.constraints[c], &self.grid, |v| parts.vars.binary_search(&v).ok().map(|i| alpha[i]))
    }

    fn sat_pair(&self, c: usize, a: (VarId, u32), b: (VarId, u32)) -> bool {
        satisfied_by(&self.inst.constraints[c], &self.grid, |v| {
            if v == a.0 {
                Some(a.1)
            } else if v == b.0 {
                Some(b.1)
            } else {
                None
            }
        })
    }

    /// Variable leaf: every value of the variable, no constraints.
    pub fn leaf_var(&self) -> RecordSet {
        (0..self.grid.len() as u32).map(|d| Record { alpha: vec![d], beta: Vec::new() }).collect()
    }

    /// Constraint leaf: the constraint is not yet satisfied.
    pub fn leaf_con(&self) -> RecordSet {
        [Record { alpha: Vec::new(), beta: vec![BetaState::Unsat] }].into_iter().collect()
    }

    /// Introduces variable `v` into a bag whose parts after the step are `parts`.
    pub fn intro_var(&self, child: &RecordSet, parts: &BagParts, v: VarId) -> Vec<(Record, Record)> {
        let at = parts.vars.binary_search(&v).expect("introduced variable in bag");
        let mut out = Vec::new();
        for r0 in child {
            for d in 0..self.grid.len() as u32 {
                let mut alpha = r0.alpha.clone();
                alpha.insert(at, d);
                let beta = r0
                    .beta
                    .iter()
                    .zip(&parts.cons)
                    .map(|(&s, &c)| match s {
                        BetaState::Sat => BetaState::Sat,
                        BetaState::Unsat if self.sat_in_bag(c, parts, &alpha) => BetaState::Sat,
                        BetaState::Pending(u, du) if self.sat_pair(c, (v, d), (u, du)) => BetaState::Sat,
                        other => other,
                    })
                    .collect();
                out.push((Record { alpha, beta }, r0.clone()));
            }
        }
        out
    }

    /// Introduces constraint `c`: satisfied or not by the bag assignment.
    pub fn intro_con(&self, child: &RecordSet, parts: &BagParts, c: usize) -> Vec<(Record, Record)> {
        let at = parts.cons.binary_search(&c).expect("introduced constraint in bag");
        child
            .iter()
            .map(|r0| {
                let s = if self.sat_in_bag(c, parts, &r0.alpha) { BetaState::Sat } else { BetaState::Unsat };
                let mut beta = r0.beta.clone();
                beta.insert(at, s);
                (Record { alpha: r0.alpha.clone(), beta }, r0.clone())
            })
            .collect()
    }

    /// Forgets variable `v`; `child_parts` is the bag before the step. Any
    /// subset of the unsatisfied constraints with `v` in scope may become
    /// pending on `v`.
    pub fn forget_var(&self, child: &RecordSet, child_parts: &BagParts, v: VarId) -> Vec<(Record, Record)> {
        let at = child_parts.vars.binary_search(&v).expect("forgotten variable in child bag");
        let mut out = Vec::new();
        for r0 in child {
            let d = r0.alpha[at];
            let mut alpha = r0.alpha.clone();
            alpha.remove(at);
            let open: Vec<usize> = (0..r0.beta.len())
                .filter(|&j| r0.beta[j] == BetaState::Unsat && self.scopes[child_parts.cons[j]].binary_search(&v).is_ok())
                .collect();
            for mask in 0u64..1 << open.len() {
                let mut beta = r0.beta.clone();
                for (b, &j) in open.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        beta[j] = BetaState::Pending(v, d);
                    }
                }
                out.push((Record { alpha: alpha.clone(), beta }, r0.clone()));
            }
        }
        out
    }

    /// Forgets constraint `c`: keeps the records where it is satisfied.
    pub fn forget_con(&self, child: &RecordSet, child_parts: &BagParts, c: usize) -> Vec<(Record, Record)> {
        let at = child_parts.cons.binary_search(&c).expect("forgotten constraint in child bag");
        child
            .iter()
            .filter(|r0| r0.beta[at] == BetaState::Sat)
            .map(|r0| {
                let mut beta = r0.beta.clone();
                beta.remove(at);
                (Record { alpha: r0.alpha.clone(), beta }, r0.clone())
            })
            .collect()
    }

    /// Combines compatible pairs: equal assignments, and constraints pending
    /// on both sides must be satisfied by the two pending values together.
    pub fn join(&self, left: &RecordSet, right: &RecordSet, parts: &BagParts) -> Vec<(Record, Record, Record)> {
        let mut by_alpha: BTreeMap<&[u32], Vec<&Record>> = BTreeMap::new();
        for r in right {
            by_alpha.entry(&r.alpha).or_default().push(r);
        }
        let mut out = Vec::new();
        for r1 in left {
            let Some(matches) = by_alpha.get(r1.alpha.as_slice()) else { continue };
            'pair: for r2 in matches {
                let mut beta = Vec::with_capacity(r1.beta.len());
                for (j, (&b1, &b2)) in r1.beta.iter().zip(&r2.beta).enumerate() {
                    use BetaState::*;
                    let s = match (b1, b2) {
                        (Sat, _) | (_, Sat) => Sat,
                        (Unsat, Unsat) => Unsat,
                        (Pending(v, d), Unsat) | (Unsat, Pending(v, d)) => Pending(v, d),
                        (Pending(v1, d1), Pending(v2, d2)) => {
                            if !self.sat_pair(parts.cons[j], (v1, d1), (v2, d2)) {
                                continue 'pair;
                            }
                            Sat
                        }
                    };
                    beta.push(s);
                }
                out.push((Record { alpha: r1.alpha.clone(), beta }, r1.clone(), (*r2).clone()));
            }
        }
        out
    }
}

/// Bound on the number of records of a node: `(|V| |CD| + 2)^(w+1)`.
pub fn record_bound(inst: &Instance, width: usize) -> u128 {
    let base = inst.var_count() as u128 * grid_for(inst).len() as u128 + 2;
    base.checked_pow(width as u32 + 1).unwrap_or(u128::MAX)
}

/// Checks that `nd` is a nice decomposition of the incidence graph.
pub fn check_decomposition(inst: &Instance, nd: &NiceDecomposition) -> Result<()> {
    nd.check().map_err(|e| Error::DecompositionMismatch(format!("{e}")))?;
    validate(&nd.to_tree(), &incidence_graph(inst)).map_err(|v| Error::DecompositionMismatch(format!("{v}")))
}

enum Origin {
    None,
    One(Record),
    Two(Record, Record),
}

fn collect<I: IntoIterator<Item = (Record, Origin)>>(it: I, keep: bool) -> (RecordSet, BTreeMap<Record, Origin>) {
    let mut set = RecordSet::new();
    let mut origins = BTreeMap::new();
    for (r, o) in it {
        if keep {
            origins.entry(r.clone()).or_insert(o);
        }
        set.insert(r);
    }
    (set, origins)
}

struct DpRun {
    sets: Vec<RecordSet>,
    origins: Vec<BTreeMap<Record, Origin>>,
}

fn run(inst: &Instance, nd: &NiceDecomposition, keep: bool) -> Result<DpRun> {
    check_decomposition(inst, nd)?;
    let ctx = TwContext::new(inst);
    let mut sets: Vec<RecordSet> = Vec::with_capacity(nd.nodes.len());
    let mut origins = Vec::with_capacity(nd.nodes.len());
    for t in &nd.nodes {
        let parts = ctx.parts(&t.bag);
        let child_parts = |i: usize| ctx.parts(&nd.nodes[t.children[i]].bag);
        let one = |v: Vec<(Record, Record)>| v.into_iter().map(|(r, o)| (r, Origin::One(o)));
        let (set, orig) = match t.kind {
            NiceKind::Leaf => {
                let leaf = if !parts.vars.is_empty() {
                    ctx.leaf_var()
                } else if !parts.cons.is_empty() {
                    ctx.leaf_con()
                } else {
                    [Record { alpha: Vec::new(), beta: Vec::new() }].into_iter().collect()
                };
                collect(leaf.into_iter().map(|r| (r, Origin::None)), keep)
            }
            NiceKind::Introduce(x) => {
                let child = &sets[t.children[0]];
                if x < inst.var_count() {
                    collect(one(ctx.intro_var(child, &parts, x)), keep)
                } else {
                    collect(one(ctx.intro_con(child, &parts, x - inst.var_count())), keep)
                }
            }
            NiceKind::Forget(x) => {
                let child = &sets[t.children[0]];
                if x < inst.var_count() {
                    collect(one(ctx.forget_var(child, &child_parts(0), x)), keep)
                } else {
                    collect(one(ctx.forget_con(child, &child_parts(0), x - inst.var_count())), keep)
                }
            }
            NiceKind::Join => {
                let out = ctx.join(&sets[t.children[0]], &sets[t.children[1]], &parts);
                collect(out.into_iter().map(|(r, a, b)| (r, Origin::Two(a, b))), keep)
            }
        };
        sets.push(set);
        origins.push(orig);
    }
    Ok(DpRun { sets, origins })
}

/// Every record set `R(t)`, indexed like `nd.nodes`.
pub fn record_sets(inst: &Instance, nd: &NiceDecomposition) -> Result<Vec<RecordSet>> {
    Ok(run(inst, nd, false)?.sets)
}

/// Decides the instance: satisfiable iff the root has a record.
pub fn solve_tw(inst: &Instance, nd: &NiceDecomposition) -> Result<bool> {
    Ok(!run(inst, nd, false)?.sets[nd.root].is_empty())
}

/// Like [`solve_tw`]; with `recover_model` set, a satisfiable instance also
/// yields a model on the compact grid.
pub fn solve_tw_with(inst: &Instance, nd: &NiceDecomposition, opts: TwOptions) -> Result<(bool, Option<Assignment>)> {
    let dp = run(inst, nd, opts.recover_model)?;
    let Some(top) = dp.sets[nd.root].iter().next() else { return Ok((false, None)) };
    if !opts.recover_model {
        return Ok((true, None));
    }
    let grid = grid_for(inst);
    let n = inst.var_count();
    let mut model = Assignment::new(n);
    let mut stack = vec![(nd.root, top.clone())];
    while let Some((t, r)) = stack.pop() {
        let node = &nd.nodes[t];
        for (&v, &d) in split_bag(&node.bag, n).vars.iter().zip(&r.alpha) {
            model.set(v, grid.value(d as usize));
        }
        match dp.origins[t].get(&r).expect("record has an origin") {
            Origin::None => {}
            Origin::One(r0) => stack.push((node.children[0], r0.clone())),
            Origin::Two(a, b) => {
                stack.push((node.children[0], a.clone()));
                stack.push((node.children[1], b.clone()));
            }
        }
    }
    Ok((true, Some(model)))
}

/// The variables and constraints of the subtree below (and at) each node.
fn subtree_parts(inst: &Instance, nd: &NiceDecomposition) -> Vec<BagParts> {
    let n = inst.var_count();
    nd.subtree_vertices().into_iter().map(|s| split_bag(&s.into_iter().collect::<Vec<_>>(), n)).collect()
}

fn for_each_assignment(
    free: &[VarId],
    size: u32,
    cap: u64,
    base: &mut BTreeMap<VarId, u32>,
    f: &mut dyn FnMut(&BTreeMap<VarId, u32>) -> bool,
) -> Result<bool> {
    let total = (size as u64).checked_pow(free.len() as u32).unwrap_or(u64::MAX);
    if total > cap {
        return Err(Error::OracleBlowUp { cap });
    }
    let mut digits = vec![0u32; free.len()];
    loop {
        for (&v, &d) in free.iter().zip(&digits) {
            base.insert(v, d);
        }
        if f(base) {
            return Ok(true);
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Ok(false);
            }
            digits[i] += 1;
            if digits[i] < size {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Whether `record` is valid for node `t`: some assignment of the subtree
/// variables over the compact grid agrees with the record's assignment and
/// pending values, satisfies exactly the subtree constraints outside the
/// record's non-satisfied set, and none inside it. Exponential; `cap` limits
/// the number of assignments tried.
pub fn check_record_validity(record: &Record, t: usize, inst: &Instance, nd: &NiceDecomposition, cap: u64) -> Result<bool> {
    let grid = grid_for(inst);
    let parts = split_bag(&nd.nodes[t].bag, inst.var_count());
    let below = &subtree_parts(inst, nd)[t];
    if record.alpha.len() != parts.vars.len() || record.beta.len() != parts.cons.len() {
        return Ok(false);
    }
    let mut fixed: BTreeMap<VarId, u32> = parts.vars.iter().copied().zip(record.alpha.iter().copied()).collect();
    for (&c, s) in parts.cons.iter().zip(&record.beta) {
        if let BetaState::Pending(v, d) = *s {
            let scope_ok = inst.constraints[c].scope().binary_search(&v).is_ok();
            let forgotten = below.vars.binary_search(&v).is_ok() && parts.vars.binary_search(&v).is_err();
            if !scope_ok || !forgotten || d as usize >= grid.len() || fixed.get(&v).is_some_and(|&e| e != d) {
                return Ok(false);
            }
            fixed.insert(v, d);
        }
    }
    let free: Vec<VarId> = below.vars.iter().copied().filter(|v| !fixed.contains_key(v)).collect();
    for_each_assignment(&free, grid.len() as u32, cap, &mut fixed, &mut |tau| {
        let sat = |c: usize| satisfied_by(&inst.constraints[c], &grid, |v| tau.get(&v).copied());
        below.cons.iter().all(|&c| match parts.cons.binary_search(&c) {
            Ok(j) => sat(c) == (record.beta[j] == BetaState::Sat),
            Err(_) => sat(c),
        })
    })
}

/// Every valid record of node `t`, generated from the assignments of the
/// subtree variables (the records each assignment witnesses).
pub fn valid_records_brute(t: usize, inst: &Instance, nd: &NiceDecomposition, cap: u64) -> Result<RecordSet> {
    let grid = grid_for(inst);
    let parts = split_bag(&nd.nodes[t].bag, inst.var_count());
    let below = &subtree_parts(inst, nd)[t];
    let forgotten: Vec<VarId> = below.vars.iter().copied().filter(|v| parts.vars.binary_search(v).is_err()).collect();
    let mut out = RecordSet::new();
    let mut base = BTreeMap::new();
    for_each_assignment(&below.vars, grid.len() as u32, cap, &mut base, &mut |tau| {
        let sat = |c: usize| satisfied_by(&inst.constraints[c], &grid, |v| tau.get(&v).copied());
        if !below.cons.iter().all(|&c| parts.cons.contains(&c) || sat(c)) {
            return false;
        }
        let alpha: Vec<u32> = parts.vars.iter().map(|v| tau[v]).collect();
        let options: Vec<Vec<BetaState>> = parts
            .cons
            .iter()
            .map(|&c| {
                if sat(c) {
                    return vec![BetaState::Sat];
                }
                let scope = inst.constraints[c].scope();
                let mut o = vec![BetaState::Unsat];
                o.extend(
                    forgotten.iter().filter(|v| scope.binary_search(v).is_ok()).map(|&v| BetaState::Pending(v, tau[&v])),
                );
                o
            })
            .collect();
        let mut idx = vec![0usize; options.len()];
        loop {
            out.insert(Record { alpha: alpha.clone(), beta: idx.iter().zip(&options).map(|(&i, o)| o[i]).collect() });
            let mut i = 0;
            loop {
                if i == idx.len() {
                    return false;
                }
                idx[i] += 1;
                if idx[i] < options[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cd::certificate_oracle;
    use crate::instance::Atom;
    use crate::interval::Interval;
    use crate::structure::{incidence_decomposition, to_nice};

    fn nice(inst: &Instance) -> NiceDecomposition {
        to_nice(&incidence_decomposition(inst)).unwrap()
    }

    fn subset_sum_like(steps: &[i64], total: i64) -> Instance {
        // x0 .. x_s, each step either 0 or its value, then x_s - x0 = total
        let s = steps.len();
        let mut inst = Instance::with_vars(s + 1);
        for (i, &a) in steps.iter().enumerate() {
            inst.push(Constraint::new(vec![
                Atom::new(i + 1, i, Interval::point(0)),
                Atom::new(i + 1, i, Interval::point(a)),
            ]));
        }
        inst.push_atom(s, 0, Interval::point(total));
        inst
    }

    #[test]
    fn subset_sum_examples() {
        let yes = subset_sum_like(&[1, 2], 3);
        assert!(solve_tw(&yes, &nice(&yes)).unwrap());
        let no = subset_sum_like(&[2, 4], 3);
        assert!(!solve_tw(&no, &nice(&no)).unwrap());
        let one = Instance::with_vars(1);
        assert!(solve_tw(&one, &nice(&one)).unwrap());
    }

    #[test]
    fn model_recovery() {
        let yes = subset_sum_like(&[1, 2], 3);
        let (sat, model) = solve_tw_with(&yes, &nice(&yes), TwOptions { recover_model: true }).unwrap();
        assert!(sat);
        assert!(yes.eval(&model.unwrap()).unwrap());
        let no = subset_sum_like(&[2, 4], 3);
        assert_eq!(solve_tw_with(&no, &nice(&no), TwOptions { recover_model: true }).unwrap(), (false, None));
    }

    #[test]
    fn node_transitions() {
        let mut inst = Instance::with_vars(2);
        inst.push_atom(0, 1, Interval::point(1));
        let ctx = TwContext::new(&inst);
        // CD(2,1): 3 integer parts, 6 values
        assert_eq!(ctx.leaf_var().len(), 6);
        assert_eq!(ctx.leaf_con().into_iter().collect::<Vec<_>>(), vec![Record { alpha: vec![], beta: vec![BetaState::Unsat] }]);
        let both = BagParts { vars: vec![0, 1], cons: vec![0] };
        let r0: RecordSet = [Record { alpha: vec![0], beta: vec![BetaState::Unsat] }].into_iter().collect();
        let up = ctx.intro_var(&r0, &both, 0);
        // x0 - x1 = 1 needs x0 = 2/2
        let sat: Vec<u32> = up.iter().filter(|(r, _)| r.beta[0] == BetaState::Sat).map(|(r, _)| r.alpha[0]).collect();
        assert_eq!(sat, vec![2]);
        let con_only = BagParts { vars: vec![1], cons: vec![0] };
        let fv = ctx.forget_var(&[Record { alpha: vec![3, 0], beta: vec![BetaState::Unsat] }].into_iter().collect(), &both, 0);
        let got: Vec<Record> = fv.into_iter().map(|(r, _)| r).collect();
        assert_eq!(got, vec![
            Record { alpha: vec![0], beta: vec![BetaState::Unsat] },
            Record { alpha: vec![0], beta: vec![BetaState::Pending(0, 3)] },
        ]);
        let fc = ctx.forget_con(
            &[Record { alpha: vec![0], beta: vec![BetaState::Unsat] }, Record { alpha: vec![1], beta: vec![BetaState::Sat] }]
                .into_iter()
                .collect(),
            &con_only,
            0,
        );
        assert_eq!(fc.len(), 1);
        let ic = ctx.intro_con(&[Record { alpha: vec![2, 0], beta: vec![] }].into_iter().collect(), &both, 0);
        assert_eq!(ic[0].0.beta, vec![BetaState::Sat]);
    }

    #[test]
    fn join_rules() {
        let mut inst = Instance::with_vars(3);
        inst.push(Constraint::new(vec![Atom::new(0, 2, Interval::point(1))]));
        let ctx = TwContext::new(&inst);
        let parts = BagParts { vars: vec![1], cons: vec![0] };
        let rec = |b: BetaState| Record { alpha: vec![0], beta: vec![b] };
        let set = |rs: &[Record]| rs.iter().cloned().collect::<RecordSet>();
        // CD(3,1) has step 1/3; x0 = 3/3, x2 = 0 satisfies
        let left = set(&[rec(BetaState::Pending(0, 3)), rec(BetaState::Unsat)]);
        let right = set(&[rec(BetaState::Pending(2, 0)), rec(BetaState::Pending(2, 1)), rec(BetaState::Sat)]);
        let fwd: RecordSet = ctx.join(&left, &right, &parts).into_iter().map(|t| t.0).collect();
        let back: RecordSet = ctx.join(&right, &left, &parts).into_iter().map(|t| t.0).collect();
        assert_eq!(fwd, back);
        assert_eq!(fwd, set(&[rec(BetaState::Sat), rec(BetaState::Pending(2, 0)), rec(BetaState::Pending(2, 1))]));
    }

    #[test]
    fn records_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..25 {
            let n = rng.gen_range(1..=3);
            let mut inst = Instance::with_vars(n);
            for _ in 0..rng.gen_range(0..=3) {
                let atoms = (0..rng.gen_range(0..=2))
                    .filter_map(|_| {
                        let x = rng.gen_range(0..n);
                        let y = rng.gen_range(0..n);
                        (x != y).then(|| Atom::new(x, y, Interval::closed(rng.gen_range(-1..=0), rng.gen_range(0..=1))))
                    })
                    .collect();
                inst.push(Constraint::new(atoms));
            }
            let nd = nice(&inst);
            let sets = record_sets(&inst, &nd).unwrap();
            let bound = record_bound(&inst, nd.width());
            for (t, set) in sets.iter().enumerate() {
                assert_eq!(set, &valid_records_brute(t, &inst, &nd, 1 << 20).unwrap(), "node {t} of {inst:?}");
                assert!(set.len() as u128 <= bound);
                for r in set {
                    assert!(check_record_validity(r, t, &inst, &nd, 1 << 20).unwrap());
                }
            }
            assert_eq!(!sets[nd.root].is_empty(), certificate_oracle(&inst, 1 << 24).unwrap());
        }
    }

    #[test]
    fn validity_examples() {
        let mut inst = Instance::with_vars(2);
        inst.push_atom(0, 1, Interval::point(5));
        let nd = nice(&inst);
        let leaf = nd.nodes.iter().position(|t| t.kind == NiceKind::Leaf).unwrap();
        let r = Record { alpha: vec![0], beta: vec![] };
        assert!(check_record_validity(&r, leaf, &inst, &nd, 1 << 20).unwrap());
        // a constraint that no grid assignment satisfies cannot be marked satisfied
        let mut empty = Instance::with_vars(2);
        empty.push(Constraint::empty());
        let nd = nice(&empty);
        let t = nd.nodes.iter().position(|t| t.bag.contains(&2)).unwrap();
        let vars = nd.nodes[t].bag.iter().filter(|&&v| v < 2).count();
        let claim = |b| Record { alpha: vec![0; vars], beta: vec![b] };
        assert!(!check_record_validity(&claim(BetaState::Sat), t, &empty, &nd, 1 << 20).unwrap());
        assert!(check_record_validity(&claim(BetaState::Unsat), t, &empty, &nd, 1 << 20).unwrap());
    }

    #[test]
    fn mismatched_decomposition() {
        let mut inst = Instance::with_vars(2);
        inst.push_atom(0, 1, Interval::point(1));
        let other = Instance::with_vars(2);
        assert!(matches!(solve_tw(&inst, &nice(&other)), Err(Error::DecompositionMismatch(_))));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::cd::certificate_oracle;
    use crate::structure::{incidence_decomposition, to_nice, NiceKind};
    use crate::testkit;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn decision_matches_oracle(inst in testkit::instance(3, 4, 1, false)) {
            let nd = to_nice(&incidence_decomposition(&inst)).unwrap();
            prop_assert_eq!(solve_tw(&inst, &nd).unwrap(), certificate_oracle(&inst, 1 << 24).unwrap());
            let (sat, model) = solve_tw_with(&inst, &nd, TwOptions { recover_model: true }).unwrap();
            prop_assert_eq!(sat, model.is_some());
            if let Some(m) = model {
                prop_assert!(inst.eval(&m).unwrap());
            }
        }

        #[test]
        fn joins_are_symmetric(inst in testkit::instance(3, 4, 1, false)) {
            let nd = to_nice(&incidence_decomposition(&inst)).unwrap();
            let sets = record_sets(&inst, &nd).unwrap();
            let ctx = TwContext::new(&inst);
            for node in nd.nodes.iter().filter(|t| t.kind == NiceKind::Join) {
                let parts = ctx.parts(&node.bag);
                let (l, r) = (&sets[node.children[0]], &sets[node.children[1]]);
                let lr: RecordSet = ctx.join(l, r, &parts).into_iter().map(|t| t.0).collect();
                let rl: RecordSet = ctx.join(r, l, &parts).into_iter().map(|t| t.0).collect();
                prop_assert_eq!(lr, rl);
            }
        }
    }
}
