//! Quantifier-free difference-logic formulas: evaluation, CNF conversion,
//! satisfiability by grid enumeration, and relations defined by CNF.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::cd::CdGrid;
use crate::error::{Error, Result};
use crate::instance::{Assignment, Atom, Constraint, Instance};
use crate::interval::Interval;
use crate::VarId;

/// Default limit on the number of clauses produced by [`to_cnf`].
pub const DEFAULT_CNF_CAP: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Atom(Atom),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
    False,
}

impl Formula {
    pub fn atom(x: VarId, y: VarId, interval: Interval) -> Formula {
        Formula::Atom(Atom::new(x, y, interval))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    /// Largest absolute finite endpoint of any atom.
    pub fn num_bound(&self) -> u64 {
        match self {
            Formula::Atom(a) => a.interval.max_abs().unwrap_or(0),
            Formula::And(cs) | Formula::Or(cs) => cs.iter().map(Formula::num_bound).max().unwrap_or(0),
            Formula::Not(f) => f.num_bound(),
            Formula::False => 0,
        }
    }

    /// Number of variables needed to cover every atom (max id + 1).
    pub fn var_span(&self) -> usize {
        match self {
            Formula::Atom(a) => a.x.max(a.y) + 1,
            Formula::And(cs) | Formula::Or(cs) => cs.iter().map(Formula::var_span).max().unwrap_or(0),
            Formula::Not(f) => f.var_span(),
            Formula::False => 0,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::False => 0,
            Formula::And(cs) | Formula::Or(cs) => 1 + cs.iter().map(Formula::depth).max().unwrap_or(0),
            Formula::Not(f) => 1 + f.depth(),
        }
    }

    fn eval_with<F: Fn(&Atom) -> Result<bool> + Copy>(&self, atom: F) -> Result<bool> {
        Ok(match self {
            Formula::Atom(a) => atom(a)?,
            Formula::And(cs) => {
                for c in cs {
                    if !c.eval_with(atom)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Or(cs) => {
                for c in cs {
                    if c.eval_with(atom)? {
                        return Ok(true);
                    }
                }
                false
            }
            Formula::Not(f) => !f.eval_with(atom)?,
            Formula::False => false,
        })
    }
}

/// Boolean value of `f` under `a`; `not` of an atom holds iff the difference
/// lies outside the interval.
pub fn eval_formula(f: &Formula, a: &Assignment) -> Result<bool> {
    f.eval_with(|atom| atom.eval(a))
}

/// Enumerates `CD(n, k)^n` (`n` declared variables, `k = num_bound`) in
/// lexicographic order and returns the first model.
pub fn solve_dlsat(f: &Formula, var_count: usize) -> Result<Option<Assignment>> {
    if f.var_span() > var_count {
        return Err(Error::InvalidArgument("formula uses an undeclared variable"));
    }
    let grid = CdGrid::new(var_count.max(1), f.num_bound())?;
    let m = grid.len();
    let scale = grid.n as i64;
    let mut t = vec![0usize; var_count];
    loop {
        let holds = f.eval_with(|a| Ok(a.interval.contains_scaled(t[a.x] as i64 - t[a.y] as i64, scale)))?;
        if holds {
            return Ok(Some(Assignment::total(t.iter().map(|&v| grid.value(v)).collect())));
        }
        let mut i = var_count;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if t[i] + 1 < m {
                t[i] += 1;
                break;
            }
            t[i] = 0;
        }
    }
}

/// Negation normal form: negations are pushed into the atoms.
#[derive(Clone, Debug)]
enum Nnf {
    Lit(Atom),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
    True,
    False,
}

fn nnf(f: &Formula, negate: bool) -> Nnf {
    match (f, negate) {
        (Formula::Atom(a), false) => Nnf::Lit(*a),
        (Formula::Atom(a), true) => {
            let parts: Vec<Nnf> = a.interval.complement().into_iter().map(|iv| Nnf::Lit(Atom::new(a.x, a.y, iv))).collect();
            if parts.is_empty() {
                Nnf::False
            } else {
                Nnf::Or(parts)
            }
        }
        (Formula::And(cs), false) | (Formula::Or(cs), true) => Nnf::And(cs.iter().map(|c| nnf(c, negate)).collect()),
        (Formula::Or(cs), false) | (Formula::And(cs), true) => Nnf::Or(cs.iter().map(|c| nnf(c, negate)).collect()),
        (Formula::Not(g), _) => nnf(g, !negate),
        (Formula::False, false) => Nnf::False,
        (Formula::False, true) => Nnf::True,
    }
}

/// A disjunction of atoms; `taut` marks clauses that absorbed a `true`.
#[derive(Clone, Debug)]
struct Clause {
    atoms: Vec<Atom>,
    taut: bool,
}

fn cnf(f: &Nnf, cap: usize) -> Result<Vec<Clause>> {
    let too_many = |n: usize| if n > cap { Err(Error::CnfBlowUp { cap }) } else { Ok(()) };
    match f {
        Nnf::Lit(a) => Ok(vec![Clause { atoms: vec![*a], taut: false }]),
        Nnf::True => Ok(vec![Clause { atoms: Vec::new(), taut: true }]),
        Nnf::False => Ok(vec![Clause { atoms: Vec::new(), taut: false }]),
        Nnf::And(cs) if cs.is_empty() => cnf(&Nnf::True, cap),
        Nnf::And(cs) => {
            let mut out = Vec::new();
            for c in cs {
                out.extend(cnf(c, cap)?);
                too_many(out.len())?;
            }
            Ok(out)
        }
        Nnf::Or(cs) => {
            let mut acc = vec![Clause { atoms: Vec::new(), taut: false }];
            for c in cs {
                let rhs = cnf(c, cap)?;
                too_many(acc.len().saturating_mul(rhs.len()))?;
                let mut next = Vec::with_capacity(acc.len() * rhs.len());
                for l in &acc {
                    for r in &rhs {
                        let mut atoms = l.atoms.clone();
                        for a in &r.atoms {
                            if !atoms.contains(a) {
                                atoms.push(*a);
                            }
                        }
                        next.push(Clause { atoms, taut: l.taut || r.taut });
                    }
                }
                acc = next;
            }
            Ok(acc)
        }
    }
}

/// Converts to an equivalent instance over the same variables: negation
/// normal form (a negated atom becomes the disjunction of the complement
/// intervals), then distribution of `or` over `and`. A clause that absorbed
/// `true` keeps its atoms plus a full-range atom, so the instance mentions
/// every atom of the formula and the bound is unchanged. Fails if more than
/// `cap` clauses arise.
pub fn to_cnf(f: &Formula, var_names: Vec<String>, cap: usize) -> Result<Instance> {
    if f.var_span() > var_names.len() {
        return Err(Error::InvalidArgument("formula uses an undeclared variable"));
    }
    let mut inst = Instance::new(var_names);
    for c in cnf(&nnf(f, false), cap)? {
        match (c.taut, c.atoms.first().copied()) {
            (true, None) => {}
            (true, Some(a)) => {
                let mut atoms = c.atoms;
                atoms.push(Atom::new(a.x, a.y, Interval::full()));
                inst.push(Constraint::new(atoms));
            }
            (false, _) => inst.push(Constraint::new(c.atoms)),
        }
    }
    Ok(inst)
}

/// A relation given by a CNF over its argument positions: each clause is a
/// list of `(i, j, I)` meaning `arg_i - arg_j in I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub arity: usize,
    pub clauses: Vec<Vec<(usize, usize, Interval)>>,
}

impl Relation {
    pub fn new(arity: usize, clauses: Vec<Vec<(usize, usize, Interval)>>) -> Result<Relation> {
        if clauses.iter().flatten().any(|&(i, j, _)| i >= arity || j >= arity) {
            return Err(Error::InvalidArgument("relation clause refers past its arity"));
        }
        Ok(Relation { arity, clauses })
    }

    /// The relation defined by a formula over variables `0..arity`.
    pub fn from_formula(arity: usize, f: &Formula, cap: usize) -> Result<Relation> {
        let names = (0..arity).map(|i| alloc::format!("a{i}")).collect();
        let inst = to_cnf(f, names, cap)?;
        let clauses = inst.constraints.iter().map(|c| c.disjuncts.iter().map(|a| (a.x, a.y, a.interval)).collect()).collect();
        Relation::new(arity, clauses)
    }

    /// `max(x, y) + d >= z` on `(x, y, z)`: `z - x <= d or z - y <= d`.
    pub fn max_atom(d: u64) -> Relation {
        let d = d as i64;
        Relation { arity: 3, clauses: vec![vec![(2, 0, Interval::at_most(d)), (2, 1, Interval::at_most(d))]] }
    }

    /// `x = y` as `x - y <= 0` and `x - y >= 0`.
    pub fn equality() -> Relation {
        Relation { arity: 2, clauses: vec![vec![(0, 1, Interval::at_most(0))], vec![(0, 1, Interval::at_least(0))]] }
    }
}

/// Named relations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationTable {
    defs: BTreeMap<String, Relation>,
}

impl RelationTable {
    pub fn new() -> RelationTable {
        RelationTable::default()
    }

    pub fn define(&mut self, name: &str, rel: Relation) {
        self.defs.insert(name.to_string(), rel);
    }

    pub fn get(&self, name: &str) -> Option<&Relation> {
        self.defs.get(name)
    }
}

/// Replaces each application `name(v_1, ..., v_a)` by the clauses of its
/// definition with argument `i` renamed to `v_i`.
pub fn expand_relations(table: &RelationTable, var_names: Vec<String>, apps: &[(String, Vec<VarId>)]) -> Result<Instance> {
    let n = var_names.len();
    let mut inst = Instance::new(var_names);
    for (name, args) in apps {
        let rel = table.get(name).ok_or_else(|| Error::UnknownRelation(name.clone()))?;
        if rel.arity != args.len() {
            return Err(Error::ArityMismatch { name: name.clone(), expected: rel.arity, got: args.len() });
        }
        if args.iter().any(|&v| v >= n) {
            return Err(Error::InvalidArgument("relation applied to an undeclared variable"));
        }
        for clause in &rel.clauses {
            inst.push(Constraint::new(clause.iter().map(|&(i, j, iv)| Atom::new(args[i], args[j], iv)).collect()));
        }
    }
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cd::certificate_oracle;
    use crate::gen::AllenRelation;
    use crate::instance::int;
    use proptest::prelude::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| alloc::format!("v{i}")).collect()
    }

    /// `phi_k(x, y)`: a unit chain `z_1 = x, ..., z_k = y`.
    fn chain(k: usize) -> Formula {
        // variables: x = 0, z_1..z_k = 1..k, y = k + 1
        let mut parts = vec![Formula::atom(1, 0, Interval::point(0)), Formula::atom(k + 1, k, Interval::point(0))];
        for i in 1..k {
            parts.push(Formula::atom(i + 1, i, Interval::point(1)));
        }
        Formula::And(parts)
    }

    #[test]
    fn evaluation() {
        let a = Assignment::from_ints(&[0, 0, 1, 2, 3, 3]);
        assert!(eval_formula(&chain(4), &a).unwrap());
        let b = Assignment::from_ints(&[0, 0, 1, 2, 3, 4]);
        assert!(!eval_formula(&chain(4), &b).unwrap());
        assert!(!eval_formula(&Formula::False, &a).unwrap());
        let eq = Formula::not(Formula::atom(0, 1, Interval::point(0)));
        assert!(!eval_formula(&eq, &a).unwrap());
        assert!(eval_formula(&Formula::atom(0, 9, Interval::full()), &a).is_err());
    }

    #[test]
    fn dlsat_examples() {
        let both = Formula::And(vec![Formula::atom(0, 1, Interval::point(1)), Formula::atom(1, 0, Interval::point(1))]);
        assert!(solve_dlsat(&both, 2).unwrap().is_none());
        let either = Formula::Or(vec![Formula::atom(0, 1, Interval::point(0)), Formula::atom(0, 1, Interval::point(2))]);
        let model = solve_dlsat(&either, 2).unwrap().unwrap();
        assert!(eval_formula(&either, &model).unwrap());
        assert!(solve_dlsat(&Formula::False, 0).unwrap().is_none());
        assert!(solve_dlsat(&Formula::And(vec![]), 0).unwrap().is_some());
    }

    #[test]
    fn cnf_examples() {
        let a = Formula::atom(0, 1, Interval::point(1));
        let inst = to_cnf(&a, names(2), 10).unwrap();
        assert_eq!(inst.constraints.len(), 1);
        assert_eq!(inst.constraints[0].disjuncts.len(), 1);

        let neg = to_cnf(&Formula::not(Formula::atom(0, 1, Interval::closed(0, 3))), names(2), 10).unwrap();
        let want: Vec<Interval> = vec![Interval::below(0), Interval::above(3)];
        assert_eq!(neg.constraints[0].disjuncts.iter().map(|a| a.interval).collect::<Vec<_>>(), want);

        let (fa, fb, fc) = (
            Formula::atom(0, 1, Interval::point(0)),
            Formula::atom(1, 2, Interval::point(1)),
            Formula::atom(0, 2, Interval::point(2)),
        );
        let dist = to_cnf(&Formula::Or(vec![Formula::And(vec![fa.clone(), fb.clone()]), fc.clone()]), names(3), 10).unwrap();
        let atoms = |c: &Constraint| c.disjuncts.clone();
        let at = |f: &Formula| match f {
            Formula::Atom(a) => *a,
            _ => unreachable!(),
        };
        assert_eq!(dist.constraints.iter().map(atoms).collect::<Vec<_>>(), vec![vec![at(&fa), at(&fc)], vec![at(&fb), at(&fc)]]);

        let wide = Formula::Or((0..20).map(|i| Formula::And(vec![Formula::atom(0, 1, Interval::point(i)); 2])).collect());
        assert!(matches!(to_cnf(&wide, names(2), 1000), Err(Error::CnfBlowUp { cap: 1000 })));
    }

    #[test]
    fn absorbed_true_keeps_bound() {
        let f = Formula::Or(vec![Formula::not(Formula::False), Formula::atom(0, 1, Interval::point(5))]);
        let inst = to_cnf(&f, names(2), 10).unwrap();
        assert_eq!(inst.num_bound(), 5);
        assert!(inst.eval(&Assignment::from_ints(&[0, 0])).unwrap());
    }

    #[test]
    fn relations() {
        let mut table = RelationTable::new();
        table.define("max0", Relation::max_atom(0));
        table.define("eq", Relation::equality());
        table.define("o", Relation::new(2, vec![vec![(0, 1, AllenRelation::Overlaps.interval())]]).unwrap());
        let apps = vec![
            ("max0".to_string(), vec![0, 1, 2]),
            ("o".to_string(), vec![0, 1]),
            ("eq".to_string(), vec![1, 2]),
        ];
        let inst = expand_relations(&table, names(3), &apps).unwrap();
        assert_eq!(inst.constraints[0].disjuncts, vec![Atom::new(2, 0, Interval::at_most(0)), Atom::new(2, 1, Interval::at_most(0))]);
        assert_eq!(inst.constraints[1].disjuncts, vec![Atom::new(0, 1, Interval::open(-1, 0))]);
        assert_eq!(inst.constraints.len(), 4);
        assert_eq!(inst.atoms().filter(|a| a.interval.has_strict_bound()).count(), 1);

        let unknown = vec![("nope".to_string(), vec![0])];
        assert!(matches!(expand_relations(&table, names(3), &unknown), Err(Error::UnknownRelation(_))));
        let wrong = vec![("eq".to_string(), vec![0])];
        assert!(matches!(expand_relations(&table, names(3), &wrong), Err(Error::ArityMismatch { expected: 2, got: 1, .. })));

        let defined = Relation::from_formula(2, &Formula::atom(0, 1, Interval::point(0)), 10).unwrap();
        assert_eq!(defined.clauses, vec![vec![(0, 1, Interval::point(0))]]);
    }

    #[test]
    fn expansion_preserves_solutions() {
        let mut table = RelationTable::new();
        table.define("max1", Relation::max_atom(1));
        let inst = expand_relations(&table, names(3), &[("max1".to_string(), vec![0, 1, 2])]).unwrap();
        for x in -2..=2i64 {
            for y in -2..=2i64 {
                for z in -2..=2i64 {
                    let a = Assignment::total(vec![int(x), int(y), int(z)]);
                    assert_eq!(inst.eval(&a).unwrap(), x.max(y) + 1 >= z);
                }
            }
        }
    }

    fn interval_strategy() -> impl Strategy<Value = Interval> {
        (-2i64..=2, 0i64..=2, 0u8..6).prop_map(|(a, w, kind)| match kind {
            0 => Interval::point(a),
            1 => Interval::closed(a, (a + w).min(2)),
            2 if w > 0 => Interval::open(a, (a + w).min(2).max(a + 1)),
            3 => Interval::above(a),
            4 => Interval::at_most(a),
            _ => Interval::below(a),
        })
    }

    fn formula_strategy() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            8 => (0usize..3, 0usize..3, interval_strategy()).prop_map(|(x, y, iv)| Formula::atom(x, y, iv)),
            1 => Just(Formula::False),
        ];
        leaf.prop_recursive(3, 16, 3, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 0..3).prop_map(Formula::And),
                prop::collection::vec(inner.clone(), 0..3).prop_map(Formula::Or),
                inner.prop_map(Formula::not),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn cnf_is_equivalent(f in formula_strategy(), vals in prop::collection::vec(-6i64..=6, 3)) {
            let inst = to_cnf(&f, names(3), DEFAULT_CNF_CAP).unwrap();
            let a = Assignment::total(vals.iter().map(|&v| crate::instance::rat(v, 2)).collect());
            prop_assert_eq!(eval_formula(&f, &a).unwrap(), inst.eval(&a).unwrap());
            prop_assert_eq!(inst.num_bound(), f.num_bound());
        }

        #[test]
        fn dlsat_matches_cnf_oracle(f in formula_strategy()) {
            let inst = to_cnf(&f, names(3), DEFAULT_CNF_CAP).unwrap();
            let by_grid = solve_dlsat(&f, 3).unwrap();
            prop_assert_eq!(by_grid.is_some(), certificate_oracle(&inst, u64::MAX).unwrap());
            if let Some(m) = by_grid {
                prop_assert!(eval_formula(&f, &m).unwrap());
            }
        }
    }
}
