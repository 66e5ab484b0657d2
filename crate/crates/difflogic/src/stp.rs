//! Conjunctions of simple constraints (simple temporal problems).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::{int, rat, Assignment, Atom};
use crate::interval::Bound;
use crate::{Rational, VarId};

/// A conjunction of atoms over `var_count` variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimpleSystem {
    pub var_count: usize,
    pub atoms: Vec<Atom>,
}

/// `(c, -s)`: the bound `c - s * eps`, compared lexicographically.
type Weight = (i128, i64);

/// `to - from <= c`, strict when `strict`.
#[derive(Clone, Copy, Debug)]
struct Edge {
    from: usize,
    to: usize,
    w: Weight,
}

fn atom_edges(a: &Atom, out: &mut Vec<Edge>) {
    let iv = a.interval;
    if let Bound::Finite(hi) = iv.hi() {
        out.push(Edge { from: a.y, to: a.x, w: (hi as i128, -(iv.hi_open() as i64)) });
    }
    if let Bound::Finite(lo) = iv.lo() {
        out.push(Edge { from: a.x, to: a.y, w: (-(lo as i128), -(iv.lo_open() as i64)) });
    }
}

fn add(a: Weight, b: Weight) -> Weight {
    (a.0 + b.0, a.1 + b.1)
}

impl SimpleSystem {
    pub fn new(var_count: usize, atoms: Vec<Atom>) -> SimpleSystem {
        SimpleSystem { var_count, atoms }
    }

    fn edges(&self) -> Vec<Edge> {
        let mut e = Vec::with_capacity(self.atoms.len() * 2);
        for a in &self.atoms {
            atom_edges(a, &mut e);
        }
        e
    }

    /// Shortest-path potentials from a virtual source, or `None` on a negative cycle.
    fn potentials(&self) -> Option<Vec<Weight>> {
        let edges = self.edges();
        let n = self.var_count;
        let mut d: Vec<Weight> = vec![(0, 0); n];
        for _ in 0..=n {
            let mut changed = false;
            for e in &edges {
                let cand = add(d[e.from], e.w);
                if cand < d[e.to] {
                    d[e.to] = cand;
                    changed = true;
                }
            }
            if !changed {
                return Some(d);
            }
        }
        None
    }

    fn strict_bounds(&self) -> usize {
        self.edges().iter().filter(|e| e.w.1 != 0).count()
    }
}

fn normalized(values: Vec<Rational>) -> Assignment {
    let min = values.iter().min().cloned().unwrap_or_else(|| int(0));
    Assignment::total(values.into_iter().map(|v| v - &min).collect())
}

/// Feasibility with a rational witness.
pub fn stp_feasible(sys: &SimpleSystem) -> Option<Assignment> {
    let d = sys.potentials()?;
    let eps_den = sys.strict_bounds() as i64 + 1;
    let values = d
        .into_iter()
        .map(|(c, neg_s)| {
            let c = i64::try_from(c).expect("potential fits in i64");
            rat(c * eps_den + neg_s, eps_den)
        })
        .collect();
    Some(normalized(values))
}

/// Feasibility with an integer witness; every bound must be closed.
pub fn stp_integer_witness(sys: &SimpleSystem) -> Result<Option<Assignment>> {
    if sys.atoms.iter().any(|a| a.interval.has_strict_bound()) {
        return Err(Error::StrictBound);
    }
    Ok(sys.potentials().map(|d| {
        normalized(d.into_iter().map(|(c, _)| int(i64::try_from(c).expect("potential fits in i64"))).collect())
    }))
}

const INF: Weight = (i128::MAX / 4, 0);

/// All-pairs shortest paths over a growing set of atoms, used by
/// backtracking searches over disjunct selections.
#[derive(Clone, Debug)]
pub struct StpClosure {
    n: usize,
    d: Vec<Weight>,
}

impl StpClosure {
    pub fn new(n: usize) -> StpClosure {
        let mut d = vec![INF; n * n];
        for i in 0..n {
            d[i * n + i] = (0, 0);
        }
        StpClosure { n, d }
    }

    pub fn var_count(&self) -> usize {
        self.n
    }

    fn add_edge(&mut self, e: Edge) -> bool {
        let n = self.n;
        let (u, v) = (e.from, e.to);
        if add(self.d[v * n + u], e.w) < (0, 0) {
            return false;
        }
        if e.w >= self.d[u * n + v] {
            return true;
        }
        let col_u: Vec<Weight> = (0..n).map(|i| self.d[i * n + u]).collect();
        let row_v: Vec<Weight> = self.d[v * n..v * n + n].to_vec();
        for (i, &iu) in col_u.iter().enumerate() {
            if iu == INF {
                continue;
            }
            let base = add(iu, e.w);
            let row = &mut self.d[i * n..i * n + n];
            for (j, &vj) in row_v.iter().enumerate() {
                if vj == INF {
                    continue;
                }
                let cand = add(base, vj);
                if cand < row[j] {
                    row[j] = cand;
                }
            }
        }
        true
    }

    /// Adds an atom; returns false (leaving the closure unusable) if the
    /// system became infeasible.
    pub fn add_atom(&mut self, a: &Atom) -> bool {
        let mut e = Vec::with_capacity(2);
        atom_edges(a, &mut e);
        e.into_iter().all(|e| self.add_edge(e))
    }

    /// True if the current system implies `a`.
    pub fn implies(&self, a: &Atom) -> bool {
        let n = self.n;
        let iv = a.interval;
        let up = match iv.hi() {
            Bound::Finite(hi) => self.d[a.y * n + a.x] <= (hi as i128, -(iv.hi_open() as i64)),
            _ => true,
        };
        let low = match iv.lo() {
            Bound::Finite(lo) => self.d[a.x * n + a.y] <= (-(lo as i128), -(iv.lo_open() as i64)),
            _ => true,
        };
        up && low
    }

    /// True if `a` is consistent with the current system.
    pub fn admits(&self, a: &Atom) -> bool {
        let mut c = self.clone();
        c.add_atom(a)
    }

    /// Upper bound on `x - y`, as (value, strict), or `None` if unbounded.
    pub fn upper(&self, x: VarId, y: VarId) -> Option<(i128, bool)> {
        let w = self.d[y * self.n + x];
        (w != INF).then_some((w.0, w.1 != 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;

    fn check(sys: &SimpleSystem, a: &Assignment) {
        for atom in &sys.atoms {
            assert!(atom.eval(a).unwrap(), "{atom} violated");
        }
    }

    #[test]
    fn fixture_one_feasible() {
        // x = 0, a = 1, y = 2
        let sys = SimpleSystem::new(
            3,
            vec![
                Atom::new(1, 0, Interval::point(1)),
                Atom::new(2, 1, Interval::point(1)),
                Atom::new(2, 0, Interval::above(1)),
            ],
        );
        let w = stp_feasible(&sys).unwrap();
        check(&sys, &w);
    }

    #[test]
    fn fixtures_jointly_infeasible() {
        // x, a, y, b
        let sys = SimpleSystem::new(
            4,
            vec![
                Atom::new(1, 0, Interval::point(1)),
                Atom::new(2, 1, Interval::point(1)),
                Atom::new(2, 0, Interval::above(1)),
                Atom::new(3, 0, Interval::point(1)),
                Atom::new(2, 3, Interval::open(0, 1)),
            ],
        );
        assert!(stp_feasible(&sys).is_none());
        let two = SimpleSystem::new(2, vec![Atom::new(0, 1, Interval::point(1)), Atom::new(1, 0, Interval::point(1))]);
        assert!(stp_feasible(&two).is_none());
    }

    #[test]
    fn strict_witness_uses_epsilon() {
        let sys = SimpleSystem::new(
            3,
            vec![
                Atom::new(0, 1, Interval::open(0, 1)),
                Atom::new(1, 2, Interval::open(0, 1)),
                Atom::new(0, 2, Interval::open(0, 1)),
            ],
        );
        let w = stp_feasible(&sys).unwrap();
        check(&sys, &w);
        let cyc = SimpleSystem::new(2, vec![Atom::new(0, 1, Interval::at_most(0)), Atom::new(1, 0, Interval::below(0))]);
        assert!(stp_feasible(&cyc).is_none());
    }

    #[test]
    fn integer_witness_examples() {
        let one = SimpleSystem::new(2, vec![Atom::new(0, 1, Interval::point(1))]);
        assert_eq!(stp_integer_witness(&one).unwrap(), Some(Assignment::from_ints(&[1, 0])));
        let band = SimpleSystem::new(2, vec![Atom::new(0, 1, Interval::closed(0, 2)), Atom::new(1, 0, Interval::closed(0, 2))]);
        assert_eq!(stp_integer_witness(&band).unwrap(), Some(Assignment::from_ints(&[0, 0])));
        let bad = SimpleSystem::new(2, vec![Atom::new(0, 1, Interval::point(1)), Atom::new(1, 0, Interval::point(1))]);
        assert_eq!(stp_integer_witness(&bad).unwrap(), None);
        let strict = SimpleSystem::new(2, vec![Atom::new(0, 1, Interval::open(0, 2))]);
        assert_eq!(stp_integer_witness(&strict), Err(Error::StrictBound));
    }

    #[test]
    fn closure_matches_bellman_ford() {
        let atoms = [
            Atom::new(0, 1, Interval::open(0, 1)),
            Atom::new(1, 2, Interval::closed(0, 1)),
            Atom::new(2, 0, Interval::at_least(-1)),
            Atom::new(0, 2, Interval::below(1)),
        ];
        let mut cl = StpClosure::new(3);
        for (i, a) in atoms.iter().enumerate() {
            let ok = cl.add_atom(a);
            let sys = SimpleSystem::new(3, atoms[..=i].to_vec());
            assert_eq!(ok, stp_feasible(&sys).is_some(), "prefix {i}");
            if !ok {
                break;
            }
        }
        let mut c2 = StpClosure::new(2);
        assert!(c2.add_atom(&Atom::new(0, 1, Interval::point(2))));
        assert!(c2.implies(&Atom::new(1, 0, Interval::at_most(-2))));
        assert!(!c2.admits(&Atom::new(0, 1, Interval::above(2))));
        assert_eq!(c2.upper(0, 1), Some((2, false)));
    }
}
