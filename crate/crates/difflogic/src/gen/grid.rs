//! Independent sets in `n x n` grid graphs with one vertex per row, encoded
//! three ways: 4-ary constraints with bound 0, closed constraints with bound
//! 1 over a Sidon-spaced ruler, and binary constraints with bound `n^2`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::instance::{int, Assignment, Atom, Constraint, Instance};
use crate::interval::Interval;
use crate::sidon::sidon_set;
use crate::VarId;

/// A grid vertex `(row, column)`, both 1-based.
pub type Cell = (usize, usize);

/// A graph on the cells of the `n x n` grid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GridGraph {
    pub n: usize,
    edges: BTreeSet<(Cell, Cell)>,
}

impl GridGraph {
    pub fn new(n: usize) -> GridGraph {
        GridGraph { n, edges: BTreeSet::new() }
    }

    /// Adds the edge `{u, v}`. Loops are ignored; cells must lie in the grid.
    pub fn add_edge(&mut self, u: Cell, v: Cell) {
        let inside = |c: Cell| (1..=self.n).contains(&c.0) && (1..=self.n).contains(&c.1);
        assert!(inside(u) && inside(v), "cell outside the grid");
        if u != v {
            self.edges.insert((u.min(v), u.max(v)));
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = &(Cell, Cell)> {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: Cell, v: Cell) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// True if choosing column `choice[i]` in row `i + 1` picks no edge.
    pub fn is_independent(&self, choice: &[usize]) -> bool {
        (0..choice.len()).all(|i| (i + 1..choice.len()).all(|j| !self.has_edge((i + 1, choice[i]), (j + 1, choice[j]))))
    }

    /// A one-per-row independent choice of columns, by exhaustive search.
    pub fn brute_force(&self) -> Option<Vec<usize>> {
        let n = self.n;
        let mut choice = vec![1usize; n];
        if n == 0 {
            return Some(choice);
        }
        loop {
            if self.is_independent(&choice) {
                return Some(choice);
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                if choice[i] < n {
                    choice[i] += 1;
                    break;
                }
                choice[i] = 1;
            }
        }
    }
}

/// Column variables `c1..cn` (strictly increasing) and row variables `r1..rn`
/// that must coincide with one column; an edge forbids both of its cells.
pub fn gen_is_d40(g: &GridGraph) -> Instance {
    let n = g.n;
    let names = (1..=n).map(|i| format!("c{i}")).chain((1..=n).map(|i| format!("r{i}"))).collect();
    let mut inst = Instance::new(names);
    let c = |j: usize| j - 1;
    let r = |i: usize| n + i - 1;
    for j in 2..=n {
        inst.push_atom(c(j - 1), c(j), Interval::below(0));
    }
    for i in 1..=n {
        inst.push_atom(r(i), c(1), Interval::at_least(0));
        inst.push_atom(r(i), c(n), Interval::at_most(0));
        for j in 2..=n {
            inst.push(Constraint::new(vec![
                Atom::new(r(i), c(j - 1), Interval::at_most(0)),
                Atom::new(r(i), c(j), Interval::at_least(0)),
            ]));
        }
    }
    for &((a, b), (d, e)) in g.edges() {
        inst.push(Constraint::new(vec![
            Atom::new(r(a), c(b), Interval::below(0)),
            Atom::new(r(a), c(b), Interval::above(0)),
            Atom::new(r(d), c(e), Interval::below(0)),
            Atom::new(r(d), c(e), Interval::above(0)),
        ]));
    }
    inst
}

/// Ruler `y0..y_m` with unit steps, where `m` is the largest element of a
/// Sidon set `{0 = a0 < a1 < ... < an}`; row variable `x_i` sits on a mark
/// `a_j` (`j >= 1`) of the ruler, and an edge `((i,j),(i',j'))` forbids
/// `x_i = a_j` together with `x_{i'} = a_{j'}`.
pub fn gen_is_d31(g: &GridGraph) -> Instance {
    ruler_encoding(g, Interval::at_most(-1), Interval::at_least(1))
}

/// [`gen_is_d31`] with the edge clauses written as `< 0` / `> 0`.
pub fn gen_is_d31_strict(g: &GridGraph) -> Instance {
    ruler_encoding(g, Interval::below(0), Interval::above(0))
}

/// The marks `a_1..a_n` used by [`gen_is_d31`].
pub fn ruler_marks(n: usize) -> Vec<u64> {
    sidon_set(n + 1).into_iter().skip(1).collect()
}

fn ruler_encoding(g: &GridGraph, left: Interval, right: Interval) -> Instance {
    let n = g.n;
    let marks = ruler_marks(n);
    let m = marks.last().map_or(0, |&a| a as usize);
    let names = (1..=n).map(|i| format!("x{i}")).chain((0..=m).map(|t| format!("y{t}"))).collect();
    let mut inst = Instance::new(names);
    let x = |i: usize| i - 1;
    let y = |t: usize| n + t;
    for t in 0..m {
        inst.push_atom(y(t + 1), y(t), Interval::at_most(1));
        inst.push_atom(y(t), y(t + 1), Interval::at_most(-1));
    }
    let on_mark: BTreeSet<usize> = marks.iter().map(|&a| a as usize).collect();
    for i in 1..=n {
        inst.push_atom(x(i), y(0), Interval::at_least(0));
        inst.push_atom(x(i), y(m), Interval::at_most(0));
        for t in 1..=m {
            inst.push(Constraint::new(vec![
                Atom::new(x(i), y(t), Interval::at_most(-1)),
                Atom::new(x(i), y(t), Interval::point(0)),
                Atom::new(x(i), y(t), Interval::at_least(1)),
            ]));
        }
        for t in (0..=m).filter(|t| !on_mark.contains(t)) {
            inst.push(Constraint::new(vec![
                Atom::new(x(i), y(t), Interval::at_most(-1)),
                Atom::new(x(i), y(t), Interval::at_least(1)),
            ]));
        }
    }
    for &((a, b), (d, e)) in g.edges() {
        let (tb, te) = (marks[b - 1] as usize, marks[e - 1] as usize);
        inst.push(Constraint::new(vec![
            Atom::new(x(a), y(tb), left),
            Atom::new(x(a), y(tb), right),
            Atom::new(x(d), y(te), left),
            Atom::new(x(d), y(te), right),
        ]));
    }
    inst
}

/// The intended model of [`gen_is_d31`] for a column choice: `x_i` on mark
/// `a_{choice[i]}` and `y_t = t`.
pub fn ruler_assignment(g: &GridGraph, choice: &[usize]) -> Assignment {
    let marks = ruler_marks(g.n);
    let m = marks.last().map_or(0, |&a| a as i64);
    let values = choice.iter().map(|&j| int(marks[j - 1] as i64)).chain((0..=m).map(int)).collect();
    Assignment::total(values)
}

/// Variables `z`, `x1..xn`, `xp1..xpn` (written `x'` below) with `x_r - z in {1..n}`,
/// `x'_r - x_r in {(n-1) i}` and `x'_r - z in {n i}`, which forces
/// `x'_r = n x_r`; the edge `{(a,i),(b,j)}` excludes `x'_a - x_b = n i - j`.
pub fn gen_is_d2(g: &GridGraph) -> Instance {
    let n = g.n;
    let names = core::iter::once(String::from("z"))
        .chain((1..=n).map(|r| format!("x{r}")))
        .chain((1..=n).map(|r| format!("xp{r}")))
        .collect();
    let mut inst = Instance::new(names);
    let z: VarId = 0;
    let x = |r: usize| r;
    let xp = |r: usize| n + r;
    let ni = n as i64;
    for r in 1..=n {
        let pick = |f: &dyn Fn(i64) -> Atom| Constraint::new((1..=ni).map(f).collect());
        inst.push(pick(&|i| Atom::new(x(r), z, Interval::point(i))));
        inst.push(pick(&|i| Atom::new(xp(r), x(r), Interval::point(ni * i - i))));
        inst.push(pick(&|i| Atom::new(xp(r), z, Interval::point(ni * i))));
    }
    for &((a, i), (b, j)) in g.edges() {
        let delta = ni * i as i64 - j as i64;
        inst.push(Constraint::new(vec![
            Atom::new(xp(a), x(b), Interval::at_most(delta - 1)),
            Atom::new(xp(a), x(b), Interval::at_least(delta + 1)),
        ]));
    }
    inst
}
