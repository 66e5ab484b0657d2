//! Point algebra: conjunctions of order relations between variables.

use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::VarId;

pub const LT: u8 = 1;
pub const EQ: u8 = 2;
pub const GT: u8 = 4;
pub const ANY: u8 = LT | EQ | GT;

/// Reverses the orientation of a relation mask.
pub fn converse(mask: u8) -> u8 {
    (mask & EQ) | ((mask & LT) << 2) | ((mask & GT) >> 2)
}

/// Relations between ordered variable pairs, stored with the smaller id first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PaSystem {
    pub var_count: usize,
    relations: BTreeMap<(VarId, VarId), u8>,
    contradiction: bool,
}

impl PaSystem {
    pub fn new(var_count: usize) -> PaSystem {
        PaSystem { var_count, relations: BTreeMap::new(), contradiction: false }
    }

    /// Intersects the relation on `(x, y)` with `mask` (`x mask y`).
    pub fn add(&mut self, x: VarId, y: VarId, mask: u8) {
        let (key, m) = if x <= y { ((x, y), mask) } else { ((y, x), converse(mask)) };
        if key.0 == key.1 {
            if m & EQ == 0 {
                self.contradiction = true;
            }
            return;
        }
        let slot = self.relations.entry(key).or_insert(ANY);
        *slot &= m;
        if *slot == 0 {
            self.contradiction = true;
        }
    }

    pub fn relation(&self, x: VarId, y: VarId) -> u8 {
        if x == y {
            return EQ;
        }
        if x < y {
            self.relations.get(&(x, y)).copied().unwrap_or(ANY)
        } else {
            converse(self.relations.get(&(y, x)).copied().unwrap_or(ANY))
        }
    }

    /// True if some pair was given the empty relation.
    pub fn has_contradiction(&self) -> bool {
        self.contradiction
    }

    pub fn relations(&self) -> impl Iterator<Item = (VarId, VarId, u8)> + '_ {
        self.relations.iter().map(|(&(x, y), &m)| (x, y, m))
    }
}

/// Strongly connected components (iterative Tarjan); returns a component id
/// per vertex.
pub(crate) fn scc(n: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut next = 0;
    let mut ncomp = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    comp
}

/// Decides the system; on success returns a rank per variable realizing a
/// weak order that satisfies every relation.
pub fn pa_feasible(sys: &PaSystem) -> Option<Vec<usize>> {
    if sys.contradiction {
        return None;
    }
    let n = sys.var_count;
    let mut adj = vec![Vec::new(); n];
    let mut strict = Vec::new();
    let mut diseq = Vec::new();
    for (x, y, m) in sys.relations() {
        match m {
            ANY => {}
            m if m == LT | GT => diseq.push((x, y)),
            m => {
                if m & GT == 0 {
                    adj[x].push(y);
                    if m & EQ == 0 {
                        strict.push((x, y));
                    }
                }
                if m & LT == 0 {
                    adj[y].push(x);
                    if m & EQ == 0 {
                        strict.push((y, x));
                    }
                }
            }
        }
    }
    let comp = scc(n, &adj);
    if strict.iter().chain(&diseq).any(|&(a, b)| comp[a] == comp[b]) {
        return None;
    }
    let ncomp = comp.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut min_var = vec![usize::MAX; ncomp];
    for v in 0..n {
        min_var[comp[v]] = min_var[comp[v]].min(v);
    }
    let mut cadj = vec![Vec::new(); ncomp];
    let mut indeg = vec![0usize; ncomp];
    for v in 0..n {
        for &w in &adj[v] {
            if comp[v] != comp[w] {
                cadj[comp[v]].push(comp[w]);
                indeg[comp[w]] += 1;
            }
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        (0..ncomp).filter(|&c| indeg[c] == 0).map(|c| Reverse((min_var[c], c))).collect();
    let mut rank_of = vec![0; ncomp];
    let mut next = 0;
    while let Some(Reverse((_, c))) = heap.pop() {
        rank_of[c] = next;
        next += 1;
        for &d in &cadj[c] {
            indeg[d] -= 1;
            if indeg[d] == 0 {
                heap.push(Reverse((min_var[d], d)));
            }
        }
    }
    Some((0..n).map(|v| rank_of[comp[v]]).collect())
}
