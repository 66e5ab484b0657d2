//! Primal and incidence graphs, tree decompositions and nice tree
//! decompositions.

use alloc::collections::{BTreeSet, BinaryHeap};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::VarId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexKind {
    Variable(VarId),
    Constraint(usize),
}

/// Undirected simple graph on vertices `0..vertex_count()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    pub kinds: Vec<VertexKind>,
}

impl Graph {
    /// A graph whose vertices are all variables.
    pub fn new(n: usize) -> Graph {
        Graph { adj: vec![BTreeSet::new(); n], kinds: (0..n).map(VertexKind::Variable).collect() }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn add_vertex(&mut self, kind: VertexKind) -> usize {
        self.adj.push(BTreeSet::new());
        self.kinds.push(kind);
        self.adj.len() - 1
    }

    /// Adds `{u, v}`; self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, ns) in self.adj.iter().enumerate() {
            out.extend(ns.range(u + 1..).map(|&v| (u, v)));
        }
        out
    }

    /// The graph with the listed vertices removed (ids of the others kept).
    pub fn without(&self, removed: &[usize]) -> Graph {
        let gone: BTreeSet<usize> = removed.iter().copied().collect();
        let mut g = self.clone();
        for &v in &gone {
            let ns: Vec<usize> = g.adj[v].iter().copied().collect();
            for u in ns {
                g.adj[u].remove(&v);
            }
            g.adj[v].clear();
        }
        g
    }
}

/// Variables as vertices, an edge per pair sharing a constraint scope.
pub fn primal_graph(inst: &Instance) -> Graph {
    let mut g = Graph::new(inst.var_count());
    for c in &inst.constraints {
        let s = c.scope();
        for (i, &u) in s.iter().enumerate() {
            for &v in &s[i + 1..] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Variables `0..n` then constraints `n..n+m`; a variable is adjacent to the
/// constraints whose scope contains it.
pub fn incidence_graph(inst: &Instance) -> Graph {
    let n = inst.var_count();
    let mut g = Graph::new(n);
    for (j, c) in inst.constraints.iter().enumerate() {
        let cv = g.add_vertex(VertexKind::Constraint(j));
        debug_assert_eq!(cv, n + j);
        for v in c.scope() {
            g.add_edge(v, cv);
        }
    }
    g
}

/// A rooted tree of bags; bags are sorted vertex lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    /// `None` exactly for the root.
    pub parent: Vec<Option<usize>>,
}

impl TreeDecomposition {
    pub fn new(mut bags: Vec<Vec<usize>>, parent: Vec<Option<usize>>) -> TreeDecomposition {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        TreeDecomposition { bags, parent }
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// Largest bag size minus one (0 for an empty decomposition).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn root(&self) -> Option<usize> {
        self.parent.iter().position(Option::is_none)
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.bags.len()];
        for (i, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                ch[p].push(i);
            }
        }
        ch
    }

    /// Checks that the parent links form one rooted tree.
    fn tree_shape(&self) -> core::result::Result<usize, Violation> {
        let n = self.bags.len();
        if self.parent.len() != n {
            return Err(Violation::NotATree(String::from("parent list length differs from bag count")));
        }
        let roots: Vec<usize> = (0..n).filter(|&i| self.parent[i].is_none()).collect();
        if roots.len() != 1 {
            return Err(Violation::NotATree(format!("{} roots", roots.len())));
        }
        for (i, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return Err(Violation::NotATree(format!("node {i} has parent {p} out of range")));
                }
            }
        }
        // every node reaches the root
        let mut state = vec![0u8; n];
        for start in 0..n {
            let mut path = Vec::new();
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                path.push(v);
                match self.parent[v] {
                    Some(p) => v = p,
                    None => break,
                }
            }
            if state[v] == 1 && self.parent[v].is_some() {
                return Err(Violation::NotATree(format!("cycle through node {v}")));
            }
            for u in path {
                state[u] = 2;
            }
        }
        Ok(roots[0])
    }

    /// Checks that each vertex's bags form a connected subtree.
    fn connectivity(&self) -> core::result::Result<(), Violation> {
        let n = self.bags.len();
        let max_v = self.bags.iter().flatten().copied().max();
        let Some(max_v) = max_v else { return Ok(()) };
        // a vertex's bags are connected iff exactly one of them has a parent
        // bag not containing it
        let mut tops = vec![0usize; max_v + 1];
        for i in 0..n {
            for &v in &self.bags[i] {
                let covered = self.parent[i].is_some_and(|p| self.bags[p].binary_search(&v).is_ok());
                if !covered {
                    tops[v] += 1;
                }
            }
        }
        match tops.iter().position(|&t| t > 1) {
            Some(v) => Err(Violation::Disconnected(v)),
            None => Ok(()),
        }
    }
}

/// Why a decomposition is not valid for a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotATree(String),
    MissingVertex(usize),
    UncoveredEdge(usize, usize),
    Disconnected(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree(why) => write!(f, "not a tree: {why}"),
            Violation::MissingVertex(v) => write!(f, "vertex {v} is in no bag"),
            Violation::UncoveredEdge(u, v) => write!(f, "edge {{{u},{v}}} is in no bag"),
            Violation::Disconnected(v) => write!(f, "bags containing vertex {v} are not connected"),
        }
    }
}

/// Checks the tree shape, vertex and edge coverage, and connectivity.
pub fn validate(td: &TreeDecomposition, g: &Graph) -> core::result::Result<(), Violation> {
    td.tree_shape()?;
    let n = g.vertex_count();
    let mut bags_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, b) in td.bags.iter().enumerate() {
        for &v in b {
            if v >= n {
                return Err(Violation::NotATree(format!("bag {i} names vertex {v} outside the graph")));
            }
            bags_of[v].push(i);
        }
    }
    if let Some(v) = (0..n).find(|&v| bags_of[v].is_empty()) {
        return Err(Violation::MissingVertex(v));
    }
    for (u, v) in g.edges() {
        let (a, b) = if bags_of[u].len() <= bags_of[v].len() { (u, v) } else { (v, u) };
        if !bags_of[a].iter().any(|&i| td.bags[i].binary_search(&b).is_ok()) {
            return Err(Violation::UncoveredEdge(u, v));
        }
    }
    td.connectivity()
}

fn fill_in(adj: &[BTreeSet<usize>], v: usize) -> usize {
    let ns: Vec<usize> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in ns.iter().enumerate() {
        for &b in &ns[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

/// Min-fill elimination ordering, ties broken by the lowest vertex id.
pub fn min_fill_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut adj = g.adj.clone();
    let mut fill: Vec<usize> = (0..n).map(|v| fill_in(&adj, v)).collect();
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..n).map(|v| Reverse((fill[v], v))).collect();
    let mut gone = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse((f, v))) = heap.pop() {
        if gone[v] || f != fill[v] {
            continue;
        }
        gone[v] = true;
        order.push(v);
        let ns: Vec<usize> = adj[v].iter().copied().collect();
        let mut touched: BTreeSet<usize> = ns.iter().copied().collect();
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                if adj[a].insert(b) {
                    adj[b].insert(a);
                    touched.extend(adj[a].intersection(&adj[b]).copied());
                }
            }
        }
        for &u in &ns {
            adj[u].remove(&v);
        }
        adj[v].clear();
        for u in touched {
            if !gone[u] {
                let nf = fill_in(&adj, u);
                if nf != fill[u] {
                    fill[u] = nf;
                    heap.push(Reverse((nf, u)));
                }
            }
        }
    }
    order
}

/// Tree decomposition from an elimination ordering; also returns, per
/// vertex, the node whose bag was created when it was eliminated.
pub fn decompose_with_order(g: &Graph, order: &[usize]) -> (TreeDecomposition, Vec<usize>) {
    let n = g.vertex_count();
    if n == 0 {
        return (TreeDecomposition::new(vec![Vec::new()], vec![None]), Vec::new());
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj = g.adj.clone();
    let mut bags = Vec::with_capacity(n);
    for &v in order {
        let later: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in later.iter().enumerate() {
            for &b in &later[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &u in &later {
            adj[u].remove(&v);
        }
        let mut bag = later;
        bag.push(v);
        bags.push(bag);
    }
    // bag i belongs to order[i]; its parent is the bag of the earliest
    // eliminated other member
    let mut parent: Vec<Option<usize>> = bags
        .iter()
        .enumerate()
        .map(|(i, b)| b.iter().filter(|&&u| u != order[i]).map(|&u| pos[u]).min())
        .collect();
    // join the components under the last bag
    let root = n - 1;
    for (i, p) in parent.iter_mut().enumerate() {
        if p.is_none() && i != root {
            *p = Some(root);
        }
    }
    (TreeDecomposition::new(bags, parent), pos)
}

/// Min-fill tree decomposition.
pub fn decompose(g: &Graph) -> TreeDecomposition {
    decompose_with_order(g, &min_fill_order(g)).0
}

/// Incidence-graph decomposition: a min-fill decomposition of the primal
/// graph plus, for each constraint, a leaf bag `scope + {c}` hung below the
/// bag where the first scope variable was eliminated.
pub fn incidence_decomposition(inst: &Instance) -> TreeDecomposition {
    let n = inst.var_count();
    let primal = primal_graph(inst);
    let order = min_fill_order(&primal);
    let (mut td, pos) = decompose_with_order(&primal, &order);
    if n == 0 {
        td.bags.clear();
        td.parent.clear();
    }
    for (j, c) in inst.constraints.iter().enumerate() {
        let scope = c.scope();
        let mut bag = scope.clone();
        bag.push(n + j);
        let host = scope.iter().map(|&v| pos[v]).min();
        let host = match (host, td.root()) {
            (Some(h), _) => Some(h),
            (None, Some(r)) => Some(r),
            (None, None) => None,
        };
        td.bags.push(bag);
        td.parent.push(host);
    }
    if td.bags.is_empty() {
        td.bags.push(Vec::new());
        td.parent.push(None);
    }
    TreeDecomposition::new(td.bags, td.parent)
}

/// Exact treewidth by dynamic programming over vertex subsets; for test
/// graphs only (at most 16 vertices).
pub fn exact_treewidth(g: &Graph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 16, "exact treewidth is limited to 16 vertices");
    if n == 0 {
        return 0;
    }
    let nb: Vec<u32> = (0..n).map(|v| g.adj[v].iter().fold(0u32, |m, &u| m | 1 << u)).collect();
    // q(s, v): vertices outside s + v reachable from v through s
    let q = |s: u32, v: usize| -> u32 {
        let mut seen = 1u32 << v;
        let mut stack = vec![v];
        let mut out = 0u32;
        while let Some(x) = stack.pop() {
            let mut m = nb[x] & !seen;
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                seen |= 1 << u;
                if s >> u & 1 == 1 {
                    stack.push(u);
                } else {
                    out |= 1 << u;
                }
            }
        }
        out
    };
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut tw = vec![usize::MAX; 1 << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut best = usize::MAX;
        let mut m = s;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let rest = s & !(1 << v);
            let cand = tw[rest as usize].max(q(rest, v).count_ones() as usize);
            best = best.min(cand);
        }
        tw[s as usize] = best;
    }
    tw[full as usize]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// A nice tree decomposition; children precede parents in `nodes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceDecomposition {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
}

impl NiceDecomposition {
    pub fn width(&self) -> usize {
        self.nodes.iter().map(|t| t.bag.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Checks the node-kind rules: empty root, singleton leaves, one-vertex
    /// introduce/forget steps and joins over equal bags.
    pub fn check(&self) -> Result<()> {
        let bad = |why: String| Err(Error::InvalidDecomposition(why));
        if !self.nodes[self.root].bag.is_empty() {
            return bad(String::from("root bag is not empty"));
        }
        for (i, t) in self.nodes.iter().enumerate() {
            if t.children.iter().any(|&c| c >= i) {
                return bad(format!("node {i} has a child that does not precede it"));
            }
            let child_bag = |k: usize| &self.nodes[t.children[k]].bag;
            let ok = match t.kind {
                NiceKind::Leaf => t.children.is_empty() && t.bag.len() <= 1,
                NiceKind::Introduce(v) => {
                    t.children.len() == 1
                        && !child_bag(0).contains(&v)
                        && t.bag.contains(&v)
                        && t.bag.len() == child_bag(0).len() + 1
                        && child_bag(0).iter().all(|u| t.bag.contains(u))
                }
                NiceKind::Forget(v) => {
                    t.children.len() == 1
                        && child_bag(0).contains(&v)
                        && !t.bag.contains(&v)
                        && t.bag.len() + 1 == child_bag(0).len()
                        && t.bag.iter().all(|u| child_bag(0).contains(u))
                }
                NiceKind::Join => t.children.len() == 2 && child_bag(0) == &t.bag && child_bag(1) == &t.bag,
            };
            if !ok {
                return bad(format!("node {i} breaks the {:?} rule", t.kind));
            }
        }
        Ok(())
    }

    /// The same nodes as a plain tree decomposition.
    pub fn to_tree(&self) -> TreeDecomposition {
        let mut parent = vec![None; self.nodes.len()];
        for (i, t) in self.nodes.iter().enumerate() {
            for &c in &t.children {
                parent[c] = Some(i);
            }
        }
        TreeDecomposition::new(self.nodes.iter().map(|t| t.bag.clone()).collect(), parent)
    }

    /// All vertices of the subtree rooted at each node, i.e. the union of
    /// bags below and at the node.
    pub fn subtree_vertices(&self) -> Vec<BTreeSet<usize>> {
        let mut out: Vec<BTreeSet<usize>> = Vec::with_capacity(self.nodes.len());
        for t in &self.nodes {
            let mut s: BTreeSet<usize> = t.bag.iter().copied().collect();
            for &c in &t.children {
                s.extend(out[c].iter().copied());
            }
            out.push(s);
        }
        out
    }
}

struct NiceBuilder {
    nodes: Vec<NiceNode>,
}

impl NiceBuilder {
    fn push(&mut self, kind: NiceKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    /// Forgets then introduces single vertices to move from the bag of
    /// `top` to `target`.
    fn morph(&mut self, mut top: usize, target: &[usize]) -> usize {
        let from = self.nodes[top].bag.clone();
        let mut bag = from.clone();
        for &v in from.iter().filter(|v| target.binary_search(v).is_err()) {
            bag.retain(|&u| u != v);
            top = self.push(NiceKind::Forget(v), bag.clone(), vec![top]);
        }
        for &v in target.iter().filter(|v| from.binary_search(v).is_err()) {
            let at = bag.binary_search(&v).unwrap_err();
            bag.insert(at, v);
            top = self.push(NiceKind::Introduce(v), bag.clone(), vec![top]);
        }
        top
    }
}

/// Converts a decomposition into a nice one of the same width.
pub fn to_nice(td: &TreeDecomposition) -> Result<NiceDecomposition> {
    td.tree_shape().map_err(|v| Error::InvalidDecomposition(format!("{v}")))?;
    td.connectivity().map_err(|v| Error::InvalidDecomposition(format!("{v}")))?;
    let root = td.root().expect("tree has a root");
    let children = td.children();
    let mut b = NiceBuilder { nodes: Vec::new() };
    // post-order without recursion
    let mut post = Vec::with_capacity(td.bags.len());
    let mut stack = vec![(root, false)];
    while let Some((t, done)) = stack.pop() {
        if done {
            post.push(t);
        } else {
            stack.push((t, true));
            stack.extend(children[t].iter().rev().map(|&c| (c, false)));
        }
    }
    let mut top_of = vec![usize::MAX; td.bags.len()];
    for t in post {
        let bag = &td.bags[t];
        let mut tops: Vec<usize> = children[t].iter().map(|&c| b.morph(top_of[c], bag)).collect();
        let top = if tops.is_empty() {
            let first = bag.first().map(|&v| vec![v]).unwrap_or_default();
            let leaf = b.push(NiceKind::Leaf, first, Vec::new());
            b.morph(leaf, bag)
        } else {
            let mut acc = tops.remove(0);
            for other in tops {
                acc = b.push(NiceKind::Join, bag.clone(), vec![acc, other]);
            }
            acc
        };
        top_of[t] = top;
    }
    let top = b.morph(top_of[root], &[]);
    Ok(NiceDecomposition { root: top, nodes: b.nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{Atom, Constraint};
    use crate::interval::Interval;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    fn cycle(n: usize) -> Graph {
        graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    // a..h = 0..7
    fn figure_graph() -> Graph {
        graph(8, &[(0, 1), (0, 2), (1, 2), (2, 3), (1, 4), (2, 5), (3, 5), (3, 6), (4, 5), (5, 6), (6, 7)])
    }

    fn figure_decomposition() -> TreeDecomposition {
        // cdf; bcf, abc, bef; dfg, gh
        TreeDecomposition::new(
            vec![vec![2, 3, 5], vec![1, 2, 5], vec![0, 1, 2], vec![1, 4, 5], vec![3, 5, 6], vec![6, 7]],
            vec![None, Some(0), Some(1), Some(1), Some(0), Some(4)],
        )
    }

    #[test]
    fn graphs_of_instances() {
        let mut inst = Instance::with_vars(3);
        inst.push_atom(0, 1, Interval::point(1));
        assert_eq!(primal_graph(&inst).edges(), vec![(0, 1)]);
        let inc = incidence_graph(&inst);
        assert_eq!(inc.edges(), vec![(0, 3), (1, 3)]);
        assert_eq!(inc.kinds[3], VertexKind::Constraint(0));
        let mut tri = Instance::with_vars(3);
        tri.push(Constraint::new(vec![Atom::new(0, 1, Interval::full()), Atom::new(1, 2, Interval::full())]));
        tri.push(Constraint::empty());
        assert_eq!(primal_graph(&tri).edges(), vec![(0, 1), (0, 2), (1, 2)]);
        let inc = incidence_graph(&tri);
        assert_eq!(inc.degree(3), 3);
        assert_eq!(inc.degree(4), 0);
    }

    #[test]
    fn min_fill_widths() {
        for (g, w) in [(graph(3, &[(0, 1), (1, 2), (0, 2)]), 2), (cycle(4), 2), (graph(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]), 1)] {
            let td = decompose(&g);
            assert_eq!(validate(&td, &g), Ok(()));
            assert_eq!(td.width(), w);
        }
        let empty = Graph::new(0);
        assert_eq!(validate(&decompose(&empty), &empty), Ok(()));
        let isolated = Graph::new(3);
        let td = decompose(&isolated);
        assert_eq!(validate(&td, &isolated), Ok(()));
        assert_eq!(td.width(), 0);
    }

    #[test]
    fn figure_example() {
        let g = figure_graph();
        let td = figure_decomposition();
        assert_eq!(validate(&td, &g), Ok(()));
        assert_eq!(td.width(), 2);
        assert_eq!(exact_treewidth(&g), 2);
        let nice = to_nice(&td).unwrap();
        nice.check().unwrap();
        assert_eq!(nice.width(), 2);
        assert_eq!(validate(&nice.to_tree(), &g), Ok(()));
        assert_eq!(decompose(&g).width(), 2);
    }

    #[test]
    fn violations_are_named() {
        let g = figure_graph();
        let mut td = figure_decomposition();
        td.bags[5] = vec![7];
        assert_eq!(validate(&td, &g), Err(Violation::UncoveredEdge(6, 7)));
        let mut td = figure_decomposition();
        // h in a bag away from g's subtree
        td.bags[5] = vec![6];
        td.bags[2] = vec![0, 1, 2, 7];
        td.bags.push(vec![6, 7]);
        td.parent.push(Some(4));
        assert_eq!(validate(&td, &g), Err(Violation::Disconnected(7)));
        assert!(matches!(to_nice(&td), Err(Error::InvalidDecomposition(_))));
        let mut two_roots = figure_decomposition();
        two_roots.parent[4] = None;
        assert!(matches!(validate(&two_roots, &g), Err(Violation::NotATree(_))));
    }

    #[test]
    fn nice_single_bag_and_chain() {
        let td = TreeDecomposition::new(vec![vec![0, 1]], vec![None]);
        let nice = to_nice(&td).unwrap();
        nice.check().unwrap();
        let kinds: Vec<NiceKind> = nice.nodes.iter().map(|t| t.kind).collect();
        assert_eq!(kinds, vec![NiceKind::Leaf, NiceKind::Introduce(1), NiceKind::Forget(0), NiceKind::Forget(1)]);
        let path = decompose(&graph(4, &[(0, 1), (1, 2), (2, 3)]));
        let nice = to_nice(&path).unwrap();
        nice.check().unwrap();
        assert!(nice.nodes.iter().all(|t| t.kind != NiceKind::Join));
        assert_eq!(nice.width(), 1);
    }

    #[test]
    fn exact_width_small_graphs() {
        assert_eq!(exact_treewidth(&cycle(5)), 2);
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(exact_treewidth(&k4), 3);
        let grid = graph(6, &[(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)]);
        assert_eq!(exact_treewidth(&grid), 2);
        assert_eq!(exact_treewidth(&Graph::new(4)), 0);
    }

    #[test]
    fn incidence_decomposition_is_valid() {
        let mut inst = Instance::with_vars(4);
        for i in 0..4 {
            inst.push_atom(i, (i + 1) % 4, Interval::open(0, 1));
        }
        inst.push(Constraint::empty());
        let td = incidence_decomposition(&inst);
        assert_eq!(validate(&td, &incidence_graph(&inst)), Ok(()));
        assert_eq!(td.width(), 2);
        let nice = to_nice(&td).unwrap();
        nice.check().unwrap();
        let none = Instance::with_vars(0);
        assert_eq!(validate(&incidence_decomposition(&none), &incidence_graph(&none)), Ok(()));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::testkit;
    use proptest::prelude::*;

    fn graph() -> impl Strategy<Value = Graph> {
        (1usize..=8).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n), 0..14).prop_map(move |es| {
                let mut g = Graph::new(n);
                es.into_iter().filter(|(u, v)| u != v).for_each(|(u, v)| g.add_edge(u, v));
                g
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn decompositions_are_valid(g in graph()) {
            let td = decompose(&g);
            prop_assert!(validate(&td, &g).is_ok());
            prop_assert!(td.width() >= exact_treewidth(&g));
            let nice = to_nice(&td).unwrap();
            prop_assert!(nice.check().is_ok());
            prop_assert_eq!(nice.width(), td.width());
            prop_assert!(validate(&nice.to_tree(), &g).is_ok());
        }

        #[test]
        fn incidence_width_at_most_primal_plus_one(inst in testkit::instance(4, 4, 1, false)) {
            let inc = incidence_graph(&inst);
            prop_assume!(inc.vertex_count() <= 8);
            prop_assert!(exact_treewidth(&inc) <= exact_treewidth(&primal_graph(&inst)) + 1);
            prop_assert!(validate(&incidence_decomposition(&inst), &inc).is_ok());
        }
    }
}
