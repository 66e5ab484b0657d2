//! Multicoloured Clique to Multi-dimensional Partitioned Subset Sum (MPSS),
//! and MPSS to binary constraints with bound 1.
//!
//! MPSS vectors have `K = k(k-1)/2` coordinates, one per pair `(a, b)` with
//! `a < b < k` in lexicographic order. A vector of `V_i` is non-zero exactly
//! on the coordinates touching `i`; a vector of `E_r` only on coordinate
//! `r`. All non-zero entries of a vector share one value.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::instance::{Assignment, Atom, Constraint, Instance};
use crate::interval::Interval;
use crate::sidon::sidon_set;
use crate::{Rational, VarId};

/// The pairs `(a, b)`, `a < b < k`, in coordinate order.
pub fn coordinates(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect()
}

fn coordinate_index(k: usize, a: usize, b: usize) -> usize {
    let (a, b) = (a.min(b), a.max(b));
    a * k - a * (a + 1) / 2 + (b - a - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Support {
    /// All coordinates `(a, b)` with `a == i` or `b == i`.
    Vertex(usize),
    /// The single coordinate `r`.
    Coordinate(usize),
}

/// A vector whose non-zero coordinates all equal `value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UniformVector {
    pub value: u64,
    pub support: Support,
}

impl UniformVector {
    /// Dense form over `K` coordinates.
    pub fn dense(&self, k: usize) -> Vec<u64> {
        let mut out = vec![0; k * k.saturating_sub(1) / 2];
        match self.support {
            Support::Vertex(i) => {
                for (r, &(a, b)) in coordinates(k).iter().enumerate() {
                    if a == i || b == i {
                        out[r] = self.value;
                    }
                }
            }
            Support::Coordinate(r) => out[r] = self.value,
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MpssInstance {
    pub k: usize,
    pub target: u64,
    pub v_sets: Vec<Vec<UniformVector>>,
    pub e_sets: Vec<Vec<UniformVector>>,
}

/// One vector index per `V_i`, then one per `E_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MpssChoice {
    pub v: Vec<usize>,
    pub e: Vec<usize>,
}

impl MpssInstance {
    pub fn coordinate_count(&self) -> usize {
        self.k * self.k.saturating_sub(1) / 2
    }

    /// Checks the shape: `k >= 2`, supports as required, positive values
    /// distinct within each set.
    pub fn validate(&self) -> Result<()> {
        let kk = self.coordinate_count();
        if self.k < 2 || self.v_sets.len() != self.k || self.e_sets.len() != kk {
            return Err(Error::InvalidArgument("mpss needs k >= 2, k vertex sets and K edge sets"));
        }
        let sets = self.v_sets.iter().enumerate().map(|(i, s)| (Support::Vertex(i), s));
        let sets = sets.chain(self.e_sets.iter().enumerate().map(|(r, s)| (Support::Coordinate(r), s)));
        for (support, set) in sets {
            let mut seen = BTreeSet::new();
            for v in set {
                if v.support != support || v.value == 0 || !seen.insert(v.value) {
                    return Err(Error::InvalidArgument("mpss set with wrong support, zero or repeated value"));
                }
            }
        }
        Ok(())
    }

    /// Sum of the chosen vectors at coordinate `(a, b)`.
    fn coordinate_sum(&self, c: &MpssChoice, a: usize, b: usize) -> u64 {
        let r = coordinate_index(self.k, a, b);
        self.v_sets[a][c.v[a]].value + self.v_sets[b][c.v[b]].value + self.e_sets[r][c.e[r]].value
    }

    pub fn is_solution(&self, c: &MpssChoice) -> bool {
        c.v.len() == self.k
            && c.e.len() == self.coordinate_count()
            && c.v.iter().zip(&self.v_sets).all(|(&i, s)| i < s.len())
            && c.e.iter().zip(&self.e_sets).all(|(&i, s)| i < s.len())
            && coordinates(self.k).iter().all(|&(a, b)| self.coordinate_sum(c, a, b) == self.target)
    }

    /// Exhaustive search over the vertex-set choices; each edge vector is
    /// then forced by its coordinate.
    pub fn brute_force(&self) -> Option<MpssChoice> {
        let coords = coordinates(self.k);
        let mut v = vec![0usize; self.k];
        if self.v_sets.iter().any(Vec::is_empty) {
            return None;
        }
        loop {
            let e: Option<Vec<usize>> = coords
                .iter()
                .enumerate()
                .map(|(r, &(a, b))| {
                    let have = self.v_sets[a][v[a]].value + self.v_sets[b][v[b]].value;
                    self.e_sets[r].iter().position(|x| have + x.value == self.target)
                })
                .collect();
            if let Some(e) = e {
                return Some(MpssChoice { v, e });
            }
            let mut i = self.k;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                if v[i] + 1 < self.v_sets[i].len() {
                    v[i] += 1;
                    break;
                }
                v[i] = 0;
            }
        }
    }
}

/// A graph whose vertices are split into `k` independent parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartiteGraph {
    pub k: usize,
    pub part: Vec<usize>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl PartiteGraph {
    pub fn new(k: usize, part: Vec<usize>) -> PartiteGraph {
        assert!(part.iter().all(|&p| p < k), "part index out of range");
        PartiteGraph { k, part, edges: BTreeSet::new() }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.edges.insert((u.min(v), u.max(v)));
    }

    /// One vertex per part, pairwise adjacent; exhaustive search.
    pub fn multicoloured_clique(&self) -> Option<Vec<usize>> {
        let parts: Vec<Vec<usize>> =
            (0..self.k).map(|p| (0..self.part.len()).filter(|&v| self.part[v] == p).collect()).collect();
        if parts.iter().any(Vec::is_empty) {
            return None;
        }
        let mut idx = vec![0usize; self.k];
        loop {
            let pick: Vec<usize> = idx.iter().zip(&parts).map(|(&i, p)| p[i]).collect();
            let clique = (0..self.k).all(|a| (a + 1..self.k).all(|b| self.edges.contains(&(pick[a].min(pick[b]), pick[a].max(pick[b])))));
            if clique {
                return Some(pick);
            }
            let mut i = self.k;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                if idx[i] + 1 < parts[i].len() {
                    idx[i] += 1;
                    break;
                }
                idx[i] = 0;
            }
        }
    }
}

/// Vertex `u` gets the value `S(u) = G[u] + 1` for the Sidon set `G` of size
/// `|V|`; `N = max_2 + 1` where `max_2` is the largest sum of two distinct
/// values; an edge `uv` between parts `i < j` becomes a vector of `E_(i,j)`
/// with value `N - S(u) - S(v)`. Vectors appear in vertex and edge order.
pub fn mcc_to_mpss(g: &PartiteGraph) -> Result<MpssInstance> {
    if g.k < 2 {
        return Err(Error::InvalidArgument("multicoloured clique needs k >= 2"));
    }
    if g.edges.iter().any(|&(u, v)| g.part[u] == g.part[v]) {
        return Err(Error::InvalidArgument("edge inside a part"));
    }
    let n = g.part.len();
    let s: Vec<u64> = sidon_set(n).into_iter().map(|a| a + 1).collect();
    let max2 = if n >= 2 { s[n - 1] + s[n - 2] } else { s.first().copied().unwrap_or(0) };
    let target = max2 + 1;
    let mut v_sets = vec![Vec::new(); g.k];
    for u in 0..n {
        v_sets[g.part[u]].push(UniformVector { value: s[u], support: Support::Vertex(g.part[u]) });
    }
    let mut e_sets = vec![Vec::new(); g.k * (g.k - 1) / 2];
    for &(u, v) in &g.edges {
        let r = coordinate_index(g.k, g.part[u], g.part[v]);
        e_sets[r].push(UniformVector { value: target - s[u] - s[v], support: Support::Coordinate(r) });
    }
    Ok(MpssInstance { k: g.k, target, v_sets, e_sets })
}

#[derive(Clone, Copy)]
enum Step {
    Eq,
    Lt,
}

/// Planted values stay small, so they are computed in machine integers.
type Q = Ratio<i64>;

fn q(n: u64) -> Q {
    Q::from_integer(n as i64)
}

/// `from + (to - from) i / n` with a single normalization; the paths are
/// long enough for this to matter.
fn lerp(from: Q, to: Q, i: u64, n: u64) -> Q {
    let (i, n) = (i as i64, n as i64);
    let den = from.denom() * to.denom();
    let (f, t) = (from.numer() * to.denom(), to.numer() * from.denom());
    Q::new(f * n + (t - f) * i, den * n)
}

/// `h{id}_{i}` without the formatting machinery.
fn aux_name(id: usize, i: u64) -> String {
    let mut s = String::with_capacity(12);
    s.push('h');
    push_decimal(&mut s, id as u64);
    s.push('_');
    push_decimal(&mut s, i);
    s
}

fn push_decimal(s: &mut String, mut v: u64) {
    let mut buf = [0u8; 20];
    let mut at = buf.len();
    loop {
        at -= 1;
        buf[at] = b'0' + (v % 10) as u8;
        v /= 10;
        if v == 0 {
            break;
        }
    }
    s.extend(buf[at..].iter().map(|&b| b as char));
}

/// Instance under construction, optionally with a value for every variable.
struct Board {
    inst: Instance,
    values: Option<Vec<Q>>,
    aux: usize,
}

impl Board {
    fn var(&mut self, name: String, value: impl FnOnce(&[Q]) -> Q) -> VarId {
        if let Some(vals) = &mut self.values {
            let v = value(vals);
            vals.push(v);
        }
        self.inst.add_var(name)
    }

    fn val(&self, v: VarId) -> Option<Q> {
        self.values.as_ref().map(|vals| vals[v])
    }

    fn atom(&mut self, x: VarId, y: VarId, iv: Interval) {
        self.inst.push_atom(x, y, iv);
    }

    /// `a - b op n`, as a chain of `n` unit steps when `n > 1`.
    fn path(&mut self, a: VarId, b: VarId, n: u64, op: Step) {
        let unit = |m: i64| match op {
            Step::Eq => Interval::point(m),
            Step::Lt => Interval::below(m),
        };
        if n <= 1 {
            self.atom(a, b, unit(n as i64));
            return;
        }
        let id = self.aux;
        self.aux += 1;
        let ends = self.val(b).zip(self.val(a));
        let mut prev = b;
        for i in 1..n {
            let h = self.var(aux_name(id, i), move |_| {
                let (from, to) = ends.expect("planted value");
                lerp(from, to, i, n)
            });
            self.atom(h, prev, unit(1));
            prev = h;
        }
        self.atom(a, prev, unit(1));
    }

    /// Gadget forcing `b - a in {0} or (z, 2z]`: `a = h0, ..., h_{2z} = b`
    /// with steps in `[0,1]` and `h_{i+2} - h_i in {0} or (1, inf)`.
    fn gadget(&mut self, a: VarId, b: VarId, z: u64) {
        let id = self.aux;
        self.aux += 1;
        let ends = self.val(a).zip(self.val(b));
        let mut hs = vec![a];
        for i in 1..2 * z {
            hs.push(self.var(aux_name(id, i), move |_| {
                let (from, to) = ends.expect("planted value");
                lerp(from, to, i, 2 * z)
            }));
        }
        hs.push(b);
        for w in hs.windows(2) {
            self.atom(w[1], w[0], Interval::closed(0, 1));
        }
        for w in hs.windows(3) {
            self.inst.push(Constraint::new(vec![
                Atom::new(w[2], w[0], Interval::point(0)),
                Atom::new(w[2], w[0], Interval::above(1)),
            ]));
        }
    }
}

/// The standalone gadget on variables `a` and `b` (ids 0 and 1): models
/// have `b - a in {0} or (z, 2z]`.
pub fn gap_gadget(z: u64) -> (Instance, VarId, VarId) {
    let mut board = Board { inst: Instance::default(), values: None, aux: 0 };
    let a = board.var("a".into(), |_| q(0));
    let b = board.var("b".into(), |_| q(0));
    board.gadget(a, b, z);
    (board.inst, a, b)
}

/// Translates MPSS into binary constraints with bound 1. The first `4K`
/// variables are the bucket variables `b{r}_{1..4}`; garbage variables are
/// `gV{i}_{l}` / `gE{r}_{l}`, vector endpoints `x..`/`y..`, auxiliaries
/// `h{j}_{i}` (indices 1-based).
pub fn mpss_to_d21(m: &MpssInstance) -> Result<Instance> {
    Ok(build(m, None)?.inst)
}

/// The translation together with the assignment built from an MPSS
/// solution: chosen vectors sit in their buckets, the others in garbage
/// slots of their own length, chosen garbage slots get half their length.
pub fn mpss_planted(m: &MpssInstance, choice: &MpssChoice) -> Result<(Instance, Assignment)> {
    if !m.is_solution(choice) {
        return Err(Error::InvalidArgument("choice is not an mpss solution"));
    }
    let board = build(m, Some(choice))?;
    let values = board.values.expect("planted values");
    let exact = values.into_iter().map(|v| Rational::new_raw(BigInt::from(*v.numer()), BigInt::from(*v.denom())));
    Ok((board.inst, Assignment::total(exact.collect())))
}

/// The `M` of the construction: `K N + sum of all vector values`.
pub fn gap_length(m: &MpssInstance) -> u64 {
    let total: u64 = m.v_sets.iter().chain(&m.e_sets).flatten().map(|v| v.value).sum();
    m.coordinate_count() as u64 * m.target + total
}

fn build(m: &MpssInstance, choice: Option<&MpssChoice>) -> Result<Board> {
    m.validate()?;
    let k = m.k;
    let kk = m.coordinate_count();
    let big_m = gap_length(m);
    let coords = coordinates(k);
    let mut board = Board { inst: Instance::default(), values: choice.map(|_| Vec::new()), aux: 1 };

    // buckets: b^r_2 - b^r_1 and b^r_3 - b^r_2 hold the two vertex vectors,
    // b^r_4 - b^r_3 the edge vector
    let mut b = vec![[0usize; 4]; kk];
    for (r, &(i, j)) in coords.iter().enumerate() {
        let widths = choice.map(|c| [m.v_sets[i][c.v[i]].value, m.v_sets[j][c.v[j]].value, m.e_sets[r][c.e[r]].value]);
        for l in 0..4 {
            let prev = if l > 0 { Some(b[r][l - 1]) } else if r > 0 { Some(b[r - 1][3]) } else { None };
            b[r][l] = board.var(format!("b{}_{}", r + 1, l + 1), |vals| match prev {
                None => q(0),
                Some(p) if l == 0 => vals[p],
                Some(p) => vals[p] + q(widths.expect("planted")[l - 1]),
            });
        }
    }
    for r in 0..kk {
        for l in 0..3 {
            board.atom(b[r][l + 1], b[r][l], Interval::at_least(0));
        }
        board.path(b[r][3], b[r][0], m.target, Step::Eq);
        if r + 1 < kk {
            board.atom(b[r + 1][0], b[r][3], Interval::point(0));
        }
    }

    // garbage: one slot per vector, total strictly below the set's sum
    let sets: Vec<(String, &Vec<UniformVector>, Option<usize>)> = m
        .v_sets
        .iter()
        .enumerate()
        .map(|(i, s)| (format!("V{}", i + 1), s, choice.map(|c| c.v[i])))
        .chain(m.e_sets.iter().enumerate().map(|(r, s)| (format!("E{}", r + 1), s, choice.map(|c| c.e[r]))))
        .collect();
    let mut g: Vec<Vec<VarId>> = Vec::with_capacity(sets.len());
    let mut last = b[kk - 1][3];
    for (s_idx, (label, set, chosen)) in sets.iter().enumerate() {
        let mut slots = Vec::with_capacity(set.len() + 1);
        let start = last;
        let offset = if s_idx == 0 { big_m } else { 0 };
        slots.push(board.var(format!("g{label}_0"), |vals| vals[start] + q(offset)));
        for (l, v) in set.iter().enumerate() {
            let p = slots[l];
            let width = if *chosen == Some(l) { q(v.value) / q(2) } else { q(v.value) };
            slots.push(board.var(format!("g{label}_{}", l + 1), |vals| vals[p] + width));
        }
        if s_idx == 0 {
            board.path(slots[0], start, big_m, Step::Eq);
        } else {
            board.atom(slots[0], start, Interval::point(0));
        }
        for w in slots.windows(2) {
            board.atom(w[1], w[0], Interval::at_least(0));
        }
        let total: u64 = set.iter().map(|v| v.value).sum();
        if total == 0 {
            board.inst.push(Constraint::empty());
        } else {
            board.path(slots[set.len()], slots[0], total, Step::Lt);
        }
        last = slots[set.len()];
        g.push(slots);
    }

    // vector endpoints, each pinned to its bucket or its garbage slot
    let place = |board: &mut Board, name: String, bucket: VarId, garbage: VarId, in_bucket: bool| -> VarId {
        let home = if in_bucket { bucket } else { garbage };
        let v = board.var(name, |vals| vals[home]);
        board.gadget(bucket, v, big_m);
        board.gadget(v, garbage, big_m);
        v
    };
    for (i, set) in m.v_sets.iter().enumerate() {
        for (l, vec_i) in set.iter().enumerate() {
            let chosen = choice.is_some_and(|c| c.v[i] == l);
            for (r, &(a, bb)) in coords.iter().enumerate().filter(|(_, &(a, bb))| a == i || bb == i) {
                let (bx, by) = if a == i { (b[r][0], b[r][1]) } else { (b[r][1], b[r][2]) };
                let tag = format!("V{}_{}_{}_{}", i + 1, l + 1, a + 1, bb + 1);
                let x = place(&mut board, format!("x{tag}"), bx, g[i][l], chosen);
                let y = place(&mut board, format!("y{tag}"), by, g[i][l + 1], chosen);
                board.path(y, x, vec_i.value, Step::Eq);
            }
        }
    }
    for (r, set) in m.e_sets.iter().enumerate() {
        for (l, vec_e) in set.iter().enumerate() {
            let chosen = choice.is_some_and(|c| c.e[r] == l);
            let gs = &g[k + r];
            let x = place(&mut board, format!("xE{}_{}", r + 1, l + 1), b[r][2], gs[l], chosen);
            let y = place(&mut board, format!("yE{}_{}", r + 1, l + 1), b[r][3], gs[l + 1], chosen);
            board.path(y, x, vec_e.value, Step::Eq);
        }
    }
    Ok(board)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::int;
    use crate::cd::certificate_exists;
    use crate::structure::{decompose, primal_graph};

    fn single_edge() -> PartiteGraph {
        let mut g = PartiteGraph::new(2, vec![0, 1]);
        g.add_edge(0, 1);
        g
    }

    fn with_gap(inst: &Instance, a: VarId, b: VarId, iv: Interval) -> Instance {
        let mut out = inst.clone();
        out.push_atom(b, a, iv);
        out
    }

    #[test]
    fn path_values_and_names() {
        let (from, to) = (Q::new(1, 2), Q::new(7, 3));
        for i in 0..=5 {
            assert_eq!(lerp(from, to, i, 5), from + (to - from) * q(i) / q(5));
        }
        assert_eq!(aux_name(0, 7), "h0_7");
        assert_eq!(aux_name(120, 3045), "h120_3045");
    }

    #[test]
    fn coordinate_order() {
        assert_eq!(coordinates(3), vec![(0, 1), (0, 2), (1, 2)]);
        for (r, &(a, b)) in coordinates(5).iter().enumerate() {
            assert_eq!(coordinate_index(5, a, b), r);
            assert_eq!(coordinate_index(5, b, a), r);
        }
        let v = UniformVector { value: 4, support: Support::Vertex(1) };
        assert_eq!(v.dense(3), vec![4, 0, 4]);
    }

    #[test]
    fn clique_examples() {
        let m = mcc_to_mpss(&single_edge()).unwrap();
        m.validate().unwrap();
        assert_eq!(m.target, 1 + 8 + 1);
        assert_eq!(m.e_sets[0][0].value, 10 - 1 - 8);
        assert!(m.brute_force().is_some());

        let empty = PartiteGraph::new(2, vec![0, 1]);
        assert!(mcc_to_mpss(&empty).unwrap().brute_force().is_none());

        let mut tri = PartiteGraph::new(3, vec![0, 1, 2, 0]);
        tri.add_edge(0, 1);
        tri.add_edge(1, 2);
        tri.add_edge(3, 2);
        assert!(tri.multicoloured_clique().is_none());
        assert!(mcc_to_mpss(&tri).unwrap().brute_force().is_none());
        tri.add_edge(0, 2);
        assert_eq!(tri.multicoloured_clique(), Some(vec![0, 1, 2]));
        let m = mcc_to_mpss(&tri).unwrap();
        let c = m.brute_force().unwrap();
        assert_eq!(c.v, vec![0, 0, 0]);

        let mut bad = PartiteGraph::new(2, vec![0, 0, 1]);
        bad.add_edge(0, 1);
        assert!(mcc_to_mpss(&bad).is_err());
    }

    #[test]
    fn gadget_claim() {
        for z in 1..=3u64 {
            let (u, a, b) = gap_gadget(z);
            assert!(u.num_bound() <= 1 && u.arity() == 2);
            let zi = z as i64;
            assert!(certificate_exists(&with_gap(&u, a, b, Interval::point(0))));
            assert!(!certificate_exists(&with_gap(&u, a, b, Interval::open(0, zi))));
            assert!(!certificate_exists(&with_gap(&u, a, b, Interval::point(zi))));
            assert!(certificate_exists(&with_gap(&u, a, b, Interval::open(zi, zi + 1))));
            assert!(certificate_exists(&with_gap(&u, a, b, Interval::point(2 * zi))));
            assert!(!certificate_exists(&with_gap(&u, a, b, Interval::above(2 * zi))));
            assert!(!certificate_exists(&with_gap(&u, a, b, Interval::below(0))));
        }
    }

    #[test]
    fn gadget_assignments() {
        // z = 2: gap 0 fits, gap 2 does not, gap 3 fits with steps 3/4
        let (u, _, _) = gap_gadget(2);
        let at = |gap: Rational, step: Rational| {
            let mut vals = vec![int(0), gap];
            vals.extend((1..4).map(|i| step.clone() * int(i)));
            Assignment::total(vals)
        };
        assert!(u.eval(&at(int(0), int(0))).unwrap());
        assert!(!u.eval(&at(int(2), Rational::new(1.into(), 2.into()))).unwrap());
        assert!(u.eval(&at(int(3), Rational::new(3.into(), 4.into()))).unwrap());
    }

    #[test]
    fn planted_assignment_single_edge() {
        let m = mcc_to_mpss(&single_edge()).unwrap();
        let choice = m.brute_force().unwrap();
        let (inst, a) = mpss_planted(&m, &choice).unwrap();
        assert_eq!(inst, mpss_to_d21(&m).unwrap());
        assert_eq!(inst.first_violated(&a).unwrap(), None);
        assert!(inst.num_bound() <= 1 && inst.arity() <= 2);
        assert_eq!(inst.var_names[0], "b1_1");
        let residual = primal_graph(&inst).without(&[0, 1, 2, 3]);
        assert!(decompose(&residual).width() <= 3);
    }

    #[test]
    fn planted_assignment_triangle() {
        let mut g = PartiteGraph::new(3, vec![0, 1, 2, 1]);
        g.add_edge(0, 1);
        g.add_edge(0, 2);
        g.add_edge(1, 2);
        g.add_edge(0, 3);
        let m = mcc_to_mpss(&g).unwrap();
        let choice = m.brute_force().unwrap();
        let (inst, a) = mpss_planted(&m, &choice).unwrap();
        assert_eq!(inst.first_violated(&a).unwrap(), None);
        let buckets: Vec<VarId> = (0..12).collect();
        assert!(decompose(&primal_graph(&inst).without(&buckets)).width() <= 3);

        let wrong = MpssChoice { v: vec![0, 1, 0], e: choice.e.clone() };
        assert!(mpss_planted(&m, &wrong).is_err());
    }
}
