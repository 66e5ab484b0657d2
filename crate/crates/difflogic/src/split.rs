//! Divide-and-conquer decision procedure for binary instances with bounded
//! endpoints: split the variables around sparse bands of width k, solving
//! the middle exactly and recursing on both sides.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::bounded::{solve_bounded, SpanProblem};
use crate::cd::{cell_cover, certificate_exists, list_certificates, Certificate};
use crate::error::{Error, Result};
use crate::instance::{normalize_pairwise, Atom, Constraint, Instance};
use crate::interval::{Bound, Interval};
use crate::VarId;

/// Parameters of the divide-and-conquer solver.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitConfig {
    /// Bound on the absolute value of interval endpoints.
    pub k: u64,
    /// Instances with fewer variables are decided directly.
    pub base_case_threshold: usize,
}

impl Default for SplitConfig {
    fn default() -> Self {
        SplitConfig { k: 1, base_case_threshold: 8 }
    }
}

/// Counters collected during a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DncStats {
    pub solve_calls: u64,
    pub base_cases: u64,
    pub memo_hits: u64,
    pub three_split_partitions: u64,
    pub five_split_partitions: u64,
    pub bounded_calls: u64,
    /// Largest recursive instance relative to its parent: (child, parent).
    pub largest_child: (usize, usize),
}

/// Decides satisfiability of a binary instance whose endpoints are bounded
/// by `cfg.k`.
pub fn solve_dnc(inst: &Instance, cfg: SplitConfig) -> Result<bool> {
    solve_dnc_with_stats(inst, cfg).map(|(b, _)| b)
}

pub fn solve_dnc_with_stats(inst: &Instance, cfg: SplitConfig) -> Result<(bool, DncStats)> {
    let mut s = Splitter::new(inst, cfg)?;
    let norm = normalize_pairwise(inst)?;
    let r = s.solve(&norm)?;
    Ok((r, s.stats))
}

/// Runs only the three-way split on a (normalized) instance.
pub fn three_split(inst: &Instance, cfg: SplitConfig) -> Result<bool> {
    let mut s = Splitter::new(inst, cfg)?;
    s.three_split(&normalize_pairwise(inst)?)
}

/// Runs only the five-way split on a (normalized) instance.
pub fn five_split(inst: &Instance, cfg: SplitConfig) -> Result<bool> {
    let mut s = Splitter::new(inst, cfg)?;
    s.five_split(&normalize_pairwise(inst)?)
}

/// True if the constraint on `(x, z)` is absent or every value of `z - x`
/// above `k` satisfies it.
pub fn separation_ok(inst: &Instance, x: VarId, z: VarId, k: u64) -> bool {
    let tail = Interval::above(k as i64);
    inst.constraints.iter().all(|c| {
        let scope = c.scope();
        if !(scope.len() == 2 && scope.contains(&x) && scope.contains(&z)) {
            return true;
        }
        let mut parts: Vec<Interval> = c
            .disjuncts
            .iter()
            .map(|a| if a.x == z { a.interval } else { a.interval.mirror() })
            .filter_map(|iv| iv.intersect(&tail))
            .collect();
        covers(&tail, &mut parts)
    })
}

/// True if the union of `parts` (each inside `target`) equals `target`.
fn covers(target: &Interval, parts: &mut [Interval]) -> bool {
    parts.sort_by(|a, b| a.lo().cmp(&b.lo()).then(a.lo_open().cmp(&b.lo_open())));
    let mut reach = target.lo();
    // whether the point `reach` itself is already accounted for
    let mut reach_in = target.lo_open();
    for p in parts.iter() {
        if p.lo() > reach || (p.lo() == reach && p.lo_open() && !reach_in) {
            return false;
        }
        if p.hi() > reach {
            reach = p.hi();
            reach_in = !p.hi_open();
        } else if p.hi() == reach && !p.hi_open() {
            reach_in = true;
        }
    }
    reach == target.hi() && (reach == Bound::PosInf || reach_in || target.hi_open())
}

fn log2(n: usize) -> f64 {
    libm_log2(n as f64)
}

// `f64::log2` lives in std; integer-friendly version for no_std.
fn libm_log2(x: f64) -> f64 {
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64 - 1023;
    let mant = f64::from_bits((bits & 0x000f_ffff_ffff_ffff) | 0x3ff0_0000_0000_0000);
    // mant in [1,2): series for log2 via ln(m) = 2 atanh((m-1)/(m+1))
    let t = (mant - 1.0) / (mant + 1.0);
    let t2 = t * t;
    let mut term = t;
    let mut sum = 0.0;
    let mut i = 1.0;
    while i < 60.0 {
        sum += term / i;
        term *= t2;
        i += 2.0;
    }
    exp as f64 + 2.0 * sum / core::f64::consts::LN_2
}

/// `|S| <= n / log2 n`, compared without rounding the threshold.
fn sparse(size: usize, n: usize) -> bool {
    if n < 2 {
        return true;
    }
    (size as f64) * log2(n) <= n as f64
}

/// `ceil(k (log2 n + 2))`.
pub fn span_width(k: u64, n: usize) -> u64 {
    let w = k as f64 * (log2(n.max(1)) + 2.0);
    let c = w as u64;
    if (c as f64) < w {
        c + 1
    } else {
        c
    }
}

struct Splitter {
    k: u64,
    threshold: usize,
    memo: BTreeMap<Vec<i64>, bool>,
    bounded_memo: BTreeMap<Vec<i64>, bool>,
    stats: DncStats,
}

fn encode(inst: &Instance) -> Vec<i64> {
    fn bound(b: Bound) -> [i64; 2] {
        match b {
            Bound::NegInf => [0, 0],
            Bound::Finite(v) => [1, v],
            Bound::PosInf => [2, 0],
        }
    }
    let mut cs: Vec<Vec<i64>> = inst
        .constraints
        .iter()
        .map(|c| {
            let mut atoms: Vec<Atom> = c.disjuncts.iter().map(Atom::canonical).collect();
            atoms.sort();
            let mut v = Vec::with_capacity(atoms.len() * 8);
            for a in atoms {
                let iv = a.interval;
                v.extend([a.x as i64, a.y as i64]);
                v.extend(bound(iv.lo()));
                v.push(iv.lo_open() as i64);
                v.extend(bound(iv.hi()));
                v.push(iv.hi_open() as i64);
            }
            v
        })
        .collect();
    cs.sort();
    cs.dedup();
    let mut out = vec![inst.var_count() as i64];
    for c in cs {
        out.push(-1);
        out.extend(c);
    }
    out
}

/// The sub-instance induced by `vars` plus `fresh` new variables appended
/// after them; returns the instance and the old-to-new variable map.
fn induced(inst: &Instance, vars: &[VarId], fresh: usize) -> (Instance, Vec<Option<VarId>>) {
    let mut map = vec![None; inst.var_count()];
    let mut names = Vec::with_capacity(vars.len() + fresh);
    for (i, &v) in vars.iter().enumerate() {
        map[v] = Some(i);
        names.push(inst.var_names[v].clone());
    }
    for i in 0..fresh {
        names.push(alloc::format!("_min{i}"));
    }
    let mut out = Instance::new(names);
    for c in &inst.constraints {
        let mapped: Option<Vec<Atom>> = c
            .disjuncts
            .iter()
            .map(|a| Some(Atom::new(map[a.x]?, map[a.y]?, a.interval)))
            .collect();
        if let Some(atoms) = mapped {
            if !atoms.is_empty() {
                out.push(Constraint::new(atoms));
            }
        }
    }
    (out, map)
}

/// The middle instance over `ys` plus a fresh minimum, enriched with a
/// tautological unit-cell split for every pair so that each certificate
/// fixes the relative position of every pair.
fn middle_certificates(inst: &Instance, ys: &[VarId], k: u64) -> Vec<Certificate> {
    let (mut mid, _) = induced(inst, ys, 1);
    let m = ys.len();
    let band = Interval::new(Bound::Finite(0), false, Bound::Finite(k as i64), true).expect("k >= 1");
    for y in 0..m {
        mid.push_atom(y, m, band);
    }
    for a in 0..=m {
        for b in a + 1..=m {
            mid.push(Constraint::new(cell_cover(a, b, k)));
        }
    }
    list_certificates(&mid)
}

/// Adds the certificate atoms, whose variables are middle-instance ids
/// (`ys` then the fresh minimum), to `target`.
fn add_certificate(target: &mut Instance, cert: &Certificate, middle_to_target: &[VarId]) {
    for a in &cert.atoms {
        target.push_atom(middle_to_target[a.x], middle_to_target[a.y], a.interval);
    }
}

fn labelings(n: usize, blocks: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = (blocks as u64).pow(n as u32);
    (0..total).map(move |mut code| {
        let mut labels = vec![0u8; n];
        for slot in labels.iter_mut().rev() {
            *slot = (code % blocks as u64) as u8;
            code /= blocks as u64;
        }
        labels
    })
}

impl Splitter {
    fn new(inst: &Instance, cfg: SplitConfig) -> Result<Splitter> {
        if cfg.base_case_threshold == 0 {
            return Err(Error::InvalidArgument("base case threshold must be at least 1"));
        }
        if inst.arity() > 2 {
            return Err(Error::NotBinary);
        }
        if inst.num_bound() > cfg.k {
            return Err(Error::FragmentMismatch("endpoint exceeds the configured bound k"));
        }
        Ok(Splitter {
            k: cfg.k.max(1),
            threshold: cfg.base_case_threshold,
            memo: BTreeMap::new(),
            bounded_memo: BTreeMap::new(),
            stats: DncStats::default(),
        })
    }

    fn solve(&mut self, inst: &Instance) -> Result<bool> {
        self.stats.solve_calls += 1;
        let inst = normalize_pairwise(inst)?;
        if inst.constraints.iter().any(Constraint::is_empty) {
            return Ok(false);
        }
        let key = encode(&inst);
        if let Some(&r) = self.memo.get(&key) {
            self.stats.memo_hits += 1;
            return Ok(r);
        }
        let r = if inst.var_count() < self.threshold {
            self.stats.base_cases += 1;
            certificate_exists(&inst)
        } else {
            self.three_split(&inst)? || self.five_split(&inst)?
        };
        self.memo.insert(key, r);
        Ok(r)
    }

    fn recurse(&mut self, child: &Instance, parent: usize) -> Result<bool> {
        let c = child.var_count();
        if c * self.stats.largest_child.1 > self.stats.largest_child.0 * parent.max(1) || self.stats.largest_child.1 == 0 {
            self.stats.largest_child = (c, parent);
        }
        self.solve(child)
    }

    fn three_split(&mut self, inst: &Instance) -> Result<bool> {
        let n = inst.var_count();
        let k = self.k as i64;
        let mut cert_cache: BTreeMap<Vec<VarId>, Vec<Certificate>> = BTreeMap::new();
        for labels in labelings(n, 3) {
            let block = |b: u8| -> Vec<VarId> { (0..n).filter(|&v| labels[v] == b).collect() };
            let (xs, ys, zs) = (block(0), block(1), block(2));
            if 3 * xs.len() < n || 3 * zs.len() < n || !sparse(ys.len(), n) {
                continue;
            }
            if !xs.iter().all(|&x| zs.iter().all(|&z| separation_ok(inst, x, z, self.k))) {
                continue;
            }
            self.stats.three_split_partitions += 1;
            let certs = cert_cache.entry(ys.clone()).or_insert_with(|| middle_certificates(inst, &ys, self.k)).clone();
            let m = ys.len();
            for cert in &certs {
                // I1 over X, Y, y_min
                let left_vars: Vec<VarId> = xs.iter().chain(&ys).copied().collect::<Vec<_>>();
                let (mut i1, map1) = induced(inst, &sorted(&left_vars), 1);
                let ymin1 = i1.var_count() - 1;
                let mid_to_1: Vec<VarId> = ys.iter().map(|&y| map1[y].expect("y mapped")).chain([ymin1]).collect();
                add_certificate(&mut i1, cert, &mid_to_1);
                for &x in &xs {
                    i1.push_atom(ymin1, map1[x].expect("x mapped"), Interval::above(0));
                }
                if !self.recurse(&i1, n)? {
                    continue;
                }
                let right_vars: Vec<VarId> = ys.iter().chain(&zs).copied().collect();
                let (mut i2, map2) = induced(inst, &sorted(&right_vars), 1);
                let ymin2 = i2.var_count() - 1;
                let mid_to_2: Vec<VarId> = ys.iter().map(|&y| map2[y].expect("y mapped")).chain([ymin2]).collect();
                add_certificate(&mut i2, cert, &mid_to_2);
                for &z in &zs {
                    i2.push_atom(map2[z].expect("z mapped"), ymin2, Interval::above(k));
                }
                debug_assert_eq!(mid_to_2.len(), m + 1);
                if self.recurse(&i2, n)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn five_split(&mut self, inst: &Instance) -> Result<bool> {
        let n = inst.var_count();
        let k = self.k;
        let ki = k as i64;
        let w = span_width(k, n);
        let mut cert_cache: BTreeMap<Vec<VarId>, Vec<Certificate>> = BTreeMap::new();
        for labels in labelings(n, 5) {
            let block = |b: u8| -> Vec<VarId> { (0..n).filter(|&v| labels[v] == b).collect() };
            let (s1, s2, s3, s4, s5) = (block(0), block(1), block(2), block(3), block(4));
            if 3 * s1.len() >= n || 3 * s5.len() >= n || !sparse(s2.len(), n) || !sparse(s4.len(), n) {
                continue;
            }
            let rest: Vec<VarId> = s3.iter().chain(&s4).chain(&s5).copied().collect();
            let guards = s1.iter().all(|&a| rest.iter().all(|&x| separation_ok(inst, a, x, k)))
                && s3.iter().all(|&a| s5.iter().all(|&b| separation_ok(inst, a, b, k)))
                && s2.iter().all(|&a| s5.iter().all(|&b| separation_ok(inst, a, b, k)));
            if !guards {
                continue;
            }
            self.stats.five_split_partitions += 1;
            let certs2 = cert_cache.entry(s2.clone()).or_insert_with(|| middle_certificates(inst, &s2, k)).clone();
            let certs4 = cert_cache.entry(s4.clone()).or_insert_with(|| middle_certificates(inst, &s4, k)).clone();
            for f2 in &certs2 {
                let (mut i1, map1) = induced(inst, &sorted(&[s1.as_slice(), s2.as_slice()].concat()), 1);
                let min1 = i1.var_count() - 1;
                let mid: Vec<VarId> = s2.iter().map(|&v| map1[v].expect("mapped")).chain([min1]).collect();
                add_certificate(&mut i1, f2, &mid);
                for &a in &s1 {
                    i1.push_atom(min1, map1[a].expect("mapped"), Interval::above(0));
                }
                if !self.recurse(&i1, n)? {
                    continue;
                }
                for f4 in &certs4 {
                    let (mut i3, map3) = induced(inst, &sorted(&[s4.as_slice(), s5.as_slice()].concat()), 1);
                    let min3 = i3.var_count() - 1;
                    let mid: Vec<VarId> = s4.iter().map(|&v| map3[v].expect("mapped")).chain([min3]).collect();
                    add_certificate(&mut i3, f4, &mid);
                    for &b in &s5 {
                        i3.push_atom(map3[b].expect("mapped"), min3, Interval::above(ki));
                    }
                    if !self.recurse(&i3, n)? {
                        continue;
                    }
                    let core: Vec<VarId> = sorted(&[s2.as_slice(), s3.as_slice(), s4.as_slice()].concat());
                    let (mut i2, map2) = induced(inst, &core, 2);
                    let (m2, m4) = (i2.var_count() - 2, i2.var_count() - 1);
                    let mid2: Vec<VarId> = s2.iter().map(|&v| map2[v].expect("mapped")).chain([m2]).collect();
                    let mid4: Vec<VarId> = s4.iter().map(|&v| map2[v].expect("mapped")).chain([m4]).collect();
                    add_certificate(&mut i2, f2, &mid2);
                    add_certificate(&mut i2, f4, &mid4);
                    for &c in &s3 {
                        let c2 = map2[c].expect("mapped");
                        i2.push_atom(c2, m2, Interval::above(ki));
                        i2.push_atom(m4, c2, Interval::above(0));
                    }
                    i2.push_atom(m4, m2, Interval::at_least(ki));
                    if self.bounded(i2, w)? {
                        return Ok(true);
                    }
                }
            }
        }
        Ok(false)
    }

    fn bounded(&mut self, inst: Instance, w: u64) -> Result<bool> {
        let inst = normalize_pairwise(&inst)?;
        if inst.constraints.iter().any(Constraint::is_empty) {
            return Ok(false);
        }
        let key = encode(&inst);
        if let Some(&r) = self.bounded_memo.get(&key) {
            return Ok(r);
        }
        // a model inside the span is a model; skip the span search when there is none
        let r = certificate_exists(&inst) && {
            self.stats.bounded_calls += 1;
            solve_bounded(&SpanProblem { w, inst: inst.clone() })?.is_some()
        };
        self.bounded_memo.insert(key, r);
        Ok(r)
    }
}

fn sorted(v: &[VarId]) -> Vec<VarId> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cd::{certificate_oracle, DEFAULT_ORACLE_CAP};

    fn chain(n: usize) -> Instance {
        let mut inst = Instance::with_vars(n);
        for i in 0..n - 1 {
            inst.push_atom(i + 1, i, Interval::point(1));
        }
        inst
    }

    #[test]
    fn log_and_width() {
        assert!((log2(8) - 3.0).abs() < 1e-12);
        assert!((log2(10) - core::f64::consts::LOG2_10).abs() < 1e-9);
        assert_eq!(span_width(1, 8), 5);
        assert_eq!(span_width(2, 9), 11);
        assert!(sparse(2, 8));
        assert!(!sparse(3, 8));
    }

    #[test]
    fn separation_guard() {
        let inst = Instance::with_vars(2);
        assert!(separation_ok(&inst, 0, 1, 1));
        let mut near = Instance::with_vars(2);
        near.push_atom(0, 1, Interval::closed(0, 1));
        assert!(!separation_ok(&near, 0, 1, 1));
        let mut far = Instance::with_vars(2);
        far.push_atom(1, 0, Interval::at_least(0));
        assert!(separation_ok(&far, 0, 1, 1));
        let mut split = Instance::with_vars(2);
        split.push(Constraint::new(vec![
            Atom::new(1, 0, Interval::open(1, 2)),
            Atom::new(1, 0, Interval::at_least(2)),
        ]));
        assert!(separation_ok(&split, 0, 1, 1));
        let mut hole = Instance::with_vars(2);
        hole.push(Constraint::new(vec![
            Atom::new(1, 0, Interval::open(1, 2)),
            Atom::new(1, 0, Interval::above(2)),
        ]));
        assert!(!separation_ok(&hole, 0, 1, 1));
    }

    #[test]
    fn small_examples() {
        let cfg = SplitConfig::default();
        assert!(solve_dnc(&chain(3), cfg).unwrap());
        let mut empty = chain(3);
        empty.push(Constraint::empty());
        assert!(!solve_dnc(&empty, cfg).unwrap());
        let mut ternary = Instance::with_vars(3);
        ternary.push(Constraint::new(vec![Atom::new(0, 1, Interval::full()), Atom::new(1, 2, Interval::full())]));
        assert_eq!(solve_dnc(&ternary, cfg), Err(Error::NotBinary));
    }

    #[test]
    fn chain_of_eight_splits_in_three() {
        let cfg = SplitConfig::default();
        let mut inst = chain(8);
        inst.push_atom(7, 0, Interval::at_least(0));
        let (sat, stats) = solve_dnc_with_stats(&inst, cfg).unwrap();
        assert!(sat);
        assert!(certificate_oracle(&inst, DEFAULT_ORACLE_CAP).unwrap());
        assert!(stats.three_split_partitions > 0);
        let (c, p) = stats.largest_child;
        assert!(3 * c <= 2 * p + 3, "child {c} of {p}");
    }

    #[test]
    fn dense_cluster_needs_five_split() {
        // all pairs within distance < 1
        let cfg = SplitConfig::default();
        let mut inst = Instance::with_vars(8);
        for i in 0..8 {
            for j in i + 1..8 {
                inst.push_atom(i, j, Interval::open(-1, 1));
            }
        }
        assert!(!three_split(&inst, cfg).unwrap());
        assert!(five_split(&inst, cfg).unwrap());
        assert!(solve_dnc(&inst, cfg).unwrap());
        inst.push_atom(7, 0, Interval::point(1));
        assert!(!solve_dnc(&inst, cfg).unwrap());
        assert!(!certificate_oracle(&inst, DEFAULT_ORACLE_CAP).unwrap());
    }

    #[test]
    fn random_binary_agrees_with_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let cfg = SplitConfig::default();
        for round in 0..30 {
            let n = rng.gen_range(5..=8);
            let mut inst = Instance::with_vars(n);
            for _ in 0..rng.gen_range(n..2 * n) {
                let x = rng.gen_range(0..n);
                let y = (x + rng.gen_range(1..n)) % n;
                let atoms = (0..rng.gen_range(1..=2))
                    .map(|_| {
                        let a = rng.gen_range(-1..=1);
                        let iv = match rng.gen_range(0..4) {
                            0 => Interval::point(a),
                            1 => Interval::open(a.min(0), a.min(0) + 1),
                            2 => Interval::above(a),
                            _ => Interval::closed(a.min(0), 1),
                        };
                        Atom::new(x, y, iv)
                    })
                    .collect();
                inst.push(Constraint::new(atoms));
            }
            let expect = certificate_exists(&inst);
            assert_eq!(solve_dnc(&inst, cfg).unwrap(), expect, "round {round}: {inst:?}");
        }
    }
}
