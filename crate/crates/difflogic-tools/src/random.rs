//! Seeded random instances, formulas and source problems.

use rand::seq::SliceRandom;
use rand::Rng;

use difflogic::bounded::pin_atoms;
use difflogic::formula::Formula;
use difflogic::gen::{DcspInstance, GridGraph};
use difflogic::instance::rat;
use difflogic::{Assignment, Atom, Constraint, Instance, Interval};

/// Shape of a random instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomSpec {
    pub n_min: usize,
    pub n_max: usize,
    /// Constraints per instance: `0..=m_max`.
    pub m_max: usize,
    /// Largest absolute endpoint.
    pub k: i64,
    pub max_disjuncts: usize,
    /// Keep each constraint on a single variable pair.
    pub binary: bool,
    /// Only closed intervals.
    pub closed: bool,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec { n_min: 2, n_max: 4, m_max: 5, k: 2, max_disjuncts: 3, binary: false, closed: false }
    }
}

pub fn random_interval<R: Rng>(rng: &mut R, k: i64, closed: bool) -> Interval {
    let a = rng.gen_range(-k..=k);
    let b = rng.gen_range(-k..=k);
    let (lo, hi) = (a.min(b), a.max(b));
    let kind = if closed { rng.gen_range(0..4) } else { rng.gen_range(0..8) };
    match kind {
        0 => Interval::point(a),
        1 => Interval::closed(lo, hi),
        2 => Interval::at_most(a),
        3 => Interval::at_least(a),
        4 if lo < hi => Interval::open(lo, hi),
        5 => Interval::above(a),
        6 => Interval::below(a),
        _ if lo < hi => Interval::new(difflogic::Bound::Finite(lo), rng.gen(), difflogic::Bound::Finite(hi), true).expect("non-empty"),
        _ => Interval::point(a),
    }
}

fn distinct_pair<R: Rng>(rng: &mut R, n: usize) -> (usize, usize) {
    let x = rng.gen_range(0..n);
    let y = (x + rng.gen_range(1..n)) % n;
    (x, y)
}

pub fn random_instance<R: Rng>(rng: &mut R, spec: &RandomSpec) -> Instance {
    let n = rng.gen_range(spec.n_min.max(2)..=spec.n_max.max(2));
    let mut inst = Instance::with_vars(n);
    for _ in 0..rng.gen_range(0..=spec.m_max) {
        let (x, y) = distinct_pair(rng, n);
        let atoms = (0..rng.gen_range(1..=spec.max_disjuncts.max(1)))
            .map(|_| {
                let (a, b) = if spec.binary {
                    if rng.gen() {
                        (x, y)
                    } else {
                        (y, x)
                    }
                } else {
                    distinct_pair(rng, n)
                };
                Atom::new(a, b, random_interval(rng, spec.k, spec.closed))
            })
            .collect();
        inst.push(Constraint::new(atoms));
    }
    inst
}

/// An instance with a planted model: values are multiples of `1/den` in
/// `[0, 3k + 3]`, and each constraint gets one disjunct around the planted
/// difference (plus random ones).
pub fn planted_instance<R: Rng>(rng: &mut R, n: usize, m: usize, k: i64) -> (Instance, Assignment) {
    let den = rng.gen_range(1..=4i64);
    let values: Vec<_> = (0..n).map(|_| rat(rng.gen_range(0..=(3 * k + 3) * den), den)).collect();
    let mut inst = Instance::with_vars(n);
    for _ in 0..m {
        let (x, y) = distinct_pair(rng, n);
        let diff = &values[x] - &values[y];
        let fl = i64::try_from(diff.floor().to_integer()).expect("small");
        let ce = i64::try_from(diff.ceil().to_integer()).expect("small");
        let iv = if fl > k || (fl == k && ce > k) {
            Interval::above(k)
        } else if ce < -k || (ce == -k && fl < -k) {
            Interval::below(-k)
        } else if fl == ce {
            Interval::point(fl)
        } else if rng.gen() {
            Interval::open(fl, ce)
        } else {
            Interval::closed(fl, ce)
        };
        let mut atoms = vec![Atom::new(x, y, iv)];
        for _ in 0..rng.gen_range(0..=2) {
            let (a, b) = distinct_pair(rng, n);
            atoms.push(Atom::new(a, b, random_interval(rng, k, false)));
        }
        atoms.shuffle(rng);
        inst.push(Constraint::new(atoms));
    }
    (inst, Assignment::total(values))
}

/// A binary instance on `n` variables plus a zero variable `z` (the last
/// one) with every variable pinned into `[0, w)`.
pub fn pinned_binary<R: Rng>(rng: &mut R, n: usize, m: usize, w: u64) -> Instance {
    let spec = RandomSpec { n_min: n, n_max: n, m_max: m, k: w as i64, max_disjuncts: 3, binary: true, closed: false };
    let mut inst = random_instance(rng, &spec);
    let vars: Vec<usize> = (0..inst.var_count()).collect();
    let z = inst.add_var("z");
    for a in pin_atoms(&vars, z, w) {
        inst.push(Constraint::single(a));
    }
    inst
}

/// A formula over `n >= 2` variables with nesting depth at most `depth`.
pub fn random_formula<R: Rng>(rng: &mut R, n: usize, depth: usize, k: i64) -> Formula {
    let leaf = |rng: &mut R| {
        if rng.gen_ratio(1, 12) {
            Formula::False
        } else {
            let (x, y) = distinct_pair(rng, n);
            Formula::Atom(Atom::new(x, y, random_interval(rng, k, false)))
        }
    };
    if depth == 0 || rng.gen_ratio(1, 4) {
        return leaf(rng);
    }
    match rng.gen_range(0..5) {
        0 => Formula::not(random_formula(rng, n, depth - 1, k)),
        1 | 2 => Formula::And((0..rng.gen_range(0..=3)).map(|_| random_formula(rng, n, depth - 1, k)).collect()),
        _ => Formula::Or((0..rng.gen_range(0..=3)).map(|_| random_formula(rng, n, depth - 1, k)).collect()),
    }
}

/// Each cross-row pair of cells becomes an edge with probability `p`.
pub fn random_grid_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> GridGraph {
    let mut g = GridGraph::new(n);
    let cells: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    for (a, &u) in cells.iter().enumerate() {
        for &v in &cells[a + 1..] {
            if u.0 != v.0 && rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// A CSP over domain `0..d` with a few unary and binary exclusions.
pub fn random_dcsp<R: Rng>(rng: &mut R, d: u64, n: usize, chi: bool) -> DcspInstance {
    let mut inst = DcspInstance::new(d, n, chi);
    for _ in 0..rng.gen_range(0..=n) {
        inst.forbid_value(rng.gen_range(0..n), rng.gen_range(0..d));
    }
    if n >= 2 {
        for _ in 0..rng.gen_range(0..=2 * n) {
            let (x, y) = distinct_pair(rng, n);
            if chi || rng.gen_ratio(3, 4) {
                let (a, b) = (rng.gen_range(0..d), rng.gen_range(0..d));
                if chi || a != b {
                    inst.forbid_pair(x, y, a, b);
                }
            } else {
                for c in 0..d {
                    inst.forbid_pair(x, y, c, c);
                }
            }
        }
    }
    inst
}

/// `(S, target)` with `1..=max_len` values in `1..=max_value`; the target is
/// a subset sum half of the time.
pub fn random_subset_sum<R: Rng>(rng: &mut R, max_len: usize, max_value: u64) -> (Vec<u64>, u64) {
    let s: Vec<u64> = (0..rng.gen_range(1..=max_len)).map(|_| rng.gen_range(1..=max_value)).collect();
    let target = if rng.gen() {
        s.iter().filter(|_| rng.gen()).sum()
    } else {
        rng.gen_range(0..=s.iter().sum::<u64>() + 1)
    };
    (s, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use difflogic::gen::{dcsp_to_d2k, subset_sum_brute};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn planted_models_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let (n, m, k) = (rng.gen_range(2..=5), rng.gen_range(0..=6), rng.gen_range(0..=2));
            let (inst, a) = planted_instance(&mut rng, n, m, k);
            assert!(inst.eval(&a).unwrap(), "{inst:?}");
        }
    }

    #[test]
    fn specs_are_respected() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let spec = RandomSpec { n_min: 3, n_max: 5, m_max: 6, k: 1, max_disjuncts: 2, binary: true, closed: true };
        for _ in 0..100 {
            let inst = random_instance(&mut rng, &spec);
            assert!((3..=5).contains(&inst.var_count()));
            assert!(inst.arity() <= 2 && inst.is_closed() && inst.num_bound() <= 1);
            assert!(inst.constraints.iter().all(|c| (1..=2).contains(&c.disjuncts.len())));
        }
    }

    #[test]
    fn pinned_and_formulas() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let inst = pinned_binary(&mut rng, 3, 4, 3);
        assert_eq!(inst.var_names.last().map(String::as_str), Some("z"));
        assert!(inst.arity() <= 2);
        for _ in 0..50 {
            let f = random_formula(&mut rng, 3, 3, 2);
            assert!(f.depth() <= 3 && f.var_span() <= 3 && f.num_bound() <= 2);
        }
    }

    #[test]
    fn sources() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut hits = 0;
        for _ in 0..50 {
            let (s, t) = random_subset_sum(&mut rng, 8, 12);
            assert!((1..=8).contains(&s.len()) && s.iter().all(|&v| (1..=12).contains(&v)));
            hits += subset_sum_brute(&s, t) as usize;
        }
        assert!(hits > 0 && hits < 50);
        let g = random_grid_graph(&mut rng, 3, 0.5);
        assert!(g.edges().all(|(u, v)| u.0 != v.0));
        for _ in 0..20 {
            assert!(dcsp_to_d2k(&random_dcsp(&mut rng, 3, 4, false)).is_ok());
        }
    }
}
