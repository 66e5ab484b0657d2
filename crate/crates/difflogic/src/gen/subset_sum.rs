//! Subset Sum as a cycle of difference constraints.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::instance::{Atom, Constraint, Instance};
use crate::interval::Interval;

/// Variables `x0..xn`. Step `i` is `x_i - x_{i-1} in {0} or {s_i}` and the
/// closing constraint is `x_n - x_0 = target`, so the primal graph is a cycle.
/// With `S` empty the single variable `x0` gets the empty constraint unless
/// `target == 0`.
pub fn gen_subset_sum(s: &[u64], target: u64) -> Instance {
    let n = s.len();
    let mut inst = Instance::new((0..=n).map(|i| format!("x{i}")).collect());
    if n == 0 {
        if target != 0 {
            inst.push(Constraint::empty());
        }
        return inst;
    }
    for (i, &si) in s.iter().enumerate() {
        inst.push(Constraint::new(vec![
            Atom::new(i + 1, i, Interval::point(0)),
            Atom::new(i + 1, i, Interval::point(si as i64)),
        ]));
    }
    inst.push_atom(n, 0, Interval::point(target as i64));
    inst
}

/// True if some sub-multiset of `s` sums to `target`.
pub fn subset_sum_brute(s: &[u64], target: u64) -> bool {
    let mut reach: Vec<u64> = vec![0];
    for &v in s {
        let more: Vec<u64> = reach.iter().map(|r| r + v).collect();
        reach.extend(more);
        reach.sort_unstable();
        reach.dedup();
    }
    reach.contains(&target)
}
