//! Proptest strategies shared by the unit tests.

use alloc::vec::Vec;

use proptest::prelude::*;

use crate::instance::{rat, Assignment, Atom, Constraint, Instance};
use crate::interval::{Bound, Interval};

/// Any interval shape with finite endpoints in `[-k, k]`.
pub fn interval(k: i64) -> impl Strategy<Value = Interval> {
    (-k..=k, -k..=k, 0u8..8).prop_map(|(a, b, kind)| {
        let (lo, hi) = (a.min(b), a.max(b));
        match kind {
            0 => Interval::point(a),
            1 => Interval::closed(lo, hi),
            2 if lo < hi => Interval::open(lo, hi),
            3 if lo < hi => Interval::new(Bound::Finite(lo), true, Bound::Finite(hi), false).unwrap(),
            4 => Interval::above(a),
            5 => Interval::at_most(a),
            6 => Interval::below(a),
            _ => Interval::at_least(a),
        }
    })
}

/// Closed intervals only (points, closed ranges, closed tails).
pub fn closed_interval(k: i64) -> impl Strategy<Value = Interval> {
    (-k..=k, -k..=k, 0u8..4).prop_map(|(a, b, kind)| match kind {
        0 => Interval::point(a),
        1 => Interval::closed(a.min(b), a.max(b)),
        2 => Interval::at_most(a),
        _ => Interval::at_least(a),
    })
}

/// An atom on two distinct variables below `n` (`n >= 2`).
pub fn atom_with(n: usize, iv: impl Strategy<Value = Interval>) -> impl Strategy<Value = Atom> {
    (0..n, 1..n, iv).prop_map(move |(x, d, iv)| Atom::new(x, (x + d) % n, iv))
}

/// Instances with `2..=n` variables, up to `m` constraints of up to three
/// disjuncts. With `binary` set each constraint stays on one pair.
pub fn instance(n: usize, m: usize, k: i64, binary: bool) -> impl Strategy<Value = Instance> {
    (2..=n).prop_flat_map(move |n| {
        let constraint = (atom_with(n, interval(k)), prop::collection::vec((any::<bool>(), interval(k)), 0..3)).prop_map(
            move |(first, rest)| {
                let mut atoms = alloc::vec![first];
                for (flip, iv) in rest {
                    let (x, y) = if flip { (first.y, first.x) } else { (first.x, first.y) };
                    atoms.push(Atom::new(x, y, iv));
                }
                Constraint::new(atoms)
            },
        );
        let free = prop::collection::vec(atom_with(n, interval(k)), 1..4).prop_map(Constraint::new);
        let c = if binary { constraint.boxed() } else { prop_oneof![constraint, free].boxed() };
        prop::collection::vec(c, 0..=m).prop_map(move |cs| {
            let mut inst = Instance::with_vars(n);
            cs.into_iter().for_each(|c| inst.push(c));
            inst
        })
    })
}

/// Rational values `num / den` with `den in 1..=4`.
pub fn assignment(n: usize, span: i64) -> impl Strategy<Value = Assignment> {
    (prop::collection::vec(-4 * span..=4 * span, n), 1i64..=4)
        .prop_map(|(nums, den)| Assignment::total(nums.into_iter().map(|v| rat(v, den)).collect()))
}

/// An instance together with a rational model: every constraint has one
/// disjunct built around the planted values.
pub fn planted(n: usize, m: usize, k: i64) -> impl Strategy<Value = (Instance, Assignment)> {
    (2..=n).prop_flat_map(move |n| {
        let values = prop::collection::vec(0i64..=6 * k.max(1), n);
        let den = 1i64..=3;
        let cons = prop::collection::vec((0..n, 1..n, 0u8..3, prop::collection::vec(atom_with(n, interval(k)), 0..2)), 0..=m);
        (values, den, cons).prop_map(move |(nums, den, cons)| {
            let vals: Vec<_> = nums.iter().map(|&v| rat(v, den)).collect();
            let mut inst = Instance::with_vars(n);
            for (x, d, shape, extra) in cons {
                let y = (x + d) % n;
                let diff = &vals[x] - &vals[y];
                let (fl, ce) = (diff.floor().to_integer(), diff.ceil().to_integer());
                let (fl, ce) = (i64::try_from(fl).unwrap(), i64::try_from(ce).unwrap());
                let iv = if fl.abs() > k || ce.abs() > k {
                    if fl > 0 { Interval::above(k) } else { Interval::below(-k) }
                } else if fl == ce {
                    Interval::point(fl)
                } else if shape == 0 {
                    Interval::open(fl, ce)
                } else {
                    Interval::closed(fl, ce)
                };
                let mut atoms = extra;
                atoms.insert(shape as usize % (atoms.len() + 1), Atom::new(x, y, iv));
                inst.push(Constraint::new(atoms));
            }
            (inst, Assignment::total(vals))
        })
    })
}
