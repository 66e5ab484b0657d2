//! Moving instances between the rationals and the integers without adding
//! variables.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::{Atom, Constraint, Instance};
use crate::interval::{Bound, Interval};

/// An instance whose variables range over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntInstance(pub Instance);

impl IntInstance {
    pub fn satisfies(&self, values: &[i64]) -> bool {
        self.0.constraints.iter().all(|c| {
            c.disjuncts.iter().any(|a| a.interval.contains_int(values[a.x] - values[a.y]))
        })
    }
}

/// Over the integers `x - y < c` is `x - y <= c - 1`; every open finite
/// endpoint moves inwards by one. Disjuncts without integer points vanish.
/// The bound grows by at most one.
pub fn rationalize(inst: &IntInstance) -> Instance {
    let mut out = Instance::new(inst.0.var_names.clone());
    for c in &inst.0.constraints {
        let atoms = c.disjuncts.iter().filter_map(|a| close_integer(&a.interval).map(|iv| Atom::new(a.x, a.y, iv)));
        out.push(Constraint::new(atoms.collect()));
    }
    out
}

fn close_integer(iv: &Interval) -> Option<Interval> {
    let lo = match iv.lo() {
        Bound::Finite(a) if iv.lo_open() => Bound::Finite(a + 1),
        b => b,
    };
    let hi = match iv.hi() {
        Bound::Finite(b) if iv.hi_open() => Bound::Finite(b - 1),
        b => b,
    };
    Interval::new(lo, lo == Bound::NegInf, hi, hi == Bound::PosInf).ok()
}

/// A closed instance has a rational model iff it has an integer one, so it
/// can be read over the integers unchanged.
pub fn closed_reinterpret(inst: &Instance) -> Result<IntInstance> {
    if !inst.is_closed() {
        return Err(Error::FragmentMismatch("closed intervals required"));
    }
    Ok(IntInstance(inst.clone()))
}

/// With bound 0 any rational model scales to an integer one.
pub fn strict0_to_integer(inst: &Instance) -> Result<IntInstance> {
    if inst.num_bound() != 0 {
        return Err(Error::FragmentMismatch("bound 0 required"));
    }
    Ok(IntInstance(inst.clone()))
}

/// The converse of [`strict0_to_integer`].
pub fn strict0_from_integer(inst: &IntInstance) -> Result<Instance> {
    if inst.0.num_bound() != 0 {
        return Err(Error::FragmentMismatch("bound 0 required"));
    }
    Ok(inst.0.clone())
}

/// First integer model with all values in `[-radius, radius]`, by exhaustive
/// search.
pub fn integer_brute_force(inst: &IntInstance, radius: i64) -> Option<Vec<i64>> {
    let n = inst.0.var_count();
    if inst.0.constraints.iter().any(Constraint::is_empty) {
        return None;
    }
    let mut f = vec![-radius; n];
    loop {
        if inst.satisfies(&f) {
            return Some(f);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if f[i] < radius {
                f[i] += 1;
                break;
            }
            f[i] = -radius;
        }
    }
}
