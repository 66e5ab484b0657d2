//! Finite-domain binary CSPs with the diagonal ("chi") rule, domain
//! compression, and the translation into closed binary difference
//! constraints over a Sidon ruler.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::{Atom, Constraint, Instance};
use crate::interval::Interval;
use crate::sidon::sidon_set;

/// A CSP over domain `0..d`. Unary facts `(x, a)` forbid `x = a`. Binary
/// facts forbid listed value pairs for a variable pair `(x, y)` with
/// `x < y`; with `implicit_chi` set, every constrained pair also forbids
/// all equal values `(c, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DcspInstance {
    pub d: u64,
    pub var_count: usize,
    pub unary: BTreeSet<(usize, u64)>,
    pub binary: BTreeMap<(usize, usize), BTreeSet<(u64, u64)>>,
    pub implicit_chi: bool,
}

impl DcspInstance {
    pub fn new(d: u64, var_count: usize, implicit_chi: bool) -> DcspInstance {
        DcspInstance { d, var_count, unary: BTreeSet::new(), binary: BTreeMap::new(), implicit_chi }
    }

    pub fn forbid_value(&mut self, x: usize, a: u64) {
        self.unary.insert((x, a));
    }

    /// Forbids `x = a and y = b`; also registers the pair for the chi rule.
    pub fn forbid_pair(&mut self, x: usize, y: usize, a: u64, b: u64) {
        assert_ne!(x, y, "binary facts need two distinct variables");
        let (key, pair) = if x < y { ((x, y), (a, b)) } else { ((y, x), (b, a)) };
        self.binary.entry(key).or_default().insert(pair);
    }

    /// Constrains `(x, y)` without forbidding any listed pair; only the chi
    /// rule applies.
    pub fn touch_pair(&mut self, x: usize, y: usize) {
        assert_ne!(x, y, "binary facts need two distinct variables");
        self.binary.entry((x.min(y), x.max(y))).or_default();
    }

    pub fn satisfies(&self, f: &[u64]) -> bool {
        if f.len() != self.var_count || f.iter().any(|&v| v >= self.d) {
            return false;
        }
        if self.unary.iter().any(|&(x, a)| f[x] == a) {
            return false;
        }
        self.binary.iter().all(|(&(x, y), pairs)| {
            !pairs.contains(&(f[x], f[y])) && !(self.implicit_chi && f[x] == f[y])
        })
    }

    /// First model in lexicographic order, by exhaustive search.
    pub fn brute_force(&self) -> Option<Vec<u64>> {
        let n = self.var_count;
        let mut f = vec![0u64; n];
        if self.d == 0 {
            return if n == 0 { Some(f) } else { None };
        }
        loop {
            if self.satisfies(&f) {
                return Some(f);
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                if f[i] + 1 < self.d {
                    f[i] += 1;
                    break;
                }
                f[i] = 0;
            }
        }
    }
}

/// Groups consecutive variables into blocks of `r` (the last block padded
/// with free variables). Block values are tuples `t = sum_p v_p d^p` over
/// `0..d^r`. Constraints inside one block become unary exclusions; the chi
/// rule is written out as explicit pairs and the result has
/// `implicit_chi = false`. `r = 1` returns the instance unchanged.
pub fn dcsp_compress(inst: &DcspInstance, r: usize) -> Result<DcspInstance> {
    if r == 0 {
        return Err(Error::InvalidArgument("block size must be positive"));
    }
    if r == 1 {
        return Ok(inst.clone());
    }
    let d = inst.d;
    let big = d.checked_pow(r as u32).ok_or(Error::InvalidArgument("compressed domain overflows"))?;
    let blocks = inst.var_count.div_ceil(r);
    let mut out = DcspInstance::new(big, blocks, false);
    let digit = |t: u64, p: usize| t / d.pow(p as u32) % d;
    for &(x, a) in &inst.unary {
        for t in (0..big).filter(|&t| digit(t, x % r) == a) {
            out.forbid_value(x / r, t);
        }
    }
    for (&(x, y), pairs) in &inst.binary {
        let bad = |a: u64, b: u64| pairs.contains(&(a, b)) || (inst.implicit_chi && a == b);
        let (bx, px, by, py) = (x / r, x % r, y / r, y % r);
        if bx == by {
            for t in (0..big).filter(|&t| bad(digit(t, px), digit(t, py))) {
                out.forbid_value(bx, t);
            }
            continue;
        }
        out.touch_pair(bx, by);
        for t in 0..big {
            for u in 0..big {
                if bad(digit(t, px), digit(u, py)) {
                    out.forbid_pair(bx, by, t, u);
                }
            }
        }
    }
    Ok(out)
}

/// Variables `v0..v{n-1}` and `z`. Value `c` is encoded as `v - z = G[c]`
/// for a Sidon set `G` of size `d`, so a forbidden pair `(a, b)` is the
/// single excluded difference `v_x - v_y = G[a] - G[b]`. Diagonal pairs
/// share the difference 0 and are only expressible all at once: with
/// `implicit_chi` unset a relation must forbid all of them or none.
pub fn dcsp_to_d2k(inst: &DcspInstance) -> Result<Instance> {
    let n = inst.var_count;
    let g = sidon_set(inst.d as usize);
    let names = (0..n).map(|i| format!("v{i}")).chain(core::iter::once("z".into())).collect();
    let mut out = Instance::new(names);
    let z = n;
    for x in 0..n {
        let dom: Vec<Atom> = (0..inst.d)
            .filter(|&c| !inst.unary.contains(&(x, c)))
            .map(|c| Atom::new(x, z, Interval::point(g[c as usize] as i64)))
            .collect();
        out.push(Constraint::new(dom));
    }
    let avoid = |out: &mut Instance, x: usize, y: usize, delta: i64| {
        out.push(Constraint::new(vec![
            Atom::new(x, y, Interval::at_most(delta - 1)),
            Atom::new(x, y, Interval::at_least(delta + 1)),
        ]));
    };
    for (&(x, y), pairs) in &inst.binary {
        let diagonal = pairs.iter().filter(|(a, b)| a == b).count() as u64;
        if !inst.implicit_chi && diagonal != 0 && diagonal != inst.d {
            return Err(Error::FragmentMismatch("diagonal pairs need the chi rule or all values"));
        }
        if inst.implicit_chi || diagonal == inst.d && diagonal > 0 {
            avoid(&mut out, x, y, 0);
        }
        for &(a, b) in pairs.iter().filter(|(a, b)| a != b) {
            avoid(&mut out, x, y, g[a as usize] as i64 - g[b as usize] as i64);
        }
    }
    Ok(out)
}
