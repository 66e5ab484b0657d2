//! Algorithm selection shared by `solve` and `bench`.

use std::fmt;
use std::str::FromStr;

use difflogic::bounded::{solve_bounded, SpanProblem};
use difflogic::cd::{certificate_oracle, solve_enumerate};
use difflogic::split::{solve_dnc, SplitConfig};
use difflogic::structure::{incidence_decomposition, to_nice, NiceDecomposition, TreeDecomposition};
use difflogic::twdp::{check_decomposition, solve_tw_with, TwOptions};
use difflogic::{Assignment, Error, Instance};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Enumerate,
    Dnc,
    Treewidth,
    Bounded(u64),
    Oracle,
}

impl FromStr for Algorithm {
    type Err = String;

    /// `enumerate`, `dnc`, `treewidth`, `oracle`, `bounded:W` or `bounded(W)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let width = |w: &str| match w.parse::<u64>() {
            Ok(w) if w >= 1 => Ok(w),
            _ => Err(format!("bounded needs a width w >= 1, got {w:?}")),
        };
        match s {
            "enumerate" => Ok(Algorithm::Enumerate),
            "dnc" => Ok(Algorithm::Dnc),
            "treewidth" => Ok(Algorithm::Treewidth),
            "oracle" => Ok(Algorithm::Oracle),
            _ => {
                if let Some(w) = s.strip_prefix("bounded:") {
                    width(w).map(Algorithm::Bounded)
                } else if let Some(w) = s.strip_prefix("bounded(").and_then(|r| r.strip_suffix(')')) {
                    width(w).map(Algorithm::Bounded)
                } else {
                    Err(format!("unknown algorithm {s:?} (enumerate, dnc, treewidth, bounded:W, oracle)"))
                }
            }
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Enumerate => f.write_str("enumerate"),
            Algorithm::Dnc => f.write_str("dnc"),
            Algorithm::Treewidth => f.write_str("treewidth"),
            Algorithm::Bounded(w) => write!(f, "bounded:{w}"),
            Algorithm::Oracle => f.write_str("oracle"),
        }
    }
}

/// Outcome of one run; `model` is present only for algorithms that build one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub sat: bool,
    pub model: Option<Assignment>,
}

/// Runs `algo`. `td` optionally replaces the computed decomposition of the
/// incidence graph (treewidth only).
pub fn run(inst: &Instance, algo: Algorithm, cap_oracle: u64, td: Option<&TreeDecomposition>) -> Result<Outcome, Error> {
    match algo {
        Algorithm::Enumerate => {
            let model = solve_enumerate(inst);
            Ok(Outcome { sat: model.is_some(), model })
        }
        Algorithm::Dnc => {
            if inst.arity() > 2 {
                return Err(Error::FragmentMismatch("dnc needs a binary instance"));
            }
            let cfg = SplitConfig { k: inst.num_bound(), ..SplitConfig::default() };
            Ok(Outcome { sat: solve_dnc(inst, cfg)?, model: None })
        }
        Algorithm::Treewidth => {
            let nd: NiceDecomposition = match td {
                Some(td) => to_nice(td)?,
                None => to_nice(&incidence_decomposition(inst))?,
            };
            check_decomposition(inst, &nd)?;
            let (sat, model) = solve_tw_with(inst, &nd, TwOptions { recover_model: true })?;
            Ok(Outcome { sat, model })
        }
        Algorithm::Bounded(w) => {
            let model = solve_bounded(&SpanProblem { w, inst: inst.clone() })?;
            Ok(Outcome { sat: model.is_some(), model })
        }
        Algorithm::Oracle => Ok(Outcome { sat: certificate_oracle(inst, cap_oracle)?, model: None }),
    }
}
