//! Comparison harness: every algorithm on every instance, checked against
//! the certificate oracle.

use std::path::{Path, PathBuf};
use std::time::Instant;

use difflogic::cd::certificate_oracle;
use difflogic::Instance;

use crate::algo::{self, Algorithm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub algorithms: Vec<Algorithm>,
    pub cap_oracle: u64,
    /// Measure wall time; otherwise `millis` is 0.
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub instance: String,
    pub algorithm: String,
    /// `SAT`, `UNSAT`, or `ERROR: <message>` when the algorithm refused.
    pub status: String,
    /// `true`/`false`, or `na` when the oracle or the algorithm gave no answer.
    pub agrees_with_oracle: String,
    pub millis: u128,
}

pub fn run(corpus: &[(String, Instance)], cfg: &BenchConfig) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for (name, inst) in corpus {
        let reference = certificate_oracle(inst, cfg.cap_oracle).ok();
        for &a in &cfg.algorithms {
            let start = Instant::now();
            let result = algo::run(inst, a, cfg.cap_oracle, None);
            let millis = if cfg.timing { start.elapsed().as_millis() } else { 0 };
            let (status, agrees) = match result {
                Ok(out) => {
                    let status = if out.sat { "SAT" } else { "UNSAT" };
                    let agrees = reference.map_or("na".to_string(), |r| (r == out.sat).to_string());
                    (status.to_string(), agrees)
                }
                Err(e) => (format!("ERROR: {e}"), "na".to_string()),
            };
            rows.push(BenchRow { instance: name.clone(), algorithm: a.to_string(), status, agrees_with_oracle: agrees, millis });
        }
    }
    rows
}

pub fn to_csv(rows: &[BenchRow]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["instance", "algorithm", "status", "agrees_with_oracle", "millis"])?;
    for r in rows {
        w.write_record([&r.instance, &r.algorithm, &r.status, &r.agrees_with_oracle, &r.millis.to_string()])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// A file as itself; a directory as its `*.dl` files, sorted.
pub fn collect_files(p: &Path) -> std::io::Result<Vec<PathBuf>> {
    if !p.is_dir() {
        return Ok(vec![p.to_path_buf()]);
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(p)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|f| f.extension().is_some_and(|x| x == "dl"))
        .collect();
    files.sort();
    Ok(files)
}

#[cfg(test)]
mod tests {
    use super::*;
    use difflogic::Interval;

    #[test]
    fn rows_and_csv() {
        let mut sat = Instance::with_vars(2);
        sat.push_atom(0, 1, Interval::open(0, 1));
        let mut ternary = Instance::with_vars(3);
        ternary.push(difflogic::Constraint::new(vec![
            difflogic::Atom::new(0, 1, Interval::point(0)),
            difflogic::Atom::new(1, 2, Interval::point(0)),
        ]));
        let corpus = vec![("a,b".to_string(), sat), ("t".to_string(), ternary)];
        let cfg = BenchConfig { algorithms: vec![Algorithm::Enumerate, Algorithm::Dnc], cap_oracle: 1000, timing: false };
        let rows = run(&corpus, &cfg);
        assert_eq!(rows.len(), 4);
        assert!(rows[..2].iter().all(|r| r.status == "SAT" && r.agrees_with_oracle == "true"));
        assert!(rows[3].status.starts_with("ERROR") && rows[3].agrees_with_oracle == "na");
        let csv = to_csv(&rows).unwrap();
        assert!(csv.starts_with("instance,algorithm,status,agrees_with_oracle,millis\n\"a,b\",enumerate,SAT,true,0\n"));
    }
}
