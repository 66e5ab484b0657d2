//! The `difflogic` command line.
//!
//! Exit codes: 10 satisfiable, 20 unsatisfiable (decision commands), 0 other
//! success, 1 input error, 2 usage or fragment error.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use difflogic::cd::{list_certificates, DEFAULT_ORACLE_CAP};
use difflogic::formula::{solve_dlsat, to_cnf, DEFAULT_CNF_CAP};
use difflogic::gen::{self, AllenRelation, GridGraph, PartiteGraph};
use difflogic::sidon::sidon_set;
use difflogic::{Error, Instance};

use crate::algo::{self, Algorithm};
use crate::bench::{self, BenchConfig};
use crate::random::{self, RandomSpec};
use crate::text::{self, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SAT: i32 = 10;
pub const EXIT_UNSAT: i32 = 20;

#[derive(Debug, Parser)]
#[command(name = "difflogic", version, about = "Exact solvers and generators for difference-logic constraints")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Maximum number of disjunct selections the certificate oracle may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_CAP)]
    pub cap_oracle: u64,
    /// Maximum number of clauses produced by CNF conversion.
    #[arg(long, global = true, default_value_t = DEFAULT_CNF_CAP)]
    pub cap_cnf: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Status,
    Model,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DlsatMethod {
    /// Enumerate the compact grid directly.
    Grid,
    /// Convert to CNF and run the certificate oracle.
    Cnf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide an instance file ("-" or no path reads standard input).
    Solve {
        /// enumerate, dnc, treewidth, bounded:W or oracle.
        #[arg(long, default_value = "enumerate")]
        algo: Algorithm,
        #[arg(long, value_enum, default_value = "model")]
        output: OutputMode,
        /// Tree decomposition of the incidence graph (treewidth only).
        #[arg(long)]
        td: Option<PathBuf>,
        input: Option<PathBuf>,
    },
    /// List the certificates of an instance.
    Cert { input: Option<PathBuf> },
    /// Decide a formula file.
    Dlsat {
        #[arg(long, value_enum, default_value = "grid")]
        method: DlsatMethod,
        input: Option<PathBuf>,
    },
    /// Convert a formula file to an instance.
    Cnf { input: Option<PathBuf> },
    /// Emit a generated instance with a `# label:` line.
    Gen {
        #[command(subcommand)]
        reduction: Reduction,
    },
    /// Print a Sidon set of order n.
    Sidon { n: usize },
    /// Check a model against an instance: 10 if it satisfies, 20 if not.
    Check { instance: PathBuf, model: PathBuf },
    /// Run algorithms over a corpus and print CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated algorithms.
    #[arg(long, value_delimiter = ',', default_value = "enumerate,dnc,treewidth,oracle")]
    pub algos: Vec<Algorithm>,
    /// Random instances to add to the corpus.
    #[arg(long, default_value_t = 0)]
    pub random: usize,
    /// Write 0 instead of wall time, for reproducible output.
    #[arg(long)]
    pub no_timing: bool,
    /// Instance files or directories (searched for *.dl).
    pub inputs: Vec<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Reduction {
    /// Subset Sum: comma-separated values and a target.
    SubsetSum { values: String, target: u64 },
    /// Grid independent set, bound 0 and arity 4. Edges: `r.c-r.c,...`.
    IsD40 { n: usize, #[arg(default_value = "")] edges: String },
    /// Grid independent set, closed bound-1 ternary constraints.
    IsD31 { n: usize, #[arg(default_value = "")] edges: String },
    /// Grid independent set, strict bound-0 ternary constraints.
    IsD31Strict { n: usize, #[arg(default_value = "")] edges: String },
    /// Grid independent set, binary constraints.
    IsD2 { n: usize, #[arg(default_value = "")] edges: String },
    /// Random binary CSP with domain d on n variables, translated to binary
    /// closed difference constraints.
    Dcsp {
        d: u64,
        n: usize,
        /// Every constrained pair also forbids equal values.
        #[arg(long)]
        chi: bool,
        /// Group variables into blocks of this size first.
        #[arg(long, default_value_t = 1)]
        compress: usize,
    },
    /// Multicoloured clique via MPSS. Parts: part of each vertex; edges `u-v,...`.
    Mpss { k: usize, parts: String, #[arg(default_value = "")] edges: String },
    /// Unit-interval Allen relations: `i-j:p,m;...` over n intervals.
    Allen { n: usize, relations: String },
    /// Random instance.
    Random {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        k: i64,
        #[arg(long)]
        binary: bool,
        #[arg(long)]
        closed: bool,
    },
    /// Random instance with a planted model.
    Planted {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        k: i64,
    },
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {err}")]
    Parse { path: String, err: ParseError },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Input(_) => EXIT_INPUT,
            CliError::Usage(_) => EXIT_USAGE,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnassignedVariable(_) => CliError::Input(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Command output: text for standard output and the exit code.
struct Done {
    out: String,
    code: i32,
}

fn done(out: String, code: i32) -> Result<Done, CliError> {
    Ok(Done { out, code })
}

fn status_code(sat: bool) -> i32 {
    if sat {
        EXIT_SAT
    } else {
        EXIT_UNSAT
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, stdin) {
        Ok(d) => {
            let _ = stdout.write_all(d.out.as_bytes());
            d.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn read_input(path: Option<&Path>, stdin: &mut dyn Read) -> Result<(String, String), CliError> {
    match path {
        None => read_stdin(stdin),
        Some(p) if p == Path::new("-") => read_stdin(stdin),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            Ok((p.display().to_string(), text))
        }
    }
}

fn read_stdin(stdin: &mut dyn Read) -> Result<(String, String), CliError> {
    let mut text = String::new();
    stdin.read_to_string(&mut text).map_err(|e| CliError::Input(format!("<stdin>: {e}")))?;
    Ok(("<stdin>".into(), text))
}

fn parse_with<T>(path: String, text: &str, f: impl Fn(&str) -> Result<T, ParseError>) -> Result<T, CliError> {
    f(text).map_err(|err| CliError::Parse { path, err })
}

fn load_instance(path: Option<&Path>, stdin: &mut dyn Read) -> Result<Instance, CliError> {
    let (name, text) = read_input(path, stdin)?;
    parse_with(name, &text, text::parse_instance)
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Done, CliError> {
    match &cli.command {
        Command::Solve { algo, output, td, input } => {
            let inst = load_instance(input.as_deref(), stdin)?;
            let td = match td {
                Some(p) => {
                    if *algo != Algorithm::Treewidth {
                        return Err(CliError::Usage("--td only applies to --algo treewidth".into()));
                    }
                    let (name, text) = read_input(Some(p), stdin)?;
                    Some(parse_with(name, &text, text::parse_decomposition)?)
                }
                None => None,
            };
            let outcome = algo::run(&inst, *algo, cli.cap_oracle, td.as_ref())?;
            let out = match (&outcome.model, output) {
                (Some(m), OutputMode::Model) => text::print_model(&inst, Some(m)),
                _ => if outcome.sat { "SAT\n" } else { "UNSAT\n" }.to_string(),
            };
            done(out, status_code(outcome.sat))
        }
        Command::Cert { input } => {
            let inst = load_instance(input.as_deref(), stdin)?;
            let certs = list_certificates(&inst);
            let mut out = String::from(if certs.is_empty() { "UNSAT\n" } else { "SAT\n" });
            for c in &certs {
                out.push_str("cert");
                for (i, a) in c.atoms.iter().enumerate() {
                    out.push_str(if i == 0 { " " } else { " & " });
                    let _ = write!(out, "{} - {} in {}", inst.var_names[a.x], inst.var_names[a.y], a.interval);
                }
                out.push('\n');
            }
            done(out, status_code(!certs.is_empty()))
        }
        Command::Dlsat { method, input } => {
            let (name, text) = read_input(input.as_deref(), stdin)?;
            let file = parse_with(name, &text, text::parse_formula)?;
            match method {
                DlsatMethod::Grid => {
                    let model = solve_dlsat(&file.formula, file.var_names.len())?;
                    let inst = Instance::new(file.var_names.clone());
                    done(text::print_model(&inst, model.as_ref()), status_code(model.is_some()))
                }
                DlsatMethod::Cnf => {
                    let inst = to_cnf(&file.formula, file.var_names.clone(), cli.cap_cnf)?;
                    let sat = difflogic::cd::certificate_oracle(&inst, cli.cap_oracle)?;
                    done(if sat { "SAT\n" } else { "UNSAT\n" }.into(), status_code(sat))
                }
            }
        }
        Command::Cnf { input } => {
            let (name, text) = read_input(input.as_deref(), stdin)?;
            let file = parse_with(name, &text, text::parse_formula)?;
            let inst = to_cnf(&file.formula, file.var_names.clone(), cli.cap_cnf)?;
            done(printable(&inst)?, EXIT_OK)
        }
        Command::Gen { reduction } => generate(reduction, cli.seed).map(|(label, source, inst)| Done {
            out: format!("# label: {label} source={source}\n{inst}"),
            code: EXIT_OK,
        }),
        Command::Sidon { n } => {
            if *n == 0 {
                return Err(CliError::Usage("sidon needs n >= 1".into()));
            }
            let s = sidon_set(*n);
            let list: Vec<String> = s.iter().map(u64::to_string).collect();
            done(format!("set {}\norder {}\nlength {}\n", list.join(" "), s.len(), s.last().copied().unwrap_or(0)), EXIT_OK)
        }
        Command::Check { instance, model } => {
            let inst = load_instance(Some(instance), stdin)?;
            let (name, text) = read_input(Some(model), stdin)?;
            let a = parse_with(name, &text, |t| text::parse_model(t, &inst))?;
            if let Some(v) = (0..inst.var_count()).find(|&v| a.get(v).is_none()) {
                return Err(CliError::Input(format!("model does not assign variable {}", inst.var_names[v])));
            }
            match inst.first_violated(&a)? {
                None => done("ok\n".into(), EXIT_SAT),
                Some(i) => done(format!("violated: {i}\n"), EXIT_UNSAT),
            }
        }
        Command::Bench(args) => {
            let mut corpus = Vec::new();
            for p in &args.inputs {
                for file in bench::collect_files(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))? {
                    let inst = load_instance(Some(&file), stdin)?;
                    corpus.push((file.display().to_string(), inst));
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let spec = RandomSpec { n_min: 2, n_max: 6, m_max: 8, k: 1, max_disjuncts: 3, binary: true, closed: false };
            for i in 0..args.random {
                corpus.push((format!("random-{i}"), random::random_instance(&mut rng, &spec)));
            }
            let cfg = BenchConfig { algorithms: args.algos.clone(), cap_oracle: cli.cap_oracle, timing: !args.no_timing };
            let rows = bench::run(&corpus, &cfg);
            let csv = bench::to_csv(&rows).map_err(|e| CliError::Input(e.to_string()))?;
            done(csv, EXIT_OK)
        }
    }
}

fn printable(inst: &Instance) -> Result<String, CliError> {
    text::print_instance(inst).map_err(|e| CliError::Usage(e.to_string()))
}

fn label(sat: Option<bool>) -> &'static str {
    match sat {
        Some(true) => "SAT",
        Some(false) => "UNSAT",
        None => "UNKNOWN",
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(|t| t.parse().map_err(|_| usage(format!("bad {what} {t:?}")))).collect()
}

/// `r.c-r.c,...` with 1-based cells.
fn parse_grid(n: usize, edges: &str) -> Result<GridGraph, CliError> {
    if n == 0 {
        return Err(usage("grid size must be at least 1"));
    }
    let mut g = GridGraph::new(n);
    let cell = |s: &str| -> Result<(usize, usize), CliError> {
        let (r, c) = s.split_once('.').ok_or_else(|| usage(format!("bad cell {s:?}, expected r.c")))?;
        let parse = |t: &str| t.trim().parse::<usize>().ok().filter(|&v| (1..=n).contains(&v));
        match (parse(r), parse(c)) {
            (Some(r), Some(c)) => Ok((r, c)),
            _ => Err(usage(format!("cell {s:?} outside the {n}x{n} grid"))),
        }
    };
    for e in edges.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (u, v) = e.split_once('-').ok_or_else(|| usage(format!("bad edge {e:?}, expected r.c-r.c")))?;
        g.add_edge(cell(u)?, cell(v)?);
    }
    Ok(g)
}

fn generate(r: &Reduction, seed: u64) -> Result<(&'static str, &'static str, String), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = |n: usize, edges: &str, f: fn(&GridGraph) -> Instance| -> Result<_, CliError> {
        let g = parse_grid(n, edges)?;
        Ok((label(Some(g.brute_force().is_some())), "grid-independent-set", printable(&f(&g))?))
    };
    match r {
        Reduction::SubsetSum { values, target } => {
            let s: Vec<u64> = parse_list(values, "value")?;
            let inst = gen::gen_subset_sum(&s, *target);
            Ok((label(Some(gen::subset_sum_brute(&s, *target))), "subset-sum", printable(&inst)?))
        }
        Reduction::IsD40 { n, edges } => grid(*n, edges, gen::gen_is_d40),
        Reduction::IsD31 { n, edges } => grid(*n, edges, gen::gen_is_d31),
        Reduction::IsD31Strict { n, edges } => grid(*n, edges, gen::gen_is_d31_strict),
        Reduction::IsD2 { n, edges } => grid(*n, edges, gen::gen_is_d2),
        Reduction::Dcsp { d, n, chi, compress } => {
            if *d == 0 || *n == 0 {
                return Err(usage("dcsp needs d >= 1 and n >= 1"));
            }
            let src = random::random_dcsp(&mut rng, *d, *n, *chi);
            let sat = src.brute_force().is_some();
            let compressed = gen::dcsp_compress(&src, *compress)?;
            Ok((label(Some(sat)), "dcsp", printable(&gen::dcsp_to_d2k(&compressed)?)?))
        }
        Reduction::Mpss { k, parts, edges } => {
            let part: Vec<usize> = parse_list(parts, "part")?;
            if let Some(&p) = part.iter().find(|&&p| p >= *k) {
                return Err(usage(format!("part {p} out of range for k = {k}")));
            }
            let mut g = PartiteGraph::new(*k, part.clone());
            for e in edges.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let (u, v) = e.split_once('-').ok_or_else(|| usage(format!("bad edge {e:?}, expected u-v")))?;
                let (u, v): (usize, usize) = match (u.trim().parse(), v.trim().parse()) {
                    (Ok(u), Ok(v)) if u < part.len() && v < part.len() => (u, v),
                    _ => return Err(usage(format!("bad edge {e:?}"))),
                };
                g.add_edge(u, v);
            }
            let m = gen::mcc_to_mpss(&g)?;
            Ok((label(Some(g.multicoloured_clique().is_some())), "multicoloured-clique", printable(&gen::mpss_to_d21(&m)?)?))
        }
        Reduction::Allen { n, relations } => {
            let mut rels = Vec::new();
            for item in relations.split(';').map(str::trim).filter(|t| !t.is_empty()) {
                let (pair, syms) = item.split_once(':').ok_or_else(|| usage(format!("bad relation {item:?}, expected i-j:r,r")))?;
                let (i, j) = pair.split_once('-').ok_or_else(|| usage(format!("bad pair {pair:?}")))?;
                let (i, j): (usize, usize) = match (i.trim().parse(), j.trim().parse()) {
                    (Ok(i), Ok(j)) if i < *n && j < *n && i != j => (i, j),
                    _ => return Err(usage(format!("bad pair {pair:?}"))),
                };
                let set = syms
                    .split(',')
                    .map(|s| AllenRelation::from_symbol(s.trim()).ok_or_else(|| usage(format!("unknown relation {s:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                rels.push((i, j, set));
            }
            Ok((label(None), "unit-allen", printable(&gen::from_unit_allen(*n, &rels)?)?))
        }
        Reduction::Random { n, m, k, binary, closed } => {
            if *n < 2 || *k < 0 {
                return Err(usage("random needs n >= 2 and k >= 0"));
            }
            let spec = RandomSpec { n_min: *n, n_max: *n, m_max: *m, k: *k, max_disjuncts: 3, binary: *binary, closed: *closed };
            Ok((label(None), "random", printable(&random::random_instance(&mut rng, &spec))?))
        }
        Reduction::Planted { n, m, k } => {
            if *n < 2 || *k < 0 {
                return Err(usage("planted needs n >= 2 and k >= 0"));
            }
            let (inst, _) = random::planted_instance(&mut rng, *n, *m, *k);
            Ok((label(Some(true)), "planted", printable(&inst)?))
        }
    }
}
