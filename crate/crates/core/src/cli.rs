//! The `ramsey-lab` command line.
//!
//! Every subcommand prints one JSON report (or writes it to `--out`). Exit
//! codes: 0 success, SAT or claim; 10 UNSAT; 20 UNKNOWN or budget
//! exhausted; 2 usage or input error; 3 hypothesis violation or rejected
//! certificate; 4 proof gap; 1 internal error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::coloring::{lower_bound_witness, Color, PairKind, TwoColoring};
use crate::constructive::{self as cons, DEFAULT_HYPOTHESIS_BUDGET};
use crate::embed::{count_copies, ColorClaim, Embedding};
use crate::error::{invalid, Error, Result};
use crate::prover::{
    self, compute_ramsey, decide_arrowing, derive_table, export_dimacs, known_cycle_values, verify_certificate,
    ArrowOptions, BaseValue, Budget, BranchOrder, Certificate, Payload, Provenance, SolverAnswer, Status,
};
use crate::template::{Kind, LooseTemplate, TargetSpec, Vertex};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_PROOF_GAP: i32 = 4;
pub const EXIT_UNSAT: i32 = 10;
pub const EXIT_UNKNOWN: i32 = 20;

pub const DEFAULT_SEED: u64 = 0;

#[derive(Parser, Debug)]
#[command(name = "ramsey-lab", version, about = "Ramsey numbers of uniform loose paths and cycles")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory for coloring and certificate files.
    #[arg(long, global = true, default_value = "ramsey-lab-certs")]
    cert_dir: PathBuf,
    /// Seed recorded in the report; no subcommand draws random numbers yet.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Leave wall-clock timings out so reports are byte-for-byte reproducible.
    #[arg(long, global = true)]
    no_timings: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct SearchFlags {
    #[arg(long)]
    max_nodes: Option<u64>,
    #[arg(long)]
    max_secs: Option<f64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Decision levels split across threads.
    #[arg(long, default_value_t = 8)]
    split_depth: usize,
    /// Lex-leader pruning under adjacent vertex transpositions.
    #[arg(long)]
    symmetry: bool,
}

impl SearchFlags {
    fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.max_nodes,
            max_secs: self.max_secs,
        }
    }

    fn options(&self) -> ArrowOptions {
        ArrowOptions {
            symmetry: self.symmetry,
            threads: self.threads,
            split_depth: self.split_depth,
            order: BranchOrder::LowestRank,
            first: Color::Red,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Lemma {
    /// Good blue configuration next to a maximal red path (k = 3).
    Configuration,
    /// Blue path absorbing W along a maximal red path (k = 3).
    Absorb,
    /// Blue C_m through the cross vertices of a lonely red cycle (k = 3).
    Case2,
    /// Blue C_m from a red C_(n-1) without red C_n (k = 3).
    ShorterCycle,
    /// Join two disjoint red cycles or find a blue C_l (k >= 4).
    Join,
    /// Red C_5 or C_6 around a blue C_4.
    Lift,
    /// One red/blue pair meeting in k - 1 vertices.
    Pair,
    /// Two vertex-disjoint red/blue pairs.
    DisjointPairs,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Lower-bound witness coloring for R(n, m) of the given pair kind.
    Witness {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        pair: PairKind,
        /// Store the coloring as a red edge list instead of hex bits.
        #[arg(long)]
        explicit: bool,
    },
    /// Decide whether every coloring of K^k_N has a red RED or a blue BLUE.
    Arrow {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_vertices: u32,
        #[arg(long)]
        red: TargetSpec,
        #[arg(long)]
        blue: TargetSpec,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Scan N upwards for R(RED, BLUE).
    Ramsey {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        red: TargetSpec,
        #[arg(long)]
        blue: TargetSpec,
        /// Largest host size to try.
        #[arg(long)]
        max_n: Option<u32>,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Run a constructive procedure on a coloring file.
    Extract {
        lemma: Lemma,
        #[arg(long)]
        coloring: PathBuf,
        /// Host path or cycle as comma-separated vertices in order.
        #[arg(long)]
        path: Option<String>,
        #[arg(long)]
        cycle: Option<String>,
        #[arg(long)]
        cycle2: Option<String>,
        /// Vertex set W (or the cross vertices for case2).
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        anchor: Option<usize>,
        #[arg(long)]
        u: Option<Vertex>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_HYPOTHESIS_BUDGET)]
        hypothesis_budget: u64,
    },
    /// Number of copies of TARGET in K^k_N.
    Count {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_vertices: u32,
        #[arg(long)]
        target: TargetSpec,
    },
    /// Values derived from cycle-cycle base values.
    Table {
        #[arg(long)]
        k: usize,
        /// Base values `n:m=value`, comma-separated; defaults to the known ones.
        #[arg(long)]
        base: Option<String>,
        /// Largest n to list.
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Write the arrowing instance as DIMACS CNF plus a variable map.
    ExportCnf {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_vertices: u32,
        #[arg(long)]
        red: TargetSpec,
        #[arg(long)]
        blue: TargetSpec,
        /// CNF file; the map goes to `<file>.map.json`.
        #[arg(long)]
        cnf: PathBuf,
        /// Output of an external solver on the CNF, to record its verdict.
        #[arg(long)]
        solver_output: Option<PathBuf>,
        /// Name of that solver, for the report.
        #[arg(long)]
        solver_name: Option<String>,
    },
    /// Re-validate a certificate file.
    CheckCert {
        #[arg(long)]
        file: PathBuf,
    },
}

struct Outcome {
    code: i32,
    result: Value,
    certificates: Vec<String>,
}

fn ok(result: Value) -> Outcome {
    Outcome {
        code: EXIT_OK,
        result,
        certificates: Vec::new(),
    }
}

/// Exit code for a library error.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::HypothesisViolation(_)
        | Error::BlueEdgeEncountered(_)
        | Error::MonochromaticColoring
        | Error::HostTooSmall { .. }
        | Error::PreconditionViolation(_) => EXIT_HYPOTHESIS,
        Error::ProofGap { .. } => EXIT_PROOF_GAP,
        Error::InternalAssertion(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

fn error_json(e: &Error) -> Value {
    let mut v = json!({ "error": e.to_string() });
    if let Error::ProofGap { instance, .. } = e {
        v["instance"] = serde_json::from_str(instance).unwrap_or(Value::String(instance.clone()));
    }
    v
}

fn write_json(dir: &Path, name: &str, v: &Value) -> Result<String> {
    std::fs::create_dir_all(dir)?;
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v)? + "\n")?;
    Ok(p.display().to_string())
}

fn parse_list(s: &str) -> Result<Vec<Vertex>> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse::<Vertex>().map_err(|_| invalid(format!("bad vertex `{x}`"))))
        .collect()
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| invalid(format!("--{flag} is required here")))
}

fn structure(k: usize, kind: Kind, list: &str, color: Color) -> Result<Embedding> {
    let vs = parse_list(list)?;
    let len = vs.len();
    let n = match kind {
        Kind::Path if len > 1 && (len - 1) % (k - 1) == 0 => (len - 1) / (k - 1),
        Kind::Cycle if len % (k - 1) == 0 => len / (k - 1),
        _ => return Err(invalid(format!("{len} vertices do not form a {k}-uniform loose {kind}"))),
    };
    Ok(Embedding {
        template: LooseTemplate::new(kind, k, n)?,
        assignment: vs,
        claimed_color: ColorClaim::from(color),
    })
}

fn load_coloring(p: &Path) -> Result<TwoColoring> {
    TwoColoring::from_json_str(&std::fs::read_to_string(p)?)
}

fn status_code(s: Status) -> i32 {
    match s {
        Status::Sat => EXIT_OK,
        Status::Unsat => EXIT_UNSAT,
        Status::Unknown => EXIT_UNKNOWN,
    }
}

fn embedding_json(e: &Embedding) -> Value {
    json!({
        "template": e.template.to_string(),
        "assignment": e.assignment,
        "edges": e.edges(),
        "color": e.claimed_color,
    })
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let dir = &cli.cert_dir;
    match &cli.cmd {
        Cmd::Witness { k, n, m, pair, explicit } => {
            let w = lower_bound_witness(*k, *n, *m, *pair)?;
            let stem = format!("witness-k{k}-n{n}-m{m}-{pair}");
            let col = write_json(dir, &format!("{stem}.coloring.json"), &w.coloring.to_json(*explicit))?;
            let cert = Certificate::witness(&w.coloring, &w.red_target, &w.blue_target);
            let cp = write_json(dir, &format!("{stem}.cert.json"), &cert.to_json())?;
            Ok(Outcome {
                code: EXIT_OK,
                result: json!({
                    "n_vertices": w.n_vertices(),
                    "bound": w.bound(),
                    "red_core": w.split.a,
                    "red_target": w.red_target.to_string(),
                    "blue_target": w.blue_target.to_string(),
                    "claim": format!("R({}, {}) >= {} at k = {k}", w.red_target, w.blue_target, w.bound()),
                    "coloring_file": col,
                }),
                certificates: vec![cp],
            })
        }
        Cmd::Arrow { k, n_vertices, red, blue, search } => {
            let (rt, bt) = (red.with_k(*k)?, blue.with_k(*k)?);
            let v = decide_arrowing(*k, *n_vertices, &rt, &bt, search.budget(), search.options())?;
            let mut certificates = Vec::new();
            if let Some(w) = &v.witness {
                let cert = Certificate::witness(w, &rt, &bt);
                let name = format!("arrow-k{k}-N{n_vertices}-{red}-{blue}.cert.json").replace(':', "");
                certificates.push(write_json(dir, &name, &cert.to_json())?);
            }
            Ok(Outcome {
                code: status_code(v.status),
                result: json!({ "verdict": v.to_json(), "options": search.options() }),
                certificates,
            })
        }
        Cmd::Ramsey { k, red, blue, max_n, search } => {
            let r = compute_ramsey(*k, *red, *blue, search.budget(), search.options(), *max_n)?;
            let mut certificates = Vec::new();
            if let Some(w) = &r.witness {
                let cert = Certificate::witness(w, &red.with_k(*k)?, &blue.with_k(*k)?);
                let name = format!("ramsey-k{k}-{red}-{blue}-N{}.cert.json", w.n_vertices()).replace(':', "");
                certificates.push(write_json(dir, &name, &cert.to_json())?);
            }
            let code = if r.claim.value.is_some() { EXIT_OK } else { EXIT_UNKNOWN };
            Ok(Outcome {
                code,
                result: json!({ "claim": r.claim, "scan": r.scan }),
                certificates,
            })
        }
        Cmd::Extract { .. } => extract(cli),
        Cmd::Count { k, n_vertices, target } => {
            let t = target.with_k(*k)?;
            Ok(ok(json!({ "target": t.to_string(), "k": k, "n_vertices": n_vertices, "copies": count_copies(*n_vertices, *k, &t)? })))
        }
        Cmd::Table { k, base, n_max } => {
            let base = match base {
                Some(s) => parse_base(s)?,
                None => known_cycle_values(*k, *n_max)?,
            };
            let claims = derive_table(*k, &base, *n_max)?;
            Ok(ok(json!({ "base": base, "claims": claims })))
        }
        Cmd::ExportCnf {
            k,
            n_vertices,
            red,
            blue,
            cnf,
            solver_output,
            solver_name,
        } => export(*k, *n_vertices, red, blue, cnf, solver_output.as_deref(), solver_name.as_deref(), dir),
        Cmd::CheckCert { file } => {
            let text = std::fs::read_to_string(file)?;
            let r = verify_certificate(&text)?;
            Ok(Outcome {
                code: if r.accepted { EXIT_OK } else { EXIT_HYPOTHESIS },
                result: serde_json::to_value(&r)?,
                certificates: vec![file.display().to_string()],
            })
        }
    }
}

fn parse_base(s: &str) -> Result<Vec<BaseValue>> {
    s.split(',')
        .map(|item| {
            let bad = || invalid(format!("base entry `{item}` is not n:m=value"));
            let (nm, v) = item.trim().split_once('=').ok_or_else(bad)?;
            let (n, m) = nm.split_once(':').ok_or_else(bad)?;
            Ok(BaseValue {
                n: n.parse().map_err(|_| bad())?,
                m: m.parse().map_err(|_| bad())?,
                value: v.parse().map_err(|_| bad())?,
                provenance: Provenance::SearchVerified,
                citation: "given on the command line".into(),
            })
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn export(
    k: usize,
    n_vertices: u32,
    red: &TargetSpec,
    blue: &TargetSpec,
    cnf: &Path,
    solver_output: Option<&Path>,
    solver_name: Option<&str>,
    dir: &Path,
) -> Result<Outcome> {
    let (rt, bt) = (red.with_k(k)?, blue.with_k(k)?);
    let doc = export_dimacs(k, n_vertices, &rt, &bt)?;
    if let Some(parent) = cnf.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(cnf, &doc.text)?;
    let mut map = cnf.as_os_str().to_owned();
    map.push(".map.json");
    let map = PathBuf::from(map);
    std::fs::write(&map, serde_json::to_string_pretty(&doc.sidecar)? + "\n")?;
    let mut result = json!({
        "header": doc.header(),
        "variables": doc.variables,
        "clauses": doc.clauses,
        "red_clauses": doc.red_clauses,
        "blue_clauses": doc.blue_clauses,
        "varmap_sha256": doc.varmap_sha256,
        "cnf_file": cnf.display().to_string(),
        "map_file": map.display().to_string(),
    });
    let mut code = EXIT_OK;
    let mut certificates = Vec::new();
    if let Some(p) = solver_output {
        let answer = prover::parse_solver_output(&std::fs::read_to_string(p)?)?;
        let status = match &answer {
            SolverAnswer::Satisfiable { model } => {
                let c = prover::model_to_coloring(k, n_vertices, model)?;
                if let Err(why) = prover::avoids(&c, &rt, &bt)? {
                    return Err(Error::HypothesisViolation(format!("external model is not a witness: {why}")));
                }
                let cert = Certificate::witness(&c, &rt, &bt);
                let name = format!("external-k{k}-N{n_vertices}-{red}-{blue}.cert.json").replace(':', "");
                certificates.push(write_json(dir, &name, &cert.to_json())?);
                Status::Sat
            }
            SolverAnswer::Unsatisfiable => Status::Unsat,
            SolverAnswer::Unknown => Status::Unknown,
        };
        code = status_code(status);
        result["external"] = json!({
            "solver": solver_name.unwrap_or("unspecified"),
            "output_file": p.display().to_string(),
            "status": status,
        });
    }
    Ok(Outcome {
        code,
        result,
        certificates,
    })
}

fn extract(cli: &Cli) -> Result<Outcome> {
    let Cmd::Extract {
        lemma,
        coloring,
        path,
        cycle,
        cycle2,
        w,
        anchor,
        u,
        n,
        m,
        l,
        i,
        t,
        hypothesis_budget,
    } = &cli.cmd
    else {
        unreachable!("extract dispatch")
    };
    let c = load_coloring(coloring)?;
    let k = c.k();
    let budget = Some(*hypothesis_budget);
    let w_list = || -> Result<Vec<Vertex>> { parse_list(need(w.as_deref(), "w")?) };
    let red_path = || structure(k, Kind::Path, need(path.as_deref(), "path")?, Color::Red);
    let red_cycle = |s: &Option<String>, flag| structure(k, Kind::Cycle, need(s.as_deref(), flag)?, Color::Red);
    let embedded = |e: &Embedding, color: Color, extra: Value| -> (Value, Payload) {
        let mut v = json!({ "structure": embedding_json(e) });
        if let (Value::Object(dst), Value::Object(src)) = (&mut v, extra) {
            dst.extend(src);
        }
        let p = Payload::Embedding {
            color,
            structure: e.template.kind,
            edges: e.edges(),
        };
        (v, p)
    };
    let (result, payload) = match lemma {
        Lemma::Configuration => {
            let p = red_path()?;
            let r = cons::find_good_configuration(&c, &p, &w_list()?, need(*anchor, "anchor")?, need(*u, "u")?)?;
            let g = &r.configuration;
            let blue = Embedding::from_edge_sequence(Kind::Path, &g.edges(), ColorClaim::Blue)?;
            let v = serde_json::to_value(&r)?;
            embedded(&blue, Color::Blue, json!({ "report": v }))
        }
        Lemma::Absorb => {
            let p = red_path()?;
            let r = cons::absorb_blue_path(&c, &p, &w_list()?)?;
            let extra = json!({ "w_used": r.w_used, "r": r.r, "avoided": r.avoided, "configurations": r.configurations });
            embedded(&r.path, Color::Blue, extra)
        }
        Lemma::Case2 => {
            let cy = red_cycle(cycle, "cycle")?;
            let e = cons::case2_blue_cycle(&c, &cy, &w_list()?, need(*m, "m")?)?;
            embedded(&e, Color::Blue, json!({}))
        }
        Lemma::ShorterCycle => {
            let cy = red_cycle(cycle, "cycle")?;
            let r = cons::blue_cycle_from_red_shorter_cycle(&c, &cy, need(*n, "n")?, need(*m, "m")?, budget)?;
            embedded(&r.cycle, Color::Blue, json!({ "case": r.case, "certification": r.certification }))
        }
        Lemma::Join => {
            let (c1, c2) = (red_cycle(cycle, "cycle")?, red_cycle(cycle2, "cycle2")?);
            let trace = cons::join_red_cycles(&c, &c1, &c2, need(*l, "l")?)?;
            let v = json!({ "trace": trace, "outcome": embedding_json(trace.outcome.cycle()) });
            (v, Payload::JoinTrace { trace })
        }
        Lemma::Lift => {
            let c4 = structure(k, Kind::Cycle, need(cycle.as_deref(), "cycle")?, Color::Blue)?;
            let e = cons::lift_blue_c4(&c, &c4, need(*i, "i")?)?;
            embedded(&e, Color::Red, json!({}))
        }
        Lemma::Pair => {
            let s = cons::adjacent_bichromatic_pair(&c)?;
            let v = serde_json::to_value(&s)?;
            (
                v,
                Payload::Pairs {
                    pairs: vec![s.pair],
                    disjoint: false,
                },
            )
        }
        Lemma::DisjointPairs => {
            let (pairs, certification) = match t {
                Some(t) => {
                    let (p, cert) = cons::disjoint_bichromatic_pairs(&c, *t, budget)?;
                    (p, Some(cert))
                }
                None => (cons::find_disjoint_pairs(&c)?, None),
            };
            let v = json!({ "pairs": [&pairs.0, &pairs.1], "certification": certification });
            (
                v,
                Payload::Pairs {
                    pairs: vec![pairs.0, pairs.1],
                    disjoint: true,
                },
            )
        }
    };
    let name = format!("extract-{}.cert.json", format!("{lemma:?}").to_lowercase());
    let cert = Certificate::new(&c, payload, Some(format!("{lemma:?}")));
    let cp = write_json(&cli.cert_dir, &name, &cert.to_json())?;
    Ok(Outcome {
        code: EXIT_OK,
        result,
        certificates: vec![cp],
    })
}

/// Runs the command line and returns the exit code. Reports go to `stdout`
/// (or `--out`), one-line diagnostics to `stderr`.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let msg = e.to_string();
                    let first = msg.lines().next().unwrap_or("usage error");
                    let _ = writeln!(stderr, "{first}");
                    EXIT_USAGE
                }
            };
        }
    };
    let start = Instant::now();
    let outcome = execute(&cli);
    let (code, result, certificates) = match outcome {
        Ok(o) => (o.code, o.result, o.certificates),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            (error_code(&e), error_json(&e), Vec::new())
        }
    };
    let command: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let mut report = json!({
        "tool": "ramsey-lab",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "seed": cli.seed,
        "exit_code": code,
        "result": result,
        "certificates": certificates,
    });
    if cli.no_timings {
        strip_timings(&mut report);
    } else {
        report["timings"] = json!({ "wall_ms": start.elapsed().as_millis() as u64 });
    }
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", p.display());
                return EXIT_USAGE;
            }
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    code
}

fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("wall_ms");
            for x in map.values_mut() {
                strip_timings(x);
            }
        }
        Value::Array(xs) => xs.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

/// Runs with the process arguments and standard streams.
pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}
