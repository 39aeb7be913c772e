use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use pebblelab::cfi::cfi_pair;
use pebblelab::equiv::{Engine, EngineConfig, Verdict, DEFAULT_BUDGET};
use pebblelab::hierarchy::{hierarchy, HierarchyConfig, DEFAULT_LP_LIMIT};
use pebblelab::solvers::{bool_solve, lp_feasible, presolve_zero, render_result, Strength};
use pebblelab::systems::{
    build_biso, build_iso, build_sa, build_sa_half, parse_boolean_system, parse_linear_system, BuildOptions, Scope,
    DEFAULT_MAX_VARS,
};
use pebblelab::{brute_force_isomorphic, parse_graph, Graph};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "pebblelab", version, about = "Pebble-game equivalences and isomorphism equation systems")]
struct Cli {
    /// Tuple or position budget for the engines.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Largest presolved linear system handed to the simplex.
    #[arg(long, global = true, default_value_t = DEFAULT_LP_LIMIT)]
    lp_limit: usize,
    /// Also write a structured summary to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Colour refinement.
    Cr { a: PathBuf, b: PathBuf },
    /// k-dimensional Weisfeiler-Leman.
    Wl {
        #[arg(short)]
        k: usize,
        a: PathBuf,
        b: PathBuf,
    },
    /// Weak k-WL (the announced-pebble bijective game).
    Weakwl {
        #[arg(short)]
        k: usize,
        a: PathBuf,
        b: PathBuf,
    },
    /// k-pebble game without counting.
    Lk {
        #[arg(short)]
        k: usize,
        a: PathBuf,
        b: PathBuf,
    },
    /// k-pebble game with announced removal, without counting.
    Weaklk {
        #[arg(short)]
        k: usize,
        a: PathBuf,
        b: PathBuf,
    },
    /// Export an equation system.
    Build {
        #[arg(long, value_enum)]
        system: SystemArg,
        #[arg(short, default_value_t = 2)]
        k: usize,
        a: PathBuf,
        b: PathBuf,
        #[arg(short)]
        o: PathBuf,
        /// Omit variables that vanish by the structural rules.
        #[arg(long)]
        structural: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_VARS)]
        max_vars: usize,
    },
    /// Exact feasibility of an exported linear system.
    Solve { file: PathBuf },
    /// Greatest solution of an exported boolean system.
    Bsolve { file: PathBuf },
    /// Write a CFI pair over the clique K_t.
    Cfi {
        #[arg(long)]
        t: usize,
        /// Write only the twisted graph.
        #[arg(long)]
        twist_only: bool,
        /// Mark the full inner set of this region (number or letter).
        #[arg(long)]
        mark: Option<String>,
        #[arg(short)]
        o: String,
    },
    /// Engines against systems at level k.
    Hierarchy {
        #[arg(short)]
        k: usize,
        a: PathBuf,
        b: PathBuf,
    },
    /// Brute-force isomorphism test.
    Isox { a: PathBuf, b: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SystemArg {
    Iso,
    Sa,
    Sahalf,
    Biso,
    Bisohalf,
}

struct Outcome {
    code: u8,
    result: String,
    summary: serde_json::Value,
}

fn read_graph(p: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", p.display()))
}

fn pair_name(a: &Path, b: &Path) -> String {
    let name = |p: &Path| p.file_name().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned());
    format!("{}|{}", name(a), name(b))
}

fn engine(e: Engine, k: usize, a: &Path, b: &Path, cfg: &EngineConfig) -> Result<Outcome> {
    let (ga, gb) = (read_graph(a)?, read_graph(b)?);
    let v: Verdict = e.run(k, &ga, &gb, cfg)?;
    let (code, result) = match v.distinguished_at {
        None if v.equivalent => (0, format!("equivalent rounds={}", v.rounds)),
        Some(r) => (1, format!("distinguished round={r}")),
        None => (1, "distinguished".to_string()),
    };
    if let Some(w) = &v.witness {
        println!("witness {}", serde_json::to_string(w)?);
    }
    let summary = json!({
        "pair": pair_name(a, b),
        "k": if e == Engine::ColourRefinement { None } else { Some(k) },
        "engine": e.name(),
        "verdict": if v.equivalent { "equivalent" } else { "distinguished" },
        "rounds": v.rounds,
        "distinguished_at": v.distinguished_at,
    });
    Ok(Outcome { code, result, summary })
}

fn region(s: &str) -> Result<usize> {
    if let Ok(r) = s.parse::<usize>() {
        return Ok(r);
    }
    match s.as_bytes() {
        [c @ b'a'..=b'z'] => Ok(usize::from(c - b'a') + 1),
        _ => bail!("region `{s}` is neither a number nor a letter"),
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let cfg = EngineConfig { budget: cli.budget };
    match cli.command {
        Command::Cr { a, b } => engine(Engine::ColourRefinement, 2, &a, &b, &cfg),
        Command::Wl { k, a, b } => engine(Engine::Wl, k, &a, &b, &cfg),
        Command::Weakwl { k, a, b } => engine(Engine::WeakWl, k, &a, &b, &cfg),
        Command::Lk { k, a, b } => engine(Engine::Lk, k, &a, &b, &cfg),
        Command::Weaklk { k, a, b } => engine(Engine::WeakLk, k, &a, &b, &cfg),
        Command::Build { system, k, a, b, o, structural, max_vars } => {
            let (ga, gb) = (read_graph(&a)?, read_graph(&b)?);
            let opts = BuildOptions { scope: if structural { Scope::Structural } else { Scope::Full }, max_vars };
            let (text, vars, eqs) = match system {
                SystemArg::Iso | SystemArg::Sa | SystemArg::Sahalf => {
                    let s = match system {
                        SystemArg::Iso => build_iso(&ga, &gb, &opts)?,
                        SystemArg::Sa => build_sa(k, &ga, &gb, &opts)?,
                        _ => build_sa_half(k, &ga, &gb, &opts)?,
                    };
                    (s.to_string(), s.num_vars(), s.equations.len())
                }
                SystemArg::Biso | SystemArg::Bisohalf => {
                    let s = build_biso(k, matches!(system, SystemArg::Bisohalf), &ga, &gb, &opts)?;
                    (s.to_string(), s.num_vars(), s.equations.len())
                }
            };
            std::fs::write(&o, text).with_context(|| format!("writing {}", o.display()))?;
            let summary = json!({ "pair": pair_name(&a, &b), "k": k, "system": format!("{system:?}").to_lowercase(), "vars": vars, "equations": eqs });
            Ok(Outcome { code: 0, result: format!("built vars={vars} equations={eqs}"), summary })
        }
        Command::Solve { file } => {
            let text = std::fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let sys = parse_linear_system(&text)?;
            let pre = presolve_zero(&sys, Strength::Propagate);
            if pre.system.num_vars() > cli.lp_limit {
                bail!("{} variables after presolve exceed the limit {} (raise --lp-limit)", pre.system.num_vars(), cli.lp_limit);
            }
            let res = lp_feasible(&pre.system);
            print!("{}", render_result(&sys.vars, res.point.as_ref()));
            let status = if res.feasible() { "feasible" } else { "infeasible" };
            let summary = json!({ "system": file.display().to_string(), "status": status, "pivots": res.pivots });
            Ok(Outcome { code: u8::from(!res.feasible()), result: status.to_string(), summary })
        }
        Command::Bsolve { file } => {
            let text = std::fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let sys = parse_boolean_system(&text)?;
            let res = bool_solve(&sys)?;
            print!("{}", render_result(&sys.vars, res.point.as_ref()));
            let status = if res.feasible() { "feasible" } else { "infeasible" };
            let summary = json!({ "system": file.display().to_string(), "status": status, "violated": res.violated });
            Ok(Outcome { code: u8::from(!res.feasible()), result: status.to_string(), summary })
        }
        Command::Cfi { t, twist_only, mark, o } => {
            let mut pair = cfi_pair(t)?;
            if let Some(r) = mark {
                pair = pair.mark_inner(region(&r)?)?;
            }
            let mut written = Vec::new();
            if !twist_only {
                written.push((format!("{o}A.gr"), &pair.straight));
            }
            written.push((format!("{o}B.gr"), &pair.twisted));
            for (path, g) in &written {
                std::fs::write(path, g.render()).with_context(|| format!("writing {path}"))?;
                println!("wrote {path} ({} vertices, {} edges)", g.n(), g.edge_count());
            }
            let files: Vec<&str> = written.iter().map(|(p, _)| p.as_str()).collect();
            let summary = json!({ "t": t, "marked": pair.marked, "files": files });
            Ok(Outcome { code: 0, result: format!("written {}", files.join(" ")), summary })
        }
        Command::Hierarchy { k, a, b } => {
            let (ga, gb) = (read_graph(&a)?, read_graph(&b)?);
            let hc = HierarchyConfig { engine: cfg, lp_limit: cli.lp_limit, ..HierarchyConfig::default() };
            let rep = hierarchy(&pair_name(&a, &b), k, &ga, &gb, &hc)?;
            print!("{rep}");
            let summary = serde_json::to_value(&rep.flags)?;
            let errors = rep.engines.iter().filter(|c| matches!(c.status, pebblelab::hierarchy::EngineStatus::Error(_))).count();
            let decided = rep.flags.len() - rep.undecided();
            let (code, result) = if rep.violations() > 0 {
                (1, format!("inconsistent violations={} flags={}", rep.violations(), rep.flags.len()))
            } else if errors > 0 {
                (2, format!("error engines={errors} consistent={decided}/{}", rep.flags.len()))
            } else {
                (0, format!("consistent checked={decided}/{} undecided={}", rep.flags.len(), rep.undecided()))
            };
            Ok(Outcome { code, result, summary })
        }
        Command::Isox { a, b } => {
            let (ga, gb) = (read_graph(&a)?, read_graph(&b)?);
            let iso = brute_force_isomorphic(&ga, &gb)?;
            let verdict = if iso { "isomorphic" } else { "non-isomorphic" };
            let summary = json!({ "pair": pair_name(&a, &b), "verdict": verdict });
            Ok(Outcome { code: u8::from(!iso), result: verdict.to_string(), summary })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            if code == 0 {
                return ExitCode::SUCCESS;
            }
            println!("RESULT error usage");
            return ExitCode::from(2);
        }
    };
    let json_path = cli.json.clone();
    let outcome = run(cli).and_then(|o| {
        if let Some(p) = &json_path {
            let text = serde_json::to_string_pretty(&o.summary)?;
            std::fs::write(p, text + "\n").map_err(|e| anyhow!("writing {}: {e}", p.display()))?;
        }
        Ok(o)
    });
    match outcome {
        Ok(o) => {
            println!("RESULT {}", o.result);
            ExitCode::from(o.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            println!("RESULT error {}", e.to_string().replace('\n', " "));
            ExitCode::from(2)
        }
    }
}
