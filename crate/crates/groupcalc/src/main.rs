use std::process::ExitCode;

use clap::{Parser, Subcommand};
use groupcalc::config::{self, Config};
use groupcalc::sampling::point_from_coords;
use groupcalc::scenario::{builtin, Scenario};
use groupcalc::{run, Mode, RunOptions, Suite};
use groupcalc_core::calculus::{iterated, partial_ij};
use groupcalc_core::{GroupSpec, LieDirection};

#[derive(Parser)]
#[command(name = "groupcalc", version, about = "Derivatives along one-parameter subgroups of matrix Lie groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run identity suites and report deviations.
    Verify {
        /// Suites to run (default: all).
        #[arg(long = "suite", value_enum)]
        suites: Vec<Suite>,
        /// Scenarios to run (default: all).
        #[arg(long = "scenario")]
        scenarios: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Absolute tolerance for identity suites.
        #[arg(long)]
        tol: Option<f64>,
        /// Samples per suite and scenario.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// Finite-difference step for the oracle suite.
        #[arg(long)]
        fd_step: Option<f64>,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<String>,
        /// TOML file with settings and scenarios, replacing the built-in corpus.
        #[arg(long)]
        config: Option<String>,
    },
    /// List the scenario registry.
    List {
        #[arg(long)]
        config: Option<String>,
    },
    /// Print one derivative of a scenario function.
    Derive {
        #[arg(long)]
        scenario: String,
        /// `i` for d^(i) (two-argument functions: on the product), or `i,j` for d^(i,j).
        #[arg(long)]
        order: String,
        /// Point coordinates, arguments concatenated.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Direction coordinates (first argument's, then second's); default: first basis vector of each.
        #[arg(long, allow_hyphen_values = true)]
        direction: Option<String>,
        #[arg(long)]
        config: Option<String>,
    },
}

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn load(path: Option<&str>) -> Result<Config, String> {
    match path {
        Some(p) => config::load(p).map_err(|e| format!("{p}: {e}")),
        None => Ok(Config { settings: Default::default(), scenarios: builtin() }),
    }
}

fn csv(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("bad number `{t}`")))
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { suites, scenarios, seed, tol, samples, mode, fd_step, report, config } => {
            let cfg = match load(config.as_deref()) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("config error: {e}");
                    return ExitCode::from(EXIT_CONFIG);
                }
            };
            let mut selected: Vec<Scenario> = Vec::new();
            if scenarios.is_empty() {
                selected = cfg.scenarios;
            } else {
                for name in &scenarios {
                    match cfg.scenarios.iter().find(|s| &s.name == name) {
                        Some(s) => selected.push(s.clone()),
                        None => {
                            eprintln!("unknown scenario `{name}`");
                            return ExitCode::from(EXIT_CONFIG);
                        }
                    }
                }
            }
            if let Some(t) = tol.filter(|t| t.is_nan() || *t < 0.0) {
                eprintln!("--tol {t} must be non-negative");
                return ExitCode::from(EXIT_CONFIG);
            }
            if samples == Some(0) || fd_step.is_some_and(|h| h.is_nan() || h <= 0.0) {
                eprintln!("--samples and --fd-step must be positive");
                return ExitCode::from(EXIT_CONFIG);
            }
            let s = &cfg.settings;
            let opts = RunOptions {
                seed: seed.or(s.seed).unwrap_or(42),
                suites: if suites.is_empty() { Suite::ALL.to_vec() } else { suites },
                samples: samples.or(s.samples),
                tolerance: tol.or(s.tolerance),
                mode: mode.or(s.mode).unwrap_or(Mode::Exact),
                fd_step: fd_step.or(s.fd_step),
            };
            let rep = run(&selected, &opts);
            for e in &rep.entries {
                println!("{}", e.line());
            }
            let passed = rep.entries.iter().filter(|e| e.pass).count();
            println!(
                "{passed}/{} entries passed, seed {}, {:.2}s",
                rep.entries.len(),
                opts.seed,
                rep.metadata.wall_time_s
            );
            if let Some(path) = report {
                if let Err(e) = std::fs::write(&path, rep.to_json() + "\n") {
                    eprintln!("cannot write {path}: {e}");
                    return ExitCode::from(EXIT_CONFIG);
                }
            }
            if rep.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Command::List { config } => match load(config.as_deref()) {
            Ok(cfg) => {
                for s in &cfg.scenarios {
                    println!("{}", s.summary());
                }
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("config error: {e}");
                ExitCode::from(EXIT_CONFIG)
            }
        },
        Command::Derive { scenario, order, point, direction, config } => {
            match derive(&scenario, &order, &point, direction.as_deref(), config.as_deref()) {
                Ok(v) => {
                    println!("{}", v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(","));
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("{e}");
                    ExitCode::from(EXIT_CONFIG)
                }
            }
        }
    }
}

fn derive(name: &str, order: &str, point: &str, direction: Option<&str>, config: Option<&str>) -> Result<Vec<f64>, String> {
    let cfg = load(config)?;
    let sc = cfg.scenarios.iter().find(|s| s.name == name).ok_or_else(|| format!("unknown scenario `{name}`"))?;
    let orders: Vec<usize> = order
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| format!("bad order `{t}`")))
        .collect::<Result<_, _>>()?;
    let coords = csv(point)?;
    let dims: Vec<usize> = sc.groups.iter().map(GroupSpec::algebra_dim).collect();
    if coords.len() != dims.iter().sum::<usize>() {
        return Err(format!("--point needs {} coordinates", dims.iter().sum::<usize>()));
    }
    let dir_coords = match direction {
        Some(d) => csv(d)?,
        None => dims.iter().flat_map(|&n| (0..n).map(|k| if k == 0 { 1.0 } else { 0.0 })).collect(),
    };
    if dir_coords.len() != dims.iter().sum::<usize>() {
        return Err(format!("--direction needs {} coordinates", dims.iter().sum::<usize>()));
    }
    let x = point_from_coords(&sc.groups[0], &coords[..dims[0]]).map_err(|e| e.to_string())?;
    let gamma = LieDirection::from_coords(&sc.groups[0], &dir_coords[..dims[0]]).map_err(|e| e.to_string())?;
    let f = sc.function();
    match (orders.as_slice(), sc.is_binary()) {
        ([i], false) => iterated::<f64>(f, &x, &vec![gamma; *i]).map_err(|e| e.to_string()),
        ([i], true) => {
            let y = point_from_coords(&sc.groups[1], &coords[dims[0]..]).map_err(|e| e.to_string())?;
            let eta = LieDirection::from_coords(&sc.groups[1], &dir_coords[dims[0]..]).map_err(|e| e.to_string())?;
            let p = groupcalc_core::GroupElement::pair(x, y);
            let g = f.on_product().map_err(|e| e.to_string())?;
            iterated::<f64>(&g, &p, &vec![LieDirection::pair(gamma, eta); *i]).map_err(|e| e.to_string())
        }
        ([i, j], true) => {
            let y = point_from_coords(&sc.groups[1], &coords[dims[0]..]).map_err(|e| e.to_string())?;
            let eta = LieDirection::from_coords(&sc.groups[1], &dir_coords[dims[0]..]).map_err(|e| e.to_string())?;
            partial_ij::<f64>(f, &x, &y, &vec![gamma; *i], &vec![eta; *j]).map_err(|e| e.to_string())
        }
        _ => Err("--order takes `i` or, for two-argument scenarios, `i,j`".into()),
    }
}
