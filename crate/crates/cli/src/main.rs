use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kaug_core::graph::{find_small_cut, is_k_connected};
use kaug_core::lp::solve_lpvc;
use kaug_core::outconnect::rooted;
use kaug_core::pipeline::{augment, Mode, PipelineOptions};
use kaug_core::rational::fmt_rat;
use kaug_core::toolkit::gen::{gen_random, GenParams};
use kaug_core::toolkit::harness::{run_suite, HarnessConfig, SUITES};
use kaug_core::toolkit::oracle::{exact_opt_with, OracleBudget, OracleMode};
use kaug_core::{Error, Instance, NodeSet, Solution};

#[derive(Parser)]
#[command(name = "kaug", version, about = "Minimum-cost k-node-connectivity augmentation")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the approximation pipeline and print a solution file.
    Solve {
        instance: PathBuf,
        /// Override the target connectivity of the instance.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Guaranteed)]
        mode: ModeArg,
        /// Seed for terminal choices; lexicographic when absent.
        #[arg(long)]
        seed: Option<u64>,
        /// Print the rounding trace to stderr.
        #[arg(long)]
        trace: bool,
        /// Also write the full pipeline report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Compute an exact optimum by search.
    Exact {
        instance: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = OracleArg::Auto)]
        oracle: OracleArg,
        #[arg(long, default_value_t = 25)]
        max_candidates: usize,
        /// Prune branch-and-bound nodes with the cut LP.
        #[arg(long)]
        lp_bound: bool,
    },
    /// Check k-connectivity of the instance graph, plus a solution if given.
    Check {
        instance: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        solution: Option<PathBuf>,
    },
    /// Dump a basic optimum of the cut LP.
    Lp {
        instance: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run the rooted outconnectivity step for a terminal set.
    Rooted {
        instance: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        /// Comma-separated terminal nodes, exactly k of them.
        #[arg(long, value_delimiter = ',', required = true)]
        terminals: Vec<usize>,
    },
    /// Generate a seeded random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0.2)]
        density: f64,
        #[arg(long, default_value_t = 1)]
        cost_min: u64,
        #[arg(long, default_value_t = 10)]
        cost_max: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_purchasable: Option<usize>,
        /// Write to a file instead of stdout.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Run a named property suite, or `all`.
    Harness {
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        cases: Option<usize>,
        /// Directory for reproducer instances of failing cases.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Guaranteed,
    BestEffort,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Auto,
    Exhaustive,
    Bnb,
}

enum Failure {
    Lib(Error),
    /// A check came back negative; the message is already printed.
    Negative,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn load(path: &PathBuf, k: Option<usize>) -> Result<Instance, Error> {
    let mut inst = Instance::read(path)?;
    if let Some(k) = k {
        inst.k = k;
    }
    Ok(inst)
}

fn solution(inst: &Instance, edges: Vec<kaug_core::Edge>, cost: kaug_core::Rat) -> Solution {
    let connected = is_k_connected(&inst.graph.with_edges(&edges), inst.k);
    Solution { edges, cost, k: inst.k, connected }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Solve { instance, k, mode, seed, trace, report } => {
            let inst = load(&instance, k)?;
            let opts = PipelineOptions {
                mode: Some(match mode {
                    ModeArg::Guaranteed => Mode::Guaranteed,
                    ModeArg::BestEffort => Mode::BestEffort,
                }),
                seed,
                ..Default::default()
            };
            let rep = augment(&inst.graph, inst.k, &inst.costs, &opts)?;
            if trace {
                for line in &rep.trace {
                    eprintln!("{line}");
                }
            }
            if let Some(path) = report {
                std::fs::write(path, rep.to_text()).map_err(Error::from)?;
            }
            print!("{}", solution(&inst, rep.edges(), rep.total()).to_text());
        }
        Command::Exact { instance, k, oracle, max_candidates, lp_bound } => {
            let inst = load(&instance, k)?;
            let mode = match oracle {
                OracleArg::Auto => OracleMode::Auto,
                OracleArg::Exhaustive => OracleMode::Exhaustive,
                OracleArg::Bnb => OracleMode::BranchAndBound,
            };
            let budget = OracleBudget { max_candidates, lp_bound, ..Default::default() };
            let res = exact_opt_with(&inst.graph, inst.k, &inst.costs, mode, budget)?;
            let cost = res.cost.ok_or(Error::Infeasible)?;
            eprintln!("explored {}", res.explored);
            print!("{}", solution(&inst, res.edges, cost).to_text());
        }
        Command::Check { instance, k, solution: sol } => {
            let inst = load(&instance, k)?;
            let mut g = inst.graph.clone();
            if let Some(path) = sol {
                let text = std::fs::read_to_string(path).map_err(Error::from)?;
                let s = Solution::parse(&text)?;
                for e in &s.edges {
                    if e.v() >= g.n() {
                        return Err(Error::InvalidGraph(format!("edge {e} leaves the node range")).into());
                    }
                    if !g.contains_edge(*e) && !inst.costs.is_purchasable(*e) {
                        return Err(Error::InvalidGraph(format!("edge {e} is not purchasable")).into());
                    }
                }
                let cost = inst.costs.total(s.edges.iter().filter(|e| !inst.graph.contains_edge(**e)));
                if let Some(cost) = cost {
                    println!("cost {}", fmt_rat(&cost));
                }
                g = g.with_edges(&s.edges);
            }
            match find_small_cut(&g, inst.k) {
                None if g.n() > inst.k => println!("connected {} true", inst.k),
                None => {
                    println!("connected {} false", inst.k);
                    println!("too few nodes: n = {}", g.n());
                    return Err(Failure::Negative);
                }
                Some((u, w, cut)) => {
                    println!("connected {} false", inst.k);
                    println!("witness {u} {w} cut {}", cut.cut_nodes);
                    return Err(Failure::Negative);
                }
            }
        }
        Command::Lp { instance, k } => {
            let inst = load(&instance, k)?;
            let sol = solve_lpvc(&inst.graph, inst.k, &inst.costs)?;
            print!("{}", sol.to_lp_text(&inst.graph, inst.k, &inst.costs));
            println!("\\ objective {}", fmt_rat(&sol.objective));
            for (e, v) in sol.x.iter() {
                println!("\\ x_{}_{} = {}", e.u(), e.v(), fmt_rat(v));
            }
        }
        Command::Rooted { instance, k, terminals } => {
            let inst = load(&instance, k)?;
            let r: NodeSet = terminals.iter().copied().collect();
            if r.iter().any(|v| v >= inst.n()) {
                return Err(Error::InvalidGraph("terminal out of range".into()).into());
            }
            let res = rooted(&inst.graph, &inst.costs, &r, inst.k)?;
            eprintln!("lp_bound {}", fmt_rat(&res.lp_bound));
            print!("{}", solution(&inst, res.edges, res.cost).to_text());
        }
        Command::Gen { n, k, density, cost_min, cost_max, seed, max_purchasable, out } => {
            if k == 0 || n < k + 1 {
                return Err(Error::InvalidGraph(format!("need k >= 1 and n >= k + 1, got n = {n} k = {k}")).into());
            }
            let mut p = GenParams::new(n, k, seed);
            p.density = density;
            p.cost_range = (cost_min, cost_max);
            p.max_purchasable = max_purchasable;
            let inst = gen_random(&p);
            match out {
                Some(path) => inst.write(&path)?,
                None => print!("{}", inst.to_text()),
            }
        }
        Command::Harness { suite, seed, cases, dump_dir } => {
            let cfg = HarnessConfig { seed, cases, dump_dir };
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut ok = true;
            for name in names {
                let rep = run_suite(name, &cfg)?;
                print!("{}", rep.to_table());
                ok &= rep.passed();
            }
            if !ok {
                return Err(Failure::Negative);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Infeasible => 2,
                Error::RegimeViolation { .. } => 3,
                _ => 1,
            })
        }
    }
}
