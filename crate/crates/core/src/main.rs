use std::fs::{self, File};
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pbdom::formats::{parse_opb, render_opb, ParsedInstance};
use pbdom::generators::{
    emit_symmetry_breaking, parse_dimacs, parse_symmetries, pigeonhole, pigeonhole_symmetries, solve_clique_certified,
    BreakOptions,
};
use pbdom::pb::Var;
use pbdom::state::Mode;
use pbdom::verifier::{verify, Options, VerifyError};

/// Pseudo-Boolean proof checker and certified proof generators.
///
/// Exit status of `verify`: 0 accepted, 1 rejected, 2 unreadable or malformed input.
#[derive(Parser)]
#[command(name = "pbdom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a proof against an OPB instance.
    Verify(VerifyArgs),
    /// Write instance and proof files.
    #[command(subcommand)]
    Gen(Gen),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Checked,
    Unchecked,
}

#[derive(Args)]
struct VerifyArgs {
    opb: PathBuf,
    proof: PathBuf,
    #[arg(long, value_enum, default_value = "checked")]
    mode: ModeArg,
    /// Print every accepted command with the constraint ids it added, moved or removed.
    #[arg(long)]
    trace: bool,
    /// Print rule counts and store statistics.
    #[arg(long)]
    stats: bool,
    /// Enumerate all assignments after every step, for instances with at most this many variables.
    #[arg(long, value_name = "MAXVARS")]
    safety_oracle: Option<usize>,
}

#[derive(Subcommand)]
enum Gen {
    /// Pigeonhole formula plus its adjacent pigeon and hole transpositions.
    Php {
        #[arg(long)]
        pigeons: usize,
        #[arg(long)]
        holes: usize,
        /// Output prefix; writes `<prefix>.opb` and `<prefix>.sym`.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Symmetry-breaking proof for an instance and a list of symmetries.
    Breaksym {
        #[arg(long)]
        opb: PathBuf,
        #[arg(long)]
        syms: PathBuf,
        /// Breaking clauses per symmetry.
        #[arg(long, default_value_t = 100)]
        limit: usize,
        /// Space-separated variable names, most significant first; defaults to declaration order.
        #[arg(long)]
        var_order: Option<String>,
        #[arg(long, default_value = "exp22")]
        order_name: String,
        /// Break every moved position up to the limit instead of one per cycle.
        #[arg(long)]
        all_positions: bool,
        /// Proof path; defaults to the instance path with a `.pbp` extension.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Solve maximum clique on a DIMACS graph and certify optimality.
    Clique {
        #[arg(long)]
        graph: PathBuf,
        /// Skip the lazy vertex dominance.
        #[arg(long)]
        no_dominance: bool,
        /// Output prefix; defaults to the graph path without extension.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn run_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let instance = parse_opb(&read(&args.opb)?).map_err(VerifyError::Instance);
    let proof = File::open(&args.proof).with_context(|| format!("opening {}", args.proof.display()))?;
    let opts = Options {
        mode: match args.mode {
            ModeArg::Checked => Mode::Checked,
            ModeArg::Unchecked => Mode::Unchecked,
        },
        trace: args.trace,
        safety_oracle: args.safety_oracle,
    };
    match instance.and_then(|inst| verify(inst, BufReader::new(proof), &opts)) {
        Ok(report) => {
            println!("VERIFIED {}", report.claim);
            for line in &report.trace {
                println!("{line}");
            }
            if args.stats {
                let s = &report.stats;
                println!("constraints created {} deleted {} peak live {}", s.created, s.deleted, s.peak_live);
                println!("goals auto {} subproof {}", s.goals_auto, s.goals_subproof);
                for (rule, n) in &s.rules {
                    println!("rule {rule} {n}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(e @ (VerifyError::Rejected { .. } | VerifyError::Unsafe { .. })) => {
            let line = e.line().unwrap_or(0);
            let reason = match &e {
                VerifyError::Rejected { message, .. } => message.clone(),
                VerifyError::Unsafe { violation, .. } => format!("safety oracle: {violation}"),
                _ => unreachable!(),
            };
            println!("REJECTED line {line}: {reason}");
            Ok(ExitCode::from(1))
        }
        Err(e) => {
            eprintln!("error: {e}");
            Ok(ExitCode::from(2))
        }
    }
}

fn resolve_order(inst: &ParsedInstance, spec: Option<&str>) -> Result<Vec<Var>> {
    match spec {
        None => Ok(inst.vars.vars().collect()),
        Some(text) => text
            .split_whitespace()
            .map(|name| inst.vars.lookup(name).with_context(|| format!("unknown variable {name} in --var-order")))
            .collect(),
    }
}

fn run_gen(cmd: &Gen) -> Result<()> {
    match cmd {
        Gen::Php { pigeons, holes, out } => {
            if *pigeons == 0 || *holes == 0 {
                bail!("pigeons and holes must be positive");
            }
            let inst = pigeonhole(*pigeons, *holes);
            let prefix = out.clone().unwrap_or_else(|| PathBuf::from(format!("php{pigeons}_{holes}")));
            write(&prefix.with_extension("opb"), &render_opb(&inst))?;
            let syms: Vec<String> = pigeonhole_symmetries(&inst, *pigeons, *holes)
                .iter()
                .map(|s| s.render(&inst.vars))
                .collect();
            write(&prefix.with_extension("sym"), &(syms.join("\n") + "\n"))?;
        }
        Gen::Breaksym { opb, syms, limit, var_order, order_name, all_positions, out } => {
            let inst = parse_opb(&read(opb)?).with_context(|| format!("parsing {}", opb.display()))?;
            let syms = parse_symmetries(&read(syms)?, &inst.vars).with_context(|| format!("parsing {}", syms.display()))?;
            let order = resolve_order(&inst, var_order.as_deref())?;
            let opts = BreakOptions { order_name: order_name.clone(), limit: *limit, per_cycle: !all_positions };
            let proof = emit_symmetry_breaking(&inst, &syms, &order, &opts)?;
            write(&out.clone().unwrap_or_else(|| opb.with_extension("pbp")), &proof)?;
        }
        Gen::Clique { graph, no_dominance, out } => {
            let g = parse_dimacs(&read(graph)?).with_context(|| format!("parsing {}", graph.display()))?;
            let run = solve_clique_certified(&g, !no_dominance);
            let prefix = out.clone().unwrap_or_else(|| graph.with_extension(""));
            write(&prefix.with_extension("opb"), &render_opb(&run.instance))?;
            write(&prefix.with_extension("pbp"), &run.proof)?;
            let mut clique = run.clique.clone();
            clique.sort_unstable();
            let vertices: Vec<String> = clique.iter().map(|v| (v + 1).to_string()).collect();
            println!("optimum {}", run.optimum());
            println!("clique {}", vertices.join(" "));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(args) => run_verify(args),
        Command::Gen(cmd) => run_gen(cmd).map(|()| ExitCode::SUCCESS),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
