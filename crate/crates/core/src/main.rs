use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use knodeldom::commands::{self, guard_override_from_env, Outcome};
use knodeldom::io::GraphFormat;
use knodeldom::lemmas::{SuiteConfig, DEFAULT_SAMPLES, DEFAULT_SEED};
use knodeldom::{DominationKind, SolveOptions, Strategy};

#[derive(Parser)]
#[command(name = "knodeldom", version, about = "Knödel graphs and their (total) domination numbers")]
struct Cli {
    /// Print the JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the edge set of W(delta, n).
    Gen {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: FormatArg,
        /// Write to this file instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Build the closed-form total dominating set of W(3, n) and check it.
    Construct {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Check whether a vertex set (e.g. "u1,u2,v1,v2") dominates.
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value = "total")]
        kind: KindArg,
    },
    /// Compute an exact minimum (total) dominating set.
    Solve {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value = "total")]
        kind: KindArg,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Tabulate formula, bound and construction for even n in a range.
    Table {
        #[arg(long, default_value_t = 8)]
        n_min: usize,
        #[arg(long, default_value_t = 40)]
        n_max: usize,
        /// Also solve every row inside the solver's size guard.
        #[arg(long)]
        solve: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Run the structural lemma suite.
    CheckLemmas {
        /// Restrict to one degree (default: all valid degrees).
        #[arg(long)]
        delta: Option<u32>,
        #[arg(long, default_value_t = 64)]
        n_max: usize,
        /// Enumerate all pairs, triples and small subsets instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 64)]
        triple_n_max: usize,
        #[arg(long, default_value_t = 40)]
        subset_n_max: usize,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long, default_value_t = 3)]
    delta: u32,
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum, default_value = "pruned")]
    strategy: StrategyArg,
    /// Give up after this many search nodes.
    #[arg(long)]
    max_nodes: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Pruned mode: also search below the counting bound.
    #[arg(long)]
    exhaust_below_bound: bool,
}

impl SearchArgs {
    fn options(&self) -> SolveOptions {
        SolveOptions {
            strategy: match self.strategy {
                StrategyArg::Exhaustive => Strategy::Exhaustive,
                StrategyArg::Pruned => Strategy::Pruned,
                StrategyArg::Construction => Strategy::Construction,
            },
            max_nodes: self.max_nodes,
            threads: self.threads,
            exhaust_below_bound: self.exhaust_below_bound,
            override_guard: guard_override_from_env(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Edgelist,
    Dimacs,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Total,
    Dominating,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    #[value(alias = "pure-exhaustive")]
    Exhaustive,
    Pruned,
    Construction,
}

impl From<KindArg> for DominationKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Total => DominationKind::TotalDominating,
            KindArg::Dominating => DominationKind::Dominating,
        }
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Gen { graph, format, output } => {
            let format = match format {
                FormatArg::Edgelist => GraphFormat::Edgelist,
                FormatArg::Dimacs => GraphFormat::Dimacs,
                FormatArg::Json => GraphFormat::Json,
            };
            commands::cmd_gen(graph.delta, graph.n, format, output.as_deref())
        }
        Command::Construct { graph } => commands::cmd_construct(graph.delta, graph.n),
        Command::Verify { graph, set, kind } => commands::cmd_verify(graph.delta, graph.n, &set, kind.into()),
        Command::Solve { graph, kind, search } => {
            commands::cmd_solve(graph.delta, graph.n, kind.into(), &search.options())
        }
        Command::Table { n_min, n_max, solve, search } => {
            let opts = search.options();
            commands::cmd_table(n_min, n_max, solve.then_some(&opts))
        }
        Command::CheckLemmas { delta, n_max, exhaustive, triple_n_max, subset_n_max, samples, seed } => {
            commands::cmd_check_lemmas(&SuiteConfig {
                delta,
                n_max,
                exhaustive,
                triple_n_max,
                subset_n_max,
                samples,
                seed,
                override_guard: guard_override_from_env(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = dispatch(cli.command);
    let body = if cli.json {
        outcome.report.to_json() + "\n"
    } else {
        outcome.text
    };
    let errored = outcome.report.status == knodeldom::report::Status::Error;
    let written = if !errored || cli.json {
        std::io::stdout().lock().write_all(body.as_bytes())
    } else {
        std::io::stderr().lock().write_all(body.as_bytes())
    };
    if written.is_err() {
        return ExitCode::from(commands::EXIT_DOMAIN as u8);
    }
    ExitCode::from(outcome.exit_code as u8)
}
