//! `promosort`: promotion sorting of poset labelings from the command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 refused by the size
//! budget (rerun with `--force`), 3 `verify` found a counterexample.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use promosort_core::{EnumConfig, Error};

#[derive(Parser, Debug)]
#[command(name = "promosort", version, about = "Extended promotion on poset labelings")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Global {
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Run past the size budget.
    #[arg(long, global = true)]
    force: bool,
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
}

impl Global {
    pub fn config(&self) -> EnumConfig {
        let base = match self.threads {
            Some(t) => EnumConfig::with_threads(t),
            None => EnumConfig::default(),
        };
        base.forced(self.force)
    }
}

#[derive(Args, Debug)]
pub struct PosetArg {
    /// Poset file: {"n": .., "covers": [[a, b], ..], "names": [..]}.
    #[arg(long)]
    poset: PathBuf,
}

#[derive(Args, Debug)]
pub struct LabeledArgs {
    #[command(flatten)]
    poset: PosetArg,
    /// Labels of elements 0..n-1, comma separated.
    #[arg(long)]
    labeling: String,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Sorting,
    Cumulative,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Reduced,
    AsGiven,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conjecture {
    /// Every check below.
    All,
    /// Per-element `(n-2)!` bound with its equality condition.
    #[value(name = "n-2")]
    NMinus2,
    /// `(n-m)(n-2)!` with `m` minimal elements.
    Hodges,
    /// `(n-1)!` in total.
    #[value(name = "n-1")]
    NMinus1,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply promotion and print each labeling with its chain.
    Promote {
        #[command(flatten)]
        input: LabeledArgs,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Number of promotions needed to sort a labeling.
    Order {
        #[command(flatten)]
        input: LabeledArgs,
    },
    /// Sorting and cumulative generating functions by enumeration.
    Gf {
        #[command(flatten)]
        input: PosetArg,
    },
    /// Count tangled labelings.
    Tangled {
        #[command(flatten)]
        input: PosetArg,
        /// Split by the element carrying label n-1.
        #[arg(long)]
        by_element: bool,
    },
    /// Lift a labeling to the poset with k new minimal elements below.
    Lift {
        #[command(flatten)]
        input: LabeledArgs,
        /// Labels i_1 < .. < i_k of the new minimal elements.
        #[arg(long)]
        indices: String,
    },
    /// Tangled counts of an inflated rooted forest by formula.
    Irf {
        /// Inflation file: {"parent": [null, 0, ..], "fibers": [<poset>, ..]}.
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Route::Reduced)]
        route: Route,
        /// Also enumerate and compare.
        #[arg(long)]
        enumerate: bool,
    },
    /// Tangled labelings of W_{a,b,c,d} by formula.
    Wposet {
        a: usize,
        b: usize,
        c: usize,
        d: usize,
        /// Also enumerate and compare.
        #[arg(long)]
        enumerate: bool,
    },
    /// Generating function after attaching an antichain of size k below.
    Attach {
        /// Take the function of this poset.
        #[arg(long, conflicts_with = "coeffs", required_unless_present = "coeffs")]
        poset: Option<PathBuf>,
        /// Or give the coefficients directly.
        #[arg(long)]
        coeffs: Option<String>,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Mode::Sorting)]
        mode: Mode,
    },
    /// Coefficient tails for a chain of length l below an n-element poset.
    Pedestal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
    },
    /// Cumulative function of an ordinal sum of antichains, top part first.
    Ordsum {
        /// Composition, comma separated.
        composition: String,
    },
    /// Sorting function of the broom T_n ⊕ C_{k+1}.
    Broom { n: usize, k: usize },
    /// Dominance among rearranged ordinal sums versus the weak order.
    WeakOrder {
        /// Strictly increasing composition, comma separated.
        composition: String,
    },
    /// All posets of a given size up to isomorphism, one JSON per line.
    GenPosets {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        connected: bool,
        /// Write here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the tangled-count bounds on every small poset.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Conjecture::All)]
        conjecture: Conjecture,
        /// Include disconnected posets.
        #[arg(long)]
        all_posets: bool,
        /// Also report sorting functions that are not unimodal.
        #[arg(long)]
        unimodality: bool,
    },
    /// Graphviz rendering of the Hasse diagram.
    ExportDot {
        #[command(flatten)]
        input: PosetArg,
        #[arg(long)]
        labeling: Option<String>,
    },
}

/// Largest size `verify` runs without `--force`.
const VERIFY_MAX_N: usize = 6;

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let g = cli.global;
    match cli.command {
        Command::Promote { input, steps } => commands::promote(&g, &input, steps),
        Command::Order { input } => commands::order(&g, &input),
        Command::Gf { input } => commands::gf(&g, &input),
        Command::Tangled { input, by_element } => commands::tangled(&g, &input, by_element),
        Command::Lift { input, indices } => commands::lift(&g, &input, &indices),
        Command::Irf { spec, route, enumerate } => commands::irf(&g, &spec, route, enumerate),
        Command::Wposet { a, b, c, d, enumerate } => commands::wposet(&g, [a, b, c, d], enumerate),
        Command::Attach { poset, coeffs, k, mode } => commands::attach(&g, poset.as_deref(), coeffs.as_deref(), k, mode),
        Command::Pedestal { n, l } => commands::pedestal(&g, n, l),
        Command::Ordsum { composition } => commands::ordsum(&g, &composition),
        Command::Broom { n, k } => commands::broom(&g, n, k),
        Command::WeakOrder { composition } => commands::weak_order(&g, &composition),
        Command::GenPosets { n, connected, out } => commands::gen_posets(&g, n, connected, out.as_deref()),
        Command::Verify { max_n, conjecture, all_posets, unimodality } => {
            if max_n > VERIFY_MAX_N && !g.force {
                return Err(Error::Budget { n: max_n, cap: VERIFY_MAX_N });
            }
            commands::verify(&g, max_n, conjecture, !all_posets, unimodality)
        }
        Command::ExportDot { input, labeling } => commands::export_dot(&input, labeling.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e @ Error::Budget { .. }) => {
            eprintln!("promosort: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("promosort: {e}");
            ExitCode::from(1)
        }
    }
}
