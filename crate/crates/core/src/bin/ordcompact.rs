use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ordcompact::cli::{run, Command, Options, Verb};

#[derive(Parser)]
#[command(name = "ordcompact", version, about = "Compactness witnesses for countable linear orders")]
struct Cli {
    #[command(subcommand)]
    verb: VerbArg,
}

#[derive(Subcommand)]
enum VerbArg {
    /// Decide whether a finite family of intervals covers the order
    CheckCover(Flags),
    /// Search a cover of a finite order for a finite subcover
    Subcover(Flags),
    /// Find a subcover or a staged cut
    GapFind(Flags),
    /// List tree nodes in Kleene-Brouwer order
    KbSort(Flags),
    /// Immediate predecessor and successor of a node
    KbNeighbors(Flags),
    /// Extract a path from an upper-set oracle
    ExtractPath(Flags),
    /// Decode range membership from a cover of the injection space
    InjectionDemo(Flags),
    /// Flatten an honest sequence of open sets
    Flatten(Flags),
    /// Check the strong-base axioms on samples
    VerifyBase(Flags),
}

#[derive(Args)]
struct Flags {
    /// Order file, or gallery:NAME
    #[arg(long)]
    order: Option<String>,
    /// Cover file, or gallery-gap:NAME
    #[arg(long)]
    cover: Option<String>,
    /// Tree file, or builtin:NAME
    #[arg(long)]
    tree: Option<String>,
    /// Node as comma-separated entries, `-` for the root
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<String>,
    /// Injection name: double, odd or square
    #[arg(long)]
    injection: Option<String>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    scan: Option<u64>,
    #[arg(long)]
    depth: Option<u64>,
    #[arg(long)]
    sample: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (verb, f) = match cli.verb {
        VerbArg::CheckCover(f) => (Verb::CheckCover, f),
        VerbArg::Subcover(f) => (Verb::Subcover, f),
        VerbArg::GapFind(f) => (Verb::GapFind, f),
        VerbArg::KbSort(f) => (Verb::KbSort, f),
        VerbArg::KbNeighbors(f) => (Verb::KbNeighbors, f),
        VerbArg::ExtractPath(f) => (Verb::ExtractPath, f),
        VerbArg::InjectionDemo(f) => (Verb::InjectionDemo, f),
        VerbArg::Flatten(f) => (Verb::Flatten, f),
        VerbArg::VerifyBase(f) => (Verb::VerifyBase, f),
    };
    let options = Options {
        order: f.order,
        cover: f.cover,
        tree: f.tree,
        sigma: f.sigma,
        injection: f.injection,
        budget: f.budget,
        scan: f.scan,
        depth: f.depth,
        sample: f.sample,
    };
    let report = run(&Command { verb, options });
    if report.exit_code() == 2 {
        eprint!("{report}");
    } else {
        print!("{report}");
    }
    ExitCode::from(report.exit_code() as u8)
}
