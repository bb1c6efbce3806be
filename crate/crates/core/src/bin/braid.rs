use std::path::PathBuf;

use clap::{Parser, Subcommand};

use braid_orbits::cli::{
    cmd_braid, cmd_braid_coset, cmd_census, CliError, Equivalence, Mode, RunOptions,
};

/// Braid orbits of generating tuples in finite permutation groups.
#[derive(Parser)]
#[command(name = "braid", version, about)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute all braid orbits for the classes of a tuple.
    Braid {
        /// Group file: first line `degree n`, then one generator per line.
        #[arg(long)]
        group: PathBuf,
        /// Comma-separated permutations (or class labels like 2A) denoting
        /// the classes; the tuple need not have product 1.
        #[arg(long)]
        tuple: String,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Switch to the action on cosets of a core-free subgroup and run with
    /// the normalizer as the equivalence group.
    BraidCoset {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        tuple: String,
        /// Subgroup file in the same degree as the group.
        #[arg(long)]
        subgroup: PathBuf,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Enumerate genus-zero signatures and their braid orbits.
    Census {
        #[arg(long)]
        group: PathBuf,
        /// Smallest tuple length to consider.
        #[arg(long, default_value_t = 3)]
        r_min: usize,
        /// Largest tuple length to consider.
        #[arg(long, default_value_t = 4)]
        r_max: usize,
        #[command(flatten)]
        run: RunFlags,
    },
}

#[derive(clap::Args)]
struct RunFlags {
    /// Project directory name; previous contents are removed.
    #[arg(long, default_value = "TEMP")]
    project: String,
    /// Parent directory for project output.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// exact: run the countdown to zero; threshold: stop when fewer tuples
    /// remain than |G/Z(G)|; unlimited: stop after idle rounds.
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// RNG seed; fixed seeds make runs byte-reproducible.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Store tuples up to inner conjugation, or up to the normalizer.
    #[arg(long, value_enum, default_value_t = Equivalence::Inner)]
    equivalence: Equivalence,
    /// File of extra generators for the normalizer (needed past the
    /// brute-force degree bound).
    #[arg(long)]
    normalizer_gens: Option<PathBuf>,
    /// Abort orbits past this many stored representatives.
    #[arg(long)]
    orbit_cap: Option<usize>,
    /// Random tuples per round.
    #[arg(long)]
    batch: Option<usize>,
}

impl RunFlags {
    fn options(&self) -> RunOptions {
        RunOptions {
            project: self.project.clone(),
            project_parent: self.out.clone(),
            mode: self.mode,
            seed: self.seed,
            equivalence: self.equivalence,
            normalizer_gens: self.normalizer_gens.clone(),
            orbit_cap: self.orbit_cap,
            batch: self.batch,
        }
    }
}

fn main() {
    let args = Args::parse();
    let mut out = std::io::stdout().lock();
    let result: Result<(), CliError> = match &args.command {
        Command::Braid { group, tuple, run } => {
            cmd_braid(group, tuple, &run.options(), &mut out).map(|_| ())
        }
        Command::BraidCoset {
            group,
            tuple,
            subgroup,
            run,
        } => cmd_braid_coset(group, tuple, subgroup, &run.options(), &mut out).map(|_| ()),
        Command::Census {
            group,
            r_min,
            r_max,
            run,
        } => cmd_census(group, *r_min, *r_max, &run.options(), &mut out).map(|_| ()),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
