mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::{write_file, Format};

#[derive(Parser, Debug)]
#[command(name = "indres", version, about = "Induced representations and SO(2)-steerable plane-to-sphere layers")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write the result here instead of stdout (relative to $INDRES_OUT_DIR if set).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GroupPair {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub subgroup: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List built-in groups with their orders, classes and irreps.
    Groups {
        #[arg(long)]
        group: Vec<String>,
    },
    /// Decompose a representation into irreps.
    Decompose {
        #[arg(long)]
        group: String,
        /// `regular`, `trivial`, `natural` or an irrep label; `a*b` for tensor products, `a,b` for direct sums.
        #[arg(long)]
        rep: String,
    },
    /// Branching table: multiplicity of each subgroup irrep in each restricted irrep.
    Branch(GroupPair),
    /// Induce a subgroup representation and decompose it.
    Induce {
        #[command(flatten)]
        pair: GroupPair,
        #[arg(long)]
        rep: String,
    },
    /// Check Frobenius reciprocity between the branching and induction tables.
    Frobenius(GroupPair),
    /// Check that inducing the regular representation of the subgroup gives the regular one.
    Completeness(GroupPair),
    /// Solve a steerable kernel basis and report its size.
    KernelBasis(commands::KernelArgs),
    /// Equivariance harness for the plane-to-sphere layer.
    Equivariance(commands::EquivarianceArgs),
    /// Analytic vs finite-difference gradients of the layer.
    Gradcheck(commands::GradArgs),
    /// The tetrahedron lifting example with all table checks.
    TetraDemo,
    /// Demonstrations.
    Demo {
        #[command(subcommand)]
        demo: DemoCommand,
    },
}

#[derive(Subcommand, Debug)]
enum DemoCommand {
    /// Recover the in-plane angle of a rendered pattern from an SO(3) distribution.
    Pose(commands::PoseArgs),
}

fn run(cli: Cli) -> anyhow::Result<Option<bool>> {
    let report = match cli.command {
        Command::Groups { group } => commands::groups(&group)?,
        Command::Decompose { group, rep } => commands::decompose(&group, &rep)?,
        Command::Branch(p) => commands::branch(&p)?,
        Command::Induce { pair, rep } => commands::induce(&pair, &rep)?,
        Command::Frobenius(p) => commands::frobenius(&p)?,
        Command::Completeness(p) => commands::completeness(&p)?,
        Command::KernelBasis(a) => commands::kernel_basis(&a)?,
        Command::Equivariance(a) => commands::equivariance(&a)?,
        Command::Gradcheck(a) => commands::gradcheck(&a)?,
        Command::TetraDemo => commands::tetra_demo()?,
        Command::Demo { demo: DemoCommand::Pose(a) } => commands::pose(&a)?,
    };
    let text = report.render(cli.format)?;
    match &cli.output {
        Some(path) => {
            write_file(path, &text)?;
        }
        None => print!("{text}"),
    }
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Some(false)) => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
