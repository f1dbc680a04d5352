use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qukit", version, about = "States, operators, spin chains and entanglement criteria for qudit registers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for every stochastic command; drawn from entropy when absent.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Input file; standard input when absent.
    #[arg(long = "in", global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,

    /// Output file; standard output when absent.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct and print states.
    #[command(subcommand)]
    State(StateCmd),
    /// Construct and decompose operators.
    #[command(subcommand)]
    Op(OpCmd),
    /// Rearrange and trace out qudits.
    #[command(subcommand)]
    Reg(RegCmd),
    /// Spin-chain Hamiltonians and closed-form Ising results.
    #[command(subcommand)]
    Chain(ChainCmd),
    /// Entanglement criteria and separable maxima.
    #[command(subcommand)]
    Ent(EntCmd),
    /// Random states, unitaries and twirling.
    #[command(subcommand)]
    Rand(RandCmd),
    /// Same as `state print`.
    Print(PrintArgs),
    /// Same as `op decompose`.
    Decompose(DecomposeArgs),
    /// Same as `op build`.
    Build(BuildArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StateName {
    Ghz,
    W,
    Dicke,
    Graph,
    Cluster,
    Ring,
    Singlet,
    Me,
    Mm,
    Basis,
    Smolin,
    Horodecki3x3,
    Horodecki4x2,
    Upb,
}

#[derive(Debug, Subcommand)]
pub enum StateCmd {
    /// Write a named state.
    Make(MakeArgs),
    /// Print a qubit ket as a sum of basis kets.
    Print(PrintArgs),
}

#[derive(Debug, Args)]
pub struct MakeArgs {
    pub name: StateName,
    /// Number of qudits.
    #[arg(long)]
    pub n: Option<usize>,
    /// Qudit dimension.
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Excitation number (dicke) or basis index (basis).
    #[arg(long)]
    pub m: Option<usize>,
    /// Family parameter (horodecki3x3, horodecki4x2).
    #[arg(long)]
    pub a: Option<f64>,
    /// Graph edges as `1-2,2-3`.
    #[arg(long)]
    pub edges: Option<String>,
}

#[derive(Debug, Args)]
pub struct PrintArgs {
    /// Components below this magnitude are dropped.
    #[arg(long)]
    pub threshold: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum OpCmd {
    /// Build an operator from a Pauli expression.
    Build(BuildArgs),
    /// Write an operator as a sum of Pauli words.
    Decompose(DecomposeArgs),
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Expression such as `xx+yy+zz` or `0.5*xe-ze`; `e` is the identity.
    #[arg(long)]
    pub pauli: String,
    #[arg(long)]
    pub sparse: bool,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub latex: bool,
    #[arg(long)]
    pub threshold: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum RegCmd {
    /// Reorder qudits; `--perm 3,1,2` lists the source qudit of each slot from N down to 1.
    Reorder {
        #[arg(long, value_delimiter = ',', required = true)]
        perm: Vec<usize>,
    },
    /// Reduced state on the listed qudits.
    Keep(QuditsArg),
    /// Trace out the listed qudits.
    Remove(QuditsArg),
    /// Cyclic shift of all qudits.
    Shift {
        #[arg(long, value_enum, default_value = "left")]
        direction: Direction,
    },
    /// Exchange two qudits.
    Swap {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Direction {
    Left,
    Right,
}

#[derive(Debug, Args)]
pub struct QuditsArg {
    /// Comma-separated qudit indices, 1-based.
    #[arg(long, value_delimiter = ',', required = true)]
    pub qudits: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct ChainOutput {
    #[arg(long)]
    pub periodic: bool,
    #[arg(long)]
    pub sparse: bool,
    /// Print the lowest eigenvalue instead of the operator.
    #[arg(long, conflicts_with = "thermal")]
    pub ground_energy: bool,
    /// Print the thermal energy at this temperature instead of the operator.
    #[arg(long, value_name = "T")]
    pub thermal: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Coupling {
    Xx,
    Yy,
    Zz,
}

#[derive(Debug, Subcommand)]
pub enum ChainCmd {
    /// `-sum z z + b sum x`.
    Ising {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[command(flatten)]
        out: ChainOutput,
    },
    /// `sum (x x + y y + z z)`.
    Heisenberg {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: ChainOutput,
    },
    /// `sum (jx x x + jy y y) + b sum x`.
    Xy {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        jx: f64,
        #[arg(long, allow_hyphen_values = true)]
        jy: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        b: f64,
        #[command(flatten)]
        out: ChainOutput,
    },
    /// Nearest-neighbour coupling on an nx by ny lattice.
    Lattice2d {
        #[arg(long)]
        nx: usize,
        #[arg(long)]
        ny: usize,
        #[arg(long, value_enum, default_value = "zz")]
        coupling: Coupling,
        #[command(flatten)]
        out: ChainOutput,
    },
    /// Transverse-field Ising model on an nx by ny lattice.
    Ising2d {
        #[arg(long)]
        nx: usize,
        #[arg(long)]
        ny: usize,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[command(flatten)]
        out: ChainOutput,
    },
    /// Ground energy per site, infinite chain or periodic chain of `--n` sites.
    IsingGround {
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Free energy per site of the infinite chain.
    IsingFree {
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long)]
        t: f64,
    },
    /// Internal energy per site, infinite chain or periodic chain of `--n` sites.
    IsingThermal {
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Operator file.
    #[arg(long, value_name = "FILE")]
    pub op: Option<PathBuf>,
    /// Phase-1 trials, phase-2 trials, step constant.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub par: Option<Vec<f64>>,
}

#[derive(Debug, Subcommand)]
pub enum EntCmd {
    /// Sum of the negative eigenvalues of the partial transpose, in magnitude.
    Negativity(QuditsArg),
    /// Trace norm of the realigned state.
    Ccnr {
        /// Number of most significant qudits in the first block.
        #[arg(long)]
        split: Option<usize>,
    },
    /// Two-qubit concurrence.
    Concurrence,
    /// Schmidt coefficients across the cut separating `--qudits`.
    Schmidt(QuditsArg),
    /// Largest squared Schmidt coefficient over all cuts.
    Overlapb,
    /// Spin-squeezing inequalities: `fmin`, then the three margins.
    Optspinsq,
    /// Largest expectation value over product states.
    Maxsep(SearchArgs),
    /// Largest expectation value over symmetric product states.
    Maxsymsep(SearchArgs),
    /// Largest expectation value over states that are product across one cut.
    Maxbisep {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        qudits: Vec<usize>,
    },
    /// Largest expectation value over all biseparable cuts.
    Maxb(SearchArgs),
}

#[derive(Debug, Args)]
pub struct ShapeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
}

#[derive(Debug, Subcommand)]
pub enum RandCmd {
    /// Haar-random pure state.
    Vec(ShapeArgs),
    /// Product of Haar-random single-qudit states.
    Product(ShapeArgs),
    /// Random density matrix.
    Dmat(ShapeArgs),
    /// Haar-random unitary.
    Unitary(ShapeArgs),
    /// Average over collective unitaries; prints the difference to standard error.
    Twirl {
        #[arg(long, default_value_t = 100)]
        iters: usize,
    },
}
