use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use qukit::chains::{self, Boundary, XYParams};
use qukit::dirac::ex;
use qukit::entangle::{self, SearchResult};
use qukit::pauli_io::{self, format_g, DECOMPOSE_THRESHOLD, PRINTV_THRESHOLD};
use qukit::permute::{self, ShiftDirection};
use qukit::random::{self, RandomSource};
use qukit::states::{self, pauli, GraphSpec};
use qukit::util::mineig;
use qukit::{
    BipartitionMask, DensityMatrix, Document, Error, Permutation, QuantumOperator, RegisterShape, Result, SearchParams,
    StateLike, StateVector, Storage,
};

use crate::args::*;

pub enum Output {
    Doc(Document),
    Text(String),
}

fn text(s: impl Into<String>) -> Result<Output> {
    Ok(Output::Text(s.into()))
}

fn scalar(x: f64) -> Result<Output> {
    text(format_g(x, 6))
}

fn doc(d: impl Into<Document>) -> Result<Output> {
    Ok(Output::Doc(d.into()))
}

pub fn emit(cli: &Cli, out: &Output) -> Result<()> {
    let mut body = match out {
        Output::Doc(d) => d.to_json()?,
        Output::Text(t) => t.clone(),
    };
    body.push('\n');
    let io_err = |e: std::io::Error| Error::Format(format!("write failed: {e}"));
    match &cli.out {
        Some(path) => fs::write(path, body).map_err(io_err),
        None => std::io::stdout().write_all(body.as_bytes()).map_err(io_err),
    }
}

fn read_text(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Error::Format(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Format(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn read_doc(cli: &Cli) -> Result<Document> {
    Document::from_json(&read_text(cli.input.as_deref())?)
}

fn read_state(cli: &Cli) -> Result<StateLike> {
    read_doc(cli)?.into_state()
}

fn read_ket(cli: &Cli) -> Result<StateVector> {
    match read_doc(cli)? {
        Document::Ket(v) => Ok(v),
        other => Err(Error::Format(format!("expected a ket, found {:?}", other.kind()).to_lowercase())),
    }
}

fn rng(cli: &Cli) -> RandomSource {
    let seed = cli.seed.unwrap_or_else(rand::random);
    eprintln!("seed: {seed}");
    RandomSource::seed_from_u64(seed)
}

fn storage(sparse: bool) -> Storage {
    if sparse {
        Storage::Sparse
    } else {
        Storage::Dense
    }
}

fn need<T>(v: Option<T>, flag: &str, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidArgument(format!("{name} needs --{flag}")))
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::State(StateCmd::Make(a)) => make_state(a),
        Command::State(StateCmd::Print(a)) | Command::Print(a) => print_state(cli, a),
        Command::Op(OpCmd::Build(a)) | Command::Build(a) => build(a),
        Command::Op(OpCmd::Decompose(a)) | Command::Decompose(a) => {
            let op = read_doc(cli)?.into_operator()?;
            text(pauli_io::decompose(&op, a.latex, a.threshold.unwrap_or(DECOMPOSE_THRESHOLD))?)
        }
        Command::Reg(r) => register(cli, r),
        Command::Chain(c) => chain(c),
        Command::Ent(e) => entanglement(cli, e),
        Command::Rand(r) => randomness(cli, r),
    }
}

fn make_state(a: &MakeArgs) -> Result<Output> {
    let n = || need(a.n, "n", "this state");
    match a.name {
        StateName::Ghz => doc(states::ghzstate(n()?)?),
        StateName::W => doc(states::wstate(n()?)?),
        StateName::Dicke => doc(states::dstate(need(a.m, "m", "dicke")?, n()?)?),
        StateName::Graph => {
            let n = n()?;
            let edges = parse_edges(&need(a.edges.clone(), "edges", "graph")?)?;
            doc(states::gstate(&GraphSpec::from_edges(n, &edges)?)?)
        }
        StateName::Cluster => doc(states::cstate(n()?)?),
        StateName::Ring => doc(states::rstate(n()?)?),
        StateName::Singlet => doc(states::singlet(a.n.unwrap_or(2))?),
        StateName::Me => doc(states::mestate(a.d)?),
        StateName::Mm => doc(states::mmstate(RegisterShape::new(n()?, a.d)?)),
        StateName::Basis => {
            let shape = RegisterShape::new(n()?, a.d)?;
            doc(StateVector::basis(a.m.unwrap_or(0), shape)?)
        }
        StateName::Smolin => doc(states::smolinstate()?),
        StateName::Horodecki3x3 => doc(states::bes_horodecki3x3(need(a.a, "a", "horodecki3x3")?)?),
        StateName::Horodecki4x2 => doc(states::bes_horodecki4x2(need(a.a, "a", "horodecki4x2")?)?),
        StateName::Upb => doc(states::bes_upb3x3()?),
    }
}

/// `1-2,2-3` to zero-based vertex pairs.
fn parse_edges(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let bad = || Error::InvalidArgument(format!("edge `{t}` is not of the form i-j"));
            let (a, b) = t.split_once('-').ok_or_else(bad)?;
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().parse().map_err(|_| bad())?;
            if a == 0 || b == 0 {
                return Err(bad());
            }
            Ok((a - 1, b - 1))
        })
        .collect()
}

fn print_state(cli: &Cli, a: &PrintArgs) -> Result<Output> {
    let v = read_ket(cli)?;
    text(pauli_io::printv(&v, a.threshold.unwrap_or(PRINTV_THRESHOLD))?)
}

fn build(a: &BuildArgs) -> Result<Output> {
    doc(pauli_io::parse_pauli(&a.pauli)?.to_operator(storage(a.sparse))?)
}

fn register(cli: &Cli, r: &RegCmd) -> Result<Output> {
    let input = read_doc(cli)?;
    match r {
        RegCmd::Reorder { perm } => {
            let perm = Permutation::new(perm.clone())?;
            match input {
                Document::Op(op) => doc(permute::reorder_operator(&op, &perm)?),
                other => doc(permute::reorder(&other.into_state()?, &perm)?),
            }
        }
        RegCmd::Keep(q) => doc(permute::keep(&input.into_state()?, &q.qudits)?),
        RegCmd::Remove(q) => doc(permute::remove(&input.into_state()?, &q.qudits)?),
        RegCmd::Shift { direction } => {
            let dir = match direction {
                Direction::Left => ShiftDirection::Left,
                Direction::Right => ShiftDirection::Right,
            };
            doc(permute::shift_qudits(&input.into_state()?, dir)?)
        }
        RegCmd::Swap { k, l } => doc(permute::swapqudits(&input.into_state()?, *k, *l)?),
    }
}

fn chain_result(h: QuantumOperator, out: &ChainOutput) -> Result<Output> {
    if out.ground_energy {
        return scalar(mineig(&h)?);
    }
    if let Some(t) = out.thermal {
        let rho = chains::thstate(&h, t)?;
        return scalar(ex(&h, &rho)?.re);
    }
    doc(h)
}

fn chain(c: &ChainCmd) -> Result<Output> {
    let bc = |o: &ChainOutput| Boundary::from_periodic(o.periodic);
    match c {
        ChainCmd::Ising { n, b, out } => chain_result(chains::ising(*b, *n, bc(out), storage(out.sparse))?, out),
        ChainCmd::Heisenberg { n, out } => chain_result(chains::heisenberg(*n, bc(out), storage(out.sparse))?, out),
        ChainCmd::Xy { n, jx, jy, b, out } => {
            let p = XYParams::new(*jx, *jy, *b)?;
            chain_result(chains::xy_hamiltonian(&p, *n, bc(out), storage(out.sparse))?, out)
        }
        ChainCmd::Lattice2d { nx, ny, coupling, out } => {
            let op = match coupling {
                Coupling::Xx => pauli::x(),
                Coupling::Yy => pauli::y(),
                Coupling::Zz => pauli::z(),
            };
            chain_result(chains::lattice2d(&op, &op, *nx, *ny, bc(out), storage(out.sparse))?, out)
        }
        ChainCmd::Ising2d { nx, ny, b, out } => {
            chain_result(chains::ising2d(*b, *nx, *ny, bc(out), storage(out.sparse))?, out)
        }
        ChainCmd::IsingGround { b, n } => scalar(chains::ising_ground(*b, *n)?),
        ChainCmd::IsingFree { b, t } => scalar(chains::ising_free(*b, *t)?),
        ChainCmd::IsingThermal { b, t, n } => scalar(chains::ising_thermal(*b, *t, *n)?),
    }
}

fn search_params(par: &Option<Vec<f64>>) -> Result<SearchParams> {
    match par.as_deref() {
        None => Ok(SearchParams::default()),
        Some([a, b, c]) => {
            let count = |x: f64| {
                if x.fract() == 0.0 && x >= 1.0 {
                    Ok(x as usize)
                } else {
                    Err(Error::InvalidArgument(format!("trial count {x} is not a positive integer")))
                }
            };
            SearchParams::new(count(*a)?, count(*b)?, *c)
        }
        Some(other) => Err(Error::InvalidArgument(format!("--par needs 3 values, got {}", other.len()))),
    }
}

fn search_op(cli: &Cli, s: &SearchArgs) -> Result<QuantumOperator> {
    let path = s.op.as_deref().or(cli.input.as_deref());
    Document::from_json(&read_text(path)?)?.into_operator()
}

fn search_value(r: SearchResult) -> Result<Output> {
    scalar(r.value)
}

fn entanglement(cli: &Cli, e: &EntCmd) -> Result<Output> {
    match e {
        EntCmd::Negativity(q) => scalar(entangle::negativity(&read_state(cli)?, &q.qudits)?),
        EntCmd::Ccnr { split } => scalar(entangle::ccnr(&read_state(cli)?, *split)?),
        EntCmd::Concurrence => {
            let rho: DensityMatrix = read_state(cli)?.into_density()?;
            scalar(entangle::concurrence(&rho)?)
        }
        EntCmd::Schmidt(q) => {
            let v = read_ket(cli)?;
            let mask = BipartitionMask::new(&q.qudits, v.shape().n_qudits())?;
            let s = entangle::schmidt(&v, &mask)?;
            text(s.iter().map(|x| format_g(*x, 6)).collect::<Vec<_>>().join(" "))
        }
        EntCmd::Overlapb => scalar(entangle::overlapb(&read_ket(cli)?)?),
        EntCmd::Optspinsq => {
            let r = entangle::optspinsq(&read_state(cli)?)?;
            let f: Vec<String> = r.f123.iter().map(|x| format_g(*x, 6)).collect();
            text(format!("{}\n{}", format_g(r.fmin, 6), f.join(" ")))
        }
        EntCmd::Maxsep(s) => {
            let op = search_op(cli, s)?;
            search_value(entangle::maxsep(&op, &search_params(&s.par)?, &mut rng(cli))?)
        }
        EntCmd::Maxsymsep(s) => {
            let op = search_op(cli, s)?;
            search_value(entangle::maxsymsep(&op, &search_params(&s.par)?, &mut rng(cli))?)
        }
        EntCmd::Maxbisep { search, qudits } => {
            let op = search_op(cli, search)?;
            let mask = BipartitionMask::new(qudits, op.shape().n_qudits())?;
            search_value(entangle::maxbisep(&op, &mask, &search_params(&search.par)?, &mut rng(cli))?)
        }
        EntCmd::Maxb(s) => {
            let op = search_op(cli, s)?;
            search_value(entangle::maxb(&op, &search_params(&s.par)?, &mut rng(cli))?.0)
        }
    }
}

fn randomness(cli: &Cli, r: &RandCmd) -> Result<Output> {
    match r {
        RandCmd::Vec(s) => doc(random::rvec(s.n, s.d, &mut rng(cli))?),
        RandCmd::Product(s) => doc(random::rproduct(s.n, s.d, &mut rng(cli))?),
        RandCmd::Dmat(s) => doc(random::rdmat(s.n, s.d, &mut rng(cli))?),
        RandCmd::Unitary(s) => doc(random::runitary(s.n, s.d, &mut rng(cli))?),
        RandCmd::Twirl { iters } => {
            let state = read_state(cli)?;
            let (out, diff) = random::twirl(&state, *iters, &mut rng(cli))?;
            eprintln!("difference: {}", format_g(diff, 6));
            doc(out)
        }
    }
}
