use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tfpm::exact::kernel_lattice;
use tfpm::fiber::{markov_degree_check, markov_degree_check_symmetric, DegreeCheckReport, DEFAULT_CAP};
use tfpm::holes::{fundamental_holes, verify_separation};
use tfpm::markov::kernel_markov_basis;
use tfpm::model::{DesignMatrix, ModelSpec};
use tfpm::moves::MoveSet;
use tfpm::notation::{parse_tensor, tensor_text, SymmetryGroup, Tableau};
use tfpm::tfp::{degree_bound, lifts};
use tfpm_cli::pipeline::Pipeline;
use tfpm_cli::repro;

#[derive(Parser, Debug)]
#[command(name = "tfpm", version, about = "Exact Markov bases of K_{3,N} via toric fiber products")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// k3n:N, three-star, k4tilde or file:PATH (one facet per line, 1-based labels)
    #[arg(long, global = true, default_value = "k4tilde")]
    model: String,

    #[arg(long, global = true, value_enum, default_value_t = Format::Tensor)]
    format: Format,

    /// largest table size or move degree to consider
    #[arg(long, global = true, value_parser = clap::value_parser!(i64).range(1..))]
    maxdeg: Option<i64>,

    /// largest number of tables kept per fiber
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,

    /// allow computations that take hours
    #[arg(long, global = true)]
    expensive: bool,

    /// directory for result files
    #[arg(long, global = true, env = "TFPM_OUT")]
    out: Option<PathBuf>,

    /// visit every fiber instead of one per symmetry orbit
    #[arg(long, global = true)]
    full_check: bool,

    /// upper limit on worker threads
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    #[value(name = "4ti2")]
    FourTiTwo,
    Tensor,
    Tableau,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the design matrix of --model
    Model,
    /// Print a basis of the kernel lattice of --model
    Kernel,
    /// Compute a minimal Markov basis of --model by completion
    Markov,
    /// Fundamental holes, hole families and the separation check
    Holes,
    /// The Markov basis of the projected fiber system
    PfBasis,
    /// Lifts of a triangle move given as eight comma-separated integers
    Lift { g: String },
    /// Assemble a Markov basis of K_{3,N} from glued lifts
    Assemble { n: usize },
    /// Check that the assembled basis of K_{3,N} connects all fibers up to --maxdeg
    Verify { n: usize },
    /// Essential Markov degree of K_{3,N}
    Degrees { n: usize },
    /// Recompute the published numbers and print a comparison table
    Repro,
}

/// Exit statuses: success, a failed verification, a usage error.
enum Failure {
    Verification(String),
    Usage(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn design(spec: &str) -> Result<DesignMatrix, Failure> {
    let model = match spec.strip_prefix("file:") {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            ModelSpec::parse_facets(&text)
        }
        None => ModelSpec::parse(spec),
    }
    .map_err(|e| Failure::Usage(e.to_string()))?;
    DesignMatrix::binary(&model).map_err(|e| Failure::Usage(e.to_string()))
}

fn render_moves(moves: &MoveSet, nodes: usize, format: Format) -> String {
    match format {
        Format::FourTiTwo => moves.to_4ti2(),
        Format::Tensor => moves.iter().map(|m| tensor_text(m) + "\n").collect(),
        Format::Tableau => moves
            .iter()
            .map(|m| match Tableau::from_move(m, nodes) {
                Ok(t) => format!("{t}\n"),
                Err(_) => tensor_text(m) + "\n",
            })
            .collect(),
    }
}

/// Writes `text` to `name` inside the output directory, or prints it.
fn emit(cli: &Cli, name: &str, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let path = dir.join(name);
            fs::write(&path, text)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn basis_file(n: usize) -> String {
    format!("k3n-{n}.mar")
}

fn stats(moves: &MoveSet) -> String {
    let parts: Vec<String> = moves.degree_stats().iter().map(|(d, c)| format!("{d}:{c}")).collect();
    parts.join(" ")
}

fn check_factor_count(n: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Usage("N must be at least 1".into()));
    }
    Ok(())
}

/// Default generator degree for assembling `K_{3,N}`: the full bound for
/// `N ≤ 2`, and six beyond that unless `--expensive` is given.
fn assembly_degree(cli: &Cli, n: usize) -> i64 {
    cli.maxdeg.unwrap_or(if n <= 2 || cli.expensive { degree_bound(n) } else { 6 })
}

fn load_or_assemble(cli: &Cli, n: usize, pipeline: &mut Option<Pipeline>) -> Result<MoveSet, Failure> {
    if let Some(dir) = &cli.out {
        let path = dir.join(basis_file(n));
        if path.exists() {
            return read_moves(&path);
        }
    }
    let p = pipeline.get_or_insert_with(Pipeline::new);
    Ok(p.assemble(n, assembly_degree(cli, n)))
}

fn read_moves(path: &Path) -> Result<MoveSet, Failure> {
    let text = fs::read_to_string(path)?;
    MoveSet::parse_4ti2(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn check_fibers(cli: &Cli, n: usize, basis: &MoveSet, maxdeg: i64) -> Result<DegreeCheckReport, Failure> {
    let model = DesignMatrix::k3n(n);
    let report = if cli.full_check {
        markov_degree_check(model.matrix(), basis, maxdeg, cli.cap)
    } else {
        markov_degree_check_symmetric(model.matrix(), basis, maxdeg, cli.cap, &SymmetryGroup::k3n(n))
    };
    report.map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Model => {
            let d = design(&cli.model)?;
            emit(cli, "model.mat", &d.matrix().to_string())
        }
        Command::Kernel => {
            let d = design(&cli.model)?;
            let lattice = kernel_lattice(d.matrix());
            emit(cli, "model.lat", &lattice.generator_matrix().to_string())
        }
        Command::Markov => {
            let d = design(&cli.model)?;
            let basis = kernel_markov_basis(&d);
            eprintln!("{} moves, degrees {}", basis.len(), stats(&basis));
            emit(cli, "model.mar", &render_moves(&basis, d.states().nodes(), cli.format))
        }
        Command::Holes => holes(cli),
        Command::PfBasis => {
            let p = Pipeline::new();
            eprintln!("{} moves, degrees {}", p.pf_basis.len(), stats(&p.pf_basis));
            emit(cli, "pf.mar", &render_moves(&p.pf_basis, 3, cli.format))
        }
        Command::Lift { g } => {
            let g = parse_tensor(g).map_err(|e| Failure::Usage(e.to_string()))?;
            let ls = lifts(&g).map_err(|e| Failure::Usage(e.to_string()))?;
            eprintln!("{} lifts", ls.len());
            let set = MoveSet::from_moves(ls.into_iter().map(|l| l.vector));
            emit(cli, "lifts.mar", &render_moves(&set, 4, cli.format))
        }
        Command::Assemble { n } => {
            check_factor_count(*n)?;
            let maxdeg = assembly_degree(cli, *n);
            let basis = Pipeline::new().assemble(*n, maxdeg);
            eprintln!("K_{{3,{n}}}: {} moves from generators of degree <= {maxdeg}, degrees {}", basis.len(), stats(&basis));
            let text = match cli.format {
                Format::FourTiTwo => basis.to_4ti2(),
                _ => render_moves(&basis, 3 + n, cli.format),
            };
            emit(cli, &basis_file(*n), &text)
        }
        Command::Verify { n } => {
            check_factor_count(*n)?;
            let maxdeg = cli.maxdeg.unwrap_or(degree_bound(*n));
            let basis = load_or_assemble(cli, *n, &mut None)?;
            let report = check_fibers(cli, *n, &basis, maxdeg)?;
            println!(
                "K_{{3,{n}}}: {} fibers, {} tables up to size {maxdeg}; moves up to degree {} suffice",
                report.fibers_checked, report.tables_checked, report.essential_degree
            );
            match report.witness {
                None => Ok(()),
                Some((margin, u, v)) => Err(Failure::Verification(format!("margin {margin:?} separates {u:?} from {v:?}"))),
            }
        }
        Command::Degrees { n } => degrees(cli, *n),
        Command::Repro => {
            let rows = repro::run(&Pipeline::new(), cli.expensive);
            let table = repro::render(&rows);
            emit(cli, "repro.txt", &table)?;
            if rows.iter().all(|r| r.agrees) {
                Ok(())
            } else {
                Err(Failure::Verification("some computed values differ from the published ones".into()))
            }
        }
    }
}

fn holes(cli: &Cli) -> Result<(), Failure> {
    let d = design(&cli.model)?;
    let holes = fundamental_holes(&d);
    let vectors: Vec<Vec<i64>> = holes.iter().map(|h| h.vector.clone()).collect();
    let mut out = format!("{} fundamental holes\n", holes.len());
    let mut all_verified = true;
    for (i, h) in holes.iter().enumerate() {
        out.push_str(&format!("h{} = {}\n", i + 1, tensor_text(&tfpm::moves::Move::new(h.vector.clone()))));
        for w in &h.witness_identities {
            let ok = w.verify(d.matrix(), &vectors);
            all_verified &= ok;
            let lhs: Vec<String> = w
                .hole_coefficients
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(j, &c)| if c == 1 { format!("h{}", j + 1) } else { format!("{c}h{}", j + 1) })
                .collect();
            let columns: Vec<String> = w
                .columns
                .iter()
                .enumerate()
                .flat_map(|(s, &c)| std::iter::repeat_n(tfpm::notation::row_string(s, d.states().nodes()), c as usize))
                .collect();
            out.push_str(&format!("  {} = B[{}]  {}\n", lhs.join(" + "), columns.join(","), if ok { "verified" } else { "FAILED" }));
        }
    }
    let families = tfpm::holes::hole_families(&d);
    out.push_str(&format!("{} hole families\n", families.len()));
    for (i, f) in families.iter().enumerate() {
        let dirs: Vec<String> = f.directions.iter().map(|&c| tfpm::notation::row_string(c, d.states().nodes())).collect();
        let functional: Vec<String> = f.separating_functional.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!(
            "  family {}: base {}, root {:?}, directions [{}], functional [{}]\n",
            i + 1,
            tensor_text(&tfpm::moves::Move::new(f.base.vector.clone())),
            f.root,
            dirs.join(","),
            functional.join(",")
        ));
    }
    let report = verify_separation(&d, &families, cli.maxdeg.unwrap_or(3));
    out.push_str(&report.to_string());
    emit(cli, "holes.txt", &out)?;
    if !all_verified {
        return Err(Failure::Verification("a hole identity does not hold".into()));
    }
    if !report.passed() {
        return Err(Failure::Verification("the separation check failed".into()));
    }
    Ok(())
}

/// The essential degree: the own completion followed by a fiber check up to
/// `--maxdeg` for `N ≤ 2` (or with `--expensive`); otherwise the assembled
/// basis up to degree six and the fiber check at that degree.
fn degrees(cli: &Cli, n: usize) -> Result<(), Failure> {
    check_factor_count(n)?;
    let model = DesignMatrix::k3n(n);
    let (basis, maxdeg, source) = if n <= 2 || cli.expensive {
        (kernel_markov_basis(&model), cli.maxdeg.unwrap_or(degree_bound(n)), "own completion")
    } else {
        let maxdeg = cli.maxdeg.unwrap_or(6);
        (Pipeline::new().assemble(n, maxdeg), maxdeg, "assembled basis")
    };
    let report = check_fibers(cli, n, &basis, maxdeg)?;
    eprintln!(
        "{source}: {} moves, degrees {}; fibers up to size {maxdeg}: {} checked",
        basis.len(),
        stats(&basis),
        report.fibers_checked
    );
    if let Some((margin, ..)) = report.witness {
        return Err(Failure::Verification(format!("fiber with margin {margin:?} is disconnected")));
    }
    println!("{}", report.essential_degree);
    Ok(())
}
