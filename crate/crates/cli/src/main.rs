//! `cutbench` command-line driver.
//!
//! Exit codes: 0 success, 1 tolerance exceeded or nothing to report,
//! 2 invalid input, 3 infeasible cut or blocking constraints,
//! 4 simulation width cap.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cutbench::bench::{
    header_family, memory_csv, run_blocked, run_compare, write_report, CompareOptions,
    MEMORY_TABLE_WIDTHS,
};
use cutbench::cutter::find_cuts;
use cutbench::generate::{gen, Family, GenSpec};
use cutbench::{parse_circuit, serialize_circuit, Circuit, Error};
use serde_json::json;

#[derive(Parser)]
#[command(name = "cutbench", version, about = "Wire-cutting and chunked simulation benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a benchmark circuit.
    Generate(GenerateArgs),
    /// Print the cut plan for a circuit.
    Cut(CutArgs),
    /// Run the cut path and direct simulation and compare them.
    Compare(CompareArgs),
    /// Run chunked simulation and compare with direct simulation.
    Blocked(BlockedArgs),
    /// Tabulate compare records into CSV.
    Report(ReportArgs),
    /// Print statevector memory estimates in GB.
    EstimateMemory(MemoryArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// AQFT: largest kept rotation order.
    #[arg(long)]
    degree: Option<usize>,
    /// AQFT: seeded RY layer before the transform.
    #[arg(long)]
    random_input: bool,
    /// HWEA: entangling layers.
    #[arg(long)]
    layers: Option<usize>,
    /// BV: hidden string, one digit per input qubit.
    #[arg(long)]
    hidden: Option<String>,
    /// Supremacy: grid rows.
    #[arg(long, requires = "cols")]
    rows: Option<usize>,
    /// Supremacy: grid columns.
    #[arg(long, requires = "rows")]
    cols: Option<usize>,
    /// Supremacy: CZ layers.
    #[arg(long)]
    depth: Option<usize>,
    /// Adder: basis input for register a.
    #[arg(long, requires = "b")]
    a: Option<u64>,
    /// Adder: basis input for register b.
    #[arg(long, requires = "a")]
    b: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CutArgs {
    circuit: PathBuf,
    #[arg(long)]
    max_width: usize,
    #[arg(long, default_value_t = 5)]
    max_subcircuits: usize,
    #[arg(long, default_value_t = 10)]
    max_cuts: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    circuit: PathBuf,
    #[arg(long)]
    max_width: usize,
    #[arg(long, default_value_t = 5)]
    max_subcircuits: usize,
    #[arg(long, default_value_t = 10)]
    max_cuts: usize,
    /// Worker threads; 0 uses min(cores, variants).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long, default_value_t = 1e-6)]
    tvd_tol: f64,
    /// Family label; defaults to the circuit file header.
    #[arg(long)]
    family: Option<String>,
    /// Directory for raw variant and reconstructed vectors.
    #[arg(long)]
    spill: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BlockedArgs {
    circuit: PathBuf,
    #[arg(long)]
    nc: usize,
    #[arg(long, default_value_t = 1)]
    spaces: usize,
    #[arg(long, default_value_t = 1e-9)]
    tvd_tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    amp_tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    records: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Memory CSV path; defaults to `<out stem>_memory.csv`.
    #[arg(long)]
    memory_out: Option<PathBuf>,
}

#[derive(Args)]
struct MemoryArgs {
    /// Widths to tabulate; defaults to the standard table.
    #[arg(long = "n")]
    widths: Vec<u32>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InfeasibleCut { .. } | Error::InfeasibleBlocking { .. } => 3,
        Error::WidthLimit { .. } => 4,
        Error::Evaluation { source, .. } => exit_code(source),
        Error::Syntax { .. }
        | Error::UnknownGate { .. }
        | Error::QubitOutOfRange { .. }
        | Error::DuplicateQubit { .. }
        | Error::InvalidGate(_)
        | Error::InvalidSpec(_)
        | Error::InvalidLayout(_)
        | Error::Io(_) => 2,
        _ => 1,
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn read_circuit(path: &Path) -> Result<(Circuit, String), Error> {
    let text = fs::read_to_string(path)?;
    Ok((parse_circuit(&text)?, text))
}

fn generate(args: GenerateArgs) -> Result<u8, Error> {
    let family: Family = args.family.parse()?;
    let mut spec = GenSpec::new(family, args.n, args.seed);
    spec.aqft_degree = args.degree;
    spec.aqft_random_input = args.random_input;
    spec.hwea_layers = args.layers;
    spec.bv_hidden = args.hidden;
    spec.grid = args.rows.zip(args.cols);
    spec.depth = args.depth;
    spec.adder_inputs = args.a.zip(args.b);
    let c = gen(&spec)?;
    let text = format!(
        "// family={} n={} seed={}\n{}",
        family,
        args.n,
        args.seed,
        serialize_circuit(&c)
    );
    emit(args.out.as_deref(), &text)?;
    Ok(0)
}

fn cut(args: CutArgs) -> Result<u8, Error> {
    let (c, _) = read_circuit(&args.circuit)?;
    let plan = find_cuts(&c, args.max_width, args.max_subcircuits, args.max_cuts)?;
    let doc = json!({
        "source_width": plan.source_width,
        "objective_cost": plan.objective_cost,
        "cuts": plan.cuts.iter().map(|p| json!({
            "wire": p.wire,
            "from_gate": p.edge.from_gate,
            "to_gate": p.edge.to_gate,
        })).collect::<Vec<_>>(),
        "subcircuits": plan.subcircuits.iter().map(|s| json!({
            "circuit": serialize_circuit(&s.fragment),
            "upstream_cuts": s.upstream_cuts,
            "upstream_qubits": s.upstream_qubits,
            "downstream_cuts": s.downstream_cuts,
            "downstream_qubits": s.downstream_qubits,
            "effective_qubits": s.effective_qubits,
            "output_map": s.output_map,
        })).collect::<Vec<_>>(),
    });
    emit(args.out.as_deref(), &format!("{:#}\n", doc))?;
    Ok(0)
}

fn compare(args: CompareArgs) -> Result<u8, Error> {
    let (c, text) = read_circuit(&args.circuit)?;
    let family = args
        .family
        .or_else(|| header_family(&text))
        .unwrap_or_else(|| "custom".to_string());
    let opts = CompareOptions {
        max_width: args.max_width,
        max_subcircuits: args.max_subcircuits,
        max_cuts: args.max_cuts,
        workers: args.workers,
        spill: args.spill,
    };
    let result = run_compare(&c, &family, &opts)?;
    let record = &result.record;
    emit(
        args.out.as_deref(),
        &format!("{}\n", serde_json::to_string_pretty(record)?),
    )?;
    if record.tvd > args.tvd_tol {
        eprintln!("tvd {:e} exceeds tolerance {:e}", record.tvd, args.tvd_tol);
        return Ok(1);
    }
    Ok(0)
}

fn blocked(args: BlockedArgs) -> Result<u8, Error> {
    let (c, _) = read_circuit(&args.circuit)?;
    let report = run_blocked(&c, args.nc, args.spaces)?;
    emit(
        args.out.as_deref(),
        &format!("{}\n", serde_json::to_string_pretty(&report)?),
    )?;
    if report.tvd > args.tvd_tol || report.max_abs_diff > args.amp_tol {
        eprintln!(
            "tvd {:e} / max abs diff {:e} exceed tolerance {:e} / {:e}",
            report.tvd, report.max_abs_diff, args.tvd_tol, args.amp_tol
        );
        return Ok(1);
    }
    Ok(0)
}

fn report(args: ReportArgs) -> Result<u8, Error> {
    let memory_out = args.memory_out.unwrap_or_else(|| {
        let stem = args
            .out
            .file_stem()
            .map_or_else(|| "report".into(), |s| s.to_string_lossy().into_owned());
        args.out.with_file_name(format!("{stem}_memory.csv"))
    });
    let summary = write_report(&args.records, &args.out, &memory_out)?;
    for (path, reason) in &summary.skipped {
        eprintln!("skipping {}: {reason}", path.display());
    }
    if summary.rows == 0 {
        eprintln!("no readable records in {}", args.records.display());
        return Ok(1);
    }
    Ok(0)
}

fn estimate_memory(args: MemoryArgs) -> Result<u8, Error> {
    let widths = if args.widths.is_empty() {
        MEMORY_TABLE_WIDTHS.to_vec()
    } else {
        args.widths
    };
    print!("{}", memory_csv(&widths));
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Cut(a) => cut(a),
        Command::Compare(a) => compare(a),
        Command::Blocked(a) => blocked(a),
        Command::Report(a) => report(a),
        Command::EstimateMemory(a) => estimate_memory(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
