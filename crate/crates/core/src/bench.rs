//! Benchmark drivers: run the cut and blocked paths against direct
//! simulation and tabulate the results.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::block::{chunked_simulate, estimate_memory_gb, ExchangeLog};
use crate::circuit::Circuit;
use crate::cutter::{find_cuts, CutPlan};
use crate::error::{Error, Result};
use crate::evaluator::{attribute_all, evaluate_all, spill_results, spill_vector};
use crate::reconstruct::{reconstruct, total_variation_distance};
use crate::sv::{probabilities, simulate, ProbVector};

/// Widths tabulated by the memory report.
pub const MEMORY_TABLE_WIDTHS: [u32; 15] = [10, 12, 14, 15, 16, 18, 20, 22, 24, 25, 26, 28, 30, 32, 34];

/// Header of the per-record CSV.
pub const REPORT_HEADER: &str = "family,n,K,frag_widths,effective,variants,t_cut_ms,t_eval_ms,t_attr_ms,t_recon_ms,t_full_ms,tvd,mem_gb,width_identity";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentInfo {
    pub width: usize,
    pub effective: usize,
}

/// Wall-clock time per phase, in milliseconds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseTimings {
    pub cut_ms: f64,
    pub eval_ms: f64,
    pub attr_ms: f64,
    pub recon_ms: f64,
    pub full_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub fragments: Vec<FragmentInfo>,
    pub variants: usize,
    pub timings: PhaseTimings,
    pub tvd: f64,
    pub max_abs_diff: f64,
    pub exchange: Option<ExchangeLog>,
    pub mem_gb: f64,
    pub width_identity: bool,
}

impl BenchRecord {
    fn csv_row(&self) -> String {
        let join = |f: fn(&FragmentInfo) -> usize| {
            self.fragments
                .iter()
                .map(|x| f(x).to_string())
                .collect::<Vec<_>>()
                .join(";")
        };
        let t = &self.timings;
        format!(
            "{},{},{},{},{},{},{:.3},{:.3},{:.3},{:.3},{:.3},{:e},{},{}",
            self.family,
            self.n,
            self.k,
            join(|f| f.width),
            join(|f| f.effective),
            self.variants,
            t.cut_ms,
            t.eval_ms,
            t.attr_ms,
            t.recon_ms,
            t.full_ms,
            self.tvd,
            self.mem_gb,
            self.width_identity
        )
    }
}

#[derive(Clone, Debug)]
pub struct CompareOptions {
    pub max_width: usize,
    pub max_subcircuits: usize,
    pub max_cuts: usize,
    pub workers: usize,
    /// Directory for raw variant and reconstructed vectors.
    pub spill: Option<PathBuf>,
}

impl CompareOptions {
    pub fn new(max_width: usize, max_cuts: usize) -> CompareOptions {
        CompareOptions {
            max_width,
            max_subcircuits: 5,
            max_cuts,
            workers: 0,
            spill: None,
        }
    }
}

/// Outcome of [`run_compare`].
#[derive(Clone, Debug)]
pub struct Comparison {
    pub record: BenchRecord,
    pub plan: CutPlan,
    pub reconstructed: ProbVector,
    pub direct: ProbVector,
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

/// Simulates `c` through the cut path and directly, and compares them.
pub fn run_compare(c: &Circuit, family: &str, opts: &CompareOptions) -> Result<Comparison> {
    let t = Instant::now();
    let plan = find_cuts(c, opts.max_width, opts.max_subcircuits, opts.max_cuts)?;
    let cut_ms = ms(t);
    if !plan.width_identity_holds() {
        return Err(Error::InvalidCuts(format!(
            "width identity violated: {} + {} != {:?}",
            plan.source_width,
            plan.num_cuts(),
            plan.widths()
        )));
    }

    let t = Instant::now();
    let raw = evaluate_all(&plan.subcircuits, opts.workers)?;
    let eval_ms = ms(t);
    if raw.len() != plan.total_variants() {
        return Err(Error::MissingVariant(format!(
            "expected {} variants, simulated {}",
            plan.total_variants(),
            raw.len()
        )));
    }

    let t = Instant::now();
    let attributed = attribute_all(&plan.subcircuits, &raw)?;
    let attr_ms = ms(t);

    let t = Instant::now();
    let reconstructed = reconstruct(&plan, &attributed)?;
    let recon_ms = ms(t);

    let t = Instant::now();
    let direct = probabilities(&simulate(c)?);
    let full_ms = ms(t);

    if let Some(dir) = &opts.spill {
        spill_results(&dir.join("variants"), &raw)?;
        spill_vector(&dir.join("reconstructed"), "reconstructed", reconstructed.values())?;
    }

    let record = BenchRecord {
        family: family.to_string(),
        n: c.width(),
        k: plan.num_cuts(),
        fragments: plan
            .subcircuits
            .iter()
            .map(|s| FragmentInfo {
                width: s.width(),
                effective: s.num_effective(),
            })
            .collect(),
        variants: plan.total_variants(),
        timings: PhaseTimings {
            cut_ms,
            eval_ms,
            attr_ms,
            recon_ms,
            full_ms,
        },
        tvd: total_variation_distance(&reconstructed, &direct)?,
        max_abs_diff: reconstructed.max_abs_diff(&direct),
        exchange: None,
        mem_gb: estimate_memory_gb(c.width() as u32),
        width_identity: plan.width_identity_holds(),
    };
    Ok(Comparison {
        record,
        plan,
        reconstructed,
        direct,
    })
}

/// Outcome of [`run_blocked`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockedReport {
    pub exchange: ExchangeLog,
    pub tvd: f64,
    pub max_abs_diff: f64,
}

/// Simulates `c` chunked over `num_spaces` spaces and compares with direct
/// simulation.
pub fn run_blocked(c: &Circuit, nc: usize, num_spaces: usize) -> Result<BlockedReport> {
    let (chunked, exchange) = chunked_simulate(c, nc, num_spaces)?;
    let direct = probabilities(&simulate(c)?);
    Ok(BlockedReport {
        exchange,
        tvd: total_variation_distance(&chunked, &direct)?,
        max_abs_diff: chunked.max_abs_diff(&direct),
    })
}

/// Result of [`write_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportSummary {
    pub rows: usize,
    /// Files that could not be read as records, with the reason.
    pub skipped: Vec<(PathBuf, String)>,
}

/// Reads every `*.json` record in `dir` and renders the per-record CSV.
/// Rows are sorted by family, then width, then file name.
pub fn build_report(dir: &Path) -> Result<(String, ReportSummary)> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for path in files {
        let parsed = fs::read_to_string(&path)
            .map_err(Error::from)
            .and_then(|s| serde_json::from_str::<BenchRecord>(&s).map_err(Error::from));
        match parsed {
            Ok(r) => records.push((path, r)),
            Err(e) => skipped.push((path, e.to_string())),
        }
    }
    records.sort_by(|a, b| (&a.1.family, a.1.n, &a.0).cmp(&(&b.1.family, b.1.n, &b.0)));
    let mut csv = String::from(REPORT_HEADER);
    csv.push('\n');
    for (_, r) in &records {
        csv.push_str(&r.csv_row());
        csv.push('\n');
    }
    Ok((
        csv,
        ReportSummary {
            rows: records.len(),
            skipped,
        },
    ))
}

/// Memory estimate per width, one row each.
pub fn memory_csv(widths: &[u32]) -> String {
    let mut out = String::from("n,mem_gb\n");
    for &n in widths {
        let _ = writeln!(out, "{n},{}", estimate_memory_gb(n));
    }
    out
}

/// Writes the record CSV to `out` and the memory CSV next to it.
pub fn write_report(dir: &Path, out: &Path, memory_out: &Path) -> Result<ReportSummary> {
    let (csv, summary) = build_report(dir)?;
    fs::write(out, csv)?;
    fs::write(memory_out, memory_csv(&MEMORY_TABLE_WIDTHS))?;
    Ok(summary)
}

/// `family=` value of a `// family=... n=... seed=...` header line.
pub fn header_family(text: &str) -> Option<String> {
    text.lines()
        .take_while(|l| l.trim_start().starts_with("//") || l.trim().is_empty())
        .flat_map(|l| l.trim_start_matches('/').split_whitespace())
        .find_map(|tok| tok.strip_prefix("family=").map(str::to_string))
}
