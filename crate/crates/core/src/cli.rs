// Copyright contributors to the magic-circuits project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 compile failure,
//! 3 verification mismatch. Every artifact starts with the run
//! configuration and tool version.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::circuit::{parse_rotation_program, render_text, Circuit, RotationProgram};
use crate::compiler::{compile, reference_expansion, CompileOptions, Objective};
use crate::fault::{
    bundled_impl_schedule, enumerate_pair_faults, enumerate_single_faults, first_order_oracle, implement_t_gadgets,
    lattice_surgery_comparison, monte_carlo_infidelity, CostModel, DetectionTable, FirstOrderReport, ImplOptions,
    NoiseModel, RoundSchedule, SiteSet, Target,
};
use crate::protocols::{self, Protocol};
use crate::semantics::{
    enumerate_branches, phase_polynomial_of, poly_equal, state_fidelity, unitary_columns, unitary_distance,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPILE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

/// Environment variable holding the default worker thread count.
pub const THREADS_ENV: &str = "MAGIC_CIRCUITS_THREADS";

#[derive(Debug, Parser, Serialize)]
#[command(name = "magic-circuits", version, about = "Compile and analyze magic-state preparation circuits")]
pub struct Cli {
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = THREADS_ENV, default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Compile a rotation program to a minimal-T-depth circuit.
    Compile(CompileArgs),
    /// Check two circuits or programs for equivalence.
    Verify(VerifyArgs),
    /// Enumerate single and pair faults and classify them.
    Faults(FaultsArgs),
    /// Monte Carlo infidelity over a grid of noise rates, as CSV.
    Sweep(SweepArgs),
    /// Spacetime cost table.
    Cost(CostArgs),
}

#[derive(Debug, Args, Serialize)]
#[group(id = "source", required = true, multiple = false)]
pub struct Source {
    /// Rotation program JSON.
    #[arg(long = "in", group = "source")]
    pub input: Option<PathBuf>,
    /// Bundled protocol: ccz, cs or t15.
    #[arg(long, group = "source")]
    pub protocol: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct CompileArgs {
    #[command(flatten)]
    pub source: Source,
    /// Circuit JSON output; the diagram and report are written next to it.
    /// Without it the report goes to standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = Objective::CnotDepth)]
    pub objective: Objective,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Orderings sampled when exhaustive search is too large.
    #[arg(long, default_value_t = 2000)]
    pub budget: usize,
    /// Qubits measured in the X basis after the circuit (bundled protocols bring their own).
    #[arg(long, value_delimiter = ',', conflicts_with = "protocol")]
    pub checks: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Oracle {
    /// Phase polynomials when both sides allow it, dense simulation otherwise.
    Auto,
    PhasePoly,
    Dense,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Circuit or rotation program JSON.
    pub left: PathBuf,
    /// Circuit or rotation program JSON.
    pub right: PathBuf,
    #[arg(long, value_enum, default_value_t = Oracle::Auto)]
    pub oracle: Oracle,
    /// Treat a global phase difference as a mismatch.
    #[arg(long)]
    pub strict_phase: bool,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sites {
    /// Z faults after T gates and `|T>` preparations.
    T,
    /// X, Y and Z faults before every gate.
    All,
}

#[derive(Debug, Args, Serialize)]
#[group(id = "target", required = true, multiple = false)]
pub struct FaultSource {
    /// Circuit JSON with check measurements.
    #[arg(long, group = "target")]
    pub circuit: Option<PathBuf>,
    /// Bundled protocol compiled with default options.
    #[arg(long, group = "target")]
    pub protocol: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct FaultsArgs {
    #[command(flatten)]
    pub source: FaultSource,
    /// Also enumerate fault pairs.
    #[arg(long)]
    pub pairs: bool,
    #[arg(long, value_enum, default_value_t = Sites::T)]
    pub sites: Sites,
    /// Ignore check outcomes (every fault that changes the output counts as harmful).
    #[arg(long)]
    pub no_postselect: bool,
    /// Also compute the exact first-order p_L coefficient of the gadget schedule.
    #[arg(long)]
    pub first_order: bool,
    #[arg(long, default_value_t = 1)]
    pub t_decode: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    /// Circuit JSON; its T gates are replaced by injection gadgets.
    #[arg(long, conflicts_with = "protocol")]
    pub circuit: Option<PathBuf>,
    /// Bundled protocol (default ccz).
    #[arg(long)]
    pub protocol: Option<String>,
    /// Logical error rates per qubit per round.
    #[arg(long, value_delimiter = ',', required = true)]
    pub pl: Vec<f64>,
    /// Ratios p_T / p_L.
    #[arg(long, value_delimiter = ',', required = true)]
    pub r: Vec<f64>,
    #[arg(long, default_value = "1e6", value_parser = parse_count)]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub t_decode: usize,
    #[arg(long)]
    pub no_postselect: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CostArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [1u64, 3, 5, 7])]
    pub distance: Vec<u64>,
    #[arg(long, default_value_t = 7)]
    pub rounds: u64,
    #[arg(long, default_value_t = 8)]
    pub patches: u64,
    #[arg(long, default_value_t = 3)]
    pub factor: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Accepts integers written as `1000000` or `1e6`.
fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let f: f64 = s.parse().map_err(|_| format!("{s:?} is not a count"))?;
    if f < 0.0 || f.fract() != 0.0 || f > u64::MAX as f64 {
        return Err(format!("{s:?} is not a whole non-negative count"));
    }
    Ok(f as u64)
}

/// Reproducibility header embedded in every artifact.
#[derive(Debug, Serialize)]
pub struct RunConfig<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub threads: usize,
    #[serde(flatten)]
    pub command: &'a Command,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure { code: EXIT_USAGE, message: message.to_string() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| usage(format!("stdout: {e}"))),
    }
}

fn protocol(name: &str) -> Result<Protocol, Failure> {
    protocols::by_name(name).ok_or_else(|| usage(format!("unknown protocol {name:?} (expected ccz, cs or t15)")))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct Artifact<'a, T: Serialize> {
    config: &'a RunConfig<'a>,
    #[serde(flatten)]
    body: T,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return EXIT_USAGE;
        }
    };
    let config = RunConfig { tool: "magic-circuits", version: VERSION, threads: cli.threads, command: &cli.command };
    let result = pool.install(|| match &cli.command {
        Command::Compile(a) => cmd_compile(a, &config),
        Command::Verify(a) => cmd_verify(a, &config),
        Command::Faults(a) => cmd_faults(a, &config),
        Command::Sweep(a) => cmd_sweep(a, &config),
        Command::Cost(a) => cmd_cost(a, &config),
    });
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn cmd_compile(a: &CompileArgs, config: &RunConfig) -> Result<i32, Failure> {
    let (program, checks) = match (&a.source.input, &a.source.protocol) {
        (Some(path), _) => {
            let p = parse_rotation_program(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            if let Some(&q) = a.checks.iter().find(|&&q| q >= p.n) {
                return Err(usage(format!("check qubit {q} out of range for {} qubits", p.n)));
            }
            (p, a.checks.clone())
        }
        (None, Some(name)) => {
            let p = protocol(name)?;
            (p.program, p.checks)
        }
        (None, None) => return Err(usage("one of --in or --protocol is required")),
    };
    let opts = CompileOptions { seed: a.seed, budget: a.budget, objective: a.objective, ..Default::default() };
    let report = match compile(&program, &opts) {
        Ok(r) => r,
        Err(e) => {
            let body = serde_json::json!({ "error": e.to_string() });
            eprintln!("error: compile failed: {e}");
            if let Some(out) = &a.out {
                write(&sibling(out, "report.json"), &to_json(&Artifact { config, body }))?;
            }
            return Ok(EXIT_COMPILE);
        }
    };
    let circuit = protocols::with_checks(&report.circuit, &checks);
    #[derive(Serialize)]
    struct Body<'a> {
        report: &'a crate::compiler::CompileReport,
        checks: &'a [usize],
    }
    let report_json = to_json(&Artifact { config, body: Body { report: &report, checks: &checks } });
    match &a.out {
        Some(out) => {
            #[derive(Serialize)]
            struct CircuitBody<'a> {
                circuit: &'a Circuit,
            }
            let circuit_json = to_json(&Artifact { config, body: CircuitBody { circuit: &circuit } });
            let header = serde_json::to_string(config).expect("serializable");
            write(out, &circuit_json)?;
            let mut diagram = format!("# {header}\n");
            diagram.push_str(&render_text(&circuit));
            write(&sibling(out, "txt"), &diagram)?;
            write(&sibling(out, "report.json"), &report_json)?;
            eprintln!(
                "t_depth {} t_count {} cnot_depth {} cnot_count {}",
                report.t_depth, report.t_count, report.cnot_depth, report.cnot_count
            );
        }
        None => emit(None, &report_json)?,
    }
    Ok(EXIT_OK)
}

/// `dir/name.json` with extension `ext` replacing `json`.
fn sibling(path: &Path, ext: &str) -> PathBuf {
    path.with_extension(ext)
}

/// Reads a circuit, bare or wrapped in an artifact, or a rotation program.
fn load_circuit(path: &Path) -> Result<(Circuit, Option<RotationProgram>), Failure> {
    let text = read(path)?;
    if let Ok(c) = Circuit::from_json(&text) {
        return Ok((c, None));
    }
    if let Ok(p) = parse_rotation_program(&text) {
        return Ok((reference_expansion(&p), Some(p)));
    }
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if let Some(inner) = value.get("circuit") {
        return Circuit::from_json(&inner.to_string())
            .map(|c| (c, None))
            .map_err(|e| usage(format!("{}: {e}", path.display())));
    }
    Err(usage(format!("{}: neither a circuit nor a rotation program", path.display())))
}

#[derive(Serialize)]
struct VerifyBody {
    equivalent: bool,
    method: &'static str,
    max_deviation: f64,
    note: Option<String>,
}

fn cmd_verify(a: &VerifyArgs, config: &RunConfig) -> Result<i32, Failure> {
    let (left, _) = load_circuit(&a.left)?;
    let (right, _) = load_circuit(&a.right)?;
    if left.n != right.n {
        return Err(usage(format!("{} vs {} qubits", left.n, right.n)));
    }
    let body = if left.is_unitary() && right.is_unitary() {
        verify_unitary(&left, &right, a)?
    } else {
        if a.oracle == Oracle::PhasePoly {
            return Err(usage("circuits with preparations or measurements need --oracle dense"));
        }
        verify_states(&left, &right, a.tol)?
    };
    let code = if body.equivalent { EXIT_OK } else { EXIT_MISMATCH };
    emit(None, &to_json(&Artifact { config, body }))?;
    Ok(code)
}

fn verify_unitary(left: &Circuit, right: &Circuit, a: &VerifyArgs) -> Result<VerifyBody, Failure> {
    let polys = (phase_polynomial_of(left), phase_polynomial_of(right));
    match (a.oracle, polys) {
        (Oracle::Auto | Oracle::PhasePoly, (Ok(pl), Ok(pr))) => Ok(VerifyBody {
            equivalent: poly_equal(&pl, &pr, !a.strict_phase),
            method: "phase-polynomial",
            max_deviation: 0.0,
            note: None,
        }),
        (Oracle::PhasePoly, (l, r)) => {
            let e = l.err().or(r.err()).expect("one side failed");
            Err(usage(format!("{e}; outside the phase-polynomial fragment, try --oracle dense")))
        }
        _ => {
            let ul = unitary_columns(left).map_err(usage)?;
            let ur = unitary_columns(right).map_err(usage)?;
            let dev = if a.strict_phase {
                ul.iter()
                    .zip(&ur)
                    .flat_map(|(x, y)| x.amplitudes().iter().zip(y.amplitudes()).map(|(p, q)| (p - q).norm()))
                    .fold(0.0, f64::max)
            } else {
                unitary_distance(&ul, &ur).map_err(usage)?
            };
            Ok(VerifyBody { equivalent: dev <= a.tol, method: "dense-unitary", max_deviation: dev, note: None })
        }
    }
}

/// Prepends `|+>` preparations to a unitary circuit.
fn on_plus_inputs(c: &Circuit) -> Circuit {
    if !c.is_unitary() {
        return c.clone();
    }
    let mut out = Circuit::new(c.n);
    out.extend((0..c.n).map(|q| crate::circuit::Gate::single(crate::circuit::GateKind::PrepPlus, q)));
    out.append(c);
    out
}

/// Compares the postselected output states of two state preparations.
fn verify_states(left: &Circuit, right: &Circuit, tol: f64) -> Result<VerifyBody, Failure> {
    let (l, r) = (on_plus_inputs(left), on_plus_inputs(right));
    // The side with measurements defines the outputs and postselection.
    let (reference, other) = if l.unmeasured_qubits().len() <= r.unmeasured_qubits().len() { (&l, &r) } else { (&r, &l) };
    let target = Target::infer(reference).map_err(usage)?;
    let post = if other.gates.iter().any(|g| g.kind.is_measurement()) { target.postselect.clone() } else { Default::default() };
    let branches = enumerate_branches(other, &post, &[]).map_err(usage)?;
    let acc: f64 = branches.iter().map(|b| b.weight).sum();
    if acc <= 0.0 {
        return Ok(VerifyBody {
            equivalent: false,
            method: "dense-state",
            max_deviation: 1.0,
            note: Some("the other side is never accepted".into()),
        });
    }
    let mut dev: f64 = 0.0;
    for b in &branches {
        let f = state_fidelity(&b.state, &target.ideal, &target.outputs).map_err(usage)?;
        dev = dev.max(1.0 - f);
    }
    Ok(VerifyBody {
        equivalent: dev <= tol,
        method: "dense-state",
        max_deviation: dev,
        note: Some(format!("compared output states on qubits {:?} (infidelity)", target.outputs)),
    })
}

fn fault_target(src: &FaultSource, no_postselect: bool) -> Result<(Circuit, Target, Option<Protocol>), Failure> {
    let (c, p) = match (&src.circuit, &src.protocol) {
        (Some(path), _) => (load_circuit(path)?.0, None),
        (None, Some(name)) => {
            let p = protocol(name)?;
            let (_, c) = p.compile(&CompileOptions::default()).map_err(|e| Failure {
                code: EXIT_COMPILE,
                message: e.to_string(),
            })?;
            (c, Some(p))
        }
        (None, None) => return Err(usage("one of --circuit or --protocol is required")),
    };
    let c = on_plus_inputs(&c);
    let mut target = Target::infer(&c).map_err(usage)?;
    if no_postselect {
        target.postselect.clear();
    }
    Ok((c, target, p))
}

#[derive(Serialize)]
struct Summary {
    sites: usize,
    detected: usize,
    harmless: usize,
    harmful: usize,
}

impl From<&DetectionTable> for Summary {
    fn from(t: &DetectionTable) -> Self {
        Summary { sites: t.len(), detected: t.detected, harmless: t.harmless, harmful: t.harmful }
    }
}

fn cmd_faults(a: &FaultsArgs, config: &RunConfig) -> Result<i32, Failure> {
    let (c, target, _) = fault_target(&a.source, a.no_postselect)?;
    let sites = match a.sites {
        Sites::T => SiteSet::TSites,
        Sites::All => SiteSet::AllSites,
    };
    let singles = enumerate_single_faults(&c, &target, sites).map_err(usage)?;
    let pairs = if a.pairs { Some(enumerate_pair_faults(&c, &target, sites).map_err(usage)?) } else { None };
    let first_order = if a.first_order {
        let sched = implement_t_gadgets(&c, &ImplOptions { t_decode: a.t_decode, ..Default::default() }).map_err(usage)?;
        let mut t = Target::infer(&sched.circuit()).map_err(usage)?;
        if a.no_postselect {
            t.postselect.clear();
        }
        Some(first_order_oracle(&sched, &t).map_err(usage)?)
    } else {
        None
    };
    #[derive(Serialize)]
    struct Body {
        outputs: Vec<usize>,
        postselect: std::collections::BTreeMap<String, u8>,
        single_summary: Summary,
        pair_summary: Option<Summary>,
        first_order_coefficient: Option<f64>,
        singles: DetectionTable,
        pairs: Option<DetectionTable>,
        first_order: Option<FirstOrderReport>,
    }
    eprintln!(
        "singles: {} detected, {} harmless, {} harmful{}",
        singles.detected,
        singles.harmless,
        singles.harmful,
        pairs.as_ref().map_or(String::new(), |p| format!(
            "; pairs: {} detected, {} harmless, {} harmful",
            p.detected, p.harmless, p.harmful
        ))
    );
    let body = Body {
        outputs: target.outputs.clone(),
        postselect: target.postselect.clone(),
        single_summary: (&singles).into(),
        pair_summary: pairs.as_ref().map(Summary::from),
        first_order_coefficient: first_order.as_ref().map(|f| f.coefficient),
        singles,
        pairs,
        first_order,
    };
    emit(a.out.as_deref(), &to_json(&Artifact { config, body }))?;
    Ok(EXIT_OK)
}

fn sweep_schedule(a: &SweepArgs) -> Result<RoundSchedule, Failure> {
    let opts = ImplOptions { t_decode: a.t_decode, ..Default::default() };
    match &a.circuit {
        Some(path) => implement_t_gadgets(&on_plus_inputs(&load_circuit(path)?.0), &opts).map_err(usage),
        None => {
            let p = protocol(a.protocol.as_deref().unwrap_or("ccz"))?;
            bundled_impl_schedule(&p, &opts).map_err(|e| Failure { code: EXIT_COMPILE, message: e.to_string() })
        }
    }
}

fn cmd_sweep(a: &SweepArgs, config: &RunConfig) -> Result<i32, Failure> {
    let sched = sweep_schedule(a)?;
    let mut target = Target::infer(&sched.circuit()).map_err(usage)?;
    if a.no_postselect {
        target.postselect.clear();
    }
    let mut grid = Vec::new();
    for &pl in &a.pl {
        for &r in &a.r {
            grid.push(NoiseModel::from_ratio(pl, r, a.t_decode).map_err(usage)?);
        }
    }
    let mut text = format!("# {}\n", serde_json::to_string(config).expect("serializable"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["p_L", "r", "shots", "accepted", "infidelity", "stderr"]).map_err(usage)?;
    for nm in &grid {
        let rep = monte_carlo_infidelity(&sched, &target, nm, a.shots, a.seed).map_err(usage)?;
        if rep.undefined {
            eprintln!("warning: no accepted shots at p_L = {}, r = {}", nm.p_l, nm.r);
        }
        let opt = |x: Option<f64>| x.map_or_else(String::new, |v| format!("{v:e}"));
        w.write_record([
            format!("{:e}", nm.p_l),
            format!("{}", nm.r),
            rep.shots.to_string(),
            rep.accepted.to_string(),
            opt(rep.infidelity),
            opt(rep.stderr),
        ])
        .map_err(usage)?;
    }
    let bytes = w.into_inner().map_err(|e| usage(e.to_string()))?;
    text.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
    emit(a.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn cmd_cost(a: &CostArgs, config: &RunConfig) -> Result<i32, Failure> {
    let model = CostModel { rounds: a.rounds, patches: a.patches, qubits_per_patch_factor: a.factor };
    let mut text = format!("# {}\n", serde_json::to_string(config).expect("serializable"));
    let _ = writeln!(text, "{:>4} {:>14} {:>18} {:>8}", "d", "qubit_cycles", "lattice_surgery", "ratio");
    for &d in &a.distance {
        let cmp = lattice_surgery_comparison(d, &model).map_err(usage)?;
        let _ = writeln!(text, "{:>4} {:>14} {:>18.1} {:>8.3}", d, cmp.ours, cmp.baseline, cmp.ratio);
    }
    emit(a.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_accept_scientific_notation() {
        assert_eq!(parse_count("1e6"), Ok(1_000_000));
        assert_eq!(parse_count("42"), Ok(42));
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
    }

    #[test]
    fn parse_errors_exit_with_usage_code() {
        assert_eq!(run(["magic-circuits", "compile"]), EXIT_USAGE);
        assert_eq!(run(["magic-circuits", "compile", "--in", "a.json", "--protocol", "ccz"]), EXIT_USAGE);
        assert_eq!(run(["magic-circuits", "bogus"]), EXIT_USAGE);
    }
}
