// Copyright 2026 The ftcb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ftcb::analysis::{analyze, AnalysisConfig, SynthMode};
use ftcb::bench::{default_threads, run_bench, BenchConfig, BenchError, Pipeline};
use ftcb::generate::{generate, render, write_suite, GenerateParams};
use ftcb::output::{write_artifacts, write_atomic, Formats};
use ftcb::pbc_text::write_pbc;
use ftcb::qasm::{parse_program, serialize_with_layout, QasmError};
use ftcb_core::circuit::normalize_to_clifford_rz;
use ftcb_core::generators::ModelParams;
use ftcb_core::metrics::WeightScope;
use ftcb_core::pbc::{compile_to_pbc, optimize_pbc, PbcError};

#[derive(Parser)]
#[command(name = "ftcb", version, about = "Fault-tolerant circuit benchmark and analysis tool")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze one QASM circuit end to end.
    Analyze(AnalyzeArgs),
    /// Analyze every .qasm file in a directory under several pipelines.
    Bench(BenchArgs),
    /// Write a generated benchmark circuit as QASM.
    Generate(GenerateArgs),
    /// Convert Clifford+T QASM to PBC text (or re-emit normalized QASM).
    Convert(ConvertArgs),
    /// Check compiled PBC forms against the dense oracle (n <= 6).
    #[command(hide = true)]
    Verify { path: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum SynthArg {
    Sk,
    None,
    External,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Rotations,
    Measurements,
    Both,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Base-library word length for Solovay-Kitaev.
    #[arg(long, default_value_t = ftcb_core::synthesis::DEFAULT_BASE_LENGTH)]
    sk_base_length: usize,
    /// Skip the layer-and-merge optimizer.
    #[arg(long)]
    no_pbc_opt: bool,
    /// Include measurement rows in PBC weight statistics and density grids.
    #[arg(long)]
    include_measurements: bool,
    /// Operator set for Pauli weight statistics (overrides --include-measurements).
    #[arg(long, value_enum)]
    weight_scope: Option<ScopeArg>,
    /// Time bins for density grids.
    #[arg(long, default_value_t = 50)]
    bins: usize,
    /// Louvain seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated subset of json,csv,qasm,pbc-text.
    #[arg(long, default_value = "json,csv,qasm,pbc-text")]
    formats: String,
    /// Fail fast when the estimated PBC footprint exceeds this many MiB.
    #[arg(long)]
    max_ram_mb: Option<u64>,
}

impl CommonArgs {
    fn config(&self) -> AnalysisConfig {
        AnalysisConfig {
            sk_base_length: self.sk_base_length,
            optimize: !self.no_pbc_opt,
            include_measurements: self.include_measurements,
            weight_scope: self.weight_scope.map(|s| match s {
                ScopeArg::Rotations => WeightScope::Rotations,
                ScopeArg::Measurements => WeightScope::Measurements,
                ScopeArg::Both => WeightScope::Both,
            }),
            bins: self.bins,
            seed: self.seed,
            max_ram_bytes: self.max_ram_mb.map(|m| m.saturating_mul(1 << 20)),
            ..AnalysisConfig::default()
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "sk")]
    synth: SynthArg,
    /// Solovay-Kitaev recursion degree.
    #[arg(long, default_value_t = 1)]
    sk_depth: usize,
    /// Externally synthesized Clifford+T QASM (with --synth external).
    #[arg(long)]
    external: Option<PathBuf>,
    /// Output directory (default: <file stem>_ftcb next to the working directory).
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct BenchArgs {
    suite: PathBuf,
    #[arg(long, default_value = "sk-1,sk-2")]
    pipelines: String,
    #[arg(long)]
    out: PathBuf,
    /// Directory holding `<circuit>.gs-1.qasm` / `<circuit>.gs-2.qasm`.
    #[arg(long)]
    external_dir: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct GenerateArgs {
    /// qft, adder, ising_1d, heisenberg_1d, heisenberg_2d, fermi_hubbard_1d, or suite.
    family: String,
    #[arg(long)]
    qubits: Option<usize>,
    #[arg(long)]
    bits: Option<usize>,
    #[arg(long)]
    sites: Option<usize>,
    #[arg(long)]
    lx: Option<usize>,
    #[arg(long)]
    ly: Option<usize>,
    #[arg(long, default_value_t = 20)]
    steps: usize,
    #[arg(long, default_value_t = 0.05)]
    dt: f64,
    /// Open boundary conditions.
    #[arg(long)]
    open: bool,
    /// Omit the final qubit-reversal swaps of the QFT.
    #[arg(long)]
    no_swaps: bool,
    #[arg(long)]
    j: Option<f64>,
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    jx: Option<f64>,
    #[arg(long)]
    jy: Option<f64>,
    #[arg(long)]
    jz: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    u: Option<f64>,
    /// Output file (directory for `suite`); stdout when omitted.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvertTo {
    PbcText,
    Qasm,
}

#[derive(Args)]
struct ConvertArgs {
    path: PathBuf,
    #[arg(long, value_enum)]
    to: ConvertTo,
    /// Run the layer-and-merge optimizer before writing PBC text.
    #[arg(long)]
    optimize: bool,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure { code, msg: msg.into() }
}

fn qasm_failure(path: &Path, e: QasmError) -> Failure {
    fail(if e.is_unsupported() { 2 } else { 1 }, format!("{}:{e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(1, format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => write_atomic(p, text.as_bytes()).map_err(|e| fail(1, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn formats(list: &str) -> Result<Formats, Failure> {
    Formats::parse(list).map_err(|e| fail(1, e))
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<(), Failure> {
    let formats = formats(&a.common.formats)?;
    let program = parse_program(&read(&a.file)?).map_err(|e| qasm_failure(&a.file, e))?;
    let mut cfg = a.common.config();
    cfg.sk_depth = a.sk_depth;
    cfg.synth = match a.synth {
        SynthArg::Sk => SynthMode::Sk,
        SynthArg::None => SynthMode::None,
        SynthArg::External => SynthMode::External,
    };
    let external = match (&a.external, cfg.synth) {
        (Some(p), SynthMode::External) => {
            Some(parse_program(&read(p)?).map_err(|e| qasm_failure(p, e))?.circuit)
        }
        (None, SynthMode::External) => return Err(fail(1, "--synth external requires --external FILE")),
        (Some(_), _) => return Err(fail(1, "--external is only used with --synth external")),
        _ => None,
    };
    let name = a.file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let analysis = analyze(&name, &program.circuit, &cfg, external.as_ref())
        .map_err(|e| fail(e.exit_code(), format!("{}: {e}", a.file.display())))?;
    let out = a.out.unwrap_or_else(|| PathBuf::from(format!("{name}_ftcb")));
    write_artifacts(&out, &analysis, Some(&program.qregs), formats)
        .map_err(|e| fail(1, format!("{}: {e}", out.display())))?;
    let s = &analysis.stats;
    println!(
        "{name} [{}]: {} gates, depth {}, T {}, PBC rotations {} -> {}, output {}",
        s.pipeline,
        s.total_gates,
        s.depth,
        s.t_count,
        s.pbc_raw_rotations,
        s.pbc_t_operators,
        out.display()
    );
    Ok(())
}

fn cmd_bench(a: BenchArgs) -> Result<(), Failure> {
    let pipelines = a
        .pipelines
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(Pipeline::parse)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| fail(1, e.to_string()))?;
    if pipelines.is_empty() {
        return Err(fail(1, "no pipelines given"));
    }
    let cfg = BenchConfig {
        pipelines,
        base: a.common.config(),
        out: a.out,
        external_dir: a.external_dir,
        threads: default_threads(),
        formats: formats(&a.common.formats)?,
    };
    let manifest = run_bench(&a.suite, &cfg).map_err(|e| match e {
        BenchError::EmptySuite(_) | BenchError::UnknownPipeline(_) | BenchError::Io(_) => fail(1, e.to_string()),
    })?;
    for e in &manifest.entries {
        match &e.error {
            Some(why) => eprintln!("{} [{}]: {} ({why})", e.circuit, e.pipeline, e.status),
            None => println!("{} [{}]: ok ({:.2} s)", e.circuit, e.pipeline, e.wall_time_s),
        }
    }
    Ok(())
}

fn cmd_generate(a: GenerateArgs) -> Result<(), Failure> {
    if a.family == "suite" {
        let dir = a.out.ok_or_else(|| fail(1, "generate suite needs --out DIR"))?;
        let files = write_suite(&dir).map_err(|e| fail(1, format!("{}: {e}", dir.display())))?;
        for f in files {
            println!("{}", f.display());
        }
        return Ok(());
    }
    let d = ModelParams::default();
    let params = GenerateParams {
        qubits: a.qubits,
        bits: a.bits,
        sites: a.sites,
        lx: a.lx,
        ly: a.ly,
        steps: a.steps,
        dt: a.dt,
        periodic: !a.open,
        swaps: !a.no_swaps,
        model: ModelParams {
            j: a.j.unwrap_or(d.j),
            h: a.h.unwrap_or(d.h),
            jx: a.jx.unwrap_or(d.jx),
            jy: a.jy.unwrap_or(d.jy),
            jz: a.jz.unwrap_or(d.jz),
            t: a.t.unwrap_or(d.t),
            u: a.u.unwrap_or(d.u),
        },
    };
    let (c, desc) = generate(&a.family, &params).map_err(|e| fail(1, e))?;
    emit(a.out.as_deref(), &render(&c, &desc))
}

fn looks_like_pbc(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with("pbc "))
}

fn cmd_convert(a: ConvertArgs) -> Result<(), Failure> {
    let text = read(&a.path)?;
    if looks_like_pbc(&text) {
        return Err(fail(
            1,
            format!(
                "{}: PBC text cannot be converted back to QASM (the Clifford frame is not recorded)",
                a.path.display()
            ),
        ));
    }
    let program = parse_program(&text).map_err(|e| qasm_failure(&a.path, e))?;
    let normalized = normalize_to_clifford_rz(&program.circuit);
    let out = match a.to {
        ConvertTo::Qasm => serialize_with_layout(&normalized, Some(&program.qregs)),
        ConvertTo::PbcText => {
            let pbc = compile_to_pbc(&normalized).map_err(|e| match e {
                PbcError::NotCliffordT { .. } => fail(2, format!("{}: {e}", a.path.display())),
                other => fail(1, format!("{}: {other}", a.path.display())),
            })?;
            let pbc = if a.optimize {
                optimize_pbc(&pbc).map_err(|e| fail(1, e.to_string()))?.0
            } else {
                pbc
            };
            write_pbc(&pbc)
        }
    };
    emit(a.out.as_deref(), &out)
}

fn cmd_verify(path: &Path) -> Result<(), Failure> {
    use ftcb_core::oracle::{measurement_rows_consistent, pbc_equivalence};
    let program = parse_program(&read(path)?).map_err(|e| qasm_failure(path, e))?;
    let c = normalize_to_clifford_rz(&program.circuit);
    let raw = compile_to_pbc(&c).map_err(|e| fail(2, e.to_string()))?;
    let (opt, _) = optimize_pbc(&raw).map_err(|e| fail(1, e.to_string()))?;
    let mut ok = true;
    for (label, p) in [("raw", &raw), ("optimized", &opt)] {
        let f = pbc_equivalence(&c, p).map_err(|e| fail(1, e.to_string()))?;
        let rows = measurement_rows_consistent(p, 1e-9).map_err(|e| fail(1, e.to_string()))?;
        println!("{label}: fidelity {f:.15}, measurement rows consistent: {rows}");
        ok &= f >= 1.0 - 1e-9 && rows;
    }
    if ok {
        Ok(())
    } else {
        Err(fail(1, "oracle mismatch"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Analyze(a) => cmd_analyze(a),
        Cmd::Bench(a) => cmd_bench(a),
        Cmd::Generate(a) => cmd_generate(a),
        Cmd::Convert(a) => cmd_convert(a),
        Cmd::Verify { path } => cmd_verify(&path),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("ftcb: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
