//! `heffter` — construct, certify, decompose and embed non-zero sum Heffter
//! arrays from the command line.
//!
//! Exit codes are fixed for scripting: 0 ok, 1 check failed or I/O failure,
//! 2 unsupported parameters, 3 malformed input, 4 search exhausted.

mod format;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use format::ArrayFile;
use heffter_core::construct::{self, Axis, NzsArray};
use heffter_core::decompose::{
    check_orthogonal, check_partition_threaded, Decomposition, OrthogonalityViolation,
    PartitionCheck,
};
use heffter_core::embed::{build_rho0, trace_faces, EmbeddingReport, SpectrumEntry};
use heffter_core::modular::ModulusContext;
use heffter_core::verify::{check_axioms, find_compatible_orderings, Direction};

#[derive(Parser)]
#[command(
    name = "heffter",
    version,
    about = "Non-zero sum Heffter arrays: construction, certification, decompositions and embeddings"
)]
struct Cli {
    /// Worker threads for decomposition checking (HEFFTER_THREADS overrides).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, Default, ValueEnum)]
enum ArrayFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, Default, ValueEnum)]
enum AxisArg {
    #[default]
    Rows,
    Cols,
}

#[derive(Copy, Clone, PartialEq, Eq, Default, ValueEnum)]
enum DecomposeFormat {
    #[default]
    Json,
    Edgelist,
}

#[derive(Copy, Clone, PartialEq, Eq, Default, ValueEnum)]
enum GraphFormat {
    #[default]
    Dot,
    Edgelist,
}

#[derive(Subcommand)]
enum Command {
    /// Construct an NH_t(n;n) and write it as an array file.
    Construct {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t: u64,
        #[arg(long, value_enum, default_value_t)]
        format: ArrayFormat,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the axioms and global simplicity of an array file.
    Verify {
        /// Input array file (JSON).
        #[arg(long = "in")]
        input: PathBuf,
        /// Report path (stdout when omitted).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Base blocks and partition/orthogonality verdicts of the cyclic path
    /// decompositions.
    Decompose {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t: u64,
        #[arg(long, value_enum, default_value_t)]
        axis: AxisArg,
        /// Include the full development (all v translates) in the output.
        #[arg(long)]
        develop: bool,
        /// Also build the other axis and check orthogonality of the pair.
        #[arg(long)]
        check_orthogonal: bool,
        #[arg(long, value_enum, default_value_t)]
        format: DecomposeFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find compatible orderings, trace the embedding and report faces,
    /// spectrum and genus.
    Embed {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200_000)]
        max_tries: u64,
        /// Write the full report (including face boundaries) here.
        #[arg(long)]
        faces: Option<PathBuf>,
        /// Write the faces as an edge-colored edge list
        /// (`x y color face_index` per boundary edge) here.
        #[arg(long)]
        edges: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the complete multipartite Cayley graph K_{v/t × t}.
    ExportGraph {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t: u64,
        #[arg(long, value_enum, default_value_t)]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive NH_t(2;2) enumeration (brute-force reference).
    Oracle {
        #[arg(long)]
        t: u64,
        /// Keep one representative per symmetry orbit (row/column swaps,
        /// transpose, negation).
        #[arg(long)]
        reduce: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    CheckFailed,
    Unsupported(String),
    Malformed(String),
    SearchExhausted(String),
    Io(String),
}

impl CliError {
    fn report(&self) -> ExitCode {
        match self {
            CliError::CheckFailed => ExitCode::from(1),
            CliError::Unsupported(msg) => {
                eprintln!("heffter: unsupported: {msg}");
                ExitCode::from(2)
            }
            CliError::Malformed(msg) => {
                eprintln!("heffter: malformed input: {msg}");
                ExitCode::from(3)
            }
            CliError::SearchExhausted(msg) => {
                eprintln!("heffter: search exhausted: {msg}");
                ExitCode::from(4)
            }
            CliError::Io(msg) => {
                eprintln!("heffter: {msg}");
                ExitCode::from(1)
            }
        }
    }
}

fn write_output(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn construct_array(n: u64, t: u64) -> Result<NzsArray, CliError> {
    construct::construct(n, t).map_err(|e| CliError::Unsupported(e.to_string()))
}

fn cmd_construct(n: u64, t: u64, format: ArrayFormat, out: Option<&Path>) -> Result<(), CliError> {
    let a = construct_array(n, t)?;
    let file = ArrayFile::from_array(&a);
    let content = match format {
        ArrayFormat::Json => file.to_json(),
        ArrayFormat::Csv => file.to_csv(),
    };
    write_output(out, &content)
}

fn cmd_verify(input: &Path, report_path: Option<&Path>) -> Result<(), CliError> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", input.display())))?;
    let file = ArrayFile::parse_json(&text).map_err(CliError::Malformed)?;
    let array = file.into_array().map_err(CliError::Malformed)?;
    let report = check_axioms(&array);
    write_output(report_path, &json_line(&report))?;
    if report.overall {
        Ok(())
    } else {
        Err(CliError::CheckFailed)
    }
}

#[derive(Serialize)]
struct OrthogonalOutcome {
    ok: bool,
    violation: Option<OrthogonalityViolation>,
}

#[derive(Serialize)]
struct DecomposeOutput {
    n: u64,
    t: u64,
    v: u64,
    axis: Axis,
    base_blocks: Vec<Vec<u64>>,
    partition: PartitionCheck,
    orthogonal: Option<OrthogonalOutcome>,
    developed: Option<Vec<Vec<u64>>>,
}

fn block_vertices(block: &heffter_core::decompose::PathBlock) -> Vec<u64> {
    block.vertices().iter().map(|r| r.value()).collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_decompose(
    n: u64,
    t: u64,
    axis: AxisArg,
    develop: bool,
    orthogonal: bool,
    format: DecomposeFormat,
    out: Option<&Path>,
    threads: usize,
) -> Result<(), CliError> {
    let a = construct_array(n, t)?;
    let axis = match axis {
        AxisArg::Rows => Axis::Row,
        AxisArg::Cols => Axis::Col,
    };
    let build = |axis: Axis| -> Result<Decomposition, CliError> {
        Decomposition::from_natural_orderings(&a, axis)
            .map_err(|w| CliError::Unsupported(format!("line is not simple: {w:?}")))
    };
    let d = build(axis)?;
    let partition = check_partition_threaded(&d, threads);

    let orthogonal_outcome = if orthogonal {
        let other = build(match axis {
            Axis::Row => Axis::Col,
            Axis::Col => Axis::Row,
        })?;
        let outcome = match check_orthogonal(&d, &other) {
            Ok(()) => OrthogonalOutcome {
                ok: true,
                violation: None,
            },
            Err(v) => OrthogonalOutcome {
                ok: false,
                violation: Some(v),
            },
        };
        Some(outcome)
    } else {
        None
    };

    let ok = partition.ok && orthogonal_outcome.as_ref().is_none_or(|o| o.ok);
    let content = match format {
        DecomposeFormat::Edgelist => {
            let mut s = String::new();
            for (_, block) in d.developed() {
                for (x, y) in block.edges() {
                    s.push_str(&format!("{x} {y}\n"));
                }
            }
            s
        }
        DecomposeFormat::Json => json_line(&DecomposeOutput {
            n,
            t,
            v: a.ctx().modulus(),
            axis,
            base_blocks: d.base_blocks.iter().map(block_vertices).collect(),
            partition,
            orthogonal: orthogonal_outcome,
            developed: develop.then(|| d.developed().map(|(_, b)| block_vertices(&b)).collect()),
        }),
    };
    write_output(out, &content)?;
    if ok {
        Ok(())
    } else {
        Err(CliError::CheckFailed)
    }
}

#[derive(Serialize)]
struct EmbedSummary {
    n: u64,
    t: u64,
    v: u64,
    seed: u64,
    row_dirs: Vec<Direction>,
    col_dirs: Vec<Direction>,
    vertices: u64,
    edges: u64,
    face_count: usize,
    genus: u64,
    spectrum: Vec<SpectrumEntry>,
}

fn cmd_embed(
    n: u64,
    t: u64,
    seed: u64,
    max_tries: u64,
    faces: Option<&Path>,
    edges: Option<&Path>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let a = construct_array(n, t)?;
    let dirs = find_compatible_orderings(&a, seed, max_tries)
        .map_err(|e| CliError::SearchExhausted(e.to_string()))?;
    let rotation = build_rho0(&a, &dirs).map_err(|e| CliError::Unsupported(e.to_string()))?;
    let report: EmbeddingReport = trace_faces(&rotation);
    if let Some(path) = faces {
        write_output(Some(path), &json_line(&report))?;
    }
    if let Some(path) = edges {
        let mut content = String::new();
        for (idx, face) in report.faces.iter().enumerate() {
            let color = match face.color {
                heffter_core::embed::FaceColor::Row => "row",
                heffter_core::embed::FaceColor::Col => "col",
            };
            for m in 0..face.boundary.len() {
                let x = face.boundary[m];
                let y = face.boundary[(m + 1) % face.boundary.len()];
                content.push_str(&format!("{x} {y} {color} {idx}\n"));
            }
        }
        write_output(Some(path), &content)?;
    }
    let summary = EmbedSummary {
        n,
        t,
        v: a.ctx().modulus(),
        seed,
        row_dirs: dirs.row_dirs,
        col_dirs: dirs.col_dirs,
        vertices: report.vertices,
        edges: report.edges,
        face_count: report.face_count,
        genus: report.genus,
        spectrum: report.spectrum,
    };
    write_output(out, &json_line(&summary))
}

fn cmd_export_graph(
    n: u64,
    t: u64,
    format: GraphFormat,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let ctx = ModulusContext::new(n, t).map_err(|e| CliError::Unsupported(e.to_string()))?;
    let edges = heffter_core::decompose::multipartite_edges(&ctx);
    let content = match format {
        GraphFormat::Edgelist => {
            let mut s = String::new();
            for (x, y) in edges {
                s.push_str(&format!("{x} {y}\n"));
            }
            s
        }
        GraphFormat::Dot => {
            let mut s = format!("graph heffter_n{n}_t{t} {{\n");
            // Parts of K_{v/t × t} are the cosets c + J, c ∈ [0, v/t).
            for c in 0..ctx.step() {
                s.push_str(&format!(
                    "  subgraph cluster_{c} {{\n    label=\"part {c}\";\n"
                ));
                for k in 0..ctx.t() {
                    s.push_str(&format!("    {};\n", c + k * ctx.step()));
                }
                s.push_str("  }\n");
            }
            for (x, y) in edges {
                s.push_str(&format!("  {x} -- {y};\n"));
            }
            s.push_str("}\n");
            s
        }
    };
    write_output(out, &content)
}

#[derive(Serialize)]
struct OracleOutput {
    t: u64,
    v: u64,
    count: usize,
    arrays: Vec<Vec<Vec<Option<i64>>>>,
}

fn cmd_oracle(t: u64, reduce: bool, out: Option<&Path>) -> Result<(), CliError> {
    let mut arrays = heffter_core::oracle::enumerate_nh22(t)
        .map_err(|e| CliError::Unsupported(e.to_string()))?;
    if reduce {
        arrays = heffter_core::oracle::reduce_by_symmetry(&arrays);
    }
    let output = OracleOutput {
        t,
        v: 8 + t,
        count: arrays.len(),
        arrays: arrays.iter().map(|a| a.signed_rows()).collect(),
    };
    write_output(out, &json_line(&output))
}

fn effective_threads(flag: usize) -> usize {
    std::env::var("HEFFTER_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(flag)
        .max(1)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let threads = effective_threads(cli.threads);
    match cli.command {
        Command::Construct { n, t, format, out } => cmd_construct(n, t, format, out.as_deref()),
        Command::Verify { input, report } => cmd_verify(&input, report.as_deref()),
        Command::Decompose {
            n,
            t,
            axis,
            develop,
            check_orthogonal,
            format,
            out,
        } => cmd_decompose(
            n,
            t,
            axis,
            develop,
            check_orthogonal,
            format,
            out.as_deref(),
            threads,
        ),
        Command::Embed {
            n,
            t,
            seed,
            max_tries,
            faces,
            edges,
            out,
        } => cmd_embed(
            n,
            t,
            seed,
            max_tries,
            faces.as_deref(),
            edges.as_deref(),
            out.as_deref(),
        ),
        Command::ExportGraph { n, t, format, out } => {
            cmd_export_graph(n, t, format, out.as_deref())
        }
        Command::Oracle { t, reduce, out } => cmd_oracle(t, reduce, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => e.report(),
    }
}
