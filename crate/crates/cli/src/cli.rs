use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use prioritree::io::{
    nhs_document, parse_document, render_document, render_report, Metadata, ModelDocument,
    ReportFormat,
};
use prioritree::{
    weight_sensitivity, DecisionModel, Element, ElicitationSession, Hierarchy, Snapshot, Verdict,
};

use crate::server;

#[derive(Debug, Parser)]
#[command(
    name = "prioritree",
    version,
    about = "Analytic Hierarchy Process decision engine"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the full pipeline and print the text report.
    Solve {
        model: PathBuf,
        /// Exit with status 2 if any matrix has CR above 0.10.
        #[arg(long)]
        strict: bool,
    },
    /// Validate a model and print per-matrix consistency.
    Check {
        model: PathBuf,
        #[arg(long)]
        strict: bool,
    },
    /// Print the report in the chosen format.
    Report {
        model: PathBuf,
        #[arg(long, default_value = "text")]
        format: ReportFormat,
    },
    /// Sweep one criterion's weight and report where the winner changes.
    Sensitivity {
        model: PathBuf,
        #[arg(long)]
        criterion: String,
    },
    /// Start the HTTP service.
    Serve {
        #[arg(long, env = "PRIORITREE_PORT", default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value_t = IpAddr::V4(Ipv4Addr::LOCALHOST))]
        host: IpAddr,
        /// Directory holding the built web UI, served at `/` when present.
        #[arg(long, env = "PRIORITREE_UI_DIR", default_value = "webui/dist")]
        ui_dir: PathBuf,
    },
    /// Print a skeleton model document.
    Init {
        /// Emit the bundled NHS cloud-service model instead.
        #[arg(long)]
        nhs: bool,
    },
}

/// Exit statuses.
pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;

struct Failed(String);

fn read_model(path: &Path) -> Result<DecisionModel, Failed> {
    let bytes = std::fs::read(path).map_err(|e| Failed(format!("{}: {e}", path.display())))?;
    parse_document(&bytes)
        .and_then(ModelDocument::into_model)
        .map_err(|e| Failed(format!("{}: {e}", path.display())))
}

fn snapshot(model: DecisionModel) -> Snapshot {
    ElicitationSession::from_model(model).evaluate()
}

fn any_inconsistent(snap: &Snapshot) -> bool {
    snap.matrices()
        .filter_map(|m| m.consistency.as_ref())
        .any(|r| r.verdict == Verdict::Inconsistent)
}

fn check_text(model: &DecisionModel, snap: &Snapshot) -> String {
    let h = model.hierarchy();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "ok: {} criteria, {} alternatives, {} judgments",
        h.criteria.len(),
        h.alternatives.len(),
        h.required_judgments()
    );
    for m in snap.matrices() {
        match &m.consistency {
            Some(r) => {
                let _ = writeln!(
                    out,
                    "{:<16} n={:<2} CR={:.4} {}",
                    m.matrix,
                    r.dimension,
                    r.cr,
                    match r.verdict {
                        Verdict::Consistent => "consistent",
                        Verdict::Inconsistent => "inconsistent",
                        Verdict::UndefinedForDimension => "undefined",
                    }
                );
            }
            None => {
                let _ = writeln!(out, "{:<16} no report", m.matrix);
            }
        }
    }
    out
}

fn sensitivity_text(snap: &Snapshot, criterion: &str) -> Result<String, Failed> {
    let syn = snap
        .synthesis
        .as_ref()
        .ok_or_else(|| Failed("model is incomplete".into()))?;
    let r = weight_sensitivity(syn, criterion).map_err(|e| Failed(e.to_string()))?;
    let mut out = String::new();
    let _ = writeln!(out, "criterion: {}", r.criterion);
    let _ = writeln!(out, "current weight: {:.6}", r.current_weight);
    let _ = writeln!(out, "winner: {}", r.winner);
    let _ = writeln!(
        out,
        "stable for weights in [{:.6}, {:.6}]",
        r.stable_interval.0, r.stable_interval.1
    );
    for (side, c) in [("below", &r.lower_crossover), ("above", &r.upper_crossover)] {
        match c {
            Some(c) => {
                let _ = writeln!(
                    out,
                    "{side}: {} takes over at {:.8}",
                    c.challenger, c.weight
                );
            }
            None => {
                let _ = writeln!(out, "{side}: no crossover");
            }
        }
    }
    Ok(out)
}

fn skeleton() -> ModelDocument {
    let h = Hierarchy::new(
        "Describe the decision goal",
        vec![
            Element::new("C1", "First criterion"),
            Element::new("C2", "Second criterion"),
        ],
        vec![
            Element::new("A1", "First alternative"),
            Element::new("A2", "Second alternative"),
        ],
    )
    .expect("skeleton hierarchy is valid");
    let model = DecisionModel::uniform(h).expect("skeleton model is valid");
    ModelDocument::from_model(
        &model,
        Some(Metadata {
            title: Some("New decision".into()),
            ..Metadata::default()
        }),
    )
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, Failed> {
    let io = |e: std::io::Error| Failed(e.to_string());
    match cmd {
        Command::Solve { model, strict } => {
            let snap = snapshot(read_model(&model)?);
            let text =
                render_report(&snap, ReportFormat::Text).map_err(|e| Failed(e.to_string()))?;
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(if strict && any_inconsistent(&snap) {
                EXIT_INCONSISTENT
            } else {
                EXIT_OK
            })
        }
        Command::Check { model, strict } => {
            let m = read_model(&model)?;
            let snap = snapshot(m.clone());
            out.write_all(check_text(&m, &snap).as_bytes())
                .map_err(io)?;
            Ok(if strict && any_inconsistent(&snap) {
                EXIT_INCONSISTENT
            } else {
                EXIT_OK
            })
        }
        Command::Report { model, format } => {
            let snap = snapshot(read_model(&model)?);
            let text = render_report(&snap, format).map_err(|e| Failed(e.to_string()))?;
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Sensitivity { model, criterion } => {
            let snap = snapshot(read_model(&model)?);
            out.write_all(sensitivity_text(&snap, &criterion)?.as_bytes())
                .map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Serve { port, host, ui_dir } => {
            let rt = tokio::runtime::Runtime::new().map_err(io)?;
            rt.block_on(server::serve(SocketAddr::new(host, port), Some(ui_dir)))
                .map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Init { nhs } => {
            let doc = if nhs { nhs_document() } else { skeleton() };
            out.write_all(render_document(&doc).as_bytes())
                .map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the command line; returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}
