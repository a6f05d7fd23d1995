//! Thin command-line wrapper over the library pipeline.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bfs4::bfs::calibrate::CalibrationMode;
use bfs4::bfs::complex_f::Corruption;
use bfs4::instance;
use bfs4::pipeline::{self, PipelineOptions};
use bfs4::scalar::DEFAULT_PRIME;

#[derive(Parser)]
#[command(name = "bfs4", version, about = "Build and verify the DG algebra structure on the length-4 big-from-small complex")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the DG algebra axioms of an instance file (and its derived
    /// Koszul algebra).
    VerifyDga {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full construction pipeline and verify the result.
    Bfs {
        file: PathBuf,
        /// Override the ring element r from the instance file.
        #[arg(long)]
        r: Option<String>,
        #[arg(long, default_value = "full")]
        calibration: String,
        /// Output directory for report.json / report.txt.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Prime for the probabilistic rank cross-check.
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        /// Fault injection for negative-control testing:
        /// f2 | prod11 | gamma2.
        #[arg(long)]
        corrupt: Option<String>,
    },
    /// Generate an instance file.
    Gen {
        /// Family: ci | tensor | perturbed.
        kind: String,
        #[arg(long, default_value_t = 0)]
        char: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Base file (instance for `perturbed`, length-3 algebra for
        /// `tensor`).
        #[arg(long)]
        base: Option<PathBuf>,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-render the human-readable report from a run directory.
    Report { dir: PathBuf },
}

fn real_main() -> Result<i32, bfs4::Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::VerifyDga { file, out } => {
            let spec = instance::parse_instance(&file)?;
            let opts = PipelineOptions {
                out_dir: out,
                path_label: Some(file.display().to_string()),
                ..Default::default()
            };
            let outcome = pipeline::run_verify_dga(&spec, &opts)?;
            print!("{}", outcome.report.to_text());
            Ok(if outcome.pass() { 0 } else { 1 })
        }
        Command::Bfs {
            file,
            r,
            calibration,
            out,
            prime,
            corrupt,
        } => {
            let spec = instance::parse_instance(&file)?;
            let mode: CalibrationMode = calibration.parse()?;
            let corruption = match corrupt.as_deref() {
                None => None,
                Some("f2") => Some(Corruption::F2Entry),
                Some("prod11") => Some(Corruption::Prod11Entry),
                Some("gamma2") => Some(Corruption::Gamma2),
                Some(other) => {
                    return Err(bfs4::Error::InvalidParams(format!(
                        "unknown corruption target {other:?}"
                    )))
                }
            };
            let opts = PipelineOptions {
                r_override: r,
                calibration: mode,
                out_dir: out,
                prime,
                corruption,
                path_label: Some(file.display().to_string()),
            };
            let outcome = pipeline::run_bfs(&spec, &opts)?;
            print!("{}", outcome.report.to_text());
            Ok(if outcome.pass() { 0 } else { 1 })
        }
        Command::Gen {
            kind,
            char,
            seed,
            base,
            out,
        } => {
            let spec = match kind.as_str() {
                "ci" => instance::gen_ci(char)?,
                "tensor" => instance::gen_tensor(char, base.as_deref())?,
                "perturbed" => {
                    let base = base.ok_or_else(|| {
                        bfs4::Error::InvalidParams("perturbed requires --base".into())
                    })?;
                    let base_spec = instance::parse_instance(&base)?;
                    instance::gen_perturbed(&base_spec, seed)?
                }
                other => {
                    return Err(bfs4::Error::InvalidParams(format!(
                        "unknown generator {other:?}"
                    )))
                }
            };
            let text = serde_json::to_string_pretty(&spec).expect("instance serializes");
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => println!("{text}"),
            }
            Ok(0)
        }
        Command::Report { dir } => {
            let json = std::fs::read_to_string(dir.join("report.json"))?;
            let value: serde_json::Value =
                serde_json::from_str(&json).map_err(|e| bfs4::Error::SchemaViolation {
                    path: "report.json".into(),
                    detail: e.to_string(),
                })?;
            let checks = value["checks"].as_array().cloned().unwrap_or_default();
            let mut failed = 0usize;
            for c in &checks {
                let name = c["name"].as_str().unwrap_or("?");
                let pass = c["pass"].as_bool().unwrap_or(false);
                if pass {
                    println!("PASS {name}");
                } else {
                    failed += 1;
                    match c["witness"].as_str() {
                        Some(w) => println!("FAIL {name} [{w}]"),
                        None => println!("FAIL {name}"),
                    }
                }
            }
            println!(
                "summary: {} ({} of {} checks failed)",
                if failed == 0 { "PASS" } else { "FAIL" },
                failed,
                checks.len()
            );
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
