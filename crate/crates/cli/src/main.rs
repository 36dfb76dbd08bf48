use std::path::{Path, PathBuf};
use std::process::ExitCode;

use braided_dunkl::cli::{
    acceptance_suite, blocks_config, emit_report, enumerate_group, parse_configs, parse_group_spec,
    run_check, run_suite, Report,
};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "bdunkl",
    version,
    about = "Exact verification of braided Dunkl operators and q-Cherednik presentations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    /// Every acceptance criterion plus the negative controls.
    #[value(name = "paper")]
    Acceptance,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks in a JSON configuration file (one object or an array).
    Verify {
        config: PathBuf,
        /// Report file (single check) or directory (several checks).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a bundled suite of checks.
    Suite {
        #[arg(value_enum)]
        name: SuiteName,
        /// Directory receiving one report per check.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the block decomposition of a deformation matrix.
    Blocks {
        #[arg(long)]
        q: PathBuf,
    },
    /// Print the order of a group, optionally with its elements.
    Group {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        enumerate: bool,
    },
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn report_file_name(k: usize, r: &Report) -> String {
    let stem: String = r
        .name
        .as_deref()
        .unwrap_or(&r.check)
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() {
                c.to_ascii_lowercase()
            } else {
                '_'
            }
        })
        .collect();
    format!("{k:03}_{stem}.json")
}

fn write_reports(reports: &[Report], out: Option<&Path>, single_file: bool) -> Result<(), String> {
    match out {
        None => {
            for r in reports {
                print!("{}", r.to_json());
            }
        }
        Some(path) if single_file => emit_report(&reports[0], path).map_err(|e| e.to_string())?,
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
            for (k, r) in reports.iter().enumerate() {
                emit_report(r, &dir.join(report_file_name(k, r))).map_err(|e| e.to_string())?;
            }
        }
    }
    Ok(())
}

fn summarize(reports: &[Report]) -> bool {
    let mut all = true;
    for r in reports {
        let ok = r.as_expected();
        all &= ok;
        let status = serde_json::to_value(r.status).unwrap_or_default();
        eprintln!(
            "{} {:<12} {} ({} ms){}",
            if ok { "ok  " } else { "FAIL" },
            r.check,
            r.name.as_deref().unwrap_or(""),
            r.duration_ms,
            if ok {
                String::new()
            } else {
                format!(" status {status}")
            },
        );
    }
    all
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Verify { config, out } => {
            let configs = parse_configs(&read(&config)?).map_err(|e| e.to_string())?;
            let reports = if configs.len() == 1 {
                vec![run_check(&configs[0])]
            } else {
                run_suite(&configs)
            };
            write_reports(&reports, out.as_deref(), configs.len() == 1)?;
            Ok(summarize(&reports))
        }
        Command::Suite {
            name: SuiteName::Acceptance,
            out,
        } => {
            let reports = run_suite(&acceptance_suite());
            if out.is_some() {
                write_reports(&reports, out.as_deref(), false)?;
            }
            let ok = summarize(&reports);
            let matched = reports.iter().filter(|r| r.as_expected()).count();
            eprintln!("{matched}/{} reports as expected", reports.len());
            Ok(ok)
        }
        Command::Blocks { q } => {
            let cfg = blocks_config(&read(&q)?).map_err(|e| e.to_string())?;
            let report = run_check(&cfg);
            if let Some(e) = &report.error {
                return Err(e.clone());
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&report.details).map_err(|e| e.to_string())?
            );
            Ok(true)
        }
        Command::Group { spec, enumerate } => {
            let spec = parse_group_spec(&read(&spec)?).map_err(|e| e.to_string())?;
            let (order, elements) = enumerate_group(&spec).map_err(|e| e.to_string())?;
            println!("order {order}");
            if enumerate {
                for e in elements {
                    println!("{e}");
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
