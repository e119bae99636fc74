mod config;

use std::io::Write;
use std::process::ExitCode;

use config::{parse_config, Command, Format, RunConfig, BITS_ENV};
use jumpdet::verify::{
    all_pass, asymptote_report, det_report, identity_report, moments_report, recurrence_report, sweep_report,
    verify_report, ReportRow, Setup,
};
use jumpdet::{Error, PrecisionContext};
use log::info;

/// Process exit codes.
mod exit {
    pub const OK: u8 = 0;
    pub const CHECK_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const DEGENERATE_PIVOT: u8 = 3;
    pub const PRECISION_VALIDATION: u8 = 4;
    pub const QUADRATURE: u8 = 5;
    pub const OTHER: u8 = 6;
    pub const IO: u8 = 7;
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::DegeneratePivot { .. } => exit::DEGENERATE_PIVOT,
        Error::PrecisionValidation { .. } => exit::PRECISION_VALIDATION,
        Error::QuadratureFailure(_) => exit::QUADRATURE,
        Error::StencilFailure { source, .. } => error_code(source),
        Error::Domain(_) | Error::BetaZero | Error::InvalidPrecision(_) => exit::USAGE,
        _ => exit::OTHER,
    }
}

fn build_rows(cfg: &RunConfig) -> Result<Vec<ReportRow>, Error> {
    let ctx = PrecisionContext::with_bits(cfg.bits)?;
    let mut setup = Setup::new(ctx, cfg.beta, cfg.place, cfg.ns.clone());
    setup.samples = cfg.samples;
    setup.seed = cfg.seed;
    match cfg.command {
        Command::Moments => moments_report(&setup),
        Command::Det => det_report(&setup),
        Command::Recurrence => recurrence_report(&setup),
        Command::Identity => identity_report(&setup),
        Command::Asymptote => asymptote_report(&setup),
        Command::Sweep => sweep_report(&setup, cfg.suite),
        Command::Verify => verify_report(&setup, cfg.suite),
    }
}

fn render(rows: &[ReportRow], format: Format) -> Result<Vec<u8>, String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_vec_pretty(rows).map_err(|e| e.to_string())?;
            s.push(b'\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r).map_err(|e| e.to_string())?;
            }
            w.into_inner().map_err(|e| e.to_string())
        }
    }
}

fn run(cfg: &RunConfig) -> u8 {
    info!("{:?} at {} bits over n = {:?}", cfg.command, cfg.bits, cfg.ns);
    let rows = match build_rows(cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return error_code(&e);
        }
    };
    let bytes = match render(&rows, cfg.format) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: cannot encode the report: {e}");
            return exit::IO;
        }
    };
    let written = match &cfg.output {
        Some(p) => std::fs::write(p, &bytes).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().lock().write_all(&bytes).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write the report: {e}");
        return exit::IO;
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    let unvalidated = rows.iter().filter(|r| !r.validated).count();
    eprintln!("{} rows, {failed} failed, {unvalidated} not reproduced at {} bits", rows.len(), cfg.bits * 2);
    if unvalidated > 0 {
        exit::PRECISION_VALIDATION
    } else if all_pass(&rows) {
        exit::OK
    } else {
        exit::CHECK_FAILED
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cfg = match parse_config(std::env::args_os(), std::env::var(BITS_ENV).ok()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(exit::USAGE);
        }
    };
    ExitCode::from(run(&cfg))
}
