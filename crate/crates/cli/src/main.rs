use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use multimult_cli::{default_cache_dir, parse_instance, run_instance, DiskCache, RunOptions};

#[derive(Parser)]
#[command(name = "multimult", version, about = "Mixed multiplicities of monomial ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every request of an instance file.
    Run {
        file: PathBuf,
        /// Write the JSON report here (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Neither read nor write the table cache.
        #[arg(long)]
        no_cache: bool,
        /// Doublings allowed for the interpolation base offset.
        #[arg(long, value_name = "N")]
        window_cap: Option<u32>,
        /// Doublings allowed for the strand band.
        #[arg(long, value_name = "N")]
        band_cap: Option<u32>,
        /// Requests run concurrently.
        #[arg(long, value_name = "K", default_value_t = 1)]
        jobs: usize,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let Command::Run {
        file,
        json,
        no_cache,
        window_cap,
        band_cap,
        jobs,
    } = cli.command;

    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    let inst = match parse_instance(&text) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("{}:{e}", file.display());
            return ExitCode::from(2);
        }
    };
    let cache = if no_cache {
        None
    } else {
        match DiskCache::open(default_cache_dir()) {
            Ok(c) => Some(c),
            Err(e) => {
                log::warn!("cache disabled: {e}");
                None
            }
        }
    };
    let opts = RunOptions {
        window_cap,
        band_cap,
        jobs,
    };
    let report = run_instance(&inst, &opts, cache.as_ref().map(|c| c as _));
    if let Some(c) = &cache {
        log::info!(
            "cache {}: {} hits, {} misses, {} discarded",
            c.dir().display(),
            c.hits(),
            c.misses(),
            c.discarded()
        );
    }
    match json.as_deref() {
        Some(p) if p.as_os_str() == "-" => print!("{}", report.to_json()),
        Some(p) => {
            if let Err(e) = std::fs::write(p, report.to_json()) {
                eprintln!("{}: {e}", p.display());
                return ExitCode::from(2);
            }
            print!("{}", report.to_text());
        }
        None => print!("{}", report.to_text()),
    }
    if report.has_mismatch() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
