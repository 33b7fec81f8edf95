use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use slicescan::braid::{bennequin_euler, s_quasipositive};
use slicescan::khovanov::{homological_width, poincare_polynomial, KhovanovConfig};
use slicescan::pipeline::{
    homfly_polynomial, khovanov_ranks, parse_corpus, scan_file, to_csv, to_json, AnalysisOptions, DiskCache, KnotInput,
};
use slicescan::polyinv::alexander;
use slicescan::rasmussen::{extract_s, slice_bennequin_bound};

/// Knot invariants and sliceness scans.
///
/// A KNOT argument is `pd:<PD code>`, `dt:<DT code>` or `braid:<k | word>`;
/// the prefix may be omitted when the notation is unambiguous.
#[derive(Parser, Debug)]
#[command(name = "slicescan", version)]
struct Cli {
    /// Largest diagram accepted for Khovanov homology.
    #[arg(long, global = true, default_value_t = 16)]
    max_crossings: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Khovanov Poincaré polynomial and homological width.
    Kh { knot: String },
    /// Rasmussen invariant.
    S { knot: String },
    /// HOMFLY polynomial as a monomial list in v and z.
    Homfly { knot: String },
    /// Alexander polynomial as a monomial list in t.
    Alexander { knot: String },
    /// s, Euler characteristic and genus bound of quasipositive braids, one per line.
    BraidS { braidfile: PathBuf },
    /// Analyze every knot of a corpus file.
    Scan {
        corpus: PathBuf,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Directory for cached homology and polynomials.
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let opts = AnalysisOptions {
        khovanov: KhovanovConfig { max_crossings: cli.max_crossings, ..Default::default() },
        ..Default::default()
    };
    match run(cli.command, opts) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn knot(spec: &str) -> Result<slicescan::PlanarDiagram, String> {
    KnotInput::from_spec("knot", spec).and_then(|k| k.diagram()).map_err(|e| e.to_string())
}

fn run(command: Command, mut opts: AnalysisOptions) -> Result<ExitCode, String> {
    match command {
        Command::Kh { knot: spec } => {
            let r = khovanov_ranks(&knot(&spec)?, &opts).map_err(|e| e.to_string())?;
            println!("{}", poincare_polynomial(&r).pretty(("t", "q")));
            println!("width {}", homological_width(&r).map_err(|e| e.to_string())?);
        }
        Command::S { knot: spec } => {
            let r = khovanov_ranks(&knot(&spec)?, &opts).map_err(|e| e.to_string())?;
            println!("{}", extract_s(&r).map_err(|e| e.to_string())?);
        }
        Command::Homfly { knot: spec } => {
            let p = homfly_polynomial(&knot(&spec)?, &opts).map_err(|e| e.to_string())?;
            println!("{}", p.to_monomial_list(("v", "z")));
        }
        Command::Alexander { knot: spec } => {
            let p = homfly_polynomial(&knot(&spec)?, &opts).map_err(|e| e.to_string())?;
            println!("{}", alexander(&p).map_err(|e| e.to_string())?.to_monomial_list("t"));
        }
        Command::BraidS { braidfile } => return braid_s(&braidfile),
        Command::Scan { corpus, jobs, cache, format } => {
            if let Some(dir) = cache {
                opts.cache = Some(DiskCache::open(&dir).map_err(|e| e.to_string())?);
            }
            let (rows, summary) = scan_file(&corpus, &opts, jobs).map_err(|e| e.to_string())?;
            match format {
                Format::Csv => print!("{}", to_csv(&rows)),
                Format::Json => println!("{}", to_json(&rows, &summary)),
            }
            eprintln!("{summary}");
            if summary.errors > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn braid_s(path: &PathBuf) -> Result<ExitCode, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut failed = false;
    for (name, entry) in parse_corpus(&text) {
        let line = entry.and_then(|k| {
            let b = k.braid().ok_or_else(|| slicescan::Error::Parse("not a braid".into()))??;
            let factors = b.quasipositive_factors()?;
            let bound = slice_bennequin_bound(&b)?;
            Ok(format!(
                "b={factors} k={} s={} chi={} g4>={bound}",
                b.strands(),
                s_quasipositive(factors, b.strands()),
                bennequin_euler(factors, b.strands()),
            ))
        });
        match line {
            Ok(l) => println!("{name}\t{l}"),
            Err(e) => {
                failed = true;
                println!("{name}\terror: {e}");
            }
        }
    }
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}
