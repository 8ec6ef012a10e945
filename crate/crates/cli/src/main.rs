use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use diracbound::cache::{Cache, CACHE_ENV};
use diracbound::commands::{self, MuSpec};
use diracbound::field::parse_q;
use diracbound::record::Record;
use diracbound::spin::SearchOptions;
use diracbound::{Error, Exec};

#[derive(Parser)]
#[command(name = "diracbound", version = diracbound::VERSION, about = "Dirac eigenvalue bounds on homogeneous spaces")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit one JSON object instead of the text summary.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for random μ samples.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of random μ samples.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Maximum number of dominant weights explored by the λ₁ search.
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    /// Skip the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Run all loops on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Smallest eigenvalue of D² on a catalog space or a product AxB.
    Lambda1 { space: String },
    /// Vafa-Witten comparison bound for μ = ones | random:SEED:COUNT | list.
    VafaWitten {
        space: String,
        #[arg(default_value = "ones")]
        mu: String,
    },
    /// Exact checks on the Berger space.
    #[command(subcommand)]
    Berger(BergerCmd),
    /// Index thresholds for maps into spheres and projective spaces.
    #[command(subcommand)]
    Index(IndexCmd),
    #[command(subcommand)]
    Catalog(CatalogCmd),
    #[command(subcommand)]
    Cache(CacheCmd),
}

#[derive(Subcommand)]
enum BergerCmd {
    Verify {
        /// Frame fixture replacing the shipped one.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum IndexCmd {
    /// Target S^{2m}.
    Sphere {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        /// Â-genus of the source.
        #[arg(long, default_value = "1")]
        ahat: String,
        /// Degree of the map.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        deg: String,
    },
    /// Target CP^{2m-1}.
    Cpn {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
}

#[derive(Subcommand)]
enum CacheCmd {
    Clear,
}

fn usage(msg: String) -> Error {
    Error::Parse(msg)
}

fn run(cli: &Cli) -> Result<Option<Record>, Error> {
    let g = &cli.global;
    let exec = if g.sequential { Exec::Sequential } else { Exec::Parallel };
    let mut opts = SearchOptions { exec, ..SearchOptions::default() };
    if let Some(b) = g.budget {
        opts.budget = b;
    }
    let cache_dir = g.cache_dir.clone().unwrap_or_else(Cache::default_dir);
    let cache = (!g.no_cache).then(|| Cache::new(cache_dir.clone()));
    let cache = cache.as_ref();
    let rec = match &cli.command {
        Command::Lambda1 { space } => commands::lambda1_command(space, opts, cache)?,
        Command::VafaWitten { space, mu } => {
            let spec = match (g.seed, g.samples) {
                (None, None) => MuSpec::parse(mu)?,
                (seed, samples) => {
                    if mu != "ones" {
                        return Err(usage("give either a μ-spec or --seed/--samples, not both".into()));
                    }
                    MuSpec::Random { seed: seed.unwrap_or(0), count: samples.unwrap_or(100) }
                }
            };
            commands::vafa_witten_command(space, &spec, opts, cache)?
        }
        Command::Berger(BergerCmd::Verify { fixture }) => {
            let text = fixture.as_ref().map(std::fs::read_to_string).transpose()?;
            commands::berger_verify_command(text.as_deref(), exec, cache)?
        }
        Command::Index(IndexCmd::Sphere { m, k, ahat, deg }) => {
            let a = parse_q(ahat).ok_or_else(|| usage(format!("bad --ahat {ahat:?}")))?;
            let d = deg.parse().map_err(|_| usage(format!("bad --deg {deg:?}")))?;
            commands::index_sphere_command(*m, *k, &a, &d)?
        }
        Command::Index(IndexCmd::Cpn { m, k }) => commands::index_cpn_command(*m, *k)?,
        Command::Catalog(CatalogCmd::List) => commands::catalog_list_command(),
        Command::Cache(CacheCmd::Clear) => {
            let n = Cache::new(cache_dir.clone()).clear()?;
            if !g.json {
                println!("removed {n} entries from {}", cache_dir.display());
                return Ok(None);
            }
            let mut r = Record::new("cache clear", None, serde_json::json!({ "dir": cache_dir.display().to_string() }));
            r.result = serde_json::json!({ "removed": n });
            r
        }
    };
    Ok(Some(rec))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(rec)) => {
            let text = if cli.global.json { format!("{}\n", rec.to_json_string()) } else { rec.summary() };
            // ignore a closed pipe
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if rec.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) | Error::Config(_) | Error::Domain(_) | Error::Unsupported(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
