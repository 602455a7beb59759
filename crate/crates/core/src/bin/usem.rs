use std::fs;
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use usem_core::model::Timestamp;
use usem_core::rdf::Iri;
use usem_core::service::{serve, Config, Engine, IngestBatch, ServiceError};

#[derive(Parser)]
#[command(name = "usem", version, about = "Semantic user modeling from Social Web activity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ingest adapter records and Turtle observations into the store.
    Ingest {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        twitter: Vec<PathBuf>,
        #[arg(long)]
        citeulike: Vec<PathBuf>,
        #[arg(long)]
        linkedin: Vec<PathBuf>,
        /// Turtle file with observations, persons or resource descriptions.
        #[arg(long)]
        observations: Vec<PathBuf>,
    },
    /// Print a user's profile as Turtle.
    Profile {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        user: String,
        /// Defaults to the latest evidence time in the store.
        #[arg(long)]
        as_of: Option<String>,
    },
    /// Run a SPARQL SELECT against the store and print TSV.
    Query {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        sparql: PathBuf,
    },
    /// Serve the HTTP API.
    Serve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        port: Option<u16>,
        #[arg(long, default_value = "127.0.0.1")]
        bind: IpAddr,
    },
    /// Print concept pairs that co-occur often enough to suggest skos:related.
    Discover {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
}

fn read(path: &Path) -> Result<String, ServiceError> {
    fs::read_to_string(path).map_err(|e| ServiceError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn records(paths: &[PathBuf]) -> Result<Vec<serde_json::Value>, ServiceError> {
    let mut out = Vec::new();
    for p in paths {
        let v: Vec<serde_json::Value> = serde_json::from_str(&read(p)?)
            .map_err(|e| ServiceError::Data(format!("{}: expected a JSON array of records: {e}", p.display())))?;
        out.extend(v);
    }
    Ok(out)
}

fn engine(config: &Path) -> Result<(Config, Engine), ServiceError> {
    let c = Config::load(config)?;
    let e = Engine::from_config(&c)?;
    Ok((c, e))
}

fn run(cli: Cli) -> Result<(), ServiceError> {
    match cli.command {
        Command::Ingest {
            config,
            twitter,
            citeulike,
            linkedin,
            observations,
        } => {
            let (_, engine) = engine(&config)?;
            let batch = IngestBatch {
                twitter: records(&twitter)?,
                citeulike: records(&citeulike)?,
                linkedin: records(&linkedin)?,
                turtle: observations.iter().map(|p| read(p)).collect::<Result<_, _>>()?,
            };
            let report = engine.ingest(&batch)?;
            if !engine.save()? {
                eprintln!("warning: no paths.store configured; ingested data was not persisted");
            }
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        }
        Command::Profile { config, user, as_of } => {
            let (_, engine) = engine(&config)?;
            let user = Iri::new(user).map_err(|e| ServiceError::Config(format!("--user: {e}")))?;
            let as_of = match as_of {
                Some(s) => Some(Timestamp::parse(&s).map_err(|e| ServiceError::Config(format!("--as-of: {e}")))?),
                None => None,
            };
            print!("{}", engine.profile_turtle(&user, as_of)?);
        }
        Command::Query { config, sparql } => {
            let (_, engine) = engine(&config)?;
            print!("{}", engine.query_tsv(&read(&sparql)?)?);
        }
        Command::Serve { config, port, bind } => {
            let (c, engine) = engine(&config)?;
            let addr = SocketAddr::new(bind, port.unwrap_or(c.port));
            let rt = tokio::runtime::Runtime::new().map_err(|e| ServiceError::Config(format!("runtime: {e}")))?;
            eprintln!("listening on http://{addr}");
            rt.block_on(serve(Arc::new(engine), addr))
                .map_err(|e| ServiceError::Config(format!("{addr}: {e}")))?;
        }
        Command::Discover { config, k } => {
            let (_, engine) = engine(&config)?;
            for (a, b) in engine.discover(k)? {
                println!("{a}\t{b}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
