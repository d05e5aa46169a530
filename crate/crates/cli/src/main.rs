//! `subdist`: exact Cayley balls and subgroup distortion tables.

mod config;
mod ops;
mod output;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context as _, Result};
use clap::{Args, Parser, Subcommand};

use config::{Format, Op, Range, RunConfig};
use output::Stage;
use subdist::cayley::enumerate_ball;

const COLUMNS_HELP: &str = "\
CSV columns:
  ball                radius,sphere_size,cumulative_size,exactness_flag
  delta, nabla, mu    m,n,value,exactness_flag,witness   (m empty for delta and nabla)
  sandwich            m,n,lower,mu,upper,holds,exactness_flag
  nu                  m,n,value,exactness_flag,witness,unreachable
  qc                  n,M,exactness_flag,targets
  design-ell          z,ell,f,exactness_flag; then plateaus and certificate tables
  paper-suite         id,claim,status,reason,detail

exactness_flag is one of exact, lower-bound, upper-uncertain. Witnesses are
shortest words. Ranges are inclusive: `1..8`, `1,2,4` or `5`.
JSON output is {\"schema_version\": 1, \"tables\": [{name, columns, rows}]}.";

#[derive(Parser)]
#[command(name = "subdist", version, about = "Exact subgroup distortion invariants", after_help = COLUMNS_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output directory for tables and the manifest; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Clone)]
struct GroupArgs {
    /// Group identifier, e.g. `heisenberg`, `bs1p:2`, `free-abelian:2`, `free:2`, `product(A, B)`.
    #[arg(long)]
    group: String,
    /// Ball radius.
    #[arg(long)]
    radius: u32,
    #[arg(long, default_value_t = subdist::cayley::DEFAULT_NODE_CAP)]
    node_cap: usize,
    #[arg(long, default_value_t = subdist::distortion::DEFAULT_SEARCH_CAP)]
    search_cap: usize,
}

#[derive(Args, Clone)]
struct SubArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Subgroup identifier, e.g. `center`, `gen-a`, `diagonal`, `whole`, `product(S, T)`.
    #[arg(long)]
    subgroup: String,
}

#[derive(Subcommand)]
enum Command {
    /// Growth table of the ball.
    Ball {
        #[command(flatten)]
        g: GroupArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Upper distortion Δ(n).
    Delta {
        #[command(flatten)]
        s: SubArgs,
        #[arg(long)]
        n: String,
        #[command(flatten)]
        common: Common,
    },
    /// Lower distortion ∇(n).
    Nabla {
        #[command(flatten)]
        s: SubArgs,
        #[arg(long)]
        n: String,
        #[command(flatten)]
        common: Common,
    },
    /// Generalized distortion μ(m,n).
    Mu {
        #[command(flatten)]
        s: SubArgs,
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
        #[command(flatten)]
        common: Common,
    },
    /// Pointwise bounds ⌈Δ(n)/Δ(m)⌉ ≤ μ(m,n) ≤ ⌈Δ(n)/(∇(m)−1)⌉.
    Sandwich {
        #[command(flatten)]
        s: SubArgs,
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
        #[command(flatten)]
        common: Common,
    },
    /// ν(m,n) on the subgroup with the induced metric.
    Nu {
        #[command(flatten)]
        s: SubArgs,
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
        #[arg(long)]
        truncation: u32,
        #[arg(long, default_value_t = 0)]
        slack: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Prescribed length function with plateau and subadditivity certificates.
    DesignEll {
        /// `sqrt`, `log-scaled` or `power:k`.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 6)]
        k_max: u32,
        #[arg(long, default_value_t = 10_000)]
        grid_max: u64,
        #[arg(long, default_value_t = 100_000)]
        random_pairs: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Geodesic excursion profile M(n); with --lambda also searches quasi-geodesics.
    Qc {
        #[command(flatten)]
        s: SubArgs,
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 8)]
        d_cap: u32,
        /// λ, e.g. `3` or `3/2`.
        #[arg(long)]
        lambda: Option<String>,
        /// C, e.g. `0` or `1/2`.
        #[arg(long)]
        c: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        path_cap: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Fixed suite of worked-example checks.
    PaperSuite {
        #[arg(long)]
        heisenberg_radius: Option<u32>,
        #[arg(long)]
        bs_radius: Option<u32>,
        #[arg(long)]
        z2_radius: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Run every operation in a TOML config.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

fn text(s: &str) -> Range {
    Range::Text(s.to_string())
}

fn with_common(mut cfg: RunConfig, c: Common) -> RunConfig {
    cfg.format = c.format;
    cfg.output = c.output.map(|p| p.to_string_lossy().into_owned());
    cfg.seed = c.seed;
    cfg
}

fn with_group(mut cfg: RunConfig, g: GroupArgs, sub: Option<String>) -> RunConfig {
    cfg.group = Some(g.group);
    cfg.radius = Some(g.radius);
    cfg.node_cap = g.node_cap;
    cfg.search_cap = g.search_cap;
    cfg.subgroup = sub;
    cfg
}

fn sub_config(s: SubArgs, op: Op, common: Common) -> RunConfig {
    with_common(with_group(RunConfig::new(vec![op]), s.group, Some(s.subgroup)), common)
}

fn build_config(cmd: Command) -> Result<RunConfig> {
    Ok(match cmd {
        Command::Ball { g, common } => with_common(with_group(RunConfig::new(vec![Op::Ball]), g, None), common),
        Command::Delta { s, n, common } => sub_config(s, Op::Delta { n: text(&n) }, common),
        Command::Nabla { s, n, common } => sub_config(s, Op::Nabla { n: text(&n) }, common),
        Command::Mu { s, m, n, common } => sub_config(s, Op::Mu { m: text(&m), n: text(&n) }, common),
        Command::Sandwich { s, m, n, common } => sub_config(s, Op::Sandwich { m: text(&m), n: text(&n) }, common),
        Command::Nu { s, m, n, truncation, slack, common } => {
            sub_config(s, Op::Nu { m: text(&m), n: text(&n), truncation, slack }, common)
        }
        Command::Qc { s, n, d_cap, lambda, c, path_cap, common } => {
            sub_config(s, Op::Qc { n: text(&n), d_cap, lambda, c, path_cap }, common)
        }
        Command::DesignEll { family, k_max, grid_max, random_pairs, common } => {
            with_common(RunConfig::new(vec![Op::DesignEll { family, k_max, grid_max, random_pairs }]), common)
        }
        Command::PaperSuite { heisenberg_radius, bs_radius, z2_radius, common } => with_common(
            RunConfig::new(vec![Op::PaperSuite { heisenberg_radius, bs_radius, z2_radius }]),
            common,
        ),
        Command::Run { config } => {
            let raw = fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
            RunConfig::parse(&raw).with_context(|| format!("in {}", config.display()))?
        }
    })
}

/// Runs a validated config, writing tables to stdout or the output directory.
pub fn run(cfg: &RunConfig) -> Result<()> {
    cfg.validate()?;
    let mut stages = Vec::new();
    let needs_group = cfg.ops.iter().any(Op::needs_group);
    let (group, sub) = match (&cfg.group, needs_group) {
        (Some(g), true) => {
            let t = Instant::now();
            let (g, s) = ops::resolve(g, cfg.subgroup.as_deref())?;
            stages.push(Stage { name: "resolve".into(), wall_clock_ms: ms(t) });
            (Some(g), s)
        }
        _ => (None, None),
    };
    let ball = match group {
        Some(g) => {
            let t = Instant::now();
            let radius = cfg.radius.expect("validated");
            let b = enumerate_ball(g, radius, cfg.node_cap)?;
            stages.push(Stage { name: "ball".into(), wall_clock_ms: ms(t) });
            Some(b)
        }
        None => None,
    };
    let cx = ops::Context { ball: ball.as_ref(), sub: sub.as_ref(), search_cap: cfg.search_cap, seed: cfg.seed };

    let mut files = Vec::new();
    let dir = cfg.output.as_ref().map(PathBuf::from);
    if let Some(d) = &dir {
        fs::create_dir_all(d).with_context(|| format!("creating {}", d.display()))?;
    }
    let stdout = io::stdout();
    let mut all = Vec::new();
    for (i, op) in cfg.ops.iter().enumerate() {
        let t = Instant::now();
        let tables = ops::run_op(op, &cx).with_context(|| format!("op {} (`{}`)", i + 1, op.name()))?;
        stages.push(Stage { name: format!("{:02}-{}", i + 1, op.name()), wall_clock_ms: ms(t) });
        match &dir {
            Some(d) => {
                let ext = match cfg.format {
                    Format::Csv => "csv",
                    Format::Json => "json",
                };
                let name = format!("{:02}-{}.{ext}", i + 1, op.name());
                let mut f = io::BufWriter::new(fs::File::create(d.join(&name))?);
                output::write_stream(&mut f, &tables, cfg.format)?;
                f.flush()?;
                files.push(name);
            }
            None => all.extend(tables),
        }
    }
    match &dir {
        Some(d) => {
            let m = output::manifest(cfg, &stages, &files);
            fs::write(d.join("manifest.json"), serde_json::to_string_pretty(&m)? + "\n")?;
        }
        None => output::write_stream(&mut stdout.lock(), &all, cfg.format)?,
    }
    Ok(())
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match build_config(cli.command).and_then(|cfg| run(&cfg)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
