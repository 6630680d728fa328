//! Command-line front end: builds a group, completes its arrangement and
//! renders tables or check reports.

pub mod check;
pub mod commands;
pub mod config;
pub mod fixtures;
pub mod render;

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use crate::check::{run_checks, CheckKind};
use crate::config::RunConfig;
use crate::fixtures::Fixtures;
use crate::render::{Format, Table};

#[derive(Debug, Parser)]
#[command(
    name = "crg",
    version,
    about = "Hyperplane stabilizers of finite complex reflection groups"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// d in G(de, e, r)
    #[arg(long, global = true)]
    pub d: Option<u32>,
    /// e in G(de, e, r) (default 1)
    #[arg(long, global = true)]
    pub e: Option<u32>,
    /// rank r in G(de, e, r)
    #[arg(long, global = true)]
    pub r: Option<usize>,
    /// exceptional group by name, e.g. G25
    #[arg(long, global = true)]
    pub exceptional: Option<String>,
    #[arg(
        long,
        global = true,
        env = "CRG_DATA_DIR",
        default_value = "data/exceptional"
    )]
    pub data_dir: PathBuf,
    #[arg(
        long,
        global = true,
        env = "CRG_FIXTURES_DIR",
        default_value = "data/fixtures"
    )]
    pub fixtures_dir: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    pub format: Format,
    /// refuse to enumerate groups larger than this
    #[arg(long, global = true, default_value_t = crg_core::group::DEFAULT_ORDER_BOUND)]
    pub order_bound: u64,
    /// worker threads (default: all cores)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, rank, conductor and abelianization
    Group {
        #[command(subcommand)]
        what: GroupCommand,
    },
    /// All reflecting hyperplanes with their class and e_H
    Hyperplanes,
    /// N_H, C_H, f_H and the abelianization map for one or all hyperplanes
    Stabilizer {
        #[arg(long)]
        hyperplane: Option<String>,
    },
    /// Hyperplane classes, or N_H and C_H orbits around one hyperplane
    Orbits {
        #[arg(long)]
        hyperplane: Option<String>,
    },
    /// Per-class tables
    Table {
        #[command(subcommand)]
        what: TableCommand,
    },
    /// Natural characters on the stabilizer and their lcm
    Kappa,
    /// Compare computed values with closed forms and reference claims
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
    },
}

#[derive(Debug, Subcommand)]
pub enum GroupCommand {
    Info,
}

#[derive(Debug, Subcommand)]
pub enum TableCommand {
    /// e_H, f_H and d_H per hyperplane class
    Ramification,
}

pub struct Output {
    pub text: String,
    /// Diff of failed checks, for stderr.
    pub diff: Option<String>,
    pub success: bool,
}

impl Cli {
    pub fn config(&self) -> Result<RunConfig> {
        let g = &self.global;
        let selector = RunConfig::selector_from_flags(g.d, g.e, g.r, g.exceptional.clone())?;
        let config = RunConfig {
            selector,
            data_dir: g.data_dir.clone(),
            fixtures_dir: g.fixtures_dir.clone(),
            format: g.format,
            order_bound: g.order_bound,
            jobs: g.jobs,
        };
        config.validate()?;
        Ok(config)
    }
}

fn failure_diff(table: &Table) -> String {
    let mut out = String::new();
    for row in table.rows.iter().filter(|r| r[4] == "FAIL") {
        out.push_str(&format!(
            "{} [{}]\n  - expected: {}\n  + computed: {}\n",
            row[0], row[1], row[2], row[3]
        ));
    }
    out
}

fn execute(cli: &Cli, config: &RunConfig) -> Result<Output> {
    let analysis = config.build()?;
    let a = &analysis;
    let mut diff = None;
    let mut success = true;
    let table = match &cli.command {
        Command::Group {
            what: GroupCommand::Info,
        } => commands::group_info(a),
        Command::Hyperplanes => commands::hyperplanes(a),
        Command::Stabilizer { hyperplane } => commands::stabilizer(a, hyperplane.as_deref())?,
        Command::Orbits { hyperplane } => commands::orbits(a, hyperplane.as_deref())?,
        Command::Table {
            what: TableCommand::Ramification,
        } => commands::table_ramification(a),
        Command::Kappa => commands::kappa(a)?,
        Command::Check { kind } => {
            let fixtures = Fixtures::load(&config.fixtures_dir)?;
            let outcome = run_checks(a, &fixtures, *kind)?;
            if outcome.failures > 0 {
                success = false;
                diff = Some(failure_diff(&outcome.table));
            }
            outcome.table
        }
    };
    Ok(Output {
        text: table.render(config.format)?,
        diff,
        success,
    })
}

/// Parses `args` (program name first) and runs the command.
pub fn run_from_args<I, T>(args: I) -> Result<Output>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    run(&cli)
}

pub fn run(cli: &Cli) -> Result<Output> {
    let config = cli.config()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.jobs {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().context("starting worker pool")?;
    pool.install(|| execute(cli, &config))
}
