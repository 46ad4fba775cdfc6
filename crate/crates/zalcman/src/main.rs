use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zalcman::config::parse_norm;
use zalcman::report::write_report;
use zalcman::{
    emit_report, run_campaign, CampaignConfig, CampaignKind, HarnessError, OutputFormat,
};
use zalcman_core::NormKind;

#[derive(Parser)]
#[command(
    name = "zalcman",
    version,
    about = "Verify Zalcman-type coefficient bounds for starlike functions and mappings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded verification campaign.
    Verify {
        #[arg(value_enum)]
        campaign: VerifyCampaign,
        #[command(flatten)]
        common: CommonArgs,
        /// Number of samples (campaign-specific default).
        #[arg(long)]
        samples: Option<usize>,
        /// Complex dimension n of C^n.
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Norm family: l2, sup, lp:P or l1 (campaign-specific default).
        #[arg(long, value_parser = norm_arg)]
        norm: Option<NormKind>,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Search for measures maximizing |a_m a_n - a_{m+n-1}|.
    Search {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Refinement evaluations after the initial batch.
        #[arg(long, default_value_t = 5000)]
        budget: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args)]
struct CommonArgs {
    #[arg(long, env = "ZALCMAN_SEED", default_value_t = 0)]
    seed: u64,
    /// Allowed slack below zero margin (campaign-specific default).
    #[arg(long)]
    tolerance: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyCampaign {
    Caratheodory,
    Zalcman1d,
    Ball,
    Domain,
    Gradients,
    Reduction,
    Sharpness,
}

impl From<VerifyCampaign> for CampaignKind {
    fn from(c: VerifyCampaign) -> Self {
        match c {
            VerifyCampaign::Caratheodory => CampaignKind::Caratheodory,
            VerifyCampaign::Zalcman1d => CampaignKind::Zalcman1d,
            VerifyCampaign::Ball => CampaignKind::ZalcmanBall,
            VerifyCampaign::Domain => CampaignKind::ZalcmanDomain,
            VerifyCampaign::Gradients => CampaignKind::Gradients,
            VerifyCampaign::Reduction => CampaignKind::Reduction,
            VerifyCampaign::Sharpness => CampaignKind::Sharpness,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

fn norm_arg(s: &str) -> Result<NormKind, String> {
    parse_norm(s).map_err(|e| e.to_string())
}

fn apply_common(cfg: &mut CampaignConfig, common: CommonArgs) {
    cfg.seed = common.seed;
    if let Some(t) = common.tolerance {
        cfg.tolerance = t;
    }
    cfg.out = common.out;
    cfg.format = match common.format {
        FormatArg::Json => OutputFormat::Json,
        FormatArg::Csv => OutputFormat::Csv,
    };
}

fn config_from(cli: Cli) -> CampaignConfig {
    match cli.command {
        Command::Verify {
            campaign,
            common,
            samples,
            dim,
            norm,
            m,
            n,
        } => {
            let kind = CampaignKind::from(campaign);
            let mut cfg = CampaignConfig::new(kind).with_order(m, n);
            cfg.dim = dim;
            if let Some(samples) = samples {
                cfg.samples = samples;
            }
            if let Some(norm) = norm {
                cfg.norm = norm;
            }
            apply_common(&mut cfg, common);
            cfg
        }
        Command::Search {
            m,
            n,
            budget,
            common,
        } => {
            let mut cfg = CampaignConfig::new(CampaignKind::Search)
                .with_order(m, n)
                .with_budget(budget);
            apply_common(&mut cfg, common);
            cfg
        }
    }
}

fn run(cfg: &CampaignConfig) -> Result<bool, HarnessError> {
    let report = run_campaign(cfg)?;
    match &cfg.out {
        Some(path) => emit_report(&report, cfg.format, path)?,
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_report(&report, cfg.format, &mut lock)?;
            lock.flush()?;
        }
    }
    eprintln!("{}", report.summary());
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cfg = config_from(Cli::parse());
    match run(&cfg) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("zalcman: {e}");
            ExitCode::from(2)
        }
    }
}
