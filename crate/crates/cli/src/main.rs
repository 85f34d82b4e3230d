//! Command-line front end: compute information quantities for a (state,
//! channel) pair, verify the identities and inequalities on concrete
//! inputs, and run seeded verification campaigns.
//!
//! Exit codes are a stable contract: 0 pass, 1 check failed, 2 parse error,
//! 3 validation error, 4 config error.

mod format;

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use format::sig12;
use qpair::campaign::CheckKind;
use qpair::{
    check_dpi, check_exchange_identity, check_marginal_consistency, check_strong_subadditivity,
    check_subadditivity, info_report, named_channel, run_campaign, CampaignConfig, ChannelKind,
    CheckResult, DensityMatrix, FactorShape, KrausChannel,
};

#[derive(Parser)]
#[command(
    name = "qpair",
    version,
    about = "Purify (state, channel) pairs, compute the derived information \
             quantities, and verify the identities and inequalities behind them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute entropy and information quantities for a (state, channel) pair.
    Compute {
        /// State file ({"rho": [[[re,im],..],..]}); - reads standard input.
        #[arg(long)]
        state: String,
        /// Channel file ({"kraus": [matrix,..]}) or shorthand name[:param]
        /// (identity[:d], depolarizing:p, dephasing:p, amplitude_damping:g,
        /// isometry_embed:dout).
        #[arg(long)]
        channel: String,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Check one identity or inequality on concrete inputs.
    Verify {
        #[command(subcommand)]
        check: Verify,
    },
    /// Run a seeded random verification campaign.
    Sample {
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest input dimension drawn (inputs range over 2..=max).
        #[arg(long, default_value_t = 4)]
        din_max: usize,
        /// Largest output dimension drawn (outputs range over 2..=max).
        #[arg(long, default_value_t = 4)]
        dout_max: usize,
        /// Largest Kraus family size drawn.
        #[arg(long, default_value_t = 5)]
        kraus_max: usize,
        /// Comma-separated subset of dpi,subadd,marginal,exchange,ssa.
        #[arg(long, default_value = "dpi,subadd,marginal,exchange,ssa")]
        checks: String,
        /// Inequality tolerance; identity checks use a tenth of it.
        #[arg(long, default_value_t = 1e-9, allow_hyphen_values = true)]
        tol: f64,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Data processing inequality I_c(rho, phi2 . phi1) <= I_c(rho, phi1).
    Dpi {
        #[arg(long)]
        state: String,
        #[arg(long)]
        channel1: String,
        #[arg(long)]
        channel2: String,
        #[arg(long, default_value_t = 1e-9, allow_hyphen_values = true)]
        tol: f64,
    },
    /// Subadditivity of mutual information on a bipartite input.
    Subadd {
        #[arg(long)]
        state: String,
        #[arg(long)]
        channel1: String,
        #[arg(long)]
        channel2: String,
        #[arg(long, default_value_t = 1e-9, allow_hyphen_values = true)]
        tol: f64,
    },
    /// Marginal identity behind the data processing inequality.
    Marginal {
        #[arg(long)]
        state: String,
        #[arg(long)]
        channel1: String,
        #[arg(long)]
        channel2: String,
        #[arg(long, default_value_t = 1e-10, allow_hyphen_values = true)]
        tol: f64,
    },
    /// Exchange identities of a single purification.
    Exchange {
        #[arg(long)]
        state: String,
        #[arg(long)]
        channel: String,
        #[arg(long, default_value_t = 1e-10, allow_hyphen_values = true)]
        tol: f64,
    },
    /// Strong subadditivity of entropy on a tripartite state.
    Ssa {
        #[arg(long)]
        state: String,
        /// Comma-separated factor dimensions, e.g. 2,2,2.
        #[arg(long)]
        dims: String,
        #[arg(long, default_value_t = 1e-9, allow_hyphen_values = true)]
        tol: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Output {
    Text,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

type CliResult<T> = Result<T, Failure>;

impl Failure {
    fn parse(path: &str, err: impl std::fmt::Display) -> Self {
        Failure {
            code: 2,
            message: format!("parse error: {path}: {err}"),
        }
    }

    fn validation(err: impl std::fmt::Display) -> Self {
        Failure {
            code: 3,
            message: format!("validation error: {err}"),
        }
    }

    fn config(err: impl std::fmt::Display) -> Self {
        Failure {
            code: 4,
            message: format!("config error: {err}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("{}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Compute {
            state,
            channel,
            output,
        } => cmd_compute(&state, &channel, output),
        Command::Verify { check } => cmd_verify(check),
        Command::Sample {
            trials,
            seed,
            din_max,
            dout_max,
            kraus_max,
            checks,
            tol,
        } => cmd_sample(trials, seed, din_max, dout_max, kraus_max, &checks, tol),
    }
}

/// How an input is named in error messages; stdin gets a readable alias.
fn display_name(path: &str) -> &str {
    if path == "-" {
        "<stdin>"
    } else {
        path
    }
}

fn read_input(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::parse("<stdin>", e))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::parse(path, e))
    }
}

fn load_state(path: &str) -> CliResult<DensityMatrix> {
    let text = read_input(path)?;
    let doc: format::StateFile =
        serde_json::from_str(&text).map_err(|e| Failure::parse(display_name(path), e))?;
    format::density_from_rows(&doc.rho).map_err(Failure::validation)
}

/// Loads a channel from a file path, or builds one from `name[:param]`
/// shorthand. A leading known channel name always means shorthand; files
/// named like channels are reachable via an explicit path such as
/// `./identity`. `din_hint` fills in the input dimension where the shorthand
/// leaves it implicit.
fn load_channel(arg: &str, din_hint: Option<usize>) -> CliResult<KrausChannel> {
    let (head, param) = match arg.split_once(':') {
        Some((h, p)) => (h, Some(p)),
        None => (arg, None),
    };
    if let Ok(kind) = head.parse::<ChannelKind>() {
        return shorthand_channel(kind, param, din_hint, arg);
    }
    let text = read_input(arg)?;
    let doc: format::ChannelFile =
        serde_json::from_str(&text).map_err(|e| Failure::parse(display_name(arg), e))?;
    format::channel_from_rows(&doc.kraus).map_err(Failure::validation)
}

fn shorthand_channel(
    kind: ChannelKind,
    param: Option<&str>,
    din_hint: Option<usize>,
    arg: &str,
) -> CliResult<KrausChannel> {
    let bad = |detail: &dyn std::fmt::Display| {
        Failure::validation(format!("channel shorthand '{arg}': {detail}"))
    };
    let dim_param = |p: &str| p.parse::<usize>().map_err(|e| bad(&e));
    match kind {
        ChannelKind::Identity => {
            let d = match param {
                Some(p) => dim_param(p)?,
                None => din_hint.ok_or_else(|| bad(&"dimension not inferable, use identity:d"))?,
            };
            named_channel::<f64>(kind, &[], &[d]).map_err(Failure::validation)
        }
        ChannelKind::IsometryEmbed => {
            let dout = dim_param(param.ok_or_else(|| bad(&"needs a target dimension"))?)?;
            let din =
                din_hint.ok_or_else(|| bad(&"input dimension not inferable in this position"))?;
            named_channel::<f64>(kind, &[], &[din, dout]).map_err(Failure::validation)
        }
        ChannelKind::Depolarizing | ChannelKind::Dephasing | ChannelKind::AmplitudeDamping => {
            let p: f64 = param
                .ok_or_else(|| bad(&"needs a probability parameter"))?
                .parse()
                .map_err(|e| bad(&e))?;
            named_channel(kind, &[p], &[]).map_err(Failure::validation)
        }
    }
}

fn cmd_compute(state: &str, channel: &str, output: Output) -> CliResult<u8> {
    let rho = load_state(state)?;
    let phi = load_channel(channel, Some(rho.dim()))?;
    let r = info_report(&rho, &phi).map_err(Failure::validation)?;
    match output {
        Output::Text => {
            println!("d_in {}", r.d_in);
            println!("d_out {}", r.d_out);
            println!("n_kraus {}", r.n_kraus);
            println!("h_in {}", sig12(r.h_in));
            println!("h_out {}", sig12(r.h_out));
            println!("h_exchange {}", sig12(r.h_exchange));
            println!("mutual {}", sig12(r.mutual));
            println!("coherent {}", sig12(r.coherent));
        }
        Output::Json => {
            let doc = serde_json::json!({
                "d_in": r.d_in,
                "d_out": r.d_out,
                "n_kraus": r.n_kraus,
                "h_in": r.h_in,
                "h_out": r.h_out,
                "h_exchange": r.h_exchange,
                "mutual": r.mutual,
                "coherent": r.coherent,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("report serializes")
            );
        }
    }
    Ok(0)
}

fn print_check(r: &CheckResult) -> u8 {
    println!("name {}", r.name);
    println!("lhs {}", sig12(r.lhs));
    println!("rhs {}", sig12(r.rhs));
    println!("margin {}", sig12(r.margin));
    println!("tolerance {}", sig12(r.tolerance));
    println!("passed {}", r.passed);
    u8::from(!r.passed)
}

fn cmd_verify(check: Verify) -> CliResult<u8> {
    let result = match check {
        Verify::Dpi {
            state,
            channel1,
            channel2,
            tol,
        } => {
            let rho = load_state(&state)?;
            let phi1 = load_channel(&channel1, Some(rho.dim()))?;
            let phi2 = load_channel(&channel2, Some(phi1.dim_out()))?;
            check_dpi(&rho, &phi1, &phi2, tol).map_err(Failure::validation)?
        }
        Verify::Subadd {
            state,
            channel1,
            channel2,
            tol,
        } => {
            let rho = load_state(&state)?;
            let phi1 = load_channel(&channel1, None)?;
            let hint = (rho.dim() % phi1.dim_in() == 0).then(|| rho.dim() / phi1.dim_in());
            let phi2 = load_channel(&channel2, hint)?;
            check_subadditivity(&rho, &phi1, &phi2, tol).map_err(Failure::validation)?
        }
        Verify::Marginal {
            state,
            channel1,
            channel2,
            tol,
        } => {
            let rho = load_state(&state)?;
            let phi1 = load_channel(&channel1, Some(rho.dim()))?;
            let phi2 = load_channel(&channel2, Some(phi1.dim_out()))?;
            check_marginal_consistency(&rho, &phi1, &phi2, tol).map_err(Failure::validation)?
        }
        Verify::Exchange {
            state,
            channel,
            tol,
        } => {
            let rho = load_state(&state)?;
            let phi = load_channel(&channel, Some(rho.dim()))?;
            check_exchange_identity(&rho, &phi, tol).map_err(Failure::validation)?
        }
        Verify::Ssa { state, dims, tol } => {
            let rho = load_state(&state)?;
            let parsed: Vec<usize> = dims
                .split(',')
                .map(|d| d.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| Failure::validation(format!("--dims {dims}: {e}")))?;
            let shape = FactorShape::new(&parsed).map_err(Failure::validation)?;
            check_strong_subadditivity(&rho, &shape, tol).map_err(Failure::validation)?
        }
    };
    Ok(print_check(&result))
}

fn cmd_sample(
    trials: usize,
    seed: u64,
    din_max: usize,
    dout_max: usize,
    kraus_max: usize,
    checks: &str,
    tol: f64,
) -> CliResult<u8> {
    let mut kinds: Vec<CheckKind> = Vec::new();
    for name in checks.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        kinds.push(name.parse().map_err(Failure::config)?);
    }
    let config = CampaignConfig {
        trials,
        din_range: (2.min(din_max), din_max),
        dout_range: (2.min(dout_max), dout_max),
        kraus_range: (1, kraus_max),
        seed,
        tolerance: tol,
    };
    let report = run_campaign(&config, &kinds).map_err(Failure::config)?;
    println!("{report}");
    Ok(u8::from(!report.all_passed()))
}
