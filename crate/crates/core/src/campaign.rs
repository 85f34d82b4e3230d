//! Seeded random campaigns over the checks module.
//!
//! Reproducibility contract: every trial runs on its own `ChaCha8Rng` whose
//! seed is derived from (campaign seed, trial index, check tag) through a
//! SplitMix64-style mixer. Reports therefore do not depend on execution
//! order, and any failing trial can be replayed from its recorded seed.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::channel::{random_channel_with, KrausChannel};
use crate::checks::{
    check_dpi, check_exchange_identity, check_marginal_consistency, check_strong_subadditivity,
    check_subadditivity, CheckResult,
};
use crate::error::{Error, Result};
use crate::factor::FactorShape;
use crate::scalar::{real, Scalar};
use crate::state::{random_state_with, DensityMatrix};

/// Ratio between the inequality tolerance in [`CampaignConfig`] and the
/// stricter tolerance applied to identity checks (marginal, exchange).
const IDENTITY_TOL_RATIO: f64 = 10.0;

/// Which check a campaign trial runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Dpi,
    Subadd,
    Marginal,
    Exchange,
    Ssa,
}

impl CheckKind {
    /// All kinds in canonical report order.
    pub const ALL: [CheckKind; 5] = [
        CheckKind::Dpi,
        CheckKind::Subadd,
        CheckKind::Marginal,
        CheckKind::Exchange,
        CheckKind::Ssa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Dpi => "dpi",
            CheckKind::Subadd => "subadd",
            CheckKind::Marginal => "marginal",
            CheckKind::Exchange => "exchange",
            CheckKind::Ssa => "ssa",
        }
    }

    /// Identity checks report a worst deviation (max); inequality checks a
    /// worst margin (min).
    pub fn is_identity(self) -> bool {
        matches!(self, CheckKind::Marginal | CheckKind::Exchange)
    }

    /// Stable per-kind constant folded into seed derivation; never reorder.
    fn tag(self) -> u64 {
        match self {
            CheckKind::Dpi => 0x01,
            CheckKind::Subadd => 0x02,
            CheckKind::Marginal => 0x03,
            CheckKind::Exchange => 0x04,
            CheckKind::Ssa => 0x05,
        }
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dpi" => Ok(CheckKind::Dpi),
            "subadd" => Ok(CheckKind::Subadd),
            "marginal" => Ok(CheckKind::Marginal),
            "exchange" => Ok(CheckKind::Exchange),
            "ssa" => Ok(CheckKind::Ssa),
            other => Err(Error::BadParam(format!(
                "unknown check '{other}'; expected dpi, subadd, marginal, exchange or ssa"
            ))),
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters of a campaign. Dimension and Kraus-rank ranges are inclusive.
#[derive(Debug, Clone)]
pub struct CampaignConfig<T: Scalar> {
    pub trials: usize,
    pub din_range: (usize, usize),
    pub dout_range: (usize, usize),
    pub kraus_range: (usize, usize),
    pub seed: u64,
    /// Pass threshold for inequality margins (margin ≥ −tolerance). Identity
    /// checks use the stricter tolerance / 10.
    pub tolerance: T,
}

impl<T: Scalar> Default for CampaignConfig<T> {
    fn default() -> Self {
        CampaignConfig {
            trials: 500,
            din_range: (2, 4),
            dout_range: (2, 4),
            kraus_range: (1, 5),
            seed: 0,
            tolerance: real::<T>(1e-9),
        }
    }
}

impl<T: Scalar> CampaignConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::BadParam("trials must be at least 1".into()));
        }
        for (label, (lo, hi)) in [
            ("input dimension", self.din_range),
            ("output dimension", self.dout_range),
            ("kraus rank", self.kraus_range),
        ] {
            if lo == 0 {
                return Err(Error::BadParam(format!(
                    "{label} range must start at 1 or above"
                )));
            }
            if lo > hi {
                return Err(Error::BadParam(format!(
                    "{label} range {lo}..{hi} is empty"
                )));
            }
        }
        if !(self.tolerance >= T::zero()) {
            return Err(Error::BadParam("tolerance must be nonnegative".into()));
        }
        Ok(())
    }

    fn identity_tolerance(&self) -> T {
        self.tolerance / real::<T>(IDENTITY_TOL_RATIO)
    }
}

/// Aggregate outcome for one check kind across all trials.
#[derive(Debug, Clone)]
pub struct CheckStats<T: Scalar> {
    pub kind: CheckKind,
    pub trials: usize,
    pub passed: usize,
    /// Worst (margin, seed) over completed trials: minimum margin for
    /// inequalities, maximum deviation for identities. None if every trial
    /// errored.
    pub worst: Option<(T, u64)>,
    pub failing_seeds: Vec<u64>,
}

/// A trial whose check returned an error instead of a verdict.
#[derive(Debug, Clone)]
pub struct TrialError {
    pub kind: CheckKind,
    pub trial: usize,
    pub seed: u64,
    pub message: String,
}

/// Outcome of [`run_campaign`]. `Display` renders the deterministic textual
/// report; the fields expose the same data for structured consumers.
#[derive(Debug, Clone)]
pub struct CampaignReport<T: Scalar> {
    pub config: CampaignConfig<T>,
    pub kinds: Vec<CheckKind>,
    pub stats: Vec<CheckStats<T>>,
    pub errors: Vec<TrialError>,
}

impl<T: Scalar> CampaignReport<T> {
    /// True when every trial of every check completed and passed.
    pub fn all_passed(&self) -> bool {
        self.errors.is_empty() && self.stats.iter().all(|s| s.passed == s.trials)
    }
}

impl<T: Scalar> fmt::Display for CampaignReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(
            f,
            "campaign: trials={} seed={} din={}..{} dout={}..{} kraus={}..{} tol={:e}",
            c.trials,
            c.seed,
            c.din_range.0,
            c.din_range.1,
            c.dout_range.0,
            c.dout_range.1,
            c.kraus_range.0,
            c.kraus_range.1,
            c.tolerance
        )?;
        for s in &self.stats {
            let label = if s.kind.is_identity() {
                "worst deviation"
            } else {
                "worst margin"
            };
            write!(f, "{}: passed {}/{}", s.kind, s.passed, s.trials)?;
            match s.worst {
                Some((m, seed)) => write!(f, ", {label} {m:.9e} at seed {seed}")?,
                None => write!(f, ", no completed trials")?,
            }
            if !s.failing_seeds.is_empty() {
                write!(f, ", failing seeds:")?;
                for seed in &s.failing_seeds {
                    write!(f, " {seed}")?;
                }
            }
            writeln!(f)?;
        }
        if self.errors.is_empty() {
            writeln!(f, "errors: none")?;
        } else {
            for e in &self.errors {
                writeln!(
                    f,
                    "error: check={} trial={} seed={} {}",
                    e.kind, e.trial, e.seed, e.message
                )?;
            }
        }
        write!(
            f,
            "result: {}",
            if self.all_passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// SplitMix64 finalizer: a bijective mixer with good avalanche behavior.
pub(crate) fn mix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-trial seed from (campaign seed, trial index, check tag).
pub fn derive_seed(campaign_seed: u64, trial: u64, kind: CheckKind) -> u64 {
    mix64(mix64(mix64(campaign_seed) ^ trial) ^ kind.tag())
}

/// Draws a channel din → dout with a feasible Kraus count from the config
/// range.
fn draw_channel<T: Scalar, R: Rng>(
    din: usize,
    dout: usize,
    config: &CampaignConfig<T>,
    rng: &mut R,
) -> Result<KrausChannel<T>> {
    let lo = config.kraus_range.0.max(din.div_ceil(dout));
    let n = rng.random_range(lo..=config.kraus_range.1);
    random_channel_with(din, dout, n, rng)
}

fn run_trial<T: Scalar, R: Rng>(
    kind: CheckKind,
    config: &CampaignConfig<T>,
    rng: &mut R,
) -> Result<CheckResult<T>> {
    let (din_lo, din_hi) = config.din_range;
    let (dout_lo, dout_hi) = config.dout_range;
    match kind {
        CheckKind::Dpi | CheckKind::Marginal => {
            let din = rng.random_range(din_lo..=din_hi);
            let dmid = rng.random_range(dout_lo..=dout_hi);
            let dout = rng.random_range(dout_lo..=dout_hi);
            let rho: DensityMatrix<T> = random_state_with(din, rng);
            let phi1 = draw_channel(din, dmid, config, rng)?;
            let phi2 = draw_channel(dmid, dout, config, rng)?;
            if kind == CheckKind::Dpi {
                check_dpi(&rho, &phi1, &phi2, config.tolerance)
            } else {
                check_marginal_consistency(&rho, &phi1, &phi2, config.identity_tolerance())
            }
        }
        CheckKind::Subadd => {
            let din1 = rng.random_range(din_lo..=din_hi);
            let din2 = rng.random_range(din_lo..=din_hi);
            let dout1 = rng.random_range(dout_lo..=dout_hi);
            let dout2 = rng.random_range(dout_lo..=dout_hi);
            let rho12: DensityMatrix<T> = random_state_with(din1 * din2, rng);
            let phi1 = draw_channel(din1, dout1, config, rng)?;
            let phi2 = draw_channel(din2, dout2, config, rng)?;
            check_subadditivity(&rho12, &phi1, &phi2, config.tolerance)
        }
        CheckKind::Exchange => {
            let din = rng.random_range(din_lo..=din_hi);
            let dout = rng.random_range(dout_lo..=dout_hi);
            let rho: DensityMatrix<T> = random_state_with(din, rng);
            let phi = draw_channel(din, dout, config, rng)?;
            check_exchange_identity(&rho, &phi, config.identity_tolerance())
        }
        CheckKind::Ssa => {
            let d1 = rng.random_range(din_lo..=din_hi);
            let d2 = rng.random_range(din_lo..=din_hi);
            let d3 = rng.random_range(din_lo..=din_hi);
            let rho: DensityMatrix<T> = random_state_with(d1 * d2 * d3, rng);
            let shape = FactorShape::new(&[d1, d2, d3])?;
            check_strong_subadditivity(&rho, &shape, config.tolerance)
        }
    }
}

/// Rejects configs whose ranges cannot always produce a trace-preserving
/// channel: the worst draw needs ceil(d_in / d_out_min) Kraus operators.
fn check_feasible<T: Scalar>(config: &CampaignConfig<T>, kinds: &[CheckKind]) -> Result<()> {
    let chained = kinds
        .iter()
        .any(|k| matches!(k, CheckKind::Dpi | CheckKind::Marginal));
    let max_input = if chained {
        config.din_range.1.max(config.dout_range.1)
    } else {
        config.din_range.1
    };
    let needed = max_input.div_ceil(config.dout_range.0);
    if needed > config.kraus_range.1 {
        return Err(Error::InfeasibleShape(format!(
            "kraus range caps at {} but a {}-dimensional input into a \
             {}-dimensional output needs at least {} operators",
            config.kraus_range.1, max_input, config.dout_range.0, needed
        )));
    }
    Ok(())
}

/// Runs `config.trials` seeded trials of each selected check. Individual
/// trial errors are recorded in the report rather than thrown; the only
/// errors returned are config-level (invalid config, infeasible ranges, no
/// checks selected).
pub fn run_campaign<T: Scalar>(
    config: &CampaignConfig<T>,
    which: &[CheckKind],
) -> Result<CampaignReport<T>> {
    config.validate()?;
    let kinds: Vec<CheckKind> = CheckKind::ALL
        .into_iter()
        .filter(|k| which.contains(k))
        .collect();
    if kinds.is_empty() {
        return Err(Error::BadParam("no checks selected".into()));
    }
    check_feasible(config, &kinds)?;

    let mut stats = Vec::with_capacity(kinds.len());
    let mut errors = Vec::new();
    for &kind in &kinds {
        let mut passed = 0usize;
        let mut worst: Option<(T, u64)> = None;
        let mut failing_seeds = Vec::new();
        for trial in 0..config.trials {
            let seed = derive_seed(config.seed, trial as u64, kind);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            match run_trial(kind, config, &mut rng) {
                Ok(result) => {
                    if result.passed {
                        passed += 1;
                    } else {
                        failing_seeds.push(seed);
                    }
                    let more_extreme = match worst {
                        None => true,
                        Some((w, _)) => {
                            if kind.is_identity() {
                                result.margin > w
                            } else {
                                result.margin < w
                            }
                        }
                    };
                    if more_extreme {
                        worst = Some((result.margin, seed));
                    }
                }
                Err(e) => errors.push(TrialError {
                    kind,
                    trial,
                    seed,
                    message: e.to_string(),
                }),
            }
        }
        stats.push(CheckStats {
            kind,
            trials: config.trials,
            passed,
            worst,
            failing_seeds,
        });
    }
    Ok(CampaignReport {
        config: config.clone(),
        kinds,
        stats,
        errors,
    })
}
