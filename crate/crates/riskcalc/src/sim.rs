//! Seeded Monte Carlo validation of the analytic loss expectancies: draws
//! per-year occurrence counts, turns them into yearly losses, and reports
//! the empirical mean, its standard error, and exceedance probabilities
//! that the closed formulas cannot give.
//!
//! Every stochastic ingredient is pinned so a run is a pure function of
//! its inputs and seed:
//!
//! * generator: ChaCha12, seeded from a 64-bit value;
//! * uniforms: the top 53 bits of each 64-bit draw, giving `u` in `[0, 1)`;
//! * Poisson counts: sequential inverse-CDF search on one uniform per
//!   year (rates above 30 are split into equal chunks of at most 30 and
//!   the chunk counts summed, one uniform per chunk);
//! * Bernoulli occurrences: fire when `u >= 1 - p`.
//!
//! Both samplers place the "at least one event" region at the top of the
//! unit interval, so runs of the two models under one seed are coupled
//! and directly comparable year by year.

use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::model::Money;

/// Identifier of the pinned sampling pipeline, quoted in report output.
pub const RNG_ALGORITHM: &str = "chacha12/u53/inverse-cdf";

const POISSON_CHUNK_MAX: f64 = 30.0;
// inverse-CDF search guard; unreachable for rates <= 30 with u < 1
const POISSON_COUNT_CAP: u64 = 4096;

/// How yearly occurrence counts are drawn from the annual rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OccurrenceModel {
    /// Counts are Poisson with mean `aro`; several events per year can
    /// happen. The default.
    Poisson,
    /// At most one event per year, with probability `min(aro, 1)`.
    Bernoulli,
}

impl OccurrenceModel {
    pub fn as_str(self) -> &'static str {
        match self {
            OccurrenceModel::Poisson => "poisson",
            OccurrenceModel::Bernoulli => "bernoulli",
        }
    }
}

impl std::str::FromStr for OccurrenceModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "poisson" => Ok(OccurrenceModel::Poisson),
            "bernoulli" => Ok(OccurrenceModel::Bernoulli),
            other => Err(Error::validation(
                "occurrence model",
                format!("expected \"poisson\" or \"bernoulli\", got {other:?}"),
            )),
        }
    }
}

/// Run parameters: horizon, seed, and occurrence model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    years: u64,
    seed: u64,
    model: OccurrenceModel,
}

impl SimConfig {
    pub fn new(years: u64, seed: u64, model: OccurrenceModel) -> Result<Self> {
        if years == 0 {
            return Err(Error::InvalidCount(0));
        }
        Ok(Self { years, seed, model })
    }

    pub fn years(self) -> u64 {
        self.years
    }

    pub fn seed(self) -> u64 {
        self.seed
    }

    pub fn model(self) -> OccurrenceModel {
        self.model
    }
}

/// Simulation output. Yearly losses are `count * av * pvl`, so the full
/// distribution is kept as a histogram over occurrence counts; exceedance
/// queries read it exactly rather than re-running anything.
#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    years: u64,
    seed: u64,
    model: OccurrenceModel,
    mean_annual_loss: Money,
    std_error: Money,
    max_single_year_loss: Money,
    exceedance: Vec<(Money, f64)>,
    loss_per_occurrence: Money,
    // histogram[k] = number of simulated years with exactly k occurrences
    histogram: Vec<u64>,
}

impl SimResult {
    pub fn years(&self) -> u64 {
        self.years
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn model(&self) -> OccurrenceModel {
        self.model
    }

    pub fn mean_annual_loss(&self) -> Money {
        self.mean_annual_loss
    }

    /// Standard error of the mean. Zero for a single-year run, where no
    /// spread estimate exists.
    pub fn std_error(&self) -> Money {
        self.std_error
    }

    pub fn max_single_year_loss(&self) -> Money {
        self.max_single_year_loss
    }

    /// Empirical loss-exceedance points at every realized loss value:
    /// `(threshold, fraction of years with loss >= threshold)`, ascending.
    pub fn exceedance(&self) -> &[(Money, f64)] {
        &self.exceedance
    }

    pub fn loss_per_occurrence(&self) -> Money {
        self.loss_per_occurrence
    }

    /// Fraction of simulated years whose loss reached `threshold`.
    pub fn exceedance_probability(&self, threshold: Money) -> Result<f64> {
        self.mean_annual_loss.same_currency(threshold)?;
        let lpo = self.loss_per_occurrence.amount();
        let mut hit = 0u64;
        for (count, years) in self.histogram.iter().enumerate() {
            if count as f64 * lpo >= threshold.amount() {
                hit += years;
            }
        }
        Ok(hit as f64 / self.years as f64)
    }
}

/// Simulate yearly losses for one threat against one asset. Identical
/// inputs and seed give bit-identical results; the horizon is walked
/// sequentially with one state stream.
pub fn simulate(av: Money, pvl: f64, aro: f64, config: &SimConfig) -> Result<SimResult> {
    if !(0.0..=1.0).contains(&pvl) {
        return Err(Error::OutOfRange {
            what: "pvl",
            value: pvl,
            min: 0.0,
            max: 1.0,
        });
    }
    if !aro.is_finite() || aro < 0.0 {
        return Err(Error::NegativeRate(aro));
    }

    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    let mut histogram: Vec<u64> = vec![0];
    for _ in 0..config.years {
        let count = match config.model {
            OccurrenceModel::Poisson => sample_poisson(&mut rng, aro),
            OccurrenceModel::Bernoulli => sample_bernoulli(&mut rng, aro.min(1.0)),
        } as usize;
        if count >= histogram.len() {
            histogram.resize(count + 1, 0);
        }
        histogram[count] += 1;
    }

    let loss_per_occurrence = av.scale(pvl)?;
    let lpo = loss_per_occurrence.amount();
    let n = config.years as f64;

    let mean_count = histogram
        .iter()
        .enumerate()
        .map(|(k, c)| k as f64 * *c as f64)
        .sum::<f64>()
        / n;
    let var_count = if config.years > 1 {
        histogram
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let d = k as f64 - mean_count;
                d * d * *c as f64
            })
            .sum::<f64>()
            / (n - 1.0)
    } else {
        0.0
    };
    let max_count = histogram.len() - 1;

    let mut exceedance = Vec::with_capacity(max_count);
    if lpo > 0.0 {
        let mut tail_at: Vec<u64> = vec![0; max_count + 1];
        let mut tail: u64 = 0;
        for (slot, years) in tail_at.iter_mut().zip(&histogram).rev() {
            tail += years;
            *slot = tail;
        }
        for (count, tail) in tail_at.iter().enumerate().skip(1) {
            exceedance.push((
                loss_per_occurrence.scale(count as f64)?,
                *tail as f64 / n,
            ));
        }
    }

    Ok(SimResult {
        years: config.years,
        seed: config.seed,
        model: config.model,
        mean_annual_loss: loss_per_occurrence.scale(mean_count)?,
        std_error: loss_per_occurrence.scale((var_count / n).sqrt())?,
        max_single_year_loss: loss_per_occurrence.scale(max_count as f64)?,
        exceedance,
        loss_per_occurrence,
        histogram,
    })
}

/// Uniform in `[0, 1)` from the top 53 bits of one 64-bit draw.
fn unit_f64(rng: &mut ChaCha12Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn sample_bernoulli(rng: &mut ChaCha12Rng, p: f64) -> u64 {
    let u = unit_f64(rng);
    if u >= 1.0 - p {
        1
    } else {
        0
    }
}

fn sample_poisson(rng: &mut ChaCha12Rng, rate: f64) -> u64 {
    if rate <= POISSON_CHUNK_MAX {
        return poisson_inverse_cdf(rng, rate);
    }
    // additivity: a Poisson rate splits into independent equal chunks
    let chunks = (rate / POISSON_CHUNK_MAX).ceil() as u64;
    let part = rate / chunks as f64;
    (0..chunks).map(|_| poisson_inverse_cdf(rng, part)).sum()
}

/// Smallest k with `u < CDF(k)`; the cumulative sum is built term by term
/// from the recurrence `pmf(k+1) = pmf(k) * rate / (k+1)`.
fn poisson_inverse_cdf(rng: &mut ChaCha12Rng, rate: f64) -> u64 {
    let u = unit_f64(rng);
    let mut pmf = (-rate).exp();
    let mut cdf = pmf;
    let mut count = 0u64;
    while u >= cdf && count < POISSON_COUNT_CAP {
        count += 1;
        pmf *= rate / count as f64;
        cdf += pmf;
    }
    count
}
