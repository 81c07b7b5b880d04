//! Importance-sampling estimators for `#Red(w)` and `#Hecke(w, N)`.
//!
//! * `Y` walks down the transition tree, picking a uniform child at each
//!   branch and multiplying by the number of children; the leaf contributes
//!   `f^{lambda(leaf)}`.
//! * `Z` peels the last letter of a Hecke word: pick a uniform descent `I` and
//!   a fair bit, then recurse on `(w, N-1)` or `(w s_I, N-1)` with weight
//!   `2 #D`.
//! * `H` runs `Z` until the remaining length equals the length of the current
//!   permutation, then finishes with `Y`.
//!
//! All three are unbiased. Randomness comes from a [`ChoiceSource`], so the
//! exact expectation can be computed by enumerating every choice sequence.
//!
//! Trial `t` of an estimate draws from ChaCha20 seeded with
//! `seed_from_u64(master_seed)` on stream `t`; a uniform index below `m` is
//! `(x * m) >> 64` for the next 64-bit output `x`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use bigdecimal::BigDecimal;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::tableaux::{hook_count, Partition};
use crate::transition::{expand, shape_of_code};

/// Significant digits kept for trial means, the grand mean and the SEM.
pub const PRECISION_DIGITS: u64 = 60;

/// Source of the uniform choices made by the samplers.
pub trait ChoiceSource {
    /// A uniform index in `0..m`, `m >= 1`.
    fn below(&mut self, m: usize) -> usize;

    fn coin(&mut self) -> bool {
        self.below(2) == 1
    }
}

/// Deterministic per-trial stream.
pub struct StreamSource {
    rng: ChaCha20Rng,
}

impl StreamSource {
    pub fn for_trial(master_seed: u64, trial: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(master_seed);
        rng.set_stream(trial);
        StreamSource { rng }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }
}

impl ChoiceSource for StreamSource {
    fn below(&mut self, m: usize) -> usize {
        debug_assert!(m >= 1);
        ((u128::from(self.rng.next_u64()) * m as u128) >> 64) as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Y,
    Z,
    H,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Y => "Y",
            Algorithm::Z => "Z",
            Algorithm::H => "H",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "y" => Ok(Algorithm::Y),
            "z" => Ok(Algorithm::Z),
            "h" => Ok(Algorithm::H),
            other => Err(Error::malformed(format!("unknown algorithm {other:?} (expected y, z or h)"))),
        }
    }
}

/// Samplers with a cache of `f^lambda` values for leaf shapes.
#[derive(Default)]
pub struct Sampler {
    hooks: HashMap<Partition, BigUint>,
}

impl Sampler {
    pub fn new() -> Self {
        Sampler::default()
    }

    fn leaf_value(&mut self, v: &Permutation) -> BigUint {
        let shape = shape_of_code(v);
        self.hooks
            .entry(shape)
            .or_insert_with_key(hook_count)
            .clone()
    }

    /// One realization of `Y_w`.
    pub fn y(&mut self, w: &Permutation, src: &mut dyn ChoiceSource) -> Result<BigUint> {
        let mut weight = BigUint::one();
        let mut current = w.clone();
        loop {
            match expand(&current)? {
                None => return Ok(weight * self.leaf_value(&current)),
                Some(mut kids) => {
                    weight *= BigUint::from(kids.len());
                    let pick = src.below(kids.len());
                    current = kids.swap_remove(pick);
                }
            }
        }
    }

    /// One realization of `Z_{w,N}`.
    pub fn z(&mut self, w: &Permutation, n: usize, src: &mut dyn ChoiceSource) -> Result<BigUint> {
        self.peel(w, n, src, false)
    }

    /// One realization of `H_{w,N}`.
    pub fn h(&mut self, w: &Permutation, n: usize, src: &mut dyn ChoiceSource) -> Result<BigUint> {
        self.peel(w, n, src, true)
    }

    fn peel(&mut self, w: &Permutation, n: usize, src: &mut dyn ChoiceSource, hybrid: bool) -> Result<BigUint> {
        let mut weight = BigUint::one();
        let mut current = w.clone();
        let mut len = current.length();
        let mut remaining = n;
        loop {
            if remaining < len {
                return Ok(BigUint::zero());
            }
            if hybrid && remaining == len {
                let tail = self.y(&current, src)?;
                return Ok(weight * tail);
            }
            if len == 0 {
                return Ok(if remaining == 0 { weight } else { BigUint::zero() });
            }
            let descents = current.descents();
            let i = descents[src.below(descents.len())];
            let theta = src.coin();
            weight *= BigUint::from(2 * descents.len());
            if theta {
                current = current.times_simple(i);
                len -= 1;
            }
            remaining -= 1;
        }
    }

    pub fn sample(
        &mut self,
        algorithm: Algorithm,
        w: &Permutation,
        n: usize,
        src: &mut dyn ChoiceSource,
    ) -> Result<BigUint> {
        match algorithm {
            Algorithm::Y => self.y(w, src),
            Algorithm::Z => self.z(w, n, src),
            Algorithm::H => self.h(w, n, src),
        }
    }
}

/// A uniformly random element of `S_n` (Fisher-Yates on the choice stream).
pub fn uniform_permutation(n: usize, src: &mut dyn ChoiceSource) -> Permutation {
    let mut word: Vec<usize> = (1..=n.max(1)).collect();
    for i in (1..word.len()).rev() {
        let j = src.below(i + 1);
        word.swap(i, j);
    }
    Permutation::from_one_line(word).expect("a shuffle of 1..n is a permutation")
}

pub fn y_sample(w: &Permutation, src: &mut dyn ChoiceSource) -> Result<BigUint> {
    Sampler::new().y(w, src)
}

pub fn z_sample(w: &Permutation, n: usize, src: &mut dyn ChoiceSource) -> Result<BigUint> {
    Sampler::new().z(w, n, src)
}

pub fn h_sample(w: &Permutation, n: usize, src: &mut dyn ChoiceSource) -> Result<BigUint> {
    Sampler::new().h(w, n, src)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerConfig {
    pub sample_size: u64,
    pub trials: u32,
    pub master_seed: u64,
}

impl SamplerConfig {
    pub fn new(sample_size: u64, trials: u32, master_seed: u64) -> Self {
        SamplerConfig {
            sample_size,
            trials,
            master_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sample_size == 0 {
            return Err(Error::Config("sample size must be at least 1".into()));
        }
        if self.trials < 2 {
            return Err(Error::Config(format!(
                "standard error needs at least 2 trials, got {}",
                self.trials
            )));
        }
        Ok(())
    }
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig::new(1000, 12, 0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub algorithm: Algorithm,
    pub target: Permutation,
    /// Hecke word length; `None` for `Y`.
    pub length: Option<usize>,
    pub config: SamplerConfig,
    /// Exact sum of the samples of each trial.
    pub trial_sums: Vec<BigUint>,
    pub trial_means: Vec<BigDecimal>,
    pub mean: BigDecimal,
    /// Bessel-corrected standard deviation of the trial means over `sqrt(trials)`.
    pub sem: BigDecimal,
}

impl Estimate {
    pub fn mean_f64(&self) -> f64 {
        decimal_to_f64(&self.mean)
    }

    pub fn sem_f64(&self) -> f64 {
        decimal_to_f64(&self.sem)
    }

    /// `sem / mean`, or 0 when the mean is 0.
    pub fn relative_sem(&self) -> f64 {
        let mean = self.mean_f64();
        if mean == 0.0 {
            0.0
        } else {
            self.sem_f64() / mean
        }
    }

    /// Whether `|mean - exact| <= k * sem`, evaluated in exact decimal arithmetic.
    pub fn within_sems(&self, exact: &BigUint, k: u32) -> bool {
        let exact = BigDecimal::from(BigInt::from(exact.clone()));
        let gap = (&self.mean - exact).abs();
        gap <= &self.sem * BigDecimal::from(k)
    }
}

pub fn decimal_to_f64(x: &BigDecimal) -> f64 {
    x.to_string().parse().unwrap_or(f64::NAN)
}

/// `x` in scientific notation with `digits` significant digits, e.g. `2.09e6`.
pub fn to_scientific(x: &BigDecimal, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        return format!("{:.*}e0", digits - 1, 0.0);
    }
    let (mantissa, scale) = x.with_prec(digits as u64).as_bigint_and_exponent();
    let negative = mantissa < BigInt::zero();
    let text = mantissa.magnitude().to_string();
    let exponent = text.len() as i64 - 1 - scale;
    let mut body = text.clone();
    body.truncate(digits);
    while body.len() < digits {
        body.push('0');
    }
    let (head, tail) = body.split_at(1);
    let sign = if negative { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{exponent}")
    } else {
        format!("{sign}{head}.{tail}e{exponent}")
    }
}

/// Runs `cfg.trials` independent trials of `cfg.sample_size` samples each on
/// the current rayon pool. Trial results do not depend on scheduling.
pub fn estimate(algorithm: Algorithm, w: &Permutation, length: Option<usize>, cfg: &SamplerConfig) -> Result<Estimate> {
    cfg.validate()?;
    let n = match (algorithm, length) {
        (Algorithm::Y, _) => w.length(),
        (_, Some(n)) => n,
        (_, None) => {
            return Err(Error::Config(format!(
                "algorithm {algorithm} needs a Hecke word length"
            )))
        }
    };
    let trial_sums: Vec<BigUint> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut src = StreamSource::for_trial(cfg.master_seed, u64::from(t));
            let mut sampler = Sampler::new();
            let mut sum = BigUint::zero();
            for _ in 0..cfg.sample_size {
                sum += sampler.sample(algorithm, w, n, &mut src)?;
            }
            Ok(sum)
        })
        .collect::<Result<_>>()?;
    let (trial_means, mean, sem) = summarize(&trial_sums, cfg.sample_size);
    Ok(Estimate {
        algorithm,
        target: w.clone(),
        length: match algorithm {
            Algorithm::Y => None,
            _ => Some(n),
        },
        config: *cfg,
        trial_sums,
        trial_means,
        mean,
        sem,
    })
}

/// Same as [`estimate`] on a dedicated pool of `threads` workers.
pub fn estimate_with_threads(
    algorithm: Algorithm,
    w: &Permutation,
    length: Option<usize>,
    cfg: &SamplerConfig,
    threads: usize,
) -> Result<Estimate> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot start {threads} worker threads: {e}")))?;
    pool.install(|| estimate(algorithm, w, length, cfg))
}

fn summarize(trial_sums: &[BigUint], sample_size: u64) -> (Vec<BigDecimal>, BigDecimal, BigDecimal) {
    let size = BigDecimal::from(sample_size);
    let trial_means: Vec<BigDecimal> = trial_sums
        .iter()
        .map(|s| (BigDecimal::from(BigInt::from(s.clone())) / &size).with_prec(PRECISION_DIGITS))
        .collect();
    let count = BigDecimal::from(trial_means.len() as u64);
    let total: BigDecimal = trial_means.iter().sum();
    let mean = (total / &count).with_prec(PRECISION_DIGITS);
    let squares: BigDecimal = trial_means
        .iter()
        .map(|m| {
            let d = m - &mean;
            &d * &d
        })
        .sum();
    let variance = squares / (&count - BigDecimal::one());
    let sem = (variance / &count)
        .sqrt()
        .unwrap_or_else(BigDecimal::zero)
        .with_prec(PRECISION_DIGITS);
    (trial_means, mean, sem)
}
