//! The `(f, g)` homomorphism chain of a random oriented path into the
//! two-vertex host `K`, its scalar recurrence, and Lyapunov estimates.

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::pattern::{Dir, Orientation};
use crate::scalar::{Rational, Scalar};
use crate::signed::{path_counts, WalkFractions};
use crate::tournament::WeightedTournament;

/// Arc `a → b` of weight 1 plus half loops.
pub fn k_host() -> WeightedTournament<Rational> {
    let m = Matrix::from_rows(vec![
        vec![Rational::from_ratio(1, 2), Rational::one()],
        vec![Rational::zero(), Rational::from_ratio(1, 2)],
    ]);
    WeightedTournament::new(m, true).expect("valid host")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FgState {
    #[serde(serialize_with = "crate::serde_rational")]
    pub f: Rational,
    #[serde(serialize_with = "crate::serde_rational")]
    pub g: Rational,
    pub step: usize,
}

impl FgState {
    pub fn total(&self) -> Rational {
        self.f.clone() + self.g.clone()
    }
}

/// `I_0 = 1`; `I_i` for `1 ≤ i < e` says vertex `i` has one in- and one out-arc.
pub fn balance_indicators(d: &[Dir]) -> Vec<bool> {
    (0..d.len()).map(|i| i == 0 || d[i - 1] == d[i]).collect()
}

fn step<S: Scalar>(f: &S, g: &S, balanced: bool) -> (S, S) {
    let half = S::half();
    if balanced {
        (f.clone() * half.clone() + g.clone(), g.clone() * half)
    } else {
        (g.clone() * half.clone() + f.clone(), f.clone() * half)
    }
}

/// All states `(f_i, g_i)` for `i = 0..=e`; the empty slice is the
/// zero-edge path.
pub fn fg_trajectory(dirs: &[Dir]) -> Vec<FgState> {
    let mut f = Rational::one();
    let mut g = Rational::one();
    let mut out = vec![FgState { f: f.clone(), g: g.clone(), step: 0 }];
    for (i, b) in balance_indicators(dirs).into_iter().enumerate() {
        (f, g) = step(&f, &g, b);
        out.push(FgState { f: f.clone(), g: g.clone(), step: i + 1 });
    }
    out
}

pub fn fg_process(dirs: &[Dir]) -> FgState {
    fg_trajectory(dirs).pop().expect("nonempty trajectory")
}

/// Average of `f_e + g_e` over all `2^e` orientations.
pub fn exhaustive_mean(e: usize) -> Result<Rational> {
    if e > 24 {
        return Err(Error::cap("exhaustive orientation length", 24));
    }
    if e == 0 {
        return Ok(fg_process(&[]).total());
    }
    let sum: Rational = Orientation::all(e).map(|o| fg_process(o.dirs()).total()).sum();
    Ok(sum / Rational::from_usize(1usize << e))
}

/// The exact coefficient `β*` in `x_n = x_{n−1} ± β* x_{n−2}` for
/// `x = (f + g)/2`, with `−` exactly when vertex `n−1` is balanced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaResolution {
    #[serde(serialize_with = "crate::serde_rational")]
    pub beta_star: Rational,
    pub orientations_checked: u64,
    pub steps_checked: u64,
}

/// Measures `β*` over every orientation with at most `max_e` edges.
pub fn resolve_beta_star(max_e: usize) -> Result<BetaResolution> {
    if max_e < 2 || max_e > 20 {
        return Err(Error::InvalidArgument("max_e must lie in 2..=20".into()));
    }
    let mut beta: Option<Rational> = None;
    let (mut orients, mut steps) = (0u64, 0u64);
    for e in 2..=max_e {
        for o in Orientation::all(e) {
            orients += 1;
            let ind = balance_indicators(o.dirs());
            let s: Vec<Rational> = fg_trajectory(o.dirs()).iter().map(FgState::total).collect();
            for n in 2..=e {
                steps += 1;
                let ratio = (s[n].clone() - s[n - 1].clone()) / s[n - 2].clone();
                let signed = if ind[n - 1] { -ratio } else { ratio };
                match &beta {
                    None => beta = Some(signed),
                    Some(b) if *b == signed => {}
                    Some(b) => {
                        return Err(Error::InternalAssertionFailed(format!(
                            "step coefficient {signed} differs from {b} on {o} at n={n}"
                        )))
                    }
                }
            }
        }
    }
    Ok(BetaResolution { beta_star: beta.expect("at least one step"), orientations_checked: orients, steps_checked: steps })
}

/// Per-trial seed derived from a base seed.
fn trial_seed(seed: u64, trial: u64) -> u64 {
    seed ^ trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// `ln x_n` for `x_n = (f_n + g_n)/2` along a random orientation of length
/// `n`, tracked with periodic rescaling.
fn sampled_log_x(n: usize, rng: &mut ChaCha8Rng) -> f64 {
    let (mut f, mut g, mut log_scale) = (1.0f64, 1.0f64, 0.0f64);
    let mut prev: Option<bool> = None;
    for i in 0..n {
        let dir: bool = rng.random();
        let balanced = prev.is_none_or(|p| p == dir);
        prev = Some(dir);
        (f, g) = step(&f, &g, balanced);
        if i % 64 == 63 {
            let s = f + g;
            f /= s;
            g /= s;
            log_scale += s.ln();
        }
    }
    log_scale + ((f + g) / 2.0).ln()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FgSummary {
    pub steps: usize,
    pub trials: usize,
    pub seed: u64,
    /// Mean of `f_n + g_n`.
    pub mean_total: f64,
    pub std_error: f64,
    pub mean_log_rate: f64,
    pub median_log_rate: f64,
    /// Fraction of trials with `x_n ≥ threshold`.
    pub fraction_at_least: f64,
    pub threshold: f64,
}

/// Samples `trials` fair-coin orientations of length `steps`.
pub fn sample_fg(steps: usize, trials: usize, seed: u64, threshold: f64) -> Result<FgSummary> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    let logs: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|t| sampled_log_x(steps, &mut ChaCha8Rng::seed_from_u64(trial_seed(seed, t))))
        .collect();
    let totals: Vec<f64> = logs.iter().map(|l| 2.0 * l.exp()).collect();
    let k = trials as f64;
    let mean_total = totals.iter().sum::<f64>() / k;
    let var = if trials > 1 {
        totals.iter().map(|x| (x - mean_total).powi(2)).sum::<f64>() / (k - 1.0)
    } else {
        0.0
    };
    let denom = steps.max(1) as f64;
    let mut rates: Vec<f64> = logs.iter().map(|l| l / denom).collect();
    rates.sort_by(f64::total_cmp);
    let median = if trials % 2 == 1 {
        rates[trials / 2]
    } else {
        (rates[trials / 2 - 1] + rates[trials / 2]) / 2.0
    };
    let ln_threshold = threshold.ln();
    Ok(FgSummary {
        steps,
        trials,
        seed,
        mean_total,
        std_error: (var / k).sqrt(),
        mean_log_rate: rates.iter().sum::<f64>() / k,
        median_log_rate: median,
        fraction_at_least: logs.iter().filter(|&&l| l >= ln_threshold).count() as f64 / k,
        threshold,
    })
}

/// Support `[r_low, r_high]` of `r_n = 1 ± β / r_{n−1}`.
pub fn ratio_support(beta: f64) -> Result<(f64, f64)> {
    if beta < 0.0 {
        return Err(Error::InvalidArgument("beta must be >= 0".into()));
    }
    let disc = 1.0 - 4.0 * beta;
    if disc < 0.0 {
        return Err(Error::DiscriminantNegative);
    }
    let low = (1.0 + disc.sqrt()) / 2.0;
    Ok((low, 1.0 + beta / low))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioSummary {
    pub beta: f64,
    pub steps: usize,
    pub r_low: f64,
    pub r_high: f64,
    pub min_seen: f64,
    pub max_seen: f64,
    /// Every iterate after `r_0` lies in the support (up to `1e−12`).
    pub all_inside: bool,
    pub mean_log: f64,
}

pub fn ratio_chain(beta: f64, steps: usize, seed: u64) -> Result<RatioSummary> {
    let (r_low, r_high) = ratio_support(beta)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = 1.0f64;
    let (mut lo, mut hi, mut log_sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
    let mut inside = true;
    let slack = 1e-12;
    for _ in 0..steps {
        let plus: bool = rng.random();
        r = if plus { 1.0 + beta / r } else { 1.0 - beta / r };
        lo = lo.min(r);
        hi = hi.max(r);
        inside &= r >= r_low - slack && r <= r_high + slack;
        log_sum += r.ln();
    }
    Ok(RatioSummary {
        beta,
        steps,
        r_low,
        r_high,
        min_seen: if steps > 0 { lo } else { 1.0 },
        max_seen: if steps > 0 { hi } else { 1.0 },
        all_inside: inside,
        mean_log: if steps > 0 { log_sum / steps as f64 } else { 0.0 },
    })
}

/// `−β² / (2 ρ²)`: the first term of the series for `λ` when `r ≤ ρ`.
pub fn first_term_bound(beta: &Rational, rho_squared: &Rational) -> Rational {
    -(beta.clone() * beta.clone()) / (Rational::from_usize(2) * rho_squared.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum LyapunovMode {
    /// The exact `(f, g)` chain.
    Fg,
    /// `x_n = x_{n−1} ± β x_{n−2}`.
    Recurrence(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LyapunovEstimate {
    pub mode: LyapunovMode,
    pub steps: usize,
    pub seed: u64,
    pub lambda_hat: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    /// `(batch, steps in batch, batch rate)`.
    pub batches: Vec<(usize, usize, f64)>,
}

impl LyapunovEstimate {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("batch,steps,lambda_hat\n");
        for (b, n, l) in &self.batches {
            s.push_str(&format!("{b},{n},{l:.12e}\n"));
        }
        s
    }

    pub fn ci_excludes_zero(&self) -> bool {
        self.ci95_high < 0.0 || self.ci95_low > 0.0
    }
}

pub const MIN_LYAPUNOV_STEPS: usize = 10_000;

/// Batch-means estimate of `lim ln x_n / n`, rescaling every 64 steps.
pub fn lyapunov_estimate(mode: LyapunovMode, steps: usize, seed: u64, batches: usize) -> Result<LyapunovEstimate> {
    if steps < MIN_LYAPUNOV_STEPS {
        return Err(Error::InvalidArgument(format!("steps must be >= {MIN_LYAPUNOV_STEPS}")));
    }
    if batches < 2 || batches > steps {
        return Err(Error::InvalidArgument("batches must lie in 2..=steps".into()));
    }
    if let LyapunovMode::Recurrence(beta) = mode {
        ratio_support(beta)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bits = 0u64;
    // state: (f, g) or (x_{n−1}, x_n), normalised so the log scale is separate
    let (mut a, mut b) = (1.0f64, 1.0f64);
    let mut log_scale = 0.0f64;
    let mut prev_dir: Option<bool> = None;
    let level = |a: f64, b: f64| match mode {
        LyapunovMode::Fg => ((a + b) / 2.0).ln(),
        LyapunovMode::Recurrence(_) => b.ln(),
    };
    let mut out = Vec::with_capacity(batches);
    let mut last_level = level(a, b);
    let mut done = 0usize;
    for k in 0..batches {
        let len = steps / batches + usize::from(k < steps % batches);
        for _ in 0..len {
            if done % 64 == 0 {
                bits = rng.random();
            }
            let coin = bits & 1 == 1;
            bits >>= 1;
            match mode {
                LyapunovMode::Fg => {
                    let balanced = prev_dir.is_none_or(|p| p == coin);
                    prev_dir = Some(coin);
                    (a, b) = step(&a, &b, balanced);
                }
                LyapunovMode::Recurrence(beta) => {
                    let next = if coin { b + beta * a } else { b - beta * a };
                    (a, b) = (b, next);
                }
            }
            done += 1;
            if done % 64 == 0 {
                let s = match mode {
                    LyapunovMode::Fg => a + b,
                    LyapunovMode::Recurrence(_) => b,
                };
                a /= s;
                b /= s;
                log_scale += s.ln();
            }
        }
        let now = log_scale + level(a, b);
        out.push((k, len, (now - last_level) / len as f64));
        last_level = now;
    }
    let nb = batches as f64;
    let lambda_hat = (last_level - level(1.0, 1.0)) / steps as f64;
    let mean = out.iter().map(|x| x.2).sum::<f64>() / nb;
    let var = out.iter().map(|x| (x.2 - mean).powi(2)).sum::<f64>() / (nb - 1.0);
    let half = 1.96 * (var / nb).sqrt();
    Ok(LyapunovEstimate {
        mode,
        steps,
        seed,
        lambda_hat,
        ci95_low: lambda_hat - half,
        ci95_high: lambda_hat + half,
        batches: out,
    })
}

/// Fractions of all orientations on `e` edges with `C(P3)` zero, positive
/// and negative, by enumeration.
pub fn localwalk_exhaustive(e: usize) -> Result<WalkFractions> {
    if e < 2 || e > 24 {
        return Err(Error::InvalidArgument("edge count must lie in 2..=24".into()));
    }
    let (mut zero, mut pos, mut neg) = (0u64, 0u64, 0u64);
    for bits in 0..1u64 << e {
        let c = path_counts(&Orientation::from_bits(e, bits)).c_p3;
        match c.signum() {
            0 => zero += 1,
            1 => pos += 1,
            _ => neg += 1,
        }
    }
    let total = 1u64 << e;
    let frac = |k: u64| Rational::new(k.into(), total.into());
    Ok(WalkFractions { p_zero: frac(zero), p_pos: frac(pos), p_neg: frac(neg) })
}

/// Fair-coin directions for `e` edges.
pub fn random_dirs(e: usize, seed: u64) -> Vec<Dir> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..e).map(|_| if rng.random() { Dir::Forward } else { Dir::Backward }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::hom_path;
    use crate::signed::walk_fractions;

    fn q(p: i64, d: i64) -> Rational {
        Rational::from_ratio(p, d)
    }

    #[test]
    fn fg_examples() {
        assert_eq!(fg_process(Orientation::parse(">>>>").unwrap().dirs()).total(), q(5, 8));
        assert_eq!(fg_process(Orientation::parse("><><").unwrap().dirs()).total(), q(29, 8));
        assert_eq!(fg_process(&[]).total(), q(2, 1));
    }

    #[test]
    fn fg_matches_hom_count() {
        let k = k_host();
        for e in 1..=8 {
            for o in Orientation::all(e) {
                assert_eq!(fg_process(o.dirs()).total(), hom_path(&o, &k).raw, "{o}");
            }
        }
    }

    #[test]
    fn martingale_mean() {
        for e in 0..=8 {
            assert_eq!(exhaustive_mean(e).unwrap(), q(2, 1));
        }
    }

    #[test]
    fn beta_star_is_one_quarter() {
        assert_eq!(resolve_beta_star(8).unwrap().beta_star, q(1, 4));
    }

    #[test]
    fn ratio_supports() {
        let (lo, hi) = ratio_support(0.125).unwrap();
        assert!((lo - 0.85355).abs() < 1e-5 && (hi - 1.14645).abs() < 1e-5);
        assert_eq!(ratio_support(0.25).unwrap(), (0.5, 1.5));
        assert_eq!(ratio_support(0.3), Err(Error::DiscriminantNegative));
        let r = ratio_chain(0.0, 100, 1).unwrap();
        assert_eq!((r.min_seen, r.max_seen, r.mean_log), (1.0, 1.0, 0.0));
        assert!(ratio_chain(0.125, 10_000, 2).unwrap().all_inside);
    }

    #[test]
    fn first_term_arithmetic() {
        assert_eq!(first_term_bound(&q(1, 8), &q(9, 2)), q(-1, 576));
    }

    #[test]
    fn zero_beta_recurrence_is_flat() {
        let est = lyapunov_estimate(LyapunovMode::Recurrence(0.0), 10_000, 3, 10).unwrap();
        assert_eq!(est.lambda_hat, 0.0);
        assert!(lyapunov_estimate(LyapunovMode::Fg, 100, 1, 10).is_err());
    }

    #[test]
    fn seeded_runs_repeat() {
        let a = lyapunov_estimate(LyapunovMode::Fg, 20_000, 9, 10).unwrap();
        let b = lyapunov_estimate(LyapunovMode::Fg, 20_000, 9, 10).unwrap();
        assert_eq!(a, b);
        assert_eq!(sample_fg(50, 8, 4, 1.0).unwrap(), sample_fg(50, 8, 4, 1.0).unwrap());
    }

    #[test]
    fn localwalk_small() {
        for e in 2..=9 {
            assert_eq!(localwalk_exhaustive(e).unwrap(), walk_fractions(e - 1).unwrap());
        }
    }
}
