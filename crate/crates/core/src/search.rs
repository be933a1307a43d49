//! Refutation of TS/TAS inequalities: exhaustive small hosts, projected
//! gradient search over weighted tournaments, and exact certification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::construct::{certificate_host, named_kernel, w_eps, Certificate, CertificateName, Direction, KernelName};
use crate::error::{Error, Result};
use crate::hom::{forest_gradient, hom_auto, hom_forest, hom_path, path_vector};
use crate::matrix::Matrix;
use crate::pattern::{Dir, Pattern};
use crate::scalar::{rationalize, Rational, Scalar};
use crate::tournament::{enumerate_tournaments, transitive, with_half_loops, WeightedTournament};

/// Largest host order for the exhaustive stage.
pub const EXHAUSTIVE_CAP: usize = 6;
/// Largest host order for the optimizer.
pub const OPTIMIZE_CAP: usize = 12;
/// Denominator bound used when rounding float hosts.
pub const RATIONAL_DEN: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    /// Look for `h > n^v / 2^e`.
    #[serde(rename = "TAS")]
    Tas,
    /// Look for `h < n^v / 2^e`.
    #[serde(rename = "TS")]
    Ts,
}

impl Mode {
    fn violated_by(self, d: Direction) -> bool {
        matches!((self, d), (Mode::Tas, Direction::ViolatesTAS) | (Mode::Ts, Direction::ViolatesTS))
    }

    fn objective(self) -> Objective {
        match self {
            Mode::Tas => Objective::Maximize,
            Mode::Ts => Objective::Minimize,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Objective {
    Maximize,
    Minimize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub restarts: usize,
    pub max_iters: usize,
}

impl Budget {
    pub const EXHAUSTIVE_ONLY: Budget = Budget { restarts: 0, max_iters: 0 };
}

impl Default for Budget {
    fn default() -> Self {
        Budget { restarts: 8, max_iters: 500 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RefutationReport {
    pub pattern: Pattern,
    pub mode: Mode,
    pub n_checked: usize,
    pub hosts_exhaustive: u64,
    pub samples: usize,
    pub violation: Option<Certificate>,
    /// Smallest slack `(threshold − h)/threshold` (TAS) or
    /// `(h − threshold)/threshold` (TS) seen; negative means violated.
    pub margin_min: f64,
}

impl RefutationReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "pattern": self.pattern.to_string(),
            "mode": self.mode,
            "n_checked": self.n_checked,
            "hosts_exhaustive": self.hosts_exhaustive,
            "samples": self.samples,
            "violation": self.violation.as_ref().map(Certificate::to_json),
            "margin_min": self.margin_min,
        })
    }
}

fn exact_value(p: &Pattern, host: &WeightedTournament<Rational>) -> Result<Rational> {
    Ok(match p {
        Pattern::Path(o) => hom_path(o, host).raw,
        Pattern::Graph(d) => hom_auto(d, host)?.raw,
    })
}

fn threshold(p: &Pattern, n: usize) -> Rational {
    Rational::new(
        num::pow(num::BigInt::from(n), p.vertices()),
        num::pow(num::BigInt::from(2), p.edges()),
    )
}

fn slack(mode: Mode, value: &Rational, thr: &Rational) -> Rational {
    let d = match mode {
        Mode::Tas => thr.clone() - value.clone(),
        Mode::Ts => value.clone() - thr.clone(),
    };
    d / thr.clone()
}

/// Exhaustive check over every half-loop tournament on `n ≤ n_max`
/// vertices, then projected gradient search within `budget`.
pub fn refute(p: &Pattern, mode: Mode, n_max: usize, budget: Budget, seed: u64) -> Result<RefutationReport> {
    if n_max > EXHAUSTIVE_CAP {
        return Err(Error::cap("exhaustive host order", EXHAUSTIVE_CAP as u64));
    }
    let mut hosts = 0u64;
    let mut margin_min = f64::INFINITY;
    for n in 1..=n_max {
        let thr = threshold(p, n);
        let tours: Vec<_> = enumerate_tournaments(n)?.collect();
        hosts += tours.len() as u64;
        let slacks: Vec<Rational> = tours
            .par_iter()
            .map(|t| exact_value(p, &with_half_loops(t)).map(|v| slack(mode, &v, &thr)))
            .collect::<Result<_>>()?;
        let worst = slacks.iter().min().expect("at least one tournament");
        margin_min = margin_min.min(worst.to_f64());
        if let Some(k) = slacks.iter().position(|s| s < &Rational::from_usize(0)) {
            let cert = Certificate::evaluate(p, &with_half_loops(&tours[k]))?;
            return Ok(RefutationReport {
                pattern: p.clone(),
                mode,
                n_checked: n,
                hosts_exhaustive: hosts,
                samples: 0,
                violation: Some(cert),
                margin_min,
            });
        }
    }
    let mut samples = 0;
    if budget.restarts > 0 {
        let mut sizes = vec![3usize.max(n_max.min(OPTIMIZE_CAP))];
        if sizes[0] != 3 {
            sizes.insert(0, 3);
        }
        for n in sizes {
            let runs = optimize_runs(p, n, mode.objective(), budget, seed)?;
            samples += runs.len();
            let thr = threshold(p, n).to_f64();
            for run in &runs {
                let s = match mode {
                    Mode::Tas => thr - run.value,
                    Mode::Ts => run.value - thr,
                };
                margin_min = margin_min.min(s / thr);
            }
            for run in runs {
                if let Some(cert) = certify(p, &run.host, mode)? {
                    return Ok(RefutationReport {
                        pattern: p.clone(),
                        mode,
                        n_checked: n_max,
                        hosts_exhaustive: hosts,
                        samples,
                        violation: Some(cert),
                        margin_min,
                    });
                }
            }
        }
    }
    Ok(RefutationReport {
        pattern: p.clone(),
        mode,
        n_checked: n_max,
        hosts_exhaustive: hosts,
        samples,
        violation: None,
        margin_min,
    })
}

/// Host `J/2 + B` from the strict upper triangle of `B`, row by row.
///
/// Panics if an entry of `x` lies outside `[−1/2, 1/2]`.
pub fn host_from_upper(n: usize, x: &[f64]) -> WeightedTournament<f64> {
    let mut k = 0;
    let mut up = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            up[i][j] = x[k];
            k += 1;
        }
    }
    let m = Matrix::from_fn(n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => 0.5 + up[i][j],
        std::cmp::Ordering::Greater => 0.5 - up[j][i],
        std::cmp::Ordering::Equal => 0.5,
    });
    WeightedTournament::new(m, true).expect("entries in [0,1]")
}

fn upper_of(host: &WeightedTournament<f64>) -> Vec<f64> {
    let n = host.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(host.get(i, j) - 0.5);
        }
    }
    out
}

/// Value and `∂h/∂A(i,j)` for a float host.
fn value_and_gradient(p: &Pattern, m: &Matrix<f64>) -> Result<(f64, Matrix<f64>)> {
    match p {
        Pattern::Path(o) => {
            let dirs = o.dirs();
            let e = dirs.len();
            let n = m.n();
            let mt = m.transpose();
            // left[k] = 1ᵀ M_1 ⋯ M_k, right[k] = M_{k+1} ⋯ M_e 1
            let mut left = vec![vec![1.0; n]];
            for d in dirs {
                let next = if *d == Dir::Forward { m.left_mul(&left[left.len() - 1]) } else { mt.left_mul(&left[left.len() - 1]) };
                left.push(next);
            }
            let mut right = vec![vec![1.0; n]; e + 1];
            for k in (0..e).rev() {
                right[k] = if dirs[k] == Dir::Forward { m.right_mul(&right[k + 1]) } else { mt.right_mul(&right[k + 1]) };
            }
            let mut g = Matrix::zeros(n);
            for k in 0..e {
                for i in 0..n {
                    for j in 0..n {
                        let c = left[k][i] * right[k + 1][j];
                        if dirs[k] == Dir::Forward {
                            g[(i, j)] += c;
                        } else {
                            g[(j, i)] += c;
                        }
                    }
                }
            }
            let value = path_vector(dirs, m).iter().sum();
            Ok((value, g))
        }
        Pattern::Graph(d) => {
            let value = hom_forest(d, m)
                .ok_or_else(|| Error::InvalidArgument("optimizer needs a path or forest pattern".into()))?
                .raw;
            Ok((value, forest_gradient(d, m).expect("forest")))
        }
    }
}

fn objective_value(p: &Pattern, x: &[f64], n: usize) -> Result<f64> {
    Ok(value_and_gradient(p, host_from_upper(n, x).matrix())?.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimizeRun {
    pub restart: usize,
    /// `warm:<name>` or `random`.
    pub start: String,
    pub value: f64,
    pub iterations: usize,
    /// Objective after each accepted step, starting value first.
    pub history: Vec<f64>,
    #[serde(skip)]
    pub host: WeightedTournament<f64>,
}

fn warm_starts(n: usize) -> Vec<(String, Vec<f64>)> {
    let mut out = Vec::new();
    let t = with_half_loops(&transitive(n)).to_f64();
    out.push(("warm:transitive".to_string(), upper_of(&t)));
    if n == 3 {
        for (name, cert) in [
            ("warm:perturbed-cyclic", CertificateName::PerturbedCyclic(Rational::from_ratio(1, 100))),
            ("warm:cyclic", CertificateName::PerturbedCyclic(Rational::from_ratio(0, 1))),
        ] {
            let h = certificate_host(&cert).expect("valid delta").to_f64();
            out.push((name.to_string(), upper_of(&h)));
        }
    }
    for k in KernelName::ALL {
        let b = named_kernel(k).matrix;
        if b.n() == n {
            let eps = Rational::from_ratio(1, 2);
            if let Ok(w) = w_eps(&b, &eps) {
                out.push((format!("warm:{k}"), upper_of(&w.to_f64())));
            }
        }
    }
    out
}

/// Projected gradient ascent (or descent) from one start.
fn climb(p: &Pattern, n: usize, objective: Objective, mut x: Vec<f64>, max_iters: usize) -> Result<(Vec<f64>, Vec<f64>, usize)> {
    let sign = if objective == Objective::Maximize { 1.0 } else { -1.0 };
    let project = |v: f64| v.clamp(-0.5, 0.5);
    let mut cur = objective_value(p, &x, n)?;
    let mut history = vec![cur];
    let mut iters = 0;
    let mut step = 0.5;
    while iters < max_iters {
        iters += 1;
        let (_, g) = value_and_gradient(p, host_from_upper(n, &x).matrix())?;
        let mut grad = Vec::with_capacity(x.len());
        for i in 0..n {
            for j in i + 1..n {
                grad.push(sign * (g[(i, j)] - g[(j, i)]));
            }
        }
        // projected gradient: zero out components pushing against the box
        let pg: Vec<f64> = grad
            .iter()
            .zip(&x)
            .map(|(&gi, &xi)| if (xi >= 0.5 && gi > 0.0) || (xi <= -0.5 && gi < 0.0) { 0.0 } else { gi })
            .collect();
        let norm = pg.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if norm <= 1e-9 {
            break;
        }
        let mut accepted = false;
        let mut eta = step / norm;
        for _ in 0..60 {
            let trial: Vec<f64> = x.iter().zip(&pg).map(|(xi, gi)| project(xi + eta * gi)).collect();
            let v = objective_value(p, &trial, n)?;
            if sign * (v - cur) > 0.0 {
                x = trial;
                cur = v;
                history.push(cur);
                accepted = true;
                step = (eta * norm * 2.0).min(1.0);
                break;
            }
            eta /= 2.0;
        }
        if !accepted {
            break;
        }
    }
    Ok((x, history, iters))
}

fn optimize_runs(p: &Pattern, n: usize, objective: Objective, budget: Budget, seed: u64) -> Result<Vec<OptimizeRun>> {
    if n < 2 || n > OPTIMIZE_CAP {
        return Err(Error::cap("optimizer host order", OPTIMIZE_CAP as u64));
    }
    let dim = n * (n - 1) / 2;
    let mut starts = warm_starts(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget.restarts {
        starts.push(("random".to_string(), (0..dim).map(|_| rng.random_range(-0.5..=0.5)).collect()));
    }
    starts
        .into_par_iter()
        .enumerate()
        .map(|(restart, (start, x0))| {
            let (x, history, iterations) = climb(p, n, objective, x0, budget.max_iters)?;
            Ok(OptimizeRun {
                restart,
                start,
                value: *history.last().expect("nonempty history"),
                iterations,
                history,
                host: host_from_upper(n, &x),
            })
        })
        .collect()
}

/// Best host found over warm starts and `restarts` random starts.
pub fn optimize_density(
    p: &Pattern,
    n: usize,
    objective: Objective,
    restarts: usize,
    seed: u64,
) -> Result<OptimizeRun> {
    let runs = optimize_runs(p, n, objective, Budget { restarts, max_iters: 2000 }, seed)?;
    let better = |a: &OptimizeRun, b: &OptimizeRun| match objective {
        Objective::Maximize => a.value > b.value,
        Objective::Minimize => a.value < b.value,
    };
    let mut best: Option<OptimizeRun> = None;
    for r in runs {
        if best.as_ref().is_none_or(|b| better(&r, b)) {
            best = Some(r);
        }
    }
    Ok(best.expect("at least one start"))
}

/// Rounds each upper entry to a fraction with denominator at most
/// [`RATIONAL_DEN`] and completes the host with `A(j,i) = 1 − A(i,j)`.
pub fn rationalize_host(host: &WeightedTournament<f64>) -> Result<WeightedTournament<Rational>> {
    let n = host.n();
    let mut up = vec![vec![Rational::from_usize(0); n]; n];
    for (i, row) in up.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate().skip(i + 1) {
            *cell = rationalize(*host.get(i, j), RATIONAL_DEN);
        }
    }
    let m = Matrix::from_fn(n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => up[i][j].clone(),
        std::cmp::Ordering::Greater => Rational::from_usize(1) - up[j][i].clone(),
        std::cmp::Ordering::Equal => Rational::from_ratio(1, 2),
    });
    WeightedTournament::new(m, host.loops_half()).map_err(|e| Error::InvalidHost(e.to_string()))
}

/// Exact certificate for `mode` on a float host after rationalisation.
pub fn certify(p: &Pattern, host: &WeightedTournament<f64>, mode: Mode) -> Result<Option<Certificate>> {
    certify_exact(p, &rationalize_host(host)?, mode)
}

pub fn certify_exact(p: &Pattern, host: &WeightedTournament<Rational>, mode: Mode) -> Result<Option<Certificate>> {
    if !host.loops_half() {
        return Err(Error::InvalidHost("certificates need half loops".into()));
    }
    let cert = Certificate::evaluate(p, host)?;
    Ok(mode.violated_by(cert.direction).then_some(cert))
}
