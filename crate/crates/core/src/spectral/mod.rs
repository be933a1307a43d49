//! Spectra of skew kernels, the moments `X_{2t} = |1ᵀB^{2t}1|`, symbolic
//! expansion of path counts, and a sign certifier for those expansions.

mod certify;
mod poly;

pub use certify::{certify_sign, Certification, SignOutcome};
pub use poly::{eval_spoly, expand_path, Monomial, SPolynomial, EXPAND_CAP};

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::power_sandwich;
use crate::scalar::Scalar;
use crate::tournament::SkewMatrix;

/// Moduli `λ` of the eigenvalue pairs `±iλ`, one entry per pair (plus a
/// trailing zero for odd `n`), sorted descending.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub lambdas: Vec<f64>,
    pub lmax: f64,
}

/// Eigen-decomposition of the symmetric matrix `B²`: pairs of `λ² = −μ` and
/// the corresponding unit eigenvector.
pub fn square_eigen(b: &SkewMatrix<f64>) -> Result<Vec<(f64, Vec<f64>)>> {
    let n = b.n();
    let m = DMatrix::from_fn(n, n, |i, j| *b.get(i, j));
    let sq = &m * &m;
    let eig = SymmetricEigen::try_new(sq.clone(), 1e-15, 10_000).ok_or(Error::ConvergenceFailure)?;
    let scale = sq.norm().max(1.0);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mu = eig.eigenvalues[k];
        let v = eig.eigenvectors.column(k).into_owned();
        let residual = (&sq * &v - &v * mu).norm();
        if residual > 1e-9 * scale {
            return Err(Error::ConvergenceFailure);
        }
        out.push(((-mu).max(0.0), v.iter().copied().collect()));
    }
    out.sort_by(|a, b| b.0.total_cmp(&a.0));
    Ok(out)
}

pub fn eigenvalues(b: &SkewMatrix<f64>) -> Result<Spectrum> {
    let pairs = square_eigen(b)?;
    let lambdas: Vec<f64> = pairs.iter().step_by(2).map(|(l2, _)| l2.sqrt()).collect();
    let lmax = lambdas.first().copied().unwrap_or(0.0);
    Ok(Spectrum { lambdas, lmax })
}

/// `X_{2t} = |1ᵀB^{2t}1|`, with `X_0 = n`.
pub fn x_moment<S: Scalar>(b: &SkewMatrix<S>, t: usize) -> S {
    if t == 0 {
        return S::from_usize(b.n());
    }
    power_sandwich(b.matrix(), 2 * t).abs()
}

/// `Σ_k (1·u_k)² λ_k^{2t}` over the eigenpairs of `B²`; equals `x_moment`.
pub fn x_moment_spectral(b: &SkewMatrix<f64>, t: usize) -> Result<f64> {
    Ok(square_eigen(b)?
        .iter()
        .map(|(l2, u)| {
            let c: f64 = u.iter().sum();
            c * c * l2.powi(t as i32)
        })
        .sum())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClauseResult {
    pub holds: bool,
    /// Slack `rhs − lhs` (non-negative when the clause holds exactly).
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct XLemmaReport {
    pub s: usize,
    pub t: usize,
    /// Odd powers up to `2(s+t)+1` sandwich to zero.
    pub odd_vanish: ClauseResult,
    /// `1ᵀB^{4j+2}1 ≤ 0` and `1ᵀB^{4j}1 ≥ 0` for powers up to `2(s+t)`.
    pub sign_pattern: ClauseResult,
    /// `X_{2s} ≤ X_{2t} (n/2)^{2(s−t)}`.
    pub radius_bound: ClauseResult,
    /// `X_{2s}² ≤ X_{2(s−t)} X_{2(s+t)}`.
    pub log_convexity: ClauseResult,
}

impl XLemmaReport {
    pub fn all_hold(&self) -> bool {
        self.odd_vanish.holds && self.sign_pattern.holds && self.radius_bound.holds && self.log_convexity.holds
    }
}

/// `a ≤ b`, exactly or within `1e-9` relative slack for floats.
fn le_tol<S: Scalar>(a: &S, b: &S) -> bool {
    if S::is_exact() {
        return a <= b;
    }
    let (x, y) = (a.to_f64(), b.to_f64());
    x <= y + 1e-9 * x.abs().max(y.abs())
}

/// Evaluates the four moment clauses for `B` with entries in `[−1/2, 1/2]`.
pub fn check_x_lemma<S: Scalar>(b: &SkewMatrix<S>, s: usize, t: usize) -> Result<XLemmaReport> {
    if t > s {
        return Err(Error::InvalidArgument(format!("need s >= t, got s={s}, t={t}")));
    }
    if b.matrix().max_abs() > S::half() {
        return Err(Error::EntryRangeViolated);
    }
    let n = b.n();
    let top = 2 * (s + t) + 1;
    let sand: Vec<S> = (0..=top).map(|k| power_sandwich(b.matrix(), k)).collect();
    let scale = sand.iter().fold(S::one(), |m, x| if x.abs() > m { x.abs() } else { m });

    let mut odd_worst = S::zero();
    for k in (1..=top).step_by(2) {
        if sand[k].abs() > odd_worst {
            odd_worst = sand[k].abs();
        }
    }
    let odd_tol = if S::is_exact() { S::zero() } else { S::from_ratio(1, 1_000_000_000) * scale.clone() };
    let odd_vanish = ClauseResult { holds: odd_worst <= odd_tol, margin: -odd_worst.to_f64() };

    let mut sign_margin = f64::INFINITY;
    let mut sign_holds = true;
    for k in (2..top).step_by(2) {
        let signed = if k % 4 == 2 { -sand[k].clone() } else { sand[k].clone() };
        sign_margin = sign_margin.min(signed.to_f64());
        let tol = if S::is_exact() { S::zero() } else { S::from_ratio(1, 1_000_000_000) * scale.clone() };
        if signed < -tol {
            sign_holds = false;
        }
    }
    let x = |j: usize| if j == 0 { S::from_usize(n) } else { sand[2 * j].abs() };
    let radius = num::pow(S::from_usize(n) / S::from_ratio(2, 1), 2 * (s - t));
    let (lhs3, rhs3) = (x(s), x(t) * radius);
    let (lhs4, rhs4) = (x(s) * x(s), x(s - t) * x(s + t));
    Ok(XLemmaReport {
        s,
        t,
        odd_vanish,
        sign_pattern: ClauseResult {
            holds: sign_holds,
            margin: if sign_margin.is_finite() { sign_margin } else { 0.0 },
        },
        radius_bound: ClauseResult {
            holds: le_tol(&lhs3, &rhs3),
            margin: (rhs3 - lhs3).to_f64(),
        },
        log_convexity: ClauseResult {
            holds: le_tol(&lhs4, &rhs4),
            margin: (rhs4 - lhs4).to_f64(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{named_kernel, KernelName};
    use crate::matrix::Matrix;
    use crate::scalar::Rational;
    use crate::tournament::random_skew;

    fn q(p: i64, d: i64) -> Rational {
        Rational::from_ratio(p, d)
    }

    #[test]
    fn eigenvalue_examples() {
        let mb = named_kernel(KernelName::MBalanced).matrix.to_f64();
        let s = eigenvalues(&mb).unwrap();
        assert_eq!(s.lambdas.len(), 2);
        assert!((s.lambdas[0] - 3f64.sqrt()).abs() < 1e-12);
        assert!(s.lambdas[1].abs() < 1e-12);
        let two = SkewMatrix::new(Matrix::from_rows(vec![vec![0.0, 0.5], vec![-0.5, 0.0]])).unwrap();
        let s = eigenvalues(&two).unwrap();
        assert_eq!(s.lambdas.len(), 1);
        assert!((s.lmax - 0.5).abs() < 1e-12);
        assert_eq!(eigenvalues(&SkewMatrix::<f64>::zeros(4)).unwrap().lambdas, vec![0.0, 0.0]);
    }

    #[test]
    fn spectral_radius_bounded_by_half_n() {
        for seed in 0..20 {
            let b = random_skew(9, 0.5, seed);
            assert!(eigenvalues(&b).unwrap().lmax <= 4.5 + 1e-12);
        }
    }

    #[test]
    fn moment_examples() {
        let b1 = named_kernel(KernelName::B1).matrix;
        assert_eq!(x_moment(&b1, 1), q(2, 1));
        assert_eq!(x_moment(&b1, 0), q(2, 1));
        let half = SkewMatrix::new(Matrix::from_rows(vec![vec![q(0, 1), q(1, 2)], vec![q(-1, 2), q(0, 1)]])).unwrap();
        assert_eq!(x_moment(&half, 1), q(1, 2));
        assert_eq!(x_moment(&SkewMatrix::<Rational>::zeros(5), 0), q(5, 1));
    }

    #[test]
    fn moments_match_spectral_formula() {
        for seed in 0..20 {
            let b = random_skew(7, 0.5, 100 + seed);
            for t in 0..5 {
                let direct = x_moment(&b, t);
                let spec = x_moment_spectral(&b, t).unwrap();
                assert!((direct - spec).abs() <= 1e-9 * direct.abs().max(1.0), "t={t}");
            }
        }
    }

    #[test]
    fn x_lemma_examples() {
        let r = check_x_lemma(&random_skew(10, 0.5, 11), 3, 1).unwrap();
        assert!(r.all_hold());
        let z = check_x_lemma(&SkewMatrix::<Rational>::zeros(4), 2, 1).unwrap();
        assert!(z.all_hold());
        assert_eq!(z.log_convexity.margin, 0.0);
        let mb = named_kernel(KernelName::MBalanced).matrix.scale(&q(1, 2));
        let r = check_x_lemma(&mb, 2, 1).unwrap();
        assert!(r.all_hold());
        let (x2, x4, x6) = (x_moment(&mb, 1), x_moment(&mb, 2), x_moment(&mb, 3));
        assert_eq!(r.log_convexity.margin, (x2 * x6 - x4.clone() * x4).to_f64());
        let big = named_kernel(KernelName::MBalanced).matrix;
        assert_eq!(check_x_lemma(&big, 1, 0), Err(Error::EntryRangeViolated));
    }
}
