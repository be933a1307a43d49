//! Explicit kernels, tensor powers and counterexample hosts.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::{hom_auto, hom_generic, hom_path, Kernel};
use crate::matrix::Matrix;
use crate::pattern::{Digraph, Orientation, Pattern};
use crate::scalar::{rational_string, Rational, Scalar};
use crate::tournament::{SkewMatrix, Tournament, WeightedTournament};

/// Largest side length produced by [`tensor_power`].
pub const TENSOR_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KernelName {
    B1,
    BPrime,
    MBalanced,
}

impl KernelName {
    pub const ALL: [KernelName; 3] = [KernelName::B1, KernelName::BPrime, KernelName::MBalanced];
}

impl FromStr for KernelName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B1" | "b1" => Ok(KernelName::B1),
            "BPrime" | "bprime" | "B'" => Ok(KernelName::BPrime),
            "MBalanced" | "mbalanced" | "MB" => Ok(KernelName::MBalanced),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

impl fmt::Display for KernelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelName::B1 => "B1",
            KernelName::BPrime => "BPrime",
            KernelName::MBalanced => "MBalanced",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedKernel {
    pub name: KernelName,
    pub matrix: SkewMatrix<Rational>,
}

pub fn named_kernel(name: KernelName) -> NamedKernel {
    let rows: &[&[i64]] = match name {
        KernelName::B1 => &[&[0, 1], &[-1, 0]],
        KernelName::BPrime => &[&[0, 1, -1], &[-1, 0, 0], &[1, 0, 0]],
        KernelName::MBalanced => &[&[0, 1, -1], &[-1, 0, 1], &[1, -1, 0]],
    };
    let matrix = SkewMatrix::new(Matrix::from_i64_rows(rows)).expect("named kernels are skew");
    NamedKernel { name, matrix }
}

/// `m`-fold Kronecker power of a kernel. Even powers of a skew matrix are
/// symmetric, so only odd `m` yield a [`SkewMatrix`].
pub fn tensor_power<S: Scalar>(b: &SkewMatrix<S>, m: usize) -> Result<SkewMatrix<S>> {
    if m == 0 {
        return Err(Error::InvalidArgument("tensor power must be >= 1".into()));
    }
    if m % 2 == 0 {
        return Err(Error::NotSkewForEvenPower);
    }
    Ok(SkewMatrix::from_matrix_unchecked(tensor_power_matrix(b.matrix(), m)?))
}

/// `m`-fold Kronecker power of any kernel matrix.
pub fn tensor_power_matrix<S: Scalar>(k: &Matrix<S>, m: usize) -> Result<Matrix<S>> {
    let side = (k.n() as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
    if side > TENSOR_CAP as u64 {
        return Err(Error::cap("tensor power side", TENSOR_CAP as u64));
    }
    let mut out = k.clone();
    for _ in 1..m {
        out = out.kron(k);
    }
    Ok(out)
}

/// `t_F(W^{⊗m}) = t_F(W)^m`.
pub fn density_of_tensor<S: Scalar, K: Kernel<S>>(f: &Digraph, w: &K, m: usize) -> Result<S> {
    Ok(num::pow(hom_generic(f, w)?.density(), m))
}

/// The 4×4 kernel `4√b (uᵀw − wᵀu)` whose path densities are `(−1)^k a b^k`.
pub fn ab_construction(a: f64, b: f64) -> Result<SkewMatrix<f64>> {
    if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) {
        return Err(Error::InvalidArgument("a and b must lie in [0,1]".into()));
    }
    if 2.0 * b.sqrt() * (a.sqrt() + (1.0 - a).sqrt()) >= 0.5 {
        return Err(Error::ValidityConditionViolated);
    }
    let v1 = [0.5, 0.5, 0.5, 0.5];
    let v2 = [0.5, 0.5, -0.5, -0.5];
    let w = [0.5, -0.5, 0.5, -0.5];
    let u: Vec<f64> = (0..4).map(|i| a.sqrt() * v1[i] + (1.0 - a).sqrt() * v2[i]).collect();
    let c = 4.0 * b.sqrt();
    SkewMatrix::new(Matrix::from_fn(4, |i, j| c * (u[i] * w[j] - w[i] * u[j])))
}

/// Which inequality a host violates, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    ViolatesTAS,
    ViolatesTS,
    /// Exactly on the threshold.
    Tight,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub host: WeightedTournament<Rational>,
    pub pattern: Pattern,
    pub direction: Direction,
    pub threshold: Rational,
    pub value: Rational,
}

#[derive(Serialize)]
struct Sidecar<'a> {
    pattern: String,
    direction: Direction,
    value: String,
    threshold: String,
    value_float: f64,
    host: &'a str,
}

impl Certificate {
    /// Evaluates `h_P(A)` exactly and compares it with `n^v / 2^e`.
    pub fn evaluate(pattern: &Pattern, host: &WeightedTournament<Rational>) -> Result<Self> {
        let value = match pattern {
            Pattern::Path(o) => hom_path(o, host).raw,
            Pattern::Graph(d) => hom_auto(d, host)?.raw,
        };
        let threshold = Rational::new(
            num::pow(num::BigInt::from(host.n()), pattern.vertices()),
            num::pow(num::BigInt::from(2), pattern.edges()),
        );
        let direction = if value > threshold {
            Direction::ViolatesTAS
        } else if value < threshold {
            Direction::ViolatesTS
        } else {
            Direction::Tight
        };
        Ok(Certificate { host: host.clone(), pattern: pattern.clone(), direction, threshold, value })
    }

    /// Recomputes the value by brute force over all maps.
    pub fn reverify(&self) -> Result<bool> {
        Ok(hom_generic(&self.pattern.to_digraph(), &self.host)?.raw == self.value)
    }

    pub fn is_violation(&self) -> bool {
        self.direction != Direction::Tight
    }

    /// JSON sidecar; the host itself is embedded in the weighted file format.
    pub fn to_json(&self) -> serde_json::Value {
        let host = self.host.to_text();
        serde_json::to_value(Sidecar {
            pattern: self.pattern.to_string(),
            direction: self.direction,
            value: rational_string(&self.value),
            threshold: rational_string(&self.threshold),
            value_float: self.value.to_f64(),
            host: &host,
        })
        .expect("certificate serialises")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CertificateName {
    TransitiveTriangle,
    /// Cyclic triangle with the `0 → 1` arc weight lowered to `1 − δ`.
    PerturbedCyclic(Rational),
}

pub fn certificate_host(name: &CertificateName) -> Result<WeightedTournament<Rational>> {
    let q = |p: i64, d: i64| Rational::from_ratio(p, d);
    let rows = match name {
        CertificateName::TransitiveTriangle => vec![
            vec![q(1, 2), q(1, 1), q(1, 1)],
            vec![q(0, 1), q(1, 2), q(1, 1)],
            vec![q(0, 1), q(0, 1), q(1, 2)],
        ],
        CertificateName::PerturbedCyclic(delta) => {
            if *delta < q(0, 1) || *delta > q(1, 1) {
                return Err(Error::InvalidDelta);
            }
            vec![
                vec![q(1, 2), q(1, 1) - delta.clone(), q(0, 1)],
                vec![delta.clone(), q(1, 2), q(1, 1)],
                vec![q(1, 1), q(0, 1), q(1, 2)],
            ]
        }
    };
    WeightedTournament::new(Matrix::from_rows(rows), true)
}

/// The six-edge pattern both certificate hosts are built for.
pub fn certificate_pattern() -> Orientation {
    Orientation::parse("><>>><").expect("valid pattern")
}

pub fn certificate(name: CertificateName) -> Result<Certificate> {
    Certificate::evaluate(&Pattern::Path(certificate_pattern()), &certificate_host(&name)?)
}

/// `J/2 + εB` with half loops.
pub fn w_eps<S: Scalar>(b: &SkewMatrix<S>, eps: &S) -> Result<WeightedTournament<S>> {
    if eps.abs() * b.matrix().max_abs() > S::half() {
        return Err(Error::RangeViolated(format!("eps * max|B| = {} > 1/2", (eps.abs() * b.matrix().max_abs()).to_f64())));
    }
    b.scale(eps).to_weighted()
}

/// Graph made of `m` independent parts with exactly one edge between every
/// pair of parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparseReport {
    pub m: usize,
    /// Total vertex count.
    pub k: usize,
    pub e: usize,
    pub part_of: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    /// `k·log2(m) < C(m,2)`: every orientation then has density at least
    /// `m^{−k} > 2^{−e}`.
    pub violates: bool,
}

pub fn sparse_non_tas(part_sizes: &[usize]) -> Result<SparseReport> {
    let m = part_sizes.len();
    if m < 2 || part_sizes.contains(&0) {
        return Err(Error::InvalidArgument("need at least two nonempty parts".into()));
    }
    let mut first = Vec::with_capacity(m);
    let mut part_of = Vec::new();
    for (p, &s) in part_sizes.iter().enumerate() {
        first.push(part_of.len());
        part_of.extend(std::iter::repeat_n(p, s));
    }
    let mut edges = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            edges.push((first[i], first[j]));
        }
    }
    let k = part_of.len();
    let e = edges.len();
    let violates = (k as f64) * (m as f64).log2() < e as f64;
    Ok(SparseReport { m, k, e, part_of, edges, violates })
}

impl SparseReport {
    /// Orients edge `i` as listed when `forward[i]`, else reversed.
    pub fn orient(&self, forward: &[bool]) -> Digraph {
        let arcs = self
            .edges
            .iter()
            .zip(forward)
            .map(|(&(a, b), &f)| if f { (a, b) } else { (b, a) })
            .collect();
        Digraph::new(self.k, arcs).expect("simple graph orientation")
    }

    /// Contracts every part of an orientation; returns the quotient
    /// tournament when the contraction is an arc-preserving map onto it.
    pub fn quotient(&self, d: &Digraph) -> Option<Tournament> {
        let mut dir = vec![vec![None; self.m]; self.m];
        for &(a, b) in d.arcs() {
            let (pa, pb) = (self.part_of[a], self.part_of[b]);
            if pa == pb || dir[pa][pb].is_some() {
                return None;
            }
            dir[pa][pb] = Some(true);
            dir[pb][pa] = Some(false);
        }
        if (0..self.m).any(|i| (0..self.m).any(|j| i != j && dir[i][j].is_none())) {
            return None;
        }
        let t = Tournament::from_fn(self.m, |i, j| dir[i][j] == Some(true));
        let preserved = d.arcs().iter().all(|&(a, b)| t.adj(self.part_of[a], self.part_of[b]));
        preserved.then_some(t)
    }

    /// Checks the quotient property on `samples` seeded random orientations.
    pub fn check_random_quotients(&self, samples: usize, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).all(|_| {
            let forward: Vec<bool> = (0..self.e).map(|_| rng.random()).collect();
            self.quotient(&self.orient(&forward)).is_some()
        })
    }

    /// `m^{−k} > 2^{−e}`, decided exactly.
    pub fn density_bound_beats_random(&self) -> bool {
        num::pow(num::BigUint::from(self.m), self.k) < num::pow(num::BigUint::from(2u32), self.e)
    }
}
