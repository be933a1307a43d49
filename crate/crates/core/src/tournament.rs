//! Host-side objects: tournaments, weighted tournaments and their skew parts.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{parse_rational, rational_string, Rational, Scalar};

/// Largest order accepted by [`enumerate_tournaments`].
pub const ENUMERATE_CAP: usize = 7;

/// Tournament stored as one bit row per vertex (`n ≤ 64`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    rows: Vec<u64>,
}

impl Tournament {
    /// Arc `i → j` wherever `arc(i, j)` holds for `i < j`, else `j → i`.
    pub fn from_fn(n: usize, mut arc: impl FnMut(usize, usize) -> bool) -> Self {
        assert!(n <= 64, "tournaments are limited to 64 vertices");
        let mut rows = vec![0u64; n];
        for i in 0..n {
            for j in i + 1..n {
                if arc(i, j) {
                    rows[i] |= 1 << j;
                } else {
                    rows[j] |= 1 << i;
                }
            }
        }
        Tournament { n, rows }
    }

    /// Bit `k` of `bits` orients the `k`-th upper-triangle pair in row-major
    /// order: set means `i → j`.
    pub fn from_upper_bits(n: usize, bits: u64) -> Self {
        let mut k = 0;
        Self::from_fn(n, |_, _| {
            let b = bits >> k & 1 == 1;
            k += 1;
            b
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adj(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.rows[i].count_ones() as usize
    }

    pub fn in_degree(&self, i: usize) -> usize {
        self.n - 1 - self.out_degree(i)
    }

    pub fn out_neighbors(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn arc_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Number of cyclically oriented triples.
    pub fn cyclic_triangles(&self) -> usize {
        let mut count = 0;
        for a in 0..self.n {
            for b in a + 1..self.n {
                for c in b + 1..self.n {
                    let fwd = self.adj(a, b) && self.adj(b, c) && self.adj(c, a);
                    let bwd = self.adj(b, a) && self.adj(c, b) && self.adj(a, c);
                    count += usize::from(fwd || bwd);
                }
            }
        }
        count
    }

    /// Parses `tournament n=<n>` followed by `n` rows of `0`/`1`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n = parse_header(lines.next(), "tournament")?;
        if n > 64 {
            return Err(Error::cap("tournament order", 64));
        }
        let rows: Vec<&str> = lines.collect();
        if rows.len() != n {
            return Err(Error::Parse(format!("expected {n} rows, got {}", rows.len())));
        }
        let mut bits = vec![0u64; n];
        for (i, row) in rows.iter().enumerate() {
            let chars: Vec<char> = row.chars().filter(|c| !c.is_whitespace()).collect();
            if chars.len() != n {
                return Err(Error::Parse(format!("row {i} has {} entries", chars.len())));
            }
            for (j, c) in chars.iter().enumerate() {
                match c {
                    '1' => bits[i] |= 1 << j,
                    '0' => {}
                    _ => return Err(Error::Parse(format!("bad entry `{c}` in row {i}"))),
                }
            }
        }
        for i in 0..n {
            if bits[i] >> i & 1 == 1 {
                return Err(Error::InvalidHost(format!("loop at vertex {i}")));
            }
            for j in i + 1..n {
                if (bits[i] >> j & 1) == (bits[j] >> i & 1) {
                    return Err(Error::InvalidHost(format!("pair ({i},{j}) not oriented exactly once")));
                }
            }
        }
        Ok(Tournament { n, rows: bits })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("tournament n={}\n", self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                s.push(if self.adj(i, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }
}

fn parse_header(line: Option<&str>, keyword: &str) -> Result<usize> {
    let header = line.ok_or(Error::EmptyInput)?;
    header
        .strip_prefix(keyword)
        .and_then(|rest| rest.trim().strip_prefix("n="))
        .and_then(|n| n.trim().parse::<usize>().ok())
        .ok_or_else(|| Error::Parse(format!("expected header `{keyword} n=<n>`, got `{header}`")))
}

/// Number of upper-triangle pairs, i.e. the exponent of the tournament count.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// All `2^(n(n−1)/2)` labelled tournaments on `n ≤ 7` vertices.
pub fn enumerate_tournaments(n: usize) -> Result<impl Iterator<Item = Tournament> + Clone> {
    if n == 0 || n > ENUMERATE_CAP {
        return Err(Error::cap("enumeration order", ENUMERATE_CAP as u64));
    }
    Ok((0..1u64 << pair_count(n)).map(move |b| Tournament::from_upper_bits(n, b)))
}

/// Each pair oriented by an independent fair coin from ChaCha8 seeded with `seed`.
pub fn random_tournament(n: usize, seed: u64) -> Tournament {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Tournament::from_fn(n, |_, _| rng.random::<bool>())
}

pub fn transitive(n: usize) -> Tournament {
    Tournament::from_fn(n, |_, _| true)
}

/// `0 → 1 → 2 → 0`.
pub fn cyclic_triangle() -> Tournament {
    Tournament::from_fn(3, |i, j| !(i == 0 && j == 2))
}

/// Orientation used inside each blown-up part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inner {
    Transitive,
    Random(u64),
}

/// Replaces vertex `k` of `t` by a part of `part_sizes[k]` vertices.
pub fn blowup(t: &Tournament, part_sizes: &[usize], inner: Inner) -> Result<Tournament> {
    if part_sizes.len() != t.n() {
        return Err(Error::SizeMismatch(format!(
            "{} part sizes for a {}-vertex tournament",
            part_sizes.len(),
            t.n()
        )));
    }
    let part: Vec<usize> = part_sizes
        .iter()
        .enumerate()
        .flat_map(|(k, &s)| std::iter::repeat_n(k, s))
        .collect();
    let total = part.len();
    if total > 64 {
        return Err(Error::cap("blowup order", 64));
    }
    let mut rng = match inner {
        Inner::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        Inner::Transitive => None,
    };
    Ok(Tournament::from_fn(total, |i, j| {
        if part[i] != part[j] {
            t.adj(part[i], part[j])
        } else {
            rng.as_mut().map_or(true, |r| r.random::<bool>())
        }
    }))
}

/// Matrix `A` with `A(i,j) + A(j,i) = 1` off the diagonal and entries in
/// `[0, 1]`; the diagonal is `1/2` with half loops and `0` otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedTournament<S> {
    a: Matrix<S>,
    loops_half: bool,
}

impl<S: Scalar> WeightedTournament<S> {
    /// Validates the tournament identity exactly (rationals) or to `1e-12`.
    pub fn new(mut a: Matrix<S>, loops_half: bool) -> Result<Self> {
        let n = a.n();
        let one = S::one();
        for i in 0..n {
            for j in 0..n {
                let x = &a[(i, j)];
                if i != j && (*x < S::zero() || *x > one) {
                    return Err(Error::InvalidHost(format!("entry ({i},{j}) outside [0,1]")));
                }
                if i < j && !(a[(i, j)].clone() + a[(j, i)].clone()).approx_eq(&one) {
                    return Err(Error::InvalidHost(format!("A({i},{j}) + A({j},{i}) != 1")));
                }
            }
            a[(i, i)] = if loops_half { S::half() } else { S::zero() };
        }
        Ok(WeightedTournament { a, loops_half })
    }

    pub fn from_tournament(t: &Tournament) -> Self {
        let a = Matrix::from_fn(t.n(), |i, j| {
            if i == j {
                S::half()
            } else if t.adj(i, j) {
                S::one()
            } else {
                S::zero()
            }
        });
        WeightedTournament { a, loops_half: true }
    }

    /// The quasirandom host: every entry `1/2`.
    pub fn all_half(n: usize) -> Self {
        WeightedTournament { a: Matrix::filled(n, S::half()), loops_half: true }
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.a
    }

    pub fn loops_half(&self) -> bool {
        self.loops_half
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.a[(i, j)]
    }

    /// `B = A − J/2`.
    pub fn skew_decompose(&self) -> Result<SkewMatrix<S>> {
        if !self.loops_half {
            return Err(Error::MissingHalfLoops);
        }
        let h = S::half();
        Ok(SkewMatrix { b: self.a.map(|x| x.clone() - h.clone()) })
    }

    pub fn to_f64(&self) -> WeightedTournament<f64> {
        WeightedTournament { a: self.a.to_f64(), loops_half: self.loops_half }
    }
}

/// Exact weighted tournament with half loops built from `t`.
pub fn with_half_loops(t: &Tournament) -> WeightedTournament<Rational> {
    WeightedTournament::from_tournament(t)
}

impl WeightedTournament<Rational> {
    /// Parses `wtournament n=<n>` followed by rows of `p/q` or decimal entries.
    /// Diagonal entries of `1/2` everywhere select the half-loop convention.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n = parse_header(lines.next(), "wtournament")?;
        let rows: Vec<Vec<Rational>> = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|tok| parse_rational(tok).ok_or_else(|| Error::Parse(format!("bad entry `{tok}`"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(format!("expected {n} rows of {n} entries")));
        }
        let half = Rational::half();
        let loops_half = n > 0 && (0..n).all(|i| rows[i][i] == half);
        WeightedTournament::new(Matrix::from_rows(rows), loops_half)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("wtournament n={}\n", self.n());
        for row in self.a.rows() {
            let cells: Vec<String> = row.iter().map(rational_string).collect();
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
        s
    }
}

impl<S: Scalar> fmt::Display for WeightedTournament<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.a.rows() {
            let cells: Vec<String> = row.iter().map(|x| format!("{:.6}", x.to_f64())).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Skew-symmetric kernel with entries in `[−1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewMatrix<S> {
    b: Matrix<S>,
}

impl<S: Scalar> SkewMatrix<S> {
    pub fn new(b: Matrix<S>) -> Result<Self> {
        let n = b.n();
        for i in 0..n {
            for j in 0..n {
                let x = &b[(i, j)];
                if x.abs() > S::one() {
                    return Err(Error::InvalidArgument(format!("entry ({i},{j}) outside [-1,1]")));
                }
                if !(x.clone() + b[(j, i)].clone()).approx_eq(&S::zero()) {
                    return Err(Error::InvalidArgument(format!("not skew at ({i},{j})")));
                }
            }
        }
        Ok(SkewMatrix { b })
    }

    /// Builds from upper-triangle entries `x(i,j)`, `i < j`.
    pub fn from_upper(n: usize, mut x: impl FnMut(usize, usize) -> S) -> Self {
        let mut b = Matrix::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                let v = x(i, j);
                b[(j, i)] = -v.clone();
                b[(i, j)] = v;
            }
        }
        SkewMatrix { b }
    }

    pub(crate) fn from_matrix_unchecked(b: Matrix<S>) -> Self {
        SkewMatrix { b }
    }

    pub fn zeros(n: usize) -> Self {
        SkewMatrix { b: Matrix::zeros(n) }
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.b
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.b[(i, j)]
    }

    pub fn scale(&self, c: &S) -> Self {
        SkewMatrix { b: self.b.scale(c) }
    }

    pub fn row_sums(&self) -> Vec<S> {
        self.b.row_sums()
    }

    pub fn is_balanced(&self) -> bool {
        self.row_sums().iter().all(|s| s.approx_eq(&S::zero()))
    }

    /// `J/2 + B` with half loops; entries must stay in `[0, 1]`.
    pub fn to_weighted(&self) -> Result<WeightedTournament<S>> {
        let h = S::half();
        if self.b.max_abs() > h {
            return Err(Error::RangeViolated("skew entries exceed 1/2 in modulus".into()));
        }
        WeightedTournament::new(self.b.map(|x| x.clone() + h.clone()), true)
    }

    pub fn to_f64(&self) -> SkewMatrix<f64> {
        SkewMatrix { b: self.b.to_f64() }
    }

    /// Exact cut norm `max_{X,Y} |Σ_{x∈X,y∈Y} B(x,y)| / n²` for `n ≤ 16`.
    ///
    /// For fixed `X` the best `Y` takes every column with a positive (resp.
    /// negative) column sum, so only the `2^n` row subsets are scanned.
    pub fn cutnorm_bruteforce(&self) -> Result<S> {
        let n = self.n();
        if n > 16 {
            return Err(Error::cap("cut norm order", 16));
        }
        if n == 0 {
            return Ok(S::zero());
        }
        let mut col = vec![S::zero(); n];
        let mut best = S::zero();
        // Gray-code walk keeps column sums incremental.
        let mut mask = 0u32;
        for step in 1..1u32 << n {
            let bit = step.trailing_zeros() as usize;
            mask ^= 1 << bit;
            let adding = mask >> bit & 1 == 1;
            for (j, c) in col.iter_mut().enumerate() {
                let x = self.b[(bit, j)].clone();
                *c = if adding { c.clone() + x } else { c.clone() - x };
            }
            let (mut pos, mut neg) = (S::zero(), S::zero());
            for c in &col {
                if *c > S::zero() {
                    pos = pos + c.clone();
                } else {
                    neg = neg - c.clone();
                }
            }
            for cand in [pos, neg] {
                if cand > best {
                    best = cand;
                }
            }
        }
        Ok(best / S::from_usize(n * n))
    }
}

/// Seeded float skew matrix with upper entries uniform in `[−scale, scale]`.
pub fn random_skew(n: usize, scale: f64, seed: u64) -> SkewMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SkewMatrix::from_upper(n, |_, _| rng.random_range(-scale..=scale))
}

/// Seeded exact skew matrix with entries `k/den`, `|k| ≤ den/2`.
pub fn random_rational_skew(n: usize, den: i64, seed: u64) -> SkewMatrix<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = den / 2;
    SkewMatrix::from_upper(n, |_, _| Rational::from_ratio(rng.random_range(-half..=half), den))
}
