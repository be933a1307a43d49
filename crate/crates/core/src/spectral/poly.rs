use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::hom::power_sandwich;
use crate::pattern::{Dir, Orientation};
use crate::scalar::{parse_rational, rational_string, Rational, Scalar};
use crate::tournament::SkewMatrix;

/// Largest edge count accepted by [`expand_path`].
pub const EXPAND_CAP: usize = 24;

/// `n^{n_pow} · Π_j S_{vars[j]}` with every `vars[j]` even and positive,
/// stored ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub n_pow: u32,
    pub vars: Vec<u32>,
}

impl Monomial {
    pub fn new(n_pow: u32, mut vars: Vec<u32>) -> Self {
        vars.sort_unstable();
        Monomial { n_pow, vars }
    }

    /// `n_pow + Σ (index + 1)`: the vertex count of the path the term came from.
    pub fn degree(&self) -> u32 {
        self.n_pow + self.vars.iter().map(|k| k + 1).sum::<u32>()
    }

    pub fn is_pure_n(&self) -> bool {
        self.vars.is_empty()
    }

    /// `(−1)^{Σ t}` relating `Π S_{2t}` to `Π X_{2t}`.
    pub fn x_sign(&self) -> i32 {
        if self.vars.iter().map(|k| k / 2).sum::<u32>() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, var: char) -> fmt::Result {
        write!(f, "n^{}", self.n_pow)?;
        let mut i = 0;
        while i < self.vars.len() {
            let k = self.vars[i];
            let mult = self.vars[i..].iter().take_while(|&&x| x == k).count();
            write!(f, "*{var}{k}^{mult}")?;
            i += mult;
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.n_pow.cmp(&self.n_pow).then_with(|| self.vars.cmp(&other.vars))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `n` and the signed moments `S_{2t} = 1ᵀB^{2t}1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SPolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl SPolynomial {
    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        let entry = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Builds from terms written in the absolute moments `X_{2t}`, each
    /// given as `(coefficient, n power, X indices)`.
    pub fn from_x_terms(terms: &[(Rational, u32, &[u32])]) -> Self {
        let mut p = SPolynomial::default();
        for (c, n_pow, vars) in terms {
            let m = Monomial::new(*n_pow, vars.to_vec());
            let sign = Rational::from_integer(m.x_sign().into());
            p.add_term(m, c.clone() * sign);
        }
        p
    }

    /// Coefficients after rewriting every `S_{2t}` as `(−1)^t X_{2t}`.
    pub fn x_terms(&self) -> BTreeMap<Monomial, Rational> {
        self.terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone() * Rational::from_integer(m.x_sign().into())))
            .collect()
    }

    /// Display form in the absolute moments.
    pub fn to_x_string(&self) -> String {
        render(&self.x_terms(), 'X')
    }

    /// Parses the text form produced by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = SPolynomial::default();
        let mut depth = 0;
        let mut start = 0;
        let bytes: Vec<char> = text.chars().collect();
        let mut pieces = Vec::new();
        for (i, &ch) in bytes.iter().enumerate() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' if depth == 0 => {
                    pieces.push(bytes[start..i].iter().collect::<String>());
                    start = i + 1;
                }
                _ => {}
            }
        }
        pieces.push(bytes[start..].iter().collect());
        for piece in pieces {
            let piece = piece.trim();
            if piece.is_empty() || piece == "0" {
                continue;
            }
            let (m, c) = parse_term(piece)?;
            p.add_term(m, c);
        }
        Ok(p)
    }
}

fn parse_term(text: &str) -> Result<(Monomial, Rational)> {
    let bad = || Error::Parse(format!("bad polynomial term `{text}`"));
    let mut factors = text.split('*').map(str::trim);
    let first = factors.next().ok_or_else(bad)?;
    let coeff = first
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .and_then(parse_rational)
        .ok_or_else(bad)?;
    let mut n_pow = 0;
    let mut vars = Vec::new();
    for f in factors {
        let (base, exp) = match f.split_once('^') {
            Some((b, e)) => (b, e.parse::<u32>().map_err(|_| bad())?),
            None => (f, 1),
        };
        if base == "n" {
            n_pow += exp;
        } else if let Some(k) = base.strip_prefix('S') {
            let k: u32 = k.parse().map_err(|_| bad())?;
            if k == 0 || k % 2 == 1 {
                return Err(bad());
            }
            vars.extend(std::iter::repeat_n(k, exp as usize));
        } else {
            return Err(bad());
        }
    }
    Ok((Monomial::new(n_pow, vars), coeff))
}

fn render(terms: &BTreeMap<Monomial, Rational>, var: char) -> String {
    struct Term<'a>(&'a Monomial, &'a Rational, char);
    impl fmt::Display for Term<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "({})*", rational_string(self.1))?;
            self.0.write(f, self.2)
        }
    }
    if terms.is_empty() {
        return "0".into();
    }
    terms.iter().map(|(m, c)| Term(m, c, var).to_string()).collect::<Vec<_>>().join(" + ")
}

impl fmt::Display for SPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.terms, 'S'))
    }
}

/// Expands `1ᵀ Π_i (J/2 + σ_i B) 1` (`σ_i = +1` forward, `−1` backward).
///
/// Runs left to right keeping, per partial product, the length of the open
/// run of `B` factors; a `J` closes the run into a factor `1ᵀB^a1` (which is
/// `n` for `a = 0`, zero for odd `a`, and `S_a` otherwise).
pub fn expand_path(o: &Orientation) -> Result<SPolynomial> {
    if o.edges() > EXPAND_CAP {
        return Err(Error::cap("expansion edge count", EXPAND_CAP as u64));
    }
    let half = Rational::new(1.into(), 2.into());
    let close = |run: u32, m: &Monomial| -> Option<Monomial> {
        let mut m = m.clone();
        match run {
            0 => m.n_pow += 1,
            r if r % 2 == 1 => return None,
            r => {
                m.vars.push(r);
                m.vars.sort_unstable();
            }
        }
        Some(m)
    };
    let mut states: HashMap<(u32, Monomial), Rational> = HashMap::new();
    states.insert((0, Monomial::new(0, vec![])), Rational::one());
    for d in o.dirs() {
        let sigma = if *d == Dir::Forward { Rational::one() } else { -Rational::one() };
        let mut next: HashMap<(u32, Monomial), Rational> = HashMap::new();
        for ((run, m), c) in states {
            *next.entry((run + 1, m.clone())).or_insert_with(Rational::zero) += c.clone() * sigma.clone();
            if let Some(closed) = close(run, &m) {
                *next.entry((0, closed)).or_insert_with(Rational::zero) += c * half.clone();
            }
        }
        next.retain(|_, c| !c.is_zero());
        states = next;
    }
    let mut p = SPolynomial::default();
    for ((run, m), c) in states {
        if let Some(closed) = close(run, &m) {
            p.add_term(closed, c);
        }
    }
    Ok(p)
}

/// Substitutes `n` and `S_{2t} = 1ᵀB^{2t}1`.
pub fn eval_spoly<S: Scalar>(p: &SPolynomial, b: &SkewMatrix<S>) -> S {
    let mut moments: HashMap<u32, S> = HashMap::new();
    let n = S::from_usize(b.n());
    let mut total = S::zero();
    for (m, c) in p.terms() {
        let mut term = S::from_rational(c) * num::pow(n.clone(), m.n_pow as usize);
        for &k in &m.vars {
            let s = moments.entry(k).or_insert_with(|| power_sandwich(b.matrix(), k as usize));
            term = term * s.clone();
        }
        total = total + term;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::hom_path;
    use crate::tournament::{random_rational_skew, transitive, with_half_loops};

    fn q(p: i64, d: i64) -> Rational {
        Rational::from_ratio(p, d)
    }

    fn o(s: &str) -> Orientation {
        Orientation::parse(s).unwrap()
    }

    #[test]
    fn small_expansions() {
        let p = expand_path(&o("><")).unwrap();
        let want = SPolynomial::from_x_terms(&[(q(1, 4), 3, &[]), (q(1, 1), 0, &[2])]);
        assert_eq!(p, want);
        assert_eq!(p.coefficient(&Monomial::new(0, vec![2])), q(-1, 1));
        let p = expand_path(&o("><<<")).unwrap();
        let want = SPolynomial::from_x_terms(&[(q(1, 16), 5, &[]), (q(-1, 4), 2, &[2]), (q(-1, 1), 0, &[4])]);
        assert_eq!(p, want);
        let p = expand_path(&o(">")).unwrap();
        assert_eq!(p.to_string(), "(1/2)*n^2");
    }

    #[test]
    fn degree_identity() {
        for e in 1..=9 {
            for or in Orientation::all(e) {
                let p = expand_path(&or).unwrap();
                assert!(p.terms().keys().all(|m| m.degree() == (e + 1) as u32));
                assert!(p.terms().keys().flat_map(|m| &m.vars).all(|k| k % 2 == 0));
            }
        }
    }

    #[test]
    fn evaluation_matches_direct_count() {
        let w = with_half_loops(&transitive(2));
        let b = w.skew_decompose().unwrap();
        assert_eq!(eval_spoly(&expand_path(&o("><")).unwrap(), &b), hom_path(&o("><"), &w).raw);
        let zero = SkewMatrix::<Rational>::zeros(3);
        let p = expand_path(&o("><>>")).unwrap();
        assert_eq!(eval_spoly(&p, &zero), q(243, 16));
        for seed in 0..10 {
            let b = random_rational_skew(5, 8, seed);
            let w = b.to_weighted().unwrap();
            assert_eq!(eval_spoly(&expand_path(&o(">>><")).unwrap(), &b), hom_path(&o(">>><"), &w).raw);
        }
    }

    #[test]
    fn text_round_trip() {
        for s in ["><<<<<<<", ">><>", "><"] {
            let p = expand_path(&o(s)).unwrap();
            assert_eq!(SPolynomial::parse(&p.to_string()).unwrap(), p);
        }
        let p = SPolynomial::parse("(3/4)*n^2*S2^1*S4^0").unwrap();
        assert_eq!(p.coefficient(&Monomial::new(2, vec![2])), q(3, 4));
        assert!(SPolynomial::parse("(1)*S3").is_err());
        assert_eq!(expand_path(&o(">>>>")).unwrap().to_x_string(), "(1/16)*n^5 + (-3/4)*n^2*X2^1 + (1)*n^0*X4^1");
    }

    #[test]
    fn cap() {
        assert!(expand_path(&Orientation::directed(25)).is_err());
    }
}
