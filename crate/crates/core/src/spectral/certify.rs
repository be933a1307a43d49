//! Sign certificates for path expansions.
//!
//! Work with `D = p − n^v/2^e` written in the non-negative moments `X_{2t}`.
//! Two rewrite rules bound a monomial by another of the same degree:
//!
//! * `X_{2s} ≤ X_{2t} (n/2)^{2(s−t)}` for `s > t ≥ 0` (with `X_0 = n`),
//! * `X_{2s}² ≤ X_{2(s−t)} X_{2(s+t)}` for `1 ≤ t ≤ s`.
//!
//! With the weight `w(n) = 1`, `w(X_{2s}) = 4^{−s}`, any chain of rewrites
//! from `M` to `N` gives `M ≤ (w(M)/w(N)) N`. Proving `D ≤ 0` then amounts to
//! routing every positive term's weighted mass `c_M w(M)` into negative
//! terms with capacity `|c_N| w(N)` along reachable pairs, which is an exact
//! max-flow problem over the rationals.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num::{One, Signed, Zero};
use serde::Serialize;

use super::poly::{Monomial, SPolynomial};
use crate::scalar::{rational_string, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SignOutcome {
    /// `p ≤ n^v / 2^e` for every admissible `B`.
    CertifiedTAS,
    /// `p ≥ n^v / 2^e` for every admissible `B`.
    CertifiedTS,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certification {
    pub outcome: SignOutcome,
    pub trace: Vec<String>,
}

fn x_name(m: &Monomial) -> String {
    let mut s = String::new();
    if m.n_pow > 0 {
        s.push_str(&format!("n^{}", m.n_pow));
    }
    for k in &m.vars {
        if !s.is_empty() {
            s.push('*');
        }
        s.push_str(&format!("X{k}"));
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

fn weight(m: &Monomial) -> Rational {
    let exp: u32 = m.vars.iter().map(|k| k / 2).sum();
    Rational::new(1.into(), num::pow(num::BigInt::from(4), exp as usize))
}

fn with_index(m: &Monomial, remove: &[u32], add: &[u32], extra_n: u32) -> Monomial {
    let mut vars = m.vars.clone();
    for r in remove {
        let pos = vars.iter().position(|x| x == r).expect("index present");
        vars.remove(pos);
    }
    let mut n_pow = m.n_pow + extra_n;
    for &a in add {
        if a == 0 {
            n_pow += 1;
        } else {
            vars.push(a);
        }
    }
    Monomial::new(n_pow, vars)
}

fn successors(m: &Monomial) -> Vec<(Monomial, String)> {
    let mut out = Vec::new();
    let mut distinct = m.vars.clone();
    distinct.dedup();
    for &k in &distinct {
        let s = k / 2;
        for t in 0..s {
            let next = with_index(m, &[k], &[2 * t], 2 * (s - t));
            out.push((next, format!("X{k} <= X{}*(n/2)^{}", 2 * t, 2 * (s - t))));
        }
        if m.vars.iter().filter(|&&x| x == k).count() >= 2 {
            for t in 1..=s {
                let next = with_index(m, &[k, k], &[2 * (s - t), 2 * (s + t)], 0);
                out.push((next, format!("X{k}^2 <= X{}*X{}", 2 * (s - t), 2 * (s + t))));
            }
        }
    }
    out
}

/// All monomials reachable from `start`, with the rule chain used.
fn reachable(start: &Monomial) -> HashMap<Monomial, Vec<String>> {
    let mut seen: HashMap<Monomial, Vec<String>> = HashMap::new();
    seen.insert(start.clone(), Vec::new());
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(m) = queue.pop_front() {
        let path = seen[&m].clone();
        for (next, rule) in successors(&m) {
            if !seen.contains_key(&next) {
                let mut p = path.clone();
                p.push(rule);
                seen.insert(next.clone(), p);
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Tries to route all of `sources`' weighted mass into `sinks`.
fn route(
    sources: &[(Monomial, Rational)],
    sinks: &[(Monomial, Rational)],
    label: &str,
) -> (bool, Vec<String>) {
    let supply: Vec<Rational> = sources.iter().map(|(m, c)| c.abs() * weight(m)).collect();
    let capacity: Vec<Rational> = sinks.iter().map(|(m, c)| c.abs() * weight(m)).collect();
    let paths: Vec<HashMap<Monomial, Vec<String>>> = sources.iter().map(|(m, _)| reachable(m)).collect();
    let (ns, nt) = (sources.len(), sinks.len());
    // nodes: 0 = source, 1..=ns supplies, ns+1..=ns+nt sinks, ns+nt+1 = target
    let size = ns + nt + 2;
    let target = size - 1;
    let total: Rational = supply.iter().cloned().sum();
    let mut cap = vec![vec![Rational::zero(); size]; size];
    for i in 0..ns {
        cap[0][1 + i] = supply[i].clone();
        for j in 0..nt {
            if paths[i].contains_key(&sinks[j].0) {
                cap[1 + i][1 + ns + j] = total.clone() + Rational::one();
            }
        }
    }
    for j in 0..nt {
        cap[1 + ns + j][target] = capacity[j].clone();
    }
    let original = cap.clone();
    let mut flow = Rational::zero();
    loop {
        let mut parent = vec![usize::MAX; size];
        parent[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for y in 0..size {
                if parent[y] == usize::MAX && cap[x][y].is_positive() {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if parent[target] == usize::MAX {
            break;
        }
        let mut bottleneck = None::<Rational>;
        let mut y = target;
        while y != 0 {
            let x = parent[y];
            bottleneck = Some(match bottleneck {
                Some(b) if b < cap[x][y] => b,
                _ => cap[x][y].clone(),
            });
            y = x;
        }
        let b = bottleneck.expect("path has an edge");
        let mut y = target;
        while y != 0 {
            let x = parent[y];
            cap[x][y] -= b.clone();
            cap[y][x] += b.clone();
            y = x;
        }
        flow += b;
    }
    let mut trace = Vec::new();
    let ok = flow == total;
    for i in 0..ns {
        for j in 0..nt {
            let used = original[1 + i][1 + ns + j].clone() - cap[1 + i][1 + ns + j].clone();
            if used.is_positive() {
                let (m, _) = &sources[i];
                let (nm, _) = &sinks[j];
                let part = used.clone() / weight(m);
                let bound = used / weight(nm);
                let chain = &paths[i][nm];
                trace.push(format!(
                    "{label}: {}*{} <= {}*{} via [{}] against ({})*{}",
                    rational_string(&part),
                    x_name(m),
                    rational_string(&bound),
                    x_name(nm),
                    chain.join(", "),
                    rational_string(&sinks[j].1),
                    x_name(nm),
                ));
            }
        }
    }
    if !ok {
        trace.push(format!(
            "{label}: weighted mass {} exceeds routable capacity {}",
            rational_string(&total),
            rational_string(&flow)
        ));
    }
    (ok, trace)
}

/// Attempts to prove `p ≤ n^v/2^e` (TAS) or `p ≥ n^v/2^e` (TS) from the
/// moment inequalities alone. A vanishing difference certifies TAS.
pub fn certify_sign(p: &SPolynomial) -> Certification {
    let diff: BTreeMap<Monomial, Rational> =
        p.x_terms().into_iter().filter(|(m, _)| !m.is_pure_n()).collect();
    let pos: Vec<(Monomial, Rational)> =
        diff.iter().filter(|(_, c)| c.is_positive()).map(|(m, c)| (m.clone(), c.clone())).collect();
    let neg: Vec<(Monomial, Rational)> =
        diff.iter().filter(|(_, c)| c.is_negative()).map(|(m, c)| (m.clone(), c.clone())).collect();
    let mut trace = Vec::new();
    if pos.is_empty() {
        trace.push("TAS: no positive moment terms".into());
        return Certification { outcome: SignOutcome::CertifiedTAS, trace };
    }
    let (ok, t) = route(&pos, &neg, "TAS");
    trace.extend(t);
    if ok {
        return Certification { outcome: SignOutcome::CertifiedTAS, trace };
    }
    if neg.is_empty() {
        trace.push("TS: no negative moment terms".into());
        return Certification { outcome: SignOutcome::CertifiedTS, trace };
    }
    let (ok, t) = route(&neg, &pos, "TS");
    trace.extend(t);
    let outcome = if ok { SignOutcome::CertifiedTS } else { SignOutcome::Unknown };
    Certification { outcome, trace }
}
