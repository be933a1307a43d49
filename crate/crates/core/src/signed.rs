//! Signed subgraph counts `C(Q, D) = C_even − C_odd`, counted over edge
//! subsets of `D` whose underlying graph is a copy of `Q`.

use std::collections::HashMap;

use num::{BigInt, One};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pattern::{Digraph, Dir, Orientation, OrientedCycle};
use crate::scalar::Rational;

/// Largest host edge count for [`signed_count`].
pub const SUBSET_SCAN_CAP: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedCounts {
    pub c_p3: i64,
    pub c_p5: i64,
    pub c_2p3: i64,
    /// Smallest `k ≥ 3` with `C(P_{2k+1}) ≠ 0`.
    pub min_k: Option<usize>,
    pub c_min_k: Option<i64>,
}

fn window_sign(dirs: &[Dir], start: usize, len: usize) -> i64 {
    let l = dirs.len();
    let back = (start..start + len).filter(|&i| dirs[i % l] == Dir::Backward).count();
    if back % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `C(P_{2k+1}, D)` for the path with directions `dirs`.
pub fn path_window_count(dirs: &[Dir], k: usize) -> i64 {
    let w = 2 * k;
    if w > dirs.len() {
        return 0;
    }
    (0..=dirs.len() - w).map(|i| window_sign(dirs, i, w)).sum()
}

/// `C(P_{2k+1}, C)` for the cycle with directions `dirs`; needs `2k+1 ≤ ℓ`.
pub fn cycle_window_count(dirs: &[Dir], k: usize) -> i64 {
    let w = 2 * k;
    if w + 1 > dirs.len() {
        return 0;
    }
    (0..dirs.len()).map(|i| window_sign(dirs, i, w)).sum()
}

pub fn path_counts(o: &Orientation) -> SignedCounts {
    let dirs = o.dirs();
    let e = dirs.len();
    let p3: Vec<i64> = (0..e.saturating_sub(1)).map(|i| window_sign(dirs, i, 2)).collect();
    let mut c_2p3 = 0;
    for i in 0..p3.len() {
        for j in i + 3..p3.len() {
            c_2p3 += p3[i] * p3[j];
        }
    }
    let (min_k, c_min_k) = first_nonzero(e / 2, |k| path_window_count(dirs, k));
    SignedCounts {
        c_p3: p3.iter().sum(),
        c_p5: path_window_count(dirs, 2),
        c_2p3,
        min_k,
        c_min_k,
    }
}

pub fn cycle_counts(c: &OrientedCycle) -> SignedCounts {
    let dirs = c.orientation().dirs();
    let l = dirs.len();
    let p3: Vec<i64> = (0..l).map(|i| window_sign(dirs, i, 2)).collect();
    let mut c_2p3 = 0;
    for i in 0..l {
        for j in i + 1..l {
            let gap = j - i;
            if gap >= 3 && l - gap >= 3 {
                c_2p3 += p3[i] * p3[j];
            }
        }
    }
    let (min_k, c_min_k) = first_nonzero((l - 1) / 2, |k| cycle_window_count(dirs, k));
    SignedCounts {
        c_p3: cycle_window_count(dirs, 1),
        c_p5: cycle_window_count(dirs, 2),
        c_2p3,
        min_k,
        c_min_k,
    }
}

fn first_nonzero(max_k: usize, f: impl Fn(usize) -> i64) -> (Option<usize>, Option<i64>) {
    (3..=max_k)
        .map(|k| (k, f(k)))
        .find(|&(_, c)| c != 0)
        .map_or((None, None), |(k, c)| (Some(k), Some(c)))
}

/// Generic signed count of pattern `q` in host `d`.
///
/// Enumerates injective maps of `q`'s non-isolated vertices onto edges of
/// `d` (either direction), sums `(−1)^{reversed arcs}`, and divides by the
/// automorphism count of `q`'s underlying graph. Maps landing on the same
/// edge subset are checked to agree in sign.
pub fn signed_count(q: &Digraph, d: &Digraph) -> Result<i64> {
    if d.e() > SUBSET_SCAN_CAP {
        return Err(Error::cap("host edge count", SUBSET_SCAN_CAP as u64));
    }
    for comp in q.components() {
        let arcs = q.arcs().iter().filter(|(a, _)| comp.contains(a)).count();
        if arcs % 2 == 1 {
            return Err(Error::OddComponent);
        }
    }
    let core = drop_isolated(q);
    if core.e() == 0 {
        return Ok(1);
    }
    let host_pairs: HashMap<(usize, usize), usize> = d
        .arcs()
        .iter()
        .enumerate()
        .flat_map(|(k, &(a, b))| [((a, b), k), ((b, a), k)])
        .collect();
    let mut by_subset: HashMap<u64, i64> = HashMap::new();
    let mut total: i64 = 0;
    let mut inconsistent = false;
    for_each_injective_map(&core, d.v(), &host_pairs, &mut |image| {
        let mut mask = 0u64;
        let mut reversed = 0;
        for &(a, b) in core.arcs() {
            let k = host_pairs[&(image[a], image[b])];
            mask |= 1 << k;
            if d.arcs()[k] != (image[a], image[b]) {
                reversed += 1;
            }
        }
        let sign = if reversed % 2 == 0 { 1 } else { -1 };
        if *by_subset.entry(mask).or_insert(sign) != sign {
            inconsistent = true;
        }
        total += sign;
    });
    if inconsistent {
        return Err(Error::InternalAssertionFailed("sign depends on the chosen isomorphism".into()));
    }
    let aut = automorphisms(&core);
    debug_assert_eq!(total % aut, 0);
    Ok(total / aut)
}

fn drop_isolated(q: &Digraph) -> Digraph {
    let adj = q.neighbors();
    let keep: Vec<usize> = (0..q.v()).filter(|&x| !adj[x].is_empty()).collect();
    let mut idx = vec![usize::MAX; q.v()];
    for (k, &x) in keep.iter().enumerate() {
        idx[x] = k;
    }
    Digraph::new(keep.len(), q.arcs().iter().map(|&(a, b)| (idx[a], idx[b])).collect())
        .expect("relabelled subgraph of an oriented graph")
}

/// Calls `f` with every injective vertex map `V(q) → [host_v]` sending each
/// `q`-edge onto a host edge (ignoring direction).
fn for_each_injective_map(
    q: &Digraph,
    host_v: usize,
    host_pairs: &HashMap<(usize, usize), usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    let adj = q.neighbors();
    let mut image = vec![usize::MAX; q.v()];
    let mut used = vec![false; host_v];
    fn rec(
        x: usize,
        adj: &[Vec<usize>],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        host_pairs: &HashMap<(usize, usize), usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if x == image.len() {
            f(image);
            return;
        }
        for t in 0..used.len() {
            if used[t] {
                continue;
            }
            let ok = adj[x]
                .iter()
                .filter(|&&y| y < x)
                .all(|&y| host_pairs.contains_key(&(image[y], t)));
            if ok {
                used[t] = true;
                image[x] = t;
                rec(x + 1, adj, image, used, host_pairs, f);
                used[t] = false;
            }
        }
        image[x] = usize::MAX;
    }
    rec(0, &adj, &mut image, &mut used, host_pairs, f);
}

/// Number of automorphisms of the underlying graph of `q`.
fn automorphisms(q: &Digraph) -> i64 {
    let pairs: HashMap<(usize, usize), usize> = q
        .arcs()
        .iter()
        .enumerate()
        .flat_map(|(k, &(a, b))| [((a, b), k), ((b, a), k)])
        .collect();
    let mut count = 0;
    for_each_injective_map(q, q.v(), &pairs, &mut |_| count += 1);
    count
}

/// Endpoint distribution of an `n`-step simple ±1 walk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalkFractions {
    #[serde(serialize_with = "crate::serde_rational")]
    pub p_zero: Rational,
    #[serde(serialize_with = "crate::serde_rational")]
    pub p_pos: Rational,
    #[serde(serialize_with = "crate::serde_rational")]
    pub p_neg: Rational,
}

pub fn walk_fractions(steps: usize) -> Result<WalkFractions> {
    if steps == 0 {
        return Err(Error::InvalidArgument("walk needs at least one step".into()));
    }
    let p_zero = if steps % 2 == 1 {
        Rational::from_integer(BigInt::from(0))
    } else {
        Rational::new(binomial(steps, steps / 2), BigInt::one() << steps)
    };
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let rest = (Rational::one() - p_zero.clone()) * half;
    Ok(WalkFractions { p_zero, p_pos: rest.clone(), p_neg: rest })
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::alternating_cycle;

    fn o(s: &str) -> Orientation {
        Orientation::parse(s).unwrap()
    }

    fn p(e: usize) -> Digraph {
        Orientation::directed(e).to_digraph()
    }

    #[test]
    fn generic_examples() {
        assert_eq!(signed_count(&p(2), &o("><").to_digraph()).unwrap(), -1);
        assert_eq!(signed_count(&p(2), &p(6)).unwrap(), 5);
        let two = p(2).disjoint_union(&p(2));
        assert_eq!(signed_count(&two, &o(">>>>><><>").to_digraph()).unwrap(), -11);
        assert_eq!(signed_count(&Digraph::single_arc(), &p(3)), Err(Error::OddComponent));
    }

    #[test]
    fn path_fixtures() {
        let d1 = path_counts(&o(">>>>><><>"));
        assert_eq!((d1.c_p3, d1.c_p5, d1.c_2p3), (0, 2, -11));
        let d2 = path_counts(&o(">><>><>"));
        assert_eq!((d2.c_p3, d2.c_p5, d2.c_2p3), (-2, -2, 2));
        assert_eq!(signed_count(&p(2), &o(">><>><>").to_digraph()).unwrap(), -2);
        let dp = path_counts(&Orientation::directed(9));
        assert_eq!((dp.c_p3, dp.c_p5, dp.c_2p3), (8, 6, 15));
        assert_eq!((dp.min_k, dp.c_min_k), (Some(3), Some(4)));
    }

    #[test]
    fn cycle_fixtures() {
        assert_eq!(cycle_counts(&OrientedCycle::directed(5).unwrap()).c_p3, 5);
        assert_eq!(cycle_counts(&alternating_cycle(4).unwrap()).c_p3, -4);
        let c6 = OrientedCycle::directed(6).unwrap();
        assert_eq!(cycle_counts(&c6).c_2p3, 3);
        let two = p(2).disjoint_union(&p(2));
        assert_eq!(signed_count(&two, &c6.to_digraph()).unwrap(), 3);
    }

    #[test]
    fn windows_match_generic_on_paths() {
        let patterns = [p(2), p(4), p(2).disjoint_union(&p(2)), p(6), p(8)];
        for e in 1..=8 {
            for or in Orientation::all(e) {
                let c = path_counts(&or);
                let d = or.to_digraph();
                let g: Vec<i64> = patterns.iter().map(|q| signed_count(q, &d).unwrap()).collect();
                assert_eq!(g[0], c.c_p3, "{or}");
                assert_eq!(g[1], c.c_p5, "{or}");
                assert_eq!(g[2], c.c_2p3, "{or}");
                assert_eq!(g[3], path_window_count(or.dirs(), 3), "{or}");
                assert_eq!(g[4], path_window_count(or.dirs(), 4), "{or}");
            }
        }
    }

    #[test]
    fn windows_match_generic_on_cycles() {
        let patterns = [p(2), p(4), p(2).disjoint_union(&p(2)), p(6)];
        for l in 3..=8 {
            for or in Orientation::all(l) {
                let cyc = OrientedCycle::new(or.clone()).unwrap();
                let c = cycle_counts(&cyc);
                let d = cyc.to_digraph();
                let g: Vec<i64> = patterns.iter().map(|q| signed_count(q, &d).unwrap()).collect();
                assert_eq!((g[0], g[1], g[2]), (c.c_p3, c.c_p5, c.c_2p3), "{or}");
                assert_eq!(g[3], cycle_window_count(or.dirs(), 3), "{or}");
            }
        }
    }

    #[test]
    fn walk_fraction_examples() {
        let three = walk_fractions(3).unwrap();
        assert_eq!(three.p_zero, Rational::from_integer(0.into()));
        assert_eq!(three.p_pos, Rational::new(1.into(), 2.into()));
        assert_eq!(walk_fractions(4).unwrap().p_zero, Rational::new(3.into(), 8.into()));
        // 5-edge paths: 4 adjacent windows; C(P3)=0 for 2·6 of the 32 orientations
        let zero = Orientation::all(5).filter(|x| path_counts(x).c_p3 == 0).count();
        assert_eq!(zero, 12);
    }
}
