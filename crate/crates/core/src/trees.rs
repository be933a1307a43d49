//! Tree orientations: the caterpillar rule, isomorphic-pair pruning, and
//! brute-force checks of the strongly-TAS and AM-GM inequalities.

use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pattern::{Digraph, Tree};
use crate::tournament::{enumerate_tournaments, Tournament};

/// Largest host order for the exhaustive checks in this module.
pub const TREE_CHECK_CAP: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    CaterpillarRule,
    IsoPairRecursion,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeOrientation {
    pub tree: Tree,
    /// One arc per tree edge, in edge order; empty when `Unknown`.
    pub arcs: Vec<(usize, usize)>,
    pub provenance: Provenance,
}

impl TreeOrientation {
    fn unknown(tree: &Tree) -> Self {
        TreeOrientation { tree: tree.clone(), arcs: Vec::new(), provenance: Provenance::Unknown }
    }

    pub fn to_digraph(&self) -> Option<Digraph> {
        if self.provenance == Provenance::Unknown {
            return None;
        }
        Some(Digraph::new(self.tree.v(), self.arcs.clone()).expect("orientation of a tree"))
    }

    /// Digraph text followed by a provenance line.
    pub fn to_text(&self) -> String {
        let mut s = match self.to_digraph() {
            Some(d) => d.to_text(),
            None => String::new(),
        };
        s.push_str(&format!("# provenance {:?}\n", self.provenance));
        s
    }

    fn from_arc_list(tree: &Tree, arcs: &[(usize, usize)], provenance: Provenance) -> Self {
        let ordered = tree
            .edges()
            .iter()
            .map(|&(a, b)| {
                if arcs.contains(&(a, b)) {
                    (a, b)
                } else {
                    debug_assert!(arcs.contains(&(b, a)));
                    (b, a)
                }
            })
            .collect();
        TreeOrientation { tree: tree.clone(), arcs: ordered, provenance }
    }
}

fn bfs_dist(adj: &[Vec<usize>], s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(x) = q.pop_front() {
        for &y in &adj[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                q.push_back(y);
            }
        }
    }
    dist
}

/// Non-leaf vertices in path order when the tree is a caterpillar.
pub fn caterpillar_spine(t: &Tree) -> Option<Vec<usize>> {
    let adj = t.neighbors();
    if t.v() <= 2 {
        return Some((0..t.v()).collect());
    }
    let inner: Vec<usize> = (0..t.v()).filter(|&x| adj[x].len() > 1).collect();
    let inner_deg = |x: usize| adj[x].iter().filter(|&&y| adj[y].len() > 1).count();
    if inner.iter().any(|&x| inner_deg(x) > 2) {
        return None;
    }
    // The inner vertices induce a subtree, so max degree 2 makes it a path.
    let start = *inner.iter().find(|&&x| inner_deg(x) <= 1)?;
    let mut spine = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = adj[cur].iter().copied().find(|&y| y != prev && adj[y].len() > 1);
        match next {
            Some(y) => {
                spine.push(y);
                prev = cur;
                cur = y;
            }
            None => break,
        }
    }
    Some(spine)
}

pub fn is_caterpillar(t: &Tree) -> bool {
    caterpillar_spine(t).is_some()
}

/// Lexicographically smallest vertex sequence among all longest paths.
pub fn canonical_longest_path(t: &Tree) -> Vec<usize> {
    let adj = t.neighbors();
    let n = t.v();
    let dists: Vec<Vec<usize>> = (0..n).map(|s| bfs_dist(&adj, s)).collect();
    let diam = dists.iter().flatten().copied().max().unwrap_or(0);
    let mut best: Option<Vec<usize>> = None;
    for a in 0..n {
        for b in 0..n {
            if dists[a][b] != diam {
                continue;
            }
            let mut path = vec![a];
            let mut cur = a;
            while cur != b {
                cur = *adj[cur].iter().find(|&&y| dists[y][b] + 1 == dists[cur][b]).expect("tree path");
                path.push(cur);
            }
            if best.as_ref().is_none_or(|p| path < *p) {
                best = Some(path);
            }
        }
    }
    best.unwrap_or_else(|| vec![0])
}

/// Orients a caterpillar along its canonical longest path.
pub fn orient_caterpillar(t: &Tree) -> Result<TreeOrientation> {
    orient_caterpillar_along(t, &canonical_longest_path(t))
}

/// Orients a caterpillar along a given longest path `X_0 … X_{k+1}`; the
/// leaves at each spine vertex are taken in increasing index order.
///
/// The first arc is `X_0 → X_1`. At `X_i`, entered by a forward arc, leaf
/// `j` is an out-leaf for odd `j` and an in-leaf for even `j`, and the
/// next spine arc is forward iff `d(X_i)` is even. All of this flips when
/// `X_i` is entered by a backward arc.
pub fn orient_caterpillar_along(t: &Tree, path: &[usize]) -> Result<TreeOrientation> {
    if !is_caterpillar(t) {
        return Err(Error::NotCaterpillar);
    }
    let adj = t.neighbors();
    let ends_are_leaves = path.len() < 2 || (adj[path[0]].len() == 1 && adj[path[path.len() - 1]].len() == 1);
    if path.is_empty() || !ends_are_leaves || path.windows(2).any(|w| !adj[w[0]].contains(&w[1])) {
        return Err(Error::InvalidArgument("layout is not a path of the tree".into()));
    }
    let on_path: Vec<bool> = (0..t.v()).map(|x| path.contains(&x)).collect();
    let covered = path.len() + path.iter().map(|&x| adj[x].iter().filter(|&&y| !on_path[y]).count()).sum::<usize>();
    if covered != t.v() {
        return Err(Error::InvalidArgument("layout path does not dominate the tree".into()));
    }
    let mut arcs = Vec::with_capacity(t.v().saturating_sub(1));
    if path.len() >= 2 {
        arcs.push((path[0], path[1]));
    }
    let mut forward = true;
    for i in 1..path.len().saturating_sub(1) {
        let x = path[i];
        let leaves: Vec<usize> = adj[x].iter().copied().filter(|&y| !on_path[y]).collect();
        for (j, &y) in leaves.iter().enumerate() {
            let out = ((j + 1) % 2 == 1) == forward;
            arcs.push(if out { (x, y) } else { (y, x) });
        }
        let next_forward = (adj[x].len() % 2 == 0) == forward;
        arcs.push(if next_forward { (x, path[i + 1]) } else { (path[i + 1], x) });
        forward = next_forward;
    }
    Ok(TreeOrientation::from_arc_list(t, &arcs, Provenance::CaterpillarRule))
}

/// Two isomorphic branches `h1`, `h2` hanging off `v` at `w` and `phi(w)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoPair {
    pub v: usize,
    pub w: usize,
    pub h1: Vec<usize>,
    pub h2: Vec<usize>,
    /// `phi[k]` is the image of `h1[k]`.
    pub phi: Vec<usize>,
}

impl IsoPair {
    pub fn phi_of(&self, x: usize) -> Option<usize> {
        self.h1.iter().position(|&y| y == x).map(|k| self.phi[k])
    }
}

/// Canonical string of the subtree at `root` away from `parent`.
fn encode(adj: &[Vec<usize>], root: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[root].iter().filter(|&&y| y != parent).map(|&y| encode(adj, y, root)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn match_subtrees(adj: &[Vec<usize>], a: usize, pa: usize, b: usize, pb: usize, out: &mut BTreeMap<usize, usize>) {
    out.insert(a, b);
    let mut ka: Vec<(String, usize)> =
        adj[a].iter().filter(|&&y| y != pa).map(|&y| (encode(adj, y, a), y)).collect();
    let mut kb: Vec<(String, usize)> =
        adj[b].iter().filter(|&&y| y != pb).map(|&y| (encode(adj, y, b), y)).collect();
    ka.sort();
    kb.sort();
    for ((_, x), (_, y)) in ka.into_iter().zip(kb) {
        match_subtrees(adj, x, a, y, b, out);
    }
}

/// First pair of isomorphic whole branches at a common vertex, scanning
/// `v` and then neighbour pairs in increasing order.
pub fn find_isomorphic_pair(t: &Tree) -> Option<IsoPair> {
    let adj = t.neighbors();
    for v in 0..t.v() {
        let codes: Vec<String> = adj[v].iter().map(|&w| encode(&adj, w, v)).collect();
        for i in 0..adj[v].len() {
            for j in i + 1..adj[v].len() {
                if codes[i] != codes[j] {
                    continue;
                }
                let (w, w2) = (adj[v][i], adj[v][j]);
                let mut map = BTreeMap::new();
                match_subtrees(&adj, w, v, w2, v, &mut map);
                let h1: Vec<usize> = map.keys().copied().collect();
                let phi: Vec<usize> = map.values().copied().collect();
                let mut h2 = phi.clone();
                h2.sort_unstable();
                let pair = IsoPair { v, w, h1, h2, phi };
                debug_assert!(verify_iso_pair(t, &pair));
                return Some(pair);
            }
        }
    }
    None
}

/// Checks the cut condition and that `phi` is an isomorphism.
pub fn verify_iso_pair(t: &Tree, p: &IsoPair) -> bool {
    let n = t.v();
    let mut side = vec![0u8; n];
    for &x in &p.h1 {
        if x >= n || side[x] != 0 {
            return false;
        }
        side[x] = 1;
    }
    for &x in &p.h2 {
        if x >= n || side[x] != 0 {
            return false;
        }
        side[x] = 2;
    }
    if p.h1.len() != p.h2.len() || p.phi.len() != p.h1.len() || p.v >= n || side[p.v] != 0 {
        return false;
    }
    let mut image: Vec<usize> = p.phi.clone();
    image.sort_unstable();
    if image != p.h2 {
        return false;
    }
    let Some(w2) = p.phi_of(p.w) else {
        return false;
    };
    let mut cut = Vec::new();
    for &(a, b) in t.edges() {
        match (side[a], side[b]) {
            (1, 2) | (2, 1) => return false,
            (0, 0) => {}
            (0, _) | (_, 0) => cut.push(if side[a] == 0 { (a, b) } else { (b, a) }),
            (1, 1) => {
                let (fa, fb) = (p.phi_of(a).unwrap(), p.phi_of(b).unwrap());
                if !t.edges().contains(&(fa, fb)) && !t.edges().contains(&(fb, fa)) {
                    return false;
                }
            }
            _ => {}
        }
    }
    let internal = |s: u8| t.edges().iter().filter(|&&(a, b)| side[a] == s && side[b] == s).count();
    cut.sort_unstable();
    let mut want = vec![(p.v, p.w), (p.v, w2)];
    want.sort_unstable();
    cut == want && internal(1) == internal(2)
}

/// Induced subtree on `keep`, relabelled `0..keep.len()` in order.
fn induced(t: &Tree, keep: &[usize]) -> Tree {
    let idx = |x: usize| keep.iter().position(|&y| y == x);
    let edges = t
        .edges()
        .iter()
        .filter_map(|&(a, b)| Some((idx(a)?, idx(b)?)))
        .collect();
    Tree::new(keep.len(), edges).expect("connected induced subtree")
}

/// Caterpillar rule if it applies, else prune an isomorphic pair and recurse.
pub fn orient_tree_tas(t: &Tree) -> TreeOrientation {
    if is_caterpillar(t) {
        return orient_caterpillar(t).expect("caterpillar");
    }
    let Some(p) = find_isomorphic_pair(t) else {
        return TreeOrientation::unknown(t);
    };
    let rest: Vec<usize> = (0..t.v()).filter(|x| !p.h1.contains(x) && !p.h2.contains(x)).collect();
    let r = orient_tree_tas(&induced(t, &rest));
    let h = orient_tree_tas(&induced(t, &p.h1));
    if r.provenance == Provenance::Unknown || h.provenance == Provenance::Unknown {
        return TreeOrientation::unknown(t);
    }
    let mut arcs: Vec<(usize, usize)> = r.arcs.iter().map(|&(a, b)| (rest[a], rest[b])).collect();
    for &(a, b) in &h.arcs {
        let (x, y) = (p.h1[a], p.h1[b]);
        arcs.push((x, y));
        arcs.push((p.phi_of(x).unwrap(), p.phi_of(y).unwrap()));
    }
    let w2 = p.phi_of(p.w).unwrap();
    arcs.push((p.w, p.v));
    arcs.push((p.v, w2));
    TreeOrientation::from_arc_list(t, &arcs, Provenance::IsoPairRecursion)
}

/// Labelled copies of `d` in `t` (injective, arc-preserving) that extend
/// the partial assignment `fixed`.
pub fn count_labeled(d: &Digraph, t: &Tournament, fixed: &[(usize, usize)]) -> u64 {
    let v = d.v();
    let mut image = vec![usize::MAX; v];
    let mut used = 0u64;
    for &(x, y) in fixed {
        if y >= t.n() || used >> y & 1 == 1 {
            return 0;
        }
        image[x] = y;
        used |= 1 << y;
    }
    let ok_fixed = d.arcs().iter().all(|&(a, b)| {
        image[a] == usize::MAX || image[b] == usize::MAX || t.adj(image[a], image[b])
    });
    if !ok_fixed {
        return 0;
    }
    let free: Vec<usize> = (0..v).filter(|&x| image[x] == usize::MAX).collect();
    fn go(k: usize, free: &[usize], d: &Digraph, t: &Tournament, image: &mut [usize], used: u64) -> u64 {
        if k == free.len() {
            return 1;
        }
        let x = free[k];
        let mut total = 0;
        for y in 0..t.n() {
            if used >> y & 1 == 1 {
                continue;
            }
            image[x] = y;
            let ok = d.arcs().iter().all(|&(a, b)| {
                if a != x && b != x {
                    return true;
                }
                let (ia, ib) = (image[a], image[b]);
                ia == usize::MAX || ib == usize::MAX || t.adj(ia, ib)
            });
            if ok {
                total += go(k + 1, free, d, t, image, used | 1 << y);
            }
            image[x] = usize::MAX;
        }
        total
    }
    go(0, &free, d, t, &mut image, used)
}

/// Injective maps `i_set → 0..n`.
fn embeddings(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for y in 0..n {
            if !cur.contains(&y) {
                cur.push(y);
                go(k, n, cur, out);
                cur.pop();
            }
        }
    }
    go(k, n, &mut cur, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongTasWitness {
    pub n: usize,
    pub tournament: String,
    pub embedding: Vec<usize>,
    pub count: u64,
    /// `2^e · count` compared against `n^{v−|I|}`.
    pub scaled_count: u128,
    pub scaled_bound: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongTasReport {
    pub pass: bool,
    pub n_max: usize,
    pub hosts_checked: u64,
    pub violation: Option<StrongTasWitness>,
}

/// Checks `#copies extending I ↪ T ≤ 2^{−e} n^{v−|I|}` for every tournament
/// on at most `n_max` vertices and every embedding of `i_set`.
pub fn strong_tas_check(d: &Digraph, i_set: &[usize], n_max: usize) -> Result<StrongTasReport> {
    if n_max > TREE_CHECK_CAP {
        return Err(Error::cap("strong TAS host order", TREE_CHECK_CAP as u64));
    }
    if i_set.iter().any(|&x| x >= d.v())
        || d.arcs().iter().any(|&(a, b)| i_set.contains(&a) && i_set.contains(&b))
    {
        return Err(Error::NotIndependent);
    }
    let mut hosts = 0u64;
    for n in 1..=n_max {
        let tours: Vec<Tournament> = enumerate_tournaments(n)?.collect();
        let embeds = embeddings(i_set.len(), n);
        hosts += tours.len() as u64;
        let bound = (n as u128).pow((d.v() - i_set.len()) as u32);
        let first = tours
            .par_iter()
            .map(|t| {
                embeds.iter().find_map(|emb| {
                    let fixed: Vec<(usize, usize)> = i_set.iter().copied().zip(emb.iter().copied()).collect();
                    let count = count_labeled(d, t, &fixed);
                    let scaled = (count as u128) << d.e();
                    (scaled > bound).then(|| StrongTasWitness {
                        n,
                        tournament: t.to_text(),
                        embedding: emb.clone(),
                        count,
                        scaled_count: scaled,
                        scaled_bound: bound,
                    })
                })
            })
            .find_first(|w| w.is_some())
            .flatten();
        if let Some(w) = first {
            return Ok(StrongTasReport { pass: false, n_max, hosts_checked: hosts, violation: Some(w) });
        }
    }
    Ok(StrongTasReport { pass: true, n_max, hosts_checked: hosts, violation: None })
}

/// `D` = two copies of `h` joined through a new vertex `v` by `w → v → w′`.
pub fn amgm_digraph(h: &Digraph, w: usize) -> Result<(Digraph, usize)> {
    if w >= h.v() {
        return Err(Error::InvalidArgument(format!("vertex {w} not in H")));
    }
    let k = h.v();
    let mut arcs: Vec<(usize, usize)> = h.arcs().to_vec();
    arcs.extend(h.arcs().iter().map(|&(a, b)| (a + k, b + k)));
    let v = 2 * k;
    arcs.push((w, v));
    arcs.push((v, w + k));
    Ok((Digraph::new(2 * k + 1, arcs)?, v))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmgmReport {
    pub pass: bool,
    pub n_max: usize,
    /// `(n, tournament index, t, N(D,T|v↪t), N(H,T))` of the first failure.
    pub violation: Option<(usize, u64, usize, u64, u64)>,
}

/// Verifies `4·N(D,T|v↪t) ≤ N(H,T)²` for every tournament on at most
/// `n_max` vertices and every `t`.
pub fn amgm_check(h: &Digraph, w: usize, n_max: usize) -> Result<AmgmReport> {
    if n_max > TREE_CHECK_CAP {
        return Err(Error::cap("AM-GM host order", TREE_CHECK_CAP as u64));
    }
    let (d, v) = amgm_digraph(h, w)?;
    for n in 1..=n_max {
        let tours: Vec<Tournament> = enumerate_tournaments(n)?.collect();
        let bad = tours
            .par_iter()
            .enumerate()
            .map(|(idx, t)| {
                let nh = count_labeled(h, t, &[]);
                (0..n).find_map(|x| {
                    let nd = count_labeled(&d, t, &[(v, x)]);
                    (4 * nd as u128 > (nh as u128).pow(2)).then_some((n, idx as u64, x, nd, nh))
                })
            })
            .find_first(|r| r.is_some())
            .flatten();
        if bad.is_some() {
            return Ok(AmgmReport { pass: false, n_max, violation: bad });
        }
    }
    Ok(AmgmReport { pass: true, n_max, violation: None })
}

/// Vertices `A..G` as `0..6`: arms of length 1, 2, 3 at `C`.
pub fn tree_123() -> Tree {
    Tree::new(7, vec![(0, 1), (1, 2), (2, 6), (2, 3), (3, 4), (4, 5)]).expect("fixture")
}

/// The figure orientation of [`tree_123`]: `A→B, B→C, C→G, D→C, E→D, F→E`.
pub fn tree_123_figure_orientation() -> Digraph {
    Digraph::new(7, vec![(0, 1), (1, 2), (2, 6), (3, 2), (4, 3), (5, 4)]).expect("fixture")
}

/// Vertices `A..J` as `0..9`: arms of length 2, 3, 4 at `D`.
pub fn tree_234() -> Tree {
    Tree::new(10, vec![(0, 1), (1, 2), (2, 3), (3, 8), (8, 9), (3, 4), (4, 5), (5, 6), (6, 7)]).expect("fixture")
}

/// Spine `X_0..X_5` as `0..5`; leaves `Y_{1,1}` = 6, `Y_{2,1..3}` = 7..9,
/// `Y_{3,1..2}` = 10, 11.
pub fn worked_caterpillar() -> Tree {
    let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 1)).collect();
    edges.extend([(1, 6), (2, 7), (2, 8), (2, 9), (3, 10), (3, 11)]);
    Tree::new(12, edges).expect("fixture")
}

/// Arcs drawn for [`worked_caterpillar`].
pub fn worked_caterpillar_arcs() -> Vec<(usize, usize)> {
    vec![(0, 1), (2, 1), (2, 3), (3, 4), (4, 5), (1, 6), (7, 2), (2, 8), (9, 2), (3, 10), (11, 3)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
        v.sort_unstable();
        v
    }

    #[test]
    fn caterpillar_detection() {
        assert!(is_caterpillar(&Tree::path(5)));
        assert_eq!(caterpillar_spine(&tree_123()), Some(vec![1, 2, 3, 4]));
        assert!(!is_caterpillar(&tree_234()));
        assert!(is_caterpillar(&Tree::star(4)));
    }

    #[test]
    fn worked_figure() {
        let o = orient_caterpillar(&worked_caterpillar()).unwrap();
        assert_eq!(sorted(o.arcs), sorted(worked_caterpillar_arcs()));
    }

    #[test]
    fn small_caterpillars() {
        assert_eq!(orient_caterpillar(&Tree::path(2)).unwrap().arcs, vec![(0, 1)]);
        let o = orient_caterpillar(&Tree::star(3)).unwrap();
        assert_eq!(sorted(o.arcs), vec![(0, 3), (1, 0), (2, 0)]);
        assert_eq!(orient_caterpillar(&tree_234()), Err(Error::NotCaterpillar));
    }

    #[test]
    fn iso_pairs() {
        let p = find_isomorphic_pair(&Tree::path(3)).unwrap();
        assert_eq!((p.v, p.h1.clone(), p.h2.clone()), (1, vec![0], vec![2]));
        assert!(verify_iso_pair(&Tree::path(3), &p));
        let s = find_isomorphic_pair(&Tree::star(3)).unwrap();
        assert_eq!((s.h1.len(), s.h2.len()), (1, 1));
        assert_eq!(find_isomorphic_pair(&tree_234()), None);
        for k in 2..6 {
            assert_eq!(find_isomorphic_pair(&Tree::path(2 * k)), None);
            let p = find_isomorphic_pair(&Tree::path(2 * k - 1)).unwrap();
            assert_eq!((p.v, p.h1.len()), (k - 1, k - 1));
        }
    }

    #[test]
    fn tree_tas_recursion() {
        assert_eq!(orient_tree_tas(&tree_123()).provenance, Provenance::CaterpillarRule);
        assert_eq!(orient_tree_tas(&tree_234()).provenance, Provenance::Unknown);
        let spider = Tree::new(8, vec![(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6), (6, 7)]).unwrap();
        let o = orient_tree_tas(&spider);
        assert_eq!(o.provenance, Provenance::IsoPairRecursion);
        let p = find_isomorphic_pair(&spider).unwrap();
        let w2 = p.phi_of(p.w).unwrap();
        assert!(o.arcs.contains(&(p.w, p.v)) && o.arcs.contains(&(p.v, w2)));
        for &(a, b) in &o.arcs {
            if let (Some(x), Some(y)) = (p.phi_of(a), p.phi_of(b)) {
                assert!(o.arcs.contains(&(x, y)));
            }
        }
        assert!(o.to_digraph().is_some());
    }

    #[test]
    fn strong_tas_examples() {
        let wedge = Digraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(strong_tas_check(&wedge, &[1], 5).unwrap().pass);
        let arc = Digraph::single_arc();
        let r = strong_tas_check(&arc, &[0], 5).unwrap();
        assert!(!r.pass);
        assert_eq!(r.violation.unwrap().n, 3);
        assert_eq!(strong_tas_check(&arc, &[0, 1], 3), Err(Error::NotIndependent));
        assert!(strong_tas_check(&arc, &[], 6).is_err());
    }

    #[test]
    fn amgm_examples() {
        assert!(amgm_check(&Digraph::empty(1), 0, 5).unwrap().pass);
        assert!(amgm_check(&Digraph::single_arc(), 1, 4).unwrap().pass);
        assert!(amgm_check(&Digraph::empty(1), 0, 1).unwrap().pass);
    }
}
