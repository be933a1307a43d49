//! Homomorphism counts and densities.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::pattern::{Digraph, Dir, Orientation, OrientedCycle};
use crate::scalar::Scalar;
use crate::tournament::{SkewMatrix, WeightedTournament};

/// Largest number of maps `hom_generic` will enumerate.
pub const GENERIC_MAP_CAP: u64 = 1_000_000_000;

/// Anything that can serve as the host of a homomorphism count.
pub trait Kernel<S: Scalar> {
    fn kernel(&self) -> &Matrix<S>;
}

impl<S: Scalar> Kernel<S> for Matrix<S> {
    fn kernel(&self) -> &Matrix<S> {
        self
    }
}

impl<S: Scalar> Kernel<S> for WeightedTournament<S> {
    fn kernel(&self) -> &Matrix<S> {
        self.matrix()
    }
}

impl<S: Scalar> Kernel<S> for SkewMatrix<S> {
    fn kernel(&self) -> &Matrix<S> {
        self.matrix()
    }
}

/// A raw count `h` together with what is needed to normalise it.
#[derive(Clone, Debug, PartialEq)]
pub struct HomCount<S> {
    pub raw: S,
    pub n: usize,
    pub v: usize,
}

impl<S: Scalar> HomCount<S> {
    /// `h / n^v`.
    pub fn density(&self) -> S {
        self.raw.clone() / num::pow(S::from_usize(self.n), self.v)
    }
}

/// `Σ_φ Π_{(x,y)∈E} K(φx, φy)` over all `n^v` maps.
pub fn hom_generic<S: Scalar, K: Kernel<S>>(d: &Digraph, host: &K) -> Result<HomCount<S>> {
    let m = host.kernel();
    let n = m.n();
    let comps = d.components();
    let mut raw = S::one();
    let mut enumerated: u64 = 1;
    for comp in &comps {
        if comp.len() == 1 {
            raw = raw * S::from_usize(n);
            continue;
        }
        enumerated = enumerated.saturating_mul((n as u64).saturating_pow(comp.len() as u32));
        if enumerated > GENERIC_MAP_CAP {
            return Err(Error::cap("generic homomorphism maps", GENERIC_MAP_CAP));
        }
        raw = raw * component_hom(d, comp, m);
        if raw.is_zero() {
            break;
        }
    }
    Ok(HomCount { raw, n, v: d.v() })
}

/// Brute-force count for one connected component, assigning vertices in BFS
/// order and multiplying each arc in once both ends are placed.
fn component_hom<S: Scalar>(d: &Digraph, comp: &[usize], m: &Matrix<S>) -> S {
    let adj = d.neighbors();
    let mut order = vec![comp[0]];
    let mut placed = vec![false; d.v()];
    placed[comp[0]] = true;
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for &y in &adj[x] {
            if !placed[y] {
                placed[y] = true;
                order.push(y);
            }
        }
    }
    let mut pos = vec![usize::MAX; d.v()];
    for (k, &x) in order.iter().enumerate() {
        pos[x] = k;
    }
    // arcs_at[k]: arcs whose later endpoint is order[k], as (src pos, dst pos)
    let mut arcs_at = vec![Vec::new(); order.len()];
    for &(a, b) in d.arcs() {
        if pos[a] != usize::MAX {
            arcs_at[pos[a].max(pos[b])].push((pos[a], pos[b]));
        }
    }
    let mut image = vec![0usize; order.len()];
    fn rec<S: Scalar>(
        k: usize,
        image: &mut Vec<usize>,
        arcs_at: &[Vec<(usize, usize)>],
        m: &Matrix<S>,
        partial: S,
    ) -> S {
        if k == image.len() {
            return partial;
        }
        let mut total = S::zero();
        for t in 0..m.n() {
            image[k] = t;
            let mut p = partial.clone();
            for &(a, b) in &arcs_at[k] {
                p = p * m[(image[a], image[b])].clone();
                if p.is_zero() {
                    break;
                }
            }
            if !p.is_zero() {
                total = total + rec(k + 1, image, arcs_at, m, p);
            }
        }
        total
    }
    rec(0, &mut image, &arcs_at, m, S::one())
}

/// `1ᵀ M_1 ⋯ M_e 1` with `M_i = K` for forward edges and `Kᵀ` for backward.
pub fn hom_path<S: Scalar, K: Kernel<S>>(o: &Orientation, host: &K) -> HomCount<S> {
    let m = host.kernel();
    let raw = path_vector(o.dirs(), m).into_iter().fold(S::zero(), |a, b| a + b);
    HomCount { raw, n: m.n(), v: o.vertices() }
}

/// Row vector `1ᵀ M_1 ⋯ M_e`: entry `y` counts walks ending at `y`.
pub fn path_vector<S: Scalar>(dirs: &[Dir], m: &Matrix<S>) -> Vec<S> {
    let mt = m.transpose();
    let mut x = vec![S::one(); m.n()];
    for d in dirs {
        x = match d {
            Dir::Forward => m.left_mul(&x),
            Dir::Backward => mt.left_mul(&x),
        };
    }
    x
}

/// Trace of the oriented product around the cycle.
pub fn hom_cycle<S: Scalar, K: Kernel<S>>(c: &OrientedCycle, host: &K) -> HomCount<S> {
    let m = host.kernel();
    let mt = m.transpose();
    let mut prod = Matrix::identity(m.n());
    for d in c.orientation().dirs() {
        prod = prod.mul(if *d == Dir::Forward { m } else { &mt });
    }
    HomCount { raw: prod.trace(), n: m.n(), v: c.len() }
}

/// `1ᵀ B^k 1`.
pub fn power_sandwich<S: Scalar>(b: &Matrix<S>, k: usize) -> S {
    let mut x = vec![S::one(); b.n()];
    for _ in 0..k {
        x = b.right_mul(&x);
    }
    x.into_iter().fold(S::zero(), |a, y| a + y)
}

/// Signed density `1ᵀ B^{edges} 1 / n^{edges+1}` of the directed path; zero
/// for odd `edges`.
pub fn t_kernel_path<S: Scalar>(b: &SkewMatrix<S>, edges: usize) -> S {
    if edges % 2 == 1 {
        return S::zero();
    }
    let n = S::from_usize(b.n());
    power_sandwich(b.matrix(), edges) / num::pow(n, edges + 1)
}

/// Density of two disjoint copies of `P3`: the square of the `P3` density.
pub fn t_kernel_2p3<S: Scalar>(b: &SkewMatrix<S>) -> S {
    let t = t_kernel_path(b, 2);
    t.clone() * t
}

/// Signed cycle density `tr(B^len) / n^len`.
pub fn t_kernel_cycle<S: Scalar>(b: &SkewMatrix<S>, len: usize) -> S {
    if len % 2 == 1 {
        return S::zero();
    }
    let n = S::from_usize(b.n());
    b.matrix().pow(len).trace() / num::pow(n, len)
}

/// Kronecker product of two kernels: `(W1⊗W2)((x1,x2),(y1,y2)) = W1(x1,y1) W2(x2,y2)`.
pub fn tensor_product<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    a.kron(b)
}

/// Whether the underlying graph of `d` has no cycles.
pub fn is_forest(d: &Digraph) -> bool {
    d.e() + d.components().len() == d.v()
}

/// Vector over images of `root` counting the component of `root` in `d`
/// with arc `skip` deleted. Marks the visited vertices.
fn rooted_vector<S: Scalar>(
    d: &Digraph,
    adj: &[Vec<(usize, usize)>],
    root: usize,
    skip: Option<usize>,
    m: &Matrix<S>,
    seen: &mut [bool],
) -> Vec<S> {
    let n = m.n();
    let mut order = vec![(root, usize::MAX)];
    seen[root] = true;
    let mut head = 0;
    while head < order.len() {
        let (x, _) = order[head];
        head += 1;
        for &(y, arc) in &adj[x] {
            if Some(arc) != skip && !seen[y] {
                seen[y] = true;
                order.push((y, arc));
            }
        }
    }
    let mut msg: Vec<Vec<S>> = vec![Vec::new(); d.v()];
    for &(x, _) in &order {
        msg[x] = vec![S::one(); n];
    }
    for &(x, arc) in order.iter().skip(1).rev() {
        let (a, b) = d.arcs()[arc];
        let parent = if a == x { b } else { a };
        let child = std::mem::take(&mut msg[x]);
        let up: Vec<S> = (0..n)
            .map(|i| {
                (0..n).fold(S::zero(), |acc, j| {
                    let w = if a == parent { &m[(i, j)] } else { &m[(j, i)] };
                    acc + w.clone() * child[j].clone()
                })
            })
            .collect();
        for (p, u) in msg[parent].iter_mut().zip(up) {
            *p = p.clone() * u;
        }
    }
    std::mem::take(&mut msg[root])
}

fn arc_adjacency(d: &Digraph) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); d.v()];
    for (k, &(a, b)) in d.arcs().iter().enumerate() {
        adj[a].push((b, k));
        adj[b].push((a, k));
    }
    adj
}

fn sum<S: Scalar>(v: Vec<S>) -> S {
    v.into_iter().fold(S::zero(), |a, b| a + b)
}

/// Tree dynamic programme for digraphs whose underlying graph is a forest;
/// `None` otherwise.
pub fn hom_forest<S: Scalar, K: Kernel<S>>(d: &Digraph, host: &K) -> Option<HomCount<S>> {
    if !is_forest(d) {
        return None;
    }
    let m = host.kernel();
    let adj = arc_adjacency(d);
    let mut seen = vec![false; d.v()];
    let mut raw = S::one();
    for x in 0..d.v() {
        if !seen[x] {
            raw = raw * sum(rooted_vector(d, &adj, x, None, m, &mut seen));
        }
    }
    Some(HomCount { raw, n: m.n(), v: d.v() })
}

/// `∂h/∂K(i,j)` for a forest pattern, as an `n × n` matrix: each arc
/// `(a,b)` contributes the product of the two sides with `a ↦ i`, `b ↦ j`.
pub fn forest_gradient<S: Scalar>(d: &Digraph, m: &Matrix<S>) -> Option<Matrix<S>> {
    if !is_forest(d) {
        return None;
    }
    let n = m.n();
    let adj = arc_adjacency(d);
    let mut grad: Matrix<S> = Matrix::zeros(n);
    for (k, &(a, b)) in d.arcs().iter().enumerate() {
        let mut seen = vec![false; d.v()];
        let va = rooted_vector(d, &adj, a, Some(k), m, &mut seen);
        let vb = rooted_vector(d, &adj, b, Some(k), m, &mut seen);
        let mut rest = S::one();
        for x in 0..d.v() {
            if !seen[x] {
                rest = rest * sum(rooted_vector(d, &adj, x, None, m, &mut seen));
            }
        }
        for i in 0..n {
            for j in 0..n {
                grad[(i, j)] = grad[(i, j)].clone() + rest.clone() * va[i].clone() * vb[j].clone();
            }
        }
    }
    Some(grad)
}

/// Tree DP when possible, brute force otherwise.
pub fn hom_auto<S: Scalar, K: Kernel<S>>(d: &Digraph, host: &K) -> Result<HomCount<S>> {
    match hom_forest(d, host) {
        Some(h) => Ok(h),
        None => hom_generic(d, host),
    }
}
