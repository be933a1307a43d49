//! Pattern-side objects: oriented paths and cycles, general oriented graphs,
//! and undirected trees.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dir {
    Forward,
    Backward,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Forward => Dir::Backward,
            Dir::Backward => Dir::Forward,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Dir::Forward => '>',
            Dir::Backward => '<',
        }
    }
}

/// Nonempty sequence of edge directions along a path or cycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation(Vec<Dir>);

impl Orientation {
    pub fn new(dirs: Vec<Dir>) -> Result<Self> {
        if dirs.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(Orientation(dirs))
    }

    /// Accepts `>` / `<` and the aliases `R` / `L`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyInput);
        }
        text.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '>' | 'R' => Ok(Dir::Forward),
                '<' | 'L' => Ok(Dir::Backward),
                _ => Err(Error::InvalidCharacter(i)),
            })
            .collect::<Result<Vec<_>>>()
            .map(Orientation)
    }

    /// All-forward orientation with `e` edges.
    pub fn directed(e: usize) -> Self {
        assert!(e >= 1);
        Orientation(vec![Dir::Forward; e])
    }

    /// Orientation whose bit `i` (LSB first) set means edge `i` is backward.
    pub fn from_bits(e: usize, bits: u64) -> Self {
        assert!(e >= 1 && e <= 64);
        Orientation(
            (0..e)
                .map(|i| if bits >> i & 1 == 1 { Dir::Backward } else { Dir::Forward })
                .collect(),
        )
    }

    pub fn dirs(&self) -> &[Dir] {
        &self.0
    }

    pub fn edges(&self) -> usize {
        self.0.len()
    }

    pub fn vertices(&self) -> usize {
        self.0.len() + 1
    }

    pub fn backward_count(&self) -> usize {
        self.0.iter().filter(|&&d| d == Dir::Backward).count()
    }

    /// Every arrow flipped.
    pub fn reversed(&self) -> Self {
        Orientation(self.0.iter().map(|d| d.flip()).collect())
    }

    /// The same path read from the other end.
    pub fn mirrored(&self) -> Self {
        Orientation(self.0.iter().rev().map(|d| d.flip()).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        Orientation(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn to_digraph(&self) -> Digraph {
        let arcs = self
            .0
            .iter()
            .enumerate()
            .map(|(i, d)| match d {
                Dir::Forward => (i, i + 1),
                Dir::Backward => (i + 1, i),
            })
            .collect();
        Digraph::new(self.vertices(), arcs).expect("paths are oriented graphs")
    }

    /// All `2^e` orientations with `e` edges, in `from_bits` order.
    pub fn all(e: usize) -> impl Iterator<Item = Orientation> {
        assert!((1..=30).contains(&e));
        (0..1u64 << e).map(move |b| Orientation::from_bits(e, b))
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|d| write!(f, "{}", d.symbol()))
    }
}

impl FromStr for Orientation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Orientation::parse(s)
    }
}

/// Cycle on `ℓ ≥ 3` vertices; edge `i` joins `i` and `i+1 mod ℓ`, forward
/// meaning clockwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedCycle {
    orientation: Orientation,
}

impl OrientedCycle {
    pub fn new(orientation: Orientation) -> Result<Self> {
        if orientation.edges() < 3 {
            return Err(Error::TooShort(format!(
                "cycle length {} < 3",
                orientation.edges()
            )));
        }
        Ok(OrientedCycle { orientation })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(Orientation::parse(text)?)
    }

    pub fn directed(len: usize) -> Result<Self> {
        if len < 3 {
            return Err(Error::TooShort(format!("cycle length {len} < 3")));
        }
        Self::new(Orientation::directed(len))
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn len(&self) -> usize {
        self.orientation.edges()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of edges reversed relative to the clockwise cycle.
    pub fn flips(&self) -> usize {
        self.orientation.backward_count()
    }

    pub fn to_digraph(&self) -> Digraph {
        let l = self.len();
        let arcs = self
            .orientation
            .dirs()
            .iter()
            .enumerate()
            .map(|(i, d)| match d {
                Dir::Forward => (i, (i + 1) % l),
                Dir::Backward => ((i + 1) % l, i),
            })
            .collect();
        Digraph::new(l, arcs).expect("cycles of length >= 3 are oriented graphs")
    }

    /// Every edge replaced by `k` edges of the same direction.
    pub fn subdivide(&self, k: usize) -> Self {
        assert!(k >= 1);
        let dirs = self
            .orientation
            .dirs()
            .iter()
            .flat_map(|&d| std::iter::repeat_n(d, k))
            .collect();
        OrientedCycle { orientation: Orientation(dirs) }
    }
}

impl fmt::Display for OrientedCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.orientation.fmt(f)
    }
}

/// Cycle of even length with alternating directions.
pub fn alternating_cycle(two_ell: usize) -> Result<OrientedCycle> {
    if two_ell % 2 == 1 {
        return Err(Error::OddLength);
    }
    if two_ell < 4 {
        return Err(Error::TooShort(format!("alternating cycle length {two_ell} < 4")));
    }
    let dirs = (0..two_ell)
        .map(|i| if i % 2 == 0 { Dir::Forward } else { Dir::Backward })
        .collect();
    OrientedCycle::new(Orientation(dirs))
}

/// Oriented graph: no loops, no repeated arcs, no digons.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    v: usize,
    arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(v: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(a, b) in &arcs {
            if a >= v || b >= v {
                return Err(Error::InvalidDigraph(format!("arc ({a},{b}) out of range")));
            }
            if a == b {
                return Err(Error::InvalidDigraph(format!("self-loop at {a}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidDigraph(format!("repeated pair {{{a},{b}}}")));
            }
        }
        Ok(Digraph { v, arcs })
    }

    pub fn empty(v: usize) -> Self {
        Digraph { v, arcs: Vec::new() }
    }

    pub fn single_arc() -> Self {
        Digraph { v: 2, arcs: vec![(0, 1)] }
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn e(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn has_arc(&self, a: usize, b: usize) -> bool {
        self.arcs.contains(&(a, b))
    }

    /// Undirected adjacency lists.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.v];
        for &(a, b) in &self.arcs {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Vertex sets of the weakly connected components, each sorted, in order
    /// of smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbors();
        let mut comp = vec![usize::MAX; self.v];
        let mut out = Vec::new();
        for s in 0..self.v {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            let mut members = Vec::new();
            comp[s] = id;
            while let Some(x) = stack.pop() {
                members.push(x);
                for &y in &adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Each arc becomes a directed path with `k` arcs through `k−1` new vertices.
    pub fn subdivide(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("subdivision factor must be >= 1".into()));
        }
        let mut v = self.v;
        let mut arcs = Vec::with_capacity(self.e() * k);
        for &(a, b) in &self.arcs {
            let mut prev = a;
            for _ in 1..k {
                arcs.push((prev, v));
                prev = v;
                v += 1;
            }
            arcs.push((prev, b));
        }
        Digraph::new(v, arcs)
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.v;
        let arcs = self
            .arcs
            .iter()
            .copied()
            .chain(other.arcs.iter().map(|&(a, b)| (a + shift, b + shift)))
            .collect();
        Digraph { v: self.v + other.v, arcs }
    }

    /// Parses `digraph v=<n>` followed by `u w` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let (v, pairs) = parse_pair_list(text, "digraph")?;
        Digraph::new(v, pairs)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("digraph v={}\n", self.v);
        for (a, b) in &self.arcs {
            s.push_str(&format!("{a} {b}\n"));
        }
        s
    }
}

/// Either an oriented path, kept in its compact form, or a general digraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    Path(Orientation),
    Graph(Digraph),
}

impl Pattern {
    /// A `<`/`>` string is a path; anything else is read as a digraph file.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.starts_with("digraph") {
            Ok(Pattern::Graph(Digraph::parse(t)?))
        } else {
            Ok(Pattern::Path(Orientation::parse(t)?))
        }
    }

    pub fn to_digraph(&self) -> Digraph {
        match self {
            Pattern::Path(o) => o.to_digraph(),
            Pattern::Graph(d) => d.clone(),
        }
    }

    pub fn vertices(&self) -> usize {
        match self {
            Pattern::Path(o) => o.vertices(),
            Pattern::Graph(d) => d.v(),
        }
    }

    pub fn edges(&self) -> usize {
        match self {
            Pattern::Path(o) => o.edges(),
            Pattern::Graph(d) => d.e(),
        }
    }
}

impl fmt::Display for Pattern {
    /// Paths print as their direction string, digraphs as `v=3:0>1,2>1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Path(o) => write!(f, "{o}"),
            Pattern::Graph(d) => {
                let arcs: Vec<String> = d.arcs().iter().map(|(a, b)| format!("{a}>{b}")).collect();
                write!(f, "v={}:{}", d.v(), arcs.join(","))
            }
        }
    }
}

impl From<Orientation> for Pattern {
    fn from(o: Orientation) -> Self {
        Pattern::Path(o)
    }
}

impl From<Digraph> for Pattern {
    fn from(d: Digraph) -> Self {
        Pattern::Graph(d)
    }
}

/// Undirected tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tree {
    v: usize,
    edges: Vec<(usize, usize)>,
}

impl Tree {
    pub fn new(v: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if v == 0 {
            return Err(Error::InvalidTree("no vertices".into()));
        }
        if edges.len() + 1 != v {
            return Err(Error::InvalidTree(format!(
                "{} edges for {} vertices",
                edges.len(),
                v
            )));
        }
        let g = Digraph::new(v, edges.clone()).map_err(|e| Error::InvalidTree(e.to_string()))?;
        if g.components().len() != 1 {
            return Err(Error::InvalidTree("not connected".into()));
        }
        Ok(Tree { v, edges })
    }

    pub fn path(v: usize) -> Self {
        Tree::new(v, (1..v).map(|i| (i - 1, i)).collect()).expect("paths are trees")
    }

    pub fn star(leaves: usize) -> Self {
        Tree::new(leaves + 1, (1..=leaves).map(|i| (0, i)).collect()).expect("stars are trees")
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.v];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degree(&self, x: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == x || b == x).count()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (v, pairs) = parse_pair_list(text, "tree")?;
        Tree::new(v, pairs)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("tree v={}\n", self.v);
        for (a, b) in &self.edges {
            s.push_str(&format!("{a} {b}\n"));
        }
        s
    }
}

fn parse_pair_list(text: &str, keyword: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or(Error::EmptyInput)?;
    let v = header
        .strip_prefix(keyword)
        .and_then(|rest| rest.trim().strip_prefix("v="))
        .and_then(|n| n.trim().parse::<usize>().ok())
        .ok_or_else(|| Error::Parse(format!("expected header `{keyword} v=<n>`, got `{header}`")))?;
    let mut pairs = Vec::new();
    for line in lines {
        let mut it = line.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => pairs.push((a, b)),
            _ => return Err(Error::Parse(format!("bad pair line `{line}`"))),
        }
    }
    Ok((v, pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Dir::*;

    #[test]
    fn parse_examples() {
        assert_eq!(Orientation::parse(">").unwrap().dirs(), &[Forward]);
        assert_eq!(
            Orientation::parse("><>>><").unwrap().dirs(),
            &[Forward, Backward, Forward, Forward, Forward, Backward]
        );
        assert_eq!(Orientation::parse(">x"), Err(Error::InvalidCharacter(1)));
        assert_eq!(Orientation::parse(""), Err(Error::EmptyInput));
        assert_eq!(Orientation::parse("RLR").unwrap().to_string(), "><>");
    }

    #[test]
    fn subdivision_examples() {
        let arc = Digraph::single_arc();
        assert_eq!(arc.subdivide(1).unwrap(), arc);
        let p = arc.subdivide(3).unwrap();
        assert_eq!((p.v(), p.e()), (4, 3));
        assert_eq!(p, Digraph::new(4, vec![(0, 2), (2, 3), (3, 1)]).unwrap());

        let c = alternating_cycle(6).unwrap().subdivide(3);
        assert_eq!((c.len(), c.flips()), (18, 9));
        // the digraph-level subdivision agrees on counts
        let d = alternating_cycle(6).unwrap().to_digraph().subdivide(3).unwrap();
        assert_eq!((d.v(), d.e()), (18, 18));
    }

    #[test]
    fn alternating_examples() {
        let c = alternating_cycle(4).unwrap();
        assert_eq!(c.orientation().dirs(), &[Forward, Backward, Forward, Backward]);
        assert_eq!(c.flips(), 2);
        assert_eq!(alternating_cycle(6).unwrap().flips(), 3);
        assert_eq!(alternating_cycle(3), Err(Error::OddLength));
        assert!(matches!(alternating_cycle(2), Err(Error::TooShort(_))));
    }

    #[test]
    fn disjoint_unions() {
        let p3 = Orientation::directed(2).to_digraph();
        let two = p3.disjoint_union(&p3);
        assert_eq!((two.v(), two.e()), (6, 4));
        assert_eq!(two.components().len(), 2);
        let iso = Digraph::empty(1).disjoint_union(&Digraph::empty(1));
        assert_eq!((iso.v(), iso.e()), (2, 0));
        let k2 = Digraph::single_arc().disjoint_union(&Digraph::single_arc());
        assert_eq!((k2.v(), k2.e()), (4, 2));
    }

    #[test]
    fn digraph_rejects_digons_and_loops() {
        assert!(Digraph::new(2, vec![(0, 1), (1, 0)]).is_err());
        assert!(Digraph::new(2, vec![(1, 1)]).is_err());
        assert!(Digraph::new(2, vec![(0, 2)]).is_err());
    }

    #[test]
    fn text_formats_round_trip() {
        let d = Orientation::parse("><>").unwrap().to_digraph();
        assert_eq!(Digraph::parse(&d.to_text()).unwrap(), d);
        let t = Tree::star(3);
        assert_eq!(Tree::parse(&t.to_text()).unwrap(), t);
        assert!(Tree::parse("tree v=3\n0 1\n").is_err());
        assert!(Tree::parse("tree v=4\n0 1\n1 0\n2 3\n").is_err());
        assert!(Digraph::parse("graph v=2\n0 1").is_err());
    }
}
