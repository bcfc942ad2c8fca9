use std::fmt;
use std::ops::{Add, Range};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::matching::PerfectMatching;

/// A multigraph on vertices `0..n`. Edges are unordered pairs stored as
/// `(i, j)` with `i <= j`; `(v, v)` is a loop. The edge list is kept sorted so
/// equality of two values means equality of labeled graphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawMultigraph", into = "RawMultigraph")]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RawMultigraph {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<RawMultigraph> for Multigraph {
    type Error = Error;
    fn try_from(raw: RawMultigraph) -> Result<Self> {
        Multigraph::new(raw.n, raw.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

impl From<Multigraph> for RawMultigraph {
    fn from(g: Multigraph) -> Self {
        RawMultigraph {
            n: g.n,
            edges: g.edges.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl Multigraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut out = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            out.push((a.min(b), a.max(b)));
        }
        out.sort_unstable();
        Ok(Self { n, edges: out })
    }

    /// The null graph `•⁰`.
    pub fn null() -> Self {
        Self {
            n: 0,
            edges: Vec::new(),
        }
    }

    /// `count` isolated vertices.
    pub fn isolated(count: usize) -> Self {
        Self {
            n: count,
            edges: Vec::new(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn isolated_count(&self) -> usize {
        self.degrees().into_iter().filter(|&d| d == 0).count()
    }

    /// Split off isolated vertices: `(β0, graph without isolated vertices)`.
    pub fn split_isolated(&self) -> (usize, Multigraph) {
        let deg = self.degrees();
        let mut remap = vec![usize::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if deg[v] > 0 {
                remap[v] = next;
                next += 1;
            }
        }
        let core = Multigraph::new(next, self.edges.iter().map(|&(a, b)| (remap[a], remap[b])))
            .expect("remapped edges are in range");
        (self.n - next, core)
    }

    /// Apply a vertex relabeling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Multigraph> {
        if perm.len() != self.n || !perm.iter().copied().sorted().eq(0..self.n) {
            return Err(Error::InvalidInput(format!(
                "{perm:?} is not a permutation of 0..{}",
                self.n
            )));
        }
        Multigraph::new(self.n, self.edges.iter().map(|&(a, b)| (perm[a], perm[b])))
    }

    /// Connectivity of the underlying simple graph; loops never join
    /// components. Graphs with at most one vertex are connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components as separate multigraphs, ordered by smallest
    /// vertex, each keeping the relative order of its vertices.
    pub fn components(&self) -> Vec<Multigraph> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let roots: Vec<usize> = (0..self.n).map(|v| find(&mut parent, v)).collect();
        let order: Vec<usize> = roots.iter().copied().sorted().dedup().collect();
        order
            .iter()
            .map(|&r| {
                let members: Vec<usize> = (0..self.n).filter(|&v| roots[v] == r).collect();
                let local = |v: usize| members.binary_search(&v).expect("member of component");
                let edges = self
                    .edges
                    .iter()
                    .filter(|&&(a, _)| roots[a] == r)
                    .map(|&(a, b)| (local(a), local(b)));
                Multigraph::new(members.len(), edges).expect("component edges are in range")
            })
            .collect()
    }

    pub fn is_canonical(&self) -> bool {
        *self == canonical_form(self)
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};", self.n)?;
        for (i, (a, b)) in self.edges.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{a}-{b}")?;
        }
        write!(f, "]")
    }
}

/// Multiplicities of vertex degrees: `beta0` isolated vertices and
/// `vec[j - 1]` vertices of degree `j`. Trailing zeros are trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawDegreeVector", into = "RawDegreeVector")]
pub struct DegreeVector {
    beta0: usize,
    vec: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawDegreeVector {
    beta0: usize,
    vec: Vec<usize>,
}

impl TryFrom<RawDegreeVector> for DegreeVector {
    type Error = Error;
    fn try_from(raw: RawDegreeVector) -> Result<Self> {
        DegreeVector::new(raw.beta0, raw.vec)
    }
}

impl From<DegreeVector> for RawDegreeVector {
    fn from(b: DegreeVector) -> Self {
        RawDegreeVector {
            beta0: b.beta0,
            vec: b.vec,
        }
    }
}

impl DegreeVector {
    /// Fails when the degree sum is odd.
    pub fn new(beta0: usize, mut vec: Vec<usize>) -> Result<Self> {
        while vec.last() == Some(&0) {
            vec.pop();
        }
        let sum: usize = vec.iter().enumerate().map(|(i, &b)| (i + 1) * b).sum();
        if !sum.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "degree vector {vec:?} has odd degree sum {sum}"
            )));
        }
        Ok(Self { beta0, vec })
    }

    /// From a list of vertex degrees in any order.
    pub fn from_degrees(degrees: &[usize]) -> Result<Self> {
        let beta0 = degrees.iter().filter(|&&d| d == 0).count();
        let k = degrees.iter().copied().max().unwrap_or(0);
        let mut vec = vec![0; k];
        for &d in degrees.iter().filter(|&&d| d > 0) {
            vec[d - 1] += 1;
        }
        Self::new(beta0, vec)
    }

    pub fn beta0(&self) -> usize {
        self.beta0
    }

    /// `[β1, …, βk]`.
    pub fn vec(&self) -> &[usize] {
        &self.vec
    }

    pub fn with_beta0(&self, beta0: usize) -> Self {
        Self {
            beta0,
            vec: self.vec.clone(),
        }
    }

    /// `|β|_E`, half the degree sum.
    pub fn edges(&self) -> usize {
        self.vec
            .iter()
            .enumerate()
            .map(|(i, &b)| (i + 1) * b)
            .sum::<usize>()
            / 2
    }

    /// `|β|_V`, including isolated vertices.
    pub fn vertices(&self) -> usize {
        self.beta0 + self.vec.iter().sum::<usize>()
    }

    /// Largest degree present; 0 for the zero vector.
    pub fn order(&self) -> usize {
        self.vec.len()
    }

    /// Degrees of all vertices in non-decreasing order, isolated ones first.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut out = vec![0; self.beta0];
        for (i, &b) in self.vec.iter().enumerate() {
            out.extend(std::iter::repeat_n(i + 1, b));
        }
        out
    }

    /// Consecutive index ranges in `0..2p` owned by each vertex under the
    /// canonical fiber map (empty ranges for isolated vertices).
    pub fn fibers(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.degree_sequence()
            .into_iter()
            .map(|l| {
                let r = start..start + l;
                start += l;
                r
            })
            .collect()
    }

    /// Vertex owning each index of `0..2p`.
    pub fn fiber_map(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(2 * self.edges());
        for (v, r) in self.fibers().into_iter().enumerate() {
            out.extend(r.map(|_| v));
        }
        out
    }
}

impl Add for &DegreeVector {
    type Output = DegreeVector;
    fn add(self, rhs: &DegreeVector) -> DegreeVector {
        let len = self.vec.len().max(rhs.vec.len());
        let vec = (0..len)
            .map(|i| self.vec.get(i).unwrap_or(&0) + rhs.vec.get(i).unwrap_or(&0))
            .collect();
        DegreeVector::new(self.beta0 + rhs.beta0, vec).expect("sum of even degree sums is even")
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, [{}])", self.beta0, self.vec.iter().join(","))
    }
}

pub fn degree_vector(g: &Multigraph) -> DegreeVector {
    DegreeVector::from_degrees(&g.degrees()).expect("handshaking lemma")
}

/// Vertices of `b` are shifted past those of `a`.
pub fn disjoint_union(a: &Multigraph, b: &Multigraph) -> Multigraph {
    let shift = a.n;
    Multigraph::new(
        a.n + b.n,
        a.edges
            .iter()
            .copied()
            .chain(b.edges.iter().map(|&(x, y)| (x + shift, y + shift))),
    )
    .expect("shifted edges are in range")
}

/// Lexicographically smallest relabeling among those that list vertices in
/// non-decreasing degree order. Two graphs are isomorphic iff their canonical
/// forms are equal, since every isomorphism preserves degrees.
///
/// Exhaustive over permutations within each degree class, which is fine for
/// the small graphs this crate deals with.
pub fn canonical_form(g: &Multigraph) -> Multigraph {
    if g.n <= 1 {
        return g.clone();
    }
    let deg = g.degrees();
    let order: Vec<usize> = (0..g.n).sorted_by_key(|&v| deg[v]).collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut starts = Vec::new();
    for (pos, &v) in order.iter().enumerate() {
        match classes.last_mut() {
            Some(c) if deg[c[0]] == deg[v] => c.push(v),
            _ => {
                classes.push(vec![v]);
                starts.push(pos);
            }
        }
    }

    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut label = vec![0usize; g.n];
    let mut scratch = Vec::with_capacity(g.edges.len());
    for choice in classes
        .iter()
        .map(|c| c.iter().copied().permutations(c.len()))
        .multi_cartesian_product()
    {
        for (class_perm, &start) in choice.iter().zip(&starts) {
            for (offset, &v) in class_perm.iter().enumerate() {
                label[v] = start + offset;
            }
        }
        scratch.clear();
        scratch.extend(g.edges.iter().map(|&(a, b)| {
            let (x, y) = (label[a], label[b]);
            (x.min(y), x.max(y))
        }));
        scratch.sort_unstable();
        if best.as_ref().is_none_or(|b| scratch < *b) {
            best = Some(scratch.clone());
        }
    }
    Multigraph {
        n: g.n,
        edges: best.expect("at least one relabeling"),
    }
}

/// A pair `(ρ, β)` with `build_graph(ρ, β) ≅ γ`: vertices are listed by
/// non-decreasing degree and edge-ends are numbered fiber by fiber in edge
/// list order.
pub fn parametrize(g: &Multigraph) -> (PerfectMatching, DegreeVector) {
    let beta = degree_vector(g);
    let deg = g.degrees();
    let order: Vec<usize> = (0..g.n).sorted_by_key(|&v| deg[v]).collect();
    let mut next_slot = vec![0usize; g.n];
    let mut start = 0;
    for &v in &order {
        next_slot[v] = start;
        start += deg[v];
    }
    let pairs = g
        .edges
        .iter()
        .map(|&(a, b)| {
            let x = next_slot[a];
            next_slot[a] += 1;
            let y = next_slot[b];
            next_slot[b] += 1;
            (x, y)
        })
        .collect::<Vec<_>>();
    let rho = PerfectMatching::from_pairs(g.edges.len(), pairs).expect("edge-ends are a bijection");
    (rho, beta)
}
