use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::graph::{DegreeVector, Multigraph};

/// A partition of `{0, …, 2p-1}` into `p` unordered pairs. Pairs are stored
/// as `(a, b)` with `a < b`, sorted by first element, so the derived order
/// is the lexicographic enumeration order. JSON and display use 1-based
/// indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<[usize; 2]>", into = "Vec<[usize; 2]>")]
pub struct PerfectMatching {
    pairs: Vec<(usize, usize)>,
}

impl PerfectMatching {
    pub fn empty() -> Self {
        Self { pairs: Vec::new() }
    }

    /// 0-based pairs; must cover `0..2p` exactly once.
    pub fn from_pairs(p: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = vec![false; 2 * p];
        let mut out = Vec::with_capacity(p);
        for (a, b) in pairs {
            for x in [a, b] {
                if x >= 2 * p || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidInput(format!(
                        "index {} is out of range or repeated in a matching on {} points",
                        x + 1,
                        2 * p
                    )));
                }
            }
            out.push((a.min(b), a.max(b)));
        }
        if out.len() != p {
            return Err(Error::InvalidInput(format!(
                "expected {p} pairs, got {}",
                out.len()
            )));
        }
        out.sort_unstable();
        Ok(Self { pairs: out })
    }

    /// 1-based pairs, as written in the literature.
    pub fn from_one_based(pairs: &[(usize, usize)]) -> Result<Self> {
        if pairs.iter().any(|&(a, b)| a == 0 || b == 0) {
            return Err(Error::InvalidInput("1-based matching contains 0".into()));
        }
        Self::from_pairs(pairs.len(), pairs.iter().map(|&(a, b)| (a - 1, b - 1)))
    }

    pub fn p(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// `partner[i]` is the index paired with `i`.
    pub fn partners(&self) -> Vec<usize> {
        let mut out = vec![0; 2 * self.p()];
        for &(a, b) in &self.pairs {
            out[a] = b;
            out[b] = a;
        }
        out
    }

    /// `σ·ρ = {{σ(a), σ(b)}}` for a permutation given as an image table.
    pub fn act(&self, sigma: &[usize]) -> Self {
        let mut pairs: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (sigma[a], sigma[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        pairs.sort_unstable();
        Self { pairs }
    }
}

impl TryFrom<Vec<[usize; 2]>> for PerfectMatching {
    type Error = Error;
    fn try_from(v: Vec<[usize; 2]>) -> Result<Self> {
        Self::from_one_based(&v.into_iter().map(|[a, b]| (a, b)).collect::<Vec<_>>())
    }
}

impl From<PerfectMatching> for Vec<[usize; 2]> {
    fn from(m: PerfectMatching) -> Self {
        m.pairs.into_iter().map(|(a, b)| [a + 1, b + 1]).collect()
    }
}

impl fmt::Display for PerfectMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "∅");
        }
        for (a, b) in &self.pairs {
            write!(f, "{{{},{}}}", a + 1, b + 1)?;
        }
        Ok(())
    }
}

/// `(2p-1)!!`, the number of perfect matchings on `2p` points.
pub fn double_factorial(p: usize) -> u128 {
    (1..=p as u128).map(|k| 2 * k - 1).product()
}

/// All perfect matchings on `2p` points in lexicographic order: the smallest
/// free index is paired with each larger free index in turn.
pub fn enumerate_matchings(p: usize) -> Vec<PerfectMatching> {
    fn go(
        free: &mut Vec<usize>,
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<PerfectMatching>,
    ) {
        if free.is_empty() {
            out.push(PerfectMatching {
                pairs: current.clone(),
            });
            return;
        }
        let first = free.remove(0);
        for i in 0..free.len() {
            let partner = free.remove(i);
            current.push((first, partner));
            go(free, current, out);
            current.pop();
            free.insert(i, partner);
        }
        free.insert(0, first);
    }
    let mut out = Vec::with_capacity(double_factorial(p) as usize);
    go(&mut (0..2 * p).collect(), &mut Vec::new(), &mut out);
    out
}

/// `Γ̃(ρ, β)`: the multigraph whose edges are the images of the pairs of `ρ`
/// under the canonical fiber map of `β`. Isolated vertices come first.
pub fn build_graph(rho: &PerfectMatching, beta: &DegreeVector) -> Result<Multigraph> {
    if beta.edges() != rho.p() {
        return Err(Error::EdgeCountMismatch {
            beta_edges: beta.edges(),
            matching_pairs: rho.p(),
        });
    }
    let owner = beta.fiber_map();
    Multigraph::new(
        beta.vertices(),
        rho.pairs.iter().map(|&(a, b)| (owner[a], owner[b])),
    )
}

impl PerfectMatching {
    /// Index of this matching in `enumerate_matchings(p)`, computed
    /// arithmetically.
    pub fn lex_index(&self) -> usize {
        let p = self.p();
        let mut free: Vec<usize> = (0..2 * p).collect();
        let mut index = 0usize;
        for (k, &(a, b)) in self.pairs.iter().enumerate() {
            debug_assert_eq!(free[0], a);
            free.remove(0);
            let pos = free.iter().position(|&x| x == b).expect("valid matching");
            free.remove(pos);
            index += pos * double_factorial(p - k - 1) as usize;
        }
        index
    }

    pub fn to_one_based_string(&self) -> String {
        self.pairs
            .iter()
            .map(|(a, b)| format!("{{{},{}}}", a + 1, b + 1))
            .join("")
    }
}
