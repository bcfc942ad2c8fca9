use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::multigraph::graph::{canonical_form, DegreeVector, Multigraph};
use crate::multigraph::matching::{build_graph, enumerate_matchings, PerfectMatching};

/// Image table of a permutation of `0..2p`.
pub type Permutation = Vec<usize>;

/// Generators of `S_β ⊂ S_{2p}`: adjacent transpositions inside each fiber,
/// followed by blockwise swaps of consecutive equal-degree fibers.
#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    pub degree_vector: DegreeVector,
    /// Index ranges owned by each positive-degree vertex.
    pub fibers: Vec<std::ops::Range<usize>>,
    pub generators: Vec<Permutation>,
}

pub fn symmetry_generators(beta: &DegreeVector) -> SymmetryGroup {
    let size = 2 * beta.edges();
    let fibers: Vec<_> = beta
        .fibers()
        .into_iter()
        .filter(|r| !r.is_empty())
        .collect();
    let mut generators = Vec::new();
    for f in &fibers {
        for i in f.start..f.end.saturating_sub(1) {
            let mut g: Permutation = (0..size).collect();
            g.swap(i, i + 1);
            generators.push(g);
        }
    }
    for w in fibers.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if a.len() == b.len() {
            let mut g: Permutation = (0..size).collect();
            for r in 0..a.len() {
                g.swap(a.start + r, b.start + r);
            }
            generators.push(g);
        }
    }
    SymmetryGroup {
        degree_vector: beta.clone(),
        fibers,
        generators,
    }
}

impl SymmetryGroup {
    pub fn degree(&self) -> usize {
        2 * self.degree_vector.edges()
    }

    /// `∏_j (j!)^{β_j} · β_j!`: within-fiber symmetries times permutations of
    /// equal-degree vertices.
    pub fn order(&self) -> u128 {
        fn fact(n: usize) -> u128 {
            (1..=n as u128).product()
        }
        self.degree_vector
            .vec()
            .iter()
            .enumerate()
            .map(|(i, &b)| fact(i + 1).pow(b as u32) * fact(b))
            .product()
    }

    /// Every group element, by closure under the generators. Refuses groups
    /// larger than `limit`.
    pub fn elements(&self, limit: usize) -> Result<Vec<Permutation>> {
        let identity: Permutation = (0..self.degree()).collect();
        let mut seen: HashSet<Permutation> = HashSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        let mut out = Vec::new();
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y: Permutation = x.iter().map(|&i| g[i]).collect();
                if seen.insert(y.clone()) {
                    if seen.len() > limit {
                        return Err(Error::InvalidInput(format!(
                            "group has more than {limit} elements"
                        )));
                    }
                    queue.push_back(y);
                }
            }
            out.push(x);
        }
        Ok(out)
    }

    /// Cycle notation with 1-based points, e.g. `(3 5)(4 6)`.
    pub fn cycle_notation(perm: &[usize]) -> String {
        let mut seen = vec![false; perm.len()];
        let mut out = String::new();
        for start in 0..perm.len() {
            if seen[start] || perm[start] == start {
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&(x + 1).to_string());
                first = false;
                x = perm[x];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for SymmetryGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| Self::cycle_notation(g))
            .collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// One `S_β`-orbit of matchings together with the isomorphism class it
/// parametrizes.
#[derive(Clone, Debug, Serialize)]
pub struct Orbit {
    /// Sorted; the first member is the smallest.
    pub members: Vec<PerfectMatching>,
    /// Canonical form of `build_graph(members[0], β)` (with `β0` isolated
    /// vertices when `β0 > 0`).
    pub graph: Multigraph,
}

impl Orbit {
    pub fn representative(&self) -> &PerfectMatching {
        &self.members[0]
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, rho: &PerfectMatching) -> bool {
        self.members.binary_search(rho).is_ok()
    }
}

/// Partition all matchings on `2|β|_E` points into `S_β`-orbits by breadth
/// first closure under the generators. Orbits are ordered by their smallest
/// member.
pub fn orbits(beta: &DegreeVector) -> Vec<Orbit> {
    let all = enumerate_matchings(beta.edges());
    let index: HashMap<&PerfectMatching, usize> =
        all.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let group = symmetry_generators(beta);
    let mut assigned = vec![false; all.len()];
    let mut out = Vec::new();
    for start in 0..all.len() {
        if assigned[start] {
            continue;
        }
        assigned[start] = true;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for g in &group.generators {
                let j = index[&all[i].act(g)];
                if !assigned[j] {
                    assigned[j] = true;
                    members.push(j);
                    queue.push_back(j);
                }
            }
        }
        members.sort_unstable();
        let graph = canonical_form(
            &build_graph(&all[members[0]], beta).expect("matching size equals |β|_E"),
        );
        out.push(Orbit {
            members: members.into_iter().map(|i| all[i].clone()).collect(),
            graph,
        });
    }
    out
}
