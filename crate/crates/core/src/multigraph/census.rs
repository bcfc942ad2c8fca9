use crate::multigraph::graph::{canonical_form, disjoint_union, DegreeVector, Multigraph};
use crate::multigraph::symmetry::orbits;

/// All degree vectors with `β0 = 0` and `|β|_E = p`, i.e. the partitions of
/// `2p` read as vertex degrees. Ordered by vertex count, then by the
/// ascending degree sequence in decreasing lexicographic order.
pub fn enumerate_degree_vectors(p: usize) -> Vec<DegreeVector> {
    fn partitions(
        rest: usize,
        min_part: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if rest == 0 {
            out.push(current.clone());
            return;
        }
        for part in min_part..=rest {
            current.push(part);
            partitions(rest - part, part, current, out);
            current.pop();
        }
    }
    let mut parts = Vec::new();
    partitions(2 * p, 1, &mut Vec::new(), &mut parts);
    parts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)));
    parts
        .into_iter()
        .map(|degrees| DegreeVector::from_degrees(&degrees).expect("partition of an even number"))
        .collect()
}

/// One canonical representative per isomorphism class with exactly
/// `p_exact` edges and between 0 and `max_isolated` isolated vertices.
///
/// With `connected_only`, only connected graphs are kept; for `p_exact > 0`
/// this rules out isolated vertices altogether, while for `p_exact = 0` the
/// null graph and (if allowed) the single vertex remain.
pub fn enumerate_classes(
    p_exact: usize,
    connected_only: bool,
    max_isolated: usize,
) -> Vec<Multigraph> {
    let cores: Vec<Multigraph> = enumerate_degree_vectors(p_exact)
        .iter()
        .flat_map(|beta| orbits(beta).into_iter().map(|o| o.graph))
        .collect();
    let mut out = Vec::new();
    for beta0 in 0..=max_isolated {
        if connected_only && p_exact > 0 && beta0 > 0 {
            break;
        }
        let dots = Multigraph::isolated(beta0);
        for core in &cores {
            let g = canonical_form(&disjoint_union(&dots, core));
            if !connected_only || g.is_connected() {
                out.push(g);
            }
        }
    }
    out
}
