use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{canonical_form, DegreeVector, Multigraph, PerfectMatching};
use crate::operator::jet::Jet;
use crate::rational::{ratio_str, Rational};

/// One term `coeff · f^{beta0} · N_γ f` of an operator, with `γ` free of
/// isolated vertices and in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorTerm {
    #[serde(with = "ratio_str")]
    pub coeff: Rational,
    pub beta0: usize,
    pub graph: Multigraph,
}

/// Per-graph contraction schedule: every edge carries one summation index,
/// and vertex `v` reads the jet entry keyed by the labels of the edges in
/// `slots[v]` (a loop is listed twice).
#[derive(Clone, Debug, PartialEq, Eq)]
struct Schedule {
    num_edges: usize,
    slots: Vec<Vec<usize>>,
}

impl Schedule {
    fn new(g: &Multigraph) -> Self {
        let mut slots = vec![Vec::new(); g.num_vertices()];
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            slots[a].push(e);
            slots[b].push(e);
        }
        Self {
            num_edges: g.num_edges(),
            slots,
        }
    }

    fn max_degree(&self) -> usize {
        self.slots.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `Σ_{ℓ: E → {0..d}} ∏_v jet[ℓ(slots[v])]`.
    fn contract(&self, jet: &Jet) -> Rational {
        let d = jet.dim();
        if self.num_edges > 0 && d == 0 {
            return Rational::zero();
        }
        let mut labels = vec![0usize; self.num_edges];
        let mut key = Vec::new();
        let mut total = Rational::zero();
        'labelings: loop {
            let mut prod = Rational::one();
            for slot in &self.slots {
                key.clear();
                key.extend(slot.iter().map(|&e| labels[e]));
                key.sort_unstable();
                let v = jet.get_sorted(&key);
                if v.is_zero() {
                    prod = Rational::zero();
                    break;
                }
                prod *= v;
            }
            if !prod.is_zero() {
                total += prod;
            }
            for l in labels.iter_mut() {
                *l += 1;
                if *l < d {
                    continue 'labelings;
                }
                *l = 0;
            }
            break;
        }
        total
    }
}

/// A rational combination of multigraph operators `Σ c · f^{β0} · N_γ f`,
/// compiled for evaluation on flat space. Terms are keyed by
/// `(beta0, canonical graph)` and merged on construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawExpr", into = "RawExpr")]
pub struct OperatorExpr {
    terms: Vec<OperatorTerm>,
    schedules: Vec<Schedule>,
}

#[derive(Serialize, Deserialize)]
struct RawExpr {
    terms: Vec<OperatorTerm>,
}

impl TryFrom<RawExpr> for OperatorExpr {
    type Error = Error;
    fn try_from(raw: RawExpr) -> Result<Self> {
        Ok(OperatorExpr::from_terms(
            raw.terms.into_iter().map(|t| (t.coeff, t.beta0, t.graph)),
        ))
    }
}

impl From<OperatorExpr> for RawExpr {
    fn from(e: OperatorExpr) -> Self {
        RawExpr { terms: e.terms }
    }
}

impl OperatorExpr {
    /// `coeff · f^{beta0} · N_γ`. Isolated vertices of `γ` are folded into
    /// `beta0`.
    pub fn compile(graph: &Multigraph, beta0: usize, coeff: Rational) -> Self {
        Self::from_terms([(coeff, beta0, graph.clone())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, usize, Multigraph)>) -> Self {
        let mut merged: BTreeMap<(usize, Multigraph), Rational> = BTreeMap::new();
        for (coeff, beta0, graph) in terms {
            let (isolated, core) = graph.split_isolated();
            let key = (beta0 + isolated, canonical_form(&core));
            *merged.entry(key).or_insert_with(Rational::zero) += coeff;
        }
        let terms: Vec<OperatorTerm> = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((beta0, graph), coeff)| OperatorTerm {
                coeff,
                beta0,
                graph,
            })
            .collect();
        let schedules = terms.iter().map(|t| Schedule::new(&t.graph)).collect();
        Self { terms, schedules }
    }

    pub fn terms(&self) -> &[OperatorTerm] {
        &self.terms
    }

    /// Highest vertex degree over all terms; the jet order evaluation needs.
    pub fn max_degree(&self) -> usize {
        self.schedules
            .iter()
            .map(Schedule::max_degree)
            .max()
            .unwrap_or(0)
    }

    /// Multiply every term by `f^{extra}`.
    pub fn with_extra_beta0(&self, extra: usize) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| (t.coeff.clone(), t.beta0 + extra, t.graph.clone())),
        )
    }

    pub fn evaluate(&self, jet: &Jet) -> Result<Rational> {
        let need = self.max_degree();
        if need > jet.order() {
            return Err(Error::InsufficientJetOrder {
                required: need,
                available: jet.order(),
            });
        }
        let f = jet.value();
        let mut total = Rational::zero();
        for (term, schedule) in self.terms.iter().zip(&self.schedules) {
            let fpow = num_traits::pow(f.clone(), term.beta0);
            if fpow.is_zero() {
                continue;
            }
            total += &term.coeff * fpow * schedule.contract(jet);
        }
        Ok(total)
    }
}

/// `N_γ f` at the jet's base point for `γ` exactly as labeled, without
/// canonicalizing; isolated vertices contribute a factor `f(x)` each.
pub fn evaluate_graph(graph: &Multigraph, jet: &Jet) -> Result<Rational> {
    let schedule = Schedule::new(graph);
    if schedule.max_degree() > jet.order() {
        return Err(Error::InsufficientJetOrder {
            required: schedule.max_degree(),
            available: jet.order(),
        });
    }
    Ok(schedule.contract(jet))
}

/// `Ñ(ρ, β) f`: the full tensor `⊗_v ∇^{deg v} f` contracted against `τ_ρ`,
/// summing over every index tuple in `{0..d}^{2p}`. Independent of the graph
/// schedule; used to cross-check it.
pub fn evaluate_parametrized(
    rho: &PerfectMatching,
    beta: &DegreeVector,
    jet: &Jet,
) -> Result<Rational> {
    if beta.edges() != rho.p() {
        return Err(Error::EdgeCountMismatch {
            beta_edges: beta.edges(),
            matching_pairs: rho.p(),
        });
    }
    if beta.order() > jet.order() {
        return Err(Error::InsufficientJetOrder {
            required: beta.order(),
            available: jet.order(),
        });
    }
    let d = jet.dim();
    let len = 2 * rho.p();
    let fibers: Vec<_> = beta
        .fibers()
        .into_iter()
        .filter(|r| !r.is_empty())
        .collect();
    let fpow = num_traits::pow(jet.value().clone(), beta.beta0());
    let mut t = vec![0usize; len];
    let mut total = Rational::zero();
    'tuples: loop {
        if rho.pairs().iter().all(|&(a, b)| t[a] == t[b]) {
            let mut prod = Rational::one();
            for f in &fibers {
                prod *= jet.get(&t[f.clone()]).expect("order checked");
            }
            total += prod;
        }
        for x in t.iter_mut().rev() {
            *x += 1;
            if *x < d {
                continue 'tuples;
            }
            *x = 0;
        }
        break;
    }
    Ok(fpow * total)
}
