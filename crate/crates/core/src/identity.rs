//! Dimension-dependent linear relations between multigraph operators.
//!
//! For `p > d` the invariant-tensor map on matchings has a kernel. Summing a
//! kernel vector over the `S_β`-orbits of a degree vector `β` gives
//! coefficients on the multigraph classes with that degree vector whose
//! operator combination vanishes identically in dimension `d`. Every emitted
//! relation can be re-checked on random jets and shown to be nonzero in a
//! higher dimension.

use itertools::Itertools;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{independent_subset, RationalMatrix};
use crate::multigraph::{enumerate_degree_vectors, orbits, DegreeVector, Multigraph};
use crate::operator::sampling::{self, monomials_up_to};
use crate::operator::{Jet, OperatorExpr, Polynomial};
use crate::rational::{frac, int, leading_positive, primitive_integer_vector, ratio_str, Rational};
use crate::tensor::{average_over_symmetry, kernel, CellLimit};

/// Minimum number of random jets before a relation counts as verified.
pub const MIN_VERIFY_TRIALS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityTerm {
    #[serde(with = "ratio_str")]
    pub coeff: Rational,
    pub graph: Multigraph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Row of the normalized kernel basis the relation was averaged from.
    pub kernel_row: usize,
    /// That kernel row, indexed by the lexicographic matching order.
    #[serde(with = "ratio_vec_str")]
    pub matching_vector: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub beta0: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub dim: usize,
    /// Polynomial in `x1..x_dim`, parseable by [`Polynomial::parse`].
    pub poly: String,
    #[serde(with = "ratio_vec_str")]
    pub point: Vec<Rational>,
    #[serde(with = "ratio_str")]
    pub value: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityStatus {
    pub verified_zero: Option<Verification>,
    pub witnessed_nonzero: Option<Witness>,
}

/// `Σ coeff · N_γ = 0` in dimension `dim`, for all classes `γ` sharing the
/// degree vector `beta`. Stored with `β0 = 0`; multiplying by `f^{β0}`
/// preserves the relation for every `β0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identity {
    pub dim: usize,
    pub beta: DegreeVector,
    /// Canonical class order; integer coefficients with gcd 1 and the first
    /// one positive.
    pub terms: Vec<IdentityTerm>,
    pub status: IdentityStatus,
    pub provenance: Provenance,
}

mod ratio_vec_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(crate::rational::to_ratio_string).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| crate::rational::parse_ratio(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)
    }
}

impl Identity {
    /// Build from class coefficients, normalizing order, scale and sign and
    /// dropping zero coefficients.
    pub fn new(
        dim: usize,
        beta: DegreeVector,
        classes: Vec<(Multigraph, Rational)>,
        provenance: Provenance,
    ) -> Result<Self> {
        let mut classes: Vec<_> = classes.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if classes.is_empty() {
            return Err(Error::InvalidInput(
                "identity has no nonzero coefficient".into(),
            ));
        }
        classes.sort_by(|a, b| a.0.cmp(&b.0));
        let coeffs: Vec<Rational> = classes.iter().map(|(_, c)| c.clone()).collect();
        let mut coeffs = primitive_integer_vector(&coeffs);
        leading_positive(&mut coeffs);
        Ok(Self {
            dim,
            beta: beta.with_beta0(0),
            terms: classes
                .into_iter()
                .zip(coeffs)
                .map(|((graph, _), coeff)| IdentityTerm { coeff, graph })
                .collect(),
            status: IdentityStatus::default(),
            provenance,
        })
    }

    /// The same coefficients claimed in another dimension, status cleared.
    pub fn in_dimension(&self, dim: usize) -> Self {
        Self {
            dim,
            status: IdentityStatus::default(),
            ..self.clone()
        }
    }

    pub fn coefficient_of(&self, g: &Multigraph) -> Rational {
        let g = crate::multigraph::canonical_form(g);
        self.terms
            .iter()
            .find(|t| t.graph == g)
            .map_or_else(Rational::zero, |t| t.coeff.clone())
    }

    /// `f^{beta0} · Σ coeff · N_γ` as an operator.
    pub fn operator(&self, beta0: usize) -> OperatorExpr {
        OperatorExpr::from_terms(
            self.terms
                .iter()
                .map(|t| (t.coeff.clone(), beta0, t.graph.clone())),
        )
    }

    pub fn evaluate(&self, f: &Polynomial, x: &[Rational], beta0: usize) -> Result<Rational> {
        let op = self.operator(beta0);
        op.evaluate(&Jet::of(f, x, op.max_degree())?)
    }
}

/// All relations among the exactly-`p`-edge classes in dimension `d`, one
/// maximal independent set per degree vector, in degree-vector order.
pub fn discover(d: usize, p: usize, limit: CellLimit) -> Result<Vec<Identity>> {
    if d == 0 || p == 0 {
        return Err(Error::InvalidInput(
            "discover needs d >= 1 and p >= 1".into(),
        ));
    }
    if p <= d {
        return Ok(Vec::new());
    }
    let k = kernel(p, d, limit)?;
    let mut out = Vec::new();
    for beta in enumerate_degree_vectors(p) {
        let os = orbits(&beta);
        let averaged = k
            .basis
            .iter()
            .map(|c| average_over_symmetry(c, &beta))
            .collect::<Result<Vec<_>>>()?;
        for row in independent_subset(&averaged, os.len()) {
            let classes = os
                .iter()
                .zip(&averaged[row])
                .map(|(o, c)| (o.graph.clone(), c.clone()))
                .collect();
            out.push(Identity::new(
                d,
                beta.clone(),
                classes,
                Provenance {
                    kernel_row: row,
                    matching_vector: k.basis[row].clone(),
                },
            )?);
        }
    }
    Ok(out)
}

/// Evaluate the relation on `trials` seeded random jets in `id.dim`, each for
/// `β0 ∈ {0, 1, 2}`; every value must be exactly zero.
pub fn verify_identity(id: &Identity, trials: usize, seed: u64) -> Result<Identity> {
    if trials < MIN_VERIFY_TRIALS {
        return Err(Error::InvalidInput(format!(
            "verification needs at least {MIN_VERIFY_TRIALS} trials, got {trials}"
        )));
    }
    let beta0s = vec![0, 1, 2];
    let ops: Vec<OperatorExpr> = beta0s.iter().map(|&b| id.operator(b)).collect();
    let order = ops[0].max_degree();
    let mut rng = sampling::rng(seed);
    for _ in 0..trials {
        let f = sampling::random_polynomial(&mut rng, id.dim, order as u32 + 1);
        let x = sampling::random_point(&mut rng, id.dim);
        let jet = Jet::of(&f, &x, order)?;
        for op in &ops {
            let value = op.evaluate(&jet)?;
            if !value.is_zero() {
                return Err(Error::VerificationFailure {
                    poly: f.to_string(),
                    point: x.iter().map(|q| q.to_string()).collect(),
                    value,
                });
            }
        }
    }
    let mut out = id.clone();
    out.status.verified_zero = Some(Verification {
        dim: id.dim,
        trials,
        seed,
        beta0: beta0s,
    });
    Ok(out)
}

pub const DEFAULT_WITNESS_BUDGET: usize = 10_000;

/// Deterministic search for a polynomial and point where the relation is
/// nonzero in dimension `d_prime` (with `β0 = 0`).
///
/// Candidates have total degree 2, then 3; within a degree, polynomials are
/// taken by increasing number of non-constant monomials, coefficients from
/// `{1, -1, 2, -2}`. Each is evaluated at the origin and then at `(1, …, 1)`.
pub fn witness_nonzero(id: &Identity, d_prime: usize, budget: usize) -> Result<Witness> {
    if d_prime <= id.dim {
        return Err(Error::InvalidInput(format!(
            "witness dimension {d_prime} must exceed the identity's dimension {}",
            id.dim
        )));
    }
    let op = id.operator(0);
    let order = op.max_degree();
    let points = [vec![int(0); d_prime], vec![int(1); d_prime]];
    let coeff_choices = [int(1), int(-1), int(2), int(-2)];
    let mut evaluations = 0usize;
    for degree in [2u32, 3] {
        let monos: Vec<Vec<u32>> = monomials_up_to(d_prime, degree)
            .into_iter()
            .filter(|e| e.iter().sum::<u32>() > 0)
            .collect();
        for support in 1..=monos.len() {
            for combo in monos.iter().combinations(support) {
                if !combo.iter().any(|e| e.iter().sum::<u32>() == degree) {
                    continue;
                }
                for coeffs in
                    std::iter::repeat_n(coeff_choices.iter(), support).multi_cartesian_product()
                {
                    let f = Polynomial::from_terms(
                        d_prime,
                        combo
                            .iter()
                            .zip(coeffs)
                            .map(|(e, c)| ((*e).clone(), c.clone())),
                    )?;
                    for x in &points {
                        if evaluations == budget {
                            return Err(Error::WitnessNotFound { budget });
                        }
                        evaluations += 1;
                        let value = op.evaluate(&Jet::of(&f, x, order)?)?;
                        if !value.is_zero() {
                            return Ok(Witness {
                                dim: d_prime,
                                poly: f.to_string(),
                                point: x.clone(),
                                value,
                            });
                        }
                    }
                }
            }
        }
    }
    Err(Error::WitnessNotFound { budget })
}

/// `(tr A)³ − 3 tr(A²) tr A + 2 tr(A³)`, which equals `6 det A` for 3×3
/// matrices and vanishes for 2×2 ones.
pub fn power_sum_combination(a: &RationalMatrix) -> Result<Rational> {
    let a2 = a.mul(a)?;
    let a3 = a2.mul(a)?;
    let tr = |m: &RationalMatrix| (0..m.nrows()).fold(Rational::zero(), |acc, i| acc + &m[(i, i)]);
    let (p1, p2, p3) = (tr(a), tr(&a2), tr(&a3));
    Ok(&p1 * &p1 * &p1 - int(3) * &p1 * p2 + int(2) * p3)
}

/// Cayley–Hamilton check of the triangle relation on random rational
/// symmetric 2×2 matrices, bypassing jets and graphs entirely.
pub fn cayley_hamilton_check(d: usize, trials: usize, seed: u64) -> Result<bool> {
    if d != 2 {
        return Err(Error::InvalidInput(format!(
            "the Cayley–Hamilton check applies to d = 2, got {d}"
        )));
    }
    let mut rng = sampling::rng(seed);
    let mut draw = || frac(rng.gen_range(-20..=20), rng.gen_range(1..=7));
    for _ in 0..trials {
        let (a, b, c) = (draw(), draw(), draw());
        let m = RationalMatrix::from_rows(vec![vec![a, b.clone()], vec![b, c]], 2)?;
        if !power_sum_combination(&m)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

impl Identity {
    pub fn coefficient_vector(&self) -> Vec<Rational> {
        self.terms.iter().map(|t| t.coeff.clone()).collect()
    }

    pub fn is_verified(&self) -> bool {
        self.status.verified_zero.is_some()
    }
}
