//! Flat-space evaluation of multigraph operators on polynomial test
//! functions, and exact equivariance and independence checks.

mod expr;
mod isometry;
mod jet;
mod polynomial;
pub mod sampling;

pub use expr::{evaluate_graph, evaluate_parametrized, OperatorExpr, OperatorTerm};
pub use isometry::{cayley_orthogonal, compose_with_isometry, AffineIsometry};
pub use jet::Jet;
pub use polynomial::Polynomial;

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::multigraph::Multigraph;
use crate::rational::{int, Rational};

/// Anything that maps a jet of `f` at a point to a number.
pub trait JetOperator {
    /// Jet order required by [`JetOperator::apply`].
    fn jet_order(&self) -> usize;
    fn apply(&self, jet: &Jet) -> Result<Rational>;
}

impl JetOperator for OperatorExpr {
    fn jet_order(&self) -> usize {
        self.max_degree()
    }

    fn apply(&self, jet: &Jet) -> Result<Rational> {
        self.evaluate(jet)
    }
}

/// Outcome of an equivariance check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivariance {
    Holds,
    /// First point where `P(f∘φ)(x) ≠ (Pf)(φ(x))`.
    Violated {
        point: Vec<Rational>,
        lhs: Rational,
        rhs: Rational,
    },
}

impl Equivariance {
    pub fn holds(&self) -> bool {
        matches!(self, Equivariance::Holds)
    }
}

/// Compare `expr` applied to `f ∘ φ` at `x` with `expr` applied to `f` at
/// `φ(x)`, exactly, for every sample point.
pub fn check_equivariance<O: JetOperator + ?Sized>(
    op: &O,
    f: &Polynomial,
    phi: &AffineIsometry,
    points: &[Vec<Rational>],
) -> Result<Equivariance> {
    if phi.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            actual: phi.dim(),
        });
    }
    let order = op.jet_order();
    let pulled = compose_with_isometry(f, phi)?;
    for x in points {
        let lhs = op.apply(&Jet::of(&pulled, x, order)?)?;
        let rhs = op.apply(&Jet::of(f, &phi.apply(x)?, order)?)?;
        if lhs != rhs {
            return Ok(Equivariance::Violated {
                point: x.clone(),
                lhs,
                rhs,
            });
        }
    }
    Ok(Equivariance::Holds)
}

/// Exact rank of the `trials × classes` matrix of operator values on seeded
/// random polynomial jets in dimension `d`. A lower bound on the dimension
/// of the span of the operators, attained for generic samples.
pub fn independence_rank(
    classes: &[(usize, Multigraph)],
    d: usize,
    trials: usize,
    seed: u64,
) -> Result<usize> {
    if trials < classes.len() {
        return Err(Error::InvalidInput(format!(
            "need at least {} trials, got {trials}",
            classes.len()
        )));
    }
    if d == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    let exprs: Vec<OperatorExpr> = classes
        .iter()
        .map(|(beta0, g)| OperatorExpr::compile(g, *beta0, int(1)))
        .collect();
    let order = exprs
        .iter()
        .map(OperatorExpr::max_degree)
        .max()
        .unwrap_or(0);
    let mut rng = sampling::rng(seed);
    let mut rows = Vec::with_capacity(trials);
    for _ in 0..trials {
        let f = sampling::random_polynomial(&mut rng, d, order as u32 + 1);
        let x = sampling::random_point(&mut rng, d);
        let jet = Jet::of(&f, &x, order)?;
        rows.push(
            exprs
                .iter()
                .map(|e| e.evaluate(&jet))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(RationalMatrix::from_rows(rows, classes.len())?.rank())
}
