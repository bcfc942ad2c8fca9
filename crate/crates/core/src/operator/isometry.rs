use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::operator::polynomial::Polynomial;
use crate::rational::Rational;

/// `x ↦ Qx + b` with `QᵀQ = I` checked exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineIsometry {
    q: RationalMatrix,
    b: Vec<Rational>,
}

impl AffineIsometry {
    pub fn new(q: RationalMatrix, b: Vec<Rational>) -> Result<Self> {
        let d = q.nrows();
        if q.ncols() != d || b.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: if q.ncols() != d { q.ncols() } else { b.len() },
            });
        }
        if q.transpose().mul(&q)? != RationalMatrix::identity(d) {
            return Err(Error::InvalidInput("matrix is not orthogonal".into()));
        }
        Ok(Self { q, b })
    }

    pub fn linear(q: RationalMatrix) -> Result<Self> {
        let d = q.nrows();
        Self::new(q, vec![Rational::zero(); d])
    }

    pub fn translation(b: Vec<Rational>) -> Self {
        Self {
            q: RationalMatrix::identity(b.len()),
            b,
        }
    }

    /// `x_1 ↦ -x_1`, orientation reversing.
    pub fn first_coordinate_flip(d: usize) -> Self {
        let mut q = RationalMatrix::identity(d);
        q[(0, 0)] = -Rational::one();
        Self {
            q,
            b: vec![Rational::zero(); d],
        }
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.q
    }

    pub fn offset(&self) -> &[Rational] {
        &self.b
    }

    pub fn apply(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        Ok(self
            .q
            .mul_vec(x)?
            .into_iter()
            .zip(&self.b)
            .map(|(a, b)| a + b)
            .collect())
    }
}

/// `Q = (I − S)(I + S)^{-1}` for a skew-symmetric `S`; always orthogonal
/// with determinant +1.
pub fn cayley_orthogonal(s: &RationalMatrix) -> Result<RationalMatrix> {
    let d = s.nrows();
    if s.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: s.ncols(),
        });
    }
    if *s != negate(&s.transpose()) {
        return Err(Error::InvalidInput("matrix is not skew-symmetric".into()));
    }
    let id = RationalMatrix::identity(d);
    let mut minus = id.clone();
    let mut plus = id;
    for i in 0..d {
        for j in 0..d {
            minus[(i, j)] -= &s[(i, j)];
            plus[(i, j)] += &s[(i, j)];
        }
    }
    minus.mul(&plus.inverse()?)
}

fn negate(m: &RationalMatrix) -> RationalMatrix {
    let mut out = m.clone();
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out[(i, j)] = -m[(i, j)].clone();
        }
    }
    out
}

/// `f ∘ φ`.
pub fn compose_with_isometry(f: &Polynomial, phi: &AffineIsometry) -> Result<Polynomial> {
    f.compose_affine(&phi.q, &phi.b)
}
