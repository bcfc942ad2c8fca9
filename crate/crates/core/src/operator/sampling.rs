//! Seeded random test inputs. Everything is drawn from a ChaCha stream so a
//! seed reproduces the same polynomials on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::RationalMatrix;
use crate::operator::polynomial::Polynomial;
use crate::rational::{frac, int, Rational};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All exponent vectors in `dim` variables with total degree `<= degree`,
/// ordered by total degree then lexicographically.
pub fn monomials_up_to(dim: usize, degree: u32) -> Vec<Vec<u32>> {
    fn go(dim: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == dim {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in (0..=left).rev() {
            cur.push(k);
            go(dim, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for total in 0..=degree {
        go(dim, total, &mut Vec::new(), &mut out);
    }
    out
}

/// Dense polynomial of total degree `<= degree` with integer coefficients
/// uniform in `[-9, 9]`.
pub fn random_polynomial(rng: &mut SeededRng, dim: usize, degree: u32) -> Polynomial {
    let terms = monomials_up_to(dim, degree)
        .into_iter()
        .map(|e| (e, int(rng.gen_range(-9..=9))));
    Polynomial::from_terms(dim, terms).expect("exponent vectors have length dim")
}

/// Integer point with coordinates in `[-3, 3]`.
pub fn random_point(rng: &mut SeededRng, dim: usize) -> Vec<Rational> {
    (0..dim).map(|_| int(rng.gen_range(-3..=3))).collect()
}

/// Skew-symmetric matrix with entries `a/b`, `a ∈ [-3, 3]`, `b ∈ [1, 3]`.
pub fn random_skew(rng: &mut SeededRng, dim: usize) -> RationalMatrix {
    let mut s = RationalMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i + 1..dim {
            let v = frac(rng.gen_range(-3..=3), rng.gen_range(1..=3));
            s[(j, i)] = -v.clone();
            s[(i, j)] = v;
        }
    }
    s
}
