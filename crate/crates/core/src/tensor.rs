//! The O(d)-invariant tensors `τ_ρ(x_1, …, x_{2p}) = ∏_{{a,b}∈ρ} ⟨x_a, x_b⟩`
//! and the exact kernel of `c ↦ Σ_ρ c_ρ τ_ρ` in a fixed dimension.
//!
//! A combination vanishes iff it vanishes on every basis tuple
//! `e_{t_1} ⊗ … ⊗ e_{t_{2p}}`, so the map is represented by the 0/1
//! evaluation matrix with one row per matching and one column per index
//! tuple. Everything here is exact; there is no floating point.

use std::collections::HashSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{normalized_row_basis, RationalMatrix};
use crate::multigraph::{
    double_factorial, enumerate_matchings, orbits, DegreeVector, PerfectMatching,
};
use crate::rational::{int, ratio_matrix_str, Rational};

/// Environment variable overriding the default cell ceiling.
pub const MAX_CELLS_ENV: &str = "GRAPHOP_MAX_CELLS";

/// Upper bound on `rows × columns` of an evaluation matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellLimit(pub u64);

impl Default for CellLimit {
    fn default() -> Self {
        CellLimit(10_000_000)
    }
}

impl CellLimit {
    /// The default, unless `GRAPHOP_MAX_CELLS` holds a valid integer.
    pub fn from_env() -> Self {
        std::env::var(MAX_CELLS_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map_or_else(Self::default, CellLimit)
    }

    fn check(self, p: usize, d: usize) -> Result<()> {
        let cells = double_factorial(p).saturating_mul((d as u128).saturating_pow(2 * p as u32));
        if cells > self.0 as u128 {
            return Err(Error::ResourceGuard {
                cells,
                limit: self.0,
            });
        }
        Ok(())
    }
}

/// A tuple of `2p` basis-vector indices, each in `1..=d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexTuple(Vec<usize>);

impl IndexTuple {
    pub fn new(entries: Vec<usize>, d: usize) -> Result<Self> {
        if !entries.len().is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "index tuple must have even length, got {}",
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e == 0 || e > d) {
            return Err(Error::InvalidInput(format!("index {bad} outside 1..={d}")));
        }
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }
}

/// Every tuple in `{1..d}^{len}`, lexicographic with the first entry most
/// significant.
fn all_tuples(len: usize, d: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (d as u64).pow(len as u32);
    (0..total).map(move |mut k| {
        let mut t = vec![1; len];
        for slot in t.iter_mut().rev() {
            *slot = (k % d as u64) as usize + 1;
            k /= d as u64;
        }
        t
    })
}

fn tau_raw(partners: &[(usize, usize)], t: &[usize]) -> bool {
    partners.iter().all(|&(a, b)| t[a] == t[b])
}

/// `τ_ρ(e_{t_1}, …, e_{t_{2p}})`, a product of Kronecker deltas.
pub fn tau_eval(rho: &PerfectMatching, t: &IndexTuple) -> Result<u8> {
    if t.0.len() != 2 * rho.p() {
        return Err(Error::LengthMismatch {
            expected: 2 * rho.p(),
            actual: t.0.len(),
        });
    }
    Ok(tau_raw(rho.pairs(), &t.0) as u8)
}

/// Rows: `enumerate_matchings(p)`; columns: all `d^{2p}` index tuples.
pub fn evaluation_matrix(p: usize, d: usize, limit: CellLimit) -> Result<RationalMatrix> {
    if d == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    limit.check(p, d)?;
    let rows = enumerate_matchings(p);
    let cols = d.pow(2 * p as u32);
    let mut m = RationalMatrix::zeros(rows.len(), cols);
    for (c, t) in all_tuples(2 * p, d).enumerate() {
        for (r, rho) in rows.iter().enumerate() {
            if tau_raw(rho.pairs(), &t) {
                m[(r, c)] = int(1);
            }
        }
    }
    Ok(m)
}

/// Distinct nonzero columns of the evaluation matrix, as 0/1 rows over the
/// matchings. Dropping repeated and zero columns changes neither the rank
/// nor the left nullspace.
fn distinct_columns(
    rows: &[PerfectMatching],
    tuples: impl Iterator<Item = Vec<usize>>,
) -> Vec<Vec<bool>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for t in tuples {
        let col: Vec<bool> = rows.iter().map(|rho| tau_raw(rho.pairs(), &t)).collect();
        if col.iter().any(|&b| b) && seen.insert(col.clone()) {
            out.push(col);
        }
    }
    out
}

fn transpose_to_matrix(cols: &[Vec<bool>], n_rows: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(cols.len(), n_rows);
    for (i, col) in cols.iter().enumerate() {
        for (j, &b) in col.iter().enumerate() {
            if b {
                m[(i, j)] = int(1);
            }
        }
    }
    m
}

/// Basis of `{c : Σ_ρ c_ρ τ_ρ = 0}` in dimension `d`, indexed by the
/// lexicographic matching order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelBasis {
    pub p: usize,
    pub d: usize,
    pub matching_order: Vec<PerfectMatching>,
    /// RREF rows with denominators cleared and a positive leading entry.
    #[serde(with = "ratio_matrix_str")]
    pub basis: Vec<Vec<Rational>>,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Check every basis vector against every one of the `d^{2p}` tuples.
    pub fn verify(&self) -> bool {
        all_tuples(2 * self.p, self.d).all(|t| {
            self.basis.iter().all(|c| {
                c.iter()
                    .zip(&self.matching_order)
                    .filter(|(_, rho)| tau_raw(rho.pairs(), &t))
                    .fold(Rational::zero(), |acc, (x, _)| acc + x)
                    .is_zero()
            })
        })
    }
}

pub fn kernel(p: usize, d: usize, limit: CellLimit) -> Result<KernelBasis> {
    if d == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    limit.check(p, d)?;
    let rows = enumerate_matchings(p);
    let cols = distinct_columns(&rows, all_tuples(2 * p, d));
    let mt = transpose_to_matrix(&cols, rows.len());
    let basis = normalized_row_basis(&mt.nullspace(), rows.len());
    Ok(KernelBasis {
        p,
        d,
        matching_order: rows,
        basis,
    })
}

/// Kernel in dimension 2 from the reduced column set: tuples with an even
/// number of 2's, at most `p` of them. An odd count is killed by the
/// reflection `diag(1, -1)`, and swapping the two coordinates maps `k` twos to
/// `2p - k`.
pub fn kernel_parity_reduced_d2(p: usize, limit: CellLimit) -> Result<KernelBasis> {
    limit.check(p, 2)?;
    let rows = enumerate_matchings(p);
    let tuples = all_tuples(2 * p, 2).filter(|t| {
        let twos = t.iter().filter(|&&x| x == 2).count();
        twos % 2 == 0 && twos <= p
    });
    let cols = distinct_columns(&rows, tuples);
    let mt = transpose_to_matrix(&cols, rows.len());
    let basis = normalized_row_basis(&mt.nullspace(), rows.len());
    Ok(KernelBasis {
        p,
        d: 2,
        matching_order: rows,
        basis,
    })
}

/// Rank of the evaluation matrix, i.e. `dim T_d^{2p}`.
pub fn rank(p: usize, d: usize, limit: CellLimit) -> Result<usize> {
    if d == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    limit.check(p, d)?;
    let rows = enumerate_matchings(p);
    let cols = distinct_columns(&rows, all_tuples(2 * p, d));
    Ok(transpose_to_matrix(&cols, rows.len()).rank())
}

/// Per-orbit sums `Σ_{ρ∈O} c_ρ` over the `S_β`-orbits of `orbits(β)`, in that
/// order. These are the coefficients of `Σ_ρ c_ρ Ñ(ρ, β)` on the orbit classes.
pub fn average_over_symmetry(c: &[Rational], beta: &DegreeVector) -> Result<Vec<Rational>> {
    let p = beta.edges();
    let n = double_factorial(p) as usize;
    if c.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: c.len(),
        });
    }
    Ok(orbits(beta)
        .iter()
        .map(|o| {
            o.members
                .iter()
                .map(|rho| &c[rho.lex_index()])
                .fold(Rational::zero(), |acc, x| acc + x)
        })
        .collect())
}

/// The `S_β`-average of `c` as a vector on all matchings: each entry becomes
/// the mean of `c` over its orbit.
pub fn symmetrize(c: &[Rational], beta: &DegreeVector) -> Result<Vec<Rational>> {
    let sums = average_over_symmetry(c, beta)?;
    let mut out = vec![Rational::zero(); c.len()];
    for (o, s) in orbits(beta).iter().zip(sums) {
        let mean = s / int(o.size() as i64);
        for rho in &o.members {
            out[rho.lex_index()] = mean.clone();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn m1(pairs: &[(usize, usize)]) -> PerfectMatching {
        PerfectMatching::from_one_based(pairs).unwrap()
    }

    #[test]
    fn tau_examples() {
        let t = IndexTuple::new(vec![2, 2, 1, 1, 1, 1], 2).unwrap();
        assert_eq!(tau_eval(&m1(&[(1, 2), (3, 4), (5, 6)]), &t).unwrap(), 1);
        assert_eq!(tau_eval(&m1(&[(1, 3), (2, 4), (5, 6)]), &t).unwrap(), 0);
        let ones = IndexTuple::new(vec![1; 6], 3).unwrap();
        for rho in enumerate_matchings(3) {
            assert_eq!(tau_eval(&rho, &ones).unwrap(), 1);
        }
        assert_eq!(
            tau_eval(
                &PerfectMatching::empty(),
                &IndexTuple::new(vec![], 2).unwrap()
            )
            .unwrap(),
            1
        );
        assert!(matches!(
            tau_eval(&m1(&[(1, 2)]), &ones),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(IndexTuple::new(vec![0, 1], 2).is_err());
        assert!(IndexTuple::new(vec![3, 1], 2).is_err());
    }

    #[test]
    fn small_evaluation_matrices() {
        let m = evaluation_matrix(0, 5, CellLimit::default()).unwrap();
        assert_eq!(m, RationalMatrix::from_i64_rows(&[vec![1]]));
        let m = evaluation_matrix(1, 2, CellLimit::default()).unwrap();
        assert_eq!(m, RationalMatrix::from_i64_rows(&[vec![1, 0, 0, 1]]));
    }

    #[test]
    fn resource_guard() {
        assert!(matches!(
            evaluation_matrix(3, 2, CellLimit(100)),
            Err(Error::ResourceGuard {
                cells: 960,
                limit: 100
            })
        ));
        assert!(matches!(
            kernel(6, 10, CellLimit::default()),
            Err(Error::ResourceGuard { .. })
        ));
        assert!(kernel(2, 0, CellLimit::default()).is_err());
    }

    #[test]
    fn kernel_dimensions() {
        assert_eq!(kernel(2, 2, CellLimit::default()).unwrap().dim(), 0);
        let k = kernel(2, 1, CellLimit::default()).unwrap();
        assert_eq!(k.dim(), 2);
        assert!(k.verify());
        assert_eq!(rank(0, 3, CellLimit::default()).unwrap(), 1);
        assert_eq!(rank(3, 3, CellLimit::default()).unwrap(), 15);
        assert_eq!(rank(3, 2, CellLimit::default()).unwrap(), 10);
    }

    #[test]
    fn parity_reduction_agrees() {
        for p in 1..=4 {
            assert_eq!(
                kernel_parity_reduced_d2(p, CellLimit::default()).unwrap(),
                kernel(p, 2, CellLimit::default()).unwrap()
            );
        }
    }

    #[test]
    fn averaging_checks_length() {
        let beta = DegreeVector::new(0, vec![2]).unwrap();
        assert!(average_over_symmetry(&[int(1), int(2)], &beta).is_err());
        assert_eq!(
            average_over_symmetry(&[frac(1, 3)], &beta).unwrap(),
            vec![frac(1, 3)]
        );
    }

    #[test]
    fn kernel_json_round_trip() {
        let k = kernel(2, 1, CellLimit::default()).unwrap();
        let s = serde_json::to_string(&k).unwrap();
        assert!(s.contains(r#""matching_order":[[[1,2],[3,4]],"#));
        let back: KernelBasis = serde_json::from_str(&s).unwrap();
        assert_eq!(back, k);
    }
}
