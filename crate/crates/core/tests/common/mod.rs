#![allow(dead_code)]

use graphop::rational::int;
use graphop::{Multigraph, Polynomial, Rational};

pub fn g(n: usize, edges: &[(usize, usize)]) -> Multigraph {
    Multigraph::new(n, edges.iter().copied()).unwrap()
}

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// Columns `e_(ij)`: 1-based positions of the two indices equal to 2, in
/// lexicographic order of `(i, j)`.
pub fn two_positions() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=6 {
        for j in i + 1..=6 {
            out.push((i, j));
        }
    }
    out
}

/// Values of the 15 pairings on the 15 tuples `e_(ij)` in dimension 2.
pub const REFERENCE_M: [[i64; 15]; 15] = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0],
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0],
    [0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0],
    [0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0],
];

/// Kernel of the 15 pairings in dimension 2, reduced row echelon form.
pub const REFERENCE_K: [[i64; 15]; 5] = [
    [1, 0, -1, 0, 0, 0, -1, 0, 1, 0, 1, -1, 1, -1, 0],
    [0, 1, -1, 0, 0, 0, 0, 0, 0, -1, 1, 0, 1, -1, 0],
    [0, 0, 0, 1, 0, -1, -1, 0, 1, 0, 0, 0, 1, -1, 0],
    [0, 0, 0, 0, 1, -1, 0, 0, 0, -1, 0, 1, 1, 0, -1],
    [0, 0, 0, 0, 0, 0, 0, 1, -1, 0, -1, 1, 0, 1, -1],
];

/// `Π (2k - 1)` by plain multiplication.
pub fn odd_product(p: usize) -> u128 {
    (1..=p as u128).map(|k| 2 * k - 1).product()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Gradient and Hessian of `f` at `x`, from symbolic derivatives.
pub fn grad_hess(f: &Polynomial, x: &[Rational]) -> (Vec<Rational>, Vec<Vec<Rational>>) {
    let d = f.dim();
    let grad = (0..d).map(|i| f.derivative(i).eval(x).unwrap()).collect();
    let hess = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| f.derivative(i).derivative(j).eval(x).unwrap())
                .collect()
        })
        .collect();
    (grad, hess)
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(int(0), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn trace(a: &[Vec<Rational>]) -> Rational {
    (0..a.len()).fold(int(0), |acc, i| acc + &a[i][i])
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(int(0), |acc, (x, y)| acc + x * y)
}

fn mat_vec(a: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    a.iter().map(|row| dot(row, v)).collect()
}

/// `(Δf)³ - 3 |∇²f|² Δf + 2 tr((∇²f)³)` written with matrix products.
pub fn q_direct(f: &Polynomial, x: &[Rational]) -> Rational {
    let (_, h) = grad_hess(f, x);
    let h2 = mat_mul(&h, &h);
    let h3 = mat_mul(&h2, &h);
    let t1 = trace(&h);
    &t1 * &t1 * &t1 - int(3) * trace(&h2) * &t1 + int(2) * trace(&h3)
}

/// `|∇f|²(Δf)² - |∇f|²|∇²f|² + 2|∇²f ∇f|² - 2 ∇²f(∇f, ∇f) Δf`.
pub fn p_direct(f: &Polynomial, x: &[Rational]) -> Rational {
    let (gr, h) = grad_hess(f, x);
    let g2 = dot(&gr, &gr);
    let lap = trace(&h);
    let hh = trace(&mat_mul(&h, &h));
    let hg = mat_vec(&h, &gr);
    &g2 * &lap * &lap - &g2 * hh + int(2) * dot(&hg, &hg) - int(2) * dot(&gr, &hg) * lap
}

/// `(Δf)² - |∇²f|²`.
pub fn d1_direct(f: &Polynomial, x: &[Rational]) -> Rational {
    let (_, h) = grad_hess(f, x);
    let lap = trace(&h);
    &lap * &lap - trace(&mat_mul(&h, &h))
}

// The classes appearing in the two smallest relations in dimension 2.
pub fn three_loops() -> Multigraph {
    g(3, &[(0, 0), (1, 1), (2, 2)])
}
pub fn double_edge_and_loop() -> Multigraph {
    g(3, &[(0, 1), (0, 1), (2, 2)])
}
pub fn triangle() -> Multigraph {
    g(3, &[(0, 1), (1, 2), (0, 2)])
}
pub fn edge_and_two_loops() -> Multigraph {
    g(4, &[(0, 1), (2, 2), (3, 3)])
}
pub fn edge_and_double_edge() -> Multigraph {
    g(4, &[(0, 1), (2, 3), (2, 3)])
}
pub fn path_of_three() -> Multigraph {
    g(4, &[(0, 1), (1, 2), (2, 3)])
}
pub fn cherry_and_loop() -> Multigraph {
    g(4, &[(0, 1), (1, 2), (3, 3)])
}
