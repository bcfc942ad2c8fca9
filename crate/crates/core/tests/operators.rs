mod common;

use common::g;
use graphop::multigraph::{degree_vector, names};
use graphop::operator::sampling::{self, random_point, random_polynomial, random_skew};
use graphop::operator::{evaluate_graph, evaluate_parametrized};
use graphop::rational::{frac, int};
use graphop::{
    build_graph, cayley_orthogonal, check_equivariance, disjoint_union, enumerate_degree_vectors,
    enumerate_matchings, AffineIsometry, Jet, JetOperator, Multigraph, OperatorExpr, Polynomial,
    Rational,
};
use rand::seq::SliceRandom;

/// Independent evaluator: sums over edge labelings using symbolic
/// derivatives of `f` for every vertex.
fn naive(gr: &Multigraph, f: &Polynomial, x: &[Rational]) -> Rational {
    let d = f.dim();
    let m = gr.num_edges();
    let mut total = int(0);
    let count = d.pow(m as u32);
    for code in 0..count {
        let labels: Vec<usize> = (0..m).map(|e| (code / d.pow(e as u32)) % d).collect();
        let mut prod = int(1);
        for v in 0..gr.num_vertices() {
            let mut h = f.clone();
            for (e, &(a, b)) in gr.edges().iter().enumerate() {
                if a == v {
                    h = h.derivative(labels[e]);
                }
                if b == v {
                    h = h.derivative(labels[e]);
                }
            }
            prod *= h.eval(x).unwrap();
        }
        total += prod;
    }
    total
}

fn named() -> Vec<(&'static str, Multigraph)> {
    names::named_classes()
}

#[test]
fn compiled_evaluation_matches_naive_sum() {
    let mut rng = sampling::rng(11);
    for (name, cls) in named() {
        let op = OperatorExpr::compile(&cls, 0, int(1));
        for d in 1..=3 {
            let f = random_polynomial(&mut rng, d, 4);
            let x = random_point(&mut rng, d);
            let jet = Jet::of(&f, &x, op.max_degree()).unwrap();
            assert_eq!(
                op.evaluate(&jet).unwrap(),
                naive(&cls, &f, &x),
                "{name}, d = {d}"
            );
        }
    }
}

#[test]
fn known_operators_on_fixed_functions() {
    // f = x1^2 x2 + x2^3 at (1, 2): ∇f = (4, 13), ∇²f = [[4, 2], [2, 12]].
    let f = Polynomial::parse("x1^2*x2 + x2^3", 2).unwrap();
    let x = [int(1), int(2)];
    let ev = |cls: Multigraph| {
        let op = OperatorExpr::compile(&cls, 0, int(1));
        op.evaluate(&Jet::of(&f, &x, op.max_degree()).unwrap())
            .unwrap()
    };
    assert_eq!(ev(g(2, &[(0, 1)])), int(16 + 169));
    assert_eq!(ev(g(1, &[(0, 0)])), int(16));
    assert_eq!(ev(g(2, &[(0, 1), (0, 1)])), int(16 + 4 + 4 + 144));
    // ∇²f(∇f, ∇f) = 4·16 + 2·2·4·13 + 12·169
    assert_eq!(ev(g(3, &[(0, 1), (1, 2)])), int(64 + 208 + 2028));
}

#[test]
fn parametrized_contraction_matches_compiled_schedule() {
    let mut rng = sampling::rng(5);
    for p in 0..=3 {
        for beta in enumerate_degree_vectors(p) {
            let beta1 = beta.with_beta0(1);
            for rho in enumerate_matchings(p) {
                let cls = build_graph(&rho, &beta1).unwrap();
                let op = OperatorExpr::compile(&cls, 0, int(1));
                let d = 3;
                let f = random_polynomial(&mut rng, d, (beta.order() + 1) as u32);
                let x = random_point(&mut rng, d);
                let jet = Jet::of(&f, &x, beta.order()).unwrap();
                assert_eq!(
                    evaluate_parametrized(&rho, &beta1, &jet).unwrap(),
                    op.evaluate(&jet).unwrap(),
                    "{rho} {beta1}"
                );
            }
        }
    }
}

#[test]
fn multiplicative_over_all_pairs_of_named_classes() {
    let classes = named();
    let mut rng = sampling::rng(3);
    let d = 2;
    let jets: Vec<Jet> = (0..3)
        .map(|_| {
            let f = random_polynomial(&mut rng, d, 4);
            let x = random_point(&mut rng, d);
            Jet::of(&f, &x, 6).unwrap()
        })
        .collect();
    for (na, a) in &classes {
        for (nb, b) in &classes {
            let union = disjoint_union(a, b);
            for jet in &jets {
                let lhs = evaluate_graph(&union, jet).unwrap();
                let rhs = evaluate_graph(a, jet).unwrap() * evaluate_graph(b, jet).unwrap();
                assert_eq!(lhs, rhs, "{na} ∪ {nb}");
            }
        }
    }
}

#[test]
fn relabeling_does_not_change_the_value() {
    let mut rng = sampling::rng(4);
    for (name, cls) in named() {
        let f = random_polynomial(&mut rng, 3, 4);
        let x = random_point(&mut rng, 3);
        let jet = Jet::of(&f, &x, cls.max_degree()).unwrap();
        let base = evaluate_graph(&cls, &jet).unwrap();
        let mut perm: Vec<usize> = (0..cls.num_vertices()).collect();
        for _ in 0..10 {
            perm.shuffle(&mut rng);
            let moved = cls.relabel(&perm).unwrap();
            assert_eq!(evaluate_graph(&moved, &jet).unwrap(), base, "{name}");
        }
    }
}

#[test]
fn isolated_vertices_multiply_by_f() {
    let f = Polynomial::parse("x1^3 - x1*x2 + 2", 2).unwrap();
    let x = [int(1), int(-1)];
    let jet = Jet::of(&f, &x, 2).unwrap();
    let fx = f.eval(&x).unwrap();
    let lap = g(1, &[(0, 0)]);
    let base = evaluate_graph(&lap, &jet).unwrap();
    for k in 0..=3 {
        let op = OperatorExpr::compile(&lap, k, int(1));
        assert_eq!(
            op.evaluate(&jet).unwrap(),
            &base * num_traits::pow(fx.clone(), k)
        );
    }
}

#[test]
fn homogeneous_of_degree_vertex_count() {
    let mut rng = sampling::rng(8);
    for (name, cls) in named() {
        let n = cls.num_vertices();
        let f = random_polynomial(&mut rng, 2, 4);
        let x = random_point(&mut rng, 2);
        let order = cls.max_degree();
        let base = evaluate_graph(&cls, &Jet::of(&f, &x, order).unwrap()).unwrap();
        for c in [2i64, 3] {
            let scaled =
                evaluate_graph(&cls, &Jet::of(&f.scale(&int(c)), &x, order).unwrap()).unwrap();
            assert_eq!(scaled, &base * int(c.pow(n as u32)), "{name}");
        }
    }
}

#[test]
fn low_degree_polynomials_are_annihilated() {
    let mut rng = sampling::rng(9);
    for (name, cls) in named() {
        let min_deg = match cls.degrees().into_iter().min() {
            Some(m) if m > 0 => m,
            _ => continue,
        };
        let f = random_polynomial(&mut rng, 3, (min_deg - 1) as u32);
        let x = random_point(&mut rng, 3);
        let v = evaluate_graph(&cls, &Jet::of(&f, &x, cls.max_degree()).unwrap()).unwrap();
        assert_eq!(v, int(0), "{name}");
    }
}

#[test]
fn grading_is_read_off_the_degree_vector() {
    for (_, cls) in named() {
        let beta = degree_vector(&cls);
        let op = OperatorExpr::compile(&cls, 0, int(1));
        assert_eq!(op.max_degree(), beta.order());
    }
}

/// Pins the label of edge 0 to the first coordinate instead of summing it.
struct PinnedEdge(Multigraph);

impl JetOperator for PinnedEdge {
    fn jet_order(&self) -> usize {
        self.0.max_degree()
    }

    fn apply(&self, jet: &Jet) -> graphop::Result<Rational> {
        let d = jet.dim();
        let m = self.0.num_edges();
        let mut total = int(0);
        for code in 0..d.pow(m as u32 - 1) {
            let mut labels = vec![0];
            labels.extend((0..m - 1).map(|e| (code / d.pow(e as u32)) % d));
            let mut prod = int(1);
            for v in 0..self.0.num_vertices() {
                let mut idx = Vec::new();
                for (e, &(a, b)) in self.0.edges().iter().enumerate() {
                    if a == v {
                        idx.push(labels[e]);
                    }
                    if b == v {
                        idx.push(labels[e]);
                    }
                }
                prod *= jet.get(&idx).unwrap();
            }
            total += prod;
        }
        Ok(total)
    }
}

fn isometries(rng: &mut sampling::SeededRng, d: usize) -> Vec<AffineIsometry> {
    let mut out: Vec<AffineIsometry> = (0..3)
        .map(|_| AffineIsometry::linear(cayley_orthogonal(&random_skew(rng, d)).unwrap()).unwrap())
        .collect();
    out.push(AffineIsometry::first_coordinate_flip(d));
    out.push(AffineIsometry::translation(
        (0..d).map(|i| frac(i as i64 + 1, 2)).collect(),
    ));
    out
}

#[test]
fn broken_schedule_fails_equivariance() {
    let mut rng = sampling::rng(21);
    let phis = isometries(&mut rng, 2);
    let f = Polynomial::parse("x1^3 + 2*x1*x2^2 - x2 + x1", 2).unwrap();
    let pts = vec![vec![int(1), int(2)], vec![int(-1), int(1)]];
    for cls in [g(2, &[(0, 1)]), g(1, &[(0, 0)]), g(3, &[(0, 1), (1, 2)])] {
        let broken = PinnedEdge(cls.clone());
        let fails = phis
            .iter()
            .any(|phi| !check_equivariance(&broken, &f, phi, &pts).unwrap().holds());
        assert!(fails, "{cls}");
        let good = OperatorExpr::compile(&cls, 0, int(1));
        assert!(phis
            .iter()
            .all(|phi| check_equivariance(&good, &f, phi, &pts).unwrap().holds()));
    }
}

#[test]
fn operator_json_round_trip() {
    let op = OperatorExpr::from_terms([
        (int(2), 1, g(2, &[(0, 1)])),
        (frac(-1, 3), 0, g(1, &[(0, 0), (0, 0)])),
    ]);
    let s = serde_json::to_string(&op).unwrap();
    let back: OperatorExpr = serde_json::from_str(&s).unwrap();
    assert_eq!(back, op);
}
