use std::path::Path;

use graphop::multigraph::{degree_vector, double_factorial, names};
use graphop::rational::{parse_ratio, to_ratio_string};
use graphop::{
    discover, enumerate_classes, enumerate_degree_vectors, independence_rank, kernel, orbits,
    symmetry_generators, verify_identity, witness_nonzero, CellLimit, Error, Identity, Jet,
    Multigraph, OperatorExpr, Polynomial, Rational, SymmetryGroup,
};
use serde_json::{json, Value};

use crate::report::{Report, Section};

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn guard_classes(p: usize, limit: CellLimit) -> graphop::Result<()> {
    let cells = double_factorial(p);
    if cells > limit.0 as u128 {
        return Err(Error::ResourceGuard {
            cells,
            limit: limit.0,
        });
    }
    Ok(())
}

fn class_json(g: &Multigraph) -> Value {
    let beta = degree_vector(g);
    json!({
        "graph": g,
        "degree_vector": beta,
        "vertices": g.num_vertices(),
        "edges": g.num_edges(),
        "connected": g.is_connected(),
        "order": beta.order(),
        "total_order": 2 * beta.edges(),
        "degree": beta.vertices(),
        "name": names::name_of(g),
        "operator": names::operator_of(g),
    })
}

fn class_row(g: &Multigraph) -> Vec<String> {
    let beta = degree_vector(g);
    vec![
        beta.to_string(),
        g.num_vertices().to_string(),
        g.num_edges().to_string(),
        yes_no(g.is_connected()),
        beta.order().to_string(),
        (2 * beta.edges()).to_string(),
        beta.vertices().to_string(),
        names::display_name(g),
    ]
}

const CLASS_HEADERS: [&str; 8] = [
    "beta",
    "n",
    "edges",
    "connected",
    "order",
    "total",
    "degree",
    "class",
];

pub fn enumerate(
    edges: usize,
    connected: bool,
    max_isolated: usize,
    limit: CellLimit,
) -> graphop::Result<Report> {
    guard_classes(edges, limit)?;
    let classes = enumerate_classes(edges, connected, max_isolated);
    let mut sec = Section::new(
        Some(format!("{} classes with {edges} edges", classes.len())),
        &CLASS_HEADERS,
    );
    for g in &classes {
        sec.push(class_row(g));
    }
    Ok(Report {
        command: "enumerate",
        seed: None,
        result: json!({
            "edges": edges,
            "connected_only": connected,
            "max_isolated": max_isolated,
            "classes": classes.iter().map(class_json).collect::<Vec<_>>(),
        }),
        sections: vec![sec],
    })
}

pub fn kernel_cmd(p: usize, d: usize, limit: CellLimit) -> graphop::Result<Report> {
    let k = kernel(p, d, limit)?;
    let mut headers: Vec<String> = vec!["row".into()];
    headers.extend(k.matching_order.iter().map(|m| m.to_string()));
    let mut sec = Section {
        title: Some(format!("kernel p={p} d={d} dim={}", k.dim())),
        headers,
        rows: Vec::new(),
    };
    for (i, row) in k.basis.iter().enumerate() {
        let mut cells = vec![i.to_string()];
        cells.extend(row.iter().map(|q| q.to_string()));
        sec.push(cells);
    }
    Ok(Report {
        command: "kernel",
        seed: None,
        result: serde_json::to_value(&k).expect("kernel serializes"),
        sections: vec![sec],
    })
}

fn signed_sum(terms: impl Iterator<Item = (Rational, String)>) -> String {
    let mut out = String::new();
    for (i, (c, name)) in terms.enumerate() {
        let neg = c < Rational::from_integer(0.into());
        let mag = if neg { -c } else { c };
        let sep = match (i, neg) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        let name = if name.contains(" + ") || name.contains('×') {
            format!("({name})")
        } else {
            name
        };
        if mag == Rational::from_integer(1.into()) {
            out.push_str(&format!("{sep}{name}"));
        } else {
            out.push_str(&format!("{sep}{mag}·{name}"));
        }
    }
    out
}

fn identity_text(id: &Identity) -> String {
    let lhs = signed_sum(
        id.terms
            .iter()
            .map(|t| (t.coeff.clone(), names::display_name(&t.graph))),
    );
    format!("{lhs} = 0")
}

pub struct IdentityOptions {
    pub verify: Option<(usize, u64)>,
    /// Target dimension and evaluation budget.
    pub witness: Option<(usize, usize)>,
}

pub fn identities(
    d: usize,
    p: usize,
    opts: &IdentityOptions,
    limit: CellLimit,
) -> graphop::Result<Report> {
    let mut ids = discover(d, p, limit)?;
    if let Some((trials, seed)) = opts.verify {
        ids = ids
            .iter()
            .map(|id| verify_identity(id, trials, seed))
            .collect::<graphop::Result<_>>()?;
    }
    if let Some((dp, budget)) = opts.witness {
        for id in &mut ids {
            id.status.witnessed_nonzero = Some(witness_nonzero(id, dp, budget)?);
        }
    }
    let mut sec = Section::new(
        Some(format!("{} identities in d={d} with {p} edges", ids.len())),
        &["beta", "relation", "verified", "witness"],
    );
    for id in &ids {
        let verified = id
            .status
            .verified_zero
            .as_ref()
            .map_or("-".to_string(), |v| {
                format!("d={} trials={}", v.dim, v.trials)
            });
        let witness = id
            .status
            .witnessed_nonzero
            .as_ref()
            .map_or("-".to_string(), |w| {
                format!(
                    "d={} f={} x=({}) value={}",
                    w.dim,
                    w.poly,
                    join(&w.point),
                    w.value
                )
            });
        sec.push(vec![
            id.beta.to_string(),
            identity_text(id),
            verified,
            witness,
        ]);
    }
    Ok(Report {
        command: "identities",
        seed: opts.verify.map(|(_, s)| s),
        result: json!({ "dim": d, "edges": p, "identities": ids }),
        sections: vec![sec],
    })
}

fn join(v: &[Rational]) -> String {
    v.iter()
        .map(|q| q.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn parse_point(s: &str, d: usize) -> graphop::Result<Vec<Rational>> {
    let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
    let point = if trimmed.trim().is_empty() {
        Vec::new()
    } else {
        trimmed
            .split(',')
            .map(|c| parse_ratio(c.trim()))
            .collect::<graphop::Result<Vec<_>>>()?
    };
    if point.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: point.len(),
        });
    }
    Ok(point)
}

/// Reads either a multigraph (`{"n", "edges"}`) or an operator expression
/// (`{"terms"}`).
pub fn load_operator(path: &Path, beta0: usize) -> graphop::Result<OperatorExpr> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let bad = |e: serde_json::Error| Error::InvalidInput(format!("{}: {e}", path.display()));
    if value.get("terms").is_some() {
        let expr: OperatorExpr = serde_json::from_value(value).map_err(bad)?;
        Ok(expr.with_extra_beta0(beta0))
    } else {
        let g: Multigraph = serde_json::from_value(value).map_err(bad)?;
        Ok(OperatorExpr::compile(
            &g,
            beta0,
            Rational::from_integer(1.into()),
        ))
    }
}

pub fn eval(
    graph: &Path,
    poly: &str,
    point: &str,
    d: usize,
    beta0: usize,
) -> graphop::Result<Report> {
    let op = load_operator(graph, beta0)?;
    let f = Polynomial::parse(poly, d)?;
    let x = parse_point(point, d)?;
    let value = op.evaluate(&Jet::of(&f, &x, op.max_degree())?)?;
    let mut sec = Section::new(None, &[]);
    sec.push(vec![value.to_string()]);
    Ok(Report {
        command: "eval",
        seed: None,
        result: json!({
            "poly": f.to_string(),
            "point": x.iter().map(to_ratio_string).collect::<Vec<_>>(),
            "dim": d,
            "value": to_ratio_string(&value),
        }),
        sections: vec![sec],
    })
}

pub fn tables() -> Report {
    let mut t1 = Section::new(
        Some("connected classes with at most 3 edges".into()),
        &[
            "edges", "class", "operator", "graph", "order", "total", "degree",
        ],
    );
    let mut t1_json = Vec::new();
    let mut listed = vec![Multigraph::null(), Multigraph::isolated(1)];
    for p in 1..=3 {
        listed.extend(enumerate_classes(p, true, 0));
    }
    for g in &listed {
        let beta = degree_vector(g);
        t1.push(vec![
            g.num_edges().to_string(),
            names::display_name(g),
            names::operator_of(g).unwrap_or("").to_string(),
            g.to_string(),
            beta.order().to_string(),
            (2 * beta.edges()).to_string(),
            beta.vertices().to_string(),
        ]);
        t1_json.push(class_json(g));
    }

    let mut t3 = Section::new(
        Some("degree vectors with 3 edges".into()),
        &["beta", "orbits", "|S|", "representatives", "generators"],
    );
    let mut t3_json = Vec::new();
    for beta in enumerate_degree_vectors(3) {
        let os = orbits(&beta);
        let grp = symmetry_generators(&beta);
        let reps: Vec<String> = os.iter().map(|o| names::display_name(&o.graph)).collect();
        let gens: Vec<String> = grp
            .generators
            .iter()
            .map(|g| SymmetryGroup::cycle_notation(g))
            .collect();
        t3.push(vec![
            format!(
                "[{}]",
                beta.vec()
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            os.len().to_string(),
            grp.order().to_string(),
            reps.join("; "),
            gens.join(" "),
        ]);
        t3_json.push(json!({
            "degree_vector": beta,
            "orbits": os.len(),
            "group_order": grp.order().to_string(),
            "generators": gens,
            "representatives": os.iter().map(|o| json!({
                "graph": o.graph,
                "smallest_matching": o.representative(),
                "size": o.size(),
            })).collect::<Vec<_>>(),
        }));
    }
    Report {
        command: "tables",
        seed: None,
        result: json!({ "classes": t1_json, "degree_vectors": t3_json }),
        sections: vec![t1, t3],
    }
}

pub fn independence(
    p: usize,
    d: usize,
    max_isolated: usize,
    trials: Option<usize>,
    seed: u64,
    limit: CellLimit,
) -> graphop::Result<Report> {
    guard_classes(p, limit)?;
    let classes: Vec<(usize, Multigraph)> = enumerate_classes(p, false, max_isolated)
        .into_iter()
        .map(|g| (0, g))
        .collect();
    let trials = trials.unwrap_or(classes.len() + 10);
    let r = independence_rank(&classes, d, trials, seed)?;
    let mut sec = Section::new(None, &["edges", "dim", "classes", "trials", "rank"]);
    sec.push(vec![
        p.to_string(),
        d.to_string(),
        classes.len().to_string(),
        trials.to_string(),
        r.to_string(),
    ]);
    Ok(Report {
        command: "independence",
        seed: Some(seed),
        result: json!({
            "edges": p,
            "dim": d,
            "max_isolated": max_isolated,
            "classes": classes.len(),
            "trials": trials,
            "rank": r,
        }),
        sections: vec![sec],
    })
}
