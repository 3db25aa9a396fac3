//! Linkage graphs on reduced zero cycles of degree `n` of a quadric.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exactalg::{Field, Scalar};
use crate::pointcount::{symmetric_power_points, transfer_cycle, ClosedPoint, VarietyModel, ZeroCycle};
use crate::witness::divisor::{param_of, param_on_quadric};
use crate::witness::{
    connect_divisors, connect_quadric_points, default_samples, normalize_point, verify_chain, Endpoint, QuadraticForm,
    Report, WitnessChain,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CurveGenerator {
    /// Lines and projection conics on the quadric, over the base field and
    /// its extensions.
    QuadricChains,
    /// Pencils of degree-2 divisors on rational curves of the quadric.
    DivisorPencils,
}

impl CurveGenerator {
    pub fn as_str(&self) -> &'static str {
        match self {
            CurveGenerator::QuadricChains => "quadric_chains",
            CurveGenerator::DivisorPencils => "divisor_pencils",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// One support point moved along a curve over the base field.
    RationalMove,
    /// One closed point of degree `d` moved through its representatives.
    ClosedPointMove { degree: usize },
    /// Two support points (or one of degree 2) replaced inside a pencil.
    DivisorPencil,
}

impl EdgeKind {
    pub fn as_str(&self) -> String {
        match self {
            EdgeKind::RationalMove => "rational_move".into(),
            EdgeKind::ClosedPointMove { degree } => format!("closed_point_move_d{degree}"),
            EdgeKind::DivisorPencil => "divisor_pencil".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub kind: EdgeKind,
    /// The common part of both endpoint cycles.
    pub fixed: ZeroCycle,
    pub chain: WitnessChain,
}

#[derive(Clone, Debug)]
pub struct HGraph {
    pub vertices: Vec<ZeroCycle>,
    pub edges: Vec<Edge>,
    pub components: usize,
    pub component_of: Vec<usize>,
}

impl HGraph {
    pub fn is_connected(&self) -> bool {
        self.components <= 1
    }

    /// One line per edge: `from-to:kind:segments`.
    pub fn witness_refs(&self) -> Vec<String> {
        self.edges
            .iter()
            .map(|e| format!("{}-{}:{}:{}", e.from, e.to, e.kind.as_str(), e.chain.len()))
            .collect()
    }
}

/// A rational curve on the quadric: `φ(s, t)` with coefficient lists of a
/// binary form in each coordinate.
struct RationalCurve {
    param: Vec<Vec<Scalar>>,
}

fn find_rational_curves(form: &QuadraticForm, rational: &[ClosedPoint]) -> Result<Vec<RationalCurve>> {
    let f = form.field();
    let n = form.dim();
    let mut curves = Vec::new();
    let mut seen: BTreeSet<Vec<Vec<Scalar>>> = BTreeSet::new();
    // lines through pairs of rational points
    for (i, p) in rational.iter().enumerate() {
        for q in &rational[i + 1..] {
            if !form.polar(p.coords(), q.coords()).is_zero() {
                continue;
            }
            let param: Vec<Vec<Scalar>> = (0..n).map(|k| vec![p.coords()[k].clone(), q.coords()[k].clone()]).collect();
            let mut key: Vec<Vec<Scalar>> = rational
                .iter()
                .filter(|r| param_of(&param, r.coords()).ok().flatten().is_some())
                .map(|r| r.coords().to_vec())
                .collect();
            key.sort();
            if seen.insert(key) {
                curves.push(RationalCurve { param });
            }
        }
    }
    // a smooth conic is itself rational
    if n == 3 {
        if let Some(p0) = rational.first() {
            let p0 = p0.coords();
            let e = |i: usize| (0..3).map(|j| if i == j { f.one() } else { f.zero() }).collect::<Vec<_>>();
            if let Some(k) = (0..3).rev().find(|&k| !p0[k].is_zero()) {
                let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
                let (u, w) = (e(others[0]), e(others[1]));
                let (bu, bw, buw) = (form.polar(p0, &u), form.polar(p0, &w), form.polar(&u, &w));
                let (qu, qw) = (form.eval(&u), form.eval(&w));
                let param: Vec<Vec<Scalar>> = (0..3)
                    .map(|i| {
                        vec![
                            &(&bu * &u[i]) - &(&qu * &p0[i]),
                            &(&(&bu * &w[i]) + &(&bw * &u[i])) - &(&buw * &p0[i]),
                            &(&bw * &w[i]) - &(&qw * &p0[i]),
                        ]
                    })
                    .collect();
                if param_on_quadric(form, &param) && param_is_injective(&param, rational.len())? {
                    curves.push(RationalCurve { param });
                }
            }
        }
    }
    Ok(curves)
}

/// The images of `P¹(F_q)` are `count` distinct points.
fn param_is_injective(param: &[Vec<Scalar>], count: usize) -> Result<bool> {
    let f = param[0][0].field();
    let mut images = BTreeSet::new();
    let mut pts: Vec<(Scalar, Scalar)> = f.elements()?.into_iter().map(|u| (f.one(), u)).collect();
    pts.push((f.zero(), f.one()));
    for (s, t) in &pts {
        match normalize_point(&crate::witness::divisor::eval_param(param, s, t)) {
            Some(x) => {
                images.insert(x);
            }
            None => return Ok(false),
        }
    }
    Ok(images.len() == pts.len() && images.len() == count)
}

fn on_curve(curve: &RationalCurve, d: &ZeroCycle) -> bool {
    d.terms().iter().all(|(p, _)| matches!(param_of(&curve.param, p.coords()), Ok(Some(_))))
}

fn symmetric_difference(a: &ZeroCycle, b: &ZeroCycle) -> (ZeroCycle, ZeroCycle, ZeroCycle) {
    let sa = a.support();
    let sb = b.support();
    let common: Vec<ClosedPoint> = sa.iter().filter(|p| sb.contains(p)).cloned().collect();
    let only_a: Vec<ClosedPoint> = sa.iter().filter(|p| !common.contains(p)).cloned().collect();
    let only_b: Vec<ClosedPoint> = sb.iter().filter(|p| !common.contains(p)).cloned().collect();
    (ZeroCycle::from_points(&common), ZeroCycle::from_points(&only_a), ZeroCycle::from_points(&only_b))
}

fn standard_field(base: &Field, d: usize) -> Result<Field> {
    if d == 1 {
        Ok(base.clone())
    } else {
        Field::finite(base.characteristic(), d)
    }
}

/// Re-verifies an edge: the chain itself, and that its end cycles plus the
/// fixed part are the endpoint vertices.
pub fn verify_edge(graph_vertices: &[ZeroCycle], e: &Edge) -> Report {
    let field = match e.chain.segments.first() {
        Some(s) => s.field.clone(),
        None => return verify_chain(&e.chain, &[]),
    };
    let mut report = verify_chain(&e.chain, &default_samples(&field, true));
    let (from, to) = (&graph_vertices[e.from], &graph_vertices[e.to]);
    let ends_ok = match (e.chain.start(), e.chain.end()) {
        (Some(Endpoint::Cycle(a)), Some(Endpoint::Cycle(b))) => a == from && b == to,
        (Some(Endpoint::Point(a)), Some(Endpoint::Point(b))) => {
            matches!((transfer_cycle(a), transfer_cycle(b)), (Ok(x), Ok(y)) if e.fixed.add(&x) == *from && e.fixed.add(&y) == *to)
        }
        _ => false,
    };
    report.checks.push(crate::witness::Check {
        name: "edge_endpoints".into(),
        ok: ends_ok,
        detail: format!("{from} -> {to}"),
    });
    report.pass &= ends_ok;
    report
}

/// Vertices are the reduced cycles of degree `n`; an edge is inserted only
/// after its witness chain passes the verifier.
pub fn h_link_graph(x: &VarietyModel, n: usize, generators: &[CurveGenerator], budget: u64, seed: u64) -> Result<HGraph> {
    if generators.is_empty() {
        return Err(Error::invalid("curve generator set is empty"));
    }
    let form = match x {
        VarietyModel::Quadric(q) => q.clone(),
        _ => return Err(Error::invalid("linkage graphs are built on quadric models")),
    };
    let base = form.field().clone();
    if !matches!(base, Field::Prime(_)) && n > 1 {
        return Err(Error::UnsupportedField("linkage graphs of degree > 1 need a prime base field".into()));
    }
    let vertices = symmetric_power_points(x, n, budget)?;
    let use_chains = generators.contains(&CurveGenerator::QuadricChains);
    let curves = if generators.contains(&CurveGenerator::DivisorPencils) {
        let rational: Vec<ClosedPoint> = vertices
            .iter()
            .flat_map(|z| z.support())
            .filter(|p| p.degree() == 1)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        find_rational_curves(&form, &rational)?
    } else {
        Vec::new()
    };
    let mut edges = Vec::new();
    let mut attempt = 0u64;
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let (fixed, a, b) = symmetric_difference(&vertices[i], &vertices[j]);
            let mut candidate = None;
            if use_chains && a.terms().len() == 1 && b.terms().len() == 1 && a.degree() == b.degree() {
                let d = a.degree();
                let field = standard_field(&base, d)?;
                let q = form.base_change(&field)?;
                attempt += 1;
                if let Ok(chain) = connect_quadric_points(&q, a.terms()[0].0.coords(), b.terms()[0].0.coords(), seed ^ attempt) {
                    let kind = if d == 1 { EdgeKind::RationalMove } else { EdgeKind::ClosedPointMove { degree: d } };
                    candidate = Some(Edge { from: i, to: j, kind, fixed: fixed.clone(), chain });
                }
            }
            if candidate.is_none() && a.degree() == 2 && b.degree() == 2 {
                if let Some(c) = curves.iter().find(|c| on_curve(c, &a) && on_curve(c, &b)) {
                    let w = connect_divisors(&form, &c.param, &fixed, &a, &b)?;
                    candidate = Some(Edge { from: i, to: j, kind: EdgeKind::DivisorPencil, fixed, chain: WitnessChain::single(w) });
                }
            }
            if let Some(e) = candidate {
                if verify_edge(&vertices, &e).pass {
                    edges.push(e);
                }
            }
        }
    }
    let component_of = components(vertices.len(), &edges);
    let count = component_of.iter().collect::<BTreeSet<_>>().len();
    Ok(HGraph { vertices, edges, components: count, component_of })
}

fn components(n: usize, edges: &[Edge]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in edges {
        let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointcount::DEFAULT_BUDGET;

    fn conic_f3() -> VarietyModel {
        let f = Field::prime(3).unwrap();
        VarietyModel::Quadric(QuadraticForm::diagonal(&f, &[f.one(), f.one(), -f.one()]).unwrap())
    }

    fn split_surface_f2() -> VarietyModel {
        let f = Field::prime(2).unwrap();
        VarietyModel::Quadric(
            QuadraticForm::from_upper_i64(&f, &[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]]).unwrap(),
        )
    }

    const ALL: [CurveGenerator; 2] = [CurveGenerator::QuadricChains, CurveGenerator::DivisorPencils];

    #[test]
    fn conic_over_f3() {
        let g1 = h_link_graph(&conic_f3(), 1, &ALL, DEFAULT_BUDGET, 1).unwrap();
        assert_eq!(g1.vertices.len(), 4);
        assert!(g1.is_connected());
        let g2 = h_link_graph(&conic_f3(), 2, &ALL, DEFAULT_BUDGET, 1).unwrap();
        assert_eq!(g2.vertices.len(), 9);
        assert!(g2.is_connected(), "{} components", g2.components);
        for e in &g2.edges {
            assert!(verify_edge(&g2.vertices, e).pass);
        }
        let g0 = h_link_graph(&conic_f3(), 0, &ALL, DEFAULT_BUDGET, 1).unwrap();
        assert_eq!((g0.vertices.len(), g0.components), (1, 1));
    }

    #[test]
    fn split_surface_over_f2() {
        let g = h_link_graph(&split_surface_f2(), 2, &ALL, DEFAULT_BUDGET, 3).unwrap();
        assert_eq!(g.vertices.len(), 44);
        assert!(g.is_connected(), "{} components", g.components);
        assert!(g.edges.iter().any(|e| e.kind == EdgeKind::DivisorPencil));
        assert!(g.edges.iter().any(|e| e.kind == EdgeKind::ClosedPointMove { degree: 2 }));
    }

    #[test]
    fn chains_alone_leave_degree_two_points_apart() {
        let g = h_link_graph(&split_surface_f2(), 2, &[CurveGenerator::QuadricChains], DEFAULT_BUDGET, 3).unwrap();
        assert!(g.components >= 2);
        assert!(h_link_graph(&split_surface_f2(), 2, &[], DEFAULT_BUDGET, 3).is_err());
    }
}
