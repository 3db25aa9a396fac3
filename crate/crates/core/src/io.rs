//! JSON encoding of fields, algebras, ideals, subalgebras, witnesses and
//! reports. Object keys are emitted in sorted order, so serializing the same
//! value always gives the same text.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::csa::{Algebra, Involution, Preset};
use crate::error::{Error, Result};
use crate::etale::{generate_etale, EtaleSubalgebra};
use crate::exactalg::{Field, Matrix, Poly, Scalar};
use crate::ideals::{Flag, RightIdeal};
use crate::pointcount::{ClosedPoint, HGraph, IndexBound, VarietyModel, ZeroCycle};
use crate::witness::{
    Endpoint, PencilWitness, QuadraticForm, Report, SegmentData, WitnessChain, WitnessKind, PARAM_CONVENTION,
};

fn fmt_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| fmt_err(format!("missing key '{key}'")))
}

fn get_u64(v: &Value, key: &str) -> Result<u64> {
    get(v, key)?.as_u64().ok_or_else(|| fmt_err(format!("'{key}' must be a non-negative integer")))
}

fn get_str<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    get(v, key)?.as_str().ok_or_else(|| fmt_err(format!("'{key}' must be a string")))
}

fn get_array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    as_array(get(v, key)?, key)
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| fmt_err(format!("'{what}' must be an array")))
}

/// Pretty JSON text with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn from_text(s: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| fmt_err(format!("malformed JSON: {e}")))
}

// ---- fields and scalars ----

pub fn field_to_json(f: &Field) -> Value {
    match f {
        Field::Rationals => json!({"kind": "q"}),
        Field::Prime(p) => json!({"kind": "fp", "p": p}),
        Field::Extension(s) => json!({"kind": "fq", "p": s.p(), "k": s.degree(), "modulus": s.modulus()}),
    }
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    match get_str(v, "kind")? {
        "q" => Ok(Field::rationals()),
        "fp" => Field::prime(get_u64(v, "p")?),
        "fq" => {
            let p = get_u64(v, "p")?;
            match v.get("modulus") {
                Some(m) => {
                    let coeffs = as_array(m, "modulus")?
                        .iter()
                        .map(|c| c.as_u64().ok_or_else(|| fmt_err("modulus coefficients must be integers")))
                        .collect::<Result<Vec<u64>>>()?;
                    Field::extension(p, coeffs)
                }
                None => Field::finite(p, get_u64(v, "k")? as usize),
            }
        }
        other => Err(fmt_err(format!("unknown field kind '{other}'"))),
    }
}

/// `fp:<p>`, `fq:<p>:<k>` or `q`.
pub fn parse_field_flag(s: &str) -> Result<Field> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |x: &str| x.parse::<u64>().map_err(|_| Error::invalid(format!("bad number '{x}' in field '{s}'")));
    match parts.as_slice() {
        ["q"] => Ok(Field::rationals()),
        ["fp", p] => Field::prime(num(p)?),
        ["fq", p, k] => Field::finite(num(p)?, num(k)? as usize),
        _ => Err(Error::invalid(format!("field must be fp:<p>, fq:<p>:<k> or q, got '{s}'"))),
    }
}

/// Decimal string for `Q` and `F_p`; coefficient list for `F_{p^k}`.
pub fn scalar_to_json(x: &Scalar) -> Value {
    match x.prime_coeffs() {
        Some(c) if matches!(x.field(), Field::Extension(_)) => json!(c),
        _ => Value::String(x.to_string()),
    }
}

pub fn scalar_from_json(f: &Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => f.parse(s),
        Value::Number(n) => f.parse(&n.to_string()),
        Value::Array(items) => {
            let c = items
                .iter()
                .map(|c| c.as_u64().ok_or_else(|| fmt_err("coefficients must be non-negative integers")))
                .collect::<Result<Vec<u64>>>()?;
            f.from_coeffs(&c)
        }
        _ => Err(fmt_err(format!("cannot read a scalar from {v}"))),
    }
}

pub fn vec_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn vec_from_json(f: &Field, v: &Value) -> Result<Vec<Scalar>> {
    as_array(v, "vector")?.iter().map(|x| scalar_from_json(f, x)).collect()
}

fn vecs_to_json(vs: &[Vec<Scalar>]) -> Value {
    Value::Array(vs.iter().map(|v| vec_to_json(v)).collect())
}

fn vecs_from_json(f: &Field, v: &Value) -> Result<Vec<Vec<Scalar>>> {
    as_array(v, "vectors")?.iter().map(|x| vec_from_json(f, x)).collect()
}

pub fn poly_to_json(p: &Poly) -> Value {
    vec_to_json(p.coeffs())
}

pub fn poly_from_json(f: &Field, v: &Value) -> Result<Poly> {
    Ok(Poly::from_coeffs(f, vec_from_json(f, v)?))
}

// ---- algebras ----

pub fn algebra_to_json(a: &Algebra) -> Value {
    let mut params = Map::new();
    let preset = match a.preset() {
        Preset::Matrix { n } => {
            params.insert("n".into(), json!(n));
            "matrix"
        }
        Preset::Quaternion { a: x, b: y } => {
            params.insert("a".into(), scalar_to_json(x));
            params.insert("b".into(), scalar_to_json(y));
            "quaternion"
        }
        Preset::Tensor(l, r) => {
            params.insert("left".into(), algebra_to_json(l));
            params.insert("right".into(), algebra_to_json(r));
            "tensor"
        }
        Preset::Corner(_) | Preset::Explicit => {
            params.insert("labels".into(), json!(a.labels()));
            "explicit"
        }
    };
    if let Some(i) = a.declared_index() {
        params.insert("declared_index".into(), json!(i));
    }
    if let Some(e) = a.declared_exponent() {
        params.insert("declared_exponent".into(), json!(e));
    }
    let mut out = json!({
        "field": field_to_json(a.field()),
        "preset": preset,
        "params": Value::Object(params),
        "degree": a.degree(),
    });
    if preset == "explicit" {
        let mut consts = Vec::new();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                for (k, c) in a.product(i, j) {
                    consts.push(json!([i, j, k, scalar_to_json(c)]));
                }
            }
        }
        out["structure_constants"] = Value::Array(consts);
    }
    out
}

pub fn algebra_from_json(v: &Value) -> Result<Arc<Algebra>> {
    let field = field_from_json(get(v, "field")?)?;
    let params = get(v, "params")?;
    let a = match get_str(v, "preset")? {
        "matrix" => Algebra::matrix(&field, get_u64(params, "n")? as usize)?,
        "quaternion" => {
            let x = scalar_from_json(&field, get(params, "a")?)?;
            let y = scalar_from_json(&field, get(params, "b")?)?;
            Algebra::quaternion(&field, &x, &y)?
        }
        "tensor" => Algebra::tensor(&algebra_from_json(get(params, "left")?)?, &algebra_from_json(get(params, "right")?)?)?,
        "explicit" => {
            let labels: Vec<String> = get_array(params, "labels")?
                .iter()
                .map(|l| l.as_str().map(String::from).ok_or_else(|| fmt_err("labels must be strings")))
                .collect::<Result<_>>()?;
            let mut consts = Vec::new();
            for c in get_array(v, "structure_constants")? {
                let c = as_array(c, "structure constant")?;
                if c.len() != 4 {
                    return Err(fmt_err("structure constants are [i, j, k, c]"));
                }
                let idx = |x: &Value| x.as_u64().map(|u| u as usize).ok_or_else(|| fmt_err("bad structure constant index"));
                consts.push((idx(&c[0])?, idx(&c[1])?, idx(&c[2])?, scalar_from_json(&field, &c[3])?));
            }
            Algebra::explicit(&field, labels, &consts)?
        }
        other => return Err(Error::invalid(format!("unknown preset '{other}'"))),
    };
    let declared = |k: &str| params.get(k).and_then(|x| x.as_u64());
    let a = match (declared("declared_index"), declared("declared_exponent")) {
        (None, None) => a,
        (i, e) => a.with_declared(i, e),
    };
    if let Some(d) = v.get("degree").and_then(|d| d.as_u64()) {
        if d as usize != a.degree() {
            return Err(Error::invalid(format!("declared degree {d} does not match {}", a.degree())));
        }
    }
    Ok(a)
}

pub fn involution_to_json(s: &Involution) -> Value {
    json!({
        "algebra": algebra_to_json(s.algebra()),
        "type": s.kind().as_str(),
        "matrix": vecs_to_json(&s.matrix().row_vecs()),
    })
}

pub fn involution_from_json(v: &Value) -> Result<Involution> {
    let a = algebra_from_json(get(v, "algebra")?)?;
    let rows = vecs_from_json(a.field(), get(v, "matrix")?)?;
    let s = Involution::from_map(&a, Matrix::from_rows(a.field(), rows)?)?;
    if let Some(t) = v.get("type").and_then(|t| t.as_str()) {
        if t != s.kind().as_str() {
            return Err(Error::invalid(format!("declared type {t} but the map is {}", s.kind().as_str())));
        }
    }
    Ok(s)
}

// ---- ideals, flags, subalgebras ----

pub fn ideal_to_json(i: &RightIdeal) -> Value {
    json!({"algebra": algebra_to_json(i.algebra()), "basis": vecs_to_json(i.basis())})
}

pub fn ideal_from_json(v: &Value, algebra: Option<&Arc<Algebra>>) -> Result<RightIdeal> {
    let a = match (v.get("algebra"), algebra) {
        (_, Some(a)) => a.clone(),
        (Some(a), None) => algebra_from_json(a)?,
        (None, None) => return Err(fmt_err("ideal without algebra")),
    };
    RightIdeal::from_basis(&a, &vecs_from_json(a.field(), get(v, "basis")?)?)
}

pub fn flag_to_json(f: &Flag) -> Value {
    let algebra = f.ideals().first().map(|i| algebra_to_json(i.algebra())).unwrap_or(Value::Null);
    json!({
        "algebra": algebra,
        "ideals": f.ideals().iter().map(|i| json!({"basis": vecs_to_json(i.basis())})).collect::<Vec<_>>(),
        "signature": f.signature(),
    })
}

pub fn flag_from_json(v: &Value, algebra: Option<&Arc<Algebra>>) -> Result<Flag> {
    let a = match (v.get("algebra").filter(|x| !x.is_null()), algebra) {
        (_, Some(a)) => a.clone(),
        (Some(a), None) => algebra_from_json(a)?,
        (None, None) => return Err(fmt_err("flag without algebra")),
    };
    let ideals = get_array(v, "ideals")?.iter().map(|i| ideal_from_json(i, Some(&a))).collect::<Result<Vec<_>>>()?;
    let flag = Flag::new(ideals)?;
    if let Some(sig) = v.get("signature") {
        let sig: Vec<usize> = as_array(sig, "signature")?.iter().filter_map(|x| x.as_u64().map(|u| u as usize)).collect();
        if sig != flag.signature() {
            return Err(Error::invalid(format!("declared signature {sig:?} but the flag has {:?}", flag.signature())));
        }
    }
    Ok(flag)
}

pub fn etale_to_json(e: &EtaleSubalgebra) -> Value {
    let mut out = json!({
        "algebra": algebra_to_json(e.algebra()),
        "generator": vec_to_json(e.generator().coords()),
    });
    if !e.certificate().is_empty() {
        out["minpoly_factors"] = Value::Array(e.certificate().iter().map(poly_to_json).collect());
    }
    out
}

pub fn etale_from_json(v: &Value, algebra: Option<&Arc<Algebra>>) -> Result<EtaleSubalgebra> {
    let a = match (v.get("algebra"), algebra) {
        (_, Some(a)) => a.clone(),
        (Some(a), None) => algebra_from_json(a)?,
        (None, None) => return Err(fmt_err("subalgebra without algebra")),
    };
    let g = a.element(vec_from_json(a.field(), get(v, "generator")?)?)?;
    let e = generate_etale(&g)?;
    Ok(match v.get("minpoly_factors") {
        Some(fs) => {
            let factors = as_array(fs, "minpoly_factors")?.iter().map(|f| poly_from_json(a.field(), f)).collect::<Result<_>>()?;
            e.with_certificate(factors)
        }
        None => e,
    })
}

// ---- quadrics, points, cycles ----

pub fn form_to_json(q: &QuadraticForm) -> Value {
    json!({"field": field_to_json(q.field()), "upper": vecs_to_json(&q.upper_table())})
}

pub fn form_from_json(v: &Value) -> Result<QuadraticForm> {
    let f = field_from_json(get(v, "field")?)?;
    QuadraticForm::from_upper(&f, &vecs_from_json(&f, get(v, "upper")?)?)
}

fn closed_point_to_json(p: &ClosedPoint) -> Value {
    json!({"degree": p.degree(), "coords": vec_to_json(p.coords())})
}

fn closed_point_from_json(base: &Field, v: &Value) -> Result<ClosedPoint> {
    let d = get_u64(v, "degree")? as usize;
    let f = if d == 1 { base.clone() } else { Field::finite(base.characteristic(), d)? };
    let coords = vec_from_json(&f, get(v, "coords")?)?;
    let p = if d == 1 && !matches!(base, Field::Prime(_)) {
        ClosedPoint::rational(coords)
    } else {
        ClosedPoint::from_rep(&coords)?
    };
    if p.degree() != d {
        return Err(Error::invalid(format!("point has degree {} but {d} was declared", p.degree())));
    }
    Ok(p)
}

pub fn cycle_to_json(z: &ZeroCycle) -> Value {
    Value::Array(
        z.terms()
            .iter()
            .map(|(p, m)| {
                let mut o = closed_point_to_json(p);
                o["mult"] = json!(m);
                o
            })
            .collect(),
    )
}

pub fn cycle_from_json(base: &Field, v: &Value) -> Result<ZeroCycle> {
    let terms = as_array(v, "cycle")?
        .iter()
        .map(|t| Ok((closed_point_from_json(base, t)?, get_u64(t, "mult")? as usize)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ZeroCycle::new(terms))
}

pub fn model_to_json(x: &VarietyModel) -> Value {
    match x {
        VarietyModel::Quadric(q) => json!({"kind": "quadric", "form": form_to_json(q)}),
        VarietyModel::Grassmannian { field, k, m } => json!({"kind": "grassmannian", "field": field_to_json(field), "k": k, "m": m}),
        VarietyModel::InvolutionQuadric { form, hyperplane } => {
            json!({"kind": "involution_quadric", "form": form_to_json(form), "hyperplane": vec_to_json(hyperplane)})
        }
    }
}

pub fn model_from_json(v: &Value) -> Result<VarietyModel> {
    match get_str(v, "kind")? {
        "quadric" => Ok(VarietyModel::Quadric(form_from_json(get(v, "form")?)?)),
        "grassmannian" => {
            let field = field_from_json(get(v, "field")?)?;
            let (k, m) = (get_u64(v, "k")? as usize, get_u64(v, "m")? as usize);
            if k == 0 || k > m {
                return Err(Error::invalid(format!("Gr({k}, {m}) needs 0 < k <= m")));
            }
            Ok(VarietyModel::Grassmannian { field, k, m })
        }
        "involution_quadric" => {
            let form = form_from_json(get(v, "form")?)?;
            let hyperplane = vec_from_json(form.field(), get(v, "hyperplane")?)?;
            if hyperplane.len() != form.dim() || hyperplane.iter().all(|c| c.is_zero()) {
                return Err(Error::invalid("hyperplane must be a nonzero vector of the ambient length"));
            }
            Ok(VarietyModel::InvolutionQuadric { form, hyperplane })
        }
        other => Err(fmt_err(format!("unknown model kind '{other}'"))),
    }
}

pub fn closed_points_to_json(pts: &[ClosedPoint]) -> Value {
    Value::Array(pts.iter().map(closed_point_to_json).collect())
}

// ---- witnesses ----

fn endpoint_to_json(e: &Endpoint) -> Value {
    match e {
        Endpoint::Ideals(is) => json!({"ideals": is.iter().map(|i| vecs_to_json(i.basis())).collect::<Vec<_>>()}),
        Endpoint::Etale(s) => json!({"generator": vec_to_json(s.generator().coords())}),
        Endpoint::Point(p) => json!({"point": vec_to_json(p)}),
        Endpoint::Cycle(z) => json!({"cycle": cycle_to_json(z)}),
    }
}

fn endpoint_from_json(v: &Value, field: &Field, algebra: Option<&Arc<Algebra>>) -> Result<Endpoint> {
    if let Some(is) = v.get("ideals") {
        let a = algebra.ok_or_else(|| fmt_err("ideal endpoint without algebra"))?;
        let ideals = as_array(is, "ideals")?
            .iter()
            .map(|b| RightIdeal::from_basis(a, &vecs_from_json(a.field(), b)?))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Endpoint::Ideals(ideals));
    }
    if let Some(g) = v.get("generator") {
        let a = algebra.ok_or_else(|| fmt_err("subalgebra endpoint without algebra"))?;
        return Ok(Endpoint::Etale(generate_etale(&a.element(vec_from_json(a.field(), g)?)?)?));
    }
    if let Some(p) = v.get("point") {
        return Ok(Endpoint::Point(vec_from_json(field, p)?));
    }
    if let Some(z) = v.get("cycle") {
        return Ok(Endpoint::Cycle(cycle_from_json(field, z)?));
    }
    Err(fmt_err("unrecognized endpoint"))
}

fn segment_to_json(w: &PencilWitness) -> Value {
    let mut o = match &w.data {
        SegmentData::Pencil { ranks, w, w_prime } => json!({
            "ranks": ranks,
            "pencil_w": vecs_to_json(w),
            "pencil_w_prime": vecs_to_json(w_prime),
        }),
        SegmentData::EtaleLine { a, b, m } => json!({
            "pencil_w": vec_to_json(a.coords()),
            "pencil_w_prime": vec_to_json(b.coords()),
            "m": m,
        }),
        SegmentData::QuadricCurve { form, curve } => json!({
            "form": form_to_json(form),
            "curve": curve.iter().map(poly_to_json).collect::<Vec<_>>(),
        }),
        SegmentData::DivisorPencil { form, param, f1, f2, fixed } => json!({
            "form": form_to_json(form),
            "param": vecs_to_json(param),
            "pencil_w": vec_to_json(f1),
            "pencil_w_prime": vec_to_json(f2),
            "fixed": cycle_to_json(fixed),
        }),
    };
    o["field"] = field_to_json(&w.field);
    o["validity"] = poly_to_json(&w.validity);
    o["start"] = endpoint_to_json(&w.start);
    o["end"] = endpoint_to_json(&w.end);
    o
}

fn segment_from_json(v: &Value, kind: WitnessKind, algebra: Option<&Arc<Algebra>>) -> Result<PencilWitness> {
    let field = field_from_json(get(v, "field")?)?;
    let need_algebra = || algebra.cloned().ok_or_else(|| fmt_err("witness kind needs an algebra"));
    let data = match kind {
        WitnessKind::IdealPencil | WitnessKind::FlagPencil => {
            let ranks = get_array(v, "ranks")?
                .iter()
                .map(|r| r.as_u64().map(|u| u as usize).ok_or_else(|| fmt_err("ranks must be integers")))
                .collect::<Result<Vec<_>>>()?;
            SegmentData::Pencil {
                ranks,
                w: vecs_from_json(&field, get(v, "pencil_w")?)?,
                w_prime: vecs_from_json(&field, get(v, "pencil_w_prime")?)?,
            }
        }
        WitnessKind::EtaleLine => {
            let a = need_algebra()?;
            SegmentData::EtaleLine {
                a: a.element(vec_from_json(&field, get(v, "pencil_w")?)?)?,
                b: a.element(vec_from_json(&field, get(v, "pencil_w_prime")?)?)?,
                m: get_u64(v, "m")? as usize,
            }
        }
        WitnessKind::QuadricLine => SegmentData::QuadricCurve {
            form: form_from_json(get(v, "form")?)?,
            curve: get_array(v, "curve")?.iter().map(|c| poly_from_json(&field, c)).collect::<Result<_>>()?,
        },
        WitnessKind::DivisorPencil => SegmentData::DivisorPencil {
            form: form_from_json(get(v, "form")?)?,
            param: vecs_from_json(&field, get(v, "param")?)?,
            f1: vec_from_json(&field, get(v, "pencil_w")?)?,
            f2: vec_from_json(&field, get(v, "pencil_w_prime")?)?,
            fixed: cycle_from_json(&field, get(v, "fixed")?)?,
        },
    };
    Ok(PencilWitness {
        kind,
        algebra: algebra.cloned(),
        data,
        start: endpoint_from_json(get(v, "start")?, &field, algebra)?,
        end: endpoint_from_json(get(v, "end")?, &field, algebra)?,
        validity: poly_from_json(&field, get(v, "validity")?)?,
        field,
    })
}

/// A chain file. `kind` is used for an empty chain.
pub fn chain_to_json(chain: &WitnessChain, kind: WitnessKind) -> Value {
    let kind = chain.segments.first().map(|s| s.kind).unwrap_or(kind);
    let algebra = chain.segments.iter().find_map(|s| s.algebra.as_ref()).map(|a| algebra_to_json(a));
    let mut o = json!({
        "kind": kind.as_str(),
        "param_convention": PARAM_CONVENTION,
        "segments": chain.segments.iter().map(segment_to_json).collect::<Vec<_>>(),
    });
    if let Some(a) = algebra {
        o["algebra"] = a;
    }
    o
}

pub fn chain_from_json(v: &Value) -> Result<WitnessChain> {
    let kind = WitnessKind::parse(get_str(v, "kind")?)?;
    let conv = get_str(v, "param_convention")?;
    if conv != PARAM_CONVENTION {
        return Err(fmt_err(format!("unsupported parameter convention '{conv}'")));
    }
    let algebra = match v.get("algebra") {
        Some(a) => Some(algebra_from_json(a)?),
        None => None,
    };
    let segments = get_array(v, "segments")?
        .iter()
        .map(|s| segment_from_json(s, kind, algebra.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    Ok(WitnessChain { segments })
}

// ---- reports ----

pub fn report_to_json(r: &Report) -> Value {
    json!({
        "pass": r.pass,
        "checks": r.checks.iter().map(|c| json!({"name": c.name, "ok": c.ok, "detail": c.detail})).collect::<Vec<_>>(),
    })
}

pub fn graph_to_json(g: &HGraph) -> Value {
    json!({
        "vertices": g.vertices.len(),
        "edges": g.edges.len(),
        "components": g.components,
        "witness_refs": g.witness_refs(),
    })
}

pub fn index_bound_to_json(b: &IndexBound) -> Value {
    json!({"status": b.status(), "value": b.value(), "note": b.note()})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{connect_flags, connect_ideals, connect_max_etale, connect_quadric_points};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn round_trip_chain(c: &WitnessChain, kind: WitnessKind) {
        let text = to_text(&chain_to_json(c, kind));
        let back = chain_from_json(&from_text(&text).unwrap()).unwrap();
        assert_eq!(to_text(&chain_to_json(&back, kind)), text);
        for (a, b) in c.segments.iter().zip(&back.segments) {
            assert_eq!(a.start, b.start);
            assert_eq!(a.end, b.end);
            assert_eq!(a.validity, b.validity);
        }
    }

    #[test]
    fn fields_and_scalars() {
        for s in ["q", "fp:5", "fq:2:3"] {
            let f = parse_field_flag(s).unwrap();
            assert_eq!(field_from_json(&field_to_json(&f)).unwrap(), f);
            let x = f.element_from_index(3);
            assert_eq!(scalar_from_json(&f, &scalar_to_json(&x)).unwrap(), x);
        }
        let q = Field::rationals();
        assert_eq!(scalar_to_json(&q.parse("-6/4").unwrap()), json!("-3/2"));
        assert!(parse_field_flag("fp:6").is_err());
        assert!(parse_field_flag("gf:5").is_err());
    }

    #[test]
    fn algebras_round_trip() {
        let q = Field::rationals();
        let f5 = Field::prime(5).unwrap();
        let h = Algebra::quaternion(&q, &q.from_i64(-1), &q.from_i64(-1)).unwrap();
        let m2 = Algebra::matrix(&q, 2).unwrap();
        let algebras = vec![
            Algebra::matrix(&f5, 3).unwrap(),
            h.clone(),
            Algebra::tensor(&h, &m2).unwrap(),
        ];
        let m = Algebra::matrix(&f5, 2).unwrap();
        let mut consts = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                consts.extend(m.product(i, j).iter().map(|(k, c)| (i, j, *k, c.clone())));
            }
        }
        let labels = (0..4).map(|i| format!("b{i}")).collect();
        let algebras: Vec<_> = algebras.into_iter().chain([Algebra::explicit(&f5, labels, &consts).unwrap()]).collect();
        for a in algebras {
            let text = to_text(&algebra_to_json(&a));
            let b = algebra_from_json(&from_text(&text).unwrap()).unwrap();
            assert_eq!(*a, *b);
            assert_eq!(to_text(&algebra_to_json(&b)), text);
        }
    }

    #[test]
    fn witnesses_round_trip() {
        let f = Field::prime(5).unwrap();
        let a = Algebra::matrix(&f, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let i = RightIdeal::random(&a, 2, &mut rng).unwrap();
        let j = RightIdeal::random(&a, 2, &mut rng).unwrap();
        let text = to_text(&ideal_to_json(&i));
        assert_eq!(ideal_from_json(&from_text(&text).unwrap(), None).unwrap(), i);
        round_trip_chain(&WitnessChain::single(connect_ideals(&i, &j).unwrap()), WitnessKind::IdealPencil);

        let a3 = Algebra::matrix(&f, 3).unwrap();
        let f1 = Flag::random(&a3, &[1, 2], &mut rng).unwrap();
        let f2 = Flag::random(&a3, &[1, 2], &mut rng).unwrap();
        assert_eq!(flag_from_json(&flag_to_json(&f1), None).unwrap().ideals(), f1.ideals());
        round_trip_chain(&WitnessChain::single(connect_flags(&f1, &f2).unwrap()), WitnessKind::FlagPencil);

        let f7 = Field::prime(7).unwrap();
        let m3 = Algebra::matrix(&f7, 3).unwrap();
        let e1 = generate_etale(&m3.element_from_i64s(&[1, 0, 0, 0, 2, 0, 0, 0, 3]).unwrap()).unwrap();
        let e2 = generate_etale(&m3.element_from_i64s(&[0, 1, 0, 0, 0, 1, 1, 0, 0]).unwrap()).unwrap();
        assert_eq!(etale_from_json(&etale_to_json(&e1), None).unwrap(), e1);
        round_trip_chain(&WitnessChain::single(connect_max_etale(&e1, &e2, 20, 5).unwrap()), WitnessKind::EtaleLine);

        let form = QuadraticForm::from_upper_i64(&f, &[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]]).unwrap();
        let p1: Vec<Scalar> = [1, 0, 0, 0].iter().map(|&c| f.from_i64(c)).collect();
        let p2: Vec<Scalar> = [0, 1, 1, 0].iter().map(|&c| f.from_i64(c)).collect();
        round_trip_chain(&connect_quadric_points(&form, &p1, &p2, 1).unwrap(), WitnessKind::QuadricLine);
    }
}
