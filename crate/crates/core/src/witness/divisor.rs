//! Pencils of degree-2 divisors on a rational curve `φ: P¹ → X` lying on a
//! quadric: `t f₁ + (1 - t) f₂` for binary quadratic forms `f₁, f₂`.

use crate::error::{Error, Result};
use crate::exactalg::{Field, Poly, Scalar};
use crate::pointcount::{descend_to_subfield, ClosedPoint, ZeroCycle};
use crate::witness::{normalize_point, Endpoint, PencilWitness, QuadraticForm, SegmentData, WitnessKind};

/// `φ(s, t)` where `param[i][j]` is the coefficient of `s^{k-j} t^j` in
/// coordinate `i`.
pub(crate) fn eval_param(param: &[Vec<Scalar>], s: &Scalar, t: &Scalar) -> Vec<Scalar> {
    param
        .iter()
        .map(|c| {
            let k = c.len() - 1;
            let mut acc = s.zero_like();
            for (j, cj) in c.iter().enumerate() {
                acc = &acc + &(&(cj * &s.pow((k - j) as u64)) * &t.pow(j as u64));
            }
            acc
        })
        .collect()
}

fn embed_param(param: &[Vec<Scalar>], target: &Field) -> Result<Vec<Vec<Scalar>>> {
    param.iter().map(|c| c.iter().map(|x| target.embed(x)).collect()).collect()
}

/// `q(φ(1, u)) = 0` as a polynomial in `u`, and `φ` has a single degree.
pub(crate) fn param_on_quadric(form: &QuadraticForm, param: &[Vec<Scalar>]) -> bool {
    let f = form.field();
    if param.len() != form.dim() || param.iter().any(|c| c.len() != param[0].len() || c.len() < 2) {
        return false;
    }
    let coords: Vec<Poly> = param.iter().map(|c| Poly::from_coeffs(f, c.clone())).collect();
    form.eval_poly(&coords).is_zero()
}

/// The projective points of `P¹(K)`, `[1:u]` first and then `[0:1]`.
fn line_points(k: &Field) -> Result<Vec<(Scalar, Scalar)>> {
    let mut out: Vec<(Scalar, Scalar)> = k.elements()?.into_iter().map(|u| (k.one(), u)).collect();
    out.push((k.zero(), k.one()));
    Ok(out)
}

/// A parameter `[s:t]` over the point's own field with `φ(s, t) ∝ x`.
pub(crate) fn param_of(param: &[Vec<Scalar>], x: &[Scalar]) -> Result<Option<(Scalar, Scalar)>> {
    let k = x[0].field();
    let p = embed_param(param, &k)?;
    for (s, t) in line_points(&k)? {
        if normalize_point(&eval_param(&p, &s, &t)).as_deref() == Some(x) {
            return Ok(Some((s, t)));
        }
    }
    Ok(None)
}

/// Coefficients `(a, b, c)` of `a s² + b s t + c t²` vanishing exactly on the
/// degree-2 divisor `d` supported on the image of `φ`.
pub(crate) fn binary_form_of(field: &Field, param: &[Vec<Scalar>], d: &ZeroCycle) -> Result<Vec<Scalar>> {
    if d.degree() != 2 || !d.is_multiplicity_free() {
        return Err(Error::invalid(format!("{d} is not a reduced divisor of degree 2")));
    }
    let mut roots = Vec::new();
    for (pt, _) in d.terms() {
        let (s, t) = param_of(param, pt.coords())?
            .ok_or_else(|| Error::invalid(format!("{pt} is not on the curve")))?;
        if pt.degree() == 2 {
            roots.push((s.frobenius(), t.frobenius()));
        }
        roots.push((s, t));
    }
    let ((s1, t1), (s2, t2)) = (&roots[0], &roots[1]);
    let coeffs = [t1 * t2, -(&(t1 * s2) + &(s1 * t2)), s1 * s2];
    coeffs
        .iter()
        .map(|c| if c.field() == *field { Ok(c.clone()) } else { descend_to_subfield(c, field) })
        .collect()
}

/// The divisor of zeros of `a s² + b s t + c t²` pushed to `X` along `φ`.
pub(crate) fn divisor_of(param: &[Vec<Scalar>], f: &[Scalar]) -> Result<ZeroCycle> {
    let (a, b, c) = (&f[0], &f[1], &f[2]);
    let field = a.field();
    let disc = &b.square() - &(&(&field.from_i64(4) * a) * c);
    if disc.is_zero() {
        return Err(Error::structural("binary form is zero or has a double root"));
    }
    let point = |s: &Scalar, t: &Scalar, p: &[Vec<Scalar>]| -> Result<ClosedPoint> {
        let x = eval_param(p, s, t);
        ClosedPoint::from_rep(&x)
    };
    let mut pts = Vec::new();
    if a.is_zero() {
        pts.push(point(&field.one(), &field.zero(), param)?);
        pts.push(point(c, &-b, param)?);
    } else {
        let roots: Vec<Scalar> = field
            .elements()?
            .into_iter()
            .filter(|u| (&(&(a * &u.square()) + &(b * u)) + c).is_zero())
            .collect();
        if roots.len() == 2 {
            for r in &roots {
                pts.push(point(r, &field.one(), param)?);
            }
        } else {
            let p = match &field {
                Field::Prime(p) => *p,
                _ => return Err(Error::UnsupportedField("divisor pencils need a prime base field".into())),
            };
            let ext = Field::finite(p, 2)?;
            let (ea, eb, ec) = (ext.embed(a)?, ext.embed(b)?, ext.embed(c)?);
            let r = ext
                .elements()?
                .into_iter()
                .find(|u| (&(&(&ea * &u.square()) + &(&eb * u)) + &ec).is_zero())
                .ok_or_else(|| Error::structural("quadratic has no root in the quadratic extension"))?;
            pts.push(point(&r, &ext.one(), &embed_param(param, &ext)?)?);
        }
    }
    let z = ZeroCycle::from_points(&pts);
    if z.degree() != 2 || !z.is_multiplicity_free() {
        return Err(Error::structural("curve map is not injective on the divisor"));
    }
    Ok(z)
}

/// Pencil from `fixed + d1` (at `t = 1`) to `fixed + d2`.
pub fn connect_divisors(
    form: &QuadraticForm,
    param: &[Vec<Scalar>],
    fixed: &ZeroCycle,
    d1: &ZeroCycle,
    d2: &ZeroCycle,
) -> Result<PencilWitness> {
    let f = form.field();
    if !param_on_quadric(form, param) {
        return Err(Error::invalid("curve does not lie on the quadric"));
    }
    let f1 = binary_form_of(f, param, d1)?;
    let f2 = binary_form_of(f, param, d2)?;
    let lin = |i: usize| Poly::from_coeffs(f, vec![f2[i].clone(), &f1[i] - &f2[i]]);
    let (a, b, c) = (lin(0), lin(1), lin(2));
    let validity = b.mul(&b).sub(&a.mul(&c).scale(&f.from_i64(4)));
    let w = PencilWitness {
        kind: WitnessKind::DivisorPencil,
        field: f.clone(),
        algebra: None,
        data: SegmentData::DivisorPencil { form: form.clone(), param: param.to_vec(), f1, f2, fixed: fixed.clone() },
        start: Endpoint::Cycle(fixed.add(d1)),
        end: Endpoint::Cycle(fixed.add(d2)),
        validity,
    };
    if w.validity.is_zero() || w.point_at(&f.one())? != w.start || w.point_at(&f.zero())? != w.end {
        return Err(Error::ConstructionFailed("divisor pencil does not interpolate its endpoints".into()));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointcount::{enumerate_points, VarietyModel, DEFAULT_BUDGET};
    use crate::witness::{default_samples, verify_witness};

    #[test]
    fn pencil_on_a_line_over_f3() {
        // x0 x1 + x2 x3 contains the line x1 = x3 = 0
        let f = Field::prime(3).unwrap();
        let form = QuadraticForm::from_upper_i64(&f, &[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]]).unwrap();
        let e = |i: usize| (0..4).map(|j| if i == j { f.one() } else { f.zero() }).collect::<Vec<_>>();
        let (p, q) = (e(0), e(2));
        let param: Vec<Vec<Scalar>> = (0..4).map(|i| vec![p[i].clone(), q[i].clone()]).collect();
        let on_line: Vec<ClosedPoint> = enumerate_points(&VarietyModel::Quadric(form.clone()), 2, DEFAULT_BUDGET)
            .unwrap()
            .into_iter()
            .filter(|c| param_of(&param, c.coords()).unwrap().is_some())
            .collect();
        // 4 rational points and (9 + 1 - 4) / 2 = 3 quadratic points
        assert_eq!(on_line.len(), 7);
        let rational: Vec<_> = on_line.iter().filter(|c| c.degree() == 1).cloned().collect();
        let quad = on_line.iter().find(|c| c.degree() == 2).unwrap().clone();
        let d1 = ZeroCycle::from_points(&rational[..2]);
        let d2 = ZeroCycle::from_points(&[quad]);
        let w = connect_divisors(&form, &param, &ZeroCycle::default(), &d1, &d2).unwrap();
        let r = verify_witness(&w, &default_samples(&f, true));
        assert!(r.pass, "{:?}", r.failures().collect::<Vec<_>>());
        let d3 = ZeroCycle::from_points(&rational[1..3]);
        assert!(connect_divisors(&form, &param, &ZeroCycle::default(), &d1, &d3).is_ok());
    }
}
