//! Quadratic forms and rational curves on their projective quadrics.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::{Field, Poly, Scalar};
use crate::witness::{Endpoint, PencilWitness, SegmentData, WitnessChain, WitnessKind};

const AUX_SEARCH: usize = 2_000;

/// `q(x) = Σ_{i ≤ j} c_ij x_i x_j`, stored as the upper triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    field: Field,
    n: usize,
    /// `coeffs[i][j - i]` is `c_ij` for `j ≥ i`.
    coeffs: Vec<Vec<Scalar>>,
}

impl QuadraticForm {
    /// From a full `n x n` table; only entries with `i ≤ j` are read.
    pub fn from_upper(field: &Field, table: &[Vec<Scalar>]) -> Result<QuadraticForm> {
        let n = table.len();
        if table.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("coefficient table must be square"));
        }
        let coeffs: Vec<Vec<Scalar>> = (0..n).map(|i| table[i][i..].to_vec()).collect();
        let q = QuadraticForm { field: field.clone(), n, coeffs };
        if q.coeffs.iter().flatten().all(|c| c.is_zero()) {
            return Err(Error::invalid("quadratic form is zero"));
        }
        Ok(q)
    }

    pub fn from_upper_i64(field: &Field, table: &[&[i64]]) -> Result<QuadraticForm> {
        let t: Vec<Vec<Scalar>> = table.iter().map(|r| r.iter().map(|&c| field.from_i64(c)).collect()).collect();
        QuadraticForm::from_upper(field, &t)
    }

    pub fn diagonal(field: &Field, diag: &[Scalar]) -> Result<QuadraticForm> {
        let n = diag.len();
        let mut t = vec![vec![field.zero(); n]; n];
        for (i, d) in diag.iter().enumerate() {
            t[i][i] = d.clone();
        }
        QuadraticForm::from_upper(field, &t)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Number of variables.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, i: usize, j: usize) -> Scalar {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.coeffs[i][j - i].clone()
    }

    pub fn upper_table(&self) -> Vec<Vec<Scalar>> {
        (0..self.n).map(|i| (0..self.n).map(|j| if j < i { self.field.zero() } else { self.coeff(i, j) }).collect()).collect()
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for i in 0..self.n {
            if x[i].is_zero() {
                continue;
            }
            for j in i..self.n {
                let c = &self.coeffs[i][j - i];
                if !c.is_zero() {
                    acc = &acc + &(&(c * &x[i]) * &x[j]);
                }
            }
        }
        acc
    }

    /// `b(x, y) = q(x + y) - q(x) - q(y)`.
    pub fn polar(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for i in 0..self.n {
            for j in i..self.n {
                let c = &self.coeffs[i][j - i];
                if c.is_zero() {
                    continue;
                }
                let term = if i == j {
                    &(&x[i] * &y[i]) + &(&x[i] * &y[i])
                } else {
                    &(&x[i] * &y[j]) + &(&x[j] * &y[i])
                };
                acc = &acc + &(c * &term);
            }
        }
        acc
    }

    /// `q` applied to a vector of polynomials.
    pub fn eval_poly(&self, x: &[Poly]) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for i in 0..self.n {
            for j in i..self.n {
                let c = &self.coeffs[i][j - i];
                if !c.is_zero() {
                    acc = acc.add(&x[i].mul(&x[j]).scale(c));
                }
            }
        }
        acc
    }

    pub fn base_change(&self, target: &Field) -> Result<QuadraticForm> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|r| r.iter().map(|c| target.embed(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(QuadraticForm { field: target.clone(), n: self.n, coeffs })
    }

    pub fn is_on(&self, p: &[Scalar]) -> bool {
        p.len() == self.n && p.iter().any(|c| !c.is_zero()) && self.eval(p).is_zero()
    }
}

/// Scales a nonzero vector so its first nonzero entry is 1.
pub fn normalize_point(p: &[Scalar]) -> Option<Vec<Scalar>> {
    let lead = p.iter().find(|c| !c.is_zero())?;
    let inv = lead.inv()?;
    Some(p.iter().map(|c| c * &inv).collect())
}

/// `t ↦ ψ_p(x t + y (1 - t))` with `ψ_p(z) = b(p, z) z - q(z) p`: the second
/// intersection of the line through `p` and `z` with the quadric.
fn projection_curve(q: &QuadraticForm, p: &[Scalar], x: &[Scalar], y: &[Scalar]) -> Vec<Poly> {
    let f = q.field();
    let z: Vec<Poly> = x.iter().zip(y).map(|(a, b)| Poly::from_coeffs(f, vec![b.clone(), a - b])).collect();
    let pp: Vec<Poly> = p.iter().map(|c| Poly::constant(c.clone())).collect();
    // b(p, z) is linear in t
    let mut bpz = Poly::zero(f);
    for i in 0..q.dim() {
        let mut e = vec![f.zero(); q.dim()];
        e[i] = f.one();
        let coef = q.polar(p, &e);
        bpz = bpz.add(&z[i].scale(&coef));
    }
    let qz = q.eval_poly(&z);
    z.iter().zip(&pp).map(|(zi, pi)| bpz.mul(zi).sub(&qz.mul(pi))).collect()
}

fn line_curve(x: &[Scalar], y: &[Scalar], f: &Field) -> Vec<Poly> {
    x.iter().zip(y).map(|(a, b)| Poly::from_coeffs(f, vec![b.clone(), a - b])).collect()
}

fn curve_segment(q: &QuadraticForm, curve: Vec<Poly>, p1: &[Scalar], p2: &[Scalar]) -> Result<PencilWitness> {
    let f = q.field();
    let validity = curve.iter().fold(Poly::zero(f), |g, c| g.gcd(c));
    let w = PencilWitness {
        kind: WitnessKind::QuadricLine,
        field: f.clone(),
        algebra: None,
        data: SegmentData::QuadricCurve { form: q.clone(), curve },
        start: Endpoint::Point(p1.to_vec()),
        end: Endpoint::Point(p2.to_vec()),
        validity,
    };
    if w.validity.is_zero()
        || w.point_at(&f.one())? != w.start
        || w.point_at(&f.zero())? != w.end
    {
        return Err(Error::ConstructionFailed("quadric curve does not interpolate its endpoints".into()));
    }
    Ok(w)
}

/// One segment from `p1` to `p2`: the line when it lies on the quadric,
/// otherwise a projection conic through an auxiliary point.
fn single_segment(q: &QuadraticForm, p1: &[Scalar], p2: &[Scalar], rng: &mut ChaCha8Rng) -> Result<Option<PencilWitness>> {
    let f = q.field();
    if q.polar(p1, p2).is_zero() {
        return curve_segment(q, line_curve(p1, p2, f), p1, p2).map(Some);
    }
    for _ in 0..AUX_SEARCH {
        let y: Vec<Scalar> = (0..q.dim()).map(|_| f.random(rng)).collect();
        // second intersection of the line p1 y with the quadric
        let b = q.polar(p1, &y);
        if b.is_zero() {
            continue;
        }
        let qy = q.eval(&y);
        let p: Vec<Scalar> = y.iter().zip(p1).map(|(yi, pi)| &(&b * yi) - &(&qy * pi)).collect();
        if q.polar(&p, p2).is_zero() || normalize_point(&p).is_none() {
            continue;
        }
        let curve = projection_curve(q, &p, p1, p2);
        return curve_segment(q, curve, p1, p2).map(Some);
    }
    Ok(None)
}

/// Chain of at most two curves on `q = 0` from `p1` (at `t = 1`) to `p2`.
pub fn connect_quadric_points(q: &QuadraticForm, p1: &[Scalar], p2: &[Scalar], seed: u64) -> Result<WitnessChain> {
    if !q.is_on(p1) || !q.is_on(p2) {
        return Err(Error::invalid("endpoints must be points of the quadric"));
    }
    let p1 = normalize_point(p1).expect("nonzero");
    let p2 = normalize_point(p2).expect("nonzero");
    if p1 == p2 {
        return Ok(WitnessChain::default());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Some(w) = single_segment(q, &p1, &p2, &mut rng)? {
        return Ok(WitnessChain::single(w));
    }
    // through an intermediate point on the quadric
    let f = q.field();
    for _ in 0..AUX_SEARCH {
        let y: Vec<Scalar> = (0..q.dim()).map(|_| f.random(&mut rng)).collect();
        let b = q.polar(&p1, &y);
        let qy = q.eval(&y);
        let m: Vec<Scalar> = y.iter().zip(&p1).map(|(yi, pi)| &(&b * yi) - &(&qy * pi)).collect();
        let Some(m) = normalize_point(&m) else { continue };
        if m == p1 || m == p2 {
            continue;
        }
        let (Some(a), Some(c)) = (single_segment(q, &p1, &m, &mut rng)?, single_segment(q, &m, &p2, &mut rng)?) else {
            continue;
        };
        return Ok(WitnessChain { segments: vec![a, c] });
    }
    Err(Error::FieldTooSmall("no auxiliary point off both tangent hyperplanes".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{default_samples, verify_chain};

    fn pts(f: &Field, v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&c| f.from_i64(c)).collect()
    }

    #[test]
    fn polar_matches_definition() {
        let f = Field::prime(7).unwrap();
        let q = QuadraticForm::from_upper_i64(&f, &[&[1, 2, 3], &[0, 4, 5], &[0, 0, 6]]).unwrap();
        let x = pts(&f, &[1, 2, 3]);
        let y = pts(&f, &[4, 0, 6]);
        let s: Vec<Scalar> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        assert_eq!(q.polar(&x, &y), &(&q.eval(&s) - &q.eval(&x)) - &q.eval(&y));
    }

    #[test]
    fn conic_parametrization_over_q() {
        let q = Field::rationals();
        // xz - y^2
        let form = QuadraticForm::from_upper_i64(&q, &[&[0, 0, 1], &[0, -1, 0], &[0, 0, 0]]).unwrap();
        let a = pts(&q, &[1, 0, 0]);
        let b = pts(&q, &[0, 0, 1]);
        let chain = connect_quadric_points(&form, &a, &b, 0).unwrap();
        assert_eq!(chain.len(), 1);
        assert!(verify_chain(&chain, &default_samples(&q, false)).pass);
        assert!(connect_quadric_points(&form, &a, &a, 0).unwrap().is_empty());
    }

    #[test]
    fn random_points_on_quadric_surface_f5() {
        let f = Field::prime(5).unwrap();
        let form = QuadraticForm::diagonal(&f, &pts(&f, &[1, 1, -1, -1])).unwrap();
        let points: Vec<Vec<Scalar>> = crate::pointcount::projective_points(&f, 4)
            .into_iter()
            .filter(|p| form.is_on(p))
            .collect();
        assert_eq!(points.len(), 36);
        for (k, p) in points.iter().enumerate().step_by(5) {
            let r = &points[(k * 7 + 3) % points.len()];
            let chain = connect_quadric_points(&form, p, r, k as u64).unwrap();
            assert!(chain.len() <= 2);
            for s in &chain.segments {
                if let SegmentData::QuadricCurve { curve, .. } = &s.data {
                    assert!(form.eval_poly(curve).is_zero());
                }
            }
            assert!(verify_chain(&chain, &default_samples(&f, true)).pass);
        }
    }

    #[test]
    fn off_quadric_endpoint_rejected() {
        let f = Field::prime(3).unwrap();
        let form = QuadraticForm::diagonal(&f, &pts(&f, &[1, 1, -1])).unwrap();
        assert!(connect_quadric_points(&form, &pts(&f, &[1, 0, 0]), &pts(&f, &[1, 0, 1]), 0).is_err());
    }
}
