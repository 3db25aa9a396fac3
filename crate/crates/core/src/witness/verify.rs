//! Independent re-checking of witnesses: endpoints, validity, membership at
//! sample parameters and chain continuity.

use crate::etale::is_et_m_point;
use crate::witness::divisor::param_on_quadric;
use crate::exactalg::{Field, Scalar};
use crate::witness::{Endpoint, PencilWitness, SegmentData, WitnessChain};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl Report {
    fn from_checks(checks: Vec<Check>) -> Report {
        Report { pass: checks.iter().all(|c| c.ok), checks }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

fn check(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), ok, detail: detail.into() }
}

/// Every element of a finite field when `exhaustive` (or when it has at most
/// 16 elements); otherwise `0, 1, 2, 1/2, -1` where these are defined.
pub fn default_samples(field: &Field, exhaustive: bool) -> Vec<Scalar> {
    if let Some(q) = field.size() {
        if exhaustive || q <= 16 {
            return field.elements().expect("finite field");
        }
    }
    let mut out: Vec<Scalar> = Vec::new();
    let two = field.from_i64(2);
    let mut cands = vec![field.zero(), field.one(), two.clone()];
    if let Some(h) = two.inv() {
        cands.push(h);
    }
    cands.push(-field.one());
    for c in cands {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

fn membership(w: &PencilWitness, p: &Endpoint) -> Result<(), String> {
    match (&w.data, p) {
        (SegmentData::Pencil { ranks, .. }, Endpoint::Ideals(ideals)) => {
            let ind = match &w.algebra {
                Some(a) => a.module_presentation().map_err(|e| e.to_string())?.deg_d(),
                None => return Err("pencil without algebra".into()),
            };
            for (i, r) in ideals.iter().zip(ranks) {
                if !i.is_closed() || i.rdim() != r * ind {
                    return Err(format!("level has rdim {} instead of {}", i.rdim(), r * ind));
                }
            }
            if ideals.windows(2).any(|x| !x[1].contains_ideal(&x[0])) {
                return Err("flag levels are not nested".into());
            }
            Ok(())
        }
        (SegmentData::EtaleLine { m, .. }, Endpoint::Etale(e)) => match is_et_m_point(e, *m) {
            Ok(true) if e.is_commutative() => Ok(()),
            Ok(_) => Err(format!("subalgebra of dimension {} is not in ét_{m}", e.dim())),
            Err(err) => Err(err.to_string()),
        },
        (SegmentData::QuadricCurve { form, .. }, Endpoint::Point(x)) => {
            if form.is_on(x) {
                Ok(())
            } else {
                Err("point is off the quadric".into())
            }
        }
        (SegmentData::DivisorPencil { form, fixed, .. }, Endpoint::Cycle(z)) => {
            if !z.is_multiplicity_free() || z.degree() != fixed.degree() + 2 {
                return Err(format!("cycle {z} is not reduced of degree {}", fixed.degree() + 2));
            }
            for (pt, _) in z.terms() {
                let on = form.base_change(&pt.field()).map(|g| g.is_on(pt.coords())).unwrap_or(false);
                if !on {
                    return Err(format!("{pt} is off the quadric"));
                }
            }
            Ok(())
        }
        _ => Err("endpoint type does not match the segment".into()),
    }
}

fn verify_into(w: &PencilWitness, samples: &[Scalar], prefix: &str, checks: &mut Vec<Check>) {
    let f = &w.field;
    checks.push(check(
        format!("{prefix}validity_nonzero"),
        !w.validity.is_zero(),
        format!("validity = {}", w.validity),
    ));
    for (name, t, expected) in [("start_match", f.one(), &w.start), ("end_match", f.zero(), &w.end)] {
        let (ok, detail) = match w.point_at(&t) {
            Ok(p) if p == *expected => match membership(w, &p) {
                Ok(()) => (true, "exact".to_string()),
                Err(e) => (false, format!("endpoint is not a valid point: {e}")),
            },
            Ok(_) => (false, format!("curve at t = {t} differs from the stored endpoint")),
            Err(e) => (false, e.to_string()),
        };
        checks.push(check(format!("{prefix}{name}"), ok, detail));
    }
    if let SegmentData::QuadricCurve { form, curve } = &w.data {
        let ok = curve.len() == form.dim() && form.eval_poly(curve).is_zero();
        checks.push(check(format!("{prefix}on_quadric_identity"), ok, "q(curve(t)) expanded in t"));
    }
    if let SegmentData::DivisorPencil { form, param, .. } = &w.data {
        let ok = param_on_quadric(form, param);
        checks.push(check(format!("{prefix}on_quadric_identity"), ok, "q(param(1, u)) expanded in u"));
    }
    let mut valid = 0;
    let mut failure = None;
    for t in samples {
        if t.field() != *f {
            failure = Some(format!("sample {t} is not in {f}"));
            break;
        }
        if w.validity.eval(t).is_zero() {
            continue;
        }
        valid += 1;
        let res = w.point_at(t).map_err(|e| e.to_string()).and_then(|p| membership(w, &p));
        if let Err(e) = res {
            failure = Some(format!("t = {t}: {e}"));
            break;
        }
    }
    let detail = match &failure {
        Some(e) => e.clone(),
        None => format!("{valid} of {} samples valid, all members", samples.len()),
    };
    checks.push(check(format!("{prefix}samples"), failure.is_none(), detail));
}

pub fn verify_witness(w: &PencilWitness, samples: &[Scalar]) -> Report {
    let mut checks = Vec::new();
    verify_into(w, samples, "", &mut checks);
    Report::from_checks(checks)
}

pub fn verify_chain(chain: &WitnessChain, samples: &[Scalar]) -> Report {
    let mut checks = Vec::new();
    if chain.is_empty() {
        checks.push(check("empty_chain", true, "endpoints coincide"));
    }
    for (i, s) in chain.segments.iter().enumerate() {
        verify_into(s, samples, &format!("segment[{i}]."), &mut checks);
    }
    for (i, pair) in chain.segments.windows(2).enumerate() {
        let ok = pair[0].end == pair[1].start;
        checks.push(check(
            format!("continuity[{i}]"),
            ok,
            if ok { "end of segment equals start of next" } else { "intermediate endpoints differ" },
        ));
    }
    Report::from_checks(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csa::Algebra;
    use crate::ideals::RightIdeal;
    use crate::witness::connect_ideals;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sample_sets() {
        assert_eq!(default_samples(&Field::prime(5).unwrap(), true).len(), 5);
        assert_eq!(default_samples(&Field::rationals(), false).len(), 5);
        assert_eq!(default_samples(&Field::prime(101).unwrap(), false).len(), 5);
    }

    #[test]
    fn tampering_is_detected() {
        let f = Field::prime(5).unwrap();
        let a = Algebra::matrix(&f, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let i = RightIdeal::random(&a, 1, &mut rng).unwrap();
        let j = RightIdeal::random(&a, 1, &mut rng).unwrap();
        assert_ne!(i, j);
        let w = connect_ideals(&i, &j).unwrap();
        let samples = default_samples(&f, true);
        assert!(verify_witness(&w, &samples).pass);

        let mut bad = w.clone();
        if let SegmentData::Pencil { w: cols, w_prime, .. } = &mut bad.data {
            cols[0] = w_prime[0].clone();
        }
        let r = verify_witness(&bad, &samples);
        assert!(!r.pass);
        assert!(r.failures().any(|c| c.name == "start_match"));

        let mut chain = WitnessChain { segments: vec![w.clone(), w.clone()] };
        assert!(!verify_chain(&chain, &samples).pass);
        chain.segments.pop();
        assert!(verify_chain(&chain, &samples).pass);
    }
}
