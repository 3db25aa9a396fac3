//! Lines of étale subalgebras: maximal ones through the generator map, and
//! the three-segment path in exponent two.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::csa::involution::pfaffian_of_symmetric;
use crate::csa::{seed_symplectic, Element, Involution, InvolutionKind};
use crate::error::{Error, Result};
use crate::etale::{generate_etale, is_et_m_point, EtaleSubalgebra};
use crate::exactalg::{Matrix, Poly, Scalar};
use crate::witness::{
    default_samples, interpolate_validity, lift, Endpoint, PencilWitness, SegmentData, WitnessChain, WitnessKind,
};

const GENERATOR_DRAWS: usize = 200;

/// `disc Prd(t a + (1 - t) b)`, of degree at most `n(n - 1)` in `t`.
fn max_line_validity(a: &Element, b: &Element) -> Result<Poly> {
    let n = a.algebra().degree();
    interpolate_validity(a.algebra().field(), n * (n - 1), |ef| {
        let v = lift(&[a, b], ef)?;
        Ok(move |t: &Scalar| Ok(v[0].affine(&v[1], t).reduced_char_poly()?.discriminant()))
    })
}

/// `disc Prp(t a + (1 - t) b)`, times `Nrd(t + (1 - t) u)` when the segment
/// twists the involution by `u`. Degree at most `m(m - 1)` (plus `n`).
fn pfaffian_line_validity(a: &Element, b: &Element, twist: Option<&Element>) -> Result<Poly> {
    let n = a.algebra().degree();
    let m = n / 2;
    let bound = m * (m - 1) + if twist.is_some() { n } else { 0 };
    interpolate_validity(a.algebra().field(), bound, |ef| {
        let mut xs = vec![a, b];
        if let Some(u) = twist {
            xs.push(u);
        }
        let v = lift(&xs, ef)?;
        Ok(move |t: &Scalar| {
            let nrd = match v.get(2) {
                Some(u) => {
                    let one = u.algebra().one();
                    let r = one.affine(u, t).reduced_norm()?;
                    if r.is_zero() {
                        return Ok(r);
                    }
                    r
                }
                None => t.one_like(),
            };
            let prp = pfaffian_of_symmetric(&v[0].affine(&v[1], t))?;
            Ok(&prp.discriminant() * &nrd)
        })
    })
}

/// A random element of `E` generating all of `E`.
fn random_generator(e: &EtaleSubalgebra, rng: &mut ChaCha8Rng) -> Result<Element> {
    let algebra = e.algebra();
    let f = algebra.field();
    for _ in 0..GENERATOR_DRAWS {
        let mut coords = vec![f.zero(); algebra.dim()];
        for b in e.space().basis() {
            let c = f.random(rng);
            for (x, y) in coords.iter_mut().zip(b) {
                *x = &*x + &(&c * y);
            }
        }
        let x = algebra.element(coords)?;
        if x.minimal_polynomial().deg() == e.dim() {
            return Ok(x);
        }
    }
    Err(Error::FieldTooSmall("no generator found among random elements of the subalgebra".into()))
}

fn etale_segment(start: &EtaleSubalgebra, end: &EtaleSubalgebra, a: &Element, b: &Element, m: usize, validity: Poly) -> PencilWitness {
    PencilWitness {
        kind: WitnessKind::EtaleLine,
        field: a.algebra().field().clone(),
        algebra: Some(a.algebra().clone()),
        data: SegmentData::EtaleLine { a: a.clone(), b: b.clone(), m },
        start: Endpoint::Etale(start.clone()),
        end: Endpoint::Etale(end.clone()),
        validity,
    }
}

fn has_interior_valid_point(v: &Poly) -> bool {
    let f = v.field();
    match f.size() {
        None => true,
        Some(q) if q <= 2 => true,
        Some(q) => f.sample_points(q as usize).iter().skip(2).any(|t| !v.eval(t).is_zero()),
    }
}

/// A line of maximal étale subalgebras from `e1` (at `t = 1`) to `e2`.
pub fn connect_max_etale(e1: &EtaleSubalgebra, e2: &EtaleSubalgebra, retry_budget: usize, seed: u64) -> Result<PencilWitness> {
    if e1.algebra() != e2.algebra() {
        return Err(Error::invalid("subalgebras of different algebras"));
    }
    if !e1.is_maximal() || !e2.is_maximal() {
        return Err(Error::invalid("connect_max_etale needs maximal étale subalgebras"));
    }
    let n = e1.algebra().degree();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut a, mut b) = (e1.generator().clone(), e2.generator().clone());
    for _ in 0..=retry_budget {
        let v = max_line_validity(&a, &b)?;
        if !v.is_zero() && has_interior_valid_point(&v) {
            return Ok(etale_segment(e1, e2, &a, &b, n, v));
        }
        a = random_generator(e1, &mut rng)?;
        b = random_generator(e2, &mut rng)?;
    }
    Err(Error::FieldTooSmall(format!(
        "no line with a valid interior parameter after {retry_budget} redraws; extend scalars"
    )))
}

/// `u` with `σ2(x) u = u σ1(x)` for all `x`, normalized so its first nonzero
/// coordinate is 1.
pub fn solve_inner_twist(sigma1: &Involution, sigma2: &Involution) -> Result<Element> {
    let algebra = sigma1.algebra();
    if sigma2.algebra() != algebra {
        return Err(Error::invalid("involutions on different algebras"));
    }
    if sigma1.kind() != sigma2.kind() {
        return Err(Error::invalid("involutions of different types are not inner twists by a symmetric element"));
    }
    let mut stacked: Option<Matrix> = None;
    for x in algebra.basis_elements() {
        let m = sigma2.apply(&x).left_mult_matrix().sub(&sigma1.apply(&x).right_mult_matrix());
        stacked = Some(match stacked {
            None => m,
            Some(s) => s.vstack(&m),
        });
    }
    let ker = stacked.expect("nonzero dimension").kernel();
    if ker.is_empty() {
        return Err(Error::structural("no twisting element; the involutions are not inner twists of each other"));
    }
    let f = algebra.field();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7157);
    for attempt in 0..GENERATOR_DRAWS {
        let mut c = vec![f.zero(); algebra.dim()];
        for (k, v) in ker.iter().enumerate() {
            let coef = if attempt == 0 { if k == 0 { f.one() } else { f.zero() } } else { f.random(&mut rng) };
            for (x, y) in c.iter_mut().zip(v) {
                *x = &*x + &(&coef * y);
            }
        }
        let Some(lead) = c.iter().find(|x| !x.is_zero()).cloned() else {
            continue;
        };
        let inv = lead.inv().expect("nonzero");
        let u = algebra.element(c.iter().map(|x| x * &inv).collect())?;
        if u.is_invertible() {
            if sigma1.apply(&u) != u {
                return Err(Error::structural("twisting element is not symmetric"));
            }
            return Ok(u);
        }
    }
    Err(Error::FieldTooSmall("no invertible twisting element found".into()))
}

/// A symplectic involution fixing `l` pointwise: `inn_{v⁻¹} ∘ τ` with
/// `v = s + τ(s)` for some `s` satisfying `s a = τ(a) s`.
pub fn symplectic_fixing_involution(l: &EtaleSubalgebra, tau: &Involution, seed: u64) -> Result<Involution> {
    let algebra = tau.algebra();
    if l.algebra() != algebra {
        return Err(Error::invalid("subalgebra and involution live in different algebras"));
    }
    if tau.kind() != InvolutionKind::Symplectic {
        return Err(Error::invalid("τ must be symplectic"));
    }
    let n = algebra.degree();
    if n % 2 != 0 || 2 * l.dim() > n {
        return Err(Error::invalid(format!(
            "a commutative subalgebra fixed by a symplectic involution has dimension at most {}; got {}",
            n / 2,
            l.dim()
        )));
    }
    let a = l.generator();
    if tau.is_symmetric(a) {
        return Ok(tau.clone());
    }
    let ta = tau.apply(a);
    let ker = a.right_mult_matrix().sub(&ta.left_mult_matrix()).kernel();
    let f = algebra.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATOR_DRAWS {
        let mut c = vec![f.zero(); algebra.dim()];
        for v in &ker {
            let coef = f.random(&mut rng);
            for (x, y) in c.iter_mut().zip(v) {
                *x = &*x + &(&coef * y);
            }
        }
        let s = algebra.element(c)?;
        let v = s.add(&tau.apply(&s));
        if let Some(vi) = v.inverse() {
            let sigma = tau.inner_twist(&vi)?;
            if sigma.kind() != InvolutionKind::Symplectic || !sigma.is_symmetric(a) {
                return Err(Error::structural("twisted involution does not fix the generator"));
            }
            return Ok(sigma);
        }
    }
    Err(Error::FieldTooSmall("no invertible v = s + τ(s) found".into()))
}

fn segment_ok(w: &PencilWitness, m: usize, samples: &[Scalar], open_set: &dyn Fn(&EtaleSubalgebra) -> bool) -> Result<bool> {
    for t in samples {
        if w.validity.eval(t).is_zero() {
            continue;
        }
        match w.point_at(t)? {
            Endpoint::Etale(e) => {
                if !is_et_m_point(&e, m)? || !open_set(&e) {
                    return Ok(false);
                }
            }
            _ => unreachable!("étale segment"),
        }
    }
    Ok(true)
}

/// Chain `L1 -> F(α1) -> F(u α1) -> L2` in `ét_m(A)` for `A` of exponent two
/// and degree `2m`. The open set is a caller predicate, checked at the
/// default sample parameters of every segment.
pub fn connect_exp2(
    l1: &EtaleSubalgebra,
    l2: &EtaleSubalgebra,
    open_set: &dyn Fn(&EtaleSubalgebra) -> bool,
    seed: u64,
    retry_budget: usize,
) -> Result<WitnessChain> {
    let algebra = l1.algebra();
    if l2.algebra() != algebra {
        return Err(Error::invalid("subalgebras of different algebras"));
    }
    if !algebra.exponent_two_certified() {
        return Err(Error::invalid("algebra carries no exponent-two certificate"));
    }
    let n = algebra.degree();
    let m = l1.dim();
    if l2.dim() != m || 2 * m != n {
        return Err(Error::invalid(format!("expected two {}-dimensional subalgebras in degree {n}", n / 2)));
    }
    for l in [l1, l2] {
        if !is_et_m_point(l, m)? {
            return Err(Error::invalid("endpoint is not of type [2, ..., 2]"));
        }
        if !open_set(l) {
            return Err(Error::invalid("endpoint lies outside the open set"));
        }
    }
    let samples = default_samples(algebra.field(), true);
    if l1 == l2 {
        let b = l1.generator();
        let v = Poly::constant(b.minimal_polynomial().discriminant());
        return Ok(WitnessChain::single(etale_segment(l1, l2, b, b, m, v)));
    }
    let tau = seed_symplectic(algebra)?;
    let sigma1 = symplectic_fixing_involution(l1, &tau, seed)?;
    let sigma2 = symplectic_fixing_involution(l2, &tau, seed.wrapping_add(1))?;
    let u = solve_inner_twist(&sigma1, &sigma2)?;
    let (b1, b2) = (l1.generator(), l2.generator());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..retry_budget.max(1) {
        let alpha1 = sigma1.random_symmetric(&mut rng);
        let Ok(e1) = generate_etale(&alpha1) else { continue };
        if !is_et_m_point(&e1, m)? || !open_set(&e1) {
            continue;
        }
        let alpha2 = u.mul(&alpha1);
        let Ok(e2) = generate_etale(&alpha2) else { continue };
        if !is_et_m_point(&e2, m)? || !open_set(&e2) {
            continue;
        }
        let s1 = etale_segment(l1, &e1, b1, &alpha1, m, pfaffian_line_validity(b1, &alpha1, None)?);
        let s2 = etale_segment(&e1, &e2, &alpha1, &alpha2, m, pfaffian_line_validity(&alpha1, &alpha2, Some(&u))?);
        let s3 = etale_segment(&e2, l2, &alpha2, b2, m, pfaffian_line_validity(&alpha2, b2, None)?);
        let segments = vec![s1, s2, s3];
        if segments.iter().any(|s| s.validity.is_zero()) {
            continue;
        }
        let mut ok = true;
        for s in &segments {
            if !segment_ok(s, m, &samples, open_set)? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(WitnessChain { segments });
        }
    }
    Err(Error::FieldTooSmall(format!("no admissible α₁ found within {retry_budget} draws")))
}
