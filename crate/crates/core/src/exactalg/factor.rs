//! Polynomial factorization over finite fields, and the limited cases
//! supported over the rationals.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::field::{Field, Scalar};
use crate::exactalg::poly::Poly;

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// lexicographically by coefficients (lowest degree first).
pub type Factorization = Vec<(Poly, usize)>;

fn field_order(f: &Field) -> Result<BigUint> {
    match f {
        Field::Rationals => Err(Error::UnsupportedField("finite field required".into())),
        _ => Ok(BigUint::from(f.characteristic()).pow(f.prime_degree() as u32)),
    }
}

pub(crate) fn sort_factors(factors: &mut Factorization) {
    factors.sort_by(|(a, _), (b, _)| a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs())));
}

/// Squarefree decomposition over a finite field: pairs `(g_i, i)` with
/// `f / lc = prod g_i^i` and each `g_i` squarefree, pairwise coprime.
pub fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    if f.is_zero() {
        return Err(Error::invalid("cannot factor the zero polynomial"));
    }
    let field = f.field().clone();
    let p = field.characteristic() as usize;
    let mut out = Vec::new();
    sqf_rec(&f.monic(), 1, p, &mut out);
    // merge equal multiplicities that arise from the p-th root recursion
    out.sort_by_key(|(_, m)| *m);
    let mut merged: Vec<(Poly, usize)> = Vec::new();
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, mm)) if *mm == m => *h = h.mul(&g),
            _ => merged.push((g, m)),
        }
    }
    Ok(merged)
}

fn sqf_rec(f: &Poly, mult: usize, p: usize, out: &mut Vec<(Poly, usize)>) {
    if f.is_constant() {
        return;
    }
    let df = f.derivative();
    let mut c = f.gcd(&df);
    let mut w = f.exact_div(&c).unwrap();
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).unwrap();
        if !z.is_constant() {
            out.push((z, i * mult));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w).unwrap();
    }
    if !c.is_constant() {
        // c is a p-th power
        let field = f.field();
        let inner: Vec<Scalar> = c
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(k, _)| k % p == 0)
            .map(|(_, a)| a.pth_root().expect("finite field"))
            .collect();
        let root = Poly::from_coeffs(field, inner);
        sqf_rec(&root, mult * p, p, out);
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let q = field_order(f.field())?;
    let x = Poly::x(f.field());
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 0;
    while 2 * (d + 1) <= rest.deg() {
        d += 1;
        h = h.pow_mod(&q, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            out.push((g.clone(), d));
            rest = rest.exact_div(&g).unwrap();
            h = h.rem(&rest);
        }
    }
    if !rest.is_constant() {
        let deg = rest.deg();
        out.push((rest, deg));
    }
    Ok(out)
}

/// Splits a monic squarefree `f` whose irreducible factors all have degree `d`.
pub fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
    let n = f.deg();
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let field = f.field().clone();
    let q = field_order(&field)?;
    let p = field.characteristic();
    loop {
        let a = Poly::from_coeffs(&field, (0..n).map(|_| field.random(rng)).collect());
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^{2^{kd-1}}
            let k = field.prime_degree();
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..k * d {
                t = t.mul_mod(&t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - 1u32) / 2u32;
            a.pow_mod(&e, f).sub(&Poly::one(&field))
        };
        let g = b.gcd(f);
        if !g.is_one() && g.deg() < n {
            let h = f.exact_div(&g).unwrap();
            let mut left = equal_degree(&g, d, rng)?;
            left.extend(equal_degree(&h, d, rng)?);
            return Ok(left);
        }
    }
}

/// Complete factorization over a finite field. Randomized splitting uses a
/// fixed seed, so the result (which is sorted anyway) is reproducible.
pub fn factor_finite(f: &Poly) -> Result<Factorization> {
    factor_finite_seeded(f, 0x5eed)
}

pub fn factor_finite_seeded(f: &Poly, seed: u64) -> Result<Factorization> {
    field_order(f.field())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(f)? {
        for (h, d) in distinct_degree(&g)? {
            for irr in equal_degree(&h, d, &mut rng)? {
                out.push((irr.monic(), m));
            }
        }
    }
    sort_factors(&mut out);
    Ok(out)
}

/// Irreducibility test over a finite field (Rabin).
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let q = field_order(f.field())?;
    let n = f.deg();
    if f.is_zero() || n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    let f = f.monic();
    let x = Poly::x(f.field());
    let frob_power = |k: usize| -> Poly {
        let mut h = x.clone();
        for _ in 0..k {
            h = h.pow_mod(&q, &f);
        }
        h
    };
    if !frob_power(n).sub(&x).rem(&f).is_zero() {
        return Ok(false);
    }
    for r in prime_divisors(n as u64) {
        let k = n / r as usize;
        if !frob_power(k).sub(&x).gcd(&f).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// First monic irreducible polynomial of degree `k` over a prime field, in
/// lexicographic order of the lower coefficients read from the constant term.
pub fn first_irreducible(field: &Field, k: usize) -> Result<Poly> {
    let p = match field {
        Field::Prime(p) => *p,
        _ => return Err(Error::invalid("first_irreducible expects a prime field")),
    };
    let total = p
        .checked_pow(k as u32)
        .ok_or_else(|| Error::BudgetExceeded("extension search space too large".into()))?;
    for idx in 0..total {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut i = idx;
        for _ in 0..k {
            coeffs.push(field.from_u64(i % p));
            i /= p;
        }
        coeffs.push(field.one());
        let f = Poly::from_coeffs(field, coeffs);
        if is_irreducible(&f)? {
            return Ok(f);
        }
    }
    Err(Error::structural(format!("no irreducible polynomial of degree {k}")))
}

/// Factorization over `Q`. Rational roots are found by divisor search; a
/// remaining cofactor of degree at most 3 without rational roots is
/// irreducible. Higher-degree cofactors need an explicit certificate, see
/// [`factor_rational_with_certificate`].
pub fn factor_rational(f: &Poly) -> Result<Factorization> {
    let (mut factors, rest) = split_rational_roots(f)?;
    if !rest.is_constant() {
        if rest.deg() > 3 {
            return Err(Error::UnsupportedField(format!(
                "cannot certify factorization of degree-{} factor {rest} over Q",
                rest.deg()
            )));
        }
        factors.push((rest, 1));
    }
    collect_multiplicities(&mut factors);
    sort_factors(&mut factors);
    Ok(factors)
}

/// Factorization over `Q` using caller-supplied candidate factors. Each
/// candidate must divide what remains; candidates of degree at most 3 are
/// checked for irreducibility, higher-degree ones are accepted as given.
pub fn factor_rational_with_certificate(f: &Poly, certificate: &[Poly]) -> Result<Factorization> {
    let mut rest = f.monic();
    let mut factors = Vec::new();
    for c in certificate {
        let c = c.monic();
        if c.deg() <= 3 && !split_rational_roots(&c)?.0.is_empty() && c.deg() > 1 {
            return Err(Error::invalid(format!("certificate factor {c} is reducible")));
        }
        while let Some(q) = rest.exact_div(&c) {
            if c.is_constant() {
                break;
            }
            factors.push((c.clone(), 1));
            rest = q;
        }
    }
    let mut tail = factor_rational(&rest)?;
    factors.append(&mut tail);
    collect_multiplicities(&mut factors);
    sort_factors(&mut factors);
    Ok(factors)
}

fn collect_multiplicities(factors: &mut Factorization) {
    let mut out: Factorization = Vec::new();
    for (g, m) in factors.drain(..) {
        if let Some(e) = out.iter_mut().find(|(h, _)| *h == g) {
            e.1 += m;
        } else {
            out.push((g, m));
        }
    }
    *factors = out;
}

/// Rational roots of a polynomial over `Q`.
pub fn rational_roots(f: &Poly) -> Result<Vec<BigRational>> {
    if !matches!(f.field(), Field::Rationals) {
        return Err(Error::UnsupportedField("rational_roots expects Q".into()));
    }
    if f.is_zero() {
        return Err(Error::invalid("roots of the zero polynomial"));
    }
    // clear denominators
    let mut lcm = BigInt::one();
    for c in f.coeffs() {
        lcm = lcm.lcm(c.as_rational().unwrap().denom());
    }
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c.as_rational().unwrap() * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    let mut start = 0;
    while ints[start].is_zero() {
        start += 1;
    }
    if start > 0 {
        roots.push(BigRational::zero());
    }
    let a0 = ints[start].abs();
    let an = ints.last().unwrap().abs();
    let num_div = small_divisors(&a0)?;
    let den_div = small_divisors(&an)?;
    for n in &num_div {
        for d in &den_div {
            for sign in [1i32, -1] {
                let r = BigRational::new(BigInt::from(*n) * sign, BigInt::from(*d));
                if !roots.contains(&r) && f.eval(&Scalar::Rational(r.clone())).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

fn small_divisors(n: &BigInt) -> Result<Vec<u64>> {
    let n = n
        .to_u64()
        .filter(|&v| v <= 1_000_000_000_000)
        .ok_or_else(|| Error::BudgetExceeded("coefficient too large for divisor search".into()))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Ok(out)
}

fn split_rational_roots(f: &Poly) -> Result<(Factorization, Poly)> {
    let field = f.field().clone();
    let mut rest = f.monic();
    let mut factors = Vec::new();
    for r in rational_roots(f)? {
        let lin = Poly::linear_root(&Scalar::Rational(r));
        while let Some(q) = rest.exact_div(&lin) {
            factors.push((lin.clone(), 1));
            rest = q;
        }
    }
    let _ = field;
    Ok((factors, rest))
}

/// Factorization over any supported field.
pub fn factor(f: &Poly) -> Result<Factorization> {
    match f.field() {
        Field::Rationals => factor_rational(f),
        _ => factor_finite(f),
    }
}

/// Multiplies a factorization back together (monic).
pub fn expand(field: &Field, factors: &Factorization) -> Poly {
    factors
        .iter()
        .fold(Poly::one(field), |acc, (g, m)| acc.mul(&g.pow(*m as u64)))
}
