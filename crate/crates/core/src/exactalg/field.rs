//! Ground fields and their exact scalars.
//!
//! Three kinds of field are supported: the rationals, prime fields `F_p`,
//! and explicit extensions `F_p[x]/(f)` with `f` monic irreducible. Scalars
//! carry enough context to do arithmetic on their own, so the usual
//! operators work directly on `&Scalar`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Largest magnitude produced when sampling random rationals.
const RATIONAL_SAMPLE_RANGE: i64 = 5;

/// Data of an extension field `F_p[x]/(f)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionSpec {
    p: u64,
    /// Monic modulus, lowest degree first; length `k + 1`.
    modulus: Vec<u64>,
}

impl ExtensionSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
}

/// A ground field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
    Extension(Arc<ExtensionSpec>),
}

/// An exact element of a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, p: u64 },
    Extension { coeffs: Vec<u64>, spec: Arc<ExtensionSpec> },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mod_mul(r, a, p);
        }
        a = mod_mul(a, a, p);
        e >>= 1;
    }
    r
}

fn mod_inv(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(mod_pow(a, p - 2, p))
    }
}

impl Field {
    pub fn rationals() -> Field {
        Field::Rationals
    }

    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    /// `F_p[x]/(f)` for a monic irreducible `f` given lowest degree first.
    pub fn extension(p: u64, modulus: Vec<u64>) -> Result<Field> {
        let base = Field::prime(p)?;
        let modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::invalid("extension modulus must be monic of degree >= 1"));
        }
        if modulus.len() == 2 {
            // a degree-1 extension is the prime field itself
            return Ok(base);
        }
        let f = crate::exactalg::Poly::from_coeffs(
            &base,
            modulus.iter().map(|&c| base.from_u64(c)).collect(),
        );
        if !crate::exactalg::factor::is_irreducible(&f)? {
            return Err(Error::invalid(format!("modulus {f} is not irreducible over F_{p}")));
        }
        Ok(Field::Extension(Arc::new(ExtensionSpec { p, modulus })))
    }

    /// `F_{p^k}` built on the first monic irreducible polynomial of degree `k`
    /// in lexicographic order of its lower coefficients.
    pub fn finite(p: u64, k: usize) -> Result<Field> {
        let base = Field::prime(p)?;
        if k == 0 {
            return Err(Error::invalid("extension degree must be >= 1"));
        }
        if k == 1 {
            return Ok(base);
        }
        let f = crate::exactalg::factor::first_irreducible(&base, k)?;
        let modulus = f
            .coeffs()
            .iter()
            .map(|c| c.prime_value().expect("prime field coefficient"))
            .collect();
        Ok(Field::Extension(Arc::new(ExtensionSpec { p, modulus })))
    }

    /// 0 for the rationals, otherwise the prime characteristic.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
            Field::Extension(s) => s.p,
        }
    }

    /// Degree over the prime field (1 for `Q` and `F_p`).
    pub fn prime_degree(&self) -> usize {
        match self {
            Field::Extension(s) => s.degree(),
            _ => 1,
        }
    }

    /// Number of elements, `None` for infinite or unrepresentably large fields.
    pub fn size(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(*p),
            Field::Extension(s) => s.p.checked_pow(s.degree() as u32),
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, Field::Rationals)
    }

    pub fn prime_subfield(&self) -> Field {
        match self {
            Field::Rationals => Field::Rationals,
            Field::Prime(p) => Field::Prime(*p),
            Field::Extension(s) => Field::Prime(s.p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_u64(&self, v: u64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Prime { value: v % p, p: *p },
            Field::Extension(s) => {
                let mut coeffs = vec![0; s.degree()];
                coeffs[0] = v % s.p;
                Scalar::Extension { coeffs, spec: s.clone() }
            }
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            _ => {
                let p = self.characteristic() as i128;
                let r = (v as i128).rem_euclid(p) as u64;
                self.from_u64(r)
            }
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            _ => {
                let p = BigInt::from(self.characteristic());
                let r = v.mod_floor(&p).to_u64().expect("reduced residue fits");
                self.from_u64(r)
            }
        }
    }

    /// Maps a rational number into this field; fails if the denominator is
    /// divisible by the characteristic.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        let inv = den
            .inv()
            .ok_or_else(|| Error::invalid(format!("denominator of {q} vanishes in characteristic {}", self.characteristic())))?;
        Ok(&num * &inv)
    }

    /// Extension element from coefficients on the power basis.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Scalar> {
        match self {
            Field::Extension(s) => {
                if coeffs.len() > s.degree() {
                    return Err(Error::invalid("too many coefficients for extension element"));
                }
                let mut c: Vec<u64> = coeffs.iter().map(|&x| x % s.p).collect();
                c.resize(s.degree(), 0);
                Ok(Scalar::Extension { coeffs: c, spec: s.clone() })
            }
            _ => {
                if coeffs.len() > 1 && coeffs[1..].iter().any(|&c| c != 0) {
                    return Err(Error::invalid("field has degree 1 over its prime field"));
                }
                Ok(self.from_u64(coeffs.first().copied().unwrap_or(0)))
            }
        }
    }

    /// The class of `x` in `F_p[x]/(f)`; for prime fields, fails.
    pub fn generator(&self) -> Result<Scalar> {
        match self {
            Field::Extension(_) => self.from_coeffs(&[0, 1]),
            _ => Err(Error::invalid("only extension fields have a power-basis generator")),
        }
    }

    /// All elements of a finite field in a fixed order (index digits base p,
    /// lowest coefficient fastest).
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        let q = self
            .size()
            .ok_or_else(|| Error::UnsupportedField("cannot enumerate an infinite field".into()))?;
        if q > 50_000_000 {
            return Err(Error::BudgetExceeded(format!("field of size {q} too large to enumerate")));
        }
        Ok((0..q).map(|i| self.element_from_index(i)).collect())
    }

    /// Element with index `i` in the order used by [`Field::elements`].
    pub fn element_from_index(&self, mut i: u64) -> Scalar {
        match self {
            Field::Extension(s) => {
                let mut coeffs = Vec::with_capacity(s.degree());
                for _ in 0..s.degree() {
                    coeffs.push(i % s.p);
                    i /= s.p;
                }
                Scalar::Extension { coeffs, spec: s.clone() }
            }
            _ => self.from_u64(i),
        }
    }

    /// A random element; over `Q` a small integer.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            Field::Rationals => self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_RANGE..=RATIONAL_SAMPLE_RANGE)),
            Field::Prime(p) => self.from_u64(rng.gen_range(0..*p)),
            Field::Extension(s) => {
                let coeffs = (0..s.degree()).map(|_| rng.gen_range(0..s.p)).collect();
                Scalar::Extension { coeffs, spec: s.clone() }
            }
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Small distinct sample points: all elements of a finite field (up to
    /// `count`), or `0, 1, 2, ...` over `Q`.
    pub fn sample_points(&self, count: usize) -> Vec<Scalar> {
        match self.size() {
            Some(q) => (0..q.min(count as u64)).map(|i| self.element_from_index(i)).collect(),
            None => (0..count as i64).map(|i| self.from_i64(i)).collect(),
        }
    }

    /// Image of `x` (an element of this field or of its prime subfield).
    pub fn embed(&self, x: &Scalar) -> Result<Scalar> {
        match (self, x) {
            (Field::Rationals, Scalar::Rational(_)) => Ok(x.clone()),
            (Field::Prime(p), Scalar::Prime { p: q, .. }) if p == q => Ok(x.clone()),
            (Field::Extension(s), Scalar::Prime { value, p }) if s.p == *p => Ok(self.from_u64(*value)),
            (Field::Extension(s), Scalar::Extension { spec, .. }) if spec == s => Ok(x.clone()),
            _ => Err(Error::FieldMismatch(format!("cannot embed {x} into {self}"))),
        }
    }

    /// Inverse of [`Field::embed`] from an extension to its prime subfield.
    pub fn descend(&self, x: &Scalar) -> Result<Scalar> {
        match (self, x) {
            (Field::Prime(p), Scalar::Extension { coeffs, spec }) if spec.p == *p => {
                if coeffs[1..].iter().any(|&c| c != 0) {
                    return Err(Error::structural(format!("{x} does not lie in F_{p}")));
                }
                Ok(self.from_u64(coeffs[0]))
            }
            _ => self.embed(x),
        }
    }

    /// Parses a scalar: `a` or `a/b` for rationals and prime fields,
    /// `[c0,c1,...]` for extension fields (a bare integer is also accepted).
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let mut coeffs = Vec::new();
            for part in inner.split(',').filter(|p| !p.trim().is_empty()) {
                let v: i64 = part
                    .trim()
                    .parse()
                    .map_err(|_| Error::Format(format!("bad coefficient '{part}' in '{s}'")))?;
                let p = self.characteristic() as i64;
                if p == 0 {
                    return Err(Error::Format("coefficient vectors need a finite field".into()));
                }
                coeffs.push(v.rem_euclid(p) as u64);
            }
            return self.from_coeffs(&coeffs);
        }
        let q = parse_rational(s)?;
        self.from_rational(&q)
    }

    /// Random invertible scalar; over `Q` a small nonzero integer.
    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        self.random_nonzero(rng)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Format(format!("cannot parse scalar '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Extension(s) => write!(f, "F_{}^{}", s.p, s.degree()),
        }
    }
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Prime { p, .. } => Field::Prime(*p),
            Scalar::Extension { spec, .. } => Field::Extension(spec.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
            Scalar::Extension { coeffs, .. } => coeffs.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
            Scalar::Extension { coeffs, .. } => coeffs[0] == 1 && coeffs[1..].iter().all(|&c| c == 0),
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.field().zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.field().one()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn prime_value(&self) -> Option<u64> {
        match self {
            Scalar::Prime { value, .. } => Some(*value),
            _ => None,
        }
    }

    /// Coefficients over the prime field (a single entry for `F_p`).
    pub fn prime_coeffs(&self) -> Option<Vec<u64>> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Prime { value, .. } => Some(vec![*value]),
            Scalar::Extension { coeffs, .. } => Some(coeffs.clone()),
        }
    }

    fn mismatch(&self, other: &Scalar) -> ! {
        panic!("scalar field mismatch: {} vs {}", self.field(), other.field())
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, p: q }) if p == q => {
                Scalar::Prime { value: (a + b) % p, p: *p }
            }
            (Scalar::Extension { coeffs: a, spec }, Scalar::Extension { coeffs: b, spec: s2 }) if spec == s2 => {
                let p = spec.p;
                let coeffs = a.iter().zip(b).map(|(x, y)| (x + y) % p).collect();
                Scalar::Extension { coeffs, spec: spec.clone() }
            }
            _ => self.mismatch(other),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, p } => Scalar::Prime { value: (p - value) % p, p: *p },
            Scalar::Extension { coeffs, spec } => {
                let p = spec.p;
                Scalar::Extension { coeffs: coeffs.iter().map(|c| (p - c) % p).collect(), spec: spec.clone() }
            }
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, p: q }) if p == q => {
                Scalar::Prime { value: mod_mul(*a, *b, *p), p: *p }
            }
            (Scalar::Extension { coeffs: a, spec }, Scalar::Extension { coeffs: b, spec: s2 }) if spec == s2 => {
                Scalar::Extension { coeffs: ext_mul(a, b, spec), spec: spec.clone() }
            }
            _ => self.mismatch(other),
        }
    }

    pub fn square(&self) -> Scalar {
        self.mul(self)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Rational(a) => Some(Scalar::Rational(a.recip())),
            Scalar::Prime { value, p } => mod_inv(*value, *p).map(|v| Scalar::Prime { value: v, p: *p }),
            Scalar::Extension { spec, .. } => {
                let q = BigUint::from(spec.p).pow(spec.degree() as u32);
                Some(self.pow_big(&(q - 2u32)))
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, e: u64) -> Scalar {
        self.pow_big(&BigUint::from(e))
    }

    pub fn pow_big(&self, e: &BigUint) -> Scalar {
        let mut result = self.one_like();
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = result.square();
            if e.bit(i) {
                result = result.mul(self);
            }
        }
        result
    }

    /// `x^p` in characteristic `p`; identity on `Q`.
    pub fn frobenius(&self) -> Scalar {
        match self {
            Scalar::Rational(_) | Scalar::Prime { .. } => self.clone(),
            Scalar::Extension { spec, .. } => self.pow(spec.p),
        }
    }

    /// The unique `y` with `y^p = x` in a finite field of characteristic `p`.
    pub fn pth_root(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Prime { .. } => Some(self.clone()),
            Scalar::Extension { spec, .. } => {
                let e = BigUint::from(spec.p).pow(spec.degree() as u32 - 1);
                Some(self.pow_big(&e))
            }
        }
    }

    /// A square root in the same field if one exists (finite fields by
    /// search over at most the field size, rationals exactly).
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => {
                if q.is_negative() {
                    return None;
                }
                let n = q.numer().sqrt();
                let d = q.denom().sqrt();
                if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
                    Some(Scalar::Rational(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            _ => {
                let field = self.field();
                let elems = field.elements().ok()?;
                elems.into_iter().find(|y| &y.square() == self)
            }
        }
    }
}

fn ext_mul(a: &[u64], b: &[u64], spec: &ExtensionSpec) -> Vec<u64> {
    let p = spec.p;
    let k = spec.degree();
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mod_mul(x, y, p)) % p;
        }
    }
    // reduce by the monic modulus from the top
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (i, &m) in spec.modulus[..k].iter().enumerate() {
            let idx = d - k + i;
            prod[idx] = (prod[idx] + p - mod_mul(c, m, p)) % p;
        }
        prod[d] = 0;
    }
    prod.truncate(k);
    prod
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Deterministic total order used for canonical forms: rationals by value,
/// finite-field elements lexicographically on their prime-field coefficients.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Prime { value: a, .. }, Scalar::Prime { value: b, .. }) => a.cmp(b),
            (Scalar::Extension { coeffs: a, .. }, Scalar::Extension { coeffs: b, .. }) => a.cmp(b),
            _ => self.field().to_string().cmp(&other.field().to_string()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
            Scalar::Extension { coeffs, .. } => {
                write!(f, "[")?;
                for (i, c) in coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar::$method(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar::$method(&self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar::$method(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(-2);
        assert_eq!(&a + &b, f.from_i64(1));
        assert_eq!(&a * &b, f.from_i64(1));
        assert_eq!(a.inv().unwrap(), f.from_i64(5));
        assert!(Field::prime(8).is_err());
    }

    #[test]
    fn rational_display_is_lowest_terms() {
        let q = Field::rationals();
        let x = q.parse("6/-4").unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(q.parse("5").unwrap().to_string(), "5");
    }

    #[test]
    fn f4_multiplication_table() {
        let f4 = Field::extension(2, vec![1, 1, 1]).unwrap();
        let w = f4.generator().unwrap();
        // w^2 = w + 1
        assert_eq!(w.square(), f4.from_coeffs(&[1, 1]).unwrap());
        assert_eq!(w.pow(3), f4.one());
        assert_eq!(w.inv().unwrap(), f4.from_coeffs(&[1, 1]).unwrap());
        assert_eq!(w.frobenius().frobenius(), w);
        assert_eq!(w.pth_root().unwrap().square(), w);
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(Field::extension(2, vec![1, 0, 1]).is_err());
        assert!(Field::extension(3, vec![1, 0, 1]).is_ok());
    }

    #[test]
    fn finite_field_constructor_matches_size() {
        let f = Field::finite(3, 2).unwrap();
        assert_eq!(f.size(), Some(9));
        assert_eq!(f.elements().unwrap().len(), 9);
        let mut nonzero = f.elements().unwrap();
        nonzero.retain(|x| !x.is_zero());
        assert!(nonzero.iter().all(|x| x.pow(8).is_one()));
    }

    #[test]
    fn parse_round_trip() {
        let f = Field::finite(5, 2).unwrap();
        let x = f.from_coeffs(&[3, 4]).unwrap();
        assert_eq!(f.parse(&x.to_string()).unwrap(), x);
        let p = Field::prime(5).unwrap();
        assert_eq!(p.parse("1/2").unwrap(), p.from_i64(3));
        assert!(p.parse("1/5").is_err());
    }
}
