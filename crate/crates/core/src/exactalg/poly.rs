//! Dense univariate polynomials over a [`Field`].

use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::field::{Field, Scalar};

/// Dense polynomial, lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn from_coeffs(field: &Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn from_i64s(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Poly {
        let field = c.field();
        Poly::from_coeffs(&field, vec![c])
    }

    /// The indeterminate `x`.
    pub fn x(field: &Field) -> Poly {
        Poly::from_coeffs(field, vec![field.zero(), field.one()])
    }

    /// `c * x^n`.
    pub fn monomial(c: Scalar, n: usize) -> Poly {
        let field = c.field();
        let mut coeffs = vec![field.zero(); n];
        coeffs.push(c);
        Poly::from_coeffs(&field, coeffs)
    }

    /// `x - a`.
    pub fn linear_root(a: &Scalar) -> Poly {
        let field = a.field();
        Poly::from_coeffs(&field, vec![-a, field.one()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly::from_coeffs(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::from_coeffs(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(&self.field, out)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv_lc = d.leading().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(&self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = &r[i] * &inv_lc;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = &r[idx] - &(&c * dc);
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Poly::from_coeffs(&self.field, q), Poly::from_coeffs(&self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact quotient; `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `g = s*self + t*other` monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().inv().unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `self` modulo `m`, if coprime.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(m).xgcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, e: &num_bigint::BigUint, m: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_u64(i as u64))
            .collect();
        Poly::from_coeffs(&self.field, coeffs)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Resultant `Res(self, other)` via the Euclidean algorithm.
    pub fn resultant(&self, other: &Poly) -> Scalar {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return f.zero();
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = f.one();
        loop {
            let m = a.deg();
            let n = b.deg();
            if n == 0 {
                return &acc * &b.leading().pow(m as u64);
            }
            if m == 0 {
                return &acc * &a.leading().pow(n as u64);
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return f.zero();
            }
            // Res(a, b) = (-1)^{mn} lc(b)^{m - deg r} Res(b, r)
            if (m * n) % 2 == 1 {
                acc = -&acc;
            }
            acc = &acc * &b.leading().pow((m - r.deg()) as u64);
            a = b;
            b = r;
        }
    }

    /// Discriminant of a polynomial of degree `d >= 1`:
    /// `(-1)^{d(d-1)/2} Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Scalar {
        let d = self.deg();
        if d == 0 {
            return self.field.one();
        }
        let mut r = self.resultant(&self.derivative());
        if (d * (d - 1) / 2) % 2 == 1 {
            r = -&r;
        }
        r.div(&self.leading()).expect("nonzero leading coefficient")
    }

    /// True if `gcd(f, f')` is constant. Errors on the zero polynomial.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::invalid("squarefreeness of the zero polynomial"));
        }
        Ok(self.gcd(&self.derivative()).is_constant())
    }

    /// Monic `h` with `h^n = self` when `self` is monic; in general `h` with
    /// leading coefficient 1 and `h^n = self / lc`, requiring `lc = 1`.
    pub fn nth_root(&self, n: u64) -> Result<Poly> {
        if n == 0 {
            return Err(Error::invalid("0th root"));
        }
        if n == 1 {
            return Ok(self.clone());
        }
        if !self.is_monic() {
            return Err(Error::NotAPower(format!("{self} is not monic")));
        }
        let d = self.deg() as u64;
        if d % n != 0 {
            return Err(Error::NotAPower(format!("degree {d} not divisible by {n}")));
        }
        let p = self.field.characteristic();
        let root = if p != 0 && n % p == 0 {
            // g must lie in F[x^p]; take p-th roots of coefficients
            let mut inner = Vec::new();
            for (i, c) in self.coeffs.iter().enumerate() {
                if i as u64 % p != 0 {
                    if !c.is_zero() {
                        return Err(Error::NotAPower(format!("{self} is not a {p}-th power")));
                    }
                } else {
                    inner.push(c.pth_root().expect("finite field"));
                }
            }
            let g = Poly::from_coeffs(&self.field, inner);
            g.nth_root(n / p)?
        } else {
            self.coprime_nth_root(n)
        };
        if root.pow(n) != *self {
            return Err(Error::NotAPower(format!("{self} is not an exact {n}-th power")));
        }
        Ok(root)
    }

    /// Coefficient matching from the top; valid when `n` is invertible.
    fn coprime_nth_root(&self, n: u64) -> Poly {
        let f = &self.field;
        let d = self.deg();
        let m = d / n as usize;
        let n_inv = f.from_u64(n).inv().expect("n invertible");
        // h = x^m + h_{m-1} x^{m-1} + ...; determine h_{m-k} from coefficient of x^{d-k}
        let mut h = vec![f.zero(); m + 1];
        h[m] = f.one();
        for k in 1..=m {
            let partial = Poly::from_coeffs(f, h.clone());
            let pw = partial.pow(n);
            let diff = &self.coeff(d - k) - &pw.coeff(d - k);
            h[m - k] = &diff * &n_inv;
        }
        Poly::from_coeffs(f, h)
    }

    /// Lagrange interpolation through `(x_i, y_i)` with distinct `x_i`.
    pub fn interpolate(field: &Field, points: &[(Scalar, Scalar)]) -> Result<Poly> {
        let mut acc = Poly::zero(field);
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = Poly::one(field);
            let mut denom = field.one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                basis = basis.mul(&Poly::linear_root(xj));
                denom = &denom * &(xi - xj);
            }
            let inv = denom
                .inv()
                .ok_or_else(|| Error::invalid("interpolation nodes must be distinct"))?;
            acc = acc.add(&basis.scale(&(yi * &inv)));
        }
        Ok(acc)
    }

    /// Applies `f` to every coefficient, landing in `target`.
    pub fn map_coeffs(&self, target: &Field, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Poly> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(target, coeffs))
    }

    /// Embeds coefficients into `target` (e.g. `F_p -> F_{p^k}`).
    pub fn embed(&self, target: &Field) -> Result<Poly> {
        self.map_coeffs(target, |c| target.embed(c))
    }

    /// Brings coefficients from an extension back to `target`; fails if some
    /// coefficient is outside it.
    pub fn descend(&self, target: &Field) -> Result<Poly> {
        self.map_coeffs(target, |c| target.descend(c))
    }

    /// Roots in the ground field, for finite fields by exhaustive evaluation.
    pub fn roots_by_search(&self) -> Result<Vec<Scalar>> {
        let elems = self.field.elements()?;
        Ok(elems.into_iter().filter(|x| self.eval(x).is_zero()).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                _ if c.is_one() => {}
                _ => write!(f, "({c})*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn division_identity() {
        let k = f(7);
        let a = Poly::from_i64s(&k, &[1, 2, 3, 4, 5]);
        let b = Poly::from_i64s(&k, &[3, 0, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg() < 2);
    }

    #[test]
    fn resultant_matches_product_of_root_differences() {
        // Res((x-1)(x-2), (x-3)) = (1-3)(2-3) = 2 over Q
        let q = Field::rationals();
        let a = Poly::from_i64s(&q, &[2, -3, 1]);
        let b = Poly::from_i64s(&q, &[-3, 1]);
        assert_eq!(a.resultant(&b), q.from_i64(2));
        // Res(b, a) = (-1)^{2} Res(a, b)
        assert_eq!(b.resultant(&a), q.from_i64(2));
    }

    #[test]
    fn discriminant_of_quadratic_and_cubic() {
        let q = Field::rationals();
        // x^2 + b x + c: b^2 - 4c
        let p = Poly::from_i64s(&q, &[3, 5, 1]);
        assert_eq!(p.discriminant(), q.from_i64(25 - 12));
        // x^3 + a x + b: -4a^3 - 27b^2
        let c = Poly::from_i64s(&q, &[2, -1, 0, 1]);
        assert_eq!(c.discriminant(), q.from_i64(-4 * -1 - 27 * 4));
        // repeated root
        let r = Poly::from_i64s(&q, &[1, 2, 1]);
        assert!(r.discriminant().is_zero());
    }

    #[test]
    fn nth_root_handles_characteristic_dividing_n() {
        let k = f(2);
        let h = Poly::from_i64s(&k, &[1, 1, 1]);
        assert_eq!(h.pow(2).nth_root(2).unwrap(), h);
        let k3 = f(3);
        let h3 = Poly::from_i64s(&k3, &[2, 0, 1, 1]);
        assert_eq!(h3.pow(6).nth_root(6).unwrap(), h3);
        let not_square = Poly::from_i64s(&k3, &[1, 0, 1]);
        assert!(matches!(not_square.nth_root(2), Err(Error::NotAPower(_))));
    }

    #[test]
    fn squarefree_of_zero_is_an_error() {
        assert!(Poly::zero(&f(5)).is_squarefree().is_err());
        assert!(Poly::from_i64s(&f(5), &[1, 0, 1]).is_squarefree().unwrap());
        assert!(!Poly::from_i64s(&f(5), &[1, 2, 1]).is_squarefree().unwrap());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let q = Field::rationals();
        let p = Poly::from_i64s(&q, &[4, -1, 0, 2]);
        let pts: Vec<_> = (0..4).map(|i| (q.from_i64(i), p.eval(&q.from_i64(i)))).collect();
        assert_eq!(Poly::interpolate(&q, &pts).unwrap(), p);
    }

    fn poly_strategy(p: u64, max_deg: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec(0..p as i64, 1..=max_deg + 1)
            .prop_map(move |c| Poly::from_i64s(&Field::prime(p).unwrap(), &c))
    }

    proptest! {
        #[test]
        fn nth_root_round_trip(h in poly_strategy(5, 4), n in 1u64..7) {
            prop_assume!(!h.is_zero());
            let h = h.monic();
            prop_assert_eq!(h.pow(n).nth_root(n).unwrap(), h);
        }

        #[test]
        fn xgcd_bezout(a in poly_strategy(3, 6), b in poly_strategy(3, 6)) {
            prop_assume!(!a.is_zero() || !b.is_zero());
            let (g, s, t) = a.xgcd(&b);
            prop_assert_eq!(s.mul(&a).add(&t.mul(&b)), g.clone());
            prop_assert!(g.divides(&a) && g.divides(&b));
        }

        #[test]
        fn resultant_multiplicative(a in poly_strategy(7, 3), b in poly_strategy(7, 3), c in poly_strategy(7, 3)) {
            prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
            prop_assert_eq!(a.resultant(&b.mul(&c)), &a.resultant(&b) * &a.resultant(&c));
        }
    }
}
