//! Commutative étale subalgebras: generation by one element, type partitions
//! and the idempotent ideal decomposition.

use std::fmt;
use std::sync::Arc;

use crate::csa::{Algebra, Element};
use crate::error::{Error, Result};
use crate::exactalg::factor::{self, Factorization};
use crate::exactalg::{Poly, Scalar, Subspace};
use crate::ideals::RightIdeal;

/// A multiset of positive integers, stored in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Partition> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        parts.sort_unstable();
        Ok(Partition { parts })
    }

    /// `[k, k, ..., k]` with `m` parts.
    pub fn uniform(k: usize, m: usize) -> Partition {
        Partition { parts: vec![k; m] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `S(ρ)`: the distinct part sizes.
    pub fn distinct(&self) -> Vec<usize> {
        let mut d = self.parts.clone();
        d.dedup();
        d
    }

    /// `ρ(i)`: how often `i` occurs.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// `ℓ(ρ)`: number of parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// `F[a] ⊂ A` for an element `a` with squarefree minimal polynomial.
#[derive(Clone, Debug)]
pub struct EtaleSubalgebra {
    generator: Element,
    minpoly: Poly,
    space: Subspace,
    /// Irreducible factors supplied by the caller (needed over `Q` when the
    /// minimal polynomial has no rational roots and degree above 3).
    certificate: Vec<Poly>,
}

/// Same subspace of the same algebra; generators may differ.
impl PartialEq for EtaleSubalgebra {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.generator.algebra() == other.generator.algebra()
    }
}

impl Eq for EtaleSubalgebra {}

/// The subalgebra spanned by powers of `a`, provided it is étale.
pub fn generate_etale(a: &Element) -> Result<EtaleSubalgebra> {
    let minpoly = a.minimal_polynomial();
    if !minpoly.is_squarefree()? {
        return Err(Error::NotEtale(format!("minimal polynomial {minpoly} is not squarefree")));
    }
    let algebra = a.algebra();
    let mut powers = Vec::with_capacity(minpoly.deg());
    let mut p = algebra.one();
    for _ in 0..minpoly.deg() {
        powers.push(p.coords().to_vec());
        p = p.mul(a);
    }
    let space = Subspace::span(algebra.field(), algebra.dim(), &powers);
    Ok(EtaleSubalgebra { generator: a.clone(), minpoly, space, certificate: Vec::new() })
}

impl EtaleSubalgebra {
    pub fn algebra(&self) -> &Arc<Algebra> {
        self.generator.algebra()
    }

    pub fn generator(&self) -> &Element {
        &self.generator
    }

    pub fn minpoly(&self) -> &Poly {
        &self.minpoly
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_maximal(&self) -> bool {
        self.dim() == self.algebra().degree()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.space.contains(x.coords())
    }

    pub fn certificate(&self) -> &[Poly] {
        &self.certificate
    }

    /// Attaches candidate irreducible factors of the minimal polynomial,
    /// checked by division when the type is computed.
    pub fn with_certificate(mut self, factors: Vec<Poly>) -> EtaleSubalgebra {
        self.certificate = factors;
        self
    }

    /// All basis pairs commute.
    pub fn is_commutative(&self) -> bool {
        let algebra = self.algebra();
        let b = self.space.basis();
        b.iter().enumerate().all(|(i, x)| {
            b[i + 1..].iter().all(|y| algebra.mul_coords(x, y) == algebra.mul_coords(y, x))
        })
    }

    /// An element of `E` from coordinates in the power basis `1, a, a², ...`.
    pub fn element_from_power_coords(&self, c: &[Scalar]) -> Element {
        let p = Poly::from_coeffs(self.algebra().field(), c.to_vec());
        self.generator.eval_poly(&p)
    }

    /// The irreducible factors of the minimal polynomial.
    pub fn factorization(&self) -> Result<Factorization> {
        let f = if self.certificate.is_empty() {
            factor::factor(&self.minpoly)?
        } else {
            factor::factor_rational_with_certificate(&self.minpoly, &self.certificate)?
        };
        if factor::expand(self.minpoly.field(), &f) != self.minpoly.monic() {
            return Err(Error::structural("factorization does not multiply back to the minimal polynomial"));
        }
        Ok(f)
    }

    /// Primitive idempotents of `E` over the ground field, one per
    /// irreducible factor `f_i`, by CRT in `F[x]/(f)`.
    pub fn rational_idempotents(&self) -> Result<Vec<(Element, usize)>> {
        let f = &self.minpoly;
        let mut out = Vec::new();
        for (fi, _) in self.factorization()? {
            let h = f.exact_div(&fi).expect("factor divides the minimal polynomial");
            let inv = h.inv_mod(&fi).ok_or_else(|| Error::NotEtale("repeated factor".into()))?;
            let g = h.mul(&inv).rem(f);
            out.push((self.generator.eval_poly(&g), fi.deg()));
        }
        Ok(out)
    }

    /// `gEg⁻¹`.
    pub fn conjugate(&self, g: &Element) -> Result<EtaleSubalgebra> {
        let gi = g.inverse().ok_or_else(|| Error::invalid("conjugating element is not invertible"))?;
        let e = generate_etale(&g.mul(&self.generator).mul(&gi))?;
        Ok(e.with_certificate(self.certificate.clone()))
    }

    /// The subalgebra generated by the same element of a base-changed algebra.
    pub fn base_change(&self, target: &Arc<Algebra>) -> Result<EtaleSubalgebra> {
        generate_etale(&self.generator.base_change(target)?)
    }
}

/// Reduced dimension of the right ideal `eA`.
fn rank_of_idempotent(e: &Element) -> usize {
    e.left_mult_matrix().rank() / e.algebra().degree()
}

/// The type of `E`: each irreducible factor of degree `d` contributes `d`
/// parts of size `rdim(eA) / d`.
pub fn etale_type(e: &EtaleSubalgebra) -> Result<Partition> {
    let mut parts = Vec::new();
    for (idem, d) in e.rational_idempotents()? {
        let r = rank_of_idempotent(&idem);
        if r % d != 0 {
            return Err(Error::structural(format!("rank {r} of an idempotent is not divisible by the factor degree {d}")));
        }
        parts.extend(std::iter::repeat(r / d).take(d));
    }
    let p = Partition::new(parts)?;
    if p.sum() != e.algebra().degree() {
        return Err(Error::structural(format!("type {p} does not sum to the degree {}", e.algebra().degree())));
    }
    Ok(p)
}

/// `E ∈ ét_m(A)`: `dim E = m` and the type is `[n/m, ..., n/m]`.
pub fn is_et_m_point(e: &EtaleSubalgebra, m: usize) -> Result<bool> {
    let n = e.algebra().degree();
    if m == 0 || n % m != 0 || e.dim() != m {
        return Ok(false);
    }
    Ok(etale_type(e)? == Partition::uniform(n / m, m))
}

/// The ideals form a direct sum decomposition of `A`.
pub fn independent_ideals_check(ideals: &[RightIdeal]) -> bool {
    let Some(first) = ideals.first() else {
        return false;
    };
    let algebra = first.algebra();
    let total: usize = ideals.iter().map(|i| i.dim()).sum();
    if total != algebra.dim() {
        return false;
    }
    let sum = ideals.iter().skip(1).fold(first.space().clone(), |acc, i| acc.sum(i.space()));
    sum.dim() == total
}

/// `(e_1 A, ..., e_k A)` for the rational primitive idempotents of `E`.
pub fn subalgebra_to_ideal_tuple(e: &EtaleSubalgebra) -> Result<Vec<RightIdeal>> {
    let algebra = e.algebra();
    e.rational_idempotents()?.into_iter().map(|(idem, _)| RightIdeal::generated(algebra, &[idem])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Field;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn diag(field: &Field, entries: &[i64]) -> Element {
        let n = entries.len();
        let a = Algebra::matrix(field, n).unwrap();
        let mut c = vec![0; n * n];
        for (i, &v) in entries.iter().enumerate() {
            c[i * n + i] = v;
        }
        a.element_from_i64s(&c).unwrap()
    }

    #[test]
    fn generate_examples() {
        let q = Field::rationals();
        let e = generate_etale(&diag(&q, &[1, 2])).unwrap();
        assert_eq!(e.dim(), 2);
        assert_eq!(*e.minpoly(), Poly::from_i64s(&q, &[2, -3, 1]));
        assert!(e.is_commutative() && e.is_maximal());
        let m2 = Algebra::matrix(&q, 2).unwrap();
        assert!(matches!(generate_etale(&m2.basis(1)), Err(Error::NotEtale(_))));
        let h = Algebra::quaternion(&q, &q.from_i64(-1), &q.from_i64(-1)).unwrap();
        let qi = generate_etale(&h.basis(1)).unwrap();
        assert_eq!(*qi.minpoly(), Poly::from_i64s(&q, &[1, 0, 1]));
        assert_eq!(etale_type(&qi).unwrap().parts(), &[1, 1]);
        assert_eq!(subalgebra_to_ideal_tuple(&qi).unwrap().len(), 1);
    }

    #[test]
    fn type_examples() {
        let q = Field::rationals();
        let e = generate_etale(&diag(&q, &[0, 0, 1, 1])).unwrap();
        assert_eq!(etale_type(&e).unwrap().parts(), &[2, 2]);
        assert!(is_et_m_point(&e, 2).unwrap());
        let e = generate_etale(&diag(&q, &[0, 1, 1, 1])).unwrap();
        assert_eq!(etale_type(&e).unwrap().parts(), &[1, 3]);
        assert!(!is_et_m_point(&e, 2).unwrap());
        let f5 = Field::prime(5).unwrap();
        let e = generate_etale(&diag(&f5, &[0, 1, 2])).unwrap();
        assert_eq!(etale_type(&e).unwrap(), Partition::uniform(1, 3));
        assert!(is_et_m_point(&e, 3).unwrap());
        let ideals = subalgebra_to_ideal_tuple(&e).unwrap();
        assert!(independent_ideals_check(&ideals));
    }

    #[test]
    fn f4_inside_m2_f2() {
        let f2 = Field::prime(2).unwrap();
        let a = Algebra::matrix(&f2, 2).unwrap();
        // companion matrix of x^2 + x + 1
        let c = a.element_from_i64s(&[0, 1, 1, 1]).unwrap();
        let e = generate_etale(&c).unwrap();
        assert_eq!(*e.minpoly(), Poly::from_i64s(&f2, &[1, 1, 1]));
        assert_eq!(etale_type(&e).unwrap().parts(), &[1, 1]);
        assert_eq!(subalgebra_to_ideal_tuple(&e).unwrap().len(), 1);
        let f4 = Field::finite(2, 2).unwrap();
        let ext = e.base_change(&a.base_change(&f4).unwrap()).unwrap();
        let ideals = subalgebra_to_ideal_tuple(&ext).unwrap();
        assert_eq!(ideals.len(), 2);
        assert!(independent_ideals_check(&ideals));
    }

    #[test]
    fn independence_examples() {
        let f = Field::prime(3).unwrap();
        let a = Algebra::matrix(&f, 2).unwrap();
        let r1 = RightIdeal::generated(&a, &[a.basis(0)]).unwrap();
        let r2 = RightIdeal::generated(&a, &[a.basis(3)]).unwrap();
        assert!(independent_ideals_check(&[r1.clone(), r2]));
        assert!(!independent_ideals_check(&[r1.clone(), r1]));
        assert!(!independent_ideals_check(&[]));
    }

    #[test]
    fn rational_certificate_needed_for_quartic() {
        let q = Field::rationals();
        let a = Algebra::matrix(&q, 4).unwrap();
        // companion matrix of x^4 - 2, irreducible over Q
        let mut c = vec![0i64; 16];
        c[4] = 1;
        c[9] = 1;
        c[14] = 1;
        c[3] = 2;
        let e = generate_etale(&a.element_from_i64s(&c).unwrap()).unwrap();
        assert!(matches!(etale_type(&e), Err(Error::UnsupportedField(_))));
        let e = e.with_certificate(vec![Poly::from_i64s(&q, &[-2, 0, 0, 0, 1])]);
        assert_eq!(etale_type(&e).unwrap(), Partition::uniform(1, 4));
        let bad = generate_etale(e.generator()).unwrap().with_certificate(vec![Poly::from_i64s(&q, &[-1, 0, 1])]);
        assert!(etale_type(&bad).is_err());
    }

    fn random_etale(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> EtaleSubalgebra {
        let a = Algebra::matrix(field, n).unwrap();
        loop {
            let x = a.random_element(rng);
            if let Ok(e) = generate_etale(&x) {
                return e;
            }
        }
    }

    #[test]
    fn types_sum_to_degree_and_subfields_are_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(200);
        for p in [2, 3, 5] {
            let f = Field::prime(p).unwrap();
            for k in 0..200 {
                let n = 1 + k % 4;
                let e = random_etale(&f, n, &mut rng);
                let t = etale_type(&e).unwrap();
                assert_eq!(t.sum(), n);
                assert!(e.is_commutative());
                if factor::is_irreducible(e.minpoly()).unwrap() {
                    assert_eq!(t.distinct().len(), 1);
                }
            }
        }
    }

    #[test]
    fn type_matches_splitting_field_ranks() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = Field::prime(3).unwrap();
        for _ in 0..20 {
            let e = random_etale(&f, 3, &mut rng);
            let k = e
                .factorization()
                .unwrap()
                .iter()
                .map(|(g, _)| g.deg())
                .fold(1, num_integer::lcm);
            let ext = Field::finite(3, k).unwrap();
            let big = e.base_change(&e.algebra().base_change(&ext).unwrap()).unwrap();
            let mut ranks: Vec<usize> = big
                .rational_idempotents()
                .unwrap()
                .iter()
                .map(|(idem, d)| {
                    assert_eq!(*d, 1);
                    rank_of_idempotent(idem)
                })
                .collect();
            ranks.sort_unstable();
            assert_eq!(ranks, etale_type(&e).unwrap().parts());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn type_invariant_under_conjugation(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = Field::prime(5).unwrap();
            let e = random_etale(&f, 3, &mut rng);
            let g = e.algebra().random_unit(&mut rng, 100).unwrap();
            let c = e.conjugate(&g).unwrap();
            prop_assert_eq!(etale_type(&c).unwrap(), etale_type(&e).unwrap());
        }
    }

    #[test]
    fn partition_statistics() {
        let p = Partition::new(vec![2, 1, 2]).unwrap();
        assert_eq!(p.parts(), &[1, 2, 2]);
        assert_eq!(p.distinct(), vec![1, 2]);
        assert_eq!(p.multiplicity(2), 2);
        assert_eq!(p.length(), 3);
        assert_eq!(p.to_string(), "[1,2,2]");
        assert!(Partition::new(vec![0]).is_err());
    }
}
