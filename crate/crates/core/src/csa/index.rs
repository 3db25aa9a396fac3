//! Best-effort evidence about the index of an algebra.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::csa::algebra::{Algebra, Element, Preset};
use crate::error::{Error, Result};
use crate::exactalg::{Field, Scalar};

/// Elements enumerated exhaustively when the algebra has at most this many.
const EXHAUSTIVE_LIMIT: u64 = 1_000_000;
const RANDOM_BUDGET: usize = 20_000;

#[derive(Clone, Debug)]
pub enum IndexEvidence {
    /// The algebra is the ground field itself.
    Trivial,
    /// Nonzero `x`, `y` with `x y = 0`, so the algebra is not a division algebra.
    ZeroDivisor { x: Element, y: Element },
    /// The search found nothing; this does not prove the algebra is division.
    NoWitnessFound { searched: String },
}

impl IndexEvidence {
    pub fn is_split_witness(&self) -> bool {
        !matches!(self, IndexEvidence::NoWitnessFound { .. })
    }
}

/// Looks for a zero divisor. Over finite fields one always exists in degree
/// at least 2; over `Q`, quaternion presets are searched through integer
/// solutions of `a x² + b y² = z²` with entries bounded by `search_bound`.
pub fn index_evidence(algebra: &Arc<Algebra>, search_bound: u64) -> Result<IndexEvidence> {
    if algebra.degree() == 1 {
        return Ok(IndexEvidence::Trivial);
    }
    if let Preset::Matrix { n } = algebra.preset() {
        // E_11 * E_22 = 0
        let x = algebra.basis(0);
        let y = algebra.basis(n + 1);
        return Ok(IndexEvidence::ZeroDivisor { x, y });
    }
    match algebra.field() {
        Field::Rationals => match algebra.preset() {
            Preset::Quaternion { a, b } => quaternion_conic_search(algebra, a, b, search_bound),
            _ => Err(Error::UnsupportedField(
                "index search over Q is implemented for quaternion presets only".into(),
            )),
        },
        _ => finite_zero_divisor(algebra),
    }
}

fn zero_divisor_from(x: Element) -> Option<IndexEvidence> {
    if x.is_zero() {
        return None;
    }
    let ker = x.left_mult_matrix().kernel();
    let v = ker.into_iter().next()?;
    let y = x.algebra().element(v).ok()?;
    Some(IndexEvidence::ZeroDivisor { x, y })
}

fn finite_zero_divisor(algebra: &Arc<Algebra>) -> Result<IndexEvidence> {
    let field = algebra.field();
    let q = field.size().expect("finite field");
    let total = q.checked_pow(algebra.dim() as u32);
    match total {
        Some(total) if total <= EXHAUSTIVE_LIMIT => {
            for idx in 1..total {
                let mut i = idx;
                let coords: Vec<Scalar> = (0..algebra.dim())
                    .map(|_| {
                        let c = field.element_from_index(i % q);
                        i /= q;
                        c
                    })
                    .collect();
                let x = algebra.element(coords)?;
                if !x.is_invertible() {
                    if let Some(ev) = zero_divisor_from(x) {
                        return Ok(ev);
                    }
                }
            }
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x1dec5);
            for _ in 0..RANDOM_BUDGET {
                let x = algebra.random_element(&mut rng);
                if !x.is_invertible() {
                    if let Some(ev) = zero_divisor_from(x) {
                        return Ok(ev);
                    }
                }
            }
        }
    }
    Err(Error::structural("no zero divisor in an algebra over a finite field; structure constants are inconsistent"))
}

/// Clears denominators: with `l = lcm(den a, den b)`, integer solutions of
/// `A x² + B y² = Z²` (`A = a l²`, `B = b l²`) give `w = x i + y j` with
/// `w² = (Z / l)²`.
fn integral_scaling(a: &Scalar, b: &Scalar) -> Result<(i128, i128, BigInt)> {
    let (ra, rb) = (a.as_rational().unwrap(), b.as_rational().unwrap());
    let l: BigInt = ra.denom().lcm(rb.denom());
    let l2 = BigRational::from_integer(&l * &l);
    let ai = (ra * &l2).to_integer();
    let bi = (rb * &l2).to_integer();
    match (ai.to_i128(), bi.to_i128()) {
        (Some(x), Some(y)) if x.abs() < 1 << 40 && y.abs() < 1 << 40 => Ok((x, y, l)),
        _ => Err(Error::BudgetExceeded("quaternion parameters too large for the conic search".into())),
    }
}

fn quaternion_conic_search(algebra: &Arc<Algebra>, a: &Scalar, b: &Scalar, bound: u64) -> Result<IndexEvidence> {
    let (ai, bi, l) = integral_scaling(a, b)?;
    let f = algebra.field();
    let bound = bound as i128;
    for x in -bound..=bound {
        for y in -bound..=bound {
            if x == 0 && y == 0 {
                continue;
            }
            let lhs = ai * x * x + bi * y * y;
            if lhs < 0 {
                continue;
            }
            let z = isqrt_i128(lhs);
            if z * z != lhs {
                continue;
            }
            let zr = f.from_rational(&BigRational::new(BigInt::from(z), l.clone()))?;
            let w = algebra.basis(1).scale(&f.from_i64(x as i64)).add(&algebra.basis(2).scale(&f.from_i64(y as i64)));
            let zs = algebra.scalar(&zr);
            let u = w.sub(&zs);
            let v = w.add(&zs);
            debug_assert!(u.mul(&v).is_zero());
            return Ok(IndexEvidence::ZeroDivisor { x: u, y: v });
        }
    }
    Ok(IndexEvidence::NoWitnessFound {
        searched: format!("a x^2 + b y^2 = z^2 with |x|, |y| <= {bound}"),
    })
}

pub(crate) fn isqrt_i128(n: i128) -> i128 {
    if n < 2 {
        return n.max(0);
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}
