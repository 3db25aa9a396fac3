//! Bounds on the index (gcd of closed-point degrees) of a variety.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactalg::factor::factor_rational;
use crate::exactalg::{Field, Poly};
use crate::pointcount::{gcd_all, points_of_exact_degree, VarietyModel};
use crate::witness::QuadraticForm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexBound {
    /// A point of degree equal to the index was found.
    Exact { index: u64, note: String },
    /// The index divides `bound`; smaller values were not excluded.
    DividesBound { bound: u64, note: String },
    /// No point found within the search.
    Unknown { note: String },
}

impl IndexBound {
    pub fn value(&self) -> Option<u64> {
        match self {
            IndexBound::Exact { index, .. } => Some(*index),
            IndexBound::DividesBound { bound, .. } => Some(*bound),
            IndexBound::Unknown { .. } => None,
        }
    }

    pub fn note(&self) -> &str {
        match self {
            IndexBound::Exact { note, .. } | IndexBound::DividesBound { note, .. } | IndexBound::Unknown { note } => note,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            IndexBound::Exact { .. } => "exact",
            IndexBound::DividesBound { .. } => "divides",
            IndexBound::Unknown { .. } => "unknown",
        }
    }
}

impl fmt::Display for IndexBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{} {v} ({})", self.status(), self.note()),
            None => write!(f, "unknown ({})", self.note()),
        }
    }
}

/// Over a finite field: gcd of the degrees `e ≤ degree_bound` for which a
/// closed point of exact degree `e` exists.
pub fn scheme_index_bound(x: &VarietyModel, degree_bound: usize, budget: u64) -> Result<IndexBound> {
    if !x.field().is_finite() {
        return Err(Error::UnsupportedField("use rational_index_bound over Q".into()));
    }
    let mut degrees = Vec::new();
    for e in 1..=degree_bound {
        if !points_of_exact_degree(x, e, budget)?.is_empty() {
            degrees.push(e);
            if gcd_all(degrees.iter().copied()) == 1 {
                break;
            }
        }
    }
    let g = gcd_all(degrees.iter().copied()) as u64;
    let note = format!("point degrees found: {degrees:?}");
    Ok(match g {
        0 => IndexBound::Unknown { note: format!("no closed point of degree <= {degree_bound}") },
        1 => IndexBound::Exact { index: 1, note },
        _ => IndexBound::DividesBound { bound: g, note },
    })
}

/// A point over `Q[θ]/(modulus)`: coordinates are polynomials in `θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionPoint {
    pub modulus: Poly,
    pub coords: Vec<Poly>,
}

impl ExtensionPoint {
    /// Checks irreducibility of the modulus, `q(coords) ≡ 0` and that the
    /// coordinates do not all vanish; returns the field degree.
    pub fn verify(&self, form: &QuadraticForm) -> Result<usize> {
        let m = &self.modulus;
        if m.deg() == 0 {
            return Err(Error::invalid("modulus must have positive degree"));
        }
        let fac = factor_rational(m)?;
        if fac.len() != 1 || fac[0].1 != 1 {
            return Err(Error::invalid(format!("{m} is reducible over Q")));
        }
        if self.coords.len() != form.dim() {
            return Err(Error::invalid("coordinate count does not match the form"));
        }
        let reduced: Vec<Poly> = self.coords.iter().map(|c| c.rem(m)).collect();
        if reduced.iter().all(|c| c.is_zero()) {
            return Err(Error::invalid("all coordinates vanish"));
        }
        if !form.eval_poly(&reduced).rem(m).is_zero() {
            return Err(Error::invalid("point does not satisfy the form"));
        }
        Ok(m.deg())
    }
}

/// Over `Q`: a search for primitive integer points with coordinates of
/// absolute value at most `height`, combined with the supplied points over
/// number fields. The index divides the gcd of all degrees found.
pub fn rational_index_bound(form: &QuadraticForm, height: u64, extension_points: &[ExtensionPoint], budget: u64) -> Result<IndexBound> {
    if *form.field() != Field::Rationals {
        return Err(Error::UnsupportedField("rational_index_bound needs a form over Q".into()));
    }
    let n = form.dim();
    let side = 2 * height + 1;
    match side.checked_pow(n as u32) {
        Some(c) if c <= budget => {}
        _ => return Err(Error::BudgetExceeded(format!("{side}^{n} search points exceed the budget {budget}"))),
    }
    let table = integer_table(form)?;
    if let Some(p) = integer_point(&table, height as i64) {
        return Ok(IndexBound::Exact { index: 1, note: format!("rational point {p:?}") });
    }
    let mut degrees = Vec::new();
    for e in extension_points {
        degrees.push(e.verify(form)?);
    }
    let g = gcd_all(degrees.iter().copied()) as u64;
    let caveat = format!("no rational point of height <= {height}; the index divides this value");
    Ok(match g {
        0 => IndexBound::Unknown { note: format!("no rational point of height <= {height} and no extension point") },
        1 => IndexBound::Exact { index: 1, note: format!("extension points of coprime degrees {degrees:?}") },
        _ => IndexBound::DividesBound { bound: g, note: format!("{caveat}; extension degrees {degrees:?}") },
    })
}

/// Upper-triangular coefficients scaled to integers.
fn integer_table(form: &QuadraticForm) -> Result<Vec<Vec<i128>>> {
    let table = form.upper_table();
    let mut lcm = BigInt::from(1);
    for row in &table {
        for c in row {
            let r = c.as_rational().expect("rational form");
            lcm = lcm.lcm(r.denom());
        }
    }
    table
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| {
                    let r = c.as_rational().expect("rational form");
                    let v = r.numer() * (&lcm / r.denom());
                    v.to_i64()
                        .map(i128::from)
                        .ok_or_else(|| Error::invalid("form coefficients are too large for the height search"))
                })
                .collect()
        })
        .collect()
}

fn integer_point(table: &[Vec<i128>], h: i64) -> Option<Vec<i64>> {
    let n = table.len();
    let mut x = vec![-h; n];
    loop {
        // first nonzero coordinate positive, entries coprime
        let lead = x.iter().find(|&&c| c != 0);
        if lead.is_some_and(|&c| c > 0) && x.iter().fold(0i64, |g, &c| g.gcd(&c)) == 1 {
            let mut v: i128 = 0;
            for i in 0..n {
                for j in i..n {
                    if table[i][j] != 0 {
                        v += table[i][j] * x[i] as i128 * x[j] as i128;
                    }
                }
            }
            if v.is_zero() {
                return Some(x);
            }
        }
        let mut k = 0;
        while k < n {
            x[k] += 1;
            if x[k] <= h {
                break;
            }
            x[k] = -h;
            k += 1;
        }
        if k == n {
            return None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointcount::DEFAULT_BUDGET;

    #[test]
    fn hamilton_conic() {
        let q = Field::rationals();
        let form = QuadraticForm::diagonal(&q, &[q.one(), q.one(), q.one()]).unwrap();
        let i_point = ExtensionPoint {
            modulus: Poly::from_i64s(&q, &[1, 0, 1]),
            coords: vec![Poly::from_i64s(&q, &[1]), Poly::from_i64s(&q, &[0, 1]), Poly::zero(&q)],
        };
        assert_eq!(i_point.verify(&form).unwrap(), 2);
        let b = rational_index_bound(&form, 50, &[i_point], DEFAULT_BUDGET).unwrap();
        assert_eq!(b.status(), "divides");
        assert_eq!(b.value(), Some(2));
        assert_eq!(rational_index_bound(&form, 5, &[], DEFAULT_BUDGET).unwrap().value(), None);
        let bad = ExtensionPoint {
            modulus: Poly::from_i64s(&q, &[2, 0, 1]),
            coords: vec![Poly::from_i64s(&q, &[1]), Poly::from_i64s(&q, &[0, 1]), Poly::zero(&q)],
        };
        assert!(bad.verify(&form).is_err());
    }

    #[test]
    fn split_conics() {
        let q = Field::rationals();
        let form = QuadraticForm::diagonal(&q, &[q.one(), q.one(), -q.one()]).unwrap();
        assert_eq!(rational_index_bound(&form, 3, &[], DEFAULT_BUDGET).unwrap().status(), "exact");
        let f3 = Field::prime(3).unwrap();
        let conic = VarietyModel::Quadric(QuadraticForm::diagonal(&f3, &[f3.one(), f3.one(), -f3.one()]).unwrap());
        assert_eq!(scheme_index_bound(&conic, 3, DEFAULT_BUDGET).unwrap().value(), Some(1));
        assert_eq!(scheme_index_bound(&conic, 0, DEFAULT_BUDGET).unwrap().value(), None);
    }
}
