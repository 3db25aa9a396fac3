//! Points of small varieties over finite fields: closed points, zero cycles,
//! the transfer map, index bounds and linkage graphs on cycles.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactalg::{Field, Matrix, Scalar};
use crate::witness::{normalize_point, QuadraticForm};

mod hgraph;
mod index;

pub use hgraph::{h_link_graph, verify_edge, CurveGenerator, Edge, EdgeKind, HGraph};
pub use index::{rational_index_bound, scheme_index_bound, ExtensionPoint, IndexBound};

/// Enumeration budget: number of candidate coordinate vectors.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarietyModel {
    /// `q = 0` in `P^{n-1}`.
    Quadric(QuadraticForm),
    /// `k`-dimensional subspaces of `F^m`, as reduced echelon `k x m` matrices.
    Grassmannian { field: Field, k: usize, m: usize },
    /// `q = 0` and `ℓ = 0`.
    InvolutionQuadric { form: QuadraticForm, hyperplane: Vec<Scalar> },
}

impl VarietyModel {
    pub fn field(&self) -> &Field {
        match self {
            VarietyModel::Quadric(q) | VarietyModel::InvolutionQuadric { form: q, .. } => q.field(),
            VarietyModel::Grassmannian { field, .. } => field,
        }
    }

    /// Length of a coordinate vector.
    pub fn ambient(&self) -> usize {
        match self {
            VarietyModel::Quadric(q) | VarietyModel::InvolutionQuadric { form: q, .. } => q.dim(),
            VarietyModel::Grassmannian { k, m, .. } => k * m,
        }
    }

    pub fn base_change(&self, target: &Field) -> Result<VarietyModel> {
        Ok(match self {
            VarietyModel::Quadric(q) => VarietyModel::Quadric(q.base_change(target)?),
            VarietyModel::InvolutionQuadric { form, hyperplane } => VarietyModel::InvolutionQuadric {
                form: form.base_change(target)?,
                hyperplane: hyperplane.iter().map(|c| target.embed(c)).collect::<Result<_>>()?,
            },
            VarietyModel::Grassmannian { k, m, .. } => VarietyModel::Grassmannian { field: target.clone(), k: *k, m: *m },
        })
    }

    /// Whether a normalized coordinate vector is a point.
    pub fn contains(&self, x: &[Scalar]) -> bool {
        match self {
            VarietyModel::Quadric(q) => q.is_on(x),
            VarietyModel::InvolutionQuadric { form, hyperplane } => {
                form.is_on(x) && dot(hyperplane, x).is_zero()
            }
            VarietyModel::Grassmannian { field, k, m } => {
                if x.len() != k * m {
                    return false;
                }
                let mat = Matrix::from_row_slices(field, *m, &x.chunks(*m).map(|r| r.to_vec()).collect::<Vec<_>>());
                mat.rank() == *k && mat.rref().matrix == mat
            }
        }
    }

    /// All points over the model's own field, in a deterministic order.
    pub fn points(&self, budget: u64) -> Result<Vec<Vec<Scalar>>> {
        let f = self.field();
        let q = f.size().ok_or_else(|| Error::UnsupportedField("enumeration needs a finite field".into()))?;
        let n = self.ambient() as u32;
        match q.checked_pow(n) {
            Some(c) if c <= budget => {}
            _ => return Err(Error::BudgetExceeded(format!("{q}^{n} candidates exceed the budget {budget}"))),
        }
        Ok(match self {
            VarietyModel::Grassmannian { field, k, m } => echelon_matrices(field, *k, *m)?
                .into_iter()
                .map(|rows| rows.concat())
                .collect(),
            _ => projective_points(f, self.ambient()).into_iter().filter(|x| self.contains(x)).collect(),
        })
    }
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = b[0].zero_like();
    for (x, y) in a.iter().zip(b) {
        acc = &acc + &(x * y);
    }
    acc
}

/// All points of `P^{n-1}(F_q)` with first nonzero coordinate 1.
pub fn projective_points(field: &Field, n: usize) -> Vec<Vec<Scalar>> {
    let elems = field.elements().expect("finite field");
    let q = elems.len();
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let total = q.pow(free as u32);
        for mut idx in 0..total {
            let mut v = vec![field.zero(); n];
            v[lead] = field.one();
            for slot in (lead + 1..n).rev() {
                v[slot] = elems[idx % q].clone();
                idx /= q;
            }
            out.push(v);
        }
    }
    out
}

/// Reduced row echelon `k x m` matrices of rank `k`.
pub fn echelon_matrices(field: &Field, k: usize, m: usize) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let elems = field.elements()?;
    let q = elems.len();
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..k).collect();
    if k > m {
        return Ok(out);
    }
    loop {
        // free slots: row r, columns after its pivot that are not pivots
        let slots: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| (pivots[r] + 1..m).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = q.pow(slots.len() as u32);
        for mut idx in 0..total {
            let mut rows = vec![vec![field.zero(); m]; k];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = field.one();
            }
            for &(r, c) in slots.iter().rev() {
                rows[r][c] = elems[idx % q].clone();
                idx /= q;
            }
            out.push(rows);
        }
        // next pivot set
        let mut i = k;
        while i > 0 && pivots[i - 1] == m - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        pivots[i - 1] += 1;
        for j in i..k {
            pivots[j] = pivots[j - 1] + 1;
        }
    }
    Ok(out)
}

fn frobenius_vec(x: &[Scalar]) -> Vec<Scalar> {
    x.iter().map(|c| c.frobenius()).collect()
}

/// The Frobenius orbit of a coordinate vector (relative to the prime field).
pub fn frobenius_orbit(x: &[Scalar]) -> Vec<Vec<Scalar>> {
    let mut orbit = vec![x.to_vec()];
    let mut y = frobenius_vec(x);
    while y != x {
        orbit.push(y.clone());
        y = frobenius_vec(&y);
    }
    orbit
}

/// A closed point: a Frobenius orbit of size `degree`, represented by its
/// least member with coordinates in `F_{p^degree}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedPoint {
    degree: usize,
    coords: Vec<Scalar>,
}

impl ClosedPoint {
    /// Canonical closed point of a point with coordinates in some `F_{p^k}`
    /// (over the prime field `F_p`). Coordinates are descended to the
    /// standard field `F_{p^d}` of the orbit size `d`.
    pub fn from_rep(x: &[Scalar]) -> Result<ClosedPoint> {
        let x = normalize_point(x).ok_or_else(|| Error::invalid("zero vector is not a point"))?;
        let field = x[0].field();
        let p = field.characteristic();
        if p == 0 {
            return Err(Error::UnsupportedField("closed points are computed over finite fields".into()));
        }
        let d = frobenius_orbit(&x).len();
        let small = Field::finite(p, d)?;
        let y = if small == field {
            x
        } else {
            x.iter().map(|c| descend_to_subfield(c, &small)).collect::<Result<Vec<_>>>()?
        };
        let coords = frobenius_orbit(&y).into_iter().min().expect("nonempty orbit");
        Ok(ClosedPoint { degree: d, coords })
    }

    /// A point already in canonical form over a field that is not a
    /// Frobenius-stable enumeration (e.g. a non-prime base field at degree 1).
    pub(crate) fn rational(coords: Vec<Scalar>) -> ClosedPoint {
        ClosedPoint { degree: 1, coords }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "({}):{}", c.join(":"), self.degree)
    }
}

/// `x ∈ F_{p^k}` written in the standard field `small = F_{p^d}`, `d | k`,
/// through the embedding sending the generator of `small` to the least root
/// of its modulus in `F_{p^k}`.
pub fn descend_to_subfield(x: &Scalar, small: &Field) -> Result<Scalar> {
    let big = x.field();
    if small.prime_degree() == 1 {
        return small.descend(x);
    }
    if big == *small {
        return Ok(x.clone());
    }
    let (k, d) = (big.prime_degree(), small.prime_degree());
    if k % d != 0 {
        return Err(Error::invalid(format!("F_p^{d} is not a subfield of F_p^{k}")));
    }
    let modulus = match small {
        Field::Extension(s) => s.modulus().to_vec(),
        _ => unreachable!("degree > 1"),
    };
    let theta = big
        .elements()?
        .into_iter()
        .filter(|y| {
            let mut acc = big.zero();
            for c in modulus.iter().rev() {
                acc = &(&acc * y) + &big.from_u64(*c);
            }
            acc.is_zero()
        })
        .min()
        .ok_or_else(|| Error::structural("subfield modulus has no root"))?;
    let prime = Field::prime(big.characteristic())?;
    let mut cols = Vec::with_capacity(d);
    let mut pw = big.one();
    for _ in 0..d {
        cols.push(coeffs_in(&prime, &pw));
        pw = &pw * &theta;
    }
    let m = Matrix::from_columns(&prime, k, &cols);
    let sol = m
        .solve(&coeffs_in(&prime, x))
        .ok_or_else(|| Error::invalid(format!("{x} does not lie in F_p^{d}")))?;
    let raw: Vec<u64> = sol.iter().map(|c| c.prime_value().expect("prime field")).collect();
    small.from_coeffs(&raw)
}

fn coeffs_in(prime: &Field, x: &Scalar) -> Vec<Scalar> {
    x.prime_coeffs().expect("finite field element").into_iter().map(|c| prime.from_u64(c)).collect()
}

/// A zero cycle: closed points with positive multiplicities, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZeroCycle {
    terms: Vec<(ClosedPoint, usize)>,
}

impl ZeroCycle {
    pub fn new(terms: Vec<(ClosedPoint, usize)>) -> ZeroCycle {
        let mut out: Vec<(ClosedPoint, usize)> = Vec::new();
        for (p, m) in terms {
            if m == 0 {
                continue;
            }
            match out.iter_mut().find(|(q, _)| *q == p) {
                Some(e) => e.1 += m,
                None => out.push((p, m)),
            }
        }
        out.sort();
        ZeroCycle { terms: out }
    }

    pub fn from_points(points: &[ClosedPoint]) -> ZeroCycle {
        ZeroCycle::new(points.iter().map(|p| (p.clone(), 1)).collect())
    }

    pub fn terms(&self) -> &[(ClosedPoint, usize)] {
        &self.terms
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|(p, m)| p.degree() * m).sum()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.terms.iter().all(|(_, m)| *m == 1)
    }

    pub fn support(&self) -> Vec<ClosedPoint> {
        self.terms.iter().map(|(p, _)| p.clone()).collect()
    }

    pub fn add(&self, other: &ZeroCycle) -> ZeroCycle {
        ZeroCycle::new(self.terms.iter().chain(&other.terms).cloned().collect())
    }

    /// `self - other` when `other ≤ self`.
    pub fn sub(&self, other: &ZeroCycle) -> Option<ZeroCycle> {
        let mut terms = self.terms.clone();
        for (p, m) in &other.terms {
            let e = terms.iter_mut().find(|(q, _)| q == p)?;
            if e.1 < *m {
                return None;
            }
            e.1 -= m;
        }
        Some(ZeroCycle::new(terms))
    }
}

impl fmt::Display for ZeroCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.terms.iter().map(|(p, m)| if *m == 1 { p.to_string() } else { format!("{m}*{p}") }).collect();
        write!(f, "[{}]", s.join(" + "))
    }
}

/// Closed points of `x` of exact degree `e`, found over `F_{p^e}`.
fn points_of_exact_degree(x: &VarietyModel, e: usize, budget: u64) -> Result<Vec<ClosedPoint>> {
    let f = x.field();
    if e == 1 {
        let mut pts: Vec<ClosedPoint> = x.points(budget)?.into_iter().map(ClosedPoint::rational).collect();
        pts.sort();
        return Ok(pts);
    }
    let p = match f {
        Field::Prime(p) => *p,
        _ => {
            return Err(Error::UnsupportedField(
                "closed points of degree > 1 are enumerated over prime base fields".into(),
            ))
        }
    };
    let ext = Field::finite(p, e)?;
    let big = x.base_change(&ext)?;
    let mut out = Vec::new();
    for v in big.points(budget)? {
        let orbit = frobenius_orbit(&v);
        if orbit.len() == e && orbit.iter().all(|o| *o >= v) {
            out.push(ClosedPoint { degree: e, coords: v });
        }
    }
    out.sort();
    Ok(out)
}

/// All closed points of degree dividing `d`, sorted by degree then coordinates.
pub fn enumerate_points(x: &VarietyModel, d: usize, budget: u64) -> Result<Vec<ClosedPoint>> {
    if d == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    let mut out = Vec::new();
    for e in 1..=d {
        if d % e == 0 {
            out.extend(points_of_exact_degree(x, e, budget)?);
        }
    }
    Ok(out)
}

/// The pushforward of a point over `F_{p^n}`: its closed point with
/// multiplicity `n / d`, `d` the orbit size.
pub fn transfer_cycle(x: &[Scalar]) -> Result<ZeroCycle> {
    let n = x.first().ok_or_else(|| Error::invalid("empty point"))?.field().prime_degree();
    let p = ClosedPoint::from_rep(x)?;
    let m = n / p.degree();
    Ok(ZeroCycle::new(vec![(p, m)]))
}

/// Multiplicity-free effective cycles of degree `n`: the points of the
/// symmetric power `X^(n)` over the base field.
pub fn symmetric_power_points(x: &VarietyModel, n: usize, budget: u64) -> Result<Vec<ZeroCycle>> {
    let mut by_degree: Vec<ClosedPoint> = Vec::new();
    for e in 1..=n {
        by_degree.extend(points_of_exact_degree(x, e, budget)?);
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(pts: &[ClosedPoint], start: usize, left: usize, current: &mut Vec<ClosedPoint>, out: &mut Vec<ZeroCycle>) {
        if left == 0 {
            out.push(ZeroCycle::from_points(current));
            return;
        }
        for i in start..pts.len() {
            if pts[i].degree() <= left {
                current.push(pts[i].clone());
                rec(pts, i + 1, left - pts[i].degree(), current, out);
                current.pop();
            }
        }
    }
    rec(&by_degree, 0, n, &mut current, &mut out);
    out.sort();
    Ok(out)
}

/// `gcd` of a list of degrees (0 for an empty list).
pub(crate) fn gcd_all(ds: impl IntoIterator<Item = usize>) -> usize {
    ds.into_iter().fold(0, |g, d| g.gcd(&d))
}
