//! Involutions of the first kind and Pfaffian characteristic polynomials.

use std::fmt;
use std::sync::Arc;

use crate::csa::algebra::{Algebra, Element, Preset};
use crate::error::{Error, Result};
use crate::exactalg::{Field, Matrix, Poly, Scalar, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvolutionKind {
    Orthogonal,
    Symplectic,
}

impl InvolutionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            InvolutionKind::Orthogonal => "orthogonal",
            InvolutionKind::Symplectic => "symplectic",
        }
    }

    pub fn parse(s: &str) -> Result<InvolutionKind> {
        match s {
            "orthogonal" => Ok(InvolutionKind::Orthogonal),
            "symplectic" => Ok(InvolutionKind::Symplectic),
            _ => Err(Error::Format(format!("unknown involution type '{s}'"))),
        }
    }
}

impl fmt::Display for InvolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An `F`-linear anti-automorphism of order two, stored as the matrix of its
/// action on the structure basis (column `j` is `σ(b_j)`).
#[derive(Clone, Debug)]
pub struct Involution {
    algebra: Arc<Algebra>,
    map: Matrix,
    kind: InvolutionKind,
}

impl PartialEq for Involution {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && *self.algebra == *other.algebra
    }
}

pub(crate) fn require_odd_characteristic(field: &Field) -> Result<()> {
    if field.characteristic() == 2 {
        return Err(Error::UnsupportedField("involutions need characteristic != 2".into()));
    }
    Ok(())
}

impl Involution {
    /// Validates `σ² = id` and `σ(b_i b_j) = σ(b_j) σ(b_i)` on all basis pairs,
    /// then classifies by the dimension of the symmetric elements.
    pub fn from_map(algebra: &Arc<Algebra>, map: Matrix) -> Result<Involution> {
        require_odd_characteristic(algebra.field())?;
        let d = algebra.dim();
        if map.rows() != d || map.cols() != d {
            return Err(Error::invalid("involution matrix has wrong size"));
        }
        if map.mul(&map) != Matrix::identity(algebra.field(), d) {
            return Err(Error::invalid("map does not square to the identity"));
        }
        let images: Vec<Vec<Scalar>> = (0..d).map(|j| map.column(j)).collect();
        for i in 0..d {
            for j in 0..d {
                let prod = algebra.mul_coords(&algebra.basis_coords(i), &algebra.basis_coords(j));
                let lhs = map.mul_vec(&prod);
                let rhs = algebra.mul_coords(&images[j], &images[i]);
                if lhs != rhs {
                    return Err(Error::invalid(format!("map is not an anti-automorphism on basis pair ({i},{j})")));
                }
            }
        }
        let kind = classify(algebra, &map)?;
        Ok(Involution { algebra: algebra.clone(), map, kind })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn matrix(&self) -> &Matrix {
        &self.map
    }

    pub fn kind(&self) -> InvolutionKind {
        self.kind
    }

    pub fn apply(&self, x: &Element) -> Element {
        self.algebra.element(self.map.mul_vec(x.coords())).expect("same algebra")
    }

    pub fn is_symmetric(&self, x: &Element) -> bool {
        self.apply(x) == *x
    }

    /// `Sym(A, σ)` as a subspace of coordinates.
    pub fn symmetric_space(&self) -> Subspace {
        symmetric_space(&self.algebra, &self.map)
    }

    /// Random σ-symmetric element `x + σ(x)`.
    pub fn random_symmetric<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Element {
        let x = self.algebra.random_element(rng);
        x.add(&self.apply(&x))
    }

    /// `x -> u σ(x) u⁻¹`, an involution when `σ(u) = ±u` is invertible.
    pub fn inner_twist(&self, u: &Element) -> Result<Involution> {
        let uinv = u.inverse().ok_or_else(|| Error::invalid("twisting element is not invertible"))?;
        let d = self.algebra.dim();
        let cols: Vec<Vec<Scalar>> = (0..d)
            .map(|j| u.mul(&self.apply(&self.algebra.basis(j))).mul(&uinv).into_coords())
            .collect();
        Involution::from_map(&self.algebra, Matrix::from_columns(self.algebra.field(), d, &cols))
    }

    /// `inn_g ∘ σ ∘ inn_g⁻¹`.
    pub fn conjugate_by(&self, g: &Element) -> Result<Involution> {
        let gs = g.mul(&self.apply(g));
        self.inner_twist(&gs)
    }

    /// The tensor product involution on `A ⊗ B`.
    pub fn tensor(&self, other: &Involution, algebra: &Arc<Algebra>) -> Result<Involution> {
        match algebra.preset() {
            Preset::Tensor(a, b) if **a == *self.algebra && **b == *other.algebra => {}
            _ => return Err(Error::invalid("target algebra is not the tensor product of the involutions' algebras")),
        }
        Involution::from_map(algebra, self.map.kron(&other.map))
    }

    pub fn base_change(&self, target: &Arc<Algebra>) -> Result<Involution> {
        let f = target.field().clone();
        let map = self.map.map(&f, |c| f.embed(c))?;
        Involution::from_map(target, map)
    }

    /// The bilinear form `B` (up to scalar) with `σ(x) = B⁻¹ xᵀ B`, for matrix presets.
    pub fn recover_form(&self) -> Result<Matrix> {
        let n = match self.algebra.preset() {
            Preset::Matrix { n } => *n,
            _ => return Err(Error::invalid("form recovery needs a matrix preset")),
        };
        let f = self.algebra.field();
        // unknown B (n*n entries); equations B σ(E_ij) = E_ji B
        let mut rows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let s = self.apply(&self.algebra.basis(i * n + j)).to_matrix()?;
                for r in 0..n {
                    for c in 0..n {
                        // (B s)_{rc} - (E_ji B)_{rc}
                        let mut row = vec![f.zero(); n * n];
                        for k in 0..n {
                            let idx = r * n + k;
                            row[idx] = &row[idx] + s.get(k, c);
                        }
                        if r == j {
                            let idx = i * n + c;
                            row[idx] = &row[idx] - &f.one();
                        }
                        rows.push(row);
                    }
                }
            }
        }
        let m = Matrix::from_row_slices(f, n * n, &rows);
        let ker = m.kernel();
        let b = ker.first().ok_or_else(|| Error::structural("no form represents this involution"))?;
        let rows: Vec<Vec<Scalar>> = b.chunks(n).map(|r| r.to_vec()).collect();
        Matrix::from_rows(f, rows)
    }
}

fn symmetric_space(algebra: &Arc<Algebra>, map: &Matrix) -> Subspace {
    let d = algebra.dim();
    let diff = map.sub(&Matrix::identity(algebra.field(), d));
    Subspace::span(algebra.field(), d, &diff.kernel())
}

fn classify(algebra: &Arc<Algebra>, map: &Matrix) -> Result<InvolutionKind> {
    let n = algebra.degree();
    let s = symmetric_space(algebra, map).dim();
    if s == n * (n + 1) / 2 {
        Ok(InvolutionKind::Orthogonal)
    } else if s == n * (n - 1) / 2 {
        Ok(InvolutionKind::Symplectic)
    } else {
        Err(Error::structural(format!(
            "dim Sym = {s} matches neither n(n+1)/2 nor n(n-1)/2 for n = {n}; not of the first kind"
        )))
    }
}

/// Type of an involution from the dimension of its symmetric elements.
pub fn involution_type(sigma: &Involution) -> Result<InvolutionKind> {
    classify(&sigma.algebra, &sigma.map)
}

/// The adjoint involution `x -> B⁻¹ xᵀ B` of a symmetric or alternating form.
pub fn adjoint_involution(algebra: &Arc<Algebra>, b: &Matrix) -> Result<Involution> {
    require_odd_characteristic(algebra.field())?;
    let n = match algebra.preset() {
        Preset::Matrix { n } => *n,
        _ => return Err(Error::invalid("adjoint involutions need a matrix preset")),
    };
    if b.rows() != n || b.cols() != n {
        return Err(Error::invalid("form has the wrong size"));
    }
    let expected = if b.is_symmetric() {
        InvolutionKind::Orthogonal
    } else if b.is_alternating() {
        InvolutionKind::Symplectic
    } else {
        return Err(Error::InvalidForm("form is neither symmetric nor alternating".into()));
    };
    let binv = b.inverse().ok_or_else(|| Error::InvalidForm("form is degenerate".into()))?;
    let cols: Vec<Vec<Scalar>> = (0..n * n)
        .map(|idx| {
            let x = algebra.basis(idx).to_matrix().expect("matrix preset");
            binv.mul(&x.transpose()).mul(b).data().to_vec()
        })
        .collect();
    let sigma = Involution::from_map(algebra, Matrix::from_columns(algebra.field(), n * n, &cols))?;
    if sigma.kind != expected {
        return Err(Error::structural("involution type disagrees with the symmetry of its form"));
    }
    Ok(sigma)
}

/// Block-diagonal `[[0, 1], [-1, 0]]` pairing `e1 <-> e2`, `e3 <-> e4`, ...
pub fn standard_alternating_form(field: &Field, n: usize) -> Result<Matrix> {
    if n % 2 != 0 {
        return Err(Error::invalid("alternating forms need even dimension"));
    }
    let mut j = Matrix::zeros(field, n, n);
    for k in (0..n).step_by(2) {
        j.set(k, k + 1, field.one());
        j.set(k + 1, k, -field.one());
    }
    Ok(j)
}

pub fn transpose_involution(algebra: &Arc<Algebra>) -> Result<Involution> {
    let n = algebra.degree();
    adjoint_involution(algebra, &Matrix::identity(algebra.field(), n))
}

fn quaternion_sign_involution(algebra: &Arc<Algebra>, signs: [i64; 4]) -> Result<Involution> {
    if !matches!(algebra.preset(), Preset::Quaternion { .. }) {
        return Err(Error::invalid("expected a quaternion preset"));
    }
    let f = algebra.field();
    let mut m = Matrix::zeros(f, 4, 4);
    for (i, s) in signs.iter().enumerate() {
        m.set(i, i, f.from_i64(*s));
    }
    Involution::from_map(algebra, m)
}

/// `1, i, j, k -> 1, -i, -j, -k` (symplectic).
pub fn quaternion_conjugation(algebra: &Arc<Algebra>) -> Result<Involution> {
    quaternion_sign_involution(algebra, [1, -1, -1, -1])
}

/// `1, i, j, k -> 1, i, j, -k` (orthogonal).
pub fn quaternion_reversion(algebra: &Arc<Algebra>) -> Result<Involution> {
    quaternion_sign_involution(algebra, [1, 1, 1, -1])
}

/// An orthogonal involution read off from the preset structure.
pub fn seed_orthogonal(algebra: &Arc<Algebra>) -> Result<Involution> {
    match algebra.preset() {
        Preset::Matrix { .. } => transpose_involution(algebra),
        Preset::Quaternion { .. } => quaternion_reversion(algebra),
        Preset::Tensor(a, b) => seed_orthogonal(a)?.tensor(&seed_orthogonal(b)?, algebra),
        _ => Err(Error::invalid("no preset orthogonal involution for this algebra")),
    }
}

/// A symplectic involution read off from the preset structure.
pub fn seed_symplectic(algebra: &Arc<Algebra>) -> Result<Involution> {
    match algebra.preset() {
        Preset::Matrix { n } if n % 2 == 0 => {
            adjoint_involution(algebra, &standard_alternating_form(algebra.field(), *n)?)
        }
        Preset::Quaternion { .. } => quaternion_conjugation(algebra),
        Preset::Tensor(a, b) => {
            if let Ok(sa) = seed_symplectic(a) {
                sa.tensor(&seed_orthogonal(b)?, algebra)
            } else {
                seed_orthogonal(a)?.tensor(&seed_symplectic(b)?, algebra)
            }
        }
        _ => Err(Error::invalid("no preset symplectic involution for this algebra")),
    }
}

/// Monic `Prp_x` with `Prp_x² = Prd_x` for `x` symmetric under a symplectic σ.
pub fn pfaffian_char_poly(sigma: &Involution, x: &Element) -> Result<Poly> {
    if sigma.kind != InvolutionKind::Symplectic {
        return Err(Error::invalid("Pfaffian characteristic polynomial needs a symplectic involution"));
    }
    if !sigma.is_symmetric(x) {
        return Err(Error::invalid("element is not symmetric under the involution"));
    }
    pfaffian_of_symmetric(x)
}

/// Square root of the reduced characteristic polynomial, without checking
/// symmetry (used along curves where symmetry holds for a varying involution).
pub(crate) fn pfaffian_of_symmetric(x: &Element) -> Result<Poly> {
    let prd = x.reduced_char_poly()?;
    prd.nth_root(2).map_err(|e| match e {
        Error::NotAPower(m) => Error::structural(format!("reduced characteristic polynomial is not a square: {m}")),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    #[test]
    fn transpose_on_m3_is_orthogonal() {
        let a = Algebra::matrix(&Field::rationals(), 3).unwrap();
        let t = transpose_involution(&a).unwrap();
        assert_eq!(t.kind(), InvolutionKind::Orthogonal);
        assert_eq!(t.symmetric_space().dim(), 6);
    }

    #[test]
    fn j_adjoint_on_m2_is_trace_minus_x() {
        let q = Field::rationals();
        let a = Algebra::matrix(&q, 2).unwrap();
        let s = adjoint_involution(&a, &standard_alternating_form(&q, 2).unwrap()).unwrap();
        assert_eq!(s.kind(), InvolutionKind::Symplectic);
        assert_eq!(s.symmetric_space().dim(), 1);
        let x = a.element_from_i64s(&[1, 2, 3, 4]).unwrap();
        let expected = a.scalar(&x.reduced_trace().unwrap()).sub(&x);
        assert_eq!(s.apply(&x), expected);
        let a4 = Algebra::matrix(&f7(), 4).unwrap();
        let s4 = adjoint_involution(&a4, &standard_alternating_form(&f7(), 4).unwrap()).unwrap();
        assert_eq!(s4.symmetric_space().dim(), 6);
    }

    #[test]
    fn invalid_forms_rejected() {
        let q = Field::rationals();
        let a = Algebra::matrix(&q, 2).unwrap();
        let b = Matrix::from_i64s(&q, &[&[1, 2], &[3, 4]]);
        assert!(matches!(adjoint_involution(&a, &b), Err(Error::InvalidForm(_))));
        let f3 = Field::prime(2).unwrap();
        let a2 = Algebra::matrix(&f3, 2).unwrap();
        assert!(transpose_involution(&a2).is_err());
    }

    #[test]
    fn quaternion_conjugation_gives_norm() {
        let q = Field::rationals();
        let h = Algebra::quaternion(&q, &q.from_i64(-1), &q.from_i64(-1)).unwrap();
        let c = quaternion_conjugation(&h).unwrap();
        assert_eq!(c.kind(), InvolutionKind::Symplectic);
        assert_eq!(c.apply(&h.basis(1)), h.basis(1).neg());
        let x = h.element_from_i64s(&[1, 1, 1, 0]).unwrap();
        assert_eq!(x.mul(&c.apply(&x)), h.scalar(&q.from_i64(3)));
        assert_eq!(x.reduced_norm().unwrap(), q.from_i64(3));
        assert_eq!(quaternion_reversion(&h).unwrap().kind(), InvolutionKind::Orthogonal);
        let y = h.element_from_i64s(&[0, 1, 1, 0]).unwrap();
        assert!(pfaffian_char_poly(&c, &y).is_err());
    }

    #[test]
    fn pfaffian_of_block_diagonal_element() {
        let q = Field::rationals();
        let a = Algebra::matrix(&q, 4).unwrap();
        let s = adjoint_involution(&a, &standard_alternating_form(&q, 4).unwrap()).unwrap();
        // diag(1,1,2,2) is J-symmetric since J pairs e1,e2 and e3,e4
        let x = a.from_matrix(&Matrix::from_i64s(&q, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 2]])).unwrap();
        assert!(s.is_symmetric(&x));
        let prp = pfaffian_char_poly(&s, &x).unwrap();
        assert_eq!(prp, Poly::from_i64s(&q, &[2, -3, 1]));
        let a2 = Algebra::matrix(&q, 2).unwrap();
        let s2 = adjoint_involution(&a2, &standard_alternating_form(&q, 2).unwrap()).unwrap();
        assert_eq!(pfaffian_char_poly(&s2, &a2.one()).unwrap(), Poly::from_i64s(&q, &[-1, 1]));
    }

    #[test]
    fn recover_form_of_symmetric_adjoint() {
        let f = f7();
        let a = Algebra::matrix(&f, 3).unwrap();
        let b = Matrix::from_i64s(&f, &[&[1, 2, 0], &[2, 3, 1], &[0, 1, 5]]);
        let s = adjoint_involution(&a, &b).unwrap();
        let r = s.recover_form().unwrap();
        // proportional to b
        let ratio = r.get(0, 0).div(b.get(0, 0)).unwrap();
        assert_eq!(b.scale(&ratio), r);
    }

    #[test]
    fn tensor_seeds_have_expected_types() {
        let q = Field::rationals();
        let h = Algebra::quaternion(&q, &q.from_i64(-1), &q.from_i64(-1)).unwrap();
        let s = Algebra::quaternion(&q, &q.one(), &q.one()).unwrap();
        let t = Algebra::tensor(&h, &s).unwrap();
        assert_eq!(seed_symplectic(&t).unwrap().kind(), InvolutionKind::Symplectic);
        assert_eq!(seed_orthogonal(&t).unwrap().kind(), InvolutionKind::Orthogonal);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn type_invariant_under_conjugation(seed in any::<u64>()) {
            let f = f7();
            let a = Algebra::matrix(&f, 4).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = a.random_unit(&mut rng, 100).unwrap();
            for s in [transpose_involution(&a).unwrap(), seed_symplectic(&a).unwrap()] {
                let c = s.conjugate_by(&g).unwrap();
                prop_assert_eq!(c.kind(), s.kind());
                prop_assert_eq!(involution_type(&c).unwrap(), s.kind());
            }
        }

        #[test]
        fn pfaffian_squares_to_reduced_char_poly(seed in any::<u64>()) {
            let f = f7();
            let a = Algebra::matrix(&f, 4).unwrap();
            let s = seed_symplectic(&a).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = s.random_symmetric(&mut rng);
            let prp = pfaffian_char_poly(&s, &x).unwrap();
            prop_assert_eq!(prp.deg(), 2);
            prop_assert_eq!(prp.mul(&prp), x.reduced_char_poly().unwrap());
            prop_assert!(x.eval_poly(&prp).is_zero());
        }
    }
}
