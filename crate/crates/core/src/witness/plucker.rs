//! The Plücker embedding of `Gr(2, 4)` and the symplectic hyperplane section.

use std::collections::BTreeMap;

use crate::csa::{Involution, InvolutionKind, Preset};
use crate::error::{Error, Result};
use crate::exactalg::{Field, Matrix, Scalar};
use crate::witness::QuadraticForm;

/// Index pairs of the Plücker coordinates, in the order
/// `p12, p13, p14, p23, p24, p34` (0-based here).
pub const PLUCKER_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerPoint {
    pub coords: Vec<Scalar>,
    /// The coefficient of `e1∧e2∧e3∧e4` in `ω∧ω`: `2(p12 p34 - p13 p24 + p14 p23)`.
    pub wedge_square: Scalar,
}

/// Plücker coordinates of the span of two vectors in `F⁴`.
pub fn plucker_embed(field: &Field, w: &[Vec<Scalar>]) -> Result<PluckerPoint> {
    if w.len() != 2 || w.iter().any(|v| v.len() != 4) {
        return Err(Error::invalid("expected two vectors in F^4"));
    }
    if Matrix::from_row_slices(field, 4, w).rank() != 2 {
        return Err(Error::invalid("vectors do not span a 2-dimensional subspace"));
    }
    let (a, b) = (&w[0], &w[1]);
    let coords: Vec<Scalar> = PLUCKER_PAIRS.iter().map(|&(i, j)| &(&a[i] * &b[j]) - &(&a[j] * &b[i])).collect();
    let wedge_square = wedge_square(field, &coords);
    Ok(PluckerPoint { coords, wedge_square })
}

/// `ω∧ω` for `ω = Σ p_ij e_i∧e_j`.
pub fn wedge_square(field: &Field, p: &[Scalar]) -> Scalar {
    let two = field.from_i64(2);
    &two * &plucker_quadric(field).eval(p)
}

/// `p12 p34 - p13 p24 + p14 p23` on `P⁵`.
pub fn plucker_quadric(field: &Field) -> QuadraticForm {
    let mut t = vec![vec![field.zero(); 6]; 6];
    t[0][5] = field.one();
    t[1][4] = -field.one();
    t[2][3] = field.one();
    QuadraticForm::from_upper(field, &t).expect("nonzero form")
}

/// All 2-dimensional subspaces of `F_q⁴`, each as its reduced row echelon
/// basis, by enumerating echelon shapes.
pub fn grassmannian_points(field: &Field) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let elems = field.elements()?;
    let mut out = Vec::new();
    for &(c1, c2) in &PLUCKER_PAIRS {
        // free entries: columns after each pivot that are not pivots
        let free1: Vec<usize> = (c1 + 1..4).filter(|&c| c != c2).collect();
        let free2: Vec<usize> = (c2 + 1..4).collect();
        let slots = free1.len() + free2.len();
        let mut idx = vec![0usize; slots];
        loop {
            let mut r1 = vec![field.zero(); 4];
            let mut r2 = vec![field.zero(); 4];
            r1[c1] = field.one();
            r2[c2] = field.one();
            for (k, &c) in free1.iter().enumerate() {
                r1[c] = elems[idx[k]].clone();
            }
            for (k, &c) in free2.iter().enumerate() {
                r2[c] = elems[idx[free1.len() + k]].clone();
            }
            out.push(vec![r1, r2]);
            let mut k = 0;
            while k < slots {
                idx[k] += 1;
                if idx[k] < elems.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == slots {
                break;
            }
        }
    }
    Ok(out)
}

/// The Plücker quadric and the linear form `ℓ_ω(p) = Σ ω_ij p_ij` of an
/// alternating form `ω` on `F⁴`. A plane is `ω`-isotropic iff its Plücker
/// point lies on both.
pub fn symp_quadric_model_from_form(omega: &Matrix) -> Result<(QuadraticForm, Vec<Scalar>)> {
    if omega.rows() != 4 || omega.cols() != 4 || !omega.is_alternating() {
        return Err(Error::InvalidForm("expected an alternating 4 x 4 form".into()));
    }
    if omega.det().is_zero() {
        return Err(Error::InvalidForm("alternating form is degenerate".into()));
    }
    let field = omega.field();
    let ell = PLUCKER_PAIRS.iter().map(|&(i, j)| omega.get(i, j).clone()).collect();
    Ok((plucker_quadric(field), ell))
}

/// The model for a symplectic involution on a split algebra of degree 4.
pub fn symp_quadric_model(sigma: &Involution) -> Result<(QuadraticForm, Vec<Scalar>)> {
    if sigma.kind() != InvolutionKind::Symplectic {
        return Err(Error::invalid("involution is not symplectic"));
    }
    match sigma.algebra().preset() {
        Preset::Matrix { n: 4 } => {}
        _ => return Err(Error::invalid("model needs the split algebra M_4")),
    }
    symp_quadric_model_from_form(&sigma.recover_form()?)
}

/// Integer polynomials in eight variables `a1..a4, b1..b4`.
type MPoly = BTreeMap<[u8; 8], i64>;

fn mono(var: usize) -> MPoly {
    let mut e = [0u8; 8];
    e[var] = 1;
    MPoly::from([(e, 1)])
}

fn mp_mul(x: &MPoly, y: &MPoly) -> MPoly {
    let mut out = MPoly::new();
    for (ex, cx) in x {
        for (ey, cy) in y {
            let mut e = [0u8; 8];
            for k in 0..8 {
                e[k] = ex[k] + ey[k];
            }
            *out.entry(e).or_insert(0) += cx * cy;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn mp_add(x: &MPoly, y: &MPoly, sign: i64) -> MPoly {
    let mut out = x.clone();
    for (e, c) in y {
        *out.entry(*e).or_insert(0) += sign * c;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `p12 p34 - p13 p24 + p14 p23 = 0` as an identity in the entries of a
/// generic `2 x 4` matrix, expanded symbolically.
pub fn plucker_relation_identity() -> bool {
    let p: Vec<MPoly> = PLUCKER_PAIRS
        .iter()
        .map(|&(i, j)| mp_add(&mp_mul(&mono(i), &mono(4 + j)), &mp_mul(&mono(j), &mono(4 + i)), -1))
        .collect();
    let rel = mp_add(&mp_add(&mp_mul(&p[0], &p[5]), &mp_mul(&p[1], &p[4]), -1), &mp_mul(&p[2], &p[3]), 1);
    // the individual products are nonzero, so the identity is not vacuous
    rel.is_empty() && !mp_mul(&p[0], &p[5]).is_empty()
}
