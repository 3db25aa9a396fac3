//! Right ideals of central simple algebras: generation, idempotents, corner
//! algebras, flags and involution-relative notions.

use std::sync::Arc;

use rand::Rng;

use crate::csa::{Algebra, Corner, Element, Involution, ModulePresentation, Preset};
use crate::error::{Error, Result};
use crate::exactalg::{Matrix, Scalar, Subspace};

/// A right ideal, stored as the echelon basis of its coordinate space.
#[derive(Clone, Debug)]
pub struct RightIdeal {
    algebra: Arc<Algebra>,
    space: Subspace,
}

impl PartialEq for RightIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && (Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra)
    }
}

impl Eq for RightIdeal {}

/// A chain of right ideals with strictly increasing reduced dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    ideals: Vec<RightIdeal>,
}

fn closed_under_right_mult(algebra: &Algebra, space: &Subspace) -> bool {
    let d = algebra.dim();
    space.basis().iter().all(|y| (0..d).all(|j| space.contains(&algebra.mul_coords(y, &algebra.basis_coords(j)))))
}

impl RightIdeal {
    /// Wraps a subspace, checking closure under right multiplication and
    /// that the reduced dimension is an integer.
    pub fn from_space(algebra: &Arc<Algebra>, space: Subspace) -> Result<RightIdeal> {
        if space.ambient() != algebra.dim() || space.field() != algebra.field() {
            return Err(Error::invalid("subspace does not live in this algebra"));
        }
        if space.dim() % algebra.degree() != 0 {
            return Err(Error::structural(format!(
                "dimension {} is not a multiple of the degree {}",
                space.dim(),
                algebra.degree()
            )));
        }
        if !closed_under_right_mult(algebra, &space) {
            return Err(Error::invalid("subspace is not closed under right multiplication"));
        }
        Ok(RightIdeal { algebra: algebra.clone(), space })
    }

    pub fn from_basis(algebra: &Arc<Algebra>, basis: &[Vec<Scalar>]) -> Result<RightIdeal> {
        RightIdeal::from_space(algebra, Subspace::span(algebra.field(), algebra.dim(), basis))
    }

    pub fn zero(algebra: &Arc<Algebra>) -> RightIdeal {
        RightIdeal { algebra: algebra.clone(), space: Subspace::zero(algebra.field(), algebra.dim()) }
    }

    pub fn full(algebra: &Arc<Algebra>) -> RightIdeal {
        RightIdeal { algebra: algebra.clone(), space: Subspace::full(algebra.field(), algebra.dim()) }
    }

    /// The smallest right ideal containing `gens`: the span of all `g b_j`.
    pub fn generated(algebra: &Arc<Algebra>, gens: &[Element]) -> Result<RightIdeal> {
        let d = algebra.dim();
        let mut vecs = Vec::with_capacity(gens.len() * d);
        for g in gens {
            if g.algebra().as_ref() != algebra.as_ref() {
                return Err(Error::invalid("generator from a different algebra"));
            }
            for j in 0..d {
                vecs.push(algebra.mul_coords(g.coords(), &algebra.basis_coords(j)));
            }
        }
        RightIdeal::from_space(algebra, Subspace::span(algebra.field(), d, &vecs))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        self.space.basis()
    }

    pub fn basis_elements(&self) -> Vec<Element> {
        self.space.basis().iter().map(|v| self.algebra.element(v.clone()).unwrap()).collect()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn rdim(&self) -> usize {
        self.space.dim() / self.algebra.degree()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.space.contains(x.coords())
    }

    pub fn contains_ideal(&self, other: &RightIdeal) -> bool {
        self.space.contains_subspace(&other.space)
    }

    pub fn is_closed(&self) -> bool {
        closed_under_right_mult(&self.algebra, &self.space)
    }

    pub fn sum(&self, other: &RightIdeal) -> RightIdeal {
        RightIdeal { algebra: self.algebra.clone(), space: self.space.sum(&other.space) }
    }

    pub fn intersection(&self, other: &RightIdeal) -> RightIdeal {
        RightIdeal { algebra: self.algebra.clone(), space: self.space.intersection(&other.space) }
    }

    /// Random right ideal of the given reduced dimension, using the preset's
    /// column-module structure.
    pub fn random<R: Rng + ?Sized>(algebra: &Arc<Algebra>, rdim: usize, rng: &mut R) -> Result<RightIdeal> {
        let pres = algebra.module_presentation()?;
        let ind = pres.deg_d();
        if rdim % ind != 0 || rdim > algebra.degree() {
            return Err(Error::invalid(format!(
                "reduced dimension {rdim} must be a multiple of {ind} and at most {}",
                algebra.degree()
            )));
        }
        let w = random_d_submodule(algebra, &pres, rdim / ind, None, rng)?;
        ideal_from_columns(algebra, &pres, w.basis())
    }
}

impl Flag {
    pub fn new(ideals: Vec<RightIdeal>) -> Result<Flag> {
        let flag = Flag { ideals };
        for w in flag.ideals.windows(2) {
            if w[0].rdim() >= w[1].rdim() || !w[1].contains_ideal(&w[0]) {
                return Err(Error::invalid("flag levels must be strictly increasing and nested"));
            }
        }
        Ok(flag)
    }

    pub fn ideals(&self) -> &[RightIdeal] {
        &self.ideals
    }

    pub fn signature(&self) -> Vec<usize> {
        self.ideals.iter().map(|i| i.rdim()).collect()
    }

    /// Random flag with the given signature via nested column modules.
    pub fn random<R: Rng + ?Sized>(algebra: &Arc<Algebra>, signature: &[usize], rng: &mut R) -> Result<Flag> {
        let pres = algebra.module_presentation()?;
        let ind = pres.deg_d();
        let mut ideals = Vec::new();
        let mut current: Option<Subspace> = None;
        let mut last = 0;
        for &r in signature {
            if r % ind != 0 || r <= last || r > algebra.degree() {
                return Err(Error::invalid(format!("invalid flag signature {signature:?}")));
            }
            let w = random_d_submodule(algebra, &pres, r / ind, current.as_ref(), rng)?;
            ideals.push(ideal_from_columns(algebra, &pres, w.basis())?);
            current = Some(w);
            last = r;
        }
        Flag::new(ideals)
    }
}

/// True iff the reduced dimensions equal `signature` and the ideals are nested.
pub fn flag_check(ideals: &[RightIdeal], signature: &[usize]) -> bool {
    ideals.len() == signature.len()
        && ideals.iter().zip(signature).all(|(i, s)| i.rdim() == *s && i.is_closed())
        && ideals.windows(2).all(|w| w[1].contains_ideal(&w[0]))
}

// ---- column-module structure ----

/// Column `j` of `x` in `D^m`, as `m * dim(D)` coordinates over `F`.
pub fn column_of(pres: &ModulePresentation, coords: &[Scalar], j: usize) -> Vec<Scalar> {
    let dd = pres.dim_d();
    let m = pres.m;
    let mut v = Vec::with_capacity(m * dd);
    for i in 0..m {
        for k in 0..dd {
            v.push(coords[pres.perm[(i * m + j) * dd + k]].clone());
        }
    }
    v
}

/// The element whose column `j` is `v` and whose other columns vanish.
pub fn place_column(algebra: &Algebra, pres: &ModulePresentation, v: &[Scalar], j: usize) -> Vec<Scalar> {
    let dd = pres.dim_d();
    let m = pres.m;
    let mut coords = vec![algebra.field().zero(); algebra.dim()];
    for i in 0..m {
        for k in 0..dd {
            coords[pres.perm[(i * m + j) * dd + k]] = v[i * dd + k].clone();
        }
    }
    coords
}

/// `v * δ` for a column `v` and the `l`-th basis element `δ` of `D`.
pub fn column_times_d(pres: &ModulePresentation, v: &[Scalar], l: usize) -> Vec<Scalar> {
    match &pres.division {
        None => v.to_vec(),
        Some(d) => {
            let dd = d.dim();
            let delta = d.basis_coords(l);
            v.chunks(dd).flat_map(|entry| d.mul_coords(entry, &delta)).collect()
        }
    }
}

/// `F`-span of `{v δ}` over the given columns and the basis of `D`.
pub fn right_d_span(algebra: &Algebra, pres: &ModulePresentation, vectors: &[Vec<Scalar>]) -> Subspace {
    let dd = pres.dim_d();
    let mut all = Vec::with_capacity(vectors.len() * dd);
    for v in vectors {
        for l in 0..dd {
            all.push(column_times_d(pres, v, l));
        }
    }
    Subspace::span(algebra.field(), pres.column_len(), &all)
}

/// `W = im(I)`: the `F`-span of all columns of elements of `I`.
pub fn column_space(ideal: &RightIdeal) -> Result<Subspace> {
    let algebra = ideal.algebra();
    let pres = algebra.module_presentation()?;
    let mut cols = Vec::new();
    for y in ideal.basis() {
        for j in 0..pres.m {
            cols.push(column_of(&pres, y, j));
        }
    }
    Ok(Subspace::span(algebra.field(), pres.column_len(), &cols))
}

/// The ideal `Hom_D(V, W)` of elements all of whose columns lie in the right
/// `D`-span of `vectors`.
pub fn ideal_from_columns(algebra: &Arc<Algebra>, pres: &ModulePresentation, vectors: &[Vec<Scalar>]) -> Result<RightIdeal> {
    let w = right_d_span(algebra, pres, vectors);
    let mut elems = Vec::with_capacity(w.dim() * pres.m);
    for v in w.basis() {
        for j in 0..pres.m {
            elems.push(place_column(algebra, pres, v, j));
        }
    }
    RightIdeal::from_space(algebra, Subspace::span(algebra.field(), algebra.dim(), &elems))
}

/// Greedy right `D`-basis of a `D`-submodule `W`, extending `start`.
pub fn d_basis_extending(
    algebra: &Algebra,
    pres: &ModulePresentation,
    w: &Subspace,
    start: &[Vec<Scalar>],
) -> Vec<Vec<Scalar>> {
    let mut chosen = start.to_vec();
    let mut span = right_d_span(algebra, pres, &chosen);
    for v in w.basis() {
        if span.dim() == w.dim() {
            break;
        }
        if !span.contains(v) {
            chosen.push(v.clone());
            span = right_d_span(algebra, pres, &chosen);
        }
    }
    chosen
}

fn random_d_submodule<R: Rng + ?Sized>(
    algebra: &Algebra,
    pres: &ModulePresentation,
    rank: usize,
    containing: Option<&Subspace>,
    rng: &mut R,
) -> Result<Subspace> {
    let f = algebra.field();
    let dd = pres.dim_d();
    let len = pres.column_len();
    let mut vecs: Vec<Vec<Scalar>> = containing.map(|s| s.basis().to_vec()).unwrap_or_default();
    let mut span = right_d_span(algebra, pres, &vecs);
    let mut attempts = 0;
    while span.dim() < rank * dd {
        attempts += 1;
        if attempts > 1000 {
            return Err(Error::FieldTooSmall("could not draw independent column vectors".into()));
        }
        let v: Vec<Scalar> = (0..len).map(|_| f.random(rng)).collect();
        if span.contains(&v) {
            continue;
        }
        let mut trial = vecs.clone();
        trial.push(v);
        let s = right_d_span(algebra, pres, &trial);
        if s.dim() <= rank * dd {
            vecs = trial;
            span = s;
        }
    }
    Ok(span)
}

// ---- idempotents and corners ----

/// An idempotent `e` with `I = eA`, found as the solution `c ∈ I` of
/// `c y = y` for every basis vector `y` of `I`.
pub fn splitting_idempotent(ideal: &RightIdeal) -> Result<Element> {
    let algebra = ideal.algebra();
    let f = algebra.field();
    let basis = ideal.basis();
    let k = basis.len();
    if k == 0 {
        return Ok(algebra.zero());
    }
    let d = algebra.dim();
    // unknowns λ_a with c = Σ λ_a y_a; equations Σ λ_a (y_a y_b) = y_b
    let mut rows = Vec::with_capacity(k * d);
    let mut rhs = Vec::with_capacity(k * d);
    let products: Vec<Vec<Vec<Scalar>>> =
        basis.iter().map(|ya| basis.iter().map(|yb| algebra.mul_coords(ya, yb)).collect()).collect();
    for (b, yb) in basis.iter().enumerate() {
        for coord in 0..d {
            rows.push((0..k).map(|a| products[a][b][coord].clone()).collect::<Vec<_>>());
            rhs.push(yb[coord].clone());
        }
    }
    let m = Matrix::from_row_slices(f, k, &rows);
    let lambda = m
        .solve(&rhs)
        .ok_or_else(|| Error::structural("no idempotent generator; input is not a right ideal of a semisimple algebra"))?;
    let mut c = vec![f.zero(); d];
    for (l, y) in lambda.iter().zip(basis) {
        for (ci, yi) in c.iter_mut().zip(y) {
            *ci = &*ci + &(l * yi);
        }
    }
    let e = algebra.element(c)?;
    debug_assert!(e.mul(&e) == e);
    Ok(e)
}

/// The complementary right ideal `(1 - e)A`.
pub fn complement(e: &Element) -> Result<RightIdeal> {
    let algebra = e.algebra();
    RightIdeal::generated(algebra, &[algebra.one().sub(e)])
}

fn require_idempotent(e: &Element) -> Result<()> {
    if e.mul(e) != *e {
        return Err(Error::invalid("element is not idempotent"));
    }
    Ok(())
}

/// The corner algebra `eAe` with unit `e`, carrying a reference to `(A, e)`.
pub fn corner_algebra(e: &Element) -> Result<Arc<Algebra>> {
    require_idempotent(e)?;
    let algebra = e.algebra();
    let f = algebra.field();
    let d = algebra.dim();
    let vecs: Vec<Vec<Scalar>> = (0..d)
        .map(|i| {
            let ebe = algebra.mul_coords(&algebra.mul_coords(e.coords(), &algebra.basis_coords(i)), e.coords());
            ebe
        })
        .collect();
    let embedding = Subspace::span(f, d, &vecs);
    let dc = embedding.dim();
    if dc == 0 {
        return Err(Error::invalid("the zero idempotent has no corner algebra"));
    }
    let basis = embedding.basis().to_vec();
    let mut table = vec![Vec::new(); dc * dc];
    for a in 0..dc {
        for b in 0..dc {
            let prod = algebra.mul_coords(&basis[a], &basis[b]);
            let coords = embedding.coords(&prod).expect("eAe is closed under products");
            table[a * dc + b] = coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        }
    }
    let unit = embedding.coords(e.coords()).expect("e lies in eAe");
    let labels = (0..dc).map(|i| format!("c{}", i + 1)).collect();
    let corner = Corner { parent: algebra.clone(), idempotent: e.coords().to_vec(), embedding };
    Algebra::corner_from_parts(f, labels, table, unit, corner)
}

fn corner_data(corner: &Arc<Algebra>) -> Result<&Corner> {
    match corner.preset() {
        Preset::Corner(c) => Ok(c),
        _ => Err(Error::invalid("algebra carries no corner back-reference")),
    }
}

/// `J -> Je`, a right ideal of `eAe`, for `J ⊆ eA`.
pub fn restrict_to_corner(j: &RightIdeal, corner: &Arc<Algebra>) -> Result<RightIdeal> {
    let data = corner_data(corner)?;
    let parent = &data.parent;
    if j.algebra().as_ref() != parent.as_ref() {
        return Err(Error::invalid("ideal is not in the corner's parent algebra"));
    }
    let e = &data.idempotent;
    let mut vecs = Vec::new();
    for y in j.basis() {
        if parent.mul_coords(e, y) != *y {
            return Err(Error::invalid("ideal is not contained in eA"));
        }
        let ye = parent.mul_coords(y, e);
        vecs.push(data.embedding.coords(&ye).expect("Je lies in eAe"));
    }
    RightIdeal::from_basis(corner, &vecs)
}

/// `K -> KA`, a right ideal of the parent algebra.
pub fn induce_from_corner(k: &RightIdeal) -> Result<RightIdeal> {
    let data = corner_data(k.algebra())?;
    let parent = &data.parent;
    let embed = |c: &[Scalar]| -> Vec<Scalar> {
        let mut v = vec![parent.field().zero(); parent.dim()];
        for (ci, b) in c.iter().zip(data.embedding.basis()) {
            if ci.is_zero() {
                continue;
            }
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = &*vi + &(ci * bi);
            }
        }
        v
    };
    let gens = k.basis().iter().map(|c| parent.element(embed(c))).collect::<Result<Vec<_>>>()?;
    RightIdeal::generated(parent, &gens)
}

// ---- involution-relative notions ----

/// `I^⊥ = r.ann(σ(I)) = {x : σ(y) x = 0 for all y ∈ I}`.
pub fn perp(ideal: &RightIdeal, sigma: &Involution) -> Result<RightIdeal> {
    let algebra = ideal.algebra();
    if sigma.algebra().as_ref() != algebra.as_ref() {
        return Err(Error::invalid("involution on a different algebra"));
    }
    let d = algebra.dim();
    if ideal.dim() == 0 {
        return Ok(RightIdeal::full(algebra));
    }
    let mut stacked: Option<Matrix> = None;
    for y in ideal.basis_elements() {
        let l = sigma.apply(&y).left_mult_matrix();
        stacked = Some(match stacked {
            None => l,
            Some(s) => s.vstack(&l),
        });
    }
    let ker = stacked.unwrap().kernel();
    RightIdeal::from_space(algebra, Subspace::span(algebra.field(), d, &ker))
}

/// `(rad I, regular, isotropic)` with `rad I = I ∩ I^⊥`.
pub fn radical_is_regular_is_isotropic(ideal: &RightIdeal, sigma: &Involution) -> Result<(RightIdeal, bool, bool)> {
    let p = perp(ideal, sigma)?;
    let rad = ideal.intersection(&p);
    let regular = rad.dim() == 0;
    let isotropic = is_isotropic(ideal, sigma);
    Ok((rad, regular, isotropic))
}

/// `σ(I) I = 0`.
pub fn is_isotropic(ideal: &RightIdeal, sigma: &Involution) -> bool {
    let elems = ideal.basis_elements();
    elems.iter().all(|a| {
        let sa = sigma.apply(a);
        elems.iter().all(|b| sa.mul(b).is_zero())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csa::{adjoint_involution, transpose_involution};
    use crate::exactalg::Field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn check_idempotent(i: &RightIdeal) {
        let e = splitting_idempotent(i).unwrap();
        assert_eq!(e.mul(&e), e);
        assert!(i.contains(&e));
        assert_eq!(RightIdeal::generated(i.algebra(), &[e.clone()]).unwrap(), *i);
        let c = complement(&e).unwrap();
        assert_eq!(c.dim() + i.dim(), i.algebra().dim());
        assert_eq!(c.intersection(i).dim(), 0);
    }

    #[test]
    fn generated_examples() {
        let f = Field::prime(5).unwrap();
        let a = Algebra::matrix(&f, 2).unwrap();
        assert_eq!(RightIdeal::generated(&a, &[a.zero()]).unwrap().rdim(), 0);
        let row = RightIdeal::generated(&a, &[a.basis(0)]).unwrap();
        assert_eq!(row.rdim(), 1);
        assert!(row.contains(&a.basis(1)));
        let q = Field::rationals();
        let s = Algebra::quaternion(&q, &q.one(), &q.one()).unwrap();
        let i = RightIdeal::generated(&s, &[s.one().add(&s.basis(1))]).unwrap();
        assert_eq!(i.dim(), 2);
    }

    #[test]
    fn idempotent_edge_cases() {
        let f = Field::prime(5).unwrap();
        let a = Algebra::matrix(&f, 2).unwrap();
        assert_eq!(splitting_idempotent(&RightIdeal::full(&a)).unwrap(), a.one());
        assert!(splitting_idempotent(&RightIdeal::zero(&a)).unwrap().is_zero());
        check_idempotent(&RightIdeal::generated(&a, &[a.basis(0)]).unwrap());
    }

    #[test]
    fn random_ideals_split() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [2, 3, 5] {
            let f = Field::prime(p).unwrap();
            for n in 1..=4 {
                let a = Algebra::matrix(&f, n).unwrap();
                for r in 0..=n {
                    check_idempotent(&RightIdeal::random(&a, r, &mut rng).unwrap());
                }
            }
        }
        let q = Field::rationals();
        let h = Algebra::quaternion(&q, &q.from_i64(-1), &q.from_i64(-1)).unwrap();
        let m2 = Algebra::matrix(&q, 2).unwrap();
        let a = Algebra::tensor(&m2, &h).unwrap();
        let i = RightIdeal::random(&a, 2, &mut rng).unwrap();
        assert_eq!(i.dim(), 8);
        check_idempotent(&i);
        assert!(RightIdeal::random(&a, 1, &mut rng).is_err());
    }

    #[test]
    fn corner_of_rank_two_idempotent_is_m2() {
        let f = Field::prime(5).unwrap();
        let a = Algebra::matrix(&f, 3).unwrap();
        let e = a.basis(0).add(&a.basis(4));
        let c = corner_algebra(&e).unwrap();
        assert_eq!(c.degree(), 2);
        // the corner basis is E11, E12, E21, E22 in echelon order, so its
        // structure constants coincide with those of M_2
        let m2 = Algebra::matrix(&f, 2).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(c.product(i, j), m2.product(i, j));
            }
        }
        let q = Field::rationals();
        let a3 = Algebra::matrix(&q, 3).unwrap();
        assert_eq!(corner_algebra(&a3.basis(0)).unwrap().degree(), 1);
        assert_eq!(corner_algebra(&a3.one()).unwrap().dim(), 9);
    }

    #[test]
    fn corner_dictionary_round_trip() {
        let f = Field::prime(5).unwrap();
        let a = Algebra::matrix(&f, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let flag = Flag::random(&a, &[1, 2], &mut rng).unwrap();
        let (j, i) = (&flag.ideals()[0], &flag.ideals()[1]);
        let e = splitting_idempotent(i).unwrap();
        let d = corner_algebra(&e).unwrap();
        let k = restrict_to_corner(j, &d).unwrap();
        assert_eq!(k.rdim(), 1);
        assert_eq!(induce_from_corner(&k).unwrap(), *j);
        assert_eq!(restrict_to_corner(i, &d).unwrap(), RightIdeal::full(&d));
        assert_eq!(restrict_to_corner(&RightIdeal::zero(&a), &d).unwrap().dim(), 0);
        assert_eq!(induce_from_corner(&RightIdeal::full(&d)).unwrap(), *i);
    }

    #[test]
    fn perp_regular_isotropic() {
        let q = Field::rationals();
        let a = Algebra::matrix(&q, 2).unwrap();
        let t = transpose_involution(&a).unwrap();
        let i = RightIdeal::generated(&a, &[a.basis(0)]).unwrap();
        let (rad, regular, iso) = radical_is_regular_is_isotropic(&i, &t).unwrap();
        assert_eq!(rad.dim(), 0);
        assert!(regular && !iso);
        assert_eq!(perp(&RightIdeal::zero(&a), &t).unwrap().dim(), 4);
        assert_eq!(perp(&RightIdeal::full(&a), &t).unwrap().dim(), 0);
        let (_, reg, iso) = radical_is_regular_is_isotropic(&RightIdeal::full(&a), &t).unwrap();
        assert!(reg && !iso);
        // hyperbolic plane: B = antidiagonal, e1 is isotropic
        let b = Matrix::from_i64s(&q, &[&[0, 1], &[1, 0]]);
        let h = adjoint_involution(&a, &b).unwrap();
        let l = RightIdeal::generated(&a, &[a.basis(0)]).unwrap();
        assert!(is_isotropic(&l, &h));
        assert_eq!(perp(&l, &h).unwrap(), l);
    }

    #[test]
    fn perp_dimension_duality() {
        let f = Field::prime(7).unwrap();
        let a = Algebra::matrix(&f, 4).unwrap();
        let s = crate::csa::seed_symplectic(&a).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for r in 0..=4 {
            let i = RightIdeal::random(&a, r, &mut rng).unwrap();
            assert_eq!(i.rdim() + perp(&i, &s).unwrap().rdim(), 4);
        }
    }

    #[test]
    fn flag_check_cases() {
        let f = Field::prime(3).unwrap();
        let a = Algebra::matrix(&f, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let flag = Flag::random(&a, &[1, 2], &mut rng).unwrap();
        assert!(flag_check(flag.ideals(), &[1, 2]));
        let rev: Vec<_> = flag.ideals().iter().rev().cloned().collect();
        assert!(!flag_check(&rev, &[2, 1]));
        assert!(flag_check(&flag.ideals()[..1], &[1]));
    }
}
