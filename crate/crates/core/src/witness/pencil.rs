//! Pencils of ideals and flags through their column modules.

use std::sync::Arc;

use crate::csa::{Algebra, ModulePresentation};
use crate::error::{Error, Result};
use crate::exactalg::matrix::poly_det;
use crate::exactalg::{Field, Poly, Scalar, Subspace};
use crate::ideals::{column_space, column_times_d, d_basis_extending, Flag, RightIdeal};
use crate::witness::{Endpoint, PencilWitness, SegmentData, WitnessKind};

/// Nested right `D`-bases of the column modules of a chain of ideals.
fn nested_bases(algebra: &Algebra, pres: &ModulePresentation, ideals: &[RightIdeal]) -> Result<Vec<Vec<Scalar>>> {
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    for i in ideals {
        let w: Subspace = column_space(i)?;
        basis = d_basis_extending(algebra, pres, &w, &basis);
    }
    Ok(basis)
}

/// `gcd` of the maximal minors of the `F[t]`-matrix whose columns are
/// `f_l(t) δ_k`; nonzero at `t` iff the `f_l(t)` are `D`-independent.
fn rank_validity(field: &Field, pres: &ModulePresentation, w: &[Vec<Scalar>], w_prime: &[Vec<Scalar>]) -> Poly {
    let dd = pres.dim_d();
    let rows = pres.column_len();
    let mut cols: Vec<Vec<Poly>> = Vec::new();
    for (a, b) in w.iter().zip(w_prime) {
        for k in 0..dd {
            let ad = column_times_d(pres, a, k);
            let bd = column_times_d(pres, b, k);
            // a t + b (1 - t) = b + (a - b) t
            cols.push(
                ad.iter()
                    .zip(&bd)
                    .map(|(x, y)| Poly::from_coeffs(field, vec![y.clone(), x - y]))
                    .collect(),
            );
        }
    }
    let c = cols.len();
    if c == 0 {
        return Poly::one(field);
    }
    let mut g = Poly::zero(field);
    for_each_subset(rows, c, &mut |sel| {
        let m: Vec<Vec<Poly>> = sel.iter().map(|&r| cols.iter().map(|col| col[r].clone()).collect()).collect();
        let d = poly_det(field, &m);
        g = g.gcd(&d);
        !g.is_one()
    });
    g
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns false.
fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn pencil_between(
    algebra: &Arc<Algebra>,
    kind: WitnessKind,
    from: &[RightIdeal],
    to: &[RightIdeal],
) -> Result<PencilWitness> {
    if from.len() != to.len() || from.iter().zip(to).any(|(a, b)| a.rdim() != b.rdim()) {
        return Err(Error::invalid("endpoints have different reduced dimensions"));
    }
    for i in from.iter().chain(to) {
        if i.algebra().as_ref() != algebra.as_ref() {
            return Err(Error::invalid("ideals live in different algebras"));
        }
    }
    let pres = algebra.module_presentation()?;
    let ind = pres.deg_d();
    let mut ranks = Vec::with_capacity(from.len());
    for i in from {
        if i.rdim() % ind != 0 {
            return Err(Error::invalid(format!("index {ind} does not divide reduced dimension {}", i.rdim())));
        }
        ranks.push(i.rdim() / ind);
    }
    let w = nested_bases(algebra, &pres, from)?;
    let w_prime = nested_bases(algebra, &pres, to)?;
    let field = algebra.field();
    let mut validity = Poly::one(field);
    for &r in &ranks {
        validity = validity.mul(&rank_validity(field, &pres, &w[..r], &w_prime[..r]));
    }
    if validity.is_zero() {
        return Err(Error::ConstructionFailed("pencil validity vanishes identically".into()));
    }
    let witness = PencilWitness {
        kind,
        field: field.clone(),
        algebra: Some(algebra.clone()),
        data: SegmentData::Pencil { ranks, w, w_prime },
        start: Endpoint::Ideals(from.to_vec()),
        end: Endpoint::Ideals(to.to_vec()),
        validity,
    };
    // endpoints are reproduced exactly by construction; keep that honest
    let one = field.one();
    if witness.point_at(&one)? != witness.start || witness.point_at(&field.zero())? != witness.end {
        return Err(Error::ConstructionFailed("pencil endpoints do not reproduce the inputs".into()));
    }
    Ok(witness)
}

/// Pencil of right ideals from `i` (at `t = 1`) to `j` (at `t = 0`).
pub fn connect_ideals(i: &RightIdeal, j: &RightIdeal) -> Result<PencilWitness> {
    if i.rdim() != j.rdim() {
        return Err(Error::invalid(format!("reduced dimensions differ: {} vs {}", i.rdim(), j.rdim())));
    }
    pencil_between(i.algebra(), WitnessKind::IdealPencil, std::slice::from_ref(i), std::slice::from_ref(j))
}

/// Simultaneous pencils for all levels of two flags of equal signature.
pub fn connect_flags(a: &Flag, b: &Flag) -> Result<PencilWitness> {
    if a.signature() != b.signature() {
        return Err(Error::invalid(format!("flag signatures differ: {:?} vs {:?}", a.signature(), b.signature())));
    }
    let Some(first) = a.ideals().first() else {
        return Err(Error::invalid("empty flag"));
    };
    pencil_between(first.algebra(), WitnessKind::FlagPencil, a.ideals(), b.ideals())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{default_samples, verify_witness};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn subsets_are_enumerated() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, &mut |s| {
            seen.push(s.to_vec());
            true
        });
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[5], vec![2, 3]);
    }

    #[test]
    fn constant_pencil() {
        let f = Field::prime(5).unwrap();
        let a = Algebra::matrix(&f, 3).unwrap();
        let i = RightIdeal::generated(&a, &[a.basis(0)]).unwrap();
        let w = connect_ideals(&i, &i).unwrap();
        assert!(w.validity.is_one());
    }

    #[test]
    fn row_ideals_of_m2_f3() {
        let f = Field::prime(3).unwrap();
        let a = Algebra::matrix(&f, 2).unwrap();
        let r1 = RightIdeal::generated(&a, &[a.basis(0)]).unwrap();
        let r2 = RightIdeal::generated(&a, &[a.basis(2)]).unwrap();
        let w = connect_ideals(&r1, &r2).unwrap();
        for t in f.elements().unwrap() {
            assert!(!w.validity.eval(&t).is_zero());
            match w.point_at(&t).unwrap() {
                Endpoint::Ideals(v) => assert_eq!(v[0].rdim(), 1),
                _ => unreachable!(),
            }
        }
        assert!(verify_witness(&w, &default_samples(&f, true)).pass);
    }

    #[test]
    fn random_rdim_two_in_m4_f5() {
        let f = Field::prime(5).unwrap();
        let a = Algebra::matrix(&f, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..5 {
            let i = RightIdeal::random(&a, 2, &mut rng).unwrap();
            let j = RightIdeal::random(&a, 2, &mut rng).unwrap();
            let w = connect_ideals(&i, &j).unwrap();
            assert!(w.validity.deg() <= 4);
            let valid = f.elements().unwrap().iter().filter(|t| !w.validity.eval(t).is_zero()).count();
            assert!(valid + w.validity.deg() >= 5);
            assert!(verify_witness(&w, &default_samples(&f, true)).pass);
        }
    }

    #[test]
    fn flags_in_m3_f5() {
        let f = Field::prime(5).unwrap();
        let a = Algebra::matrix(&f, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x = Flag::random(&a, &[1, 2], &mut rng).unwrap();
        let y = Flag::random(&a, &[1, 2], &mut rng).unwrap();
        let w = connect_flags(&x, &y).unwrap();
        assert!(verify_witness(&w, &default_samples(&f, true)).pass);
        assert!(connect_flags(&x, &x).unwrap().validity.is_one());
        let z = Flag::random(&a, &[1], &mut rng).unwrap();
        assert!(connect_flags(&x, &z).is_err());
    }

    #[test]
    fn quaternion_matrix_ideals() {
        let q = Field::rationals();
        let h = Algebra::quaternion(&q, &q.from_i64(-1), &q.from_i64(-1)).unwrap();
        let m2 = Algebra::matrix(&q, 2).unwrap();
        let a = Algebra::tensor(&m2, &h).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let i = RightIdeal::random(&a, 2, &mut rng).unwrap();
        let j = RightIdeal::random(&a, 2, &mut rng).unwrap();
        let w = connect_ideals(&i, &j).unwrap();
        assert!(!w.validity.is_zero());
        assert!(verify_witness(&w, &default_samples(&q, false)).pass);
    }
}
