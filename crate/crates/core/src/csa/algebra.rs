//! Finite-dimensional associative algebras given by structure constants.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::{Field, Matrix, Poly, Scalar, Subspace};

/// Above this dimension associativity is checked on sampled triples only.
const FULL_ASSOCIATIVITY_LIMIT: usize = 256;

/// How an algebra was built. Presets carry the structure that downstream
/// constructions rely on (module presentations, exponent certificates).
#[derive(Clone, Debug)]
pub enum Preset {
    Matrix { n: usize },
    Quaternion { a: Scalar, b: Scalar },
    Tensor(Arc<Algebra>, Arc<Algebra>),
    Corner(Corner),
    Explicit,
}

/// Back-reference from `eAe` to `(A, e)`.
#[derive(Clone, Debug)]
pub struct Corner {
    pub parent: Arc<Algebra>,
    pub idempotent: Vec<Scalar>,
    /// Row-echelon basis of `eAe` inside `A`; corner basis element `i` is row `i`.
    pub embedding: Subspace,
}

/// An associative unital algebra over a field with sparse structure constants.
#[derive(Clone, Debug)]
pub struct Algebra {
    field: Field,
    dim: usize,
    degree: usize,
    labels: Vec<String>,
    /// `table[i * dim + j]` is `b_i * b_j` as a sparse coordinate list.
    table: Vec<Vec<(usize, Scalar)>>,
    unit: Vec<Scalar>,
    preset: Preset,
    declared_index: Option<u64>,
    declared_exponent: Option<u64>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.table == other.table
    }
}

impl Eq for Algebra {}

/// Column-module description `A = M_m(D)`: `A`-coordinate `perm[s]` holds the
/// `D`-coordinate `k` of matrix entry `(i, j)` where `s = (i*m + j)*dim(D) + k`.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    pub m: usize,
    /// `None` when `D` is the ground field.
    pub division: Option<Arc<Algebra>>,
    pub perm: Vec<usize>,
}

impl ModulePresentation {
    pub fn dim_d(&self) -> usize {
        self.division.as_ref().map_or(1, |d| d.dim())
    }

    pub fn deg_d(&self) -> usize {
        self.division.as_ref().map_or(1, |d| d.degree())
    }

    /// Length of a column vector over `F`.
    pub fn column_len(&self) -> usize {
        self.m * self.dim_d()
    }
}

fn isqrt(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n).then_some(r)
}

impl Algebra {
    fn assemble(
        field: &Field,
        labels: Vec<String>,
        table: Vec<Vec<(usize, Scalar)>>,
        preset: Preset,
        unit: Option<Vec<Scalar>>,
    ) -> Result<Algebra> {
        let dim = labels.len();
        let degree = isqrt(dim).ok_or_else(|| Error::invalid(format!("dimension {dim} is not a square")))?;
        if table.len() != dim * dim {
            return Err(Error::invalid("structure constant table has wrong size"));
        }
        let mut alg = Algebra {
            field: field.clone(),
            dim,
            degree,
            labels,
            table,
            unit: Vec::new(),
            preset,
            declared_index: None,
            declared_exponent: None,
        };
        alg.unit = match unit {
            Some(u) => u,
            None => alg.find_unit()?,
        };
        alg.check_associative()?;
        Ok(alg)
    }

    /// `M_n(F)` on the matrix units `E_ij` (index `i*n + j`).
    pub fn matrix(field: &Field, n: usize) -> Result<Arc<Algebra>> {
        if n == 0 {
            return Err(Error::invalid("matrix size must be positive"));
        }
        let dim = n * n;
        let mut table = vec![Vec::new(); dim * dim];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    // E_ij E_jl = E_il
                    table[(i * n + j) * dim + (j * n + l)] = vec![(i * n + l, field.one())];
                }
            }
        }
        let labels = (0..n)
            .flat_map(|i| (0..n).map(move |j| format!("e{}{}", i + 1, j + 1)))
            .collect();
        let mut unit = vec![field.zero(); dim];
        for i in 0..n {
            unit[i * n + i] = field.one();
        }
        Ok(Arc::new(Algebra::assemble(field, labels, table, Preset::Matrix { n }, Some(unit))?))
    }

    /// The quaternion algebra `(a, b)_F` on `1, i, j, k` with `i^2 = a`,
    /// `j^2 = b`, `ij = k = -ji`.
    pub fn quaternion(field: &Field, a: &Scalar, b: &Scalar) -> Result<Arc<Algebra>> {
        if field.characteristic() == 2 {
            return Err(Error::UnsupportedField("quaternion presets need characteristic != 2".into()));
        }
        if a.is_zero() || b.is_zero() {
            return Err(Error::invalid("quaternion parameters must be nonzero"));
        }
        let a = field.embed(a)?;
        let b = field.embed(b)?;
        let one = field.one();
        let ab = &a * &b;
        let mut table = vec![Vec::new(); 16];
        let mut put = |x: usize, y: usize, k: usize, c: Scalar| table[x * 4 + y] = vec![(k, c)];
        for x in 0..4 {
            put(0, x, x, one.clone());
            put(x, 0, x, one.clone());
        }
        put(1, 1, 0, a.clone());
        put(1, 2, 3, one.clone());
        put(1, 3, 2, a.clone());
        put(2, 1, 3, -&one);
        put(2, 2, 0, b.clone());
        put(2, 3, 1, -&b);
        put(3, 1, 2, -&a);
        put(3, 2, 1, b.clone());
        put(3, 3, 0, -&ab);
        let labels = ["1", "i", "j", "k"].iter().map(|s| s.to_string()).collect();
        let mut unit = vec![field.zero(); 4];
        unit[0] = one;
        Ok(Arc::new(Algebra::assemble(field, labels, table, Preset::Quaternion { a, b }, Some(unit))?))
    }

    /// `A ⊗ B` on the product basis (index `i_A * dim(B) + i_B`).
    pub fn tensor(a: &Arc<Algebra>, b: &Arc<Algebra>) -> Result<Arc<Algebra>> {
        if a.field != b.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", a.field, b.field)));
        }
        let (da, db) = (a.dim, b.dim);
        let dim = da * db;
        let mut table = vec![Vec::new(); dim * dim];
        for i1 in 0..da {
            for j1 in 0..da {
                let pa = &a.table[i1 * da + j1];
                if pa.is_empty() {
                    continue;
                }
                for i2 in 0..db {
                    for j2 in 0..db {
                        let pb = &b.table[i2 * db + j2];
                        let mut out = Vec::with_capacity(pa.len() * pb.len());
                        for (ka, ca) in pa {
                            for (kb, cb) in pb {
                                out.push((ka * db + kb, ca * cb));
                            }
                        }
                        table[(i1 * db + i2) * dim + (j1 * db + j2)] = out;
                    }
                }
            }
        }
        let labels = a
            .labels
            .iter()
            .flat_map(|la| b.labels.iter().map(move |lb| format!("{la}⊗{lb}")))
            .collect();
        let mut unit = vec![a.field.zero(); dim];
        for (i, ua) in a.unit.iter().enumerate() {
            for (j, ub) in b.unit.iter().enumerate() {
                unit[i * db + j] = ua * ub;
            }
        }
        let preset = Preset::Tensor(a.clone(), b.clone());
        Ok(Arc::new(Algebra::assemble(&a.field, labels, table, preset, Some(unit))?))
    }

    /// Algebra from explicit structure constants `(i, j, k, c)` meaning the
    /// coefficient of `b_k` in `b_i b_j` is `c`. The unit is solved for and
    /// associativity is verified.
    pub fn explicit(field: &Field, labels: Vec<String>, constants: &[(usize, usize, usize, Scalar)]) -> Result<Arc<Algebra>> {
        let dim = labels.len();
        let mut table: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in constants {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::invalid("structure constant index out of range"));
            }
            if c.is_zero() {
                continue;
            }
            let slot = &mut table[i * dim + j];
            match slot.iter_mut().find(|(kk, _)| kk == k) {
                Some(e) => e.1 = &e.1 + c,
                None => slot.push((*k, field.embed(c)?)),
            }
        }
        for slot in &mut table {
            slot.retain(|(_, c)| !c.is_zero());
            slot.sort_by_key(|(k, _)| *k);
        }
        Ok(Arc::new(Algebra::assemble(field, labels, table, Preset::Explicit, None)?))
    }

    pub(crate) fn corner_from_parts(
        field: &Field,
        labels: Vec<String>,
        table: Vec<Vec<(usize, Scalar)>>,
        unit: Vec<Scalar>,
        corner: Corner,
    ) -> Result<Arc<Algebra>> {
        Ok(Arc::new(Algebra::assemble(field, labels, table, Preset::Corner(corner), Some(unit))?))
    }

    fn find_unit(&self) -> Result<Vec<Scalar>> {
        // u b_j = b_j and b_j u = b_j for all j, linear in u
        let d = self.dim;
        let mut rows = Vec::with_capacity(2 * d * d);
        let mut rhs = Vec::with_capacity(2 * d * d);
        for j in 0..d {
            for k in 0..d {
                let mut left = vec![self.field.zero(); d];
                let mut right = vec![self.field.zero(); d];
                for i in 0..d {
                    for (kk, c) in &self.table[i * d + j] {
                        if *kk == k {
                            left[i] = c.clone();
                        }
                    }
                    for (kk, c) in &self.table[j * d + i] {
                        if *kk == k {
                            right[i] = c.clone();
                        }
                    }
                }
                let target = if j == k { self.field.one() } else { self.field.zero() };
                rows.push(left);
                rhs.push(target.clone());
                rows.push(right);
                rhs.push(target);
            }
        }
        let m = Matrix::from_row_slices(&self.field, d, &rows);
        m.solve(&rhs).ok_or_else(|| Error::invalid("structure constants admit no unit element"))
    }

    fn check_associative(&self) -> Result<()> {
        let d = self.dim;
        let check = |i: usize, j: usize, k: usize| -> bool {
            let bi = self.basis_coords(i);
            let bj = self.basis_coords(j);
            let bk = self.basis_coords(k);
            let l = self.mul_coords(&self.mul_coords(&bi, &bj), &bk);
            let r = self.mul_coords(&bi, &self.mul_coords(&bj, &bk));
            l == r
        };
        if d <= FULL_ASSOCIATIVITY_LIMIT {
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        if !check(i, j, k) {
                            return Err(Error::invalid(format!("structure constants not associative at ({i},{j},{k})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xa550c);
            for _ in 0..10 * d {
                let (i, j, k) = (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d));
                if !check(i, j, k) {
                    return Err(Error::invalid(format!("structure constants not associative at ({i},{j},{k})")));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn preset(&self) -> &Preset {
        &self.preset
    }

    pub fn unit_coords(&self) -> &[Scalar] {
        &self.unit
    }

    /// Sparse product `b_i b_j`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    pub fn declared_index(&self) -> Option<u64> {
        self.declared_index
    }

    pub fn declared_exponent(&self) -> Option<u64> {
        self.declared_exponent
    }

    /// Records caller-asserted index and exponent metadata.
    pub fn with_declared(&self, index: Option<u64>, exponent: Option<u64>) -> Arc<Algebra> {
        let mut a = self.clone();
        a.declared_index = index;
        a.declared_exponent = exponent;
        Arc::new(a)
    }

    pub fn basis_coords(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn mul_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim;
        let mut out = vec![self.field.zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let entries = &self.table[i * d + j];
                if entries.is_empty() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in entries {
                    out[*k] = &out[*k] + &(&c * s);
                }
            }
        }
        out
    }

    /// True when the preset certifies `exp(A) | 2`: matrix algebras,
    /// quaternion algebras and tensor products of such.
    pub fn exponent_two_certified(&self) -> bool {
        match &self.preset {
            Preset::Matrix { .. } | Preset::Quaternion { .. } => true,
            Preset::Tensor(a, b) => a.exponent_two_certified() && b.exponent_two_certified(),
            Preset::Corner(_) | Preset::Explicit => false,
        }
    }

    /// Whether the preset shows the algebra is split (a matrix algebra over `F`).
    pub fn is_split_preset(&self) -> bool {
        match &self.preset {
            Preset::Matrix { .. } => true,
            Preset::Tensor(a, b) => a.is_split_preset() && b.is_split_preset(),
            _ => false,
        }
    }

    /// The `M_m(D)` column-module structure carried by the preset.
    pub fn module_presentation(&self) -> Result<ModulePresentation> {
        match &self.preset {
            Preset::Matrix { n } => Ok(ModulePresentation { m: *n, division: None, perm: (0..self.dim).collect() }),
            Preset::Quaternion { .. } => Ok(ModulePresentation {
                m: 1,
                division: Some(Arc::new(self.clone())),
                perm: (0..4).collect(),
            }),
            Preset::Tensor(x, y) => {
                let px = x.module_presentation()?;
                let py = y.module_presentation()?;
                let (dx, dy) = (x.dim, y.dim);
                let (m1, m2) = (px.m, py.m);
                let m = m1 * m2;
                let (division, dd) = match (&px.division, &py.division) {
                    (None, None) => (None, 1),
                    (None, Some(d)) | (Some(d), None) => (Some(d.clone()), d.dim),
                    (Some(_), Some(_)) => {
                        return Err(Error::UnsupportedField(
                            "no module presentation for a tensor product of two non-split factors".into(),
                        ))
                    }
                };
                let dd1 = px.dim_d();
                let dd2 = py.dim_d();
                let mut perm = vec![0; self.dim];
                for i1 in 0..m1 {
                    for j1 in 0..m1 {
                        for i2 in 0..m2 {
                            for j2 in 0..m2 {
                                for k in 0..dd {
                                    // split the D-coordinate between the factors
                                    let (k1, k2) = if dd1 == 1 { (0, k) } else { (k, 0) };
                                    let ax = px.perm[(i1 * m1 + j1) * dd1 + k1];
                                    let ay = py.perm[(i2 * m2 + j2) * dd2 + k2];
                                    let i = i1 * m2 + i2;
                                    let j = j1 * m2 + j2;
                                    perm[(i * m + j) * dd + k] = ax * dy + ay;
                                }
                            }
                        }
                    }
                }
                let _ = dx;
                Ok(ModulePresentation { m, division, perm })
            }
            Preset::Corner(_) | Preset::Explicit => {
                Err(Error::UnsupportedField("algebra has no explicit module presentation".into()))
            }
        }
    }

    /// The same algebra over an extension (or equal) field.
    pub fn base_change(&self, target: &Field) -> Result<Arc<Algebra>> {
        if *target == self.field {
            return Ok(Arc::new(self.clone()));
        }
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|(k, c)| Ok((*k, target.embed(c)?))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let unit = self.unit.iter().map(|c| target.embed(c)).collect::<Result<Vec<_>>>()?;
        let preset = match &self.preset {
            Preset::Matrix { n } => Preset::Matrix { n: *n },
            Preset::Quaternion { a, b } => Preset::Quaternion { a: target.embed(a)?, b: target.embed(b)? },
            Preset::Tensor(x, y) => Preset::Tensor(x.base_change(target)?, y.base_change(target)?),
            Preset::Corner(c) => {
                let parent = c.parent.base_change(target)?;
                let idempotent = c.idempotent.iter().map(|s| target.embed(s)).collect::<Result<Vec<_>>>()?;
                let vecs = c
                    .embedding
                    .basis()
                    .iter()
                    .map(|v| v.iter().map(|s| target.embed(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                let embedding = Subspace::span(target, parent.dim, &vecs);
                Preset::Corner(Corner { parent, idempotent, embedding })
            }
            Preset::Explicit => Preset::Explicit,
        };
        Ok(Arc::new(Algebra {
            field: target.clone(),
            dim: self.dim,
            degree: self.degree,
            labels: self.labels.clone(),
            table,
            unit,
            preset,
            declared_index: self.declared_index,
            declared_exponent: self.declared_exponent,
        }))
    }

    pub fn element(self: &Arc<Self>, coords: Vec<Scalar>) -> Result<Element> {
        if coords.len() != self.dim {
            return Err(Error::invalid(format!("expected {} coordinates, got {}", self.dim, coords.len())));
        }
        for c in &coords {
            if c.field() != self.field {
                return Err(Error::FieldMismatch(format!("coordinate {c} not in {}", self.field)));
            }
        }
        Ok(Element { algebra: self.clone(), coords })
    }

    pub fn element_from_i64s(self: &Arc<Self>, coords: &[i64]) -> Result<Element> {
        self.element(coords.iter().map(|&c| self.field.from_i64(c)).collect())
    }

    pub fn zero(self: &Arc<Self>) -> Element {
        Element { algebra: self.clone(), coords: vec![self.field.zero(); self.dim] }
    }

    pub fn one(self: &Arc<Self>) -> Element {
        Element { algebra: self.clone(), coords: self.unit.clone() }
    }

    pub fn scalar(self: &Arc<Self>, c: &Scalar) -> Element {
        self.one().scale(c)
    }

    pub fn basis(self: &Arc<Self>, i: usize) -> Element {
        Element { algebra: self.clone(), coords: self.basis_coords(i) }
    }

    pub fn basis_elements(self: &Arc<Self>) -> Vec<Element> {
        (0..self.dim).map(|i| self.basis(i)).collect()
    }

    pub fn random_element<R: Rng + ?Sized>(self: &Arc<Self>, rng: &mut R) -> Element {
        let coords = (0..self.dim).map(|_| self.field.random(rng)).collect();
        Element { algebra: self.clone(), coords }
    }

    /// Random invertible element (rejection sampling with a bounded budget).
    pub fn random_unit<R: Rng + ?Sized>(self: &Arc<Self>, rng: &mut R, budget: usize) -> Result<Element> {
        for _ in 0..budget {
            let x = self.random_element(rng);
            if x.is_invertible() {
                return Ok(x);
            }
        }
        Err(Error::FieldTooSmall("no invertible element found within budget".into()))
    }

    /// For matrix presets: the element with the given `n x n` matrix.
    pub fn from_matrix(self: &Arc<Self>, m: &Matrix) -> Result<Element> {
        match self.preset {
            Preset::Matrix { n } if m.rows() == n && m.cols() == n => {
                self.element(m.data().to_vec())
            }
            _ => Err(Error::invalid("from_matrix needs a matrix preset of matching size")),
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.preset {
            Preset::Matrix { n } => write!(f, "M_{n}({})", self.field),
            Preset::Quaternion { a, b } => write!(f, "({a},{b})_{}", self.field),
            Preset::Tensor(x, y) => write!(f, "{x} ⊗ {y}"),
            Preset::Corner(_) => write!(f, "corner algebra of degree {} over {}", self.degree, self.field),
            Preset::Explicit => write!(f, "algebra of degree {} over {}", self.degree, self.field),
        }
    }
}

/// An element of an [`Algebra`], as coordinates on its structure basis.
#[derive(Clone, Debug)]
pub struct Element {
    algebra: Arc<Algebra>,
    coords: Vec<Scalar>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && (Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra)
    }
}

impl Eq for Element {}

impl Element {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    fn with(&self, coords: Vec<Scalar>) -> Element {
        Element { algebra: self.algebra.clone(), coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Element) -> Element {
        self.with(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.with(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Element {
        self.with(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        self.with(self.coords.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Element) -> Element {
        self.with(self.algebra.mul_coords(&self.coords, &other.coords))
    }

    pub fn pow(&self, e: u64) -> Element {
        let mut acc = self.algebra.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `t * self + (1 - t) * other`.
    pub fn affine(&self, other: &Element, t: &Scalar) -> Element {
        let s = &t.one_like() - t;
        self.scale(t).add(&other.scale(&s))
    }

    /// Matrix of `y -> self * y`; column `j` is `self * b_j`.
    pub fn left_mult_matrix(&self) -> Matrix {
        let alg = &self.algebra;
        let cols: Vec<Vec<Scalar>> = (0..alg.dim).map(|j| alg.mul_coords(&self.coords, &alg.basis_coords(j))).collect();
        Matrix::from_columns(&alg.field, alg.dim, &cols)
    }

    /// Matrix of `y -> y * self`.
    pub fn right_mult_matrix(&self) -> Matrix {
        let alg = &self.algebra;
        let cols: Vec<Vec<Scalar>> = (0..alg.dim).map(|j| alg.mul_coords(&alg.basis_coords(j), &self.coords)).collect();
        Matrix::from_columns(&alg.field, alg.dim, &cols)
    }

    pub fn is_invertible(&self) -> bool {
        !self.left_mult_matrix().det().is_zero()
    }

    pub fn inverse(&self) -> Option<Element> {
        let one = self.algebra.unit.clone();
        self.left_mult_matrix().solve(&one).map(|c| self.with(c))
    }

    /// Minimal polynomial over the ground field, from the first linear
    /// dependence among `1, x, x^2, ...`.
    pub fn minimal_polynomial(&self) -> Poly {
        let f = self.algebra.field.clone();
        let mut powers: Vec<Vec<Scalar>> = vec![self.algebra.unit.clone()];
        loop {
            let next = self.algebra.mul_coords(powers.last().unwrap(), &self.coords);
            let m = Matrix::from_columns(&f, self.algebra.dim, &powers);
            if let Some(sol) = m.solve(&next) {
                let mut coeffs: Vec<Scalar> = sol.iter().map(|c| -c).collect();
                coeffs.push(f.one());
                return Poly::from_coeffs(&f, coeffs);
            }
            powers.push(next);
        }
    }

    /// `p(self)`.
    pub fn eval_poly(&self, p: &Poly) -> Element {
        let mut acc = self.algebra.zero();
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&self.algebra.scalar(c));
        }
        acc
    }

    /// Reduced characteristic polynomial: the monic `n`-th root of the
    /// characteristic polynomial of left multiplication.
    pub fn reduced_char_poly(&self) -> Result<Poly> {
        let n = self.algebra.degree as u64;
        let cp = self.left_mult_matrix().charpoly();
        cp.nth_root(n).map_err(|e| match e {
            Error::NotAPower(msg) => Error::structural(format!(
                "regular representation is not an {n}-th power ({msg}); algebra is not central simple of degree {n}"
            )),
            other => other,
        })
    }

    pub fn reduced_norm(&self) -> Result<Scalar> {
        let p = self.reduced_char_poly()?;
        let c0 = p.coeff(0);
        Ok(if self.algebra.degree % 2 == 1 { -&c0 } else { c0 })
    }

    pub fn reduced_trace(&self) -> Result<Scalar> {
        let p = self.reduced_char_poly()?;
        Ok(-&p.coeff(p.deg().saturating_sub(1)))
    }

    /// For matrix presets: the `n x n` matrix of this element.
    pub fn to_matrix(&self) -> Result<Matrix> {
        match self.algebra.preset {
            Preset::Matrix { n } => {
                let rows: Vec<Vec<Scalar>> = self.coords.chunks(n).map(|r| r.to_vec()).collect();
                Matrix::from_rows(&self.algebra.field, rows)
            }
            _ => Err(Error::invalid("to_matrix needs a matrix preset")),
        }
    }

    /// The same element in a base-changed copy of its algebra.
    pub fn base_change(&self, target: &Arc<Algebra>) -> Result<Element> {
        let coords = self.coords.iter().map(|c| target.field.embed(c)).collect::<Result<Vec<_>>>()?;
        target.element(coords)
    }

    pub fn commutes_with(&self, other: &Element) -> bool {
        self.mul(other) == other.mul(self)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, l) in self.coords.iter().zip(&self.algebra.labels) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{l}")?;
            } else {
                write!(f, "({c}){l}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn matrix_units_multiply() {
        let f5 = Field::prime(5).unwrap();
        let a = Algebra::matrix(&f5, 2).unwrap();
        let e11 = a.basis(0);
        let e12 = a.basis(1);
        assert_eq!(e11.mul(&e12), e12);
        assert_eq!(a.dim(), 4);
        let q1 = Algebra::matrix(&q(), 1).unwrap();
        assert_eq!(q1.degree(), 1);
    }

    #[test]
    fn quaternion_relations() {
        let h = Algebra::quaternion(&q(), &q().from_i64(-1), &q().from_i64(-1)).unwrap();
        let (i, j, k) = (h.basis(1), h.basis(2), h.basis(3));
        assert_eq!(k.mul(&k), h.scalar(&q().from_i64(-1)));
        assert_eq!(i.mul(&j), j.mul(&i).neg());
        assert_eq!(i.reduced_char_poly().unwrap(), Poly::from_i64s(&q(), &[1, 0, 1]));
        let split = Algebra::quaternion(&q(), &q().one(), &q().one()).unwrap();
        let x = split.one().add(&split.basis(1));
        let y = split.one().sub(&split.basis(1));
        assert!(x.mul(&y).is_zero());
        assert!(Algebra::quaternion(&q(), &q().zero(), &q().one()).is_err());
        let f2 = Field::prime(2).unwrap();
        assert!(Algebra::quaternion(&f2, &f2.one(), &f2.one()).is_err());
    }

    #[test]
    fn tensor_of_matrix_algebras_has_degree_four() {
        let f = Field::prime(3).unwrap();
        let m2 = Algebra::matrix(&f, 2).unwrap();
        let t = Algebra::tensor(&m2, &m2).unwrap();
        assert_eq!(t.degree(), 4);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = t.random_unit(&mut rng, 100).unwrap();
        assert_eq!(x.left_mult_matrix().rank(), 16);
        let h = Algebra::quaternion(&q(), &q().from_i64(-1), &q().from_i64(-1)).unwrap();
        let q1 = Algebra::matrix(&q(), 1).unwrap();
        let hq = Algebra::tensor(&h, &q1).unwrap();
        assert_eq!(hq.dim(), 4);
        assert_eq!(hq.basis(1).mul(&hq.basis(1)), hq.scalar(&q().from_i64(-1)));
    }

    #[test]
    fn reduced_char_poly_examples() {
        let a = Algebra::matrix(&q(), 2).unwrap();
        assert_eq!(a.one().reduced_char_poly().unwrap(), Poly::from_i64s(&q(), &[1, -2, 1]));
        let d = a.element_from_i64s(&[1, 0, 0, 2]).unwrap();
        assert_eq!(d.reduced_char_poly().unwrap(), Poly::from_i64s(&q(), &[2, -3, 1]));
        assert_eq!(d.reduced_norm().unwrap(), q().from_i64(2));
        assert_eq!(d.reduced_trace().unwrap(), q().from_i64(3));
    }

    #[test]
    fn explicit_algebra_finds_unit_and_rejects_nonassociative() {
        // the split algebra F x F written on the basis 1, e with e^2 = e
        let f = Field::prime(7).unwrap();
        let labels = vec!["1".to_string(), "e".to_string(), "x".to_string(), "y".to_string()];
        let m2 = Algebra::matrix(&f, 2).unwrap();
        let mut consts = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                for (k, c) in m2.product(i, j) {
                    consts.push((i, j, *k, c.clone()));
                }
            }
        }
        let e = Algebra::explicit(&f, labels.clone(), &consts).unwrap();
        assert_eq!(e.unit_coords(), m2.unit_coords());
        consts.push((1, 1, 2, f.one()));
        assert!(Algebra::explicit(&f, labels, &consts).is_err());
    }

    #[test]
    fn module_presentation_of_matrix_over_quaternions() {
        let h = Algebra::quaternion(&q(), &q().from_i64(-1), &q().from_i64(-1)).unwrap();
        let m2 = Algebra::matrix(&q(), 2).unwrap();
        let a = Algebra::tensor(&m2, &h).unwrap();
        let p = a.module_presentation().unwrap();
        assert_eq!(p.m, 2);
        assert_eq!(p.dim_d(), 4);
        let mut seen = p.perm.clone();
        seen.sort();
        assert_eq!(seen, (0..16).collect::<Vec<_>>());
        // M_2 ⊗ M_2 presents as M_4 over F
        let f = Field::prime(5).unwrap();
        let m = Algebra::matrix(&f, 2).unwrap();
        let t = Algebra::tensor(&m, &m).unwrap();
        let p = t.module_presentation().unwrap();
        assert_eq!((p.m, p.dim_d()), (4, 1));
    }
}
