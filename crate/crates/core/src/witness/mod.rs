//! Explicit rational-curve witnesses: pencils of ideals and flags, lines of
//! étale subalgebras, curves on quadrics, and a verifier for all of them.
//!
//! Parameter convention throughout: `t = 1` gives the start, `t = 0` the end.

use std::sync::Arc;

use crate::csa::{Algebra, Element};
use crate::error::{Error, Result};
use crate::etale::{generate_etale, EtaleSubalgebra};
use crate::exactalg::{Field, Poly, Scalar};
use crate::ideals::{ideal_from_columns, right_d_span, RightIdeal};
use crate::pointcount::ZeroCycle;

pub(crate) mod divisor;
mod etale_path;
mod pencil;
mod plucker;
mod quadric;
mod verify;

pub use divisor::connect_divisors;
pub use etale_path::{connect_exp2, connect_max_etale, solve_inner_twist, symplectic_fixing_involution};
pub use pencil::{connect_flags, connect_ideals};
pub use plucker::{
    grassmannian_points, plucker_embed, plucker_quadric, plucker_relation_identity, symp_quadric_model,
    symp_quadric_model_from_form, PluckerPoint,
};
pub use quadric::{connect_quadric_points, normalize_point, QuadraticForm};
pub use verify::{default_samples, verify_chain, verify_witness, Check, Report};

pub const PARAM_CONVENTION: &str = "t1_start_t0_end";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    IdealPencil,
    FlagPencil,
    EtaleLine,
    QuadricLine,
    DivisorPencil,
}

impl WitnessKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            WitnessKind::IdealPencil => "ideal_pencil",
            WitnessKind::FlagPencil => "flag_pencil",
            WitnessKind::EtaleLine => "etale_line",
            WitnessKind::QuadricLine => "quadric_line",
            WitnessKind::DivisorPencil => "divisor_pencil",
        }
    }

    pub fn parse(s: &str) -> Result<WitnessKind> {
        match s {
            "ideal_pencil" => Ok(WitnessKind::IdealPencil),
            "flag_pencil" => Ok(WitnessKind::FlagPencil),
            "etale_line" => Ok(WitnessKind::EtaleLine),
            "quadric_line" => Ok(WitnessKind::QuadricLine),
            "divisor_pencil" => Ok(WitnessKind::DivisorPencil),
            _ => Err(Error::Format(format!("unknown witness kind '{s}'"))),
        }
    }
}

/// A point of one of the parameter spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endpoint {
    /// An ideal, or the levels of a flag.
    Ideals(Vec<RightIdeal>),
    Etale(EtaleSubalgebra),
    /// Projective point, normalized so the first nonzero coordinate is 1.
    Point(Vec<Scalar>),
    /// An effective zero cycle.
    Cycle(ZeroCycle),
}

#[derive(Clone, Debug)]
pub enum SegmentData {
    /// Columns `f_l(t) = w_l t + w'_l (1 - t)`; level `j` of the flag is
    /// spanned by the first `ranks[j]` of them.
    Pencil { ranks: Vec<usize>, w: Vec<Vec<Scalar>>, w_prime: Vec<Vec<Scalar>> },
    /// Generators `t a + (1 - t) b`, expected in `ét_m`.
    EtaleLine { a: Element, b: Element, m: usize },
    /// Coordinates of a curve on the quadric `q = 0`.
    QuadricCurve { form: QuadraticForm, curve: Vec<Poly> },
    /// `fixed` plus the zeros of `t f1 + (1 - t) f2` (binary quadratic
    /// forms `a s² + b s t + c t²`) along the curve `param` on the quadric.
    DivisorPencil { form: QuadraticForm, param: Vec<Vec<Scalar>>, f1: Vec<Scalar>, f2: Vec<Scalar>, fixed: ZeroCycle },
}

/// One parametrized curve with its endpoints and validity polynomial.
#[derive(Clone, Debug)]
pub struct PencilWitness {
    pub kind: WitnessKind,
    pub field: Field,
    pub algebra: Option<Arc<Algebra>>,
    pub data: SegmentData,
    pub start: Endpoint,
    pub end: Endpoint,
    /// Nonzero polynomial in `t`; where it does not vanish, the curve point
    /// lies in the parameter space.
    pub validity: Poly,
}

/// Segments with matching intermediate endpoints.
#[derive(Clone, Debug, Default)]
pub struct WitnessChain {
    pub segments: Vec<PencilWitness>,
}

impl WitnessChain {
    pub fn single(w: PencilWitness) -> WitnessChain {
        WitnessChain { segments: vec![w] }
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn start(&self) -> Option<&Endpoint> {
        self.segments.first().map(|s| &s.start)
    }

    pub fn end(&self) -> Option<&Endpoint> {
        self.segments.last().map(|s| &s.end)
    }
}

impl PencilWitness {
    /// The curve point at `t`. Errors where the point leaves the parameter
    /// space (which can only happen where the validity polynomial vanishes).
    pub fn point_at(&self, t: &Scalar) -> Result<Endpoint> {
        let f = &self.field;
        let s = &f.one() - t;
        match &self.data {
            SegmentData::Pencil { ranks, w, w_prime } => {
                let algebra = self.algebra.as_ref().ok_or_else(|| Error::invalid("pencil without algebra"))?;
                let pres = algebra.module_presentation()?;
                let cols: Vec<Vec<Scalar>> = w
                    .iter()
                    .zip(w_prime)
                    .map(|(a, b)| a.iter().zip(b).map(|(x, y)| &(x * t) + &(y * &s)).collect())
                    .collect();
                let mut ideals = Vec::with_capacity(ranks.len());
                for &r in ranks {
                    let span = right_d_span(algebra, &pres, &cols[..r]);
                    if span.dim() != r * pres.dim_d() {
                        return Err(Error::structural(format!("pencil columns are D-dependent at t = {t}")));
                    }
                    ideals.push(ideal_from_columns(algebra, &pres, &cols[..r])?);
                }
                Ok(Endpoint::Ideals(ideals))
            }
            SegmentData::EtaleLine { a, b, .. } => Ok(Endpoint::Etale(generate_etale(&a.affine(b, t))?)),
            SegmentData::QuadricCurve { curve, .. } => {
                let p: Vec<Scalar> = curve.iter().map(|c| c.eval(t)).collect();
                normalize_point(&p).map(Endpoint::Point).ok_or_else(|| Error::structural(format!("curve degenerates at t = {t}")))
            }
            SegmentData::DivisorPencil { param, f1, f2, fixed, .. } => {
                let g: Vec<Scalar> = f1.iter().zip(f2).map(|(x, y)| &(x * t) + &(y * &s)).collect();
                Ok(Endpoint::Cycle(fixed.add(&divisor::divisor_of(param, &g)?)))
            }
        }
    }
}

/// Smallest field with at least `needed` elements over which values in
/// `field` can be computed: `field` itself, or `F_{p^k}` for a prime field.
pub(crate) fn evaluation_field(field: &Field, needed: usize) -> Result<Field> {
    match field.size() {
        None => Ok(field.clone()),
        Some(q) if q >= needed as u64 => Ok(field.clone()),
        Some(_) => match field {
            Field::Prime(p) => {
                let mut k = 1;
                while (*p as u128).pow(k as u32) < needed as u128 {
                    k += 1;
                }
                Field::finite(*p, k)
            }
            _ => Err(Error::FieldTooSmall(format!(
                "{field} has fewer than {needed} elements and is not a prime field"
            ))),
        },
    }
}

/// A polynomial of degree at most `bound` over `field`, recovered from its
/// values at `bound + 1` points of an evaluation field. `prepare` receives
/// that field and returns the evaluator.
pub(crate) fn interpolate_validity<G>(field: &Field, bound: usize, prepare: impl FnOnce(&Field) -> Result<G>) -> Result<Poly>
where
    G: Fn(&Scalar) -> Result<Scalar>,
{
    let ef = evaluation_field(field, bound + 1)?;
    let eval = prepare(&ef)?;
    let points = ef
        .sample_points(bound + 1)
        .into_iter()
        .map(|t| eval(&t).map(|v| (t, v)))
        .collect::<Result<Vec<_>>>()?;
    let p = Poly::interpolate(&ef, &points)?;
    if ef == *field {
        Ok(p)
    } else {
        p.descend(field)
    }
}

/// The elements inside one base change of their common algebra to `target`.
pub(crate) fn lift(xs: &[&Element], target: &Field) -> Result<Vec<Element>> {
    let Some(first) = xs.first() else {
        return Ok(Vec::new());
    };
    if first.algebra().field() == target {
        return Ok(xs.iter().map(|x| (*x).clone()).collect());
    }
    let big = first.algebra().base_change(target)?;
    xs.iter().map(|x| x.base_change(&big)).collect()
}
