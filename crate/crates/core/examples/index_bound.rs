//! Index bounds for conics over Q and over a finite field.

use csa_witness::exactalg::{Field, Poly};
use csa_witness::pointcount::{rational_index_bound, scheme_index_bound, ExtensionPoint, VarietyModel, DEFAULT_BUDGET};
use csa_witness::witness::QuadraticForm;

fn main() -> csa_witness::Result<()> {
    let q = Field::rationals();
    let anisotropic = QuadraticForm::diagonal(&q, &[q.one(), q.one(), q.one()])?;
    let i_point = ExtensionPoint {
        modulus: Poly::from_i64s(&q, &[1, 0, 1]),
        coords: vec![Poly::from_i64s(&q, &[1]), Poly::from_i64s(&q, &[0, 1]), Poly::zero(&q)],
    };
    println!("x^2 + y^2 + z^2: {}", rational_index_bound(&anisotropic, 50, &[i_point], DEFAULT_BUDGET)?);

    let split = QuadraticForm::diagonal(&q, &[q.one(), q.one(), -q.one()])?;
    println!("x^2 + y^2 - z^2: {}", rational_index_bound(&split, 10, &[], DEFAULT_BUDGET)?);

    let f = Field::prime(3)?;
    let conic = VarietyModel::Quadric(QuadraticForm::diagonal(&f, &[f.one(), f.one(), f.one()])?);
    println!("x^2 + y^2 + z^2 over F_3: {}", scheme_index_bound(&conic, 3, DEFAULT_BUDGET)?);
    Ok(())
}
