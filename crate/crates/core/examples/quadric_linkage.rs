//! Rational curves joining points of a quadric surface.

use csa_witness::exactalg::Field;
use csa_witness::pointcount::projective_points;
use csa_witness::witness::{connect_quadric_points, default_samples, verify_chain, QuadraticForm};

fn main() -> csa_witness::Result<()> {
    let f = Field::prime(5)?;
    let q = QuadraticForm::from_upper_i64(&f, &[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]])?;
    let points: Vec<_> = projective_points(&f, 4).into_iter().filter(|x| q.is_on(x)).collect();
    println!("{} rational points", points.len());

    let samples = default_samples(&f, true);
    let (p1, p2) = (&points[0], &points[points.len() - 1]);
    let chain = connect_quadric_points(&q, p1, p2, 7)?;
    let report = verify_chain(&chain, &samples);
    let show = |x: &[csa_witness::exactalg::Scalar]| x.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(":");
    println!("({}) -> ({}): {} segment(s), pass = {}", show(p1), show(p2), chain.len(), report.pass);
    Ok(())
}
