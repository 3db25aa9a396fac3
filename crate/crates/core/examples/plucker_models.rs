//! Plücker coordinates of planes in 4-space and the quadric model of
//! isotropic planes for an alternating form.

use csa_witness::csa::standard_alternating_form;
use csa_witness::exactalg::Field;
use csa_witness::pointcount::{enumerate_points, VarietyModel, DEFAULT_BUDGET};
use csa_witness::witness::{grassmannian_points, plucker_embed, plucker_quadric, plucker_relation_identity, symp_quadric_model_from_form};

fn main() -> csa_witness::Result<()> {
    println!("Plücker relation vanishes identically: {}", plucker_relation_identity());
    for p in [2, 3] {
        let f = Field::prime(p)?;
        let planes = grassmannian_points(&f)?;
        let q = plucker_quadric(&f);
        let on = planes.iter().filter(|w| q.is_on(&plucker_embed(&f, w).unwrap().coords)).count();
        println!("F_{p}: {} planes, {on} Plücker points on the quadric", planes.len());

        let (form, hyperplane) = symp_quadric_model_from_form(&standard_alternating_form(&f, 4)?)?;
        let model = VarietyModel::InvolutionQuadric { form, hyperplane };
        println!("F_{p}: {} isotropic planes", enumerate_points(&model, 1, DEFAULT_BUDGET)?.len());
    }
    Ok(())
}
