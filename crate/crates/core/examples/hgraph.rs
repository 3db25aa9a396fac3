//! Closed points, symmetric powers and the graph of verified curve links
//! between zero cycles on a quadric.

use csa_witness::exactalg::Field;
use csa_witness::pointcount::{enumerate_points, h_link_graph, symmetric_power_points, CurveGenerator, VarietyModel, DEFAULT_BUDGET};
use csa_witness::witness::QuadraticForm;

fn main() -> csa_witness::Result<()> {
    let f = Field::prime(3)?;
    let conic = VarietyModel::Quadric(QuadraticForm::diagonal(&f, &[f.one(), f.one(), -f.one()])?);
    for d in 1..=2 {
        let pts = enumerate_points(&conic, d, DEFAULT_BUDGET)?;
        println!("closed points of degree dividing {d}: {}", pts.len());
    }
    let sym2 = symmetric_power_points(&conic, 2, DEFAULT_BUDGET)?;
    println!("effective cycles of degree 2: {}", sym2.len());

    let gens = [CurveGenerator::QuadricChains, CurveGenerator::DivisorPencils];
    let g = h_link_graph(&conic, 2, &gens, DEFAULT_BUDGET, 1)?;
    println!("{} vertices, {} edges, {} component(s)", g.vertices.len(), g.edges.len(), g.components);
    for r in g.witness_refs().iter().take(5) {
        println!("  {r}");
    }
    Ok(())
}
