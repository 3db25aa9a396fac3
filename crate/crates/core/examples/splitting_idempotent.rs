//! Random right ideals, their splitting idempotents and corner algebras.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use csa_witness::csa::Algebra;
use csa_witness::exactalg::Field;
use csa_witness::ideals::{complement, corner_algebra, restrict_to_corner, splitting_idempotent, Flag, RightIdeal};

fn main() -> csa_witness::Result<()> {
    let f = Field::prime(5)?;
    let a = Algebra::matrix(&f, 4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    let i = RightIdeal::random(&a, 2, &mut rng)?;
    let e = splitting_idempotent(&i)?;
    println!("I has reduced dimension {} and dimension {}", i.rdim(), i.dim());
    println!("e = {e}");
    println!("e^2 == e: {}", e.mul(&e) == e);
    println!("dim (1-e)A = {}", complement(&e)?.dim());

    let flag = Flag::random(&a, &[1, 2], &mut rng)?;
    let e = splitting_idempotent(&flag.ideals()[1])?;
    let corner = corner_algebra(&e)?;
    let k = restrict_to_corner(&flag.ideals()[0], &corner)?;
    println!("corner eAe has dimension {}; J restricts to an ideal of reduced dimension {}", corner.dim(), k.rdim());
    Ok(())
}
