//! A pencil of right ideals joining two random ideals, checked at every
//! parameter value of the base field.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use csa_witness::csa::Algebra;
use csa_witness::exactalg::Field;
use csa_witness::ideals::RightIdeal;
use csa_witness::witness::{connect_ideals, default_samples, verify_witness};

fn main() -> csa_witness::Result<()> {
    let f = Field::prime(5)?;
    let a = Algebra::matrix(&f, 4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let i = RightIdeal::random(&a, 2, &mut rng)?;
    let j = RightIdeal::random(&a, 2, &mut rng)?;

    let w = connect_ideals(&i, &j)?;
    println!("validity polynomial: {}", w.validity);
    let report = verify_witness(&w, &default_samples(&f, true));
    for c in &report.checks {
        println!("{:<5} {}", if c.ok { "ok" } else { "FAIL" }, c.name);
    }
    println!("pass: {}", report.pass);
    Ok(())
}
