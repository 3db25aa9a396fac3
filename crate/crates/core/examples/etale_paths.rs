//! Linking maximal etale subalgebras by a single line, and type-[2,2]
//! subalgebras in degree 4 by a three-segment path.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use csa_witness::csa::{seed_symplectic, Algebra};
use csa_witness::etale::{etale_type, generate_etale, is_et_m_point, EtaleSubalgebra};
use csa_witness::exactalg::Field;
use csa_witness::witness::{connect_exp2, connect_max_etale, default_samples, verify_chain, WitnessChain};

fn maximal(a: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> EtaleSubalgebra {
    loop {
        if let Ok(e) = generate_etale(&a.random_element(rng)) {
            if e.is_maximal() {
                return e;
            }
        }
    }
}

fn quadratic(a: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> EtaleSubalgebra {
    let tau = seed_symplectic(a).unwrap();
    loop {
        let s = tau.conjugate_by(&a.random_unit(rng, 100).unwrap()).unwrap();
        if let Ok(l) = generate_etale(&s.random_symmetric(rng)) {
            if l.dim() == 2 && is_et_m_point(&l, 2).unwrap() {
                return l;
            }
        }
    }
}

fn main() -> csa_witness::Result<()> {
    let f = Field::prime(7)?;
    let samples = default_samples(&f, true);
    let mut rng = ChaCha8Rng::seed_from_u64(3);

    let a3 = Algebra::matrix(&f, 3)?;
    let (e1, e2) = (maximal(&a3, &mut rng), maximal(&a3, &mut rng));
    let line = WitnessChain::single(connect_max_etale(&e1, &e2, 50, 1)?);
    println!("maximal etale line in M_3(F_7): pass = {}", verify_chain(&line, &samples).pass);

    let a4 = Algebra::matrix(&f, 4)?;
    let (l1, l2) = (quadratic(&a4, &mut rng), quadratic(&a4, &mut rng));
    println!("types: {} and {}", etale_type(&l1)?, etale_type(&l2)?);
    let chain = connect_exp2(&l1, &l2, &|_| true, 1, 50)?;
    println!("path with {} segments: pass = {}", chain.len(), verify_chain(&chain, &samples).pass);
    Ok(())
}
