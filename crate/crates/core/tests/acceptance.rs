//! Acceptance gate: one line per criterion with its time limit. Exits
//! nonzero if any criterion fails or runs over its limit.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use csa_witness::csa::{adjoint_involution, pfaffian_char_poly, standard_alternating_form, seed_symplectic, Algebra};
use csa_witness::etale::{etale_type, generate_etale, is_et_m_point, EtaleSubalgebra, Partition};
use csa_witness::exactalg::arith::{legendre_prime_power_identity, pi_degree, vp_factorial};
use csa_witness::exactalg::{Field, Poly, Scalar};
use csa_witness::ideals::{complement, corner_algebra, induce_from_corner, restrict_to_corner, splitting_idempotent, Flag, RightIdeal};
use csa_witness::pointcount::{
    enumerate_points, h_link_graph, verify_edge, projective_points, rational_index_bound, scheme_index_bound,
    CurveGenerator, ExtensionPoint, VarietyModel, DEFAULT_BUDGET,
};
use csa_witness::witness::{
    connect_exp2, connect_flags, connect_ideals, connect_max_etale, connect_quadric_points, default_samples,
    grassmannian_points, plucker_quadric, plucker_relation_identity, symp_quadric_model_from_form, verify_chain,
    verify_witness, QuadraticForm, WitnessChain,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c01_idempotent_splitting() -> Outcome {
    let mut algebras = Vec::new();
    for p in [2u64, 3, 5] {
        for n in 1..=4 {
            algebras.push(Algebra::matrix(&Field::prime(p).unwrap(), n).unwrap());
        }
    }
    let q = Field::rationals();
    let h = Algebra::quaternion(&q, &q.from_i64(-1), &q.from_i64(-1)).unwrap();
    algebras.push(Algebra::tensor(&h, &Algebra::matrix(&q, 2).unwrap()).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for k in 0..200 {
        let a = &algebras[k % algebras.len()];
        let ind = a.module_presentation().map_err(|e| e.to_string())?.deg_d();
        let rdim = rng.gen_range(0..=a.degree() / ind) * ind;
        let i = RightIdeal::random(a, rdim, &mut rng).map_err(|e| e.to_string())?;
        let e = splitting_idempotent(&i).map_err(|e| e.to_string())?;
        ensure(e.mul(&e) == e, || format!("ideal {k}: e^2 != e"))?;
        let ea = RightIdeal::generated(a, &[e.clone()]).map_err(|e| e.to_string())?;
        ensure(ea == i, || format!("ideal {k}: eA != I"))?;
        let c = complement(&e).map_err(|e| e.to_string())?;
        let direct = i.intersection(&c).dim() == 0 && i.dim() + c.dim() == a.dim();
        ensure(direct, || format!("ideal {k}: A != I + (1-e)A directly"))?;
    }
    Ok(format!("200 ideals over {} algebras, zero failures", algebras.len()))
}

fn c02_sub_flag() -> Outcome {
    let f = Field::prime(5).unwrap();
    let a = Algebra::matrix(&f, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let sigs: [&[usize]; 4] = [&[1, 2], &[1, 3], &[2, 3], &[1, 4]];
    for k in 0..50 {
        let flag = Flag::random(&a, sigs[k % sigs.len()], &mut rng).map_err(|e| e.to_string())?;
        let (j, i) = (&flag.ideals()[0], &flag.ideals()[1]);
        let e = splitting_idempotent(i).map_err(|e| e.to_string())?;
        let corner = corner_algebra(&e).map_err(|e| e.to_string())?;
        let kj = restrict_to_corner(j, &corner).map_err(|e| e.to_string())?;
        let back = induce_from_corner(&kj).map_err(|e| e.to_string())?;
        ensure(back == *j, || format!("pair {k}: induce(restrict(J)) != J"))?;
        ensure(kj.rdim() == j.rdim(), || format!("pair {k}: reduced dimension changed"))?;
        let again = restrict_to_corner(&back, &corner).map_err(|e| e.to_string())?;
        ensure(again == kj, || format!("pair {k}: restrict(induce(K)) != K"))?;
        let full = induce_from_corner(&RightIdeal::full(&corner)).map_err(|e| e.to_string())?;
        ensure(full == *i, || format!("pair {k}: corner does not induce I"))?;
    }
    Ok("50 (I, J) pairs in M_4(F_5), round trips exact".into())
}

fn c03_pencils() -> Outcome {
    let f = Field::prime(5).unwrap();
    let samples = default_samples(&f, true);
    let a4 = Algebra::matrix(&f, 4).unwrap();
    let a3 = Algebra::matrix(&f, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for k in 0..100 {
        let rdim = 1 + k % 2;
        let i = RightIdeal::random(&a4, rdim, &mut rng).map_err(|e| e.to_string())?;
        let j = RightIdeal::random(&a4, rdim, &mut rng).map_err(|e| e.to_string())?;
        let w = connect_ideals(&i, &j).map_err(|e| e.to_string())?;
        ensure(!w.validity.is_zero(), || format!("ideal pair {k}: zero validity"))?;
        let r = verify_witness(&w, &samples);
        ensure(r.pass, || format!("ideal pair {k}: {:?}", r.failures().collect::<Vec<_>>()))?;
    }
    for k in 0..50 {
        let f1 = Flag::random(&a3, &[1, 2], &mut rng).map_err(|e| e.to_string())?;
        let f2 = Flag::random(&a3, &[1, 2], &mut rng).map_err(|e| e.to_string())?;
        let w = connect_flags(&f1, &f2).map_err(|e| e.to_string())?;
        let r = verify_witness(&w, &samples);
        ensure(r.pass && !w.validity.is_zero(), || format!("flag pair {k}: {:?}", r.failures().collect::<Vec<_>>()))?;
    }
    Ok("100 ideal pencils in M_4(F_5) and 50 flag pencils in M_3(F_5), verified exhaustively".into())
}

fn random_maximal(a: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> EtaleSubalgebra {
    loop {
        if let Ok(e) = generate_etale(&a.random_element(rng)) {
            if e.is_maximal() {
                return e;
            }
        }
    }
}

fn c04_maximal_etale() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for (field, n) in [(Field::prime(7).unwrap(), 3), (Field::rationals(), 2)] {
        let a = Algebra::matrix(&field, n).unwrap();
        let samples = default_samples(&field, true);
        for k in 0..25 {
            let e1 = random_maximal(&a, &mut rng);
            let e2 = random_maximal(&a, &mut rng);
            let w = connect_max_etale(&e1, &e2, 50, k as u64).map_err(|e| e.to_string())?;
            let r = verify_chain(&WitnessChain::single(w), &samples);
            ensure(r.pass, || format!("{field} pair {k}: {:?}", r.failures().collect::<Vec<_>>()))?;
        }
    }
    Ok("25 pairs in M_3(F_7) (exhaustive) and 25 in M_2(Q) (5 samples), all verified".into())
}

fn c05_pfaffian() -> Outcome {
    let f = Field::prime(7).unwrap();
    let a = Algebra::matrix(&f, 4).unwrap();
    let sigma = adjoint_involution(&a, &standard_alternating_form(&f, 4).unwrap()).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    for k in 0..100 {
        let x = sigma.random_symmetric(&mut rng);
        let prp = pfaffian_char_poly(&sigma, &x).map_err(|e| e.to_string())?;
        let prd = x.reduced_char_poly().map_err(|e| e.to_string())?;
        ensure(prp.deg() == 2, || format!("element {k}: deg Prp = {}", prp.deg()))?;
        ensure(prp.mul(&prp) == prd, || format!("element {k}: Prp^2 != Prd"))?;
        ensure(x.eval_poly(&prp).is_zero(), || format!("element {k}: Prp(x) != 0"))?;
    }
    Ok("100 symmetric elements of (M_4(F_7), J-adjoint)".into())
}

fn type22(a: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> EtaleSubalgebra {
    let tau = seed_symplectic(a).unwrap();
    let target = Partition::new(vec![2, 2]).unwrap();
    loop {
        let g = a.random_unit(rng, 100).unwrap();
        let s = tau.conjugate_by(&g).unwrap();
        if let Ok(l) = generate_etale(&s.random_symmetric(rng)) {
            if l.dim() == 2 && is_et_m_point(&l, 2).unwrap() && etale_type(&l).unwrap() == target {
                return l;
            }
        }
    }
}

fn c06_exp2() -> Outcome {
    let f = Field::prime(7).unwrap();
    let a = Algebra::matrix(&f, 4).unwrap();
    let samples = default_samples(&f, true);
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    for k in 0..20 {
        let (l1, l2) = (type22(&a, &mut rng), type22(&a, &mut rng));
        let chain = connect_exp2(&l1, &l2, &|_| true, k, 50).map_err(|e| format!("pair {k}: {e}"))?;
        ensure(chain.len() == 3, || format!("pair {k}: {} segments", chain.len()))?;
        let r = verify_chain(&chain, &samples);
        ensure(r.pass, || format!("pair {k}: {:?}", r.failures().collect::<Vec<_>>()))?;
    }
    let q = Field::rationals();
    let h = Algebra::quaternion(&q, &q.from_i64(-1), &q.from_i64(-1)).unwrap();
    let b = Algebra::tensor(&h, &h).unwrap();
    let l1 = generate_etale(&b.basis(4)).map_err(|e| e.to_string())?;
    let l2 = generate_etale(&b.basis(1)).map_err(|e| e.to_string())?;
    let chain = connect_exp2(&l1, &l2, &|_| true, 1, 100).map_err(|e| format!("Q case: {e}"))?;
    let qs = default_samples(&q, false);
    let r = verify_chain(&chain, &qs);
    ensure(r.pass && qs.len() == 5, || format!("Q case: {:?}", r.failures().collect::<Vec<_>>()))?;
    Ok(format!("20 type-[2,2] pairs in M_4(F_7) exhaustive; (-1,-1)x(-1,-1) over Q at {} samples", qs.len()))
}

fn c07_plucker() -> Outcome {
    ensure(plucker_relation_identity(), || "Plücker relation is not an identity".into())?;
    let mut counts = Vec::new();
    for (p, expected) in [(2u64, 35usize), (3, 130)] {
        let f = Field::prime(p).unwrap();
        let planes = grassmannian_points(&f).map_err(|e| e.to_string())?.len();
        let q = plucker_quadric(&f);
        let on = projective_points(&f, 6).into_iter().filter(|x| q.is_on(x)).count();
        // Gaussian binomial [4 choose 2]_q
        let gauss = ((p.pow(4) - 1) * (p.pow(3) - 1) / ((p * p - 1) * (p - 1))) as usize;
        ensure(planes == expected && on == expected && gauss == expected, || {
            format!("q = {p}: Gr {planes}, quadric {on}, formula {gauss}")
        })?;
        counts.push(format!("{expected}"));
    }
    Ok(format!("identity exact; |Gr(2,4)| = quadric count = {} for q = 2, 3", counts.join(", ")))
}

fn c08_symplectic_quadric() -> Outcome {
    let mut out = Vec::new();
    for p in [2u64, 3] {
        let f = Field::prime(p).unwrap();
        let j = standard_alternating_form(&f, 4).map_err(|e| e.to_string())?;
        let dot = |x: &[Scalar], y: &[Scalar]| x.iter().zip(y).fold(f.zero(), |acc, (a, b)| &acc + &(a * b));
        let iso = grassmannian_points(&f)
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|w| dot(&w[0], &j.mul_vec(&w[1])).is_zero())
            .count();
        let (q, ell) = symp_quadric_model_from_form(&j).map_err(|e| e.to_string())?;
        let model = VarietyModel::InvolutionQuadric { form: q, hyperplane: ell };
        let section = enumerate_points(&model, 1, DEFAULT_BUDGET).map_err(|e| e.to_string())?.len();
        let formula = ((p * p + 1) * (p + 1)) as usize;
        ensure(iso == section && iso == formula, || format!("q = {p}: isotropic {iso}, section {section}, formula {formula}"))?;
        out.push(iso.to_string());
    }
    Ok(format!("isotropic planes = quadric section points = {} for q = 2, 3", out.join(", ")))
}

fn split_surface(f: &Field) -> QuadraticForm {
    QuadraticForm::from_upper_i64(f, &[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]]).unwrap()
}

fn c09_quadric_linkage() -> Outcome {
    let f = Field::prime(5).unwrap();
    let q = split_surface(&f);
    let pts: Vec<Vec<Scalar>> = projective_points(&f, 4).into_iter().filter(|x| q.is_on(x)).collect();
    ensure(pts.len() == 36, || format!("{} points", pts.len()))?;
    let samples = default_samples(&f, true);
    let mut pairs = 0;
    let mut max_len = 0;
    for (i, p1) in pts.iter().enumerate() {
        for (j, p2) in pts.iter().enumerate().skip(i + 1) {
            let chain = connect_quadric_points(&q, p1, p2, (i * 36 + j) as u64).map_err(|e| e.to_string())?;
            max_len = max_len.max(chain.len());
            let r = verify_chain(&chain, &samples);
            let identity = r.checks.iter().filter(|c| c.name.ends_with("on_quadric_identity")).count() == chain.len();
            ensure(r.pass && identity && (1..=2).contains(&chain.len()), || format!("pair ({i}, {j}) failed"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs of the 36 points linked by <= {max_len} verified segments"))
}

fn c10_hgraph() -> Outcome {
    let gens = [CurveGenerator::QuadricChains, CurveGenerator::DivisorPencils];
    let f2 = Field::prime(2).unwrap();
    let f3 = Field::prime(3).unwrap();
    let conic = QuadraticForm::diagonal(&f3, &[f3.one(), f3.one(), -f3.one()]).unwrap();
    let mut parts = Vec::new();
    for (name, x) in [("split surface / F_2", split_surface(&f2)), ("conic / F_3", conic)] {
        let g = h_link_graph(&VarietyModel::Quadric(x), 2, &gens, DEFAULT_BUDGET, 10).map_err(|e| e.to_string())?;
        for e in &g.edges {
            ensure(verify_edge(&g.vertices, e).pass, || format!("{name}: edge {}-{} fails", e.from, e.to))?;
        }
        ensure(g.is_connected(), || format!("{name}: {} components", g.components))?;
        parts.push(format!("{name}: {} vertices, {} edges, connected", g.vertices.len(), g.edges.len()));
    }
    Ok(parts.join("; "))
}

fn c11_arithmetic() -> Outcome {
    for p in [2u64, 3, 5, 7] {
        for r in 1..=5u32 {
            ensure(legendre_prime_power_identity(p, r).map_err(|e| e.to_string())?, || format!("p = {p}, r = {r}"))?;
            let n = p.pow(r);
            // direct count of factors of p in 1..=n
            let direct: u64 = (1..=n).map(|mut k| {
                let mut v = 0;
                while k % p == 0 {
                    k /= p;
                    v += 1;
                }
                v
            }).sum();
            ensure(vp_factorial(p, n).unwrap() == direct, || format!("v_{p}({n}!) mismatch"))?;
        }
    }
    let mut vals = Vec::new();
    for (n, m, p) in [(2u64, 2u64, 2u64), (4, 2, 2), (3, 3, 3)] {
        let d = pi_degree(p, n, m).map_err(|e| e.to_string())?;
        // product of binomials C(jn - 1, n - 1), j = 1..m
        let mut oracle = BigUint::from(1u32);
        for j in 1..=m {
            let (top, k) = (j * n - 1, n - 1);
            let mut c = BigUint::from(1u32);
            for i in 0..k {
                c = c * (top - i) / (i + 1);
            }
            oracle *= c;
        }
        ensure(d.degree == oracle && d.prime_to_p && (&oracle % p) != BigUint::from(0u32), || {
            format!("(n, m, p) = ({n}, {m}, {p}): {} vs {oracle}", d.degree)
        })?;
        vals.push(d.degree.to_string());
    }
    Ok(format!("Legendre identity for p <= 7, r <= 5; degrees {} prime to p", vals.join(", ")))
}

fn c12_index() -> Outcome {
    let q = Field::rationals();
    let hamilton = QuadraticForm::diagonal(&q, &[q.one(), q.one(), q.one()]).unwrap();
    let i_point = ExtensionPoint {
        modulus: Poly::from_i64s(&q, &[1, 0, 1]),
        coords: vec![Poly::from_i64s(&q, &[1]), Poly::from_i64s(&q, &[0, 1]), Poly::zero(&q)],
    };
    let b = rational_index_bound(&hamilton, 50, &[i_point], DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(b.value() == Some(2) && b.status() == "divides", || format!("Hamilton conic: {b}"))?;
    let split = QuadraticForm::diagonal(&q, &[q.one(), q.one(), -q.one()]).unwrap();
    let s = rational_index_bound(&split, 50, &[], DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(s.value() == Some(1), || format!("split conic over Q: {s}"))?;
    let f3 = Field::prime(3).unwrap();
    let c3 = VarietyModel::Quadric(QuadraticForm::diagonal(&f3, &[f3.one(), f3.one(), -f3.one()]).unwrap());
    let s3 = scheme_index_bound(&c3, 2, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(s3.value() == Some(1), || format!("split conic over F_3: {s3}"))?;
    let empty = rational_index_bound(&hamilton, 50, &[], DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(empty.value().is_none(), || "empty search returned a number".into())?;
    Ok(format!("Hamilton conic: {b}; split conic: 1"))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 12] = [
        ("01 idempotent splitting", 10, c01_idempotent_splitting),
        ("02 sub-flag dictionary", 5, c02_sub_flag),
        ("03 pencil witnesses", 30, c03_pencils),
        ("04 maximal etale linkage", 30, c04_maximal_etale),
        ("05 pfaffian contract", 5, c05_pfaffian),
        ("06 exponent-2 path", 60, c06_exp2),
        ("07 plucker model", 10, c07_plucker),
        ("08 symplectic quadric model", 10, c08_symplectic_quadric),
        ("09 quadric linkage", 30, c09_quadric_linkage),
        ("10 h-graph evidence", 60, c10_hgraph),
        ("11 arithmetic identities", 1, c11_arithmetic),
        ("12 index evidence", 10, c12_index),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let (ok, detail) = match outcome {
            Ok(d) if in_time => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} {name}: {detail} ({:.2}s, limit {limit}s)",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
