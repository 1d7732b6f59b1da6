//! Each constraint evaluator agrees with its symbolic expansion at random
//! rational triples, on both exact fields.

use compat_triples::camera::FundamentalTriple;
use compat_triples::constraints::{evaluate, ConstraintFamily};
use compat_triples::smallalg::{gauss, q, GaussRational, Mat3};
use compat_triples::syminterp::family_polynomials;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const POINTS: usize = 20;

fn random_triple(rng: &mut ChaCha8Rng) -> FundamentalTriple<BigRational> {
    let mut m = || {
        let v: Vec<BigRational> = (0..9).map(|_| q(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
        Mat3::from_flat(&v)
    };
    FundamentalTriple::new(m(), m(), m())
}

fn check(family: ConstraintFamily) {
    let polys = family_polynomials(family);
    assert_eq!(polys.len(), family.count());
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..POINTS {
        let t = random_triple(&mut rng);
        let symbolic: Vec<BigRational> = polys.iter().map(|p| p.eval_triple(&t)).collect();
        assert_eq!(evaluate(&t, family), symbolic, "{family:?}");
    }
    // Gaussian rationals exercise the complex-capable code paths.
    let t = random_triple(&mut rng);
    let tg: FundamentalTriple<GaussRational> = t.map(|c| gauss(c.clone()));
    let symbolic: Vec<GaussRational> = polys.iter().map(|p| gauss(p.eval_triple(&t))).collect();
    assert_eq!(evaluate(&tg, family), symbolic, "{family:?}");
}

#[test]
fn det_cubics() {
    check(ConstraintFamily::DetCubics);
}

#[test]
fn quartics() {
    check(ConstraintFamily::Quartics);
}

#[test]
fn quintics() {
    check(ConstraintFamily::Quintics);
}

#[test]
fn septics() {
    check(ConstraintFamily::Septics);
}

#[test]
fn demazure() {
    check(ConstraintFamily::Demazure);
}

#[test]
fn martyushev_cubic() {
    check(ConstraintFamily::MartyushevCubic);
}

#[test]
fn nec_f2() {
    check(ConstraintFamily::NecF2);
}

#[test]
fn nec_f3() {
    check(ConstraintFamily::NecF3);
}

#[test]
fn nec_f4() {
    check(ConstraintFamily::NecF4);
}

#[test]
fn martyushev_sextic() {
    check(ConstraintFamily::MartyushevSextic);
}

#[test]
fn m6() {
    check(ConstraintFamily::M6);
}
