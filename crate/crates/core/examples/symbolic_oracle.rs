//! Expand every constraint family symbolically in the 27 entries and compare
//! with direct evaluation at a rational point.

use compat_triples::camera::{sample_exact, Prior};
use compat_triples::constraints::{evaluate, ConstraintFamily};
use compat_triples::syminterp::family_polynomials;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = sample_exact(Prior::F, 11)?.triple;
    let x = t.coordinates();
    for family in ConstraintFamily::ALL {
        let polys = family_polynomials(family);
        let terms: usize = polys.iter().map(|p| p.terms().count()).sum();
        let agree = polys.iter().zip(evaluate(&t, family)).all(|(p, v)| p.eval(&x) == v);
        println!("{family:?}: {} polynomials, {terms} terms, agree {agree}", polys.len());
    }
    let quartic = &family_polynomials(ConstraintFamily::Quartics)[0];
    let shown: Vec<String> = quartic.terms().take(6).map(|(m, c)| format!("{c}*{m}")).collect();
    println!("first quartic: {} + ...", shown.join(" + "));
    Ok(())
}
