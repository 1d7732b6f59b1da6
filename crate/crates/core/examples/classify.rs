//! Classify sampled and rescaled triples against the uncalibrated generators
//! and the local essential equations.

use compat_triples::camera::{sample_exact, sample_float, Prior};
use compat_triples::constraints::{classify_e_local, classify_f, DEFAULT_TOL};
use compat_triples::smallalg::q;
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = sample_exact(Prior::F, 5)?.triple.rescale(&[q(3, 1), q(-1, 2), q(7, 5)])?;
    let (verdict, report) = classify_f(&t, DEFAULT_TOL);
    println!("rescaled fundamental sample: {verdict:?}");
    for s in report.summaries() {
        println!("  {:?}: {} of {} nonzero", s.family, s.nonzero, s.count);
    }

    let e = sample_float(Prior::E, 5)?.triple;
    println!("essential sample, E-local: {:?}", classify_e_local(&e, DEFAULT_TOL).0);

    let mut bent = sample_float(Prior::F, 6)?.triple;
    bent.f23.0[0][0] += Complex64::new(1e-2, 0.0);
    let (verdict, report) = classify_f(&bent, DEFAULT_TOL);
    println!("perturbed sample: {verdict:?}, failing families {:?}",
        report.summaries().iter().filter(|s| !s.vanishes).map(|s| s.family).collect::<Vec<_>>());
    Ok(())
}
