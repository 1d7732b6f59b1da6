//! Calibrated constraints: Demazure cubics, the trace identities, the
//! sextic and its (2,2,2) part, the Jacobian at an essential point and the
//! dimension estimates of the three priors.

use compat_triples::camera::{dimension_estimate, sample_exact, sample_float, Prior};
use compat_triples::constraints::{eval_demazure_triple, eval_m6, eval_martyushev, jacobian_nullity_e, jacobian_rank_e};
use compat_triples::smallalg::{q, Ring};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = sample_exact(Prior::E, 3)?.triple;
    let m = eval_martyushev(&t);
    println!("Demazure zero: {}", eval_demazure_triple(&t).iter().all(Ring::is_zero));
    println!("trace cubic {}, quartic trace {}, sextic {}, M6 {}", m.cubic, m.nec_f4, m.sextic, eval_m6(&t));

    let r = t.rescale(&[q(2, 1), q(-3, 1), q(1, 7)])?;
    let m = eval_martyushev(&r);
    println!("rescaled: quartic trace {}, sextic {}, M6 {}", m.nec_f4, m.sextic, eval_m6(&r));

    let p = sample_float(Prior::E, 3)?.triple;
    println!("jacobian rank {}, nullity {}", jacobian_rank_e(&p), jacobian_nullity_e(&p));
    for prior in [Prior::F, Prior::E, Prior::Delta] {
        println!("dim Y_{prior} = {}", dimension_estimate(prior, 3, 0)?);
    }
    Ok(())
}
