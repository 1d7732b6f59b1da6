//! The 9x9 block matrix: rank 6 for compatible triples under any rescaling,
//! higher otherwise, and its factorization through the center form.

use compat_triples::camera::{center_form_kernel, center_form_matrix, sample_exact, sample_float, Prior};
use compat_triples::constraints::{enumerate_septic_indices, eval_septics};
use compat_triples::smallalg::{dense, exact_rank, q, Ring};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = sample_exact(Prior::F, 8)?;
    let scaled = s.triple.rescale(&[q(2, 1), q(3, 1), q(5, 1)])?;
    println!("compatible, scales 2,3,5: rank {}", exact_rank(&scaled.mega_matrix().rows()));

    let mut broken = s.triple.clone();
    broken.f13.0[2][2] = broken.f13.0[2][2].clone() + q(1, 1);
    println!("perturbed F13: rank {}", exact_rank(&broken.mega_matrix().rows()));
    let pairs = enumerate_septic_indices();
    for (i, v) in eval_septics(&broken).iter().enumerate().filter(|(_, v)| !v.is_zero()).take(3) {
        println!("  septic {i} {:?} = {v}", pairs[i]);
    }

    let f = sample_float(Prior::F, 8)?.triple.rescale(&[Complex64::new(0.5, 0.0), Complex64::new(-4.0, 0.0), Complex64::new(1.5, 0.0)])?;
    let sv = dense::singular_values(&dense::to_dmatrix(&f.unit_normalized().0.mega_matrix().rows()));
    println!("float singular values {:?}", sv.iter().map(|s| format!("{s:.3e}")).collect::<Vec<_>>());

    let centers = s.cameras.centers();
    let u = [q(1, 1), q(-2, 3), q(4, 1)];
    let m = center_form_matrix(&centers, &u);
    println!("center form rank {}, kernel vectors {}", exact_rank(&m.rows()), center_form_kernel(&centers, &u).len());
    Ok(())
}
