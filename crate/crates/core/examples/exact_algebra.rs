//! Small exact and floating matrix algebra over the two scalar fields.

use compat_triples::smallalg::{cross_matrix, dense, exact_rank, kernel_vector, proj_equal, q, Mat3, Vec3};
use num_complex::Complex64;
use num_rational::BigRational;

fn rows<T: Clone>(m: &Mat3<T>) -> Vec<Vec<T>> {
    m.0.iter().map(|r| r.to_vec()).collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let entries = [[0, 0, 0], [0, 0, -3], [-3, 0, 4]];
    let m: Mat3<BigRational> = Mat3::from_i64(entries);
    println!("det {}, adjugate {:?}", m.det(), m.adjugate().flat().map(|x| x.to_string()));
    let k = kernel_vector(&m, 0.0)?;
    println!("kernel {:?}, rank {}", k.0.map(|x| x.to_string()), exact_rank(&rows(&m)));

    let a = Vec3([q(1, 2), q(-1, 1), q(3, 1)]);
    let b = Vec3([q(2, 1), q(0, 1), q(1, 3)]);
    println!("[a]x b == a x b: {}", cross_matrix(&a).mul_vec(&b) == a.cross(&b));
    println!("a ~ -5a: {}", proj_equal(&a.0, &a.scale(&q(-5, 1)).0, 0.0)?);

    let f: Mat3<Complex64> = Mat3::from_i64(entries);
    let sv = dense::singular_values(&dense::to_dmatrix(&rows(&f)));
    println!("singular values {sv:.4?}, float kernel {:.4?}", kernel_vector(&f, 1e-10)?.0);
    Ok(())
}
