//! Epipoles, collinearity and the triangulation test on a sampled triple and
//! on a triple whose epipoles are consistent but whose septics fail.

use compat_triples::camera::{sample_exact, FundamentalTriple, Prior};
use compat_triples::epipolar::{collinearity_status, epipoles, hz_compatible, line_membership_check, triangulation_residuals};
use compat_triples::smallalg::Mat3;
use num_rational::BigRational;

fn report(name: &str, t: &FundamentalTriple<BigRational>) -> Result<(), Box<dyn std::error::Error>> {
    let e = epipoles(t, 0.0)?;
    println!("{name}: {} distinct epipoles, {:?}", e.distinct_count(0.0), collinearity_status(&e, 0.0));
    let r = triangulation_residuals(t, &e).map(|x| x.to_string());
    println!("  triangulation residuals {r:?}, line memberships {:?}", line_membership_check(t, &e, 0.0)?);
    println!("  triangulation test: {:?}", hz_compatible(t, 0.0));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    report("sampled", &sample_exact(Prior::F, 2)?.triple)?;
    let septic_only = FundamentalTriple::new(
        Mat3::from_i64([[0, 0, 0], [4, 0, 3], [-2, 0, 0]]),
        Mat3::from_i64([[0, 0, 0], [-2, -3, 0], [3, -3, 0]]),
        Mat3::from_i64([[-1, 2, -1], [0, 0, 0], [1, 0, -1]]),
    );
    report("septic-only failure", &septic_only)
}
