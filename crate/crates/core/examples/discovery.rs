//! Run the quartic discovery pipeline and print its report.
//!
//! Pass `F` as the first argument to sample fundamental rather than
//! essential triples.

use std::time::Instant;

use compat_triples::camera::Prior;
use compat_triples::syminterp::{run_discovery, DiscoveryConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut config = DiscoveryConfig::default();
    if let Some(prior) = std::env::args().nth(1) {
        config.prior = prior.parse::<Prior>()?;
    }
    let t = Instant::now();
    let out = run_discovery(&config)?;
    let r = &out.report;
    println!("prior {:?}: k = {}, max a = {}, max m = {}, largest instance = {}", config.prior,
        r.isotypic.components, r.isotypic.max_multiplicity, r.isotypic.max_isotypic_dim, r.isotypic.max_instance);
    println!("nontrivial = {}, in cubic multiples = {}, new = {}, unstable = {}", r.nontrivial,
        r.in_cubic_multiples, r.new, r.unstable);
    for (label, p) in r.new_labels.iter().zip(&r.new_constraints) {
        println!("{label}: {p}");
    }
    println!("orbit dimension {} (matches quartics: {}), exact samples {}", r.orbit_dim,
        r.orbit_matches_quartics, r.exact_samples_checked);
    println!("elapsed {:.1?}", t.elapsed());
    Ok(())
}
