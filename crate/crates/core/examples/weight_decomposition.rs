//! Decompose the quartics in the 27 entries into isotypic components, both
//! directly and in stages, and print the summary statistics.

use std::collections::BTreeMap;
use std::time::Instant;

use compat_triples::syminterp::{
    direct_decomposition, staged_decomposition, summarize, weight_decomposition, DEFAULT_DECOMPOSITION_TOL,
};

fn main() {
    let spaces = weight_decomposition(4);
    let total: usize = spaces.iter().map(|w| w.dim()).sum();
    let largest = spaces.iter().map(|w| w.dim()).max().unwrap_or(0);
    println!("weight spaces: {} (total dimension {total}, largest {largest})", spaces.len());

    let t = Instant::now();
    let direct = direct_decomposition(4, DEFAULT_DECOMPOSITION_TOL);
    let mult: BTreeMap<_, _> = direct.iter().map(|h| (h.label, h.multiplicity())).collect();
    let max_instance = direct.iter().map(|h| h.instance).max().unwrap_or(0);
    println!("direct: {:?} in {:.1?}", summarize(&mult, max_instance), t.elapsed());

    let t = Instant::now();
    let staged = staged_decomposition(4, DEFAULT_DECOMPOSITION_TOL);
    println!("staged: {:?} in {:.1?}", staged.summary(), t.elapsed());
    let agree = staged.multiplicities() == mult.into_iter().filter(|(_, a)| *a > 0).collect();
    println!("routes agree: {agree}");
}
