//! Sample camera triples under each prior and print their fundamental
//! matrix triples as documents.

use compat_triples::camera::{Prior, Sampler};
use compat_triples::io::TripleDocument;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for prior in [Prior::F, Prior::E, Prior::Delta] {
        let s = Sampler::new(prior, 1).sample_exact()?;
        let doc = TripleDocument::from_triple(&s.triple).with_cameras(&s.cameras);
        println!("prior {prior}, factor ranks {:?}", s.triple.factor_ranks(0.0));
        print!("{}", doc.to_json());
    }
    let collinear = Sampler::new(Prior::F, 1).collinear(true).sample_float()?;
    println!("collinear float sample, norms {:?}", collinear.triple.norms());
    Ok(())
}
