//! Interpolation of the vanishing ideal's quartic part, one isotypic
//! component at a time, and reconstruction of integer quartics.

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::decompose::{staged_decomposition, weight_decomposition, IsotypicSummary, DEFAULT_DECOMPOSITION_TOL};
use super::lie::{lie_generators, GeneratorKind, WeightCoordinates, WeightLabel};
use crate::camera::{FundamentalTriple, Prior, Sampler};
use crate::constraints::families::{eval_demazure_triple, eval_det_cubics, eval_quartics};
use crate::constraints::martyushev_cubic;
use crate::error::{Error, Result};
use crate::poly::{symbolic_triple, Monomial, SparsePoly27, NVARS};
use crate::smallalg::{column_space_residual, exact_rank, gauss, nullspace, q, Field, GaussRational, Ring};

/// Singular-value threshold for the evaluation matrices.
pub const DEFAULT_INTERPOLATION_TOL: f64 = 1e-10;

/// Relative residual above which a candidate is outside the cubic multiples.
pub const DEFAULT_FILTER_TOL: f64 = 1e-6;

/// Largest rounding error accepted by [`rationalize`].
pub const ROUNDING_TOL: f64 = 1e-4;

/// Settings of a discovery run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DiscoveryConfig {
    /// Variety sampled for interpolation. The cubic multiples used for
    /// filtering are those of the same prior's cubic generators.
    pub prior: Prior,
    pub seed: u64,
    pub decomposition_tol: f64,
    pub interpolation_tol: f64,
    pub filter_tol: f64,
    /// Exact samples used to certify rationalized polynomials.
    pub exact_samples: usize,
}

impl Default for DiscoveryConfig {
    fn default() -> Self {
        DiscoveryConfig {
            prior: Prior::E,
            seed: 0,
            decomposition_tol: DEFAULT_DECOMPOSITION_TOL,
            interpolation_tol: DEFAULT_INTERPOLATION_TOL,
            filter_tol: DEFAULT_FILTER_TOL,
            exact_samples: 20,
        }
    }
}

/// Points of a variety in weight coordinates, unit-normalized per block.
#[derive(Clone, Debug)]
pub struct SamplePool {
    pub points: Vec<[Complex64; NVARS]>,
}

impl SamplePool {
    pub fn new(prior: Prior, seed: u64, count: usize, coords: &WeightCoordinates) -> Result<Self> {
        let mut sampler = Sampler::new(prior, seed);
        let points = (0..count)
            .map(|_| {
                let t = sampler.sample_float()?.triple.unit_normalized().0;
                Ok(coords.point(&t.coordinates()))
            })
            .collect::<Result<_>>()?;
        Ok(SamplePool { points })
    }
}

/// Vanishing part of one isotypic component.
#[derive(Clone, Debug)]
pub struct Interpolation {
    pub label: WeightLabel,
    /// Highest weight vectors vanishing on the samples, weight coordinates.
    pub vanishing: Vec<SparsePoly27<Complex64>>,
    pub singular_values: Vec<f64>,
    /// Nullity on the second, independent batch.
    pub second_nullity: usize,
    /// Some singular value lies within two orders of magnitude of the tolerance.
    pub unstable: bool,
}

fn evaluation_nullspace(
    basis: &[SparsePoly27<Complex64>],
    points: &[[Complex64; NVARS]],
    tol: f64,
) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    // Scale by coefficient norms, not column norms, so a single vanishing
    // basis polynomial keeps a vanishing column.
    let norms: Vec<f64> = basis.iter().map(|b| b.coeff_norm()).collect();
    let mat = DMatrix::<Complex64>::from_fn(points.len(), basis.len(), |r, c| {
        let v = basis[c].eval(&points[r]);
        if norms[c] > 0.0 { v / norms[c] } else { v }
    });
    let (sv, kernel) = nullspace(&mat, tol);
    // Undo the column scaling.
    let kernel = kernel
        .into_iter()
        .map(|v| v.iter().zip(&norms).map(|(c, n)| if *n > 0.0 { c / n } else { *c }).collect())
        .collect();
    (sv, kernel)
}

/// Combinations of the highest weight vectors `basis` vanishing on `2a + 5`
/// points of the pool, cross-checked on a second batch.
pub fn interpolate_component(
    label: WeightLabel,
    basis: &[SparsePoly27<Complex64>],
    pool: &SamplePool,
    tol: f64,
) -> Result<Interpolation> {
    let n = 2 * basis.len() + 5;
    if pool.points.len() < 2 * n {
        return Err(Error::SamplerExhausted(pool.points.len()));
    }
    let (sv, kernel) = evaluation_nullspace(basis, &pool.points[..n], tol);
    let (sv2, kernel2) = evaluation_nullspace(basis, &pool.points[pool.points.len() - n..], tol);
    let near = |s: &f64| *s > tol * 1e-2 && *s < tol * 1e2;
    let unstable = sv.iter().any(near) || sv2.iter().any(near);
    if kernel.len() != kernel2.len() && !unstable {
        return Err(Error::SamplerDegenerate { label: label.to_string(), first: kernel.len(), second: kernel2.len() });
    }
    let vanishing = kernel
        .iter()
        .map(|v| {
            let mut p = SparsePoly27::new();
            for (b, c) in basis.iter().zip(v) {
                for (m, d) in b.terms() {
                    p.add_term(*m, *d * *c);
                }
            }
            let p = p.prune(1e-14);
            let n = p.coeff_norm();
            p.scale(&Complex64::new(1.0 / n, 0.0))
        })
        .collect();
    Ok(Interpolation { label, vanishing, singular_values: sv, second_nullity: kernel2.len(), unstable })
}

fn variable_multiples(cubics: &[SparsePoly27<BigRational>]) -> Vec<SparsePoly27<BigRational>> {
    cubics.iter().flat_map(|g| (0..NVARS).map(move |i| g * &SparsePoly27::var(i))).collect()
}

/// The 81 products of a variable with a determinant cubic, determinant by
/// determinant.
pub fn cubic_multiple_space() -> Vec<SparsePoly27<BigRational>> {
    variable_multiples(&eval_det_cubics(&symbolic_triple::<BigRational>()))
}

/// Variable multiples of the 31 cubics vanishing on essential triples: the
/// three determinants, the 27 Demazure entries and the Martyushev cubic.
pub fn calibrated_cubic_multiple_space() -> Vec<SparsePoly27<BigRational>> {
    let t = symbolic_triple::<BigRational>();
    let mut cubics = eval_det_cubics(&t);
    cubics.extend(eval_demazure_triple(&t));
    cubics.push(martyushev_cubic(&t));
    variable_multiples(&cubics)
}

/// A space of quartics split into weight components, for membership tests.
#[derive(Clone, Debug)]
pub struct QuarticSpace {
    by_label: HashMap<WeightLabel, Vec<SparsePoly27<Complex64>>>,
    pub generators: usize,
}

impl QuarticSpace {
    /// Build from spanning polynomials in entry coordinates. The span must be
    /// invariant, so that its weight components lie in it.
    pub fn new(span: &[SparsePoly27<BigRational>], coords: &WeightCoordinates) -> Self {
        let parts: Vec<HashMap<WeightLabel, SparsePoly27<Complex64>>> = span
            .par_iter()
            .map(|p| {
                let w = coords.to_weights(&p.map(|c| gauss(c.clone())));
                let mut split: HashMap<WeightLabel, SparsePoly27<Complex64>> = HashMap::new();
                for (m, c) in w.terms() {
                    split.entry(WeightLabel::of_monomial(m)).or_default().add_term(*m, c.to_c64());
                }
                split
            })
            .collect();
        let mut by_label: HashMap<WeightLabel, Vec<SparsePoly27<Complex64>>> = HashMap::new();
        for split in parts {
            for (l, p) in split {
                by_label.entry(l).or_default().push(p);
            }
        }
        QuarticSpace { by_label, generators: span.len() }
    }

    /// Relative distance of `p`, a weight vector, from the space.
    pub fn relative_residual(&self, p: &SparsePoly27<Complex64>) -> f64 {
        let norm = p.coeff_norm();
        let Some((m0, _)) = p.terms().next() else { return 0.0 };
        let Some(span) = self.by_label.get(&WeightLabel::of_monomial(m0)) else { return 1.0 };
        let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
        for q in span.iter().chain(std::iter::once(p)) {
            for (m, _) in q.terms() {
                let next = index.len();
                index.entry(*m).or_insert(next);
            }
        }
        let a = DMatrix::<Complex64>::from_fn(index.len(), span.len(), |_, _| Complex64::new(0.0, 0.0));
        let mut a = a;
        for (c, q) in span.iter().enumerate() {
            for (m, v) in q.terms() {
                a[(index[m], c)] = *v;
            }
        }
        let mut b = nalgebra::DVector::<Complex64>::zeros(index.len());
        for (m, v) in p.terms() {
            b[index[m]] = *v;
        }
        column_space_residual(&a, b.as_slice(), 1e-10) / norm
    }
}

/// Candidates whose relative residual against `space` exceeds `tol`.
pub fn filter_new(
    candidates: &[SparsePoly27<Complex64>],
    space: &QuarticSpace,
    tol: f64,
) -> Vec<SparsePoly27<Complex64>> {
    candidates.iter().filter(|c| space.relative_residual(c) > tol).cloned().collect()
}

/// Round a floating-point polynomial to Gaussian-integer coefficients and
/// certify it on exact samples.
///
/// The polynomial is scaled so that its smallest coefficient becomes 1.
pub fn rationalize(
    p: &SparsePoly27<Complex64>,
    samples: &[FundamentalTriple<BigRational>],
) -> Result<SparsePoly27<GaussRational>> {
    let largest = p.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max);
    let p = p.prune(largest * 1e-9);
    let smallest = p
        .terms()
        .map(|(_, c)| *c)
        .min_by(|a, b| a.norm().total_cmp(&b.norm()))
        .ok_or_else(|| Error::Rationalization("zero polynomial".into()))?;
    let mut exact = SparsePoly27::new();
    let mut worst = 0.0f64;
    for (m, c) in p.terms() {
        let z = c / smallest;
        let (re, im) = (z.re.round(), z.im.round());
        worst = worst.max((z - Complex64::new(re, im)).norm());
        exact.add_term(*m, Complex::new(q(re as i64, 1), q(im as i64, 1)));
    }
    if worst > ROUNDING_TOL {
        return Err(Error::Rationalization(format!("rounding residual {worst:.2e}")));
    }
    for (k, t) in samples.iter().enumerate() {
        let x: Vec<GaussRational> = t.coordinates().iter().map(|c| gauss(c.clone())).collect();
        if !exact.eval(&x).is_zero() {
            return Err(Error::Rationalization(format!("nonzero at exact sample {k}")));
        }
    }
    Ok(exact)
}

/// Span of the module generated by a highest weight vector, in entry
/// coordinates, computed exactly.
pub fn exact_orbit(label: WeightLabel, h: &SparsePoly27<GaussRational>) -> Vec<SparsePoly27<GaussRational>> {
    let gens = lie_generators();
    let mut vectors = vec![h.clone()];
    for f in 0..3 {
        let lower = gens.iter().find(|g| g.kind == GeneratorKind::Lowering && g.index == f).expect("lowering");
        let mut next = Vec::new();
        for v in &vectors {
            let mut cur = v.clone();
            next.push(cur.clone());
            for _ in 0..2 * label.weights[f] {
                cur = lower.apply(&cur);
                next.push(cur.clone());
            }
        }
        vectors = next;
    }
    vectors
}

/// Exact rank of the coefficient vectors of `polys`.
pub fn span_rank(polys: &[SparsePoly27<GaussRational>]) -> usize {
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let next = index.len();
            index.entry(*m).or_insert(next);
        }
    }
    let rows: Vec<Vec<GaussRational>> = polys
        .iter()
        .map(|p| {
            let mut row = vec![GaussRational::zero(); index.len()];
            for (m, c) in p.terms() {
                row[index[m]] = c.clone();
            }
            row
        })
        .collect();
    exact_rank(&rows)
}

/// Format an exact polynomial in entry coordinates.
pub fn format_exact(p: &SparsePoly27<GaussRational>) -> String {
    let mut out = String::new();
    for (m, c) in p.terms() {
        let coeff = match (c.re.is_zero(), c.im.is_zero()) {
            (false, true) => c.re.to_string(),
            (true, false) => format!("{}i", c.im),
            _ => format!("({}+{}i)", c.re, c.im),
        };
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&format!("{coeff}*{m}"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Per-component line of a discovery report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub label: WeightLabel,
    pub multiplicity: usize,
    pub isotypic_dim: usize,
    pub vanishing_dim: usize,
    /// Whether every vanishing vector lies in the cubic multiples.
    pub in_cubic_multiples: bool,
    pub unstable: bool,
}

/// Summary of a discovery run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscoveryReport {
    pub config: DiscoveryConfig,
    /// Set when no configuration file was supplied.
    pub defaults_used: bool,
    pub degree: u32,
    pub weight_spaces: usize,
    pub largest_weight_space: usize,
    pub isotypic: IsotypicSummary,
    pub cubic_multiples_dim: usize,
    pub nontrivial: usize,
    pub in_cubic_multiples: usize,
    pub new: usize,
    pub unstable: usize,
    pub new_labels: Vec<WeightLabel>,
    /// Rationalized highest weight vectors of the new components.
    pub new_constraints: Vec<String>,
    pub orbit_dim: usize,
    /// Whether the orbit span equals the span of the nine quartic entries.
    pub orbit_matches_quartics: bool,
    /// Fresh exact samples on which every rationalized polynomial vanished.
    pub exact_samples_checked: usize,
    pub components: Vec<ComponentReport>,
}

/// A report together with the exact polynomials it summarizes.
#[derive(Clone, Debug)]
pub struct Discovery {
    pub report: DiscoveryReport,
    pub new_constraints: Vec<SparsePoly27<GaussRational>>,
    pub orbit: Vec<SparsePoly27<GaussRational>>,
}

/// Decompose, interpolate, filter, expand orbits and rationalize.
pub fn run_discovery(config: &DiscoveryConfig) -> Result<Discovery> {
    const DEGREE: u32 = 4;
    let coords = WeightCoordinates::new();
    let spaces = weight_decomposition(DEGREE);
    let staged = staged_decomposition(DEGREE, config.decomposition_tol);
    let max_a = staged.components.values().map(Vec::len).max().unwrap_or(0);
    let pool = SamplePool::new(config.prior, config.seed, 2 * (2 * max_a + 5), &coords)?;

    let interpolations: Vec<Interpolation> = staged
        .components
        .par_iter()
        .map(|(label, basis)| interpolate_component(*label, basis, &pool, config.interpolation_tol))
        .collect::<Result<_>>()?;

    let q_span = match config.prior {
        Prior::E => calibrated_cubic_multiple_space(),
        _ => cubic_multiple_space(),
    };
    let q_space = QuarticSpace::new(&q_span, &coords);

    let mut components = Vec::with_capacity(interpolations.len());
    let mut survivors: Vec<(WeightLabel, SparsePoly27<Complex64>)> = Vec::new();
    for it in &interpolations {
        let new = filter_new(&it.vanishing, &q_space, config.filter_tol);
        components.push(ComponentReport {
            label: it.label,
            multiplicity: staged.components[&it.label].len(),
            isotypic_dim: staged.components[&it.label].len() * it.label.irrep_dim(),
            vanishing_dim: it.vanishing.len(),
            in_cubic_multiples: new.is_empty(),
            unstable: it.unstable,
        });
        if !it.unstable {
            survivors.extend(new.into_iter().map(|p| (it.label, p)));
        }
    }


    let mut certify = Sampler::new(Prior::F, config.seed.wrapping_add(1));
    let certify_samples: Vec<_> =
        (0..config.exact_samples).map(|_| Ok(certify.sample_exact()?.triple)).collect::<Result<_>>()?;
    let mut new_constraints = Vec::new();
    let mut orbit = Vec::new();
    for (label, p) in &survivors {
        let exact = rationalize(&coords.to_entries_f(p), &certify_samples)?;
        orbit.extend(exact_orbit(*label, &exact));
        new_constraints.push(exact);
    }

    let mut fresh = Sampler::new(Prior::F, config.seed.wrapping_add(2));
    let mut checked = 0;
    for _ in 0..config.exact_samples {
        let t = fresh.sample_exact()?.triple;
        let x: Vec<GaussRational> = t.coordinates().iter().map(|c| gauss(c.clone())).collect();
        if orbit.iter().chain(&new_constraints).all(|p| p.eval(&x).is_zero()) {
            checked += 1;
        }
    }

    let quartics = eval_quartics(&symbolic_triple::<GaussRational>());
    let orbit_rank = span_rank(&orbit);
    let joint: Vec<_> = orbit.iter().chain(&quartics).cloned().collect();
    let orbit_matches_quartics = orbit_rank == span_rank(&quartics) && span_rank(&joint) == orbit_rank;

    let new_labels: Vec<WeightLabel> = survivors.iter().map(|(l, _)| *l).collect();
    let report = DiscoveryReport {
        config: config.clone(),
        defaults_used: false,
        degree: DEGREE,
        weight_spaces: spaces.len(),
        largest_weight_space: spaces.iter().map(|w| w.dim()).max().unwrap_or(0),
        isotypic: staged.summary(),
        cubic_multiples_dim: q_span.len(),
        nontrivial: components.iter().filter(|c| c.vanishing_dim > 0).count(),
        in_cubic_multiples: components.iter().filter(|c| c.vanishing_dim > 0 && c.in_cubic_multiples).count(),
        new: components.iter().filter(|c| !c.in_cubic_multiples).count(),
        unstable: components.iter().filter(|c| c.unstable).count(),
        new_constraints: new_constraints.iter().map(format_exact).collect(),
        orbit_dim: orbit_rank,
        orbit_matches_quartics,
        exact_samples_checked: checked,
        new_labels,
        components,
    };
    Ok(Discovery { report, new_constraints, orbit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::camera::sample_exact;

    fn exact_samples(n: usize) -> Vec<FundamentalTriple<BigRational>> {
        (0..n as u64).map(|s| sample_exact(Prior::F, 100 + s).unwrap().triple).collect()
    }

    #[test]
    fn cubic_multiples_are_independent_and_vanish() {
        let q = cubic_multiple_space();
        assert_eq!(q.len(), 81);
        let g: Vec<_> = q.iter().map(|p| p.map(|c| gauss(c.clone()))).collect();
        assert_eq!(span_rank(&g), 81);
        for t in exact_samples(20) {
            assert!(q.iter().all(|p| p.eval_triple(&t).is_zero()));
        }
    }

    #[test]
    fn essential_cubics_vanish_on_essential_triples() {
        let t = symbolic_triple::<BigRational>();
        let mut cubics = eval_det_cubics(&t);
        cubics.extend(eval_demazure_triple(&t));
        cubics.push(martyushev_cubic(&t));
        for s in 0..10 {
            let e = sample_exact(Prior::E, 200 + s).unwrap().triple;
            assert!(cubics.iter().all(|p| p.eval_triple(&e).is_zero()));
        }
        let f = sample_exact(Prior::F, 7).unwrap().triple;
        assert!(!martyushev_cubic(&f).is_zero());
    }

    #[test]
    fn rationalize_recovers_a_determinant() {
        let det = eval_det_cubics(&symbolic_triple::<BigRational>()).remove(0);
        let float = det.map(|c| Complex64::new(-0.37 * c.to_c64().re, 0.0));
        let exact = rationalize(&float, &exact_samples(20)).unwrap();
        let target = det.map(|c| gauss(c.clone()));
        assert!(exact == target || exact == -&target);
    }

    #[test]
    fn rationalize_rejects_a_perturbed_coefficient() {
        let det = eval_det_cubics(&symbolic_triple::<BigRational>()).remove(1);
        let mut float = det.map(|c| c.to_c64());
        let (m, _) = float.terms().next().map(|(m, c)| (*m, *c)).unwrap();
        float.add_term(m, Complex64::new(1e-3, 0.0));
        assert!(matches!(rationalize(&float, &exact_samples(3)), Err(Error::Rationalization(_))));
    }

    #[test]
    fn rationalize_rejects_a_nonvanishing_polynomial() {
        let p = SparsePoly27::linear(&[(0, Complex64::new(1.0, 0.0)), (5, Complex64::new(2.0, 0.0))]);
        assert!(matches!(rationalize(&p, &exact_samples(3)), Err(Error::Rationalization(_))));
    }

    #[test]
    fn determinant_multiples_are_filtered_out() {
        let coords = WeightCoordinates::new();
        let space = QuarticSpace::new(&cubic_multiple_space(), &coords);
        let p = &eval_det_cubics(&symbolic_triple::<BigRational>())[2] * &SparsePoly27::var(4);
        let w = coords.to_weights(&p.map(|c| gauss(c.clone())));
        let label = WeightLabel::of_monomial(w.terms().next().unwrap().0);
        let part = w.filter(|m| WeightLabel::of_monomial(m) == label).map(Field::to_c64);
        assert!(filter_new(&[part], &space, DEFAULT_FILTER_TOL).is_empty());
    }

    #[test]
    fn quartic_entries_span_nine_dimensions() {
        let quartics = eval_quartics(&symbolic_triple::<GaussRational>());
        assert_eq!(span_rank(&quartics), 9);
    }
}
