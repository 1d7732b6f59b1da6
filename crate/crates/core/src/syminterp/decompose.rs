//! Weight spaces and highest weight vectors of the degree-`p` polynomials.
//!
//! Everything here works in weight coordinates, where the Cartan generators
//! are diagonal on monomials.

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lie::{lowering_ops, raising_ops, WeightLabel, WeightOp};
use crate::poly::{Monomial, SparsePoly27, NVARS};
use crate::smallalg::nullspace;

/// Singular-value threshold for highest weight vectors.
pub const DEFAULT_DECOMPOSITION_TOL: f64 = 1e-5;

/// Monomials of one label, which span its weight space.
#[derive(Clone, Debug)]
pub struct WeightSpace {
    pub label: WeightLabel,
    pub monomials: Vec<Monomial>,
}

impl WeightSpace {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn basis(&self) -> Vec<SparsePoly27<Complex64>> {
        self.monomials.iter().map(|m| SparsePoly27::term(*m, Complex64::new(1.0, 0.0))).collect()
    }
}

/// Joint kernel of the raising operators inside a weight space.
#[derive(Clone, Debug)]
pub struct HighestWeightSpace {
    pub label: WeightLabel,
    pub basis: Vec<SparsePoly27<Complex64>>,
    /// Dimension of the nullspace problem solved, 0 if none was needed.
    pub instance: usize,
    pub singular_values: Vec<f64>,
}

impl HighestWeightSpace {
    /// Multiplicity `a` of the irreducible with this highest weight.
    pub fn multiplicity(&self) -> usize {
        self.basis.len()
    }

    /// Dimension `m = a * dim(irreducible)` of the isotypic component.
    pub fn isotypic_dim(&self) -> usize {
        self.multiplicity() * self.label.irrep_dim()
    }
}

fn monomials_of_degree(vars: &[usize], p: u32) -> Vec<Monomial> {
    fn rec(vars: &[usize], start: usize, left: u32, cur: &mut Vec<usize>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::from_vars(cur));
            return;
        }
        for k in start..vars.len() {
            cur.push(vars[k]);
            rec(vars, k, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(vars, 0, p, &mut Vec::new(), &mut out);
    out
}

fn group_by_label(monomials: Vec<Monomial>) -> Vec<WeightSpace> {
    let mut groups: BTreeMap<WeightLabel, Vec<Monomial>> = BTreeMap::new();
    for m in monomials {
        groups.entry(WeightLabel::of_monomial(&m)).or_default().push(m);
    }
    groups
        .into_iter()
        .map(|(label, mut monomials)| {
            monomials.sort();
            WeightSpace { label, monomials }
        })
        .collect()
}

/// Degree-`p` monomials in the 27 weight coordinates grouped by label, in
/// lexicographic label order.
pub fn weight_decomposition(p: u32) -> Vec<WeightSpace> {
    let vars: Vec<usize> = (0..NVARS).collect();
    group_by_label(monomials_of_degree(&vars, p))
}

fn normalized(p: &SparsePoly27<Complex64>) -> SparsePoly27<Complex64> {
    let n = p.coeff_norm();
    if n == 0.0 {
        p.clone()
    } else {
        p.scale(&Complex64::new(1.0 / n, 0.0))
    }
}

/// Combinations of `span` killed by every raising operator. Returns the
/// coefficient vectors and the singular values of the raising matrix.
fn raising_kernel(
    span: &[SparsePoly27<Complex64>],
    raising: &[WeightOp; 3],
    tol: f64,
) -> (Vec<Vec<Complex64>>, Vec<f64>) {
    let n = span.len();
    let mut rows: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, Complex64)> = Vec::new();
    for (col, p) in span.iter().enumerate() {
        for (f, op) in raising.iter().enumerate() {
            for (m, c) in op.apply(p).terms() {
                let next = rows.len();
                let row = *rows.entry((f, *m)).or_insert(next);
                entries.push((row, col, *c));
            }
        }
    }
    let mut mat = DMatrix::<Complex64>::zeros(rows.len(), n);
    for (r, c, v) in entries {
        mat[(r, c)] += v;
    }
    let (sv, basis) = nullspace(&mat, tol);
    (basis, sv)
}

fn combine(span: &[SparsePoly27<Complex64>], coeffs: &[Complex64]) -> SparsePoly27<Complex64> {
    let mut out = SparsePoly27::new();
    for (p, c) in span.iter().zip(coeffs) {
        for (m, d) in p.terms() {
            out.add_term(*m, *d * *c);
        }
    }
    normalized(&out.prune(1e-13))
}

/// Basis of the highest weight vectors in `w`, by thresholding the singular
/// values of the stacked raising operators at `tol`.
///
/// Non-dominant labels carry no highest weight vectors and are skipped.
pub fn highest_weight_vectors(w: &WeightSpace, tol: f64) -> HighestWeightSpace {
    if !w.label.is_dominant() {
        return HighestWeightSpace { label: w.label, basis: Vec::new(), instance: 0, singular_values: Vec::new() };
    }
    let span = w.basis();
    let (kernel, sv) = raising_kernel(&span, &raising_ops(), tol);
    HighestWeightSpace {
        label: w.label,
        basis: kernel.iter().map(|v| combine(&span, v)).collect(),
        instance: span.len(),
        singular_values: sv,
    }
}

/// Isotypic statistics of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotypicSummary {
    /// Number of isotypic components `k`.
    pub components: usize,
    pub max_multiplicity: usize,
    pub max_isotypic_dim: usize,
    /// Sum of all isotypic dimensions; equals the dimension of the space.
    pub total_dim: usize,
    /// Largest raising-operator nullspace problem solved.
    pub max_instance: usize,
}

/// Summarize label multiplicities.
pub fn summarize(multiplicities: &BTreeMap<WeightLabel, usize>, max_instance: usize) -> IsotypicSummary {
    let nonzero = multiplicities.iter().filter(|(_, &a)| a > 0);
    IsotypicSummary {
        components: nonzero.clone().count(),
        max_multiplicity: nonzero.clone().map(|(_, &a)| a).max().unwrap_or(0),
        max_isotypic_dim: nonzero.clone().map(|(l, &a)| a * l.irrep_dim()).max().unwrap_or(0),
        total_dim: nonzero.map(|(l, &a)| a * l.irrep_dim()).sum(),
        max_instance,
    }
}

/// Highest weight vectors of every weight space of degree `p`, computed
/// directly on the full weight spaces.
pub fn direct_decomposition(p: u32, tol: f64) -> Vec<HighestWeightSpace> {
    weight_decomposition(p)
        .par_iter()
        .filter(|w| w.label.is_dominant())
        .map(|w| highest_weight_vectors(w, tol))
        .collect()
}

/// An irreducible submodule given by a weight basis, highest weight first.
#[derive(Clone, Debug)]
pub struct Irrep {
    pub highest: WeightLabel,
    pub vectors: Vec<(WeightLabel, SparsePoly27<Complex64>)>,
}

/// Generate the irreducible module of a highest weight vector by applying
/// the lowering operators.
pub fn irrep_from_highest(label: WeightLabel, h: &SparsePoly27<Complex64>) -> Irrep {
    let lowering = lowering_ops();
    let mut vectors = vec![(label, normalized(h))];
    for (f, op) in lowering.iter().enumerate() {
        let mut next = Vec::with_capacity(vectors.len() * (2 * label.weights[f] as usize + 1));
        for (l, v) in &vectors {
            let mut cur = (*l, v.clone());
            next.push(cur.clone());
            for _ in 0..2 * label.weights[f] {
                let mut l2 = cur.0;
                l2.weights[f] -= 1;
                cur = (l2, normalized(&op.apply(&cur.1).prune(1e-13)));
                next.push(cur.clone());
            }
        }
        vectors = next;
    }
    Irrep { highest: label, vectors }
}

fn trivial_irrep() -> Irrep {
    Irrep { highest: WeightLabel::ZERO, vectors: vec![(WeightLabel::ZERO, SparsePoly27::constant(Complex64::new(1.0, 0.0)))] }
}

/// Highest weight vectors of the product of two irreducibles in disjoint
/// variables, with the sizes of the nullspace problems solved.
fn tensor_highest(a: &Irrep, b: &Irrep, tol: f64) -> (Vec<(WeightLabel, SparsePoly27<Complex64>)>, Vec<usize>) {
    if a.highest.total_degree() == 0 {
        return (vec![(b.highest, b.vectors[0].1.clone())], Vec::new());
    }
    if b.highest.total_degree() == 0 {
        return (vec![(a.highest, a.vectors[0].1.clone())], Vec::new());
    }
    let mut groups: BTreeMap<WeightLabel, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, (la, _)) in a.vectors.iter().enumerate() {
        for (j, (lb, _)) in b.vectors.iter().enumerate() {
            let l = la.add(lb);
            if l.is_dominant() {
                groups.entry(l).or_default().push((i, j));
            }
        }
    }
    let raising = raising_ops();
    let mut out = Vec::new();
    let mut instances = Vec::new();
    for (label, pairs) in groups {
        let span: Vec<_> = pairs.iter().map(|&(i, j)| normalized(&(&a.vectors[i].1 * &b.vectors[j].1))).collect();
        let (kernel, _) = raising_kernel(&span, &raising, tol);
        instances.push(span.len());
        out.extend(kernel.iter().map(|v| (label, combine(&span, v))));
    }
    (out, instances)
}

/// Irreducibles of the degree-`d` polynomials in one block.
fn block_irreps(block: usize, d: u32, tol: f64, instances: &mut Vec<usize>) -> Vec<Irrep> {
    if d == 0 {
        return vec![trivial_irrep()];
    }
    let vars: Vec<usize> = (9 * block..9 * block + 9).collect();
    let spaces = group_by_label(monomials_of_degree(&vars, d));
    let mut out = Vec::new();
    for w in spaces.iter().filter(|w| w.label.is_dominant()) {
        let h = highest_weight_vectors(w, tol);
        instances.push(h.instance);
        out.extend(h.basis.iter().map(|v| irrep_from_highest(w.label, v)));
    }
    out
}

/// Result of the staged decomposition.
#[derive(Clone, Debug)]
pub struct StagedDecomposition {
    /// Highest weight vectors per label.
    pub components: BTreeMap<WeightLabel, Vec<SparsePoly27<Complex64>>>,
    /// Sizes of every nullspace problem solved.
    pub instances: Vec<usize>,
}

impl StagedDecomposition {
    pub fn multiplicities(&self) -> BTreeMap<WeightLabel, usize> {
        self.components.iter().map(|(l, v)| (*l, v.len())).collect()
    }

    pub fn max_instance(&self) -> usize {
        self.instances.iter().copied().max().unwrap_or(0)
    }

    pub fn summary(&self) -> IsotypicSummary {
        summarize(&self.multiplicities(), self.max_instance())
    }
}

/// Decompose degree `p` multidegree by multidegree: each block's symmetric
/// power is decomposed directly, then products of irreducibles are
/// decomposed pairwise, first across `F12, F13` and then with `F23`.
///
/// Keeps every nullspace problem small; the largest is a weight space of
/// one block's symmetric power.
pub fn staged_decomposition(p: u32, tol: f64) -> StagedDecomposition {
    let mut instances = Vec::new();
    let irreps: Vec<Vec<Vec<Irrep>>> = (0..3)
        .map(|b| (0..=p).map(|d| block_irreps(b, d, tol, &mut instances)).collect())
        .collect();
    let mut degrees = Vec::new();
    for d1 in 0..=p {
        for d2 in 0..=p - d1 {
            degrees.push((d1, d2, p - d1 - d2));
        }
    }
    type Part = (Vec<(WeightLabel, SparsePoly27<Complex64>)>, Vec<usize>);
    let parts: Vec<Part> = degrees
        .par_iter()
        .map(|&(d1, d2, d3)| {
            let mut found = Vec::new();
            let mut inst = Vec::new();
            for a in &irreps[0][d1 as usize] {
                for b in &irreps[1][d2 as usize] {
                    let (ab, i1) = tensor_highest(a, b, tol);
                    inst.extend(i1);
                    for (label, h) in ab {
                        if d3 == 0 {
                            found.push((label, h));
                            continue;
                        }
                        let ab_irrep = irrep_from_highest(label, &h);
                        for c in &irreps[2][d3 as usize] {
                            let (abc, i2) = tensor_highest(&ab_irrep, c, tol);
                            inst.extend(i2);
                            found.extend(abc);
                        }
                    }
                }
            }
            (found, inst)
        })
        .collect();
    let mut components: BTreeMap<WeightLabel, Vec<SparsePoly27<Complex64>>> = BTreeMap::new();
    for (found, inst) in parts {
        instances.extend(inst);
        for (l, h) in found {
            components.entry(l).or_default().push(h);
        }
    }
    StagedDecomposition { components, instances }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one_recovers_the_forms() {
        let spaces = weight_decomposition(1);
        assert_eq!(spaces.iter().map(WeightSpace::dim).sum::<usize>(), 27);
        for w in &spaces {
            for m in &w.monomials {
                assert_eq!(WeightLabel::of_monomial(m), w.label);
            }
        }
    }

    #[test]
    fn degree_two_totals() {
        let spaces = weight_decomposition(2);
        assert_eq!(spaces.iter().map(WeightSpace::dim).sum::<usize>(), 378);
        let direct: BTreeMap<_, _> =
            direct_decomposition(2, DEFAULT_DECOMPOSITION_TOL).iter().map(|h| (h.label, h.multiplicity())).collect();
        assert_eq!(summarize(&direct, 0).total_dim, 378);
    }

    #[test]
    fn highest_weight_vectors_are_killed_by_raising() {
        let raising = raising_ops();
        for h in direct_decomposition(2, DEFAULT_DECOMPOSITION_TOL) {
            for v in &h.basis {
                for op in &raising {
                    assert!(op.apply(v).coeff_norm() < 10.0 * DEFAULT_DECOMPOSITION_TOL);
                }
            }
        }
    }

    #[test]
    fn staged_matches_direct_in_degree_three() {
        let direct: BTreeMap<_, _> = direct_decomposition(3, DEFAULT_DECOMPOSITION_TOL)
            .iter()
            .filter(|h| h.multiplicity() > 0)
            .map(|h| (h.label, h.multiplicity()))
            .collect();
        let staged = staged_decomposition(3, DEFAULT_DECOMPOSITION_TOL);
        assert_eq!(staged.multiplicities(), direct);
        assert_eq!(staged.summary().total_dim, 3654);
    }

    #[test]
    fn irreps_have_the_right_dimension() {
        let w = weight_decomposition(2).into_iter().find(|w| w.label.weights == [2, 1, 1]).unwrap();
        let h = highest_weight_vectors(&w, DEFAULT_DECOMPOSITION_TOL);
        assert_eq!(h.multiplicity(), 1);
        let irrep = irrep_from_highest(h.label, &h.basis[0]);
        assert_eq!(irrep.vectors.len(), 45);
        assert!(irrep.vectors.iter().all(|(_, v)| !v.is_empty()));
    }
}
