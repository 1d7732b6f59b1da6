//! The Lie algebra action on polynomials in the entries of a triple.
//!
//! Three copies of `so3` act on the rows and columns of the blocks and three
//! scalings act on whole blocks. A linear form with coefficient matrix `W`
//! in a block is sent to `X W` when the factor acts on the left slot and to
//! `W X^T` when it acts on the right slot; the action extends to products as
//! a derivation.

use std::fmt;

use num_complex::{Complex, Complex64};
use serde::{Deserialize, Serialize};

use crate::poly::{Monomial, SparsePoly27, NVARS};
use crate::smallalg::{q, Field, GaussRational, Mat3, Ring};

/// `(left factor, right factor)` acting on each block `F12, F13, F23`.
pub const BLOCK_FACTORS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// `J3`-eigenvalues of the basis vectors `v+, v0, v-`.
pub const SLOT_WEIGHTS: [i32; 3] = [1, 0, -1];

fn g(re: i64, im: i64) -> GaussRational {
    Complex::new(q(re, 1), q(im, 1))
}

fn gh(re: i64, im: i64) -> GaussRational {
    Complex::new(q(re, 2), q(im, 2))
}

/// The Cartan, raising and lowering matrices of `so3`.
pub fn j3() -> Mat3<GaussRational> {
    Mat3([[g(0, 0), g(0, -1), g(0, 0)], [g(0, 1), g(0, 0), g(0, 0)], [g(0, 0), g(0, 0), g(0, 0)]])
}

pub fn j_plus() -> Mat3<GaussRational> {
    Mat3([[g(0, 0), g(0, 0), g(-1, 0)], [g(0, 0), g(0, 0), g(0, -1)], [g(1, 0), g(0, 1), g(0, 0)]])
}

pub fn j_minus() -> Mat3<GaussRational> {
    Mat3([[g(0, 0), g(0, 0), g(1, 0)], [g(0, 0), g(0, 0), g(0, -1)], [g(-1, 0), g(0, 1), g(0, 0)]])
}

/// Eigenvectors `v+ = (1, i, 0)`, `v0 = (0, 0, 1)`, `v- = (1, -i, 0)` of `J3`.
pub fn slot_vectors() -> [[GaussRational; 3]; 3] {
    [[g(1, 0), g(0, 1), g(0, 0)], [g(0, 0), g(0, 0), g(1, 0)], [g(1, 0), g(0, -1), g(0, 0)]]
}

/// Dual basis of [`slot_vectors`] under the bilinear pairing.
pub fn slot_duals() -> [[GaussRational; 3]; 3] {
    [[gh(1, 0), gh(0, -1), g(0, 0)], [g(0, 0), g(0, 0), g(1, 0)], [gh(1, 0), gh(0, 1), g(0, 0)]]
}

/// Block, left slot index and right slot index of variable `i`.
pub fn split_var(i: usize) -> (usize, usize, usize) {
    (i / 9, (i % 9) / 3, i % 3)
}

fn join_var(b: usize, r: usize, c: usize) -> usize {
    9 * b + 3 * r + c
}

/// Six integers: the `J3`-eigenvalue in each `so3` factor and the degree in
/// each block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WeightLabel {
    pub weights: [i32; 3],
    pub degrees: [i32; 3],
}

impl WeightLabel {
    pub const ZERO: WeightLabel = WeightLabel { weights: [0; 3], degrees: [0; 3] };

    /// Label of weight-coordinate variable `i`.
    pub fn of_var(i: usize) -> Self {
        let (b, a, c) = split_var(i);
        let (lf, rf) = BLOCK_FACTORS[b];
        let mut l = Self::ZERO;
        l.weights[lf] += SLOT_WEIGHTS[a];
        l.weights[rf] += SLOT_WEIGHTS[c];
        l.degrees[b] = 1;
        l
    }

    /// Label of a monomial in weight coordinates.
    pub fn of_monomial(m: &Monomial) -> Self {
        let mut l = Self::ZERO;
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 {
                l = l.add(&Self::of_var(i).times(i32::from(e)));
            }
        }
        l
    }

    pub fn add(&self, other: &Self) -> Self {
        WeightLabel {
            weights: std::array::from_fn(|k| self.weights[k] + other.weights[k]),
            degrees: std::array::from_fn(|k| self.degrees[k] + other.degrees[k]),
        }
    }

    fn times(&self, n: i32) -> Self {
        WeightLabel { weights: self.weights.map(|w| w * n), degrees: self.degrees.map(|d| d * n) }
    }

    /// All three weights non-negative.
    pub fn is_dominant(&self) -> bool {
        self.weights.iter().all(|&w| w >= 0)
    }

    /// Dimension of the irreducible module with this highest weight.
    pub fn irrep_dim(&self) -> usize {
        self.weights.iter().map(|&w| (2 * w + 1) as usize).product()
    }

    pub fn total_degree(&self) -> i32 {
        self.degrees.iter().sum()
    }
}

impl fmt::Display for WeightLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.weights;
        let [d, e, h] = self.degrees;
        write!(f, "({a},{b},{c};{d},{e},{h})")
    }
}

/// Which part of the algebra a generator belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeneratorKind {
    Cartan,
    Raising,
    Lowering,
    Scaling,
}

/// A derivation of the polynomial ring, given by the images of the variables.
#[derive(Clone, Debug)]
pub struct LieGenerator {
    pub kind: GeneratorKind,
    /// The `so3` factor, or the block for scalings.
    pub index: usize,
    pub images: Vec<SparsePoly27<GaussRational>>,
}

impl LieGenerator {
    pub fn apply(&self, p: &SparsePoly27<GaussRational>) -> SparsePoly27<GaussRational> {
        p.derive(&self.images)
    }

    /// The same derivation with floating-point coefficients.
    pub fn to_c64(&self) -> Vec<SparsePoly27<Complex64>> {
        self.images.iter().map(|p| p.map(Field::to_c64)).collect()
    }
}

fn matrix_of(kind: GeneratorKind) -> Mat3<GaussRational> {
    match kind {
        GeneratorKind::Cartan => j3(),
        GeneratorKind::Raising => j_plus(),
        GeneratorKind::Lowering => j_minus(),
        GeneratorKind::Scaling => Mat3::identity(),
    }
}

fn generator_in_entries(kind: GeneratorKind, index: usize) -> LieGenerator {
    let x = matrix_of(kind);
    let images = (0..NVARS)
        .map(|i| {
            let (b, r, s) = split_var(i);
            let mut terms = Vec::new();
            if kind == GeneratorKind::Scaling {
                if b == index {
                    terms.push((i, GaussRational::one()));
                }
            } else {
                let (lf, rf) = BLOCK_FACTORS[b];
                if lf == index {
                    terms.extend((0..3).map(|t| (join_var(b, t, s), x.0[t][r].clone())));
                }
                if rf == index {
                    terms.extend((0..3).map(|t| (join_var(b, r, t), x.0[t][s].clone())));
                }
            }
            SparsePoly27::linear(&terms)
        })
        .collect();
    LieGenerator { kind, index, images }
}

/// The twelve derivations in entry coordinates: `J3, J+, J-` for each `so3`
/// factor in turn, then the three block scalings.
pub fn lie_generators() -> Vec<LieGenerator> {
    let mut out = Vec::with_capacity(12);
    for f in 0..3 {
        for kind in [GeneratorKind::Cartan, GeneratorKind::Raising, GeneratorKind::Lowering] {
            out.push(generator_in_entries(kind, f));
        }
    }
    out.extend((0..3).map(|b| generator_in_entries(GeneratorKind::Scaling, b)));
    out
}

/// Weight-coordinate variable `i` as a linear form in the entries:
/// `v_a^T F_b v_c`.
pub fn weight_form(i: usize) -> SparsePoly27<GaussRational> {
    let (b, a, c) = split_var(i);
    let v = slot_vectors();
    let mut terms = Vec::new();
    for r in 0..3 {
        for s in 0..3 {
            terms.push((join_var(b, r, s), v[a][r].clone() * v[c][s].clone()));
        }
    }
    SparsePoly27::linear(&terms)
}

/// Entry variable `i` as a linear form in the weight coordinates.
pub fn entry_in_weight_coords(i: usize) -> SparsePoly27<GaussRational> {
    let (b, r, s) = split_var(i);
    let w = slot_duals();
    let mut terms = Vec::new();
    for a in 0..3 {
        for c in 0..3 {
            terms.push((join_var(b, a, c), w[a][r].clone() * w[c][s].clone()));
        }
    }
    SparsePoly27::linear(&terms)
}

/// Change of coordinates between entries and weight coordinates.
#[derive(Clone, Debug)]
pub struct WeightCoordinates {
    to_entries: Vec<SparsePoly27<GaussRational>>,
    to_weights: Vec<SparsePoly27<GaussRational>>,
    to_entries_f: Vec<SparsePoly27<Complex64>>,
    to_weights_f: Vec<SparsePoly27<Complex64>>,
    vectors: [[Complex64; 3]; 3],
}

impl Default for WeightCoordinates {
    fn default() -> Self {
        Self::new()
    }
}

impl WeightCoordinates {
    pub fn new() -> Self {
        let to_entries: Vec<_> = (0..NVARS).map(weight_form).collect();
        let to_weights: Vec<_> = (0..NVARS).map(entry_in_weight_coords).collect();
        let f = |v: &Vec<SparsePoly27<GaussRational>>| v.iter().map(|p| p.map(Field::to_c64)).collect();
        WeightCoordinates {
            to_entries_f: f(&to_entries),
            to_weights_f: f(&to_weights),
            to_entries,
            to_weights,
            vectors: slot_vectors().map(|v| v.map(|z| z.to_c64())),
        }
    }

    /// Rewrite a weight-coordinate polynomial in entry coordinates.
    pub fn to_entries(&self, p: &SparsePoly27<GaussRational>) -> SparsePoly27<GaussRational> {
        p.substitute(&self.to_entries)
    }

    /// Rewrite an entry-coordinate polynomial in weight coordinates.
    pub fn to_weights(&self, p: &SparsePoly27<GaussRational>) -> SparsePoly27<GaussRational> {
        p.substitute(&self.to_weights)
    }

    pub fn to_entries_f(&self, p: &SparsePoly27<Complex64>) -> SparsePoly27<Complex64> {
        p.substitute(&self.to_entries_f)
    }

    pub fn to_weights_f(&self, p: &SparsePoly27<Complex64>) -> SparsePoly27<Complex64> {
        p.substitute(&self.to_weights_f)
    }

    /// Weight coordinates of a point given by its 27 entries.
    pub fn point<T: Field>(&self, x: &[T]) -> [Complex64; NVARS] {
        let v = &self.vectors;
        std::array::from_fn(|i| {
            let (b, a, c) = split_var(i);
            let mut acc = Complex64::new(0.0, 0.0);
            for r in 0..3 {
                for s in 0..3 {
                    acc += v[a][r] * v[c][s] * x[join_var(b, r, s)].to_c64();
                }
            }
            acc
        })
    }
}

/// A generator in weight coordinates, where it sends each variable to a
/// multiple of at most one variable.
#[derive(Clone, Debug)]
pub struct WeightOp {
    pub kind: GeneratorKind,
    pub index: usize,
    pub images: [Option<(usize, Complex64)>; NVARS],
}

impl WeightOp {
    /// Image of a monomial, as `(monomial, coefficient)` terms.
    pub fn apply_monomial(&self, m: &Monomial) -> Vec<(Monomial, Complex64)> {
        let mut out = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if let Some((j, c)) = self.images[i] {
                let mut n = *m;
                n.0[i] -= 1;
                n.0[j] += 1;
                out.push((n, c * f64::from(e)));
            }
        }
        out
    }

    pub fn apply(&self, p: &SparsePoly27<Complex64>) -> SparsePoly27<Complex64> {
        let mut out = SparsePoly27::new();
        for (m, c) in p.terms() {
            for (n, d) in self.apply_monomial(m) {
                out.add_term(n, *c * d);
            }
        }
        out
    }

    /// Images as linear forms, for use with [`SparsePoly27::derive`].
    pub fn image_polys(&self) -> Vec<SparsePoly27<Complex64>> {
        self.images
            .iter()
            .map(|im| match im {
                Some((j, c)) => SparsePoly27::linear(&[(*j, *c)]),
                None => SparsePoly27::new(),
            })
            .collect()
    }
}

fn weight_op(kind: GeneratorKind, index: usize) -> WeightOp {
    let x = matrix_of(kind);
    let v = slot_vectors();
    let w = slot_duals();
    // coeff[a'][a] = w_{a'} . X v_a
    let coeff: [[GaussRational; 3]; 3] = std::array::from_fn(|ap| {
        std::array::from_fn(|a| {
            let xv = Mat3::mul_vec(&x, &crate::smallalg::Vec3(v[a].clone()));
            (0..3).fold(GaussRational::zero(), |acc, r| acc + w[ap][r].clone() * xv.0[r].clone())
        })
    });
    let images = std::array::from_fn(|i| {
        let (b, a, c) = split_var(i);
        let mut terms: Vec<(usize, GaussRational)> = Vec::new();
        if kind == GeneratorKind::Scaling {
            if b == index {
                terms.push((i, GaussRational::one()));
            }
        } else {
            let (lf, rf) = BLOCK_FACTORS[b];
            if lf == index {
                terms.extend((0..3).map(|ap| (join_var(b, ap, c), coeff[ap][a].clone())));
            }
            if rf == index {
                terms.extend((0..3).map(|cp| (join_var(b, a, cp), coeff[cp][c].clone())));
            }
        }
        let nonzero: Vec<_> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        assert!(nonzero.len() <= 1, "weight coordinates diagonalize the action");
        nonzero.first().map(|(j, c)| (*j, c.to_c64()))
    });
    WeightOp { kind, index, images }
}

/// Raising operators of the three `so3` factors in weight coordinates.
pub fn raising_ops() -> [WeightOp; 3] {
    std::array::from_fn(|f| weight_op(GeneratorKind::Raising, f))
}

/// Lowering operators of the three `so3` factors in weight coordinates.
pub fn lowering_ops() -> [WeightOp; 3] {
    std::array::from_fn(|f| weight_op(GeneratorKind::Lowering, f))
}

/// All twelve generators in weight coordinates, in [`lie_generators`] order.
pub fn weight_ops() -> Vec<WeightOp> {
    let mut out = Vec::with_capacity(12);
    for f in 0..3 {
        for kind in [GeneratorKind::Cartan, GeneratorKind::Raising, GeneratorKind::Lowering] {
            out.push(weight_op(kind, f));
        }
    }
    out.extend((0..3).map(|b| weight_op(GeneratorKind::Scaling, b)));
    out
}

/// A degree-1 weight form with its label.
#[derive(Clone, Debug)]
pub struct LabeledForm {
    pub label: WeightLabel,
    /// The form in entry coordinates.
    pub form: SparsePoly27<GaussRational>,
}

/// The 27 weight forms `v_a^T F_b v_c`, each a simultaneous eigenvector of
/// the six Cartan derivations.
pub fn weight_basis_degree1() -> Vec<LabeledForm> {
    (0..NVARS).map(|i| LabeledForm { label: WeightLabel::of_var(i), form: weight_form(i) }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smallalg::exact_rank;

    fn commutator(
        a: &LieGenerator,
        b: &LieGenerator,
        p: &SparsePoly27<GaussRational>,
    ) -> SparsePoly27<GaussRational> {
        &a.apply(&b.apply(p)) - &b.apply(&a.apply(p))
    }

    #[test]
    fn twelve_generators() {
        let gens = lie_generators();
        assert_eq!(gens.len(), 12);
        assert_eq!(gens.iter().filter(|g| g.kind == GeneratorKind::Raising).count(), 3);
    }

    #[test]
    fn weight_forms_are_independent() {
        let rows: Vec<Vec<GaussRational>> = weight_basis_degree1()
            .iter()
            .map(|lf| (0..NVARS).map(|j| lf.form.coefficient(&Monomial::var(j))).collect())
            .collect();
        assert_eq!(exact_rank(&rows), 27);
    }

    #[test]
    fn weight_forms_are_cartan_eigenvectors() {
        let gens = lie_generators();
        for lf in weight_basis_degree1() {
            for g in gens.iter().filter(|g| matches!(g.kind, GeneratorKind::Cartan | GeneratorKind::Scaling)) {
                let eig = match g.kind {
                    GeneratorKind::Cartan => lf.label.weights[g.index],
                    _ => lf.label.degrees[g.index],
                };
                assert_eq!(g.apply(&lf.form), lf.form.scale(&GaussRational::from_i64(i64::from(eig))));
            }
        }
    }

    #[test]
    fn f23_forms_have_block_degree_001() {
        let basis = weight_basis_degree1();
        for lf in &basis[18..27] {
            assert_eq!(lf.label.degrees, [0, 0, 1]);
        }
    }

    #[test]
    fn row_weight_form_is_eigenvector() {
        // f_1k - i f_2k is v-^T F e_k: weight -1 in the left factor.
        let gens = lie_generators();
        for b in 0..3 {
            for k in 0..3 {
                let form = SparsePoly27::linear(&[
                    (join_var(b, 0, k), g(1, 0)),
                    (join_var(b, 1, k), g(0, -1)),
                ]);
                let lf = BLOCK_FACTORS[b].0;
                let image = gens[3 * lf].apply(&form);
                assert_eq!(image, form.scale(&g(-1, 0)));
            }
        }
    }

    #[test]
    fn so3_structure_constants() {
        // [J+, J-] = 2 J3, and the derivations inherit the bracket.
        let m = &(&j_plus() * &j_minus()) - &(&j_minus() * &j_plus());
        assert_eq!(m, j3().scale(&g(2, 0)));
        let gens = lie_generators();
        let x = |i| SparsePoly27::<GaussRational>::var(i);
        let samples = [&x(0) * &x(13), &x(4) * &x(22), &(&x(1) * &x(26)) + &x(10).scale(&g(0, 1))];
        for p in samples.iter().map(|p| p * &x(5)) {
            for f in 0..3 {
                let lhs = commutator(&gens[3 * f + 1], &gens[3 * f + 2], &p);
                assert_eq!(lhs, gens[3 * f].apply(&p).scale(&g(2, 0)));
            }
        }
    }

    #[test]
    fn weight_ops_match_entry_derivations() {
        let coords = WeightCoordinates::new();
        let gens = lie_generators();
        let ops = weight_ops();
        let p = SparsePoly27::<Complex64>::var(2).mul_filtered(&SparsePoly27::var(20), |_| true);
        let p = &p + &SparsePoly27::var(10).mul_filtered(&SparsePoly27::var(14), |_| true);
        for (gen, op) in gens.iter().zip(&ops) {
            let via_weights = coords.to_entries_f(&op.apply(&p));
            let via_entries = coords.to_entries_f(&p).derive(&gen.to_c64());
            assert!((&via_weights - &via_entries).prune(1e-12).is_empty(), "{:?} {}", gen.kind, gen.index);
        }
    }

    #[test]
    fn raising_table() {
        // J+ v- = 2 v0, J+ v0 = -v+, J+ v+ = 0 on the left slot of F12.
        let up = &raising_ops()[0];
        assert_eq!(up.images[join_var(0, 2, 1)], Some((join_var(0, 1, 1), Complex64::new(2.0, 0.0))));
        assert_eq!(up.images[join_var(0, 1, 1)], Some((join_var(0, 0, 1), Complex64::new(-1.0, 0.0))));
        assert_eq!(up.images[join_var(0, 0, 1)], None);
    }

    #[test]
    fn coordinate_changes_are_inverse() {
        let coords = WeightCoordinates::new();
        for i in 0..NVARS {
            let x = SparsePoly27::<GaussRational>::var(i);
            assert_eq!(coords.to_entries(&coords.to_weights(&x)), x);
            assert_eq!(coords.to_weights(&coords.to_entries(&x)), x);
        }
    }
}
