//! Sparse polynomials in the 27 entries of a triple.
//!
//! Variable `9 b + 3 r + c` is entry `(r, c)` of block `b`, with blocks in the
//! order `F12, F13, F23`. The same type also carries polynomials in the
//! weight coordinates of [`crate::syminterp`], which use the same indexing.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::camera::FundamentalTriple;
use crate::smallalg::{Field, Ring};

/// Number of variables.
pub const NVARS: usize = 27;

/// Exponent vector over the 27 variables.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub [u8; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        Monomial(e)
    }

    /// Product of the listed variables, with repetition.
    pub fn from_vars(vars: &[usize]) -> Self {
        let mut e = [0; NVARS];
        for &v in vars {
            e[v] += 1;
        }
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    /// Degrees in the three blocks.
    pub fn multidegree(&self) -> [u32; 3] {
        let mut d = [0; 3];
        for (i, &e) in self.0.iter().enumerate() {
            d[i / 9] += u32::from(e);
        }
        d
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }

    /// Variables with multiplicity, ascending.
    pub fn vars(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect()
    }

    pub fn eval<T: Ring>(&self, x: &[T]) -> T {
        let mut acc = T::one();
        for (i, &e) in self.0.iter().enumerate() {
            for _ in 0..e {
                acc = acc * x[i].clone();
            }
        }
        acc
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["a", "b", "c"];
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}{}{}", names[i / 9], (i % 9) / 3 + 1, i % 3 + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Sparse polynomial with no stored zero coefficients.
#[derive(Clone, PartialEq, Default)]
pub struct SparsePoly27<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> SparsePoly27<C> {
    pub fn new() -> Self {
        SparsePoly27 { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::new();
        p.add_term(m, c);
        p
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(coeffs: &[(usize, C)]) -> Self {
        let mut p = Self::new();
        for (i, c) in coeffs {
            p.add_term(Monomial::var(*i), c.clone());
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut p = Self::new();
        for (m, c) in &self.terms {
            p.add_term(*m, c.clone() * s.clone());
        }
        p
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> SparsePoly27<D> {
        let mut p = SparsePoly27::new();
        for (m, c) in &self.terms {
            p.add_term(*m, f(c));
        }
        p
    }

    /// Keep only the terms accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        SparsePoly27 {
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Product restricted to monomials accepted by `keep`.
    pub fn mul_filtered(&self, other: &Self, keep: impl Fn(&Monomial) -> bool) -> Self {
        let mut p = Self::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                if keep(&m) {
                    p.add_term(m, c1.clone() * c2.clone());
                }
            }
        }
        p
    }

    pub fn eval(&self, x: &[C]) -> C {
        self.terms.iter().fold(C::zero(), |acc, (m, c)| acc + c.clone() * m.eval(x))
    }

    /// Evaluate at a triple's entries.
    pub fn eval_triple(&self, t: &FundamentalTriple<C>) -> C
    where
        C: Field,
    {
        self.eval(&t.coordinates())
    }

    /// Substitute a polynomial for every variable.
    pub fn substitute(&self, images: &[SparsePoly27<C>]) -> Self {
        let mut out = Self::new();
        for (m, c) in &self.terms {
            let mut prod = Self::constant(c.clone());
            for v in m.vars() {
                prod = &prod * &images[v];
            }
            for (pm, pc) in prod.terms {
                out.add_term(pm, pc);
            }
        }
        out
    }

    /// Apply the derivation sending variable `i` to `images[i]`.
    pub fn derive(&self, images: &[SparsePoly27<C>]) -> Self {
        let mut out = Self::new();
        for (m, c) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 || images[i].is_empty() {
                    continue;
                }
                let mut rest = *m;
                rest.0[i] -= 1;
                let factor = c.clone() * C::from_i64(i64::from(e));
                for (mi, ci) in images[i].terms() {
                    out.add_term(rest.mul(mi), factor.clone() * ci.clone());
                }
            }
        }
        out
    }
}

impl<C: Field> SparsePoly27<C> {
    /// Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c.magnitude().powi(2)).sum::<f64>().sqrt()
    }

    /// Drop coefficients of modulus at most `tol`.
    pub fn prune(&self, tol: f64) -> Self {
        SparsePoly27 {
            terms: self.terms.iter().filter(|(_, c)| c.magnitude() > tol).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }
}

impl<C: Ring> Add for &SparsePoly27<C> {
    type Output = SparsePoly27<C>;
    fn add(self, rhs: Self) -> SparsePoly27<C> {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(*m, c.clone());
        }
        p
    }
}

impl<C: Ring> Sub for &SparsePoly27<C> {
    type Output = SparsePoly27<C>;
    fn sub(self, rhs: Self) -> SparsePoly27<C> {
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(*m, -c.clone());
        }
        p
    }
}

impl<C: Ring> Mul for &SparsePoly27<C> {
    type Output = SparsePoly27<C>;
    fn mul(self, rhs: Self) -> SparsePoly27<C> {
        self.mul_filtered(rhs, |_| true)
    }
}

impl<C: Ring> Neg for &SparsePoly27<C> {
    type Output = SparsePoly27<C>;
    fn neg(self) -> SparsePoly27<C> {
        self.map(|c| -c.clone())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl<C: Ring> $tr for SparsePoly27<C> {
            type Output = SparsePoly27<C>;
            fn $f(self, rhs: Self) -> SparsePoly27<C> {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<C: Ring> Neg for SparsePoly27<C> {
    type Output = SparsePoly27<C>;
    fn neg(self) -> SparsePoly27<C> {
        -&self
    }
}

impl<C: Ring> Ring for SparsePoly27<C> {
    fn zero() -> Self {
        Self::new()
    }
    fn one() -> Self {
        Self::constant(C::one())
    }
    fn from_i64(v: i64) -> Self {
        Self::constant(C::from_i64(v))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring> fmt::Debug for SparsePoly27<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})*{m}")?;
        }
        Ok(())
    }
}

/// The generic triple whose entries are the 27 variables.
pub fn symbolic_triple<C: Ring>() -> FundamentalTriple<SparsePoly27<C>> {
    let x: Vec<SparsePoly27<C>> = (0..NVARS).map(SparsePoly27::var).collect();
    let block = |b: usize| crate::smallalg::Mat3::from_fn(|r, c| x[9 * b + 3 * r + c].clone());
    FundamentalTriple::new(block(0), block(1), block(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smallalg::q;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type P = SparsePoly27<BigRational>;

    fn small_poly() -> impl Strategy<Value = P> {
        prop::collection::vec((prop::collection::vec(0usize..NVARS, 0..3), -5i64..=5), 0..6).prop_map(
            |terms| {
                let mut p = P::new();
                for (vars, c) in terms {
                    p.add_term(Monomial::from_vars(&vars), q(c, 1));
                }
                p
            },
        )
    }

    fn point() -> impl Strategy<Value = Vec<BigRational>> {
        prop::collection::vec((-4i64..=4, 1i64..=3).prop_map(|(n, d)| q(n, d)), NVARS)
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_homomorphism(a in small_poly(), b in small_poly(), x in point()) {
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
            prop_assert_eq!((&a - &b).eval(&x), a.eval(&x) - b.eval(&x));
        }

        #[test]
        fn derivation_satisfies_leibniz(a in small_poly(), b in small_poly(), img in prop::collection::vec(-2i64..=2, NVARS)) {
            let images: Vec<P> = img
                .iter()
                .enumerate()
                .map(|(i, &c)| P::linear(&[((i + 1) % NVARS, q(c, 1))]))
                .collect();
            let lhs = (&a * &b).derive(&images);
            let rhs = &(&a.derive(&images) * &b) + &(&a * &b.derive(&images));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn no_zero_coefficients_are_stored() {
        let x = P::var(0);
        let d = &x - &x;
        assert!(d.is_empty());
        assert_eq!(d.degree(), None);
    }

    #[test]
    fn symbolic_determinant_matches_numeric() {
        let t = symbolic_triple::<BigRational>();
        let d = t.f12.det();
        assert_eq!(d.len(), 6);
        assert_eq!(d.degree(), Some(3));
        let x: Vec<BigRational> = (0..NVARS as i64).map(|i| q(i * i - 7, 3)).collect();
        let num = crate::camera::FundamentalTriple::from_coordinates(&x);
        assert_eq!(d.eval(&x), num.f12.det());
    }

    #[test]
    fn display_uses_block_names() {
        let m = Monomial::from_vars(&[0, 0, 13, 26]);
        assert_eq!(m.to_string(), "a11^2*b22*c33");
        assert_eq!(m.multidegree(), [2, 1, 1]);
    }
}
