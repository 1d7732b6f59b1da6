//! Symbolic expansions of every constraint family, written with index sums
//! (Levi-Civita symbols, Leibniz determinants) rather than the matrix
//! routines the direct evaluators use. They serve as test oracles.

use num_rational::BigRational;

use crate::constraints::{enumerate_septic_indices, ConstraintFamily};
use crate::poly::{Monomial, SparsePoly27};
use crate::smallalg::q;

type Poly = SparsePoly27<BigRational>;
type PolyMat = Vec<Vec<Poly>>;

/// Variable index of entry `(r, c)` of `F_ij`, with `F_ji = F_ij^T`.
fn entry_var(i: usize, j: usize, r: usize, c: usize) -> usize {
    match (i, j) {
        (1, 2) => 3 * r + c,
        (1, 3) => 9 + 3 * r + c,
        (2, 3) => 18 + 3 * r + c,
        (2, 1) => 3 * c + r,
        (3, 1) => 9 + 3 * c + r,
        (3, 2) => 18 + 3 * c + r,
        _ => panic!("no factor ({i}, {j})"),
    }
}

fn factor(i: usize, j: usize) -> PolyMat {
    (0..3).map(|r| (0..3).map(|c| Poly::var(entry_var(i, j, r, c))).collect()).collect()
}

fn levi(a: usize, b: usize, c: usize) -> i64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

fn constant(n: i64, d: i64) -> Poly {
    Poly::constant(q(n, d))
}

fn transpose(a: &PolyMat) -> PolyMat {
    (0..a[0].len()).map(|c| a.iter().map(|row| row[c].clone()).collect()).collect()
}

fn product(a: &PolyMat, b: &PolyMat) -> PolyMat {
    (0..a.len())
        .map(|r| {
            (0..b[0].len())
                .map(|c| (0..b.len()).fold(Poly::new(), |acc, k| acc + &a[r][k] * &b[k][c]))
                .collect()
        })
        .collect()
}

fn combine(a: &PolyMat, b: &PolyMat, sa: &Poly, sb: &Poly) -> PolyMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| &(sa * x) + &(sb * y)).collect())
        .collect()
}

fn trace(a: &PolyMat) -> Poly {
    (0..a.len()).fold(Poly::new(), |acc, k| acc + a[k][k].clone())
}

/// `P(A, B)_rc = 1/2 sum eps_cab eps_rde (A_ad B_be + B_ad A_be)`, the
/// polarization of the adjugate; `P(A, A) = 2 adj(A)`.
fn polarized_adjugate(a: &PolyMat, b: &PolyMat) -> PolyMat {
    let half = constant(1, 2);
    (0..3)
        .map(|r| {
            (0..3)
                .map(|c| {
                    let mut acc = Poly::new();
                    for (x, y, d, e) in index_quads() {
                        let s = levi(c, x, y) * levi(r, d, e);
                        if s != 0 {
                            let sym = &(&a[x][d] * &b[y][e]) + &(&b[x][d] * &a[y][e]);
                            acc = acc + sym.scale(&q(s, 1));
                        }
                    }
                    &acc * &half
                })
                .collect()
        })
        .collect()
}

fn index_quads() -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..81).map(|n| (n / 27, (n / 9) % 3, (n / 3) % 3, n % 3))
}

fn adjugate(a: &PolyMat) -> PolyMat {
    let half = constant(1, 2);
    polarized_adjugate(a, a).iter().map(|row| row.iter().map(|p| p * &half).collect()).collect()
}

/// `A <> B = adj(A - B) - adj(A) - adj(B) = -P(A, B)`.
fn diamond(a: &PolyMat, b: &PolyMat) -> PolyMat {
    polarized_adjugate(a, b).iter().map(|row| row.iter().map(|p| -p).collect()).collect()
}

fn flat(a: &PolyMat) -> Vec<Poly> {
    a.iter().flatten().cloned().collect()
}

/// Leibniz expansion of a square matrix whose entries are variables or zero.
fn leibniz(entries: &[Vec<Option<usize>>]) -> Poly {
    fn go(entries: &[Vec<Option<usize>>], row: usize, free: &mut Vec<usize>, sign: i64, vars: &mut Vec<usize>, out: &mut Poly) {
        if row == entries.len() {
            out.add_term(Monomial::from_vars(vars), q(sign, 1));
            return;
        }
        for pos in 0..free.len() {
            let col = free[pos];
            let Some(v) = entries[row][col] else { continue };
            free.remove(pos);
            vars.push(v);
            let s = if pos % 2 == 0 { sign } else { -sign };
            go(entries, row + 1, free, s, vars, out);
            vars.pop();
            free.insert(pos, col);
        }
    }
    let mut out = Poly::new();
    let mut free: Vec<usize> = (0..entries.len()).collect();
    go(entries, 0, &mut free, 1, &mut Vec::new(), &mut out);
    out
}

/// Entry `(r, c)` of the 9x9 block matrix, 0-based, as a variable index.
fn mega_entry(r: usize, c: usize) -> Option<usize> {
    let (bi, bj) = (r / 3 + 1, c / 3 + 1);
    (bi != bj).then(|| entry_var(bi, bj, r % 3, c % 3))
}

fn mega() -> PolyMat {
    (0..9).map(|r| (0..9).map(|c| mega_entry(r, c).map_or_else(Poly::new, Poly::var)).collect()).collect()
}

fn det_cubics() -> Vec<Poly> {
    [(1, 2), (1, 3), (2, 3)]
        .iter()
        .map(|&(i, j)| {
            let m: Vec<Vec<Option<usize>>> =
                (0..3).map(|r| (0..3).map(|c| Some(entry_var(i, j, r, c))).collect()).collect();
            leibniz(&m)
        })
        .collect()
}

fn sandwich(a: (usize, usize), b: (usize, usize), c: (usize, usize)) -> PolyMat {
    product(&product(&factor(a.0, a.1), &adjugate(&factor(b.0, b.1))), &factor(c.0, c.1))
}

fn quartics() -> Vec<Poly> {
    let one = constant(1, 1);
    let minus = constant(-1, 1);
    let mats = [
        combine(&sandwich((1, 2), (3, 2), (3, 1)), &sandwich((1, 3), (2, 3), (2, 1)), &one, &minus),
        combine(&sandwich((3, 1), (2, 1), (2, 3)), &sandwich((3, 2), (1, 2), (1, 3)), &one, &minus),
        combine(&sandwich((2, 1), (3, 1), (3, 2)), &sandwich((2, 3), (1, 3), (1, 2)), &one, &minus),
    ];
    mats.iter().flat_map(|m| [m[0][1].clone(), m[0][2].clone(), m[1][2].clone()]).collect()
}

fn quintics() -> Vec<Poly> {
    let prod = |a: (usize, usize), b: (usize, usize), c: (usize, usize)| {
        product(&product(&adjugate(&factor(a.0, a.1)), &factor(b.0, b.1)), &adjugate(&factor(c.0, c.1)))
    };
    [prod((1, 3), (1, 2), (3, 2)), prod((1, 2), (1, 3), (2, 3)), prod((2, 1), (2, 3), (1, 3))]
        .iter()
        .flat_map(flat)
        .collect()
}

fn septics() -> Vec<Poly> {
    enumerate_septic_indices()
        .iter()
        .map(|p| {
            let rows = p.kept_rows();
            let cols = p.kept_cols();
            let m: Vec<Vec<Option<usize>>> =
                rows.iter().map(|&r| cols.iter().map(|&c| mega_entry(r, c)).collect()).collect();
            leibniz(&m)
        })
        .collect()
}

fn demazure() -> Vec<Poly> {
    let mut out = Vec::with_capacity(27);
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        let f = |r, c| Poly::var(entry_var(i, j, r, c));
        let gram = (0..9).fold(Poly::new(), |acc, n| acc + &f(n / 3, n % 3) * &f(n / 3, n % 3));
        for r in 0..3 {
            for c in 0..3 {
                let mut cubic = Poly::new();
                for (a, b) in (0..9).map(|n| (n / 3, n % 3)) {
                    cubic = cubic + &(&f(r, a) * &f(b, a)) * &f(b, c);
                }
                out.push(&cubic.scale(&q(2, 1)) - &(&gram * &f(r, c)));
            }
        }
    }
    out
}

const CYCLIC: [(usize, usize, usize); 3] = [(1, 2, 3), (2, 3, 1), (3, 1, 2)];

fn nec_f2() -> Vec<Poly> {
    CYCLIC
        .iter()
        .flat_map(|&(i, j, k)| {
            let fij = factor(i, j);
            let fjk = factor(j, k);
            let gram = product(&transpose(&fij), &fij);
            let first = product(&gram, &fjk);
            let last = product(&adjugate(&fij), &transpose(&factor(k, i)));
            let half = -&(&trace(&gram) * &constant(1, 2));
            let one = constant(1, 1);
            flat(&combine(&combine(&first, &fjk, &one, &half), &last, &one, &one))
        })
        .collect()
}

fn nec_f3() -> Vec<Poly> {
    let one = constant(1, 1);
    CYCLIC
        .iter()
        .flat_map(|&(i, j, k)| {
            let fij = factor(i, j);
            let fjk = factor(j, k);
            let a = product(&transpose(&fjk), &adjugate(&fij));
            let b = product(&adjugate(&fjk), &transpose(&fij));
            let c = diamond(&product(&fij, &fjk), &transpose(&factor(k, i)));
            flat(&combine(&combine(&a, &b, &one, &one), &c, &one, &one))
        })
        .collect()
}

/// `tr(M^2), tr(M^4), tr(M^6)` of the symbolic 9x9 block matrix.
fn mega_trace_powers() -> (Poly, Poly, Poly) {
    let m = mega();
    let m2 = product(&m, &m);
    let m3 = product(&m2, &m);
    let pair = |a: &PolyMat, b: &PolyMat| {
        (0..9).flat_map(|r| (0..9).map(move |c| (r, c))).fold(Poly::new(), |acc, (r, c)| acc + &a[r][c] * &b[c][r])
    };
    (trace(&m2), pair(&m2, &m2), pair(&m3, &m3))
}

fn martyushev_cubic() -> Poly {
    let mut out = Poly::new();
    for (a, b, c) in (0..27).map(|n| (n / 9, (n / 3) % 3, n % 3)) {
        let vars = [entry_var(1, 2, a, b), entry_var(2, 3, b, c), entry_var(3, 1, c, a)];
        out.add_term(Monomial::from_vars(&vars), q(1, 1));
    }
    out
}

fn sextic_from(t2: &Poly, t4: &Poly, t6: &Poly) -> Poly {
    let cube = &(t2 * t2) * t2;
    let mixed = (t2 * t4).scale(&q(-12, 1));
    &(&cube + &mixed) + &t6.scale(&q(32, 1))
}

/// Symbolic expansion of every residual of `family`, in evaluator order.
pub fn family_polynomials(family: ConstraintFamily) -> Vec<Poly> {
    match family {
        ConstraintFamily::DetCubics => det_cubics(),
        ConstraintFamily::Quartics => quartics(),
        ConstraintFamily::Quintics => quintics(),
        ConstraintFamily::Septics => septics(),
        ConstraintFamily::Demazure => demazure(),
        ConstraintFamily::MartyushevCubic => vec![martyushev_cubic()],
        ConstraintFamily::NecF2 => nec_f2(),
        ConstraintFamily::NecF3 => nec_f3(),
        ConstraintFamily::NecF4 => {
            let (t2, t4, _) = mega_trace_powers();
            let grams = [(1, 2), (1, 3), (2, 3)].map(|(i, j)| {
                (0..9).fold(Poly::new(), |acc, n| {
                    let v = Poly::var(entry_var(i, j, n / 3, n % 3));
                    acc + &v * &v
                })
            });
            let gram_sq = grams.iter().fold(Poly::new(), |acc, g| acc + g * g);
            vec![&(&(&t2 * &t2) + &t4.scale(&q(-16, 1))) + &gram_sq.scale(&q(24, 1))]
        }
        ConstraintFamily::MartyushevSextic => {
            let (t2, t4, t6) = mega_trace_powers();
            vec![sextic_from(&t2, &t4, &t6)]
        }
        ConstraintFamily::M6 => {
            let (t2, t4, t6) = mega_trace_powers();
            vec![sextic_from(&t2, &t4, &t6).filter(|m| m.multidegree() == [2, 2, 2])]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::camera::FundamentalTriple;
    use crate::constraints::evaluate;
    use crate::smallalg::Mat3;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_triple(rng: &mut ChaCha8Rng) -> FundamentalTriple<BigRational> {
        let mut m = || {
            let v: Vec<BigRational> = (0..9).map(|_| q(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
            Mat3::from_flat(&v)
        };
        FundamentalTriple::new(m(), m(), m())
    }

    fn agrees(family: ConstraintFamily, points: usize) {
        let polys = family_polynomials(family);
        assert_eq!(polys.len(), family.count(), "{family:?}");
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..points {
            let t = random_triple(&mut rng);
            let direct = evaluate(&t, family);
            let symbolic: Vec<BigRational> = polys.iter().map(|p| p.eval_triple(&t)).collect();
            assert_eq!(direct, symbolic, "{family:?}");
        }
    }

    #[test]
    fn determinant_and_demazure_oracles_agree() {
        agrees(ConstraintFamily::DetCubics, 20);
        agrees(ConstraintFamily::Demazure, 20);
        agrees(ConstraintFamily::MartyushevCubic, 20);
    }

    #[test]
    fn adjugate_oracle_is_the_adjugate() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = random_triple(&mut rng);
        let adj = adjugate(&factor(1, 2));
        let direct = t.f12.adjugate();
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(adj[r][c].eval_triple(&t), direct.0[r][c]);
            }
        }
    }
}
