//! Camera triples, the maps from cameras to fundamental triples, and seeded
//! samplers for the three priors.

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::smallalg::{
    cross_matrix, numeric_rank, q, Dual, Field, Mat3, Mat9, Ring, Vec3, DEFAULT_RANK_TOL,
};

/// Which camera model generates a triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Prior {
    /// Independent uncalibrated cameras (fundamental matrices).
    F,
    /// Calibrated cameras, `K = I` (essential matrices).
    E,
    /// Shared unknown intrinsics.
    Delta,
}

impl fmt::Display for Prior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Prior::F => "F",
            Prior::E => "E",
            Prior::Delta => "Delta",
        })
    }
}

impl std::str::FromStr for Prior {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F" | "f" => Ok(Prior::F),
            "E" | "e" => Ok(Prior::E),
            "Delta" | "delta" | "D" => Ok(Prior::Delta),
            other => Err(Error::Document(format!("unknown prior {other:?}"))),
        }
    }
}

/// Whether a triple is a fixed representative or only defined up to
/// independent rescaling of each factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScaleTag {
    Affine,
    Projective,
}

/// Upper-triangular invertible calibration matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Intrinsics<T>(Mat3<T>);

impl<T: Field> Intrinsics<T> {
    pub fn new(k: Mat3<T>) -> Result<Self> {
        let lower = [(1, 0), (2, 0), (2, 1)];
        if lower.iter().any(|&(r, c)| !k.0[r][c].is_zero()) {
            return Err(Error::InvalidIntrinsics("not upper triangular"));
        }
        if (0..3).any(|i| k.0[i][i].is_zero()) {
            return Err(Error::InvalidIntrinsics("singular"));
        }
        Ok(Intrinsics(k))
    }

    pub fn identity() -> Self {
        Intrinsics(Mat3::identity())
    }

    pub fn matrix(&self) -> &Mat3<T> {
        &self.0
    }
}

/// A rotation matrix: `R^T R = I`, `det R = 1` (exactly, or to 1e-9 on floats).
#[derive(Clone, Debug, PartialEq)]
pub struct Rotation<T>(Mat3<T>);

impl<T: Field> Rotation<T> {
    pub fn new(r: Mat3<T>) -> Result<Self> {
        let gram = &r.transpose() * &r;
        let defect = &gram - &Mat3::identity();
        let det_defect = r.det() - T::one();
        let ok = if T::EXACT {
            defect.is_zero() && det_defect.is_zero()
        } else {
            defect.frobenius() < 1e-9 && det_defect.magnitude() < 1e-9
        };
        if ok {
            Ok(Rotation(r))
        } else {
            Err(Error::InvalidRotation(format!(
                "orthogonality defect {:.3e}, det defect {:.3e}",
                defect.frobenius(),
                det_defect.magnitude()
            )))
        }
    }

    pub fn identity() -> Self {
        Rotation(Mat3::identity())
    }

    pub fn matrix(&self) -> &Mat3<T> {
        &self.0
    }
}

/// A finite camera `K R [I | -c]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Camera<T> {
    pub intrinsics: Intrinsics<T>,
    pub rotation: Rotation<T>,
    pub center: Vec3<T>,
}

/// Three cameras together with the prior they were drawn from.
#[derive(Clone, Debug, PartialEq)]
pub struct CameraTriple<T> {
    pub cameras: [Camera<T>; 3],
    pub prior: Prior,
}

/// Three fundamental (or essential) matrices `F12, F13, F23`.
///
/// The reversed pairs are transposes: `F21 = F12^T` and so on.
#[derive(Clone, Debug, PartialEq)]
pub struct FundamentalTriple<T> {
    pub f12: Mat3<T>,
    pub f13: Mat3<T>,
    pub f23: Mat3<T>,
    pub scale: ScaleTag,
}

/// Block index order used throughout: `(1,2), (1,3), (2,3)`.
pub const PAIRS: [(usize, usize); 3] = [(1, 2), (1, 3), (2, 3)];

impl<T: Ring> FundamentalTriple<T> {
    pub fn new(f12: Mat3<T>, f13: Mat3<T>, f23: Mat3<T>) -> Self {
        FundamentalTriple { f12, f13, f23, scale: ScaleTag::Projective }
    }

    /// `F_ij` for camera labels `i != j` in `1..=3`.
    pub fn get(&self, i: usize, j: usize) -> Mat3<T> {
        match (i, j) {
            (1, 2) => self.f12.clone(),
            (1, 3) => self.f13.clone(),
            (2, 3) => self.f23.clone(),
            (2, 1) => self.f12.transpose(),
            (3, 1) => self.f13.transpose(),
            (3, 2) => self.f23.transpose(),
            _ => panic!("no fundamental matrix for pair ({i}, {j})"),
        }
    }

    pub fn factors(&self) -> [&Mat3<T>; 3] {
        [&self.f12, &self.f13, &self.f23]
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> FundamentalTriple<U> {
        FundamentalTriple {
            f12: self.f12.map(&f),
            f13: self.f13.map(&f),
            f23: self.f23.map(&f),
            scale: self.scale,
        }
    }

    /// The 27 coordinates in the order F12, F13, F23, each row-major.
    pub fn coordinates(&self) -> [T; 27] {
        let [a, b, c] = self.factors().map(Mat3::flat);
        std::array::from_fn(|k| [&a, &b, &c][k / 9][k % 9].clone())
    }

    pub fn from_coordinates(x: &[T]) -> Self {
        assert_eq!(x.len(), 27, "a triple has 27 coordinates");
        FundamentalTriple::new(
            Mat3::from_flat(&x[0..9]),
            Mat3::from_flat(&x[9..18]),
            Mat3::from_flat(&x[18..27]),
        )
    }

    /// The symmetric 9x9 block matrix `[[0, F12, F13], [F21, 0, F23], [F31, F32, 0]]`.
    pub fn mega_matrix(&self) -> Mat9<T> {
        let z = Mat3::zero();
        Mat9::from_blocks(&[
            [z.clone(), self.f12.clone(), self.f13.clone()],
            [self.f12.transpose(), z.clone(), self.f23.clone()],
            [self.f13.transpose(), self.f23.transpose(), z],
        ])
    }

    /// Multiply each factor by its own scalar.
    pub fn rescale_unchecked(&self, s: &[T; 3]) -> Self {
        FundamentalTriple {
            f12: self.f12.scale(&s[0]),
            f13: self.f13.scale(&s[1]),
            f23: self.f23.scale(&s[2]),
            scale: self.scale,
        }
    }
}

impl<T: Field> FundamentalTriple<T> {
    /// Rescale each factor; all scales must be nonzero.
    pub fn rescale(&self, s: &[T; 3]) -> Result<Self> {
        if s.iter().any(Ring::is_zero) {
            return Err(Error::ZeroScale);
        }
        Ok(self.rescale_unchecked(s))
    }

    /// Frobenius norms of the three factors.
    pub fn norms(&self) -> [f64; 3] {
        self.factors().map(Mat3::frobenius)
    }

    /// Scale each nonzero factor to unit Frobenius norm.
    pub fn unit_normalized(&self) -> (Self, [f64; 3]) {
        let norms = self.norms();
        let s = norms.map(|n| if n > 0.0 { T::from_f64(1.0 / n) } else { T::one() });
        (self.rescale_unchecked(&s), norms)
    }

    /// Ranks of the three factors.
    pub fn factor_ranks(&self, rel_tol: f64) -> [usize; 3] {
        self.factors().map(|m| {
            let rows: Vec<Vec<T>> = m.0.iter().map(|r| r.to_vec()).collect();
            numeric_rank(&rows, rel_tol)
        })
    }
}

/// `F_ij = K_i^{-T} R_i [c_j - c_i]x R_j^T K_j^{-1}` from raw camera data.
///
/// Panics on singular intrinsics; callers validate through [`Intrinsics`].
pub fn fundamental_from_parts<T: Field>(
    (ki, ri, ci): (&Mat3<T>, &Mat3<T>, &Vec3<T>),
    (kj, rj, cj): (&Mat3<T>, &Mat3<T>, &Vec3<T>),
) -> Mat3<T> {
    let ki_inv_t = ki.inverse().expect("intrinsics are invertible").transpose();
    let kj_inv = kj.inverse().expect("intrinsics are invertible");
    let baseline = cross_matrix(&(cj.clone() - ci.clone()));
    let left = &(&ki_inv_t * ri) * &baseline;
    &(&left * &rj.transpose()) * &kj_inv
}

/// Fundamental matrix between two cameras.
pub fn fundamental_pair<T: Field>(a: &Camera<T>, b: &Camera<T>) -> Mat3<T> {
    fundamental_from_parts(
        (a.intrinsics.matrix(), a.rotation.matrix(), &a.center),
        (b.intrinsics.matrix(), b.rotation.matrix(), &b.center),
    )
}

impl<T: Field> CameraTriple<T> {
    /// The map from cameras to the triple `(F12, F13, F23)`.
    pub fn fundamental_triple(&self) -> FundamentalTriple<T> {
        let [c1, c2, c3] = &self.cameras;
        FundamentalTriple {
            f12: fundamental_pair(c1, c2),
            f13: fundamental_pair(c1, c3),
            f23: fundamental_pair(c2, c3),
            scale: ScaleTag::Affine,
        }
    }

    /// `D_i = K_i R_i` for each camera.
    pub fn view_transforms(&self) -> [Mat3<T>; 3] {
        self.cameras
            .each_ref()
            .map(|c| c.intrinsics.matrix() * c.rotation.matrix())
    }

    pub fn centers(&self) -> [Vec3<T>; 3] {
        self.cameras.each_ref().map(|c| c.center.clone())
    }
}

/// Essential matrix `[c]x R^T` of a relative pose.
pub fn essential_from_pose<T: Field>(r: &Rotation<T>, c: &Vec3<T>) -> Mat3<T> {
    &cross_matrix(c) * &r.matrix().transpose()
}

/// The second pose `(R (2 c c^T / c^T c - I), -c)` that yields the same
/// essential matrix.
pub fn twisted_pair<T: Field>(r: &Rotation<T>, c: &Vec3<T>) -> Result<(Rotation<T>, Vec3<T>)> {
    if c.is_zero() {
        return Err(Error::ZeroCenter);
    }
    let cc = c.dot(c);
    if cc.is_zero() || (!T::EXACT && cc.magnitude() < 1e-300) {
        return Err(Error::IsotropicCenter);
    }
    let reflect = &c.outer(c).scale(&(T::from_i64(2) / cc)) - &Mat3::identity();
    let twisted = Rotation::new(r.matrix() * &reflect)?;
    Ok((twisted, -c.clone()))
}

/// The 9x9 "center form": block `(i,j)` is `u_ij [c_j - c_i]x` (with
/// `u_ji = u_ij`), zero on the diagonal. Scaled triples satisfy
/// `mega = D^{-T} center_form D^{-1}` with `D = diag(K_i R_i)`.
pub fn center_form_matrix<T: Field>(centers: &[Vec3<T>; 3], u: &[T; 3]) -> Mat9<T> {
    let weight = |i: usize, j: usize| match (i.min(j), i.max(j)) {
        (0, 1) => u[0].clone(),
        (0, 2) => u[1].clone(),
        _ => u[2].clone(),
    };
    let block = |i: usize, j: usize| {
        if i == j {
            Mat3::zero()
        } else {
            cross_matrix(&(centers[j].clone() - centers[i].clone())).scale(&weight(i, j))
        }
    };
    let blocks = std::array::from_fn(|i| std::array::from_fn(|j| block(i, j)));
    Mat9::from_blocks(&blocks)
}

/// Three explicit kernel vectors of [`center_form_matrix`].
pub fn center_form_kernel<T: Field>(centers: &[Vec3<T>; 3], u: &[T; 3]) -> [[Vec3<T>; 3]; 3] {
    let [c1, c2, c3] = centers.clone();
    let [u12, u13, u23] = u.clone();
    let d = |a: &Vec3<T>, b: &Vec3<T>, s: &T| (a.clone() - b.clone()).scale(s);
    [
        [d(&c2, &c1, &u23), d(&c1, &c2, &u13), Vec3::zero()],
        [d(&c3, &c1, &u23), Vec3::zero(), d(&c1, &c3, &u12)],
        [Vec3::zero(), d(&c3, &c2, &u13), d(&c2, &c3, &u12)],
    ]
}

/// Seeded sampler of camera triples and their images.
pub struct Sampler {
    prior: Prior,
    collinear: bool,
    rng: ChaCha8Rng,
}

/// A sampled camera triple and its fundamental triple.
#[derive(Clone, Debug)]
pub struct Sample<T> {
    pub cameras: CameraTriple<T>,
    pub triple: FundamentalTriple<T>,
}

const MAX_REJECTIONS: usize = 100;

impl Sampler {
    pub fn new(prior: Prior, seed: u64) -> Self {
        Sampler { prior, collinear: false, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Sample triples with collinear (but distinct) centers.
    pub fn collinear(mut self, yes: bool) -> Self {
        self.collinear = yes;
        self
    }

    pub fn prior(&self) -> Prior {
        self.prior
    }

    fn small_rational(&mut self, num: i64, den: i64) -> BigRational {
        let n = self.rng.gen_range(-num..=num);
        let d = self.rng.gen_range(1..=den);
        q(n, d)
    }

    fn exact_rotation(&mut self) -> Mat3<BigRational> {
        // Cayley transform of a skew matrix: (I - S)(I + S)^{-1}.
        let s = cross_matrix(&Vec3([
            self.small_rational(3, 3),
            self.small_rational(3, 3),
            self.small_rational(3, 3),
        ]));
        let id = Mat3::identity();
        let plus = (&id + &s).inverse().expect("I + S is invertible for skew S");
        &(&id - &s) * &plus
    }

    fn exact_intrinsics(&mut self) -> Mat3<BigRational> {
        let diag = [q(1, 2), q(2, 3), q(1, 1), q(3, 2), q(2, 1)];
        let mut k = Mat3::<BigRational>::zero();
        for i in 0..3 {
            k.0[i][i] = diag[self.rng.gen_range(0..diag.len())].clone();
        }
        for (r, c) in [(0, 1), (0, 2), (1, 2)] {
            k.0[r][c] = self.small_rational(2, 2);
        }
        k
    }

    fn float_rotation(&mut self) -> Mat3<Complex64> {
        let quat = loop {
            let v: [f64; 4] = std::array::from_fn(|_| self.rng.gen_range(-1.0..1.0));
            let n2: f64 = v.iter().map(|x| x * x).sum();
            if n2 > 1e-4 && n2 <= 1.0 {
                let n = n2.sqrt();
                break v.map(|x| x / n);
            }
        };
        rotation_from_quaternion(quat).map(|&x| Complex64::new(x, 0.0))
    }

    fn float_intrinsics(&mut self) -> Mat3<Complex64> {
        let mut k = Mat3::<Complex64>::zero();
        for i in 0..3 {
            k.0[i][i] = Complex64::new(self.rng.gen_range(0.5..2.0), 0.0);
        }
        for (r, c) in [(0, 1), (0, 2), (1, 2)] {
            k.0[r][c] = Complex64::new(self.rng.gen_range(-0.5..0.5), 0.0);
        }
        k
    }

    fn intrinsics_for<T: Field>(
        &mut self,
        draw: impl Fn(&mut Self) -> Mat3<T>,
    ) -> Result<[Intrinsics<T>; 3]> {
        Ok(match self.prior {
            Prior::E => std::array::from_fn(|_| Intrinsics::identity()),
            Prior::Delta => {
                let k = Intrinsics::new(draw(self))?;
                [k.clone(), k.clone(), k]
            }
            Prior::F => [
                Intrinsics::new(draw(self))?,
                Intrinsics::new(draw(self))?,
                Intrinsics::new(draw(self))?,
            ],
        })
    }

    fn accept<T: Field>(&self, centers: &[Vec3<T>; 3]) -> bool {
        let [c1, c2, c3] = centers;
        let tiny = |v: &Vec3<T>| if T::EXACT { v.is_zero() } else { v.norm() < 1e-6 };
        let d12 = c2.clone() - c1.clone();
        let d13 = c3.clone() - c1.clone();
        let d23 = c3.clone() - c2.clone();
        if tiny(&d12) || tiny(&d13) || tiny(&d23) {
            return false;
        }
        let collinear = tiny(&d12.cross(&d13));
        collinear == self.collinear
    }

    fn finish<T: Field>(
        &self,
        ks: [Intrinsics<T>; 3],
        rs: [Mat3<T>; 3],
        cs: [Vec3<T>; 3],
    ) -> Result<Sample<T>> {
        let [k1, k2, k3] = ks;
        let [r1, r2, r3] = rs;
        let [c1, c2, c3] = cs;
        let cam = |k, r, c| -> Result<Camera<T>> {
            Ok(Camera { intrinsics: k, rotation: Rotation::new(r)?, center: c })
        };
        let cameras = CameraTriple {
            cameras: [cam(k1, r1, c1)?, cam(k2, r2, c2)?, cam(k3, r3, c3)?],
            prior: self.prior,
        };
        let triple = cameras.fundamental_triple();
        Ok(Sample { cameras, triple })
    }

    /// Draw an exact rational sample.
    pub fn sample_exact(&mut self) -> Result<Sample<BigRational>> {
        for _ in 0..MAX_REJECTIONS {
            let ks = self.intrinsics_for(Self::exact_intrinsics)?;
            let rs = [self.exact_rotation(), self.exact_rotation(), self.exact_rotation()];
            let mut cs: [Vec3<BigRational>; 3] = std::array::from_fn(|_| Vec3::zero());
            for c in cs.iter_mut() {
                *c = Vec3(std::array::from_fn(|_| self.small_rational(5, 3)));
            }
            if self.collinear {
                let mut t = self.small_rational(4, 3);
                while t == q(0, 1) || t == q(1, 1) {
                    t = self.small_rational(4, 3);
                }
                cs[2] = cs[0].clone() + (cs[1].clone() - cs[0].clone()).scale(&t);
            }
            if self.accept(&cs) {
                return self.finish(ks, rs, cs);
            }
        }
        Err(Error::SamplerExhausted(MAX_REJECTIONS))
    }

    /// Draw a floating-point sample (real values stored as complex numbers).
    pub fn sample_float(&mut self) -> Result<Sample<Complex64>> {
        for _ in 0..MAX_REJECTIONS {
            let ks = self.intrinsics_for(Self::float_intrinsics)?;
            let rs = [self.float_rotation(), self.float_rotation(), self.float_rotation()];
            let mut cs: [Vec3<Complex64>; 3] = std::array::from_fn(|_| {
                Vec3(std::array::from_fn(|_| Complex64::new(self.rng.gen_range(-1.0..1.0), 0.0)))
            });
            if self.collinear {
                let t = Complex64::new(self.rng.gen_range(-2.0..3.0), 0.0);
                cs[2] = cs[0].clone() + (cs[1].clone() - cs[0].clone()).scale(&t);
            }
            if self.accept(&cs) {
                return self.finish(ks, rs, cs);
            }
        }
        Err(Error::SamplerExhausted(MAX_REJECTIONS))
    }

    /// A fresh uniform draw in `[lo, hi)`, for callers that rescale samples.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    /// A small nonzero rational `p/q` with `|p| <= num`, `1 <= q <= den`.
    pub fn nonzero_rational(&mut self, num: i64, den: i64) -> BigRational {
        loop {
            let r = self.small_rational(num, den);
            if !Ring::is_zero(&r) {
                return r;
            }
        }
    }
}

/// Exact rational sample of the given prior.
pub fn sample_exact(prior: Prior, seed: u64) -> Result<Sample<BigRational>> {
    Sampler::new(prior, seed).sample_exact()
}

/// Floating-point sample of the given prior.
pub fn sample_float(prior: Prior, seed: u64) -> Result<Sample<Complex64>> {
    Sampler::new(prior, seed).sample_float()
}

/// Rotation matrix of a unit quaternion `(w, x, y, z)`.
pub fn rotation_from_quaternion([w, x, y, z]: [f64; 4]) -> Mat3<f64> {
    Mat3([
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
        [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
        [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
    ])
}

/// Dimension of the image of the camera-to-triple map, as a subvariety of
/// `(P^8)^3`, estimated from the Jacobian rank at random points.
///
/// Returns the maximum over `trials` points of
/// `rank [J | F12-radial | F13-radial | F23-radial] - 3`.
pub fn dimension_estimate(prior: Prior, trials: usize, seed: u64) -> Result<usize> {
    let mut sampler = Sampler::new(prior, seed);
    let mut best = 0;
    for _ in 0..trials.max(1) {
        let s = sampler.sample_float()?;
        best = best.max(image_dimension_at(&s.cameras));
    }
    Ok(best)
}

/// Parameter directions of the camera model at a point.
#[derive(Clone, Copy, Debug)]
enum Direction {
    /// Upper-triangular intrinsics entry; `None` camera means all cameras
    /// (shared intrinsics).
    Intrinsic(Option<usize>, usize, usize),
    Rotation(usize, usize),
    Center(usize, usize),
}

fn directions(prior: Prior) -> Vec<Direction> {
    let upper = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
    let mut dirs = Vec::new();
    match prior {
        Prior::F => {
            for cam in 0..3 {
                dirs.extend(upper.iter().map(|&(r, c)| Direction::Intrinsic(Some(cam), r, c)));
            }
        }
        Prior::Delta => dirs.extend(upper.iter().map(|&(r, c)| Direction::Intrinsic(None, r, c))),
        Prior::E => {}
    }
    for cam in 0..3 {
        dirs.extend((0..3).map(|k| Direction::Rotation(cam, k)));
        dirs.extend((0..3).map(|k| Direction::Center(cam, k)));
    }
    dirs
}

/// Projective image dimension at one camera configuration.
pub fn image_dimension_at(cams: &CameraTriple<Complex64>) -> usize {
    let dirs = directions(cams.prior);
    let mut columns: Vec<Vec<Complex64>> = dirs
        .iter()
        .map(|&d| {
            let lifted = lift_cameras(cams, d);
            let t = triple_from_raw(&lifted);
            t.coordinates().iter().map(|x| x.tangent).collect()
        })
        .collect();
    let base = cams.fundamental_triple().coordinates();
    for block in 0..3 {
        columns.push(
            (0..27)
                .map(|k| if k / 9 == block { base[k] } else { Complex64::new(0.0, 0.0) })
                .collect(),
        );
    }
    let rows: Vec<Vec<Complex64>> =
        (0..27).map(|r| columns.iter().map(|col| col[r]).collect()).collect();
    numeric_rank(&rows, DEFAULT_RANK_TOL).saturating_sub(3)
}

type RawCamera<T> = (Mat3<T>, Mat3<T>, Vec3<T>);

fn lift_cameras(cams: &CameraTriple<Complex64>, dir: Direction) -> [RawCamera<Dual<Complex64>>; 3] {
    let one = Complex64::new(1.0, 0.0);
    std::array::from_fn(|i| {
        let cam = &cams.cameras[i];
        let mut k = cam.intrinsics.matrix().map(|&x| Dual::constant(x));
        let mut r = cam.rotation.matrix().map(|&x| Dual::constant(x));
        let mut c = cam.center.map(|&x| Dual::constant(x));
        match dir {
            Direction::Intrinsic(which, row, col) if which.is_none_or(|w| w == i) => {
                k.0[row][col].tangent = one;
            }
            Direction::Rotation(w, axis) if w == i => {
                let mut e = Vec3::<Complex64>::zero();
                e.0[axis] = one;
                let tangent = cam.rotation.matrix() * &cross_matrix(&e);
                for (rr, row) in r.0.iter_mut().enumerate() {
                    for (cc, x) in row.iter_mut().enumerate() {
                        x.tangent = tangent.0[rr][cc];
                    }
                }
            }
            Direction::Center(w, axis) if w == i => c.0[axis].tangent = one,
            _ => {}
        }
        (k, r, c)
    })
}

fn triple_from_raw<T: Field>(cams: &[RawCamera<T>; 3]) -> FundamentalTriple<T> {
    let part = |i: usize| (&cams[i].0, &cams[i].1, &cams[i].2);
    FundamentalTriple {
        f12: fundamental_from_parts(part(0), part(1)),
        f13: fundamental_from_parts(part(0), part(2)),
        f23: fundamental_from_parts(part(1), part(2)),
        scale: ScaleTag::Affine,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smallalg::{exact_rank, kernel_vector};

    #[test]
    fn exact_samples_have_rank_two_factors() {
        for prior in [Prior::F, Prior::E, Prior::Delta] {
            for seed in 0..5 {
                let s = sample_exact(prior, seed).unwrap();
                assert_eq!(s.triple.factor_ranks(0.0), [2, 2, 2]);
            }
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_exact(Prior::F, 42).unwrap().triple;
        let b = sample_exact(Prior::F, 42).unwrap().triple;
        assert_eq!(a, b);
        let c = sample_float(Prior::E, 7).unwrap().triple;
        let d = sample_float(Prior::E, 7).unwrap().triple;
        assert_eq!(c, d);
    }

    #[test]
    fn rotations_validate() {
        let s = sample_exact(Prior::F, 3).unwrap();
        for cam in &s.cameras.cameras {
            assert!(Rotation::new(cam.rotation.matrix().clone()).is_ok());
        }
        let bad = Mat3::<BigRational>::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        assert!(Rotation::new(bad).is_err());
    }

    #[test]
    fn intrinsics_validate() {
        let lower = Mat3::<BigRational>::from_i64([[1, 0, 0], [1, 1, 0], [0, 0, 1]]);
        assert!(Intrinsics::new(lower).is_err());
        let singular = Mat3::<BigRational>::from_i64([[1, 0, 0], [0, 0, 0], [0, 0, 1]]);
        assert!(Intrinsics::new(singular).is_err());
    }

    #[test]
    fn epipolar_constraint_holds_for_projected_points() {
        // x_i^T F_ij x_j = 0 for images of a common world point.
        let s = sample_exact(Prior::F, 11).unwrap();
        let x = Vec3([q(1, 3), q(-2, 1), q(5, 7)]);
        let image = |cam: &Camera<BigRational>| {
            let d = cam.intrinsics.matrix() * cam.rotation.matrix();
            d.mul_vec(&(x.clone() - cam.center.clone()))
        };
        let [c1, c2, c3] = &s.cameras.cameras;
        let (x1, x2, x3) = (image(c1), image(c2), image(c3));
        assert!(Ring::is_zero(&x1.dot(&s.triple.f12.mul_vec(&x2))));
        assert!(Ring::is_zero(&x1.dot(&s.triple.f13.mul_vec(&x3))));
        assert!(Ring::is_zero(&x2.dot(&s.triple.f23.mul_vec(&x3))));
    }

    #[test]
    fn epipoles_are_projected_centers() {
        let s = sample_exact(Prior::F, 5).unwrap();
        let [c1, c2, _] = &s.cameras.cameras;
        let d2 = c2.intrinsics.matrix() * c2.rotation.matrix();
        // Right kernel of F12 is the image of c1 in camera 2.
        let e21 = d2.mul_vec(&(c1.center.clone() - c2.center.clone()));
        assert!(s.triple.f12.mul_vec(&e21).is_zero());
        let k = kernel_vector(&s.triple.f12, 0.0).unwrap();
        assert!(crate::smallalg::proj_equal(&k.0, &e21.0, 0.0).unwrap());
    }

    #[test]
    fn twisted_pair_preserves_essential() {
        let s = sample_exact(Prior::E, 9).unwrap();
        let r = s.cameras.cameras[0].rotation.clone();
        let c = s.cameras.cameras[0].center.clone();
        let (r2, c2) = twisted_pair(&r, &c).unwrap();
        assert_eq!(essential_from_pose(&r, &c), essential_from_pose(&r2, &c2));
        assert!(matches!(twisted_pair(&r, &Vec3::zero()), Err(Error::ZeroCenter)));
        let iso = Vec3([
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ]);
        let r = Rotation::<Complex64>::identity();
        assert!(matches!(twisted_pair(&r, &iso), Err(Error::IsotropicCenter)));
    }

    #[test]
    fn center_form_is_symmetric_with_skew_blocks() {
        let s = sample_exact(Prior::F, 13).unwrap();
        let u = [q(2, 1), q(-1, 3), q(5, 2)];
        let m = center_form_matrix(&s.cameras.centers(), &u);
        assert_eq!(m.transpose(), m);
        for i in 0..3 {
            for j in 0..3 {
                let b = m.block(i, j);
                assert_eq!(b.transpose(), -&b);
            }
        }
        for v in center_form_kernel(&s.cameras.centers(), &u) {
            let flat: Vec<BigRational> = v.iter().flat_map(|x| x.0.clone()).collect();
            for row in &m.0 {
                let dot = row.iter().zip(&flat).fold(q(0, 1), |a, (x, y)| a + x * y);
                assert!(Ring::is_zero(&dot));
            }
        }
        assert!(exact_rank(&m.rows()) <= 6);
    }

    #[test]
    fn mega_matrix_factors_through_center_form() {
        let s = sample_exact(Prior::F, 17).unwrap();
        let u = [q(3, 1), q(-2, 1), q(1, 2)];
        let mega = s.triple.rescale(&u).unwrap().mega_matrix();
        let cf = center_form_matrix(&s.cameras.centers(), &u);
        let d = s.cameras.view_transforms();
        let dinv: Vec<Mat3<BigRational>> = d.iter().map(|m| m.inverse().unwrap()).collect();
        for i in 0..3 {
            for j in 0..3 {
                let expect = &(&dinv[i].transpose() * &cf.block(i, j)) * &dinv[j];
                assert_eq!(mega.block(i, j), expect);
            }
        }
    }

    #[test]
    fn image_dimensions() {
        assert_eq!(dimension_estimate(Prior::F, 3, 1).unwrap(), 18);
        assert_eq!(dimension_estimate(Prior::E, 3, 1).unwrap(), 11);
        assert_eq!(dimension_estimate(Prior::Delta, 3, 1).unwrap(), 16);
    }

    #[test]
    fn dual_jacobian_matches_finite_differences() {
        let s = sample_float(Prior::F, 21).unwrap();
        let dir = Direction::Center(1, 2);
        let lifted = lift_cameras(&s.cameras, dir);
        let tangent: Vec<Complex64> =
            triple_from_raw(&lifted).coordinates().iter().map(|x| x.tangent).collect();
        let h = 1e-6;
        let mut plus = s.cameras.clone();
        plus.cameras[1].center.0[2] += Complex64::new(h, 0.0);
        let mut minus = s.cameras.clone();
        minus.cameras[1].center.0[2] -= Complex64::new(h, 0.0);
        let a = plus.fundamental_triple().coordinates();
        let b = minus.fundamental_triple().coordinates();
        for k in 0..27 {
            let fd = (a[k] - b[k]) / (2.0 * h);
            assert!((fd - tangent[k]).norm() < 1e-6, "coordinate {k}");
        }
    }
}
