//! JSON documents for triples and the reports written by the command-line
//! tool.
//!
//! Rational entries are strings (`"3"`, `"-2/7"`) so they survive a round
//! trip unchanged. Complex entries are JSON numbers when real and
//! `[re, im]` pairs otherwise.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::camera::{Camera, CameraTriple, FundamentalTriple, Intrinsics, Prior, Rotation, ScaleTag};
use crate::constraints::{FamilySummary, SepticIndexPair};
use crate::epipolar::{CollinearityStatus, HzVerdict};
use crate::error::{Error, Result};
use crate::smallalg::{parse_rational, Field, Mat3, Vec3};

/// One entry of a matrix or vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Exact(String),
    Real(f64),
    Complex([f64; 2]),
}

/// Scalar field a document is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Rational,
    Complex,
}

/// Scalars that can be written to and read from documents.
pub trait DocScalar: Field {
    const KIND: FieldKind;
    fn to_number(&self) -> Number;
    fn from_number(n: &Number) -> Result<Self>;
}

impl DocScalar for BigRational {
    const KIND: FieldKind = FieldKind::Rational;

    fn to_number(&self) -> Number {
        Number::Exact(self.to_string())
    }

    fn from_number(n: &Number) -> Result<Self> {
        match n {
            Number::Exact(s) => {
                parse_rational(s).ok_or_else(|| Error::Document(format!("not a rational: {s:?}")))
            }
            other => Err(Error::Document(format!("rational document holds a float entry {other:?}"))),
        }
    }
}

impl DocScalar for Complex64 {
    const KIND: FieldKind = FieldKind::Complex;

    fn to_number(&self) -> Number {
        if self.im == 0.0 {
            Number::Real(self.re)
        } else {
            Number::Complex([self.re, self.im])
        }
    }

    fn from_number(n: &Number) -> Result<Self> {
        match n {
            Number::Real(x) => Ok(Complex64::new(*x, 0.0)),
            Number::Complex([re, im]) => Ok(Complex64::new(*re, *im)),
            Number::Exact(s) => parse_rational(s)
                .map(|r| r.to_c64())
                .ok_or_else(|| Error::Document(format!("not a number: {s:?}"))),
        }
    }
}

pub type MatrixDoc = [[Number; 3]; 3];

fn matrix_doc<T: DocScalar>(m: &Mat3<T>) -> MatrixDoc {
    std::array::from_fn(|r| std::array::from_fn(|c| m.0[r][c].to_number()))
}

fn vector_doc<T: DocScalar>(v: &Vec3<T>) -> [Number; 3] {
    std::array::from_fn(|i| v.0[i].to_number())
}

fn read_matrix<T: DocScalar>(m: &MatrixDoc) -> Result<Mat3<T>> {
    let mut out = Mat3::zero();
    for r in 0..3 {
        for c in 0..3 {
            out.0[r][c] = T::from_number(&m[r][c])?;
        }
    }
    Ok(out)
}

fn read_vector<T: DocScalar>(v: &[Number; 3]) -> Result<Vec3<T>> {
    Ok(Vec3([T::from_number(&v[0])?, T::from_number(&v[1])?, T::from_number(&v[2])?]))
}

/// Intrinsics, rotation and center of one camera.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CameraDoc {
    pub k: MatrixDoc,
    pub r: MatrixDoc,
    pub c: [Number; 3],
}

/// The cameras a triple was generated from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CameraBlock {
    pub prior: Prior,
    pub cameras: [CameraDoc; 3],
}

/// A triple `(F12, F13, F23)` on disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: FieldKind,
    pub f12: MatrixDoc,
    pub f13: MatrixDoc,
    pub f23: MatrixDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<ScaleTag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cameras: Option<CameraBlock>,
}

/// A parsed triple in whichever field its document uses.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyTriple {
    Rational(FundamentalTriple<BigRational>),
    Complex(FundamentalTriple<Complex64>),
}

impl TripleDocument {
    pub fn from_triple<T: DocScalar>(t: &FundamentalTriple<T>) -> Self {
        TripleDocument {
            name: None,
            field: T::KIND,
            f12: matrix_doc(&t.f12),
            f13: matrix_doc(&t.f13),
            f23: matrix_doc(&t.f23),
            scale: Some(t.scale),
            cameras: None,
        }
    }

    pub fn with_cameras<T: DocScalar>(mut self, ct: &CameraTriple<T>) -> Self {
        let cameras = ct.cameras.each_ref().map(|c| CameraDoc {
            k: matrix_doc(c.intrinsics.matrix()),
            r: matrix_doc(c.rotation.matrix()),
            c: vector_doc(&c.center),
        });
        self.cameras = Some(CameraBlock { prior: ct.prior, cameras });
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Parse and validate: every entry must be readable in the declared field.
    pub fn parse(json: &str) -> Result<Self> {
        let doc: TripleDocument = serde_json::from_str(json)?;
        doc.triple()?;
        if doc.cameras.is_some() {
            match doc.field {
                FieldKind::Rational => doc.camera_triple::<BigRational>().map(drop)?,
                FieldKind::Complex => doc.camera_triple::<Complex64>().map(drop)?,
            }
        }
        Ok(doc)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        Ok(std::fs::write(path, self.to_json())?)
    }

    fn typed<T: DocScalar>(&self) -> Result<FundamentalTriple<T>> {
        let mut t = FundamentalTriple::new(read_matrix(&self.f12)?, read_matrix(&self.f13)?, read_matrix(&self.f23)?);
        t.scale = self.scale.unwrap_or(ScaleTag::Projective);
        Ok(t)
    }

    pub fn triple(&self) -> Result<AnyTriple> {
        Ok(match self.field {
            FieldKind::Rational => AnyTriple::Rational(self.typed()?),
            FieldKind::Complex => AnyTriple::Complex(self.typed()?),
        })
    }

    /// The triple as complex doubles, converting rational documents.
    pub fn complex_triple(&self) -> Result<FundamentalTriple<Complex64>> {
        self.typed()
    }

    /// The camera block, validated, if present.
    pub fn camera_triple<T: DocScalar>(&self) -> Result<Option<CameraTriple<T>>> {
        let Some(block) = &self.cameras else { return Ok(None) };
        let mut cams = Vec::with_capacity(3);
        for c in &block.cameras {
            cams.push(Camera {
                intrinsics: Intrinsics::new(read_matrix(&c.k)?)?,
                rotation: Rotation::new(read_matrix(&c.r)?)?,
                center: read_vector(&c.c)?,
            });
        }
        let cameras: [Camera<T>; 3] = cams.try_into().map_err(|_| Error::Document("three cameras".into()))?;
        Ok(Some(CameraTriple { cameras, prior: block.prior }))
    }
}

/// Which test `check` runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum CheckMode {
    /// Membership via cubics, quartics, quintics and septics.
    #[serde(rename = "F")]
    #[value(name = "F")]
    F,
    /// Local test with Demazure cubics, quartics and the sextic.
    #[serde(rename = "E-local")]
    #[value(name = "E-local")]
    ELocal,
    /// Triangulation test on the epipoles.
    #[serde(rename = "HZ")]
    #[value(name = "HZ")]
    Hz,
}

/// Output of `check`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintReportDoc {
    pub mode: CheckMode,
    pub field: FieldKind,
    pub tol: f64,
    pub verdict: String,
    pub exit_code: i32,
    /// Frobenius norms of the input factors.
    pub norms: [f64; 3],
    pub families: Vec<FamilySummary>,
    /// Magnitudes of the three triangulation residuals (HZ mode).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangulation: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// One of the six line-membership relations `F_ij e_jk in im(F_ik)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineRelation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub holds: bool,
}

/// Output of `epipoles`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpipoleReport {
    pub field: FieldKind,
    pub tol: f64,
    /// Keys `e12`, `e13`, `e21`, `e23`, `e31`, `e32`.
    pub epipoles: BTreeMap<String, [Number; 3]>,
    pub distinct: usize,
    pub status: CollinearityStatus,
    pub triangulation_residuals: [Number; 3],
    pub line_membership: Vec<LineRelation>,
    pub hz: HzVerdict,
}

/// A nonzero septic with the rows and columns its minor deletes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SepticHit {
    pub index: usize,
    pub pair: SepticIndexPair,
    pub value: Number,
}

/// Output of `megarank`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MegaRankReport {
    pub field: FieldKind,
    pub scales: [Number; 3],
    pub rank: usize,
    pub rank_at_most_6: bool,
    /// Descending, relative to the largest (float documents only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relative_singular_values: Option<Vec<f64>>,
    pub septics: FamilySummary,
    pub nonzero_septics: Vec<SepticHit>,
}

/// Error body printed when a command cannot produce its report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub error: String,
    pub exit_code: i32,
}
