//! Subcommands of the `compat` tool. Each command returns what it would
//! print together with its exit code, so the binary stays a thin wrapper.
//!
//! Exit codes: 0 member or compatible, 1 not, 2 bad input, 3 inapplicable.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use crate::camera::{dimension_estimate, FundamentalTriple, Prior, Sampler};
use crate::constraints::{
    classify_e_local, classify_f, enumerate_septic_indices, ConstraintFamily, ConstraintReport, ELocalVerdict,
    FVerdict, M6Extract, DEFAULT_TOL,
};
use crate::epipolar::{
    collinearity_status, epipoles, hz_compatible, line_membership_check, triangulation_residuals, HzVerdict,
    LINE_RELATIONS,
};
use crate::error::{Error, Result};
use crate::io::{
    AnyTriple, CheckMode, ConstraintReportDoc, DocScalar, EpipoleReport, ErrorReport, FieldKind, LineRelation,
    MegaRankReport, Number, SepticHit, TripleDocument,
};
use crate::smallalg::{dense, exact_rank, numeric_rank, DEFAULT_RANK_TOL};
use crate::syminterp::{run_discovery, DiscoveryConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INAPPLICABLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "compat", version, about = "Compatibility checks for triples of fundamental matrices")]
pub struct Cli {
    /// Worker threads for parallel stages; does not change any output.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PriorArg {
    #[value(name = "F")]
    F,
    #[value(name = "E")]
    E,
    #[value(name = "Delta", alias = "D")]
    Delta,
}

impl From<PriorArg> for Prior {
    fn from(p: PriorArg) -> Prior {
        match p {
            PriorArg::F => Prior::F,
            PriorArg::E => Prior::E,
            PriorArg::Delta => Prior::Delta,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Rational,
    Complex,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample triples from cameras and write them as documents.
    Sample {
        #[arg(long, value_enum)]
        prior: PriorArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, value_enum, default_value_t = FieldArg::Rational)]
        field: FieldArg,
        /// Place the three centers on a line.
        #[arg(long)]
        collinear: bool,
        /// A `.json` file when `count` is 1, otherwise a directory.
        /// Documents go to standard output when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Classify a triple and print a constraint report.
    Check {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = CheckMode::F)]
        mode: CheckMode,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Print the epipoles and the diagnostics built on them.
    Epipoles {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Rank of the 9x9 block matrix and the nonzero septics.
    Megarank {
        input: PathBuf,
        /// Three nonzero scales applied to F12, F13, F23, e.g. `2,3,5`.
        #[arg(long, value_delimiter = ',')]
        scales: Option<Vec<String>>,
    },
    /// Run the interpolation pipeline and write its report.
    Discover {
        /// JSON configuration; built-in defaults when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Estimate the dimension of the variety of a prior.
    Dim {
        #[arg(long, value_enum)]
        prior: PriorArg,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Text for standard output and the process exit code.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn json(value: &impl Serialize, code: i32) -> Self {
        let mut stdout = serde_json::to_string_pretty(value).expect("reports serialize");
        stdout.push('\n');
        Outcome { stdout, code }
    }

    fn error(err: &Error, code: i32) -> Self {
        Outcome::json(&ErrorReport { error: err.to_string(), exit_code: code }, code)
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Sample { prior, seed, count, field, collinear, output } => {
            cmd_sample((*prior).into(), *seed, *count, *field, *collinear, output.as_deref())
        }
        Command::Check { input, mode, tol } => cmd_check(input, *mode, *tol),
        Command::Epipoles { input, tol } => cmd_epipoles(input, *tol),
        Command::Megarank { input, scales } => cmd_megarank(input, scales.as_deref()),
        Command::Discover { config, output } => cmd_discover(config.as_deref(), output.as_deref()),
        Command::Dim { prior, trials, seed } => cmd_dim((*prior).into(), *trials, *seed),
    }
}

fn sample_documents(
    prior: Prior,
    seed: u64,
    count: usize,
    field: FieldArg,
    collinear: bool,
) -> Result<Vec<TripleDocument>> {
    let mut sampler = Sampler::new(prior, seed).collinear(collinear);
    (0..count)
        .map(|n| {
            let doc = match field {
                FieldArg::Rational => {
                    let s = sampler.sample_exact()?;
                    TripleDocument::from_triple(&s.triple).with_cameras(&s.cameras)
                }
                FieldArg::Complex => {
                    let s = sampler.sample_float()?;
                    TripleDocument::from_triple(&s.triple).with_cameras(&s.cameras)
                }
            };
            Ok(doc.with_name(format!("{prior}-seed{seed}-{n}")))
        })
        .collect()
}

/// Sample `count` triples; write them to `output` or return them as JSON.
pub fn cmd_sample(
    prior: Prior,
    seed: u64,
    count: usize,
    field: FieldArg,
    collinear: bool,
    output: Option<&Path>,
) -> Outcome {
    if count == 0 {
        return Outcome::error(&Error::Document("count must be positive".into()), EXIT_USAGE);
    }
    let docs = match sample_documents(prior, seed, count, field, collinear) {
        Ok(d) => d,
        Err(e) => return Outcome::error(&e, EXIT_FAIL),
    };
    let written = match output {
        None if count == 1 => return Outcome { stdout: docs[0].to_json(), code: EXIT_OK },
        None => return Outcome::json(&docs, EXIT_OK),
        Some(path) => write_documents(&docs, path),
    };
    match written {
        Ok(paths) => {
            let list: Vec<String> = paths.iter().map(|p| p.display().to_string()).collect();
            Outcome::json(&list, EXIT_OK)
        }
        Err(e) => Outcome::error(&e, EXIT_USAGE),
    }
}

fn write_documents(docs: &[TripleDocument], path: &Path) -> Result<Vec<PathBuf>> {
    if docs.len() == 1 && path.extension().is_some_and(|e| e == "json") {
        docs[0].write(path)?;
        return Ok(vec![path.to_path_buf()]);
    }
    std::fs::create_dir_all(path)?;
    docs.iter()
        .enumerate()
        .map(|(n, d)| {
            let p = path.join(format!("triple-{n:03}.json"));
            d.write(&p)?;
            Ok(p)
        })
        .collect()
}

fn load(input: &Path) -> std::result::Result<(TripleDocument, AnyTriple), Outcome> {
    let doc = TripleDocument::read(input).map_err(|e| Outcome::error(&e, EXIT_USAGE))?;
    let triple = doc.triple().map_err(|e| Outcome::error(&e, EXIT_USAGE))?;
    Ok((doc, triple))
}

fn report_doc<T: M6Extract>(
    mode: CheckMode,
    tol: f64,
    verdict: &str,
    code: i32,
    report: &ConstraintReport<T>,
) -> ConstraintReportDoc {
    ConstraintReportDoc {
        mode,
        field: if T::EXACT { FieldKind::Rational } else { FieldKind::Complex },
        tol,
        verdict: verdict.to_string(),
        exit_code: code,
        norms: report.norms,
        families: report.summaries(),
        triangulation: None,
        detail: None,
    }
}

fn check_typed<T: M6Extract + DocScalar>(t: &FundamentalTriple<T>, mode: CheckMode, tol: f64) -> Outcome {
    let doc = match mode {
        CheckMode::F => {
            let (verdict, report) = classify_f(t, tol);
            let code = if verdict == FVerdict::Member { EXIT_OK } else { EXIT_FAIL };
            report_doc(mode, tol, &format!("{verdict:?}"), code, &report)
        }
        CheckMode::ELocal => {
            let (verdict, report) = classify_e_local(t, tol);
            let code = if verdict == ELocalVerdict::LocallyConsistent { EXIT_OK } else { EXIT_FAIL };
            report_doc(mode, tol, &format!("{verdict:?}"), code, &report)
        }
        CheckMode::Hz => {
            let verdict = hz_compatible(t, tol);
            let code = match verdict {
                HzVerdict::Compatible => EXIT_OK,
                HzVerdict::Incompatible => EXIT_FAIL,
                HzVerdict::Inapplicable => EXIT_INAPPLICABLE,
            };
            let (norm_t, norms) = if T::EXACT { (t.clone(), t.norms()) } else { t.unit_normalized() };
            let e = epipoles(&norm_t, tol);
            let triangulation = e.as_ref().ok().map(|e| triangulation_residuals(&norm_t, e).map(|r| r.magnitude()));
            let detail = match (&e, verdict) {
                (Err(err), _) => Some(err.to_string()),
                (Ok(e), HzVerdict::Inapplicable) => {
                    Some(format!("centers are {:?}", collinearity_status(e, tol)).to_lowercase())
                }
                _ => None,
            };
            ConstraintReportDoc {
                mode,
                field: T::KIND,
                tol,
                verdict: format!("{verdict:?}"),
                exit_code: code,
                norms,
                families: Vec::new(),
                triangulation,
                detail,
            }
        }
    };
    let code = doc.exit_code;
    Outcome::json(&doc, code)
}

/// Classify the triple in `input`.
pub fn cmd_check(input: &Path, mode: CheckMode, tol: f64) -> Outcome {
    match load(input) {
        Err(o) => o,
        Ok((_, AnyTriple::Rational(t))) => check_typed(&t, mode, tol),
        Ok((_, AnyTriple::Complex(t))) => check_typed(&t, mode, tol),
    }
}

fn epipoles_typed<T: DocScalar>(t: &FundamentalTriple<T>, tol: f64) -> Outcome {
    let t = if T::EXACT { t.clone() } else { t.unit_normalized().0 };
    let e = match epipoles(&t, tol) {
        Ok(e) => e,
        Err(err) => return Outcome::error(&err, EXIT_INAPPLICABLE),
    };
    let lines = match line_membership_check(&t, &e, tol) {
        Ok(l) => l,
        Err(err) => return Outcome::error(&err, EXIT_INAPPLICABLE),
    };
    let names = ["e12", "e13", "e21", "e23", "e31", "e32"];
    let report = EpipoleReport {
        field: T::KIND,
        tol,
        epipoles: names.iter().zip(e.all()).map(|(n, v)| (n.to_string(), v.0.each_ref().map(|x| x.to_number()))).collect(),
        distinct: e.distinct_count(tol),
        status: collinearity_status(&e, tol),
        triangulation_residuals: triangulation_residuals(&t, &e).each_ref().map(|x| x.to_number()),
        line_membership: LINE_RELATIONS
            .iter()
            .zip(lines)
            .map(|(&(i, j, k), holds)| LineRelation { i, j, k, holds })
            .collect(),
        hz: hz_compatible(&t, tol),
    };
    Outcome::json(&report, EXIT_OK)
}

/// Epipoles and epipole diagnostics of the triple in `input`.
pub fn cmd_epipoles(input: &Path, tol: f64) -> Outcome {
    match load(input) {
        Err(o) => o,
        Ok((_, AnyTriple::Rational(t))) => epipoles_typed(&t, tol),
        Ok((_, AnyTriple::Complex(t))) => epipoles_typed(&t, tol),
    }
}

fn megarank_typed<T: M6Extract + DocScalar>(t: &FundamentalTriple<T>, scales: [T; 3]) -> Outcome {
    let t = match t.rescale(&scales) {
        Ok(t) => t,
        Err(e) => return Outcome::error(&e, EXIT_USAGE),
    };
    let t = if T::EXACT { t } else { t.unit_normalized().0 };
    let rows = t.mega_matrix().rows();
    let (rank, relative) = if T::EXACT {
        (exact_rank(&rows), None)
    } else {
        let sv = dense::singular_values(&dense::to_dmatrix(&rows));
        let top = sv.first().copied().unwrap_or(0.0);
        let rel = sv.iter().map(|s| if top > 0.0 { s / top } else { 0.0 }).collect();
        (numeric_rank(&rows, DEFAULT_RANK_TOL), Some(rel))
    };
    let report = ConstraintReport::evaluate(&t, &[ConstraintFamily::Septics], DEFAULT_TOL);
    let pairs = enumerate_septic_indices();
    let values = report.residuals(ConstraintFamily::Septics);
    let hits = report
        .nonzero_indices(ConstraintFamily::Septics)
        .into_iter()
        .map(|index| SepticHit { index, pair: pairs[index], value: values[index].to_number() })
        .collect();
    let doc = MegaRankReport {
        field: T::KIND,
        scales: scales.each_ref().map(|s| s.to_number()),
        rank,
        rank_at_most_6: rank <= 6,
        relative_singular_values: relative,
        septics: report.summaries().remove(0),
        nonzero_septics: hits,
    };
    Outcome::json(&doc, if rank <= 6 { EXIT_OK } else { EXIT_FAIL })
}

fn parse_scales<T: DocScalar>(raw: Option<&[String]>) -> Result<[T; 3]> {
    let Some(raw) = raw else { return Ok([T::one(), T::one(), T::one()]) };
    let [a, b, c] = raw else { return Err(Error::Document("expected three scales".into())) };
    let parse = |s: &String| match s.parse::<f64>() {
        Ok(x) if !T::EXACT => Ok(T::from_f64(x)),
        _ => T::from_number(&Number::Exact(s.clone())),
    };
    let scales = [parse(a)?, parse(b)?, parse(c)?];
    if scales.iter().any(|s| s.is_zero()) {
        return Err(Error::ZeroScale);
    }
    Ok(scales)
}

/// Rank of the rescaled 9x9 block matrix of the triple in `input`.
pub fn cmd_megarank(input: &Path, scales: Option<&[String]>) -> Outcome {
    match load(input) {
        Err(o) => o,
        Ok((_, AnyTriple::Rational(t))) => match parse_scales::<BigRational>(scales) {
            Ok(s) => megarank_typed(&t, s),
            Err(e) => Outcome::error(&e, EXIT_USAGE),
        },
        Ok((_, AnyTriple::Complex(t))) => match parse_scales::<Complex64>(scales) {
            Ok(s) => megarank_typed(&t, s),
            Err(e) => Outcome::error(&e, EXIT_USAGE),
        },
    }
}

/// Run the discovery pipeline; print the report and optionally write it.
pub fn cmd_discover(config: Option<&Path>, output: Option<&Path>) -> Outcome {
    let (cfg, defaults_used) = match config {
        None => (DiscoveryConfig::default(), true),
        Some(path) => {
            let parsed = std::fs::read_to_string(path)
                .map_err(Error::from)
                .and_then(|s| serde_json::from_str::<DiscoveryConfig>(&s).map_err(Error::from));
            match parsed {
                Ok(c) => (c, false),
                Err(e) => return Outcome::error(&e, EXIT_USAGE),
            }
        }
    };
    let mut report = match run_discovery(&cfg) {
        Ok(d) => d.report,
        Err(e) => return Outcome::error(&e, EXIT_FAIL),
    };
    report.defaults_used = defaults_used;
    let out = Outcome::json(&report, EXIT_OK);
    if let Some(path) = output {
        if let Err(e) = std::fs::write(path, &out.stdout) {
            return Outcome::error(&Error::from(e), EXIT_USAGE);
        }
    }
    out
}

/// Print the dimension estimate for `prior`.
pub fn cmd_dim(prior: Prior, trials: usize, seed: u64) -> Outcome {
    match dimension_estimate(prior, trials, seed) {
        Ok(d) => Outcome { stdout: format!("{d}\n"), code: EXIT_OK },
        Err(e) => Outcome::error(&e, EXIT_FAIL),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arguments_parse() {
        let cli = Cli::try_parse_from(["compat", "megarank", "x.json", "--scales", "2,3,5"]).unwrap();
        match cli.command {
            Command::Megarank { scales, .. } => assert_eq!(scales.unwrap(), ["2", "3", "5"]),
            other => panic!("{other:?}"),
        }
        let cli = Cli::try_parse_from(["compat", "--threads", "2", "check", "x.json", "--mode", "E-local"]).unwrap();
        assert_eq!(cli.threads, Some(2));
        assert!(matches!(cli.command, Command::Check { mode: CheckMode::ELocal, .. }));
    }

    #[test]
    fn invalid_prior_is_a_usage_error() {
        let err = Cli::try_parse_from(["compat", "sample", "--prior", "X"]).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
    }

    #[test]
    fn zero_scales_are_rejected() {
        assert!(matches!(parse_scales::<BigRational>(Some(&["0".into(), "1".into(), "2".into()])), Err(Error::ZeroScale)));
        assert_eq!(parse_scales::<BigRational>(None).unwrap(), std::array::from_fn(|_| BigRational::from_integer(1.into())));
    }
}
