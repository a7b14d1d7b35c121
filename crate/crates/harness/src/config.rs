//! Experiment configuration: one TOML file per run, strictly validated.
//!
//! The schema is versioned (`schema = "lfmo-experiment/1"`), unknown keys
//! are hard errors, and all grids are explicit lists. The master seed is
//! mandatory — either in the file or via `--seed` — so no run ever depends
//! on the wall clock. Scale resolution: desk-scale defaults, overridden by
//! the `[sampling]` section, overridden by `--paper-scale`.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use sha2::{Digest, Sha256};

use lfmo::signature::{GridDensity, Signature, SignatureFamily, StructureFunction};
use lfmo::subordinator::{JumpLaw, SubordinatorSpec};

use crate::{Error, Overrides, Result};

pub const SCHEMA_ID: &str = "lfmo-experiment/1";

/// Desk-scale defaults keep any shipped config under a few minutes;
/// `--paper-scale` switches to the publication sample sizes.
const DESK_PVALUE: (usize, usize) = (500, 50);
const PAPER_PVALUE: (usize, usize) = (1000, 1000);
const DESK_MEAN_SAMPLES: usize = 20_000;
const PAPER_MEAN_SAMPLES: usize = 100_000;
const DESK_CURVE_SAMPLES: usize = 20_000;
const PAPER_CURVE_SAMPLES: usize = 100_000;
const MTTF_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    PvalueStudy,
    MeanStudy,
    ReliabilityCurve,
    HypothesisReport,
    MttfTable,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::PvalueStudy => "pvalue-study",
            Kind::MeanStudy => "mean-study",
            Kind::ReliabilityCurve => "reliability-curve",
            Kind::HypothesisReport => "hypothesis-report",
            Kind::MttfTable => "mttf-table",
        }
    }

    /// Stable discriminant mixed into every derived random stream.
    pub fn id(self) -> u8 {
        match self {
            Kind::PvalueStudy => 1,
            Kind::MeanStudy => 2,
            Kind::ReliabilityCurve => 3,
            Kind::HypothesisReport => 4,
            Kind::MttfTable => 5,
        }
    }

    fn parse(s: &str) -> Option<Kind> {
        Some(match s {
            "pvalue-study" => Kind::PvalueStudy,
            "mean-study" => Kind::MeanStudy,
            "reliability-curve" => Kind::ReliabilityCurve,
            "hypothesis-report" => Kind::HypothesisReport,
            "mttf-table" => Kind::MttfTable,
            _ => return None,
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    schema: String,
    experiment: RawExperiment,
    subordinator: Option<RawSubordinator>,
    signature: RawSignature,
    grids: RawGrids,
    sampling: Option<RawSampling>,
    hypothesis: Option<RawHypothesis>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExperiment {
    kind: String,
    seed: Option<u64>,
    output: Option<String>,
    workers: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubordinator {
    mu: Vec<f64>,
    lambda: Vec<f64>,
    jumps: Vec<RawJump>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJump {
    law: String,
    rate: Option<f64>,
    alpha: Option<f64>,
    scale: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSignature {
    family: Option<String>,
    b: Option<Vec<f64>>,
    p: Option<Vec<f64>>,
    k: Option<Vec<usize>>,
    structure_file: Option<String>,
    density_file: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrids {
    n: Option<Vec<u64>>,
    t: Option<Vec<f64>>,
    q: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSampling {
    samples: Option<usize>,
    repetitions: Option<usize>,
    limit_samples: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHypothesis {
    tolerance: Option<f64>,
}

/// One subordinator grid cell, kept with its raw parameters for the CSV.
#[derive(Debug, Clone)]
pub struct SubCell {
    pub mu: f64,
    pub lambda: f64,
    pub law: JumpLaw,
    pub spec: SubordinatorSpec,
}

impl SubCell {
    /// Compact self-describing rendering of the jump-law parameters.
    pub fn jump_param(&self) -> String {
        match self.law {
            JumpLaw::Uniform01 => String::new(),
            JumpLaw::Exponential { rate } => format!("rate={rate}"),
            JumpLaw::Pareto { alpha, scale } => format!("alpha={alpha};scale={scale}"),
        }
    }
}

#[derive(Debug, Clone)]
pub enum SignatureSource {
    /// Grid of family members, in config order.
    Family(Vec<SignatureFamily>),
    /// One explicit structure loaded from a truth-table file.
    Structure {
        name: String,
        signature: Signature,
        density: Option<GridDensity>,
    },
}

/// Sample sizes after scale resolution.
#[derive(Debug, Clone, Copy)]
pub struct Scale {
    pub samples: usize,
    pub repetitions: usize,
    /// Sample size for the limit-model draws (p-value reference sample and
    /// limit curve); defaults to `samples`.
    pub limit_samples: usize,
}

#[derive(Debug, Clone)]
pub struct Config {
    pub kind: Kind,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub workers: Option<usize>,
    pub config_sha256: String,
    pub cells: Vec<SubCell>,
    pub signature: SignatureSource,
    pub n_grid: Vec<usize>,
    pub t_grid: Vec<f64>,
    pub q_grid: Vec<f64>,
    pub scale: Scale,
    pub cd_tolerance: f64,
}

fn err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Config(format!("{path}: {msg}"))
}

fn require<T>(value: Option<T>, path: &str, why: &str) -> Result<T> {
    value.ok_or_else(|| err(path, format!("required {why}")))
}

fn forbid<T>(value: &Option<T>, path: &str, why: &str) -> Result<()> {
    if value.is_some() {
        return Err(err(path, format!("not applicable: {why}")));
    }
    Ok(())
}

fn jump_law(raw: &RawJump, path: &str) -> Result<JumpLaw> {
    let law = match raw.law.as_str() {
        "uniform01" => {
            forbid(&raw.rate, &format!("{path}.rate"), "uniform01 has no parameters")?;
            forbid(&raw.alpha, &format!("{path}.alpha"), "uniform01 has no parameters")?;
            forbid(&raw.scale, &format!("{path}.scale"), "uniform01 has no parameters")?;
            JumpLaw::Uniform01
        }
        "exponential" => {
            forbid(&raw.alpha, &format!("{path}.alpha"), "exponential takes only `rate`")?;
            forbid(&raw.scale, &format!("{path}.scale"), "exponential takes only `rate`")?;
            let rate = require(raw.rate, &format!("{path}.rate"), "for exponential jumps")?;
            JumpLaw::Exponential { rate }
        }
        "pareto" => {
            forbid(&raw.rate, &format!("{path}.rate"), "pareto takes `alpha` and `scale`")?;
            let alpha = require(raw.alpha, &format!("{path}.alpha"), "for pareto jumps")?;
            let scale = require(raw.scale, &format!("{path}.scale"), "for pareto jumps")?;
            JumpLaw::Pareto { alpha, scale }
        }
        other => {
            return Err(err(
                &format!("{path}.law"),
                format!("unknown jump law {other:?}; expected uniform01, exponential, or pareto"),
            ))
        }
    };
    law.validate().map_err(|e| err(path, e))?;
    Ok(law)
}

fn subordinator_cells(raw: &RawSubordinator) -> Result<Vec<SubCell>> {
    if raw.mu.is_empty() {
        return Err(err("subordinator.mu", "grid must be non-empty"));
    }
    if raw.lambda.is_empty() {
        return Err(err("subordinator.lambda", "grid must be non-empty"));
    }
    if raw.jumps.is_empty() {
        return Err(err("subordinator.jumps", "grid must be non-empty"));
    }
    let laws: Vec<JumpLaw> = raw
        .jumps
        .iter()
        .enumerate()
        .map(|(i, j)| jump_law(j, &format!("subordinator.jumps[{i}]")))
        .collect::<Result<_>>()?;
    let mut cells = Vec::new();
    for &mu in &raw.mu {
        for &lambda in &raw.lambda {
            for &law in &laws {
                let spec = SubordinatorSpec::new(mu, lambda, law)
                    .map_err(|e| err("subordinator", e))?;
                cells.push(SubCell { mu, lambda, law, spec });
            }
        }
    }
    Ok(cells)
}

fn family_grid(raw: &RawSignature) -> Result<Vec<SignatureFamily>> {
    let family = require(
        raw.family.as_deref(),
        "signature.family",
        "unless structure_file is given",
    )?;
    let check_positive = |values: &[f64], path: &str| -> Result<()> {
        if values.is_empty() {
            return Err(err(path, "grid must be non-empty"));
        }
        for &v in values {
            if !(v > 0.0 && v.is_finite()) {
                return Err(err(path, format!("values must be positive and finite, got {v}")));
            }
        }
        Ok(())
    };
    match family {
        "powerlaw" | "reversed-powerlaw" => {
            forbid(&raw.p, "signature.p", "p is for the binomial family")?;
            forbid(&raw.k, "signature.k", "k is for the kofn family")?;
            let b = require(raw.b.clone(), "signature.b", "for power-law families")?;
            check_positive(&b, "signature.b")?;
            Ok(b.into_iter()
                .map(|b| {
                    if family == "powerlaw" {
                        SignatureFamily::PowerLaw { b }
                    } else {
                        SignatureFamily::ReversedPowerLaw { b }
                    }
                })
                .collect())
        }
        "binomial" => {
            forbid(&raw.b, "signature.b", "b is for the power-law families")?;
            forbid(&raw.k, "signature.k", "k is for the kofn family")?;
            let p = require(raw.p.clone(), "signature.p", "for the binomial family")?;
            if p.is_empty() {
                return Err(err("signature.p", "grid must be non-empty"));
            }
            for &v in &p {
                if !(v > 0.0 && v < 1.0) {
                    return Err(err(
                        "signature.p",
                        format!("values must lie strictly inside (0, 1), got {v}"),
                    ));
                }
            }
            Ok(p.into_iter().map(|p| SignatureFamily::Binomial { p }).collect())
        }
        "kofn" => {
            forbid(&raw.b, "signature.b", "b is for the power-law families")?;
            forbid(&raw.p, "signature.p", "p is for the binomial family")?;
            let k = require(raw.k.clone(), "signature.k", "for the kofn family")?;
            if k.is_empty() {
                return Err(err("signature.k", "grid must be non-empty"));
            }
            for &v in &k {
                if v == 0 {
                    return Err(err("signature.k", "failure ranks start at 1"));
                }
            }
            Ok(k.into_iter().map(|k| SignatureFamily::KOutOfN { k }).collect())
        }
        other => Err(err(
            "signature.family",
            format!(
                "unknown family {other:?}; expected powerlaw, reversed-powerlaw, binomial, or kofn"
            ),
        )),
    }
}

/// Parse a density file: `x f` pairs on separate lines, `#` comments,
/// nodes running from 0 to 1.
fn parse_density(text: &str, path: &str) -> Result<GridDensity> {
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(x), Some(f), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(err(path, format!("line {}: expected `x density`", lineno + 1)));
        };
        let x: f64 = x
            .parse()
            .map_err(|_| err(path, format!("line {}: bad node {x:?}", lineno + 1)))?;
        let f: f64 = f
            .parse()
            .map_err(|_| err(path, format!("line {}: bad density {f:?}", lineno + 1)))?;
        points.push((x, f));
    }
    GridDensity::new(&points).map_err(|e| err(path, e))
}

fn signature_source(raw: &RawSignature, kind: Kind, config_dir: &Path) -> Result<SignatureSource> {
    if let Some(file) = &raw.structure_file {
        forbid(&raw.family, "signature.family", "structure_file already fixes the system")?;
        forbid(&raw.b, "signature.b", "structure_file already fixes the system")?;
        forbid(&raw.p, "signature.p", "structure_file already fixes the system")?;
        forbid(&raw.k, "signature.k", "structure_file already fixes the system")?;
        if !matches!(kind, Kind::ReliabilityCurve | Kind::MttfTable) {
            return Err(err(
                "signature.structure_file",
                format!("{} works on signature families, not explicit structures", kind.name()),
            ));
        }
        let path = config_dir.join(file);
        let text = std::fs::read_to_string(&path)
            .map_err(|e| err("signature.structure_file", format!("{}: {e}", path.display())))?;
        let structure = StructureFunction::parse_truth_table(&text)
            .map_err(|e| err("signature.structure_file", e))?;
        let signature = Signature::from_structure(&structure)
            .map_err(|e| err("signature.structure_file", e))?;
        let density = match &raw.density_file {
            Some(dfile) => {
                if kind != Kind::ReliabilityCurve {
                    return Err(err(
                        "signature.density_file",
                        "limit densities only apply to reliability-curve",
                    ));
                }
                let dpath = config_dir.join(dfile);
                let dtext = std::fs::read_to_string(&dpath).map_err(|e| {
                    err("signature.density_file", format!("{}: {e}", dpath.display()))
                })?;
                Some(parse_density(&dtext, "signature.density_file")?)
            }
            None => None,
        };
        let name = Path::new(file)
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| file.clone());
        return Ok(SignatureSource::Structure { name, signature, density });
    }
    forbid(
        &raw.density_file,
        "signature.density_file",
        "only valid together with structure_file",
    )?;
    let members = family_grid(raw)?;
    match kind {
        Kind::PvalueStudy | Kind::MeanStudy => {
            if !members.iter().all(|m| matches!(m, SignatureFamily::PowerLaw { .. })) {
                return Err(err(
                    "signature.family",
                    format!("{} requires the powerlaw family (its limit is Exp(psi(b)))", kind.name()),
                ));
            }
        }
        Kind::ReliabilityCurve => {
            if members.iter().any(|m| matches!(m, SignatureFamily::KOutOfN { .. })) {
                return Err(err(
                    "signature.family",
                    "kofn has no limit law; reliability-curve needs one",
                ));
            }
        }
        Kind::HypothesisReport | Kind::MttfTable => {}
    }
    Ok(SignatureSource::Family(members))
}

fn resolve_scale(kind: Kind, raw: Option<&RawSampling>, paper_scale: bool) -> Result<Scale> {
    if let Some(s) = raw {
        if kind != Kind::PvalueStudy {
            forbid(
                &s.repetitions,
                "sampling.repetitions",
                "repetitions only apply to pvalue-study",
            )?;
        }
        if !matches!(kind, Kind::PvalueStudy | Kind::ReliabilityCurve) {
            forbid(
                &s.limit_samples,
                "sampling.limit_samples",
                "limit samples only apply to pvalue-study and reliability-curve",
            )?;
        }
        if kind == Kind::HypothesisReport {
            forbid(&s.samples, "sampling.samples", "hypothesis-report draws no samples")?;
        }
    }
    let (desk_samples, desk_reps) = match kind {
        Kind::PvalueStudy => DESK_PVALUE,
        Kind::MeanStudy => (DESK_MEAN_SAMPLES, 1),
        Kind::ReliabilityCurve => (DESK_CURVE_SAMPLES, 1),
        Kind::MttfTable => (MTTF_SAMPLES, 1),
        Kind::HypothesisReport => (0, 1),
    };
    let (paper_samples, paper_reps) = match kind {
        Kind::PvalueStudy => PAPER_PVALUE,
        Kind::MeanStudy => (PAPER_MEAN_SAMPLES, 1),
        Kind::ReliabilityCurve => (PAPER_CURVE_SAMPLES, 1),
        Kind::MttfTable => (MTTF_SAMPLES, 1),
        Kind::HypothesisReport => (0, 1),
    };
    let mut samples = desk_samples;
    let mut repetitions = desk_reps;
    let mut limit_samples = None;
    if let Some(s) = raw {
        if let Some(v) = s.samples {
            samples = v;
        }
        if let Some(v) = s.repetitions {
            repetitions = v;
        }
        limit_samples = s.limit_samples;
    }
    if paper_scale {
        samples = paper_samples;
        repetitions = paper_reps;
        limit_samples = None;
    }
    let limit_samples = limit_samples.unwrap_or(samples);
    match kind {
        Kind::PvalueStudy => {
            if samples < 30 || limit_samples < 30 {
                return Err(err(
                    "sampling.samples",
                    "KS experiments need at least 30 draws per sample for the asymptotic p-value",
                ));
            }
            if repetitions < 2 {
                return Err(err("sampling.repetitions", "need at least 2 repetitions"));
            }
        }
        Kind::MeanStudy | Kind::ReliabilityCurve | Kind::MttfTable => {
            if samples < 2 {
                return Err(err("sampling.samples", "need at least 2 draws"));
            }
        }
        Kind::HypothesisReport => {}
    }
    Ok(Scale { samples, repetitions, limit_samples })
}

fn check_family_n(members: &[SignatureFamily], n_grid: &[usize]) -> Result<()> {
    for member in members {
        if let SignatureFamily::KOutOfN { k } = member {
            for &n in n_grid {
                if *k > n {
                    return Err(err(
                        "signature.k",
                        format!("k = {k} exceeds n = {n} in grids.n"),
                    ));
                }
            }
        }
    }
    Ok(())
}

impl Config {
    /// Parse and validate; `kind` is the CLI subcommand, which must match
    /// the `experiment.kind` recorded in the file.
    pub fn resolve(
        kind: Kind,
        text: &str,
        config_path: &Path,
        overrides: &Overrides,
    ) -> Result<Config> {
        let raw: RawConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string().trim().replace('\n', " ")))?;
        if raw.schema != SCHEMA_ID {
            return Err(err(
                "schema",
                format!("expected {SCHEMA_ID:?}, got {:?}", raw.schema),
            ));
        }
        let file_kind = Kind::parse(&raw.experiment.kind).ok_or_else(|| {
            err("experiment.kind", format!("unknown experiment kind {:?}", raw.experiment.kind))
        })?;
        if file_kind != kind {
            return Err(err(
                "experiment.kind",
                format!("config is for {}, but the {} subcommand was invoked", file_kind.name(), kind.name()),
            ));
        }
        let seed = overrides.seed.or(raw.experiment.seed).ok_or_else(|| {
            err("experiment.seed", "required; set it in the config or pass --seed (no wall-clock default)")
        })?;
        let workers = overrides.workers.or(raw.experiment.workers);
        if workers == Some(0) {
            return Err(err("experiment.workers", "must be at least 1"));
        }

        let config_dir = config_path.parent().unwrap_or(Path::new("."));
        let signature = signature_source(&raw.signature, kind, config_dir)?;

        let needs_subordinator = kind != Kind::HypothesisReport;
        let cells = match (&raw.subordinator, needs_subordinator) {
            (Some(s), true) => subordinator_cells(s)?,
            (None, true) => {
                return Err(err("subordinator", format!("required for {}", kind.name())))
            }
            (Some(_), false) => {
                return Err(err(
                    "subordinator",
                    "hypothesis-report inspects signatures only; remove this section",
                ))
            }
            (None, false) => Vec::new(),
        };

        let n_grid = match (&signature, &raw.grids.n) {
            (SignatureSource::Structure { .. }, Some(_)) => {
                return Err(err("grids.n", "structure_file fixes n; remove the grid"))
            }
            (SignatureSource::Structure { .. }, None) => Vec::new(),
            (SignatureSource::Family(_), None) => {
                return Err(err("grids.n", "required for signature families"))
            }
            (SignatureSource::Family(members), Some(raw_n)) => {
                if raw_n.is_empty() {
                    return Err(err("grids.n", "grid must be non-empty"));
                }
                let mut n_grid = Vec::with_capacity(raw_n.len());
                for &v in raw_n {
                    if v == 0 {
                        return Err(err("grids.n", "system sizes start at 1"));
                    }
                    n_grid.push(v as usize);
                }
                check_family_n(members, &n_grid)?;
                n_grid
            }
        };

        let t_grid = match (kind, &raw.grids.t) {
            (Kind::ReliabilityCurve, Some(t)) => {
                if t.is_empty() {
                    return Err(err("grids.t", "grid must be non-empty"));
                }
                for &v in t {
                    if !(v >= 0.0 && v.is_finite()) {
                        return Err(err("grids.t", format!("times must be finite and nonnegative, got {v}")));
                    }
                }
                t.clone()
            }
            (Kind::ReliabilityCurve, None) => {
                return Err(err("grids.t", "required for reliability-curve"))
            }
            (_, Some(_)) => {
                return Err(err("grids.t", format!("not applicable to {}", kind.name())))
            }
            (_, None) => Vec::new(),
        };

        let q_grid = match (kind, &raw.grids.q) {
            (Kind::HypothesisReport, Some(q)) => {
                if q.is_empty() {
                    return Err(err("grids.q", "grid must be non-empty"));
                }
                for &v in q {
                    if !(v > 0.0 && v < 1.0) {
                        return Err(err("grids.q", format!("evaluation points must lie strictly inside (0, 1), got {v}")));
                    }
                }
                q.clone()
            }
            (Kind::HypothesisReport, None) => {
                return Err(err("grids.q", "required for hypothesis-report"))
            }
            (_, Some(_)) => {
                return Err(err("grids.q", format!("not applicable to {}", kind.name())))
            }
            (_, None) => Vec::new(),
        };

        let scale = resolve_scale(kind, raw.sampling.as_ref(), overrides.paper_scale)?;

        let cd_tolerance = match (kind, &raw.hypothesis) {
            (Kind::HypothesisReport, Some(h)) => {
                let tol = h.tolerance.unwrap_or(1e-2);
                if !(tol > 0.0 && tol.is_finite()) {
                    return Err(err("hypothesis.tolerance", format!("must be positive, got {tol}")));
                }
                tol
            }
            (Kind::HypothesisReport, None) => 1e-2,
            (_, Some(_)) => {
                return Err(err("hypothesis", format!("not applicable to {}", kind.name())))
            }
            (_, None) => 1e-2,
        };

        Ok(Config {
            kind,
            seed,
            output: raw.experiment.output.map(PathBuf::from),
            workers,
            config_sha256: sha256_hex(text.as_bytes()),
            cells,
            signature,
            n_grid,
            t_grid,
            q_grid,
            scale,
            cd_tolerance,
        })
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
