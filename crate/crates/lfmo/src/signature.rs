//! Structure functions, Samaniego signatures, and failure-fraction laws.
//!
//! For a coherent system of `n` exchangeable components the signature is
//! the probability vector `s` with `s_k = P(system dies at the k-th
//! component failure)`. It separates structure from lifetimes: for any
//! exchangeable component law,
//!
//! ```text
//! P(T_sys > t) = sum_k s_k P(T_(k:n) > t).
//! ```
//!
//! `s_k` is computed from the structure function through the relative
//! counts `phi_m = (number of working configurations with m working
//! components) / C(n, m)` as `s_k = phi_(n-k+1) - phi_(n-k)`.
//!
//! The module also carries the large-system side: parametric signature
//! families, the law of the failure fraction `Q_n = K / (n + 1)`, its
//! limits on (0, 1), and the diagnostics used to decide whether a family
//! admits a density limit at all.

use rand::Rng;

use crate::error::Error;
use crate::numeric::{pascal_triangle, NeumaierSum};
use crate::Result;

/// Exhaustive enumeration cap for structure functions.
pub const MAX_STRUCTURE_COMPONENTS: usize = 25;

/// Signature weights must sum to one within this tolerance.
pub const SIGNATURE_SUM_TOLERANCE: f64 = 1e-12;

/// Grid densities must integrate to one within this tolerance.
pub const DENSITY_NORMALIZATION_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
enum StructureForm {
    Series,
    Parallel,
    /// Fails at the k-th component failure.
    KOutOfN { k: usize },
    /// Two-terminal bridge network on five edges.
    Bridge5,
    /// Explicit truth table indexed by the working-set bitmask.
    Table(Vec<bool>),
}

/// A coherent structure function on `n <= 25` components.
///
/// States are bitmasks: bit `i` set means component `i + 1` works. The
/// function should be monotone (repairs never break the system) and have no
/// irrelevant components; both properties are checked exhaustively on
/// demand via [`StructureFunction::check_monotone`] and
/// [`StructureFunction::check_relevance`].
#[derive(Debug, Clone, PartialEq)]
pub struct StructureFunction {
    n: usize,
    form: StructureForm,
}

fn check_component_count(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "structure needs at least one component".into(),
        ));
    }
    if n > MAX_STRUCTURE_COMPONENTS {
        return Err(Error::TooManyComponents {
            op: "structure enumeration",
            n,
            cap: MAX_STRUCTURE_COMPONENTS,
        });
    }
    Ok(())
}

/// Bitmask rendered with component 1 leftmost.
fn mask_to_string(mask: u32, n: usize) -> String {
    (0..n)
        .map(|i| if mask & (1 << i) != 0 { '1' } else { '0' })
        .collect()
}

impl StructureFunction {
    pub fn series(n: usize) -> Result<Self> {
        check_component_count(n)?;
        Ok(Self { n, form: StructureForm::Series })
    }

    pub fn parallel(n: usize) -> Result<Self> {
        check_component_count(n)?;
        Ok(Self { n, form: StructureForm::Parallel })
    }

    /// System that fails at the k-th component failure. `k = 1` is series,
    /// `k = n` is parallel.
    pub fn k_out_of_n(n: usize, k: usize) -> Result<Self> {
        check_component_count(n)?;
        if k == 0 || k > n {
            return Err(Error::InvalidParameter(format!(
                "failure threshold must lie in 1..={n}, got {k}"
            )));
        }
        Ok(Self { n, form: StructureForm::KOutOfN { k } })
    }

    /// The classical five-edge bridge between two terminals: edges 1 and 4
    /// form the upper path, 2 and 5 the lower path, edge 3 the crossover.
    pub fn bridge5() -> Self {
        Self { n: 5, form: StructureForm::Bridge5 }
    }

    /// Build from an explicit truth table indexed by the working-set mask.
    pub fn from_truth_table(n: usize, table: Vec<bool>) -> Result<Self> {
        check_component_count(n)?;
        if table.len() != 1usize << n {
            return Err(Error::TruthTable(format!(
                "expected {} entries for n = {n}, got {}",
                1usize << n,
                table.len()
            )));
        }
        Ok(Self { n, form: StructureForm::Table(table) })
    }

    /// Parse the plain-text truth-table format: the first non-empty line is
    /// `n`, followed by one line `bitstring value` per configuration, where
    /// the bitstring lists component 1 leftmost and `value` is `0` or `1`.
    /// Every configuration must appear exactly once; order is free.
    pub fn parse_truth_table(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::TruthTable("empty input".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::TruthTable(format!("first line must be the component count, got {header:?}")))?;
        check_component_count(n)?;
        let size = 1usize << n;
        let mut table: Vec<Option<bool>> = vec![None; size];
        for line in lines {
            let mut parts = line.split_whitespace();
            let (Some(bits), Some(value), None) = (parts.next(), parts.next(), parts.next())
            else {
                return Err(Error::TruthTable(format!(
                    "expected `bitstring value`, got {line:?}"
                )));
            };
            if bits.len() != n {
                return Err(Error::TruthTable(format!(
                    "bitstring {bits:?} must have {n} digits"
                )));
            }
            let mut mask = 0u32;
            for (i, c) in bits.chars().enumerate() {
                match c {
                    '1' => mask |= 1 << i,
                    '0' => {}
                    other => {
                        return Err(Error::TruthTable(format!(
                            "bitstring {bits:?} contains {other:?}"
                        )))
                    }
                }
            }
            let works = match value {
                "0" => false,
                "1" => true,
                other => {
                    return Err(Error::TruthTable(format!(
                        "state value must be 0 or 1, got {other:?}"
                    )))
                }
            };
            if table[mask as usize].replace(works).is_some() {
                return Err(Error::TruthTable(format!(
                    "configuration {bits:?} listed twice"
                )));
            }
        }
        let mut filled = Vec::with_capacity(size);
        for (mask, entry) in table.into_iter().enumerate() {
            match entry {
                Some(v) => filled.push(v),
                None => {
                    return Err(Error::TruthTable(format!(
                        "configuration {} missing",
                        mask_to_string(mask as u32, n)
                    )))
                }
            }
        }
        Self::from_truth_table(n, filled)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether the system works in the given configuration; bit `i` set
    /// means component `i + 1` works.
    pub fn evaluate(&self, working: u32) -> bool {
        debug_assert!(working < (1u32 << self.n) || self.n == 32);
        match &self.form {
            StructureForm::Series => working == (1u32 << self.n) - 1,
            StructureForm::Parallel => working != 0,
            // Works iff fewer than k components have failed.
            StructureForm::KOutOfN { k } => {
                working.count_ones() as usize > self.n - k
            }
            StructureForm::Bridge5 => {
                let e = |i: u32| working & (1 << i) != 0;
                (e(0) && e(3)) || (e(1) && e(4)) || (e(0) && e(2) && e(4)) || (e(1) && e(2) && e(3))
            }
            StructureForm::Table(t) => t[working as usize],
        }
    }

    /// Exhaustive monotonicity check: repairing any single component never
    /// turns a working system into a failed one. Cost is `2^n * n`.
    pub fn check_monotone(&self) -> Result<()> {
        for mask in 0..(1u32 << self.n) {
            if !self.evaluate(mask) {
                continue;
            }
            for i in 0..self.n {
                let bit = 1u32 << i;
                if mask & bit == 0 && !self.evaluate(mask | bit) {
                    return Err(Error::NotMonotone {
                        lower: mask_to_string(mask, self.n),
                        upper: mask_to_string(mask | bit, self.n),
                        component: i + 1,
                    });
                }
            }
        }
        Ok(())
    }

    /// Exhaustive check that every component matters somewhere.
    pub fn check_relevance(&self) -> Result<()> {
        for i in 0..self.n {
            let bit = 1u32 << i;
            let mut relevant = false;
            for mask in 0..(1u32 << self.n) {
                if mask & bit == 0 && self.evaluate(mask) != self.evaluate(mask | bit) {
                    relevant = true;
                    break;
                }
            }
            if !relevant {
                return Err(Error::IrrelevantComponent { component: i + 1 });
            }
        }
        Ok(())
    }

    fn is_table(&self) -> bool {
        matches!(self.form, StructureForm::Table(_))
    }
}

/// Samaniego signature: `s_k = P(system dies at the k-th component
/// failure)`. Weights are nonnegative and sum to one within 1e-12; the
/// cumulative sums are precomputed for inverse-CDF sampling.
#[derive(Debug, Clone, PartialEq)]
pub struct Signature {
    weights: Vec<f64>,
    cumulative: Vec<f64>,
}

impl Signature {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidSignature("no weights".into()));
        }
        let mut total = NeumaierSum::new();
        for (i, &w) in weights.iter().enumerate() {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidSignature(format!(
                    "weight {} at position {} must be finite and nonnegative",
                    w,
                    i + 1
                )));
            }
            total.add(w);
        }
        let sum = total.total();
        if (sum - 1.0).abs() > SIGNATURE_SUM_TOLERANCE {
            return Err(Error::InvalidSignature(format!(
                "weights sum to {sum}, expected 1 within {SIGNATURE_SUM_TOLERANCE}"
            )));
        }
        let mut cumulative = Vec::with_capacity(weights.len());
        let mut running = NeumaierSum::new();
        for &w in &weights {
            running.add(w);
            cumulative.push(running.total());
        }
        // The last cumulative value is 1 up to the tolerance; pin it so
        // inverse-CDF sampling cannot fall off the end.
        *cumulative.last_mut().expect("nonempty") = 1.0;
        Ok(Self { weights, cumulative })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Signature of a system that fails at the k-th component failure: the
    /// canonical unit vector `e_k`.
    pub fn k_out_of_n(n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSignature("no weights".into()));
        }
        if k == 0 || k > n {
            return Err(Error::InvalidParameter(format!(
                "failure threshold must lie in 1..={n}, got {k}"
            )));
        }
        let mut weights = vec![0.0; n];
        weights[k - 1] = 1.0;
        Self::new(weights)
    }

    /// Power-law family: `s_k` proportional to `(n - k + 1)^(b - 1)`. For
    /// `b = 1` this is the uniform signature; large `b` loads the early
    /// failures.
    pub fn power_law(n: usize, b: f64) -> Result<Self> {
        check_family_shape(n, b)?;
        let weights: Vec<f64> = (1..=n)
            .map(|k| ((n - k + 1) as f64).powf(b - 1.0))
            .collect();
        Self::from_unnormalized(weights)
    }

    /// Mirror image of the power-law family: `s_k` proportional to
    /// `k^(b - 1)`, loading the late failures.
    pub fn reversed_power_law(n: usize, b: f64) -> Result<Self> {
        check_family_shape(n, b)?;
        let weights: Vec<f64> = (1..=n).map(|k| (k as f64).powf(b - 1.0)).collect();
        Self::from_unnormalized(weights)
    }

    /// Binomial family: the failure index is `1 + Binomial(n - 1, p)`.
    /// Weights come from the ratio recurrence started at the mode, which
    /// stays in range for any `n`; far tails underflow to zero harmlessly.
    pub fn binomial(n: usize, p: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSignature("no weights".into()));
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "binomial parameter must lie strictly inside (0, 1), got {p}"
            )));
        }
        let m = n - 1;
        let mode = (((m + 1) as f64) * p).floor().min(m as f64) as usize;
        let mut weights = vec![0.0; n];
        weights[mode] = 1.0;
        let odds = p / (1.0 - p);
        for j in mode..m {
            weights[j + 1] = weights[j] * ((m - j) as f64 / (j + 1) as f64) * odds;
        }
        for j in (1..=mode).rev() {
            weights[j - 1] = weights[j] * (j as f64 / (m - j + 1) as f64) / odds;
        }
        Self::from_unnormalized(weights)
    }

    /// Signature of an explicit structure via exhaustive enumeration of all
    /// `2^n` configurations. Truth-table structures are first checked for
    /// monotonicity; the builtin forms are monotone by construction.
    pub fn from_structure(structure: &StructureFunction) -> Result<Self> {
        if structure.is_table() {
            structure.check_monotone()?;
        }
        let n = structure.n;
        let mut counts = vec![0u64; n + 1];
        for mask in 0..(1u64 << n) {
            let mask = mask as u32;
            if structure.evaluate(mask) {
                counts[mask.count_ones() as usize] += 1;
            }
        }
        let binom = pascal_triangle(n);
        // phi[m] = P(system works | exactly m components work).
        let phi: Vec<f64> = (0..=n).map(|m| counts[m] as f64 / binom[n][m]).collect();
        let weights: Vec<f64> = (1..=n).map(|k| phi[n - k + 1] - phi[n - k]).collect();
        Self::new(weights)
    }

    fn from_unnormalized(weights: Vec<f64>) -> Result<Self> {
        let mut total = NeumaierSum::new();
        for &w in &weights {
            total.add(w);
        }
        let sum = total.total();
        if !(sum > 0.0 && sum.is_finite()) {
            return Err(Error::InvalidSignature(format!(
                "unnormalized weights sum to {sum}"
            )));
        }
        Self::new(weights.into_iter().map(|w| w / sum).collect())
    }

    /// Draw the failure index `K` (1-based) by inverse-CDF binary search.
    pub fn sample_failure_index<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.random();
        self.cumulative.partition_point(|&c| c <= u) + 1
    }

    /// Law of the failure fraction `Q_n = K / (n + 1)` induced by this
    /// signature.
    pub fn failure_fraction_law(&self) -> FailureFractionLaw {
        FailureFractionLaw::Discrete(self.clone())
    }

    /// Normalized mass near the boundary of (0, 1):
    ///
    /// ```text
    /// (1 / sqrt(n)) * sum_k s_k / sqrt(q_k (1 - q_k)),   q_k = k / (n + 1).
    /// ```
    ///
    /// The summand blows up as `q_k` approaches 0 or 1, so the statistic
    /// vanishes along a family exactly when the failure fraction keeps its
    /// mass away from the edges fast enough; families that pin mass on a
    /// fixed index keep it of order one.
    pub fn boundary_mass_statistic(&self) -> f64 {
        let n = self.weights.len();
        let denom = (n + 1) as f64;
        let mut acc = NeumaierSum::new();
        for (i, &w) in self.weights.iter().enumerate() {
            let q = (i + 1) as f64 / denom;
            acc.add(w / (q * (1.0 - q)).sqrt());
        }
        acc.total() / (n as f64).sqrt()
    }
}

fn check_family_shape(n: usize, b: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidSignature("no weights".into()));
    }
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "shape must be positive and finite, got {b}"
        )));
    }
    Ok(())
}

/// Ratio of the power-law normalizing constant to its large-n limit:
/// `n^b / (b * sum_(i=1..n) i^(b-1))`. Tends to one as `n` grows and
/// equals one exactly at `b = 1`. The integral sandwich around the sum
/// pins the value inside `[1, 1 / (1 - n^-b)]` for `b < 1` and inside
/// `[(n / (n + 1))^b, 1]` for `b > 1`.
pub fn power_law_constant_ratio(n: usize, b: f64) -> Result<f64> {
    check_family_shape(n, b)?;
    let mut total = NeumaierSum::new();
    for i in 1..=n {
        total.add((i as f64).powf(b - 1.0));
    }
    Ok((n as f64).powf(b) / (b * total.total()))
}

/// How a signature family behaves as the system grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitBehavior {
    /// The failure fraction converges to a law with a density on (0, 1)
    /// and the scaled weights converge to it pointwise with an integrable
    /// envelope.
    DensityLimit,
    /// The failure fraction converges to a point mass; scaled weights
    /// concentrate and admit no density limit.
    PointMassLimit,
    /// The failure fraction collapses to the boundary (fixed failure
    /// index); even the boundary-mass diagnostic stays of order one.
    EdgeConcentrated,
}

impl LimitBehavior {
    pub fn name(&self) -> &'static str {
        match self {
            LimitBehavior::DensityLimit => "density-limit",
            LimitBehavior::PointMassLimit => "point-mass-limit",
            LimitBehavior::EdgeConcentrated => "edge-concentrated",
        }
    }
}

/// A parametric family of signatures indexed by the system size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SignatureFamily {
    PowerLaw { b: f64 },
    ReversedPowerLaw { b: f64 },
    Binomial { p: f64 },
    /// Fixed failure threshold independent of `n`.
    KOutOfN { k: usize },
}

impl SignatureFamily {
    pub fn signature(&self, n: usize) -> Result<Signature> {
        match *self {
            SignatureFamily::PowerLaw { b } => Signature::power_law(n, b),
            SignatureFamily::ReversedPowerLaw { b } => Signature::reversed_power_law(n, b),
            SignatureFamily::Binomial { p } => Signature::binomial(n, p),
            SignatureFamily::KOutOfN { k } => Signature::k_out_of_n(n, k),
        }
    }

    /// Density of the limiting failure fraction where one exists: the
    /// power-law family tends to beta(1, b) with density `b (1-q)^(b-1)`,
    /// its mirror image to beta(b, 1) with density `b q^(b-1)`.
    pub fn limit_density(&self, q: f64) -> Option<f64> {
        if !(q > 0.0 && q < 1.0) {
            return None;
        }
        match *self {
            SignatureFamily::PowerLaw { b } => Some(b * (1.0 - q).powf(b - 1.0)),
            SignatureFamily::ReversedPowerLaw { b } => Some(b * q.powf(b - 1.0)),
            _ => None,
        }
    }

    /// Limiting law of the failure fraction, when it lives inside (0, 1).
    pub fn limit_law(&self) -> Option<FailureFractionLaw> {
        match *self {
            SignatureFamily::PowerLaw { b } => Some(FailureFractionLaw::Beta { b }),
            SignatureFamily::ReversedPowerLaw { b } => {
                Some(FailureFractionLaw::ReversedBeta { b })
            }
            SignatureFamily::Binomial { p } => Some(FailureFractionLaw::PointMass { p }),
            SignatureFamily::KOutOfN { .. } => None,
        }
    }

    pub fn behavior(&self) -> LimitBehavior {
        match self {
            SignatureFamily::PowerLaw { .. } | SignatureFamily::ReversedPowerLaw { .. } => {
                LimitBehavior::DensityLimit
            }
            SignatureFamily::Binomial { .. } => LimitBehavior::PointMassLimit,
            SignatureFamily::KOutOfN { .. } => LimitBehavior::EdgeConcentrated,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SignatureFamily::PowerLaw { .. } => "powerlaw",
            SignatureFamily::ReversedPowerLaw { .. } => "reversed-powerlaw",
            SignatureFamily::Binomial { .. } => "binomial",
            SignatureFamily::KOutOfN { .. } => "kofn",
        }
    }

    pub fn parameter(&self) -> f64 {
        match *self {
            SignatureFamily::PowerLaw { b } | SignatureFamily::ReversedPowerLaw { b } => b,
            SignatureFamily::Binomial { p } => p,
            SignatureFamily::KOutOfN { k } => k as f64,
        }
    }
}

/// One (n, q) evaluation of the scaled signature weight `n * s_ceil(nq)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityCheckRow {
    pub n: usize,
    pub q: f64,
    pub scaled_weight: f64,
    pub limit_density: Option<f64>,
}

/// The boundary-mass statistic of the family member of size `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryStat {
    pub n: usize,
    pub statistic: f64,
}

/// Per-q digest over the n-grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySummary {
    pub q: f64,
    /// Max of the scaled weight over the grid; a domination proxy.
    pub sup_scaled_weight: f64,
    pub limit_density: Option<f64>,
    pub gap_at_largest_n: Option<f64>,
    pub within_tolerance: Option<bool>,
}

/// Report of [`density_convergence_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityCheck {
    pub tolerance: f64,
    pub boundary_stats: Vec<BoundaryStat>,
    pub rows: Vec<DensityCheckRow>,
    pub summaries: Vec<DensitySummary>,
}

/// Index `ceil(n q)` with a snap for products that are integers up to
/// floating-point noise, clamped into `1..=n`.
fn ceil_index(n: usize, q: f64) -> usize {
    let prod = n as f64 * q;
    let nearest = prod.round();
    let k = if (prod - nearest).abs() <= prod * 1e-12 && nearest >= 1.0 {
        nearest
    } else {
        prod.ceil()
    };
    (k as usize).clamp(1, n)
}

/// Evaluate, along an n-grid and a q-grid, whether the scaled signature
/// weights `n * s_ceil(nq)` of a family approach its limiting density.
/// Also reports the boundary-mass statistic per grid size and, per q, the
/// sup of the scaled weight over the grid together with the gap to the
/// density at the largest n.
pub fn density_convergence_check(
    family: &SignatureFamily,
    n_grid: &[usize],
    q_grid: &[f64],
    tolerance: f64,
) -> Result<DensityCheck> {
    if n_grid.is_empty() || q_grid.is_empty() {
        return Err(Error::InvalidParameter(
            "density convergence check needs non-empty n and q grids".into(),
        ));
    }
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    for &q in q_grid {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "evaluation points must lie strictly inside (0, 1), got {q}"
            )));
        }
    }
    let largest = *n_grid.iter().max().expect("non-empty grid");
    let mut boundary_stats = Vec::with_capacity(n_grid.len());
    let mut rows = Vec::with_capacity(n_grid.len() * q_grid.len());
    let mut sups = vec![f64::NEG_INFINITY; q_grid.len()];
    let mut gaps: Vec<Option<f64>> = vec![None; q_grid.len()];
    for &n in n_grid {
        let sig = family.signature(n)?;
        boundary_stats.push(BoundaryStat {
            n,
            statistic: sig.boundary_mass_statistic(),
        });
        for (qi, &q) in q_grid.iter().enumerate() {
            let k = ceil_index(n, q);
            let scaled = n as f64 * sig.weights()[k - 1];
            let limit = family.limit_density(q);
            sups[qi] = sups[qi].max(scaled);
            if n == largest {
                gaps[qi] = limit.map(|f| (scaled - f).abs());
            }
            rows.push(DensityCheckRow {
                n,
                q,
                scaled_weight: scaled,
                limit_density: limit,
            });
        }
    }
    let summaries = q_grid
        .iter()
        .enumerate()
        .map(|(qi, &q)| DensitySummary {
            q,
            sup_scaled_weight: sups[qi],
            limit_density: family.limit_density(q),
            gap_at_largest_n: gaps[qi],
            within_tolerance: gaps[qi].map(|g| g <= tolerance),
        })
        .collect();
    Ok(DensityCheck {
        tolerance,
        boundary_stats,
        rows,
        summaries,
    })
}

/// Law of a failure fraction on (0, 1): either the discrete law
/// `Q_n = K / (n + 1)` of a finite signature, or one of the limit laws.
/// Samples never land on 0 or 1; boundary draws are rejected and redrawn.
#[derive(Debug, Clone, PartialEq)]
pub enum FailureFractionLaw {
    /// `Q_n` for a concrete signature.
    Discrete(Signature),
    /// beta(1, b), density `b (1 - q)^(b - 1)`.
    Beta { b: f64 },
    /// beta(b, 1), density `b q^(b - 1)`.
    ReversedBeta { b: f64 },
    /// Degenerate law at `p`.
    PointMass { p: f64 },
    /// Piecewise-linear density given on a grid.
    Grid(GridDensity),
}

impl FailureFractionLaw {
    pub fn beta(b: f64) -> Result<Self> {
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "beta shape must be positive and finite, got {b}"
            )));
        }
        Ok(FailureFractionLaw::Beta { b })
    }

    pub fn reversed_beta(b: f64) -> Result<Self> {
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "beta shape must be positive and finite, got {b}"
            )));
        }
        Ok(FailureFractionLaw::ReversedBeta { b })
    }

    pub fn point_mass(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "point mass must lie strictly inside (0, 1), got {p}"
            )));
        }
        Ok(FailureFractionLaw::PointMass { p })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FailureFractionLaw::Discrete(_) => Ok(()),
            FailureFractionLaw::Beta { b } => Self::beta(*b).map(|_| ()),
            FailureFractionLaw::ReversedBeta { b } => Self::reversed_beta(*b).map(|_| ()),
            FailureFractionLaw::PointMass { p } => Self::point_mass(*p).map(|_| ()),
            FailureFractionLaw::Grid(_) => Ok(()),
        }
    }

    /// Density where the law has one.
    pub fn density(&self, q: f64) -> Option<f64> {
        match self {
            FailureFractionLaw::Beta { b } => {
                (q > 0.0 && q < 1.0).then(|| b * (1.0 - q).powf(b - 1.0))
            }
            FailureFractionLaw::ReversedBeta { b } => {
                (q > 0.0 && q < 1.0).then(|| b * q.powf(b - 1.0))
            }
            FailureFractionLaw::Grid(g) => Some(g.density(q)),
            _ => None,
        }
    }

    /// Draw a fraction strictly inside (0, 1).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            FailureFractionLaw::Discrete(sig) => {
                let k = sig.sample_failure_index(rng);
                k as f64 / (sig.n() as f64 + 1.0)
            }
            FailureFractionLaw::Beta { b } => loop {
                let u: f64 = rng.random();
                // Inverse CDF of beta(1, b): q = 1 - (1 - u)^(1/b).
                let q = -((-u).ln_1p() / b).exp_m1();
                if q > 0.0 && q < 1.0 {
                    return q;
                }
            },
            FailureFractionLaw::ReversedBeta { b } => loop {
                let u: f64 = rng.random();
                // Inverse CDF of beta(b, 1): q = u^(1/b).
                let q = (u.ln() / b).exp();
                if q > 0.0 && q < 1.0 {
                    return q;
                }
            },
            FailureFractionLaw::PointMass { p } => *p,
            FailureFractionLaw::Grid(g) => loop {
                let q = g.sample_raw(rng);
                if q > 0.0 && q < 1.0 {
                    return q;
                }
            },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FailureFractionLaw::Discrete(_) => "discrete",
            FailureFractionLaw::Beta { .. } => "beta",
            FailureFractionLaw::ReversedBeta { .. } => "reversed-beta",
            FailureFractionLaw::PointMass { .. } => "point-mass",
            FailureFractionLaw::Grid(_) => "grid",
        }
    }
}

/// Piecewise-linear density on [0, 1] given by grid nodes. The raw values
/// must integrate to one within 1e-8 (trapezoid rule); sampling uses the
/// exact piecewise CDF.
#[derive(Debug, Clone, PartialEq)]
pub struct GridDensity {
    q: Vec<f64>,
    f: Vec<f64>,
    /// Normalized CDF at the nodes; starts at 0, pinned to 1 at the end.
    cdf: Vec<f64>,
    integral: f64,
}

impl GridDensity {
    pub fn new(points: &[(f64, f64)]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidParameter(
                "grid density needs at least two nodes".into(),
            ));
        }
        if points[0].0 != 0.0 || points[points.len() - 1].0 != 1.0 {
            return Err(Error::InvalidParameter(
                "grid density must cover [0, 1] from the first to the last node".into(),
            ));
        }
        for w in points.windows(2) {
            if !(w[0].0 < w[1].0 && w[1].0.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "grid nodes must increase strictly, got {} then {}",
                    w[0].0, w[1].0
                )));
            }
        }
        for &(_, f) in points {
            if !(f >= 0.0 && f.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "density values must be finite and nonnegative, got {f}"
                )));
            }
        }
        let mut area = NeumaierSum::new();
        let mut cdf = Vec::with_capacity(points.len());
        cdf.push(0.0);
        for w in points.windows(2) {
            area.add(0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0));
            cdf.push(area.total());
        }
        let integral = area.total();
        if (integral - 1.0).abs() > DENSITY_NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized {
                integral,
                tolerance: DENSITY_NORMALIZATION_TOLERANCE,
            });
        }
        for c in cdf.iter_mut() {
            *c /= integral;
        }
        *cdf.last_mut().expect("nonempty") = 1.0;
        Ok(Self {
            q: points.iter().map(|p| p.0).collect(),
            f: points.iter().map(|p| p.1).collect(),
            cdf,
            integral,
        })
    }

    /// Linear interpolation of the raw density, zero outside [0, 1].
    pub fn density(&self, x: f64) -> f64 {
        if !(0.0..=1.0).contains(&x) {
            return 0.0;
        }
        let i = self.q.partition_point(|&v| v <= x).min(self.q.len() - 1);
        if i == 0 {
            return self.f[0];
        }
        let (q0, q1) = (self.q[i - 1], self.q[i]);
        let (f0, f1) = (self.f[i - 1], self.f[i]);
        f0 + (f1 - f0) * (x - q0) / (q1 - q0)
    }

    fn sample_raw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        let i = self.cdf.partition_point(|&c| c <= u).clamp(1, self.cdf.len() - 1);
        let (q0, q1) = (self.q[i - 1], self.q[i]);
        let (f0, f1) = (self.f[i - 1], self.f[i]);
        // Remaining area inside the segment, in raw (unnormalized) units.
        let a = (u - self.cdf[i - 1]) * self.integral;
        let slope = (f1 - f0) / (q1 - q0);
        let d = if slope.abs() < 1e-300 {
            if f0 > 0.0 {
                a / f0
            } else {
                0.0
            }
        } else {
            let disc = (f0 * f0 + 2.0 * slope * a).max(0.0);
            (disc.sqrt() - f0) / slope
        };
        (q0 + d).clamp(q0, q1)
    }
}
