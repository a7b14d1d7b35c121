//! Compound Poisson subordinators with drift.
//!
//! The driving process is
//!
//! ```text
//! L(t) = mu * t + sum of J_i over jumps i with epoch <= t,
//! ```
//!
//! where jump epochs form a Poisson process with rate `lambda` and jump
//! sizes are iid positive draws from a [`JumpLaw`]. The Laplace exponent
//!
//! ```text
//! psi(x) = mu * x + lambda * (1 - E[exp(-x J)])
//! ```
//!
//! characterises the law through `E[exp(-x L(t))] = exp(-t psi(x))`.
//!
//! Paths are nondecreasing and right continuous. First-passage times over a
//! positive barrier are sampled exactly by walking drift segments between
//! consecutive jumps; no time discretization is involved anywhere.

use rand::Rng;
use rand_distr::{Distribution, Exp, Pareto};

use crate::error::Error;
use crate::numeric::adaptive_simpson;
use crate::Result;

/// Relative tolerance of the quadrature behind the Pareto Laplace
/// transform, for which no closed form exists.
const PARETO_QUADRATURE_REL_TOL: f64 = 1e-10;

/// Law of a single jump.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JumpLaw {
    /// J ~ uniform on (0, 1).
    Uniform01,
    /// J ~ exponential with the given rate.
    Exponential { rate: f64 },
    /// J ~ Pareto with tail index `alpha` and minimum `scale`, density
    /// `alpha * scale^alpha * x^(-alpha - 1)` on `x >= scale`.
    Pareto { alpha: f64, scale: f64 },
}

impl JumpLaw {
    pub fn validate(&self) -> Result<()> {
        match *self {
            JumpLaw::Uniform01 => Ok(()),
            JumpLaw::Exponential { rate } => {
                if rate > 0.0 && rate.is_finite() {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!(
                        "exponential jump rate must be positive and finite, got {rate}"
                    )))
                }
            }
            JumpLaw::Pareto { alpha, scale } => {
                if !(alpha > 0.0 && alpha.is_finite()) {
                    Err(Error::InvalidParameter(format!(
                        "pareto tail index must be positive and finite, got {alpha}"
                    )))
                } else if !(scale > 0.0 && scale.is_finite()) {
                    Err(Error::InvalidParameter(format!(
                        "pareto scale must be positive and finite, got {scale}"
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Mean jump size, `None` when infinite (Pareto with alpha <= 1).
    pub fn mean(&self) -> Option<f64> {
        match *self {
            JumpLaw::Uniform01 => Some(0.5),
            JumpLaw::Exponential { rate } => Some(1.0 / rate),
            JumpLaw::Pareto { alpha, scale } => {
                (alpha > 1.0).then(|| alpha * scale / (alpha - 1.0))
            }
        }
    }

    /// `E[exp(-x J)]` for `x >= 0`.
    ///
    /// Closed form for uniform and exponential jumps. For Pareto jumps the
    /// integral over `[scale, inf)` is mapped onto `(0, 1]` by `u =
    /// scale / j` and evaluated with adaptive Simpson quadrature to a
    /// relative tolerance of 1e-10.
    pub fn laplace_transform(&self, x: f64) -> f64 {
        if x == 0.0 {
            return 1.0;
        }
        match *self {
            // (1 - exp(-x)) / x, stable for small x through expm1.
            JumpLaw::Uniform01 => -(-x).exp_m1() / x,
            JumpLaw::Exponential { rate } => rate / (rate + x),
            JumpLaw::Pareto { alpha, scale } => {
                let integrand = move |u: f64| {
                    if u <= 0.0 {
                        0.0
                    } else {
                        ((alpha - 1.0) * u.ln() - x * scale / u).exp()
                    }
                };
                alpha * adaptive_simpson(&integrand, 0.0, 1.0, PARETO_QUADRATURE_REL_TOL)
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            JumpLaw::Uniform01 => rng.random::<f64>(),
            JumpLaw::Exponential { rate } => {
                Exp::new(rate).expect("validated rate").sample(rng)
            }
            JumpLaw::Pareto { alpha, scale } => {
                Pareto::new(scale, alpha).expect("validated pareto").sample(rng)
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            JumpLaw::Uniform01 => "uniform01",
            JumpLaw::Exponential { .. } => "exponential",
            JumpLaw::Pareto { .. } => "pareto",
        }
    }
}

/// Parameters of a drift plus compound Poisson subordinator.
///
/// Invariants are enforced at construction: `mu >= 0`, `lambda >= 0`, not
/// both zero (otherwise the process is frozen at zero and never crosses a
/// positive barrier), and a valid jump law whenever `lambda > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubordinatorSpec {
    mu: f64,
    lambda: f64,
    jumps: JumpLaw,
}

impl SubordinatorSpec {
    pub fn new(mu: f64, lambda: f64, jumps: JumpLaw) -> Result<Self> {
        if !(mu >= 0.0 && mu.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "drift must be nonnegative and finite, got {mu}"
            )));
        }
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "jump rate must be nonnegative and finite, got {lambda}"
            )));
        }
        if mu == 0.0 && lambda == 0.0 {
            return Err(Error::DegenerateModel(
                "subordinator with no drift and no jumps never passes a positive barrier".into(),
            ));
        }
        jumps.validate()?;
        Ok(Self { mu, lambda, jumps })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn jumps(&self) -> JumpLaw {
        self.jumps
    }

    /// Laplace exponent `psi(x) = mu x + lambda (1 - E[exp(-x J)])`.
    ///
    /// Defined for `x >= 0`; `psi(0) = 0`, and `psi` is nondecreasing and
    /// concave.
    pub fn laplace_exponent(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0 && x.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "laplace exponent argument must be nonnegative and finite, got {x}"
            )));
        }
        Ok(self.mu * x + self.lambda * (1.0 - self.jumps.laplace_transform(x)))
    }

    /// Mean slope `E[L(t)] / t = mu + lambda E[J]`, `None` when the jump
    /// mean is infinite.
    pub fn mean_rate(&self) -> Option<f64> {
        if self.lambda == 0.0 {
            return Some(self.mu);
        }
        self.jumps.mean().map(|m| self.mu + self.lambda * m)
    }

    /// Sample the path restricted to `[0, horizon]`.
    pub fn sample_path<R: Rng + ?Sized>(&self, horizon: f64, rng: &mut R) -> Result<SubordinatorPath> {
        if !(horizon >= 0.0 && horizon.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "horizon must be nonnegative and finite, got {horizon}"
            )));
        }
        let mut epochs = Vec::new();
        let mut sizes = Vec::new();
        if self.lambda > 0.0 {
            let interarrival = Exp::new(self.lambda).expect("validated rate");
            let mut t = interarrival.sample(rng);
            while t <= horizon {
                epochs.push(t);
                sizes.push(self.jumps.sample(rng));
                t += interarrival.sample(rng);
            }
        }
        Ok(SubordinatorPath {
            mu: self.mu,
            horizon,
            epochs,
            sizes,
        })
    }

    /// Exact first-passage time over a strictly positive barrier:
    /// `inf { t : L(t) > barrier }`.
    ///
    /// A continuous drift crossing passes at the instant the barrier is
    /// reached; a jump landing exactly on the barrier does not pass until
    /// the path later strictly exceeds it. The spec is non-degenerate by
    /// construction, so passage happens almost surely.
    pub fn first_passage<R: Rng + ?Sized>(&self, barrier: f64, rng: &mut R) -> Result<f64> {
        if !(barrier > 0.0 && barrier.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "barrier must be positive and finite, got {barrier}"
            )));
        }
        Ok(PassageWalker::new(self, rng).passage_over(barrier))
    }
}

/// One sampled trajectory on a bounded window.
///
/// Jump epochs are strictly increasing within `[0, horizon]`; all sizes are
/// positive. The path value is right continuous in `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubordinatorPath {
    mu: f64,
    horizon: f64,
    epochs: Vec<f64>,
    sizes: Vec<f64>,
}

impl SubordinatorPath {
    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn jump_epochs(&self) -> &[f64] {
        &self.epochs
    }

    pub fn jump_sizes(&self) -> &[f64] {
        &self.sizes
    }

    /// Path value at `t in [0, horizon]`, including any jump exactly at `t`.
    pub fn value_at(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t < 0.0 || t > self.horizon {
            return Err(Error::OutsideHorizon {
                t,
                horizon: self.horizon,
            });
        }
        let upto = self.epochs.partition_point(|&e| e <= t);
        let jumped: f64 = self.sizes[..upto].iter().sum();
        Ok(self.mu * t + jumped)
    }
}

/// Lazy forward walk of one trajectory, reporting first-passage times over
/// a nondecreasing sequence of barriers. Shared by single passages and by
/// the joint lifetime sampler, which must run all components on one path.
pub(crate) struct PassageWalker<'a, R: Rng + ?Sized> {
    mu: f64,
    law: JumpLaw,
    interarrival: Option<Exp<f64>>,
    t: f64,
    value: f64,
    /// Wait from `t` until the next jump; drawn lazily, consumed on advance.
    wait: Option<f64>,
    rng: &'a mut R,
}

impl<'a, R: Rng + ?Sized> PassageWalker<'a, R> {
    pub fn new(spec: &SubordinatorSpec, rng: &'a mut R) -> Self {
        let interarrival =
            (spec.lambda > 0.0).then(|| Exp::new(spec.lambda).expect("validated rate"));
        Self {
            mu: spec.mu,
            law: spec.jumps,
            interarrival,
            t: 0.0,
            value: 0.0,
            wait: None,
            rng,
        }
    }

    /// Time at which the path first strictly exceeds `barrier`.
    ///
    /// Successive calls must pass nondecreasing barriers: the walker never
    /// rewinds. Drift crossings do not advance the internal state, so
    /// several barriers inside one inter-jump segment stay consistent.
    pub fn passage_over(&mut self, barrier: f64) -> f64 {
        loop {
            if self.value > barrier {
                // An earlier jump overshot this barrier too.
                return self.t;
            }
            let Some(interarrival) = self.interarrival else {
                // Pure drift; mu > 0 because the spec is non-degenerate.
                return self.t + (barrier - self.value) / self.mu;
            };
            let wait = match self.wait {
                Some(w) => w,
                None => {
                    let w = interarrival.sample(self.rng);
                    self.wait = Some(w);
                    w
                }
            };
            if self.mu > 0.0 {
                let hit = (barrier - self.value) / self.mu;
                if hit < wait {
                    return self.t + hit;
                }
            }
            self.t += wait;
            self.value += self.mu * wait + self.law.sample(self.rng);
            self.wait = None;
        }
    }
}
