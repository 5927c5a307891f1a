//! Strong Ekeland points: the restriction construction (Georgiev flavor),
//! the bounded-compactness flavor (Suzuki), and probes of the strong-minimum
//! condition.

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::{DOrder, Mutation, SolverConfig};
use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::instance::{instance_hash, InstanceKey};
use crate::objective::{Objective, ObjectiveFormula};
use crate::space::{FiniteSpace, ImplicitSpace, QuasiMetric, Which};
use crate::tol;
use crate::topology::{
    check_subsequence_promotion, classify_cauchy, classify_convergence, random_right_k_cauchy, schedule_for_len,
    PointSeq, Verdict,
};
use crate::variational::{
    check_positive, check_start, ekeland_point_prime, in_sublevel, ConditionStatus, EkelandCertificate,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Georgiev,
    Suzuki,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "flavor", rename_all = "lowercase")]
pub enum StrongParams {
    Georgiev { gamma: f64, delta: f64 },
    Suzuki { lambda: f64 },
}

/// Internal quantities of the restriction construction and its intermediate steps
/// they are expected to satisfy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeorgievInternals {
    /// `λ ∈ (0, 1)` with `λ/(1−λ)·(f(x0) − inf f) ≤ δ`.
    pub lambda: f64,
    /// `λ′ = (1 − λ)·γ`.
    pub lambda_prime: f64,
    /// `X0 = {y : f(y) ≤ f(x0) + δ}`.
    pub restricted_set: Vec<usize>,
    pub inf_full: f64,
    pub inf_restricted: f64,
    pub lambda_in_unit_interval: bool,
    pub slack_bound_holds: bool,
    pub lambda_prime_below_gamma: bool,
    /// `S_γ(z) ⊆ S_λ′(z)`.
    pub s_gamma_in_s_lambda_prime: bool,
    /// `S_λ′(z) ⊆ X0`.
    pub s_lambda_prime_in_x0: bool,
    /// `inf f(X0) = inf f(X)`.
    pub inf_equal: bool,
    pub z_in_x0: bool,
}

impl GeorgievInternals {
    pub fn all_hold(&self) -> bool {
        self.lambda_in_unit_interval
            && self.slack_bound_holds
            && self.lambda_prime_below_gamma
            && self.s_gamma_in_s_lambda_prime
            && self.s_lambda_prime_in_x0
            && self.inf_equal
            && self.z_in_x0
    }
}

/// Certificate of a strong Ekeland point. Conditions are (a)–(d) for the
/// Georgiev flavor and (i)–(iv) for the Suzuki flavor; the fourth is the
/// strong-minimum condition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrongCertificate {
    pub z: usize,
    pub z_id: String,
    pub x0: usize,
    pub params: StrongParams,
    pub d_order: DOrder,
    pub cond_1: ConditionStatus,
    pub cond_2: ConditionStatus,
    pub cond_3: ConditionStatus,
    pub cond_4: ConditionStatus,
    pub georgiev: Option<GeorgievInternals>,
    pub picard_trace: Vec<usize>,
    pub instance_hash: String,
}

impl StrongCertificate {
    pub fn flavor(&self) -> Flavor {
        match self.params {
            StrongParams::Georgiev { .. } => Flavor::Georgiev,
            StrongParams::Suzuki { .. } => Flavor::Suzuki,
        }
    }

    pub fn conditions(&self) -> [&ConditionStatus; 4] {
        [&self.cond_1, &self.cond_2, &self.cond_3, &self.cond_4]
    }

    pub fn flags(&self) -> [Option<bool>; 4] {
        self.conditions().map(ConditionStatus::flag)
    }

    pub fn all_pass(&self) -> bool {
        self.conditions().iter().all(|c| c.is_pass()) && self.georgiev.as_ref().is_none_or(|g| g.all_hold())
    }
}

/// Result of the finite strong-minimum check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum StrongMinCheck {
    Pass,
    Fail { witness: usize },
}

/// Finite form of the strong-minimum condition
/// `f(x_n) + γ·d(x_n, z) → f(z) ⇒ d(x_n, z) → 0`.
///
/// On a finite space a sequence of perturbed values converges to `f(z)` iff it
/// eventually stays in the level set `{y : f(y) + γ·d(y, z) = f(z)}`, so the
/// condition holds iff every point of that level set has `d(y, z) = 0`.
pub fn check_strong_min_finite(
    space: &FiniteSpace,
    f: &Objective,
    gamma: f64,
    z: usize,
    cfg: &SolverConfig,
) -> Result<StrongMinCheck> {
    if !(gamma >= 0.0 && gamma.is_finite()) {
        return Err(Error::Parameter(format!("gamma must be nonnegative, got {gamma}")));
    }
    f.check_against(space)?;
    space.check_index(z)?;
    let target = f.value(z);
    let strict = cfg.mutated(Mutation::StrictStrongMin);
    let witness = space.points().find(|&y| {
        let g = f.value(y).add(gamma * cfg.d_order.term(space.d(y, z), space.d(z, y)));
        let level = match (g, target) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => tol::approx_eq(a, b),
            (ExtReal::PosInf, ExtReal::PosInf) => true,
            _ => false,
        };
        level && if strict { y != z } else { !tol::is_zero(space.d(y, z)) }
    });
    Ok(match witness {
        Some(y) => StrongMinCheck::Fail { witness: y },
        None => StrongMinCheck::Pass,
    })
}

/// Conditions of the strong principle for a candidate `z`:
/// `f(z) + γ·d(z, x0) ≤ f(x0) + slack`, `f` constant on `S_γ(z)`,
/// `f(z) < f(x) + γ·d(x, z)` off `S_γ(z)`, and the strong-minimum condition.
pub fn strong_conditions(
    space: &FiniteSpace,
    f: &Objective,
    gamma: f64,
    x0: usize,
    slack: f64,
    z: usize,
    cfg: &SolverConfig,
) -> [ConditionStatus; 4] {
    let fx0 = f.finite(x0).expect("x0 in dom f");
    let fz = f.finite(z);
    let first = match fz {
        Some(fz) if tol::le(fz + gamma * space.d(z, x0), fx0 + slack) => ConditionStatus::Pass,
        _ => ConditionStatus::fail(vec![z, x0], "f(z) + γ·d(z, x0) > f(x0) + δ"),
    };
    // (b)/(c) are (ii)/(iii) of the plain principle with weight γ.
    let plain = match fz {
        Some(_) => crate::variational::ekeland_conditions(space, f, gamma, x0, None, z, cfg),
        None => std::array::from_fn(|_| ConditionStatus::fail(vec![z], "f(z) = ∞")),
    };
    let [_, second, third, _] = plain;
    let fourth = match check_strong_min_finite(space, f, gamma, z, cfg) {
        Ok(StrongMinCheck::Pass) => ConditionStatus::Pass,
        Ok(StrongMinCheck::Fail { witness }) => ConditionStatus::fail(
            vec![witness],
            "a constant sequence at the witness minimizes the perturbed function but stays away from z",
        ),
        Err(e) => ConditionStatus::fail(vec![z], e.to_string()),
    };
    [first, second, third, fourth]
}

fn check_gamma_delta(gamma: f64, delta: f64) -> Result<()> {
    check_positive("gamma", gamma)?;
    check_positive("delta", delta)
}

/// Strong Ekeland point via the restriction construction: restrict to
/// `X0 = {y : f(y) ≤ f(x0) + δ}`, pick `λ = δ/(δ + Δ)` with `Δ = f(x0) − inf f`
/// (or `1/2` when `Δ = 0`), solve the primed principle on `X0` with
/// `λ′ = (1 − λ)γ`, then certify (a)–(d) on the whole space.
pub fn strong_ekeland_georgiev(
    space: &FiniteSpace,
    f: &Objective,
    gamma: f64,
    delta: f64,
    x0: usize,
    cfg: &SolverConfig,
) -> Result<StrongCertificate> {
    check_gamma_delta(gamma, delta)?;
    check_start(space, f, x0)?;
    let fx0 = f.finite(x0).expect("checked");

    let restricted_set: Vec<usize> =
        space.points().filter(|&y| f.finite(y).is_some_and(|fy| tol::le(fy, fx0 + delta))).collect();
    let inf_full = f.inf();
    let inf_restricted = f.inf_over(&restricted_set);

    let gap = fx0 - inf_full;
    let lambda = if gap > 0.0 { delta / (delta + gap) } else { 0.5 };
    let lambda_prime = (1.0 - lambda) * gamma;

    let sub = space.restrict(&restricted_set)?;
    let f_sub = f.restrict(&restricted_set)?;
    let x0_local = restricted_set.binary_search(&x0).expect("x0 ∈ X0");
    let inner: EkelandCertificate = ekeland_point_prime(&sub, &f_sub, lambda_prime, x0_local, None, cfg)?;
    let z = restricted_set[inner.z];

    let s_gamma: Vec<usize> = space.points().filter(|&y| in_sublevel(space, f, gamma, z, y)).collect();
    let s_lambda_prime: Vec<usize> = space.points().filter(|&y| in_sublevel(space, f, lambda_prime, z, y)).collect();
    let in_x0 = |y: &usize| restricted_set.binary_search(y).is_ok();

    let internals = GeorgievInternals {
        lambda,
        lambda_prime,
        lambda_in_unit_interval: lambda > 0.0 && lambda < 1.0,
        slack_bound_holds: lambda / (1.0 - lambda) * gap <= delta * (1.0 + tol::EQUALITY_REL) + tol::MEMBERSHIP,
        lambda_prime_below_gamma: lambda_prime < gamma,
        s_gamma_in_s_lambda_prime: s_gamma.iter().all(|y| s_lambda_prime.contains(y)),
        s_lambda_prime_in_x0: s_lambda_prime.iter().all(in_x0),
        inf_equal: tol::approx_eq(inf_full, inf_restricted),
        z_in_x0: in_x0(&z),
        inf_full,
        inf_restricted,
        restricted_set: restricted_set.clone(),
    };

    let [cond_1, cond_2, cond_3, cond_4] = strong_conditions(space, f, gamma, x0, delta, z, cfg);
    Ok(StrongCertificate {
        z,
        z_id: space.id(z).to_string(),
        x0,
        params: StrongParams::Georgiev { gamma, delta },
        d_order: cfg.d_order,
        cond_1,
        cond_2,
        cond_3,
        cond_4,
        georgiev: Some(internals),
        picard_trace: inner.picard_trace.iter().map(|&i| restricted_set[i]).collect(),
        instance_hash: instance_hash(space, f, InstanceKey::georgiev(gamma, delta, x0)),
    })
}

/// Strong Ekeland point under the hypothesis that `d̄`-bounded sequences have
/// `dˢ`-convergent subsequences (automatic on finite spaces): the primed
/// principle with `λ′ = λ` on the whole space, then (i)–(iv).
pub fn strong_ekeland_suzuki(
    space: &FiniteSpace,
    f: &Objective,
    lambda: f64,
    x0: usize,
    cfg: &SolverConfig,
) -> Result<StrongCertificate> {
    check_positive("lambda", lambda)?;
    check_start(space, f, x0)?;
    let inner = ekeland_point_prime(space, f, lambda, x0, None, cfg)?;
    let z = inner.z;
    let [cond_1, cond_2, cond_3, cond_4] = strong_conditions(space, f, lambda, x0, 0.0, z, cfg);
    Ok(StrongCertificate {
        z,
        z_id: space.id(z).to_string(),
        x0,
        params: StrongParams::Suzuki { lambda },
        d_order: cfg.d_order,
        cond_1,
        cond_2,
        cond_3,
        cond_4,
        georgiev: None,
        picard_trace: inner.picard_trace,
        instance_hash: instance_hash(space, f, InstanceKey::suzuki(lambda, x0)),
    })
}

/// A space plus objective on which minimizing sequences can be sampled.
pub trait ProbeDomain {
    type Point: Clone + std::fmt::Debug;

    fn dist(&self, from: &Self::Point, to: &Self::Point) -> f64;
    fn value(&self, p: &Self::Point) -> ExtReal;
    fn label(&self, p: &Self::Point) -> String;

    /// A random sequence of `horizon` points, biased toward small perturbed values around `z`.
    fn sample_sequence(&self, rng: &mut ChaCha8Rng, trial: usize, horizon: usize, z: &Self::Point, gamma: f64, order: DOrder) -> Vec<Self::Point>;

    fn perturbed(&self, p: &Self::Point, z: &Self::Point, gamma: f64, order: DOrder) -> ExtReal {
        self.value(p).add(gamma * order.term(self.dist(p, z), self.dist(z, p)))
    }
}

/// A finite space with an objective.
#[derive(Clone, Copy, Debug)]
pub struct FiniteDomain<'a> {
    pub space: &'a FiniteSpace,
    pub f: &'a Objective,
}

impl ProbeDomain for FiniteDomain<'_> {
    type Point = usize;

    fn dist(&self, from: &usize, to: &usize) -> f64 {
        self.space.d(*from, *to)
    }

    fn value(&self, p: &usize) -> ExtReal {
        self.f.value(*p)
    }

    fn label(&self, p: &usize) -> String {
        self.space.id(*p).to_string()
    }

    /// Random head, then a tail cycling through 1–3 points drawn with weight
    /// `exp(−4·|g(y) − f(z)|)`.
    fn sample_sequence(&self, rng: &mut ChaCha8Rng, _trial: usize, horizon: usize, z: &usize, gamma: f64, order: DOrder) -> Vec<usize> {
        let n = self.space.len();
        let target = self.value(z).finite();
        let weights: Vec<f64> = self
            .space
            .points()
            .map(|y| match (self.perturbed(&y, z, gamma, order).finite(), target) {
                (Some(g), Some(t)) => (-4.0 * (g - t).abs()).exp().max(1e-12),
                _ => 1e-12,
            })
            .collect();
        let pick = WeightedIndex::new(&weights).expect("weights are positive");
        let tail_set: Vec<usize> = (0..rng.gen_range(1..=3.min(n))).map(|_| pick.sample(rng)).collect();
        let head = rng.gen_range(0..=horizon / 2);
        (0..horizon)
            .map(|k| if k < head { rng.gen_range(0..n) } else { *tail_set.choose(rng).expect("nonempty") })
            .collect()
    }
}

/// The sampled ray of an implicit space with a closed-form objective.
#[derive(Clone, Copy, Debug)]
pub struct RayDomain {
    pub space: ImplicitSpace,
    pub f: ObjectiveFormula,
}

impl ProbeDomain for RayDomain {
    type Point = f64;

    fn dist(&self, from: &f64, to: &f64) -> f64 {
        self.space.dist(from, to)
    }

    fn value(&self, p: &f64) -> ExtReal {
        ExtReal::Finite(self.f.eval(*p))
    }

    fn label(&self, p: &f64) -> String {
        format!("{p}")
    }

    /// Even trials escape along the ray (trial 0 is exactly `x_n = n·step`);
    /// odd trials wander and then settle at `z`.
    fn sample_sequence(&self, rng: &mut ChaCha8Rng, trial: usize, horizon: usize, z: &f64, _gamma: f64, _order: DOrder) -> Vec<f64> {
        if trial.is_multiple_of(2) {
            let mut k = 0usize;
            (0..horizon)
                .map(|_| {
                    let p = self.space.sample(k);
                    k += if trial == 0 { 1 } else { rng.gen_range(1..=3) };
                    p
                })
                .collect()
        } else {
            let settle = rng.gen_range(0..=horizon / 2);
            (0..horizon)
                .map(|k| if k < settle { self.space.sample(rng.gen_range(0..4 * horizon)) } else { *z })
                .collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum TraceVerdict {
    /// The perturbed values reach `f(z)` and `d(x_n, z) → 0` on the tail.
    ConvergesToZ,
    /// The perturbed values reach `f(z)` but `d(x_n, z)` stays away from 0.
    Diverges { index: usize, dist: f64 },
    /// The perturbed values do not reach `f(z)` on the tail; the implication is vacuous.
    NotMinimizing { index: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimizingTrace {
    pub seq: Vec<String>,
    /// `f(x_n) + γ·d(x_n, z)` (or `d(z, x_n)` with [`DOrder::FromZ`]).
    pub g_values: Vec<ExtReal>,
    /// `d(x_n, z)`.
    pub dists: Vec<f64>,
    pub verdict: TraceVerdict,
}

impl MinimizingTrace {
    /// `n,g_value,dist` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,g_value,dist\n");
        for (n, (g, d)) in self.g_values.iter().zip(&self.dists).enumerate() {
            out.push_str(&format!("{n},{g},{d}\n"));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeOptions {
    pub trials: usize,
    pub horizon: usize,
    pub seed: u64,
    pub tol: f64,
    pub d_order: DOrder,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions { trials: 32, horizon: 60, seed: 0, tol: tol::LIMIT, d_order: DOrder::ToZ }
    }
}

/// Judges one sequence: on the last quarter of the horizon, does
/// `g(x_n) ≈ f(z)` hold, and if so does `d(x_n, z) ≈ 0`?
pub fn judge_trace<D: ProbeDomain>(dom: &D, seq: &[D::Point], z: &D::Point, gamma: f64, tol: f64, order: DOrder) -> MinimizingTrace {
    let target = dom.value(z);
    let g_values: Vec<ExtReal> = seq.iter().map(|p| dom.perturbed(p, z, gamma, order)).collect();
    let dists: Vec<f64> = seq.iter().map(|p| dom.dist(p, z)).collect();
    let start = seq.len() - (seq.len() / 4).max(1);
    let off_level = (start..seq.len()).find(|&k| match (g_values[k], target) {
        (ExtReal::Finite(g), ExtReal::Finite(t)) => (g - t).abs() > tol,
        (ExtReal::PosInf, ExtReal::PosInf) => false,
        _ => true,
    });
    let verdict = match off_level {
        Some(index) => TraceVerdict::NotMinimizing { index },
        None => match (start..seq.len()).find(|&k| dists[k] > tol) {
            Some(index) => TraceVerdict::Diverges { index, dist: dists[index] },
            None => TraceVerdict::ConvergesToZ,
        },
    };
    MinimizingTrace { seq: seq.iter().map(|p| dom.label(p)).collect(), g_values, dists, verdict }
}

/// Samples `trials` sequences and judges each. Trial `t` uses a ChaCha stream
/// derived from `(seed, t)`, so trials are independent of each other's order.
pub fn minimizing_sequence_probe<D: ProbeDomain>(dom: &D, gamma: f64, z: &D::Point, opts: &ProbeOptions) -> Result<Vec<MinimizingTrace>> {
    if opts.horizon < 2 {
        return Err(Error::Parameter(format!("horizon must be at least 2, got {}", opts.horizon)));
    }
    if !(gamma >= 0.0 && gamma.is_finite()) {
        return Err(Error::Parameter(format!("gamma must be nonnegative, got {gamma}")));
    }
    Ok((0..opts.trials)
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(t as u64);
            let seq = dom.sample_sequence(&mut rng, t, opts.horizon, z, gamma, opts.d_order);
            judge_trace(dom, &seq, z, gamma, opts.tol, opts.d_order)
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Boundedness {
    /// `sup_n d̄(x_0, x_n) = sup_n d(x_n, x_0)` over the prefix.
    pub radius: f64,
    /// The same supremum over the first half of the prefix.
    pub half_radius: f64,
    /// The verdict only reflects the finite prefix (implicit spaces).
    pub prefix_only: bool,
    pub bounded: bool,
}

/// `d̄`-boundedness of a sequence prefix, anchored at its first term.
///
/// On finite spaces every sequence is bounded. Otherwise the prefix is
/// reported unbounded when the radius keeps growing: the full-prefix radius
/// exceeds 1.5 times the first-half radius.
pub fn check_dbar_bounded<S: QuasiMetric>(space: &S, seq: &PointSeq<S::Point>, finite_space: bool) -> Boundedness {
    let items = seq.items();
    let anchor = &items[0];
    let radius_upto = |k: usize| items[..k].iter().map(|p| space.dist(p, anchor)).fold(0.0, f64::max);
    let radius = radius_upto(items.len());
    let half_radius = radius_upto(items.len().div_ceil(2));
    let bounded = finite_space || !(radius > 1.5 * half_radius && radius > half_radius + tol::LIMIT);
    Boundedness { radius, half_radius, prefix_only: !finite_space, bounded }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmythFailure {
    pub trial: usize,
    pub seq: Vec<usize>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmythReport {
    pub trials: usize,
    /// Prefixes confirmed right K-Cauchy.
    pub cauchy_prefixes: usize,
    /// Of those, prefixes with a `dˢ`-limit among their recurring tail points.
    pub ds_limit_found: usize,
    pub failures: Vec<SmythFailure>,
}

impl SmythReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.ds_limit_found == self.cauchy_prefixes
    }
}

/// Empirical check that right K-Cauchy prefixes on a finite space are
/// `d̄`-bounded, have a `dˢ`-convergent subsequence (a point recurring in the
/// tail), and therefore `dˢ`-converge as a whole.
pub fn check_smyth_hypothesis(space: &FiniteSpace, trials: usize, seed: u64) -> Result<SmythReport> {
    let len = (4 * space.len()).max(48);
    let tail = len / 4;
    let mut report = SmythReport { trials, cauchy_prefixes: 0, ds_limit_found: 0, failures: vec![] };
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let seq = random_right_k_cauchy(space, &mut rng, len)?;
        let fail = |reason: String| SmythFailure { trial, seq: seq.items().to_vec(), reason };
        let cauchy = classify_cauchy(space, &seq, &schedule_for_len(len))?;
        if cauchy.right != Verdict::Yes {
            report.failures.push(fail(format!("generated prefix is not right K-Cauchy: {:?}", cauchy.right_witness)));
            continue;
        }
        report.cauchy_prefixes += 1;
        if !check_dbar_bounded(space, &seq, true).bounded {
            report.failures.push(fail("right K-Cauchy prefix is not d̄-bounded".into()));
            continue;
        }
        // A point recurring in the tail gives a constant, hence dˢ-convergent, subsequence.
        let items = seq.items();
        let window = &items[len - tail..];
        let mut counts = vec![0usize; space.len()];
        for &p in window {
            counts[p] += 1;
        }
        let best = (0..space.len()).max_by_key(|&p| (counts[p], std::cmp::Reverse(p))).expect("nonempty space");
        let positions: Vec<usize> = (0..len).filter(|&i| items[i] == best).collect();
        let promotion = check_subsequence_promotion(space, &seq, &positions, &best, Which::Symmetric, tol::LIMIT, tail)?;
        let limits = classify_convergence(space, &seq, &[best], tol::LIMIT, tail)?;
        if promotion.converges && limits.ds_limits == [best] {
            report.ds_limit_found += 1;
        } else {
            report.failures.push(fail(format!("no dˢ-limit at recurring point {best}: {promotion:?}")));
        }
    }
    Ok(report)
}
