//! Brute-force ground truth on finite spaces: every candidate `z` is tested
//! against every condition by direct evaluation, independently of the
//! solvers and checkers in [`crate::variational`] and [`crate::strong`].

use rand::seq::{IteratorRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{DOrder, SolverConfig};
use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::instance::{instance_hash, InstanceKey};
use crate::objective::{random_objective, Objective, ObjectiveFormula, ObjectiveParams};
use crate::space::{generate_random_qpm, Formula, GenParams, ImplicitSpace, FiniteSpace};
use crate::strong::{
    strong_conditions, strong_ekeland_georgiev, strong_ekeland_suzuki, minimizing_sequence_probe, Flavor,
    ProbeOptions, RayDomain, StrongCertificate, TraceVerdict,
};
use crate::tol;
use crate::topology::{classify_cauchy, classify_convergence, default_schedule, CauchyWitness, PointSeq, Verdict};
use crate::variational::{
    ekeland_conditions, ekeland_point, ekeland_point_prime, lsc_envelope, DistanceBound, EkelandCertificate,
};

pub const DEFAULT_CAP: usize = 64;

/// Per-point condition flags: `Some(pass)` or `None` when not applicable.
pub type Flags = [Option<bool>; 4];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub admissible: Vec<usize>,
    pub per_condition: Vec<Flags>,
    /// One string per condition over the points in index order: `1` pass, `0` fail, `-` not applicable.
    pub bitmaps: [String; 4],
    pub instance_hash: String,
}

impl OracleResult {
    fn from_flags(per_condition: Vec<Flags>, instance_hash: String) -> Self {
        let admissible =
            (0..per_condition.len()).filter(|&z| per_condition[z].iter().all(|c| *c != Some(false))).collect();
        let bitmaps = std::array::from_fn(|k| {
            per_condition
                .iter()
                .map(|flags| match flags[k] {
                    Some(true) => '1',
                    Some(false) => '0',
                    None => '-',
                })
                .collect()
        });
        OracleResult { admissible, per_condition, bitmaps, instance_hash }
    }

    pub fn is_admissible(&self, z: usize) -> bool {
        self.admissible.binary_search(&z).is_ok()
    }
}

fn check_cap(space: &FiniteSpace, f: &Objective, cap: usize) -> Result<()> {
    f.check_against(space)?;
    if space.len() > cap {
        return Err(Error::CapExceeded { n: space.len(), cap });
    }
    Ok(())
}

fn start_value(space: &FiniteSpace, f: &Objective, x0: usize) -> Result<f64> {
    space.check_index(x0)?;
    f.finite(x0).ok_or_else(|| Error::NotInDomain(space.id(x0).to_string()))
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{name} must be positive and finite, got {v}")))
    }
}

/// Constancy of `f` on `S_w(z)` and strictness off it.
fn sublevel_flags(space: &FiniteSpace, f: &Objective, w: f64, fz: f64, z: usize) -> (bool, bool) {
    let n = space.len();
    let mut constant = true;
    let mut strict = true;
    for y in 0..n {
        let Some(fy) = f.finite(y) else { continue };
        let inside = fy + w * space.d(y, z) <= fz + tol::MEMBERSHIP;
        if inside {
            constant &= tol::approx_eq(fy, fz);
        } else {
            strict &= fz < fy + w * space.d(y, z);
        }
    }
    (constant, strict)
}

/// Every `z` against (i)–(iv) of the plain principle with weight `ε/λ`.
pub fn oracle_ekeland_all(
    space: &FiniteSpace,
    f: &Objective,
    eps: f64,
    lambda: f64,
    x0: usize,
    cap: usize,
) -> Result<OracleResult> {
    positive("eps", eps)?;
    positive("lambda", lambda)?;
    oracle_ekeland_weighted(space, f, eps / lambda, Some(DistanceBound { eps, bound: lambda }), x0, cap)
}

/// Every `z` against (i)–(iii) with weight `w`, and (iv) when a bound is given.
/// Keys the instance like [`ekeland_point_prime`] with `λ′ = w`.
pub fn oracle_ekeland_weighted(
    space: &FiniteSpace,
    f: &Objective,
    w: f64,
    bound: Option<DistanceBound>,
    x0: usize,
    cap: usize,
) -> Result<OracleResult> {
    check_cap(space, f, cap)?;
    positive("weight", w)?;
    let fx0 = start_value(space, f, x0)?;
    let near_min = bound.filter(|b| fx0 <= b.eps + f.inf() + tol::MEMBERSHIP);
    let flags = (0..space.len())
        .into_par_iter()
        .map(|z| match f.finite(z) {
            None => [Some(false), Some(false), Some(false), near_min.map(|_| false)],
            Some(fz) => {
                let (constant, strict) = sublevel_flags(space, f, w, fz, z);
                [
                    Some(fz + w * space.d(z, x0) <= fx0 + tol::MEMBERSHIP),
                    Some(constant),
                    Some(strict),
                    near_min.map(|b| space.d(z, x0) <= b.bound + tol::MEMBERSHIP),
                ]
            }
        })
        .collect();
    let key = InstanceKey::ekeland(w, bound.map(|b| b.eps), x0);
    Ok(OracleResult::from_flags(flags, instance_hash(space, f, key)))
}

/// `true` iff no point `y` with `f(y) + γ·d = f(z)` sits at positive distance `d(y, z)`.
fn strong_min_flag(space: &FiniteSpace, f: &Objective, gamma: f64, z: usize, order: DOrder) -> bool {
    let target = f.value(z);
    (0..space.len()).all(|y| {
        let d = match order {
            DOrder::ToZ => space.d(y, z),
            DOrder::FromZ => space.d(z, y),
        };
        let on_level = match (f.value(y), target) {
            (ExtReal::Finite(fy), ExtReal::Finite(fz)) => tol::approx_eq(fy + gamma * d, fz),
            (ExtReal::PosInf, ExtReal::PosInf) => true,
            _ => false,
        };
        !on_level || space.d(y, z) <= tol::MEMBERSHIP
    })
}

/// Every `z` against (a)–(d) (Georgiev, slack `δ`) or (i)–(iv) (Suzuki, `δ` absent).
#[allow(clippy::too_many_arguments)]
pub fn oracle_strong_all(
    space: &FiniteSpace,
    f: &Objective,
    gamma: f64,
    delta: Option<f64>,
    x0: usize,
    flavor: Flavor,
    order: DOrder,
    cap: usize,
) -> Result<OracleResult> {
    check_cap(space, f, cap)?;
    positive("gamma", gamma)?;
    let slack = match (flavor, delta) {
        (Flavor::Georgiev, Some(d)) => {
            positive("delta", d)?;
            d
        }
        (Flavor::Georgiev, None) => return Err(Error::Parameter("the Georgiev flavor needs delta".into())),
        (Flavor::Suzuki, None) => 0.0,
        (Flavor::Suzuki, Some(_)) => return Err(Error::Parameter("the Suzuki flavor takes no delta".into())),
    };
    let fx0 = start_value(space, f, x0)?;
    let flags = (0..space.len())
        .into_par_iter()
        .map(|z| {
            let dflag = Some(strong_min_flag(space, f, gamma, z, order));
            match f.finite(z) {
                None => [Some(false), Some(false), Some(false), dflag],
                Some(fz) => {
                    let (constant, strict) = sublevel_flags(space, f, gamma, fz, z);
                    [Some(fz + gamma * space.d(z, x0) <= fx0 + slack + tol::MEMBERSHIP), Some(constant), Some(strict), dflag]
                }
            }
        })
        .collect();
    let key = match flavor {
        Flavor::Georgiev => InstanceKey::georgiev(gamma, slack, x0),
        Flavor::Suzuki => InstanceKey::suzuki(gamma, x0),
    };
    Ok(OracleResult::from_flags(flags, instance_hash(space, f, key)))
}

/// Anything that names a point, carries condition flags and an instance hash.
pub trait Certificate {
    fn z(&self) -> usize;
    fn flags(&self) -> Flags;
    fn instance_hash(&self) -> &str;
}

impl Certificate for EkelandCertificate {
    fn z(&self) -> usize {
        self.z
    }
    fn flags(&self) -> Flags {
        EkelandCertificate::flags(self)
    }
    fn instance_hash(&self) -> &str {
        &self.instance_hash
    }
}

impl Certificate for StrongCertificate {
    fn z(&self) -> usize {
        self.z
    }
    fn flags(&self) -> Flags {
        StrongCertificate::flags(self)
    }
    fn instance_hash(&self) -> &str {
        &self.instance_hash
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub z: usize,
    pub z_admissible: bool,
    pub flags_agree: bool,
    pub certificate_flags: Flags,
    pub oracle_flags: Flags,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.z_admissible && self.flags_agree
    }
}

pub fn cross_check(cert: &impl Certificate, oracle: &OracleResult) -> Result<CrossCheck> {
    if cert.instance_hash() != oracle.instance_hash {
        return Err(Error::InstanceMismatch {
            certificate: cert.instance_hash().to_string(),
            oracle: oracle.instance_hash.clone(),
        });
    }
    let z = cert.z();
    let oracle_flags = *oracle
        .per_condition
        .get(z)
        .ok_or(Error::IndexOutOfRange { index: z, len: oracle.per_condition.len() })?;
    let certificate_flags = cert.flags();
    Ok(CrossCheck {
        z,
        z_admissible: oracle.is_admissible(z),
        flags_agree: certificate_flags == oracle_flags,
        certificate_flags,
        oracle_flags,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Simulation {
    pub sequences: usize,
    /// Sequences whose perturbed values reach `f(z)`.
    pub minimizing: usize,
    /// A minimizing sequence that stays away from `z`, as prefix and repeating tail.
    pub violation: Option<(Vec<usize>, Vec<usize>)>,
}

impl Simulation {
    pub fn condition_holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Tests the strong-minimum condition at `z` on random eventually periodic
/// sequences: a random prefix of up to 8 points, then a period of 8 drawn from
/// a random set of 1–3 points. Limits of such sequences are read off the period.
pub fn simulate_strong_condition(
    space: &FiniteSpace,
    f: &Objective,
    gamma: f64,
    z: usize,
    order: DOrder,
    sequences: usize,
    seed: u64,
) -> Result<Simulation> {
    f.check_against(space)?;
    space.check_index(z)?;
    let n = space.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = f.value(z);
    let g_hits = |y: usize| {
        let d = match order {
            DOrder::ToZ => space.d(y, z),
            DOrder::FromZ => space.d(z, y),
        };
        match (f.value(y), target) {
            (ExtReal::Finite(fy), ExtReal::Finite(fz)) => (fy + gamma * d - fz).abs() <= tol::LIMIT,
            (ExtReal::PosInf, ExtReal::PosInf) => true,
            _ => false,
        }
    };
    let mut sim = Simulation { sequences, minimizing: 0, violation: None };
    for _ in 0..sequences {
        let prefix: Vec<usize> = (0..rng.gen_range(0..=8)).map(|_| rng.gen_range(0..n)).collect();
        let size = rng.gen_range(1..=3usize.min(n));
        let support = (0..n).choose_multiple(&mut rng, size);
        let period: Vec<usize> = (0..8).map(|_| *support.choose(&mut rng).expect("nonempty")).collect();
        if !period.iter().all(|&y| g_hits(y)) {
            continue;
        }
        sim.minimizing += 1;
        if sim.violation.is_none() && period.iter().any(|&y| space.d(y, z) > tol::LIMIT) {
            sim.violation = Some((prefix, period));
        }
    }
    Ok(sim)
}

/// Instance families for [`falsify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Ekeland,
    Georgiev,
    Suzuki,
    /// Cycles through the three solver families.
    Mixed,
    /// Descriptive probes of weakened hypotheses; never yields a counterexample.
    Probe,
}

/// A random finite instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub space: FiniteSpace,
    pub f: Objective,
    pub x0: usize,
}

/// Random space of 1..=`max_n` points and a random objective, with some
/// variety in zero density and value granularity so that ties and
/// zero-distance pairs are common.
pub fn random_instance(rng: &mut ChaCha8Rng, max_n: usize) -> Result<Instance> {
    let n = rng.gen_range(1..=max_n);
    let space = generate_random_qpm(&GenParams {
        zero_prob: *[0.1, 0.3].choose(rng).expect("nonempty"),
        ..GenParams::new(n, rng.gen())
    })?;
    let coarse = rng.gen_bool(0.5);
    let params = ObjectiveParams {
        scale: if coarse { 3.0 } else { 8.0 },
        quantum: Some(if coarse { 1.0 } else { 1.0 / 16.0 }),
        ..ObjectiveParams::new(rng.gen())
    };
    let mut f = random_objective(n, &params)?;
    if rng.gen_bool(0.5) {
        f = lsc_envelope(&space, &f)?;
    }
    let x0 = *f.domain().choose(rng).expect("proper objective");
    Ok(Instance { space, f, x0 })
}

fn dyadic(rng: &mut ChaCha8Rng, max: f64) -> f64 {
    let steps = (max * 16.0) as u32;
    rng.gen_range(1..=steps) as f64 / 16.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub instance: usize,
    pub family: Family,
    pub kind: String,
    pub detail: String,
    pub x0: usize,
    pub params: Vec<(String, f64)>,
    pub points: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
    pub objective: Vec<ExtReal>,
    pub z: Option<usize>,
    pub checker_flags: Option<Flags>,
    pub oracle_flags: Option<Flags>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RaySummary {
    pub space: Formula,
    pub objective: ObjectiveFormula,
    /// Traces that minimize the objective while staying away from the origin.
    pub diverging: usize,
    pub trials: usize,
}

/// An eventually periodic sequence with a `d`-limit that is not left K-Cauchy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergentNotLeftCauchy {
    pub instance: usize,
    pub points: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
    pub sequence: Vec<String>,
    pub limit: String,
    pub witness: CauchyWitness,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeSummary {
    pub rays: Vec<RaySummary>,
    /// First hit of the search for `d`-convergent sequences that are not left K-Cauchy.
    pub convergent_not_left_cauchy: Option<ConvergentNotLeftCauchy>,
    pub convergence_instances: usize,
    /// Random finite instances whose Suzuki point fails the strong-minimum
    /// condition read with `d(z, x_n)`.
    pub from_z_failures: usize,
    pub from_z_instances: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FalsifyReport {
    pub family: Family,
    pub budget: usize,
    pub seed: u64,
    pub config: SolverConfig,
    pub instances_checked: usize,
    pub counterexample: Option<Counterexample>,
    pub probe: Option<ProbeSummary>,
}

const FALSIFY_MAX_N: usize = 16;

struct Finding {
    kind: &'static str,
    detail: String,
    z: Option<usize>,
    checker: Option<Flags>,
    oracle: Option<Flags>,
}

impl Finding {
    fn new(kind: &'static str, detail: impl Into<String>) -> Self {
        Finding { kind, detail: detail.into(), z: None, checker: None, oracle: None }
    }
}

fn compare_all(checker: impl Fn(usize) -> Flags, oracle: &OracleResult) -> Option<Finding> {
    oracle.per_condition.iter().enumerate().find_map(|(z, &o)| {
        let c = checker(z);
        (c != o).then(|| Finding {
            kind: "checker_disagrees",
            detail: format!("condition checker and oracle disagree at z = {z}"),
            z: Some(z),
            checker: Some(c),
            oracle: Some(o),
        })
    })
}

fn from_cross(cc: CrossCheck) -> Option<Finding> {
    (!cc.passed()).then(|| Finding {
        kind: if cc.z_admissible { "flags_disagree" } else { "z_not_admissible" },
        detail: format!("certified z = {} fails the oracle cross-check", cc.z),
        z: Some(cc.z),
        checker: Some(cc.certificate_flags),
        oracle: Some(cc.oracle_flags),
    })
}

fn flags_of(cs: [crate::variational::ConditionStatus; 4]) -> Flags {
    cs.map(|c| c.flag())
}

fn check_ekeland(inst: &Instance, eps: f64, lambda: f64, cfg: &SolverConfig) -> Result<Option<Finding>> {
    let Instance { space, f, x0 } = inst;
    let oracle = oracle_ekeland_all(space, f, eps, lambda, *x0, DEFAULT_CAP)?;
    if oracle.admissible.is_empty() {
        return Ok(Some(Finding::new("empty_admissible", "no point satisfies the conditions")));
    }
    let alpha = eps / lambda;
    let bound = Some(DistanceBound { eps, bound: lambda });
    if let Some(found) = compare_all(|z| flags_of(ekeland_conditions(space, f, alpha, *x0, bound, z, cfg)), &oracle) {
        return Ok(Some(found));
    }
    let cert = ekeland_point(space, f, eps, lambda, *x0, cfg)?;
    if let Some(found) = from_cross(cross_check(&cert, &oracle)?) {
        return Ok(Some(found));
    }
    let primed = ekeland_point_prime(space, f, alpha, *x0, Some(eps), cfg)?;
    if primed.z != cert.z || primed.flags() != cert.flags() {
        return Ok(Some(Finding {
            kind: "substitution_incoherent",
            detail: format!("standard form gives z = {}, primed form gives z = {}", cert.z, primed.z),
            z: Some(primed.z),
            checker: Some(primed.flags()),
            oracle: Some(cert.flags()),
        }));
    }
    Ok(None)
}

fn check_strong(inst: &Instance, gamma: f64, delta: Option<f64>, cfg: &SolverConfig) -> Result<Option<Finding>> {
    let Instance { space, f, x0 } = inst;
    let flavor = if delta.is_some() { Flavor::Georgiev } else { Flavor::Suzuki };
    let oracle = oracle_strong_all(space, f, gamma, delta, *x0, flavor, cfg.d_order, DEFAULT_CAP)?;
    if oracle.admissible.is_empty() {
        return Ok(Some(Finding::new("empty_admissible", "no point satisfies the conditions")));
    }
    let slack = delta.unwrap_or(0.0);
    if let Some(found) = compare_all(|z| flags_of(strong_conditions(space, f, gamma, *x0, slack, z, cfg)), &oracle) {
        return Ok(Some(found));
    }
    let cert = match delta {
        Some(d) => strong_ekeland_georgiev(space, f, gamma, d, *x0, cfg)?,
        None => strong_ekeland_suzuki(space, f, gamma, *x0, cfg)?,
    };
    if let Some(g) = &cert.georgiev {
        if !g.all_hold() {
            return Ok(Some(Finding::new("construction_check_failed", format!("{g:?}"))));
        }
    }
    Ok(from_cross(cross_check(&cert, &oracle)?))
}

fn falsify_one(family: Family, k: usize, seed: u64, cfg: &SolverConfig) -> Result<Option<Counterexample>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k as u64);
    let inst = random_instance(&mut rng, FALSIFY_MAX_N)?;
    let family_k = match family {
        Family::Mixed => [Family::Ekeland, Family::Georgiev, Family::Suzuki][k % 3],
        other => other,
    };
    let mut params = vec![];
    let finding = match family_k {
        Family::Ekeland => {
            let (eps, lambda) = (dyadic(&mut rng, 5.0), dyadic(&mut rng, 5.0));
            params.extend([("eps".to_string(), eps), ("lambda".to_string(), lambda)]);
            check_ekeland(&inst, eps, lambda, cfg)?
        }
        Family::Georgiev | Family::Suzuki => {
            let gamma = if rng.gen_bool(0.5) {
                *[0.25, 0.5, 1.0, 2.0].choose(&mut rng).expect("nonempty")
            } else {
                rng.gen_range(f64::EPSILON..=3.0)
            };
            params.push(("gamma".to_string(), gamma));
            let delta = (family_k == Family::Georgiev).then(|| rng.gen_range(f64::EPSILON..=3.0));
            if let Some(d) = delta {
                params.push(("delta".to_string(), d));
            }
            check_strong(&inst, gamma, delta, cfg)?
        }
        Family::Mixed | Family::Probe => unreachable!("resolved above"),
    };
    Ok(finding.map(|fd| Counterexample {
        instance: k,
        family: family_k,
        kind: fd.kind.to_string(),
        detail: fd.detail,
        x0: inst.x0,
        params,
        points: inst.space.ids().to_vec(),
        matrix: inst.space.rows(),
        objective: inst.f.values().to_vec(),
        z: fd.z,
        checker_flags: fd.checker,
        oracle_flags: fd.oracle,
    }))
}

const SEQUENCE_LEN: usize = 40;

fn convergent_not_left_cauchy(k: usize, seed: u64) -> Result<Option<ConvergentNotLeftCauchy>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c0de);
    rng.set_stream(k as u64);
    let n = rng.gen_range(2..=8);
    let space = generate_random_qpm(&GenParams { zero_prob: *[0.1, 0.3].choose(&mut rng).expect("nonempty"), ..GenParams::new(n, rng.gen()) })?;
    let period = rng.gen_range(2..=n.min(4));
    let cycle: Vec<usize> = (0..period).map(|_| rng.gen_range(0..n)).collect();
    let lead = rng.gen_range(0..=3);
    let mut items: Vec<usize> = (0..lead).map(|_| rng.gen_range(0..n)).collect();
    items.extend(cycle.iter().cycle().take(SEQUENCE_LEN - lead));
    let seq = PointSeq::new(items.clone())?;
    let all: Vec<usize> = (0..n).collect();
    let limits = classify_convergence(&space, &seq, &all, tol::LIMIT, period)?;
    let cauchy = classify_cauchy(&space, &seq, &default_schedule())?;
    let (Some(&limit), Verdict::No) = (limits.d_limits.first(), cauchy.left) else { return Ok(None) };
    Ok(Some(ConvergentNotLeftCauchy {
        instance: k,
        points: space.ids().to_vec(),
        matrix: space.rows(),
        sequence: items.iter().map(|&i| space.id(i).to_string()).collect(),
        limit: space.id(limit).to_string(),
        witness: cauchy.left_witness.expect("a No verdict carries a witness"),
    }))
}

fn probe_summary(budget: usize, seed: u64) -> Result<ProbeSummary> {
    let mut rays = vec![];
    for formula in [Formula::Abs, Formula::Upper] {
        for objective in [ObjectiveFormula::QuadExpDecay, ObjectiveFormula::Quadratic, ObjectiveFormula::ExpDecay] {
            let dom = RayDomain { space: ImplicitSpace::new(formula, 0.0, 1.0)?, f: objective };
            let opts = ProbeOptions { seed, ..Default::default() };
            let traces = minimizing_sequence_probe(&dom, 0.0, &0.0, &opts)?;
            let diverging = traces.iter().filter(|t| matches!(t.verdict, TraceVerdict::Diverges { .. })).count();
            rays.push(RaySummary { space: formula, objective, diverging, trials: traces.len() });
        }
    }
    let from_z = SolverConfig { d_order: DOrder::FromZ, mutation: None };
    let failures = (0..budget)
        .into_par_iter()
        .map(|k| -> Result<bool> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let inst = random_instance(&mut rng, FALSIFY_MAX_N)?;
            let gamma = dyadic(&mut rng, 3.0);
            let cert = strong_ekeland_suzuki(&inst.space, &inst.f, gamma, inst.x0, &from_z)?;
            Ok(cert.cond_4.is_fail())
        })
        .collect::<Result<Vec<_>>>()?;
    let found = (0..budget)
        .into_par_iter()
        .map(|k| convergent_not_left_cauchy(k, seed))
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        })
        .transpose()?
        .flatten();
    Ok(ProbeSummary {
        rays,
        convergent_not_left_cauchy: found,
        convergence_instances: budget,
        from_z_failures: failures.iter().filter(|&&b| b).count(),
        from_z_instances: budget,
    })
}

/// Searches `budget` random instances of `family` for an instance where the
/// solver, the checkers and the oracle disagree, or where no admissible point
/// exists. Instance `k` depends only on `(seed, k)`; the reported
/// counterexample is the one with the smallest `k`.
pub fn falsify(family: Family, budget: usize, seed: u64, cfg: &SolverConfig) -> Result<FalsifyReport> {
    let mut report = FalsifyReport {
        family,
        budget,
        seed,
        config: *cfg,
        instances_checked: budget,
        counterexample: None,
        probe: None,
    };
    if family == Family::Probe {
        report.probe = Some(probe_summary(budget, seed)?);
        return Ok(report);
    }
    let found = (0..budget)
        .into_par_iter()
        .map(|k| falsify_one(family, k, seed, cfg))
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    if let Some(r) = found {
        let cx = r?.expect("only findings are kept");
        report.instances_checked = cx.instance + 1;
        report.counterexample = Some(cx);
    }
    Ok(report)
}
