//! Sublevel maps `S_α`, Picard iteration, and the Ekeland point in both
//! parametrizations.
//!
//! `S_α(x) = {y : f(y) + α·d(y, x) ≤ f(x)}`, with `S_α(x) = X` when `f(x) = ∞`.
//! Membership is decided with the additive slack [`tol::MEMBERSHIP`].

use serde::{Deserialize, Serialize};

use crate::config::{Mutation, SolverConfig};
use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::instance::{instance_hash, InstanceKey};
use crate::objective::Objective;
use crate::space::FiniteSpace;
use crate::tol;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SublevelSet {
    pub base: usize,
    pub alpha: f64,
    pub members: Vec<usize>,
}

impl SublevelSet {
    pub fn contains(&self, y: usize) -> bool {
        self.members.binary_search(&y).is_ok()
    }
}

pub(crate) fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{name} must be positive and finite, got {v}")))
    }
}

pub(crate) fn check_start(space: &FiniteSpace, f: &Objective, x0: usize) -> Result<()> {
    f.check_against(space)?;
    space.check_index(x0)?;
    if !f.in_domain(x0) {
        return Err(Error::NotInDomain(space.id(x0).to_string()));
    }
    Ok(())
}

/// `y ∈ S_α(x)`.
#[inline]
pub fn in_sublevel(space: &FiniteSpace, f: &Objective, alpha: f64, x: usize, y: usize) -> bool {
    match (f.value(x), f.value(y)) {
        (ExtReal::PosInf, _) => true,
        (_, ExtReal::PosInf) => false,
        (ExtReal::Finite(fx), ExtReal::Finite(fy)) => tol::le(fy + alpha * space.d(y, x), fx),
    }
}

fn members(space: &FiniteSpace, f: &Objective, alpha: f64, x: usize) -> Vec<usize> {
    space.points().filter(|&y| in_sublevel(space, f, alpha, x, y)).collect()
}

pub fn sublevel_set(space: &FiniteSpace, f: &Objective, alpha: f64, x: usize) -> Result<SublevelSet> {
    check_positive("alpha", alpha)?;
    f.check_against(space)?;
    space.check_index(x)?;
    Ok(SublevelSet { base: x, alpha, members: members(space, f, alpha, x) })
}

/// Outcome of one property check; a failure names the points involved.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ConditionStatus {
    Pass,
    Fail { witness: Vec<usize>, note: String },
    NotApplicable,
}

impl ConditionStatus {
    pub fn fail(witness: Vec<usize>, note: impl Into<String>) -> Self {
        ConditionStatus::Fail { witness, note: note.into() }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, ConditionStatus::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, ConditionStatus::Fail { .. })
    }

    /// `Some(pass)` for checked conditions, `None` when not applicable.
    pub fn flag(&self) -> Option<bool> {
        match self {
            ConditionStatus::Pass => Some(true),
            ConditionStatus::Fail { .. } => Some(false),
            ConditionStatus::NotApplicable => None,
        }
    }
}

/// The five properties of the sublevel map, checked for every `x ∈ dom f`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SublevelReport {
    pub alpha: f64,
    /// Whether `f` is lower semicontinuous; property (v) is only asserted then.
    pub lsc: bool,
    /// `x ∈ S_α(x)` and `S_α(x) ⊆ dom f`.
    pub contains_base: ConditionStatus,
    /// `y ∈ S_α(x) ⇒ f(y) ≤ f(x)` and `S_α(y) ⊆ S_α(x)`.
    pub nested: ConditionStatus,
    /// `y ∈ S_α(x) ∖ cl{x} ⇒ f(y) < f(x)`.
    pub strict_outside_closure: ConditionStatus,
    /// `S_α(x) ∖ cl{x} ≠ ∅ ⇒ f(x) > inf f(S_α(x))`.
    pub strict_infimum: ConditionStatus,
    /// `S_α(x)` is closed when `f` is lsc.
    pub closed: ConditionStatus,
}

impl SublevelReport {
    pub fn all(&self) -> [&ConditionStatus; 5] {
        [&self.contains_base, &self.nested, &self.strict_outside_closure, &self.strict_infimum, &self.closed]
    }

    pub fn passed(&self) -> bool {
        self.all().iter().all(|c| !c.is_fail())
    }
}

/// Lower semicontinuity on a finite space: the constant sequence at `y`
/// converges to every `w` with `d(w, y) = 0`, so lsc means `f(w) ≤ f(y)` there.
pub fn is_lsc(space: &FiniteSpace, f: &Objective) -> bool {
    space
        .points()
        .all(|w| space.points().all(|y| !tol::is_zero(space.d(w, y)) || f.value(w) <= f.value(y)))
}

/// The largest lsc minorant: `f*(w) = min{f(y) : d(w, y) = 0}`.
pub fn lsc_envelope(space: &FiniteSpace, f: &Objective) -> Result<Objective> {
    f.check_against(space)?;
    let values = space
        .points()
        .map(|w| {
            space
                .closure_points_of(w)
                .map(|y| f.value(y))
                .fold(ExtReal::PosInf, |a, b| if b < a { b } else { a })
        })
        .collect();
    Objective::new(values)
}

impl FiniteSpace {
    /// `{y : d(w, y) = 0}`: the points whose constant sequence `d`-converges to `w`.
    fn closure_points_of(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        self.points().filter(move |&y| tol::is_zero(self.d(w, y)))
    }
}

pub fn check_sublevel_properties(space: &FiniteSpace, f: &Objective, alpha: f64) -> Result<SublevelReport> {
    check_positive("alpha", alpha)?;
    f.check_against(space)?;
    let n = space.len();
    let sets: Vec<Vec<usize>> = (0..n).map(|x| members(space, f, alpha, x)).collect();
    let inset = |x: usize, y: usize| sets[x].binary_search(&y).is_ok();
    let lsc = is_lsc(space, f);

    let mut contains_base = ConditionStatus::Pass;
    let mut nested = ConditionStatus::Pass;
    let mut strict_outside_closure = ConditionStatus::Pass;
    let mut strict_infimum = ConditionStatus::Pass;
    let mut closed = if lsc { ConditionStatus::Pass } else { ConditionStatus::NotApplicable };

    for x in f.domain() {
        let fx = f.finite(x).expect("x in dom f");
        if contains_base.is_pass() {
            if !inset(x, x) {
                contains_base = ConditionStatus::fail(vec![x], "x ∉ S_α(x)");
            } else if let Some(&y) = sets[x].iter().find(|&&y| !f.in_domain(y)) {
                contains_base = ConditionStatus::fail(vec![x, y], "S_α(x) ⊄ dom f");
            }
        }
        for &y in &sets[x] {
            if nested.is_pass() {
                if f.value(y) > ExtReal::Finite(fx) {
                    nested = ConditionStatus::fail(vec![x, y], "f(y) > f(x) for y ∈ S_α(x)");
                } else if let Some(&w) = sets[y].iter().find(|&&w| !inset(x, w)) {
                    nested = ConditionStatus::fail(vec![x, y, w], "S_α(y) ⊄ S_α(x)");
                }
            }
            if strict_outside_closure.is_pass() && !tol::is_zero(space.d(y, x)) && !(f.value(y) < ExtReal::Finite(fx)) {
                strict_outside_closure = ConditionStatus::fail(vec![x, y], "f(y) ≥ f(x) for y ∈ S_α(x) ∖ cl{x}");
            }
        }
        if strict_infimum.is_pass() && sets[x].iter().any(|&y| !tol::is_zero(space.d(y, x))) && !(fx > f.inf_over(&sets[x])) {
            strict_infimum = ConditionStatus::fail(vec![x], "f(x) = inf f(S_α(x)) although S_α(x) ⊄ cl{x}");
        }
        if closed.is_pass() {
            // cl A = {w : d(w, a) = 0 for some a ∈ A}
            let leak = space
                .points()
                .filter(|&w| !inset(x, w))
                .find_map(|w| sets[x].iter().find(|&&a| tol::is_zero(space.d(w, a))).map(|&a| (w, a)));
            if let Some((w, a)) = leak {
                closed = ConditionStatus::fail(vec![x, w, a], "w ∈ cl S_α(x) ∖ S_α(x)");
            }
        }
    }

    Ok(SublevelReport { alpha, lsc, contains_base, nested, strict_outside_closure, strict_infimum, closed })
}

/// How the next Picard iterate is chosen inside `S_α(x_n)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Selection {
    /// A minimizer of `f` over `S_α(x_n)`, lowest index on ties.
    #[default]
    Exact,
    /// The lowest-index `y ∈ S_α(x_n)` with `f(y) ≤ inf f(S_α(x_n)) + 2^−n` and `f(y) < f(x_n)`.
    NearInfimal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PicardTrace {
    pub trace: Vec<usize>,
    pub z: usize,
}

const PICARD_CAP: usize = 1_000_000;

/// Runs `x_{n+1} ∈ S_α(x_n)` until the fixed-point condition
/// `f(y) = f(z) = inf f(S_α(z))` for all `y ∈ S_α(z)` holds.
///
/// Each non-terminal step strictly decreases `f`, so a finite space needs at
/// most `|dom f|` steps.
pub fn picard_sequence(
    space: &FiniteSpace,
    f: &Objective,
    alpha: f64,
    x0: usize,
    selection: Selection,
) -> Result<PicardTrace> {
    check_positive("alpha", alpha)?;
    check_start(space, f, x0)?;
    let mut trace = vec![x0];
    let mut x = x0;
    for n in 0..PICARD_CAP {
        let fx = f.finite(x).expect("iterates stay in dom f");
        let set = members(space, f, alpha, x);
        let m = f.inf_over(&set);
        if tol::approx_eq(m, fx) || m >= fx {
            return Ok(PicardTrace { trace, z: x });
        }
        let slack = 0.5f64.powi(n.min(1000) as i32);
        let next = match selection {
            Selection::Exact => set.iter().copied().find(|&y| f.finite(y) == Some(m)),
            Selection::NearInfimal => set.iter().copied().find(|&y| {
                let fy = f.finite(y).expect("S_α(x) ⊆ dom f");
                fy <= m + slack && fy < fx && !tol::approx_eq(fy, fx)
            }),
        }
        .expect("the infimum over a finite set is attained");
        trace.push(next);
        x = next;
    }
    Err(Error::Internal(format!("Picard iteration exceeded {PICARD_CAP} steps")))
}

/// Bound for condition (iv): `d(z, x0) ≤ bound` whenever `f(x0) ≤ eps + inf f`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceBound {
    pub eps: f64,
    pub bound: f64,
}

/// Evaluates conditions (i)–(iv) for a candidate `z` with perturbation weight `alpha`:
///
/// * (i) `f(z) + α·d(z, x0) ≤ f(x0)`
/// * (ii) `f(y) = f(z)` for all `y ∈ S_α(z)`
/// * (iii) `f(z) < f(x) + α·d(x, z)` for all `x ∉ S_α(z)`
/// * (iv) `d(z, x0) ≤ bound` when `f(x0) ≤ eps + inf f`
pub fn ekeland_conditions(
    space: &FiniteSpace,
    f: &Objective,
    alpha: f64,
    x0: usize,
    bound: Option<DistanceBound>,
    z: usize,
    cfg: &SolverConfig,
) -> [ConditionStatus; 4] {
    let fx0 = f.finite(x0).expect("x0 in dom f");
    let Some(fz) = f.finite(z) else {
        let out = ConditionStatus::fail(vec![z], "f(z) = ∞");
        let iv = match bound {
            Some(DistanceBound { eps, .. }) if tol::le(fx0, eps + f.inf()) => out.clone(),
            _ => ConditionStatus::NotApplicable,
        };
        return [out.clone(), out.clone(), out, iv];
    };

    let alpha_i = if cfg.mutated(Mutation::ShrinkAlpha) { alpha / 4.0 } else { alpha };
    let cond_i = if tol::le(fz + alpha_i * space.d(z, x0), fx0) {
        ConditionStatus::Pass
    } else {
        ConditionStatus::fail(vec![z, x0], "f(z) + α·d(z, x0) > f(x0)")
    };

    let flip = cfg.mutated(Mutation::FlipSublevelOrder);
    let member = |y: usize| match f.finite(y) {
        None => false,
        Some(fy) => {
            let d = if flip { space.d(z, y) } else { space.d(y, z) };
            tol::le(fy + alpha * d, fz)
        }
    };

    let cond_ii = if cfg.mutated(Mutation::SkipConditionIi) {
        ConditionStatus::Pass
    } else {
        match space.points().find(|&y| member(y) && !tol::approx_eq(f.finite(y).expect("member"), fz)) {
            Some(y) => ConditionStatus::fail(vec![y], "f(y) ≠ f(z) for y ∈ S_α(z)"),
            None => ConditionStatus::Pass,
        }
    };

    let cond_iii = match space.points().find(|&x| {
        !member(x) && f.finite(x).is_some_and(|fx| !(fz < fx + alpha * space.d(x, z)))
    }) {
        Some(x) => ConditionStatus::fail(vec![x], "f(z) ≥ f(x) + α·d(x, z) for x ∉ S_α(z)"),
        None => ConditionStatus::Pass,
    };

    let cond_iv = match bound {
        Some(DistanceBound { eps, bound }) if tol::le(fx0, eps + f.inf()) => {
            let d = if cfg.mutated(Mutation::FlipConditionIvOrder) { space.d(x0, z) } else { space.d(z, x0) };
            if tol::le(d, bound) {
                ConditionStatus::Pass
            } else {
                ConditionStatus::fail(vec![z, x0], format!("d(z, x0) = {d} > {bound}"))
            }
        }
        _ => ConditionStatus::NotApplicable,
    };

    [cond_i, cond_ii, cond_iii, cond_iv]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum EkelandParams {
    /// Weight `ε/λ`, bound `d(z, x0) ≤ λ`.
    Standard { eps: f64, lambda: f64 },
    /// Weight `λ′`, bound `d(z, x0) ≤ ε/λ′` when `ε` is given.
    Primed { lambda_prime: f64, eps: Option<f64> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EkelandCertificate {
    pub z: usize,
    pub z_id: String,
    pub x0: usize,
    pub params: EkelandParams,
    /// The perturbation weight actually used: `ε/λ` or `λ′`.
    pub alpha: f64,
    pub cond_i: ConditionStatus,
    pub cond_ii: ConditionStatus,
    pub cond_iii: ConditionStatus,
    pub cond_iv: ConditionStatus,
    pub picard_trace: Vec<usize>,
    pub instance_hash: String,
}

impl EkelandCertificate {
    pub fn conditions(&self) -> [&ConditionStatus; 4] {
        [&self.cond_i, &self.cond_ii, &self.cond_iii, &self.cond_iv]
    }

    pub fn flags(&self) -> [Option<bool>; 4] {
        self.conditions().map(ConditionStatus::flag)
    }

    pub fn all_pass(&self) -> bool {
        self.conditions().iter().all(|c| !c.is_fail())
    }
}

fn certify(
    space: &FiniteSpace,
    f: &Objective,
    alpha: f64,
    x0: usize,
    eps: Option<f64>,
    bound: Option<DistanceBound>,
    params: EkelandParams,
    cfg: &SolverConfig,
) -> Result<EkelandCertificate> {
    let PicardTrace { trace, z } = picard_sequence(space, f, alpha, x0, Selection::Exact)?;
    let [cond_i, cond_ii, cond_iii, cond_iv] = ekeland_conditions(space, f, alpha, x0, bound, z, cfg);
    Ok(EkelandCertificate {
        z,
        z_id: space.id(z).to_string(),
        x0,
        params,
        alpha,
        cond_i,
        cond_ii,
        cond_iii,
        cond_iv,
        picard_trace: trace,
        instance_hash: instance_hash(space, f, InstanceKey::ekeland(alpha, eps, x0)),
    })
}

/// Ekeland point for `ε, λ > 0`: Picard iteration with weight `ε/λ`, then
/// certification of (i)–(iv).
pub fn ekeland_point(
    space: &FiniteSpace,
    f: &Objective,
    eps: f64,
    lambda: f64,
    x0: usize,
    cfg: &SolverConfig,
) -> Result<EkelandCertificate> {
    check_positive("eps", eps)?;
    check_positive("lambda", lambda)?;
    check_start(space, f, x0)?;
    let alpha = eps / lambda;
    certify(
        space,
        f,
        alpha,
        x0,
        Some(eps),
        Some(DistanceBound { eps, bound: lambda }),
        EkelandParams::Standard { eps, lambda },
        cfg,
    )
}

/// Ekeland point for weight `λ′ > 0`; identical to [`ekeland_point`] under `λ′ = ε/λ`.
pub fn ekeland_point_prime(
    space: &FiniteSpace,
    f: &Objective,
    lambda_prime: f64,
    x0: usize,
    eps: Option<f64>,
    cfg: &SolverConfig,
) -> Result<EkelandCertificate> {
    check_positive("lambda_prime", lambda_prime)?;
    if let Some(e) = eps {
        check_positive("eps", e)?;
    }
    check_start(space, f, x0)?;
    certify(
        space,
        f,
        lambda_prime,
        x0,
        eps,
        eps.map(|e| DistanceBound { eps: e, bound: e / lambda_prime }),
        EkelandParams::Primed { lambda_prime, eps },
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    /// d(a,b)=d(b,a)=1, d(a,c)=d(c,a)=2, d(b,c)=d(c,b)=1; f = (3, 1, 0).
    pub(crate) fn three_point() -> (FiniteSpace, Objective) {
        let s = FiniteSpace::new(
            ["a", "b", "c"].map(String::from).to_vec(),
            vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 1.0], vec![2.0, 1.0, 0.0]],
        )
        .unwrap();
        (s, Objective::from_finite(&[3.0, 1.0, 0.0]).unwrap())
    }

    fn brute_sublevel(s: &FiniteSpace, f: &[f64], alpha: f64, x: usize) -> Vec<usize> {
        (0..s.len()).filter(|&y| f[y] + alpha * s.d(y, x) <= f[x]).collect()
    }

    #[test]
    fn sublevel_of_three_point_example() {
        let (s, f) = three_point();
        assert_eq!(brute_sublevel(&s, &[3.0, 1.0, 0.0], 1.0, 0), vec![0, 1, 2]);
        assert_eq!(sublevel_set(&s, &f, 1.0, 0).unwrap().members, vec![0, 1, 2]);
        let sb = sublevel_set(&s, &f, 1.0, 1).unwrap();
        assert_eq!(sb.members, brute_sublevel(&s, &[3.0, 1.0, 0.0], 1.0, 1));
        assert!(sb.members.iter().all(|&w| sublevel_set(&s, &f, 1.0, 0).unwrap().contains(w)));
    }

    #[test]
    fn sublevel_of_constant_is_closure() {
        let s = crate::space::canonical_space(crate::space::Canonical::UpperGrid { lo: 0.0, hi: 1.0, step: 0.5 }).unwrap();
        let f = Objective::constant(3, 2.0).unwrap();
        for x in 0..3 {
            assert_eq!(sublevel_set(&s, &f, 0.7, x).unwrap().members, s.closure_of_singleton(x));
        }
    }

    #[test]
    fn sublevel_of_infinite_point_is_everything() {
        let (s, _) = three_point();
        let f = Objective::new(vec![ExtReal::PosInf, ExtReal::Finite(1.0), ExtReal::Finite(0.0)]).unwrap();
        assert_eq!(sublevel_set(&s, &f, 1.0, 0).unwrap().members, vec![0, 1, 2]);
        assert_eq!(sublevel_set(&s, &f, 1.0, 1).unwrap().members, vec![1, 2]);
    }

    #[test]
    fn sublevel_parameter_errors() {
        let (s, f) = three_point();
        assert!(sublevel_set(&s, &f, 0.0, 0).is_err());
        assert!(sublevel_set(&s, &f, -1.0, 0).is_err());
        assert!(sublevel_set(&s, &f, 1.0, 7).is_err());
    }

    #[test]
    fn sublevel_properties_hold_on_example() {
        let (s, f) = three_point();
        let r = check_sublevel_properties(&s, &f, 1.0).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.lsc);
    }

    #[test]
    fn lsc_detection_on_non_t1_space() {
        let s = crate::space::canonical_space(crate::space::Canonical::UpperGrid { lo: 0.0, hi: 1.0, step: 0.5 }).unwrap();
        // d(1, 0.5) = 0, so lsc needs f(1) ≤ f(0.5).
        let f = Objective::from_finite(&[0.0, 0.0, 1.0]).unwrap();
        assert!(!is_lsc(&s, &f));
        let env = lsc_envelope(&s, &f).unwrap();
        assert!(is_lsc(&s, &env));
        assert_eq!(env.values(), &[ExtReal::Finite(0.0); 3]);
        let r = check_sublevel_properties(&s, &f, 1.0).unwrap();
        assert_eq!(r.closed, ConditionStatus::NotApplicable);
    }

    #[test]
    fn picard_on_three_point_example() {
        let (s, f) = three_point();
        let t = picard_sequence(&s, &f, 1.0, 0, Selection::Exact).unwrap();
        assert_eq!(t.z, 2);
        assert_eq!(t.trace, vec![0, 2]);
        let t = picard_sequence(&s, &f, 1.0, 0, Selection::NearInfimal).unwrap();
        assert_eq!(t.z, 2);
    }

    #[test]
    fn picard_fixed_point_at_start() {
        let (s, f) = three_point();
        let t = picard_sequence(&s, &f, 1.0, 2, Selection::Exact).unwrap();
        assert_eq!((t.trace, t.z), (vec![2], 2));
        let c = Objective::constant(3, 1.0).unwrap();
        assert_eq!(picard_sequence(&s, &c, 0.3, 1, Selection::Exact).unwrap().z, 1);
    }

    #[test]
    fn picard_rejects_start_outside_domain() {
        let (s, _) = three_point();
        let f = Objective::new(vec![ExtReal::PosInf, ExtReal::Finite(1.0), ExtReal::Finite(0.0)]).unwrap();
        assert!(matches!(picard_sequence(&s, &f, 1.0, 0, Selection::Exact), Err(Error::NotInDomain(_))));
    }

    #[test]
    fn ekeland_three_point() {
        let (s, f) = three_point();
        let cfg = SolverConfig::default();
        let c = ekeland_point(&s, &f, 1.0, 1.0, 0, &cfg).unwrap();
        assert_eq!(c.z_id, "c");
        assert!(c.cond_i.is_pass() && c.cond_ii.is_pass() && c.cond_iii.is_pass());
        // f(a) = 3 > 1 + inf f, so (iv) does not apply.
        assert_eq!(c.cond_iv, ConditionStatus::NotApplicable);

        let c = ekeland_point(&s, &f, 1.0, 1.0, 1, &cfg).unwrap();
        assert!(c.cond_iv.is_pass());
        assert!(s.d(c.z, 1) <= 1.0);
    }

    #[test]
    fn ekeland_constant_objective() {
        let (s, _) = three_point();
        let f = Objective::constant(3, 4.0).unwrap();
        let c = ekeland_point(&s, &f, 0.7, 2.5, 1, &SolverConfig::default()).unwrap();
        assert_eq!(c.z, 1);
        assert!(c.all_pass());
    }

    #[test]
    fn primed_form_matches_under_substitution() {
        let (s, f) = three_point();
        let cfg = SolverConfig::default();
        let a = ekeland_point(&s, &f, 1.0, 2.0, 0, &cfg).unwrap();
        let b = ekeland_point_prime(&s, &f, 0.5, 0, Some(1.0), &cfg).unwrap();
        assert_eq!(a.alpha, 0.5);
        assert_eq!((a.z, a.flags()), (b.z, b.flags()));
        assert_eq!(a.instance_hash, b.instance_hash);
        let p = ekeland_point_prime(&s, &f, 1.0, 1, Some(1.0), &cfg).unwrap();
        assert!(p.cond_iv.is_pass());
    }

    #[test]
    fn ekeland_parameter_errors() {
        let (s, f) = three_point();
        let cfg = SolverConfig::default();
        assert!(ekeland_point(&s, &f, 0.0, 1.0, 0, &cfg).is_err());
        assert!(ekeland_point(&s, &f, 1.0, -1.0, 0, &cfg).is_err());
        assert!(ekeland_point_prime(&s, &f, 0.0, 0, None, &cfg).is_err());
        let g = Objective::new(vec![ExtReal::PosInf, ExtReal::Finite(1.0), ExtReal::Finite(0.0)]).unwrap();
        assert!(matches!(ekeland_point(&s, &g, 1.0, 1.0, 0, &cfg), Err(Error::NotInDomain(_))));
    }

    #[test]
    fn checker_flags_a_bad_candidate() {
        let (s, f) = three_point();
        // z = a is not a fixed point: b, c ∈ S_1(a) have smaller values.
        let c = ekeland_conditions(&s, &f, 1.0, 0, None, 0, &SolverConfig::default());
        assert!(c[0].is_pass());
        assert!(c[1].is_fail());
    }
}
