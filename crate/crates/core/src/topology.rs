//! Convergence modes, K-Cauchy verdicts and separation classes.
//!
//! All verdicts are prefix verdicts: a "yes" means the finite evidence is
//! consistent with the definition, never a proof about the infinite sequence.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{FiniteSpace, QuasiMetric, Which};

type Generator<P> = Arc<dyn Fn(usize) -> P + Send + Sync>;

/// A finite prefix of a sequence, optionally backed by a rule `n ↦ x_n`
/// that can be evaluated beyond the prefix.
#[derive(Clone)]
pub struct PointSeq<P> {
    items: Vec<P>,
    generator: Option<Generator<P>>,
}

impl<P: fmt::Debug> fmt::Debug for PointSeq<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PointSeq")
            .field("items", &self.items)
            .field("generator", &self.generator.is_some())
            .finish()
    }
}

/// Exponent of the deepest index probed on generator-backed sequences.
const DEEP_EXPONENT: u32 = 52;

impl<P: Clone> PointSeq<P> {
    pub fn new(items: Vec<P>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::Parameter("a sequence prefix must be nonempty".into()));
        }
        Ok(PointSeq { items, generator: None })
    }

    /// The first `len` terms of `rule`, keeping `rule` for deep-tail probes.
    pub fn from_rule(len: usize, rule: impl Fn(usize) -> P + Send + Sync + 'static) -> Result<Self> {
        if len == 0 {
            return Err(Error::Parameter("a sequence prefix must be nonempty".into()));
        }
        let items = (0..len).map(&rule).collect();
        Ok(PointSeq { items, generator: Some(Arc::new(rule)) })
    }

    pub fn items(&self) -> &[P] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn has_generator(&self) -> bool {
        self.generator.is_some()
    }

    /// The points used to judge limits: the last `tail` prefix items, or for
    /// generator-backed sequences the terms at indices `2^(52−tail+1) … 2^52`.
    pub fn tail_points(&self, tail: usize) -> Result<Vec<P>> {
        if tail == 0 {
            return Err(Error::Parameter("tail must be at least 1".into()));
        }
        match &self.generator {
            Some(rule) => {
                let tail = tail.min(DEEP_EXPONENT as usize);
                Ok((0..tail).map(|k| rule(1usize << (DEEP_EXPONENT as usize - tail + 1 + k))).collect())
            }
            None => {
                if self.len() < tail {
                    return Err(Error::Precondition(format!("prefix of length {} is shorter than tail {}", self.len(), tail)));
                }
                Ok(self.items[self.len() - tail..].to_vec())
            }
        }
    }
}

/// Limit sets of a sequence prefix in the three convergence modes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitVerdict<P> {
    /// `x` with `d(x, x_n) → 0`.
    pub d_limits: Vec<P>,
    /// `x` with `d(x_n, x) → 0`.
    pub dbar_limits: Vec<P>,
    /// `x` with `dˢ(x, x_n) → 0`; always `d_limits ∩ dbar_limits`.
    pub ds_limits: Vec<P>,
}

/// Which candidates are limits of `seq`: `x` is a `d`-limit when
/// `d(x, x_n) ≤ tol` on every tail point, and analogously for `d̄` and `dˢ`.
pub fn classify_convergence<S: QuasiMetric>(
    space: &S,
    seq: &PointSeq<S::Point>,
    candidates: &[S::Point],
    tol: f64,
    tail: usize,
) -> Result<LimitVerdict<S::Point>> {
    if candidates.is_empty() {
        return Err(Error::Parameter("candidate set is empty".into()));
    }
    if !(tol >= 0.0) {
        return Err(Error::Parameter(format!("tolerance must be nonnegative, got {tol}")));
    }
    let tail = seq.tail_points(tail)?;
    let limit_in = |which: Which, x: &S::Point| tail.iter().all(|p| which.eval(space, x, p) <= tol);
    let mut verdict = LimitVerdict { d_limits: vec![], dbar_limits: vec![], ds_limits: vec![] };
    for x in candidates {
        let d = limit_in(Which::D, x);
        let dbar = limit_in(Which::Conjugate, x);
        if d {
            verdict.d_limits.push(x.clone());
        }
        if dbar {
            verdict.dbar_limits.push(x.clone());
        }
        if d && dbar {
            verdict.ds_limits.push(x.clone());
        }
    }
    Ok(verdict)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Inconclusive,
}

/// A pair `n < m` of prefix indices whose distance is at least `eps`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CauchyWitness {
    pub n: usize,
    pub m: usize,
    pub eps: f64,
    pub dist: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CauchyVerdict {
    /// `d(x_n, x_m) < ε` for `n_ε ≤ n < m`.
    pub left: Verdict,
    pub left_witness: Option<CauchyWitness>,
    /// `d(x_m, x_n) < ε` for `n_ε ≤ n < m`.
    pub right: Verdict,
    pub right_witness: Option<CauchyWitness>,
}

/// `(1/2, 1/4, …, 2^−10)`.
pub fn default_schedule() -> Vec<f64> {
    (1..=10).map(|k| 0.5f64.powi(k)).collect()
}

/// The longest prefix of [`default_schedule`] testable on a prefix of `len` terms.
pub fn schedule_for_len(len: usize) -> Vec<f64> {
    let mut s = default_schedule();
    s.truncate(len / 4);
    s
}

fn check_schedule(schedule: &[f64]) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::Parameter("ε schedule is empty".into()));
    }
    if schedule.iter().any(|&e| !(e > 0.0 && e.is_finite())) {
        return Err(Error::Parameter("ε schedule entries must be positive and finite".into()));
    }
    if schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Parameter("ε schedule must be strictly decreasing".into()));
    }
    Ok(())
}

/// `dist(n, m)` is the distance tested for the pair `n < m`.
fn cauchy_side<P: Clone>(
    seq: &PointSeq<P>,
    schedule: &[f64],
    dist: impl Fn(&P, &P) -> f64,
) -> (Verdict, Option<CauchyWitness>) {
    let items = seq.items();
    let len = items.len();
    // worst[i] = (max_{j>i} dist(x_i, x_j), argmax)
    let worst: Vec<(f64, usize)> = (0..len)
        .map(|i| {
            (i + 1..len)
                .map(|j| (dist(&items[i], &items[j]), j))
                .fold((f64::NEG_INFINITY, i), |acc, c| if c.0 > acc.0 { c } else { acc })
        })
        .collect();
    for &eps in schedule {
        // n_ε is one past the last index starting a violating pair.
        let last_bad = (0..len.saturating_sub(1)).rev().find(|&i| worst[i].0 >= eps);
        let Some(i) = last_bad else { continue };
        if i + 2 < len {
            continue;
        }
        let witness = CauchyWitness { n: i, m: worst[i].1, eps, dist: worst[i].0 };
        if let Some(rule) = &seq.generator {
            let deep: Vec<P> = (DEEP_EXPONENT - 4..=DEEP_EXPONENT).map(|k| rule(1usize << k)).collect();
            let deep_ok = deep.windows(2).all(|w| dist(&w[0], &w[1]) < eps);
            if deep_ok {
                return (Verdict::Inconclusive, Some(witness));
            }
        }
        return (Verdict::No, Some(witness));
    }
    (Verdict::Yes, None)
}

/// Left and right K-Cauchy verdicts of a prefix against a decreasing ε schedule.
///
/// For each ε the smallest consistent `n_ε` is computed; the prefix is
/// consistent when at least one tested pair lies beyond `n_ε` for every ε.
/// Requires a prefix of at least `4 · schedule.len()` terms.
pub fn classify_cauchy<S: QuasiMetric>(space: &S, seq: &PointSeq<S::Point>, schedule: &[f64]) -> Result<CauchyVerdict> {
    check_schedule(schedule)?;
    if seq.len() < 4 * schedule.len() {
        return Err(Error::Precondition(format!(
            "prefix of length {} is too short for a schedule of {} values",
            seq.len(),
            schedule.len()
        )));
    }
    let (left, left_witness) = cauchy_side(seq, schedule, |xn, xm| space.dist(xn, xm));
    let (right, right_witness) = cauchy_side(seq, schedule, |xn, xm| space.dist(xm, xn));
    Ok(CauchyVerdict { left, left_witness, right, right_witness })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeparationClass {
    NotT0,
    T0NotT1,
    T1,
}

pub fn separation_class(space: &FiniteSpace) -> SeparationClass {
    let n = space.len();
    let mut t1 = true;
    for x in 0..n {
        for y in 0..n {
            if x != y && space.d(x, y) == 0.0 {
                if space.d(y, x) == 0.0 {
                    return SeparationClass::NotT0;
                }
                t1 = false;
            }
        }
    }
    if t1 {
        SeparationClass::T1
    } else {
        SeparationClass::T0NotT1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Promotion {
    pub converges: bool,
    /// First tail index (into the prefix) where the full sequence is not within tolerance.
    pub witness: Option<usize>,
}

/// For a right K-Cauchy prefix with a subsequence converging to `limit`,
/// checks that the whole sequence converges to `limit` in the same mode.
///
/// A `false` result on a genuinely right K-Cauchy sequence means a bug.
pub fn check_subsequence_promotion<S: QuasiMetric>(
    space: &S,
    seq: &PointSeq<S::Point>,
    subseq: &[usize],
    limit: &S::Point,
    which: Which,
    tol: f64,
    tail: usize,
) -> Result<Promotion> {
    let len = seq.len();
    if subseq.is_empty() {
        return Err(Error::Parameter("subsequence index list is empty".into()));
    }
    if let Some(&bad) = subseq.iter().find(|&&i| i >= len) {
        return Err(Error::IndexOutOfRange { index: bad, len });
    }
    if subseq.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Parameter("subsequence indices must be strictly increasing".into()));
    }
    if tail == 0 || tail > len {
        return Err(Error::Parameter(format!("tail must lie in 1..={len}")));
    }
    let schedule = schedule_for_len(len);
    if schedule.is_empty() {
        return Err(Error::Precondition("prefix too short to test the right K-Cauchy property".into()));
    }
    let cauchy = classify_cauchy(space, seq, &schedule)?;
    if cauchy.right != Verdict::Yes {
        return Err(Error::Precondition(format!("sequence is not right K-Cauchy on its prefix: {:?}", cauchy.right_witness)));
    }
    let items = seq.items();
    let sub_tail = &subseq[subseq.len().saturating_sub(tail)..];
    if sub_tail.iter().any(|&i| which.eval(space, limit, &items[i]) > tol) {
        return Err(Error::Precondition("the subsequence does not converge to the proposed limit".into()));
    }
    let witness = (len - tail..len).find(|&i| which.eval(space, limit, &items[i]) > tol);
    Ok(Promotion { converges: witness.is_none(), witness })
}

/// A random right K-Cauchy sequence prefix on a finite space.
///
/// Every such sequence is eventually confined to one `dˢ`-class after a
/// finite descent in the specialization preorder `y ⪯ x ⟺ d(y, x) = 0`;
/// the generator draws an arbitrary prefix, a random descent, then a long
/// recurrence inside the final class.
pub fn random_right_k_cauchy<R: Rng>(space: &FiniteSpace, rng: &mut R, len: usize) -> Result<PointSeq<usize>> {
    if len < 4 {
        return Err(Error::Parameter("length must be at least 4".into()));
    }
    let n = space.len();
    let head = rng.gen_range(0..=len / 4);
    let descent = rng.gen_range(0..=(len / 4).min(n));
    let mut items: Vec<usize> = (0..head).map(|_| rng.gen_range(0..n)).collect();
    let mut cur = rng.gen_range(0..n);
    items.push(cur);
    for _ in 0..descent {
        let below: Vec<usize> = (0..n).filter(|&y| space.d(y, cur) == 0.0).collect();
        cur = *below.choose(rng).expect("cur is below itself");
        items.push(cur);
    }
    let class: Vec<usize> = (0..n).filter(|&y| space.d(y, cur) == 0.0 && space.d(cur, y) == 0.0).collect();
    while items.len() < len {
        items.push(*class.choose(rng).expect("cur is in its own class"));
    }
    PointSeq::new(items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{canonical_space, Canonical, Formula, ImplicitSpace};

    fn reals() -> ImplicitSpace {
        ImplicitSpace::new(Formula::Upper, 0.0, 1.0).unwrap()
    }

    fn reciprocal(len: usize) -> PointSeq<f64> {
        PointSeq::from_rule(len, |n| 1.0 / (n as f64 + 1.0)).unwrap()
    }

    fn alternating() -> (FiniteSpace, PointSeq<usize>) {
        let s = FiniteSpace::from_matrix(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        (s, PointSeq::new((0..40).map(|i| i % 2).collect()).unwrap())
    }

    #[test]
    fn constant_sequence_converges_everywhere() {
        let s = canonical_space(Canonical::DirectedCycle { n: 3, weight: 1.0 }).unwrap();
        let seq = PointSeq::new(vec![1; 40]).unwrap();
        let v = classify_convergence(&s, &seq, &[0, 1, 2], 1e-9, 10).unwrap();
        assert_eq!(v.d_limits, vec![1]);
        assert_eq!(v.dbar_limits, vec![1]);
        assert_eq!(v.ds_limits, vec![1]);
        let c = classify_cauchy(&s, &seq, &default_schedule()).unwrap();
        assert_eq!((c.left, c.right), (Verdict::Yes, Verdict::Yes));
    }

    #[test]
    fn reciprocal_limits_in_upper_reals() {
        let seq = reciprocal(40);
        let v = classify_convergence(&reals(), &seq, &[0.0, 1.0], 1e-9, 10).unwrap();
        // 0 is a limit in both directions; 1 is a d-limit only.
        assert_eq!(v.d_limits, vec![0.0, 1.0]);
        assert_eq!(v.dbar_limits, vec![0.0]);
        assert_eq!(v.ds_limits, vec![0.0]);
    }

    #[test]
    fn reciprocal_is_right_k_cauchy() {
        let c = classify_cauchy(&reals(), &reciprocal(40), &default_schedule()).unwrap();
        assert_eq!(c.right, Verdict::Yes);
    }

    #[test]
    fn alternating_is_not_right_k_cauchy() {
        let (s, seq) = alternating();
        let c = classify_cauchy(&s, &seq, &default_schedule()).unwrap();
        assert_eq!(c.right, Verdict::No);
        let w = c.right_witness.unwrap();
        assert!(w.n < w.m && w.dist >= w.eps);
        assert_eq!(s.d(seq.items()[w.m], seq.items()[w.n]), w.dist);
    }

    #[test]
    fn eventually_constant_after_jump_is_consistent() {
        let s = FiniteSpace::from_matrix(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let mut items = vec![0; 20];
        items.extend(vec![1; 20]);
        let c = classify_cauchy(&s, &PointSeq::new(items).unwrap(), &default_schedule()).unwrap();
        assert_eq!((c.left, c.right), (Verdict::Yes, Verdict::Yes));
    }

    #[test]
    fn linear_ray_sequence_is_not_left_cauchy() {
        // n ↦ n in u: d(x_n, x_m) = m − n never shrinks.
        let seq = PointSeq::from_rule(40, |n| n as f64).unwrap();
        let c = classify_cauchy(&reals(), &seq, &default_schedule()).unwrap();
        assert_eq!(c.left, Verdict::No);
        assert_eq!(c.right, Verdict::Yes);
    }

    #[test]
    fn schedule_errors() {
        let (s, seq) = alternating();
        assert!(classify_cauchy(&s, &seq, &[0.5, 0.5]).is_err());
        assert!(classify_cauchy(&s, &seq, &[0.25, 0.5]).is_err());
        assert!(classify_cauchy(&s, &seq, &[]).is_err());
        let short = PointSeq::new(vec![0, 0, 0]).unwrap();
        assert!(matches!(classify_cauchy(&s, &short, &[0.5]), Err(Error::Precondition(_))));
    }

    #[test]
    fn empty_candidates_rejected() {
        let (s, seq) = alternating();
        assert!(classify_convergence(&s, &seq, &[], 1e-9, 5).is_err());
    }

    #[test]
    fn separation_classes() {
        let metric = canonical_space(Canonical::SymmetricMetric { lo: 0.0, hi: 1.0, step: 0.25 }).unwrap();
        assert_eq!(separation_class(&metric), SeparationClass::T1);
        let upper = canonical_space(Canonical::UpperGrid { lo: 0.0, hi: 1.0, step: 0.25 }).unwrap();
        assert_eq!(separation_class(&upper), SeparationClass::T0NotT1);
        let dup = FiniteSpace::from_matrix(2, vec![0.0; 4]).unwrap();
        assert_eq!(separation_class(&dup), SeparationClass::NotT0);
    }

    #[test]
    fn promotion_cases() {
        let s = canonical_space(Canonical::DirectedCycle { n: 3, weight: 1.0 }).unwrap();
        let seq = PointSeq::new(vec![2; 40]).unwrap();
        let p = check_subsequence_promotion(&s, &seq, &[3, 9, 30], &2, Which::Symmetric, 1e-9, 10).unwrap();
        assert!(p.converges);

        let r = reciprocal(40);
        let even: Vec<usize> = (0..40).step_by(2).collect();
        // Prefix distances |1/n| are far above 1e-9, so use a tolerance matching the prefix.
        let p = check_subsequence_promotion(&reals(), &r, &even, &0.0, Which::Symmetric, 0.05, 10).unwrap();
        assert!(p.converges);

        let (s2, alt) = alternating();
        let err = check_subsequence_promotion(&s2, &alt, &[0, 2, 4], &0, Which::D, 1e-9, 5);
        assert!(matches!(err, Err(Error::Precondition(_))));
        assert!(check_subsequence_promotion(&s, &seq, &[5, 5], &2, Which::D, 1e-9, 5).is_err());
        assert!(check_subsequence_promotion(&s, &seq, &[50], &2, Which::D, 1e-9, 5).is_err());
    }

    #[test]
    fn generated_cauchy_sequences_are_right_k_cauchy() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for seed in 0..30 {
            let s = crate::space::generate_random_qpm(&crate::space::GenParams { zero_prob: 0.4, ..crate::space::GenParams::new(8, seed) }).unwrap();
            let seq = random_right_k_cauchy(&s, &mut rng, 64).unwrap();
            let c = classify_cauchy(&s, &seq, &default_schedule()).unwrap();
            assert_eq!(c.right, Verdict::Yes, "seed {seed}: {:?}", seq.items());
        }
    }
}
