//! Quasi-pseudometric spaces: finite (explicit matrix) and implicit (formula-backed).
//!
//! Matrices are row-major "from → to": entry `(i, j)` is `d(p_i, p_j)`.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

/// Anything that can measure an asymmetric distance between two of its points.
pub trait QuasiMetric {
    type Point: Clone + std::fmt::Debug;

    fn dist(&self, from: &Self::Point, to: &Self::Point) -> f64;

    /// Human-readable label for reports.
    fn label(&self, p: &Self::Point) -> String;
}

/// Which of `d`, its conjugate `d̄(x,y) = d(y,x)`, or the symmetrization `dˢ = max(d, d̄)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    D,
    Conjugate,
    Symmetric,
}

impl Which {
    pub fn eval<S: QuasiMetric + ?Sized>(self, space: &S, x: &S::Point, y: &S::Point) -> f64 {
        match self {
            Which::D => space.dist(x, y),
            Which::Conjugate => space.dist(y, x),
            Which::Symmetric => space.dist(x, y).max(space.dist(y, x)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BallShape {
    Open,
    Closed,
}

/// A finite space with an explicit distance matrix. Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSpace {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    matrix: Vec<f64>,
}

impl FiniteSpace {
    /// Builds a space from ids and rows. Only the shape is checked here;
    /// the axioms are checked by [`validate_axioms`].
    pub fn new(ids: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = ids.len();
        if n == 0 {
            return Err(Error::Shape("a space needs at least one point".into()));
        }
        if rows.len() != n {
            return Err(Error::Shape(format!("{} ids but {} matrix rows", n, rows.len())));
        }
        let mut matrix = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "row {} (`{}`) has {} entries, expected {}",
                    i,
                    ids[i],
                    row.len(),
                    n
                )));
            }
            matrix.extend(row);
        }
        Self::from_flat(ids, matrix)
    }

    /// Builds a space with ids `p0, p1, …` from a flat row-major matrix.
    pub fn from_matrix(n: usize, matrix: Vec<f64>) -> Result<Self> {
        let ids = (0..n).map(|i| format!("p{i}")).collect();
        Self::from_flat(ids, matrix)
    }

    fn from_flat(ids: Vec<String>, matrix: Vec<f64>) -> Result<Self> {
        let n = ids.len();
        if n == 0 {
            return Err(Error::Shape("a space needs at least one point".into()));
        }
        if matrix.len() != n * n {
            return Err(Error::Shape(format!("expected {} entries, got {}", n * n, matrix.len())));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::Shape(format!("duplicate point id `{id}`")));
            }
        }
        Ok(FiniteSpace { ids, index, matrix })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownPoint(id.to_string()))
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, len: self.len() })
        }
    }

    #[inline]
    pub fn d(&self, from: usize, to: usize) -> f64 {
        self.matrix[from * self.ids.len() + to]
    }

    pub fn row(&self, from: usize) -> &[f64] {
        let n = self.len();
        &self.matrix[from * n..(from + 1) * n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.len()).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    /// `d̄(x, y) = d(y, x)`.
    pub fn conjugate(&self) -> FiniteSpace {
        self.map_pairs(|s, i, j| s.d(j, i))
    }

    /// `dˢ(x, y) = max(d(x, y), d(y, x))`.
    pub fn symmetrize(&self) -> FiniteSpace {
        self.map_pairs(|s, i, j| s.d(i, j).max(s.d(j, i)))
    }

    fn map_pairs(&self, f: impl Fn(&Self, usize, usize) -> f64) -> FiniteSpace {
        let n = self.len();
        let matrix = (0..n * n).map(|k| f(self, k / n, k % n)).collect();
        FiniteSpace { ids: self.ids.clone(), index: self.index.clone(), matrix }
    }

    /// The subspace on `keep` (in the given order), with the restricted distance.
    pub fn restrict(&self, keep: &[usize]) -> Result<FiniteSpace> {
        for &i in keep {
            self.check_index(i)?;
        }
        let ids = keep.iter().map(|&i| self.ids[i].clone()).collect();
        let matrix = keep.iter().flat_map(|&i| keep.iter().map(move |&j| self.d(i, j))).collect();
        Self::from_flat(ids, matrix)
    }

    /// Open or closed ball around `center` in `d`, `d̄` or `dˢ`.
    ///
    /// An open ball with `r ≤ 0` is empty (not even the center belongs to it).
    pub fn ball(&self, center: usize, r: f64, shape: BallShape, which: Which) -> Result<Vec<usize>> {
        self.check_index(center)?;
        if r.is_nan() {
            return Err(Error::Parameter("ball radius is NaN".into()));
        }
        Ok(self
            .points()
            .filter(|&y| {
                let d = which.eval(self, &center, &y);
                match shape {
                    BallShape::Open => d < r,
                    BallShape::Closed => d <= r,
                }
            })
            .collect())
    }

    /// `cl{z} = {y : d(y, z) = 0}`.
    pub fn closure_of_singleton(&self, z: usize) -> Vec<usize> {
        self.points().filter(|&y| tol::is_zero(self.d(y, z))).collect()
    }
}

impl QuasiMetric for FiniteSpace {
    type Point = usize;

    fn dist(&self, from: &usize, to: &usize) -> f64 {
        self.d(*from, *to)
    }

    fn label(&self, p: &usize) -> String {
        self.ids[*p].clone()
    }
}

/// Closed-form asymmetric distances on the real line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formula {
    /// `u(x, y) = max(y − x, 0)`.
    Upper,
    /// `ū(x, y) = max(x − y, 0)`.
    Lower,
    /// `|x − y|`.
    Abs,
}

impl Formula {
    pub fn eval(self, x: f64, y: f64) -> f64 {
        match self {
            Formula::Upper => (y - x).max(0.0),
            Formula::Lower => (x - y).max(0.0),
            Formula::Abs => (x - y).abs(),
        }
    }

    pub fn conjugate(self) -> Formula {
        match self {
            Formula::Upper => Formula::Lower,
            Formula::Lower => Formula::Upper,
            Formula::Abs => Formula::Abs,
        }
    }
}

/// A formula-backed space over the reals. The sampler enumerates the ray
/// `{origin, origin + step, origin + 2·step, …}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImplicitSpace {
    pub formula: Formula,
    pub origin: f64,
    pub step: f64,
}

impl ImplicitSpace {
    pub fn new(formula: Formula, origin: f64, step: f64) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) || !origin.is_finite() {
            return Err(Error::Parameter(format!("ray needs a finite origin and positive step, got {origin}, {step}")));
        }
        Ok(ImplicitSpace { formula, origin, step })
    }

    /// The `k`-th sample point.
    pub fn sample(&self, k: usize) -> f64 {
        self.origin + k as f64 * self.step
    }

    /// The finite subspace on the first `count` sample points.
    pub fn truncate(&self, count: usize) -> Result<FiniteSpace> {
        if count == 0 {
            return Err(Error::Parameter("truncation needs at least one point".into()));
        }
        let pts: Vec<f64> = (0..count).map(|k| self.sample(k)).collect();
        let ids = pts.iter().map(|x| format!("{x}")).collect();
        let matrix = pts.iter().flat_map(|&x| pts.iter().map(move |&y| self.formula.eval(x, y))).collect();
        FiniteSpace::from_flat(ids, matrix)
    }

    pub fn conjugate(&self) -> ImplicitSpace {
        ImplicitSpace { formula: self.formula.conjugate(), ..*self }
    }
}

impl QuasiMetric for ImplicitSpace {
    type Point = f64;

    fn dist(&self, from: &f64, to: &f64) -> f64 {
        self.formula.eval(*from, *to)
    }

    fn label(&self, p: &f64) -> String {
        format!("{p}")
    }
}

/// Either kind of space, as loaded from a space file.
#[derive(Clone, Debug, PartialEq)]
pub enum QpmSpace {
    Finite(FiniteSpace),
    Implicit(ImplicitSpace),
}

impl QpmSpace {
    /// The finite space, or an error for operations that must enumerate.
    pub fn finite(&self) -> Result<&FiniteSpace> {
        match self {
            QpmSpace::Finite(s) => Ok(s),
            QpmSpace::Implicit(_) => Err(Error::ImplicitSpace),
        }
    }
}

/// Outcome of checking the quasi-pseudometric axioms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub points: usize,
    /// Set when the report was computed on a finite sample of an implicit space.
    pub sampled: bool,
    pub qm1_ok: bool,
    pub qm1_witness: Option<String>,
    pub qm2_ok: bool,
    /// `(x, y, z)` with `d(x, z) > d(x, y) + d(y, z)`.
    pub qm2_witness: Option<[String; 3]>,
    pub is_quasi_metric: bool,
    /// `x ≠ y` with `d(x, y) = d(y, x) = 0`.
    pub t0_witness: Option<[String; 2]>,
    pub is_t1: bool,
    /// `x ≠ y` with `d(x, y) = 0`.
    pub t1_witness: Option<[String; 2]>,
}

/// Checks QM1 (zero self-distance), QM2 (triangle inequality up to
/// [`tol::MEMBERSHIP`]), QM3 (quasi-metric) and the T1 condition.
pub fn validate_axioms(space: &FiniteSpace) -> Result<AxiomReport> {
    let n = space.len();
    for i in 0..n {
        for j in 0..n {
            let v = space.d(i, j);
            if !v.is_finite() || v < 0.0 {
                return Err(Error::MalformedSpace {
                    from: space.id(i).to_string(),
                    to: space.id(j).to_string(),
                    value: v,
                });
            }
        }
    }

    let qm1_witness = (0..n).find(|&i| space.d(i, i) != 0.0).map(|i| space.id(i).to_string());

    let mut qm2_witness = None;
    'outer: for x in 0..n {
        for y in 0..n {
            let dxy = space.d(x, y);
            for z in 0..n {
                if space.d(x, z) > dxy + space.d(y, z) + tol::MEMBERSHIP {
                    qm2_witness = Some([x, y, z].map(|p| space.id(p).to_string()));
                    break 'outer;
                }
            }
        }
    }

    let mut t0_witness = None;
    let mut t1_witness = None;
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            if t1_witness.is_none() && space.d(x, y) == 0.0 {
                t1_witness = Some([space.id(x).to_string(), space.id(y).to_string()]);
            }
            if t0_witness.is_none() && x < y && space.d(x, y) == 0.0 && space.d(y, x) == 0.0 {
                t0_witness = Some([space.id(x).to_string(), space.id(y).to_string()]);
            }
        }
    }

    Ok(AxiomReport {
        points: n,
        sampled: false,
        qm1_ok: qm1_witness.is_none(),
        qm1_witness,
        qm2_ok: qm2_witness.is_none(),
        qm2_witness,
        is_quasi_metric: t0_witness.is_none(),
        t0_witness,
        is_t1: t1_witness.is_none(),
        t1_witness,
    })
}

/// Validates an implicit space on its first `sample` points; the report is flagged `sampled`.
pub fn validate_axioms_sampled(space: &ImplicitSpace, sample: usize) -> Result<AxiomReport> {
    let mut report = validate_axioms(&space.truncate(sample)?)?;
    report.sampled = true;
    Ok(report)
}

/// Min-plus (Floyd–Warshall) closure of a flat row-major matrix, in place.
/// Entries may be `+∞` for missing edges.
pub fn min_plus_closure(n: usize, m: &mut [f64]) {
    debug_assert_eq!(m.len(), n * n);
    for k in 0..n {
        for i in 0..n {
            let dik = m[i * n + k];
            if dik == f64::INFINITY {
                continue;
            }
            for j in 0..n {
                let via = dik + m[k * n + j];
                if via < m[i * n + j] {
                    m[i * n + j] = via;
                }
            }
        }
    }
}

/// Parameters for [`generate_random_qpm`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub n: usize,
    pub seed: u64,
    /// Upper bound of the raw edge weights.
    pub scale: f64,
    /// Probability that a raw off-diagonal entry is exactly zero.
    pub zero_prob: f64,
    /// Raw weights are rounded up to multiples of this value; `None` keeps them continuous.
    pub quantum: Option<f64>,
}

impl GenParams {
    pub fn new(n: usize, seed: u64) -> Self {
        GenParams { n, seed, scale: 4.0, zero_prob: 0.1, quantum: Some(1.0 / 16.0) }
    }
}

/// Random finite quasi-pseudometric space: random nonnegative matrix with zero
/// diagonal, then min-plus closure so the triangle inequality holds.
pub fn generate_random_qpm(params: &GenParams) -> Result<FiniteSpace> {
    let GenParams { n, seed, scale, zero_prob, quantum } = *params;
    if n == 0 {
        return Err(Error::Parameter("n must be at least 1".into()));
    }
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::Parameter(format!("scale must be positive, got {scale}")));
    }
    if !(0.0..=1.0).contains(&zero_prob) {
        return Err(Error::Parameter(format!("zero_prob must lie in [0, 1], got {zero_prob}")));
    }
    if let Some(q) = quantum {
        if !(q > 0.0 && q.is_finite()) {
            return Err(Error::Parameter(format!("quantum must be positive, got {q}")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            m[i * n + j] = if rng.gen_bool(zero_prob) {
                0.0
            } else {
                let raw: f64 = rng.gen_range(0.0..scale);
                match quantum {
                    Some(q) => ((raw / q).floor() + 1.0) * q,
                    None => raw,
                }
            };
        }
    }
    min_plus_closure(n, &mut m);
    FiniteSpace::from_matrix(n, m)
}

/// The built-in families of example spaces.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Canonical {
    /// Arithmetic grid on `[lo, hi]` with `u(x, y) = max(y − x, 0)`.
    UpperGrid { lo: f64, hi: f64, step: f64 },
    /// Arithmetic grid on `[lo, hi]` with `|x − y|`.
    SymmetricMetric { lo: f64, hi: f64, step: f64 },
    /// `n` nodes on a one-way cycle with equal edge weights, shortest-path closed.
    DirectedCycle { n: usize, weight: f64 },
    /// A path graph with different forward and backward weights, shortest-path closed.
    AsymmetricGraph { n: usize, forward: f64, backward: f64 },
}

fn grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::Parameter(format!("grid step must be positive, got {step}")));
    }
    if !(lo.is_finite() && hi.is_finite()) || hi < lo {
        return Err(Error::Parameter(format!("empty grid range [{lo}, {hi}]")));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| lo + k as f64 * step).collect())
}

fn formula_space(pts: &[f64], formula: Formula) -> Result<FiniteSpace> {
    let ids = pts.iter().map(|x| format!("{x}")).collect();
    let matrix = pts.iter().flat_map(|&x| pts.iter().map(move |&y| formula.eval(x, y))).collect();
    FiniteSpace::from_flat(ids, matrix)
}

fn node_ids(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

pub fn canonical_space(which: Canonical) -> Result<FiniteSpace> {
    match which {
        Canonical::UpperGrid { lo, hi, step } => formula_space(&grid(lo, hi, step)?, Formula::Upper),
        Canonical::SymmetricMetric { lo, hi, step } => formula_space(&grid(lo, hi, step)?, Formula::Abs),
        Canonical::DirectedCycle { n, weight } => {
            if n == 0 || !(weight > 0.0 && weight.is_finite()) {
                return Err(Error::Parameter(format!("directed cycle needs n ≥ 1 and weight > 0, got {n}, {weight}")));
            }
            let mut m = vec![f64::INFINITY; n * n];
            for i in 0..n {
                m[i * n + i] = 0.0;
                if n > 1 {
                    m[i * n + (i + 1) % n] = weight;
                }
            }
            min_plus_closure(n, &mut m);
            FiniteSpace::from_flat(node_ids(n), m)
        }
        Canonical::AsymmetricGraph { n, forward, backward } => {
            let ok = |w: f64| w >= 0.0 && w.is_finite();
            if n == 0 || !ok(forward) || !ok(backward) {
                return Err(Error::Parameter(format!(
                    "asymmetric graph needs n ≥ 1 and finite nonnegative weights, got {n}, {forward}, {backward}"
                )));
            }
            let mut m = vec![f64::INFINITY; n * n];
            for i in 0..n {
                m[i * n + i] = 0.0;
                if i + 1 < n {
                    m[i * n + i + 1] = forward;
                    m[(i + 1) * n + i] = backward;
                }
            }
            min_plus_closure(n, &mut m);
            FiniteSpace::from_flat(node_ids(n), m)
        }
    }
}

/// The unbounded ray `{0, step, 2·step, …}` under the upper quasi-metric.
pub fn upper_ray(step: f64) -> Result<ImplicitSpace> {
    ImplicitSpace::new(Formula::Upper, 0.0, step)
}
