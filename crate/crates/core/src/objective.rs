//! Extended-real objectives on finite spaces, and closed-form objectives on the reals.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::space::FiniteSpace;

/// `f : X → ℝ ∪ {+∞}` on a finite space, indexed like the space's points.
///
/// Always proper (some value is finite). On a finite space every function is
/// bounded below, so the infimum is cached. Lower semicontinuity is not
/// automatic when the space is not T1; see [`crate::variational::is_lsc`].
#[derive(Clone, Debug, PartialEq)]
pub struct Objective {
    values: Vec<ExtReal>,
    inf: f64,
}

impl Objective {
    pub fn new(values: Vec<ExtReal>) -> Result<Self> {
        let mut inf = f64::INFINITY;
        for (i, v) in values.iter().enumerate() {
            if let ExtReal::Finite(x) = v {
                if !x.is_finite() {
                    return Err(Error::Parameter(format!("objective value at index {i} is {x}")));
                }
                inf = inf.min(*x);
            }
        }
        if inf == f64::INFINITY {
            return Err(Error::ImproperObjective);
        }
        Ok(Objective { values, inf })
    }

    pub fn from_finite(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| ExtReal::from(v)).collect())
    }

    pub fn constant(n: usize, c: f64) -> Result<Self> {
        Self::new(vec![ExtReal::Finite(c); n])
    }

    /// Builds from an id → value map; every point of `space` must be present.
    pub fn from_map(space: &FiniteSpace, map: &BTreeMap<String, ExtReal>) -> Result<Self> {
        for id in map.keys() {
            space.index_of(id)?;
        }
        let values = space
            .ids()
            .iter()
            .map(|id| map.get(id).copied().ok_or_else(|| Error::Parameter(format!("objective has no value for `{id}`"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }

    pub fn to_map(&self, space: &FiniteSpace) -> BTreeMap<String, ExtReal> {
        space.ids().iter().cloned().zip(self.values.iter().copied()).collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[ExtReal] {
        &self.values
    }

    #[inline]
    pub fn value(&self, i: usize) -> ExtReal {
        self.values[i]
    }

    #[inline]
    pub fn finite(&self, i: usize) -> Option<f64> {
        self.values[i].finite()
    }

    pub fn in_domain(&self, i: usize) -> bool {
        self.values[i].is_finite()
    }

    /// `dom f = {x : f(x) < ∞}`.
    pub fn domain(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.in_domain(i)).collect()
    }

    /// `inf f(X)`.
    pub fn inf(&self) -> f64 {
        self.inf
    }

    /// `inf f(A)` over a set of indices; `+∞` when `A ∩ dom f` is empty.
    pub fn inf_over(&self, set: &[usize]) -> f64 {
        set.iter().filter_map(|&i| self.finite(i)).fold(f64::INFINITY, f64::min)
    }

    pub fn restrict(&self, keep: &[usize]) -> Result<Self> {
        Self::new(keep.iter().map(|&i| self.values[i]).collect())
    }

    /// Checks the objective is indexed compatibly with `space`.
    pub fn check_against(&self, space: &FiniteSpace) -> Result<()> {
        if self.len() == space.len() {
            Ok(())
        } else {
            Err(Error::Shape(format!("objective has {} values but the space has {} points", self.len(), space.len())))
        }
    }
}

/// Parameters for [`random_objective`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveParams {
    pub seed: u64,
    /// Fraction of entries set to `+∞` (one entry always stays finite).
    pub inf_frac: f64,
    pub scale: f64,
    pub quantum: Option<f64>,
}

impl ObjectiveParams {
    pub fn new(seed: u64) -> Self {
        ObjectiveParams { seed, inf_frac: 0.1, scale: 8.0, quantum: Some(1.0 / 16.0) }
    }
}

pub fn random_objective(n: usize, params: &ObjectiveParams) -> Result<Objective> {
    if n == 0 {
        return Err(Error::Parameter("objective needs at least one point".into()));
    }
    if !(0.0..1.0).contains(&params.inf_frac) {
        return Err(Error::Parameter(format!("inf_frac must lie in [0, 1), got {}", params.inf_frac)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let keep = rng.gen_range(0..n);
    let values = (0..n)
        .map(|i| {
            if i != keep && rng.gen_bool(params.inf_frac) {
                return ExtReal::PosInf;
            }
            let raw: f64 = rng.gen_range(0.0..params.scale);
            ExtReal::Finite(match params.quantum {
                Some(q) => (raw / q).floor() * q,
                None => raw,
            })
        })
        .collect();
    Objective::new(values)
}

/// Closed-form objectives on the reals, for implicit spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectiveFormula {
    /// `x² e^{−x}`: a strict minimum at 0 that is not a strong one on `[0, ∞)`.
    QuadExpDecay,
    /// `x²`.
    Quadratic,
    /// `e^{−x}`: bounded below by 0, infimum not attained on `[0, ∞)`.
    ExpDecay,
}

impl ObjectiveFormula {
    pub fn eval(self, x: f64) -> f64 {
        match self {
            ObjectiveFormula::QuadExpDecay => x * x * (-x).exp(),
            ObjectiveFormula::Quadratic => x * x,
            ObjectiveFormula::ExpDecay => (-x).exp(),
        }
    }

    /// Values on the given sample points, as a finite objective.
    pub fn sample(self, points: impl IntoIterator<Item = f64>) -> Result<Objective> {
        Objective::from_finite(&points.into_iter().map(|x| self.eval(x)).collect::<Vec<_>>())
    }
}
