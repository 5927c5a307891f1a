use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};

use qpm_ekeland::io::{load_space, ObjectiveFile, ObjectiveSpec};
use qpm_ekeland::objective::{random_objective, ObjectiveParams};
use qpm_ekeland::space::{canonical_space, generate_random_qpm, Canonical, GenParams, QpmSpace};
use qpm_ekeland::{FiniteSpace, ImplicitSpace, Objective, ObjectiveFormula};

use crate::InstanceArgs;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GenFamily {
    Random,
    UpperGrid,
    SymmetricMetric,
    DirectedCycle,
    AsymmetricGraph,
}

/// `n=..,seed=..,family=..`; `seed` defaults to 0 and `family` to `random`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub seed: u64,
    pub family: GenFamily,
}

impl FromStr for GenSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut n = None;
        let mut seed = 0;
        let mut family = GenFamily::Random;
        for part in s.split(',').filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(|| anyhow!("expected key=value, got `{part}`"))?;
            match key.trim() {
                "n" => n = Some(value.trim().parse().context("n")?),
                "seed" => seed = value.trim().parse().context("seed")?,
                "family" => {
                    family = match value.trim() {
                        "random" => GenFamily::Random,
                        "upper_grid" => GenFamily::UpperGrid,
                        "symmetric_metric" => GenFamily::SymmetricMetric,
                        "directed_cycle" => GenFamily::DirectedCycle,
                        "asymmetric_graph" => GenFamily::AsymmetricGraph,
                        other => bail!("unknown family `{other}`"),
                    }
                }
                other => bail!("unknown generator key `{other}`"),
            }
        }
        let n = n.ok_or_else(|| anyhow!("generator spec needs n"))?;
        if n == 0 {
            bail!("n must be at least 1");
        }
        Ok(GenSpec { n, seed, family })
    }
}

impl GenSpec {
    pub fn build(&self) -> Result<(FiniteSpace, Objective)> {
        let n = self.n;
        let hi = (n - 1) as f64;
        let space = match self.family {
            GenFamily::Random => generate_random_qpm(&GenParams::new(n, self.seed))?,
            GenFamily::UpperGrid => canonical_space(Canonical::UpperGrid { lo: 0.0, hi, step: 1.0 })?,
            GenFamily::SymmetricMetric => canonical_space(Canonical::SymmetricMetric { lo: 0.0, hi, step: 1.0 })?,
            GenFamily::DirectedCycle => canonical_space(Canonical::DirectedCycle { n, weight: 1.0 })?,
            GenFamily::AsymmetricGraph => {
                canonical_space(Canonical::AsymmetricGraph { n, forward: 1.0, backward: 2.0 })?
            }
        };
        let f = random_objective(n, &ObjectiveParams::new(self.seed.wrapping_add(1)))?;
        Ok((space, f))
    }
}

pub struct Loaded {
    /// Finite unless an implicit space was loaded without `--truncate`.
    pub space: QpmSpace,
    pub f: Option<Objective>,
    /// The implicit space behind a truncation, and its closed-form objective.
    pub implicit: Option<ImplicitSpace>,
    pub formula: Option<ObjectiveFormula>,
}

pub fn load(args: &InstanceArgs, need_objective: bool) -> Result<Loaded> {
    if let Some(spec) = &args.gen {
        let (space, f) = spec.build()?;
        return Ok(Loaded { space: QpmSpace::Finite(space), f: Some(f), implicit: None, formula: None });
    }
    let path = args.space.as_ref().expect("clap requires --space or --gen");
    let loaded = load_space(path).with_context(|| format!("reading {}", path.display()))?;
    let (space, implicit) = match (loaded, args.truncate) {
        (QpmSpace::Implicit(ray), Some(n)) => (QpmSpace::Finite(ray.truncate(n)?), Some(ray)),
        (QpmSpace::Implicit(ray), None) => (QpmSpace::Implicit(ray), Some(ray)),
        (finite, _) => (finite, None),
    };
    let (f, formula) = match &args.objective {
        None if need_objective => bail!("--objective is required with --space"),
        None => (None, None),
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            let file: ObjectiveFile =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?;
            let formula = match &file {
                ObjectiveFile::Formula { formula } => Some(*formula),
                ObjectiveFile::Values(_) => None,
            };
            let f = match file.build(&space).with_context(|| format!("reading {}", p.display()))? {
                ObjectiveSpec::Finite(f) => Some(f),
                ObjectiveSpec::Formula(_) => None,
            };
            (f, formula)
        }
    };
    Ok(Loaded { space, f, implicit, formula })
}

pub fn start_point(space: &FiniteSpace, f: &Objective, x0: Option<&str>) -> Result<usize> {
    Ok(match x0 {
        Some(id) => space.index_of(id)?,
        None => f.domain()[0],
    })
}

/// The first minimizer of `f`.
pub fn argmin(f: &Objective) -> usize {
    (0..f.len()).find(|&i| f.finite(i) == Some(f.inf())).expect("proper objective attains its minimum")
}

/// Sample index of a coordinate on an implicit space; the origin when absent.
pub fn ray_index(ray: &ImplicitSpace, z: Option<&str>) -> Result<usize> {
    let Some(text) = z else { return Ok(0) };
    let x: f64 = text.parse().with_context(|| format!("`{text}` is not a coordinate"))?;
    let k = (0..1 << 20).find(|&k| ray.sample(k) == x).ok_or_else(|| anyhow!("{x} is not a sample point of the space"))?;
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_spec_parsing() {
        let g: GenSpec = "n=5,seed=7,family=directed_cycle".parse().unwrap();
        assert_eq!(g, GenSpec { n: 5, seed: 7, family: GenFamily::DirectedCycle });
        assert_eq!("n=3".parse::<GenSpec>().unwrap().family, GenFamily::Random);
        assert!("seed=1".parse::<GenSpec>().is_err());
        assert!("n=0".parse::<GenSpec>().is_err());
        assert!("n=3,colour=red".parse::<GenSpec>().is_err());
        assert!("n=3,family=torus".parse::<GenSpec>().is_err());
    }

    #[test]
    fn generated_families_build() {
        for family in ["random", "upper_grid", "symmetric_metric", "directed_cycle", "asymmetric_graph"] {
            let g: GenSpec = format!("n=6,seed=2,family={family}").parse().unwrap();
            let (s, f) = g.build().unwrap();
            assert_eq!((s.len(), f.len()), (6, 6));
        }
    }
}
