use serde::{Deserialize, Serialize};

/// Argument order of the distance inside the perturbed function `f(x) + γ·d(·, ·)`
/// used by the strong-minimum condition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DOrder {
    /// `f(x_n) + γ·d(x_n, z)`, the order the construction actually controls.
    #[default]
    ToZ,
    /// `f(x_n) + γ·d(z, x_n)`.
    FromZ,
}

impl DOrder {
    /// The distance term for a sequence point `x` and centre `z`.
    pub fn term(self, d_xz: f64, d_zx: f64) -> f64 {
        match self {
            DOrder::ToZ => d_xz,
            DOrder::FromZ => d_zx,
        }
    }
}

/// Deliberate defects in the condition checkers, for testing the harness itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    /// Sublevel membership in (ii)/(iii) tests `d(z, y)` instead of `d(y, z)`.
    FlipSublevelOrder,
    /// Condition (i) uses a quarter of the perturbation weight.
    ShrinkAlpha,
    /// Condition (ii) always passes.
    SkipConditionIi,
    /// Condition (iv) bounds `d(x0, z)` instead of `d(z, x0)`.
    FlipConditionIvOrder,
    /// The strong-minimum check rejects every other point of the level set,
    /// even at distance zero.
    StrictStrongMin,
}

impl Mutation {
    pub const ALL: [Mutation; 5] = [
        Mutation::FlipSublevelOrder,
        Mutation::ShrinkAlpha,
        Mutation::SkipConditionIi,
        Mutation::FlipConditionIvOrder,
        Mutation::StrictStrongMin,
    ];
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub d_order: DOrder,
    pub mutation: Option<Mutation>,
}

impl SolverConfig {
    pub(crate) fn mutated(&self, m: Mutation) -> bool {
        self.mutation == Some(m)
    }
}
