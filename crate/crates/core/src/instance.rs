//! Canonical instance digests, so certificates are only compared with oracle
//! runs on the very same space, objective and parameters.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::ext::ExtReal;
use crate::objective::Objective;
use crate::space::FiniteSpace;

/// The parameters that identify a run. Both forms of the plain principle key
/// on the perturbation weight, so they hash alike under `λ′ = ε/λ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InstanceKey {
    Ekeland { alpha: u64, eps: Option<u64>, x0: usize },
    Georgiev { gamma: u64, delta: u64, x0: usize },
    Suzuki { lambda: u64, x0: usize },
}

impl InstanceKey {
    pub fn ekeland(alpha: f64, eps: Option<f64>, x0: usize) -> Self {
        InstanceKey::Ekeland { alpha: alpha.to_bits(), eps: eps.map(f64::to_bits), x0 }
    }

    pub fn georgiev(gamma: f64, delta: f64, x0: usize) -> Self {
        InstanceKey::Georgiev { gamma: gamma.to_bits(), delta: delta.to_bits(), x0 }
    }

    pub fn suzuki(lambda: f64, x0: usize) -> Self {
        InstanceKey::Suzuki { lambda: lambda.to_bits(), x0 }
    }
}

#[derive(Serialize)]
struct Canonical<'a> {
    points: &'a [String],
    matrix: Vec<u64>,
    objective: Vec<Option<u64>>,
    key: InstanceKey,
}

/// Hex SHA-256 over the canonical bytes of (space, objective, key).
pub fn instance_hash(space: &FiniteSpace, f: &Objective, key: InstanceKey) -> String {
    let n = space.len();
    let canonical = Canonical {
        points: space.ids(),
        matrix: (0..n * n).map(|k| space.d(k / n, k % n).to_bits()).collect(),
        objective: f
            .values()
            .iter()
            .map(|v| match v {
                ExtReal::Finite(x) => Some(x.to_bits()),
                ExtReal::PosInf => None,
            })
            .collect(),
        key,
    };
    let bytes = serde_json::to_vec(&canonical).expect("canonical instance serializes");
    hex::encode(Sha256::digest(&bytes))
}
