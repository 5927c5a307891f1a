//! Browser bindings for the demo page in `www/`. Every export takes and
//! returns JSON strings; the `*_json` functions hold the logic so they can be
//! tested natively.

use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

use qpm_ekeland::io::{ObjectiveFile, ObjectiveSpec, SpaceFile};
use qpm_ekeland::objective::{random_objective, ObjectiveParams};
use qpm_ekeland::oracle::{oracle_strong_all, DEFAULT_CAP};
use qpm_ekeland::space::{generate_random_qpm, Formula, GenParams, QpmSpace};
use qpm_ekeland::strong::{
    minimizing_sequence_probe, strong_ekeland_georgiev, MinimizingTrace, ProbeOptions, RayDomain, StrongCertificate,
};
use qpm_ekeland::variational::{check_sublevel_properties, lsc_envelope, picard_sequence, sublevel_set, Selection, SublevelReport};
use qpm_ekeland::{DOrder, FiniteSpace, ImplicitSpace, Objective, ObjectiveFormula, SolverConfig};

/// Space and objective as the page holds them.
#[derive(Serialize, Deserialize)]
pub struct Instance {
    pub space: SpaceFile,
    pub objective: ObjectiveFile,
}

fn parse(instance: &str) -> Result<(FiniteSpace, Objective), String> {
    let inst: Instance = serde_json::from_str(instance).map_err(|e| e.to_string())?;
    let space = inst.space.build().map_err(|e| e.to_string())?;
    let f = match inst.objective.build(&space).map_err(|e| e.to_string())? {
        ObjectiveSpec::Finite(f) => f,
        ObjectiveSpec::Formula(_) => return Err("the demo needs a finite space".into()),
    };
    match space {
        QpmSpace::Finite(s) => Ok((s, f)),
        QpmSpace::Implicit(_) => Err("the demo needs a finite space".into()),
    }
}

fn point(space: &FiniteSpace, id: &str) -> Result<usize, String> {
    space.index_of(id).map_err(|e| e.to_string())
}

fn to_json(v: &impl Serialize) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

pub fn random_instance_json(n: usize, seed: u64, zero_prob: f64, lsc: bool) -> Result<String, String> {
    let space = generate_random_qpm(&GenParams { zero_prob, ..GenParams::new(n, seed) }).map_err(|e| e.to_string())?;
    let params = ObjectiveParams { scale: 4.0, quantum: Some(0.25), ..ObjectiveParams::new(seed.wrapping_add(1)) };
    let mut f = random_objective(n, &params).map_err(|e| e.to_string())?;
    if lsc {
        f = lsc_envelope(&space, &f).map_err(|e| e.to_string())?;
    }
    to_json(&Instance { space: SpaceFile::from(&space), objective: ObjectiveFile::from_objective(&space, &f) })
}

#[derive(Serialize)]
struct Exploration {
    sublevel: Vec<String>,
    picard: Vec<String>,
    z: String,
    z_sublevel: Vec<String>,
    report: SublevelReport,
}

/// `S_α(x)`, the Picard trace from `x` and the sublevel-map properties.
pub fn explore_json(instance: &str, alpha: f64, x: &str) -> Result<String, String> {
    let (space, f) = parse(instance)?;
    let x = point(&space, x)?;
    let ids = |v: &[usize]| v.iter().map(|&i| space.id(i).to_string()).collect::<Vec<_>>();
    let s = sublevel_set(&space, &f, alpha, x).map_err(|e| e.to_string())?;
    let trace = picard_sequence(&space, &f, alpha, x, Selection::Exact).map_err(|e| e.to_string())?;
    let sz = sublevel_set(&space, &f, alpha, trace.z).map_err(|e| e.to_string())?;
    let report = check_sublevel_properties(&space, &f, alpha).map_err(|e| e.to_string())?;
    to_json(&Exploration {
        sublevel: ids(&s.members),
        picard: ids(&trace.trace),
        z: space.id(trace.z).to_string(),
        z_sublevel: ids(&sz.members),
        report,
    })
}

#[derive(Serialize)]
struct Certified {
    certificate: StrongCertificate,
    admissible: Vec<String>,
    restricted: Vec<String>,
}

/// Strong Ekeland point by restriction, with the brute-force admissible set.
pub fn certify_json(instance: &str, gamma: f64, delta: f64, x0: &str, from_z: bool) -> Result<String, String> {
    let (space, f) = parse(instance)?;
    let x0 = point(&space, x0)?;
    let d_order = if from_z { DOrder::FromZ } else { DOrder::ToZ };
    let cfg = SolverConfig { d_order, mutation: None };
    let certificate = strong_ekeland_georgiev(&space, &f, gamma, delta, x0, &cfg).map_err(|e| e.to_string())?;
    let oracle = oracle_strong_all(&space, &f, gamma, Some(delta), x0, qpm_ekeland::strong::Flavor::Georgiev, d_order, DEFAULT_CAP)
        .map_err(|e| e.to_string())?;
    let ids = |v: &[usize]| v.iter().map(|&i| space.id(i).to_string()).collect::<Vec<_>>();
    let restricted = ids(&certificate.georgiev.as_ref().map(|g| g.restricted_set.clone()).unwrap_or_default());
    to_json(&Certified { admissible: ids(&oracle.admissible), restricted, certificate })
}

fn formula(name: &str) -> Result<Formula, String> {
    serde_json::from_value(serde_json::Value::String(name.into())).map_err(|_| format!("unknown space formula `{name}`"))
}

fn objective_formula(name: &str) -> Result<ObjectiveFormula, String> {
    serde_json::from_value(serde_json::Value::String(name.into())).map_err(|_| format!("unknown objective `{name}`"))
}

/// Minimizing-sequence traces around the origin of a ray.
pub fn ray_probe_json(space: &str, objective: &str, gamma: f64, trials: usize, horizon: usize, seed: u64) -> Result<String, String> {
    let dom = RayDomain {
        space: ImplicitSpace::new(formula(space)?, 0.0, 1.0).map_err(|e| e.to_string())?,
        f: objective_formula(objective)?,
    };
    let opts = ProbeOptions { trials, horizon, seed, ..Default::default() };
    let traces: Vec<MinimizingTrace> = minimizing_sequence_probe(&dom, gamma, &0.0, &opts).map_err(|e| e.to_string())?;
    to_json(&traces)
}

fn js<T>(r: Result<T, String>) -> Result<T, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn random_instance(n: usize, seed: u32, zero_prob: f64, lsc: bool) -> Result<String, JsValue> {
    js(random_instance_json(n, u64::from(seed), zero_prob, lsc))
}

#[wasm_bindgen]
pub fn explore(instance: &str, alpha: f64, x: &str) -> Result<String, JsValue> {
    js(explore_json(instance, alpha, x))
}

#[wasm_bindgen]
pub fn certify(instance: &str, gamma: f64, delta: f64, x0: &str, from_z: bool) -> Result<String, JsValue> {
    js(certify_json(instance, gamma, delta, x0, from_z))
}

#[wasm_bindgen]
pub fn ray_probe(space: &str, objective: &str, gamma: f64, trials: usize, horizon: usize, seed: u32) -> Result<String, JsValue> {
    js(ray_probe_json(space, objective, gamma, trials, horizon, u64::from(seed)))
}
