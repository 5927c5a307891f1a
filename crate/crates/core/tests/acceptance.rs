//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach stdout.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qpm_ekeland::objective::{random_objective, ObjectiveFormula, ObjectiveParams};
use qpm_ekeland::oracle::{
    cross_check, falsify, oracle_ekeland_all, oracle_strong_all, simulate_strong_condition, Family, DEFAULT_CAP,
};
use qpm_ekeland::space::{generate_random_qpm, validate_axioms, Formula, GenParams};
use qpm_ekeland::strong::{
    check_dbar_bounded, check_smyth_hypothesis, check_strong_min_finite, minimizing_sequence_probe,
    strong_ekeland_georgiev, strong_ekeland_suzuki, Flavor, ProbeOptions, RayDomain, StrongMinCheck, TraceVerdict,
};
use qpm_ekeland::topology::PointSeq;
use qpm_ekeland::variational::{check_sublevel_properties, ekeland_point, ekeland_point_prime, is_lsc, lsc_envelope};
use qpm_ekeland::{DOrder, FiniteSpace, ImplicitSpace, Mutation, Objective, SolverConfig};

const AXIOM_SPACES: usize = 1000;
const MUTATED_MATRICES: usize = 100;
const AXIOM_BUDGET: Duration = Duration::from_secs(5);

const EKELAND_INSTANCES: usize = 500;
const EKELAND_MAX_N: usize = 40;
const ORACLE_MAX_N: usize = 30;
const EKELAND_BUDGET: Duration = Duration::from_secs(30);
const PARAM_MAX: f64 = 5.0;

const GEORGIEV_INSTANCES: usize = 300;
const GEORGIEV_PARAM_MAX: f64 = 3.0;
const GEORGIEV_BUDGET: Duration = Duration::from_secs(30);

const SUZUKI_INSTANCES: usize = 300;
const SMYTH_SPACES: usize = 20;
const SMYTH_PREFIXES: usize = 100;

const SMALL_MAX_N: usize = 8;
const SMALL_RANDOM: usize = 200;
const SEQUENCES: usize = 10_000;
const STRONG_MIN_BUDGET: Duration = Duration::from_secs(60);

const RAY_F50_BOUND: f64 = 1e-18;
const TRUNCATIONS: [usize; 6] = [2, 5, 10, 50, 100, 200];

const SUBLEVEL_TRIPLES: usize = 500;

const MUTATION_BUDGET: usize = 1000;

const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rng_for(tag: u64, k: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ tag);
    rng.set_stream(k as u64);
    rng
}

/// Uniform on `(0, max]`.
fn positive_up_to(rng: &mut ChaCha8Rng, max: f64) -> f64 {
    max * (1.0 - rng.gen::<f64>())
}

struct Inst {
    space: FiniteSpace,
    f: Objective,
    x0: usize,
}

fn random_inst(rng: &mut ChaCha8Rng, max_n: usize) -> Inst {
    let n = rng.gen_range(1..=max_n);
    let space = generate_random_qpm(&GenParams::new(n, rng.gen())).unwrap();
    let f = random_objective(n, &ObjectiveParams::new(rng.gen())).unwrap();
    let x0 = *f.domain().choose(rng).unwrap();
    Inst { space, f, x0 }
}

fn ac1_axioms() -> Outcome {
    let start = Instant::now();
    let generated_ok = (0..AXIOM_SPACES)
        .filter(|&k| {
            let mut rng = rng_for(1, k);
            let s = generate_random_qpm(&GenParams::new(rng.gen_range(1..=40), rng.gen())).unwrap();
            let r = validate_axioms(&s).unwrap();
            r.qm1_ok && r.qm2_ok
        })
        .count();

    let mut caught = 0;
    for k in 0..MUTATED_MATRICES {
        let mut rng = rng_for(2, k);
        let n = rng.gen_range(3..=40);
        let s = generate_random_qpm(&GenParams::new(n, rng.gen())).unwrap();
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(&mut rng);
        let (x, y, z) = (idx[0], idx[1], idx[2]);
        let mut rows = s.rows();
        rows[x][z] = rows[x][y] + rows[y][z] + rng.gen_range(0.5..2.0);
        let bad = FiniteSpace::new(s.ids().to_vec(), rows).unwrap();
        let r = validate_axioms(&bad).unwrap();
        let witness_ok = r.qm2_witness.as_ref().is_some_and(|[a, b, c]| {
            let (a, b, c) = (bad.index_of(a).unwrap(), bad.index_of(b).unwrap(), bad.index_of(c).unwrap());
            bad.d(a, c) > bad.d(a, b) + bad.d(b, c) + 1e-12
        });
        if !r.qm2_ok && witness_ok {
            caught += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        generated_ok == AXIOM_SPACES && caught == MUTATED_MATRICES && elapsed < AXIOM_BUDGET,
        format!(
            "{generated_ok}/{AXIOM_SPACES} generated spaces valid; {caught}/{MUTATED_MATRICES} mutated matrices rejected with a violating triple; {elapsed:.2?}"
        ),
    )
}

struct EkelandRun {
    i_iii: bool,
    iv_applicable: bool,
    iv_ok: bool,
    oracle_checked: bool,
    oracle_ok: bool,
    coherent: bool,
}

fn ekeland_runs() -> (Vec<EkelandRun>, Duration) {
    let start = Instant::now();
    let cfg = SolverConfig::default();
    let runs = (0..EKELAND_INSTANCES)
        .into_par_iter()
        .map(|k| {
            let mut rng = rng_for(3, k);
            let Inst { space, f, x0 } = random_inst(&mut rng, EKELAND_MAX_N);
            let (eps, lambda) = (positive_up_to(&mut rng, PARAM_MAX), positive_up_to(&mut rng, PARAM_MAX));
            let cert = ekeland_point(&space, &f, eps, lambda, x0, &cfg).unwrap();
            let iv_applicable = f.finite(x0).unwrap() <= eps + f.inf();
            let (oracle_checked, oracle_ok) = if space.len() <= ORACLE_MAX_N {
                let oracle = oracle_ekeland_all(&space, &f, eps, lambda, x0, DEFAULT_CAP).unwrap();
                (true, cross_check(&cert, &oracle).unwrap().z_admissible)
            } else {
                (false, true)
            };
            let primed = ekeland_point_prime(&space, &f, eps / lambda, x0, Some(eps), &cfg).unwrap();
            EkelandRun {
                i_iii: cert.conditions()[..3].iter().all(|c| c.is_pass()),
                iv_applicable,
                iv_ok: !iv_applicable || (cert.cond_iv.is_pass() && space.d(cert.z, x0) <= lambda + 1e-9),
                oracle_checked,
                oracle_ok,
                coherent: primed.z == cert.z && primed.flags() == cert.flags(),
            }
        })
        .collect();
    (runs, start.elapsed())
}

fn ac2_soundness(runs: &[EkelandRun], elapsed: Duration) -> Outcome {
    let i_iii = runs.iter().filter(|r| r.i_iii).count();
    let iv_app = runs.iter().filter(|r| r.iv_applicable).count();
    let iv_ok = runs.iter().filter(|r| r.iv_applicable && r.iv_ok).count();
    let checked = runs.iter().filter(|r| r.oracle_checked).count();
    let admissible = runs.iter().filter(|r| r.oracle_checked && r.oracle_ok).count();
    outcome(
        i_iii == runs.len() && iv_ok == iv_app && admissible == checked && elapsed < EKELAND_BUDGET,
        format!(
            "(i)-(iii) {i_iii}/{}; (iv) {iv_ok}/{iv_app} applicable; z admissible {admissible}/{checked} (n <= {ORACLE_MAX_N}); {elapsed:.2?}",
            runs.len()
        ),
    )
}

fn ac3_substitution(runs: &[EkelandRun]) -> Outcome {
    let coherent = runs.iter().filter(|r| r.coherent).count();
    outcome(coherent == runs.len(), format!("identical z and flags under λ′ = ε/λ: {coherent}/{}", runs.len()))
}

fn ac4_georgiev() -> Outcome {
    let start = Instant::now();
    let cfg = SolverConfig::default();
    let results: Vec<(bool, bool, bool)> = (0..GEORGIEV_INSTANCES)
        .into_par_iter()
        .map(|k| {
            let mut rng = rng_for(4, k);
            let Inst { space, f, x0 } = random_inst(&mut rng, EKELAND_MAX_N);
            let gamma = positive_up_to(&mut rng, GEORGIEV_PARAM_MAX);
            let delta = positive_up_to(&mut rng, GEORGIEV_PARAM_MAX);
            let cert = strong_ekeland_georgiev(&space, &f, gamma, delta, x0, &cfg).unwrap();
            let conditions = cert.conditions().iter().all(|c| c.is_pass());
            let internals = cert.georgiev.as_ref().unwrap().all_hold();
            let oracle = space.len() > ORACLE_MAX_N || {
                let o = oracle_strong_all(&space, &f, gamma, Some(delta), x0, Flavor::Georgiev, DOrder::ToZ, DEFAULT_CAP)
                    .unwrap();
                cross_check(&cert, &o).unwrap().passed()
            };
            (conditions, internals, oracle)
        })
        .collect();
    let elapsed = start.elapsed();
    let count = |pick: fn(&(bool, bool, bool)) -> bool| results.iter().filter(|r| pick(r)).count();
    let (c, i, o) = (count(|r| r.0), count(|r| r.1), count(|r| r.2));
    let n = results.len();
    outcome(
        c == n && i == n && o == n && elapsed < GEORGIEV_BUDGET,
        format!("(a)-(d) {c}/{n}; construction checks {i}/{n}; oracle cross-check {o}/{n}; {elapsed:.2?}"),
    )
}

fn ac5_suzuki() -> Outcome {
    let cfg = SolverConfig::default();
    let passed = (0..SUZUKI_INSTANCES)
        .into_par_iter()
        .filter(|&k| {
            let mut rng = rng_for(5, k);
            let Inst { space, f, x0 } = random_inst(&mut rng, EKELAND_MAX_N);
            let lambda = positive_up_to(&mut rng, PARAM_MAX);
            let cert = strong_ekeland_suzuki(&space, &f, lambda, x0, &cfg).unwrap();
            cert.all_pass()
        })
        .count();
    let reports: Vec<_> = (0..SMYTH_SPACES)
        .into_par_iter()
        .map(|k| {
            let mut rng = rng_for(6, k);
            let gen = GenParams { zero_prob: 0.3, ..GenParams::new(rng.gen_range(1..=12), rng.gen()) };
            check_smyth_hypothesis(&generate_random_qpm(&gen).unwrap(), SMYTH_PREFIXES, rng.gen()).unwrap()
        })
        .collect();
    let prefixes: usize = reports.iter().map(|r| r.trials).sum();
    let found: usize = reports.iter().map(|r| r.ds_limit_found).sum();
    let clean = reports.iter().all(|r| r.passed());
    outcome(
        passed == SUZUKI_INSTANCES && clean && found == SMYTH_SPACES * SMYTH_PREFIXES,
        format!("(i)-(iv) {passed}/{SUZUKI_INSTANCES}; dˢ-limit found in {found}/{prefixes} right K-Cauchy prefixes"),
    )
}

struct SmallCase {
    space: FiniteSpace,
    f: Objective,
    gamma: f64,
}

fn exhaustive_small_family() -> Vec<SmallCase> {
    let mut cases = vec![];
    let levels = [0.0, 1.0, 2.0];
    for &ab in &levels {
        for &ba in &levels {
            let space = FiniteSpace::from_matrix(2, vec![0.0, ab, ba, 0.0]).unwrap();
            for &fa in &levels {
                for &fb in &levels {
                    for gamma in [0.5, 1.0] {
                        cases.push(SmallCase { space: space.clone(), f: Objective::from_finite(&[fa, fb]).unwrap(), gamma });
                    }
                }
            }
        }
    }
    for bits in 0u32..64 {
        let mut m = vec![0.0; 9];
        let off = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
        for (k, (i, j)) in off.iter().enumerate() {
            m[i * 3 + j] = f64::from((bits >> k) & 1);
        }
        let space = FiniteSpace::from_matrix(3, m).unwrap();
        if !validate_axioms(&space).unwrap().qm2_ok {
            continue;
        }
        for fbits in 0u32..8 {
            let values: Vec<f64> = (0..3).map(|k| f64::from((fbits >> k) & 1)).collect();
            for gamma in [0.5, 1.0] {
                cases.push(SmallCase { space: space.clone(), f: Objective::from_finite(&values).unwrap(), gamma });
            }
        }
    }
    cases
}

fn random_small_family() -> Vec<SmallCase> {
    (0..SMALL_RANDOM)
        .map(|k| {
            let mut rng = rng_for(7, k);
            let n = rng.gen_range(1..=SMALL_MAX_N);
            let gen = GenParams { zero_prob: 0.3, quantum: Some(0.5), scale: 2.0, ..GenParams::new(n, rng.gen()) };
            let space = generate_random_qpm(&gen).unwrap();
            let raw = random_objective(n, &ObjectiveParams { scale: 3.0, quantum: Some(0.5), ..ObjectiveParams::new(rng.gen()) })
                .unwrap();
            let f = if rng.gen_bool(0.5) { lsc_envelope(&space, &raw).unwrap() } else { raw };
            let gamma = *[0.25, 0.5, 1.0, 2.0].choose(&mut rng).unwrap();
            SmallCase { space, f, gamma }
        })
        .collect()
}

fn ac6_strong_min() -> Outcome {
    let start = Instant::now();
    let mut cases = exhaustive_small_family();
    let exhaustive = cases.len();
    cases.extend(random_small_family());
    let checks: Vec<(usize, usize, DOrder)> = cases
        .iter()
        .enumerate()
        .flat_map(|(c, case)| {
            (0..case.space.len()).flat_map(move |z| [DOrder::ToZ, DOrder::FromZ].map(|o| (c, z, o)))
        })
        .collect();
    // (finite check holds, simulation agrees)
    let verdicts: Vec<(bool, bool)> = checks
        .par_iter()
        .enumerate()
        .map(|(k, &(c, z, order))| {
            let SmallCase { space, f, gamma } = &cases[c];
            let cfg = SolverConfig { d_order: order, mutation: None };
            let finite = check_strong_min_finite(space, f, *gamma, z, &cfg).unwrap() == StrongMinCheck::Pass;
            let sim = simulate_strong_condition(space, f, *gamma, z, order, SEQUENCES, SEED ^ k as u64).unwrap();
            (finite, finite == sim.condition_holds())
        })
        .collect();
    let elapsed = start.elapsed();
    let agree = verdicts.iter().filter(|v| v.1).count();
    let violated = verdicts.iter().filter(|v| !v.0).count();
    outcome(
        agree == checks.len() && elapsed < STRONG_MIN_BUDGET,
        format!(
            "{agree}/{} (instance, z, order) checks agree with {SEQUENCES} simulated sequences each, {violated} of them violations ({exhaustive} exhaustive + {SMALL_RANDOM} random instances); {elapsed:.2?}",
            checks.len()
        ),
    )
}

fn ac7_ray() -> Outcome {
    let space = ImplicitSpace::new(Formula::Abs, 0.0, 1.0).unwrap();
    let f = ObjectiveFormula::QuadExpDecay;
    let f50 = f.eval(50.0);
    let dom = RayDomain { space, f };
    let traces = minimizing_sequence_probe(&dom, 0.0, &0.0, &ProbeOptions { seed: SEED, ..Default::default() }).unwrap();
    let diverging = traces.iter().filter(|t| matches!(t.verdict, TraceVerdict::Diverges { .. })).count();
    let escape = &traces[0];
    let escape_is_n = escape.dists.iter().enumerate().all(|(n, &d)| d == n as f64);
    let unbounded = !check_dbar_bounded(&space, &PointSeq::from_rule(60, |n| n as f64).unwrap(), false).bounded;

    let cfg = SolverConfig::default();
    let truncations_ok = TRUNCATIONS.iter().all(|&n| {
        let finite = space.truncate(n).unwrap();
        let fv = f.sample((0..n).map(|k| space.sample(k))).unwrap();
        let cert = strong_ekeland_suzuki(&finite, &fv, 0.5, 0, &cfg).unwrap();
        cert.z == 0 && cert.cond_4.is_pass()
    });
    outcome(
        f50.abs() < RAY_F50_BOUND && diverging >= 1 && escape_is_n && unbounded && truncations_ok,
        format!(
            "f(50) = {f50:.3e}; {diverging}/{} probe traces diverge with d(x_n, 0) = n; truncations N ∈ {TRUNCATIONS:?} certify z = 0 with (d): {truncations_ok}",
            traces.len()
        ),
    )
}

fn ac8_sublevel() -> Outcome {
    let results: Vec<(bool, bool)> = (0..SUBLEVEL_TRIPLES)
        .into_par_iter()
        .map(|k| {
            let mut rng = rng_for(8, k);
            let n = rng.gen_range(1..=EKELAND_MAX_N);
            let gen = GenParams { zero_prob: *[0.1, 0.3].choose(&mut rng).unwrap(), ..GenParams::new(n, rng.gen()) };
            let space = generate_random_qpm(&gen).unwrap();
            let raw = random_objective(n, &ObjectiveParams::new(rng.gen())).unwrap();
            let replaced = !is_lsc(&space, &raw);
            let f = if replaced { lsc_envelope(&space, &raw).unwrap() } else { raw };
            let alpha = positive_up_to(&mut rng, PARAM_MAX);
            let r = check_sublevel_properties(&space, &f, alpha).unwrap();
            (r.lsc && r.all().iter().all(|c| c.is_pass()), replaced)
        })
        .collect();
    let passed = results.iter().filter(|r| r.0).count();
    let replaced = results.iter().filter(|r| r.1).count();
    outcome(
        passed == SUBLEVEL_TRIPLES,
        format!(
            "all five properties hold on {passed}/{SUBLEVEL_TRIPLES} triples ({replaced} non-lsc objectives replaced by their lsc envelope)"
        ),
    )
}

fn ac9_mutations() -> Outcome {
    let found: Vec<(Mutation, Option<usize>)> = Mutation::ALL
        .iter()
        .map(|&m| {
            let cfg = SolverConfig { mutation: Some(m), ..Default::default() };
            let r = falsify(Family::Mixed, MUTATION_BUDGET, SEED, &cfg).unwrap();
            (m, r.counterexample.map(|c| c.instance))
        })
        .collect();
    let clean = falsify(Family::Mixed, MUTATION_BUDGET, SEED, &SolverConfig::default()).unwrap();
    let caught = found.iter().filter(|(_, k)| k.is_some()).count();
    let detail: Vec<String> = found
        .iter()
        .map(|(m, k)| match k {
            Some(k) => format!("{m:?} at instance {k}"),
            None => format!("{m:?} not found"),
        })
        .collect();
    outcome(
        caught == Mutation::ALL.len() && clean.counterexample.is_none(),
        format!("{}; unmutated run clean: {}", detail.join(", "), clean.counterexample.is_none()),
    )
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let (runs, elapsed) = ekeland_runs();
    let criteria: Vec<Criterion> = vec![
        ("AC1 axiom suite", Box::new(ac1_axioms)),
        ("AC2 EkVP soundness", Box::new(|| ac2_soundness(&runs, elapsed))),
        ("AC3 substitution coherence", Box::new(|| ac3_substitution(&runs))),
        ("AC4 strong EkVP, restriction construction", Box::new(ac4_georgiev)),
        ("AC5 strong EkVP, bounded-compactness flavor", Box::new(ac5_suzuki)),
        ("AC6 strong-minimum characterization", Box::new(ac6_strong_min)),
        ("AC7 strict-but-not-strong ray", Box::new(ac7_ray)),
        ("AC8 sublevel properties", Box::new(ac8_sublevel)),
        ("AC9 mutation sanity", Box::new(ac9_mutations)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let o = run();
        println!("{} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
