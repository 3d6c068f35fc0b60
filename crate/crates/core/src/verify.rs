//! Recomputes every published energy value and a seeded coalescence check.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructions::{figure1, random_tree, tstar};
use crate::enumeration::free_trees;
use crate::reference::{
    CITED_TOL, EXACT_DEGREE_ENERGIES, FIGURE1_ENERGIES, T6_ENERGY, TSTAR3_ENERGIES, TSTAR3_TOL,
};
use crate::spectral::{energy, Method, DEFAULT_TOL};
use crate::tree::Tree;

pub const DEFAULT_SEED: u64 = 0x5eed_e6e7;
const RANDOM_PAIRS: usize = 200;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

/// Energy evaluator used by the checks; returns `(energy, error_bound)`.
pub type EnergyFn<'a> = dyn Fn(&Tree) -> Result<(f64, f64), String> + Sync + 'a;

pub fn default_energy(t: &Tree) -> Result<(f64, f64), String> {
    energy(t, DEFAULT_TOL, Method::ExactRoots)
        .map(|e| (e.energy, e.error_bound))
        .map_err(|e| e.to_string())
}

pub fn verify_reference_values(seed: u64) -> Vec<Check> {
    verify_reference_values_with(&default_energy, seed)
}

fn value_check(name: String, expected: f64, tol: f64, got: Result<(f64, f64), String>, digits: usize) -> Check {
    match got {
        Ok((e, _)) => Check {
            name,
            expected: format!("{expected:.digits$}"),
            got: format!("{e:.prec$}", prec = digits + 2),
            pass: (e - expected).abs() <= tol,
        },
        Err(msg) => Check { name, expected: format!("{expected:.digits$}"), got: format!("error: {msg}"), pass: false },
    }
}

/// All checks, with a pluggable energy evaluator.
pub fn verify_reference_values_with(energy_of: &EnergyFn<'_>, seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    for &(n, expected) in &TSTAR3_ENERGIES {
        let got = tstar(n, 3).map_err(|e| e.to_string()).and_then(|t| energy_of(&t));
        checks.push(value_check(format!("E(T*({n},3))"), expected, TSTAR3_TOL, got, 5));
    }
    for &(name, expected) in &FIGURE1_ENERGIES {
        let got = figure1(name).map_err(|e| e.to_string()).and_then(|t| energy_of(&t));
        checks.push(value_check(format!("E({name})"), expected, CITED_TOL, got, 3));
    }

    let exact_degree = |n: usize, delta: usize| -> Vec<Tree> {
        free_trees(n, Some(delta)).filter(|t| t.max_degree() == delta).collect()
    };

    let t6 = exact_degree(6, 4);
    let t6_check = match t6.as_slice() {
        [t] => value_check("E(T6), unique tree n=6 delta=4".into(), T6_ENERGY, CITED_TOL, energy_of(t), 3),
        other => Check {
            name: "E(T6), unique tree n=6 delta=4".into(),
            expected: "1 tree".into(),
            got: format!("{} trees", other.len()),
            pass: false,
        },
    };
    checks.push(t6_check);

    for &(n, delta, expected) in &EXACT_DEGREE_ENERGIES {
        let trees = exact_degree(n, delta);
        let got: Result<Vec<(f64, f64)>, String> = trees.iter().map(energy_of).collect();
        match got {
            Ok(mut got) if got.len() == expected.len() => {
                got.sort_by(|a, b| a.0.total_cmp(&b.0));
                for (i, (&e, g)) in expected.iter().zip(got).enumerate() {
                    let name = format!("energy #{} of {} trees n={n} delta={delta}", i + 1, expected.len());
                    checks.push(value_check(name, e, CITED_TOL, Ok(g), 3));
                }
            }
            Ok(got) => checks.push(Check {
                name: format!("trees n={n} delta={delta}"),
                expected: format!("{} trees", expected.len()),
                got: format!("{} trees", got.len()),
                pass: false,
            }),
            Err(msg) => checks.push(Check {
                name: format!("trees n={n} delta={delta}"),
                expected: format!("{expected:?}"),
                got: format!("error: {msg}"),
                pass: false,
            }),
        }
    }

    checks.push(coalescence_check(energy_of, seed));
    checks
}

/// `E(g o h) <= E(g) + E(h)` on random pairs of trees with at most 20 vertices.
fn coalescence_check(energy_of: &EnergyFn<'_>, seed: u64) -> Check {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::NEG_INFINITY;
    let mut failure = None;
    for _ in 0..RANDOM_PAIRS {
        let g = random_tree(rng.gen_range(1..=10), &mut rng);
        let h = random_tree(rng.gen_range(1..=10), &mut rng);
        let u = rng.gen_range(0..g.n());
        let v = rng.gen_range(0..h.n());
        let gh = g.coalesce(u, &h, v).expect("indices in range");
        match (energy_of(&g), energy_of(&h), energy_of(&gh)) {
            (Ok(eg), Ok(eh), Ok(egh)) => {
                let slack = egh.0 - (eg.0 + eh.0) - (eg.1 + eh.1 + egh.1);
                worst = worst.max(slack);
            }
            (a, b, c) => {
                failure = [a, b, c].into_iter().find_map(Result::err);
                break;
            }
        }
    }
    Check {
        name: format!("coalescence inequality on {RANDOM_PAIRS} random pairs (seed {seed})"),
        expected: "E(g o h) <= E(g) + E(h)".into(),
        got: match &failure {
            Some(msg) => format!("error: {msg}"),
            None => format!("max excess {worst:.3e}"),
        },
        pass: failure.is_none() && worst <= 0.0,
    }
}
