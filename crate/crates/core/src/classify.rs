//! Existence of (strongly) hypoenergetic trees by order and maximum degree,
//! with certified witness trees.
//!
//! The yes/no answer always comes from the closed-form classification. Numerics
//! only decide whether a particular witness is *certified*: its energy plus the
//! guaranteed error bound must lie strictly below the threshold.

use serde::Serialize;
use thiserror::Error;

use crate::constructions::{
    degree_feasible, figure1, glue_at_leaves, max_nullity_tree, min_matching_number, path, star, tstar,
    ConstructionError,
};
use crate::enumeration::{exhaustive_witness_with, EnumerationError};
use crate::reference::tstar3_energy;
use crate::spectral::{energy, EnergyResult, Method, SpectralError, DEFAULT_TOL};
use crate::tree::Tree;

/// Largest order for which the witness battery falls back to exhaustive search.
pub const EXHAUSTIVE_FALLBACK_MAX_N: usize = 18;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("no certified witness found for n={n}, delta={delta}, strong={strong}")]
    NoWitnessFound { n: usize, delta: usize, strong: bool },
    #[error("no {kind} tree of order {n} and maximum degree {delta} exists")]
    DoesNotExist { n: usize, delta: usize, kind: &'static str },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

/// `E < n` (hypoenergetic) or `E < n - 1` (strongly hypoenergetic).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Threshold {
    pub value: f64,
    pub strong: bool,
}

impl Threshold {
    pub fn for_order(n: usize, strong: bool) -> Self {
        let value = if strong { n as f64 - 1.0 } else { n as f64 };
        Threshold { value, strong }
    }
}

/// Certifies `E(t) < n` (or `< n - 1` when `strong`) at the default tolerance.
pub fn certify(t: &Tree, strong: bool) -> Result<bool, SpectralError> {
    certify_with(t, Threshold::for_order(t.n(), strong), DEFAULT_TOL)
}

/// Like [`certify`] with an explicit threshold and tolerance. A coarse pass
/// rejects trees whose energy is clearly above the threshold.
pub fn certify_with(t: &Tree, threshold: Threshold, tol: f64) -> Result<bool, SpectralError> {
    const COARSE_TOL: f64 = 1e-3;
    if tol < COARSE_TOL {
        let coarse = energy(t, COARSE_TOL, Method::ExactRoots)?;
        if coarse.lower() >= threshold.value {
            return Ok(false);
        }
    }
    Ok(certificate(t, threshold, tol)?.is_some())
}

/// The energy result if it certifies against `threshold`.
fn certificate(t: &Tree, threshold: Threshold, tol: f64) -> Result<Option<EnergyResult>, SpectralError> {
    let e = energy(t, tol, Method::ExactRoots)?;
    Ok((e.upper() < threshold.value).then_some(e))
}

/// `2 n0 >= n + 1`: for a non-star tree this nullity alone forces `E < n - 1`.
pub fn nullity_forces_strong(n: usize, nullity: usize) -> bool {
    2 * nullity > n
}

/// `4 ceil((n-1)/delta) <= n - 1`: the maximum-nullity tree of order `n` and
/// maximum degree `delta` is then strongly hypoenergetic.
pub fn max_nullity_condition(n: usize, delta: usize) -> bool {
    delta >= 1 && n >= 2 && 4 * min_matching_number(n, delta) < n
}

/// The closed-form classification for one `(n, delta)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub n: usize,
    pub delta: usize,
    pub feasible: bool,
    pub hypo: bool,
    pub strong: bool,
    pub hypo_clause: String,
    pub strong_clause: String,
}

const DELTA4_STRONG_SPORADIC: [usize; 5] = [9, 13, 17, 20, 21];

pub fn theorem_table(n: usize, delta: usize) -> TableEntry {
    let feasible = degree_feasible(n, delta);
    if !feasible {
        let clause = format!("infeasible: no tree of order {n} has maximum degree {delta}");
        return TableEntry {
            n,
            delta,
            feasible,
            hypo: false,
            strong: false,
            hypo_clause: clause.clone(),
            strong_clause: clause,
        };
    }
    let (hypo, hypo_clause) = match delta {
        0 => (true, "single vertex: E = 0 < 1".to_string()),
        1 => (false, "K2: E = 2 is not below n = 2".to_string()),
        2 | 3 => (
            matches!((delta, n), (2, 3) | (3, 4) | (3, 7)),
            "max degree <= 3: hypoenergetic trees exist only for n = 1, 3, 4, 7 (K1, S3, S4, W)".to_string(),
        ),
        _ => (true, "max degree >= 4: hypoenergetic trees exist for every n >= delta + 1".to_string()),
    };
    let (strong, strong_clause) = match delta {
        0 => (false, "single vertex: E = 0 is not below n - 1 = 0".to_string()),
        1 => (false, "K2: E = 2 is not below n - 1 = 1".to_string()),
        2 | 3 => (false, "max degree <= 3: no strongly hypoenergetic trees exist".to_string()),
        4 => {
            let yes = DELTA4_STRONG_SPORADIC.contains(&n) || n >= 23;
            let base = "max degree 4: strongly hypoenergetic trees exist only for n in {9, 13, 17, 20, 21} and n >= 23";
            let clause = match tstar3_energy(n) {
                Some(e) if !yes => format!(
                    "{base}; n = {n} excluded: minimum-energy tree T*({n},3) has E = {e:.5} >= n - 1"
                ),
                _ if !yes && n <= 8 => format!("{base}; n = {n} excluded by exhaustive search"),
                _ => base.to_string(),
            };
            (yes, clause)
        }
        5 => (
            n == 6 || n >= 9,
            "max degree 5: strongly hypoenergetic trees exist only for n = 6 and n >= 9".to_string(),
        ),
        _ => (true, "max degree >= 6: strongly hypoenergetic trees exist for every n >= delta + 1".to_string()),
    };
    debug_assert!(!strong || hypo);
    TableEntry { n, delta, feasible, hypo, strong, hypo_clause, strong_clause }
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub tree: Tree,
    pub certificate: EnergyResult,
    pub strategy: String,
    /// `threshold - (energy + error_bound)`, always positive.
    pub margin: f64,
}

/// Existence verdict for one question (hypoenergetic or strongly so).
#[derive(Clone, Debug)]
pub struct Verdict {
    pub n: usize,
    pub delta: usize,
    pub feasible: bool,
    pub hypo_exists: bool,
    pub strong_exists: bool,
    /// The question asked.
    pub strong: bool,
    pub clause: String,
    pub witness: Option<Witness>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct VerdictReport {
    pub n: usize,
    pub delta: usize,
    pub feasible: bool,
    pub hypo: bool,
    pub strong: bool,
    pub clause: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_edges: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub energy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
}

impl Verdict {
    /// The answer to the question asked.
    pub fn exists(&self) -> bool {
        if self.strong {
            self.strong_exists
        } else {
            self.hypo_exists
        }
    }

    pub fn report(&self) -> VerdictReport {
        let w = self.witness.as_ref();
        VerdictReport {
            n: self.n,
            delta: self.delta,
            feasible: self.feasible,
            hypo: self.hypo_exists,
            strong: self.strong_exists,
            clause: self.clause.clone(),
            witness_edges: w.map(|w| w.tree.edges()),
            energy: w.map(|w| w.certificate.energy),
            error_bound: w.map(|w| w.certificate.error_bound),
            margin: w.map(|w| w.margin),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.report()).expect("verdict serializes")
    }
}

fn verdict(n: usize, delta: usize, strong: bool) -> Result<Verdict, ClassifyError> {
    let entry = theorem_table(n, delta);
    let exists = if strong { entry.strong } else { entry.hypo };
    let witness = if exists { Some(witness(n, delta, strong)?) } else { None };
    Ok(Verdict {
        n,
        delta,
        feasible: entry.feasible,
        hypo_exists: entry.hypo,
        strong_exists: entry.strong,
        strong,
        clause: if strong { entry.strong_clause } else { entry.hypo_clause },
        witness,
    })
}

pub fn hypo_exists(n: usize, delta: usize) -> Result<Verdict, ClassifyError> {
    verdict(n, delta, false)
}

pub fn strong_exists(n: usize, delta: usize) -> Result<Verdict, ClassifyError> {
    verdict(n, delta, true)
}

/// Candidate trees in battery order, each tagged with the strategy name.
fn candidates(n: usize, delta: usize, strong: bool) -> Vec<(String, Tree)> {
    let mut out: Vec<(String, Tree)> = Vec::new();
    if n == delta + 1 || (n, delta) == (1, 0) {
        out.push(("star".into(), star(n)));
    }
    if !strong && (n, delta) == (7, 3) {
        out.push(("figure1 W".into(), figure1("W").expect("W exists")));
    }
    if let Ok(t) = max_nullity_tree(n, delta) {
        out.push(("max-nullity chain of stars".into(), t));
    }
    if delta == 4 && n >= 5 {
        if let Ok(t) = tstar(n, 3) {
            out.push((format!("minimum-energy tree T*({n},3)"), t));
        }
    }
    // coalescence chains
    if delta == 4 && n >= 10 && n % 4 == 2 {
        if let (Ok(t6), Ok(rest)) = (tstar(6, 3), tstar(n - 5, 3)) {
            out.push((format!("T6 o T*({},3) at leaves", n - 5), glue_at_leaves(&t6, &rest)));
        }
    }
    if (n, delta) == (12, 5) {
        if let Ok(t11) = max_nullity_tree(11, 5) {
            out.push(("T11 o P2 at a leaf".into(), glue_at_leaves(&t11, &path(2))));
        }
    }
    let mut bases: Vec<(String, Tree)> = Vec::new();
    if delta == 4 {
        for m in [20, 23, 26, 6] {
            if let Ok(t) = tstar(m, 3) {
                bases.push((format!("T*({m},3)"), t));
            }
        }
    }
    if delta >= 4 {
        let mut m = delta + 1;
        while m + 4 <= n && m <= n {
            if let Ok(t) = max_nullity_tree(m, delta) {
                bases.push((format!("max-nullity({m},{delta})"), t));
            }
            m += 1;
        }
    }
    for (name, base) in bases {
        if base.n() >= n || !(n - base.n()).is_multiple_of(4) {
            continue;
        }
        let links = (n - base.n()) / 4;
        let mut t = base;
        let s5 = star(5);
        for _ in 0..links {
            t = glue_at_leaves(&t, &s5);
        }
        out.push((format!("{name} chained with {links} x S5 at leaves"), t));
    }
    out
}

/// A tree of order `n` and maximum degree exactly `delta` whose certified
/// energy is below `n` (or `n - 1` when `strong`).
pub fn witness(n: usize, delta: usize, strong: bool) -> Result<Witness, ClassifyError> {
    let threshold = Threshold::for_order(n, strong);
    let not_found = ClassifyError::NoWitnessFound { n, delta, strong };
    if n == 0 || !degree_feasible(n, delta) {
        return Err(not_found);
    }
    for (strategy, tree) in candidates(n, delta, strong) {
        if tree.n() != n || tree.max_degree() != delta {
            continue;
        }
        if let Some(w) = certified(tree, threshold, strategy)? {
            return Ok(w);
        }
    }
    if n <= EXHAUSTIVE_FALLBACK_MAX_N {
        if let Some(tree) = exhaustive_witness_with(n, delta, strong, EXHAUSTIVE_FALLBACK_MAX_N)? {
            if let Some(w) = certified(tree, threshold, "exhaustive search".into())? {
                return Ok(w);
            }
        }
    }
    Err(not_found)
}

fn certified(tree: Tree, threshold: Threshold, strategy: String) -> Result<Option<Witness>, ClassifyError> {
    Ok(certificate(&tree, threshold, DEFAULT_TOL)?.map(|certificate| Witness {
        margin: threshold.value - certificate.upper(),
        tree,
        certificate,
        strategy,
    }))
}
