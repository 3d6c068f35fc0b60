//! Characteristic polynomials, nullity, eigenvalues and energy of trees.
//!
//! Two eigenvalue backends are provided. [`Method::ExactRoots`] works from the
//! exact integer characteristic polynomial: for a tree it is
//! `x^n0 * h(x^2)` where `h` has only positive real roots, so the spectrum is
//! recovered by isolating the roots of `h` with Sturm sequences and bisecting
//! on dyadic rationals. Every reported eigenvalue comes with a bracket, which
//! gives a guaranteed energy error bound. [`Method::DenseEigensolver`] runs
//! cyclic Jacobi on the adjacency matrix and is kept as an independent
//! cross-check.

pub mod jacobi;
pub mod poly;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::Tree;
use poly::{isolate_positive_roots, QPoly, SqrtWidthTarget};

pub const DEFAULT_TOL: f64 = 1e-9;
const MAX_JACOBI_SWEEPS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e}, tol {tol:e})")]
    NonConvergence { sweeps: usize, off_norm: f64, tol: f64 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    #[default]
    ExactRoots,
    DenseEigensolver,
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" | "exact_roots" => Ok(Method::ExactRoots),
            "dense" | "dense_eigensolver" => Ok(Method::DenseEigensolver),
            other => Err(format!("unknown method {other:?} (expected exact_roots or dense)")),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::ExactRoots => "exact_roots",
            Method::DenseEigensolver => "dense_eigensolver",
        })
    }
}

/// `det(xI - A)` with exact coefficients `c_0..c_n`, low to high degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        CharPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Multiplicity of 0 as a root.
    pub fn trailing_zeros(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.degree())
    }

    /// Matching counts `m_k` read off as `(-1)^k c_{n-2k}`.
    pub fn matching_counts(&self) -> Vec<BigInt> {
        let n = self.degree();
        (0..=n / 2)
            .map(|k| {
                let c = &self.coeffs[n - 2 * k];
                if k % 2 == 0 {
                    c.clone()
                } else {
                    -c
                }
            })
            .collect()
    }

    /// True when the polynomial has the shape `sum (-1)^k m_k x^(n-2k)` with
    /// `m_k >= 0`, `m_0 = 1` and `m_1 = n - 1`.
    pub fn has_matching_structure(&self) -> bool {
        let n = self.degree();
        let odd_gaps_zero = (0..=n).filter(|i| (n - i) % 2 == 1).all(|i| self.coeffs[i].is_zero());
        let m = self.matching_counts();
        odd_gaps_zero
            && m[0].is_one()
            && m.iter().all(|c| !c.is_negative())
            && (n < 2 || m[1] == BigInt::from(n - 1))
    }

    /// The polynomial `h(y)` with `phi(x) = x^n0 h(x^2)`, monic, `h(0) != 0`.
    pub fn reduced_even_part(&self) -> Vec<BigInt> {
        let n0 = self.trailing_zeros();
        self.coeffs[n0..].iter().step_by(2).cloned().collect()
    }

    /// Evaluate at a float point (Horner). Used only for diagnostics.
    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl std::fmt::Display for CharPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_mag = !mag.is_one() || i == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub_assign(a: &mut Vec<BigInt>, b: &[BigInt]) {
    if a.len() < b.len() {
        a.resize(b.len(), BigInt::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x -= y;
    }
}

/// Characteristic polynomial by the rooted two-polynomial recursion.
///
/// For each vertex `v`, `p_v` is the characteristic polynomial of the subtree
/// at `v` and `q_v` that of the same subtree with `v` deleted:
/// `p_v = x * prod p_c - sum_j q_j * prod_{i != j} p_i`, `q_v = prod p_c`.
pub fn char_poly(t: &Tree) -> CharPoly {
    let (parent, order) = t.rooted(0);
    let n = t.n();
    let mut p: Vec<Vec<BigInt>> = vec![Vec::new(); n];
    let mut q: Vec<Vec<BigInt>> = vec![Vec::new(); n];
    let one = vec![BigInt::one()];
    for &v in order.iter().rev() {
        let children: Vec<usize> = t.neighbors(v).iter().copied().filter(|&c| c != parent[v]).collect();
        let k = children.len();
        // prefix[i] = p_c0 * .. * p_c(i-1); suffix[i] = p_ci * .. * p_c(k-1)
        let mut prefix = Vec::with_capacity(k + 1);
        prefix.push(one.clone());
        for &c in &children {
            let next = poly_mul(prefix.last().unwrap(), &p[c]);
            prefix.push(next);
        }
        let mut suffix = vec![one.clone(); k + 1];
        for i in (0..k).rev() {
            suffix[i] = poly_mul(&p[children[i]], &suffix[i + 1]);
        }
        let prod = prefix[k].clone();
        let mut pv = Vec::with_capacity(prod.len() + 1);
        pv.push(BigInt::zero());
        pv.extend(prod.iter().cloned());
        for (j, &c) in children.iter().enumerate() {
            let others = poly_mul(&prefix[j], &suffix[j + 1]);
            poly_sub_assign(&mut pv, &poly_mul(&q[c], &others));
        }
        for &c in &children {
            p[c] = Vec::new();
            q[c] = Vec::new();
        }
        p[v] = pv;
        q[v] = prod;
    }
    let mut coeffs = std::mem::take(&mut p[0]);
    coeffs.truncate(n + 1);
    CharPoly { coeffs }
}

/// Size of a maximum matching (leaf-greedy from the deepest vertices up).
pub fn matching_number(t: &Tree) -> usize {
    let (parent, order) = t.rooted(0);
    let mut matched = vec![false; t.n()];
    let mut size = 0;
    for &v in order.iter().rev() {
        let p = parent[v];
        if p != usize::MAX && !matched[v] && !matched[p] {
            matched[v] = true;
            matched[p] = true;
            size += 1;
        }
    }
    size
}

/// Nullity `n - 2 mu`, cross-checked against the zero multiplicity of the
/// characteristic polynomial.
pub fn nullity(t: &Tree) -> Result<usize, SpectralError> {
    nullity_with(t, &char_poly(t))
}

fn nullity_with(t: &Tree, cp: &CharPoly) -> Result<usize, SpectralError> {
    let by_matching = t.n() - 2 * matching_number(t);
    let by_poly = cp.trailing_zeros();
    if by_matching != by_poly {
        return Err(SpectralError::InternalInconsistency(format!(
            "nullity by matching {by_matching} != zero multiplicity of char poly {by_poly}"
        )));
    }
    Ok(by_matching)
}

/// Upper bound `sqrt(2 m (n - n0))` with `m = n - 1` and exact nullity.
pub fn energy_upper_bound(t: &Tree) -> f64 {
    let n = t.n();
    let n0 = n - 2 * matching_number(t);
    ((2 * (n - 1) * (n - n0)) as f64).sqrt()
}

/// Energy with a guaranteed bound `|energy - E(G)| <= error_bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct EnergyResult {
    pub n: usize,
    pub energy: f64,
    pub error_bound: f64,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub nullity: usize,
    pub method: Method,
    pub char_poly: CharPoly,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct EnergyReport {
    pub n: usize,
    pub energy: f64,
    pub error_bound: f64,
    pub nullity: usize,
    pub eigenvalues: Vec<f64>,
    pub method: Method,
    pub char_poly_coeffs: Vec<String>,
}

impl EnergyResult {
    pub fn report(&self) -> EnergyReport {
        EnergyReport {
            n: self.n,
            energy: self.energy,
            error_bound: self.error_bound,
            nullity: self.nullity,
            eigenvalues: self.eigenvalues.clone(),
            method: self.method,
            char_poly_coeffs: self.char_poly.coeffs().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.report()).expect("energy report serializes")
    }

    /// `energy + error_bound`: no true energy can exceed it.
    pub fn upper(&self) -> f64 {
        self.energy + self.error_bound
    }

    pub fn lower(&self) -> f64 {
        self.energy - self.error_bound
    }
}

/// Exact spectrum: positive eigenvalue brackets `[sqrt(lo), sqrt(hi)]` with
/// multiplicities, plus the nullity.
#[derive(Clone, Debug)]
pub struct ExactSpectrum {
    pub positive: Vec<(f64, f64, usize)>,
    pub nullity: usize,
}

fn check_tol(tol: f64) -> Result<(), SpectralError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(SpectralError::BadTolerance(tol))
    }
}

/// Isolates the spectrum of a tree-shaped characteristic polynomial.
///
/// Each eigenvalue bracket is refined until its width is at most `tol / n`.
pub fn exact_spectrum(cp: &CharPoly, tol: f64) -> Result<ExactSpectrum, SpectralError> {
    check_tol(tol)?;
    let n = cp.degree();
    let nullity = cp.trailing_zeros();
    let h = cp.reduced_even_part();
    let mu = h.len() - 1;
    if mu == 0 {
        return Ok(ExactSpectrum { positive: Vec::new(), nullity });
    }
    let lead = &h[mu];
    if !lead.is_one() {
        return Err(SpectralError::InternalInconsistency(format!(
            "characteristic polynomial is not monic (leading coefficient {lead})"
        )));
    }
    // Cauchy bound for a monic polynomial
    let bound = h.iter().take(mu).map(|c| c.abs()).max().unwrap_or_default() + BigInt::one();
    let target = SqrtWidthTarget::new(tol / n.max(1) as f64);
    let hq = QPoly::from_ints(&h);
    let mut positive = Vec::new();
    let mut counted = 0;
    for (factor, mult) in hq.square_free_factors() {
        let brackets = isolate_positive_roots(&factor, &bound, &target);
        if brackets.len() != factor.degree() {
            return Err(SpectralError::InternalInconsistency(format!(
                "square-free factor of degree {} has {} positive real roots",
                factor.degree(),
                brackets.len()
            )));
        }
        for b in brackets {
            positive.push((b.lo().to_f64().max(0.0).sqrt(), b.hi().to_f64().sqrt(), mult));
            counted += mult;
        }
    }
    if counted != mu {
        return Err(SpectralError::InternalInconsistency(format!(
            "found {counted} positive squared eigenvalues, expected {mu}"
        )));
    }
    positive.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(ExactSpectrum { positive, nullity })
}

/// Energy from a characteristic polynomial alone (exact-roots backend).
pub fn energy_from_char_poly(cp: &CharPoly, tol: f64) -> Result<(f64, f64, Vec<f64>, usize), SpectralError> {
    let spec = exact_spectrum(cp, tol)?;
    let mut energy = 0.0;
    let mut error = 0.0;
    let mut eig = Vec::with_capacity(cp.degree());
    for &(lo, hi, mult) in &spec.positive {
        let mid = 0.5 * (lo + hi);
        energy += 2.0 * mult as f64 * mid;
        // half-width on each side of zero, plus rounding of the f64 square roots
        error += mult as f64 * ((hi - lo) + 8.0 * f64::EPSILON * hi);
        for _ in 0..mult {
            eig.push(mid);
            eig.push(-mid);
        }
    }
    eig.extend(std::iter::repeat_n(0.0, spec.nullity));
    eig.sort_by(f64::total_cmp);
    error += cp.degree() as f64 * f64::EPSILON * energy;
    Ok((energy, error, eig, spec.nullity))
}

fn adjacency(t: &Tree) -> Vec<f64> {
    let n = t.n();
    let mut a = vec![0.0; n * n];
    for (u, v) in t.edges() {
        a[u * n + v] = 1.0;
        a[v * n + u] = 1.0;
    }
    a
}

fn dense_spectrum(t: &Tree, tol: f64) -> Result<(Vec<f64>, f64), SpectralError> {
    check_tol(tol)?;
    let n = t.n();
    let (mut eig, off, sweeps) = jacobi::symmetric_eigenvalues(adjacency(t), n, tol, MAX_JACOBI_SWEEPS)
        .ok_or(SpectralError::NonConvergence {
            sweeps: MAX_JACOBI_SWEEPS,
            off_norm: f64::NAN,
            tol,
        })?;
    eig.sort_by(f64::total_cmp);
    // Weyl: each eigenvalue moves by at most the dropped off-diagonal norm;
    // rotations add O(n eps ||A||_F) per sweep.
    let frob = (2.0 * (n.saturating_sub(1)) as f64).sqrt();
    let per_eig = off + 4.0 * (sweeps.max(1) * n) as f64 * f64::EPSILON * frob;
    Ok((eig, per_eig))
}

/// Sorted eigenvalues, each within `tol` of a true eigenvalue.
pub fn eigenvalues(t: &Tree, tol: f64, method: Method) -> Result<Vec<f64>, SpectralError> {
    match method {
        Method::ExactRoots => Ok(energy_from_char_poly(&char_poly(t), tol)?.2),
        Method::DenseEigensolver => Ok(dense_spectrum(t, tol)?.0),
    }
}

pub fn energy(t: &Tree, tol: f64, method: Method) -> Result<EnergyResult, SpectralError> {
    let cp = char_poly(t);
    let nullity = nullity_with(t, &cp)?;
    let (energy, error_bound, eigenvalues) = match method {
        Method::ExactRoots => {
            let (e, err, eig, _) = energy_from_char_poly(&cp, tol)?;
            (e, err, eig)
        }
        Method::DenseEigensolver => {
            let (eig, per_eig) = dense_spectrum(t, tol)?;
            let e: f64 = eig.iter().map(|x| x.abs()).sum();
            let err = t.n() as f64 * per_eig + t.n() as f64 * f64::EPSILON * e;
            (e, err, eig)
        }
    };
    Ok(EnergyResult {
        n: t.n(),
        energy,
        error_bound,
        eigenvalues,
        nullity,
        method,
        char_poly: cp,
    })
}

/// Energy with the default tolerance and exact backend.
pub fn energy_default(t: &Tree) -> Result<EnergyResult, SpectralError> {
    energy(t, DEFAULT_TOL, Method::ExactRoots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(n: usize) -> Tree {
        let e: Vec<_> = (1..n).map(|v| (0, v)).collect();
        Tree::new(n, &e).unwrap()
    }

    fn path(n: usize) -> Tree {
        let e: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Tree::new(n, &e).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// u - c - v with two pendant leaves at each of u and v.
    fn w_tree() -> Tree {
        Tree::new(7, &[(0, 1), (1, 2), (0, 3), (0, 4), (2, 5), (2, 6)]).unwrap()
    }

    #[test]
    fn char_poly_small_cases() {
        assert_eq!(char_poly(&path(2)).coeffs(), ints(&[-1, 0, 1]).as_slice());
        assert_eq!(char_poly(&star(4)).coeffs(), ints(&[0, 0, -3, 0, 1]).as_slice());
        assert_eq!(char_poly(&Tree::singleton()).coeffs(), ints(&[0, 1]).as_slice());
        assert_eq!(char_poly(&w_tree()).to_string(), "x^7 - 6x^5 + 8x^3");
    }

    /// Determinant of xI - A by permutation expansion, as an independent oracle.
    fn brute_char_poly(t: &Tree) -> Vec<i64> {
        let n = t.n();
        let mut coeffs = vec![0i64; n + 1];
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let mut ok = true;
            let mut fixed = 0;
            let mut moved = 0;
            for i in 0..n {
                if perm[i] == i {
                    fixed += 1;
                } else if t.neighbors(i).contains(&perm[i]) {
                    moved += 1;
                } else {
                    ok = false;
                    break;
                }
            }
            if ok {
                let inversions = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| perm[i] > perm[j])
                    .count();
                let sign = if (inversions + moved) % 2 == 0 { 1 } else { -1 };
                coeffs[fixed] += sign;
            }
            // next permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        coeffs
    }

    #[test]
    fn char_poly_matches_determinant_expansion() {
        let trees = [w_tree(), path(6), star(6), Tree::new(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)]).unwrap()];
        for t in trees {
            let expected = ints(&brute_char_poly(&t));
            assert_eq!(char_poly(&t).coeffs(), expected.as_slice());
        }
        assert_eq!(brute_char_poly(&w_tree()), vec![0, 0, 0, 8, 0, -6, 0, 1]);
    }

    #[test]
    fn matching_and_nullity() {
        assert_eq!(matching_number(&path(4)), 2);
        assert_eq!(matching_number(&star(7)), 1);
        assert_eq!(matching_number(&w_tree()), 2);
        assert_eq!(nullity(&star(6)).unwrap(), 4);
        assert_eq!(nullity(&path(4)).unwrap(), 0);
        assert_eq!(nullity(&Tree::singleton()).unwrap(), 1);
    }

    /// Brute force over all edge subsets for W.
    #[test]
    fn w_matching_number_by_subsets() {
        let t = w_tree();
        let edges = t.edges();
        let mut best = 0;
        for mask in 0u32..(1 << edges.len()) {
            let mut used = [false; 7];
            let mut ok = true;
            for (i, &(u, v)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if used[u] || used[v] {
                        ok = false;
                        break;
                    }
                    used[u] = true;
                    used[v] = true;
                }
            }
            if ok {
                best = best.max(mask.count_ones() as usize);
            }
        }
        assert_eq!(best, 2);
    }

    #[test]
    fn eigenvalue_backends_on_small_trees() {
        for method in [Method::ExactRoots, Method::DenseEigensolver] {
            let e = eigenvalues(&path(2), 1e-10, method).unwrap();
            assert!((e[0] + 1.0).abs() < 1e-10 && (e[1] - 1.0).abs() < 1e-10);
            let e = eigenvalues(&star(5), 1e-10, method).unwrap();
            let expect = [-2.0, 0.0, 0.0, 0.0, 2.0];
            for (x, y) in e.iter().zip(expect) {
                assert!((x - y).abs() < 1e-10, "{method}: {e:?}");
            }
        }
    }

    #[test]
    fn t6_eigenvalues_match_bisection_oracle() {
        // roots of y^2 - 5y + 3 by plain f64 bisection
        let f = |y: f64| y * y - 5.0 * y + 3.0;
        let bisect = |mut lo: f64, mut hi: f64| {
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if (f(mid) > 0.0) == (f(lo) > 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        };
        let big = bisect(2.5, 5.0).sqrt();
        let small = bisect(0.0, 2.5).sqrt();
        assert!((big - 2.0744).abs() < 1e-4 && (small - 0.8349).abs() < 1e-4);

        let t6 = Tree::new(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (4, 5)]).unwrap();
        assert_eq!(char_poly(&t6).to_string(), "x^6 - 5x^4 + 3x^2");
        let expect = [-big, -small, 0.0, 0.0, small, big];
        for method in [Method::ExactRoots, Method::DenseEigensolver] {
            let e = eigenvalues(&t6, 1e-9, method).unwrap();
            for (x, y) in e.iter().zip(expect) {
                assert!((x - y).abs() < 1e-9, "{method}: {e:?}");
            }
        }
    }

    #[test]
    fn energies_of_named_trees() {
        let e = energy_default(&star(5)).unwrap();
        assert!((e.energy - 4.0).abs() <= e.error_bound + 1e-15);
        assert!(e.error_bound < 1e-9);
        let e = energy_default(&w_tree()).unwrap();
        assert!((e.energy - 6.828).abs() < 1e-3);
        assert_eq!(e.nullity, 3);
        let p4 = energy_default(&path(4)).unwrap();
        let oracle: f64 = (1..=4)
            .map(|k| (2.0 * (k as f64 * std::f64::consts::PI / 5.0).cos()).abs())
            .sum();
        assert!((p4.energy - oracle).abs() < 1e-9);
        assert!(p4.energy < energy_upper_bound(&path(4)));
        assert!((energy_upper_bound(&path(4)) - 24f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn star_meets_upper_bound() {
        for n in 2..12 {
            let s = star(n);
            let e = energy_default(&s).unwrap();
            let ub = energy_upper_bound(&s);
            assert!((ub - 2.0 * ((n - 1) as f64).sqrt()).abs() < 1e-12);
            assert!((e.energy - ub).abs() <= e.error_bound + 1e-12);
        }
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert_eq!(energy(&path(3), 0.0, Method::ExactRoots).unwrap_err(), SpectralError::BadTolerance(0.0));
        assert!(energy(&path(3), f64::NAN, Method::DenseEigensolver).is_err());
    }

    #[test]
    fn perturbed_poly_is_flagged_or_changes_energy() {
        let cp = char_poly(&w_tree());
        let mut c = cp.coeffs().to_vec();
        c[5] -= 1; // -6 -> -7
        let bad = CharPoly::from_coeffs(c);
        let (e, _, _, _) = energy_from_char_poly(&bad, 1e-9).unwrap();
        assert!((e - 6.828).abs() > 1e-2);
        // complex roots in y: y^2 - y + 8
        let mut c = cp.coeffs().to_vec();
        c[5] = BigInt::from(-1);
        assert!(matches!(
            energy_from_char_poly(&CharPoly::from_coeffs(c), 1e-9),
            Err(SpectralError::InternalInconsistency(_))
        ));
    }

    #[test]
    fn json_report_shape() {
        let e = energy_default(&star(3)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&e.to_json()).unwrap();
        for key in ["n", "energy", "error_bound", "nullity", "eigenvalues", "method", "char_poly_coeffs"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["method"], "exact_roots");
        assert_eq!(v["char_poly_coeffs"], serde_json::json!(["0", "-2", "0", "1"]));
    }
}
