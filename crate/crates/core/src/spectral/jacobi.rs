//! Cyclic Jacobi diagonalization of a dense symmetric matrix.

/// Eigenvalues of a symmetric matrix (row-major, `n x n`), unsorted, together
/// with the final off-diagonal Frobenius norm and the number of sweeps used.
///
/// Returns `None` if the off-diagonal norm does not drop below `tol` within
/// `max_sweeps`.
pub fn symmetric_eigenvalues(
    mut a: Vec<f64>,
    n: usize,
    tol: f64,
    max_sweeps: usize,
) -> Option<(Vec<f64>, f64, usize)> {
    assert_eq!(a.len(), n * n);
    let idx = |i: usize, j: usize| i * n + j;
    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                s += a[idx(p, q)] * a[idx(p, q)];
            }
        }
        (2.0 * s).sqrt()
    };

    for sweep in 0..=max_sweeps {
        let off = off_norm(&a);
        if off < tol {
            let eig = (0..n).map(|i| a[idx(i, i)]).collect();
            return Some((eig, off, sweep));
        }
        if sweep == max_sweeps {
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[idx(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = a[idx(p, p)];
                let aqq = a[idx(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                a[idx(p, p)] = app - t * apq;
                a[idx(q, q)] = aqq + t * apq;
                a[idx(p, q)] = 0.0;
                a[idx(q, p)] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[idx(r, p)];
                    let arq = a[idx(r, q)];
                    let new_rp = arp - s * (arq + tau * arp);
                    let new_rq = arq + s * (arp - tau * arq);
                    a[idx(r, p)] = new_rp;
                    a[idx(p, r)] = new_rp;
                    a[idx(r, q)] = new_rq;
                    a[idx(q, r)] = new_rq;
                }
            }
        }
    }
    None
}
