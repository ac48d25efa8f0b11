//! Dense direct solver for the engine's small linear systems.
//!
//! Every system assembled by the engine is at most `n_states · age_dim`
//! square (≤ 10×10 for the charts in this workspace), so LU factorization
//! with partial pivoting is exact-shape and conditioning is a non-issue;
//! residual checks in the engine guard against silent failure.

/// Reported when elimination cannot find a usable pivot.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SingularInfo {
    pub step: usize,
    pub pivot: f64,
}

/// Solves `a · x = b` in place via LU with partial pivoting.
///
/// A pivot counts as unusable when its magnitude falls below
/// `machine-eps · n · max|a_ij|` of the original matrix — scale-relative, so
/// uniformly rescaled systems make identical singularity decisions.
pub(crate) fn solve_dense(
    mut a: Vec<Vec<f64>>,
    mut b: Vec<f64>,
) -> Result<Vec<f64>, SingularInfo> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|row| row.len() == n));

    let scale = a
        .iter()
        .flat_map(|row| row.iter())
        .fold(0.0_f64, |m, &x| m.max(x.abs()));
    let pivot_floor = f64::EPSILON * scale * n as f64;

    for k in 0..n {
        let (pivot_row, pivot) = (k..n)
            .map(|r| (r, a[r][k]))
            .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
            .expect("non-empty pivot column");
        if pivot.abs() <= pivot_floor {
            return Err(SingularInfo { step: k, pivot });
        }
        if pivot_row != k {
            a.swap(k, pivot_row);
            b.swap(k, pivot_row);
        }
        for r in k + 1..n {
            let factor = a[r][k] / a[k][k];
            if factor == 0.0 {
                continue;
            }
            a[r][k] = 0.0;
            for c in k + 1..n {
                a[r][c] -= factor * a[k][c];
            }
            b[r] -= factor * b[k];
        }
    }

    // Back substitution.
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let mut acc = b[k];
        for c in k + 1..n {
            acc -= a[k][c] * x[c];
        }
        x[k] = acc / a[k][k];
    }
    Ok(x)
}

/// Max-norm residual `‖a·x − b‖∞`.
pub(crate) fn residual_inf(a: &[Vec<f64>], x: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(row, &bi)| {
            let ax: f64 = row.iter().zip(x).map(|(&aij, &xj)| aij * xj).sum();
            (ax - bi).abs()
        })
        .fold(0.0, f64::max)
}
