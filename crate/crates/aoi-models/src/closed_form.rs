//! Hand-derived closed-form linear systems for both disciplines.
//!
//! These matrices were worked out on paper from the balance and correlation
//! equations of the two charts, reduced to the structurally nonzero
//! unknowns. They are an independent route to the same numbers as the
//! generic engine — assembled here entry by entry, solved by a separate
//! Gauss-Jordan eliminator — and exist precisely to cross-check the engine
//! (and vice versa).
//!
//! NOMA orders its six unknowns [v₀₀, v₁₀, v₁₁, v₂₀, v₂₁, v₃₀]; OMA its
//! eight as [v₀₀, v₁₀, v₁₁, v₂₀, v₃₀, v₃₁, v₄₀, v₄₁]. In both, the
//! monitored user's average age is the sum of the component-0 unknowns.

use crate::error::ModelError;
use crate::params::{Scheme, SystemParams};
use crate::report::{AgeReport, Method};

/// Which variant of the NOMA age matrix to assemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NomaAgeMatrixForm {
    /// The correct system, consistent with the chart equations.
    Standard,
    /// A previously circulated form differing in two entries: the idle-state
    /// outflow (0,0) reads λ₁+λ₁ instead of λ₁+λ₂, and the superposed
    /// packet-age outflow (4,4) omits the arrival term λ₁. Kept only so the
    /// discrepancy stays documented and testable; solving with it yields
    /// wrong ages whenever λ₁ ≠ λ₂.
    Legacy,
}

/// Stationary system (matrix, rhs) for the 4-state NOMA chain: three balance
/// rows (states 0, 3, 2) plus normalization.
pub fn noma_stationary_system(p: &SystemParams) -> (Vec<Vec<f64>>, Vec<f64>) {
    let (l1, l2, m1, m2, m1p, m2p) = (p.lambda1, p.lambda2, p.mu1, p.mu2, p.mu1p, p.mu2p);
    let a = vec![
        vec![l1 + l2, -m1, 0.0, -m2],
        vec![-l2, 0.0, -m1p, l1 + m2],
        vec![0.0, -l2, m1p + m2p, -l1],
        vec![1.0, 1.0, 1.0, 1.0],
    ];
    (a, vec![0.0, 0.0, 0.0, 1.0])
}

/// Age system matrix for NOMA over [v₀₀, v₁₀, v₁₁, v₂₀, v₂₁, v₃₀].
pub fn noma_age_matrix(p: &SystemParams, form: NomaAgeMatrixForm) -> Vec<Vec<f64>> {
    let (l1, l2, m1, m2, m1p, m2p) = (p.lambda1, p.lambda2, p.mu1, p.mu2, p.mu1p, p.mu2p);
    let (e00, e44) = match form {
        NomaAgeMatrixForm::Standard => (l1 + l2, l1 + m1p + m2p),
        NomaAgeMatrixForm::Legacy => (l1 + l1, m1p + m2p),
    };
    vec![
        vec![e00, 0.0, -m1, 0.0, 0.0, -m2],
        vec![-l1, l2 + m1, 0.0, -m2p, 0.0, 0.0],
        vec![0.0, 0.0, l1 + l2 + m1, 0.0, -m2p, 0.0],
        vec![0.0, -l2, 0.0, m1p + m2p, 0.0, -l1],
        vec![0.0, 0.0, -l2, 0.0, e44, 0.0],
        vec![-l2, 0.0, 0.0, 0.0, -m1p, l1 + m2],
    ]
}

/// Right-hand side of the NOMA age system for a stationary distribution.
pub fn noma_age_rhs(pi: &[f64]) -> Vec<f64> {
    vec![pi[0], pi[1], pi[1], pi[2], pi[2], pi[3]]
}

/// Stationary system (matrix, rhs) for the 5-state OMA chain: four balance
/// rows (states 0..3) plus normalization.
pub fn oma_stationary_system(p: &SystemParams) -> (Vec<Vec<f64>>, Vec<f64>) {
    let (l1, l2, m1, m2) = (p.lambda1, p.lambda2, p.mu1, p.mu2);
    let a = vec![
        vec![l1 + l2, -m1, -m2, 0.0, 0.0],
        vec![-l1, m1 + l2, 0.0, -m2, 0.0],
        vec![-l2, 0.0, l1 + m2, 0.0, -m1],
        vec![0.0, 0.0, -l1, m2, 0.0],
        vec![1.0, 1.0, 1.0, 1.0, 1.0],
    ];
    (a, vec![0.0, 0.0, 0.0, 0.0, 1.0])
}

/// Age system matrix for OMA over [v₀₀, v₁₀, v₁₁, v₂₀, v₃₀, v₃₁, v₄₀, v₄₁].
pub fn oma_age_matrix(p: &SystemParams) -> Vec<Vec<f64>> {
    let (l1, l2, m1, m2) = (p.lambda1, p.lambda2, p.mu1, p.mu2);
    vec![
        vec![l1 + l2, 0.0, -m1, -m2, 0.0, 0.0, 0.0, 0.0],
        vec![-l1, l2 + m1, 0.0, 0.0, -m2, 0.0, 0.0, 0.0],
        vec![0.0, 0.0, l1 + l2 + m1, 0.0, 0.0, -m2, 0.0, 0.0],
        vec![-l2, 0.0, 0.0, l1 + m2, 0.0, 0.0, 0.0, -m1],
        vec![0.0, 0.0, 0.0, -l1, m2, 0.0, 0.0, 0.0],
        vec![0.0, 0.0, 0.0, 0.0, 0.0, l1 + m2, 0.0, 0.0],
        vec![0.0, -l2, 0.0, 0.0, 0.0, 0.0, m1, 0.0],
        vec![0.0, 0.0, -l2, 0.0, 0.0, 0.0, 0.0, l1 + m1],
    ]
}

/// Right-hand side of the OMA age system for a stationary distribution.
pub fn oma_age_rhs(pi: &[f64]) -> Vec<f64> {
    vec![pi[0], pi[1], pi[1], pi[2], pi[3], pi[3], pi[4], pi[4]]
}

/// Gauss-Jordan elimination with partial pivoting. Deliberately a different
/// algorithm from the engine's LU solver so the two solution routes share no
/// code.
fn gauss_jordan(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>, ModelError> {
    let n = b.len();
    let scale = a
        .iter()
        .flat_map(|row| row.iter())
        .fold(0.0_f64, |m, &x| m.max(x.abs()));
    let pivot_floor = f64::EPSILON * scale * n as f64;

    for k in 0..n {
        let pivot_row = (k..n)
            .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
            .expect("non-empty column");
        if a[pivot_row][k].abs() <= pivot_floor {
            return Err(ModelError::SingularSystem { step: k });
        }
        a.swap(k, pivot_row);
        b.swap(k, pivot_row);

        let pivot = a[k][k];
        for x in &mut a[k] {
            *x /= pivot;
        }
        b[k] /= pivot;

        for i in 0..n {
            if i == k || a[i][k] == 0.0 {
                continue;
            }
            let factor = a[i][k];
            // Split borrow: row k is read, row i is written.
            let (row_k, row_i) = if i < k {
                let (lo, hi) = a.split_at_mut(k);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = a.split_at_mut(i);
                (&lo[k], &mut hi[0])
            };
            for (xi, &xk) in row_i.iter_mut().zip(row_k) {
                *xi -= factor * xk;
            }
            b[i] -= factor * b[k];
        }
    }
    Ok(b)
}

fn noma_age_user(p: &SystemParams) -> Result<f64, ModelError> {
    let (a1, c1) = noma_stationary_system(p);
    let pi = gauss_jordan(a1, c1)?;
    let a2 = noma_age_matrix(p, NomaAgeMatrixForm::Standard);
    let v = gauss_jordan(a2, noma_age_rhs(&pi))?;
    Ok(v[0] + v[1] + v[3] + v[5])
}

fn oma_age_user(p: &SystemParams) -> Result<f64, ModelError> {
    let (a1, c1) = oma_stationary_system(p);
    let pi = gauss_jordan(a1, c1)?;
    let a2 = oma_age_matrix(p);
    let v = gauss_jordan(a2, oma_age_rhs(&pi))?;
    Ok(v[0] + v[1] + v[3] + v[4] + v[6])
}

/// Both users' NOMA ages via the explicit closed-form systems (user 2 by
/// role symmetry).
pub fn solve_noma_closed_form(params: &SystemParams) -> Result<AgeReport, ModelError> {
    params.validate()?;
    let age1 = noma_age_user(params)?;
    let age2 = noma_age_user(&params.swapped())?;
    Ok(AgeReport::new(
        age1,
        age2,
        Method::TheoremMatrices,
        params.clone(),
    ))
}

/// Both users' OMA ages via the explicit closed-form systems.
pub fn solve_oma_closed_form(params: &SystemParams) -> Result<AgeReport, ModelError> {
    params.validate()?;
    let age1 = oma_age_user(params)?;
    let age2 = oma_age_user(&params.swapped())?;
    Ok(AgeReport::new(
        age1,
        age2,
        Method::TheoremMatrices,
        params.clone(),
    ))
}

/// Closed-form solve for either scheme.
pub fn solve_closed_form(params: &SystemParams, scheme: Scheme) -> Result<AgeReport, ModelError> {
    match scheme {
        Scheme::Noma => solve_noma_closed_form(params),
        Scheme::Oma => solve_oma_closed_form(params),
    }
}
