//! Saturated-arrival (λ → ∞) limit formulas and the crossover search.
//!
//! With packets always available, OMA degenerates to round-robin service and
//! NOMA to permanent superposed service, giving closed total-age formulas
//! that depend only on the service rates. Equating the two as functions of
//! the spectral-efficiency factor α locates the point where NOMA starts
//! beating OMA.

/// Total (both-user) limiting average age of OMA under saturated arrivals:
/// 1/μ₁ + 1/μ₂ + (1/μ₁)/(1+μ₁/μ₂) + (1/μ₂)/(1+μ₂/μ₁).
pub fn oma_limit_total(mu1: f64, mu2: f64) -> f64 {
    1.0 / mu1 + 1.0 / mu2 + (1.0 / mu1) / (1.0 + mu1 / mu2) + (1.0 / mu2) / (1.0 + mu2 / mu1)
}

/// Total limiting average age of NOMA under saturated arrivals:
/// 1/μ′₁ + 1/μ′₂.
pub fn noma_limit_total(mu1p: f64, mu2p: f64) -> f64 {
    1.0 / mu1p + 1.0 / mu2p
}

const ALPHA_LO: f64 = 1.0;
const ALPHA_HI: f64 = 2.0;
const ALPHA_TOL: f64 = 1e-9;

/// The α ∈ [1, 2] at which the NOMA limit (with μ′ₖ derived from α, δ)
/// equals the OMA limit, found by bisection to 1e-9.
///
/// The NOMA limit is strictly decreasing in α, so the crossover is unique
/// when it exists. `None` means no crossover in range: either NOMA is still
/// worse at α = 2, or already at least as good at α = 1.
pub fn crossover_alpha(mu1: f64, mu2: f64, delta: f64) -> Option<f64> {
    let target = oma_limit_total(mu1, mu2);
    let gap = |alpha: f64| {
        let (m1p, m2p) = crate::params::noma_rates_from_alpha(mu1, mu2, alpha, delta);
        noma_limit_total(m1p, m2p) - target
    };

    let (gap_lo, gap_hi) = (gap(ALPHA_LO), gap(ALPHA_HI));
    if gap_lo < 0.0 || gap_hi > 0.0 {
        return None;
    }
    if gap_lo == 0.0 {
        return Some(ALPHA_LO);
    }
    if gap_hi == 0.0 {
        return Some(ALPHA_HI);
    }

    // Invariant: gap(lo) > 0 > gap(hi).
    let (mut lo, mut hi) = (ALPHA_LO, ALPHA_HI);
    while hi - lo > ALPHA_TOL {
        let mid = 0.5 * (lo + hi);
        if gap(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}
