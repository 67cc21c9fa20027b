//! Exponents `p` for which `P_nu` is bounded on `L^p_nu`, the Schur-test
//! windows behind sufficiency, and numerical evidence for necessity.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{HartogsError, Result};
use crate::kernels::{ceil_half, even_index};
use crate::quadrature::{adaptive_gk15, gauss_jacobi_unit, gauss_legendre};

/// Open interval `(p_minus, p_plus)` of exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalRange {
    pub p_minus: f64,
    pub p_plus: f64,
}

impl CriticalRange {
    pub fn contains(&self, p: f64) -> bool {
        self.p_minus < p && p < self.p_plus
    }
}

fn require_bergman(nu: f64) -> Result<()> {
    if nu > -1.0 {
        Ok(())
    } else {
        Err(HartogsError::Parameter(format!("critical range requires nu > -1, got {nu}")))
    }
}

/// Case-by-case form: even `nu`, other positive `nu`, and `-1 < nu < 0`.
pub fn critical_range(nu: f64) -> Result<CriticalRange> {
    require_bergman(nu)?;
    let r = if let Some(n) = even_index(nu) {
        let n = n as f64;
        CriticalRange {
            p_minus: 2.0 - 2.0 / (3.0 + n),
            p_plus: 2.0 + 2.0 / (1.0 + n),
        }
    } else if nu > 0.0 {
        let fl = (0.5 * nu).floor();
        let gap = nu - 2.0 * fl;
        CriticalRange {
            p_minus: 2.0 - gap / (2.0 + nu - fl),
            p_plus: 2.0 + gap / (2.0 + fl),
        }
    } else {
        CriticalRange {
            p_minus: 2.0 - (2.0 + nu) / (3.0 + nu),
            p_plus: 4.0 + nu,
        }
    };
    Ok(r)
}

/// Single formula in terms of `c0 = ceil(nu/2)`.
pub fn critical_range_unified(nu: f64) -> Result<CriticalRange> {
    require_bergman(nu)?;
    let c0 = ceil_half(nu) as f64;
    let gap = nu - 2.0 * c0 + 2.0;
    Ok(CriticalRange {
        p_minus: 2.0 - gap / (nu - c0 + 3.0),
        p_plus: 2.0 + gap / (1.0 + c0),
    })
}

/// Exponents of the Schur test function
/// `(1 - |z1/z2|^2)^-alpha (1 - |z2|^2)^-beta |z2|^-gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchurParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

/// Midpoint parameters when all three windows are nonempty for both `p` and `p'`.
///
/// `alpha, beta` must lie in `(0, (nu+1)/p) ∩ (0, (nu+1)/p')` and `gamma` in
/// `((1+c0)/p, (3+nu-c0)/p) ∩ ((1+c0)/p', (3+nu-c0)/p')`.
pub fn schur_feasible(nu: f64, p: f64) -> Option<SchurParams> {
    if !(nu > -1.0 && p > 1.0) {
        return None;
    }
    let q = p / (p - 1.0);
    let c0 = ceil_half(nu) as f64;
    let (small, big) = (1.0 / p.max(q), 1.0 / p.min(q));
    let ab_hi = (nu + 1.0) * small;
    let g_lo = (1.0 + c0) * big;
    let g_hi = (3.0 + nu - c0) * small;
    if !(ab_hi > 0.0 && g_lo < g_hi) {
        return None;
    }
    Some(SchurParams {
        alpha: 0.5 * ab_hi,
        beta: 0.5 * ab_hi,
        gamma: 0.5 * (g_lo + g_hi),
    })
}

/// Growth of the truncated test integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlowupRegime {
    /// `s < -1`: `T(eps) ~ eps^(s+1)`.
    Power,
    /// `s = -1`: `T(eps) ~ log(1/eps)`.
    Logarithmic,
    /// `s > -1`: `T(eps)` has a finite limit.
    Convergent,
}

/// Output of [`blowup_scan`].
#[derive(Debug, Clone, PartialEq)]
pub struct BlowupScan {
    /// Exponent `s = nu - (1 + c0) p + 3`.
    pub s: f64,
    pub epsilons: Vec<f64>,
    pub integrals: Vec<f64>,
    /// Least-squares slope of `log T` against `log eps` over the last half of the list.
    pub fitted_slope: f64,
    /// Slope of `log T` against `log log(1/eps)` over the same points.
    pub loglog_slope: f64,
    pub regime: BlowupRegime,
}

fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// `int_eps^1 rho^s (1 - rho^2)^nu drho`.
///
/// `[1/2, 1]` uses Gauss-Jacobi for the endpoint factor, `[eps, 1/2]` uses
/// composite Gauss-Legendre in `log rho`.
pub fn truncated_integral(nu: f64, s: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(HartogsError::Parameter(format!("epsilon must lie in (0, 1), got {eps}")));
    }
    let upper_start = eps.max(0.5);
    // rho = 1 - t (1 - a): weight t^nu on (0, 1).
    let len = 1.0 - upper_start;
    let (t, w) = gauss_jacobi_unit(40, 0.0, nu)?;
    let upper: f64 = t
        .iter()
        .zip(&w)
        .map(|(&t, &w)| {
            let rho = 1.0 - t * len;
            w * rho.powf(s) * (len * (1.0 + rho)).powf(nu)
        })
        .sum::<f64>()
        * len;
    if eps >= 0.5 {
        return Ok(upper);
    }
    let (lo, hi) = (eps.ln(), 0.5f64.ln());
    let panels = ((hi - lo).ceil() as usize).max(1);
    let h = (hi - lo) / panels as f64;
    let mut lower = 0.0;
    for i in 0..panels {
        let a = lo + i as f64 * h;
        let (x, w) = gauss_legendre(20, a, a + h)?;
        lower += x
            .iter()
            .zip(&w)
            .map(|(&x, &w)| w * ((s + 1.0) * x).exp() * (1.0 - (2.0 * x).exp()).powf(nu))
            .sum::<f64>();
    }
    Ok(lower + upper)
}

/// Scans `T(eps)` for the necessity test function and fits its growth exponent.
pub fn blowup_scan(nu: f64, p: f64, epsilons: &[f64]) -> Result<BlowupScan> {
    require_bergman(nu)?;
    if epsilons.len() < 4 {
        return Err(HartogsError::Parameter("blow-up scan needs at least four epsilons".into()));
    }
    if epsilons.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(HartogsError::Parameter("epsilons must be strictly decreasing".into()));
    }
    let c0 = ceil_half(nu) as f64;
    let s = nu - (1.0 + c0) * p + 3.0;
    let integrals = epsilons
        .iter()
        .map(|&e| truncated_integral(nu, s, e))
        .collect::<Result<Vec<_>>>()?;
    let tail = epsilons.len() / 2;
    let xs: Vec<f64> = epsilons[tail..].iter().map(|e| e.ln()).collect();
    let ys: Vec<f64> = integrals[tail..].iter().map(|t| t.ln()).collect();
    let lls: Vec<f64> = epsilons[tail..].iter().map(|e| (-e.ln()).ln()).collect();
    let regime = if (s + 1.0).abs() <= 1e-12 {
        BlowupRegime::Logarithmic
    } else if s < -1.0 {
        BlowupRegime::Power
    } else {
        BlowupRegime::Convergent
    };
    Ok(BlowupScan {
        s,
        epsilons: epsilons.to_vec(),
        fitted_slope: least_squares_slope(&xs, &ys),
        loglog_slope: least_squares_slope(&lls, &ys),
        integrals,
        regime,
    })
}

/// Which classical integral estimate to check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassicalEstimate {
    /// `int_0^{2pi} |1 - rho e^{i theta}|^-(1+tau) dtheta` against `(1 - rho)^-tau`.
    Circle { tau: f64 },
    /// `int_D (1-|w|^2)^gamma |1 - z conj(w)|^-(2+gamma+delta) dw` against `(1-|z|^2)^-delta`.
    Disc { gamma: f64, delta: f64 },
}

/// Ratios of left to right side over a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioStats {
    pub points: Vec<f64>,
    pub ratios: Vec<f64>,
    pub min: f64,
    pub max: f64,
}

impl RatioStats {
    pub fn spread(&self) -> f64 {
        self.max / self.min
    }
}

fn circle_integral(rho: f64, power: f64) -> Result<f64> {
    let f = |t: f64| (Complex64::new(1.0, 0.0) - Complex64::from_polar(rho, t)).norm().powf(-power);
    // The peak sits at theta = 0; integrate over (0, pi) and double.
    Ok(2.0 * adaptive_gk15(f, 0.0, PI, 1e-11 * f(0.0).min(1e12), 50)?)
}

/// Evaluates the left side numerically on each grid point and divides by the right side.
pub fn classical_estimate_check(which: ClassicalEstimate, grid: &[f64]) -> Result<RatioStats> {
    let mut ratios = Vec::with_capacity(grid.len());
    for &x in grid {
        if !(x > 0.0 && x < 1.0) {
            return Err(HartogsError::Parameter(format!("grid point must lie in (0, 1), got {x}")));
        }
        let r = match which {
            ClassicalEstimate::Circle { tau } => {
                if !(tau > 0.0) {
                    return Err(HartogsError::Parameter(format!("tau must be positive, got {tau}")));
                }
                circle_integral(x, 1.0 + tau)? * (1.0 - x).powf(tau)
            }
            ClassicalEstimate::Disc { gamma, delta } => {
                if !(gamma > -1.0 && delta > 0.0) {
                    return Err(HartogsError::Parameter(format!(
                        "need gamma > -1 and delta > 0, got ({gamma}, {delta})"
                    )));
                }
                // int_D = int_0^1 (1-u)^gamma [int_0^{2pi} ...] du / 2 with u = r^2; then
                // s = (1-u)^(gamma+1) removes the endpoint factor.
                let power = 2.0 + gamma + delta;
                let g = |s: f64| {
                    let u = 1.0 - s.powf(1.0 / (gamma + 1.0));
                    circle_integral(x * u.max(0.0).sqrt(), power).unwrap_or(f64::NAN)
                };
                let v = adaptive_gk15(g, 0.0, 1.0, 1e-9 * (1.0 - x * x).powf(-delta), 40)? / (2.0 * (gamma + 1.0));
                v * (1.0 - x * x).powf(delta)
            }
        };
        ratios.push(r);
    }
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let max = ratios.iter().copied().fold(0.0, f64::max);
    Ok(RatioStats {
        points: grid.to_vec(),
        ratios,
        min,
        max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn spot_values() {
        let r = critical_range(0.0).unwrap();
        assert_relative_eq!(r.p_minus, 4.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(r.p_plus, 4.0, max_relative = 1e-15);
        let r = critical_range(2.0).unwrap();
        assert_relative_eq!(r.p_minus, 1.5, max_relative = 1e-15);
        assert_relative_eq!(r.p_plus, 3.0, max_relative = 1e-15);
        let r = critical_range(-0.5).unwrap();
        assert_relative_eq!(r.p_minus, 1.4, max_relative = 1e-15);
        assert_relative_eq!(r.p_plus, 3.5, max_relative = 1e-15);
        let u = critical_range_unified(2.6).unwrap();
        assert_relative_eq!(u.p_minus, 11.0 / 6.0, max_relative = 1e-14);
        assert_relative_eq!(u.p_plus, 2.2, max_relative = 1e-14);
        assert!(critical_range(-1.0).is_err());
    }

    #[test]
    fn forms_agree_and_are_conjugate() {
        for i in 0..2000 {
            let nu = -0.999 + i as f64 * 0.00517;
            let a = critical_range(nu).unwrap();
            let b = critical_range_unified(nu).unwrap();
            assert!((a.p_minus - b.p_minus).abs() < 1e-12 && (a.p_plus - b.p_plus).abs() < 1e-12, "nu = {nu}");
            assert!((1.0 / b.p_minus + 1.0 / b.p_plus - 1.0).abs() < 1e-12);
            assert!(1.0 < b.p_minus && b.p_minus < 2.0 && 2.0 < b.p_plus);
        }
    }

    #[test]
    fn schur_windows() {
        let s = schur_feasible(0.0, 2.0).unwrap();
        assert!(s.alpha > 0.0 && s.beta > 0.0 && s.gamma > 0.0);
        assert!(schur_feasible(0.0, 4.0).is_none());
        assert!(schur_feasible(0.0, 4.0 / 3.0).is_none());
        assert!(schur_feasible(0.0, 3.99).is_some());
    }

    #[test]
    fn truncated_integral_closed_forms() {
        // nu = 0: int_eps^1 rho^-2 = 1/eps - 1.
        assert_relative_eq!(truncated_integral(0.0, -2.0, 1e-3).unwrap(), 999.0, max_relative = 1e-12);
        // nu = 1, s = 1: int_eps^1 rho (1 - rho^2) = (1 - eps^2)^2 / 4.
        let e: f64 = 0.3;
        assert_relative_eq!(truncated_integral(1.0, 1.0, e).unwrap(), (1.0 - e * e).powi(2) / 4.0, max_relative = 1e-12);
        // nu = -0.5, s = 1: int rho (1-rho^2)^-0.5 = sqrt(1 - eps^2).
        assert_relative_eq!(truncated_integral(-0.5, 1.0, 0.01).unwrap(), (1.0f64 - 1e-4).sqrt(), max_relative = 1e-10);
    }

    #[test]
    fn blowup_regimes() {
        let eps: Vec<f64> = (1..=10).map(|m| 10f64.powi(-m)).collect();
        let scan = blowup_scan(0.0, 5.0, &eps).unwrap();
        assert_eq!(scan.regime, BlowupRegime::Power);
        assert!((scan.fitted_slope - (scan.s + 1.0)).abs() <= 0.05 * (scan.s + 1.0).abs());
        let scan = blowup_scan(0.0, 4.0, &eps).unwrap();
        assert_eq!(scan.regime, BlowupRegime::Logarithmic);
        assert!((scan.loglog_slope - 1.0).abs() < 0.1);
        let scan = blowup_scan(0.0, 2.0, &eps).unwrap();
        assert_eq!(scan.regime, BlowupRegime::Convergent);
        assert!(scan.fitted_slope.abs() < 1e-6);
    }

    #[test]
    fn circle_estimate_exact_poisson() {
        let st = classical_estimate_check(ClassicalEstimate::Circle { tau: 1.0 }, &[0.9]).unwrap();
        assert_relative_eq!(st.ratios[0], 2.0 * PI / (1.0 - 0.81) * 0.1, max_relative = 1e-9);
        let st = classical_estimate_check(ClassicalEstimate::Circle { tau: 0.5 }, &[0.9, 0.99, 0.999]).unwrap();
        assert!(st.spread() < 2.0);
        let st = classical_estimate_check(ClassicalEstimate::Disc { gamma: 0.0, delta: 1.0 }, &[0.95]).unwrap();
        assert!(st.max.is_finite() && st.min > 0.0);
    }
}
