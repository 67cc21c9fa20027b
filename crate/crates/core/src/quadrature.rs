//! Numerical integration over the Hartogs triangle, used as an independent
//! check on every closed form.
//!
//! Integrals are taken in the coordinates of `D x D*` through
//! `(w1, w2) -> (w1 w2, w2)`. With `u = |w1|^2` and `v = |w2|^2` the measure
//! `mu_nu` becomes
//!
//! ```text
//! (C_nu 2^(nu/2) / 4) (1-u)^nu (1-v)^nu v^(nu/2+1) du dv dtheta dphi
//! ```
//!
//! The `u` factor is a Gauss-Jacobi weight. The `v` rule carries the weight
//! `(1-v)^nu v^beta` with `beta = nu/2 + 1 + m0`, where `m0` is the smallest
//! total degree allowed for `nu`, so `|z1^j z2^k|^2 = u^j v^(j+k)` is a
//! polynomial against that rule and the quadrature is exact for it.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, Uniform};
use rayon::prelude::*;

use crate::coeffspace::{min_total_degree, MixedPoly};
use crate::error::{HartogsError, Result};
use crate::geometry::{normalization_c, phi, HartogsPoint, ProductPoint};
use crate::specfun::log_gamma;

/// Default radial order.
pub const DEFAULT_RADIAL_ORDER: usize = 64;
/// Default number of angular samples per circle.
pub const DEFAULT_ANGULAR_COUNT: usize = 65;

/// Gauss-Jacobi rule on `(0, 1)` for the weight `(1-u)^alpha u^beta`.
///
/// Golub-Welsch on the Jacobi matrix of the monic Jacobi polynomials on
/// `[-1, 1]`, then mapped by `u = (1 + x) / 2`. Nodes are increasing.
pub fn gauss_jacobi_unit(n: usize, alpha: f64, beta: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(HartogsError::Parameter("quadrature order must be at least 1".into()));
    }
    if !(alpha > -1.0 && beta > -1.0) {
        return Err(HartogsError::Parameter(format!(
            "Jacobi exponents must exceed -1, got ({alpha}, {beta})"
        )));
    }
    let (a, b) = (alpha, beta);
    let ab = a + b;
    let mut t = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let k = i as f64;
        t[(i, i)] = if i == 0 {
            (b - a) / (ab + 2.0)
        } else {
            (b * b - a * a) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0))
        };
        if i + 1 < n {
            let m = k + 1.0;
            let beta_m = if i == 0 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * m * (m + a) * (m + b) * (m + ab)
                    / ((2.0 * m + ab).powi(2) * (2.0 * m + ab + 1.0) * (2.0 * m + ab - 1.0))
            };
            let off = beta_m.sqrt();
            t[(i, i + 1)] = off;
            t[(i + 1, i)] = off;
        }
    }
    let log_mu0 = (ab + 1.0) * 2f64.ln() + log_gamma(a + 1.0)? + log_gamma(b + 1.0)? - log_gamma(ab + 2.0)?;
    // Weight of the mapped rule on (0, 1): mu0 * 2^(-a-b-1).
    let mu_unit = (log_mu0 - (ab + 1.0) * 2f64.ln()).exp();
    let eig = SymmetricEigen::new(t);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let x = eig.eigenvalues[i];
            let v0 = eig.eigenvectors[(0, i)];
            (0.5 * (1.0 + x), mu_unit * v0 * v0)
        })
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    Ok(pairs.into_iter().unzip())
}

/// Gauss-Legendre rule on `[lo, hi]`.
pub fn gauss_legendre(n: usize, lo: f64, hi: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let (x, w) = gauss_jacobi_unit(n, 0.0, 0.0)?;
    let h = hi - lo;
    Ok((x.iter().map(|u| lo + h * u).collect(), w.iter().map(|w| h * w).collect()))
}

/// Sum in a fixed binary-tree order.
pub fn pairwise_sum(xs: &[Complex64]) -> Complex64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Tensor rule for `mu_nu` in pullback coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    pub nu: f64,
    /// Nodes and weights in `u = |w1|^2`, weight `(1-u)^nu`.
    pub u_nodes: Vec<f64>,
    pub u_weights: Vec<f64>,
    /// Nodes and weights in `v = |w2|^2`, weight `(1-v)^nu v^v_beta`.
    pub v_nodes: Vec<f64>,
    pub v_weights: Vec<f64>,
    pub v_beta: f64,
    /// Equispaced samples per circle.
    pub angular_count: usize,
}

/// Builds the tensor rule for `mu_nu`.
pub fn build_rule(nu: f64, radial_order: usize, angular_count: usize) -> Result<QuadRule> {
    if !(nu > -1.0) {
        return Err(HartogsError::Parameter(format!("quadrature rule requires nu > -1, got {nu}")));
    }
    if angular_count == 0 {
        return Err(HartogsError::Parameter("angular count must be at least 1".into()));
    }
    let (u_nodes, u_weights) = gauss_jacobi_unit(radial_order, nu, 0.0)?;
    let v_beta = 0.5 * nu + 1.0 + min_total_degree(nu) as f64;
    let (v_nodes, v_weights) = gauss_jacobi_unit(radial_order, nu, v_beta)?;
    Ok(QuadRule {
        nu,
        u_nodes,
        u_weights,
        v_nodes,
        v_weights,
        v_beta,
        angular_count,
    })
}

impl QuadRule {
    /// Rule with the default orders, honoring `HARTOGS_QUAD_ORDER` for the radial order.
    pub fn default_for(nu: f64) -> Result<Self> {
        let order = std::env::var("HARTOGS_QUAD_ORDER")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_RADIAL_ORDER);
        build_rule(nu, order, DEFAULT_ANGULAR_COUNT)
    }

    /// `sum` of `g(w) v^extra` against the tensor weights, angular weights included.
    fn sum_pullback<F>(&self, extra: f64, g: F) -> Complex64
    where
        F: Fn(&ProductPoint) -> Complex64 + Sync,
    {
        let m = self.angular_count;
        let h = 2.0 * PI / m as f64;
        let circle: Vec<Complex64> = (0..m).map(|a| Complex64::from_polar(1.0, a as f64 * h)).collect();
        let rows: Vec<Complex64> = self
            .u_nodes
            .par_iter()
            .zip(self.u_weights.par_iter())
            .map(|(&u, &wu)| {
                let r1 = u.sqrt();
                let mut inner = Vec::with_capacity(self.v_nodes.len());
                for (&v, &wv) in self.v_nodes.iter().zip(&self.v_weights) {
                    let r2 = v.sqrt();
                    let mut cells = Vec::with_capacity(m * m);
                    for e1 in &circle {
                        for e2 in &circle {
                            let p = ProductPoint {
                                w1: e1 * r1,
                                w2: e2 * r2,
                            };
                            cells.push(g(&p));
                        }
                    }
                    inner.push(pairwise_sum(&cells) * (wv * v.powf(extra)));
                }
                pairwise_sum(&inner) * wu
            })
            .collect();
        pairwise_sum(&rows) * (h * h)
    }

    fn extra_mu(&self) -> f64 {
        -(min_total_degree(self.nu) as f64)
    }
}

/// `int f dmu_nu` by tensor quadrature.
pub fn integrate_mu<F>(integrand: F, rule: &QuadRule) -> Result<Complex64>
where
    F: Fn(&HartogsPoint) -> Complex64 + Sync,
{
    let nu = rule.nu;
    let scale = normalization_c(nu)? * 2f64.powf(0.5 * nu) / 4.0;
    Ok(rule.sum_pullback(rule.extra_mu(), |p| integrand(&phi(*p))) * scale)
}

/// `c_nu int g |w2|^nu (1-|w1|^2)^nu (1-|w2|^2)^nu dw` over `D x D*`, `c_nu = 2^(nu/2) C_nu`.
pub fn integrate_bidisc<F>(integrand: F, rule: &QuadRule) -> Result<Complex64>
where
    F: Fn(&ProductPoint) -> Complex64 + Sync,
{
    let nu = rule.nu;
    let scale = normalization_c(nu)? * 2f64.powf(0.5 * nu) / 4.0;
    Ok(rule.sum_pullback(rule.extra_mu() - 1.0, integrand) * scale)
}

/// `<f, g>` in `L^2_nu`.
pub fn inner_product_quad<F, G>(f: F, g: G, rule: &QuadRule) -> Result<Complex64>
where
    F: Fn(&HartogsPoint) -> Complex64 + Sync,
    G: Fn(&HartogsPoint) -> Complex64 + Sync,
{
    integrate_mu(|q| f(q) * g(q).conj(), rule)
}

/// `<f, g>` in `L^2_nu` for mixed polynomials.
pub fn inner_product_poly(f: &MixedPoly, g: &MixedPoly, rule: &QuadRule) -> Result<Complex64> {
    inner_product_quad(|q| f.evaluate(q), |q| g.evaluate(q), rule)
}

/// Monte Carlo estimate of `int f dmu_nu` with its standard error.
///
/// Samples `u ~ Beta(1, nu+1)`, `v ~ Beta(nu/2+2, nu+1)` and uniform angles,
/// which is exactly the pulled-back law of `mu_nu`.
pub fn mc_integrate_mu<F>(nu: f64, integrand: F, samples: usize, seed: u64) -> Result<(Complex64, f64)>
where
    F: Fn(&HartogsPoint) -> Complex64,
{
    if !(nu > -1.0) {
        return Err(HartogsError::Parameter(format!("Monte Carlo requires nu > -1, got {nu}")));
    }
    if samples < 2 {
        return Err(HartogsError::Parameter("need at least two samples".into()));
    }
    let bad = |e: rand_distr::BetaError| HartogsError::Parameter(e.to_string());
    let du = Beta::new(1.0, nu + 1.0).map_err(bad)?;
    let dv = Beta::new(0.5 * nu + 2.0, nu + 1.0).map_err(bad)?;
    let angle = Uniform::new(0.0, 2.0 * PI).map_err(|e| HartogsError::Parameter(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        let u: f64 = du.sample(&mut rng);
        let v: f64 = dv.sample(&mut rng);
        let p = ProductPoint {
            w1: Complex64::from_polar(u.sqrt(), angle.sample(&mut rng)),
            w2: Complex64::from_polar(v.sqrt(), angle.sample(&mut rng)),
        };
        let val = integrand(&phi(p));
        sum += val;
        sum_sq += val.norm_sqr();
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = ((sum_sq - n * mean.norm_sqr()) / (n - 1.0)).max(0.0);
    Ok((mean, (var / n).sqrt()))
}

/// Smooth compactly supported profile `exp(1 - 1/(1 - s^2))` on `[0, 1)`.
pub fn bump(s: f64) -> f64 {
    if s.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - s * s)).exp()
    }
}

/// Test function for invariance of `tau`, written in pullback coordinates:
/// `bump(|w1 - (0.2 + 0.1i)| / 0.4) * bump(|w2| / 0.6)`.
pub fn tau_bump(p: &ProductPoint) -> f64 {
    bump((p.w1 - Complex64::new(0.2, 0.1)).norm() / 0.4) * bump(p.w2.norm() / 0.6)
}

/// Product rule on `{|w1| <= R} x {|w2| <= R}`, `R = 1 - eps`, for `tau`.
///
/// In pullback coordinates `tau` has density `(1-|w1|^2)^-2 (1-|w2|^2)^-2`,
/// which is bounded on the shell. Radii use Gauss-Legendre in `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShellRule {
    pub eps: f64,
    pub r1: (Vec<f64>, Vec<f64>),
    pub angular1: usize,
    pub r2: (Vec<f64>, Vec<f64>),
    pub angular2: usize,
}

impl ShellRule {
    pub fn new(eps: f64, radial1: usize, angular1: usize, radial2: usize, angular2: usize) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(HartogsError::Parameter(format!("shell margin must lie in (0, 1), got {eps}")));
        }
        if angular1 == 0 || angular2 == 0 {
            return Err(HartogsError::Parameter("angular counts must be positive".into()));
        }
        let r = 1.0 - eps;
        Ok(Self {
            eps,
            r1: gauss_legendre(radial1, 0.0, r)?,
            angular1,
            r2: gauss_legendre(radial2, 0.0, r)?,
            angular2,
        })
    }
}

impl ShellRule {
    /// Rule used for the invariance checks on [`tau_bump`]: margin 0.05, 160 x 256
    /// nodes for `w1` and 64 radial nodes with one angle for `w2`, where the
    /// bump and every automorphism image of it are radial.
    pub fn tau_default() -> Self {
        Self::new(0.05, 160, 256, 64, 1).expect("valid constants")
    }
}

/// Result of a shell integral against `tau`.
#[derive(Debug, Clone, PartialEq)]
pub struct TauIntegral {
    pub value: Complex64,
    /// Largest modulus of the integrand sampled on the shell's outer circles.
    pub edge_max: f64,
    pub warning: Option<String>,
}

/// `int f dtau` over the shell, with a warning when `f` does not vanish at its edge.
pub fn integrate_tau<F>(integrand: F, rule: &ShellRule) -> TauIntegral
where
    F: Fn(&HartogsPoint) -> Complex64 + Sync,
{
    let (m1, m2) = (rule.angular1, rule.angular2);
    let (h1, h2) = (2.0 * PI / m1 as f64, 2.0 * PI / m2 as f64);
    let c1: Vec<Complex64> = (0..m1).map(|a| Complex64::from_polar(1.0, a as f64 * h1)).collect();
    let c2: Vec<Complex64> = (0..m2).map(|a| Complex64::from_polar(1.0, a as f64 * h2)).collect();
    let (x1, w1) = &rule.r1;
    let (x2, w2) = &rule.r2;
    let rows: Vec<Complex64> = x1
        .par_iter()
        .zip(w1.par_iter())
        .map(|(&r1, &wr1)| {
            let d1 = r1 / (1.0 - r1 * r1).powi(2);
            let mut inner = Vec::with_capacity(x2.len());
            for (&r2, &wr2) in x2.iter().zip(w2) {
                let d2 = r2 / (1.0 - r2 * r2).powi(2);
                let mut cells = Vec::with_capacity(m1 * m2);
                for e1 in &c1 {
                    for e2 in &c2 {
                        let p = ProductPoint {
                            w1: e1 * r1,
                            w2: e2 * r2,
                        };
                        cells.push(integrand(&phi(p)));
                    }
                }
                inner.push(pairwise_sum(&cells) * (wr2 * d2));
            }
            pairwise_sum(&inner) * (wr1 * d1)
        })
        .collect();
    let value = pairwise_sum(&rows) * (h1 * h2);

    let r = 1.0 - rule.eps;
    let probe = 64;
    let mut edge_max: f64 = 0.0;
    for a in 0..probe {
        for b in 0..probe {
            for (s1, s2) in [(r, b as f64 / probe as f64 * r), (b as f64 / probe as f64 * r, r)] {
                let p = ProductPoint {
                    w1: Complex64::from_polar(s1, a as f64 * 2.0 * PI / probe as f64),
                    w2: Complex64::from_polar(s2.max(1e-12), b as f64 * 2.0 * PI / probe as f64),
                };
                edge_max = edge_max.max(integrand(&phi(p)).norm());
            }
        }
    }
    let warning = (edge_max > 1e-12).then(|| format!("integrand reaches {edge_max:e} on the shell edge"));
    TauIntegral { value, edge_max, warning }
}

const GK_X: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_WK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const GK_WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = GK_WK[7] * fc;
    let mut gauss = GK_WG[3] * fc;
    for i in 0..7 {
        let x = h * GK_X[i];
        let s = f(c - x) + f(c + x);
        kron += GK_WK[i] * s;
        if i % 2 == 1 {
            gauss += GK_WG[i / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

/// Adaptive Gauss-Kronrod (7/15) quadrature of `f` on `[a, b]`.
pub fn adaptive_gk15<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, max_depth: u32) -> Result<f64> {
    fn go<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> Result<f64> {
        let (v, err) = gk15(f, a, b);
        if !v.is_finite() {
            return Err(HartogsError::Domain(format!("non-finite integrand on [{a}, {b}]")));
        }
        if err <= tol.max(1e-15 * v.abs()) {
            return Ok(v);
        }
        if depth == 0 {
            return Err(HartogsError::Divergence { terms: 0, last: v });
        }
        let m = 0.5 * (a + b);
        Ok(go(f, a, m, 0.5 * tol, depth - 1)? + go(f, m, b, 0.5 * tol, depth - 1)?)
    }
    go(&f, a, b, tol, max_depth)
}
