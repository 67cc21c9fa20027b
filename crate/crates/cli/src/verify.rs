//! Verification suites comparing closed forms against quadrature or against
//! a second closed form. Each suite yields CSV rows
//! `case,closed_form,quadrature,abs_err,rel_err`; `verify all` prints one
//! summary line per suite instead.

use std::f64::consts::PI;

use clap::ValueEnum;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hartogs_core::coeffspace::{
    bergman_norm_sq, dirichlet_norm_sq, evaluate, hardy_norm_sq, index_member, inner_product, min_total_degree, monomial_norm_sq,
    LaurentCoeffs,
};
use hartogs_core::geometry::{phi_inverse, DiscAutomorphism, HartogsAutomorphism, HartogsPoint};
use hartogs_core::isometries::{bergman_pullback, dirichlet_to_bidisc, hardy_to_bidisc};
use hartogs_core::kernels::{ceil_half, kernel, kernel_coefficient, kernel_nu, kernel_nu_hypergeometric, kernel_series};
use hartogs_core::projections::{blowup_scan, critical_range, critical_range_unified, d_nu, schur_feasible, self_test};
use hartogs_core::quadrature::{build_rule, integrate_bidisc, integrate_mu, integrate_tau, tau_bump, QuadRule, ShellRule, DEFAULT_RADIAL_ORDER};
use hartogs_core::Result;

use crate::{fmt12, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Normalization,
    Monomials,
    Kernels,
    Reproducing,
    Projection,
    Isometry,
    TauInvariance,
    CriticalRange,
    Schur,
    Blowup,
    All,
}

impl Suite {
    const EACH: [Suite; 10] = [
        Suite::Normalization,
        Suite::Monomials,
        Suite::Kernels,
        Suite::Reproducing,
        Suite::Projection,
        Suite::Isometry,
        Suite::TauInvariance,
        Suite::CriticalRange,
        Suite::Schur,
        Suite::Blowup,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Normalization => "normalization",
            Suite::Monomials => "monomials",
            Suite::Kernels => "kernels",
            Suite::Reproducing => "reproducing",
            Suite::Projection => "projection",
            Suite::Isometry => "isometry",
            Suite::TauInvariance => "tau-invariance",
            Suite::CriticalRange => "critical-range",
            Suite::Schur => "schur",
            Suite::Blowup => "blowup",
            Suite::All => "all",
        }
    }

    fn tolerance(self) -> f64 {
        match self {
            Suite::Normalization => 1e-10,
            Suite::Monomials | Suite::Kernels | Suite::Reproducing => 1e-8,
            Suite::Projection => 1e-7,
            Suite::Isometry => 1e-8,
            Suite::TauInvariance => 1e-6,
            Suite::CriticalRange => 1e-12,
            Suite::Schur => 0.0,
            Suite::Blowup => 0.05,
            Suite::All => f64::NAN,
        }
    }
}

/// Options shared by all suites.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub nu: Option<f64>,
    pub jmax: i64,
    pub kmax: i64,
    pub seed: u64,
    pub tol: Option<f64>,
    pub order: usize,
    pub angular: usize,
}

/// Radial order from `HARTOGS_QUAD_ORDER`, else the library default.
pub fn default_order() -> usize {
    std::env::var("HARTOGS_QUAD_ORDER")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_RADIAL_ORDER)
}

/// One comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub case: String,
    pub closed: f64,
    pub numeric: f64,
    pub abs_err: f64,
    /// `abs_err / |closed|`, or `abs_err` when `closed` is zero.
    pub rel_err: f64,
}

impl Row {
    pub fn new(case: impl Into<String>, closed: f64, numeric: f64) -> Self {
        Self::with_err(case, closed, numeric, (closed - numeric).abs())
    }

    fn complex(case: impl Into<String>, closed: Complex64, numeric: Complex64) -> Self {
        Self::with_err(case, closed.norm(), numeric.norm(), (closed - numeric).norm())
    }

    fn with_err(case: impl Into<String>, closed: f64, numeric: f64, abs_err: f64) -> Self {
        let rel_err = if closed == 0.0 { abs_err } else { abs_err / closed.abs() };
        Self {
            case: case.into(),
            closed,
            numeric,
            abs_err,
            rel_err,
        }
    }
}

/// Outcome of a suite at a given tolerance.
#[derive(Debug, Clone)]
pub struct Report {
    pub suite: Suite,
    pub tol: f64,
    pub rows: Vec<Row>,
}

impl Report {
    pub fn failures(&self) -> Vec<&Row> {
        self.rows.iter().filter(|r| !(r.rel_err <= self.tol)).collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn max_err(&self) -> f64 {
        self.rows.iter().map(|r| r.rel_err).fold(0.0, f64::max)
    }

    pub fn csv(&self) -> String {
        let mut s = String::from("case,closed_form,quadrature,abs_err,rel_err\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{},{},{}\n", r.case, fmt12(r.closed), fmt12(r.numeric), fmt12(r.abs_err), fmt12(r.rel_err)));
        }
        s
    }
}

fn nus_or(cfg: &VerifyConfig, default: &[f64]) -> Vec<f64> {
    cfg.nu.map_or_else(|| default.to_vec(), |nu| vec![nu])
}

fn rand_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Point `(s r e^{ia}, r e^{ib})` with `r` in `[0.1, r_max]` and `s` in `[0, r_max]`.
fn rand_point(rng: &mut ChaCha8Rng, r_max: f64) -> HartogsPoint {
    let r = rng.random_range(0.1..r_max);
    let s = rng.random_range(0.0..r_max);
    let z2 = Complex64::from_polar(r, rng.random_range(0.0..2.0 * PI));
    let z1 = Complex64::from_polar(s * r, rng.random_range(0.0..2.0 * PI));
    HartogsPoint { z1, z2 }
}

/// Random Laurent polynomial with terms in `I_nu`, `j <= 3`, total degree within 4 of the minimum.
fn rand_poly(rng: &mut ChaCha8Rng, nu: f64, terms: usize) -> LaurentCoeffs {
    let m0 = min_total_degree(nu);
    let mut f = LaurentCoeffs::new();
    for _ in 0..terms {
        let j = rng.random_range(0..4i64);
        let m = m0 + rng.random_range(0..5i64);
        f.add(j, m - j, rand_complex(rng)).expect("j >= 0");
    }
    f
}

// Radial integrands need a single angular node.
fn radial_rule(nu: f64, cfg: &VerifyConfig) -> Result<QuadRule> {
    build_rule(nu, cfg.order, 1)
}

fn normalization(cfg: &VerifyConfig) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for nu in nus_or(cfg, &[-0.5, -0.1, 0.0, 0.7, 2.0, 3.5]) {
        let rule = radial_rule(nu, cfg)?;
        let total = integrate_mu(|_| Complex64::new(1.0, 0.0), &rule)?;
        rows.push(Row::complex(format!("nu={nu}"), Complex64::new(1.0, 0.0), total));
    }
    Ok(rows)
}

fn monomials(cfg: &VerifyConfig) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for nu in nus_or(cfg, &[-0.5, 0.0, 0.7, 2.0]) {
        let rule = radial_rule(nu, cfg)?;
        for j in 0..=cfg.jmax {
            for k in -cfg.kmax..=cfg.kmax {
                if !index_member(nu, j, k) {
                    continue;
                }
                let q = integrate_mu(|z| Complex64::new(z.z1.norm_sqr().powi(j as i32) * z.z2.norm_sqr().powi(k as i32), 0.0), &rule)?;
                rows.push(Row::new(format!("nu={nu} j={j} k={k}"), monomial_norm_sq(nu, j, k), q.re));
            }
        }
    }
    Ok(rows)
}

const ALL_REGIMES: [f64; 8] = [-2.0, -1.5, -1.0, -0.5, 0.0, 0.7, 2.0, 3.5];

fn kernels(cfg: &VerifyConfig) -> Result<Vec<Row>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::new();
    for nu in nus_or(cfg, &ALL_REGIMES) {
        let mut worst = Row::new(format!("nu={nu} series"), 0.0, 0.0);
        for _ in 0..100 {
            let (z, w) = (rand_point(&mut rng, 0.94), rand_point(&mut rng, 0.94));
            let row = Row::complex(format!("nu={nu} series"), kernel(nu, &z, &w)?, kernel_series(nu, &z, &w, 1e-14)?);
            if !(row.rel_err <= worst.rel_err) {
                worst = row;
            }
        }
        rows.push(worst);
    }
    if cfg.nu.is_none() {
        let mut worst = Row::new("nu=2 even reduction", 0.0, 0.0);
        for _ in 0..100 {
            let (z, w) = (rand_point(&mut rng, 0.94), rand_point(&mut rng, 0.94));
            let row = Row::complex("nu=2 even reduction", kernel_nu(2.0, &z, &w)?, kernel_nu_hypergeometric(2.0, &z, &w)?);
            if !(row.rel_err <= worst.rel_err) {
                worst = row;
            }
        }
        rows.push(worst);
    }
    Ok(rows)
}

fn reproducing(cfg: &VerifyConfig) -> Result<Vec<Row>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::new();
    for nu in nus_or(cfg, &ALL_REGIMES) {
        let mut worst = Row::new(format!("nu={nu}"), 0.0, 0.0);
        for _ in 0..20 {
            let f = rand_poly(&mut rng, nu, 6);
            for _ in 0..20 {
                let w = rand_point(&mut rng, 0.95);
                // K(., w) cut to the support of f.
                let mut kw = LaurentCoeffs::new();
                for ((j, k), _) in f.iter() {
                    let c = kernel_coefficient(nu, j, k)? * (w.z1.powi(j as i32) * w.z2.powi(k as i32)).conj();
                    kw.add(j, k, c)?;
                }
                let row = Row::complex(format!("nu={nu}"), evaluate(&f, &w), inner_product(nu, &f, &kw)?);
                if !(row.rel_err <= worst.rel_err) {
                    worst = row;
                }
            }
        }
        rows.push(worst);
    }
    Ok(rows)
}

fn projection(cfg: &VerifyConfig) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for nu in nus_or(cfg, &[-0.5, 0.0, 0.7, 2.0]) {
        rows.push(Row::new(format!("nu={nu} self-test"), 0.0, self_test(nu)?));
        let rule = build_rule(nu, cfg.order, cfg.angular)?;
        let c0 = ceil_half(nu) as i32;
        let e_sq = monomial_norm_sq(nu, 0, -1 - c0 as i64);
        let q = integrate_mu(|z| z.z2.conj().powi(1 + c0) * z.z2.powi(-1 - c0).conj(), &rule)? / e_sq;
        rows.push(Row::new(format!("nu={nu} d_nu"), d_nu(nu)?, q.re));
    }
    Ok(rows)
}

fn isometry(cfg: &VerifyConfig) -> Result<Vec<Row>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::new();
    let (mut hardy, mut dirichlet) = (Row::new("hardy", 0.0, 0.0), Row::new("dirichlet", 0.0, 0.0));
    for _ in 0..100 {
        let f = rand_poly(&mut rng, -1.0, 8);
        let r = Row::new("hardy", hardy_norm_sq(&f), hardy_to_bidisc(&f)?.hardy_norm_sq());
        if !(r.rel_err <= hardy.rel_err) {
            hardy = r;
        }
        let f = rand_poly(&mut rng, -2.0, 8);
        let r = Row::new("dirichlet", dirichlet_norm_sq(&f), dirichlet_to_bidisc(&f)?.dirichlet_norm_sq());
        if !(r.rel_err <= dirichlet.rel_err) {
            dirichlet = r;
        }
    }
    rows.push(hardy);
    rows.push(dirichlet);
    for nu in nus_or(cfg, &[-0.5, 0.0, 1.0]) {
        // |g|^2 has degree below 12 in each radius and frequencies below 8: 24 x 17 nodes are exact.
        let rule = build_rule(nu, cfg.order.min(24), cfg.angular.min(17))?;
        for i in 0..5 {
            let f = rand_poly(&mut rng, nu, 6);
            let g = bergman_pullback(nu, &f)?;
            let q = integrate_bidisc(|p| Complex64::new(g.evaluate(p).norm_sqr(), 0.0), &rule)?;
            rows.push(Row::new(format!("nu={nu} pullback {i}"), bergman_norm_sq(nu, &f)?, q.re));
            if nu <= 0.0 {
                let min_k = g.min_k().unwrap_or(0) as f64;
                rows.push(Row::new(format!("nu={nu} pullback {i} min w2 exponent deficit"), 0.0, (-min_k).max(0.0)));
            }
        }
    }
    Ok(rows)
}

/// Random automorphism with `|a| <= 0.5`.
pub fn random_automorphism(rng: &mut ChaCha8Rng) -> HartogsAutomorphism {
    let a = Complex64::from_polar(0.5 * rng.random::<f64>().sqrt(), rng.random_range(0.0..2.0 * PI));
    let lambda = Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI));
    let c = Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI));
    HartogsAutomorphism::new(DiscAutomorphism::new(a, lambda).expect("|a| < 1"), c).expect("unimodular")
}

fn tau_invariance(cfg: &VerifyConfig) -> Result<Vec<Row>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let rule = ShellRule::tau_default();
    let f = |q: &HartogsPoint| Complex64::new(tau_bump(&phi_inverse(*q)), 0.0);
    let base = integrate_tau(f, &rule).value;
    let mut rows = Vec::new();
    for i in 0..20 {
        let psi = random_automorphism(&mut rng);
        let moved = integrate_tau(|q| f(&psi.apply(q)), &rule);
        let mut row = Row::complex(format!("automorphism {i}"), base, moved.value);
        if moved.warning.is_some() {
            row.rel_err = f64::INFINITY;
        }
        rows.push(row);
    }
    Ok(rows)
}

fn critical(cfg: &VerifyConfig) -> Result<Vec<Row>> {
    let mut rows = vec![];
    for (nu, lo, hi) in [(0.0, 4.0 / 3.0, 4.0), (2.0, 1.5, 3.0), (-0.5, 1.4, 3.5)] {
        let r = critical_range(nu)?;
        rows.push(Row::new(format!("nu={nu} p_minus"), lo, r.p_minus));
        rows.push(Row::new(format!("nu={nu} p_plus"), hi, r.p_plus));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let nu = if i % 50 == 0 { (2 * (i / 250)) as f64 } else { rng.random_range(-0.999..8.0) };
        let (a, b) = (critical_range(nu)?, critical_range_unified(nu)?);
        worst = worst.max((a.p_minus - b.p_minus).abs()).max((a.p_plus - b.p_plus).abs());
    }
    rows.push(Row::with_err("case vs unified, 1000 nu", 0.0, worst, worst));
    Ok(rows)
}

fn schur(_cfg: &VerifyConfig) -> Result<Vec<Row>> {
    let mut disagreements = 0;
    // Steps chosen so that no grid point sits on an endpoint, where both sides
    // are decided by rounding.
    for a in 0..50 {
        let nu = -0.987 + a as f64 * 0.1213;
        let range = critical_range_unified(nu)?;
        for b in 0..50 {
            let p = 1.013 + b as f64 * 0.0797;
            if schur_feasible(nu, p).is_some() != range.contains(p) {
                disagreements += 1;
            }
        }
    }
    Ok(vec![Row::new("50x50 grid disagreements", 0.0, disagreements as f64)])
}

fn blowup(_cfg: &VerifyConfig) -> Result<Vec<Row>> {
    let eps: Vec<f64> = (1..=10).map(|m| 10f64.powi(-m)).collect();
    let mut rows = Vec::new();
    for (nu, p) in [(0.0, 5.0), (0.7, 5.0), (2.0, 4.0)] {
        let scan = blowup_scan(nu, p, &eps)?;
        rows.push(Row::new(format!("nu={nu} p={p} slope"), scan.s + 1.0, scan.fitted_slope));
    }
    for nu in [0.0, 0.7, 2.0] {
        let r = critical_range_unified(nu)?;
        let p = 0.5 * (r.p_minus + r.p_plus);
        let scan = blowup_scan(nu, p, &eps)?;
        rows.push(Row::new(format!("nu={nu} p={} interior slope", fmt12(p)), 0.0, scan.fitted_slope));
    }
    Ok(rows)
}

fn rows_for(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<Row>> {
    match suite {
        Suite::Normalization => normalization(cfg),
        Suite::Monomials => monomials(cfg),
        Suite::Kernels => kernels(cfg),
        Suite::Reproducing => reproducing(cfg),
        Suite::Projection => projection(cfg),
        Suite::Isometry => isometry(cfg),
        Suite::TauInvariance => tau_invariance(cfg),
        Suite::CriticalRange => critical(cfg),
        Suite::Schur => schur(cfg),
        Suite::Blowup => blowup(cfg),
        Suite::All => unreachable!("expanded by run_suite"),
    }
}

/// Runs one suite.
pub fn report(suite: Suite, cfg: &VerifyConfig) -> Result<Report> {
    Ok(Report {
        suite,
        tol: cfg.tol.unwrap_or(suite.tolerance()),
        rows: rows_for(suite, cfg)?,
    })
}

/// Runs `suite` and returns the CSV text with the names of failed suites.
///
/// A single suite propagates parameter errors; under `all`, an error marks that suite failed.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> std::result::Result<(String, Vec<String>), CliError> {
    if suite != Suite::All {
        let r = report(suite, cfg)?;
        let failed = if r.passed() { vec![] } else { vec![suite.name().to_string()] };
        return Ok((r.csv(), failed));
    }
    let mut text = String::from("suite,cases,max_rel_err,tolerance,status\n");
    let mut failed = Vec::new();
    for s in Suite::EACH {
        match report(s, cfg) {
            Ok(r) => {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                text.push_str(&format!("{},{},{},{},{status}\n", s.name(), r.rows.len(), fmt12(r.max_err()), fmt12(r.tol)));
                if !r.passed() {
                    failed.push(s.name().to_string());
                }
            }
            Err(e) => {
                text.push_str(&format!("{},0,,,ERROR {e}\n", s.name()));
                failed.push(s.name().to_string());
            }
        }
    }
    Ok((text, failed))
}
