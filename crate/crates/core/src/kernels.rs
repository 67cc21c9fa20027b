//! Reproducing kernels of the whole family, in closed form and as basis sums.
//!
//! With `x1 = z1 conj(w1)`, `x2 = z2 conj(w2)` and `rho = x1 / x2`, every
//! kernel except the Dirichlet one has the shape
//!
//! ```text
//! a x2^(-1-c0) (1 - rho)^-(nu+2) F(A, 1; C; x2)
//! ```
//!
//! with `c0 = ceil(nu/2)`, `A = 3nu/2 - c0 + 2` and `C = nu/2 - c0 + 1`.

use num_complex::Complex64;

use crate::coeffspace::{index_member, space_weight, SpaceKind, SpaceParam};
use crate::error::{HartogsError, Result};
use crate::geometry::HartogsPoint;
use crate::specfun::{gamma_ratio_signed, gauss_2f1, HypergeometricParams};

/// Formula regime of a kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelRegime {
    /// `nu > -1`, not an even integer.
    Bergman,
    /// `nu = 2n`, where the hypergeometric factor is `(1 - x2)^(-2n-2)`.
    BergmanEven(u32),
    Hardy,
    WeightedDirichlet,
    Dirichlet,
}

/// Tolerance for recognizing an even integer `nu`.
pub const EVEN_TOL: f64 = 1e-12;

/// `Some(n)` when `nu` is within [`EVEN_TOL`] of `2n` with `n >= 0`.
pub fn even_index(nu: f64) -> Option<u32> {
    let n = (0.5 * nu).round();
    (n >= 0.0 && (nu - 2.0 * n).abs() <= EVEN_TOL).then_some(n as u32)
}

/// Kernel selector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelId {
    pub nu: f64,
}

impl KernelId {
    pub fn new(nu: f64) -> Result<Self> {
        SpaceParam::new(nu)?;
        Ok(Self { nu })
    }

    pub fn regime(&self) -> KernelRegime {
        match SpaceParam::new(self.nu).expect("validated").kind {
            SpaceKind::Bergman => match even_index(self.nu) {
                Some(n) => KernelRegime::BergmanEven(n),
                None => KernelRegime::Bergman,
            },
            SpaceKind::Hardy => KernelRegime::Hardy,
            SpaceKind::WeightedDirichlet => KernelRegime::WeightedDirichlet,
            SpaceKind::Dirichlet => KernelRegime::Dirichlet,
        }
    }
}

/// `ceil(nu/2)`, exact at even integers within [`EVEN_TOL`].
pub fn ceil_half(nu: f64) -> i64 {
    match even_index(nu) {
        Some(n) => n as i64,
        None => (0.5 * nu).ceil() as i64,
    }
}

/// Parameters of the hypergeometric closed form for `-2 < nu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm {
    pub nu: f64,
    pub c0: i64,
    pub a: f64,
    pub big_a: f64,
    pub big_c: f64,
}

impl ClosedForm {
    pub fn new(nu: f64) -> Result<Self> {
        if !(nu > -2.0) {
            return Err(HartogsError::Parameter(format!("hypergeometric kernel form requires nu > -2, got {nu}")));
        }
        let c0 = ceil_half(nu);
        let big_a = 1.5 * nu - c0 as f64 + 2.0;
        let big_c = 0.5 * nu - c0 as f64 + 1.0;
        if big_a.abs() < 1e-12 {
            return Err(HartogsError::Domain(format!(
                "kernel prefactor is singular at nu = {nu} (zero weight at total degree -1)"
            )));
        }
        let a = gamma_ratio_signed(&[0.5 * nu + 2.0, big_a], &[1.5 * nu + 3.0, big_c])?;
        Ok(Self { nu, c0, a, big_a, big_c })
    }

    fn hyper(&self) -> HypergeometricParams {
        HypergeometricParams {
            alpha: self.big_a,
            beta: 1.0,
            gamma: self.big_c,
        }
    }

    /// Value at `(x1, x2)` using `gauss_2f1` for the last factor.
    pub fn evaluate(&self, x1: Complex64, x2: Complex64) -> Result<Complex64> {
        let f = gauss_2f1(self.hyper(), x2)?;
        Ok(self.prefactor(x1, x2) * f)
    }

    fn prefactor(&self, x1: Complex64, x2: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let rho = x1 / x2;
        self.a * x2.powi(-1 - self.c0 as i32) * (one - rho).powf(-(self.nu + 2.0))
    }
}

fn products(z: &HartogsPoint, w: &HartogsPoint) -> (Complex64, Complex64) {
    (z.z1 * w.z1.conj(), z.z2 * w.z2.conj())
}

/// Unweighted Bergman kernel `1 / (2 x2 (1 - x1/x2)^2 (1 - x2)^2)`.
pub fn bergman_kernel(z: &HartogsPoint, w: &HartogsPoint) -> Complex64 {
    let (x1, x2) = products(z, w);
    let one = Complex64::new(1.0, 0.0);
    let r = one - x1 / x2;
    one / (2.0 * x2 * r * r * (one - x2) * (one - x2))
}

/// Weighted Bergman kernel `K_nu`, `nu > -1`.
pub fn kernel_nu(nu: f64, z: &HartogsPoint, w: &HartogsPoint) -> Result<Complex64> {
    if !(nu > -1.0) {
        return Err(HartogsError::Parameter(format!("weighted Bergman kernel requires nu > -1, got {nu}")));
    }
    let cf = ClosedForm::new(nu)?;
    let (x1, x2) = products(z, w);
    match even_index(nu) {
        Some(n) => Ok(cf.prefactor(x1, x2) * (Complex64::new(1.0, 0.0) - x2).powi(-2 * n as i32 - 2)),
        None => cf.evaluate(x1, x2),
    }
}

/// `K_nu` through `gauss_2f1` even when `nu` is an even integer.
pub fn kernel_nu_hypergeometric(nu: f64, z: &HartogsPoint, w: &HartogsPoint) -> Result<Complex64> {
    let (x1, x2) = products(z, w);
    ClosedForm::new(nu)?.evaluate(x1, x2)
}

/// Hardy kernel `1 / ((x2 - x1)(1 - x2))`.
pub fn hardy_kernel(z: &HartogsPoint, w: &HartogsPoint) -> Complex64 {
    let (x1, x2) = products(z, w);
    Complex64::new(1.0, 0.0) / ((x2 - x1) * (Complex64::new(1.0, 0.0) - x2))
}

/// Weighted Dirichlet kernel, `-2 < nu < -1`.
pub fn weighted_dirichlet_kernel(nu: f64, z: &HartogsPoint, w: &HartogsPoint) -> Result<Complex64> {
    if !(nu > -2.0 && nu < -1.0) {
        return Err(HartogsError::Parameter(format!(
            "weighted Dirichlet kernel requires -2 < nu < -1, got {nu}"
        )));
    }
    let (x1, x2) = products(z, w);
    ClosedForm::new(nu)?.evaluate(x1, x2)
}

/// `log(1 / (1 - x)) / x`, with its Taylor series near zero.
pub fn log_over_x(x: Complex64) -> Complex64 {
    if x.norm() < 1e-3 {
        let mut acc = Complex64::new(0.0, 0.0);
        for n in (0..12).rev() {
            acc = acc * x + 1.0 / (n as f64 + 1.0);
        }
        acc
    } else {
        -(Complex64::new(1.0, 0.0) - x).ln() / x
    }
}

/// Dirichlet kernel `(1/x1) log(1/(1 - x1/x2)) log(1/(1 - x2))`.
pub fn dirichlet_kernel(z: &HartogsPoint, w: &HartogsPoint) -> Complex64 {
    let (x1, x2) = products(z, w);
    log_over_x(x1 / x2) * log_over_x(x2)
}

/// Kernel of the space selected by `nu`.
pub fn kernel(nu: f64, z: &HartogsPoint, w: &HartogsPoint) -> Result<Complex64> {
    match KernelId::new(nu)?.regime() {
        KernelRegime::Bergman | KernelRegime::BergmanEven(_) => kernel_nu(nu, z, w),
        KernelRegime::Hardy => Ok(hardy_kernel(z, w)),
        KernelRegime::WeightedDirichlet => weighted_dirichlet_kernel(nu, z, w),
        KernelRegime::Dirichlet => Ok(dirichlet_kernel(z, w)),
    }
}

/// Taylor coefficients of a kernel in product form:
/// `coef(j, k) = a p_j q_n` with `n = j + k - shift`, term `coef x1^j x2^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelExpansion {
    pub nu: f64,
    pub a: f64,
    pub shift: i64,
    p: Vec<f64>,
    q: Vec<f64>,
    p_params: (f64, f64),
    q_params: (f64, f64),
}

impl KernelExpansion {
    /// Expansion of the closed form, `p_j` and `q_n` tabulated up to the given lengths.
    pub fn new(nu: f64, max_j: usize, max_n: usize) -> Result<Self> {
        SpaceParam::new(nu)?;
        let (a, shift, p_params, q_params) = if nu == -2.0 {
            // p_j = 1/(j+1) = (1)_j / (2)_j and likewise for q_n.
            (1.0, 0, (1.0, 2.0), (1.0, 2.0))
        } else {
            let cf = ClosedForm::new(nu)?;
            (cf.a, -1 - cf.c0, (nu + 2.0, 1.0), (cf.big_a, cf.big_c))
        };
        let table = |(num, den): (f64, f64), len: usize| {
            let mut t = Vec::with_capacity(len + 1);
            let mut v = 1.0;
            t.push(v);
            for i in 0..len {
                v *= (num + i as f64) / (den + i as f64);
                t.push(v);
            }
            t
        };
        Ok(Self {
            nu,
            a,
            shift,
            p: table(p_params, max_j),
            q: table(q_params, max_n),
            p_params,
            q_params,
        })
    }

    pub fn max_j(&self) -> usize {
        self.p.len() - 1
    }

    pub fn max_n(&self) -> usize {
        self.q.len() - 1
    }

    /// Coefficient of `z1^j z2^k conj(w1^j w2^k)`; zero outside the index set.
    pub fn coefficient(&self, j: i64, k: i64) -> f64 {
        let n = j + k - self.shift;
        if j < 0 || n < 0 || !index_member(self.nu, j, k) {
            return 0.0;
        }
        let (j, n) = (j as usize, n as usize);
        assert!(j <= self.max_j() && n <= self.max_n(), "coefficient ({j}, {n}) beyond table");
        self.a * self.p[j] * self.q[n]
    }

    /// Upper bound for `|t_{i+1} / t_i|` for all `i >= from`, given the variable modulus.
    fn ratio_bound((num, den): (f64, f64), from: usize, modulus: f64) -> f64 {
        let i = from as f64;
        ((num + i) / (den + i)).abs().max(1.0) * modulus
    }
}

/// Coefficient of the kernel expansion at `(j, k)`, computed from the closed form.
pub fn kernel_coefficient(nu: f64, j: i64, k: i64) -> Result<f64> {
    let exp = KernelExpansion::new(nu, j.max(0) as usize, (j + k + 3).max(0) as usize)?;
    Ok(exp.coefficient(j, k))
}

/// Truncated double sum `sum coef(j, k) x1^j x2^k` over the index set.
///
/// Each direction is cut where a ratio-test tail bound falls below `tol`
/// relative to the largest term seen.
pub fn kernel_series(nu: f64, z: &HartogsPoint, w: &HartogsPoint, tol: f64) -> Result<Complex64> {
    let (x1, x2) = products(z, w);
    let rho = x1 / x2;
    let cut = |params: (f64, f64), modulus: f64| -> Result<usize> {
        if modulus >= 1.0 {
            return Err(HartogsError::Domain("series variable outside the unit disc".into()));
        }
        // Walk the coefficient recurrence until the geometric tail is negligible.
        let (mut t, mut peak) = (1.0f64, 1.0f64);
        for i in 0..200_000usize {
            let r = KernelExpansion::ratio_bound(params, i, modulus);
            if r < 1.0 && t * r / (1.0 - r) <= tol * peak {
                return Ok(i);
            }
            t *= ((params.0 + i as f64) / (params.1 + i as f64)).abs() * modulus;
            peak = peak.max(t);
        }
        Err(HartogsError::Divergence { terms: 200_000, last: t })
    };
    let probe = KernelExpansion::new(nu, 0, 0)?;
    let jmax = cut(probe.p_params, rho.norm())?;
    let nmax = cut(probe.q_params, x2.norm())?;
    let exp = KernelExpansion::new(nu, jmax, nmax)?;
    let mut total = Complex64::new(0.0, 0.0);
    let mut rho_j = Complex64::new(1.0, 0.0);
    for j in 0..=jmax as i64 {
        let mut row = Complex64::new(0.0, 0.0);
        // x1^j x2^k = rho^j x2^(j+k), with j + k = n + shift.
        let mut x2_pow = x2.powi(exp.shift as i32);
        for n in 0..=nmax as i64 {
            let k = n + exp.shift - j;
            row += exp.coefficient(j, k) * x2_pow;
            x2_pow *= x2;
        }
        total += rho_j * row;
        rho_j *= rho;
    }
    Ok(total)
}

/// `|K| |x2|^(1+c0) |1 - x1/x2|^(nu+2) |1 - x2|^(nu+2)`, for `nu > -2`.
pub fn kernel_bound_ratio(nu: f64, z: &HartogsPoint, w: &HartogsPoint) -> Result<f64> {
    if !(nu > -2.0) {
        return Err(HartogsError::Parameter(format!(
            "kernel estimate is only checked for nu > -2, got {nu}"
        )));
    }
    let k = kernel(nu, z, w)?;
    let (x1, x2) = products(z, w);
    let one = Complex64::new(1.0, 0.0);
    let c0 = ceil_half(nu);
    Ok(k.norm() * x2.norm().powi(1 + c0 as i32) * (one - x1 / x2).norm().powf(nu + 2.0) * (one - x2).norm().powf(nu + 2.0))
}

/// `|a_nu| sum_n |(-nu-1)_n (b)_n / ((b+1)_n n!)|` with `b = nu/2 - c0`, an upper bound
/// for [`kernel_bound_ratio`] from the Euler-transformed series.
///
/// Summed to `terms` terms plus a tail bound from the `n^-(nu+3)` decay.
pub fn bound_constant(nu: f64, terms: usize) -> Result<f64> {
    let cf = ClosedForm::new(nu)?;
    let b = 0.5 * nu - cf.c0 as f64;
    let alpha = -nu - 1.0;
    // (b)_n / (b+1)_n = b / (b + n)
    let mut binom = 1.0f64;
    let mut sum = 1.0f64;
    let mut last = 1.0;
    for n in 1..=terms {
        let nf = n as f64;
        binom *= (alpha + nf - 1.0) / nf;
        last = (binom * b / (b + nf)).abs();
        sum += last;
        if binom == 0.0 {
            return Ok(cf.a.abs() * sum);
        }
    }
    let tail = last * terms as f64 / (nu + 2.0);
    Ok(cf.a.abs() * (sum + tail))
}

/// `(K(z_t, z_t), delta(z_t))` on the path `z_t = (0, t)` for the unweighted kernel.
pub fn diagonal_probe(t: f64) -> Result<(f64, f64)> {
    if !(t > 0.0 && t <= 0.5) {
        return Err(HartogsError::Parameter(format!("probe parameter must lie in (0, 1/2], got {t}")));
    }
    let z = HartogsPoint::new(Complex64::new(0.0, 0.0), Complex64::new(t, 0.0))?;
    let k = bergman_kernel(&z, &z).re;
    Ok((k, (t / 2f64.sqrt()).min(1.0 - t)))
}

/// Weight times kernel coefficient; identically one on the index set.
pub fn reproducing_defect(nu: f64, j: i64, k: i64) -> Result<f64> {
    Ok(space_weight(nu, j, k) * kernel_coefficient(nu, j, k)? - 1.0)
}
