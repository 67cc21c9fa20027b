//! Coefficient re-indexings that carry spaces on the Hartogs triangle onto
//! spaces on the bidisc `D x D` or on `D x D*`, through `Phi(w1, w2) = (w1 w2, w2)`.
//!
//! | map | image coefficient |
//! |---|---|
//! | Hardy, `Phi' f o Phi` | `b_jk = a_{j, k-j-1}` |
//! | Dirichlet, `f o Phi` | `b_jk = a_{j, k-j}` |
//! | Bergman, `Phi' f o Phi` | `b_jk = a_{j, k-j-1}` |

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::coeffspace::{index_member, LaurentCoeffs};
use crate::error::{HartogsError, Result};
use crate::geometry::{normalization_c, ProductPoint};
use crate::specfun::beta_fn;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Power series `sum b_jk w1^j w2^k` on the bidisc, `j, k >= 0`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BidiscCoeffs {
    terms: BTreeMap<(i64, i64), Complex64>,
}

impl BidiscCoeffs {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, j: i64, k: i64, c: Complex64) -> Result<()> {
        if j < 0 || k < 0 {
            return Err(HartogsError::Support(format!("bidisc coefficient at ({j}, {k}) has a negative index")));
        }
        *self.terms.entry((j, k)).or_insert(zero()) += c;
        Ok(())
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), Complex64)>>(it: I) -> Result<Self> {
        let mut g = Self::new();
        for ((j, k), c) in it {
            g.add(j, k, c)?;
        }
        Ok(g)
    }

    pub fn get(&self, j: i64, k: i64) -> Complex64 {
        self.terms.get(&(j, k)).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), Complex64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.values().all(|c| *c == zero())
    }

    pub fn evaluate(&self, w1: Complex64, w2: Complex64) -> Complex64 {
        self.iter().map(|((j, k), c)| c * w1.powi(j as i32) * w2.powi(k as i32)).sum()
    }

    /// `||g||^2` in `H^2(D x D)`: `sum |b_jk|^2`.
    pub fn hardy_norm_sq(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum()
    }

    /// `||g||^2` in the Dirichlet space of the bidisc: `sum (j+1)(k+1) |b_jk|^2`.
    pub fn dirichlet_norm_sq(&self) -> f64 {
        self.iter().map(|((j, k), c)| ((j + 1) * (k + 1)) as f64 * c.norm_sqr()).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .iter()
            .map(|((j, k), c)| serde_json::json!({"j": j, "k": k, "re": c.re, "im": c.im}))
            .collect();
        serde_json::json!({ "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let lc = PullbackCoeffs::from_json(v)?;
        Self::from_terms(lc.terms)
    }
}

/// Laurent series `sum b_jk w1^j w2^k` on `D x D*`, `j >= 0` and `k` of any sign.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PullbackCoeffs {
    pub nu: f64,
    terms: BTreeMap<(i64, i64), Complex64>,
}

impl PullbackCoeffs {
    pub fn new(nu: f64) -> Self {
        Self {
            nu,
            terms: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, j: i64, k: i64, c: Complex64) -> Result<()> {
        if j < 0 {
            return Err(HartogsError::Support(format!("pullback coefficient with j = {j} < 0")));
        }
        *self.terms.entry((j, k)).or_insert(zero()) += c;
        Ok(())
    }

    pub fn get(&self, j: i64, k: i64) -> Complex64 {
        self.terms.get(&(j, k)).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), Complex64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Smallest `w2` exponent carrying a nonzero coefficient.
    pub fn min_k(&self) -> Option<i64> {
        self.iter().filter(|(_, c)| *c != zero()).map(|((_, k), _)| k).min()
    }

    /// True when the series extends holomorphically across `w2 = 0`.
    pub fn is_bidisc_holomorphic(&self) -> bool {
        self.min_k().is_none_or(|k| k >= 0)
    }

    pub fn to_bidisc(&self) -> Result<BidiscCoeffs> {
        BidiscCoeffs::from_terms(self.iter().filter(|(_, c)| *c != zero()))
    }

    pub fn evaluate(&self, p: &ProductPoint) -> Complex64 {
        self.iter().map(|((j, k), c)| c * p.w1.powi(j as i32) * p.w2.powi(k as i32)).sum()
    }

    /// `c_nu int |g|^2 |w2|^nu (1-|w1|^2)^nu (1-|w2|^2)^nu dw` summed monomial by monomial:
    /// `c_nu pi^2 sum |b_jk|^2 B(j+1, nu+1) B(k+nu/2+1, nu+1)`.
    pub fn norm_sq(&self) -> Result<f64> {
        let nu = self.nu;
        let c = 2f64.powf(0.5 * nu) * normalization_c(nu)?;
        let mut acc = 0.0;
        for ((j, k), b) in self.iter().filter(|(_, c)| *c != zero()) {
            let x = k as f64 + 0.5 * nu + 1.0;
            if !(x > 0.0) {
                return Err(HartogsError::Integrability(format!(
                    "w1^{j} w2^{k} is not square integrable on D x D* for nu = {nu}"
                )));
            }
            acc += b.norm_sqr() * beta_fn(j as f64 + 1.0, nu + 1.0)? * beta_fn(x, nu + 1.0)?;
        }
        Ok(c * PI * PI * acc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .iter()
            .map(|((j, k), c)| serde_json::json!({"j": j, "k": k, "re": c.re, "im": c.im}))
            .collect();
        serde_json::json!({ "terms": terms })
    }

    /// Reads `{"terms": [{"j", "k", "re", "im"}]}`; `nu` is set to `NaN` until assigned.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let lc = LaurentCoeffs::from_json(v)?;
        let mut out = Self::new(f64::NAN);
        for ((j, k), c) in lc.iter() {
            out.add(j, k, c)?;
        }
        Ok(out)
    }
}

fn check_support(f: &LaurentCoeffs, ok: impl Fn(i64, i64) -> bool, what: &str) -> Result<()> {
    match f.support().find(|((j, k), _)| !ok(*j, *k)) {
        Some(((j, k), _)) => Err(HartogsError::Support(format!("coefficient at ({j}, {k}) is outside the {what} index set"))),
        None => Ok(()),
    }
}

/// `f -> Phi' f o Phi` from `H^2` of the triangle onto `H^2(D x D)`.
pub fn hardy_to_bidisc(f: &LaurentCoeffs) -> Result<BidiscCoeffs> {
    check_support(f, |j, k| j + k + 1 >= 0, "Hardy")?;
    BidiscCoeffs::from_terms(f.support().map(|((j, k), c)| ((j, k + j + 1), c)))
}

/// Inverse of [`hardy_to_bidisc`].
pub fn bidisc_to_hardy(g: &BidiscCoeffs) -> LaurentCoeffs {
    LaurentCoeffs::from_terms(g.iter().map(|((j, k), c)| ((j, k - j - 1), c))).expect("j >= 0 on the bidisc")
}

/// `f -> f o Phi` from the Dirichlet space of the triangle onto that of `D x D`.
pub fn dirichlet_to_bidisc(f: &LaurentCoeffs) -> Result<BidiscCoeffs> {
    check_support(f, |j, k| j + k >= 0, "Dirichlet")?;
    BidiscCoeffs::from_terms(f.support().map(|((j, k), c)| ((j, k + j), c)))
}

/// Inverse of [`dirichlet_to_bidisc`].
pub fn bidisc_to_dirichlet(g: &BidiscCoeffs) -> LaurentCoeffs {
    LaurentCoeffs::from_terms(g.iter().map(|((j, k), c)| ((j, k - j), c))).expect("j >= 0 on the bidisc")
}

/// `f -> Phi' f o Phi` from `A^2_nu` of the triangle onto `A^2_nu(D x D*)`.
pub fn bergman_pullback(nu: f64, f: &LaurentCoeffs) -> Result<PullbackCoeffs> {
    if !(nu > -1.0) {
        return Err(HartogsError::Parameter(format!("Bergman pullback requires nu > -1, got {nu}")));
    }
    check_support(f, |j, k| index_member(nu, j, k), "Bergman")?;
    let mut out = PullbackCoeffs::new(nu);
    for ((j, k), c) in f.support() {
        out.add(j, k + j + 1, c)?;
    }
    Ok(out)
}

/// Inverse of [`bergman_pullback`].
pub fn bergman_pullback_inverse(g: &PullbackCoeffs) -> LaurentCoeffs {
    LaurentCoeffs::from_terms(g.iter().map(|((j, k), c)| ((j, k - j - 1), c))).expect("j >= 0 by construction")
}
