//! Laurent coefficient representation of holomorphic functions on the
//! Hartogs triangle and the norms of the whole `nu` family.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{HartogsError, Result};
use crate::geometry::{normalization_c, HartogsPoint};
use crate::specfun::{beta_fn, gamma_ratio, gamma_ratio_signed};

/// Which member of the family a value of `nu` selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpaceKind {
    Bergman,
    Hardy,
    WeightedDirichlet,
    Dirichlet,
}

/// `nu` together with its classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceParam {
    pub nu: f64,
    pub kind: SpaceKind,
}

impl SpaceParam {
    pub fn new(nu: f64) -> Result<Self> {
        let kind = if nu > -1.0 {
            SpaceKind::Bergman
        } else if nu == -1.0 {
            SpaceKind::Hardy
        } else if nu > -2.0 {
            SpaceKind::WeightedDirichlet
        } else if nu == -2.0 {
            SpaceKind::Dirichlet
        } else {
            return Err(HartogsError::Parameter(format!("nu must lie in [-2, inf), got {nu}")));
        };
        Ok(Self { nu, kind })
    }

    pub fn contains(&self, j: i64, k: i64) -> bool {
        index_member(self.nu, j, k)
    }

    /// Squared norm of `z1^j z2^k` in this space, `+inf` outside the index set.
    pub fn weight(&self, j: i64, k: i64) -> f64 {
        space_weight(self.nu, j, k)
    }
}

/// Membership of `(j, k)` in `I_nu = { j >= 0, j + k + nu/2 + 2 > 0 }`.
pub fn index_member(nu: f64, j: i64, k: i64) -> bool {
    j >= 0 && (j + k) as f64 + 0.5 * nu + 2.0 > 0.0
}

/// Smallest total degree `j + k` allowed in `I_nu`.
pub fn min_total_degree(nu: f64) -> i64 {
    (-0.5 * nu - 2.0).floor() as i64 + 1
}

fn to_i32(n: i64) -> i32 {
    i32::try_from(n).expect("exponent out of i32 range")
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    j: i64,
    k: i64,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct TermsRepr {
    terms: Vec<TermRepr>,
}

fn terms_to_json(map: &BTreeMap<(i64, i64), Complex64>) -> serde_json::Value {
    let terms = map
        .iter()
        .map(|(&(j, k), c)| TermRepr { j, k, re: c.re, im: c.im })
        .collect();
    serde_json::to_value(TermsRepr { terms }).expect("plain numeric struct")
}

fn terms_from_json(v: &serde_json::Value) -> Result<BTreeMap<(i64, i64), Complex64>> {
    let r: TermsRepr = serde_json::from_value(v.clone()).map_err(|e| HartogsError::Parameter(e.to_string()))?;
    let mut map = BTreeMap::new();
    for t in r.terms {
        *map.entry((t.j, t.k)).or_insert(Complex64::new(0.0, 0.0)) += Complex64::new(t.re, t.im);
    }
    Ok(map)
}

/// Finite Laurent series `sum a_jk z1^j z2^k` with `j >= 0`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LaurentCoeffs {
    terms: BTreeMap<(i64, i64), Complex64>,
}

impl LaurentCoeffs {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn monomial(j: i64, k: i64, c: Complex64) -> Result<Self> {
        let mut f = Self::new();
        f.add(j, k, c)?;
        Ok(f)
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), Complex64)>>(it: I) -> Result<Self> {
        let mut f = Self::new();
        for ((j, k), c) in it {
            f.add(j, k, c)?;
        }
        Ok(f)
    }

    /// Adds `c z1^j z2^k`; rejects `j < 0`.
    pub fn add(&mut self, j: i64, k: i64, c: Complex64) -> Result<()> {
        if j < 0 {
            return Err(HartogsError::Support(format!("Laurent coefficient with j = {j} < 0")));
        }
        *self.terms.entry((j, k)).or_insert(Complex64::new(0.0, 0.0)) += c;
        Ok(())
    }

    pub fn get(&self, j: i64, k: i64) -> Complex64 {
        self.terms.get(&(j, k)).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), Complex64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    /// Terms with a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = ((i64, i64), Complex64)> + '_ {
        self.iter().filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support().next().is_none()
    }

    pub fn map_coeffs(&self, mut g: impl FnMut((i64, i64), Complex64) -> Complex64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&key, &c)| (key, g(key, c))).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        terms_to_json(&self.terms)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let terms = terms_from_json(v)?;
        if let Some(&(j, _)) = terms.keys().find(|(j, _)| *j < 0) {
            return Err(HartogsError::Support(format!("Laurent coefficient with j = {j} < 0")));
        }
        Ok(Self { terms })
    }
}

/// Finite Fourier series on the torus, indices unconstrained.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TorusSeries {
    terms: BTreeMap<(i64, i64), Complex64>,
}

impl TorusSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, j: i64, k: i64, c: Complex64) {
        *self.terms.entry((j, k)).or_insert(Complex64::new(0.0, 0.0)) += c;
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
        self.terms.values().all(|c| *c == Complex64::new(0.0, 0.0))
    }

    /// Largest `max(|j|, |k|)` over the support.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|&(j, k)| j.abs().max(k.abs())).max().unwrap_or(0)
    }

    /// Normalized L2 norm squared, `(1/4 pi^2) int |g|^2`.
    pub fn l2_norm_sq(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum()
    }

    pub fn evaluate(&self, theta: f64, gamma: f64) -> Complex64 {
        self.iter()
            .map(|((j, k), c)| c * Complex64::from_polar(1.0, j as f64 * theta + k as f64 * gamma))
            .sum()
    }

    /// Samples on the uniform `n x n` grid, row index along `theta`.
    pub fn sample_grid(&self, n: usize) -> Vec<Complex64> {
        let h = 2.0 * PI / n as f64;
        let mut out = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                out.push(self.evaluate(a as f64 * h, b as f64 * h));
            }
        }
        out
    }

    pub fn map_coeffs(&self, mut g: impl FnMut((i64, i64), Complex64) -> Complex64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&key, &c)| (key, g(key, c))).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        terms_to_json(&self.terms)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        Ok(Self { terms: terms_from_json(v)? })
    }
}

/// Finite sum of `c z1^a conj(z1)^b z2^c conj(z2)^d` with `a, b >= 0`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MixedPoly {
    terms: BTreeMap<(i64, i64, i64, i64), Complex64>,
}

#[derive(Serialize, Deserialize)]
struct MixedTermRepr {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct MixedRepr {
    terms: Vec<MixedTermRepr>,
}

impl MixedPoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, a: i64, b: i64, c: i64, d: i64, coeff: Complex64) -> Result<()> {
        if a < 0 || b < 0 {
            return Err(HartogsError::Support(format!(
                "mixed monomial needs nonnegative z1 exponents, got a = {a}, b = {b}"
            )));
        }
        *self.terms.entry((a, b, c, d)).or_insert(Complex64::new(0.0, 0.0)) += coeff;
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64, i64, i64), Complex64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn from_laurent(f: &LaurentCoeffs) -> Self {
        Self {
            terms: f.iter().map(|((j, k), c)| ((j, 0, k, 0), c)).collect(),
        }
    }

    pub fn evaluate(&self, q: &HartogsPoint) -> Complex64 {
        let (z1, z2) = (q.z1, q.z2);
        self.iter()
            .map(|((a, b, c, d), coeff)| {
                coeff * z1.powi(to_i32(a)) * z1.conj().powi(to_i32(b)) * z2.powi(to_i32(c)) * z2.conj().powi(to_i32(d))
            })
            .sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms = self
            .terms
            .iter()
            .map(|(&(a, b, c, d), v)| MixedTermRepr { a, b, c, d, re: v.re, im: v.im })
            .collect();
        serde_json::to_value(MixedRepr { terms }).expect("plain numeric struct")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let r: MixedRepr = serde_json::from_value(v.clone()).map_err(|e| HartogsError::Parameter(e.to_string()))?;
        let mut p = Self::new();
        for t in r.terms {
            p.add(t.a, t.b, t.c, t.d, Complex64::new(t.re, t.im))?;
        }
        Ok(p)
    }
}

fn bergman_prefactor_args(nu: f64) -> ([f64; 2], f64) {
    ([nu + 2.0, 1.5 * nu + 3.0], 0.5 * nu + 2.0)
}

/// `||z1^j z2^k||^2` in `A^2_nu`, `+inf` outside `I_nu` or for `nu <= -1`.
pub fn monomial_norm_sq(nu: f64, j: i64, k: i64) -> f64 {
    if !(nu > -1.0) || !index_member(nu, j, k) {
        return f64::INFINITY;
    }
    let m = (j + k) as f64;
    let ([p1, p2], p3) = bergman_prefactor_args(nu);
    gamma_ratio(
        &[p1, p2, j as f64 + 1.0, m + 0.5 * nu + 2.0],
        &[p3, j as f64 + nu + 2.0, m + 1.5 * nu + 3.0],
    )
    .expect("arguments positive on the index set")
}

/// Signed weight of `z1^j z2^k` in the weighted Dirichlet form, `-2 < nu < -1`.
///
/// Negative at total degree -1 when `nu < -4/3` and zero at `nu = -4/3`.
pub fn weighted_dirichlet_weight(nu: f64, j: i64, k: i64) -> f64 {
    if !index_member(nu, j, k) {
        return f64::INFINITY;
    }
    let m = (j + k) as f64;
    let ([p1, p2], p3) = bergman_prefactor_args(nu);
    gamma_ratio_signed(
        &[p1, p2, j as f64 + 1.0, m + 0.5 * nu + 2.0],
        &[p3, j as f64 + nu + 2.0, m + 1.5 * nu + 3.0],
    )
    .expect("arguments exceed -1 on the index set")
}

/// Squared norm of `z1^j z2^k` for any `nu >= -2`, `+inf` outside `I_nu`.
pub fn space_weight(nu: f64, j: i64, k: i64) -> f64 {
    if !index_member(nu, j, k) {
        return f64::INFINITY;
    }
    if nu > -1.0 {
        monomial_norm_sq(nu, j, k)
    } else if nu == -1.0 {
        1.0
    } else if nu > -2.0 {
        weighted_dirichlet_weight(nu, j, k)
    } else {
        ((j + 1) * (j + k + 1)) as f64
    }
}

fn weighted_sum(f: &LaurentCoeffs, weight: impl Fn(i64, i64) -> f64) -> f64 {
    let mut acc = 0.0;
    for ((j, k), c) in f.support() {
        let w = weight(j, k);
        if w.is_infinite() {
            return f64::INFINITY;
        }
        acc += w * c.norm_sqr();
    }
    acc
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(HartogsError::Parameter(msg()))
    }
}

/// `||f||^2` in `A^2_nu`.
pub fn bergman_norm_sq(nu: f64, f: &LaurentCoeffs) -> Result<f64> {
    require(nu > -1.0, || format!("Bergman norm requires nu > -1, got {nu}"))?;
    Ok(weighted_sum(f, |j, k| monomial_norm_sq(nu, j, k)))
}

/// `||f||^2` in `H^2`.
pub fn hardy_norm_sq(f: &LaurentCoeffs) -> f64 {
    weighted_sum(f, |j, k| space_weight(-1.0, j, k))
}

/// `||f||^2` in the Dirichlet space.
pub fn dirichlet_norm_sq(f: &LaurentCoeffs) -> f64 {
    weighted_sum(f, |j, k| space_weight(-2.0, j, k))
}

/// Weighted Dirichlet form, `-2 < nu < -1`. Only positive definite for `nu > -4/3`.
pub fn weighted_dirichlet_norm_sq(nu: f64, f: &LaurentCoeffs) -> Result<f64> {
    require(nu > -2.0 && nu < -1.0, || format!("weighted Dirichlet norm requires -2 < nu < -1, got {nu}"))?;
    Ok(weighted_sum(f, |j, k| weighted_dirichlet_weight(nu, j, k)))
}

/// Squared norm in the space selected by `nu`.
pub fn space_norm_sq(nu: f64, f: &LaurentCoeffs) -> Result<f64> {
    SpaceParam::new(nu)?;
    Ok(weighted_sum(f, |j, k| space_weight(nu, j, k)))
}

/// Inner product `<f, g>` of the space selected by `nu`, restricted to `I_nu`.
pub fn inner_product(nu: f64, f: &LaurentCoeffs, g: &LaurentCoeffs) -> Result<Complex64> {
    SpaceParam::new(nu)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for ((j, k), a) in f.support() {
        let b = g.get(j, k);
        if b == Complex64::new(0.0, 0.0) {
            continue;
        }
        let w = space_weight(nu, j, k);
        if w.is_infinite() {
            return Err(HartogsError::Support(format!("({j}, {k}) is outside the index set for nu = {nu}")));
        }
        acc += w * a * b.conj();
    }
    Ok(acc)
}

/// The pieces `f1, f2, f3` and the constant term.
#[derive(Debug, Clone, PartialEq)]
pub struct Split {
    pub f1: LaurentCoeffs,
    pub f2: LaurentCoeffs,
    pub f3: LaurentCoeffs,
    pub a00: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitPart {
    F1,
    F2,
    F3,
}

impl SplitPart {
    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(Self::F1),
            2 => Ok(Self::F2),
            3 => Ok(Self::F3),
            _ => Err(HartogsError::Parameter(format!("split part must be 1, 2 or 3, got {i}"))),
        }
    }

    fn admits(self, j: i64, k: i64) -> bool {
        match self {
            Self::F1 => j >= 1 && j + k != -1,
            Self::F2 => j == 0 && k != -1,
            Self::F3 => j >= 1 && k == -j - 1,
        }
    }
}

/// Derivative-like split `f -> (f1, f2, f3, a00)`.
pub fn split_f123(f: &LaurentCoeffs) -> Split {
    let mut s = Split {
        f1: LaurentCoeffs::new(),
        f2: LaurentCoeffs::new(),
        f3: LaurentCoeffs::new(),
        a00: f.get(0, 0),
    };
    for ((j, k), a) in f.iter() {
        let (jf, kf) = (j as f64, k as f64);
        let target = if j >= 1 && j + k != 0 {
            Some((&mut s.f1, a * (jf * (jf + kf))))
        } else if j == 0 && k != 0 {
            Some((&mut s.f2, a * kf))
        } else if j >= 1 {
            Some((&mut s.f3, a * jf))
        } else {
            None
        };
        if let Some((part, c)) = target {
            part.add(j, k - 1, c).expect("j >= 0");
        }
    }
    s
}

/// `||T f_i||^2` in `L^2_nu` for `nu > -3`, where `T` multiplies by
/// `|z2| (1 - |z1/z2|^2) (1 - |z2|^2)`.
///
/// The weight normalization is `C_nu` for `nu > -1` and `1` otherwise.
pub fn t_norm_sq(nu: f64, which: SplitPart, part: &LaurentCoeffs) -> Result<f64> {
    require(nu > -3.0, || format!("T norms require nu > -3, got {nu}"))?;
    if let Some(((j, k), _)) = part.support().find(|&((j, k), _)| !which.admits(j, k)) {
        return Err(HartogsError::Support(format!("({j}, {k}) cannot occur in part {which:?}")));
    }
    let scale = t_scale(nu)?;
    let mut acc = 0.0;
    for ((j, k), c) in part.support() {
        let second = (j + k) as f64 + 0.5 * nu + 3.0;
        if second <= 0.0 {
            return Ok(f64::INFINITY);
        }
        acc += c.norm_sqr() * beta_fn(j as f64 + 1.0, nu + 3.0)? * beta_fn(second, nu + 3.0)?;
    }
    Ok(scale * acc)
}

fn t_scale(nu: f64) -> Result<f64> {
    let c = if nu > -1.0 { normalization_c(nu)? } else { 1.0 };
    Ok(c * 2f64.powf(0.5 * nu) * PI * PI)
}

/// `|a00| + sum_i ||T f_i||`.
pub fn star_norm(nu: f64, f: &LaurentCoeffs) -> Result<f64> {
    let s = split_f123(f);
    let mut total = s.a00.norm();
    for (part, which) in [(&s.f1, SplitPart::F1), (&s.f2, SplitPart::F2), (&s.f3, SplitPart::F3)] {
        total += t_norm_sq(nu, which, part)?.sqrt();
    }
    Ok(total)
}

/// `sum a_jk z1^j z2^k`.
pub fn evaluate(f: &LaurentCoeffs, q: &HartogsPoint) -> Complex64 {
    f.iter()
        .map(|((j, k), c)| c * q.z1.powi(to_i32(j)) * q.z2.powi(to_i32(k)))
        .sum()
}

/// Fourier coefficients of `(theta, gamma) -> f(s t e^{i theta}, t e^{i gamma})`.
pub fn restrict_to_torus(f: &LaurentCoeffs, s: f64, t: f64) -> TorusSeries {
    let mut out = TorusSeries::new();
    for ((j, k), c) in f.iter() {
        out.add(j, k, c * s.powi(to_i32(j)) * t.powi(to_i32(j + k)));
    }
    out
}

/// Boundary values: the same coefficients viewed as a torus series.
pub fn boundary_values(f: &LaurentCoeffs) -> TorusSeries {
    restrict_to_torus(f, 1.0, 1.0)
}

/// `sum |a_jk|^2 (1 - s^j t^(j+k))^2`, the L2 distance between boundary values and `f_st`.
pub fn torus_distance_sq(f: &LaurentCoeffs, s: f64, t: f64) -> f64 {
    f.iter()
        .map(|((j, k), c)| c.norm_sqr() * (1.0 - s.powi(to_i32(j)) * t.powi(to_i32(j + k))).powi(2))
        .sum()
}

/// Largest value of `sum |a_jk|^2 s^(2j+1) t^(2(j+k+1))` over the grid.
pub fn hardy_sup_check(f: &LaurentCoeffs, grid: &[(f64, f64)]) -> Result<f64> {
    if let Some(((j, k), _)) = f.support().find(|&((j, k), _)| !index_member(-1.0, j, k)) {
        return Err(HartogsError::Support(format!("({j}, {k}) is outside the Hardy index set")));
    }
    let value = |s: f64, t: f64| -> f64 {
        f.iter()
            .map(|((j, k), c)| c.norm_sqr() * s.powi(to_i32(2 * j + 1)) * t.powi(to_i32(2 * (j + k + 1))))
            .sum()
    };
    Ok(grid.iter().map(|&(s, t)| value(s, t)).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn one() -> Complex64 {
        c(1.0, 0.0)
    }

    #[test]
    fn index_sets() {
        assert!(!index_member(0.0, 0, -2));
        assert!(index_member(0.0, 0, -1));
        assert!(index_member(-1.0, 0, -1));
        assert!(index_member(-2.0, 3, -3));
        assert!(!index_member(-2.0, 3, -4));
        assert!(!index_member(0.0, -1, 3));
        for nu in [-2.0, -1.7, -1.5, -1.0, -0.5, 0.0, 0.7, 2.0, 3.5, 4.0] {
            let m = min_total_degree(nu);
            assert!(index_member(nu, 0, m) && !index_member(nu, 0, m - 1), "nu = {nu}");
        }
    }

    #[test]
    fn space_classification() {
        assert_eq!(SpaceParam::new(0.3).unwrap().kind, SpaceKind::Bergman);
        assert_eq!(SpaceParam::new(-1.0).unwrap().kind, SpaceKind::Hardy);
        assert_eq!(SpaceParam::new(-1.5).unwrap().kind, SpaceKind::WeightedDirichlet);
        assert_eq!(SpaceParam::new(-2.0).unwrap().kind, SpaceKind::Dirichlet);
        assert!(SpaceParam::new(-2.5).is_err());
    }

    #[test]
    fn unweighted_monomial_norms() {
        for j in 0..6 {
            for k in -j - 1..6 {
                let expect = 2.0 / ((j + 1) * (j + k + 2)) as f64;
                assert_relative_eq!(monomial_norm_sq(0.0, j, k), expect, max_relative = 1e-12);
            }
        }
        assert_relative_eq!(monomial_norm_sq(0.0, 1, -1), 0.5, max_relative = 1e-12);
        assert!(monomial_norm_sq(0.0, 0, -2).is_infinite());
    }

    #[test]
    fn bergman_norm_examples() {
        for nu in [-0.5, 0.0, 0.7, 2.0, 3.5] {
            let f = LaurentCoeffs::monomial(0, 0, one()).unwrap();
            assert_relative_eq!(bergman_norm_sq(nu, &f).unwrap(), 1.0, max_relative = 1e-12);
        }
        let f = LaurentCoeffs::from_terms([((0, 0), one()), ((1, 1), one())]).unwrap();
        assert_relative_eq!(bergman_norm_sq(0.0, &f).unwrap(), 1.25, max_relative = 1e-12);
        let f = LaurentCoeffs::monomial(0, -2, one()).unwrap();
        assert!(bergman_norm_sq(0.0, &f).unwrap().is_infinite());
        assert!(bergman_norm_sq(-1.0, &f).is_err());
    }

    #[test]
    fn hardy_and_dirichlet_examples() {
        let f = LaurentCoeffs::from_terms([((1, 0), c(2.0, 0.0)), ((0, -1), c(0.0, 1.0))]).unwrap();
        assert_relative_eq!(hardy_norm_sq(&f), 5.0);
        assert!(hardy_norm_sq(&LaurentCoeffs::monomial(0, -2, one()).unwrap()).is_infinite());
        assert_eq!(dirichlet_norm_sq(&LaurentCoeffs::monomial(0, 0, one()).unwrap()), 1.0);
        assert_eq!(dirichlet_norm_sq(&LaurentCoeffs::monomial(1, -1, one()).unwrap()), 2.0);
        let f = LaurentCoeffs::from_terms([((1, 0), one()), ((0, 1), one())]).unwrap();
        assert_eq!(dirichlet_norm_sq(&f), 6.0);
    }

    #[test]
    fn weighted_dirichlet_weights() {
        let f = LaurentCoeffs::monomial(0, 0, one()).unwrap();
        let v = weighted_dirichlet_norm_sq(-1.5, &f).unwrap();
        assert!(v > 0.0 && v.is_finite());
        // Total degree -1 changes sign across nu = -4/3.
        assert!(weighted_dirichlet_weight(-1.2, 0, -1) > 0.0);
        assert!(weighted_dirichlet_weight(-1.5, 0, -1) < 0.0);
        assert!(weighted_dirichlet_weight(-1.5, 2, -3) < 0.0);
        assert!(weighted_dirichlet_weight(-4.0 / 3.0, 0, -1).abs() < 1e-10);
        // Continuity toward the Hardy weight.
        assert_relative_eq!(weighted_dirichlet_weight(-1.0 - 1e-9, 3, 2), 1.0, max_relative = 1e-7);
        assert!(weighted_dirichlet_norm_sq(-0.5, &f).is_err());
    }

    #[test]
    fn split_examples() {
        let s = split_f123(&LaurentCoeffs::monomial(0, 0, one()).unwrap());
        assert!(s.f1.is_empty() && s.f2.is_empty() && s.f3.is_empty());
        assert_eq!(s.a00, one());

        let s = split_f123(&LaurentCoeffs::monomial(1, 1, one()).unwrap());
        assert_eq!(s.f1.get(1, 0), c(2.0, 0.0));
        assert!(s.f2.is_empty() && s.f3.is_empty());

        let s = split_f123(&LaurentCoeffs::monomial(1, -1, one()).unwrap());
        assert!(s.f1.is_empty() && s.f2.is_empty());
        assert_eq!(s.f3.get(1, -2), one());

        let s = split_f123(&LaurentCoeffs::monomial(0, 3, one()).unwrap());
        assert_eq!(s.f2.get(0, 2), c(3.0, 0.0));
    }

    #[test]
    fn t_norm_examples() {
        assert_eq!(t_norm_sq(0.0, SplitPart::F1, &LaurentCoeffs::new()).unwrap(), 0.0);
        let f1 = LaurentCoeffs::monomial(1, 0, c(2.0, 0.0)).unwrap();
        let expect = PI * PI * normalization_c(0.0).unwrap() * 4.0 * beta_fn(2.0, 3.0).unwrap() * beta_fn(4.0, 3.0).unwrap();
        assert_relative_eq!(t_norm_sq(0.0, SplitPart::F1, &f1).unwrap(), expect, max_relative = 1e-13);
        // Dirichlet endpoint accepted.
        assert!(t_norm_sq(-2.0, SplitPart::F1, &f1).unwrap().is_finite());
        assert!(t_norm_sq(-3.0, SplitPart::F1, &f1).is_err());
        // A part of the wrong shape is rejected.
        assert!(t_norm_sq(0.0, SplitPart::F3, &f1).is_err());
        // Divergent term.
        let f2 = LaurentCoeffs::monomial(0, -4, one()).unwrap();
        assert!(t_norm_sq(0.0, SplitPart::F2, &f2).unwrap().is_infinite());
    }

    #[test]
    fn t_norm_finiteness_matches_condition() {
        for nu in [-2.9, -2.0, -1.5, -0.5, 0.0, 1.0] {
            for j in 0..4 {
                for k in -8..4 {
                    let f = LaurentCoeffs::monomial(j, k, one()).unwrap();
                    let s = split_f123(&f);
                    for (part, which) in [(&s.f1, SplitPart::F1), (&s.f2, SplitPart::F2), (&s.f3, SplitPart::F3)] {
                        if part.is_empty() {
                            continue;
                        }
                        let finite = t_norm_sq(nu, which, part).unwrap().is_finite();
                        let cond = (j + k) as f64 + 0.5 * nu + 1.0 > -1.0;
                        assert_eq!(finite, cond, "nu = {nu}, ({j}, {k})");
                    }
                }
            }
        }
    }

    #[test]
    fn star_norm_examples() {
        assert_eq!(star_norm(0.0, &LaurentCoeffs::monomial(0, 0, one()).unwrap()).unwrap(), 1.0);
        let f = LaurentCoeffs::monomial(1, 1, one()).unwrap();
        assert!(star_norm(0.0, &f).unwrap().is_finite());
        let f = LaurentCoeffs::monomial(0, -5, one()).unwrap();
        assert!(star_norm(0.0, &f).unwrap().is_infinite());
    }

    #[test]
    fn evaluation_and_torus() {
        let q = HartogsPoint::new(c(0.1, 0.0), c(0.5, 0.0)).unwrap();
        assert_eq!(evaluate(&LaurentCoeffs::monomial(0, 0, one()).unwrap(), &q), one());
        assert_relative_eq!(evaluate(&LaurentCoeffs::monomial(0, -1, one()).unwrap(), &q).re, 2.0);
        let q = HartogsPoint::new(c(0.25, 0.0), c(0.5, 0.0)).unwrap();
        assert_relative_eq!(evaluate(&LaurentCoeffs::monomial(1, -1, one()).unwrap(), &q).re, 0.5);

        let g = restrict_to_torus(&LaurentCoeffs::monomial(1, 0, one()).unwrap(), 0.5, 0.5);
        assert_relative_eq!(g.get(1, 0).re, 0.25);
        let g = restrict_to_torus(&LaurentCoeffs::monomial(0, -1, one()).unwrap(), 0.9, 0.9);
        assert_relative_eq!(g.get(0, -1).re, 1.0 / 0.9, max_relative = 1e-15);
    }

    #[test]
    fn torus_distance_vanishes_at_corner() {
        let f = LaurentCoeffs::from_terms([((0, -1), one()), ((2, 1), c(0.5, -1.0)), ((1, -2), c(0.0, 2.0))]).unwrap();
        let mut prev = f64::INFINITY;
        for e in [1e-1, 1e-2, 1e-3, 1e-4] {
            let d = torus_distance_sq(&f, 1.0 - e, 1.0 - e);
            assert!(d < prev);
            prev = d;
        }
        assert!(prev < 1e-6);
    }

    #[test]
    fn torus_distance_matches_grid() {
        let f = LaurentCoeffs::from_terms([((0, -1), one()), ((2, 1), c(0.5, -1.0)), ((3, -4), c(0.0, 2.0))]).unwrap();
        let (s, t) = (0.8, 0.7);
        let n = 16;
        let a = boundary_values(&f).sample_grid(n);
        let b = restrict_to_torus(&f, s, t).sample_grid(n);
        let grid = a.iter().zip(&b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>() / (n * n) as f64;
        assert_relative_eq!(grid, torus_distance_sq(&f, s, t), max_relative = 1e-12);
    }

    #[test]
    fn hardy_sup_examples() {
        let grid: Vec<(f64, f64)> = (1..100).flat_map(|a| (1..100).map(move |b| (a as f64 / 100.0, b as f64 / 100.0))).collect();
        let f = LaurentCoeffs::monomial(2, -1, one()).unwrap();
        let v = hardy_sup_check(&f, &grid).unwrap();
        assert!(v <= 1.0 && v > 0.9);
        let f = LaurentCoeffs::from_terms([((0, 0), one()), ((1, 0), one())]).unwrap();
        let v = hardy_sup_check(&f, &[(0.9, 0.9)]).unwrap();
        assert_relative_eq!(v, 0.9 * 0.81 + 0.729 * 0.6561, max_relative = 1e-14);
        assert!(hardy_sup_check(&f, &grid).unwrap() <= hardy_norm_sq(&f));
        assert!(hardy_sup_check(&LaurentCoeffs::monomial(0, -2, one()).unwrap(), &grid).is_err());
    }

    #[test]
    fn json_shapes() {
        let f = LaurentCoeffs::monomial(0, -1, one()).unwrap();
        let s = serde_json::to_string(&f.to_json()).unwrap();
        assert_eq!(s, r#"{"terms":[{"j":0,"k":-1,"re":1.0,"im":0.0}]}"#);
        assert_eq!(LaurentCoeffs::from_json(&f.to_json()).unwrap(), f);
        let bad = serde_json::json!({"terms":[{"j":-1,"k":0,"re":1.0,"im":0.0}]});
        assert!(LaurentCoeffs::from_json(&bad).is_err());
        assert!(TorusSeries::from_json(&bad).is_ok());
        let mut p = MixedPoly::new();
        p.add(0, 0, 0, 1, one()).unwrap();
        assert_eq!(MixedPoly::from_json(&p.to_json()).unwrap(), p);
        assert!(p.add(-1, 0, 0, 0, one()).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly(nu: f64) -> impl Strategy<Value = LaurentCoeffs> {
            let m0 = min_total_degree(nu);
            prop::collection::vec((0i64..6, 0i64..8, -1.0f64..1.0, -1.0f64..1.0), 1..10).prop_map(move |v| {
                LaurentCoeffs::from_terms(v.into_iter().map(|(j, dm, re, im)| ((j, m0 + dm - j), c(re, im)))).unwrap()
            })
        }

        proptest! {
            #[test]
            fn norms_are_additive(f in poly(0.7), g in poly(0.7)) {
                // Additivity on disjoint supports: remove the overlap from g.
                let g = g.map_coeffs(|(j, k), v| if f.get(j, k) == Complex64::new(0.0, 0.0) { v } else { Complex64::new(0.0, 0.0) });
                let mut sum = f.clone();
                for ((j, k), v) in g.iter() {
                    sum.add(j, k, v).unwrap();
                }
                for nu in [0.7, 2.0] {
                    let lhs = bergman_norm_sq(nu, &sum).unwrap();
                    let rhs = bergman_norm_sq(nu, &f).unwrap() + bergman_norm_sq(nu, &g).unwrap();
                    prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.max(1.0));
                }
                let lhs = dirichlet_norm_sq(&sum);
                if lhs.is_finite() {
                    prop_assert!((lhs - dirichlet_norm_sq(&f) - dirichlet_norm_sq(&g)).abs() <= 1e-12 * lhs.max(1.0));
                }
            }

            #[test]
            fn hardy_limit_is_monotone(f in poly(-1.0)) {
                let h = hardy_norm_sq(&f);
                let d: Vec<f64> = (1..=4).map(|m| (bergman_norm_sq(-1.0 + 10f64.powi(-m), &f).unwrap() - h).abs()).collect();
                for w in d.windows(2) {
                    prop_assert!(w[1] <= w[0] + 1e-15);
                }
            }

            #[test]
            fn split_covers_every_nonconstant_term(f in poly(0.0)) {
                let s = split_f123(&f);
                let count = s.f1.support().count() + s.f2.support().count() + s.f3.support().count();
                let expect = f.support().filter(|&((j, k), _)| (j, k) != (0, 0)).count();
                prop_assert_eq!(count, expect);
            }
        }
    }
}
