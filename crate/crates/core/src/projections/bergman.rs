//! `P_nu` on mixed polynomials.
//!
//! Pulled back to `D x D*`, the monomial `z1^a conj(z1)^b z2^c conj(z2)^d`
//! pairs with `z1^J z2^K` only when `J = a - b` and `K = c - d`, and then
//!
//! ```text
//! <f, z1^J z2^K> = pi^2 2^(nu/2) C_nu B(a+1, nu+1) B(a+c+nu/2+2, nu+1)
//! ```
//!
//! so `P_nu` maps the monomial to that value over `||z1^J z2^K||^2`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::coeffspace::{index_member, monomial_norm_sq, LaurentCoeffs, MixedPoly};
use crate::error::{HartogsError, Result};
use crate::geometry::normalization_c;
use crate::kernels::ceil_half;
use crate::quadrature::{build_rule, inner_product_quad};
use crate::specfun::beta_fn;

fn require_bergman(nu: f64) -> Result<()> {
    if nu > -1.0 {
        Ok(())
    } else {
        Err(HartogsError::Parameter("Bergman projection requires nu > -1".into()))
    }
}

/// Image of one mixed monomial: `Some((J, K, lambda))`, or `None` when it projects to zero.
pub fn projection_coefficient(nu: f64, a: i64, b: i64, c: i64, d: i64) -> Result<Option<(i64, i64, f64)>> {
    require_bergman(nu)?;
    if a < 0 || b < 0 {
        return Err(HartogsError::Support(format!("negative z1 exponent in ({a}, {b}, {c}, {d})")));
    }
    if !((a + b + c + d) as f64 + 0.5 * nu + 2.0 > 0.0) {
        return Err(HartogsError::Integrability(format!(
            "term z1^{a} conj(z1)^{b} z2^{c} conj(z2)^{d} is not square integrable for nu = {nu}"
        )));
    }
    let (j, k) = (a - b, c - d);
    if !index_member(nu, j, k) {
        return Ok(None);
    }
    let moment = PI * PI
        * 2f64.powf(0.5 * nu)
        * normalization_c(nu)?
        * beta_fn(a as f64 + 1.0, nu + 1.0)?
        * beta_fn((a + c) as f64 + 0.5 * nu + 2.0, nu + 1.0)?;
    Ok(Some((j, k, moment / monomial_norm_sq(nu, j, k))))
}

/// `P_nu f` for a mixed polynomial `f`.
pub fn project_bergman(nu: f64, f: &MixedPoly) -> Result<LaurentCoeffs> {
    require_bergman(nu)?;
    let mut out = LaurentCoeffs::new();
    for ((a, b, c, d), coeff) in f.iter() {
        if let Some((j, k, lambda)) = projection_coefficient(nu, a, b, c, d)? {
            out.add(j, k, coeff * lambda)?;
        }
    }
    Ok(out)
}

/// The constant in `P_nu conj(z2)^(1+c0) = d_nu z2^(-1-c0)`, `c0 = ceil(nu/2)`.
pub fn d_nu(nu: f64) -> Result<f64> {
    let c0 = ceil_half(nu);
    match projection_coefficient(nu, 0, 0, 0, 1 + c0)? {
        Some((_, _, lambda)) => Ok(lambda),
        None => Err(HartogsError::Domain(format!("z2^(-1-c0) is not in the index set for nu = {nu}"))),
    }
}

/// Fixed corpus of `(a, b, c, d)` used by [`self_test`], adjusted to the index set of `nu`.
fn self_test_corpus(nu: f64) -> Vec<(i64, i64, i64, i64)> {
    let c0 = ceil_half(nu);
    vec![
        (0, 0, 0, 0),
        (1, 0, 0, 0),
        (2, 1, 1, 0),
        (1, 1, 2, 3),
        (0, 0, 0, 1 + c0),
        (3, 1, -1, 0),
        (2, 0, 1, 2),
    ]
}

/// Compares every Beta-formula coefficient of a fixed corpus against
/// quadrature of `<f, e> / ||e||^2`. Returns the largest relative error.
pub fn self_test(nu: f64) -> Result<f64> {
    require_bergman(nu)?;
    let rule = build_rule(nu, 24, 17)?;
    let mut worst: f64 = 0.0;
    for (a, b, c, d) in self_test_corpus(nu) {
        let Some((j, k, lambda)) = projection_coefficient(nu, a, b, c, d)? else {
            continue;
        };
        let f = move |q: &crate::geometry::HartogsPoint| {
            q.z1.powi(a as i32) * q.z1.conj().powi(b as i32) * q.z2.powi(c as i32) * q.z2.conj().powi(d as i32)
        };
        let e = move |q: &crate::geometry::HartogsPoint| q.z1.powi(j as i32) * q.z2.powi(k as i32);
        let quad = inner_product_quad(f, e, &rule)? / monomial_norm_sq(nu, j, k);
        let err = (quad - Complex64::new(lambda, 0.0)).norm() / lambda.abs();
        worst = worst.max(err);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn fixes_holomorphic_monomials() {
        for nu in [-0.5, 0.0, 0.7, 2.0] {
            for j in 0..4 {
                for k in -3..4 {
                    if !index_member(nu, j, k) {
                        continue;
                    }
                    let (jj, kk, l) = projection_coefficient(nu, j, 0, k, 0).unwrap().unwrap();
                    assert_eq!((jj, kk), (j, k));
                    assert!((l - 1.0).abs() < 1e-12, "nu={nu} ({j},{k}) {l}");
                }
            }
        }
    }

    #[test]
    fn antiholomorphic_z1_projects_to_zero() {
        let mut f = MixedPoly::new();
        f.add(0, 1, 0, 0, Complex64::new(1.0, 0.0)).unwrap();
        assert!(project_bergman(0.0, &f).unwrap().is_empty());
    }

    #[test]
    fn necessity_function() {
        for nu in [-0.5, 0.0, 0.7, 2.0] {
            let d = d_nu(nu).unwrap();
            let c0 = ceil_half(nu);
            assert!(d > 0.0);
            assert_relative_eq!(d, 1.0 / monomial_norm_sq(nu, 0, -1 - c0), max_relative = 1e-12);
        }
    }

    #[test]
    fn guards() {
        let mut f = MixedPoly::new();
        f.add(0, 0, 0, 0, Complex64::new(1.0, 0.0)).unwrap();
        let e = project_bergman(-1.5, &f).unwrap_err();
        assert_eq!(e, HartogsError::Parameter("Bergman projection requires nu > -1".into()));
        assert!(matches!(projection_coefficient(0.0, 0, 0, -2, -1), Err(HartogsError::Integrability(_))));
    }

    #[test]
    fn self_test_passes() {
        for nu in [-0.5, 0.0, 0.7, 2.0, 3.5] {
            assert!(self_test(nu).unwrap() < 1e-10, "nu = {nu}");
        }
    }
}
