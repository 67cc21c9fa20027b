//! The Hartogs triangle, its biholomorphism onto `D x D*`, automorphisms and
//! the densities of the measures `mu_nu` and `tau`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{HartogsError, Result};
use crate::specfun::gamma_ratio;

/// Strict membership `|z1| < |z2| < 1`.
pub fn contains(z1: Complex64, z2: Complex64) -> bool {
    let (a, b) = (z1.norm(), z2.norm());
    a < b && b < 1.0
}

/// A point of the Hartogs triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HartogsPoint {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl HartogsPoint {
    pub fn new(z1: Complex64, z2: Complex64) -> Result<Self> {
        if !contains(z1, z2) {
            return Err(HartogsError::NotInDomain {
                z1: z1.to_string(),
                z2: z2.to_string(),
            });
        }
        Ok(Self { z1, z2 })
    }

    pub fn from_reals(z1: (f64, f64), z2: (f64, f64)) -> Result<Self> {
        Self::new(Complex64::new(z1.0, z1.1), Complex64::new(z2.0, z2.1))
    }

    pub fn is_valid(&self) -> bool {
        contains(self.z1, self.z2)
    }
}

/// A point of `D x D*`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductPoint {
    pub w1: Complex64,
    pub w2: Complex64,
}

impl ProductPoint {
    pub fn new(w1: Complex64, w2: Complex64) -> Result<Self> {
        let r2 = w2.norm();
        if !(w1.norm() < 1.0 && r2 > 0.0 && r2 < 1.0) {
            return Err(HartogsError::Domain(format!(
                "({w1}, {w2}) is not in the product of the disc and the punctured disc"
            )));
        }
        Ok(Self { w1, w2 })
    }
}

/// `(w1, w2) -> (w1 w2, w2)`.
pub fn phi(p: ProductPoint) -> HartogsPoint {
    HartogsPoint {
        z1: p.w1 * p.w2,
        z2: p.w2,
    }
}

/// `(z1, z2) -> (z1 / z2, z2)`.
pub fn phi_inverse(q: HartogsPoint) -> ProductPoint {
    ProductPoint {
        w1: q.z1 / q.z2,
        w2: q.z2,
    }
}

/// Normalizing constant `C_nu` making `mu_nu` a probability measure.
pub fn normalization_c(nu: f64) -> Result<f64> {
    if !(nu > -1.0) {
        return Err(HartogsError::Domain(format!("normalization constant requires nu > -1, got {nu}")));
    }
    let g = gamma_ratio(&[1.5 * nu + 3.0], &[nu + 1.0, 0.5 * nu + 2.0])?;
    Ok((nu + 1.0) * g / (2f64.powf(0.5 * nu) * PI * PI))
}

/// Density of `mu_nu` with respect to Lebesgue measure on C^2.
pub fn weight_mu(nu: f64, q: &HartogsPoint) -> Result<f64> {
    ensure_inside(q)?;
    let c = normalization_c(nu)?;
    let t2 = q.z2.norm_sqr();
    let s2 = (q.z1 / q.z2).norm_sqr();
    Ok(c * 2f64.powf(0.5 * nu) * t2.powf(0.5 * nu) * (1.0 - s2).powf(nu) * (1.0 - t2).powf(nu))
}

/// Density `K(z, z)` of the invariant measure `tau`, up to the factor 1/2 of the kernel.
pub fn weight_tau(q: &HartogsPoint) -> Result<f64> {
    ensure_inside(q)?;
    let t2 = q.z2.norm_sqr();
    let s2 = (q.z1 / q.z2).norm_sqr();
    Ok(1.0 / (t2 * (1.0 - s2).powi(2) * (1.0 - t2).powi(2)))
}

fn ensure_inside(q: &HartogsPoint) -> Result<()> {
    if q.is_valid() {
        Ok(())
    } else {
        Err(HartogsError::NotInDomain {
            z1: q.z1.to_string(),
            z2: q.z2.to_string(),
        })
    }
}

/// Disc automorphism `eta -> lambda (eta - a) / (1 - conj(a) eta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscAutomorphism {
    pub a: Complex64,
    pub lambda: Complex64,
}

impl DiscAutomorphism {
    pub fn new(a: Complex64, lambda: Complex64) -> Result<Self> {
        if !(a.norm() < 1.0) {
            return Err(HartogsError::Parameter(format!("Moebius center must satisfy |a| < 1, got {a}")));
        }
        if (lambda.norm() - 1.0).abs() > 1e-12 {
            return Err(HartogsError::Parameter(format!("rotation must be unimodular, got {lambda}")));
        }
        Ok(Self { a, lambda })
    }

    pub fn identity() -> Self {
        Self::rotation(Complex64::new(1.0, 0.0))
    }

    pub fn rotation(lambda: Complex64) -> Self {
        Self {
            a: Complex64::new(0.0, 0.0),
            lambda,
        }
    }

    pub fn apply(&self, eta: Complex64) -> Complex64 {
        self.lambda * (eta - self.a) / (Complex64::new(1.0, 0.0) - self.a.conj() * eta)
    }

    fn matrix(&self) -> [Complex64; 4] {
        let one = Complex64::new(1.0, 0.0);
        [self.lambda, -self.lambda * self.a, -self.a.conj(), one]
    }

    fn from_matrix(m: [Complex64; 4]) -> Self {
        let [p, q, _, s] = m;
        let lambda = p / s;
        Self {
            a: -q / p,
            lambda: lambda / lambda.norm(),
        }
    }

    /// `self o inner`.
    pub fn compose(&self, inner: &Self) -> Self {
        let [a, b, c, d] = self.matrix();
        let [e, f, g, h] = inner.matrix();
        Self::from_matrix([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = self.matrix();
        Self::from_matrix([d, -b, -c, a])
    }
}

/// Automorphism `(z1, z2) -> (z2 phi(z1 / z2), c z2)` of the Hartogs triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HartogsAutomorphism {
    pub phi: DiscAutomorphism,
    pub c: Complex64,
}

/// Flat JSON shape `{"a":[re,im],"lambda":[re,im],"c":[re,im]}`.
#[derive(Serialize, Deserialize)]
struct AutomorphismRepr {
    a: Complex64,
    lambda: Complex64,
    c: Complex64,
}

impl HartogsAutomorphism {
    pub fn new(phi: DiscAutomorphism, c: Complex64) -> Result<Self> {
        if (c.norm() - 1.0).abs() > 1e-12 {
            return Err(HartogsError::Parameter(format!("c must be unimodular, got {c}")));
        }
        Ok(Self { phi, c })
    }

    pub fn identity() -> Self {
        Self {
            phi: DiscAutomorphism::identity(),
            c: Complex64::new(1.0, 0.0),
        }
    }

    pub fn apply(&self, q: &HartogsPoint) -> HartogsPoint {
        HartogsPoint {
            z1: q.z2 * self.phi.apply(q.z1 / q.z2),
            z2: self.c * q.z2,
        }
    }

    /// Action in the coordinates of `D x D*`: `(phi(w1) / c, c w2)`.
    pub fn apply_product(&self, p: &ProductPoint) -> ProductPoint {
        ProductPoint {
            w1: self.phi.apply(p.w1) / self.c,
            w2: self.c * p.w2,
        }
    }

    /// `self o inner`.
    pub fn compose(&self, inner: &Self) -> Self {
        let ci = inner.c;
        let phi = DiscAutomorphism::rotation(ci)
            .compose(&self.phi)
            .compose(&DiscAutomorphism::rotation(ci.conj()))
            .compose(&inner.phi);
        Self {
            phi,
            c: self.c * ci,
        }
    }

    pub fn inverse(&self) -> Self {
        let phi = DiscAutomorphism::rotation(self.c.conj())
            .compose(&self.phi.inverse())
            .compose(&DiscAutomorphism::rotation(self.c));
        Self {
            phi,
            c: self.c.conj(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(AutomorphismRepr {
            a: self.phi.a,
            lambda: self.phi.lambda,
            c: self.c,
        })
        .expect("plain numeric struct")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let r: AutomorphismRepr =
            serde_json::from_value(v.clone()).map_err(|e| HartogsError::Parameter(e.to_string()))?;
        Self::new(DiscAutomorphism::new(r.a, r.lambda)?, r.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn phi_examples() {
        let q = phi(ProductPoint::new(c(0.5, 0.0), c(0.5, 0.0)).unwrap());
        assert_eq!((q.z1, q.z2), (c(0.25, 0.0), c(0.5, 0.0)));
        let q = phi(ProductPoint::new(c(0.0, 0.3), c(0.9, 0.0)).unwrap());
        assert!((q.z1 - c(0.0, 0.27)).norm() < 1e-16);
        let p = phi_inverse(HartogsPoint::new(c(0.0, 0.27), c(0.9, 0.0)).unwrap());
        assert!((p.w1 - c(0.0, 0.3)).norm() < 1e-15);
        let p = phi_inverse(HartogsPoint::new(c(0.25, 0.0), c(0.5, 0.0)).unwrap());
        assert_eq!(p.w1, c(0.5, 0.0));
    }

    #[test]
    fn membership() {
        assert!(contains(c(0.1, 0.0), c(0.5, 0.0)));
        assert!(!contains(c(0.5, 0.0), c(0.5, 0.0)));
        assert!(!contains(c(0.1, 0.0), c(1.0, 0.0)));
        assert!(HartogsPoint::new(c(0.6, 0.0), c(0.5, 0.0)).is_err());
        assert!(ProductPoint::new(c(0.1, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn normalization_values() {
        assert_relative_eq!(normalization_c(0.0).unwrap(), 2.0 / (PI * PI), max_relative = 1e-13);
        assert_relative_eq!(normalization_c(2.0).unwrap(), 360.0 / (8.0 * PI * PI), max_relative = 1e-13);
        assert!(normalization_c(-1.0).is_err());
    }

    #[test]
    fn weights() {
        let q = HartogsPoint::new(c(0.0, 0.0), c(0.5, 0.0)).unwrap();
        assert_relative_eq!(weight_mu(0.0, &q).unwrap(), 2.0 / (PI * PI), max_relative = 1e-14);
        let c2 = normalization_c(2.0).unwrap();
        assert_relative_eq!(weight_mu(2.0, &q).unwrap(), c2 * 0.28125, max_relative = 1e-14);
        assert_relative_eq!(weight_tau(&q).unwrap(), 4.0 / 0.5625, max_relative = 1e-14);
        let q = HartogsPoint::new(c(0.25, 0.0), c(0.5, 0.0)).unwrap();
        assert_relative_eq!(weight_tau(&q).unwrap(), 4.0 / (0.5625 * 0.5625), max_relative = 1e-14);
        let bad = HartogsPoint { z1: c(0.9, 0.0), z2: c(0.5, 0.0) };
        assert!(weight_tau(&bad).is_err());
    }

    #[test]
    fn rotation_acts_on_first_coordinate() {
        let th = 0.7;
        let psi = HartogsAutomorphism::new(DiscAutomorphism::rotation(Complex64::from_polar(1.0, th)), c(1.0, 0.0))
            .unwrap();
        let q = HartogsPoint::new(c(0.1, 0.2), c(0.3, -0.4)).unwrap();
        let r = psi.apply(&q);
        assert!((r.z1 - Complex64::from_polar(1.0, th) * q.z1).norm() < 1e-15);
        assert_eq!(r.z2, q.z2);
        assert_eq!(HartogsAutomorphism::identity().apply(&q), q);
    }

    #[test]
    fn automorphism_json_round_trip() {
        let psi = HartogsAutomorphism::new(
            DiscAutomorphism::new(c(0.2, -0.1), Complex64::from_polar(1.0, 0.4)).unwrap(),
            Complex64::from_polar(1.0, -1.1),
        )
        .unwrap();
        let v = psi.to_json();
        assert!(v.get("lambda").is_some());
        assert_eq!(HartogsAutomorphism::from_json(&v).unwrap(), psi);
        let q = HartogsPoint::new(c(0.1, 0.0), c(0.0, 0.5)).unwrap();
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"{"z1":[0.1,0.0],"z2":[0.0,0.5]}"#);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn product_point() -> impl Strategy<Value = ProductPoint> {
            (0.0f64..0.999, 0.0..6.3, 0.001f64..0.999, 0.0..6.3).prop_map(|(r1, t1, r2, t2)| ProductPoint {
                w1: Complex64::from_polar(r1, t1),
                w2: Complex64::from_polar(r2, t2),
            })
        }

        fn automorphism() -> impl Strategy<Value = HartogsAutomorphism> {
            (0.0f64..0.9, 0.0..6.3, 0.0..6.3, 0.0..6.3).prop_map(|(r, t, l, cc)| HartogsAutomorphism {
                phi: DiscAutomorphism {
                    a: Complex64::from_polar(r, t),
                    lambda: Complex64::from_polar(1.0, l),
                },
                c: Complex64::from_polar(1.0, cc),
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(2000))]

            #[test]
            fn phi_round_trip(p in product_point()) {
                let q = phi(p);
                prop_assert!(q.is_valid());
                let back = phi_inverse(q);
                prop_assert!((back.w1 - p.w1).norm() <= 1e-14);
                prop_assert!((back.w2 - p.w2).norm() <= 1e-14);
            }

            #[test]
            fn automorphisms_preserve_membership(p in product_point(), psi in automorphism()) {
                prop_assert!(psi.apply(&phi(p)).is_valid());
            }

            #[test]
            fn composition_law(p in product_point(), a in automorphism(), b in automorphism()) {
                let q = phi(p);
                let two_step = b.apply(&a.apply(&q));
                let composed = b.compose(&a).apply(&q);
                prop_assert!((two_step.z1 - composed.z1).norm() <= 1e-10);
                prop_assert!((two_step.z2 - composed.z2).norm() <= 1e-12);
                let back = a.inverse().apply(&a.apply(&q));
                prop_assert!((back.z1 - q.z1).norm() <= 1e-10);
            }

            #[test]
            fn tau_density_identity(p in product_point()) {
                let q = phi(p);
                let t2 = q.z2.norm_sqr();
                let s2 = (q.z1 / q.z2).norm_sqr();
                let v = weight_tau(&q).unwrap() * t2 * (1.0 - s2).powi(2) * (1.0 - t2).powi(2);
                prop_assert!((v - 1.0).abs() <= 1e-12);
            }
        }
    }
}
