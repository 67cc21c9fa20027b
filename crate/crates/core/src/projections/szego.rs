//! The Szego projection as the Fourier multiplier `1{j >= 0, j + k + 1 >= 0}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::coeffspace::TorusSeries;
use crate::error::{HartogsError, Result};

/// `1` when `j >= 0` and `j + k + 1 >= 0`, else `0`.
///
/// The symbol `(1 + sgn j)(1 + sgn(j+k+1)) / 4` is read with `sgn 0 = 1`,
/// which keeps the multiplier an indicator and the projection idempotent.
pub fn szego_multiplier(j: i64, k: i64) -> u8 {
    u8::from(j >= 0 && j + k + 1 >= 0)
}

/// Coefficientwise projection.
pub fn project_szego(f: &TorusSeries) -> TorusSeries {
    let mut out = TorusSeries::new();
    for ((j, k), c) in f.iter() {
        if szego_multiplier(j, k) == 1 {
            out.add(j, k, c);
        }
    }
    out
}

/// Samples on a uniform `n x n` grid, row-major with the first index along `theta`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusGrid {
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl TorusGrid {
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if n == 0 || data.len() != n * n {
            return Err(HartogsError::Parameter(format!(
                "grid of side {n} needs {} samples, got {}",
                n * n,
                data.len()
            )));
        }
        Ok(Self { n, data })
    }

    pub fn from_series(f: &TorusSeries, n: usize) -> Result<Self> {
        Self::new(n, f.sample_grid(n))
    }

    pub fn project_szego(&self) -> Self {
        Self {
            n: self.n,
            data: project_szego_grid(&self.data, self.n).expect("shape checked at construction"),
        }
    }

    pub fn lp_norm(&self, p: f64) -> f64 {
        lp_norm_torus(p, &self.data, self.n)
    }
}

/// Signed frequency of FFT bin `i` on an `n`-point grid, in `[-floor(n/2), ceil(n/2) - 1]`.
pub fn signed_frequency(i: usize, n: usize) -> i64 {
    if i < n.div_ceil(2) {
        i as i64
    } else {
        i as i64 - n as i64
    }
}

fn fft_2d(data: &mut [Complex64], n: usize, inverse: bool) {
    let mut planner = FftPlanner::<f64>::new();
    let fft = if inverse { planner.plan_fft_inverse(n) } else { planner.plan_fft_forward(n) };
    for row in data.chunks_exact_mut(n) {
        fft.process(row);
    }
    let mut col = vec![Complex64::new(0.0, 0.0); n];
    for b in 0..n {
        for a in 0..n {
            col[a] = data[a * n + b];
        }
        fft.process(&mut col);
        for a in 0..n {
            data[a * n + b] = col[a];
        }
    }
}

/// Spectral realization: forward FFT, multiplier mask, inverse FFT.
pub fn project_szego_grid(samples: &[Complex64], n: usize) -> Result<Vec<Complex64>> {
    if n == 0 || samples.len() != n * n {
        return Err(HartogsError::Parameter(format!(
            "grid of side {n} needs {} samples, got {}",
            n * n,
            samples.len()
        )));
    }
    let mut data = samples.to_vec();
    fft_2d(&mut data, n, false);
    for a in 0..n {
        let j = signed_frequency(a, n);
        for b in 0..n {
            if szego_multiplier(j, signed_frequency(b, n)) == 0 {
                data[a * n + b] = Complex64::new(0.0, 0.0);
            }
        }
    }
    fft_2d(&mut data, n, true);
    let scale = 1.0 / (n * n) as f64;
    data.iter_mut().for_each(|v| *v *= scale);
    Ok(data)
}

/// `(sum |v|^p (2 pi / n)^2)^(1/p)`.
pub fn lp_norm_torus(p: f64, samples: &[Complex64], n: usize) -> f64 {
    let h = 2.0 * PI / n as f64;
    let s: f64 = samples.iter().map(|v| v.norm().powf(p)).sum();
    (s * h * h).powf(1.0 / p)
}
